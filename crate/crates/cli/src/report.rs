use std::fmt::Write as _;

use isopair::classify::{matrix, CheckResult};
use isopair::{InvariantVector, LinearMap, Matrix, MultiplicityVector, Scalar, Subspace};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

/// Everything a command reports about one instance. Only `k` is mandatory.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassificationReport {
    pub input: Option<String>,
    pub k: InvariantVector,
    pub n: Option<MultiplicityVector>,
    pub summand_dims: Option<[usize; 10]>,
    pub witness: Option<LinearMap>,
    /// Poisson isomorphism, for instances given in the poisson picture.
    pub poisson_map: Option<LinearMap>,
    pub summands: Option<Vec<(String, Subspace)>>,
    pub trace: Option<Vec<(String, Subspace)>>,
    pub verification: Vec<CheckResult>,
}

impl ClassificationReport {
    /// `M n = k`, whenever `n` is present.
    pub fn check_consistency(&self) -> Result<(), String> {
        let Some(n) = self.n else { return Ok(()) };
        let k = matrix::apply(matrix::multiplicity_matrix(), &n.0.map(|x| x as i64));
        if k != self.k.0.map(|x| x as i64) {
            return Err(format!("report inconsistent: M n = {k:?} but k = {}", self.k));
        }
        Ok(())
    }

    pub fn verification_passed(&self) -> bool {
        self.verification.iter().all(|c| c.passed)
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        self.check_consistency()?;
        Ok(match format {
            Format::Text => self.render_text(),
            Format::Structured => {
                let mut s = serde_json::to_string(&self.to_json()).expect("json values serialize");
                s.push('\n');
                s
            }
        })
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        if let Some(input) = &self.input {
            let _ = writeln!(out, "== {input}");
        }
        let _ = writeln!(out, "k = {}", self.k);
        if let Some(n) = &self.n {
            let _ = writeln!(out, "n = {n}");
        }
        if let Some(d) = &self.summand_dims {
            let parts: Vec<String> = d.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "summand dims = {}", parts.join(","));
        }
        if let Some(phi) = &self.witness {
            out.push_str("phi =\n");
            write_matrix(&mut out, phi.matrix());
        }
        if let Some(psi) = &self.poisson_map {
            out.push_str("poisson map =\n");
            write_matrix(&mut out, psi.matrix());
        }
        for (title, list) in [("summands", &self.summands), ("trace", &self.trace)] {
            let Some(list) = list else { continue };
            let _ = writeln!(out, "{title}:");
            for (label, s) in list {
                if s.is_zero() {
                    let _ = writeln!(out, "  {label}: 0");
                } else {
                    let _ = writeln!(out, "  {label}: dim {}", s.dim());
                    write_matrix(&mut out, s.basis());
                }
            }
        }
        if !self.verification.is_empty() {
            out.push_str("verification:\n");
            for c in &self.verification {
                let status = if c.passed { "pass" } else { "FAIL" };
                let _ = write!(out, "  {status} {}", c.name);
                if let Some(d) = &c.detail {
                    let _ = write!(out, ": {d}");
                }
                out.push('\n');
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        if let Some(input) = &self.input {
            obj.insert("input".into(), json!(input));
        }
        obj.insert("k".into(), json!(self.k.0));
        if let Some(n) = &self.n {
            obj.insert("n".into(), json!(n.0));
        }
        if let Some(d) = &self.summand_dims {
            obj.insert("summand_dims".into(), json!(d));
        }
        if let Some(phi) = &self.witness {
            obj.insert("witness".into(), matrix_json(phi.matrix()));
        }
        if let Some(psi) = &self.poisson_map {
            obj.insert("poisson_map".into(), matrix_json(psi.matrix()));
        }
        for (key, list) in [("summands", &self.summands), ("trace", &self.trace)] {
            if let Some(list) = list {
                let items: Vec<Value> = list
                    .iter()
                    .map(|(label, s)| json!({ "label": label, "basis": matrix_json(s.basis()) }))
                    .collect();
                obj.insert(key.into(), Value::Array(items));
            }
        }
        if !self.verification.is_empty() {
            let checks: Vec<Value> = self
                .verification
                .iter()
                .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
                .collect();
            obj.insert("verification".into(), Value::Array(checks));
        }
        Value::Object(obj)
    }
}

fn row_strings(row: &[Scalar]) -> Vec<String> {
    row.iter().map(Scalar::to_string).collect()
}

/// Row-major rational strings.
pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(m.row_iter().map(|r| json!(row_strings(r))).collect())
}

fn write_matrix(out: &mut String, m: &Matrix) {
    for r in m.row_iter() {
        let _ = writeln!(out, "    [{}]", row_strings(r).join(" "));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inconsistent_report_is_refused() {
        let mut r = ClassificationReport {
            k: MultiplicityVector::unit(5).to_invariants(),
            n: Some(MultiplicityVector::unit(5)),
            ..Default::default()
        };
        assert!(r.render(Format::Text).unwrap().contains("k = 1,1,1,1,0,0,0,0,1,1"));
        r.n = Some(MultiplicityVector::unit(6));
        assert!(r.render(Format::Structured).is_err());
    }

    #[test]
    fn structured_output_is_one_document() {
        let r = ClassificationReport {
            k: MultiplicityVector::unit(9).to_invariants(),
            n: Some(MultiplicityVector::unit(9)),
            witness: Some(LinearMap::identity(2)),
            ..Default::default()
        };
        let text = r.render(Format::Structured).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["n"], json!([0, 0, 0, 0, 0, 0, 0, 0, 1, 0]));
        assert_eq!(v["witness"], json!([["1", "0"], ["0", "1"]]));
    }
}
