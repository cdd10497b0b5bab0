//! The instance file format: a JSON object with keys `mode`, `dim`, `form`
//! and either `a`/`b` (presymplectic) or `c1`/`c2` (poisson). Every number
//! is a rational string `"p"`, `"-p"` or `"p/q"` with `q > 0`.
//!
//! Input accepts any key order and whitespace. Output is canonical: fixed
//! key order, one matrix row per line, so that `emit(parse(doc)) == doc`
//! byte for byte for every emitted document.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use isopair::poisson::CoisotropicPair;
use isopair::{IsotropicPair, Matrix, PoissonSpace, PresymplecticSpace, Scalar, Subspace};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Mode {
    Presymplectic,
    Poisson,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Presymplectic => "presymplectic",
            Mode::Poisson => "poisson",
        }
    }

    /// Field names of the two subspaces.
    pub fn fields(self) -> (&'static str, &'static str) {
        match self {
            Mode::Presymplectic => ("a", "b"),
            Mode::Poisson => ("c1", "c2"),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "presymplectic" => Ok(Mode::Presymplectic),
            "poisson" => Ok(Mode::Poisson),
            _ => Err(format!("unknown mode {s:?}, expected \"presymplectic\" or \"poisson\"")),
        }
    }
}

/// Problems with an input document. Both kinds map to exit status 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputError {
    Parse(String),
    Validation(String),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Parse(m) => write!(f, "parse error: {m}"),
            InputError::Validation(m) => write!(f, "validation error: {m}"),
        }
    }
}

impl std::error::Error for InputError {}

/// A parsed instance. `first`/`second` hold the rows of `a`/`b` or `c1`/`c2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceDocument {
    pub mode: Mode,
    pub dim: usize,
    pub form: Matrix,
    pub first: Vec<Vec<Scalar>>,
    pub second: Vec<Vec<Scalar>>,
}

/// A validated instance in either picture.
#[derive(Clone, Debug)]
pub enum Instance {
    Isotropic(IsotropicPair),
    Coisotropic(CoisotropicPair),
}

impl Instance {
    /// The isotropic pair that is classified: the pair itself, or the
    /// annihilators in the dual for the poisson picture.
    pub fn isotropic(&self) -> IsotropicPair {
        match self {
            Instance::Isotropic(p) => p.clone(),
            Instance::Coisotropic(cp) => {
                isopair::poisson::to_isotropic_pair(cp).expect("validated at construction")
            }
        }
    }
}

fn parse_err(msg: impl Into<String>) -> InputError {
    InputError::Parse(msg.into())
}

fn rational(v: &Value, at: &str) -> Result<Scalar, InputError> {
    let s = v.as_str().ok_or_else(|| parse_err(format!("{at}: expected a rational string, found {v}")))?;
    s.parse::<Scalar>().map_err(|_| parse_err(format!("{at}: {s:?} is not of the form \"p\", \"-p\" or \"p/q\" with q > 0")))
}

fn rows(v: &Value, field: &str, dim: usize) -> Result<Vec<Vec<Scalar>>, InputError> {
    let list = v.as_array().ok_or_else(|| parse_err(format!("field `{field}`: expected a list of rows")))?;
    list.iter()
        .enumerate()
        .map(|(i, row)| {
            let row = row
                .as_array()
                .ok_or_else(|| parse_err(format!("field `{field}` row {}: expected a list", i + 1)))?;
            if row.len() != dim {
                return Err(parse_err(format!(
                    "field `{field}` row {}: has {} entries, dim is {dim}",
                    i + 1,
                    row.len()
                )));
            }
            row.iter()
                .enumerate()
                .map(|(j, x)| rational(x, &format!("field `{field}` row {} entry {}", i + 1, j + 1)))
                .collect()
        })
        .collect()
}

impl InstanceDocument {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let value: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
        let obj = value.as_object().ok_or_else(|| parse_err("document must be an object"))?;
        let get = |k: &str| obj.get(k).ok_or_else(|| parse_err(format!("missing field `{k}`")));
        let mode: Mode = get("mode")?
            .as_str()
            .ok_or_else(|| parse_err("field `mode`: expected a string"))?
            .parse()
            .map_err(|e: String| parse_err(format!("field `mode`: {e}")))?;
        let dim = get("dim")?
            .as_u64()
            .ok_or_else(|| parse_err("field `dim`: expected a non-negative integer"))? as usize;
        let (f1, f2) = mode.fields();
        let allowed = ["mode", "dim", "form", f1, f2];
        if let Some(k) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(parse_err(format!("unexpected field `{k}` in {mode} mode")));
        }
        let form_rows = rows(get("form")?, "form", dim)?;
        if form_rows.len() != dim {
            return Err(parse_err(format!("field `form`: has {} rows, dim is {dim}", form_rows.len())));
        }
        let form = Matrix::from_rows(dim, form_rows).expect("row lengths checked");
        Ok(InstanceDocument {
            mode,
            dim,
            form,
            first: rows(get(f1)?, f1, dim)?,
            second: rows(get(f2)?, f2, dim)?,
        })
    }

    /// Checks the mathematical invariants: skew form, isotropic `a`/`b` or
    /// coisotropic `c1`/`c2`.
    pub fn validate(&self) -> Result<Instance, InputError> {
        let invalid = |e: isopair::Error| InputError::Validation(e.to_string());
        let span = |rows: &[Vec<Scalar>]| Subspace::span(self.dim, rows.iter().cloned()).map_err(invalid);
        let (s1, s2) = (span(&self.first)?, span(&self.second)?);
        match self.mode {
            Mode::Presymplectic => {
                let space = PresymplecticSpace::new(self.form.clone()).map_err(invalid)?;
                Ok(Instance::Isotropic(IsotropicPair::new(space, s1, s2).map_err(invalid)?))
            }
            Mode::Poisson => {
                let space = PoissonSpace::new(self.form.clone()).map_err(invalid)?;
                Ok(Instance::Coisotropic(CoisotropicPair::new(space, s1, s2).map_err(invalid)?))
            }
        }
    }

    pub fn from_isotropic(pair: &IsotropicPair) -> Self {
        InstanceDocument {
            mode: Mode::Presymplectic,
            dim: pair.dim(),
            form: pair.space().omega().clone(),
            first: pair.a().basis().to_rows(),
            second: pair.b().basis().to_rows(),
        }
    }

    pub fn from_coisotropic(cp: &CoisotropicPair) -> Self {
        InstanceDocument {
            mode: Mode::Poisson,
            dim: cp.space().dim(),
            form: cp.space().pi().clone(),
            first: cp.c1().basis().to_rows(),
            second: cp.c2().basis().to_rows(),
        }
    }

    /// Canonical text, ending in a newline.
    pub fn emit(&self) -> String {
        let (f1, f2) = self.mode.fields();
        let mut out = String::new();
        out.push_str("{\n");
        let _ = writeln!(out, "  \"mode\": \"{}\",", self.mode);
        let _ = writeln!(out, "  \"dim\": {},", self.dim);
        write_rows(&mut out, "form", &self.form.to_rows(), true);
        write_rows(&mut out, f1, &self.first, true);
        write_rows(&mut out, f2, &self.second, false);
        out.push_str("}\n");
        out
    }
}

fn write_rows(out: &mut String, key: &str, rows: &[Vec<Scalar>], comma: bool) {
    let sep = if comma { "," } else { "" };
    if rows.is_empty() {
        let _ = writeln!(out, "  \"{key}\": []{sep}");
        return;
    }
    let _ = writeln!(out, "  \"{key}\": [");
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|x| format!("\"{x}\"")).collect();
        let row_sep = if i + 1 < rows.len() { "," } else { "" };
        let _ = writeln!(out, "    [{}]{row_sep}", cells.join(", "));
    }
    let _ = writeln!(out, "  ]{sep}");
}

#[cfg(test)]
mod tests {
    use super::*;
    use isopair::classify::canonical_model;

    #[test]
    fn canonical_text_round_trips() {
        let doc = InstanceDocument::from_isotropic(&canonical_model(5));
        let text = doc.emit();
        assert_eq!(
            text,
            "{\n  \"mode\": \"presymplectic\",\n  \"dim\": 3,\n  \"form\": [\n    [\"0\", \"1\", \"0\"],\n    [\"-1\", \"0\", \"0\"],\n    [\"0\", \"0\", \"0\"]\n  ],\n  \"a\": [\n    [\"1\", \"0\", \"0\"]\n  ],\n  \"b\": [\n    [\"1\", \"0\", \"1\"]\n  ]\n}\n"
        );
        let parsed = InstanceDocument::parse(&text).unwrap();
        assert_eq!(parsed, doc);
        assert_eq!(parsed.emit(), text);
    }

    #[test]
    fn empty_instance() {
        let text = "{\"b\": [], \"a\": [], \"form\": [], \"dim\": 0, \"mode\": \"presymplectic\"}";
        let doc = InstanceDocument::parse(text).unwrap();
        assert_eq!(doc.emit(), "{\n  \"mode\": \"presymplectic\",\n  \"dim\": 0,\n  \"form\": [],\n  \"a\": [],\n  \"b\": []\n}\n");
        assert!(doc.validate().is_ok());
    }

    #[test]
    fn rejects_malformed_input() {
        let bad = [
            ("[]", "object"),
            ("{\"mode\": \"presymplectic\", \"dim\": 1, \"form\": [[\"0\"]], \"a\": []}", "missing field `b`"),
            ("{\"mode\": \"x\", \"dim\": 1, \"form\": [[\"0\"]], \"a\": [], \"b\": []}", "field `mode`"),
            ("{\"mode\": \"presymplectic\", \"dim\": 1, \"form\": [[0]], \"a\": [], \"b\": []}", "form` row 1 entry 1"),
            ("{\"mode\": \"presymplectic\", \"dim\": 1, \"form\": [[\"1/-2\"]], \"a\": [], \"b\": []}", "not of the form"),
            ("{\"mode\": \"presymplectic\", \"dim\": 2, \"form\": [[\"0\", \"0\"]], \"a\": [], \"b\": []}", "has 1 rows"),
            ("{\"mode\": \"poisson\", \"dim\": 1, \"form\": [[\"0\"]], \"a\": [], \"b\": []}", "unexpected field"),
            ("{\"mode\": \"presymplectic\",\n \"dim\": 1,,}", "line 2"),
        ];
        for (text, needle) in bad {
            let err = InstanceDocument::parse(text).unwrap_err();
            assert!(matches!(err, InputError::Parse(_)));
            assert!(err.to_string().contains(needle), "{err} should mention {needle}");
        }
    }

    #[test]
    fn validation_names_the_violation() {
        let text = "{\"mode\": \"presymplectic\", \"dim\": 2, \"form\": [[\"0\", \"1\"], [\"-1\", \"0\"]], \"a\": [[\"1\", \"0\"], [\"0\", \"1\"]], \"b\": []}";
        let err = InstanceDocument::parse(text).unwrap().validate().unwrap_err();
        assert_eq!(err, InputError::Validation("A not isotropic".into()));
        let text = "{\"mode\": \"presymplectic\", \"dim\": 2, \"form\": [[\"0\", \"1\"], [\"1\", \"0\"]], \"a\": [], \"b\": []}";
        let err = InstanceDocument::parse(text).unwrap().validate().unwrap_err();
        assert!(err.to_string().contains("skew"));
        let text = "{\"mode\": \"poisson\", \"dim\": 2, \"form\": [[\"0\", \"1\"], [\"-1\", \"0\"]], \"c1\": [], \"c2\": [[\"1\", \"0\"]]}";
        let err = InstanceDocument::parse(text).unwrap().validate().unwrap_err();
        assert_eq!(err, InputError::Validation("C1 not coisotropic".into()));
    }
}
