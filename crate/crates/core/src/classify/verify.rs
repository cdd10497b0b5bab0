use std::fmt;

use crate::classify::{ElementaryDecomposition, IsotropicPair, Summand, NUM_TYPES};
use crate::error::Result;
use crate::linalg::Subspace;
use crate::presymplectic::PresymplecticSpace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Offending subspaces or indices on failure.
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn record(&mut self, name: impl Into<String>, failure: Option<String>) {
        self.checks.push(CheckResult { name: name.into(), passed: failure.is_none(), detail: failure });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            write!(f, "{status} {}", c.name)?;
            if let Some(d) = &c.detail {
                write!(f, ": {d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Independently re-checks every property an elementary decomposition of
/// `pair` must have. Failures are recorded, never raised.
pub fn verify_decomposition(pair: &IsotropicPair, d: &ElementaryDecomposition) -> VerificationReport {
    let mut report = VerificationReport::default();
    let n = pair.dim();
    let shape_ok = d.space == *pair.space()
        && d.summands.len() == NUM_TYPES
        && d.summands.iter().enumerate().all(|(i, s)| {
            s.type_index == i + 1
                && [&s.space, &s.a, &s.b].iter().all(|x| x.ambient_dim() == n)
        });
    if !shape_ok {
        report.record("shape", Some("expected ten summands of types 1..10 in the pair's space".into()));
        return report;
    }
    report.record("shape", None);
    // shapes agree from here on, so subspace operations cannot fail
    let run = |r: Result<Option<String>>| r.unwrap_or_else(|e| Some(e.to_string()));

    report.record("span", run(check_span(n, &d.summands)));
    check_orthogonality(pair.space(), &d.summands, &mut report);
    let r = pair.space().radical();
    report.record("distributivity A", run(check_distributive(pair.a(), &d.summands, |s| Some(&s.a))));
    report.record("distributivity B", run(check_distributive(pair.b(), &d.summands, |s| Some(&s.b))));
    report.record("distributivity R", run(check_distributive(&r, &d.summands, |_| None)));
    for s in &d.summands {
        let name = format!("type {}", s.type_index);
        report.record(name, run(check_type(pair.space(), s)));
    }
    let from_summands = d.multiplicities();
    let failure = match super::multiplicities(pair) {
        Ok(m) if m == from_summands => None,
        Ok(m) => Some(format!("summands give {from_summands}, invariants give {m}")),
        Err(e) => Some(e.to_string()),
    };
    report.record("multiplicities", failure);
    report
}

fn check_span(n: usize, summands: &[Summand]) -> Result<Option<String>> {
    let mut total = Subspace::zero(n);
    let mut dims = 0;
    for s in summands {
        total = total.sum(&s.space)?;
        dims += s.space.dim();
    }
    Ok(if !total.is_full() {
        Some(format!("summands span a subspace of dimension {} < {n}", total.dim()))
    } else if dims != n {
        Some(format!("summand dimensions add up to {dims}, not {n}"))
    } else {
        None
    })
}

fn check_orthogonality(space: &PresymplecticSpace, summands: &[Summand], report: &mut VerificationReport) {
    let mut bad = Vec::new();
    for (i, si) in summands.iter().enumerate() {
        let xi = si.space.basis().to_rows();
        for sj in &summands[i + 1..] {
            let xj = sj.space.basis().to_rows();
            if !space.gram(&xi, &xj).is_zero() {
                bad.push(format!("(V{}, V{})", si.type_index, sj.type_index));
            }
        }
    }
    let failure = (!bad.is_empty()).then(|| format!("not orthogonal: {}", bad.join(", ")));
    report.record("orthogonality", failure);
}

/// `w = ⊕ (w ∩ V_i)`, and each recorded part equals `w ∩ V_i`.
fn check_distributive<'a>(
    w: &Subspace,
    summands: &'a [Summand],
    recorded: impl Fn(&'a Summand) -> Option<&'a Subspace>,
) -> Result<Option<String>> {
    let mut total = Subspace::zero(w.ambient_dim());
    let mut dims = 0;
    for s in summands {
        let part = w.intersect(&s.space)?;
        if let Some(rec) = recorded(s) {
            if *rec != part {
                return Ok(Some(format!(
                    "recorded part of V{} has dim {} but the intersection has dim {}",
                    s.type_index,
                    rec.dim(),
                    part.dim()
                )));
            }
        }
        dims += part.dim();
        total = total.sum(&part)?;
    }
    Ok(if total != *w || dims != w.dim() {
        Some(format!("sum of intersections has dim {} but the subspace has dim {}", dims, w.dim()))
    } else {
        None
    })
}

/// The defining conditions of elementary type `i` for `(a, b)` in `V_i`.
fn check_type(space: &PresymplecticSpace, s: &Summand) -> Result<Option<String>> {
    let v = &s.space;
    let (a, b) = (&s.a, &s.b);
    let r = space.radical_of(v)?;
    let lag = |w: &Subspace| space.is_lagrangian_in(w, v);
    let ok = match s.type_index {
        1 => r == *v && a.is_zero() && b.is_zero(),
        2 => r == *v && a == v && b == v,
        3 => r == *v && a == v && b.is_zero(),
        4 => r == *v && a.is_zero() && b == v,
        5 => {
            let ar = a.sum(&r)?;
            v.dim() == 3 * r.dim()
                && r.meets_trivially(a)?
                && r.meets_trivially(b)?
                && a.meets_trivially(b)?
                && ar == b.sum(&r)?
                && ar == a.sum(b)?
        }
        6 => r.is_zero() && lag(a)? && a == b,
        7 => r.is_zero() && lag(a)? && b.is_zero(),
        8 => r.is_zero() && a.is_zero() && lag(b)?,
        9 => r.is_zero() && lag(a)? && lag(b)? && a.meets_trivially(b)?,
        10 => r.is_zero() && a.is_zero() && b.is_zero(),
        _ => false,
    };
    Ok((!ok).then(|| {
        format!(
            "dim V = {}, dim R = {}, dim A = {}, dim B = {}",
            v.dim(),
            r.dim(),
            a.dim(),
            b.dim()
        )
    }))
}
