//! Built-in audit run by `isopair selfcheck`.

use isopair::classify::matrix::{self, IntMatrix};
use isopair::classify::{
    canonical_model, elementary_decompose, invariants, normal_form, random_pair,
    verify_decomposition, IsotropicPair, MultiplicityVector, NUM_TYPES,
};
use isopair::poisson::{coisotropic_multiplicities, CoisotropicPair};
use isopair::Scalar;

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_BATCH: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfCheckReport {
    /// Checks in the order they ran; a failure stops the run.
    pub checks: Vec<(&'static str, Result<(), String>)>,
}

impl SelfCheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, r)| r.is_ok())
    }

    pub fn first_failure(&self) -> Option<(&'static str, &str)> {
        self.checks.iter().find_map(|(name, r)| r.as_ref().err().map(|e| (*name, e.as_str())))
    }
}

fn multiplicities_with(inv: &IntMatrix, pair: &IsotropicPair) -> Result<MultiplicityVector, String> {
    let k = invariants(pair).map_err(|e| e.to_string())?;
    let n = matrix::apply(inv, &k.0.map(|x| x as i64));
    if n.iter().any(|&x| x < 0) {
        return Err(format!("negative multiplicity from k = {k}"));
    }
    Ok(MultiplicityVector(n.map(|x| x as usize)))
}

fn column_check(m: &IntMatrix) -> Result<(), String> {
    for i in 1..=NUM_TYPES {
        let k = invariants(&canonical_model(i)).map_err(|e| e.to_string())?;
        let column: [i64; NUM_TYPES] = std::array::from_fn(|r| m[r][i - 1]);
        if k.0.map(|x| x as i64) != column {
            return Err(format!("column {i} is {column:?}, model {i} has k = {k}"));
        }
    }
    Ok(())
}

fn determinant_check(m: &IntMatrix) -> Result<(), String> {
    let d = matrix::determinant(m);
    if d == Scalar::one() || d == -Scalar::one() {
        Ok(())
    } else {
        Err(format!("det M = {d}"))
    }
}

fn inverse_check(m: &IntMatrix) -> Result<IntMatrix, String> {
    let inv = matrix::integer_inverse(m).ok_or("M has no integer inverse")?;
    let identity = isopair::Matrix::identity(NUM_TYPES);
    let (mm, ii) = (matrix::to_matrix(m), matrix::to_matrix(&inv));
    if mm.mul(&ii) != identity || ii.mul(&mm) != identity {
        return Err("M M⁻¹ is not the identity".into());
    }
    Ok(inv)
}

fn models_check(inv: &IntMatrix) -> Result<(), String> {
    for i in 1..=NUM_TYPES {
        let n = multiplicities_with(inv, &canonical_model(i))?;
        if n != MultiplicityVector::unit(i) {
            return Err(format!("model {i} classifies to {n}"));
        }
    }
    Ok(())
}

fn round_trip_check(inv: &IntMatrix, seed: u64, batch: usize) -> Result<(), String> {
    for j in 0..batch as u64 {
        let dim = (j % 9) as usize;
        let rank = 2 * ((j / 9) as usize % (dim / 2 + 1));
        let s = seed.wrapping_mul(1_000_003).wrapping_add(j);
        let g = random_pair(dim, rank, s).map_err(|e| e.to_string())?;
        let n = multiplicities_with(inv, &g.pair)?;
        if n != g.multiplicities {
            return Err(format!("seed {s}: expected n = {}, got {n}", g.multiplicities));
        }
        let d = elementary_decompose(&g.pair).map_err(|e| e.to_string())?;
        let report = verify_decomposition(&g.pair, &d);
        if let Some(c) = report.failures().next() {
            return Err(format!("seed {s}: decomposition check {} failed", c.name));
        }
        let w = normal_form(&g.pair).map_err(|e| format!("seed {s}: {e}"))?;
        if !w.check(&g.pair).map_err(|e| e.to_string())? {
            return Err(format!("seed {s}: witness fails"));
        }
        let cp = CoisotropicPair::from_isotropic_pair(&g.pair);
        if coisotropic_multiplicities(&cp).map_err(|e| e.to_string())? != n {
            return Err(format!("seed {s}: dual classification differs"));
        }
    }
    Ok(())
}

/// Runs every check against the given matrix; stops at the first failure.
pub fn selfcheck_with(m: &IntMatrix, seed: u64, batch: usize) -> SelfCheckReport {
    let mut checks = Vec::new();
    macro_rules! step {
        ($name:expr, $e:expr) => {
            match $e {
                Ok(v) => {
                    checks.push(($name, Ok(())));
                    v
                }
                Err(e) => {
                    checks.push(($name, Err(e)));
                    return SelfCheckReport { checks };
                }
            }
        };
    }
    step!("matrix M column check", column_check(m));
    step!("matrix M unit determinant", determinant_check(m));
    let inv = step!("matrix M integer inverse", inverse_check(m));
    step!("canonical models", models_check(&inv));
    step!("seeded round trips", round_trip_check(&inv, seed, batch));
    SelfCheckReport { checks }
}

pub fn selfcheck(seed: u64) -> SelfCheckReport {
    selfcheck_with(matrix::multiplicity_matrix(), seed, DEFAULT_BATCH)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passes_on_the_real_matrix() {
        let r = selfcheck(DEFAULT_SEED);
        assert!(r.passed(), "{:?}", r.first_failure());
        assert_eq!(r.checks.len(), 5);
    }

    #[test]
    fn perturbed_matrix_fails_the_column_check() {
        let mut m = *matrix::multiplicity_matrix();
        m[3][7] += 1;
        let r = selfcheck_with(&m, DEFAULT_SEED, 1);
        assert_eq!(r.first_failure().unwrap().0, "matrix M column check");
    }
}
