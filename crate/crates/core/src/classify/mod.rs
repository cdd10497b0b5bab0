//! Classification of isotropic pairs up to presymplectomorphism.
//!
//! Two routes are provided and cross-checked: the dimension invariants `k`
//! turned into multiplicities through `M⁻¹`, and the constructive
//! decomposition into elementary summands refined into indecomposable
//! blocks.

mod decompose;
mod generate;
pub mod matrix;
mod normal_form;
mod refine;
mod verify;

use std::fmt;

use crate::error::{check_dim, Error, Result};
use crate::linalg::Subspace;
use crate::presymplectic::PresymplecticSpace;

pub use decompose::{elementary_decompose, ElementaryDecomposition, Summand, Trace};
pub use generate::{
    conjugated_model, random_automorphism, random_conjugate, random_multiplicities, random_pair,
    random_presymplectomorphism, rng_from_seed, GeneratedPair,
};
pub use normal_form::{canonical_model, normal_form, pair_from_multiplicities, NormalFormWitness};
pub use refine::{refine_to_indecomposables, Block};
pub use verify::{verify_decomposition, CheckResult, VerificationReport};

pub const NUM_TYPES: usize = 10;

/// Ambient dimension of the indecomposable model of each type.
pub const BLOCK_DIMS: [usize; NUM_TYPES] = [1, 1, 1, 1, 3, 2, 2, 2, 2, 2];

/// An ordered pair `(A, B)` of isotropic subspaces of one presymplectic space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IsotropicPair {
    space: PresymplecticSpace,
    a: Subspace,
    b: Subspace,
}

impl IsotropicPair {
    pub fn new(space: PresymplecticSpace, a: Subspace, b: Subspace) -> Result<Self> {
        check_dim(space.dim(), a.ambient_dim())?;
        check_dim(space.dim(), b.ambient_dim())?;
        if !space.is_isotropic(&a)? {
            return Err(Error::NotIsotropic("A".into()));
        }
        if !space.is_isotropic(&b)? {
            return Err(Error::NotIsotropic("B".into()));
        }
        Ok(IsotropicPair { space, a, b })
    }

    pub fn space(&self) -> &PresymplecticSpace {
        &self.space
    }

    pub fn a(&self) -> &Subspace {
        &self.a
    }

    pub fn b(&self) -> &Subspace {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `(B, A)`.
    pub fn swapped(&self) -> IsotropicPair {
        IsotropicPair { space: self.space.clone(), a: self.b.clone(), b: self.a.clone() }
    }
}

/// The ten dimension invariants `k_1..k_10`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct InvariantVector(pub [usize; NUM_TYPES]);

/// Multiplicities `n_1..n_10` of the indecomposable types.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct MultiplicityVector(pub [usize; NUM_TYPES]);

fn to_i64(v: &[usize; NUM_TYPES]) -> [i64; NUM_TYPES] {
    v.map(|x| x as i64)
}

fn write_list(f: &mut fmt::Formatter<'_>, v: &[usize; NUM_TYPES]) -> fmt::Result {
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl InvariantVector {
    /// `k_i`, one-based.
    pub fn get(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// `M⁻¹ k`, provided every entry is non-negative.
    pub fn to_multiplicities(&self) -> Result<MultiplicityVector> {
        let n = matrix::apply(matrix::multiplicity_matrix_inverse(), &to_i64(&self.0));
        if let Some(i) = n.iter().position(|&x| x < 0) {
            return Err(Error::Inconsistent(format!(
                "invariants {self} give negative multiplicity n{} = {}",
                i + 1,
                n[i]
            )));
        }
        Ok(MultiplicityVector(n.map(|x| x as usize)))
    }

    /// The inequalities every realizable invariant vector satisfies.
    pub fn satisfies_constraints(&self, dim: usize) -> bool {
        let k = &self.0;
        2 * k[0] <= dim && k[4] <= k[2].min(k[3]) && k[7] <= k[5].min(k[6]) && k[8] <= k[1]
    }
}

impl fmt::Display for InvariantVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

impl MultiplicityVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit vector of type `i` (one-based).
    pub fn unit(i: usize) -> Self {
        let mut n = [0; NUM_TYPES];
        n[i - 1] = 1;
        MultiplicityVector(n)
    }

    /// `n_i`, one-based.
    pub fn get(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// `n1 + n2 + n3 + n4 + 3 n5 + 2 (n6 + ... + n10)`.
    pub fn total_dim(&self) -> usize {
        self.0.iter().zip(BLOCK_DIMS).map(|(n, d)| n * d).sum()
    }

    /// Rank of the form on the model: `2 (n5 + ... + n10)`.
    pub fn rank(&self) -> usize {
        2 * self.0[4..].iter().sum::<usize>()
    }

    pub fn block_count(&self) -> usize {
        self.0.iter().sum()
    }

    /// `M n`.
    pub fn to_invariants(&self) -> InvariantVector {
        let k = matrix::apply(matrix::multiplicity_matrix(), &to_i64(&self.0));
        InvariantVector(k.map(|x| x as usize))
    }
}

impl fmt::Display for MultiplicityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

impl std::ops::Add for MultiplicityVector {
    type Output = MultiplicityVector;
    fn add(self, rhs: Self) -> Self {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o += r;
        }
        MultiplicityVector(out)
    }
}

/// The invariants
/// `k = (½(dim V − dim R), dim R, dim A, dim B, dim A∩B, dim R∩A, dim R∩B,
/// dim R∩A∩B, dim R∩(A+B), dim A⊥∩B)`.
pub fn invariants(pair: &IsotropicPair) -> Result<InvariantVector> {
    let (sp, a, b) = (&pair.space, &pair.a, &pair.b);
    // dim X∩Y = dim X + dim Y - dim(X+Y); sums are much cheaper than meets
    let meet = |x: &Subspace, y: &Subspace| -> Result<usize> { Ok(x.dim() + y.dim() - x.sum(y)?.dim()) };
    let r = sp.radical();
    let ab = a.intersect(b)?;
    Ok(InvariantVector([
        (sp.dim() - r.dim()) / 2,
        r.dim(),
        a.dim(),
        b.dim(),
        ab.dim(),
        meet(&r, a)?,
        meet(&r, b)?,
        // R∩A ∩ R∩B = R ∩ (A∩B)
        meet(&r, &ab)?,
        meet(&r, &a.sum(b)?)?,
        meet(&sp.orthogonal(a)?, b)?,
    ]))
}

/// `dim B⊥ ∩ A`, the tenth invariant with the roles of `A` and `B` exchanged.
pub fn swapped_tenth_invariant(pair: &IsotropicPair) -> Result<usize> {
    Ok(pair.space.orthogonal(&pair.b)?.intersect(&pair.a)?.dim())
}

/// `n = M⁻¹ k`.
pub fn multiplicities(pair: &IsotropicPair) -> Result<MultiplicityVector> {
    invariants(pair)?.to_multiplicities()
}

/// Equivalence up to presymplectomorphism: equal multiplicity vectors.
pub fn equivalent(p1: &IsotropicPair, p2: &IsotropicPair) -> Result<bool> {
    if p1.dim() != p2.dim() {
        return Ok(false);
    }
    Ok(multiplicities(p1)? == multiplicities(p2)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(space: PresymplecticSpace, a: &[&[i64]], b: &[&[i64]]) -> IsotropicPair {
        let n = space.dim();
        IsotropicPair::new(space, Subspace::from_ints(n, a), Subspace::from_ints(n, b)).unwrap()
    }

    fn std(dim: usize, rank: usize) -> PresymplecticSpace {
        PresymplecticSpace::standard(dim, rank).unwrap()
    }

    #[test]
    fn invariants_of_single_models() {
        let t5 = pair(std(3, 2), &[&[1, 0, 0]], &[&[1, 0, 1]]);
        assert_eq!(invariants(&t5).unwrap().0, [1, 1, 1, 1, 0, 0, 0, 0, 1, 1]);
        let t6 = pair(std(2, 2), &[&[1, 0]], &[&[1, 0]]);
        assert_eq!(invariants(&t6).unwrap().0, [1, 0, 1, 1, 1, 0, 0, 0, 0, 1]);
        let t9 = pair(std(2, 2), &[&[1, 0]], &[&[0, 1]]);
        assert_eq!(invariants(&t9).unwrap().0, [1, 0, 1, 1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn multiplicities_examples() {
        let t5 = pair(std(3, 2), &[&[1, 0, 0]], &[&[1, 0, 1]]);
        assert_eq!(multiplicities(&t5).unwrap(), MultiplicityVector::unit(5));
        let empty = pair(PresymplecticSpace::zero(0), &[], &[]);
        assert_eq!(multiplicities(&empty).unwrap(), MultiplicityVector::zero());
        // type 2 ⊕ type 9: dim 3, form 0 ⊕ standard, A = <e1, e2>, B = <e1, e3>
        let omega = crate::Matrix::from_ints(3, &[[0, 0, 0], [0, 0, 1], [0, -1, 0]]);
        let p = pair(PresymplecticSpace::new(omega).unwrap(), &[&[1, 0, 0], &[0, 1, 0]], &[&[1, 0, 0], &[0, 0, 1]]);
        let expected = MultiplicityVector::unit(2) + MultiplicityVector::unit(9);
        assert_eq!(multiplicities(&p).unwrap(), expected);
        assert_eq!(invariants(&p).unwrap().0, [1, 1, 2, 2, 1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn column_sum_oracle() {
        // M (e2 + e9) by summing the two columns directly
        let m = matrix::multiplicity_matrix();
        let cols: Vec<usize> = (0..10).map(|r| (m[r][1] + m[r][8]) as usize).collect();
        let n = MultiplicityVector::unit(2) + MultiplicityVector::unit(9);
        assert_eq!(n.to_invariants().0.to_vec(), cols);
    }

    #[test]
    fn rejects_non_isotropic() {
        let err = IsotropicPair::new(std(2, 2), Subspace::full(2), Subspace::zero(2)).unwrap_err();
        assert_eq!(err, Error::NotIsotropic("A".into()));
        let err = IsotropicPair::new(std(2, 2), Subspace::zero(2), Subspace::full(2)).unwrap_err();
        assert_eq!(err, Error::NotIsotropic("B".into()));
        assert!(IsotropicPair::new(std(2, 2), Subspace::zero(3), Subspace::zero(2)).is_err());
    }

    #[test]
    fn negative_multiplicities_are_inconsistent() {
        let k = InvariantVector([0, 0, 1, 0, 0, 0, 0, 0, 0, 0]);
        assert!(matches!(k.to_multiplicities(), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn equivalence_examples() {
        let t3 = pair(PresymplecticSpace::zero(1), &[&[1]], &[]);
        let t4 = pair(PresymplecticSpace::zero(1), &[], &[&[1]]);
        assert!(equivalent(&t3, &t3).unwrap());
        assert!(!equivalent(&t3, &t4).unwrap());
        let t9 = pair(std(2, 2), &[&[1, 0]], &[&[0, 1]]);
        assert!(equivalent(&t9, &t9.swapped()).unwrap());
        assert!(!equivalent(&t3, &t9).unwrap());
    }

    #[test]
    fn bookkeeping() {
        let n = MultiplicityVector([1, 1, 1, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(n.total_dim(), 17);
        assert_eq!(n.rank(), 12);
        assert_eq!(n.to_string(), "1,1,1,1,1,1,1,1,1,1");
    }
}
