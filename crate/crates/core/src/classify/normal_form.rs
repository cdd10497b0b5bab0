use crate::classify::{
    elementary_decompose, multiplicities, refine_to_indecomposables, IsotropicPair,
    MultiplicityVector, BLOCK_DIMS, NUM_TYPES,
};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, Subspace};
use crate::presymplectic::{is_presymplectomorphism, LinearMap, PresymplecticSpace};

/// A presymplectomorphism `phi` from the input space onto the canonical
/// model with the same multiplicities, carrying `A` and `B` onto the
/// model's subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormWitness {
    pub multiplicities: MultiplicityVector,
    pub model: IsotropicPair,
    pub phi: LinearMap,
}

impl NormalFormWitness {
    /// Re-checks the witness against `pair`.
    pub fn check(&self, pair: &IsotropicPair) -> Result<bool> {
        Ok(is_presymplectomorphism(&self.phi, pair.space(), self.model.space())?
            && self.phi.image(pair.a())? == *self.model.a()
            && self.phi.image(pair.b())? == *self.model.b())
    }
}

/// Generators of the indecomposable model of type `i` (one-based), as
/// `(dim, rank, A vectors, B vectors)`.
fn model_data(i: usize) -> (usize, usize, Vec<Vec<i64>>, Vec<Vec<i64>>) {
    match i {
        1 => (1, 0, vec![], vec![]),
        2 => (1, 0, vec![vec![1]], vec![vec![1]]),
        3 => (1, 0, vec![vec![1]], vec![]),
        4 => (1, 0, vec![], vec![vec![1]]),
        5 => (3, 2, vec![vec![1, 0, 0]], vec![vec![1, 0, 1]]),
        6 => (2, 2, vec![vec![1, 0]], vec![vec![1, 0]]),
        7 => (2, 2, vec![vec![1, 0]], vec![]),
        8 => (2, 2, vec![], vec![vec![0, 1]]),
        9 => (2, 2, vec![vec![1, 0]], vec![vec![0, 1]]),
        10 => (2, 2, vec![], vec![]),
        _ => panic!("type index {i} out of range 1..=10"),
    }
}

/// The indecomposable model of type `i` (one-based).
pub fn canonical_model(i: usize) -> IsotropicPair {
    let (dim, rank, a, b) = model_data(i);
    let space = PresymplecticSpace::standard(dim, rank).expect("valid model rank");
    IsotropicPair::new(space, Subspace::from_ints(dim, &a), Subspace::from_ints(dim, &b))
        .expect("models are isotropic")
}

/// Ordered direct sum of the models: type 1 first, each type's copies
/// contiguous.
pub fn pair_from_multiplicities(n: &MultiplicityVector) -> IsotropicPair {
    let total = n.total_dim();
    let mut spaces = Vec::new();
    let mut a_vecs = Vec::new();
    let mut b_vecs = Vec::new();
    let mut offset = 0;
    for i in 1..=NUM_TYPES {
        let (dim, rank, a, b) = model_data(i);
        debug_assert_eq!(dim, BLOCK_DIMS[i - 1]);
        let space = PresymplecticSpace::standard(dim, rank).expect("valid model rank");
        for _ in 0..n.get(i) {
            let shift = |v: &Vec<i64>| {
                let mut out = vec![Scalar::zero(); total];
                for (k, &x) in v.iter().enumerate() {
                    out[offset + k] = Scalar::from_int(x);
                }
                out
            };
            a_vecs.extend(a.iter().map(shift));
            b_vecs.extend(b.iter().map(shift));
            spaces.push(space.clone());
            offset += dim;
        }
    }
    let space = PresymplecticSpace::direct_sum(&spaces);
    let a = Subspace::span(total, a_vecs).expect("shapes agree");
    let b = Subspace::span(total, b_vecs).expect("shapes agree");
    IsotropicPair::new(space, a, b).expect("models are isotropic")
}

/// Decomposes, refines, and assembles the map onto the canonical model.
/// The multiplicities from the construction are cross-checked against the
/// invariants, and the witness is re-verified before it is returned.
pub fn normal_form(pair: &IsotropicPair) -> Result<NormalFormWitness> {
    let d = elementary_decompose(pair)?;
    let n = d.multiplicities();
    let from_invariants = multiplicities(pair)?;
    if n != from_invariants {
        return Err(Error::Inconsistent(format!(
            "decomposition gives {n}, invariants give {from_invariants}"
        )));
    }
    let blocks = refine_to_indecomposables(&d)?;
    let dim = pair.dim();
    let columns: Vec<&Vec<Scalar>> = blocks.iter().flat_map(|b| &b.basis).collect();
    if columns.len() != dim {
        return Err(Error::Inconsistent("blocks do not form a basis".into()));
    }
    let basis = Matrix::from_fn(dim, dim, |i, j| columns[j][i].clone());
    let inv = basis
        .inverse()?
        .ok_or_else(|| Error::Inconsistent("block bases are dependent".into()))?;
    let witness = NormalFormWitness {
        multiplicities: n,
        model: pair_from_multiplicities(&n),
        phi: LinearMap::from_matrix(inv),
    };
    if !witness.check(pair)? {
        return Err(Error::Inconsistent("normal form witness fails verification".into()));
    }
    Ok(witness)
}
