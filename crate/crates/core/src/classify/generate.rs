//! Seeded generator of isotropic pairs with known multiplicities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{pair_from_multiplicities, IsotropicPair, MultiplicityVector};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::presymplectic::{LinearMap, PresymplecticSpace};

/// A generated pair with its ground truth: `map` sends the canonical model
/// of `multiplicities` onto `pair`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedPair {
    pub pair: IsotropicPair,
    pub multiplicities: MultiplicityVector,
    pub map: LinearMap,
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniformly spreads `dim` and `rank` over the ten types: `n5` radical
/// directions pair up with `n5` symplectic planes, the rest of the radical
/// goes to types 1..4 and the rest of the symplectic part to types 6..10.
pub fn random_multiplicities<R: Rng + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> Result<MultiplicityVector> {
    if !rank.is_multiple_of(2) || rank > dim {
        return Err(Error::InvalidRank { dim, rank });
    }
    let s = rank / 2;
    let r = dim - rank;
    let mut n = [0usize; 10];
    n[4] = rng.gen_range(0..=s.min(r));
    for _ in 0..r - n[4] {
        n[rng.gen_range(0..4)] += 1;
    }
    for _ in 0..s - n[4] {
        n[rng.gen_range(5..10)] += 1;
    }
    Ok(MultiplicityVector(n))
}

fn sparse_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Scalar> {
    (0..n).map(|_| Scalar::from_int(rng.gen_range(-1..=1))).collect()
}

fn sign<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    Scalar::from_int(if rng.gen_bool(0.5) { 1 } else { -1 })
}

/// `I + c E_ij` applied on the left of `m`: row `i` gains `c` times row `j`.
fn add_row(m: &mut Matrix, i: usize, j: usize, c: &Scalar) {
    for k in 0..m.cols() {
        let v = &m[(j, k)] * c;
        m[(i, k)] += &v;
    }
}

/// A random automorphism `g` of `space` (`gᵀ Ω g = Ω`): a product of
/// transvections `v ↦ v + c ω(u, v) u` and radical shears
/// `v ↦ v + c v_j r` with `r` in the radical and `r_j = 0`.
pub fn random_automorphism<R: Rng + ?Sized>(space: &PresymplecticSpace, rng: &mut R) -> LinearMap {
    let n = space.dim();
    let mut g = Matrix::identity(n);
    if n == 0 {
        return LinearMap::from_matrix(g);
    }
    let omega = space.omega();
    let radical: Vec<Vec<Scalar>> = space.radical().vectors().map(<[Scalar]>::to_vec).collect();
    let symplectic = space.rank() > 0;
    for _ in 0..2 * n {
        if symplectic && (radical.is_empty() || rng.gen_bool(0.6)) {
            // g += c u (uᵀ Ω g)
            let u = sparse_vector(n, rng);
            let c = sign(rng);
            let w = omega.transpose().mul_vec(&u);
            let wg = g.transpose().mul_vec(&w);
            for i in (0..n).filter(|&i| !u[i].is_zero()) {
                let f = &c * &u[i];
                for (k, x) in wg.iter().enumerate() {
                    let v = &f * x;
                    g[(i, k)] += &v;
                }
            }
        } else if !radical.is_empty() {
            // g += c r (e_jᵀ g) with r_j = 0, so the determinant stays 1
            let r = &radical[rng.gen_range(0..radical.len())];
            let free: Vec<usize> = (0..n).filter(|&j| r[j].is_zero()).collect();
            if free.is_empty() {
                continue;
            }
            let j = free[rng.gen_range(0..free.len())];
            let c = sign(rng);
            for i in (0..n).filter(|&i| !r[i].is_zero()) {
                add_row(&mut g, i, j, &(&c * &r[i]));
            }
        }
    }
    LinearMap::from_matrix(g)
}

/// Random unimodular integer matrix built from elementary row operations,
/// together with its inverse.
fn random_unimodular<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (Matrix, Matrix) {
    let mut h = Matrix::identity(n);
    let mut h_inv = Matrix::identity(n);
    if n < 2 {
        return (h, h_inv);
    }
    for _ in 0..n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = sign(rng);
        add_row(&mut h, i, j, &c);
        // (I + c E_ij)⁻¹ = I - c E_ij, applied on the right
        for k in 0..n {
            let v = &h_inv[(k, i)] * &c;
            h_inv[(k, j)] -= &v;
        }
    }
    (h, h_inv)
}

/// A random presymplectomorphism out of `space`: a random automorphism
/// followed by a change of basis `h`, landing in the space with form
/// `hᵀ Ω h`. Returns the target space and the map.
pub fn random_presymplectomorphism<R: Rng + ?Sized>(
    space: &PresymplecticSpace,
    rng: &mut R,
) -> (PresymplecticSpace, LinearMap) {
    let n = space.dim();
    let g = random_automorphism(space, rng);
    let (h, h_inv) = random_unimodular(n, rng);
    debug_assert!(h.mul(&h_inv) == Matrix::identity(n));
    let target = PresymplecticSpace::new(h.transpose().mul(space.omega()).mul(&h))
        .expect("congruent to a skew form");
    let map = LinearMap::from_matrix(h_inv.mul(g.matrix()));
    (target, map)
}

/// Pushes `pair` forward along a random presymplectomorphism.
pub fn random_conjugate<R: Rng + ?Sized>(pair: &IsotropicPair, rng: &mut R) -> (IsotropicPair, LinearMap) {
    let (target, map) = random_presymplectomorphism(pair.space(), rng);
    let a = map.image(pair.a()).expect("shapes agree");
    let b = map.image(pair.b()).expect("shapes agree");
    let image = IsotropicPair::new(target, a, b).expect("isotropy is preserved");
    (image, map)
}

/// The canonical model of `n`, conjugated by a random presymplectomorphism.
pub fn conjugated_model(n: &MultiplicityVector, seed: u64) -> GeneratedPair {
    let mut rng = rng_from_seed(seed);
    let model = pair_from_multiplicities(n);
    let (pair, map) = random_conjugate(&model, &mut rng);
    GeneratedPair { pair, multiplicities: *n, map }
}

/// A pseudo-random pair in dimension `dim` with form of rank `rank`,
/// deterministic in `seed`.
pub fn random_pair(dim: usize, rank: usize, seed: u64) -> Result<GeneratedPair> {
    let mut rng = rng_from_seed(seed);
    let n = random_multiplicities(dim, rank, &mut rng)?;
    let model = pair_from_multiplicities(&n);
    let (pair, map) = random_conjugate(&model, &mut rng);
    Ok(GeneratedPair { pair, multiplicities: n, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::multiplicities;
    use crate::presymplectic::is_presymplectomorphism;

    #[test]
    fn empty_pair() {
        let g = random_pair(0, 0, 3).unwrap();
        assert_eq!(g.pair.dim(), 0);
        assert_eq!(g.multiplicities, MultiplicityVector::zero());
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(random_pair(9, 4, 11).unwrap(), random_pair(9, 4, 11).unwrap());
        assert_ne!(random_pair(9, 4, 11).unwrap().pair, random_pair(9, 4, 12).unwrap().pair);
    }

    #[test]
    fn ground_truth_is_recovered() {
        let g = random_pair(12, 8, 7).unwrap();
        assert_eq!(g.pair.space().rank(), 8);
        assert_eq!(g.multiplicities.total_dim(), 12);
        assert_eq!(multiplicities(&g.pair).unwrap(), g.multiplicities);
    }

    #[test]
    fn rejects_bad_rank() {
        assert_eq!(random_pair(4, 3, 0).unwrap_err(), Error::InvalidRank { dim: 4, rank: 3 });
        assert_eq!(random_pair(4, 6, 0).unwrap_err(), Error::InvalidRank { dim: 4, rank: 6 });
    }

    #[test]
    fn map_is_a_presymplectomorphism() {
        for seed in 0..20 {
            let n = random_multiplicities(7, 4, &mut rng_from_seed(seed)).unwrap();
            let g = conjugated_model(&n, seed);
            let model = pair_from_multiplicities(&n);
            assert!(is_presymplectomorphism(&g.map, model.space(), g.pair.space()).unwrap());
            assert_eq!(g.map.image(model.a()).unwrap(), *g.pair.a());
        }
    }
}
