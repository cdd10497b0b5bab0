use crate::classify::{ElementaryDecomposition, IsotropicPair, Summand, BLOCK_DIMS};
use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix, Scalar, Subspace};
use crate::presymplectic::{symplectic_basis, symplectic_basis_adapted, PresymplecticSpace};

/// One indecomposable block: its basis in the ambient space and the pair it
/// carries, expressed in that basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub type_index: usize,
    pub basis: Vec<Vec<Scalar>>,
    pub pair: IsotropicPair,
}

fn malformed(i: usize, what: &str) -> Error {
    Error::MalformedDecomposition(format!("summand {i}: {what}"))
}

/// Splits every elementary summand into copies of its indecomposable model.
/// Blocks come out in type order.
pub fn refine_to_indecomposables(d: &ElementaryDecomposition) -> Result<Vec<Block>> {
    let sp = &d.space;
    let mut blocks = Vec::new();
    for s in &d.summands {
        if s.space.is_zero() {
            continue;
        }
        let i = s.type_index;
        if !(1..=BLOCK_DIMS.len()).contains(&i) || s.space.dim() % BLOCK_DIMS[i - 1] != 0 {
            return Err(malformed(i, "dimension is not a multiple of the block size"));
        }
        let bases = match i {
            1..=4 => s.space.vectors().map(|v| vec![v.to_vec()]).collect(),
            5 => type_five_bases(sp, s)?,
            6 | 7 => lagrangian_bases(sp, s, &s.a, None, false)?,
            8 => lagrangian_bases(sp, s, &s.b, None, true)?,
            9 => lagrangian_bases(sp, s, &s.a, Some(&s.b), false)?,
            _ => {
                let basis = symplectic_basis(sp, &s.space).map_err(|e| malformed(i, &e.to_string()))?;
                basis.u.into_iter().zip(basis.p).map(|(u, p)| vec![u, p]).collect()
            }
        };
        for basis in bases {
            let pair = local_pair(sp, s, &basis)?;
            blocks.push(Block { type_index: i, basis, pair });
        }
    }
    Ok(blocks)
}

/// Blocks `(u_j, p_j)` from a symplectic basis whose `u` vectors span
/// `lagrangian`; with `flip` the block is `(-p_j, u_j)` instead, which puts
/// the lagrangian on the second coordinate.
fn lagrangian_bases(
    sp: &PresymplecticSpace,
    s: &Summand,
    lagrangian: &Subspace,
    complement: Option<&Subspace>,
    flip: bool,
) -> Result<Vec<Vec<Vec<Scalar>>>> {
    let us: Vec<Vec<Scalar>> = lagrangian.vectors().map(<[Scalar]>::to_vec).collect();
    let basis = symplectic_basis_adapted(sp, &s.space, &us, complement)
        .map_err(|e| malformed(s.type_index, &e.to_string()))?;
    Ok(basis
        .u
        .into_iter()
        .zip(basis.p)
        .map(|(u, p)| if flip { vec![p.iter().map(|x| -x).collect(), u] } else { vec![u, p] })
        .collect())
}

/// Write each basis vector of `B` as `b_j = r_j + a_j`, take a complement
/// `U` of `R` containing `A`, complete the `a_j` to a symplectic basis of
/// `U` with vectors `p_j`, and use `(a_j, p_j, r_j)` as block bases.
fn type_five_bases(sp: &PresymplecticSpace, s: &Summand) -> Result<Vec<Vec<Vec<Scalar>>>> {
    let r = sp.radical_of(&s.space)?;
    let m = r.dim();
    if s.a.dim() != m || s.b.dim() != m || s.space.dim() != 3 * m {
        return Err(malformed(5, "dimensions do not match dim V = 3 dim R = 3 dim A = 3 dim B"));
    }
    // columns: basis of R, then basis of A
    let cols: Vec<&[Scalar]> = r.vectors().chain(s.a.vectors()).collect();
    let n = sp.dim();
    let system = Matrix::from_fn(n, 2 * m, |i, j| cols[j][i].clone());
    let mut rs = Vec::with_capacity(m);
    let mut as_ = Vec::with_capacity(m);
    for b in s.b.vectors() {
        let x = solve(&system, b).ok_or_else(|| malformed(5, "B is not contained in R + A"))?;
        let combine = |range: std::ops::Range<usize>| {
            let mut v = vec![Scalar::zero(); n];
            for j in range {
                if x[j].is_zero() {
                    continue;
                }
                for (vi, ci) in v.iter_mut().zip(cols[j]) {
                    *vi += &(&x[j] * ci);
                }
            }
            v
        };
        rs.push(combine(0..m));
        as_.push(combine(m..2 * m));
    }
    let u = r.complement_within(&s.space, &s.a)?;
    let basis =
        symplectic_basis_adapted(sp, &u, &as_, None).map_err(|e| malformed(5, &e.to_string()))?;
    Ok(as_.into_iter().zip(basis.p).zip(rs).map(|((a, p), r)| vec![a, p, r]).collect())
}

/// The pair induced on `span(basis)`, in the coordinates of `basis`.
fn local_pair(sp: &PresymplecticSpace, s: &Summand, basis: &[Vec<Scalar>]) -> Result<IsotropicPair> {
    let k = basis.len();
    let n = sp.dim();
    let omega = sp.gram(basis, basis);
    let local_space = PresymplecticSpace::new(omega)?;
    let w = Subspace::span(n, basis.iter().cloned())?;
    if w.dim() != k {
        return Err(malformed(s.type_index, "block basis is dependent"));
    }
    let coords = Matrix::from_fn(n, k, |i, j| basis[j][i].clone());
    let local = |x: &Subspace| -> Result<Subspace> {
        let part = x.intersect(&w)?;
        let vs: Vec<Vec<Scalar>> =
            part.vectors().map(|v| solve(&coords, v).expect("vector lies in the block")).collect();
        Subspace::span(k, vs)
    };
    IsotropicPair::new(local_space, local(&s.a)?, local(&s.b)?)
}
