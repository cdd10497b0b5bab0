//! Presymplectic vector spaces `(Q^n, ω)` with a possibly degenerate
//! skew-symmetric form, and the subspace toolkit built on top of them:
//! orthogonals, radicals, isotropy tests, adapted symplectic bases and the
//! reduction splitting of an isotropic subspace.

use crate::error::{check_dim, Error, Result};
use crate::linalg::{dot, kernel, solve, Matrix, Scalar, Subspace};

/// `Q^n` equipped with a skew-symmetric bilinear form `ω(u, v) = uᵀ Ω v`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PresymplecticSpace {
    omega: Matrix,
}

impl PresymplecticSpace {
    /// Rejects matrices that are not square and skew-symmetric.
    pub fn new(omega: Matrix) -> Result<Self> {
        if !omega.is_skew_symmetric() {
            return Err(Error::NotSkewSymmetric);
        }
        Ok(PresymplecticSpace { omega })
    }

    /// `Q^n` with the zero form.
    pub fn zero(dim: usize) -> Self {
        PresymplecticSpace { omega: Matrix::zeros(dim, dim) }
    }

    /// The standard form of rank `2k` on `Q^n`: `[[0, I_k, 0], [-I_k, 0, 0], [0, 0, 0]]`.
    pub fn standard(dim: usize, rank: usize) -> Result<Self> {
        if !rank.is_multiple_of(2) || rank > dim {
            return Err(Error::InvalidRank { dim, rank });
        }
        let k = rank / 2;
        let mut omega = Matrix::zeros(dim, dim);
        for i in 0..k {
            omega[(i, k + i)] = Scalar::one();
            omega[(k + i, i)] = -Scalar::one();
        }
        Ok(PresymplecticSpace { omega })
    }

    /// Orthogonal direct sum: block-diagonal form.
    pub fn direct_sum<'a>(parts: impl IntoIterator<Item = &'a PresymplecticSpace>) -> Self {
        let blocks: Vec<&Matrix> = parts.into_iter().map(|p| &p.omega).collect();
        PresymplecticSpace { omega: Matrix::block_diag(blocks) }
    }

    pub fn dim(&self) -> usize {
        self.omega.rows()
    }

    pub fn omega(&self) -> &Matrix {
        &self.omega
    }

    pub fn rank(&self) -> usize {
        self.omega.rank()
    }

    pub fn form(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        dot(u, &self.omega.mul_vec(v))
    }

    /// Gram matrix `G[i][j] = ω(xs[i], ys[j])`.
    pub fn gram<U, V>(&self, xs: &[U], ys: &[V]) -> Matrix
    where
        U: AsRef<[Scalar]>,
        V: AsRef<[Scalar]>,
    {
        let oys: Vec<Vec<Scalar>> = ys.iter().map(|y| self.omega.mul_vec(y.as_ref())).collect();
        Matrix::from_fn(xs.len(), ys.len(), |i, j| dot(xs[i].as_ref(), &oys[j]))
    }

    fn check(&self, w: &Subspace) -> Result<()> {
        check_dim(self.dim(), w.ambient_dim())
    }

    /// `R = V⊥ = ker Ω`.
    pub fn radical(&self) -> Subspace {
        kernel(&self.omega)
    }

    /// `W⊥ = {v : ω(v, x) = 0 for all x in W}`.
    pub fn orthogonal(&self, w: &Subspace) -> Result<Subspace> {
        self.check(w)?;
        if w.is_zero() {
            return Ok(Subspace::full(self.dim()));
        }
        Ok(kernel(&w.basis().mul(&self.omega)))
    }

    /// `W⊥ ∩ C`, the orthogonal of `W` taken inside the presymplectic subspace `C`.
    pub fn orthogonal_within(&self, w: &Subspace, c: &Subspace) -> Result<Subspace> {
        self.orthogonal(w)?.intersect(c)
    }

    /// Radical `C ∩ C⊥` of a subspace viewed as a presymplectic space.
    pub fn radical_of(&self, c: &Subspace) -> Result<Subspace> {
        self.orthogonal_within(c, c)
    }

    pub fn is_isotropic(&self, w: &Subspace) -> Result<bool> {
        self.check(w)?;
        let rows = w.basis().to_rows();
        Ok(self.gram(&rows, &rows).is_zero())
    }

    /// Whether the form restricted to `w` is non-degenerate.
    pub fn is_symplectic_subspace(&self, w: &Subspace) -> Result<bool> {
        self.check(w)?;
        let rows = w.basis().to_rows();
        Ok(self.gram(&rows, &rows).is_invertible())
    }

    /// Lagrangian test; only defined when the whole space is symplectic.
    pub fn is_lagrangian(&self, w: &Subspace) -> Result<bool> {
        self.check(w)?;
        let r = self.radical().dim();
        if r != 0 {
            return Err(Error::NotSymplectic(r));
        }
        Ok(2 * w.dim() == self.dim() && self.is_isotropic(w)?)
    }

    /// Lagrangian test inside a symplectic subspace `c`.
    pub fn is_lagrangian_in(&self, w: &Subspace, c: &Subspace) -> Result<bool> {
        Ok(c.contains(w)? && 2 * w.dim() == c.dim() && self.is_isotropic(w)?)
    }
}

/// A linear map `Q^source_dim -> Q^target_dim`, acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(source_dim: usize, target_dim: usize, matrix: Matrix) -> Result<Self> {
        check_dim(target_dim, matrix.rows())?;
        check_dim(source_dim, matrix.cols())?;
        Ok(LinearMap { matrix })
    }

    pub fn from_matrix(matrix: Matrix) -> Self {
        LinearMap { matrix }
    }

    pub fn identity(n: usize) -> Self {
        LinearMap { matrix: Matrix::identity(n) }
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }

    pub fn image(&self, w: &Subspace) -> Result<Subspace> {
        w.image(&self.matrix)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &LinearMap) -> Result<LinearMap> {
        Ok(LinearMap { matrix: self.matrix.checked_mul(&first.matrix)? })
    }

    pub fn inverse(&self) -> Result<Option<LinearMap>> {
        Ok(self.matrix.inverse()?.map(|matrix| LinearMap { matrix }))
    }
}

/// Whether `phi` is invertible and pulls `dst`'s form back to `src`'s:
/// `phiᵀ Ω_dst phi = Ω_src`.
pub fn is_presymplectomorphism(
    phi: &LinearMap,
    src: &PresymplecticSpace,
    dst: &PresymplecticSpace,
) -> Result<bool> {
    check_dim(src.dim(), phi.source_dim())?;
    check_dim(dst.dim(), phi.target_dim())?;
    if src.dim() != dst.dim() || !phi.matrix.is_invertible() {
        return Ok(false);
    }
    let pulled = phi.matrix.transpose().mul(&dst.omega).mul(&phi.matrix);
    Ok(pulled == src.omega)
}

/// Vectors `u_1..u_k, p_1..p_k` with `ω(u_i, p_j) = δ_ij` and
/// `ω(u_i, u_j) = ω(p_i, p_j) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticBasis {
    pub u: Vec<Vec<Scalar>>,
    pub p: Vec<Vec<Scalar>>,
}

impl SymplecticBasis {
    /// The ordered list `u_1..u_k, p_1..p_k`.
    pub fn to_vectors(&self) -> Vec<Vec<Scalar>> {
        self.u.iter().chain(&self.p).cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }
}

/// Symplectic basis of a symplectic subspace `w`.
pub fn symplectic_basis(space: &PresymplecticSpace, w: &Subspace) -> Result<SymplecticBasis> {
    symplectic_basis_adapted(space, w, &[], None)
}

/// Symplectic basis of `w` whose `u` vectors are exactly `lagrangian`, in
/// the given order. `lagrangian` must be a basis of a lagrangian subspace of
/// `w`, or empty. If `complement` is given it must be a lagrangian of `w`
/// transverse to `lagrangian`, and the `p` vectors are then taken from it.
///
/// Skew Gram-Schmidt: pick `u`, solve for `p` with `ω(u, p) = 1` and
/// `ω(u_j, p) = 0` for the prescribed vectors still pending, then restrict
/// to the orthogonal of `span{u, p}` and repeat.
pub fn symplectic_basis_adapted(
    space: &PresymplecticSpace,
    w: &Subspace,
    lagrangian: &[Vec<Scalar>],
    complement: Option<&Subspace>,
) -> Result<SymplecticBasis> {
    space.check(w)?;
    if !space.is_symplectic_subspace(w)? {
        return Err(Error::DegenerateRestriction);
    }
    if !lagrangian.is_empty() {
        let l = Subspace::span(space.dim(), lagrangian.iter().cloned())?;
        if l.dim() != lagrangian.len() || !space.is_lagrangian_in(&l, w)? {
            return Err(Error::PreconditionViolated(
                "prescribed vectors are not a basis of a lagrangian subspace of w".into(),
            ));
        }
        if let Some(m) = complement {
            if !space.is_lagrangian_in(m, w)? || !m.meets_trivially(&l)? {
                return Err(Error::PreconditionViolated(
                    "complement is not a transverse lagrangian of w".into(),
                ));
            }
        }
    } else if complement.is_some() {
        return Err(Error::PreconditionViolated(
            "a complement requires a prescribed lagrangian".into(),
        ));
    }

    let mut current = w.clone();
    let mut search = complement.cloned();
    let mut basis = SymplecticBasis { u: Vec::new(), p: Vec::new() };
    let mut step = 0;
    while !current.is_zero() {
        let u = match lagrangian.get(step) {
            Some(v) => v.clone(),
            None => current.basis().row(0).to_vec(),
        };
        let pending: &[Vec<Scalar>] = lagrangian.get(step..).unwrap_or(&[]);
        let targets: Vec<&[Scalar]> = if pending.is_empty() {
            vec![u.as_slice()]
        } else {
            pending.iter().map(Vec::as_slice).collect()
        };
        let candidates = search.as_ref().unwrap_or(&current).basis().to_rows();
        let system = space.gram(&targets, &candidates);
        let mut rhs = vec![Scalar::zero(); targets.len()];
        rhs[0] = Scalar::one();
        let coeffs = solve(&system, &rhs).ok_or(Error::DegenerateRestriction)?;
        let mut p = vec![Scalar::zero(); space.dim()];
        for (c, row) in coeffs.iter().zip(&candidates) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in p.iter_mut().zip(row) {
                *x += &(c * y);
            }
        }
        let pair = Subspace::span(space.dim(), [u.clone(), p.clone()])?;
        let perp = space.orthogonal(&pair)?;
        current = current.intersect(&perp)?;
        if let Some(m) = search.as_mut() {
            *m = m.intersect(&perp)?;
        }
        basis.u.push(u);
        basis.p.push(p);
        step += 1;
    }
    debug_assert!(is_standard_gram(space, &basis));
    Ok(basis)
}

/// Whether the Gram matrix of `u_1..u_k, p_1..p_k` is `[[0, I], [-I, 0]]`.
pub fn is_standard_gram(space: &PresymplecticSpace, basis: &SymplecticBasis) -> bool {
    let k = basis.len();
    let vs = basis.to_vectors();
    space.gram(&vs, &vs) == *PresymplecticSpace::standard(2 * k, 2 * k).unwrap().omega()
}

/// The splitting `V = R ⊕ E ⊕ (L ⊕ L')` attached to an isotropic subspace `I`:
/// `L` complements `I ∩ R` in `I`, `E` complements `R + I` in `I⊥`, and `L'`
/// complements `R + I` in `E⊥`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionSplit {
    pub radical_part: Subspace,
    pub symplectic_complement: Subspace,
    pub lagrangian: Subspace,
    pub dual_lagrangian: Subspace,
}

impl ReductionSplit {
    /// Re-checks every conclusion of the splitting inside the ambient subspace `c`.
    pub fn check(&self, space: &PresymplecticSpace, c: &Subspace) -> Result<()> {
        let fail = |what: &str| Err(Error::Inconsistent(format!("reduction split: {what}")));
        let parts = [
            &self.radical_part,
            &self.symplectic_complement,
            &self.lagrangian,
            &self.dual_lagrangian,
        ];
        let mut total = Subspace::zero(space.dim());
        for p in parts {
            total = total.sum(p)?;
        }
        if total != *c || parts.iter().map(|p| p.dim()).sum::<usize>() != c.dim() {
            return fail("parts are not independent or do not span");
        }
        if !space.is_symplectic_subspace(&self.symplectic_complement)? {
            return fail("E is not symplectic");
        }
        let ll = self.lagrangian.sum(&self.dual_lagrangian)?;
        if !space.is_symplectic_subspace(&ll)? {
            return fail("L + L' is not symplectic");
        }
        if !space.is_lagrangian_in(&self.lagrangian, &ll)? {
            return fail("L is not lagrangian in L + L'");
        }
        Ok(())
    }
}

/// Reduction splitting of an isotropic `i` in the whole space.
pub fn reduction_split(space: &PresymplecticSpace, i: &Subspace) -> Result<ReductionSplit> {
    reduction_split_within(space, &Subspace::full(space.dim()), i)
}

/// Reduction splitting of an isotropic `i ⊆ c`, treating the subspace `c`
/// as a presymplectic space in its own right.
pub fn reduction_split_within(
    space: &PresymplecticSpace,
    c: &Subspace,
    i: &Subspace,
) -> Result<ReductionSplit> {
    let r = space.radical_of(c)?;
    reduction_split_with(space, c, &r, i, &Subspace::zero(space.dim()))
}

/// [`reduction_split_within`] with the radical of `c` supplied by the caller
/// and the symplectic complement `E` chosen to contain `e_must_contain`
/// (which must lie in `i⊥ ∩ c` and meet `R + i` trivially).
pub fn reduction_split_with(
    space: &PresymplecticSpace,
    c: &Subspace,
    radical: &Subspace,
    i: &Subspace,
    e_must_contain: &Subspace,
) -> Result<ReductionSplit> {
    space.check(c)?;
    space.check(i)?;
    space.check(radical)?;
    if !c.contains(i)? {
        return Err(Error::PreconditionViolated("I is not contained in the ambient subspace".into()));
    }
    if !space.is_isotropic(i)? {
        return Err(Error::NotIsotropic("I".into()));
    }
    debug_assert_eq!(*radical, space.radical_of(c)?, "supplied radical is wrong");
    let zero = Subspace::zero(space.dim());
    let lagrangian = i.intersect(radical)?.complement_within(i, &zero)?;
    let r_plus_i = radical.sum(i)?;
    let i_perp = space.orthogonal_within(i, c)?;
    let e = r_plus_i.complement_within(&i_perp, e_must_contain)?;
    let e_perp = space.orthogonal_within(&e, c)?;
    let dual = r_plus_i.complement_within(&e_perp, &zero)?;
    let split = ReductionSplit {
        radical_part: radical.clone(),
        symplectic_complement: e,
        lagrangian,
        dual_lagrangian: dual,
    };
    #[cfg(debug_assertions)]
    split.check(space, c)?;
    Ok(split)
}
