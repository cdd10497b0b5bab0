use crate::error::{check_dim, Error, Result};
use crate::linalg::{kernel, kernel_from_reduced, Echelon, Matrix, Scalar};

/// A subspace of `Q^n`, stored by its reduced row echelon basis.
///
/// The basis is canonical, so two `Subspace` values are equal as sets
/// exactly when they compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub(crate) fn from_canonical(ambient_dim: usize, basis: Matrix, pivots: Vec<usize>) -> Self {
        debug_assert_eq!(basis.cols(), ambient_dim);
        debug_assert_eq!(basis.rows(), pivots.len());
        debug_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        Subspace { ambient_dim, basis, pivots }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_canonical(n, Matrix::zeros(0, n), Vec::new())
    }

    pub fn full(n: usize) -> Self {
        Self::from_canonical(n, Matrix::identity(n), (0..n).collect())
    }

    /// Span of the given vectors, which must all have length `n`.
    pub fn span<I>(n: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut e = Echelon::new(n);
        for v in vectors {
            check_dim(n, v.len())?;
            e.insert(v);
        }
        Ok(e.into_subspace())
    }

    pub(crate) fn span_unchecked<I>(n: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut e = Echelon::new(n);
        for v in vectors {
            e.insert(v);
        }
        e.into_subspace()
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        Self::span_unchecked(m.cols(), m.row_iter().map(<[Scalar]>::to_vec))
    }

    /// Span of integer vectors. Panics on length mismatch.
    pub fn from_ints<R: AsRef<[i64]>>(n: usize, vectors: &[R]) -> Self {
        Self::row_space(&Matrix::from_ints(n, vectors))
    }

    /// Span of the standard basis vectors with the given zero-based indices.
    pub fn coordinate(n: usize, indices: &[usize]) -> Self {
        Self::span_unchecked(
            n,
            indices.iter().map(|&i| {
                let mut v = vec![Scalar::zero(); n];
                v[i] = Scalar::one();
                v
            }),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Basis rows in reduced row echelon form.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[Scalar]> + '_ {
        self.basis.row_iter()
    }

    fn same_ambient(&self, other: &Subspace) -> Result<()> {
        check_dim(self.ambient_dim, other.ambient_dim)
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is not in the
    /// subspace. In reduced echelon form these are just the pivot entries.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        for j in 0..self.ambient_dim {
            let mut x = v[j].clone();
            for (c, row) in coords.iter().zip(self.basis.row_iter()) {
                x = x.sub_mul(c, &row[j]);
            }
            if !x.is_zero() {
                return None;
            }
        }
        Some(coords)
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains(&self, inner: &Subspace) -> Result<bool> {
        self.same_ambient(inner)?;
        if inner.dim() > self.dim() {
            return Ok(false);
        }
        Ok(inner.vectors().all(|v| self.contains_vector(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        if self.is_full() || other.is_zero() {
            return Ok(self.clone());
        }
        if other.is_full() || self.is_zero() {
            return Ok(other.clone());
        }
        let mut e = Echelon::new(self.ambient_dim);
        for v in self.vectors().chain(other.vectors()) {
            e.insert(v.to_vec());
        }
        Ok(e.into_subspace())
    }

    /// `self ∩ other`: the combinations of `self`'s basis that the
    /// annihilator of `other` kills.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        if self.is_zero() || other.is_full() {
            return Ok(self.clone());
        }
        if other.is_zero() || self.is_full() {
            return Ok(other.clone());
        }
        if self == other {
            return Ok(self.clone());
        }
        let equations = self.basis.mul(&other.annihilator().basis.transpose());
        let coefficients = kernel(&equations.transpose());
        Ok(Self::span_unchecked(
            self.ambient_dim,
            coefficients.vectors().map(|c| self.basis.transpose().mul_vec(c)),
        ))
    }

    /// `{ξ : ξ·x = 0 for all x in self}` under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        kernel_from_reduced(&self.basis, &self.pivots, self.ambient_dim)
    }

    /// Image of the subspace under the linear map `m` (acting on columns).
    pub fn image(&self, m: &Matrix) -> Result<Subspace> {
        check_dim(self.ambient_dim, m.cols())?;
        Ok(Self::span_unchecked(m.rows(), self.vectors().map(|v| m.mul_vec(v))))
    }

    /// Whether `self ∩ other = 0`.
    pub fn meets_trivially(&self, other: &Subspace) -> Result<bool> {
        Ok(self.sum(other)?.dim() == self.dim() + other.dim())
    }

    /// A complement `C` of `self` inside `w` with `must_contain ⊆ C`.
    ///
    /// The choice is deterministic: starting from the span of `self` and
    /// `must_contain`, the reduced basis vectors of `w` are added greedily in
    /// pivot order whenever they enlarge the span; `C` is the span of the
    /// added vectors together with `must_contain`.
    pub fn complement_within(&self, w: &Subspace, must_contain: &Subspace) -> Result<Subspace> {
        self.same_ambient(w)?;
        self.same_ambient(must_contain)?;
        if !w.contains(self)? {
            return Err(Error::PreconditionViolated("subspace is not contained in w".into()));
        }
        if !w.contains(must_contain)? {
            return Err(Error::PreconditionViolated(
                "must_contain is not contained in w".into(),
            ));
        }
        let mut all = Echelon::new(self.ambient_dim);
        for v in self.vectors() {
            all.insert(v.to_vec());
        }
        let mut chosen = Echelon::new(self.ambient_dim);
        for v in must_contain.vectors() {
            if !all.insert(v.to_vec()) {
                return Err(Error::PreconditionViolated(
                    "must_contain meets the subspace nontrivially".into(),
                ));
            }
            chosen.insert(v.to_vec());
        }
        for v in w.vectors() {
            if all.rank() == w.dim() {
                break;
            }
            if all.insert(v.to_vec()) {
                chosen.insert(v.to_vec());
            }
        }
        let c = chosen.into_subspace();
        #[cfg(debug_assertions)]
        {
            assert_eq!(self.sum(&c)?, *w, "complement does not span w");
            assert_eq!(self.dim() + c.dim(), w.dim(), "complement is not direct");
            assert!(c.contains(must_contain)?, "complement misses must_contain");
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kernel;
    use proptest::prelude::*;

    fn e(n: usize, i: usize) -> Subspace {
        Subspace::coordinate(n, &[i])
    }

    #[test]
    fn sum_examples() {
        assert_eq!(e(3, 0).sum(&e(3, 1)).unwrap(), Subspace::coordinate(3, &[0, 1]));
        let w = Subspace::from_ints(3, &[[1, 2, 3], [0, 1, 1]]);
        assert_eq!(w.sum(&w).unwrap(), w);
        let s = e(3, 0).sum(&Subspace::from_ints(3, &[[1, 0, 1]])).unwrap();
        assert_eq!(s, Subspace::coordinate(3, &[0, 2]));
    }

    #[test]
    fn intersect_examples() {
        let a = Subspace::coordinate(3, &[0, 1]);
        let b = Subspace::coordinate(3, &[1, 2]);
        assert_eq!(a.intersect(&b).unwrap(), e(3, 1));
        assert_eq!(a.intersect(&a).unwrap(), a);
        let c = Subspace::from_ints(3, &[[1, 0, 0], [1, 0, 1]]);
        assert_eq!(c.intersect(&e(3, 2)).unwrap(), e(3, 2));
    }

    #[test]
    fn contains_examples() {
        let any = Subspace::from_ints(3, &[[1, -1, 4]]);
        assert!(Subspace::full(3).contains(&any).unwrap());
        assert!(!e(3, 0).contains(&e(3, 1)).unwrap());
        let ac = Subspace::coordinate(3, &[0, 2]);
        assert!(ac.contains(&Subspace::from_ints(3, &[[1, 0, 1]])).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let err = Error::DimensionMismatch { expected: 3, found: 2 };
        assert_eq!(e(3, 0).sum(&e(2, 0)).unwrap_err(), err);
        assert_eq!(e(3, 0).intersect(&e(2, 0)).unwrap_err(), err);
        assert_eq!(e(3, 0).contains(&e(2, 0)).unwrap_err(), err);
        assert!(Subspace::span(2, [vec![Scalar::one()]]).is_err());
    }

    #[test]
    fn complement_examples() {
        let c = e(3, 0).complement_within(&Subspace::full(3), &e(3, 1)).unwrap();
        assert_eq!(c, Subspace::coordinate(3, &[1, 2]));

        let w = Subspace::from_ints(4, &[[1, 1, 0, 0], [0, 0, 1, 1]]);
        assert_eq!(Subspace::zero(4).complement_within(&w, &Subspace::zero(4)).unwrap(), w);

        let s = Subspace::from_ints(2, &[[1, 1]]);
        let c = s.complement_within(&Subspace::full(2), &Subspace::zero(2)).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(s.sum(&c).unwrap().is_full());
        assert!(s.intersect(&c).unwrap().is_zero());
    }

    #[test]
    fn complement_preconditions() {
        let full = Subspace::full(3);
        let err = e(3, 0).complement_within(&e(3, 1), &Subspace::zero(3)).unwrap_err();
        assert!(matches!(err, Error::PreconditionViolated(m) if m.contains("not contained in w")));
        let err = e(3, 0).complement_within(&e(3, 0), &e(3, 1)).unwrap_err();
        assert!(matches!(err, Error::PreconditionViolated(m) if m.contains("must_contain is not")));
        let err = e(3, 0).complement_within(&full, &e(3, 0)).unwrap_err();
        assert!(matches!(err, Error::PreconditionViolated(m) if m.contains("nontrivially")));
    }

    #[test]
    fn image_under_map() {
        let m = Matrix::from_ints(2, &[[0, -1], [1, 0]]);
        assert_eq!(e(2, 0).image(&m).unwrap(), e(2, 1));
    }

    /// Zassenhaus: row reduce [[U, U], [W, 0]]; rows whose left half vanishes
    /// carry a basis of U ∩ W in their right half.
    fn zassenhaus(u: &Subspace, w: &Subspace) -> Subspace {
        let n = u.ambient_dim();
        let mut rows = Vec::new();
        for v in u.vectors() {
            rows.push(v.iter().chain(v.iter()).cloned().collect::<Vec<_>>());
        }
        for v in w.vectors() {
            let mut r = v.to_vec();
            r.extend(std::iter::repeat_n(Scalar::zero(), n));
            rows.push(r);
        }
        let r = crate::linalg::rref(&Matrix::from_rows(2 * n, rows).unwrap());
        let mut out = Vec::new();
        for i in 0..r.rank {
            let row = r.reduced.row(i);
            if row[..n].iter().all(Scalar::is_zero) {
                out.push(row[n..].to_vec());
            }
        }
        Subspace::span(n, out).unwrap()
    }

    pub(crate) fn small_subspace(n: usize, max_rows: usize) -> impl Strategy<Value = Subspace> {
        prop::collection::vec(prop::collection::vec(-3i64..=3, n), 0..=max_rows)
            .prop_map(move |rows| Subspace::from_ints(n, &rows))
    }

    fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
        prop::collection::vec(-3i64..=3, n * n).prop_filter_map("singular", move |v| {
            let m = Matrix::from_fn(n, n, |i, j| Scalar::from_int(v[i * n + j]));
            m.is_invertible().then_some(m)
        })
    }

    proptest! {
        #[test]
        fn dimension_formula(a in small_subspace(5, 4), b in small_subspace(5, 4)) {
            let s = a.sum(&b).unwrap();
            let i = a.intersect(&b).unwrap();
            prop_assert_eq!(i.dim() + s.dim(), a.dim() + b.dim());
            prop_assert!(a.contains(&i).unwrap() && b.contains(&i).unwrap());
            prop_assert!(s.contains(&a).unwrap() && s.contains(&b).unwrap());
        }

        #[test]
        fn intersect_agrees_with_zassenhaus(a in small_subspace(5, 4), b in small_subspace(5, 4)) {
            prop_assert_eq!(a.intersect(&b).unwrap(), zassenhaus(&a, &b));
        }

        #[test]
        fn canonical_under_change_of_spanning_set(
            s in small_subspace(5, 4),
            g in invertible(4),
        ) {
            // mix the basis rows (padded to 4) by an invertible matrix
            let mut rows = s.basis().to_rows();
            while rows.len() < 4 {
                rows.push(vec![Scalar::zero(); 5]);
            }
            let padded = Matrix::from_rows(5, rows).unwrap();
            let mixed = g.mul(&padded);
            prop_assert_eq!(Subspace::row_space(&mixed), s);
        }

        #[test]
        fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 6), 0..6)) {
            let m = Matrix::from_ints(6, &rows);
            prop_assert_eq!(m.rank() + kernel(&m).dim(), 6);
            let k = kernel(&m);
            for v in k.vectors() {
                prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn complement_postconditions(
            w in small_subspace(5, 5),
            picks in prop::collection::vec(any::<bool>(), 5),
            must_picks in prop::collection::vec(any::<bool>(), 5),
        ) {
            // s and must_contain are spanned by disjoint subsets of w's basis
            let rows: Vec<Vec<Scalar>> = w.basis().to_rows();
            let s = Subspace::span(5, rows.iter().zip(&picks).filter(|(_, &p)| p).map(|(r, _)| r.clone())).unwrap();
            let m = Subspace::span(5, rows.iter().zip(picks.iter().zip(&must_picks))
                .filter(|(_, (&p, &q))| !p && q).map(|(r, _)| r.clone())).unwrap();
            let c = s.complement_within(&w, &m).unwrap();
            prop_assert_eq!(s.sum(&c).unwrap(), w.clone());
            prop_assert!(s.intersect(&c).unwrap().is_zero());
            prop_assert!(c.contains(&m).unwrap());
        }
    }
}
