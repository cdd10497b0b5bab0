//! Exact linear algebra over the rationals: scalars, dense matrices, row
//! reduction and subspaces with a canonical reduced-row-echelon basis.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{dot, Matrix};
pub(crate) use matrix::rows_to_matrix;
pub use scalar::Scalar;
pub use subspace::Subspace;

/// Output of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Same shape as the input; zero rows at the bottom.
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row echelon form by Gauss-Jordan elimination.
pub fn rref(m: &Matrix) -> Rref {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.to_rows();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..cols {
        if pr == rows {
            break;
        }
        let Some(p) = (pr..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, pr);
        if !a[pr][col].is_one() {
            let inv = a[pr][col].recip();
            for x in a[pr][col..].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = std::mem::take(&mut a[pr]);
        for (r, row) in a.iter_mut().enumerate() {
            if r == pr || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = x.sub_mul(&f, y);
            }
        }
        a[pr] = pivot_row;
        pivots.push(col);
        pr += 1;
    }
    let rank = pivots.len();
    Rref { reduced: rows_to_matrix(cols, a), pivots, rank }
}

/// Null space `{v : m v = 0}` as a subspace of `Q^cols`.
pub fn kernel(m: &Matrix) -> Subspace {
    let r = rref(m);
    kernel_from_reduced(&r.reduced, &r.pivots, m.cols())
}

/// Reads the kernel off a matrix that is already in reduced row echelon
/// form (extra zero rows allowed).
pub(crate) fn kernel_from_reduced(reduced: &Matrix, pivots: &[usize], cols: usize) -> Subspace {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let vectors = (0..cols).filter(|&c| !is_pivot[c]).map(|free| {
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -&reduced[(row, free)];
        }
        v
    });
    Subspace::span_unchecked(cols, vectors)
}

/// A particular solution of `a x = b` (free variables set to zero), or
/// `None` if the system is inconsistent.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let n = a.cols();
    let aug = Matrix::from_fn(a.rows(), n + 1, |i, j| {
        if j < n { a[(i, j)].clone() } else { b[i].clone() }
    });
    let r = rref(&aug);
    if r.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Scalar::zero(); n];
    for (row, &p) in r.pivots.iter().enumerate() {
        x[p] = r.reduced[(row, n)].clone();
    }
    Some(x)
}

/// Incrementally maintained Gauss-Jordan basis. Every stored row is scaled
/// to 1 at its pivot and every other row is zero at that pivot, so sorting
/// by pivot yields the reduced row echelon form.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    n: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(n: usize) -> Self {
        Echelon { n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x = x.sub_mul(&f, y);
            }
        }
    }

    /// Adds `v` to the span. Returns `false` if it was already in it.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        debug_assert_eq!(v.len(), self.n);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if !v[p].is_one() {
            let inv = v[p].recip();
            for x in v[p..].iter_mut() {
                *x = &*x * &inv;
            }
        }
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row[p..].iter_mut().zip(&v[p..]) {
                *x = x.sub_mul(&f, y);
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn into_subspace(self) -> Subspace {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let pivots: Vec<usize> = order.iter().map(|&i| self.pivots[i]).collect();
        let mut rows: Vec<Option<Vec<Scalar>>> = self.rows.into_iter().map(Some).collect();
        let rows = order.iter().map(|&i| rows[i].take().unwrap()).collect();
        Subspace::from_canonical(self.n, rows_to_matrix(self.n, rows), pivots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(3);
        let r = rref(&id);
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);

        let z = Matrix::zeros(2, 3);
        let r = rref(&z);
        assert_eq!(r.reduced, z);
        assert!(r.pivots.is_empty());
        assert_eq!(r.rank, 0);

        let m = Matrix::from_ints(2, &[[1, 1], [2, 2]]);
        let r = rref(&m);
        assert_eq!(r.reduced, Matrix::from_ints(2, &[[1, 1], [0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn rref_with_fractions() {
        // hand reduction: [[2,4,1],[1,3,0]] -> [[1,0,3/2],[0,1,-1/2]]
        let m = Matrix::from_ints(3, &[[2, 4, 1], [1, 3, 0]]);
        let r = rref(&m);
        let half = Scalar::new(1, 2);
        assert_eq!(r.reduced.row(0), &[Scalar::one(), Scalar::zero(), Scalar::new(3, 2)]);
        assert_eq!(r.reduced.row(1), &[Scalar::zero(), Scalar::one(), -half]);
    }

    #[test]
    fn solve_particular_and_inconsistent() {
        let a = Matrix::from_ints(3, &[[1, 2, 0], [0, 0, 1]]);
        let x = solve(&a, &[Scalar::from_int(3), Scalar::from_int(4)]).unwrap();
        assert_eq!(x, vec![Scalar::from_int(3), Scalar::zero(), Scalar::from_int(4)]);
        let a = Matrix::from_ints(1, &[[1], [2]]);
        assert!(solve(&a, &[Scalar::one(), Scalar::one()]).is_none());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&Matrix::identity(4)), Subspace::zero(4));
        assert_eq!(kernel(&Matrix::zeros(1, 3)), Subspace::full(3));
        let k = kernel(&Matrix::from_ints(3, &[[1, -1, 0]]));
        assert_eq!(k, Subspace::from_ints(3, &[[1, 1, 0], [0, 0, 1]]));
        assert_eq!(k.dim(), 2);
    }

    #[test]
    fn echelon_matches_rref() {
        let m = Matrix::from_ints(4, &[[0, 2, 4, 1], [1, 1, 0, 0], [1, 3, 4, 1], [0, 0, 0, 5]]);
        let mut e = Echelon::new(4);
        for r in m.row_iter() {
            e.insert(r.to_vec());
        }
        let s = e.into_subspace();
        let r = rref(&m);
        assert_eq!(s.dim(), r.rank);
        for i in 0..r.rank {
            assert_eq!(s.basis().row(i), r.reduced.row(i));
        }
    }
}
