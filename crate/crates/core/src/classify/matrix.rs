//! The 10×10 integer matrix relating multiplicities to dimension
//! invariants: `k = M n`. Column `i` is the invariant vector of the `i`-th
//! indecomposable model.

use std::sync::OnceLock;

use crate::linalg::{Matrix, Scalar};

pub type IntMatrix = [[i64; 10]; 10];

#[rustfmt::skip]
pub const MULTIPLICITY_MATRIX: IntMatrix = [
    [0, 0, 0, 0, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 0, 0, 0, 0, 0],
    [0, 1, 1, 0, 1, 1, 1, 0, 1, 0],
    [0, 1, 0, 1, 1, 1, 0, 1, 1, 0],
    [0, 1, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 1, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 1, 1, 1, 0, 0, 0, 0, 0],
    [0, 1, 0, 1, 1, 1, 0, 1, 0, 0],
];

/// `M` as printed, `k = M n`.
pub fn multiplicity_matrix() -> &'static IntMatrix {
    &MULTIPLICITY_MATRIX
}

pub fn to_matrix(m: &IntMatrix) -> Matrix {
    Matrix::from_ints(10, m)
}

pub fn determinant(m: &IntMatrix) -> Scalar {
    to_matrix(m).determinant().expect("square")
}

/// Inverse over the integers, or `None` if `m` is not unimodular.
pub fn integer_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    let inv = to_matrix(m).inverse().expect("square")?;
    let mut out = [[0i64; 10]; 10];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = inv[(i, j)].to_i64()?;
        }
    }
    Some(out)
}

/// `M⁻¹`, computed once.
pub fn multiplicity_matrix_inverse() -> &'static IntMatrix {
    static INVERSE: OnceLock<IntMatrix> = OnceLock::new();
    INVERSE.get_or_init(|| integer_inverse(&MULTIPLICITY_MATRIX).expect("M is unimodular"))
}

pub fn apply(m: &IntMatrix, v: &[i64; 10]) -> [i64; 10] {
    let mut out = [0i64; 10];
    for (o, row) in out.iter_mut().zip(m) {
        *o = row.iter().zip(v).map(|(a, b)| a * b).sum();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_row() {
        assert_eq!(MULTIPLICITY_MATRIX[0], [0, 0, 0, 0, 1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn unit_determinant() {
        let d = determinant(&MULTIPLICITY_MATRIX);
        assert!(d == Scalar::one() || d == -Scalar::one());
        assert_eq!(d, Scalar::one());
    }

    #[test]
    fn inverse_is_two_sided() {
        let inv = multiplicity_matrix_inverse();
        let id = to_matrix(&MULTIPLICITY_MATRIX).mul(&to_matrix(inv));
        assert_eq!(id, Matrix::identity(10));
        assert_eq!(to_matrix(inv).mul(&to_matrix(&MULTIPLICITY_MATRIX)), Matrix::identity(10));
    }

    #[test]
    fn inverse_matches_independent_computation() {
        // computed separately with a computer algebra system
        #[rustfmt::skip]
        let expected: IntMatrix = [
            [0, 1, 0, 0, 0, 0, 0, 0, -1, 0],
            [0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
            [0, 0, 0, 0, 0, 1, 0, -1, 0, 0],
            [0, 0, 0, 0, 0, 0, 1, -1, 0, 0],
            [0, 0, 0, 0, 0, -1, -1, 1, 1, 0],
            [0, 0, 0, 0, 1, 0, 0, -1, 0, 0],
            [0, 0, 1, -1, -1, 0, 1, 0, -1, 1],
            [0, 0, 0, 0, -1, 1, 0, 0, -1, 1],
            [0, 0, 0, 1, 0, 0, 0, 0, 0, -1],
            [1, 0, -1, 0, 1, 0, 0, 0, 1, -1],
        ];
        assert_eq!(*multiplicity_matrix_inverse(), expected);
    }

    #[test]
    fn non_unimodular_has_no_integer_inverse() {
        let mut m = MULTIPLICITY_MATRIX;
        m[0] = m[0].map(|x| 2 * x);
        assert!(integer_inverse(&m).is_none());
    }
}
