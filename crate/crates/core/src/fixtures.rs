//! Ray matrices and gradings for the standard examples.

use crate::exactmath::matrix::IntMatrix;

/// Rays of the Hirzebruch surface `F_a` as rows: `(1,0), (0,1), (-1,a), (0,-1)`.
pub fn hirzebruch_rays(a: i64) -> IntMatrix {
    IntMatrix::from_rows(&[[1, 0], [0, 1], [-1, a], [0, -1]])
}

pub fn p1_rays() -> IntMatrix {
    IntMatrix::from_rows(&[[1], [-1]])
}

pub fn p2_rays() -> IntMatrix {
    IntMatrix::from_rows(&[[1, 0], [0, 1], [-1, -1]])
}

/// Columns `(1,0,-1,0)` and `(0,1,2,-1)`: the point lattice of `F_2`.
pub fn hirzebruch_point_basis() -> IntMatrix {
    hirzebruch_rays(2)
}

/// The Lawrence lattice of `F_2`, an `8 x 2` matrix.
pub fn hirzebruch_diagonal_basis() -> IntMatrix {
    let nu = hirzebruch_rays(2);
    nu.vstack(&nu.neg())
}

/// Basis of the Lawrence lattice of `P^2` used by the staircase construction.
pub fn p2_diagonal_basis() -> IntMatrix {
    IntMatrix::from_columns(6, &[[1, -1, 0, -1, 1, 0], [0, -1, 1, 0, 1, -1]])
}

/// Picard grading of `F_2`.
pub fn hirzebruch_pic() -> IntMatrix {
    IntMatrix::from_rows(&[[1, -2, 1, 0], [0, 1, 0, 1]])
}

/// Picard grading of `P^2`.
pub fn p2_pic() -> IntMatrix {
    IntMatrix::from_rows(&[[1, 1, 1]])
}

pub fn p1_pic() -> IntMatrix {
    IntMatrix::from_rows(&[[1, 1]])
}

/// `diag(g, g)`, the grading of a product `Y x Y`.
pub fn block_diagonal(g: &IntMatrix) -> IntMatrix {
    let z = IntMatrix::zeros(g.rows(), g.cols());
    g.hstack(&z).vstack(&z.hstack(g))
}
