//! Small root data used by the tests, the benchmarks and the CLI.

use crate::rootdata::{KacMoodyMatrix, RootDatum};

fn datum(rows: Vec<Vec<i64>>) -> RootDatum {
    let a = KacMoodyMatrix::new(rows).expect("catalog matrix is a Kac-Moody matrix");
    RootDatum::minimal_realization(a).expect("catalog realization is valid")
}

/// `A_1` with `Y` the coroot lattice, so `alpha(Y) = 2Z`.
pub fn a1() -> RootDatum {
    datum(vec![vec![2]])
}

/// `A_1` with `Y = Z lambda`, `coroot = 2 lambda`, `alpha(lambda) = 1`.
pub fn a1_half_lattice() -> RootDatum {
    let a = KacMoodyMatrix::new(vec![vec![2]]).unwrap();
    RootDatum::new(a, vec![vec![1]], vec![vec![2]]).unwrap()
}

pub fn a2() -> RootDatum {
    datum(vec![vec![2, -1], vec![-1, 2]])
}

pub fn b2() -> RootDatum {
    datum(vec![vec![2, -2], vec![-1, 2]])
}

pub fn g2() -> RootDatum {
    datum(vec![vec![2, -1], vec![-3, 2]])
}

/// Affine `A_1`; the matrix is singular so `Y` has rank 3.
pub fn affine_a1() -> RootDatum {
    datum(vec![vec![2, -2], vec![-2, 2]])
}

/// A rank-3 datum of indefinite type with an affine `A_1` subdiagram.
pub fn rank3() -> RootDatum {
    datum(vec![vec![2, -2, 0], vec![-2, 2, -1], vec![0, -1, 2]])
}

/// The 4x4 matrix of the infinite-generator example, with `a_34 = a_43 = -3`.
pub fn odd_pair_matrix() -> Vec<Vec<i64>> {
    vec![vec![2, -2, -2, -2], vec![-2, 2, -2, -2], vec![-2, -2, 2, -3], vec![-2, -2, -3, 2]]
}

/// Variant where only `a_43` is odd, so the parity argument applies verbatim.
pub fn odd_pair_parity_matrix() -> Vec<Vec<i64>> {
    vec![vec![2, -2, -2, -2], vec![-2, 2, -2, -2], vec![-2, -2, 2, -2], vec![-2, -2, -3, 2]]
}

pub fn odd_pair() -> RootDatum {
    datum(odd_pair_matrix())
}

pub fn odd_pair_parity() -> RootDatum {
    datum(odd_pair_parity_matrix())
}

/// Looks a catalog datum up by name.
pub fn by_name(name: &str) -> Option<RootDatum> {
    Some(match name {
        "A1" => a1(),
        "A1-half" => a1_half_lattice(),
        "A2" => a2(),
        "B2" => b2(),
        "G2" => g2(),
        "affine-A1" => affine_a1(),
        "rank3" => rank3(),
        "odd-pair" => odd_pair(),
        "odd-pair-parity" => odd_pair_parity(),
        _ => return None,
    })
}
