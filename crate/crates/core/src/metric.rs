//! The five-dimensional metric `diag(1, -1, -1, -1, -1)` used for every
//! index raise/lower, including `g_44 = g^44 = -1`.

/// Number of basis one-forms `tau^0..tau^4`.
pub const DIM: usize = 5;

const G: [i64; DIM] = [1, -1, -1, -1, -1];

/// Diagonal entry `g_ii = g^ii`.
pub fn g(i: usize) -> i64 {
    G[i]
}

/// `g^{ij}` (also `g_{ij}`), zero off the diagonal.
pub fn g2(i: usize, j: usize) -> i64 {
    if i == j {
        G[i]
    } else {
        0
    }
}

pub fn delta(i: usize, j: usize) -> i64 {
    (i == j) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowering_then_raising_is_identity() {
        for i in 0..DIM {
            assert_eq!(g(i) * g(i), 1);
        }
        assert_eq!(g(4), -1);
        assert_eq!(g2(0, 4), 0);
    }
}
