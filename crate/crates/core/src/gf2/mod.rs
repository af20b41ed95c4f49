//! Scalar, polynomial, and matrix arithmetic over GF(2).
//!
//! These are the value types everything else is built on: `BinPoly` for
//! elements of GF(2)[z], `BinMatrix` for constant binary matrices, and
//! `BinPolyMatrix` for generator matrices with polynomial entries. All types
//! are immutable values; operations are side-effect free and safe to share
//! across threads.

mod matrix;
mod poly;
mod polymat;

pub use matrix::BinMatrix;
pub use poly::BinPoly;
pub use polymat::BinPolyMatrix;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("dimension mismatch in {op}: {left} vs {right}")]
    DimensionMismatch {
        op: &'static str,
        left: String,
        right: String,
    },
    #[error("matrix is singular over GF(2)")]
    Singular,
    #[error("entries must be 0 or 1, found {0}")]
    BadEntry(u8),
    #[error("rows must all have length {expected}, found one of length {found}")]
    RaggedRows { expected: usize, found: usize },
    #[error("polynomial division by zero")]
    DivisionByZero,
}

#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = BinPoly> {
        proptest::collection::vec(0u8..=1, 0..=max_deg + 1)
            .prop_map(|c| BinPoly::from_coeffs(&c).unwrap())
    }

    fn arb_invertible(n: usize) -> impl Strategy<Value = BinMatrix> {
        // random row operations applied to the identity stay invertible
        proptest::collection::vec((0..n, 0..n), 0..4 * n).prop_map(move |ops| {
            let mut m = BinMatrix::identity(n);
            for (src, dst) in ops {
                if src != dst {
                    for c in 0..n {
                        let v = m.get(dst, c) ^ m.get(src, c);
                        m.set(dst, c, v);
                    }
                }
            }
            m
        })
    }

    proptest! {
        #[test]
        fn poly_mul_commutes(a in arb_poly(24), b in arb_poly(24)) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn poly_add_self_inverse(a in arb_poly(24)) {
            prop_assert!(a.add(&a).is_zero());
        }

        #[test]
        fn poly_mul_degree_adds(a in arb_poly(16), b in arb_poly(16)) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!(a.mul(&b).degree(), a.degree() + b.degree());
        }

        #[test]
        fn inverse_round_trip(n in 1usize..=8, seed in any::<u64>()) {
            let m = {
                // deterministic invertible matrix from the seed
                let mut m = BinMatrix::identity(n);
                let mut s = seed;
                for _ in 0..4 * n {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let src = (s >> 16) as usize % n;
                    let dst = (s >> 40) as usize % n;
                    if src != dst {
                        for c in 0..n {
                            let v = m.get(dst, c) ^ m.get(src, c);
                            m.set(dst, c, v);
                        }
                    }
                }
                m
            };
            let inv = m.inverse().unwrap();
            prop_assert_eq!(m.mul(&inv).unwrap(), BinMatrix::identity(n));
            prop_assert_eq!(m.rank(), n);
        }

        #[test]
        fn row_ops_preserve_invertibility(m in arb_invertible(5)) {
            prop_assert_eq!(m.rank(), 5);
            prop_assert_eq!(m.mul(&m.inverse().unwrap()).unwrap(), BinMatrix::identity(5));
        }

        #[test]
        fn polymat_identity_composition(
            rows in proptest::collection::vec(
                proptest::collection::vec(
                    proptest::collection::vec(0u8..=1, 0..=5).prop_map(|c| BinPoly::from_coeffs(&c).unwrap()),
                    3,
                ),
                1..=3,
            )
        ) {
            let g = BinPolyMatrix::from_rows(rows).unwrap();
            prop_assert_eq!(g.mul_matrix(&BinMatrix::identity(3)).unwrap(), g);
        }
    }
}
