use proptest::prelude::*;

use silting_core::constructions::{build_anm, build_preprojective, Dynkin};
use silting_core::homotopy::Context;
use silting_core::linalg::DenseMatrix;
use silting_core::mutation::{two_term_exchange, Direction, SiltingObject};
use silting_core::selfinjective::nakayama_data;
use silting_core::PrimeField;

const P: u64 = 1_000_003;

fn matrix(rows: usize, cols: usize, entries: &[u64]) -> DenseMatrix {
    let f = PrimeField::new(P).unwrap();
    let data: Vec<Vec<u64>> = (0..rows)
        .map(|r| (0..cols).map(|c| entries[r * cols + c] % P).collect())
        .collect();
    DenseMatrix::from_rows(f, cols, &data)
}

proptest! {
    #[test]
    fn field_inverse(x in 1u64..P) {
        let f = PrimeField::new(P).unwrap();
        prop_assert_eq!(f.mul(x, f.inv(x)), 1);
    }

    #[test]
    fn rank_nullity(rows in 1usize..6, cols in 1usize..6, entries in prop::collection::vec(0u64..5, 36)) {
        let m = matrix(rows, cols, &entries);
        prop_assert_eq!(m.rank() + m.kernel().len(), cols);
    }

    #[test]
    fn inverse_is_two_sided(entries in prop::collection::vec(0u64..P, 16)) {
        let m = matrix(4, 4, &entries);
        if let Some(inv) = m.inverse() {
            let id = matrix(4, 4, &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]);
            prop_assert_eq!(m.mul(&inv), id.clone());
            prop_assert_eq!(inv.mul(&m), id);
        } else {
            prop_assert!(m.rank() < 4);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Two exchanges at the same position return to the start.
    #[test]
    fn exchange_is_involutive(n in 2usize..4, m in 1usize..3, walk in prop::collection::vec(0usize..12, 1..6), k in 0usize..12) {
        let alg = build_anm(n, m, PrimeField::new(P).unwrap()).unwrap();
        let nd = nakayama_data(alg.sc(), 1).unwrap();
        let ctx = Context::new(alg.sc().clone(), Some(nd), 1);
        let mut t = SiltingObject::algebra(&ctx);
        let size = t.summands.len();
        for step in walk {
            if let Ok((u, _)) = two_term_exchange(&ctx, &t, step % size) {
                t = u;
            }
        }
        let k = k % size;
        if let Ok((u, dir)) = two_term_exchange(&ctx, &t, k) {
            prop_assert!(u.is_two_term(&ctx));
            prop_assert!(ctx.is_presilting(&u.summands));
            let (back, back_dir) = two_term_exchange(&ctx, &u, k).unwrap();
            prop_assert_ne!(dir, back_dir);
            prop_assert_eq!(back.key(&ctx), t.key(&ctx));
        }
    }
}

#[test]
fn exchange_from_algebra_is_left() {
    let alg = build_preprojective(Dynkin::A(3), PrimeField::new(P).unwrap()).unwrap();
    let ctx = Context::new(alg.sc().clone(), None, 0);
    let a = SiltingObject::algebra(&ctx);
    for k in 0..3 {
        let (_, dir) = two_term_exchange(&ctx, &a, k).unwrap();
        assert_eq!(dir, Direction::Left);
    }
}
