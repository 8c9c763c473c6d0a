use cellres_core::exactmath::homology::integer_homology;
use cellres_core::exactmath::matrix::IntMatrix;
use cellres_core::exactmath::normal_form::{hnf, snf};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-6i64..=6, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
            IntMatrix::from_rows(&rows)
        })
    })
}

proptest! {
    #[test]
    fn hnf_identities(a in matrix()) {
        let h = hnf(&a);
        prop_assert_eq!(a.mul(&h.u), h.h.clone());
        prop_assert!(h.u.det().abs().is_one());
        prop_assert_eq!(h.rank(), a.rank());
        // Pivots go strictly down and are positive; columns past the rank vanish.
        for (k, &r) in h.pivot_rows.iter().enumerate() {
            prop_assert!(h.h.get(r, k).is_positive());
            if k > 0 {
                prop_assert!(r > h.pivot_rows[k - 1]);
            }
        }
        prop_assert!(a.mul(&h.kernel()).is_zero());
    }

    #[test]
    fn snf_identities(a in matrix()) {
        let s = snf(&a);
        prop_assert_eq!(s.p.mul(&a).mul(&s.q), s.d.clone());
        prop_assert!(s.p.det().abs().is_one());
        prop_assert!(s.q.det().abs().is_one());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert_eq!(f.len(), a.rank());
        prop_assert!(f.iter().all(|x| *x > BigInt::zero()));
    }

    #[test]
    fn deterministic(a in matrix()) {
        prop_assert_eq!(snf(&a), snf(&a));
        prop_assert_eq!(hnf(&a), hnf(&a));
    }

    #[test]
    fn euler_characteristic_of_homology(a in matrix()) {
        // A two-term complex: Euler characteristic from ranks equals the one
        // from chain dimensions.
        let h = integer_homology(&[a.rows(), a.cols()], std::slice::from_ref(&a)).unwrap();
        let chi = h.groups[0].rank as i64 - h.groups[1].rank as i64;
        prop_assert_eq!(chi, a.rows() as i64 - a.cols() as i64);
    }
}
