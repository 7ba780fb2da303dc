use proptest::prelude::*;
use toric_core::graver::{graver_basis, is_primitive};
use toric_core::{Configuration, IntMatrix, IntVec};

/// Small nonnegative matrices without zero columns.
fn pointed_matrix() -> impl Strategy<Value = Configuration> {
    (1usize..=2, 2usize..=4)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(0i64..=4, c), r))
        .prop_filter("zero column", |rows| (0..rows[0].len()).all(|j| rows.iter().any(|row| row[j] > 0)))
        .prop_map(|rows| Configuration::new(IntMatrix::from_rows(&rows).unwrap()).unwrap())
}

fn any_matrix() -> impl Strategy<Value = Configuration> {
    (1usize..=3, 2usize..=5)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
        .prop_map(|rows| Configuration::new(IntMatrix::from_rows(&rows).unwrap()).unwrap())
}

fn naive_fiber(a: &Configuration, b: &IntVec, max: i64) -> Vec<IntVec> {
    let n = a.n();
    let mut out = Vec::new();
    let mut t = vec![0i64; n];
    loop {
        let tv = IntVec::new(t.clone());
        if a.matrix().mul_vec(&tv).unwrap() == *b {
            out.push(tv);
        }
        let mut i = 0;
        while i < n && t[i] == max {
            t[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        t[i] += 1;
    }
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_basis_is_kernel_with_full_rank(a in any_matrix()) {
        let basis = a.kernel_basis().unwrap();
        for v in basis {
            prop_assert!(a.in_kernel(v).unwrap());
            prop_assert!(!v.is_zero());
        }
        prop_assert_eq!(a.rank().unwrap() + basis.len(), a.n());
    }

    #[test]
    fn fiber_equals_naive_box_filter(a in pointed_matrix(), t in prop::collection::vec(0i64..=3, 4)) {
        let t = IntVec::new(t[..a.n()].to_vec());
        let b = a.matrix().mul_vec(&t).unwrap();
        let max = *b.iter().max().unwrap();
        let fiber = a.fiber(&b).unwrap();
        prop_assert_eq!(fiber.points, naive_fiber(&a, &b, max));
    }

    #[test]
    fn degree_is_sign_symmetric(a in pointed_matrix(), k in prop::collection::vec(-3i64..=3, 4)) {
        let basis = a.kernel_basis().unwrap();
        let mut u = IntVec::zeros(a.n());
        for (b, k) in basis.iter().zip(&k) {
            u = u.checked_add(&b.checked_scale(*k).unwrap()).unwrap();
        }
        prop_assume!(!u.is_zero());
        prop_assert_eq!(a.a_degree(&u).unwrap(), a.a_degree(&u.checked_neg().unwrap()).unwrap());
    }

    #[test]
    fn graver_elements_are_primitive(a in pointed_matrix()) {
        for u in graver_basis(&a).unwrap().elements {
            prop_assert!(is_primitive(&a, &u).unwrap());
            prop_assert!(u.is_canonical());
        }
    }
}
