use graded_exp::algebra::StructureTable;
use graded_exp::arith::CyclotomicField;
use graded_exp::codim::{codimension, CodimMode, DEFAULT_BUDGET};
use graded_exp::generators::suite_case;
use graded_exp::instance::Instance;
use graded_exp::proof::{cauchy_schwarz_check, verify_bz};
use proptest::prelude::*;
use proptest::sample::subsequence;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn suite_instances_are_graded_associative_algebras(seed in 0u64..10_000) {
        let case = suite_case(seed).unwrap();
        let alg = &case.algebra;
        prop_assert!(alg.validate().is_valid());
        prop_assert!(alg.table().associativity_violations().is_empty());
        prop_assert_eq!(alg.radical_oracle().dim(), alg.radical().len());
    }

    #[test]
    fn exponents_sit_between_the_largest_component_and_the_bound(seed in 0u64..10_000) {
        let case = suite_case(seed).unwrap();
        let alg = &case.algebra;
        let widest = alg.components().iter().map(|c| c.dim()).max().unwrap_or(0);
        let report = verify_bz(alg).unwrap();
        prop_assert!(widest <= report.lhs);
        prop_assert!(report.lhs <= alg.components().iter().map(|c| c.dim()).sum::<usize>());
        prop_assert!(report.exp_e <= report.lhs);
        prop_assert!(report.lhs <= report.rhs);
        prop_assert_eq!(report.rhs, report.group_order * report.group_order * report.exp_e);
    }

    #[test]
    fn suite_cases_are_reproducible_and_survive_serialization(seed in 0u64..10_000) {
        let a = suite_case(seed).unwrap();
        let b = suite_case(seed).unwrap();
        prop_assert_eq!(a.algebra.table(), b.algebra.table());
        let inst = Instance::from_algebra(&a.group, &a.algebra).unwrap();
        let again = Instance::from_json(&inst.to_json()).unwrap();
        prop_assert_eq!(inst.digest(), again.digest());
        let rebuilt = again.build().unwrap();
        prop_assert_eq!(rebuilt.table(), a.algebra.table());
    }

    #[test]
    fn cauchy_schwarz_always_holds(b in prop::collection::vec(0u64..50, 1..8), extra in 0u64..4) {
        let w = b.len() as u64 + extra;
        let cert = cauchy_schwarz_check(&b, w).unwrap();
        let sum: u128 = b.iter().map(|&x| x as u128).sum();
        let sq: u128 = b.iter().map(|&x| (x as u128) * (x as u128)).sum();
        prop_assert!(cert.holds);
        prop_assert!(sum * sum <= w as u128 * sq);
        let flat = b.iter().all(|&x| x == b[0]);
        prop_assert_eq!(cert.equality, sum * sum == w as u128 * sq);
        prop_assert_eq!(cert.equality, sq == 0 || (extra == 0 && flat));
    }

    #[test]
    fn codimensions_ignore_the_basis_order(order in subsequence((0..4).collect::<Vec<usize>>(), 4).prop_shuffle()) {
        let field = CyclotomicField::new(1);
        let m2 = StructureTable::matrix_algebra(&field, 2);
        let mut inv = [0; 4];
        for (i, &p) in order.iter().enumerate() {
            inv[p] = i;
        }
        let permuted = StructureTable::from_fn(&field, 4, |a, b| {
            m2.get(inv[a], inv[b]).iter().map(|(k, v)| (order[*k], v.clone())).collect()
        });
        for n in 1..=3 {
            let base = codimension(&m2, n, &CodimMode::Full, DEFAULT_BUDGET).unwrap();
            let moved = codimension(&permuted, n, &CodimMode::Full, DEFAULT_BUDGET).unwrap();
            prop_assert_eq!(base.c_n, moved.c_n);
        }
    }
}
