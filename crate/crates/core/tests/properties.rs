//! Randomized algebraic properties over exact rational states.

use num_rational::BigRational;
use proptest::prelude::*;

use luinv::combinatorics::k_subsets;
use luinv::embed::{eval_three_qubit_i222, DistinguishableState};
use luinv::exterior::{FermionIndex, FermionState};
use luinv::invariants::{antisymmetric_family, closed_form_i1111, closed_form_i22};
use luinv::scalar::GaussianRational;
use luinv::verify::expand_power;

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

/// A two-fermion state on n modes with amplitudes from the given parts.
fn pair_state(n: u8, parts: &[(i64, i64)]) -> FermionState<GaussianRational> {
    let mut psi = FermionState::new(n, 2);
    for (subset, (re, im)) in k_subsets(n, 2).zip(parts.iter().cycle()) {
        psi.set(
            FermionIndex::new(subset),
            GaussianRational::new(q(*re, 1), q(*im, 1)),
        )
        .unwrap();
    }
    psi
}

fn amp_strategy() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-6i64..=6, -6i64..=6), 6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn raw_invariants_sum_to_norm_to_the_fourth(parts in amp_strategy()) {
        let psi = pair_state(4, &parts);
        let i22 = closed_form_i22(&psi).unwrap().into_real();
        let i1111 = closed_form_i1111(&psi).unwrap().into_real();
        let nsq = psi.norm_sq_rational();
        prop_assert_eq!(i22 + i1111, &nsq * &nsq);
    }

    #[test]
    fn quartic_invariant_is_nonnegative(parts in amp_strategy()) {
        let psi = pair_state(4, &parts);
        let value = closed_form_i1111(&psi).unwrap().into_real();
        prop_assert!(value >= q(0, 1));
    }

    #[test]
    fn invariants_are_homogeneous_of_degree_two_m(parts in amp_strategy(),
                                                  num in 1i64..=5, den in 1i64..=5) {
        let psi = pair_state(4, &parts);
        let c = GaussianRational::real(q(num, den));
        let mut scaled = FermionState::new(4, 2);
        for (idx, a) in psi.amplitudes() {
            scaled.set(idx.clone(), c.clone() * a.clone()).unwrap();
        }
        let scale = q(num, den);
        let fourth = &scale * &scale * &scale * &scale;
        prop_assert_eq!(
            closed_form_i22(&scaled).unwrap().into_real(),
            closed_form_i22(&psi).unwrap().into_real() * &fourth
        );
        prop_assert_eq!(
            closed_form_i1111(&scaled).unwrap().into_real(),
            closed_form_i1111(&psi).unwrap().into_real() * fourth
        );
    }

    #[test]
    fn closed_forms_ignore_padding_modes(parts in amp_strategy()) {
        let psi = pair_state(4, &parts);
        let padded = psi.embedded_in(6).unwrap();
        prop_assert_eq!(
            closed_form_i22(&psi).unwrap().into_real(),
            closed_form_i22(&padded).unwrap().into_real()
        );
        prop_assert_eq!(
            closed_form_i1111(&psi).unwrap().into_real(),
            closed_form_i1111(&padded).unwrap().into_real()
        );
    }

    #[test]
    fn quartic_closed_form_equals_antisymmetric_family(parts in amp_strategy()) {
        let psi = pair_state(5, &parts);
        prop_assert_eq!(
            closed_form_i1111(&psi).unwrap().into_real(),
            antisymmetric_family(&psi, 4).unwrap().into_real()
        );
    }

    #[test]
    fn power_expansion_norm_is_norm_to_the_m(parts in amp_strategy()) {
        let psi = pair_state(4, &parts).to_float();
        let nsq = psi.norm_sq();
        prop_assume!(nsq > 1e-9);
        let expansion = expand_power(&psi, 3);
        prop_assert!((expansion.norm_sq() - nsq.powi(3)).abs() <= 1e-9 * nsq.powi(3));
    }

    #[test]
    fn three_qubit_invariant_is_subsystem_symmetric(amps in prop::collection::vec((-5i64..=5, -5i64..=5), 8)) {
        let mut phi = DistinguishableState::<GaussianRational>::new(vec![2, 2, 2]);
        let mut it = amps.iter();
        for i in 1..=2u8 {
            for j in 1..=2u8 {
                for k in 1..=2u8 {
                    let (re, im) = it.next().unwrap();
                    phi.set(vec![i, j, k], GaussianRational::new(q(*re, 1), q(*im, 1))).unwrap();
                }
            }
        }
        let reference = eval_three_qubit_i222(&phi).unwrap().into_real();
        for perm in [[0usize, 2, 1], [1, 0, 2], [2, 1, 0]] {
            let permuted = phi.permute_subsystems(&perm).unwrap();
            prop_assert_eq!(eval_three_qubit_i222(&permuted).unwrap().into_real(), reference.clone());
        }
    }
}
