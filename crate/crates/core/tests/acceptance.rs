//! End-to-end acceptance checks, one test per criterion. Each test prints
//! a single pass line; run with `--nocapture` to see them all.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use luinv::builder::{build_highest_weight_basis, SubspaceBasis};
use luinv::combinatorics::{sym_power_dimension, weyl_dimension, Partition};
use luinv::embed::{embed_distinguishable, eval_three_qubit_i222, DistinguishableState};
use luinv::exterior::{FermionIndex, FermionState};
use luinv::invariants::{
    closed_form_i1111, closed_form_i16, closed_form_i22, eval_projection_invariant,
    normalize_exact, normalize_float,
};
use luinv::scalar::GaussianRational;
use luinv::verify::{expand_power, invariance_test, numeric_span_crosscheck};

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

fn gq(p: i64, d: i64) -> GaussianRational {
    GaussianRational::real(q(p, d))
}

/// Random fermionic state with small rational amplitudes (exact layer).
fn random_rational_state(n: u8, k: u8, rng: &mut ChaCha8Rng) -> FermionState<GaussianRational> {
    let mut psi = FermionState::new(n, k);
    for subset in luinv::combinatorics::k_subsets(n, k) {
        let re = rng.random_range(-9i64..=9);
        let im = rng.random_range(-9i64..=9);
        psi.set(
            FermionIndex::new(subset),
            GaussianRational::new(q(re, 1), q(im, 1)),
        )
        .unwrap();
    }
    psi
}

fn norms_by_bucket(basis: &SubspaceBasis) -> Vec<(Vec<i64>, usize, Vec<BigRational>)> {
    basis
        .families_by_weight()
        .into_iter()
        .map(|(w, fams)| {
            let mut norms: Vec<BigRational> = fams.iter().map(|f| f.inv_norm_sq.clone()).collect();
            norms.sort();
            (w.entries().to_vec(), fams[0].orbit_members.len(), norms)
        })
        .collect()
}

#[test]
fn criterion_01_dimension_identities() {
    let lam_w = Partition::new(vec![2, 2]);
    let lam_c = Partition::new(vec![1, 1, 1, 1]);
    for n in 4..=8usize {
        let total = sym_power_dimension(n as u64, 2, 2).unwrap();
        let w = weyl_dimension(&lam_w, n).unwrap();
        let c = weyl_dimension(&lam_c, n).unwrap();
        assert_eq!(w + c, total, "n = {n}");
    }
    assert_eq!(weyl_dimension(&lam_w, 4).unwrap(), 20);
    println!("criterion 1: PASS - dimension identities hold exactly for n = 4..8");
}

#[test]
fn criterion_02_basis_certificates() {
    let t = std::time::Instant::now();
    let b224 = build_highest_weight_basis(2, 2, 4).unwrap();
    assert_eq!(b224.total_dimension, 20);
    let b236 = build_highest_weight_basis(2, 3, 6).unwrap();
    assert_eq!(b236.total_dimension, 490);
    let b326 = build_highest_weight_basis(3, 2, 6).unwrap();
    assert_eq!(
        b326.total_dimension as u128,
        weyl_dimension(&Partition::new(vec![2, 2, 2]), 6).unwrap()
    );
    // orbit-family structure at n = 6, k = 2, m = 3: (families, orbit size)
    let got: Vec<(usize, usize)> = b236
        .families_by_weight()
        .iter()
        .map(|(_, fams)| (fams.len(), fams[0].orbit_members.len()))
        .collect();
    assert_eq!(
        got,
        vec![
            (1, 15),
            (1, 120),
            (1, 60),
            (1, 20),
            (2, 90),
            (3, 30),
            (5, 1)
        ]
    );
    println!(
        "criterion 2: PASS - basis dimensions 20/490/175 certified with expected orbit counts ({:?})",
        t.elapsed()
    );
}

#[test]
fn criterion_03_norm_tables() {
    let b236 = build_highest_weight_basis(2, 3, 6).unwrap();
    let got = norms_by_bucket(&b236);
    let expected: Vec<(Vec<i64>, usize, Vec<BigRational>)> = vec![
        (vec![3, 3, 0, 0, 0, 0], 15, vec![q(1, 1)]),
        (vec![3, 2, 1, 0, 0, 0], 120, vec![q(3, 1)]),
        (vec![3, 1, 1, 1, 0, 0], 60, vec![q(6, 1)]),
        (vec![2, 2, 2, 0, 0, 0], 20, vec![q(6, 1)]),
        (vec![2, 2, 1, 1, 0, 0], 90, vec![q(1, 8), q(1, 1)]),
        (vec![2, 1, 1, 1, 1, 0], 30, vec![q(1, 4), q(3, 4), q(2, 1)]),
        (
            vec![1, 1, 1, 1, 1, 1],
            1,
            vec![q(1, 8), q(1, 8), q(3, 8), q(3, 8), q(1, 1)],
        ),
    ];
    assert_eq!(got, expected);

    let b326 = build_highest_weight_basis(3, 2, 6).unwrap();
    let got = norms_by_bucket(&b326);
    let expected: Vec<(Vec<i64>, usize, Vec<BigRational>)> = vec![
        (vec![2, 2, 2, 0, 0, 0], 20, vec![q(1, 1)]),
        (vec![2, 2, 1, 1, 0, 0], 90, vec![q(2, 1)]),
        (vec![2, 1, 1, 1, 1, 0], 30, vec![q(1, 3), q(1, 1)]),
        (
            vec![1, 1, 1, 1, 1, 1],
            1,
            vec![q(1, 18), q(1, 9), q(1, 6), q(1, 6), q(1, 2)],
        ),
    ];
    assert_eq!(got, expected);
    println!("criterion 3: PASS - inverse squared norm multisets match per weight bucket");
}

fn three_qubit(amps: &[(&[u8; 3], i64)]) -> DistinguishableState<GaussianRational> {
    let mut phi = DistinguishableState::new(vec![2, 2, 2]);
    for (t, a) in amps {
        phi.set(t.iter().map(|&x| x + 1).collect(), gq(*a, 1))
            .unwrap();
    }
    phi
}

#[test]
fn criterion_04_three_qubit_values() {
    let cases: [(DistinguishableState<GaussianRational>, BigRational); 4] = [
        (three_qubit(&[(&[0, 0, 0], 1)]), q(1, 1)),
        (three_qubit(&[(&[0, 0, 0], 1), (&[1, 1, 1], 1)]), q(3, 4)),
        (
            three_qubit(&[(&[0, 0, 1], 1), (&[0, 1, 0], 1), (&[1, 0, 0], 1)]),
            q(7, 9),
        ),
        (three_qubit(&[(&[0, 0, 1], 1), (&[0, 1, 0], 1)]), q(5, 6)),
    ];
    for (phi, expected) in &cases {
        let raw = eval_three_qubit_i222(phi).unwrap().into_real();
        let nsq = phi.norm_sq_scalar().into_real();
        let exact = raw / (&nsq * &nsq);
        assert_eq!(&exact, expected);
        // float path
        let dev = (exact.to_f64().unwrap() - expected.to_f64().unwrap()).abs();
        assert!(dev <= 1e-12);
    }
    println!("criterion 4: PASS - three-qubit values 1, 3/4, 7/9, 5/6 exact");
}

#[test]
fn criterion_05_constraint_sum() {
    for t in 0..100u64 {
        let psi = FermionState::random(4, 2, 5000 + t);
        let i22 = normalize_float(closed_form_i22(&psi).unwrap(), &psi, 2);
        let i1111 = normalize_float(closed_form_i1111(&psi).unwrap(), &psi, 2);
        assert!(
            (i22 + i1111 - 1.0).abs() <= 1e-10,
            "trial {t}: {i22} + {i1111}"
        );
    }
    // complement defined as 1 - I, so the pair sums to one identically
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for _ in 0..10 {
        let mut phi = DistinguishableState::<GaussianRational>::new(vec![2, 2, 2]);
        for i in 1..=2u8 {
            for j in 1..=2u8 {
                for k in 1..=2u8 {
                    phi.set(
                        vec![i, j, k],
                        GaussianRational::new(
                            q(rng.random_range(-5i64..=5), 1),
                            q(rng.random_range(-5i64..=5), 1),
                        ),
                    )
                    .unwrap();
                }
            }
        }
        let nsq = phi.norm_sq_scalar().into_real();
        if nsq == q(0, 1) {
            continue;
        }
        let exact = eval_three_qubit_i222(&phi).unwrap().into_real() / (&nsq * &nsq);
        let complement = q(1, 1) - &exact;
        assert_eq!(exact + complement, q(1, 1));
    }
    println!("criterion 5: PASS - I22 + I1111 = 1 on 100 random states; I222 + complement = 1");
}

#[test]
fn criterion_06_formula_vs_projection() {
    let b_w = build_highest_weight_basis(2, 2, 4).unwrap();
    for t in 0..50u64 {
        let psi = FermionState::random(4, 2, 6000 + t);
        let proj = eval_projection_invariant(&b_w, &psi).unwrap().re;
        let i22 = closed_form_i22(&psi).unwrap().re;
        assert!((proj - i22).abs() <= 1e-10, "trial {t}");
        let i1111 = closed_form_i1111(&psi).unwrap().re;
        // complement projection = ||psi^2||^2 - projection onto W
        let total = expand_power(&psi, 2).norm_sq();
        assert!((total - proj - i1111).abs() <= 1e-10, "trial {t}");
    }

    let b222 = build_highest_weight_basis(3, 2, 6).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for t in 0..50u32 {
        let mut phi = DistinguishableState::<Complex64>::new(vec![2, 2, 2]);
        for i in 1..=2u8 {
            for j in 1..=2u8 {
                for k in 1..=2u8 {
                    phi.set(
                        vec![i, j, k],
                        Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
                    )
                    .unwrap();
                }
            }
        }
        let direct = eval_three_qubit_i222(&phi).unwrap().re;
        let psi = embed_distinguishable(&phi);
        let proj = eval_projection_invariant(&b222, &psi).unwrap().re;
        assert!(
            (direct - proj).abs() <= 1e-10,
            "trial {t}: {direct} vs {proj}"
        );
    }
    println!("criterion 6: PASS - closed forms match basis projections on 50 random states each");
}

#[test]
fn criterion_07_lu_invariance() {
    let start = std::time::Instant::now();
    let trials = 100;
    let tol = 1e-9;

    let psi2 = FermionState::random(5, 2, 71);
    let r = invariance_test(
        |p| normalize_float(closed_form_i22(p).unwrap(), p, 2),
        &psi2,
        trials,
        tol,
        710,
    )
    .unwrap();
    assert!(r.pass, "I22: {r}");
    let r = invariance_test(
        |p| normalize_float(closed_form_i1111(p).unwrap(), p, 2),
        &psi2,
        trials,
        tol,
        711,
    )
    .unwrap();
    assert!(r.pass, "I1111: {r}");

    let psi6 = FermionState::random(6, 2, 72);
    let r = invariance_test(
        |p| normalize_float(closed_form_i16(p).unwrap(), p, 3),
        &psi6,
        trials,
        tol,
        712,
    )
    .unwrap();
    assert!(r.pass, "I16: {r}");

    let b222 = build_highest_weight_basis(3, 2, 6).unwrap();
    let psi3 = FermionState::random(6, 3, 73);
    let r = invariance_test(
        |p| normalize_float(eval_projection_invariant(&b222, p).unwrap(), p, 2),
        &psi3,
        trials,
        tol,
        713,
    )
    .unwrap();
    assert!(r.pass, "I222: {r}");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    println!(
        "criterion 7: PASS - all invariants stable under 100 Haar unitaries each ({elapsed:?})"
    );
}

#[test]
fn criterion_08_decomposable_vanishing() {
    let mut rng = ChaCha8Rng::seed_from_u64(81);
    for t in 0..20 {
        // psi = u wedge v in C^4, exact rational components
        let comp = |rng: &mut ChaCha8Rng| -> Vec<GaussianRational> {
            (0..4)
                .map(|_| {
                    GaussianRational::new(
                        q(rng.random_range(-9i64..=9), 1),
                        q(rng.random_range(-9i64..=9), 1),
                    )
                })
                .collect()
        };
        let u = comp(&mut rng);
        let v = comp(&mut rng);
        let mut psi = FermionState::<GaussianRational>::new(4, 2);
        for i in 0..4u8 {
            for j in (i + 1)..4u8 {
                let a = u[i as usize].clone() * v[j as usize].clone()
                    + (GaussianRational::from_integer(-1)
                        * u[j as usize].clone()
                        * v[i as usize].clone());
                psi.set(FermionIndex::new(vec![i + 1, j + 1]), a).unwrap();
            }
        }
        let raw = closed_form_i1111(&psi).unwrap().into_real();
        assert_eq!(raw, q(0, 1), "trial {t}");
    }
    for t in 0..20u64 {
        let mut rng2 = ChaCha8Rng::seed_from_u64(8200 + t);
        let psi = random_rational_state(4, 2, &mut rng2);
        let raw = closed_form_i1111(&psi).unwrap();
        let value = normalize_exact(&raw, &psi, 2).unwrap();
        assert!(
            value.to_f64().unwrap() > 1e-6,
            "trial {t}: {}",
            value.to_f64().unwrap()
        );
    }
    println!(
        "criterion 8: PASS - quartic invariant vanishes exactly on u∧v, stays > 1e-6 generically"
    );
}

#[test]
fn criterion_09_oracle_equivalence() {
    // overlap oracle against the literal expansion, m = 2 and m = 3
    for (k, m, n, seed) in [(2u8, 2u32, 4u8, 91u64), (2, 3, 5, 92), (3, 2, 6, 93)] {
        let basis = build_highest_weight_basis(k, m, n).unwrap();
        for t in 0..10u64 {
            let psi = FermionState::random(n, k, seed * 100 + t);
            let expansion = expand_power(&psi, m);
            for family in basis.families.iter().take(3) {
                let w = &family.representative;
                let via_oracle = w.overlap_with_power(&psi);
                let via_expansion = expansion.overlap_exact(w);
                assert!(
                    (via_oracle - via_expansion).norm() <= 1e-10,
                    "k={k} m={m} trial {t}"
                );
            }
        }
    }
    // rank recovery for all three worked cases
    for (k, m, n) in [(2u8, 2u32, 4u8), (2, 3, 6), (3, 2, 6)] {
        let basis = build_highest_weight_basis(k, m, n).unwrap();
        let samples = basis.total_dimension as u32 + 30;
        let r = numeric_span_crosscheck(&basis, samples, 94).unwrap();
        assert!(r.pass, "span ({k},{m},{n}): {r}");
    }
    println!("criterion 9: PASS - overlap oracle matches literal expansion; span rank recovered");
}

#[test]
fn criterion_10_n_independence() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let psi4 = random_rational_state(4, 2, &mut rng);
    let b4 = build_highest_weight_basis(2, 2, 4).unwrap();
    let reference = eval_projection_invariant(&b4, &psi4).unwrap().into_real();
    for n in [5u8, 6] {
        let psi_n = psi4.embedded_in(n).unwrap();
        let b_n = b4.reexpand(n).unwrap();
        let value = eval_projection_invariant(&b_n, &psi_n).unwrap().into_real();
        assert_eq!(value, reference, "n = {n}");
    }
    println!("criterion 10: PASS - I22 identical for n = 4, 5, 6 on the same state");
}
