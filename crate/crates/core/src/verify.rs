//! Floating-point cross-checks that are independent of the exact
//! construction: seeded Haar-random unitaries, invariance trials, the
//! literal power-expansion overlap oracle, and a numeric span/rank test
//! of the exact basis.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::builder::SubspaceBasis;
use crate::combinatorics::multinomial;
use crate::error::Result;
use crate::exterior::{FermionIndex, FermionState};
use crate::matrix::CMatrix;
use crate::symalg::{SymMonomial, SymVector};

/// Outcome of a randomized trial suite.
#[derive(Debug, Clone, Copy)]
pub struct TrialReport {
    pub trials: u32,
    pub max_deviation: f64,
    pub seed: u64,
    pub pass: bool,
}

impl std::fmt::Display for TrialReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} max_dev={:.3e} trials={} seed={}",
            if self.pass { "PASS" } else { "FAIL" },
            self.max_deviation,
            self.trials,
            self.seed
        )
    }
}

/// A Haar-distributed n×n unitary: QR of a seeded complex Ginibre matrix
/// via modified Gram–Schmidt. The positive-diagonal R convention of
/// Gram–Schmidt is exactly the phase fix that makes Q Haar. ChaCha8 keyed
/// by the seed makes the draw reproducible across platforms.
pub fn haar_unitary(n: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            a[(i, j)] = Complex64::new(re, im);
        }
    }
    // orthonormalize the columns in place
    for j in 0..n {
        for prev in 0..j {
            let mut proj = Complex64::ZERO;
            for i in 0..n {
                proj += a[(i, prev)].conj() * a[(i, j)];
            }
            for i in 0..n {
                let s = proj * a[(i, prev)];
                a[(i, j)] -= s;
            }
        }
        let norm: f64 = (0..n).map(|i| a[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        for i in 0..n {
            a[(i, j)] /= norm;
        }
    }
    a
}

/// Applies `trials` independent Haar unitaries to ψ through the exterior
/// power and records the largest change of the invariant.
pub fn invariance_test<F>(
    invariant: F,
    psi: &FermionState<Complex64>,
    trials: u32,
    tol: f64,
    seed: u64,
) -> Result<TrialReport>
where
    F: Fn(&FermionState<Complex64>) -> f64,
{
    let reference = invariant(psi);
    let mut max_deviation = 0.0f64;
    for t in 0..trials {
        let u = haar_unitary(psi.n() as usize, seed.wrapping_add(t as u64 + 1));
        let moved = psi.lift_unitary(&u)?;
        max_deviation = max_deviation.max((invariant(&moved) - reference).abs());
    }
    Ok(TrialReport {
        trials,
        max_deviation,
        seed,
        pass: max_deviation <= tol,
    })
}

/// A floating-point vector in S^m(⋀^k H), in the same monomial coordinates
/// as the exact `SymVector` (monomial squared norm 1/multinomial).
#[derive(Debug, Clone)]
pub struct NumericSymVector {
    degree: u32,
    terms: BTreeMap<SymMonomial, Complex64>,
}

impl NumericSymVector {
    pub fn terms(&self) -> &BTreeMap<SymMonomial, Complex64> {
        &self.terms
    }

    pub fn inner_product(&self, other: &NumericSymVector) -> Complex64 {
        debug_assert_eq!(self.degree, other.degree);
        let mut acc = Complex64::ZERO;
        for (mon, a) in &self.terms {
            if let Some(b) = other.terms.get(mon) {
                acc += a.conj() * b * mon.norm_sq().to_f64().unwrap();
            }
        }
        acc
    }

    pub fn norm_sq(&self) -> f64 {
        self.terms
            .iter()
            .map(|(mon, a)| a.norm_sqr() * mon.norm_sq().to_f64().unwrap())
            .sum()
    }

    /// ⟨w, self⟩ against an exact vector (rational coefficients are
    /// self-conjugate).
    pub fn overlap_exact(&self, w: &SymVector) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for (mon, c) in w.terms() {
            if let Some(b) = self.terms.get(mon) {
                acc += c.to_f64().unwrap() * b * mon.norm_sq().to_f64().unwrap();
            }
        }
        acc
    }

    pub fn sub_scaled(&mut self, other: &NumericSymVector, c: Complex64) {
        for (mon, b) in &other.terms {
            *self.terms.entry(mon.clone()).or_insert(Complex64::ZERO) -= c * b;
        }
    }
}

/// The literal multinomial expansion of ψ^m: the coefficient of a monomial
/// with exponent pattern (a_I) is multinomial(m; a)·Π ψ_I^{a_I}.
pub fn expand_power(psi: &FermionState<Complex64>, m: u32) -> NumericSymVector {
    let support: Vec<(&FermionIndex, &Complex64)> = psi.amplitudes().iter().collect();
    let mut terms = BTreeMap::new();
    for combo in (0..support.len()).combinations_with_replacement(m as usize) {
        let mut exps: Vec<u32> = Vec::new();
        let mut factors: Vec<FermionIndex> = Vec::with_capacity(m as usize);
        let mut coeff = Complex64::ONE;
        let mut run = 0usize;
        for (pos, &s) in combo.iter().enumerate() {
            let (index, amp) = support[s];
            factors.push(index.clone());
            coeff *= amp;
            if pos > 0 && combo[pos - 1] == s {
                run += 1;
            } else {
                if pos > 0 {
                    exps.push(run as u32 + 1);
                }
                run = 0;
            }
        }
        exps.push(run as u32 + 1);
        let coeff = coeff * multinomial(&exps).to_f64().unwrap();
        terms.insert(SymMonomial::new(factors), coeff);
    }
    NumericSymVector { degree: m, terms }
}

/// Draws `samples` vectors (g·e_{1..k})^m for Haar g, checks each lies in
/// the span of the exact basis (projection residual ≤ 1e−8 relative), and
/// that the numeric rank of the sample set equals basis.total_dimension.
///
/// Internally works in dense coordinates over the full monomial basis of
/// S^m(⋀^k C^n); the weighted dot product carries the monomial norms.
pub fn numeric_span_crosscheck(
    basis: &SubspaceBasis,
    samples: u32,
    seed: u64,
) -> Result<TrialReport> {
    let n = basis.n;
    let k = basis.k;
    let m = basis.m;

    let subsets: Vec<FermionIndex> = crate::combinatorics::k_subsets(n, k)
        .map(FermionIndex::new)
        .collect();
    let mut monomials: Vec<SymMonomial> = Vec::new();
    for combo in (0..subsets.len()).combinations_with_replacement(m as usize) {
        let factors: Vec<FermionIndex> = combo.iter().map(|&i| subsets[i].clone()).collect();
        monomials.push(SymMonomial::new(factors));
    }
    let index: std::collections::HashMap<&SymMonomial, usize> = monomials.iter().zip(0..).collect();
    let weights: Vec<f64> = monomials
        .iter()
        .map(|mon| mon.norm_sq().to_f64().unwrap())
        .collect();
    let dim = monomials.len();
    let dot = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        let mut acc = Complex64::ZERO;
        for i in 0..dim {
            acc += a[i].conj() * b[i] * weights[i];
        }
        acc
    };

    // exact basis members in dense coordinates, with their weights
    let mut members: Vec<(Vec<Complex64>, f64)> = Vec::new();
    for family in &basis.families {
        let inv = family.inv_norm_sq.to_f64().unwrap();
        for member in &family.orbit_members {
            let mut dense = vec![Complex64::ZERO; dim];
            for (mon, c) in member.terms() {
                dense[index[mon]] = Complex64::new(c.to_f64().unwrap(), 0.0);
            }
            members.push((dense, inv));
        }
    }

    let mut max_residual = 0.0f64;
    let mut ortho: Vec<Vec<Complex64>> = Vec::new();
    // relative threshold separating rank growth from round-off
    let rank_tol = 1e-6;
    for t in 0..samples {
        let mut slater = FermionState::new(n, k);
        slater
            .set(FermionIndex::new((1..=k).collect()), Complex64::ONE)
            .unwrap();
        let g = haar_unitary(n as usize, seed.wrapping_add(t as u64));
        let psi = slater.lift_unitary(&g)?;
        let expansion = expand_power(&psi, m);
        let mut v = vec![Complex64::ZERO; dim];
        for (mon, c) in expansion.terms() {
            v[index[mon]] = *c;
        }
        let total = dot(&v, &v).re;

        // explicit residual vector; the norm-difference formula would lose
        // everything below sqrt(machine epsilon) to cancellation
        let mut r = v.clone();
        for (member, inv) in &members {
            let c = dot(member, &v) * *inv;
            for i in 0..dim {
                let s = c * member[i];
                r[i] -= s;
            }
        }
        let residual = dot(&r, &r).re.max(0.0).sqrt() / total.sqrt();
        max_residual = max_residual.max(residual);

        // numeric Gram–Schmidt for the rank count
        if (ortho.len() as u64) < basis.total_dimension {
            for q in &ortho {
                let c = dot(q, &v);
                for i in 0..dim {
                    let s = c * q[i];
                    v[i] -= s;
                }
            }
            let rn = dot(&v, &v).re.sqrt();
            if rn > rank_tol * total.sqrt() {
                for x in &mut v {
                    *x /= rn;
                }
                ortho.push(v);
            }
        }
    }
    let rank_ok = ortho.len() as u64 == basis.total_dimension;
    Ok(TrialReport {
        trials: samples,
        max_deviation: max_residual,
        seed,
        pass: rank_ok && max_residual <= 1e-8,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::build_highest_weight_basis;
    use crate::invariants::{closed_form_i22, eval_projection_invariant};

    #[test]
    fn haar_unitary_is_unitary_and_deterministic() {
        for n in [1usize, 3, 6] {
            let u = haar_unitary(n, 42);
            let product = u.mul(&u.adjoint()).unwrap();
            assert!(product.deviation_from_identity() < 1e-12, "n = {n}");
        }
        let a = haar_unitary(4, 7);
        let b = haar_unitary(4, 7);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(a[(i, j)], b[(i, j)]);
            }
        }
        let u1 = haar_unitary(1, 3);
        assert!((u1[(0, 0)].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn invariance_of_the_pair_invariant() {
        let psi = FermionState::random(4, 2, 11);
        let report =
            invariance_test(|s| closed_form_i22(s).unwrap().re, &psi, 20, 1e-9, 5).unwrap();
        assert!(report.pass, "{report}");
    }

    #[test]
    fn broken_invariant_is_detected() {
        // a single amplitude modulus is not unitarily invariant
        let psi = FermionState::random(4, 2, 11);
        let probe = FermionIndex::new(vec![1, 2]);
        let report = invariance_test(|s| s.amp(&probe).norm_sqr(), &psi, 20, 1e-9, 5).unwrap();
        assert!(!report.pass);
    }

    #[test]
    fn expansion_oracle_matches_direct_overlap() {
        use crate::symalg::SymMonomial;
        for m in [2u32, 3] {
            let psi = FermionState::random(4, 2, 23 + m as u64);
            let expanded = expand_power(&psi, m);
            // check ⟨w, ψ^m⟩ for a handful of exact vectors
            let vectors = [
                SymVector::monomial(SymMonomial::power(FermionIndex::new(vec![1, 2]), m)),
                {
                    let mut v = SymVector::zero(m);
                    let mut factors = vec![FermionIndex::new(vec![1, 2]); (m - 1) as usize];
                    factors.push(FermionIndex::new(vec![3, 4]));
                    v.add_term(
                        SymMonomial::new(factors),
                        num_rational::BigRational::new(3.into(), 2.into()),
                    );
                    v
                },
            ];
            for w in &vectors {
                let direct = w.overlap_with_power(&psi);
                let via_expansion = expanded.overlap_exact(w);
                assert!(
                    (direct - via_expansion).norm() < 1e-10,
                    "m = {m}: {direct} vs {via_expansion}"
                );
            }
            // the expansion has the right total norm: ‖ψ^m‖² = ‖ψ‖^{2m} = 1
            assert!((expanded.norm_sq() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn span_crosscheck_small_case() {
        let basis = build_highest_weight_basis(2, 2, 4).unwrap();
        let report = numeric_span_crosscheck(&basis, 30, 1).unwrap();
        assert!(report.pass, "{report}");
    }

    #[test]
    fn span_crosscheck_detects_missing_family() {
        let mut basis = build_highest_weight_basis(2, 2, 4).unwrap();
        let removed = basis.families.pop().unwrap();
        basis.total_dimension -= removed.orbit_members.len() as u64;
        let report = numeric_span_crosscheck(&basis, 30, 1).unwrap();
        assert!(!report.pass);
    }

    #[test]
    fn projected_norm_is_the_invariant() {
        let basis = build_highest_weight_basis(2, 2, 4).unwrap();
        let psi = FermionState::random(4, 2, 99);
        let expected = eval_projection_invariant(&basis, &psi).unwrap().re;
        for g_seed in [3u64, 4, 5] {
            let u = haar_unitary(4, g_seed);
            let moved = psi.lift_unitary(&u).unwrap();
            let v = expand_power(&moved, 2);
            let mut proj_sq = 0.0;
            for family in &basis.families {
                let inv = family.inv_norm_sq.to_f64().unwrap();
                for member in &family.orbit_members {
                    proj_sq += v.overlap_exact(member).norm_sqr() * inv;
                }
            }
            assert!((proj_sq - expected).abs() < 1e-8);
        }
    }
}
