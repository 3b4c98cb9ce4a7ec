//! Evaluation of the projection invariants from an orthogonal basis, plus
//! closed-form fast paths for the explicitly known families.
//!
//! All evaluators return the raw homogeneous value of degree 2m in the
//! amplitudes; for a normalized state this is the invariant itself. Exact
//! rational inputs are normalized after the fact with `normalize_exact`,
//! which avoids irrational amplitudes entirely.

use itertools::Itertools;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::builder::SubspaceBasis;
use crate::combinatorics::{k_subsets, Partition};
use crate::error::{Error, Result};
use crate::exterior::{FermionIndex, FermionState};
use crate::scalar::{GaussianRational, Scalar};
use crate::symalg::{SymMonomial, SymVector};

/// A fully evaluated invariant, tagged with its isotypic label.
#[derive(Debug, Clone)]
pub struct InvariantValue {
    pub value: f64,
    /// Present when the input state had exact rational amplitudes.
    pub exact: Option<BigRational>,
    pub lambda: Partition,
    pub k: u8,
    pub m: u32,
}

/// Σ over all orbit members w of |⟨w, ψ^m⟩|² / ‖w‖².
///
/// Requires ψ.k = basis.k and ψ.n ≤ basis.n; a basis can be taken to any
/// larger n with `reexpand` first.
pub fn eval_projection_invariant<S: Scalar>(
    basis: &SubspaceBasis,
    psi: &FermionState<S>,
) -> Result<S> {
    if psi.k() != basis.k {
        return Err(Error::ParticleNumberMismatch {
            state_k: psi.k(),
            expected_k: basis.k,
        });
    }
    if psi.n() > basis.n {
        return Err(Error::DimsMismatch {
            dims: vec![psi.n()],
            expected: vec![basis.n],
        });
    }
    let mut acc = S::zero();
    for family in &basis.families {
        let inv = S::from_rational(&family.inv_norm_sq);
        for member in &family.orbit_members {
            let overlap = member.overlap_with_power(psi);
            if !overlap.is_zero() {
                acc = acc + overlap.abs_sq() * inv.clone();
            }
        }
    }
    Ok(acc)
}

/// Divides a raw degree-2m value by ‖ψ‖^{2m}, giving the invariant of the
/// normalized state without ever forming irrational amplitudes.
pub fn normalize_exact(
    raw: &GaussianRational,
    psi: &FermionState<GaussianRational>,
    m: u32,
) -> Result<BigRational> {
    let nsq = psi.norm_sq_rational();
    if nsq.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut denom = BigRational::from_integer(1.into());
    for _ in 0..m {
        denom *= &nsq;
    }
    Ok(raw.clone().into_real() / denom)
}

/// Floating-point analogue of `normalize_exact`.
pub fn normalize_float(raw: Complex64, psi: &FermionState<Complex64>, m: u32) -> f64 {
    raw.re / psi.norm_sq().powi(m as i32)
}

fn require_pairs<S: Scalar>(psi: &FermionState<S>) -> Result<()> {
    if psi.k() != 2 {
        return Err(Error::WrongParticleNumber {
            expected: 2,
            got: psi.k(),
        });
    }
    Ok(())
}

/// The (2,2) invariant of a two-fermion state, raw form: the sum of
/// Σ_{i<j} |ψ_ij²|², 2 Σ_i Σ_{j<k, j,k≠i} |ψ_ij ψ_ik|², and
/// Σ_{i<j<k<l} (|a+b|² + (1/3)|a−b−2c|²),
/// with a = ψ_ij ψ_kl, b = ψ_ik ψ_jl, c = ψ_il ψ_jk.
pub fn closed_form_i22<S: Scalar>(psi: &FermionState<S>) -> Result<S> {
    require_pairs(psi)?;
    let n = psi.n();
    let third = S::from_rational(&BigRational::new(1.into(), 3.into()));
    let two = S::from_rational(&BigRational::from_integer(2.into()));
    let mut acc = S::zero();
    for i in 1..=n {
        for j in (i + 1)..=n {
            let a = psi.amp_signed(&[i, j]);
            acc = acc + (a.clone() * a).abs_sq();
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            if j == i {
                continue;
            }
            for l in (j + 1)..=n {
                if l == i {
                    continue;
                }
                let p = psi.amp_signed(&[i, j]) * psi.amp_signed(&[i, l]);
                if !p.is_zero() {
                    acc = acc + two.clone() * p.abs_sq();
                }
            }
        }
    }
    for quad in k_subsets(n, 4) {
        let (i, j, k, l) = (quad[0], quad[1], quad[2], quad[3]);
        let a = psi.amp_signed(&[i, j]) * psi.amp_signed(&[k, l]);
        let b = psi.amp_signed(&[i, k]) * psi.amp_signed(&[j, l]);
        let c = psi.amp_signed(&[i, l]) * psi.amp_signed(&[j, k]);
        let first = a.clone() + b.clone();
        let second = a - b - (two.clone() * c);
        acc = acc + first.abs_sq() + third.clone() * second.abs_sq();
    }
    Ok(acc)
}

/// The totally antisymmetric quartic invariant of a two-fermion state:
/// (2/3) Σ_{i<j<k<l} |ψ_ij ψ_kl − ψ_ik ψ_jl + ψ_il ψ_jk|², raw form.
/// Vanishes exactly on single Slater determinants.
pub fn closed_form_i1111<S: Scalar>(psi: &FermionState<S>) -> Result<S> {
    require_pairs(psi)?;
    let two_thirds = S::from_rational(&BigRational::new(2.into(), 3.into()));
    let mut acc = S::zero();
    for quad in k_subsets(psi.n(), 4) {
        let (i, j, k, l) = (quad[0], quad[1], quad[2], quad[3]);
        let a = psi.amp_signed(&[i, j]) * psi.amp_signed(&[k, l]);
        let b = psi.amp_signed(&[i, k]) * psi.amp_signed(&[j, l]);
        let c = psi.amp_signed(&[i, l]) * psi.amp_signed(&[j, k]);
        let s = a - b + c;
        if !s.is_zero() {
            acc = acc + s.abs_sq();
        }
    }
    Ok(two_thirds * acc)
}

/// The degree-6 totally antisymmetric invariant of a two-fermion state,
/// raw form: for every 6-subset, the signed sum over its 15 perfect
/// matchings of triple amplitude products, absolute value squared, times
/// the seed normalization 2/5.
pub fn closed_form_i16<S: Scalar>(psi: &FermionState<S>) -> Result<S> {
    require_pairs(psi)?;
    antisymmetric_family(psi, 6)
}

/// Signed set partitions of `elems` into blocks of size k: the flattened
/// canonical block sequence (blocks internally sorted, ordered by least
/// element) and the parity of that sequence relative to sorted order.
fn signed_block_partitions(elems: &[u8], k: usize) -> Vec<(Vec<u8>, i8)> {
    fn recurse(remaining: &[u8], k: usize, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if remaining.is_empty() {
            out.push(prefix.clone());
            return;
        }
        let first = remaining[0];
        for partners in remaining[1..].iter().copied().combinations(k - 1) {
            let before = prefix.len();
            prefix.push(first);
            prefix.extend(&partners);
            let rest: Vec<u8> = remaining[1..]
                .iter()
                .copied()
                .filter(|x| !partners.contains(x))
                .collect();
            recurse(&rest, k, prefix, out);
            prefix.truncate(before);
        }
    }
    let mut flat = Vec::new();
    recurse(elems, k, &mut Vec::new(), &mut flat);
    flat.into_iter()
        .map(|seq| {
            let mut inversions = 0usize;
            for a in 0..seq.len() {
                for b in (a + 1)..seq.len() {
                    if seq[a] > seq[b] {
                        inversions += 1;
                    }
                }
            }
            let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
            (seq, sign)
        })
        .collect()
}

/// The totally antisymmetric invariant of weight (1,...,1) on base_n
/// indices, raw form. The seed vector is the coherent signed sum over set
/// partitions of {1..base_n} into k-blocks; its squared norm fixes the
/// overall normalization. For odd k (and m ≥ 2) the block-swap signs
/// cancel the seed entirely and the invariant is identically zero.
pub fn antisymmetric_family<S: Scalar>(psi: &FermionState<S>, base_n: u8) -> Result<S> {
    let k = psi.k();
    if !base_n.is_multiple_of(k) {
        return Err(Error::IndivisibleBase { k, base_n });
    }
    let m = (base_n / k) as u32;
    if k % 2 == 1 && m >= 2 {
        return Ok(S::zero());
    }
    let base: Vec<u8> = (1..=base_n).collect();
    let partitions = signed_block_partitions(&base, k as usize);

    // seed squared norm at the canonical base set
    let mut seed = SymVector::zero(m);
    for (flat, sign) in &partitions {
        let factors: Vec<FermionIndex> = flat
            .chunks(k as usize)
            .map(|c| FermionIndex::new(c.to_vec()))
            .collect();
        let coeff = BigRational::from_integer((*sign as i64).into());
        seed.add_term(SymMonomial::new(factors), coeff);
    }
    debug_assert!(!seed.is_zero());
    let inv_norm_sq = S::from_rational(&(BigRational::from_integer(1.into()) / seed.norm_sq()));

    let mut acc = S::zero();
    for subset in k_subsets(psi.n(), base_n) {
        let mut overlap = S::zero();
        'parts: for (flat, sign) in &partitions {
            let mut prod = S::one();
            for chunk in flat.chunks(k as usize) {
                let mapped: Vec<u8> = chunk.iter().map(|&p| subset[p as usize - 1]).collect();
                let a = psi.amp(&FermionIndex::new(mapped));
                if a.is_zero() {
                    continue 'parts;
                }
                prod = prod * a;
            }
            if *sign < 0 {
                prod = -prod;
            }
            overlap = overlap + prod;
        }
        if !overlap.is_zero() {
            acc = acc + overlap.abs_sq();
        }
    }
    Ok(inv_norm_sq * acc)
}

/// Report of the completeness identity Σ_λ I_λ(ψ) = ‖ψ‖^{2m}.
#[derive(Debug, Clone, Copy)]
pub struct SumConstraintReport {
    pub residual: f64,
    pub ok: bool,
}

/// Checks that raw invariant values covering all isotypic components sum
/// to ‖ψ‖^{2m} within 1e-10.
pub fn sum_constraint_check(values: &[f64], norm_sq_psi: f64, m: u32) -> SumConstraintReport {
    let total: f64 = values.iter().sum();
    let residual = (total - norm_sq_psi.powi(m as i32)).abs();
    SumConstraintReport {
        residual,
        ok: residual <= 1e-10,
    }
}
