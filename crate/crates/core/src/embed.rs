//! Distinguishable-particle states and their embedding into a fermionic
//! Hilbert space via the block-diagonal branching U(n₁)×…×U(n_k) ⊂ U(n).

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exterior::{FermionIndex, FermionState};
use crate::scalar::Scalar;

/// A sparse state of k distinguishable subsystems with dimensions
/// (n₁, ..., n_k); amplitudes are indexed by 1-based tuples.
#[derive(Debug, Clone, PartialEq)]
pub struct DistinguishableState<S = Complex64> {
    dims: Vec<u8>,
    amps: BTreeMap<Vec<u8>, S>,
}

impl<S: Scalar> DistinguishableState<S> {
    pub fn new(dims: Vec<u8>) -> Self {
        assert!(!dims.is_empty() && dims.iter().all(|&d| d >= 1));
        DistinguishableState {
            dims,
            amps: BTreeMap::new(),
        }
    }

    pub fn dims(&self) -> &[u8] {
        &self.dims
    }

    pub fn subsystems(&self) -> u8 {
        self.dims.len() as u8
    }

    pub fn amplitudes(&self) -> &BTreeMap<Vec<u8>, S> {
        &self.amps
    }

    pub fn set(&mut self, index: Vec<u8>, value: S) -> Result<()> {
        let valid = index.len() == self.dims.len()
            && index
                .iter()
                .zip(&self.dims)
                .all(|(&i, &d)| i >= 1 && i <= d);
        if !valid {
            return Err(Error::InvalidIndex {
                index,
                n: *self.dims.iter().max().unwrap(),
                k: self.dims.len() as u8,
            });
        }
        if value.is_zero() {
            self.amps.remove(&index);
        } else {
            self.amps.insert(index, value);
        }
        Ok(())
    }

    pub fn amp(&self, index: &[u8]) -> S {
        self.amps.get(index).cloned().unwrap_or_else(S::zero)
    }

    pub fn norm_sq_scalar(&self) -> S {
        self.amps
            .values()
            .fold(S::zero(), |acc, a| acc + a.abs_sq())
    }

    /// Relabels the subsystems: subsystem j of the result is subsystem
    /// perm[j] of the original. All dimensions along the cycle must match.
    pub fn permute_subsystems(&self, perm: &[usize]) -> Result<DistinguishableState<S>> {
        if perm.len() != self.dims.len() {
            return Err(Error::LengthMismatch {
                left: perm.len(),
                right: self.dims.len(),
            });
        }
        let dims: Vec<u8> = perm.iter().map(|&p| self.dims[p]).collect();
        let mut out = DistinguishableState::new(dims);
        for (tuple, a) in &self.amps {
            let new_tuple: Vec<u8> = perm.iter().map(|&p| tuple[p]).collect();
            out.set(new_tuple, a.clone())?;
        }
        Ok(out)
    }
}

impl DistinguishableState<Complex64> {
    pub fn norm_sq(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum()
    }
}

/// Embeds a distinguishable state into ⋀^k C^{Σ n_j}: with offsets
/// o_j = n₁+…+n_{j−1}, the product basis vector indexed (i₁, ..., i_k)
/// maps to the wedge of e_{o_j + i_j}. The offset indices are strictly
/// increasing, so no reordering signs arise and the map is an isometry.
pub fn embed_distinguishable<S: Scalar>(phi: &DistinguishableState<S>) -> FermionState<S> {
    let n: u8 = phi.dims().iter().sum();
    let k = phi.subsystems();
    let mut offsets = Vec::with_capacity(k as usize);
    let mut acc = 0u8;
    for &d in phi.dims() {
        offsets.push(acc);
        acc += d;
    }
    let mut out = FermionState::new(n, k);
    for (tuple, a) in phi.amplitudes() {
        let mapped: Vec<u8> = tuple.iter().zip(&offsets).map(|(&i, &o)| o + i).collect();
        out.set(FermionIndex::new(mapped), a.clone()).unwrap();
    }
    out
}

/// The three-qubit restriction of the fermionic (2,2,2) invariant,
/// evaluated directly on the product-basis coefficients; raw form
/// (degree 4; divide by ‖φ‖⁴ for unnormalized input).
pub fn eval_three_qubit_i222<S: Scalar>(phi: &DistinguishableState<S>) -> Result<S> {
    if phi.dims() != [2, 2, 2] {
        return Err(Error::DimsMismatch {
            dims: phi.dims().to_vec(),
            expected: vec![2, 2, 2],
        });
    }
    // 0-based qubit labels for readability; storage is 1-based
    let a = |i: u8, j: u8, k: u8| phi.amp(&[i + 1, j + 1, k + 1]);
    let c = |num: i64, den: i64| S::from_rational(&BigRational::new(num.into(), den.into()));
    let two = c(2, 1);
    let three = c(3, 1);

    let mut acc = S::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let x = a(i, j, k);
                acc = acc + (x.clone() * x).abs_sq();
            }
        }
    }
    for i in 0..2 {
        for j in 0..2 {
            let p1 = a(i, j, 0) * a(i, j, 1);
            let p2 = a(i, 0, j) * a(i, 1, j);
            let p3 = a(0, i, j) * a(1, i, j);
            acc = acc + two.clone() * (p1.abs_sq() + p2.abs_sq() + p3.abs_sq());
        }
    }
    for i in 0..2 {
        let p = a(i, 0, 1) * a(i, 1, 0);
        let q = a(i, 0, 0) * a(i, 1, 1);
        acc = acc + p.abs_sq() + c(1, 3) * (p.clone() + two.clone() * q).abs_sq();
        let p = a(0, i, 1) * a(1, i, 0);
        let q = a(0, i, 0) * a(1, i, 1);
        acc = acc + p.abs_sq() + c(1, 3) * (p.clone() + two.clone() * q).abs_sq();
        let p = a(0, 1, i) * a(1, 0, i);
        let q = a(0, 0, i) * a(1, 1, i);
        acc = acc + p.abs_sq() + c(1, 3) * (p.clone() + two.clone() * q).abs_sq();
    }
    let d = a(0, 0, 0) * a(1, 1, 1);
    let e = a(0, 0, 1) * a(1, 1, 0);
    let f = a(0, 1, 1) * a(1, 0, 0);
    let g = a(0, 1, 0) * a(1, 0, 1);
    acc = acc + c(1, 2) * d.abs_sq();
    acc = acc + c(1, 6) * (d.clone() + two.clone() * e.clone()).abs_sq();
    acc = acc + c(1, 6) * (d.clone() + two.clone() * f.clone()).abs_sq();
    acc = acc + c(1, 18) * (d.clone() - two.clone() * e.clone() - two * f.clone()).abs_sq();
    acc = acc + c(1, 9) * (d + e + three * g + f).abs_sq();
    Ok(acc)
}
