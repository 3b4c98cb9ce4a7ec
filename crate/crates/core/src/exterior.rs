//! Canonical fermionic basis labels e_I, sparse state vectors and the
//! exterior-power lift of one-particle unitaries.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::combinatorics::k_subsets;
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::{GaussianRational, Scalar};

/// A canonical basis label of ⋀^k H: a strictly increasing k-tuple
/// from {1, ..., n}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FermionIndex(Vec<u8>);

impl FermionIndex {
    /// Builds from an already sorted, strictly increasing tuple.
    pub fn new(indices: Vec<u8>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        FermionIndex(indices)
    }

    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: u8) -> bool {
        self.0.contains(&i)
    }

    pub fn max_index(&self) -> u8 {
        self.0.last().copied().unwrap_or(0)
    }
}

impl std::fmt::Display for FermionIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Result of sorting an index sequence into canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CanonicalIndex {
    /// A repeated entry: the wedge vanishes.
    Zero,
    Signed {
        index: FermionIndex,
        sign: i8,
    },
}

/// Sorts a tuple of indices, returning the canonical label and the
/// signature of the sorting permutation. Repeated entries give `Zero`.
pub fn canonicalize_index(seq: &[u8]) -> CanonicalIndex {
    let mut v = seq.to_vec();
    let mut sign = 1i8;
    // insertion sort with swap counting; k is tiny
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return CanonicalIndex::Zero;
    }
    CanonicalIndex::Signed {
        index: FermionIndex(v),
        sign,
    }
}

/// A sparse k-fermion state: amplitudes on canonical sorted subsets.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionState<S = Complex64> {
    n: u8,
    k: u8,
    amps: BTreeMap<FermionIndex, S>,
}

impl<S: Scalar> FermionState<S> {
    pub fn new(n: u8, k: u8) -> Self {
        assert!(k <= n, "need k <= n");
        FermionState {
            n,
            k,
            amps: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn amplitudes(&self) -> &BTreeMap<FermionIndex, S> {
        &self.amps
    }

    /// Sets the amplitude on a canonical index. Errors on labels that are
    /// out of range for (n, k).
    pub fn set(&mut self, index: FermionIndex, value: S) -> Result<()> {
        if index.len() != self.k as usize || index.indices().iter().any(|&i| i < 1 || i > self.n) {
            return Err(Error::InvalidIndex {
                index: index.indices().to_vec(),
                n: self.n,
                k: self.k,
            });
        }
        if value.is_zero() {
            self.amps.remove(&index);
        } else {
            self.amps.insert(index, value);
        }
        Ok(())
    }

    /// Amplitude on a canonical label; zero if absent.
    pub fn amp(&self, index: &FermionIndex) -> S {
        self.amps.get(index).cloned().unwrap_or_else(S::zero)
    }

    /// Amplitude for a possibly unsorted index sequence, resolved through
    /// the sign convention e_{ba} = -e_{ab}.
    pub fn amp_signed(&self, seq: &[u8]) -> S {
        match canonicalize_index(seq) {
            CanonicalIndex::Zero => S::zero(),
            CanonicalIndex::Signed { index, sign } => {
                let a = self.amp(&index);
                if sign < 0 {
                    -a
                } else {
                    a
                }
            }
        }
    }

    /// Σ_I |ψ_I|², as a scalar with zero imaginary part.
    pub fn norm_sq_scalar(&self) -> S {
        self.amps
            .values()
            .fold(S::zero(), |acc, a| acc + a.abs_sq())
    }

    /// Reinterprets the state in a larger single-particle space; the
    /// amplitudes are unchanged.
    pub fn embedded_in(&self, n: u8) -> Result<FermionState<S>> {
        if n < self.n {
            return Err(Error::SubsetTooLarge {
                k: self.n as usize,
                n: n as usize,
            });
        }
        Ok(FermionState {
            n,
            k: self.k,
            amps: self.amps.clone(),
        })
    }
}

impl FermionState<Complex64> {
    pub fn norm_sq(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum()
    }

    /// Deterministic normalized random state: seeded complex Gaussian
    /// amplitudes (ChaCha8 stream) on every basis label.
    pub fn random(n: u8, k: u8, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut state = FermionState::new(n, k);
        for subset in k_subsets(n, k) {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            state
                .set(FermionIndex::new(subset), Complex64::new(re, im))
                .unwrap();
        }
        let norm = state.norm_sq().sqrt();
        for v in state.amps.values_mut() {
            *v /= norm;
        }
        state
    }

    /// The exterior-power action: (Uψ)_J = Σ_I det(U[J, I]) ψ_I.
    pub fn lift_unitary(&self, u: &CMatrix) -> Result<FermionState<Complex64>> {
        if u.size() != self.n as usize {
            return Err(Error::MatrixSizeMismatch {
                expected: self.n as usize,
                rows: u.size(),
                cols: u.size(),
            });
        }
        let mut out = FermionState::new(self.n, self.k);
        let support: Vec<(&FermionIndex, &Complex64)> = self.amps.iter().collect();
        for subset in k_subsets(self.n, self.k) {
            let rows: Vec<usize> = subset.iter().map(|&i| i as usize - 1).collect();
            let mut acc = Complex64::ZERO;
            for (index, amp) in &support {
                let cols: Vec<usize> = index.indices().iter().map(|&i| i as usize - 1).collect();
                acc += u.submatrix_det(&rows, &cols) * *amp;
            }
            if acc != Complex64::ZERO {
                out.set(FermionIndex::new(subset), acc)?;
            }
        }
        Ok(out)
    }

    /// Nearest exact state, used when converting parsed rational input.
    pub fn max_amp_diff(&self, other: &FermionState<Complex64>) -> f64 {
        let mut keys: Vec<&FermionIndex> = self.amps.keys().collect();
        keys.extend(other.amps.keys());
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .map(|k| (self.amp(k) - other.amp(k)).norm())
            .fold(0.0, f64::max)
    }
}

impl FermionState<GaussianRational> {
    pub fn norm_sq_rational(&self) -> BigRational {
        self.norm_sq_scalar().into_real()
    }

    /// Lossy conversion to the floating-point layer.
    pub fn to_float(&self) -> FermionState<Complex64> {
        let mut out = FermionState::new(self.n, self.k);
        for (idx, a) in &self.amps {
            use num_traits::ToPrimitive;
            out.set(
                idx.clone(),
                Complex64::new(a.re.to_f64().unwrap(), a.im.to_f64().unwrap()),
            )
            .unwrap();
        }
        out
    }
}
