//! Sparse exact vectors in S^m(⋀^k H): monomials in the e_I, the induced
//! inner product, torus weights, and overlaps with m-th powers of states.
//!
//! Coefficients are exact rationals throughout the construction layer;
//! complex numbers enter only when a state is evaluated against a vector.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{multinomial, WeightVector};
use crate::error::{Error, Result};
use crate::exterior::{FermionIndex, FermionState};
use crate::scalar::Scalar;

/// A degree-m monomial e_{I_1} e_{I_2} ... e_{I_m}: a multiset of basis
/// labels, stored as a sorted factor list with repetition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymMonomial {
    factors: Vec<FermionIndex>,
}

impl SymMonomial {
    pub fn new(mut factors: Vec<FermionIndex>) -> Self {
        factors.sort();
        SymMonomial { factors }
    }

    /// The m-th power of a single basis label.
    pub fn power(index: FermionIndex, m: u32) -> Self {
        SymMonomial {
            factors: vec![index; m as usize],
        }
    }

    pub fn degree(&self) -> u32 {
        self.factors.len() as u32
    }

    pub fn factors(&self) -> &[FermionIndex] {
        &self.factors
    }

    /// Distinct factors with their exponents, in sorted order.
    pub fn exponents(&self) -> Vec<(&FermionIndex, u32)> {
        let mut out: Vec<(&FermionIndex, u32)> = Vec::new();
        for f in &self.factors {
            match out.last_mut() {
                Some((g, e)) if *g == f => *e += 1,
                _ => out.push((f, 1)),
            }
        }
        out
    }

    /// ‖·‖² = 1/multinomial(m; exponents), from the induced inner product.
    pub fn norm_sq(&self) -> BigRational {
        let exps: Vec<u32> = self.exponents().iter().map(|&(_, e)| e).collect();
        let m = multinomial(&exps);
        BigRational::new(1.into(), m.into())
    }

    /// The torus weight: entry i counts occurrences of index i over all
    /// factors.
    pub fn weight(&self, n: u8) -> WeightVector {
        let mut counts = vec![0i64; n as usize];
        for f in &self.factors {
            for &i in f.indices() {
                counts[i as usize - 1] += 1;
            }
        }
        WeightVector::new(counts)
    }

    /// Largest single-particle index appearing in the monomial.
    pub fn max_index(&self) -> u8 {
        self.factors
            .iter()
            .map(|f| f.max_index())
            .max()
            .unwrap_or(0)
    }
}

impl std::fmt::Display for SymMonomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

/// A sparse vector in S^m(⋀^k H) with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymVector {
    degree: u32,
    terms: BTreeMap<SymMonomial, BigRational>,
}

impl SymVector {
    pub fn zero(degree: u32) -> Self {
        SymVector {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(mon: SymMonomial) -> Self {
        let degree = mon.degree();
        let mut terms = BTreeMap::new();
        terms.insert(mon, BigRational::one());
        SymVector { degree, terms }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<SymMonomial, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Adds c·mon, dropping the entry if the coefficient cancels.
    pub fn add_term(&mut self, mon: SymMonomial, c: BigRational) {
        debug_assert_eq!(mon.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(mon.clone())
            .or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mon);
        }
    }

    /// self += c · other
    pub fn add_scaled(&mut self, other: &SymVector, c: &BigRational) {
        debug_assert_eq!(self.degree, other.degree);
        for (mon, b) in &other.terms {
            self.add_term(mon.clone(), b * c);
        }
    }

    pub fn scaled(&self, c: &BigRational) -> SymVector {
        let mut out = SymVector::zero(self.degree);
        out.add_scaled(self, c);
        out
    }

    /// Induced inner product: monomials are mutually orthogonal with
    /// squared norm 1/multinomial.
    pub fn inner_product(&self, other: &SymVector) -> Result<BigRational> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = BigRational::zero();
        for (mon, a) in &small.terms {
            if let Some(b) = large.terms.get(mon) {
                acc += a * b * mon.norm_sq();
            }
        }
        Ok(acc)
    }

    pub fn norm_sq(&self) -> BigRational {
        self.inner_product(self).unwrap()
    }

    /// The common weight of all terms, if there is one.
    pub fn uniform_weight(&self, n: u8) -> Option<WeightVector> {
        let mut it = self.terms.keys();
        let first = it.next()?.weight(n);
        for mon in it {
            if mon.weight(n) != first {
                return None;
            }
        }
        Some(first)
    }

    /// Largest single-particle index appearing in any term.
    pub fn max_index(&self) -> u8 {
        self.terms.keys().map(|m| m.max_index()).max().unwrap_or(0)
    }

    /// ⟨w, ψ^m⟩ evaluated without materializing ψ^m: the multinomial in the
    /// power expansion cancels against the monomial norm, leaving
    /// Σ conj(β) Π_I ψ_I^{e_I}.
    pub fn overlap_with_power<S: Scalar>(&self, psi: &FermionState<S>) -> S {
        let mut acc = S::zero();
        'terms: for (mon, beta) in &self.terms {
            let mut prod = S::one();
            for (index, exp) in mon.exponents() {
                let a = psi.amp(index);
                if a.is_zero() {
                    continue 'terms;
                }
                for _ in 0..exp {
                    prod = prod * a.clone();
                }
            }
            // rational coefficients are self-conjugate
            acc = acc + S::from_rational(beta) * prod;
        }
        acc
    }

    /// Scales to primitive integer coefficients with the lexicographically
    /// first monomial positive. Returns the scaled vector; zero stays zero.
    pub fn primitive(&self) -> SymVector {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm_den = BigInt::one();
        for c in self.terms.values() {
            lcm_den = lcm_den.lcm(c.denom());
        }
        let mut gcd_num = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c.numer() * &lcm_den / c.denom();
            gcd_num = gcd_num.gcd(&scaled);
        }
        let mut factor = BigRational::new(lcm_den, gcd_num);
        let first_coeff = self.terms.values().next().unwrap();
        if (first_coeff * &factor).is_negative() {
            factor = -factor;
        }
        self.scaled(&factor)
    }

    /// Scales by the least common denominator so all coefficients become
    /// integers, with the lexicographically first monomial positive. Unlike
    /// `primitive`, a common integer factor is kept.
    pub fn cleared_denominators(&self) -> SymVector {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm_den = BigInt::one();
        for c in self.terms.values() {
            lcm_den = lcm_den.lcm(c.denom());
        }
        let mut factor = BigRational::from_integer(lcm_den);
        let first_coeff = self.terms.values().next().unwrap();
        if (first_coeff * &factor).is_negative() {
            factor = -factor;
        }
        self.scaled(&factor)
    }
}

impl std::fmt::Display for SymVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (mon, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·[{mon}]")?;
        }
        Ok(())
    }
}
