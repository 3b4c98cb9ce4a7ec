//! Partitions, weights, subset enumeration and the Weyl dimension formula.
//!
//! Everything here is exact integer arithmetic; the Weyl product is
//! accumulated as a rational and asserted integral at the end.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};

/// A partition: non-increasing list of nonnegative integers.
///
/// Trailing zeros are allowed and ignored for equality and hashing.
#[derive(Debug, Clone)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Creates a partition, sorting defensively is not done: the caller
    /// must pass non-increasing parts.
    pub fn new(parts: Vec<u32>) -> Self {
        debug_assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "parts must be non-increasing"
        );
        Partition { parts }
    }

    /// The rectangular partition (m, m, ..., m) with k parts.
    pub fn rectangle(k: u8, m: u32) -> Self {
        Partition {
            parts: vec![m; k as usize],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Parts with trailing zeros removed.
    pub fn stripped(&self) -> &[u32] {
        let end = self
            .parts
            .iter()
            .rposition(|&p| p != 0)
            .map_or(0, |i| i + 1);
        &self.parts[..end]
    }

    /// Parts padded with zeros to length n. Errors if more than n
    /// nonzero parts are present.
    pub fn padded(&self, n: usize) -> Result<Vec<u32>> {
        let s = self.stripped();
        if s.len() > n {
            return Err(Error::PartitionExceedsDimension { parts: s.len(), n });
        }
        let mut v = s.to_vec();
        v.resize(n, 0);
        Ok(v)
    }

    pub fn weight_sum(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.stripped() == other.stripped()
    }
}

impl Eq for Partition {}

impl std::hash::Hash for Partition {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.stripped().hash(state);
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// An integer weight (r_1, ..., r_n) of the diagonal torus.
///
/// The length is meaningful: it equals the ambient dimension in force.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector {
    entries: Vec<i64>,
}

impl WeightVector {
    pub fn new(entries: Vec<i64>) -> Self {
        WeightVector { entries }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries sorted non-increasing: the dominant representative of the
    /// S_n-orbit of this weight.
    pub fn sorted_descending(&self) -> WeightVector {
        let mut e = self.entries.clone();
        e.sort_unstable_by(|a, b| b.cmp(a));
        WeightVector { entries: e }
    }

    /// Number of nonzero entries.
    pub fn support_size(&self) -> usize {
        self.entries.iter().filter(|&&e| e != 0).count()
    }
}

/// Outcome of comparing two weights in the dominance order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// Compares two weights of equal length in the dominance order:
/// λ ≥ μ iff λ−μ has zero sum and all prefix sums nonnegative.
pub fn dominance_compare(a: &WeightVector, b: &WeightVector) -> Result<Dominance> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a == b {
        return Ok(Dominance::Equal);
    }
    let positive = |x: &WeightVector, y: &WeightVector| {
        let mut sum: i64 = 0;
        let mut prefix_ok = true;
        for (&xa, &ya) in x.entries.iter().zip(&y.entries) {
            sum += xa - ya;
            if sum < 0 {
                prefix_ok = false;
            }
        }
        sum == 0 && prefix_ok
    };
    if positive(a, b) {
        Ok(Dominance::Greater)
    } else if positive(b, a) {
        Ok(Dominance::Less)
    } else {
        Ok(Dominance::Incomparable)
    }
}

/// Binomial coefficient, exact in u128.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        // exact at every step for the multiplicative form
        r = r * (n - k + 1 + i) as u128 / (i + 1) as u128;
    }
    r
}

/// Multinomial coefficient (Σks)! / Π ks_i!. Empty input gives 1.
pub fn multinomial(ks: &[u32]) -> u128 {
    let mut total: u64 = 0;
    let mut r: u128 = 1;
    for &k in ks {
        total += k as u64;
        r *= binomial(total, k as u64);
    }
    r
}

/// Dimension of the irreducible U(n) representation with highest weight λ:
/// Π_{i<j} (λ_i − λ_j + j − i)/(j − i), accumulated exactly.
pub fn weyl_dimension(lambda: &Partition, n: usize) -> Result<u128> {
    let l = lambda.padded(n)?;
    let mut acc = BigRational::one();
    for i in 0..n {
        for j in (i + 1)..n {
            let num = l[i] as i64 - l[j] as i64 + j as i64 - i as i64;
            let den = (j - i) as i64;
            acc *= BigRational::new(BigInt::from(num), BigInt::from(den));
        }
    }
    assert!(acc.is_integer(), "Weyl product must be integral");
    let int = acc.to_integer();
    assert!(!int.is_negative());
    Ok(int
        .to_u128()
        .expect("Weyl dimension exceeds u128 at desk scale"))
}

/// Dimension of S^m(⋀^k C^n) = C(C(n,k) + m − 1, m).
pub fn sym_power_dimension(n: u64, k: u64, m: u64) -> Result<u128> {
    if k > n {
        return Err(Error::SubsetTooLarge {
            k: k as usize,
            n: n as usize,
        });
    }
    let d = binomial(n, k);
    let d = u64::try_from(d).expect("exterior power dimension exceeds u64");
    Ok(binomial(d + m - 1, m))
}

/// All sorted k-subsets of {1, ..., n} in lexicographic order.
pub fn k_subsets(n: u8, k: u8) -> impl Iterator<Item = Vec<u8>> {
    use itertools::Itertools;
    (1..=n).combinations(k as usize)
}

/// All distinct rearrangements of `entries`, in lexicographic order.
pub fn multiset_permutations(entries: &[i64]) -> Vec<Vec<i64>> {
    let mut current = entries.to_vec();
    current.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push(current.clone());
        // next_permutation
        let Some(i) = current.windows(2).rposition(|w| w[0] < w[1]) else {
            break;
        };
        let j = current.iter().rposition(|&x| x > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multinomial_basics() {
        assert_eq!(multinomial(&[1, 1]), 2);
        assert_eq!(multinomial(&[2, 0]), 1);
        assert_eq!(multinomial(&[1, 1, 1]), 6);
        assert_eq!(multinomial(&[]), 1);
        assert_eq!(multinomial(&[3, 2, 1]), 60);
    }

    #[test]
    fn weyl_dimension_examples() {
        assert_eq!(
            weyl_dimension(&Partition::new(vec![1, 1, 1, 1]), 4).unwrap(),
            1
        );
        assert_eq!(weyl_dimension(&Partition::new(vec![2, 2]), 4).unwrap(), 20);
        assert_eq!(weyl_dimension(&Partition::new(vec![3, 3]), 6).unwrap(), 490);
        assert_eq!(
            weyl_dimension(&Partition::new(vec![2, 2, 1, 1]), 6).unwrap(),
            189
        );
        assert_eq!(weyl_dimension(&Partition::new(vec![1; 6]), 6).unwrap(), 1);
        // 490 + 189 + 1 = dim S^3(Λ^2 C^6)
        assert_eq!(sym_power_dimension(6, 2, 3).unwrap(), 680);
    }

    #[test]
    fn weyl_dimension_rejects_long_partitions() {
        assert!(weyl_dimension(&Partition::new(vec![1, 1, 1]), 2).is_err());
        // trailing zeros are harmless
        assert_eq!(
            weyl_dimension(&Partition::new(vec![2, 2, 0, 0, 0]), 4).unwrap(),
            20
        );
    }

    #[test]
    fn weyl_22_polynomial_growth() {
        // dim of the (2,2) representation equals n^2(n^2-1)/12
        for n in 2u128..=10 {
            let expect = n * n * (n * n - 1) / 12;
            assert_eq!(
                weyl_dimension(&Partition::new(vec![2, 2]), n as usize).unwrap(),
                expect
            );
        }
    }

    #[test]
    fn dimension_identity_k2_m2() {
        for n in 4..=8usize {
            let w = weyl_dimension(&Partition::new(vec![2, 2]), n).unwrap();
            let p = weyl_dimension(&Partition::new(vec![1, 1, 1, 1]), n).unwrap();
            assert_eq!(w + p, sym_power_dimension(n as u64, 2, 2).unwrap());
        }
    }

    #[test]
    fn dimension_identity_k2_m3() {
        for n in 6..=8usize {
            let a = weyl_dimension(&Partition::new(vec![3, 3]), n).unwrap();
            let b = weyl_dimension(&Partition::new(vec![2, 2, 1, 1]), n).unwrap();
            let c = weyl_dimension(&Partition::new(vec![1; 6]), n).unwrap();
            assert_eq!(a + b + c, sym_power_dimension(n as u64, 2, 3).unwrap());
        }
    }

    #[test]
    fn sym_power_dimension_examples() {
        assert_eq!(sym_power_dimension(4, 2, 2).unwrap(), 21);
        assert_eq!(sym_power_dimension(6, 2, 3).unwrap(), 680);
        assert_eq!(sym_power_dimension(5, 5, 7).unwrap(), 1);
        assert!(sym_power_dimension(3, 4, 2).is_err());
    }

    #[test]
    fn dominance_examples() {
        let w = |e: &[i64]| WeightVector::new(e.to_vec());
        assert_eq!(
            dominance_compare(&w(&[2, 0]), &w(&[1, 1])).unwrap(),
            Dominance::Greater
        );
        assert_eq!(
            dominance_compare(&w(&[1, 1]), &w(&[1, 1])).unwrap(),
            Dominance::Equal
        );
        assert_eq!(
            dominance_compare(&w(&[2, 0, 1]), &w(&[1, 2, 0])).unwrap(),
            Dominance::Incomparable
        );
        assert_eq!(
            dominance_compare(&w(&[1, 1]), &w(&[2, 0])).unwrap(),
            Dominance::Less
        );
        assert!(dominance_compare(&w(&[1]), &w(&[1, 0])).is_err());
    }

    #[test]
    fn k_subsets_examples() {
        let s: Vec<_> = k_subsets(3, 2).collect();
        assert_eq!(s, vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        let s: Vec<_> = k_subsets(4, 4).collect();
        assert_eq!(s, vec![vec![1, 2, 3, 4]]);
        assert_eq!(k_subsets(4, 2).count(), 6);
    }

    #[test]
    fn multiset_permutations_count() {
        assert_eq!(multiset_permutations(&[2, 2, 0, 0]).len(), 6);
        assert_eq!(multiset_permutations(&[3, 2, 1, 0, 0, 0]).len(), 120);
        assert_eq!(multiset_permutations(&[1, 1, 1, 1, 1, 1]).len(), 1);
    }

    #[test]
    fn partition_equality_ignores_trailing_zeros() {
        assert_eq!(Partition::new(vec![2, 2, 0, 0]), Partition::new(vec![2, 2]));
        assert_ne!(Partition::new(vec![2, 1]), Partition::new(vec![2, 2]));
    }
}
