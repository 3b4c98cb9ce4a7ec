//! Action of transvections u_ij(s) = id + sE_ij and of index permutations
//! on symmetric-algebra vectors, plus a heuristic canonical form for
//! S_n × scalar orbits used to deduplicate closure work.

use num_rational::BigRational;
use num_traits::One;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::exterior::{canonicalize_index, CanonicalIndex, FermionIndex};
use crate::symalg::{SymMonomial, SymVector};

/// The polynomial in s obtained by letting u_ij(s) act on a vector;
/// position r holds the coefficient of s^r.
#[derive(Debug, Clone)]
pub struct TransvectionPolynomial {
    pub coeffs: Vec<SymVector>,
}

impl TransvectionPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// Applies u_ij(s): every factor e_I with j ∈ I, i ∉ I becomes
/// e_I + s·e_{I with j replaced by i}, with the sign fixed by
/// canonical reordering; the product is expanded and collected by
/// powers of s.
pub fn apply_transvection(i: u8, j: u8, w: &SymVector) -> Result<TransvectionPolynomial> {
    if i == j {
        return Err(Error::EqualTransvectionIndices(i));
    }
    let m = w.degree();
    let mut coeffs: Vec<SymVector> = (0..=m).map(|_| SymVector::zero(m)).collect();
    for (mon, beta) in w.terms() {
        // per distinct factor: (index, exponent, replacement with sign)
        struct Factor {
            index: FermionIndex,
            exp: u32,
            replacement: Option<(FermionIndex, i8)>,
        }
        let factors: Vec<Factor> = mon
            .exponents()
            .into_iter()
            .map(|(index, exp)| {
                let replacement = if index.contains(j) {
                    let seq: Vec<u8> = index
                        .indices()
                        .iter()
                        .map(|&x| if x == j { i } else { x })
                        .collect();
                    match canonicalize_index(&seq) {
                        CanonicalIndex::Zero => None,
                        CanonicalIndex::Signed { index, sign } => Some((index, sign)),
                    }
                } else {
                    None
                };
                Factor {
                    index: index.clone(),
                    exp,
                    replacement,
                }
            })
            .collect();

        // expand Π (e_I + s·σ e_{I'})^a over replacement counts
        let mut partial: Vec<(usize, BigRational, Vec<FermionIndex>)> =
            vec![(0, beta.clone(), Vec::new())];
        for f in &factors {
            let mut next = Vec::new();
            for (power, coeff, parts) in &partial {
                let t_max = if f.replacement.is_some() { f.exp } else { 0 };
                for t in 0..=t_max {
                    let mut c =
                        coeff * BigRational::from_integer(binomial(f.exp as u64, t as u64).into());
                    let mut p = parts.clone();
                    for _ in 0..(f.exp - t) {
                        p.push(f.index.clone());
                    }
                    if t > 0 {
                        let (rep, sign) = f.replacement.as_ref().unwrap();
                        if *sign < 0 && t % 2 == 1 {
                            c = -c;
                        }
                        for _ in 0..t {
                            p.push(rep.clone());
                        }
                    }
                    next.push((power + t as usize, c, p));
                }
            }
            partial = next;
        }
        for (power, coeff, parts) in partial {
            coeffs[power].add_term(SymMonomial::new(parts), coeff);
        }
    }
    while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
        coeffs.pop();
    }
    Ok(TransvectionPolynomial { coeffs })
}

/// Relabels every index through the permutation `perm`, where `perm[x-1]`
/// is the image of x, re-canonicalizing factors and combining terms.
pub fn apply_permutation(perm: &[u8], w: &SymVector) -> SymVector {
    let mut out = SymVector::zero(w.degree());
    for (mon, beta) in w.terms() {
        let mut sign = 1i8;
        let mut factors = Vec::with_capacity(mon.factors().len());
        for f in mon.factors() {
            let seq: Vec<u8> = f.indices().iter().map(|&x| perm[x as usize - 1]).collect();
            match canonicalize_index(&seq) {
                CanonicalIndex::Zero => unreachable!("permutations preserve distinctness"),
                CanonicalIndex::Signed { index, sign: s } => {
                    sign *= s;
                    factors.push(index);
                }
            }
        }
        let c = if sign < 0 {
            -beta.clone()
        } else {
            beta.clone()
        };
        out.add_term(SymMonomial::new(factors), c);
    }
    out
}

/// A canonical representative of the S_n × C^× orbit of the line spanned
/// by `w`: the used indices are compacted to 1..p, the representative is
/// the least relabeled-and-rescaled vector over all p! relabelings, with
/// the first monomial scaled to coefficient +1.
///
/// Rescaling only ranges over nonzero rationals, so vectors on the same
/// line with a genuinely complex ratio would not collapse; the closure
/// pipeline only produces rational lines.
pub fn canonical_orbit_form(w: &SymVector) -> Result<(SymVector, BigRational)> {
    use itertools::Itertools;
    if w.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut used: Vec<u8> = Vec::new();
    for mon in w.terms().keys() {
        for f in mon.factors() {
            for &x in f.indices() {
                if !used.contains(&x) {
                    used.push(x);
                }
            }
        }
    }
    used.sort_unstable();
    let p = used.len() as u8;

    let mut best: Option<(SymVector, BigRational)> = None;
    for labels in (1..=p).permutations(p as usize) {
        let mut relabel = [0u8; 256];
        for (&from, &to) in used.iter().zip(&labels) {
            relabel[from as usize] = to;
        }
        let mut out = SymVector::zero(w.degree());
        for (mon, beta) in w.terms() {
            let mut sign = 1i8;
            let mut factors = Vec::with_capacity(mon.factors().len());
            for f in mon.factors() {
                let seq: Vec<u8> = f.indices().iter().map(|&x| relabel[x as usize]).collect();
                match canonicalize_index(&seq) {
                    CanonicalIndex::Zero => {
                        unreachable!("relabeling preserves distinctness")
                    }
                    CanonicalIndex::Signed { index, sign: s } => {
                        sign *= s;
                        factors.push(index);
                    }
                }
            }
            let c = if sign < 0 {
                -beta.clone()
            } else {
                beta.clone()
            };
            out.add_term(SymMonomial::new(factors), c);
        }
        let scale = out.terms().values().next().expect("nonzero").clone();
        let inv = BigRational::one() / scale.clone();
        let candidate = out.scaled(&inv);
        let smaller = match &best {
            None => true,
            Some((b, _)) => vector_key_lt(&candidate, b),
        };
        if smaller {
            best = Some((candidate, scale));
        }
    }
    Ok(best.expect("at least one relabeling"))
}

fn vector_key_lt(a: &SymVector, b: &SymVector) -> bool {
    let ka = a.terms().iter().collect::<Vec<_>>();
    let kb = b.terms().iter().collect::<Vec<_>>();
    ka < kb
}
