//! Text formats: fermion states, distinguishable states, and serialized
//! bases. All parsing is exact; amplitudes are rational (or Gaussian
//! rational via separate real and imaginary parts) and never pass through
//! floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::str::FromStr;

use crate::builder::SubspaceBasis;
use crate::embed::DistinguishableState;
use crate::error::{Error, Result};
use crate::exterior::{FermionIndex, FermionState};
use crate::scalar::{GaussianRational, Scalar};
use crate::symalg::{SymMonomial, SymVector};

fn parse_err(file: &str, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        file: file.to_string(),
        line,
        message: message.into(),
    }
}

/// Parses an integer, a fraction p/q, or a decimal (optional exponent)
/// into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let num = BigInt::from_str(p.trim()).ok()?;
        let den = BigInt::from_str(q.trim()).ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    // decimal: [sign] digits [. digits] [eE [sign] digits]
    let (mantissa, exp10) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, i32::from_str(e).ok()?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let negative = int_part.starts_with('-');
    let digits: String = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut value = BigRational::from_integer(BigInt::from_str(&digits).ok()?);
    if negative {
        value = -value;
    }
    let shift = exp10 - frac_part.len() as i32;
    let ten = BigInt::from(10);
    if shift >= 0 {
        value *= BigRational::from_integer(ten.pow(shift as u32));
    } else {
        value /= BigRational::from_integer(ten.pow((-shift) as u32));
    }
    Some(value)
}

/// Renders a rational as `p/q`, or just `p` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = match raw.split_once('#') {
            Some((before, _)) => before,
            None => raw,
        }
        .trim_end();
        if line.trim().is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn header_field(tokens: &[&str], key: &str) -> Option<String> {
    let prefix = format!("{key}=");
    tokens
        .iter()
        .find_map(|t| t.strip_prefix(&prefix).map(str::to_string))
}

fn parse_amplitude(file: &str, lineno: usize, s: &str) -> Result<GaussianRational> {
    let parts: Vec<&str> = s.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(parse_err(
            file,
            lineno,
            format!("expected `<re> <im>`, got `{s}`"),
        ));
    }
    let re = parse_rational(parts[0]).ok_or_else(|| {
        parse_err(
            file,
            lineno,
            format!("cannot parse real part `{}`", parts[0]),
        )
    })?;
    let im = parse_rational(parts[1]).ok_or_else(|| {
        parse_err(
            file,
            lineno,
            format!("cannot parse imaginary part `{}`", parts[1]),
        )
    })?;
    Ok(GaussianRational { re, im })
}

/// Parses the fermion state format:
/// header `fermion n=<n> k=<k>`, body `<i1>,...,<ik><TAB><re> <im>` with
/// strictly increasing indices. Unsorted index lists are rejected rather
/// than sign-fixed.
pub fn parse_fermion_state(text: &str, file: &str) -> Result<FermionState<GaussianRational>> {
    let mut lines = meaningful_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(file, 1, "empty file"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.first() != Some(&"fermion") {
        return Err(parse_err(
            file,
            hline,
            "expected header `fermion n=<n> k=<k>`",
        ));
    }
    let n: u8 = header_field(&tokens, "n")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| parse_err(file, hline, "missing or invalid n=<n>"))?;
    let k: u8 = header_field(&tokens, "k")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| parse_err(file, hline, "missing or invalid k=<k>"))?;
    if k > n {
        return Err(parse_err(file, hline, format!("k = {k} exceeds n = {n}")));
    }
    let mut state = FermionState::<GaussianRational>::new(n, k);
    for (lineno, line) in lines {
        let (index_part, amp_part) = line
            .split_once('\t')
            .ok_or_else(|| parse_err(file, lineno, "expected `<indices><TAB><re> <im>`"))?;
        let indices: Vec<u8> = index_part
            .split(',')
            .map(|t| t.trim().parse::<u8>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| parse_err(file, lineno, format!("cannot parse indices `{index_part}`")))?;
        if !indices.windows(2).all(|w| w[0] < w[1]) {
            return Err(parse_err(
                file,
                lineno,
                format!("indices `{index_part}` are not strictly increasing"),
            ));
        }
        let index = FermionIndex::new(indices);
        if !state.amp(&index).is_zero() {
            return Err(parse_err(
                file,
                lineno,
                format!("duplicate amplitude for `{index_part}`"),
            ));
        }
        let amp = parse_amplitude(file, lineno, amp_part)?;
        state
            .set(index, amp)
            .map_err(|e| parse_err(file, lineno, e.to_string()))?;
    }
    Ok(state)
}

/// Writes a fermion state in the format accepted by `parse_fermion_state`.
pub fn write_fermion_state(psi: &FermionState<GaussianRational>) -> String {
    let mut out = format!("fermion n={} k={}\n", psi.n(), psi.k());
    for (index, a) in psi.amplitudes() {
        out.push_str(&format!(
            "{index}\t{} {}\n",
            format_rational(&a.re),
            format_rational(&a.im)
        ));
    }
    out
}

/// Parses the distinguishable format: header
/// `distinguishable dims=<n1>,<n2>,...`, body `<i1> <i2> ... <ik><TAB><re> <im>`.
///
/// Indices are 1-based; when every dimension is 2 and some index is 0, the
/// whole file is interpreted as 0-based qubit labels.
pub fn parse_distinguishable_state(
    text: &str,
    file: &str,
) -> Result<DistinguishableState<GaussianRational>> {
    let mut lines = meaningful_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(file, 1, "empty file"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.first() != Some(&"distinguishable") {
        return Err(parse_err(
            file,
            hline,
            "expected header `distinguishable dims=<n1>,<n2>,...`",
        ));
    }
    let dims: Vec<u8> = header_field(&tokens, "dims")
        .and_then(|v| {
            v.split(',')
                .map(|t| t.trim().parse::<u8>().ok().filter(|&d| d >= 1))
                .collect()
        })
        .ok_or_else(|| parse_err(file, hline, "missing or invalid dims=<n1>,<n2>,..."))?;
    if dims.is_empty() {
        return Err(parse_err(file, hline, "dims list is empty"));
    }
    let k = dims.len();
    let all_qubits = dims.iter().all(|&d| d == 2);
    let mut entries: Vec<(usize, Vec<u8>, GaussianRational)> = Vec::new();
    let mut saw_zero = false;
    for (lineno, line) in lines {
        let (index_part, amp_part) = line
            .split_once('\t')
            .ok_or_else(|| parse_err(file, lineno, "expected `<indices><TAB><re> <im>`"))?;
        let indices: Vec<u8> = index_part
            .split_whitespace()
            .map(|t| t.parse::<u8>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| parse_err(file, lineno, format!("cannot parse indices `{index_part}`")))?;
        if indices.len() != k {
            return Err(parse_err(
                file,
                lineno,
                format!("expected {k} indices, got {}", indices.len()),
            ));
        }
        saw_zero |= indices.contains(&0);
        let amp = parse_amplitude(file, lineno, amp_part)?;
        entries.push((lineno, indices, amp));
    }
    let zero_based = all_qubits && saw_zero;
    let mut state = DistinguishableState::<GaussianRational>::new(dims);
    for (lineno, mut indices, amp) in entries {
        if zero_based {
            for i in &mut indices {
                *i += 1;
            }
        }
        if !state.amp(&indices).is_zero() {
            return Err(parse_err(file, lineno, "duplicate amplitude line"));
        }
        state
            .set(indices, amp)
            .map_err(|e| parse_err(file, lineno, e.to_string()))?;
    }
    Ok(state)
}

/// Writes a basis: header
/// `basis k=<k> m=<m> n=<n> lambda=<parts> family_count=<F>`, then for
/// each family `family inv_norm_sq=<p>/<q> terms=<T>` followed by T lines
/// `<p>/<q><TAB>I1;I2;...;Im`.
pub fn write_basis(basis: &SubspaceBasis) -> String {
    let lambda: Vec<String> = basis
        .lambda
        .stripped()
        .iter()
        .map(|p| p.to_string())
        .collect();
    let mut out = format!(
        "basis k={} m={} n={} lambda={} family_count={}\n",
        basis.k,
        basis.m,
        basis.n,
        lambda.join(","),
        basis.families.len()
    );
    for family in &basis.families {
        out.push_str(&format!(
            "family inv_norm_sq={} terms={}\n",
            format_rational(&family.inv_norm_sq),
            family.representative.term_count()
        ));
        for (mon, c) in family.representative.terms() {
            out.push_str(&format!("{}\t{mon}\n", format_rational(c)));
        }
    }
    out
}

/// Parses a serialized basis, regrowing all orbits and revalidating norms
/// and the total dimension.
pub fn parse_basis(text: &str, file: &str) -> Result<SubspaceBasis> {
    let mut lines = meaningful_lines(text).peekable();
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(file, 1, "empty file"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.first() != Some(&"basis") {
        return Err(parse_err(
            file,
            hline,
            "expected header `basis k=... m=... n=...`",
        ));
    }
    let k: u8 = header_field(&tokens, "k")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| parse_err(file, hline, "missing k"))?;
    let m: u32 = header_field(&tokens, "m")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| parse_err(file, hline, "missing m"))?;
    let n: u8 = header_field(&tokens, "n")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| parse_err(file, hline, "missing n"))?;
    let family_count: usize = header_field(&tokens, "family_count")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| parse_err(file, hline, "missing family_count"))?;

    let mut reps: Vec<(SymVector, BigRational)> = Vec::new();
    while let Some((lineno, line)) = lines.next() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.first() != Some(&"family") {
            return Err(parse_err(file, lineno, "expected a `family ...` line"));
        }
        let inv_norm_sq = header_field(&tokens, "inv_norm_sq")
            .and_then(|v| parse_rational(&v))
            .ok_or_else(|| parse_err(file, lineno, "missing inv_norm_sq"))?;
        let term_count: usize = header_field(&tokens, "terms")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| parse_err(file, lineno, "missing terms"))?;
        let mut rep = SymVector::zero(m);
        for _ in 0..term_count {
            let (tl, term_line) = lines
                .next()
                .ok_or_else(|| parse_err(file, lineno, "truncated family block"))?;
            let (coeff_part, mon_part) = term_line
                .split_once('\t')
                .ok_or_else(|| parse_err(file, tl, "expected `<p>/<q><TAB>I1;I2;...`"))?;
            let coeff = parse_rational(coeff_part).ok_or_else(|| {
                parse_err(file, tl, format!("cannot parse coefficient `{coeff_part}`"))
            })?;
            let factors: Option<Vec<FermionIndex>> = mon_part
                .split(';')
                .map(|f| {
                    let indices: Option<Vec<u8>> =
                        f.split(',').map(|t| t.trim().parse().ok()).collect();
                    let indices = indices?;
                    if indices.len() == k as usize && indices.windows(2).all(|w| w[0] < w[1]) {
                        Some(FermionIndex::new(indices))
                    } else {
                        None
                    }
                })
                .collect();
            let factors =
                factors.ok_or_else(|| parse_err(file, tl, format!("bad monomial `{mon_part}`")))?;
            if factors.len() != m as usize {
                return Err(parse_err(file, tl, "monomial degree disagrees with m"));
            }
            rep.add_term(SymMonomial::new(factors), coeff);
        }
        reps.push((rep, inv_norm_sq));
    }
    if reps.len() != family_count {
        return Err(Error::BasisFile(format!(
            "{file}: header promises {family_count} families, found {}",
            reps.len()
        )));
    }
    SubspaceBasis::from_representatives(k, m, n, reps)
}
