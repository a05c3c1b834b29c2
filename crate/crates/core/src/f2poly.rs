//! Polynomials over GF(2), the sets `M_n`, and the action of `Aut(G) ≅ S3`.
//!
//! `M_n` is the set of degree-`n` polynomials that are irreducible or a power
//! of an irreducible polynomial of degree at least two. The automorphism group
//! acts by `σ1: f(x) ↦ x^n f(1/x)` (coefficient reversal) and
//! `σ2: f(x) ↦ f(x + 1)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::IntMatrix;

/// Largest supported degree; coefficients live in a single `u64`.
pub const MAX_DEGREE: usize = 63;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("the zero polynomial is not monic")]
    NotMonic,
    #[error("degree {0} exceeds the supported maximum of {MAX_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("expected a polynomial of degree at least {min}, got degree {got}")]
    DegreeTooSmall { min: usize, got: usize },
    #[error("cannot parse polynomial {0:?}")]
    Parse(String),
    #[error("unknown automorphism word {0:?}")]
    BadWord(String),
}

/// A polynomial over GF(2); bit `i` of `bits` is the coefficient of `x^i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct F2Poly {
    bits: u64,
}

impl F2Poly {
    pub const ZERO: F2Poly = F2Poly { bits: 0 };
    pub const ONE: F2Poly = F2Poly { bits: 1 };
    pub const X: F2Poly = F2Poly { bits: 0b10 };

    pub fn from_bits(bits: u64) -> Self {
        F2Poly { bits }
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Result<Self, PolyError> {
        if n > MAX_DEGREE {
            return Err(PolyError::DegreeTooLarge(n));
        }
        Ok(F2Poly { bits: 1 << n })
    }

    /// `(x + 1)^n`.
    pub fn shifted_monomial(n: usize) -> Result<Self, PolyError> {
        Ok(Self::monomial(n)?.shift_by_one())
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(self) -> Option<usize> {
        (self.bits != 0).then(|| 63 - self.bits.leading_zeros() as usize)
    }

    pub fn coeff(self, i: usize) -> bool {
        i < 64 && (self.bits >> i) & 1 == 1
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn constant_term(self) -> bool {
        self.coeff(0)
    }

    /// Product; `None` if the result would exceed [`MAX_DEGREE`].
    pub fn checked_mul(self, rhs: F2Poly) -> Option<F2Poly> {
        match (self.degree(), rhs.degree()) {
            (Some(a), Some(b)) if a + b > MAX_DEGREE => None,
            (None, _) | (_, None) => Some(F2Poly::ZERO),
            _ => {
                let mut acc = 0u64;
                let mut r = rhs.bits;
                let mut shift = 0;
                while r != 0 {
                    if r & 1 == 1 {
                        acc ^= self.bits << shift;
                    }
                    r >>= 1;
                    shift += 1;
                }
                Some(F2Poly { bits: acc })
            }
        }
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(self, divisor: F2Poly) -> (F2Poly, F2Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut q = 0u64;
        let mut r = self.bits;
        while let Some(rd) = F2Poly::from_bits(r).degree() {
            if rd < dd {
                break;
            }
            q |= 1 << (rd - dd);
            r ^= divisor.bits << (rd - dd);
        }
        (F2Poly { bits: q }, F2Poly { bits: r })
    }

    pub fn pow(self, k: u32) -> Option<F2Poly> {
        (0..k).try_fold(F2Poly::ONE, |acc, _| acc.checked_mul(self))
    }

    /// `x^n f(1/x)` with `n = deg f`: the coefficient string reversed.
    pub fn reversal(self) -> F2Poly {
        match self.degree() {
            None => self,
            Some(n) => F2Poly {
                bits: self.bits.reverse_bits() >> (63 - n),
            },
        }
    }

    /// `f(x + 1)`, by Horner evaluation at `x + 1`.
    pub fn shift_by_one(self) -> F2Poly {
        let Some(n) = self.degree() else {
            return self;
        };
        let x1 = F2Poly { bits: 0b11 };
        let mut acc = F2Poly::ZERO;
        for i in (0..=n).rev() {
            acc = acc.checked_mul(x1).expect("degree is preserved");
            if self.coeff(i) {
                acc.bits ^= 1;
            }
        }
        acc
    }

    /// Bit string, lowest degree first: `x^2 + x + 1` is `"111"`, `x^2` is `"001"`.
    pub fn to_bitstring(self) -> String {
        match self.degree() {
            None => "0".into(),
            Some(n) => (0..=n).map(|i| if self.coeff(i) { '1' } else { '0' }).collect(),
        }
    }

    pub fn from_bitstring(s: &str) -> Result<F2Poly, PolyError> {
        let s = s.trim();
        if s.is_empty() || !s.chars().all(|c| c == '0' || c == '1') {
            return Err(PolyError::Parse(s.into()));
        }
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            if c == '1' {
                if i > MAX_DEGREE {
                    return Err(PolyError::DegreeTooLarge(i));
                }
                bits |= 1 << i;
            }
        }
        Ok(F2Poly { bits })
    }

    /// Parses human notation such as `x^4+x+1` (terms may repeat; they cancel mod 2).
    pub fn from_human(s: &str) -> Result<F2Poly, PolyError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(PolyError::Parse(s.into()));
        }
        let mut bits = 0u64;
        for term in compact.split('+') {
            let exp = match term {
                "0" => continue,
                "1" => 0,
                "x" => 1,
                t => t
                    .strip_prefix("x^")
                    .and_then(|e| e.parse::<usize>().ok())
                    .ok_or_else(|| PolyError::Parse(s.into()))?,
            };
            if exp > MAX_DEGREE {
                return Err(PolyError::DegreeTooLarge(exp));
            }
            bits ^= 1 << exp;
        }
        Ok(F2Poly { bits })
    }

    /// Companion matrix: ones on the subdiagonal and the coefficients
    /// `α_0..α_{n-1}` of `f = x^n - Σ α_i x^i` in the last column, lifted to `{0, 1}`.
    pub fn companion(self) -> Result<IntMatrix, PolyError> {
        let n = self.degree().ok_or(PolyError::NotMonic)?;
        if n == 0 {
            return Err(PolyError::DegreeTooSmall { min: 1, got: 0 });
        }
        let mut m = IntMatrix::zeros(n, n);
        for i in 1..n {
            m.set(i, i - 1, 1);
        }
        for i in 0..n {
            m.set(i, n - 1, i64::from(self.coeff(i)));
        }
        Ok(m)
    }
}

impl fmt::Debug for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Poly({})", self)
    }
}

impl fmt::Display for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(n) = self.degree() else {
            return write!(f, "0");
        };
        let terms: Vec<String> = (0..=n)
            .rev()
            .filter(|&i| self.coeff(i))
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

impl FromStr for F2Poly {
    type Err = PolyError;

    /// Accepts either the bit-string format or human notation.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.contains('x') {
            F2Poly::from_human(s)
        } else {
            F2Poly::from_bitstring(s)
        }
    }
}

/// Canonical order: by degree, then lexicographic on the bit string.
impl Ord for F2Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.to_bitstring().cmp(&other.to_bitstring()))
    }
}

impl PartialOrd for F2Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for F2Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_bitstring())
    }
}

impl<'de> Deserialize<'de> for F2Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        F2Poly::from_bitstring(&s).map_err(serde::de::Error::custom)
    }
}

/// Smallest-degree nonconstant factor of `f`, found by trial division.
fn smallest_factor(f: F2Poly) -> Option<F2Poly> {
    let n = f.degree()?;
    for d in 1..=n / 2 {
        for low in 0..(1u64 << d) {
            let g = F2Poly::from_bits((1 << d) | low);
            if f.div_rem(g).1.is_zero() {
                return Some(g);
            }
        }
    }
    None
}

pub fn is_irreducible(f: F2Poly) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(_) => smallest_factor(f).is_none(),
    }
}

/// Membership in `M_n`: irreducible of degree ≥ 2, or a power of such a polynomial.
/// Degree-one and constant inputs are not members.
pub fn in_mn(f: F2Poly) -> Result<bool, PolyError> {
    let n = f.degree().ok_or(PolyError::NotMonic)?;
    if n < 2 {
        return Ok(false);
    }
    let Some(g) = smallest_factor(f) else {
        return Ok(true);
    };
    if g.degree() == Some(1) {
        return Ok(false);
    }
    let mut rest = f;
    while rest != F2Poly::ONE {
        let (q, r) = rest.div_rem(g);
        if !r.is_zero() {
            return Ok(false);
        }
        rest = q;
    }
    Ok(true)
}

/// All members of `M_n` in canonical order.
pub fn enumerate_mn(n: usize) -> Result<Vec<F2Poly>, PolyError> {
    if n > MAX_DEGREE.min(30) {
        return Err(PolyError::DegreeTooLarge(n));
    }
    if n == 0 {
        return Err(PolyError::DegreeTooSmall { min: 1, got: 0 });
    }
    let mut out = Vec::new();
    for low in 0..(1u64 << n) {
        let f = F2Poly::from_bits((1 << n) | low);
        if in_mn(f)? {
            out.push(f);
        }
    }
    out.sort();
    Ok(out)
}

/// An element of `Aut(G)` for `G = <a, b> ≅ C2 × C2`, stored by the images of
/// the generators. Group elements are 2-bit codes: bit 0 is the exponent of
/// `a`, bit 1 that of `b` (so `ab` is `3`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Automorphism {
    a_image: u8,
    b_image: u8,
}

impl Automorphism {
    pub const ID: Automorphism = Automorphism { a_image: 1, b_image: 2 };
    /// `a ↦ b, b ↦ a`.
    pub const S1: Automorphism = Automorphism { a_image: 2, b_image: 1 };
    /// `a ↦ a, b ↦ ab`.
    pub const S2: Automorphism = Automorphism { a_image: 1, b_image: 3 };

    /// The six elements in canonical order `id, σ1, σ2, σ1σ2, σ2σ1, σ1σ2σ1`.
    pub fn all() -> [Automorphism; 6] {
        let (s1, s2) = (Self::S1, Self::S2);
        [
            Self::ID,
            s1,
            s2,
            s1.compose(s2),
            s2.compose(s1),
            s1.compose(s2).compose(s1),
        ]
    }

    /// Position in [`Automorphism::all`].
    pub fn index(self) -> usize {
        Self::all().iter().position(|&p| p == self).expect("automorphism is canonical")
    }

    /// Canonical word letters; `σ1σ2` is `[1, 2]` and means `σ1 ∘ σ2`.
    pub fn word(self) -> &'static [u8] {
        const WORDS: [&[u8]; 6] = [&[], &[1], &[2], &[1, 2], &[2, 1], &[1, 2, 1]];
        WORDS[self.index()]
    }

    /// Image of a group element given as a 2-bit code.
    pub fn apply(self, g: u8) -> u8 {
        let mut out = 0;
        if g & 1 == 1 {
            out ^= self.a_image;
        }
        if g & 2 == 2 {
            out ^= self.b_image;
        }
        out
    }

    pub fn a_image(self) -> u8 {
        self.a_image
    }

    pub fn b_image(self) -> u8 {
        self.b_image
    }

    /// `self ∘ other`.
    pub fn compose(self, other: Automorphism) -> Automorphism {
        Automorphism {
            a_image: self.apply(other.a_image),
            b_image: self.apply(other.b_image),
        }
    }

    pub fn inverse(self) -> Automorphism {
        Self::all()
            .into_iter()
            .find(|&p| self.compose(p) == Self::ID)
            .expect("Aut(G) is a group")
    }

    /// Parses words such as `s1.s2`, `s1s2`, or `id`.
    pub fn parse_word(s: &str) -> Result<Automorphism, PolyError> {
        let t = s.trim();
        if t.is_empty() || t == "id" {
            return Ok(Self::ID);
        }
        let mut acc = Self::ID;
        let mut rest = t;
        while !rest.is_empty() {
            rest = rest.trim_start_matches('.');
            let (g, tail) = if let Some(tail) = rest.strip_prefix("s1") {
                (Self::S1, tail)
            } else if let Some(tail) = rest.strip_prefix("s2") {
                (Self::S2, tail)
            } else {
                return Err(PolyError::BadWord(s.into()));
            };
            acc = acc.compose(g);
            rest = tail;
        }
        Ok(acc)
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.word();
        if w.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = w.iter().map(|l| format!("s{l}")).collect();
        write!(f, "{}", parts.join("."))
    }
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Automorphism({self})")
    }
}

impl Serialize for Automorphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A subset of `Aut(G)`, as a bitmask over [`Automorphism::all`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct AutSubset(u8);

impl AutSubset {
    pub fn whole() -> Self {
        AutSubset(0b11_1111)
    }

    pub fn trivial() -> Self {
        AutSubset(1)
    }

    pub fn from_mask(mask: u8) -> Self {
        AutSubset(mask & 0b11_1111)
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    /// The cyclic subgroup generated by `g`.
    pub fn generated_by(g: Automorphism) -> Self {
        let mut s = Self::trivial();
        let mut p = g;
        while p != Automorphism::ID {
            s.insert(p);
            p = p.compose(g);
        }
        s
    }

    pub fn insert(&mut self, g: Automorphism) {
        self.0 |= 1 << g.index();
    }

    pub fn contains(self, g: Automorphism) -> bool {
        self.0 & (1 << g.index()) != 0
    }

    pub fn order(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn elements(self) -> Vec<Automorphism> {
        Automorphism::all().into_iter().filter(|&g| self.contains(g)).collect()
    }

    pub fn is_subgroup(self) -> bool {
        let els = self.elements();
        self.contains(Automorphism::ID)
            && els
                .iter()
                .all(|&g| self.contains(g.inverse()) && els.iter().all(|&h| self.contains(g.compose(h))))
    }
}

impl FromIterator<Automorphism> for AutSubset {
    fn from_iter<I: IntoIterator<Item = Automorphism>>(iter: I) -> Self {
        let mut s = AutSubset(0);
        for g in iter {
            s.insert(g);
        }
        s
    }
}

impl fmt::Display for AutSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Self::whole() {
            return write!(f, "Aut(G)");
        }
        let parts: Vec<String> = self.elements().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for AutSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AutSubset{self}")
    }
}

impl Serialize for AutSubset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let els = self.elements();
        let mut seq = s.serialize_seq(Some(els.len()))?;
        for g in els {
            seq.serialize_element(&g.to_string())?;
        }
        seq.end()
    }
}

/// `f^φ`, applying the letters of the canonical word of `φ` right to left,
/// so that `f^{φψ} = (f^ψ)^φ`. `σ1` is the literal coefficient reversal, which
/// lowers the degree when `f(0) = 0`.
pub fn apply_sigma(f: F2Poly, phi: Automorphism) -> F2Poly {
    phi.word().iter().rev().fold(f, |acc, &letter| match letter {
        1 => acc.reversal(),
        _ => acc.shift_by_one(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitRecord {
    pub representative: F2Poly,
    pub members: Vec<F2Poly>,
    pub stabilizer: AutSubset,
}

/// The `Aut(G)`-orbits on `M_n`, each with its lexicographically least member
/// as representative and the stabilizer of that representative.
pub fn orbits(n: usize) -> Result<Vec<OrbitRecord>, PolyError> {
    let mn = enumerate_mn(n)?;
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for &f in &mn {
        if seen.contains(&f) {
            continue;
        }
        let mut members: Vec<F2Poly> = Automorphism::all().iter().map(|&p| apply_sigma(f, p)).collect();
        members.sort();
        members.dedup();
        seen.extend(members.iter().copied());
        let representative = members[0];
        let stabilizer = poly_stabilizer(representative);
        out.push(OrbitRecord {
            representative,
            members,
            stabilizer,
        });
    }
    Ok(out)
}

/// `St[f] = {φ : f^φ = f}`.
pub fn poly_stabilizer(f: F2Poly) -> AutSubset {
    Automorphism::all()
        .into_iter()
        .filter(|&p| apply_sigma(f, p) == f)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn p(s: &str) -> F2Poly {
        s.parse().unwrap()
    }

    #[test]
    fn text_formats() {
        assert_eq!(p("x^2+x+1").to_bitstring(), "111");
        assert_eq!(p("x^2").to_bitstring(), "001");
        assert_eq!(p("111"), p("x^2 + x + 1"));
        assert_eq!(p("1101").to_string(), "x^3+x+1");
        assert!("x^2+y".parse::<F2Poly>().is_err());
        assert!("".parse::<F2Poly>().is_err());
    }

    #[test]
    fn membership_examples() {
        assert!(in_mn(p("x^2+x+1")).unwrap());
        assert!(in_mn(p("x^4+x^2+1")).unwrap());
        assert!(!in_mn(p("x^2+x")).unwrap());
        assert!(!in_mn(p("x+1")).unwrap());
        assert!(!in_mn(p("x^2+1")).unwrap());
        assert!(!in_mn(p("x^3")).unwrap());
        assert_eq!(in_mn(F2Poly::ZERO), Err(PolyError::NotMonic));
    }

    #[test]
    fn enumeration_examples() {
        assert!(enumerate_mn(1).unwrap().is_empty());
        assert_eq!(enumerate_mn(2).unwrap(), vec![p("x^2+x+1")]);
        let m4: BTreeSet<_> = enumerate_mn(4).unwrap().into_iter().collect();
        let expected: BTreeSet<_> = ["x^4+x+1", "x^4+x^3+1", "x^4+x^3+x^2+x+1", "x^4+x^2+1"]
            .iter()
            .map(|s| p(s))
            .collect();
        assert_eq!(m4, expected);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(apply_sigma(p("x^2+x+1"), Automorphism::S1), p("x^2+x+1"));
        assert_eq!(apply_sigma(p("x^3+x+1"), Automorphism::S2), p("x^3+x^2+1"));
        let f = p("x^5+x^2+1");
        assert_eq!(apply_sigma(f, Automorphism::ID), f);
        // Literal reversal drops the degree of x^n.
        assert_eq!(apply_sigma(p("x^3"), Automorphism::S1), F2Poly::ONE);
    }

    #[test]
    fn orbit_examples() {
        let o2 = orbits(2).unwrap();
        assert_eq!(o2.len(), 1);
        assert_eq!(o2[0].stabilizer.order(), 6);
        let o3 = orbits(3).unwrap();
        assert_eq!(o3.len(), 1);
        assert_eq!(o3[0].members, vec![p("x^3+x^2+1"), p("x^3+x+1")]);
        assert_eq!(o3[0].stabilizer.order(), 3);
        assert!(orbits(1).unwrap().is_empty());
    }

    #[test]
    fn companion_examples() {
        let rows = |f: &str| p(f).companion().unwrap().to_rows();
        assert_eq!(rows("x^2+x+1"), vec![vec![0, 1], vec![1, 1]]);
        assert_eq!(rows("x^2"), vec![vec![0, 0], vec![1, 0]]);
        assert_eq!(rows("x+1"), vec![vec![1]]);
        assert!(F2Poly::ONE.companion().is_err());
    }

    #[test]
    fn automorphism_group_structure() {
        let (s1, s2) = (Automorphism::S1, Automorphism::S2);
        assert_eq!(s1.compose(s1), Automorphism::ID);
        assert_eq!(s2.compose(s2), Automorphism::ID);
        let r = s1.compose(s2);
        assert_eq!(r.compose(r).compose(r), Automorphism::ID);
        let all = Automorphism::all();
        let distinct: BTreeSet<(u8, u8)> = all.iter().map(|g| (g.a_image(), g.b_image())).collect();
        assert_eq!(distinct.len(), 6);
        // σ1σ2σ1 = σ2σ1σ2 sends a ↦ ab and fixes b.
        assert_eq!(s1.compose(s2).compose(s1), s2.compose(s1).compose(s2));
        assert_eq!(all[5].a_image(), 3);
        assert_eq!(all[5].b_image(), 2);
        for g in all {
            assert_eq!(Automorphism::parse_word(&g.to_string()).unwrap(), g);
        }
        assert!(Automorphism::parse_word("s3").is_err());
        assert!(AutSubset::generated_by(r).is_subgroup());
        assert!(!AutSubset::from_mask(0b110).is_subgroup());
    }

    /// Independent oracle: reducible polynomials of degree n are exactly the
    /// products of two lower-degree polynomials.
    fn sieve_mn(n: usize) -> BTreeSet<u64> {
        let mut reducible = BTreeSet::new();
        for d in 1..n {
            for lo1 in 0..(1u64 << d) {
                for lo2 in 0..(1u64 << (n - d)) {
                    let g = F2Poly::from_bits((1 << d) | lo1);
                    let h = F2Poly::from_bits((1 << (n - d)) | lo2);
                    reducible.insert(g.checked_mul(h).unwrap().bits());
                }
            }
        }
        let irreducible = |d: usize| -> Vec<u64> {
            let mut red = BTreeSet::new();
            for e in 1..d {
                for lo1 in 0..(1u64 << e) {
                    for lo2 in 0..(1u64 << (d - e)) {
                        let g = F2Poly::from_bits((1 << e) | lo1);
                        let h = F2Poly::from_bits((1 << (d - e)) | lo2);
                        red.insert(g.checked_mul(h).unwrap().bits());
                    }
                }
            }
            (0..(1u64 << d)).map(|lo| (1 << d) | lo).filter(|b| !red.contains(b)).collect()
        };
        let mut out: BTreeSet<u64> = (0..(1u64 << n))
            .map(|lo| (1 << n) | lo)
            .filter(|b| !reducible.contains(b))
            .collect();
        if n == 1 {
            out.clear();
        }
        for d in 2..n {
            if n.is_multiple_of(d) {
                for g in irreducible(d) {
                    out.insert(F2Poly::from_bits(g).pow((n / d) as u32).unwrap().bits());
                }
            }
        }
        out
    }

    #[test]
    fn membership_agrees_with_sieve_oracle() {
        for n in 1..=10 {
            let ours: BTreeSet<u64> = enumerate_mn(n).unwrap().iter().map(|f| f.bits()).collect();
            assert_eq!(ours, sieve_mn(n), "n = {n}");
        }
    }

    #[test]
    fn sigmas_are_involutions_and_act() {
        let all = Automorphism::all();
        for n in 2..=8 {
            for f in enumerate_mn(n).unwrap() {
                assert_eq!(f.reversal().reversal(), f);
                assert_eq!(f.shift_by_one().shift_by_one(), f);
                for &phi in &all {
                    let img = apply_sigma(f, phi);
                    assert!(in_mn(img).unwrap(), "M_n is invariant");
                    for &psi in &all {
                        assert_eq!(apply_sigma(f, phi.compose(psi)), apply_sigma(apply_sigma(f, psi), phi));
                    }
                }
            }
        }
    }

    #[test]
    fn orbit_partition_and_orbit_stabilizer() {
        for n in 1..=10 {
            let mn: BTreeSet<F2Poly> = enumerate_mn(n).unwrap().into_iter().collect();
            let recs = orbits(n).unwrap();
            let mut covered = BTreeSet::new();
            for r in &recs {
                assert_eq!(r.members.len() * r.stabilizer.order(), 6);
                assert!(r.stabilizer.is_subgroup());
                assert_eq!(r.representative, *r.members.iter().min().unwrap());
                for m in &r.members {
                    assert!(covered.insert(*m), "orbits are disjoint");
                }
            }
            assert_eq!(covered, mn);
        }
    }

    /// det(t I - C) evaluated over the integers at t = 0..=n determines the
    /// monic characteristic polynomial; compare it with x^n - Σ α_i x^i.
    #[test]
    fn companion_characteristic_polynomial() {
        for n in 1..=8 {
            for low in 0..(1u64 << n) {
                let f = F2Poly::from_bits((1 << n) | low);
                let c = f.companion().unwrap();
                for t in 0..=(n as i64) {
                    let mut m = IntMatrix::identity(n).checked_scale(t).unwrap();
                    m = m.checked_sub(&c).unwrap();
                    let lhs = m.det().unwrap();
                    let rhs = t.pow(n as u32)
                        - (0..n).map(|i| i64::from(f.coeff(i)) * t.pow(i as u32)).sum::<i64>();
                    assert_eq!(lhs, rhs);
                }
                // Reduced mod 2 the integer polynomial x^n - Σ α_i x^i is f.
            }
        }
    }
}
