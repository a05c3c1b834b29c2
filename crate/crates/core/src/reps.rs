//! Integral representations of `G = <a, b> ≅ C2 × C2` and the operations on them.
//!
//! A representation is a pair of commuting involutive integer matrices
//! `A = Γ(a)`, `B = Γ(b)` acting on column vectors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::f2poly::{in_mn, Automorphism, F2Poly, PolyError};
use crate::linalg::{IntMatrix, LinalgError};

#[derive(Debug, Error)]
pub enum RepError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not a representation: {0}")]
    NotARepresentation(String),
    #[error("unknown representation family {0:?}")]
    UnknownFamily(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("malformed representation JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, RepError>;

/// The four one-dimensional characters, as signs `(χ(a), χ(b))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Character {
    Chi1,
    Chi2,
    Chi3,
    Chi4,
}

impl Character {
    pub const ALL: [Character; 4] = [Character::Chi1, Character::Chi2, Character::Chi3, Character::Chi4];

    pub fn signs(self) -> (i64, i64) {
        match self {
            Character::Chi1 => (1, 1),
            Character::Chi2 => (-1, -1),
            Character::Chi3 => (1, -1),
            Character::Chi4 => (-1, 1),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Character::Chi1 => 1,
            Character::Chi2 => 2,
            Character::Chi3 => 3,
            Character::Chi4 => 4,
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi{}", self.index())
    }
}

impl FromStr for Character {
    type Err = RepError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chi1" => Ok(Character::Chi1),
            "chi2" => Ok(Character::Chi2),
            "chi3" => Ok(Character::Chi3),
            "chi4" => Ok(Character::Chi4),
            _ => Err(RepError::UnknownFamily(s.into())),
        }
    }
}

/// Families with a fixed block layout, parameterized by `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    DeltaN,
    W0,
    Wn,
    Tn,
    DeltaN1,
    Regular,
    Chi(Character),
}

impl Family {
    pub fn name(self) -> String {
        match self {
            Family::DeltaN => "Delta_n".into(),
            Family::W0 => "W_0".into(),
            Family::Wn => "W_n".into(),
            Family::Tn => "T_n".into(),
            Family::DeltaN1 => "Delta_n1".into(),
            Family::Regular => "regular".into(),
            Family::Chi(c) => c.to_string(),
        }
    }

    /// Degree of the family member with parameter `n`.
    pub fn degree(self, n: usize) -> usize {
        match self {
            Family::DeltaN => 4 * n + 1,
            Family::W0 | Family::Regular => 4,
            Family::Wn => 4 * n + 4,
            Family::Tn => 4 * n + 2,
            Family::DeltaN1 => 4 * n + 3,
            Family::Chi(_) => 1,
        }
    }
}

impl FromStr for Family {
    type Err = RepError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "Delta_n" => Family::DeltaN,
            "W_0" => Family::W0,
            "W_n" => Family::Wn,
            "T_n" => Family::Tn,
            "Delta_n1" => Family::DeltaN1,
            "regular" => Family::Regular,
            other => Family::Chi(other.parse()?),
        })
    }
}

/// Position of the companion block in `Δ_f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Position {
    P11,
    P12,
    P21,
    P22,
}

impl FromStr for Position {
    type Err = RepError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "11" => Ok(Position::P11),
            "12" => Ok(Position::P12),
            "21" => Ok(Position::P21),
            "22" => Ok(Position::P22),
            _ => Err(RepError::InvalidParameter(format!("position {s:?} is not one of 11, 12, 21, 22"))),
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Position::P11 => "11",
            Position::P12 => "12",
            Position::P21 => "21",
            Position::P22 => "22",
        };
        write!(f, "{s}")
    }
}

/// An integral representation with its construction history.
///
/// `twists` lists the operations applied after the base constructor, in
/// order: `chiK` for tensoring, `dual`, `conj:WORD`, or `sum:NAME`.
#[derive(Clone, PartialEq, Eq)]
pub struct Representation {
    name: String,
    n: usize,
    f: Option<F2Poly>,
    twists: Vec<String>,
    a: IntMatrix,
    b: IntMatrix,
}

impl Representation {
    /// Checks the axioms and wraps the pair.
    pub fn from_matrices(name: impl Into<String>, n: usize, a: IntMatrix, b: IntMatrix) -> Result<Self> {
        let rep = Representation {
            name: name.into(),
            n,
            f: None,
            twists: Vec::new(),
            a,
            b,
        };
        rep.check()?;
        Ok(rep)
    }

    fn check(&self) -> Result<()> {
        let (a, b) = (&self.a, &self.b);
        if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
            return Err(RepError::NotARepresentation(format!(
                "generator images have shapes {}x{} and {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        if !a.checked_mul(a)?.is_identity() {
            return Err(RepError::NotARepresentation("Γ(a)² ≠ E".into()));
        }
        if !b.checked_mul(b)?.is_identity() {
            return Err(RepError::NotARepresentation("Γ(b)² ≠ E".into()));
        }
        if a.checked_mul(b)? != b.checked_mul(a)? {
            return Err(RepError::NotARepresentation("Γ(a)Γ(b) ≠ Γ(b)Γ(a)".into()));
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> Option<F2Poly> {
        self.f
    }

    pub fn twists(&self) -> &[String] {
        &self.twists
    }

    pub fn degree(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &IntMatrix {
        &self.a
    }

    pub fn b(&self) -> &IntMatrix {
        &self.b
    }

    /// Image of a group element given as a 2-bit code (bit 0: `a`, bit 1: `b`).
    pub fn image(&self, g: u8) -> IntMatrix {
        match g & 3 {
            0 => IntMatrix::identity(self.degree()),
            1 => self.a.clone(),
            2 => self.b.clone(),
            _ => self.a.checked_mul(&self.b).expect("entries of valid representations stay small"),
        }
    }

    /// Human label such as `Delta_n(n=2)*⊗chi2`.
    pub fn label(&self) -> String {
        let mut s = match self.f {
            Some(f) => format!("{}(f={})", self.name, f.to_bitstring()),
            None => format!("{}(n={})", self.name, self.n),
        };
        for t in &self.twists {
            s.push_str(&format!(" [{t}]"));
        }
        s
    }

    fn with_twist(mut self, tag: String, a: IntMatrix, b: IntMatrix) -> Self {
        self.twists.push(tag);
        self.a = a;
        self.b = b;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&RepJson::from(self)).expect("representation serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&RepJson::from(self)).expect("representation serializes")
    }

    /// Parses and validates the JSON form; `degree` must match the matrices.
    pub fn from_json(s: &str) -> Result<Self> {
        let j: RepJson = serde_json::from_str(s)?;
        j.try_into()
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Representation {} a={:?} b={:?}", self.label(), self.a, self.b)
    }
}

#[derive(Serialize, Deserialize)]
struct RepParams {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    f: Option<F2Poly>,
    #[serde(default)]
    twists: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct RepJson {
    name: String,
    params: RepParams,
    degree: usize,
    a: Vec<Vec<i64>>,
    b: Vec<Vec<i64>>,
}

impl From<&Representation> for RepJson {
    fn from(r: &Representation) -> Self {
        RepJson {
            name: r.name.clone(),
            params: RepParams {
                n: r.n,
                f: r.f,
                twists: r.twists.clone(),
            },
            degree: r.degree(),
            a: r.a.to_rows(),
            b: r.b.to_rows(),
        }
    }
}

fn matrix_from_json(rows: &[Vec<i64>], degree: usize) -> Result<IntMatrix> {
    if rows.len() != degree || rows.iter().any(|r| r.len() != degree) {
        return Err(RepError::NotARepresentation(format!("matrix is not {degree}x{degree}")));
    }
    if degree == 0 {
        return Ok(IntMatrix::zeros(0, 0));
    }
    Ok(IntMatrix::from_rows(rows)?)
}

impl TryFrom<RepJson> for Representation {
    type Error = RepError;

    fn try_from(j: RepJson) -> Result<Self> {
        let a = matrix_from_json(&j.a, j.degree)?;
        let b = matrix_from_json(&j.b, j.degree)?;
        let mut rep = Representation::from_matrices(j.name, j.params.n, a, b)?;
        rep.f = j.params.f;
        rep.twists = j.params.twists;
        Ok(rep)
    }
}

// Block layouts.

fn e(k: usize) -> IntMatrix {
    IntMatrix::identity(k)
}

fn neg(m: IntMatrix) -> IntMatrix {
    m.checked_scale(-1).expect("negating a 0/±1 block")
}

/// `(E_n 0)`, n × (n+1).
fn np(n: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, n + 1);
    for i in 0..n {
        m.set(i, i, 1);
    }
    m
}

/// `(0 E_n)`, n × (n+1).
fn nl(n: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, n + 1);
    for i in 0..n {
        m.set(i, i + 1, 1);
    }
    m
}

/// 2 × (n+1), first row `(0, …, 0, 1, 1)`, second row zero.
fn s_block(n: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(2, n + 1);
    m.set(0, n - 1, 1);
    m.set(0, n, 1);
    m
}

/// `[[1, 1], [0, -1]]`, used both as `D` and as `L1`.
fn d_block() -> IntMatrix {
    IntMatrix::from_rows(&[vec![1, 1], vec![0, -1]]).expect("2x2 literal")
}

fn jordan_one(k: usize) -> IntMatrix {
    let mut m = e(k);
    for i in 1..k {
        m.set(i - 1, i, 1);
    }
    m
}

/// Block-upper-triangular layout. Off-diagonal blocks use 1-based block indices.
struct Layout {
    sizes: Vec<usize>,
    diag: Vec<IntMatrix>,
    off: Vec<(usize, usize, IntMatrix)>,
}

impl Layout {
    fn assemble(&self) -> IntMatrix {
        assert_eq!(self.sizes.len(), self.diag.len());
        let mut offsets = vec![0];
        for s in &self.sizes {
            offsets.push(offsets.last().unwrap() + s);
        }
        let m = *offsets.last().unwrap();
        let mut out = IntMatrix::zeros(m, m);
        for (k, d) in self.diag.iter().enumerate() {
            assert_eq!((d.rows(), d.cols()), (self.sizes[k], self.sizes[k]), "diagonal block {k}");
            out.paste(offsets[k], offsets[k], d);
        }
        for (i, j, x) in &self.off {
            assert_eq!(
                (x.rows(), x.cols()),
                (self.sizes[i - 1], self.sizes[j - 1]),
                "block ({i},{j})"
            );
            out.paste(offsets[i - 1], offsets[j - 1], x);
        }
        out
    }
}

fn delta_n_layout(n: usize) -> (Layout, Layout) {
    (
        Layout {
            sizes: vec![n, 1, n, n, n],
            diag: vec![e(n), e(1), neg(e(n)), neg(e(n)), e(n)],
            off: vec![(1, 4, e(n)), (3, 5, e(n))],
        },
        Layout {
            sizes: vec![1, n, n, n, n],
            diag: vec![e(1), e(n), neg(e(n)), e(n), neg(e(n))],
            off: vec![(2, 5, e(n)), (3, 4, e(n))],
        },
    )
}

fn w_n_layout(n: usize) -> (Layout, Layout) {
    let sizes = vec![2, n, n, n + 1, n + 1];
    (
        Layout {
            sizes: sizes.clone(),
            diag: vec![d_block(), e(n), neg(e(n)), e(n + 1), neg(e(n + 1))],
            off: vec![(2, 5, nl(n)), (3, 4, nl(n))],
        },
        Layout {
            sizes,
            diag: vec![d_block(), e(n), neg(e(n)), neg(e(n + 1)), e(n + 1)],
            off: vec![(1, 4, s_block(n)), (2, 4, np(n)), (3, 5, np(n))],
        },
    )
}

fn t_n_layout(n: usize) -> (Layout, Layout) {
    (
        Layout {
            sizes: vec![n + 1, n, n + 1, n],
            diag: vec![e(n + 1), neg(e(n)), neg(e(n + 1)), e(n)],
            off: vec![(1, 3, e(n + 1)), (2, 4, e(n))],
        },
        Layout {
            sizes: vec![1, n, n, n + 1, n],
            diag: vec![e(1), e(n), neg(e(n)), e(n + 1), neg(e(n))],
            off: vec![(2, 5, e(n)), (3, 4, np(n))],
        },
    )
}

fn delta_n1_layout(n: usize) -> (Layout, Layout) {
    let sizes = vec![n, n + 1, n + 1, n + 1];
    (
        Layout {
            sizes: sizes.clone(),
            diag: vec![e(n), neg(e(n + 1)), neg(e(n + 1)), e(n + 1)],
            off: vec![(1, 3, np(n)), (2, 4, e(n + 1))],
        },
        Layout {
            sizes,
            diag: vec![e(n), neg(e(n + 1)), e(n + 1), neg(e(n + 1))],
            off: vec![(1, 4, nl(n)), (2, 3, e(n + 1))],
        },
    )
}

fn delta_f_layout(u11: IntMatrix, u22: IntMatrix, u12: IntMatrix, u21: IntMatrix) -> (Layout, Layout) {
    let n = u11.rows();
    let sizes = vec![n; 4];
    (
        Layout {
            sizes: sizes.clone(),
            diag: vec![e(n), neg(e(n)), neg(e(n)), e(n)],
            off: vec![(1, 3, u11), (2, 4, u22)],
        },
        Layout {
            sizes,
            diag: vec![e(n), neg(e(n)), e(n), neg(e(n))],
            off: vec![(1, 4, u12), (2, 3, u21)],
        },
    )
}

fn lemma3_layout(n: usize) -> (Layout, Layout) {
    let k = n - 1;
    let sizes = vec![2, k, k, k, k, 2];
    let mut l2 = IntMatrix::zeros(2, k);
    let mut l3 = IntMatrix::zeros(k, 2);
    if k > 0 {
        l2.set(0, 0, 1);
        l3.set(k - 1, 1, 1);
    }
    (
        Layout {
            sizes: sizes.clone(),
            diag: vec![d_block(), e(k), e(k), neg(e(k)), e(k), neg(d_block())],
            off: vec![(2, 5, e(k)), (3, 4, e(k))],
        },
        Layout {
            sizes,
            diag: vec![d_block(), e(k), neg(e(k)), e(k), e(k), d_block()],
            off: vec![(1, 5, l2), (2, 5, jordan_one(k)), (2, 6, l3), (3, 4, neg(e(k)))],
        },
    )
}

fn w0_pair() -> (IntMatrix, IntMatrix) {
    let a = IntMatrix::from_rows(&[vec![1, 1, 0, 1], vec![0, -1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, -1]]);
    let b = IntMatrix::from_rows(&[vec![1, 1, 1, 0], vec![0, -1, 0, 0], vec![0, 0, -1, 0], vec![0, 0, 0, 1]]);
    (a.expect("4x4 literal"), b.expect("4x4 literal"))
}

/// Left multiplication on the basis `1, a, b, ab` (2-bit codes 0, 1, 2, 3).
fn regular_pair() -> (IntMatrix, IntMatrix) {
    let perm = |g: usize| {
        let mut m = IntMatrix::zeros(4, 4);
        for h in 0..4 {
            m.set(g ^ h, h, 1);
        }
        m
    };
    (perm(1), perm(2))
}

fn from_layouts(name: &str, n: usize, (la, lb): (Layout, Layout)) -> Result<Representation> {
    Representation::from_matrices(name, n, la.assemble(), lb.assemble())
}

/// Builds a member of a fixed-layout family.
pub fn construct(family: Family, n: usize) -> Result<Representation> {
    let need = |min: usize| {
        if n < min {
            Err(RepError::InvalidParameter(format!("{} requires n ≥ {min}, got {n}", family.name())))
        } else {
            Ok(())
        }
    };
    let name = family.name();
    match family {
        Family::DeltaN => {
            need(1)?;
            from_layouts(&name, n, delta_n_layout(n))
        }
        Family::Wn => {
            need(1)?;
            from_layouts(&name, n, w_n_layout(n))
        }
        Family::Tn => {
            need(1)?;
            from_layouts(&name, n, t_n_layout(n))
        }
        Family::DeltaN1 => from_layouts(&name, n, delta_n1_layout(n)),
        Family::W0 => {
            let (a, b) = w0_pair();
            Representation::from_matrices(name, 0, a, b)
        }
        Family::Regular => {
            let (a, b) = regular_pair();
            Representation::from_matrices(name, 0, a, b)
        }
        Family::Chi(c) => {
            let (sa, sb) = c.signs();
            Representation::from_matrices(name, 0, IntMatrix::identity(1).checked_scale(sa)?, IntMatrix::identity(1).checked_scale(sb)?)
        }
    }
}

/// Admissible polynomials for `Δ_f`: members of `M_n`, `x^n`, and `(x+1)^n`.
pub fn is_admissible(f: F2Poly) -> Result<bool> {
    let n = f.degree().ok_or(PolyError::NotMonic)?;
    if n == 0 {
        return Ok(false);
    }
    Ok(f == F2Poly::monomial(n)? || f == F2Poly::shifted_monomial(n)? || in_mn(f)?)
}

/// `Δ_f` with the companion matrix of `f` at `position` and identity blocks elsewhere.
pub fn construct_delta_f(f: F2Poly, position: Position) -> Result<Representation> {
    if !is_admissible(f)? {
        return Err(RepError::InvalidParameter(format!(
            "{f} is neither in M_n nor x^n nor (x+1)^n"
        )));
    }
    let n = f.degree().expect("admissible polynomials are nonzero");
    let c = f.companion()?;
    let mut u = [e(n), e(n), e(n), e(n)];
    let slot = match position {
        Position::P11 => 0,
        Position::P22 => 1,
        Position::P12 => 2,
        Position::P21 => 3,
    };
    u[slot] = c;
    let [u11, u22, u12, u21] = u;
    let name = if position == Position::P12 { "F".to_string() } else { format!("Delta_f{position}") };
    let mut rep = from_layouts(&name, n, delta_f_layout(u11, u22, u12, u21))?;
    rep.f = Some(f);
    Ok(rep)
}

/// `𝔉(f) = Δ_f` with the companion block in position (1,2).
pub fn construct_f(f: F2Poly) -> Result<Representation> {
    construct_delta_f(f, Position::P12)
}

/// `𝔉′(x^n) = 𝔉(x^n) ⊗ χ2`.
pub fn construct_fprime(n: usize) -> Result<Representation> {
    if n == 0 {
        return Err(RepError::InvalidParameter("Fprime requires n ≥ 1".into()));
    }
    let base = construct_f(F2Poly::monomial(n)?)?;
    let mut rep = tensor_character(&base, Character::Chi2);
    rep.name = "Fprime".into();
    rep.twists.clear();
    Ok(rep)
}

/// The 4n × 4n matrix pair of the special form, exactly as laid out, without
/// checking the representation axioms.
pub fn lemma3_special_pair(n: usize) -> Result<(IntMatrix, IntMatrix)> {
    if n == 0 {
        return Err(RepError::InvalidParameter("the special form requires n ≥ 1".into()));
    }
    let (la, lb) = lemma3_layout(n);
    Ok((la.assemble(), lb.assemble()))
}

/// The special form as a representation; fails when the pair violates the axioms
/// (it does for every n ≥ 2: the (2,5) block of Γ(a)² is 2E).
pub fn construct_lemma3_special(n: usize) -> Result<Representation> {
    let (a, b) = lemma3_special_pair(n)?;
    Representation::from_matrices("lemma3special", n, a, b)
}

/// `Γ^φ(g) = Γ(φ(g))`.
pub fn conjugate(rep: &Representation, phi: Automorphism) -> Representation {
    if phi == Automorphism::ID {
        return rep.clone();
    }
    let a = rep.image(phi.a_image());
    let b = rep.image(phi.b_image());
    rep.clone().with_twist(format!("conj:{phi}"), a, b)
}

/// `Γ*(g) = Γ(g⁻¹)ᵀ = Γ(g)ᵀ`.
pub fn contragredient(rep: &Representation) -> Representation {
    let (a, b) = (rep.a.transpose(), rep.b.transpose());
    rep.clone().with_twist("dual".into(), a, b)
}

/// `(Γ ⊗ χ)(g) = χ(g) Γ(g)`.
pub fn tensor_character(rep: &Representation, chi: Character) -> Representation {
    if chi == Character::Chi1 {
        return rep.clone();
    }
    let (sa, sb) = chi.signs();
    let a = rep.a.checked_scale(sa).expect("sign change cannot overflow");
    let b = rep.b.checked_scale(sb).expect("sign change cannot overflow");
    rep.clone().with_twist(chi.to_string(), a, b)
}

pub fn direct_sum(r1: &Representation, r2: &Representation) -> Representation {
    let a = r1.a.direct_sum(&r2.a);
    let b = r1.b.direct_sum(&r2.b);
    r1.clone().with_twist(format!("sum:{}", r2.label()), a, b)
}

/// Faithful iff `Γ(a)`, `Γ(b)`, `Γ(ab)` all differ from the identity.
pub fn is_faithful(rep: &Representation) -> bool {
    (1..4).all(|g| !rep.image(g).is_identity())
}

/// The two involution axioms and commutation.
pub fn validate(rep: &Representation) -> bool {
    rep.check().is_ok()
}
