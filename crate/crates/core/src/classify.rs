//! Indecomposability, equivalence, conjugacy, stabilizers, and the degree-`m`
//! enumeration of indecomposable classes.
//!
//! Equivalence over `Z_(2)` and `Z_2` is decided exactly: an intertwiner is
//! invertible over these rings iff its determinant is odd, i.e. iff its
//! reduction mod 2 is invertible. Over `Z` a unimodular witness is searched for.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{find_invertible_combination, AlgebraError, BitMat, F2Algebra};
use crate::f2poly::{orbits, AutSubset, Automorphism, F2Poly, PolyError};
use crate::linalg::{integer_kernel, IntMatrix, LinalgError};
use crate::quiver::{dimension_vector, DimensionVector, QuiverError};
use crate::reps::{
    conjugate, construct, construct_f, construct_fprime, contragredient, tensor_character, Character, Family,
    RepError, Representation,
};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree {0} exceeds the supported maximum of 64")]
    TooLarge(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

impl ClassifyError {
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, ClassifyError::Algebra(AlgebraError::CapExceeded(_)))
    }
}

pub type Result<T> = std::result::Result<T, ClassifyError>;

/// Exhaustive GF(2) searches are limited to `2^EXHAUSTIVE_CAP_BITS` candidates.
pub const EXHAUSTIVE_CAP_BITS: usize = 22;

/// Candidate budget for the integral witness search.
pub const GLOBAL_SEARCH_BUDGET: u64 = 1 << 22;

/// A saturated Z-basis of a lattice of `m × m` integer matrices.
#[derive(Debug, Clone)]
pub struct MatrixLattice {
    pub m: usize,
    pub basis: Vec<IntMatrix>,
}

impl MatrixLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Basis reduced mod 2; linearly independent because the basis is saturated.
    pub fn reduce_mod2(&self) -> Result<Vec<BitMat>> {
        self.basis
            .iter()
            .map(|x| Ok(BitMat::from_f2(&x.reduce_mod2())?))
            .collect()
    }

    /// `Σ c_i B_i`.
    pub fn combination(&self, coeffs: &[i64]) -> Result<IntMatrix> {
        let mut acc = IntMatrix::zeros(self.m, self.m);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if *c != 0 {
                acc = acc.checked_add(&b.checked_scale(*c)?)?;
            }
        }
        Ok(acc)
    }
}

/// `{X : X Γ1(g) = Γ2(g) X for g = a, b}`, unknown `X_ij` at index `i·m + j`.
pub fn intertwiner_lattice(r1: &Representation, r2: &Representation) -> Result<MatrixLattice> {
    let m = r1.degree();
    if r2.degree() != m {
        return Err(ClassifyError::DegreeMismatch(m, r2.degree()));
    }
    if m > 64 {
        return Err(ClassifyError::TooLarge(m));
    }
    let mut data: Vec<i64> = Vec::new();
    let mut nrows = 0;
    for (g1, g2) in [(r1.a(), r2.a()), (r1.b(), r2.b())] {
        for i in 0..m {
            for j in 0..m {
                let mut row = vec![0i64; m * m];
                for k in 0..m {
                    row[i * m + k] += g1.get(k, j);
                    row[k * m + j] -= g2.get(i, k);
                }
                if row.iter().any(|&x| x != 0) {
                    data.extend(row);
                    nrows += 1;
                }
            }
        }
    }
    let system = IntMatrix::new(nrows, m * m, data)?;
    let basis = integer_kernel(&system)?
        .into_iter()
        .map(|v| IntMatrix::new(m, m, v))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(MatrixLattice { m, basis })
}

pub fn endomorphism_lattice(r: &Representation) -> Result<MatrixLattice> {
    intertwiner_lattice(r, r)
}

fn endomorphism_algebra(r: &Representation) -> Result<F2Algebra> {
    let lat = endomorphism_lattice(r)?;
    Ok(F2Algebra::new(r.degree(), lat.reduce_mod2()?)?)
}

/// Indecomposable over `Z_2` (hence over `Z_(2)` and `Z`): the endomorphism
/// ring reduced mod 2 is local.
pub fn is_indecomposable(r: &Representation) -> Result<bool> {
    Ok(endomorphism_algebra(r)?.is_local()?)
}

/// Exhaustive idempotent scan of the mod-2 endomorphism algebra; `None` when
/// its dimension exceeds `cap_bits`.
pub fn is_indecomposable_exhaustive(r: &Representation, cap_bits: usize) -> Result<Option<bool>> {
    let alg = endomorphism_algebra(r)?;
    if r.degree() == 0 {
        return Ok(Some(false));
    }
    Ok(alg.nontrivial_idempotent_exhaustive(cap_bits).map(|x| x.is_none()))
}

/// Equivalence over `Z_(2)` and `Z_2`.
pub fn equivalent_local(r1: &Representation, r2: &Representation) -> Result<bool> {
    if r1.degree() != r2.degree() {
        return Err(ClassifyError::DegreeMismatch(r1.degree(), r2.degree()));
    }
    if r1.degree() == 0 {
        return Ok(true);
    }
    let hom = intertwiner_lattice(r1, r2)?;
    let end1 = endomorphism_lattice(r1)?;
    // An invertible intertwiner X0 gives Hom = X0 · End.
    if hom.rank() != end1.rank() || hom.rank() != endomorphism_lattice(r2)?.rank() {
        return Ok(false);
    }
    let h = hom.reduce_mod2()?;
    if h.iter().any(BitMat::is_invertible) {
        return Ok(true);
    }
    // With End(Γ1) local, the non-invertible elements of X0·End form a proper
    // subspace, which cannot contain a basis.
    let alg = F2Algebra::new(r1.degree(), end1.reduce_mod2()?)?;
    if alg.is_local()? {
        return Ok(false);
    }
    Ok(find_invertible_combination(r1.degree(), &h, EXHAUSTIVE_CAP_BITS)?.is_some())
}

/// Outcome of the integral witness search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GlobalVerdict {
    /// A unimodular `X` with `X Γ1(g) = Γ2(g) X`.
    Yes(IntMatrix),
    /// Not even equivalent over `Z_(2)`.
    No,
    /// No witness among the candidates examined; `exhausted` tells whether the
    /// whole coefficient box was covered or the budget ran out first.
    Unknown { exhausted: bool, examined: u64 },
}

impl GlobalVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            GlobalVerdict::Yes(_) => "yes",
            GlobalVerdict::No => "no",
            GlobalVerdict::Unknown { .. } => "unknown",
        }
    }
}

fn is_witness(x: &IntMatrix, r1: &Representation, r2: &Representation) -> bool {
    let ok = |g1: &IntMatrix, g2: &IntMatrix| match (x.checked_mul(g1), g2.checked_mul(x)) {
        (Ok(l), Ok(r)) => l == r,
        _ => false,
    };
    ok(r1.a(), r2.a()) && ok(r1.b(), r2.b()) && matches!(x.det(), Ok(1) | Ok(-1))
}

/// Coefficient vectors with entries in `[-bound, bound]`, by increasing support size.
fn sparse_coefficients(rank: usize, bound: i64, support: usize, mut visit: impl FnMut(&[i64]) -> bool) -> bool {
    fn rec(
        pos: usize,
        left: usize,
        rank: usize,
        bound: i64,
        cur: &mut Vec<i64>,
        visit: &mut dyn FnMut(&[i64]) -> bool,
    ) -> bool {
        if left == 0 {
            return visit(cur);
        }
        if rank - pos < left {
            return true;
        }
        for c in (-bound..=bound).filter(|&c| c != 0) {
            cur[pos] = c;
            if !rec(pos + 1, left - 1, rank, bound, cur, visit) {
                cur[pos] = 0;
                return false;
            }
        }
        cur[pos] = 0;
        rec(pos + 1, left, rank, bound, cur, visit)
    }
    let mut cur = vec![0; rank];
    rec(0, support, rank, bound, &mut cur, &mut visit)
}

/// Equivalence over `Z`: "no" when the local test fails, otherwise a search for
/// a unimodular intertwiner among combinations with coefficients in
/// `[-bound, bound]`, sparsest first.
pub fn equivalent_global(r1: &Representation, r2: &Representation, bound: u32) -> Result<GlobalVerdict> {
    if !equivalent_local(r1, r2)? {
        return Ok(GlobalVerdict::No);
    }
    if r1.degree() == 0 {
        return Ok(GlobalVerdict::Yes(IntMatrix::zeros(0, 0)));
    }
    let hom = intertwiner_lattice(r1, r2)?;
    let h2 = hom.reduce_mod2()?;
    let m = r1.degree();
    let bound = i64::from(bound.max(1));
    let mut examined = 0u64;
    for support in 1..=hom.rank() {
        let mut batch: Vec<Vec<i64>> = Vec::new();
        let mut over_budget = false;
        sparse_coefficients(hom.rank(), bound, support, |c| {
            if examined >= GLOBAL_SEARCH_BUDGET {
                over_budget = true;
                return false;
            }
            examined += 1;
            // Odd determinant is necessary; filter mod 2 before exact work.
            let x2 = c
                .iter()
                .zip(&h2)
                .filter(|(k, _)| *k % 2 != 0)
                .fold(BitMat::zeros(m, m), |acc, (_, b)| acc.add(b));
            if x2.is_invertible() {
                batch.push(c.to_vec());
            }
            true
        });
        let found = batch.par_iter().find_map_first(|c| {
            let x = hom.combination(c).ok()?;
            is_witness(&x, r1, r2).then_some(x)
        });
        if let Some(x) = found {
            return Ok(GlobalVerdict::Yes(x));
        }
        if over_budget {
            return Ok(GlobalVerdict::Unknown {
                exhausted: false,
                examined,
            });
        }
    }
    Ok(GlobalVerdict::Unknown {
        exhausted: true,
        examined,
    })
}

/// `St(Γ) = {φ : Γ^φ ≅ Γ}` over `Z_(2)`.
pub fn stabilizer(r: &Representation) -> Result<AutSubset> {
    let mut st = AutSubset::trivial();
    for phi in Automorphism::all().into_iter().skip(1) {
        if equivalent_local(&conjugate(r, phi), r)? {
            st.insert(phi);
        }
    }
    Ok(st)
}

/// `Γ1^φ ≅ Γ2` for some automorphism `φ`.
pub fn conjugate_subgroups(r1: &Representation, r2: &Representation) -> Result<bool> {
    for phi in Automorphism::all() {
        if equivalent_local(&conjugate(r1, phi), r2)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The indecomposable classes, one per row of the classification table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassKind {
    DeltaN,
    DeltaNDual,
    DeltaNChi2,
    DeltaNDualChi2,
    DeltaN1,
    DeltaN1Dual,
    DeltaN1Chi2,
    DeltaN1DualChi2,
    Tn,
    TnChi2,
    Wn,
    WnDual,
    F(F2Poly),
    FMonomial,
    FPrime,
    Regular,
}

impl ClassKind {
    /// Kinds other than `F(f)`, in table order.
    pub const FIXED: [ClassKind; 15] = [
        ClassKind::DeltaN,
        ClassKind::DeltaNDual,
        ClassKind::DeltaNChi2,
        ClassKind::DeltaNDualChi2,
        ClassKind::DeltaN1,
        ClassKind::DeltaN1Dual,
        ClassKind::DeltaN1Chi2,
        ClassKind::DeltaN1DualChi2,
        ClassKind::Tn,
        ClassKind::TnChi2,
        ClassKind::Wn,
        ClassKind::WnDual,
        ClassKind::FMonomial,
        ClassKind::FPrime,
        ClassKind::Regular,
    ];

    /// Degree as a function of `n`.
    pub fn degree(self, n: usize) -> usize {
        match self {
            ClassKind::DeltaN | ClassKind::DeltaNDual | ClassKind::DeltaNChi2 | ClassKind::DeltaNDualChi2 => 4 * n + 1,
            ClassKind::DeltaN1 | ClassKind::DeltaN1Dual | ClassKind::DeltaN1Chi2 | ClassKind::DeltaN1DualChi2 => {
                4 * n + 3
            }
            ClassKind::Tn | ClassKind::TnChi2 => 4 * n + 2,
            ClassKind::Wn | ClassKind::WnDual => 4 * n + 4,
            ClassKind::F(_) | ClassKind::FMonomial | ClassKind::FPrime => 4 * n,
            ClassKind::Regular => 4,
        }
    }

    /// Smallest admissible `n` as listed in the classification table.
    pub fn min_n(self) -> usize {
        match self {
            ClassKind::DeltaN1
            | ClassKind::DeltaN1Dual
            | ClassKind::DeltaN1Chi2
            | ClassKind::DeltaN1DualChi2
            | ClassKind::Wn
            | ClassKind::WnDual
            | ClassKind::Regular => 0,
            _ => 1,
        }
    }

    /// The parameter `n` for degree `m`, if this kind has a member of that degree.
    pub fn n_for_degree(self, m: usize) -> Option<usize> {
        if self == ClassKind::Regular {
            return (m == 4).then_some(0);
        }
        let base = self.degree(0);
        (m >= base && (m - base).is_multiple_of(4))
            .then(|| (m - base) / 4)
            .filter(|&n| n >= self.min_n())
    }

    pub fn build(self, n: usize) -> Result<Representation> {
        let chi2 = |r: Representation| tensor_character(&r, Character::Chi2);
        Ok(match self {
            ClassKind::DeltaN => construct(Family::DeltaN, n)?,
            ClassKind::DeltaNDual => contragredient(&construct(Family::DeltaN, n)?),
            ClassKind::DeltaNChi2 => chi2(construct(Family::DeltaN, n)?),
            ClassKind::DeltaNDualChi2 => chi2(contragredient(&construct(Family::DeltaN, n)?)),
            ClassKind::DeltaN1 => construct(Family::DeltaN1, n)?,
            ClassKind::DeltaN1Dual => contragredient(&construct(Family::DeltaN1, n)?),
            ClassKind::DeltaN1Chi2 => chi2(construct(Family::DeltaN1, n)?),
            ClassKind::DeltaN1DualChi2 => chi2(contragredient(&construct(Family::DeltaN1, n)?)),
            ClassKind::Tn => construct(Family::Tn, n)?,
            ClassKind::TnChi2 => chi2(construct(Family::Tn, n)?),
            ClassKind::Wn if n == 0 => construct(Family::W0, 0)?,
            ClassKind::Wn => construct(Family::Wn, n)?,
            ClassKind::WnDual if n == 0 => contragredient(&construct(Family::W0, 0)?),
            ClassKind::WnDual => contragredient(&construct(Family::Wn, n)?),
            ClassKind::F(f) => construct_f(f)?,
            ClassKind::FMonomial => construct_f(F2Poly::monomial(n)?)?,
            ClassKind::FPrime => construct_fprime(n)?,
            ClassKind::Regular => construct(Family::Regular, 0)?,
        })
    }

    pub fn label(self, n: usize) -> String {
        let base = match self {
            ClassKind::DeltaN => "Delta_n",
            ClassKind::DeltaNDual => "Delta_n*",
            ClassKind::DeltaNChi2 => "Delta_n⊗chi2",
            ClassKind::DeltaNDualChi2 => "Delta_n*⊗chi2",
            ClassKind::DeltaN1 => "Delta_n1",
            ClassKind::DeltaN1Dual => "Delta_n1*",
            ClassKind::DeltaN1Chi2 => "Delta_n1⊗chi2",
            ClassKind::DeltaN1DualChi2 => "Delta_n1*⊗chi2",
            ClassKind::Tn => "T_n",
            ClassKind::TnChi2 => "T_n⊗chi2",
            ClassKind::Wn => "W_n",
            ClassKind::WnDual => "W_n*",
            ClassKind::F(f) => return format!("F({f})"),
            ClassKind::FMonomial => return format!("F(x^{n})"),
            ClassKind::FPrime => return format!("Fprime(x^{n})"),
            ClassKind::Regular => return "regular".into(),
        };
        format!("{base} (n={n})")
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label(0).trim_end_matches(" (n=0)"))
    }
}

/// One indecomposable class up to conjugacy.
#[derive(Debug, Clone)]
pub struct ClassEntry {
    pub kind: ClassKind,
    pub n: usize,
    pub rep: Representation,
    /// `None` for the regular representation, which fails the divisibility check.
    pub dimension: Option<DimensionVector>,
    pub stabilizer: AutSubset,
}

impl ClassEntry {
    pub fn new(kind: ClassKind, n: usize) -> Result<Self> {
        let rep = kind.build(n)?;
        let dimension = dimension_vector(&rep).ok().map(|(d, _)| d);
        let stabilizer = stabilizer(&rep)?;
        Ok(ClassEntry {
            kind,
            n,
            rep,
            dimension,
            stabilizer,
        })
    }

    pub fn degree(&self) -> usize {
        self.rep.degree()
    }

    /// `S(Γ) = 6 / |St(Γ)|`.
    pub fn conjugates(&self) -> usize {
        6 / self.stabilizer.order()
    }

    pub fn label(&self) -> String {
        self.kind.label(self.n)
    }
}

#[derive(Serialize)]
pub struct ClassEntryJson {
    pub label: String,
    pub n: usize,
    pub degree: usize,
    pub d: Option<[u64; 5]>,
    pub stabilizer: AutSubset,
    #[serde(rename = "S")]
    pub s: usize,
}

impl From<&ClassEntry> for ClassEntryJson {
    fn from(e: &ClassEntry) -> Self {
        ClassEntryJson {
            label: e.label(),
            n: e.n,
            degree: e.degree(),
            d: e.dimension.map(|d| d.0),
            stabilizer: e.stabilizer,
            s: e.conjugates(),
        }
    }
}

/// Kinds and parameters of the classes of degree `m`, in table order.
pub fn kinds_of_degree(m: usize) -> Result<Vec<(ClassKind, usize)>> {
    let mut out = Vec::new();
    for kind in ClassKind::FIXED {
        if kind == ClassKind::FMonomial {
            if let Some(n) = kind.n_for_degree(m) {
                for orbit in orbits(n)? {
                    out.push((ClassKind::F(orbit.representative), n));
                }
            }
        }
        if let Some(n) = kind.n_for_degree(m) {
            out.push((kind, n));
        }
    }
    Ok(out)
}

/// One entry per class of degree `m`, with stabilizers computed.
pub fn enumerate_degree(m: usize) -> Result<Vec<ClassEntry>> {
    kinds_of_degree(m)?
        .into_iter()
        .map(|(k, n)| ClassEntry::new(k, n))
        .collect()
}

/// Representatives of the right cosets `St·φ`, first found in canonical order.
pub fn coset_representatives(st: AutSubset) -> Vec<Automorphism> {
    let mut reps: Vec<Automorphism> = Vec::new();
    for phi in Automorphism::all() {
        // Γ^φ ≅ Γ^ψ iff φ ψ⁻¹ ∈ St.
        if !reps.iter().any(|&psi| st.contains(phi.compose(psi.inverse()))) {
            reps.push(phi);
        }
    }
    reps
}

/// The `S(Γ)` pairwise non-equivalent conjugates `Γ^φ`.
pub fn expand_to_equivalence(entry: &ClassEntry) -> Result<Vec<Representation>> {
    let out: Vec<Representation> = coset_representatives(entry.stabilizer)
        .into_iter()
        .map(|phi| conjugate(&entry.rep, phi))
        .collect();
    Ok(out)
}

/// Pairs `(i, j)`, `i < j`, of equivalent members of `reps`.
pub fn equivalent_pairs(reps: &[Representation]) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            if reps[i].degree() == reps[j].degree() && equivalent_local(&reps[i], &reps[j])? {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}
