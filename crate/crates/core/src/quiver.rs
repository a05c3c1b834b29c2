//! Mod-2 subspace data of a representation: the idempotent check, dimension
//! vectors, the quadratic form `B`, and its positive roots.
//!
//! For the idempotent `e_i = (1 ± a)(1 ± b)/4` the coset space
//! `(e_i M + M)/M` sits inside `(½M)/M ≅ GF(2)^m`; scaling by 2 identifies it
//! with the column space of `W_i = (E ± A)(E ± B)/2` reduced mod 2.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{f2_row_space, F2Matrix, IntMatrix, LinalgError};
use crate::reps::Representation;

#[derive(Debug, Error)]
pub enum QuiverError {
    #[error("(E{0}A)(E{1}B) is not divisible by 2: the representation has a regular direct summand")]
    Lemma1Violation(char, char),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Sign patterns of `e_1..e_4`: `(+,+)`, `(−,−)`, `(+,−)`, `(−,+)`.
pub const SIGN_PATTERNS: [(i64, i64); 4] = [(1, 1), (-1, -1), (1, -1), (-1, 1)];

fn sign_char(s: i64) -> char {
    if s > 0 {
        '+'
    } else {
        '-'
    }
}

/// `(d0; d1, d2, d3, d4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimensionVector(pub [u64; 5]);

impl DimensionVector {
    pub fn new(d0: u64, d1: u64, d2: u64, d3: u64, d4: u64) -> Self {
        DimensionVector([d0, d1, d2, d3, d4])
    }

    pub fn d0(&self) -> u64 {
        self.0[0]
    }

    pub fn tail(&self) -> [u64; 4] {
        [self.0[1], self.0[2], self.0[3], self.0[4]]
    }

    /// `d1 + d2 + d3 + d4`.
    pub fn tail_sum(&self) -> u64 {
        self.tail().iter().sum()
    }

    pub fn form_b(&self) -> i64 {
        form_b(self)
    }

    /// The χ2-twist exchanges `d1 ↔ d2` and `d3 ↔ d4`.
    pub fn swap_chi2(&self) -> Self {
        let d = self.0;
        DimensionVector([d[0], d[2], d[1], d[4], d[3]])
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(RootJson::from(*self)).expect("root serializes")
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.0;
        write!(f, "({}; {}, {}, {}, {})", d[0], d[1], d[2], d[3], d[4])
    }
}

impl std::ops::Add for DimensionVector {
    type Output = DimensionVector;

    fn add(self, rhs: Self) -> Self {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o += r;
        }
        DimensionVector(out)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootJson {
    pub d: [u64; 5],
    #[serde(rename = "B")]
    pub b: i64,
}

impl From<DimensionVector> for RootJson {
    fn from(d: DimensionVector) -> Self {
        RootJson { d: d.0, b: form_b(&d) }
    }
}

/// `B(x) = x0² + Σ xi² − x0 Σ xi`.
pub fn form_b(x: &DimensionVector) -> i64 {
    let d: Vec<i64> = x.0.iter().map(|&v| v as i64).collect();
    let tail: i64 = d[1..].iter().sum();
    d[0] * d[0] + d[1..].iter().map(|v| v * v).sum::<i64>() - d[0] * tail
}

/// Per-pattern result of the divisibility check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lemma1Report {
    pub passes: [bool; 4],
}

impl Lemma1Report {
    pub fn ok(&self) -> bool {
        self.passes.iter().all(|&p| p)
    }

    pub fn failing_patterns(&self) -> Vec<(i64, i64)> {
        (0..4).filter(|&i| !self.passes[i]).map(|i| SIGN_PATTERNS[i]).collect()
    }
}

fn products(rep: &Representation) -> Result<Vec<IntMatrix>, QuiverError> {
    let m = rep.degree();
    let e = IntMatrix::identity(m);
    SIGN_PATTERNS
        .iter()
        .map(|&(sa, sb)| {
            let l = e.checked_add(&rep.a().checked_scale(sa)?)?;
            let r = e.checked_add(&rep.b().checked_scale(sb)?)?;
            Ok(l.checked_mul(&r)?)
        })
        .collect()
}

/// `(E ± A)(E ± B) ≡ 0 (mod 2)` for each of the four sign patterns.
pub fn check_lemma1(rep: &Representation) -> Result<Lemma1Report, QuiverError> {
    let ps = products(rep)?;
    let mut passes = [false; 4];
    for (p, m) in passes.iter_mut().zip(&ps) {
        *p = m.entries().iter().all(|x| x % 2 == 0);
    }
    Ok(Lemma1Report { passes })
}

/// The five subspaces of `GF(2)^m`, each as a reduced echelon basis (one vector per row).
#[derive(Debug, Clone)]
pub struct SubspaceTuple {
    pub ambient: usize,
    pub v0: F2Matrix,
    pub v: [F2Matrix; 4],
}

impl SubspaceTuple {
    /// `V_i ⊆ V0` for all `i`.
    pub fn contained_in_v0(&self) -> bool {
        let r0 = self.v0.rank();
        self.v.iter().all(|vi| self.v0.vstack(vi).rank() == r0)
    }
}

/// Dimension vector and subspace tuple via the scaled matrices `W_i`.
pub fn dimension_vector(rep: &Representation) -> Result<(DimensionVector, SubspaceTuple), QuiverError> {
    let m = rep.degree();
    let ps = products(rep)?;
    let mut bases = Vec::with_capacity(4);
    let mut stacked = F2Matrix::zeros(0, m);
    for (i, p) in ps.iter().enumerate() {
        let (sa, sb) = SIGN_PATTERNS[i];
        let w = p
            .exact_div(2)
            .ok_or(QuiverError::Lemma1Violation(sign_char(sa), sign_char(sb)))?;
        // Column space of W_i is the row space of its transpose.
        let wt = w.transpose().reduce_mod2();
        let (_, basis) = f2_row_space(&wt);
        stacked = stacked.vstack(&basis);
        bases.push(basis);
    }
    let (d0, v0) = f2_row_space(&stacked);
    let mut d = [d0 as u64, 0, 0, 0, 0];
    for (i, b) in bases.iter().enumerate() {
        d[i + 1] = b.rows() as u64;
    }
    let v: [F2Matrix; 4] = bases.try_into().expect("four idempotents");
    Ok((DimensionVector(d), SubspaceTuple { ambient: m, v0, v }))
}

fn isqrt_exact(x: i64) -> Option<i64> {
    if x < 0 {
        return None;
    }
    let r = (x as f64).sqrt() as i64;
    (r.saturating_sub(2)..=r + 2).find(|&c| c >= 0 && c * c == x)
}

/// All `d` with `B(d) = 1`, nonnegative entries, and `d1 + d2 + d3 + d4 = m`,
/// ordered by `(d1, d2, d3, d4)` then `d0`.
pub fn enumerate_roots(m: u64) -> Vec<DimensionVector> {
    let mut out = Vec::new();
    for d1 in 0..=m {
        for d2 in 0..=m - d1 {
            for d3 in 0..=m - d1 - d2 {
                let d4 = m - d1 - d2 - d3;
                let sq: i64 = [d1, d2, d3, d4].iter().map(|&v| (v * v) as i64).sum();
                // d0² − m d0 + (Σ di² − 1) = 0.
                let mi = m as i64;
                let disc = mi * mi - 4 * (sq - 1);
                let Some(r) = isqrt_exact(disc) else { continue };
                let mut sols = vec![(mi - r) / 2, (mi + r) / 2];
                sols.dedup();
                for d0 in sols {
                    if d0 >= 0 && (mi - r) % 2 == 0 {
                        let d = DimensionVector::new(d0 as u64, d1, d2, d3, d4);
                        debug_assert_eq!(form_b(&d), 1);
                        out.push(d);
                    }
                }
            }
        }
    }
    out
}

/// A parametric root family `(2n + c; n + k1, n + k2, n + k3, n + k4)` as printed,
/// with its printed degree label `4n + label` and permutation count `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootFamily {
    pub row: usize,
    pub label_offset: i64,
    pub d0_offset: i64,
    pub offsets: [i64; 4],
    pub t: usize,
}

impl RootFamily {
    pub fn instance(&self, n: i64) -> Option<DimensionVector> {
        let d0 = 2 * n + self.d0_offset;
        let tail = self.offsets.map(|k| n + k);
        (d0 >= 0 && tail.iter().all(|&v| v >= 0)).then(|| {
            DimensionVector([d0 as u64, tail[0] as u64, tail[1] as u64, tail[2] as u64, tail[3] as u64])
        })
    }

    /// The actual `d1 + d2 + d3 + d4` of the instance at `n`.
    pub fn actual_degree(&self, n: i64) -> i64 {
        4 * n + self.offsets.iter().sum::<i64>()
    }

    pub fn printed_degree(&self, n: i64) -> i64 {
        4 * n + self.label_offset
    }

    pub fn pattern(&self) -> String {
        let term = |c: i64, k: i64| match k {
            0 => format!("{c}n"),
            k if k > 0 => format!("{c}n+{k}"),
            k => format!("{c}n{k}"),
        };
        let tail: Vec<String> = self.offsets.iter().map(|&k| term(1, k).replacen("1n", "n", 1)).collect();
        format!("({}; {})", term(2, self.d0_offset), tail.join(", "))
    }
}

/// The seven rows of the root table, as printed.
pub const TABLE1: [RootFamily; 7] = [
    RootFamily { row: 1, label_offset: 0, d0_offset: 1, offsets: [0, 0, 0, 0], t: 1 },
    RootFamily { row: 2, label_offset: 0, d0_offset: -1, offsets: [0, 0, 0, 0], t: 1 },
    RootFamily { row: 3, label_offset: 2, d0_offset: 1, offsets: [1, 1, 0, 0], t: 6 },
    RootFamily { row: 4, label_offset: 1, d0_offset: 0, offsets: [1, 0, 0, 0], t: 4 },
    RootFamily { row: 5, label_offset: 2, d0_offset: 1, offsets: [1, 0, 0, 0], t: 4 },
    RootFamily { row: 6, label_offset: 3, d0_offset: 2, offsets: [1, 1, 1, 0], t: 4 },
    RootFamily { row: 7, label_offset: 3, d0_offset: 1, offsets: [1, 1, 1, 0], t: 4 },
];

/// The family row and parameter `n ≥ 0` whose instance is a permutation of `d`.
pub fn match_family(d: &DimensionVector) -> Option<(RootFamily, i64)> {
    let mut tail = d.tail();
    tail.sort_unstable();
    for fam in TABLE1 {
        let extra: i64 = fam.offsets.iter().sum();
        let s = d.tail_sum() as i64 - extra;
        if s < 0 || s % 4 != 0 {
            continue;
        }
        let n = s / 4;
        if let Some(inst) = fam.instance(n) {
            let mut t = inst.tail();
            t.sort_unstable();
            if inst.d0() == d.d0() && t == tail {
                return Some((fam, n));
            }
        }
    }
    None
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyCount {
    pub row: usize,
    pub n: i64,
    pub pattern: String,
    pub representative: [u64; 5],
    pub count: usize,
    pub expected: usize,
    pub printed_m: i64,
    /// `n ≥ 1`, the printed parameter range.
    pub in_printed_range: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table1Report {
    pub m: u64,
    pub families: Vec<FamilyCount>,
    pub unmatched: Vec<[u64; 5]>,
    /// Roots excluded by the `d0 ≥ 1`, `Σ ≥ 2` filter.
    pub filtered_out: Vec<[u64; 5]>,
}

impl Table1Report {
    /// Every root matched a family and every in-range count equals `t`.
    pub fn counts_ok(&self) -> bool {
        self.unmatched.is_empty()
            && self
                .families
                .iter()
                .filter(|f| f.in_printed_range)
                .all(|f| f.count == f.expected)
    }

    /// In-range families whose printed degree label differs from `m`.
    pub fn label_mismatches(&self) -> Vec<&FamilyCount> {
        self.families
            .iter()
            .filter(|f| f.in_printed_range && f.printed_m != self.m as i64)
            .collect()
    }
}

/// Groups the filtered roots of degree `m` into the seven parametric families.
pub fn table1_families(m: u64) -> Table1Report {
    let mut groups: BTreeMap<(usize, i64), (RootFamily, usize)> = BTreeMap::new();
    let mut unmatched = Vec::new();
    let mut filtered_out = Vec::new();
    for d in enumerate_roots(m) {
        if d.d0() < 1 || d.tail_sum() < 2 {
            filtered_out.push(d.0);
            continue;
        }
        match match_family(&d) {
            Some((fam, n)) => groups.entry((fam.row, n)).or_insert((fam, 0)).1 += 1,
            None => unmatched.push(d.0),
        }
    }
    let families = groups
        .into_iter()
        .map(|((row, n), (fam, count))| FamilyCount {
            row,
            n,
            pattern: fam.pattern(),
            representative: fam.instance(n).expect("matched instance exists").0,
            count,
            expected: fam.t,
            printed_m: fam.printed_degree(n),
            in_printed_range: n >= 1,
        })
        .collect();
    Table1Report {
        m,
        families,
        unmatched,
        filtered_out,
    }
}
