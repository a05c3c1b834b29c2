//! Subalgebras of `M_m(GF(2))` for `m ≤ 64`, given by a spanning basis that
//! contains the identity in its span and is closed under multiplication.
//!
//! Locality is decided through the radical: if `V = GF(2)^m` is a faithful
//! module with composition factors `S_1..S_k`, then `J(A)` is the set of
//! elements acting as zero on every factor, and `A` is local iff
//! `dim A/J = dim S_1`.

use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::F2Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("matrix size {0} exceeds 64")]
    TooLarge(usize),
    #[error("search cap exceeded: {0}")]
    CapExceeded(String),
}

/// Largest kernel dimension enumerated vector by vector in the simplicity test.
pub const MAX_ENUM_BITS: usize = 22;

/// Square or rectangular GF(2) matrix with at most 64 columns; row `i` is a
/// bit mask over columns and vectors are column vectors stored as `u64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMat {
    cols: usize,
    rows: Vec<u64>,
}

impl std::fmt::Debug for BitMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMat {}x{}", self.rows.len(), self.cols)?;
        for r in &self.rows {
            let s: String = (0..self.cols).map(|j| if r >> j & 1 == 1 { '1' } else { '0' }).collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

fn mask(k: usize) -> u64 {
    if k == 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

impl BitMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMat {
            cols,
            rows: vec![0; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        BitMat {
            cols: n,
            rows: (0..n).map(|i| 1u64 << i).collect(),
        }
    }

    pub fn from_f2(m: &F2Matrix) -> Result<Self, AlgebraError> {
        if m.cols() > 64 {
            return Err(AlgebraError::TooLarge(m.cols()));
        }
        let mut out = BitMat::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if m.get(i, j) {
                    out.rows[i] |= 1 << j;
                }
            }
        }
        Ok(out)
    }

    /// Matrix whose columns are the given vectors (each with `nrows` meaningful bits).
    pub fn from_columns(nrows: usize, cols: &[u64]) -> Self {
        let mut out = BitMat::zeros(nrows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for i in 0..nrows {
                if c >> i & 1 == 1 {
                    out.rows[i] |= 1 << j;
                }
            }
        }
        out
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn apply(&self, v: u64) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &r)| acc | (u64::from((r & v).count_ones() & 1 == 1) << i))
    }

    pub fn column(&self, j: usize) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &r)| acc | ((r >> j & 1) << i))
    }

    pub fn transpose(&self) -> BitMat {
        let cols: Vec<u64> = self.rows.clone();
        BitMat::from_columns(self.cols, &cols)
    }

    pub fn mul(&self, rhs: &BitMat) -> BitMat {
        assert_eq!(self.cols, rhs.nrows());
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                let mut acc = 0u64;
                let mut bits = r;
                while bits != 0 {
                    let k = bits.trailing_zeros() as usize;
                    acc ^= rhs.rows[k];
                    bits &= bits - 1;
                }
                acc
            })
            .collect();
        BitMat { cols: rhs.cols, rows }
    }

    pub fn add(&self, rhs: &BitMat) -> BitMat {
        BitMat {
            cols: self.cols,
            rows: self.rows.iter().zip(&rhs.rows).map(|(a, b)| a ^ b).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        XorBasis::from_vectors(self.rows.iter().copied()).len()
    }

    pub fn is_invertible(&self) -> bool {
        self.nrows() == self.cols && self.rank() == self.cols
    }

    /// Basis of `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<u64> {
        let n = self.cols;
        // Reduced row echelon form with pivots on the lowest set bit.
        let mut rows: Vec<u64> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for &r0 in &self.rows {
            let mut r = r0;
            for (k, &p) in pivots.iter().enumerate() {
                if r >> p & 1 == 1 {
                    r ^= rows[k];
                }
            }
            if r == 0 {
                continue;
            }
            let p = r.trailing_zeros() as usize;
            for row in rows.iter_mut() {
                if *row >> p & 1 == 1 {
                    *row ^= r;
                }
            }
            rows.push(r);
            pivots.push(p);
        }
        let mut out = Vec::new();
        for free in (0..n).filter(|j| !pivots.contains(j)) {
            let mut v = 1u64 << free;
            for (k, &p) in pivots.iter().enumerate() {
                if rows[k] >> free & 1 == 1 {
                    v |= 1 << p;
                }
            }
            out.push(v);
        }
        out
    }

    pub fn inverse(&self) -> Option<BitMat> {
        let n = self.nrows();
        if n != self.cols {
            return None;
        }
        let mut a = self.rows.clone();
        let mut inv: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for c in 0..n {
            let p = (c..n).find(|&i| a[i] >> c & 1 == 1)?;
            a.swap(c, p);
            inv.swap(c, p);
            for i in 0..n {
                if i != c && a[i] >> c & 1 == 1 {
                    a[i] ^= a[c];
                    inv[i] ^= inv[c];
                }
            }
        }
        Some(BitMat { cols: n, rows: inv })
    }

    /// Top-left `k × k` block.
    fn leading_block(&self, k: usize) -> BitMat {
        BitMat {
            cols: k,
            rows: self.rows[..k].iter().map(|&r| r & mask(k)).collect(),
        }
    }

    /// Bottom-right block starting at index `k`.
    fn trailing_block(&self, k: usize) -> BitMat {
        let w = self.cols - k;
        BitMat {
            cols: w,
            rows: self.rows[k..].iter().map(|&r| (r >> k) & mask(w)).collect(),
        }
    }

    /// Entries flattened row-major, as a bit vector of length `rows · cols`.
    fn flatten_into(&self, out: &mut Vec<bool>) {
        for &r in &self.rows {
            out.extend((0..self.cols).map(|j| r >> j & 1 == 1));
        }
    }
}

/// Incremental GF(2) span with pivots on the highest set bit.
#[derive(Debug, Clone, Default)]
pub struct XorBasis {
    vectors: Vec<u64>,
}

impl XorBasis {
    pub fn from_vectors(it: impl IntoIterator<Item = u64>) -> Self {
        let mut b = XorBasis::default();
        for v in it {
            b.insert(v);
        }
        b
    }

    pub fn reduce(&self, mut v: u64) -> u64 {
        for &b in &self.vectors {
            v = v.min(v ^ b);
        }
        v
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: u64) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        self.vectors.push(r);
        self.vectors.sort_unstable_by(|a, b| b.cmp(a));
        true
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[u64] {
        &self.vectors
    }
}

/// A module over the algebra: the basis elements acting on `GF(2)^dim`.
#[derive(Debug, Clone)]
struct Module {
    dim: usize,
    action: Vec<BitMat>,
}

impl Module {
    /// `A · v`; one step suffices because the action matrices span an algebra.
    fn spin(&self, v: u64) -> XorBasis {
        XorBasis::from_vectors(self.action.iter().map(|x| x.apply(v)))
    }

    fn dual(&self) -> Module {
        Module {
            dim: self.dim,
            action: self.action.iter().map(BitMat::transpose).collect(),
        }
    }

    /// Splits along the submodule spanned by `sub`: returns (submodule, quotient).
    fn split(&self, sub: &[u64]) -> (Module, Module) {
        let k = sub.len();
        let mut cols: Vec<u64> = sub.to_vec();
        let mut span = XorBasis::from_vectors(sub.iter().copied());
        for i in 0..self.dim {
            if span.insert(1 << i) {
                cols.push(1 << i);
            }
        }
        let p = BitMat::from_columns(self.dim, &cols);
        let pinv = p.inverse().expect("extended basis is invertible");
        let mut s_action = Vec::with_capacity(self.action.len());
        let mut q_action = Vec::with_capacity(self.action.len());
        for x in &self.action {
            let y = pinv.mul(x).mul(&p);
            s_action.push(y.leading_block(k));
            q_action.push(y.trailing_block(k));
        }
        (
            Module {
                dim: k,
                action: s_action,
            },
            Module {
                dim: self.dim - k,
                action: q_action,
            },
        )
    }

    /// A singular element of small positive nullity, from a fixed candidate pool.
    fn singular_element(&self) -> BitMat {
        let id = BitMat::identity(self.dim);
        let nullity = |g: &BitMat| self.dim - g.rank();
        let pick = |cands: Vec<BitMat>| {
            cands
                .into_iter()
                .map(|g| (nullity(&g), g))
                .filter(|(k, _)| *k > 0)
                .min_by_key(|(k, _)| *k)
        };
        let mut best = pick(self.action.iter().flat_map(|x| [x.clone(), x.add(&id)]).collect());
        if best.as_ref().is_none_or(|(k, _)| *k > 1) {
            let mut pairs = Vec::new();
            for (i, x) in self.action.iter().enumerate() {
                for y in &self.action[i + 1..] {
                    let s = x.add(y);
                    pairs.push(s.add(&id));
                    pairs.push(x.mul(y));
                    pairs.push(s);
                }
            }
            if let Some(c) = pick(pairs) {
                if best.as_ref().is_none_or(|(k, _)| c.0 < *k) {
                    best = Some(c);
                }
            }
        }
        best.map(|(_, g)| g).unwrap_or_else(|| BitMat::zeros(self.dim, self.dim))
    }

    /// A proper nonzero submodule, or `None` if the module is simple
    /// (Norton's criterion for a singular element `g`).
    fn proper_submodule(&self) -> Result<Option<Vec<u64>>, AlgebraError> {
        if self.dim <= 1 {
            return Ok(None);
        }
        let g = self.singular_element();
        let ker = g.kernel();
        if let Some(s) = self.first_proper_spin(&ker)? {
            return Ok(Some(s));
        }
        let dual = self.dual();
        let ker_t = g.transpose().kernel();
        if let Some(t) = dual.first_proper_spin(&ker_t)? {
            // The annihilator of a proper dual submodule.
            return Ok(Some(BitMat { cols: self.dim, rows: t }.kernel()));
        }
        Ok(None)
    }

    fn first_proper_spin(&self, basis: &[u64]) -> Result<Option<Vec<u64>>, AlgebraError> {
        let k = basis.len();
        if k > MAX_ENUM_BITS {
            return Err(AlgebraError::CapExceeded(format!(
                "simplicity test would enumerate 2^{k} kernel vectors"
            )));
        }
        let found = (1u64..(1u64 << k)).into_par_iter().find_map_first(|c| {
            let v = (0..k).filter(|&i| c >> i & 1 == 1).fold(0, |acc, i| acc ^ basis[i]);
            let s = self.spin(v);
            (s.len() < self.dim).then(|| s.vectors().to_vec())
        });
        Ok(found)
    }

    /// A simple submodule.
    fn simple_submodule(&self) -> Result<(Module, Module), AlgebraError> {
        let mut current = self.clone();
        let mut basis_in_self: Vec<u64> = (0..self.dim).map(|i| 1u64 << i).collect();
        while let Some(sub) = current.proper_submodule()? {
            // Express the submodule in the coordinates of `self`.
            let lifted: Vec<u64> = sub
                .iter()
                .map(|&v| (0..current.dim).filter(|&i| v >> i & 1 == 1).fold(0, |acc, i| acc ^ basis_in_self[i]))
                .collect();
            current = current.split(&sub).0;
            basis_in_self = lifted;
        }
        Ok(self.split(&basis_in_self))
    }

    fn composition_factors(&self) -> Result<Vec<Module>, AlgebraError> {
        let mut out = Vec::new();
        let mut rest = self.clone();
        while rest.dim > 0 {
            let (s, q) = rest.simple_submodule()?;
            out.push(s);
            rest = q;
        }
        Ok(out)
    }
}

/// A subalgebra of `M_m(GF(2))` by a linearly independent spanning set.
#[derive(Debug, Clone)]
pub struct F2Algebra {
    m: usize,
    basis: Vec<BitMat>,
}

impl F2Algebra {
    pub fn new(m: usize, basis: Vec<BitMat>) -> Result<Self, AlgebraError> {
        if m > 64 {
            return Err(AlgebraError::TooLarge(m));
        }
        Ok(F2Algebra { m, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BitMat] {
        &self.basis
    }

    /// Dimensions of the composition factors of the natural module, bottom up.
    pub fn composition_factor_dims(&self) -> Result<Vec<usize>, AlgebraError> {
        Ok(self.natural_module().composition_factors()?.iter().map(|s| s.dim).collect())
    }

    fn natural_module(&self) -> Module {
        Module {
            dim: self.m,
            action: self.basis.clone(),
        }
    }

    /// `dim A/J(A)`: rank of the restriction map onto all composition factors.
    pub fn semisimple_quotient_dim(&self) -> Result<usize, AlgebraError> {
        let factors = self.natural_module().composition_factors()?;
        Ok(restriction_rank(&factors, self.basis.len()))
    }

    /// Whether the algebra is local (its only idempotents are 0 and 1).
    /// The zero algebra is not local.
    pub fn is_local(&self) -> Result<bool, AlgebraError> {
        if self.m == 0 || self.basis.is_empty() {
            return Ok(false);
        }
        let factors = self.natural_module().composition_factors()?;
        Ok(restriction_rank(&factors, self.basis.len()) == factors[0].dim)
    }

    /// Exhaustive search for an idempotent other than 0 and 1; `None` when the
    /// dimension exceeds `cap_bits`.
    pub fn nontrivial_idempotent_exhaustive(&self, cap_bits: usize) -> Option<Option<BitMat>> {
        let r = self.basis.len();
        if r > cap_bits {
            return None;
        }
        let id = BitMat::identity(self.m);
        let found = (1u64..(1u64 << r)).into_par_iter().find_map_first(|c| {
            let x = (0..r)
                .filter(|&i| c >> i & 1 == 1)
                .fold(BitMat::zeros(self.m, self.m), |acc, i| acc.add(&self.basis[i]));
            (x != id && !x.is_zero() && x.mul(&x) == x).then_some(x)
        });
        Some(found)
    }
}

fn restriction_rank(factors: &[Module], r: usize) -> usize {
    let rows: Vec<Vec<u8>> = (0..r)
        .map(|t| {
            let mut bits = Vec::new();
            for s in factors {
                s.action[t].flatten_into(&mut bits);
            }
            bits.into_iter().map(u8::from).collect()
        })
        .collect();
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    F2Matrix::from_bits(&rows).rank()
}

/// Some GF(2)-combination of `basis` that is invertible, by exhaustive search.
pub fn find_invertible_combination(m: usize, basis: &[BitMat], cap_bits: usize) -> Result<Option<BitMat>, AlgebraError> {
    let r = basis.len();
    if r > cap_bits {
        return Err(AlgebraError::CapExceeded(format!(
            "invertibility search over 2^{r} combinations exceeds 2^{cap_bits}"
        )));
    }
    if let Some(b) = basis.iter().find(|b| b.is_invertible()) {
        return Ok(Some(b.clone()));
    }
    Ok((1u64..(1u64 << r)).into_par_iter().find_map_first(|c| {
        let x = (0..r)
            .filter(|&i| c >> i & 1 == 1)
            .fold(BitMat::zeros(m, m), |acc, i| acc.add(&basis[i]));
        x.is_invertible().then_some(x)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bm(rows: &[&str]) -> BitMat {
        let cols = rows[0].len();
        BitMat {
            cols,
            rows: rows
                .iter()
                .map(|r| r.chars().enumerate().fold(0, |acc, (j, c)| acc | (u64::from(c == '1') << j)))
                .collect(),
        }
    }

    /// Closure of the generators and the identity under products, as a basis.
    fn generated_algebra(m: usize, gens: &[BitMat], max_dim: usize) -> Option<Vec<BitMat>> {
        let mut basis: Vec<BitMat> = Vec::new();
        let mut flat = XorBasisWide::default();
        let mut queue = vec![BitMat::identity(m)];
        queue.extend(gens.iter().cloned());
        while let Some(x) = queue.pop() {
            if !flat.insert(&x) {
                continue;
            }
            if basis.len() >= max_dim {
                return None;
            }
            for b in basis.clone() {
                queue.push(b.mul(&x));
                queue.push(x.mul(&b));
            }
            queue.push(x.mul(&x));
            basis.push(x);
        }
        Some(basis)
    }

    /// Span membership over flattened matrices (up to 64 · 64 bits).
    #[derive(Default)]
    struct XorBasisWide {
        rows: Vec<Vec<bool>>,
    }

    impl XorBasisWide {
        fn insert(&mut self, x: &BitMat) -> bool {
            let mut v = Vec::new();
            x.flatten_into(&mut v);
            for b in &self.rows {
                let p = b.iter().position(|&t| t).unwrap();
                if v[p] {
                    for (a, &c) in v.iter_mut().zip(b) {
                        *a ^= c;
                    }
                }
            }
            let Some(p) = v.iter().position(|&t| t) else { return false };
            for b in self.rows.iter_mut() {
                if b[p] {
                    for (a, &c) in b.iter_mut().zip(&v) {
                        *a ^= c;
                    }
                }
            }
            self.rows.push(v);
            true
        }
    }

    #[test]
    fn bitmat_basics() {
        let a = bm(&["110", "011", "001"]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), BitMat::identity(3));
        assert_eq!(a.transpose().transpose(), a);
        let s = bm(&["11", "11"]);
        assert_eq!(s.kernel(), vec![0b11]);
        assert_eq!(s.rank(), 1);
        assert!(s.inverse().is_none());
        assert_eq!(a.apply(0b100), 0b110);
    }

    #[test]
    fn local_examples() {
        // GF(2)[x]/(x^2) acting on itself.
        let n = bm(&["00", "10"]);
        let alg = F2Algebra::new(2, vec![BitMat::identity(2), n]).unwrap();
        assert!(alg.is_local().unwrap());
        // Diagonal matrices: two orthogonal idempotents.
        let alg = F2Algebra::new(2, vec![bm(&["10", "00"]), bm(&["00", "01"])]).unwrap();
        assert!(!alg.is_local().unwrap());
        // GF(4) inside M_2(GF(2)).
        let w = bm(&["01", "11"]);
        let alg = F2Algebra::new(2, vec![BitMat::identity(2), w]).unwrap();
        assert!(alg.is_local().unwrap());
        assert_eq!(alg.composition_factor_dims().unwrap(), vec![2]);
        // Full matrix algebra: simple, hence local only for m = 1.
        let full: Vec<BitMat> = (0..4)
            .map(|k| {
                let mut e = BitMat::zeros(2, 2);
                e.rows[k / 2] = 1 << (k % 2);
                e
            })
            .collect();
        assert!(!F2Algebra::new(2, full).unwrap().is_local().unwrap());
    }

    fn any_gens() -> impl Strategy<Value = (usize, Vec<BitMat>)> {
        (1usize..=5).prop_flat_map(|m| {
            let mat = proptest::collection::vec(0u64..(1 << m), m).prop_map(move |rows| BitMat { cols: m, rows });
            (Just(m), proptest::collection::vec(mat, 1..=2))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn locality_matches_idempotent_scan((m, gens) in any_gens()) {
            if let Some(basis) = generated_algebra(m, &gens, 16) {
                let alg = F2Algebra::new(m, basis).unwrap();
                let exhaustive = alg.nontrivial_idempotent_exhaustive(16).unwrap();
                prop_assert_eq!(alg.is_local().unwrap(), exhaustive.is_none());
                let dims = alg.composition_factor_dims().unwrap();
                prop_assert_eq!(dims.iter().sum::<usize>(), m);
            }
        }

        #[test]
        fn kernel_vectors_are_annihilated(rows in proptest::collection::vec(any::<u64>(), 1..10), n in 1usize..=64) {
            let m = BitMat { cols: n, rows: rows.iter().map(|r| r & mask(n)).collect() };
            let ker = m.kernel();
            prop_assert_eq!(ker.len() + m.rank(), n);
            for v in ker {
                prop_assert_eq!(m.apply(v), 0);
            }
        }
    }
}
