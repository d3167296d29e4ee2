//! Exterior algebra over ℝⁿ with exact rational coefficients.
//!
//! A [`KForm`] is a constant-coefficient k-form stored as a sparse map from
//! strictly increasing index tuples to nonzero rationals. The module provides
//! the wedge product, the Euclidean Hodge star (orientation dx1∧…∧dxn,
//! convention a ∧ ★b = ⟨a,b⟩ vol), pullback along linear maps, the canonical
//! G2 / Spin(7) / SU(m) structure forms, and the cross identities that
//! express the G2 and Spin(7) forms in terms of the SU(m) Kähler and volume
//! forms.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::mat::{IMat, QMat};
use crate::rat::{self, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormsError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("bad index tuple: {0}")]
    BadIndexTuple(String),
}

/// Index tuple for a basis form dx_{i1} ∧ … ∧ dx_{ik}, 1-based and strictly
/// increasing.
pub type Indices = Vec<u8>;

/// A degree-k exterior form on ℝⁿ with rational coefficients.
///
/// Zero forms of degree above the ambient dimension are representable (they
/// arise as wedge products); nonzero terms always satisfy `degree <= dim`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Indices, Rational>,
}

impl KForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        KForm { dim, degree, terms: BTreeMap::new() }
    }

    /// The basis form dx_{indices} with coefficient 1.
    pub fn basis(dim: usize, indices: &[u8]) -> Result<Self, FormsError> {
        Self::basis_with(dim, indices, rat::one())
    }

    pub fn basis_with(dim: usize, indices: &[u8], coeff: Rational) -> Result<Self, FormsError> {
        let ok = indices.windows(2).all(|w| w[0] < w[1])
            && indices.iter().all(|&i| i >= 1 && (i as usize) <= dim);
        if !ok {
            return Err(FormsError::BadIndexTuple(format!("{indices:?} in dimension {dim}")));
        }
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(indices.to_vec(), coeff);
        }
        Ok(KForm { dim, degree: indices.len(), terms })
    }

    /// Builds a form from (possibly repeated) signed terms with sorted keys.
    pub fn from_terms<I>(dim: usize, degree: usize, it: I) -> Self
    where
        I: IntoIterator<Item = (Indices, Rational)>,
    {
        let mut f = KForm::zero(dim, degree);
        for (idx, c) in it {
            debug_assert!(idx.len() == degree);
            f.accumulate(idx, c);
        }
        f
    }

    fn accumulate(&mut self, idx: Indices, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(idx);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, indices: &[u8]) -> Rational {
        self.terms.get(indices).cloned().unwrap_or_else(rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Indices, &Rational)> {
        self.terms.iter()
    }

    pub fn scale(&self, s: &Rational) -> KForm {
        if s.is_zero() {
            return KForm::zero(self.dim, self.degree);
        }
        let terms = self.terms.iter().map(|(k, v)| (k.clone(), v * s)).collect();
        KForm { dim: self.dim, degree: self.degree, terms }
    }

    pub fn add(&self, other: &KForm) -> Result<KForm, FormsError> {
        if self.dim != other.dim {
            return Err(FormsError::DimensionMismatch(self.dim, other.dim));
        }
        debug_assert_eq!(self.degree, other.degree, "adding forms of unequal degree");
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.accumulate(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &KForm) -> Result<KForm, FormsError> {
        self.add(&other.scale(&-rat::one()))
    }

    /// Wedge product. Degree adds; above the ambient dimension the result is
    /// the zero form.
    pub fn wedge(&self, other: &KForm) -> Result<KForm, FormsError> {
        if self.dim != other.dim {
            return Err(FormsError::DimensionMismatch(self.dim, other.dim));
        }
        let degree = self.degree + other.degree;
        let mut out = KForm::zero(self.dim, degree);
        if degree > self.dim {
            return Ok(out);
        }
        for (ia, ca) in &self.terms {
            for (ib, cb) in &other.terms {
                if let Some((idx, sign)) = merge_disjoint(ia, ib) {
                    let c = ca * cb * rat::int(sign);
                    out.accumulate(idx, c);
                }
            }
        }
        Ok(out)
    }

    /// Euclidean Hodge star for the orientation dx1 ∧ … ∧ dxn, fixed by the
    /// convention a ∧ ★b = ⟨a,b⟩ vol on the orthonormal coframe.
    pub fn hodge_star(&self) -> KForm {
        if self.degree > self.dim {
            // Only the zero form lives above the top degree.
            return KForm::zero(self.dim, 0);
        }
        let mut out = KForm::zero(self.dim, self.dim - self.degree);
        for (idx, c) in &self.terms {
            let comp = complement(self.dim, idx);
            let sign = concat_sign(idx, &comp);
            out.accumulate(comp, c * rat::int(sign));
        }
        out
    }

    /// Pullback along the linear map with matrix `f`: if y = f·x then this
    /// is the x-coordinate expression of the form written in y-coordinates.
    pub fn pullback(f: &LinearEndo, a: &KForm) -> Result<KForm, FormsError> {
        if f.dim != a.dim {
            return Err(FormsError::DimensionMismatch(f.dim, a.dim));
        }
        let k = a.degree;
        let mut out = KForm::zero(a.dim, k);
        if k == 0 {
            for (idx, c) in &a.terms {
                out.accumulate(idx.clone(), c.clone());
            }
            return Ok(out);
        }
        let targets = combinations(a.dim as u8, k);
        for (rows, c) in &a.terms {
            for t in &targets {
                let d = f.minor(rows, t);
                if d.is_zero() {
                    continue;
                }
                out.accumulate(t.clone(), c * d);
            }
        }
        Ok(out)
    }

    /// Reindexes a form on ℝ^m into ℝ^{new_dim} sending coordinate i to
    /// i + offset.
    pub fn shift_indices(&self, offset: u8, new_dim: usize) -> KForm {
        assert!(self.dim + offset as usize <= new_dim);
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (k.iter().map(|&i| i + offset).collect(), v.clone()))
            .collect();
        KForm { dim: new_dim, degree: self.degree, terms }
    }

    /// Canonical text form: one term per line, sign always explicit, terms
    /// in lexicographic index order.
    pub fn to_canonical_text(&self) -> String {
        if self.terms.is_empty() {
            return "0\n".to_string();
        }
        let mut out = String::new();
        for (idx, c) in &self.terms {
            let sign = if c < &rat::zero() { '-' } else { '+' };
            let mag = if c < &rat::zero() { -c.clone() } else { c.clone() };
            let indices: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
            out.push_str(&format!("{sign}{mag} dx{{{}}}\n", indices.join(" ")));
        }
        out
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_text().trim_end())
    }
}

/// Merges two strictly increasing tuples; `None` when they share an index,
/// otherwise the merged tuple with the sign of the interleaving permutation.
fn merge_disjoint(a: &[u8], b: &[u8]) -> Option<(Indices, i64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut inversions = 0usize;
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining entries of a.
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
    Some((out, sign))
}

fn complement(dim: usize, idx: &[u8]) -> Indices {
    (1..=dim as u8).filter(|i| !idx.contains(i)).collect()
}

/// Sign of the permutation taking (a ++ b) to sorted order, for disjoint
/// strictly increasing a, b.
fn concat_sign(a: &[u8], b: &[u8]) -> i64 {
    let mut inversions = 0usize;
    for &x in a {
        inversions += b.iter().filter(|&&y| y < x).count();
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All strictly increasing k-tuples from 1..=n.
pub fn combinations(n: u8, k: usize) -> Vec<Indices> {
    let mut out = Vec::new();
    let mut cur: Indices = Vec::with_capacity(k);
    fn rec(n: u8, k: usize, start: u8, cur: &mut Indices, out: &mut Vec<Indices>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 1, &mut cur, &mut out);
    out
}

/// A linear endomorphism of ℝⁿ with exact rational entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearEndo {
    dim: usize,
    m: QMat,
}

impl LinearEndo {
    pub fn identity(dim: usize) -> Self {
        LinearEndo { dim, m: QMat::identity(dim) }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let m = QMat::from_rows(rows);
        assert_eq!(m.nrows(), m.ncols(), "linear endomorphism must be square");
        LinearEndo { dim: m.nrows(), m }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| rat::int(x)).collect()).collect(),
        )
    }

    pub fn diag_signs(signs: &[i64]) -> Self {
        let n = signs.len();
        let mut rows = vec![vec![rat::zero(); n]; n];
        for (i, &s) in signs.iter().enumerate() {
            rows[i][i] = rat::int(s);
        }
        Self::from_rows(rows)
    }

    pub fn from_imat(a: &IMat) -> Self {
        assert!(a.is_square());
        LinearEndo { dim: a.nrows(), m: a.to_qmat() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &QMat {
        &self.m
    }

    /// Matrix of f ∘ g (apply g first).
    pub fn compose(&self, g: &LinearEndo) -> LinearEndo {
        assert_eq!(self.dim, g.dim);
        LinearEndo { dim: self.dim, m: self.m.mul(&g.m) }
    }

    pub fn inverse(&self) -> Option<LinearEndo> {
        Some(LinearEndo { dim: self.dim, m: self.m.inverse()? })
    }

    pub fn is_orthogonal(&self) -> bool {
        self.m.mul(&self.m.transpose()).is_identity()
    }

    pub fn det(&self) -> Rational {
        self.m.det()
    }

    /// Minor det(M[rows, cols]) for 1-based index tuples.
    fn minor(&self, rows: &[u8], cols: &[u8]) -> Rational {
        let k = rows.len();
        let mut sub = QMat::zeros(k, k);
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                sub[(i, j)] = self.m[(r as usize - 1, c as usize - 1)].clone();
            }
        }
        sub.det()
    }
}

/// The canonical structure forms on flat space.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CanonicalStructure {
    /// The 7-term 3-form defining G2 inside GL(7, ℝ).
    G2Phi,
    /// Its Hodge dual, the 7-term 4-form.
    G2StarPhi,
    /// The 14-term self-dual 4-form defining Spin(7) inside GL(8, ℝ).
    Spin7Omega,
    /// Kähler form of ℂᵐ on ℝ^{2m}, with z_j = x_{2j-1} + i x_{2j}.
    SuOmega(usize),
    /// Real part of the complex volume form dz_1 ∧ … ∧ dz_m.
    SuReTheta(usize),
    /// Imaginary part of the complex volume form.
    SuImTheta(usize),
}

const G2_PHI_TERMS: [(i64, [u8; 3]); 7] = [
    (1, [1, 2, 3]),
    (1, [1, 4, 5]),
    (1, [1, 6, 7]),
    (1, [2, 4, 6]),
    (-1, [2, 5, 7]),
    (-1, [3, 4, 7]),
    (-1, [3, 5, 6]),
];

const G2_STAR_PHI_TERMS: [(i64, [u8; 4]); 7] = [
    (1, [4, 5, 6, 7]),
    (1, [2, 3, 6, 7]),
    (1, [2, 3, 4, 5]),
    (1, [1, 3, 5, 7]),
    (-1, [1, 3, 4, 6]),
    (-1, [1, 2, 5, 6]),
    (-1, [1, 2, 4, 7]),
];

const SPIN7_OMEGA_TERMS: [(i64, [u8; 4]); 14] = [
    (1, [1, 2, 3, 4]),
    (1, [1, 2, 5, 6]),
    (1, [1, 2, 7, 8]),
    (1, [1, 3, 5, 7]),
    (-1, [1, 3, 6, 8]),
    (-1, [1, 4, 5, 8]),
    (-1, [1, 4, 6, 7]),
    (-1, [2, 3, 5, 8]),
    (-1, [2, 3, 6, 7]),
    (-1, [2, 4, 5, 7]),
    (1, [2, 4, 6, 8]),
    (1, [3, 4, 5, 6]),
    (1, [3, 4, 7, 8]),
    (1, [5, 6, 7, 8]),
];

/// Returns the requested canonical structure form, exactly.
pub fn canonical(s: CanonicalStructure) -> KForm {
    match s {
        CanonicalStructure::G2Phi => KForm::from_terms(
            7,
            3,
            G2_PHI_TERMS.iter().map(|&(c, idx)| (idx.to_vec(), rat::int(c))),
        ),
        CanonicalStructure::G2StarPhi => KForm::from_terms(
            7,
            4,
            G2_STAR_PHI_TERMS.iter().map(|&(c, idx)| (idx.to_vec(), rat::int(c))),
        ),
        CanonicalStructure::Spin7Omega => KForm::from_terms(
            8,
            4,
            SPIN7_OMEGA_TERMS.iter().map(|&(c, idx)| (idx.to_vec(), rat::int(c))),
        ),
        CanonicalStructure::SuOmega(m) => {
            assert!(m >= 1);
            KForm::from_terms(
                2 * m,
                2,
                (1..=m as u8).map(|j| (vec![2 * j - 1, 2 * j], rat::one())),
            )
        }
        CanonicalStructure::SuReTheta(m) => complex_volume_part(m, true),
        CanonicalStructure::SuImTheta(m) => complex_volume_part(m, false),
    }
}

/// Expands ∧_j (dx_{2j-1} + i dx_{2j}) and keeps the real or imaginary part.
///
/// The subset S of factors contributing their imaginary component carries
/// i^{|S|}; indices are already increasing, so no reordering signs appear.
fn complex_volume_part(m: usize, real: bool) -> KForm {
    assert!(m >= 1);
    let mut terms = Vec::new();
    for mask in 0u32..(1 << m) {
        let parity = mask.count_ones() % 4;
        let keep = if real { parity == 0 || parity == 2 } else { parity == 1 || parity == 3 };
        if !keep {
            continue;
        }
        let sign = match parity {
            0 | 1 => 1,
            2 | 3 => -1,
            _ => unreachable!(),
        };
        let idx: Indices = (0..m as u8)
            .map(|j| if mask & (1 << j) != 0 { 2 * j + 2 } else { 2 * j + 1 })
            .collect();
        terms.push((idx, rat::int(sign)));
    }
    KForm::from_terms(2 * m, m, terms)
}

/// The flat-model cross identities between SU(m) data and the exceptional
/// structure forms.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StructureIdentity {
    /// On ℝ × ℂ³: φ = dx1 ∧ ω + Re θ.
    G2FromCy3,
    /// On ℝ³ × ℂ²: φ = dx123 + dx1 ∧ ω + dx2 ∧ Re θ − dx3 ∧ Im θ.
    G2FromCy2,
    /// On ℝ³ × ℂ²: ★φ = ½ ω∧ω + dx23 ∧ ω − dx13 ∧ Re θ − dx12 ∧ Im θ.
    G2StarFromCy2,
    /// On ℂ⁴: Ω = ½ ω∧ω + Re θ.
    Spin7FromCy4,
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub identity: StructureIdentity,
    pub holds: bool,
    pub assembled: KForm,
    pub expected: KForm,
    /// assembled − expected; the zero form exactly when the identity holds.
    pub discrepancy: KForm,
}

/// Assembles the left side of the identity from SU(m) canonical forms on the
/// appropriate coordinate block and compares it with the canonical structure
/// form, exactly.
pub fn verify_identity(id: StructureIdentity) -> IdentityReport {
    let (assembled, expected) = match id {
        StructureIdentity::G2FromCy3 => {
            // Coordinates: x1 flat factor; z_j = x_{2j} + i x_{2j+1}.
            let omega = su_form_on(CanonicalStructure::SuOmega(3), 1, 7);
            let re = su_form_on(CanonicalStructure::SuReTheta(3), 1, 7);
            let dx1 = KForm::basis(7, &[1]).unwrap();
            let lhs = dx1.wedge(&omega).unwrap().add(&re).unwrap();
            (lhs, canonical(CanonicalStructure::G2Phi))
        }
        StructureIdentity::G2FromCy2 => {
            let omega = su_form_on(CanonicalStructure::SuOmega(2), 3, 7);
            let re = su_form_on(CanonicalStructure::SuReTheta(2), 3, 7);
            let im = su_form_on(CanonicalStructure::SuImTheta(2), 3, 7);
            let dx1 = KForm::basis(7, &[1]).unwrap();
            let dx2 = KForm::basis(7, &[2]).unwrap();
            let dx3 = KForm::basis(7, &[3]).unwrap();
            let dx123 = KForm::basis(7, &[1, 2, 3]).unwrap();
            let lhs = dx123
                .add(&dx1.wedge(&omega).unwrap())
                .unwrap()
                .add(&dx2.wedge(&re).unwrap())
                .unwrap()
                .sub(&dx3.wedge(&im).unwrap())
                .unwrap();
            (lhs, canonical(CanonicalStructure::G2Phi))
        }
        StructureIdentity::G2StarFromCy2 => {
            let omega = su_form_on(CanonicalStructure::SuOmega(2), 3, 7);
            let re = su_form_on(CanonicalStructure::SuReTheta(2), 3, 7);
            let im = su_form_on(CanonicalStructure::SuImTheta(2), 3, 7);
            let dx12 = KForm::basis(7, &[1, 2]).unwrap();
            let dx13 = KForm::basis(7, &[1, 3]).unwrap();
            let dx23 = KForm::basis(7, &[2, 3]).unwrap();
            let half = rat::rat(1, 2);
            let lhs = omega
                .wedge(&omega)
                .unwrap()
                .scale(&half)
                .add(&dx23.wedge(&omega).unwrap())
                .unwrap()
                .sub(&dx13.wedge(&re).unwrap())
                .unwrap()
                .sub(&dx12.wedge(&im).unwrap())
                .unwrap();
            (lhs, canonical(CanonicalStructure::G2StarPhi))
        }
        StructureIdentity::Spin7FromCy4 => {
            let omega = canonical(CanonicalStructure::SuOmega(4));
            let re = canonical(CanonicalStructure::SuReTheta(4));
            let half = rat::rat(1, 2);
            let lhs = omega.wedge(&omega).unwrap().scale(&half).add(&re).unwrap();
            (lhs, canonical(CanonicalStructure::Spin7Omega))
        }
    };
    let discrepancy = assembled.sub(&expected).unwrap();
    IdentityReport { identity: id, holds: discrepancy.is_zero(), assembled, expected, discrepancy }
}

/// Canonical SU form reindexed so its coordinates start after `offset`
/// ambient coordinates.
fn su_form_on(s: CanonicalStructure, offset: u8, dim: usize) -> KForm {
    canonical(s).shift_indices(offset, dim)
}
