//! Finite groups of affine isometries of the flat torus Tⁿ = ℝⁿ/ℤⁿ.
//!
//! Elements are maps x ↦ Ax + b with A an integer orthogonal matrix and b a
//! rational translation taken mod 1, so group arithmetic, fixed-point loci
//! and orbit decompositions are all exactly decidable. Fixed loci are affine
//! subtori computed from the Smith normal form of A − I; the singular set of
//! the quotient is organized into group orbits of such subtori with their
//! setwise and pointwise stabilizers.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::Zero;
use thiserror::Error;

use crate::forms::{KForm, LinearEndo};
use crate::mat::IMat;
use crate::rat::{self, Rational};
use crate::snf::{self, Snf};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrbifoldError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("linear part is not an integer orthogonal matrix")]
    NotOrthogonal,
    #[error("group closure exceeded the bound of {max_order} elements")]
    ClosureExceeded { max_order: usize },
    #[error("element #{index} ({element}) does not preserve the structure form")]
    StructureNotPreserved { index: usize, element: String },
}

/// Default closure bound for [`generate_group`].
pub const DEFAULT_MAX_ORDER: usize = 1024;

/// An affine isometry x ↦ Ax + b of Tⁿ, with A integer orthogonal and b
/// rational, reduced mod 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct AffineIsometry {
    linear: IMat,
    translation: Vec<Rational>,
}

impl AffineIsometry {
    pub fn new(linear: IMat, translation: Vec<Rational>) -> Result<Self, OrbifoldError> {
        if !linear.is_square() || linear.nrows() != translation.len() {
            return Err(OrbifoldError::DimensionMismatch(linear.nrows(), translation.len()));
        }
        if !linear.is_orthogonal() {
            return Err(OrbifoldError::NotOrthogonal);
        }
        let translation = translation.iter().map(rat::mod_one).collect();
        Ok(AffineIsometry { linear, translation })
    }

    pub fn linear_only(linear: IMat) -> Result<Self, OrbifoldError> {
        let n = linear.nrows();
        Self::new(linear, vec![rat::zero(); n])
    }

    pub fn identity(dim: usize) -> Self {
        AffineIsometry { linear: IMat::identity(dim), translation: vec![rat::zero(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.linear.nrows()
    }

    pub fn linear(&self) -> &IMat {
        &self.linear
    }

    pub fn translation(&self) -> &[Rational] {
        &self.translation
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.iter().all(|x| x.is_zero())
    }

    pub fn linear_endo(&self) -> LinearEndo {
        LinearEndo::from_imat(&self.linear)
    }

    /// g ∘ h: apply h first.
    pub fn compose(&self, h: &AffineIsometry) -> Result<AffineIsometry, OrbifoldError> {
        if self.dim() != h.dim() {
            return Err(OrbifoldError::DimensionMismatch(self.dim(), h.dim()));
        }
        let linear = self.linear.mul(&h.linear);
        let mut translation = self.linear.mul_vec_rat(&h.translation);
        for (t, b) in translation.iter_mut().zip(self.translation.iter()) {
            *t += b;
            *t = rat::mod_one(t);
        }
        Ok(AffineIsometry { linear, translation })
    }

    pub fn inverse(&self) -> AffineIsometry {
        // A orthogonal integer, so A^{-1} = Aᵀ.
        let at = self.linear.transpose();
        let translation = at
            .mul_vec_rat(&self.translation)
            .into_iter()
            .map(|x| rat::mod_one(&-x))
            .collect();
        AffineIsometry { linear: at, translation }
    }

    pub fn apply_point(&self, x: &[Rational]) -> Vec<Rational> {
        let mut y = self.linear.mul_vec_rat(x);
        for (yi, b) in y.iter_mut().zip(self.translation.iter()) {
            *yi += b;
            *yi = rat::mod_one(yi);
        }
        y
    }

    /// Multiplicative order, up to `bound`.
    pub fn order(&self, bound: usize) -> Option<usize> {
        let mut g = self.clone();
        for k in 1..=bound {
            if g.is_identity() {
                return Some(k);
            }
            g = self.compose(&g).ok()?;
        }
        None
    }
}

impl std::fmt::Display for AffineIsometry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.dim();
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let mut s = String::new();
            if !self.translation[i].is_zero() {
                s.push_str(&self.translation[i].to_string());
            }
            for j in 0..n {
                let c = self.linear[(i, j)];
                if c == 0 {
                    continue;
                }
                if c > 0 && !s.is_empty() {
                    s.push('+');
                }
                if c == -1 {
                    s.push('-');
                } else if c != 1 {
                    s.push_str(&c.to_string());
                }
                s.push_str(&format!("x{}", j + 1));
            }
            if s.is_empty() {
                s.push('0');
            }
            images.push(s);
        }
        write!(f, "(x1..x{n}) -> ({})", images.join(", "))
    }
}

/// True iff the constant-coefficient form is invariant under the linear part
/// of `g` (translations act trivially on such forms).
pub fn preserves(g: &AffineIsometry, form: &KForm) -> bool {
    if g.dim() != form.dim() {
        return false;
    }
    match KForm::pullback(&g.linear_endo(), form) {
        Ok(pulled) => &pulled == form,
        Err(_) => false,
    }
}

/// A finite group of affine isometries, elements deduplicated and sorted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteIsomGroup {
    dim: usize,
    elements: Vec<AffineIsometry>,
}

impl FiniteIsomGroup {
    pub fn trivial(dim: usize) -> Self {
        FiniteIsomGroup { dim, elements: vec![AffineIsometry::identity(dim)] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[AffineIsometry] {
        &self.elements
    }

    pub fn contains(&self, g: &AffineIsometry) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_abelian(&self) -> bool {
        for g in &self.elements {
            for h in &self.elements {
                if g.compose(h).unwrap() != h.compose(g).unwrap() {
                    return false;
                }
            }
        }
        true
    }

    /// All subgroups, by closing every subset of elements. Exponential in the
    /// group order; intended for the small groups of this crate.
    pub fn subgroups(&self) -> Vec<FiniteIsomGroup> {
        let nontrivial: Vec<&AffineIsometry> =
            self.elements.iter().filter(|g| !g.is_identity()).collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for mask in 0u64..(1 << nontrivial.len()) {
            let gens: Vec<AffineIsometry> = nontrivial
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, g)| (*g).clone())
                .collect();
            let sub = generate_group(self.dim, &gens, self.order()).expect("subset closure");
            if seen.insert(sub.elements.clone()) {
                out.push(sub);
            }
        }
        out
    }
}

/// Breadth-first closure of the generators under composition.
pub fn generate_group(
    dim: usize,
    gens: &[AffineIsometry],
    max_order: usize,
) -> Result<FiniteIsomGroup, OrbifoldError> {
    assert!(max_order >= 1);
    for g in gens {
        if g.dim() != dim {
            return Err(OrbifoldError::DimensionMismatch(dim, g.dim()));
        }
    }
    let mut elements: BTreeSet<AffineIsometry> = BTreeSet::new();
    elements.insert(AffineIsometry::identity(dim));
    let mut queue: VecDeque<AffineIsometry> = elements.iter().cloned().collect();
    while let Some(g) = queue.pop_front() {
        for gen in gens {
            let next = gen.compose(&g)?;
            if elements.insert(next.clone()) {
                if elements.len() > max_order {
                    return Err(OrbifoldError::ClosureExceeded { max_order });
                }
                queue.push_back(next);
            }
        }
    }
    Ok(FiniteIsomGroup { dim, elements: elements.into_iter().collect() })
}

/// An affine subtorus of Tⁿ in canonical form: the direction lattice is
/// saturated and in column Hermite normal form, and the offset has its
/// tangential part zeroed and its transverse coordinates reduced mod 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct AffineSubtorus {
    ambient: usize,
    dim: usize,
    directions: IMat,
    offset: Vec<Rational>,
}

impl AffineSubtorus {
    /// Canonicalizes the subtorus through `offset` with the given integer
    /// direction vectors (columns, assumed independent).
    pub fn new(ambient: usize, offset: Vec<Rational>, directions: IMat) -> Self {
        assert_eq!(directions.nrows(), ambient);
        assert_eq!(offset.len(), ambient);
        let d = directions.ncols();
        if d == 0 {
            let offset = offset.iter().map(rat::mod_one).collect();
            return AffineSubtorus { ambient, dim: 0, directions, offset };
        }
        let sat = saturate(&directions);
        let basis = hnf_columns(&sat);
        debug_assert_eq!(basis.ncols(), d, "direction vectors must be independent");
        let complement = lattice_complement(&basis);
        let p = basis.hstack(&complement).to_qmat();
        let p_inv = p.inverse().expect("unimodular completion");
        let mut y = p_inv.mul_vec(&offset);
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = if i < d { rat::zero() } else { rat::mod_one(yi) };
        }
        let offset = p.mul_vec(&y);
        AffineSubtorus { ambient, dim: d, directions: basis, offset }
    }

    pub fn point(ambient: usize, offset: Vec<Rational>) -> Self {
        Self::new(ambient, offset, IMat::zeros(ambient, 0))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn directions(&self) -> &IMat {
        &self.directions
    }

    pub fn offset(&self) -> &[Rational] {
        &self.offset
    }

    /// Image under an affine isometry, recanonicalized.
    pub fn map_by(&self, g: &AffineIsometry) -> AffineSubtorus {
        assert_eq!(self.ambient, g.dim());
        let offset = g.apply_point(&self.offset);
        let directions = g.linear().mul(&self.directions);
        AffineSubtorus::new(self.ambient, offset, directions)
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        let diff: Vec<Rational> =
            x.iter().zip(self.offset.iter()).map(|(a, b)| a - b).collect();
        in_span_plus_lattice(&self.directions, &diff)
    }

    /// Whether the two subtori intersect in Tⁿ.
    pub fn intersects(&self, other: &AffineSubtorus) -> bool {
        assert_eq!(self.ambient, other.ambient);
        let combined = self.directions.hstack(&other.directions);
        let diff: Vec<Rational> = other
            .offset
            .iter()
            .zip(self.offset.iter())
            .map(|(a, b)| a - b)
            .collect();
        in_span_plus_lattice(&combined, &diff)
    }
}

/// Does `x` lie in span_ℝ(columns) + ℤⁿ?
fn in_span_plus_lattice(columns: &IMat, x: &[Rational]) -> bool {
    let n = columns.nrows();
    if columns.ncols() == 0 {
        return x.iter().all(rat::is_integer);
    }
    let s = snf::smith(columns);
    let r = s.rank();
    // Coordinates of x in the basis given by u_inv's columns: the first r
    // span the saturation, the rest are transverse.
    let y = s.u.to_qmat().mul_vec(x);
    y.iter().skip(r).take(n - r).all(rat::is_integer)
}

/// Saturation of the integer column lattice: basis of span_ℚ ∩ ℤⁿ.
fn saturate(columns: &IMat) -> IMat {
    let s = snf::smith(columns);
    let r = s.rank();
    s.u_inv.select_columns(&(0..r).collect::<Vec<_>>())
}

/// Integer complement: columns completing a saturated basis to a basis of ℤⁿ.
fn lattice_complement(basis: &IMat) -> IMat {
    let s = snf::smith(basis);
    let n = basis.nrows();
    let r = s.rank();
    debug_assert_eq!(r, basis.ncols(), "complement of a non-saturated basis");
    s.u_inv.select_columns(&(r..n).collect::<Vec<_>>())
}

/// Canonical column Hermite form of a full-column-rank integer matrix, used
/// as the unique representative of its column lattice.
fn hnf_columns(m: &IMat) -> IMat {
    let mut w = m.clone();
    let (rows, cols) = (w.nrows(), w.ncols());
    let mut pivot_row = 0usize;
    let mut pivot_cols = Vec::new();
    for _ in 0..cols {
        if pivot_row >= rows || pivot_cols.len() == cols {
            break;
        }
        // Find a row with a nonzero entry among the remaining columns.
        let next_cols: Vec<usize> =
            (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut row = pivot_row;
        'find: while row < rows {
            for &c in &next_cols {
                if w[(row, c)] != 0 {
                    break 'find;
                }
            }
            row += 1;
        }
        if row >= rows {
            break;
        }
        // Euclid across the active columns of this row.
        loop {
            let mut nonzero: Vec<usize> =
                next_cols.iter().copied().filter(|&c| w[(row, c)] != 0).collect();
            nonzero.sort_by_key(|&c| w[(row, c)].abs());
            let c0 = nonzero[0];
            if nonzero.len() == 1 {
                if w[(row, c0)] < 0 {
                    for i in 0..rows {
                        w[(i, c0)] = -w[(i, c0)];
                    }
                }
                // Reduce the already-fixed pivot columns against this one.
                for &pc in &pivot_cols {
                    let q = w[(row, pc)].div_euclid(w[(row, c0)]);
                    if q != 0 {
                        for i in 0..rows {
                            w[(i, pc)] -= q * w[(i, c0)];
                        }
                    }
                }
                pivot_cols.push(c0);
                pivot_row = row + 1;
                break;
            }
            for &c in nonzero.iter().skip(1) {
                let q = w[(row, c)].div_euclid(w[(row, c0)]);
                for i in 0..rows {
                    w[(i, c)] -= q * w[(i, c0)];
                }
            }
        }
    }
    // Order columns by pivot position.
    w.select_columns(&pivot_cols)
}

/// The fixed-point set of one isometry: a finite union of parallel affine
/// subtori, solved from (A − I)x ≡ −b (mod ℤⁿ) by Smith normal form.
#[derive(Clone, Debug)]
pub struct FixedLocus {
    pub owner: AffineIsometry,
    /// dim ker(A − I); every component has this dimension.
    pub component_dim: usize,
    pub components: Vec<AffineSubtorus>,
}

impl FixedLocus {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn count(&self) -> usize {
        self.components.len()
    }
}

pub fn fixed_locus(g: &AffineIsometry) -> FixedLocus {
    let n = g.dim();
    let mut m = g.linear().clone();
    for i in 0..n {
        m[(i, i)] -= 1;
    }
    let s: Snf = snf::smith(&m);
    let r = s.rank();
    let component_dim = n - r;
    let neg_b: Vec<Rational> = g.translation().iter().map(|b| -b.clone()).collect();
    let c = s.u.to_qmat().mul_vec(&neg_b);
    // Unsolvable when a zero row demands a non-integer.
    if c.iter().skip(r).any(|ci| !rat::is_integer(ci)) {
        return FixedLocus { owner: g.clone(), component_dim, components: vec![] };
    }
    let divisors: Vec<i64> = s.elementary_divisors();
    let directions = s.v.select_columns(&(r..n).collect::<Vec<_>>());
    let mut components = Vec::new();
    let mut counters = vec![0i64; r];
    loop {
        let mut y = vec![rat::zero(); n];
        for i in 0..r {
            y[i] = (&c[i] + rat::int(counters[i])) / rat::int(divisors[i]);
        }
        let offset: Vec<Rational> =
            s.v.to_qmat().mul_vec(&y).iter().map(rat::mod_one).collect();
        components.push(AffineSubtorus::new(n, offset, directions.clone()));
        // Advance the mixed-radix counter over the elementary divisors.
        let mut i = 0;
        loop {
            if i == r {
                components.sort();
                return FixedLocus { owner: g.clone(), component_dim, components };
            }
            counters[i] += 1;
            if counters[i] < divisors[i] {
                break;
            }
            counters[i] = 0;
            i += 1;
        }
    }
}

/// One orbit of singular-set components under the group action.
#[derive(Clone, Debug)]
pub struct SingularComponent {
    pub representative: AffineSubtorus,
    pub orbit: Vec<AffineSubtorus>,
    pub orbit_size: usize,
    /// Elements mapping the representative to itself as a set.
    pub setwise_stabilizer: Vec<AffineIsometry>,
    /// Elements fixing the representative pointwise.
    pub pointwise_stabilizer: Vec<AffineIsometry>,
    /// Indices (into the group's element list) of the non-identity elements
    /// whose fixed locus contains the representative.
    pub owners: Vec<usize>,
}

/// The singular set of Tⁿ/Γ, decomposed into orbits of fixed-locus
/// components, plus diagnostics for pairwise intersections between distinct
/// components.
#[derive(Clone, Debug)]
pub struct SingularSet {
    pub components: Vec<SingularComponent>,
    /// Pairs of distinct subtori that intersect; empty in the clean case
    /// where every local model is a product cone.
    pub intersections: Vec<(AffineSubtorus, AffineSubtorus)>,
}

impl SingularSet {
    pub fn total_component_count(&self) -> usize {
        self.components.iter().map(|c| c.orbit_size).sum()
    }
}

/// Enumerates the singular set of the quotient by a structure-preserving
/// group: every fixed-locus component of every non-identity element, merged
/// across owners, grouped into orbits.
pub fn singular_set(
    group: &FiniteIsomGroup,
    structure_form: &KForm,
) -> Result<SingularSet, OrbifoldError> {
    for (index, g) in group.elements().iter().enumerate() {
        if !preserves(g, structure_form) {
            return Err(OrbifoldError::StructureNotPreserved {
                index,
                element: g.to_string(),
            });
        }
    }
    let mut owners_by_torus: BTreeMap<AffineSubtorus, Vec<usize>> = BTreeMap::new();
    for (index, g) in group.elements().iter().enumerate() {
        if g.is_identity() {
            continue;
        }
        for comp in fixed_locus(g).components {
            owners_by_torus.entry(comp).or_default().push(index);
        }
    }
    let tori: Vec<AffineSubtorus> = owners_by_torus.keys().cloned().collect();
    let index_of: BTreeMap<&AffineSubtorus, usize> =
        tori.iter().enumerate().map(|(i, t)| (t, i)).collect();
    // Orbits under the group action.
    let mut seen = vec![false; tori.len()];
    let mut components = Vec::new();
    for start in 0..tori.len() {
        if seen[start] {
            continue;
        }
        let mut orbit_idx = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        orbit_idx.insert(start);
        while let Some(i) = queue.pop_front() {
            for g in group.elements() {
                let image = tori[i].map_by(g);
                let j = *index_of
                    .get(&image)
                    .expect("group action must permute the singular components");
                if !seen[j] {
                    seen[j] = true;
                    orbit_idx.insert(j);
                    queue.push_back(j);
                }
            }
        }
        let rep = tori[*orbit_idx.iter().next().unwrap()].clone();
        let setwise: Vec<AffineIsometry> = group
            .elements()
            .iter()
            .filter(|g| rep.map_by(g) == rep)
            .cloned()
            .collect();
        let pointwise: Vec<AffineIsometry> = setwise
            .iter()
            .filter(|g| fixes_pointwise(g, &rep))
            .cloned()
            .collect();
        components.push(SingularComponent {
            representative: rep.clone(),
            orbit: orbit_idx.iter().map(|&i| tori[i].clone()).collect(),
            orbit_size: orbit_idx.len(),
            setwise_stabilizer: setwise,
            pointwise_stabilizer: pointwise,
            owners: owners_by_torus[&rep].clone(),
        });
    }
    components.sort_by(|a, b| a.representative.cmp(&b.representative));
    let mut intersections = Vec::new();
    for i in 0..tori.len() {
        for j in i + 1..tori.len() {
            if tori[i].intersects(&tori[j]) {
                intersections.push((tori[i].clone(), tori[j].clone()));
            }
        }
    }
    Ok(SingularSet { components, intersections })
}

/// g fixes the subtorus pointwise: the linear part fixes every direction and
/// the offset is a fixed point.
fn fixes_pointwise(g: &AffineIsometry, t: &AffineSubtorus) -> bool {
    if g.linear().mul(t.directions()) != *t.directions() {
        return false;
    }
    let image = g.apply_point(t.offset());
    image
        .iter()
        .zip(t.offset().iter())
        .all(|(a, b)| rat::is_integer(&(a - b)))
}

/// The three involutions generating the standard Z2³ action on T⁷ that
/// preserves the flat G2 structure, and has singular set 12 copies of T³.
pub fn standard_t7_involutions() -> (AffineIsometry, AffineIsometry, AffineIsometry) {
    let alpha = AffineIsometry::new(
        IMat::diag(&[1, 1, 1, -1, -1, -1, -1]),
        vec![rat::zero(); 7],
    )
    .unwrap();
    let beta = AffineIsometry::new(
        IMat::diag(&[1, -1, -1, 1, 1, -1, -1]),
        vec![
            rat::zero(),
            rat::zero(),
            rat::zero(),
            rat::zero(),
            rat::zero(),
            rat::rat(1, 2),
            rat::zero(),
        ],
    )
    .unwrap();
    let gamma = AffineIsometry::new(
        IMat::diag(&[-1, 1, -1, 1, -1, 1, -1]),
        vec![
            rat::zero(),
            rat::zero(),
            rat::zero(),
            rat::zero(),
            rat::rat(1, 2),
            rat::zero(),
            rat::rat(1, 2),
        ],
    )
    .unwrap();
    (alpha, beta, gamma)
}

/// The Z2³ group generated by [`standard_t7_involutions`].
pub fn standard_t7_group() -> FiniteIsomGroup {
    let (a, b, c) = standard_t7_involutions();
    generate_group(7, &[a, b, c], DEFAULT_MAX_ORDER).expect("closure of three involutions")
}
