//! Local models of quotient singularities and Betti-number bookkeeping for
//! their crepant resolutions.
//!
//! A singular component of Tⁿ/Γ carries a pointwise stabilizer acting on the
//! normal space of the component. [`classify_local_model`] recognizes the
//! cases resolvable within the holonomy-reduction framework — a cyclic group
//! inside SU(2) on a 4-dimensional normal space, or a cyclic group inside
//! SU(3) acting freely on a 6-dimensional normal space — by exact rotation
//! number bookkeeping. The exceptional cohomology contributed by each model
//! is external classification data shipped as a table ([`AdeTable`]) rather
//! than recomputed, and [`resolved_betti`] assembles b² and b³ of the
//! resolved manifold from the orbifold Betti numbers plus the per-component
//! contributions.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::mat::QMat;
use crate::orbifold::{FiniteIsomGroup, SingularComponent};
use crate::rat::{self, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("unsupported local model: {0}")]
    UnsupportedModel(String),
    #[error("invariant-trace average is not a nonnegative integer in degree {degree}: {value}")]
    NonIntegralTrace { degree: usize, value: String },
    #[error("component has non-free residual monodromy: {0}")]
    NonFreeMonodromy(String),
    #[error("malformed resolution table at line {line}: {msg}")]
    BadTable { line: usize, msg: String },
}

/// How the pointwise stabilizer acts on the normal space of a component.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LocalModelKind {
    /// Cyclic order-k subgroup of SU(2) on ℂ²; the A-series surface case.
    C2Quotient { order: usize },
    /// Cyclic order-k subgroup of SU(3) acting freely on ℂ³ ∖ {0}, with
    /// rotation weights (a, b, c), a + b + c ≡ 0 mod k.
    C3Quotient { order: usize, weights: [usize; 3] },
    /// Anything the resolution pipeline does not handle.
    Unsupported { reason: String },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalModel {
    pub kind: LocalModelKind,
    pub normal_dim: usize,
    pub group_order: usize,
}

impl LocalModel {
    pub fn is_supported(&self) -> bool {
        !matches!(self.kind, LocalModelKind::Unsupported { .. })
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            LocalModelKind::C2Quotient { order } => format!("C^2/Z{order}"),
            LocalModelKind::C3Quotient { order, weights } => {
                format!("C^3/Z{order}({},{},{})", weights[0], weights[1], weights[2])
            }
            LocalModelKind::Unsupported { reason } => format!("unsupported ({reason})"),
        }
    }
}

/// An eigenvalue e^{2πi·num/den} of a finite-order matrix.
type RotationNumber = (usize, usize);

/// Classifies the normal-space action of a singular component's pointwise
/// stabilizer. `Unsupported` is a valid outcome, never an error.
pub fn classify_local_model(component: &SingularComponent) -> LocalModel {
    let ambient = component.representative.ambient_dim();
    let tangent_dim = component.representative.dim();
    let normal_dim = ambient - tangent_dim;
    let stab = &component.pointwise_stabilizer;
    let group_order = stab.len();
    let unsupported = |reason: &str| LocalModel {
        kind: LocalModelKind::Unsupported { reason: reason.to_string() },
        normal_dim,
        group_order,
    };
    if group_order <= 1 {
        return unsupported("trivial stabilizer, not a singular point");
    }
    if !normal_dim.is_multiple_of(2) {
        return unsupported("odd-dimensional normal space admits no complex structure");
    }
    let generator = stab.iter().find(|g| g.order(group_order + 1) == Some(group_order));
    let Some(generator) = generator else {
        return unsupported("stabilizer is not cyclic");
    };
    // Pointwise stabilizers fix the tangent directions and act orthogonally,
    // so the rational complement of the tangent space is preserved; compute
    // the induced matrix there.
    let normal_basis =
        component.representative.directions().to_qmat().transpose().null_space();
    debug_assert_eq!(normal_basis.ncols(), normal_dim);
    let a = generator.linear().to_qmat();
    let image = a.mul(&normal_basis);
    let gram = normal_basis.transpose().mul(&normal_basis);
    let gram_inv = gram.inverse().expect("basis of full rank");
    let action = gram_inv.mul(&normal_basis.transpose().mul(&image));
    let rotations = match rotation_numbers(&action, group_order) {
        Ok(r) => r,
        Err(reason) => return unsupported(&reason),
    };
    if rotations.iter().any(|&(_, den)| den == 1) {
        return unsupported("stabilizer fixes normal directions (intersecting strata)");
    }
    // Freeness of every nontrivial power: an eigenvalue of order d < k gives
    // the power g^d a fixed normal vector.
    if rotations.iter().any(|&(_, den)| den != group_order) {
        return unsupported("a stabilizer power fixes normal vectors");
    }
    let Some(pairs) = conjugate_pairs(&rotations) else {
        return unsupported("eigenvalues admit no conjugate pairing");
    };
    let Some(weights) = special_unitary_weights(&pairs, group_order) else {
        return unsupported("no complex structure with unit determinant");
    };
    match normal_dim {
        4 => LocalModel {
            kind: LocalModelKind::C2Quotient { order: group_order },
            normal_dim,
            group_order,
        },
        6 => LocalModel {
            kind: LocalModelKind::C3Quotient {
                order: group_order,
                weights: [weights[0], weights[1], weights[2]],
            },
            normal_dim,
            group_order,
        },
        _ => unsupported("normal dimension outside the surface/3-fold cases"),
    }
}

/// Eigenvalues of a finite-order rational matrix as rotation numbers, read
/// off from the cyclotomic factorization of its characteristic polynomial.
fn rotation_numbers(action: &QMat, order: usize) -> Result<Vec<RotationNumber>, String> {
    let mut chi = char_poly(action);
    let mut rotations = Vec::new();
    for d in divisors(order) {
        let phi = cyclotomic(d);
        while let Some(q) = poly_divide_exact(&chi, &phi) {
            chi = q;
            for num in 1..=d {
                if gcd(num, d) == 1 {
                    rotations.push((num % d, d));
                }
            }
            if chi.len() == 1 {
                break;
            }
        }
    }
    if chi.len() != 1 {
        return Err("normal action is not of finite order dividing the stabilizer order".into());
    }
    rotations.sort();
    Ok(rotations)
}

/// Pairs rotation numbers into complex-conjugate pairs; each pair is kept as
/// its representative with num/den ≤ 1/2. `None` if no pairing exists.
fn conjugate_pairs(rotations: &[RotationNumber]) -> Option<Vec<RotationNumber>> {
    let mut counts: BTreeMap<RotationNumber, usize> = BTreeMap::new();
    for &r in rotations {
        *counts.entry(r).or_default() += 1;
    }
    let mut pairs = Vec::new();
    for (&(num, den), &count) in counts.iter() {
        if 2 * num < den {
            let conj = ((den - num) % den, den);
            if counts.get(&conj) != Some(&count) {
                return None;
            }
            for _ in 0..count {
                pairs.push((num, den));
            }
        } else if 2 * num == den {
            // Eigenvalue -1 pairs with itself and needs even multiplicity.
            if count % 2 != 0 {
                return None;
            }
            for _ in 0..count / 2 {
                pairs.push((num, den));
            }
        }
    }
    Some(pairs)
}

/// Searches the orientation choices of the conjugate pairs for rotation
/// angles summing to 0 mod 1. Returns the lexicographically smallest sorted
/// weight vector realizing it.
fn special_unitary_weights(pairs: &[RotationNumber], order: usize) -> Option<Vec<usize>> {
    let k = pairs.len();
    let mut best: Option<Vec<usize>> = None;
    for mask in 0u32..(1 << k) {
        let mut total = 0usize;
        let mut weights = Vec::with_capacity(k);
        for (i, &(num, den)) in pairs.iter().enumerate() {
            debug_assert_eq!(den, order);
            let w = if mask & (1 << i) != 0 { (den - num) % den } else { num };
            total += w;
            weights.push(w);
        }
        if total.is_multiple_of(order) {
            weights.sort();
            if best.as_ref().is_none_or(|b| &weights < b) {
                best = Some(weights);
            }
        }
    }
    best
}

/// det(xI − M), coefficients constant-term first, by the Faddeev–LeVerrier
/// recursion.
fn char_poly(m: &QMat) -> Vec<Rational> {
    let n = m.nrows();
    let mut coeffs = vec![rat::zero(); n + 1];
    coeffs[n] = rat::one();
    let mut aux = QMat::identity(n);
    for k in 1..=n {
        let prod = m.mul(&aux);
        let c = -(prod.trace() / rat::int(k as i64));
        coeffs[n - k] = c.clone();
        aux = prod;
        for i in 0..n {
            aux[(i, i)] += &c;
        }
    }
    coeffs
}

/// Exact polynomial quotient; `None` when the division leaves a remainder.
fn poly_divide_exact(num: &[Rational], den: &[Rational]) -> Option<Vec<Rational>> {
    if num.len() < den.len() {
        return None;
    }
    let mut rem = num.to_vec();
    let dlead = den.last().unwrap();
    let qlen = num.len() - den.len() + 1;
    let mut q = vec![rat::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = &rem[i + den.len() - 1] / dlead;
        q[i] = c.clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            let s = &c * dj;
            rem[i + j] -= s;
        }
    }
    if rem.iter().all(|x| x.is_zero()) {
        Some(q)
    } else {
        None
    }
}

/// Φ_d(x), by recursive division of x^d − 1 by the proper cyclotomic factors.
fn cyclotomic(d: usize) -> Vec<Rational> {
    if d == 1 {
        return vec![-rat::one(), rat::one()];
    }
    let mut poly = vec![rat::zero(); d + 1];
    poly[0] = -rat::one();
    poly[d] = rat::one();
    for e in divisors(d) {
        if e == d {
            continue;
        }
        poly = poly_divide_exact(&poly, &cyclotomic(e)).expect("cyclotomic division");
    }
    poly
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Exceptional cohomology of one crepant resolution, with its literature
/// citation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ResolutionData {
    pub b2_exceptional: usize,
    pub b3_exceptional: usize,
    pub citation: String,
}

/// Classification data for the supported quotient models: A-series surface
/// records plus free cyclic 3-fold records, keyed by group order (and
/// rotation weights in the 3-fold case). The values are standard external
/// data, never recomputed here.
#[derive(Clone, Debug)]
pub struct AdeTable {
    a_series: BTreeMap<usize, ResolutionData>,
    c3_series: BTreeMap<(usize, [usize; 3]), ResolutionData>,
}

impl AdeTable {
    /// Parses the versioned text asset: `A k b2 b3 citation` or
    /// `C3 k a,b,c b2 b3 citation`, one record per line.
    pub fn parse(text: &str) -> Result<AdeTable, ResolutionError> {
        let mut a_series = BTreeMap::new();
        let mut c3_series = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad =
                |msg: &str| ResolutionError::BadTable { line: lineno + 1, msg: msg.to_string() };
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some("A") => {
                    let k: usize = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("missing order"))?;
                    let b2: usize = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("missing b2"))?;
                    let b3: usize = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("missing b3"))?;
                    let citation = parts.collect::<Vec<_>>().join(" ");
                    a_series.insert(
                        k,
                        ResolutionData { b2_exceptional: b2, b3_exceptional: b3, citation },
                    );
                }
                Some("C3") => {
                    let k: usize = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("missing order"))?;
                    let weights_str = parts.next().ok_or_else(|| bad("missing weights"))?;
                    let ws: Vec<usize> = weights_str
                        .split(',')
                        .map(|s| s.parse().map_err(|_| bad("bad weight")))
                        .collect::<Result<_, _>>()?;
                    if ws.len() != 3 {
                        return Err(bad("expected three weights"));
                    }
                    let mut weights = [ws[0], ws[1], ws[2]];
                    weights.sort();
                    let b2: usize = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("missing b2"))?;
                    let b3: usize = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("missing b3"))?;
                    let citation = parts.collect::<Vec<_>>().join(" ");
                    c3_series.insert(
                        (k, weights),
                        ResolutionData { b2_exceptional: b2, b3_exceptional: b3, citation },
                    );
                }
                Some(other) => return Err(bad(&format!("unknown record type {other}"))),
                None => unreachable!(),
            }
        }
        Ok(AdeTable { a_series, c3_series })
    }

    /// The table bundled with the crate.
    pub fn bundled() -> AdeTable {
        AdeTable::parse(&crate::assets::asset_text("ade_table")).expect("bundled table parses")
    }
}

/// Looks up the exceptional-set cohomology of a supported local model.
pub fn resolution_data(
    model: &LocalModel,
    table: &AdeTable,
) -> Result<ResolutionData, ResolutionError> {
    match &model.kind {
        LocalModelKind::C2Quotient { order } => {
            table.a_series.get(order).cloned().ok_or_else(|| {
                ResolutionError::UnsupportedModel(format!("no A-series record for order {order}"))
            })
        }
        LocalModelKind::C3Quotient { order, weights } => {
            table.c3_series.get(&(*order, *weights)).cloned().ok_or_else(|| {
                ResolutionError::UnsupportedModel(format!(
                    "no 3-fold record for order {order} weights {weights:?}"
                ))
            })
        }
        LocalModelKind::Unsupported { reason } => {
            Err(ResolutionError::UnsupportedModel(reason.clone()))
        }
    }
}

/// Betti numbers b⁰..bⁿ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BettiVector {
    pub b: Vec<usize>,
}

impl BettiVector {
    pub fn poincare_symmetric(&self) -> bool {
        let n = self.b.len();
        (0..n).all(|k| self.b[k] == self.b[n - 1 - k])
    }
}

impl std::fmt::Display for BettiVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.b.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Betti numbers of Tⁿ/Γ: bᵏ is the dimension of the Γ-invariant part of
/// H^k(Tⁿ), computed exactly as the group average of the traces of the
/// induced action on k-forms.
pub fn orbifold_betti(group: &FiniteIsomGroup) -> Result<BettiVector, ResolutionError> {
    let n = group.dim();
    let order = rat::int(group.order() as i64);
    let mut b = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut total = rat::zero();
        for g in group.elements() {
            total += exterior_power_trace(&g.linear().to_qmat(), k);
        }
        let avg = total / &order;
        if !avg.is_integer() || avg.is_negative() {
            return Err(ResolutionError::NonIntegralTrace { degree: k, value: avg.to_string() });
        }
        let value = avg.to_integer().to_string().parse::<usize>().expect("small Betti number");
        b.push(value);
    }
    Ok(BettiVector { b })
}

/// Trace of Λᵏ M: the sum of the principal k×k minors.
fn exterior_power_trace(m: &QMat, k: usize) -> Rational {
    let n = m.nrows();
    if k == 0 {
        return rat::one();
    }
    if k > n {
        return rat::zero();
    }
    let mut total = rat::zero();
    for subset in crate::forms::combinations(n as u8, k) {
        let mut sub = QMat::zeros(k, k);
        for (i, &r) in subset.iter().enumerate() {
            for (j, &c) in subset.iter().enumerate() {
                sub[(i, j)] = m[(r as usize - 1, c as usize - 1)].clone();
            }
        }
        total += sub.det();
    }
    total
}

/// b² and b³ of the resolved manifold: the orbifold contribution plus, for
/// each singular orbit, the exceptional classes crossed with the component's
/// own torus factor. Every component must carry a supported model and the
/// residual monodromy must be trivial (setwise = pointwise stabilizer).
pub fn resolved_betti(
    base: &BettiVector,
    components: &[(SingularComponent, LocalModel, ResolutionData)],
) -> Result<(usize, usize), ResolutionError> {
    assert!(base.b.len() >= 4, "need b^0..b^3 of the base");
    let mut b2 = base.b[2];
    let mut b3 = base.b[3];
    for (component, model, data) in components {
        if !model.is_supported() {
            return Err(ResolutionError::UnsupportedModel(model.describe()));
        }
        if component.setwise_stabilizer.len() != component.pointwise_stabilizer.len() {
            return Err(ResolutionError::NonFreeMonodromy(format!(
                "setwise stabilizer order {} exceeds pointwise order {} on the component at {:?}",
                component.setwise_stabilizer.len(),
                component.pointwise_stabilizer.len(),
                component.representative.offset(),
            )));
        }
        let fiber_b1 = component.representative.dim();
        b2 += data.b2_exceptional;
        b3 += data.b2_exceptional * fiber_b1 + data.b3_exceptional;
    }
    Ok((b2, b3))
}
