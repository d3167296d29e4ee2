//! Exact verification of hypersurfaces in weighted projective spaces.
//!
//! A weighted projective space P(a₀,…,a_m) is the quotient of ℂ^{m+1}∖{0} by
//! the action u·(z₀,…,z_m) = (u^{a₀}z₀,…,u^{a_m}z_m). Points with support on
//! coordinates whose weights share a common factor are orbifold points of
//! the ambient space; a hypersurface acquires quotient singularities where
//! it meets those strata. This module locates such points exactly (over
//! ℚ(ζ₁₂)), checks the Jacobian criterion of the affine cone at each, and
//! verifies the structure of an antiholomorphic involution: that it maps the
//! hypersurface to itself, squares to a weighted scalar, fixes the singular
//! points, and does not fix sampled smooth points.

use std::collections::BTreeMap;


use thiserror::Error;

use super::cyclotomic::{kth_roots, Cyc, RootsOutcome};
use crate::rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WpsError {
    #[error("bad weights: {0}")]
    BadWeights(String),
    #[error("monomial {monomial:?} has weighted degree {got}, expected {expected}")]
    NotWeightedHomogeneous { monomial: Vec<u32>, got: u64, expected: u64 },
    #[error("singular locus is positive-dimensional on the stratum {support:?}")]
    PositiveDimensionalSingularLocus { support: Vec<usize> },
    #[error("degenerate singular point at {point}: the affine cone fails the Jacobian criterion")]
    DegenerateSingularPoint { point: String },
    #[error("cannot certify the singular set on stratum {support:?}: {reason}")]
    UnsupportedStratumPolynomial { support: Vec<usize>, reason: String },
    #[error("involution is not well defined on the hypersurface: {witness}")]
    NotWellDefined { witness: String },
    #[error("involution does not square to a weighted unit: {witness}")]
    NotInvolutive { witness: String },
}

/// A hypersurface of weighted-homogeneous degree `degree` in
/// P(weights), with exact coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WpsHypersurface {
    weights: Vec<u32>,
    degree: u32,
    /// Monomial exponent vectors with nonzero coefficients, sorted.
    terms: BTreeMap<Vec<u32>, Cyc>,
}

impl WpsHypersurface {
    pub fn new(
        weights: Vec<u32>,
        degree: u32,
        terms: Vec<(Vec<u32>, Cyc)>,
    ) -> Result<Self, WpsError> {
        if weights.is_empty() || weights.contains(&0) {
            return Err(WpsError::BadWeights("weights must be positive".into()));
        }
        let g = weights.iter().fold(0u32, |acc, &a| gcd(acc as u64, a as u64) as u32);
        if g != 1 {
            return Err(WpsError::BadWeights(format!("common factor {g}")));
        }
        let mut map: BTreeMap<Vec<u32>, Cyc> = BTreeMap::new();
        for (mono, coeff) in terms {
            if mono.len() != weights.len() {
                return Err(WpsError::BadWeights(format!(
                    "monomial {mono:?} has {} exponents for {} coordinates",
                    mono.len(),
                    weights.len()
                )));
            }
            let wdeg: u64 =
                mono.iter().zip(&weights).map(|(&e, &a)| e as u64 * a as u64).sum();
            if wdeg != degree as u64 {
                return Err(WpsError::NotWeightedHomogeneous {
                    monomial: mono,
                    got: wdeg,
                    expected: degree as u64,
                });
            }
            let entry = map.entry(mono).or_insert_with(Cyc::zero);
            *entry = entry.add(&coeff);
        }
        map.retain(|_, c| !c.is_zero());
        Ok(WpsHypersurface { weights, degree, terms: map })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coords(&self) -> usize {
        self.weights.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Cyc)> {
        self.terms.iter()
    }

    pub fn evaluate(&self, coords: &[Cyc]) -> Cyc {
        let mut total = Cyc::zero();
        for (mono, coeff) in &self.terms {
            let mut product = coeff.clone();
            for (z, &e) in coords.iter().zip(mono.iter()) {
                if e > 0 {
                    product = product.mul(&z.pow(e));
                }
            }
            total = total.add(&product);
        }
        total
    }

    /// Gradient of the defining polynomial of the affine cone.
    pub fn gradient(&self, coords: &[Cyc]) -> Vec<Cyc> {
        let n = self.coords();
        let mut grad = vec![Cyc::zero(); n];
        for (mono, coeff) in &self.terms {
            for t in 0..n {
                if mono[t] == 0 {
                    continue;
                }
                let mut product = coeff.scale(&rat::int(mono[t] as i64));
                for (s, z) in coords.iter().enumerate() {
                    let e = if s == t { mono[s] - 1 } else { mono[s] };
                    if e > 0 {
                        product = product.mul(&z.pow(e));
                    }
                }
                grad[t] = grad[t].add(&product);
            }
        }
        grad
    }

    /// d = Σ weights: the adjunction criterion for a quasi-smooth
    /// hypersurface to have trivial canonical bundle.
    pub fn canonical_degree_check(&self) -> bool {
        let sum: u64 = self.weights.iter().map(|&a| a as u64).sum();
        sum == self.degree as u64
    }
}

/// A point of the weighted projective space, as homogeneous coordinates in
/// ℚ(ζ₁₂), not all zero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct WpsPoint {
    coords: Vec<Cyc>,
}

impl WpsPoint {
    pub fn new(coords: Vec<Cyc>) -> Self {
        assert!(coords.iter().any(|c| !c.is_zero()), "not all coordinates may vanish");
        WpsPoint { coords }
    }

    pub fn coords(&self) -> &[Cyc] {
        &self.coords
    }

    fn support(&self) -> Vec<usize> {
        (0..self.coords.len()).filter(|&i| !self.coords[i].is_zero()).collect()
    }
}

impl std::fmt::Display for WpsPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Equality of points under the weighted ℂ*-action, decided exactly.
///
/// A rescaling u must satisfy u^{a_i} = q_i/p_i on the common support. Its
/// g-th power (g the gcd of the active weights) is pinned to an explicit
/// field element, and the residual freedom is a g-th root of unity whose
/// compatibility reduces to congruences solvable by enumeration.
pub fn points_equivalent(weights: &[u32], p: &WpsPoint, q: &WpsPoint) -> bool {
    assert_eq!(weights.len(), p.coords.len());
    assert_eq!(weights.len(), q.coords.len());
    let support = p.support();
    if support != q.support() {
        return false;
    }
    let ratios: Vec<Cyc> =
        support.iter().map(|&i| q.coords[i].div(&p.coords[i])).collect();
    let active: Vec<u64> = support.iter().map(|&i| weights[i] as u64).collect();
    // Bezout coefficients for the gcd of the active weights.
    let (g, coeffs) = multi_extended_gcd(&active);
    let mut u_pow_g = Cyc::one();
    for (r, &c) in ratios.iter().zip(coeffs.iter()) {
        let factor = if c >= 0 { r.pow(c as u32) } else { r.inv().pow((-c) as u32) };
        u_pow_g = u_pow_g.mul(&factor);
    }
    // Residual conditions: eta^{a_i} = ratio_i / (u^g)^{a_i/g} for a g-th
    // root of unity eta.
    let mut residual_angles = Vec::new();
    for (r, &a) in ratios.iter().zip(active.iter()) {
        let forced = u_pow_g.pow((a / g) as u32);
        let w = r.div(&forced);
        match w.as_root_of_unity() {
            Some(k) => residual_angles.push((a, k)),
            None => return false,
        }
    }
    (0..g).any(|m| {
        residual_angles
            .iter()
            .all(|&(a, k)| (12 * m as usize * a as usize) % (12 * g as usize) == (k * g as usize) % (12 * g as usize))
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// gcd of several positive integers with Bezout coefficients.
fn multi_extended_gcd(values: &[u64]) -> (u64, Vec<i64>) {
    assert!(!values.is_empty());
    let mut g = values[0] as i64;
    let mut coeffs = vec![1i64];
    for &v in &values[1..] {
        let (ng, x, y) = extended_gcd(g, v as i64);
        for c in coeffs.iter_mut() {
            *c *= x;
        }
        coeffs.push(y);
        g = ng;
    }
    (g as u64, coeffs)
}

fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = extended_gcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

/// A singular point of the hypersurface with its local quotient order.
#[derive(Clone, Debug)]
pub struct SingularPoint {
    pub point: WpsPoint,
    pub stabilizer_order: u32,
    pub support: Vec<usize>,
}

/// Locates the singular points of the hypersurface exactly.
///
/// Candidate singularities live on the ambient strata: supports whose active
/// weights share a factor. Each stratum is intersected with the hypersurface
/// in closed form (coordinate points and binomial curves on two-coordinate
/// strata), and each intersection point must pass the Jacobian criterion of
/// the affine cone. Strata of dimension ≥ 2 always meet a hypersurface in a
/// positive-dimensional set and are rejected.
pub fn singular_points(y: &WpsHypersurface) -> Result<Vec<SingularPoint>, WpsError> {
    let n = y.coords();
    let mut out: Vec<SingularPoint> = Vec::new();
    for mask in 1u32..(1 << n) {
        let support: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let order = support.iter().fold(0u64, |acc, &i| gcd(acc, y.weights[i] as u64));
        if order <= 1 {
            continue;
        }
        let restricted: Vec<(&Vec<u32>, &Cyc)> = y
            .terms()
            .filter(|(mono, _)| {
                (0..n).all(|i| mono[i] == 0 || support.contains(&i))
            })
            .collect();
        match support.len() {
            1 => {
                let i = support[0];
                if restricted.is_empty() {
                    // The coordinate point lies on the hypersurface.
                    let mut coords = vec![Cyc::zero(); n];
                    coords[i] = Cyc::one();
                    let point = WpsPoint::new(coords);
                    ensure_cone_smooth(y, &point)?;
                    out.push(SingularPoint {
                        point,
                        stabilizer_order: order as u32,
                        support,
                    });
                }
            }
            2 => {
                let (i, j) = (support[0], support[1]);
                if restricted.is_empty() {
                    return Err(WpsError::PositiveDimensionalSingularLocus { support });
                }
                // Dehomogenize with z_i = 1, u = z_j; only points with both
                // coordinates nonzero belong to this stratum (the others are
                // handled by the singleton supports).
                let mut by_exp: BTreeMap<u32, Cyc> = BTreeMap::new();
                for (mono, coeff) in &restricted {
                    let entry = by_exp.entry(mono[j]).or_insert_with(Cyc::zero);
                    *entry = entry.add(coeff);
                }
                by_exp.retain(|_, c| !c.is_zero());
                if by_exp.is_empty() {
                    return Err(WpsError::PositiveDimensionalSingularLocus { support });
                }
                let min_exp = *by_exp.keys().next().unwrap();
                let max_exp = *by_exp.keys().next_back().unwrap();
                if min_exp == max_exp {
                    // A single monomial: no points with both coordinates
                    // nonzero.
                    continue;
                }
                if by_exp.len() != 2 {
                    return Err(WpsError::UnsupportedStratumPolynomial {
                        support,
                        reason: format!(
                            "stratum polynomial has {} terms; only binomials are solved exactly",
                            by_exp.len()
                        ),
                    });
                }
                let c_low = by_exp[&min_exp].clone();
                let c_high = by_exp[&max_exp].clone();
                let target = c_low.neg().div(&c_high);
                let roots = match kth_roots(&target, max_exp - min_exp) {
                    RootsOutcome::Complete(r) => r,
                    RootsOutcome::Uncertifiable => {
                        return Err(WpsError::UnsupportedStratumPolynomial {
                            support,
                            reason: "root set not certifiable in Q(zeta12)".into(),
                        })
                    }
                };
                for root in roots {
                    let mut coords = vec![Cyc::zero(); n];
                    coords[i] = Cyc::one();
                    coords[j] = root;
                    let point = WpsPoint::new(coords);
                    debug_assert!(y.evaluate(point.coords()).is_zero());
                    ensure_cone_smooth(y, &point)?;
                    out.push(SingularPoint {
                        point,
                        stabilizer_order: order as u32,
                        support: support.clone(),
                    });
                }
            }
            _ => {
                // A hypersurface meets a stratum of projective dimension ≥ 2
                // in a positive-dimensional set (possibly the whole stratum).
                return Err(WpsError::PositiveDimensionalSingularLocus { support });
            }
        }
    }
    out.sort_by(|a, b| (&a.support, &a.point).cmp(&(&b.support, &b.point)));
    Ok(out)
}

fn ensure_cone_smooth(y: &WpsHypersurface, point: &WpsPoint) -> Result<(), WpsError> {
    let grad = y.gradient(point.coords());
    if grad.iter().all(|c| c.is_zero()) {
        return Err(WpsError::DegenerateSingularPoint { point: point.to_string() });
    }
    Ok(())
}

/// Deterministic sample of smooth points on the hypersurface: solutions
/// supported on weight-coprime coordinate pairs whose restricted equation is
/// a pure binomial.
pub fn sample_smooth_points(y: &WpsHypersurface, limit: usize) -> Vec<WpsPoint> {
    let n = y.coords();
    let mut out = Vec::new();
    'pairs: for i in 0..n {
        for j in i + 1..n {
            if out.len() >= limit {
                break 'pairs;
            }
            if gcd(y.weights[i] as u64, y.weights[j] as u64) != 1 {
                continue;
            }
            let mut pure_i = None;
            let mut pure_j = None;
            let mut mixed = false;
            for (mono, coeff) in y.terms() {
                let support: Vec<usize> =
                    (0..n).filter(|&t| mono[t] > 0).collect();
                if support == [i] {
                    pure_i = Some((mono[i], coeff.clone()));
                } else if support == [j] {
                    pure_j = Some((mono[j], coeff.clone()));
                } else if support.iter().all(|t| *t == i || *t == j) && support.len() == 2 {
                    mixed = true;
                }
            }
            let (Some((_, ci)), Some((ej, cj))) = (pure_i, pure_j) else { continue };
            if mixed {
                continue;
            }
            let target = ci.neg().div(&cj);
            if let RootsOutcome::Complete(roots) = kth_roots(&target, ej) {
                for root in roots {
                    if out.len() >= limit {
                        break 'pairs;
                    }
                    let mut coords = vec![Cyc::zero(); n];
                    coords[i] = Cyc::one();
                    coords[j] = root;
                    debug_assert!(y.evaluate(&coords).is_zero());
                    let point = WpsPoint::new(coords);
                    if !y.gradient(point.coords()).iter().all(|c| c.is_zero()) {
                        out.push(point);
                    }
                }
            }
        }
    }
    out
}

/// An antiholomorphic map: output coordinate i is sign·conj(z_source).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AntiholInvolution {
    /// (source index, sign) per output coordinate.
    images: Vec<(usize, i8)>,
}

impl AntiholInvolution {
    pub fn new(images: Vec<(usize, i8)>) -> Result<Self, WpsError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &(src, sign) in &images {
            if src >= n || (sign != 1 && sign != -1) {
                return Err(WpsError::NotWellDefined {
                    witness: format!("bad coordinate image {src} sign {sign}"),
                });
            }
            if seen[src] {
                return Err(WpsError::NotWellDefined {
                    witness: format!("coordinate {src} used twice"),
                });
            }
            seen[src] = true;
        }
        Ok(AntiholInvolution { images })
    }

    pub fn images(&self) -> &[(usize, i8)] {
        &self.images
    }

    pub fn apply(&self, p: &WpsPoint) -> WpsPoint {
        let coords = self
            .images
            .iter()
            .map(|&(src, sign)| {
                let c = p.coords()[src].conj();
                if sign < 0 {
                    c.neg()
                } else {
                    c
                }
            })
            .collect();
        WpsPoint::new(coords)
    }
}

impl std::fmt::Display for AntiholInvolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .images
            .iter()
            .map(|&(src, sign)| format!("{}c{src}", if sign < 0 { "-" } else { "+" }))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvolutionReport {
    /// The scalar λ with (F ∘ σ) = conj ∘ (λ F).
    pub proportionality: Cyc,
    /// Description of the weighted unit realizing σ².
    pub square_unit: String,
    /// Each singular point with whether σ fixes it.
    pub singular_fixed: Vec<(String, bool)>,
    pub samples_checked: usize,
    pub fixed_smooth_samples: usize,
}

impl InvolutionReport {
    /// The involution has exactly the singular points as fixed points, as
    /// far as the exact checks and the sample can tell.
    pub fn isolated_fixed_points(&self) -> bool {
        self.singular_fixed.iter().all(|(_, fixed)| *fixed) && self.fixed_smooth_samples == 0
    }
}

/// Verifies that σ maps the hypersurface to itself, squares to a weighted
/// unit, fixes every singular point, and fixes no sampled smooth point.
pub fn verify_involution(
    y: &WpsHypersurface,
    sigma: &AntiholInvolution,
) -> Result<InvolutionReport, WpsError> {
    let n = y.coords();
    if sigma.images.len() != n {
        return Err(WpsError::NotWellDefined {
            witness: format!("{} coordinate images for {} coordinates", sigma.images.len(), n),
        });
    }
    // Weight compatibility: each output coordinate must carry the weight of
    // its source.
    for (i, &(src, _)) in sigma.images.iter().enumerate() {
        if y.weights[i] != y.weights[src] {
            return Err(WpsError::NotWellDefined {
                witness: format!(
                    "coordinate {i} (weight {}) sources coordinate {src} (weight {})",
                    y.weights[i], y.weights[src]
                ),
            });
        }
    }
    // (F ∘ σ)(z) = conj(G(z)) with G as below; σ maps Y to Y iff G = λF.
    let mut g_terms: BTreeMap<Vec<u32>, Cyc> = BTreeMap::new();
    for (mono, coeff) in y.terms() {
        let mut image_mono = vec![0u32; n];
        let mut sign = 1i64;
        for (i, &(src, s)) in sigma.images.iter().enumerate() {
            image_mono[src] = mono[i];
            if s < 0 && mono[i] % 2 == 1 {
                sign = -sign;
            }
        }
        let c = coeff.conj().scale(&rat::int(sign));
        let entry = g_terms.entry(image_mono).or_insert_with(Cyc::zero);
        *entry = entry.add(&c);
    }
    g_terms.retain(|_, c| !c.is_zero());
    let f_terms: BTreeMap<Vec<u32>, Cyc> =
        y.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    if g_terms.keys().ne(f_terms.keys()) {
        let witness = g_terms
            .keys()
            .find(|k| !f_terms.contains_key(*k))
            .or_else(|| f_terms.keys().find(|k| !g_terms.contains_key(*k)))
            .cloned()
            .unwrap_or_default();
        return Err(WpsError::NotWellDefined {
            witness: format!("transported polynomial differs at monomial {witness:?}"),
        });
    }
    let first = f_terms.keys().next().expect("nonzero polynomial");
    let lambda = g_terms[first].div(&f_terms[first]);
    for (mono, c) in &f_terms {
        if g_terms[mono] != c.mul(&lambda) {
            return Err(WpsError::NotWellDefined {
                witness: format!("transported polynomial is not proportional at {mono:?}"),
            });
        }
    }
    // σ² is the coordinatewise scaling by s_i·s_{σ(i)} with permutation σ².
    for (i, &(src, _)) in sigma.images.iter().enumerate() {
        let (src2, _) = sigma.images[src];
        if src2 != i {
            return Err(WpsError::NotInvolutive {
                witness: format!("square moves coordinate {i} to {src2}"),
            });
        }
    }
    let square_signs: Vec<i8> = sigma
        .images
        .iter()
        .map(|&(src, s)| s * sigma.images[src].1)
        .collect();
    let square_unit = match weighted_unit_for_signs(&y.weights, &square_signs) {
        Some(desc) => desc,
        None => {
            return Err(WpsError::NotInvolutive {
                witness: format!("square scales coordinates by {square_signs:?}, not a weighted unit"),
            })
        }
    };
    let singular = singular_points(y)?;
    let singular_fixed: Vec<(String, bool)> = singular
        .iter()
        .map(|sp| {
            let image = sigma.apply(&sp.point);
            (sp.point.to_string(), points_equivalent(&y.weights, &sp.point, &image))
        })
        .collect();
    let samples = sample_smooth_points(y, 24);
    let fixed_smooth_samples = samples
        .iter()
        .filter(|p| points_equivalent(&y.weights, p, &sigma.apply(p)))
        .count();
    Ok(InvolutionReport {
        proportionality: lambda,
        square_unit,
        singular_fixed,
        samples_checked: samples.len(),
        fixed_smooth_samples,
    })
}

/// Finds u ∈ ℂ* with u^{a_i} = v_i for sign vectors v; enumeration over the
/// roots of unity of order dividing 2·lcm(weights).
fn weighted_unit_for_signs(weights: &[u32], signs: &[i8]) -> Option<String> {
    let lcm = weights.iter().fold(1u64, |acc, &a| acc / gcd(acc, a as u64) * a as u64);
    let modulus = 2 * lcm;
    'outer: for m in 0..modulus {
        for (&a, &s) in weights.iter().zip(signs.iter()) {
            let angle_num = (m * a as u64) % modulus; // u^a = e^{2πi·angle/modulus}
            let want = if s < 0 { lcm } else { 0 }; // -1 = e^{πi} = e^{2πi·lcm/modulus}
            if angle_num != want {
                continue 'outer;
            }
        }
        return Some(format!("u = e^(2 pi i {m}/{modulus})"));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The degree-12 hypersurface in P(1,1,1,1,4,4) with the quaternionic
    /// involution.
    fn example() -> (WpsHypersurface, AntiholInvolution) {
        let weights = vec![1, 1, 1, 1, 4, 4];
        let mono = |entries: [u32; 6]| entries.to_vec();
        let y = WpsHypersurface::new(
            weights,
            12,
            vec![
                (mono([12, 0, 0, 0, 0, 0]), Cyc::one()),
                (mono([0, 12, 0, 0, 0, 0]), Cyc::one()),
                (mono([0, 0, 12, 0, 0, 0]), Cyc::one()),
                (mono([0, 0, 0, 12, 0, 0]), Cyc::one()),
                (mono([0, 0, 0, 0, 3, 0]), Cyc::one()),
                (mono([0, 0, 0, 0, 0, 3]), Cyc::one()),
            ],
        )
        .unwrap();
        let sigma = AntiholInvolution::new(vec![
            (1, 1),
            (0, -1),
            (3, 1),
            (2, -1),
            (5, 1),
            (4, 1),
        ])
        .unwrap();
        (y, sigma)
    }

    fn point(coords: [Cyc; 6]) -> WpsPoint {
        WpsPoint::new(coords.to_vec())
    }

    #[test]
    fn canonical_degree() {
        let (y, _) = example();
        assert!(y.canonical_degree_check());
        // The quintic 3-fold.
        let quintic = WpsHypersurface::new(
            vec![1, 1, 1, 1, 1],
            5,
            vec![(vec![5, 0, 0, 0, 0], Cyc::one()), (vec![0, 0, 0, 0, 5], Cyc::one())],
        )
        .unwrap();
        assert!(quintic.canonical_degree_check());
        // Degree 11 with the example weights fails.
        let wrong = WpsHypersurface::new(vec![1, 1, 1, 1, 4, 4], 11, vec![]).unwrap();
        assert!(!wrong.canonical_degree_check());
    }

    #[test]
    fn example_has_three_singular_points_of_order_four() {
        let (y, _) = example();
        let points = singular_points(&y).unwrap();
        assert_eq!(points.len(), 3);
        for sp in &points {
            assert_eq!(sp.stabilizer_order, 4);
            assert_eq!(sp.support, vec![4, 5]);
        }
        // The three points are [0,0,0,0,1,w] with w³ = -1.
        let expected: Vec<WpsPoint> = [Cyc::zeta_pow(2), Cyc::from_int(-1), Cyc::zeta_pow(10)]
            .into_iter()
            .map(|w| {
                point([Cyc::zero(), Cyc::zero(), Cyc::zero(), Cyc::zero(), Cyc::one(), w])
            })
            .collect();
        for e in &expected {
            assert!(
                points.iter().any(|sp| points_equivalent(y.weights(), &sp.point, e)),
                "missing singular point {e}"
            );
        }
    }

    #[test]
    fn fermat_cubic_surface_is_smooth() {
        let y = WpsHypersurface::new(
            vec![1, 1, 1, 1],
            3,
            vec![
                (vec![3, 0, 0, 0], Cyc::one()),
                (vec![0, 3, 0, 0], Cyc::one()),
                (vec![0, 0, 3, 0], Cyc::one()),
                (vec![0, 0, 0, 3], Cyc::one()),
            ],
        )
        .unwrap();
        assert!(singular_points(&y).unwrap().is_empty());
    }

    #[test]
    fn dropped_pure_power_gives_degenerate_point() {
        // Without the z4³ monomial the coordinate point [0,0,0,0,1,0] lies
        // on the hypersurface and the cone gradient vanishes there.
        let y = WpsHypersurface::new(
            vec![1, 1, 1, 1, 4, 4],
            12,
            vec![
                (vec![12, 0, 0, 0, 0, 0], Cyc::one()),
                (vec![0, 12, 0, 0, 0, 0], Cyc::one()),
                (vec![0, 0, 12, 0, 0, 0], Cyc::one()),
                (vec![0, 0, 0, 12, 0, 0], Cyc::one()),
                (vec![0, 0, 0, 0, 0, 3], Cyc::one()),
            ],
        )
        .unwrap();
        let err = singular_points(&y).unwrap_err();
        assert!(matches!(err, WpsError::DegenerateSingularPoint { .. }), "{err}");
    }

    #[test]
    fn point_equivalence_under_weighted_action() {
        let weights = [1u32, 1, 1, 1, 4, 4];
        let p = point([
            Cyc::zero(),
            Cyc::zero(),
            Cyc::zero(),
            Cyc::zero(),
            Cyc::one(),
            Cyc::from_int(-1),
        ]);
        // Scaling by u = i: (iz4... ) multiplies weight-4 coordinates by i⁴=1
        // and weight-1 coordinates by i.
        let q = point([
            Cyc::zero(),
            Cyc::zero(),
            Cyc::zero(),
            Cyc::zero(),
            Cyc::from_int(-1),
            Cyc::one(),
        ]);
        // (0,..,0,-1,1) = u⁴·(0,..,0,1,-1) needs u⁴ = -1: not solvable by a
        // field unit but solvable in C*; equivalence must hold.
        assert!(points_equivalent(&weights, &p, &q));
        let r = point([
            Cyc::zero(),
            Cyc::zero(),
            Cyc::zero(),
            Cyc::zero(),
            Cyc::one(),
            Cyc::zeta_pow(2),
        ]);
        assert!(!points_equivalent(&weights, &p, &r));
        // Different support is never equivalent.
        let s = point([
            Cyc::one(),
            Cyc::zero(),
            Cyc::zero(),
            Cyc::zero(),
            Cyc::one(),
            Cyc::from_int(-1),
        ]);
        assert!(!points_equivalent(&weights, &p, &s));
        // A weight-1 coordinate pins the unit completely.
        let t1 = point([
            Cyc::one(),
            Cyc::zero(),
            Cyc::zero(),
            Cyc::zero(),
            Cyc::one(),
            Cyc::zero(),
        ]);
        let t2 = point([
            Cyc::one(),
            Cyc::zero(),
            Cyc::zero(),
            Cyc::zero(),
            Cyc::zeta_pow(4),
            Cyc::zero(),
        ]);
        assert!(points_equivalent(&weights, &t1, &t1.clone()));
        assert!(!points_equivalent(&weights, &t1, &t2));
    }

    #[test]
    fn involution_verifies_on_the_example() {
        let (y, sigma) = example();
        let report = verify_involution(&y, &sigma).unwrap();
        assert_eq!(report.proportionality, Cyc::one());
        assert_eq!(report.singular_fixed.len(), 3);
        assert!(report.isolated_fixed_points(), "{report:?}");
        assert!(report.samples_checked > 0);
        assert_eq!(report.fixed_smooth_samples, 0);
    }

    #[test]
    fn plain_conjugation_fixes_smooth_points() {
        let (y, _) = example();
        let conj = AntiholInvolution::new(vec![
            (0, 1),
            (1, 1),
            (2, 1),
            (3, 1),
            (4, 1),
            (5, 1),
        ])
        .unwrap();
        let report = verify_involution(&y, &conj).unwrap();
        // Well defined and involutive, but real points of the real
        // hypersurface are fixed: the isolated-fixed-point requirement
        // fails on the sample.
        assert!(report.fixed_smooth_samples > 0);
        assert!(!report.isolated_fixed_points());
    }

    #[test]
    fn sign_flip_breaks_well_definedness() {
        let (y, _) = example();
        let bad = AntiholInvolution::new(vec![
            (1, 1),
            (0, -1),
            (3, 1),
            (2, -1),
            (5, 1),
            (4, -1),
        ])
        .unwrap();
        let err = verify_involution(&y, &bad).unwrap_err();
        assert!(matches!(err, WpsError::NotWellDefined { .. }), "{err}");
    }

    #[test]
    fn non_involutive_square_is_detected() {
        // A 3-cycle on the first three coordinates of the Fermat cubic in
        // P^3: well defined on the polynomial but not an involution.
        let y = WpsHypersurface::new(
            vec![1, 1, 1, 1],
            3,
            vec![
                (vec![3, 0, 0, 0], Cyc::one()),
                (vec![0, 3, 0, 0], Cyc::one()),
                (vec![0, 0, 3, 0], Cyc::one()),
                (vec![0, 0, 0, 3], Cyc::one()),
            ],
        )
        .unwrap();
        let rot = AntiholInvolution::new(vec![(1, 1), (2, 1), (0, 1), (3, 1)]).unwrap();
        let err = verify_involution(&y, &rot).unwrap_err();
        assert!(matches!(err, WpsError::NotInvolutive { .. }));
    }

    #[test]
    fn involution_report_is_reproducible() {
        let (y, sigma) = example();
        let first = verify_involution(&y, &sigma).unwrap();
        let second = verify_involution(&y, &sigma).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn singular_points_ignore_term_order() {
        let weights = vec![1, 1, 1, 1, 4, 4];
        let mut terms = vec![
            (vec![12, 0, 0, 0, 0, 0], Cyc::one()),
            (vec![0, 12, 0, 0, 0, 0], Cyc::one()),
            (vec![0, 0, 12, 0, 0, 0], Cyc::one()),
            (vec![0, 0, 0, 12, 0, 0], Cyc::one()),
            (vec![0, 0, 0, 0, 3, 0], Cyc::one()),
            (vec![0, 0, 0, 0, 0, 3], Cyc::one()),
        ];
        let forward = WpsHypersurface::new(weights.clone(), 12, terms.clone()).unwrap();
        terms.reverse();
        let reversed = WpsHypersurface::new(weights, 12, terms).unwrap();
        let a: Vec<WpsPoint> =
            singular_points(&forward).unwrap().into_iter().map(|p| p.point).collect();
        let b: Vec<WpsPoint> =
            singular_points(&reversed).unwrap().into_iter().map(|p| p.point).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn weighted_homogeneity_is_enforced() {
        let err = WpsHypersurface::new(
            vec![1, 1, 1, 1, 4, 4],
            12,
            vec![(vec![11, 0, 0, 0, 0, 0], Cyc::one())],
        )
        .unwrap_err();
        assert!(matches!(err, WpsError::NotWeightedHomogeneous { got: 11, .. }));
    }

    #[test]
    fn samples_lie_on_the_hypersurface() {
        let (y, _) = example();
        let samples = sample_smooth_points(&y, 24);
        assert!(!samples.is_empty());
        for p in &samples {
            assert!(y.evaluate(p.coords()).is_zero());
            assert!(!y.gradient(p.coords()).iter().all(|c| c.is_zero()));
        }
    }
}
