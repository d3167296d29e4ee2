//! Exact arithmetic in ℚ(ζ), ζ = e^{iπ/6} a primitive 12th root of unity.
//!
//! Elements are polynomials a₀ + a₁ζ + a₂ζ² + a₃ζ³ reduced modulo the
//! minimal polynomial ζ⁴ − ζ² + 1. The field contains i = ζ³, the primitive
//! sixth roots e^{±iπ/3} = ζ^{±2}, and √3 = ζ + ζ⁻¹, which covers every
//! constant appearing in the weighted-projective verification.

use std::fmt;

use num_traits::Zero;

use crate::rat::{self, kth_root, Rational};

/// An element of ℚ(ζ₁₂).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Cyc {
    c: [Rational; 4],
}

impl Cyc {
    pub fn zero() -> Self {
        Cyc { c: [rat::zero(), rat::zero(), rat::zero(), rat::zero()] }
    }

    pub fn one() -> Self {
        Cyc::from_rational(rat::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyc { c: [r, rat::zero(), rat::zero(), rat::zero()] }
    }

    pub fn from_int(n: i64) -> Self {
        Cyc::from_rational(rat::int(n))
    }

    /// i = ζ³.
    pub fn i() -> Self {
        Cyc::zeta_pow(3)
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(12) as usize;
        // ζ^k for k < 6 via ζ⁴ = ζ² − 1, ζ⁵ = ζ³ − ζ; ζ^{k+6} = −ζ^k.
        let (base, negate) = if k < 6 { (k, false) } else { (k - 6, true) };
        let mut c = [rat::zero(), rat::zero(), rat::zero(), rat::zero()];
        match base {
            0..=3 => c[base] = rat::one(),
            4 => {
                c[2] = rat::one();
                c[0] = -rat::one();
            }
            5 => {
                c[3] = rat::one();
                c[1] = -rat::one();
            }
            _ => unreachable!(),
        }
        let mut z = Cyc { c };
        if negate {
            z = z.neg();
        }
        z
    }

    /// √3 = ζ + ζ¹¹ = 2ζ − ζ⁵-part form.
    pub fn sqrt3() -> Self {
        Cyc::zeta_pow(1).add(&Cyc::zeta_pow(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &Cyc) -> Cyc {
        let mut c = self.c.clone();
        for (x, y) in c.iter_mut().zip(other.c.iter()) {
            *x += y;
        }
        Cyc { c }
    }

    pub fn sub(&self, other: &Cyc) -> Cyc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cyc {
        let mut c = self.c.clone();
        for x in c.iter_mut() {
            *x = -x.clone();
        }
        Cyc { c }
    }

    pub fn mul(&self, other: &Cyc) -> Cyc {
        // Polynomial product, degree ≤ 6, then reduce with
        // ζ⁴ = ζ² − 1, ζ⁵ = ζ³ − ζ, ζ⁶ = −1.
        let mut prod = vec![rat::zero(); 7];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        let c = [
            prod[0].clone() - &prod[4] - &prod[6],
            prod[1].clone() - &prod[5],
            prod[2].clone() + &prod[4],
            prod[3].clone() + &prod[5],
        ];
        Cyc { c }
    }

    pub fn scale(&self, r: &Rational) -> Cyc {
        let mut c = self.c.clone();
        for x in c.iter_mut() {
            *x *= r;
        }
        Cyc { c }
    }

    pub fn pow(&self, mut e: u32) -> Cyc {
        let mut base = self.clone();
        let mut acc = Cyc::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against
    /// the minimal polynomial. Panics on zero.
    pub fn inv(&self) -> Cyc {
        assert!(!self.is_zero(), "division by zero in the cyclotomic field");
        if let Some(q) = self.as_rational() {
            return Cyc::from_rational(q.recip());
        }
        // Extended Euclid in Q[x]: gcd(self, x^4 - x^2 + 1) = 1 since the
        // modulus is irreducible and self has smaller degree.
        let modulus = vec![rat::one(), rat::zero(), -rat::one(), rat::zero(), rat::one()];
        let (mut r0, mut r1) = (modulus, trim(self.c.to_vec()));
        let (mut s0, mut s1) = (vec![rat::zero()], vec![rat::one()]);
        loop {
            if degree(&r1) == 0 {
                let unit = r1[0].clone();
                assert!(!unit.is_zero(), "minimal polynomial is irreducible over Q");
                let mut c = [rat::zero(), rat::zero(), rat::zero(), rat::zero()];
                let reduced = poly_mod_zeta(&s1);
                for (i, x) in reduced.into_iter().enumerate() {
                    c[i] = x / &unit;
                }
                return Cyc { c };
            }
            let (q, rem) = poly_divmod(&r0, &r1);
            let s_next = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s_next;
        }
    }

    pub fn div(&self, other: &Cyc) -> Cyc {
        self.mul(&other.inv())
    }

    /// Complex conjugation: the field automorphism ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Cyc {
        let zbar = Cyc::zeta_pow(-1);
        let mut acc = Cyc::from_rational(self.c[0].clone());
        let mut p = Cyc::one();
        for k in 1..4 {
            p = p.mul(&zbar);
            acc = acc.add(&p.scale(&self.c[k]));
        }
        acc
    }

    /// If the element is q·ζ^k with q rational positive, returns (q, k) with
    /// the smallest such k; zero and other shapes give `None`.
    pub fn as_positive_rational_times_zeta(&self) -> Option<(Rational, usize)> {
        if self.is_zero() {
            return None;
        }
        for k in 0..12 {
            let candidate = self.mul(&Cyc::zeta_pow(-(k as i64)));
            if let Some(q) = candidate.as_rational() {
                if q > rat::zero() {
                    return Some((q, k));
                }
            }
        }
        None
    }

    /// The angle k when the element is exactly ζ^k.
    pub fn as_root_of_unity(&self) -> Option<usize> {
        match self.as_positive_rational_times_zeta() {
            Some((q, k)) if q == rat::one() => Some(k),
            _ => None,
        }
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (k, coeff) in self.c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let var = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if var.is_empty() {
                parts.push(coeff.to_string());
            } else if coeff == &rat::one() {
                parts.push(var);
            } else if coeff == &-rat::one() {
                parts.push(format!("-{var}"));
            } else {
                parts.push(format!("{coeff}{var}"));
            }
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    p
}

fn degree(p: &[Rational]) -> usize {
    p.len() - 1
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = num.to_vec();
    let dl = den.last().unwrap();
    if rem.len() < den.len() {
        return (vec![rat::zero()], trim(rem));
    }
    let qlen = rem.len() - den.len() + 1;
    let mut q = vec![rat::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = &rem[i + den.len() - 1] / dl;
        q[i] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            let s = &c * dj;
            rem[i + j] -= s;
        }
    }
    (trim(q), trim(rem))
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![rat::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Reduces a polynomial in ζ of degree ≤ 5 to the canonical degree-3 basis.
fn poly_mod_zeta(p: &[Rational]) -> Vec<Rational> {
    let mut c = vec![rat::zero(); 4];
    for (k, x) in p.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let z = Cyc::zeta_pow(k as i64);
        for i in 0..4 {
            c[i] += &z.c[i] * x;
        }
    }
    c
}

/// Result of an exact k-th-root computation in the field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RootsOutcome {
    /// The complete set of k-th roots lying in ℚ(ζ₁₂).
    Complete(Vec<Cyc>),
    /// The root set cannot be certified within the supported shapes.
    Uncertifiable,
}

/// All k-th roots of `x` in ℚ(ζ₁₂), for targets of the shape
/// q·ζ^j (q rational ≥ 0, with an optional √3 factor folded in).
///
/// When one root of the searched shape exists, the full root set is that
/// root times the k-th roots of unity in the field, so the answer is
/// complete; when the rational part is an exact k-th power and the angle
/// congruence is unsolvable, nonexistence is certified. Anything else is
/// reported as uncertifiable rather than guessed.
pub fn kth_roots(x: &Cyc, k: u32) -> RootsOutcome {
    assert!(k >= 1);
    if x.is_zero() {
        return RootsOutcome::Complete(vec![Cyc::zero()]);
    }
    // Try x = q ζ^j directly, then with a √3 factored out.
    let shapes: [(Option<Rational>, Option<usize>, bool); 2] = {
        let plain = x.as_positive_rational_times_zeta();
        let adjusted = x.div(&Cyc::sqrt3()).as_positive_rational_times_zeta();
        [
            (plain.clone().map(|p| p.0), plain.map(|p| p.1), false),
            (adjusted.clone().map(|p| p.0), adjusted.map(|p| p.1), true),
        ]
    };
    let mut found: Vec<Cyc> = Vec::new();
    let mut certified_empty = false;
    for (q, j, with_sqrt3) in shapes {
        let (Some(q), Some(j)) = (q, j) else { continue };
        if with_sqrt3 {
            // Solve y = s·√3^(1/k)... only realizable when y itself carries
            // a single √3 factor and k is odd is messy; handle via direct
            // candidates y = s·√3·ζ^m with (s√3ζ^m)^k = x.
            // (√3)^k = 3^(k/2) for even k, 3^((k-1)/2)·√3 for odd k.
            let three_pow = if k.is_multiple_of(2) { k / 2 } else { (k - 1) / 2 };
            let scale = rat::int(3).pow(three_pow as i32);
            // Need s^k * scale * (√3 if k odd) * ζ^{km} = q √3 ζ^j.
            if k % 2 == 1 {
                if let Some(s) = kth_root(&(q.clone() / &scale), k) {
                    for m in 0..12usize {
                        if (k as usize * m) % 12 == j {
                            let root = Cyc::sqrt3()
                                .mul(&Cyc::zeta_pow(m as i64))
                                .scale(&s);
                            if root.pow(k) == *x {
                                found.push(root);
                            }
                        }
                    }
                }
            }
            continue;
        }
        match kth_root(&q, k) {
            Some(s) => {
                let mut any = false;
                for m in 0..12usize {
                    if (k as usize * m) % 12 == j {
                        let root = Cyc::zeta_pow(m as i64).scale(&s);
                        debug_assert_eq!(root.pow(k), *x);
                        found.push(root);
                        any = true;
                    }
                }
                if !any {
                    // |root| is forced to be the rational s, so a root would
                    // be s times a 12th root of unity; none satisfies the
                    // angle congruence, hence there are no roots at all.
                    certified_empty = true;
                }
            }
            None => {
                // Also try s·√3 candidates: (s√3)^k ζ^{km} = x.
                let three_pow = if k.is_multiple_of(2) { k / 2 } else { (k - 1) / 2 };
                let scale = rat::int(3).pow(three_pow as i32);
                if k.is_multiple_of(2) {
                    if let Some(s) = kth_root(&(q.clone() / &scale), k) {
                        for m in 0..12usize {
                            if (k as usize * m) % 12 == j {
                                let root =
                                    Cyc::sqrt3().mul(&Cyc::zeta_pow(m as i64)).scale(&s);
                                if root.pow(k) == *x {
                                    found.push(root);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    found.sort();
    found.dedup();
    if !found.is_empty() {
        return RootsOutcome::Complete(found);
    }
    if certified_empty {
        return RootsOutcome::Complete(vec![]);
    }
    RootsOutcome::Uncertifiable
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn powers_of_zeta() {
        let z = Cyc::zeta_pow(1);
        assert_eq!(z.pow(12), Cyc::one());
        assert_eq!(z.pow(6), Cyc::from_int(-1));
        assert_eq!(Cyc::i().mul(&Cyc::i()), Cyc::from_int(-1));
        assert_eq!(Cyc::zeta_pow(4), Cyc::zeta_pow(1).pow(4));
        assert_eq!(Cyc::zeta_pow(-1), Cyc::zeta_pow(11));
    }

    #[test]
    fn sqrt3_squares_to_three() {
        let s = Cyc::sqrt3();
        assert_eq!(s.mul(&s), Cyc::from_int(3));
    }

    #[test]
    fn conjugation_is_an_involution_and_fixes_rationals() {
        let x = Cyc::zeta_pow(1)
            .scale(&rat(2, 3))
            .add(&Cyc::i().scale(&rat(-5, 7)))
            .add(&Cyc::from_rational(rat(1, 2)));
        assert_eq!(x.conj().conj(), x);
        assert_eq!(Cyc::i().conj(), Cyc::i().neg());
        assert_eq!(Cyc::from_rational(rat(3, 4)).conj(), Cyc::from_rational(rat(3, 4)));
        // x·conj(x) of a root of unity is 1.
        for k in 0..12 {
            let z = Cyc::zeta_pow(k);
            assert_eq!(z.mul(&z.conj()), Cyc::one());
        }
    }

    #[test]
    fn inverse_round_trips() {
        let samples = [
            Cyc::from_rational(rat(7, 3)),
            Cyc::zeta_pow(5),
            Cyc::one().add(&Cyc::i()),
            Cyc::sqrt3().add(&Cyc::from_int(2)),
            Cyc::zeta_pow(1).scale(&rat(-3, 5)).add(&Cyc::zeta_pow(2).scale(&rat(1, 9))),
        ];
        for x in samples {
            assert_eq!(x.mul(&x.inv()), Cyc::one(), "inverse of {x}");
        }
    }

    #[test]
    fn rational_times_zeta_detection() {
        let x = Cyc::zeta_pow(7).scale(&rat(5, 2));
        assert_eq!(x.as_positive_rational_times_zeta(), Some((rat(5, 2), 7)));
        // Negative rational folds into the angle.
        let y = Cyc::from_rational(rat(-2, 1));
        assert_eq!(y.as_positive_rational_times_zeta(), Some((rat(2, 1), 6)));
        // 1 + i is not of this shape.
        let z = Cyc::one().add(&Cyc::i());
        assert_eq!(z.as_positive_rational_times_zeta(), None);
    }

    #[test]
    fn cube_roots_of_minus_one() {
        let minus_one = Cyc::from_int(-1);
        let RootsOutcome::Complete(roots) = kth_roots(&minus_one, 3) else {
            panic!("expected complete root set");
        };
        assert_eq!(roots.len(), 3);
        // e^{iπ/3}, -1, e^{-iπ/3}.
        assert!(roots.contains(&Cyc::zeta_pow(2)));
        assert!(roots.contains(&Cyc::from_int(-1)));
        assert!(roots.contains(&Cyc::zeta_pow(10)));
        for r in &roots {
            assert_eq!(r.pow(3), minus_one);
        }
    }

    #[test]
    fn square_roots_certified_and_uncertifiable() {
        // ζ² has square roots ζ and ζ⁷.
        let RootsOutcome::Complete(roots) = kth_roots(&Cyc::zeta_pow(2), 2) else {
            panic!()
        };
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&Cyc::zeta_pow(1)));
        assert!(roots.contains(&Cyc::zeta_pow(7)));
        // ζ has no square root among the field's roots of unity, and the
        // rational part is an exact power, so emptiness is certified.
        assert_eq!(kth_roots(&Cyc::zeta_pow(1), 2), RootsOutcome::Complete(vec![]));
        // 2i = (1+i)² has roots in the field but outside the searched
        // shape: honestly uncertifiable.
        let two_i = Cyc::i().scale(&rat(2, 1));
        assert_eq!(kth_roots(&two_i, 2), RootsOutcome::Uncertifiable);
        // 3ζ² = (√3 ζ)²: the √3 shape is found.
        let three_z2 = Cyc::zeta_pow(2).scale(&rat(3, 1));
        let RootsOutcome::Complete(roots) = kth_roots(&three_z2, 2) else { panic!() };
        assert!(roots.contains(&Cyc::sqrt3().mul(&Cyc::zeta_pow(1))));
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn twelfth_roots_of_unity() {
        let RootsOutcome::Complete(roots) = kth_roots(&Cyc::one(), 12) else { panic!() };
        assert_eq!(roots.len(), 12);
        // A 12th root of -1 would be a 24th root of unity: none in the field.
        assert_eq!(kth_roots(&Cyc::from_int(-1), 12), RootsOutcome::Complete(vec![]));
    }
}
