//! Parsers for the text input formats.
//!
//! Orbifold spec (`.orb`): a `dim n` header, a `structure g2|spin7` tag, then
//! one `generator` block per group generator holding n rows of n integers
//! (the linear part) followed by one row of n rationals (the translation).
//!
//! Weighted-hypersurface spec (`.ywp`): `weights:` and `degree:` headers,
//! `monomial: coeff e0 … em` lines with exact coefficients, and an optional
//! `sigma:` line giving an antiholomorphic map as a signed conjugate
//! permutation, e.g. `sigma: +c1 -c0 +c3 -c2 +c5 +c4`.

use thiserror::Error;

use crate::forms::{canonical, CanonicalStructure, KForm};
use crate::mat::IMat;
use crate::orbifold::AffineIsometry;
use crate::rat::Rational;
use crate::spin7::cyclotomic::Cyc;
use crate::spin7::wps::{AntiholInvolution, WpsHypersurface};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IoError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("generator {index} is invalid: {msg}")]
    Validation { index: usize, msg: String },
}

fn perr(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Parse { line, msg: msg.into() }
}

/// Which flat structure the group must preserve.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StructureTag {
    G2,
    Spin7,
}

impl StructureTag {
    pub fn form(self) -> KForm {
        match self {
            StructureTag::G2 => canonical(CanonicalStructure::G2Phi),
            StructureTag::Spin7 => canonical(CanonicalStructure::Spin7Omega),
        }
    }

    pub fn expected_dim(self) -> usize {
        match self {
            StructureTag::G2 => 7,
            StructureTag::Spin7 => 8,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StructureTag::G2 => "g2",
            StructureTag::Spin7 => "spin7",
        }
    }
}

#[derive(Clone, Debug)]
pub struct OrbifoldSpec {
    pub dim: usize,
    pub structure: StructureTag,
    pub generators: Vec<AffineIsometry>,
}

pub fn parse_orbifold_spec(text: &str) -> Result<OrbifoldSpec, IoError> {
    let mut dim: Option<usize> = None;
    let mut structure: Option<StructureTag> = None;
    let mut generators = Vec::new();
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .peekable();
    while let Some((lineno, line)) = lines.next() {
        if let Some(rest) = line.strip_prefix("dim") {
            dim = Some(rest.trim().parse().map_err(|_| perr(lineno, "bad dimension"))?);
        } else if let Some(rest) = line.strip_prefix("structure") {
            structure = Some(match rest.trim() {
                "g2" => StructureTag::G2,
                "spin7" => StructureTag::Spin7,
                other => return Err(perr(lineno, format!("unknown structure `{other}`"))),
            });
        } else if line == "generator" {
            let n = dim.ok_or_else(|| perr(lineno, "generator before dim"))?;
            let mut rows = Vec::with_capacity(n);
            for _ in 0..n {
                let (rl, row) =
                    lines.next().ok_or_else(|| perr(lineno, "truncated generator block"))?;
                let entries: Vec<i64> = row
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| perr(rl, format!("bad integer `{t}`"))))
                    .collect::<Result<_, _>>()?;
                if entries.len() != n {
                    return Err(perr(rl, format!("expected {n} integers")));
                }
                rows.push(entries);
            }
            let (tl, trow) =
                lines.next().ok_or_else(|| perr(lineno, "missing translation row"))?;
            let translation: Vec<Rational> = trow
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| perr(tl, format!("bad rational `{t}`"))))
                .collect::<Result<_, _>>()?;
            if translation.len() != n {
                return Err(perr(tl, format!("expected {n} rationals")));
            }
            let index = generators.len();
            let linear = IMat::from_rows(&rows);
            let gen = AffineIsometry::new(linear, translation)
                .map_err(|e| IoError::Validation { index, msg: e.to_string() })?;
            generators.push(gen);
        } else {
            return Err(perr(lineno, format!("unrecognized line `{line}`")));
        }
    }
    let dim = dim.ok_or_else(|| perr(0, "missing dim"))?;
    let structure = structure.ok_or_else(|| perr(0, "missing structure"))?;
    if dim != structure.expected_dim() {
        return Err(perr(
            0,
            format!(
                "structure {} lives in dimension {}",
                structure.name(),
                structure.expected_dim()
            ),
        ));
    }
    Ok(OrbifoldSpec { dim, structure, generators })
}

#[derive(Clone, Debug)]
pub struct WpsSpec {
    pub hypersurface: WpsHypersurface,
    pub involution: Option<AntiholInvolution>,
}

pub fn parse_wps_spec(text: &str) -> Result<WpsSpec, IoError> {
    let mut weights: Option<Vec<u32>> = None;
    let mut degree: Option<u32> = None;
    let mut monomials: Vec<(Vec<u32>, Cyc)> = Vec::new();
    let mut involution: Option<AntiholInvolution> = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("weights:") {
            let ws: Vec<u32> = rest
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| perr(lineno, format!("bad weight `{t}`"))))
                .collect::<Result<_, _>>()?;
            weights = Some(ws);
        } else if let Some(rest) = line.strip_prefix("degree:") {
            degree = Some(rest.trim().parse().map_err(|_| perr(lineno, "bad degree"))?);
        } else if let Some(rest) = line.strip_prefix("monomial:") {
            let mut parts = rest.split_whitespace();
            let coeff_text = parts.next().ok_or_else(|| perr(lineno, "missing coefficient"))?;
            let coeff = parse_coefficient(coeff_text)
                .ok_or_else(|| perr(lineno, format!("bad coefficient `{coeff_text}`")))?;
            let expts: Vec<u32> = parts
                .map(|t| t.parse().map_err(|_| perr(lineno, format!("bad exponent `{t}`"))))
                .collect::<Result<_, _>>()?;
            monomials.push((expts, coeff));
        } else if let Some(rest) = line.strip_prefix("sigma:") {
            let images: Vec<(usize, i8)> = rest
                .split_whitespace()
                .map(|t| {
                    parse_sigma_image(t).ok_or_else(|| perr(lineno, format!("bad image `{t}`")))
                })
                .collect::<Result<_, _>>()?;
            involution =
                Some(AntiholInvolution::new(images).map_err(|e| perr(lineno, e.to_string()))?);
        } else {
            return Err(perr(lineno, format!("unrecognized line `{line}`")));
        }
    }
    let weights = weights.ok_or_else(|| perr(0, "missing weights"))?;
    let degree = degree.ok_or_else(|| perr(0, "missing degree"))?;
    let hypersurface =
        WpsHypersurface::new(weights, degree, monomials).map_err(|e| perr(0, e.to_string()))?;
    Ok(WpsSpec { hypersurface, involution })
}

/// Coefficient grammar: `q`, `zeta12^k`, or `q*zeta12^k` with q rational.
fn parse_coefficient(s: &str) -> Option<Cyc> {
    let (rat_part, zeta_part) = match s.split_once('*') {
        Some((a, b)) => (a, Some(b)),
        None => {
            if s.starts_with("zeta12^") {
                ("1", Some(s))
            } else {
                (s, None)
            }
        }
    };
    let q: Rational = rat_part.parse().ok()?;
    let mut c = Cyc::from_rational(q);
    if let Some(z) = zeta_part {
        let k: i64 = z.strip_prefix("zeta12^")?.parse().ok()?;
        c = c.mul(&Cyc::zeta_pow(k));
    }
    Some(c)
}

/// `+cJ` or `-cJ`: output coordinate = ±conj(z_J).
fn parse_sigma_image(s: &str) -> Option<(usize, i8)> {
    let (sign, rest) = match s.as_bytes().first()? {
        b'+' => (1i8, &s[1..]),
        b'-' => (-1i8, &s[1..]),
        _ => (1i8, s),
    };
    let idx = rest.strip_prefix('c')?.parse().ok()?;
    Some((idx, sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assets;
    use crate::orbifold::{generate_group, standard_t7_involutions, DEFAULT_MAX_ORDER};
    use crate::spin7::wps::singular_points;

    #[test]
    fn bundled_orbifold_spec_matches_the_standard_involutions() {
        let spec = parse_orbifold_spec(&assets::asset_text("joyce_example.orb")).unwrap();
        assert_eq!(spec.dim, 7);
        assert_eq!(spec.structure, StructureTag::G2);
        assert_eq!(spec.generators.len(), 3);
        let (a, b, c) = standard_t7_involutions();
        assert_eq!(spec.generators, vec![a, b, c]);
        let group = generate_group(7, &spec.generators, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(group.order(), 8);
    }

    #[test]
    fn empty_generator_list_is_valid() {
        let spec = parse_orbifold_spec("dim 7\nstructure g2\n").unwrap();
        assert!(spec.generators.is_empty());
    }

    #[test]
    fn non_orthogonal_generator_is_rejected() {
        let text = "dim 2\nstructure g2\ngenerator\n1 1\n0 1\n0 0\n";
        let err = parse_orbifold_spec(text).unwrap_err();
        assert!(matches!(err, IoError::Validation { index: 0, .. }), "{err:?}");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_orbifold_spec("dim seven\n").unwrap_err();
        assert_eq!(err, IoError::Parse { line: 1, msg: "bad dimension".into() });
        let err = parse_orbifold_spec("dim 7\nstructure g2\ngenerator\n1 2\n").unwrap_err();
        assert!(matches!(err, IoError::Parse { line: 4, .. }));
    }

    #[test]
    fn bundled_wps_spec_parses_and_verifies() {
        let spec = parse_wps_spec(&assets::asset_text("joyce_wps.ywp")).unwrap();
        assert_eq!(spec.hypersurface.weights(), &[1, 1, 1, 1, 4, 4]);
        assert_eq!(spec.hypersurface.degree(), 12);
        assert!(spec.involution.is_some());
        assert_eq!(singular_points(&spec.hypersurface).unwrap().len(), 3);
    }

    #[test]
    fn coefficient_grammar() {
        assert_eq!(parse_coefficient("1"), Some(Cyc::one()));
        assert_eq!(
            parse_coefficient("-3/2"),
            Some(Cyc::from_rational(crate::rat::rat(-3, 2)))
        );
        assert_eq!(parse_coefficient("zeta12^3"), Some(Cyc::i()));
        assert_eq!(parse_coefficient("2*zeta12^6"), Some(Cyc::from_int(-2)));
        assert_eq!(parse_coefficient("x"), None);
    }
}
