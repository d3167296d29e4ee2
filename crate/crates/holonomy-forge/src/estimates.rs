//! Symbolic asymptotic-order calculus in a small parameter t.
//!
//! Quantities are upper bounds of the shape `constant × t^exponent`, where
//! the constant is an opaque product of named positive symbols and the
//! exponent is an exact rational. The regime is one-sided, t → 0⁺ with
//! t ≤ 1, so a bound with a larger exponent is stronger and constants are
//! absorbable whenever a strictly positive exponent margin is available.
//!
//! Two checks are built on this calculus. `check_hypotheses` verifies that a
//! decay profile (the explicitly constructed torsion/geometry data of a
//! glued structure) implies the hypotheses of the torsion-free deformation
//! theorem. `check_induction_closure` substitutes the assumed bounds of the
//! iteration into each update rule and verifies every resulting term is
//! dominated by the assumption it must reproduce — either with matching
//! exponent, which yields a constraint among the constants, or with strictly
//! positive t-margin, which is absorbed for small t. The constraint system
//! is then checked for solvability by topological ordering: the derived
//! constants may be chosen large enough in dependency order exactly when the
//! constraint graph is acyclic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::rat::{self, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EstimateError {
    #[error("hypothesis fails for {quantity}: exponent margin {margin}")]
    HypothesisFails { quantity: String, margin: Rational },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A bound `constant × t^exponent`, the constant an opaque product of named
/// positive symbols (empty product = 1).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderTerm {
    pub symbols: BTreeMap<String, u32>,
    pub exponent: Rational,
}

impl OrderTerm {
    pub fn new(symbols: &[&str], exponent: Rational) -> Self {
        let mut map = BTreeMap::new();
        for s in symbols {
            *map.entry((*s).to_string()).or_default() += 1;
        }
        OrderTerm { symbols: map, exponent }
    }

    pub fn unit(exponent: Rational) -> Self {
        OrderTerm { symbols: BTreeMap::new(), exponent }
    }

    pub fn mul(&self, other: &OrderTerm) -> OrderTerm {
        let mut symbols = self.symbols.clone();
        for (s, k) in &other.symbols {
            *symbols.entry(s.clone()).or_default() += k;
        }
        OrderTerm { symbols, exponent: &self.exponent + &other.exponent }
    }

    pub fn constant_label(&self) -> String {
        if self.symbols.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (s, &k) in &self.symbols {
            for _ in 0..k {
                parts.push(s.clone());
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for OrderTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.constant_label();
        if self.exponent.is_zero() {
            return write!(f, "{c}");
        }
        let e = if self.exponent.is_integer() {
            format!("t^{}", self.exponent)
        } else {
            format!("t^({})", self.exponent)
        };
        if c == "1" {
            write!(f, "{e}")
        } else {
            write!(f, "{c} * {e}")
        }
    }
}

/// A sum of upper-bound terms.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct OrderExpr {
    pub terms: Vec<OrderTerm>,
}

impl OrderExpr {
    pub fn push(&mut self, t: OrderTerm) {
        if !self.terms.contains(&t) {
            self.terms.push(t);
        }
    }
}

impl fmt::Display for OrderExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Outcome of comparing a claimed bound against a quantity, both as order
/// terms in the regime t → 0⁺, t ≤ 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DominationVerdict {
    /// Equal exponents: the bound holds for all t with a suitable constant.
    Always,
    /// Strictly larger exponent on the quantity: the bound holds with any
    /// constant once t is small; the margin is the exponent surplus.
    ForSmallT { margin: Rational },
    /// The quantity's exponent is smaller: no constant can save the bound
    /// as t → 0.
    NeverByExponent { deficit: Rational },
}

/// Does `bound` dominate `quantity`, i.e. quantity ≤ const · bound as
/// t → 0⁺? Decided on exponents alone; constants are opaque and absorbable.
pub fn dominates(bound: &OrderTerm, quantity: &OrderTerm) -> DominationVerdict {
    let margin = &quantity.exponent - &bound.exponent;
    if margin.is_zero() {
        DominationVerdict::Always
    } else if margin > rat::zero() {
        DominationVerdict::ForSmallT { margin }
    } else {
        DominationVerdict::NeverByExponent { deficit: margin }
    }
}

/// Decay profile of a glued structure: named torsion, injectivity-radius and
/// curvature bounds as order terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EstimateProfile {
    pub psi_l2: OrderTerm,
    pub psi_c0: OrderTerm,
    pub dpsi_l14: OrderTerm,
    /// Lower bound: the injectivity radius is at least this.
    pub inj_lower: OrderTerm,
    /// Upper bound with negative exponent: curvature grows no faster.
    pub curv_upper: OrderTerm,
}

impl EstimateProfile {
    /// The decay profile of the torus-quotient gluing construction.
    pub fn paper_default() -> Self {
        EstimateProfile {
            psi_l2: OrderTerm::new(&["A1"], rat::int(4)),
            psi_c0: OrderTerm::new(&["A1"], rat::int(3)),
            dpsi_l14: OrderTerm::new(&["A1"], rat::rat(16, 7)),
            inj_lower: OrderTerm::new(&["A2"], rat::int(1)),
            curv_upper: OrderTerm::new(&["A3"], rat::int(-2)),
        }
    }
}

/// The five hypotheses of the torsion-free deformation theorem, as targets
/// the profile must imply for small t.
pub fn deformation_hypotheses() -> Vec<(&'static str, OrderTerm, BoundKind)> {
    vec![
        ("psi_L2", OrderTerm::new(&["A1"], rat::int(4)), BoundKind::Upper),
        ("psi_C0", OrderTerm::new(&["A1"], rat::rat(1, 2)), BoundKind::Upper),
        ("dpsi_L14", OrderTerm::new(&["A1"], rat::int(0)), BoundKind::Upper),
        ("inj_lower", OrderTerm::new(&["A2"], rat::int(1)), BoundKind::Lower),
        ("curv_upper", OrderTerm::new(&["A3"], rat::int(-2)), BoundKind::Upper),
    ]
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BoundKind {
    Upper,
    Lower,
}

#[derive(Clone, Debug)]
pub struct HypothesisCheck {
    pub quantity: String,
    pub provided: OrderTerm,
    pub required: OrderTerm,
    pub kind: BoundKind,
    /// Nonnegative exactly when the provided bound implies the required one
    /// for t ≤ 1.
    pub margin: Rational,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct HypothesisReport {
    pub checks: Vec<HypothesisCheck>,
}

impl HypothesisReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn margins(&self) -> Vec<Rational> {
        self.checks.iter().map(|c| c.margin.clone()).collect()
    }

    pub fn ensure(&self) -> Result<(), EstimateError> {
        match self.checks.iter().find(|c| !c.pass) {
            None => Ok(()),
            Some(c) => Err(EstimateError::HypothesisFails {
                quantity: c.quantity.clone(),
                margin: c.margin.clone(),
            }),
        }
    }
}

/// Checks each profile bound against the corresponding deformation-theorem
/// hypothesis. Upper bounds need exponent(provided) ≥ exponent(required);
/// lower bounds the reverse. All comparisons are exact.
pub fn check_hypotheses(profile: &EstimateProfile) -> HypothesisReport {
    let provided = [
        ("psi_L2", profile.psi_l2.clone()),
        ("psi_C0", profile.psi_c0.clone()),
        ("dpsi_L14", profile.dpsi_l14.clone()),
        ("inj_lower", profile.inj_lower.clone()),
        ("curv_upper", profile.curv_upper.clone()),
    ];
    let checks = deformation_hypotheses()
        .into_iter()
        .zip(provided)
        .map(|((name, required, kind), (pname, given))| {
            debug_assert_eq!(name, pname);
            let margin = match kind {
                BoundKind::Upper => &given.exponent - &required.exponent,
                BoundKind::Lower => &required.exponent - &given.exponent,
            };
            HypothesisCheck {
                quantity: name.to_string(),
                provided: given,
                required,
                kind,
                pass: margin >= rat::zero(),
                margin,
            }
        })
        .collect();
    HypothesisReport { checks }
}

/// The three norms tracked through the iteration.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum TrackedNorm {
    DEtaL2,
    NablaDEtaL14,
    DEtaC0,
}

impl TrackedNorm {
    pub fn name(self) -> &'static str {
        match self {
            TrackedNorm::DEtaL2 => "dEta_L2",
            TrackedNorm::NablaDEtaL14 => "nabla_dEta_L14",
            TrackedNorm::DEtaC0 => "dEta_C0",
        }
    }
}

/// Quantities a rule's right side may reference.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QuantityRef {
    PsiL2,
    PsiC0,
    DpsiL14,
    Tracked(TrackedNorm),
}

/// One product on the right side of a rule: symbols × t-power × quantities.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RuleTerm {
    pub coefficient: OrderTerm,
    pub refs: Vec<QuantityRef>,
}

/// An update rule: target norm ≤ sum of rule terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InductionRule {
    pub target: TrackedNorm,
    pub terms: Vec<RuleTerm>,
}

/// The inductive estimate system: one rule per tracked norm plus the bounds
/// assumed at every stage.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InductionSystem {
    pub rules: Vec<InductionRule>,
    pub assumed: BTreeMap<TrackedNorm, OrderTerm>,
}

impl InductionSystem {
    /// The iteration system of the deformation argument: energy estimate,
    /// elliptic regularity with the t⁻⁴ loss, and the Sobolev embedding
    /// with the t^{1/2}, t^{-7/2} ball scaling.
    pub fn paper_default() -> Self {
        let rules = vec![
            InductionRule {
                target: TrackedNorm::DEtaL2,
                terms: vec![
                    RuleTerm {
                        coefficient: OrderTerm::unit(rat::int(0)),
                        refs: vec![QuantityRef::PsiL2],
                    },
                    RuleTerm {
                        coefficient: OrderTerm::new(&["C1"], rat::int(0)),
                        refs: vec![
                            QuantityRef::Tracked(TrackedNorm::DEtaL2),
                            QuantityRef::Tracked(TrackedNorm::DEtaC0),
                        ],
                    },
                ],
            },
            InductionRule {
                target: TrackedNorm::NablaDEtaL14,
                terms: vec![
                    RuleTerm {
                        coefficient: OrderTerm::new(&["C2"], rat::int(0)),
                        refs: vec![QuantityRef::DpsiL14],
                    },
                    RuleTerm {
                        coefficient: OrderTerm::new(&["C2"], rat::int(0)),
                        refs: vec![
                            QuantityRef::Tracked(TrackedNorm::NablaDEtaL14),
                            QuantityRef::Tracked(TrackedNorm::DEtaC0),
                        ],
                    },
                    RuleTerm {
                        coefficient: OrderTerm::new(&["C2"], rat::int(-4)),
                        refs: vec![QuantityRef::Tracked(TrackedNorm::DEtaL2)],
                    },
                ],
            },
            InductionRule {
                target: TrackedNorm::DEtaC0,
                terms: vec![
                    RuleTerm {
                        coefficient: OrderTerm::new(&["C3"], rat::rat(1, 2)),
                        refs: vec![QuantityRef::Tracked(TrackedNorm::NablaDEtaL14)],
                    },
                    RuleTerm {
                        coefficient: OrderTerm::new(&["C3"], rat::rat(-7, 2)),
                        refs: vec![QuantityRef::Tracked(TrackedNorm::DEtaL2)],
                    },
                ],
            },
        ];
        let mut assumed = BTreeMap::new();
        assumed.insert(TrackedNorm::DEtaL2, OrderTerm::new(&["C4"], rat::int(4)));
        assumed.insert(TrackedNorm::NablaDEtaL14, OrderTerm::new(&["C5"], rat::int(0)));
        assumed.insert(TrackedNorm::DEtaC0, OrderTerm::new(&["K"], rat::rat(1, 2)));
        InductionSystem { rules, assumed }
    }
}

/// A multiplicative constraint `lhs₁·lhs₂·… ≤ rhs` among constant symbols.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Constraint {
    pub lhs: Vec<String>,
    pub rhs: String,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <= {}", self.lhs.join("*"), self.rhs)
    }
}

/// A term absorbed by a strictly positive t-margin.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct MarginTerm {
    pub label: String,
    pub margin: Rational,
}

/// A term whose exponent falls short of the target: the induction does not
/// close through it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FailedTerm {
    pub target: TrackedNorm,
    pub label: String,
    pub deficit: Rational,
}

#[derive(Clone, Debug)]
pub struct RuleOutcome {
    pub target: TrackedNorm,
    /// The rule's right side after substituting the assumed bounds.
    pub substituted: OrderExpr,
    pub constraints: Vec<Constraint>,
    pub margins: Vec<MarginTerm>,
    pub failures: Vec<FailedTerm>,
}

#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub closes: bool,
    pub rule_outcomes: Vec<RuleOutcome>,
    pub constant_constraints: Vec<Constraint>,
    pub t_margins: Vec<MarginTerm>,
    pub min_positive_margin: Option<Rational>,
    pub constraints_solvable: bool,
    /// A dependency order in which the derived constants can be chosen, when
    /// solvable.
    pub resolution_order: Vec<String>,
}

/// Substitutes the assumed bounds into every rule and checks domination
/// against the matching assumption, term by term.
pub fn check_induction_closure(sys: &InductionSystem) -> ClosureReport {
    let hypotheses: BTreeMap<&str, OrderTerm> = deformation_hypotheses()
        .into_iter()
        .map(|(name, term, _)| (name, term))
        .collect();
    let resolve = |r: &QuantityRef| -> OrderTerm {
        match r {
            QuantityRef::PsiL2 => hypotheses["psi_L2"].clone(),
            QuantityRef::PsiC0 => hypotheses["psi_C0"].clone(),
            QuantityRef::DpsiL14 => hypotheses["dpsi_L14"].clone(),
            QuantityRef::Tracked(norm) => sys.assumed[norm].clone(),
        }
    };
    let mut rule_outcomes = Vec::new();
    for rule in &sys.rules {
        let target_bound = &sys.assumed[&rule.target];
        let mut constraints = Vec::new();
        let mut margins = Vec::new();
        let mut failures = Vec::new();
        let mut substituted_sum = OrderExpr::default();
        for term in &rule.terms {
            let mut substituted = term.coefficient.clone();
            for r in &term.refs {
                substituted = substituted.mul(&resolve(r));
            }
            substituted_sum.push(substituted.clone());
            match dominates(target_bound, &substituted) {
                DominationVerdict::Always => {
                    let mut lhs = Vec::new();
                    for (s, &k) in &substituted.symbols {
                        for _ in 0..k {
                            lhs.push(s.clone());
                        }
                    }
                    let rhs = target_bound.constant_label();
                    constraints.push(Constraint { lhs, rhs });
                }
                DominationVerdict::ForSmallT { margin } => {
                    margins.push(MarginTerm { label: substituted.constant_label(), margin });
                }
                DominationVerdict::NeverByExponent { deficit } => {
                    failures.push(FailedTerm {
                        target: rule.target,
                        label: substituted.to_string(),
                        deficit,
                    });
                }
            }
        }
        constraints.sort();
        margins.sort();
        rule_outcomes.push(RuleOutcome {
            target: rule.target,
            substituted: substituted_sum,
            constraints,
            margins,
            failures,
        });
    }
    let mut constant_constraints: Vec<Constraint> =
        rule_outcomes.iter().flat_map(|o| o.constraints.clone()).collect();
    constant_constraints.sort();
    constant_constraints.dedup();
    let mut t_margins: Vec<MarginTerm> =
        rule_outcomes.iter().flat_map(|o| o.margins.clone()).collect();
    t_margins.sort();
    let min_positive_margin = t_margins.iter().map(|m| m.margin.clone()).min();
    let closes = rule_outcomes.iter().all(|o| o.failures.is_empty());
    let (constraints_solvable, resolution_order) = solve_constraints(&constant_constraints);
    ClosureReport {
        closes,
        rule_outcomes,
        constant_constraints,
        t_margins,
        min_positive_margin,
        constraints_solvable,
        resolution_order,
    }
}

/// The constraint system is solvable iff the derived constants (those
/// appearing on a right side) can be topologically ordered so each is chosen
/// after everything it must exceed.
fn solve_constraints(constraints: &[Constraint]) -> (bool, Vec<String>) {
    let derived: BTreeSet<String> = constraints.iter().map(|c| c.rhs.clone()).collect();
    // rhs depends on every derived symbol on its lhs.
    let mut deps: BTreeMap<String, BTreeSet<String>> =
        derived.iter().map(|d| (d.clone(), BTreeSet::new())).collect();
    for c in constraints {
        if c.lhs.iter().any(|s| s == &c.rhs) {
            return (false, Vec::new());
        }
        for s in &c.lhs {
            if derived.contains(s) {
                deps.get_mut(&c.rhs).unwrap().insert(s.clone());
            }
        }
    }
    let mut order = Vec::new();
    let mut placed: BTreeSet<String> = BTreeSet::new();
    while placed.len() < derived.len() {
        let next: Vec<String> = deps
            .iter()
            .filter(|(d, needs)| !placed.contains(*d) && needs.is_subset(&placed))
            .map(|(d, _)| d.clone())
            .collect();
        if next.is_empty() {
            return (false, Vec::new());
        }
        for d in next {
            placed.insert(d.clone());
            order.push(d);
        }
    }
    (true, order)
}

// ---------------------------------------------------------------------------
// Text format

/// Parses the estimate file format: profile lines `name = product`, update
/// rules `rule norm <= sum`, and assumptions `assume norm <= product`.
pub fn parse_estimates(text: &str) -> Result<(EstimateProfile, InductionSystem), EstimateError> {
    let mut profile_terms: BTreeMap<String, OrderTerm> = BTreeMap::new();
    let mut rules: Vec<InductionRule> = Vec::new();
    let mut assumed: BTreeMap<TrackedNorm, OrderTerm> = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| EstimateError::Parse { line: lineno + 1, msg: msg.to_string() };
        if let Some(rest) = line.strip_prefix("rule ") {
            let (norm, rhs) = split_le(rest).ok_or_else(|| err("expected `norm <= sum`"))?;
            let target = parse_norm(norm).ok_or_else(|| err("unknown norm"))?;
            let mut terms = Vec::new();
            for part in rhs.split('+') {
                terms.push(parse_rule_term(part.trim()).map_err(|m| err(&m))?);
            }
            rules.push(InductionRule { target, terms });
        } else if let Some(rest) = line.strip_prefix("assume ") {
            let (norm, rhs) = split_le(rest).ok_or_else(|| err("expected `norm <= bound`"))?;
            let target = parse_norm(norm).ok_or_else(|| err("unknown norm"))?;
            let term = parse_rule_term(rhs.trim()).map_err(|m| err(&m))?;
            if !term.refs.is_empty() {
                return Err(err("assumed bounds must not reference other quantities"));
            }
            assumed.insert(target, term.coefficient);
        } else if let Some((name, rhs)) = line.split_once('=') {
            let term = parse_rule_term(rhs.trim()).map_err(|m| err(&m))?;
            if !term.refs.is_empty() {
                return Err(err("profile bounds must not reference other quantities"));
            }
            profile_terms.insert(name.trim().to_string(), term.coefficient);
        } else {
            return Err(err("unrecognized line"));
        }
    }
    let take = |name: &str| -> Result<OrderTerm, EstimateError> {
        profile_terms
            .get(name)
            .cloned()
            .ok_or_else(|| EstimateError::Parse { line: 0, msg: format!("missing profile {name}") })
    };
    let profile = EstimateProfile {
        psi_l2: take("psi_L2")?,
        psi_c0: take("psi_C0")?,
        dpsi_l14: take("dpsi_L14")?,
        inj_lower: take("inj_lower")?,
        curv_upper: take("curv_upper")?,
    };
    for norm in [TrackedNorm::DEtaL2, TrackedNorm::NablaDEtaL14, TrackedNorm::DEtaC0] {
        if !assumed.contains_key(&norm) {
            return Err(EstimateError::Parse {
                line: 0,
                msg: format!("missing assumption for {}", norm.name()),
            });
        }
    }
    Ok((profile, InductionSystem { rules, assumed }))
}

fn split_le(s: &str) -> Option<(&str, &str)> {
    let (a, b) = s.split_once("<=")?;
    Some((a.trim(), b.trim()))
}

fn parse_norm(s: &str) -> Option<TrackedNorm> {
    match s.trim_end_matches('\'') {
        "dEta_L2" => Some(TrackedNorm::DEtaL2),
        "nabla_dEta_L14" => Some(TrackedNorm::NablaDEtaL14),
        "dEta_C0" => Some(TrackedNorm::DEtaC0),
        _ => None,
    }
}

fn parse_quantity(s: &str) -> Option<QuantityRef> {
    match s {
        "psi_L2" => Some(QuantityRef::PsiL2),
        "psi_C0" => Some(QuantityRef::PsiC0),
        "dpsi_L14" => Some(QuantityRef::DpsiL14),
        _ => parse_norm(s).map(QuantityRef::Tracked),
    }
}

fn parse_rule_term(s: &str) -> Result<RuleTerm, String> {
    let mut coefficient = OrderTerm::unit(rat::int(0));
    let mut refs = Vec::new();
    for factor in s.split('*').map(str::trim) {
        if factor.is_empty() {
            return Err("empty factor".into());
        }
        if factor == "t" {
            coefficient.exponent += rat::one();
        } else if let Some(exp) = factor.strip_prefix("t^") {
            coefficient.exponent += parse_exponent(exp)?;
        } else if let Some(q) = parse_quantity(factor) {
            refs.push(q);
        } else if factor.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            && factor.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        {
            *coefficient.symbols.entry(factor.to_string()).or_default() += 1;
        } else {
            return Err(format!("cannot parse factor `{factor}`"));
        }
    }
    Ok(RuleTerm { coefficient, refs })
}

fn parse_exponent(s: &str) -> Result<Rational, String> {
    let inner = s.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(s);
    inner.parse::<Rational>().map_err(|_| format!("bad exponent `{inner}`"))
}

/// The bundled default profile and system, parsed from the text asset.
pub fn bundled_defaults() -> (EstimateProfile, InductionSystem) {
    parse_estimates(&crate::assets::asset_text("estimates_default.est"))
        .expect("bundled estimate file parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn dominates_on_exponents() {
        // A stated bound with exponent 1/2 absorbs a quantity decaying
        // like t^3, with margin 5/2.
        let bound = OrderTerm::new(&["A1"], rat(1, 2));
        let quantity = OrderTerm::new(&["A1"], rat(3, 1));
        assert_eq!(
            dominates(&bound, &quantity),
            DominationVerdict::ForSmallT { margin: rat(5, 2) }
        );
        let t4 = OrderTerm::unit(rat(4, 1));
        assert_eq!(dominates(&t4, &t4), DominationVerdict::Always);
        let thalf = OrderTerm::unit(rat(1, 2));
        assert_eq!(
            dominates(&t4, &thalf),
            DominationVerdict::NeverByExponent { deficit: rat(-7, 2) }
        );
        // Constants never change the verdict.
        let other = OrderTerm::new(&["B9", "B9"], rat(4, 1));
        assert_eq!(dominates(&t4, &other), DominationVerdict::Always);
    }

    #[test]
    fn hypotheses_hold_with_expected_margins() {
        let report = check_hypotheses(&EstimateProfile::paper_default());
        assert!(report.all_pass());
        assert!(report.ensure().is_ok());
        assert_eq!(
            report.margins(),
            vec![rat(0, 1), rat(5, 2), rat(16, 7), rat(0, 1), rat(0, 1)]
        );
    }

    #[test]
    fn hypothesis_edge_and_failure_cases() {
        let mut profile = EstimateProfile::paper_default();
        profile.psi_c0 = OrderTerm::new(&["A1"], rat(1, 2));
        let report = check_hypotheses(&profile);
        assert!(report.all_pass());
        assert_eq!(report.checks[1].margin, rat(0, 1));

        profile.psi_l2 = OrderTerm::new(&["A1"], rat(3, 1));
        let report = check_hypotheses(&profile);
        assert!(!report.all_pass());
        let err = report.ensure().unwrap_err();
        assert_eq!(
            err,
            EstimateError::HypothesisFails { quantity: "psi_L2".into(), margin: rat(-1, 1) }
        );
    }

    #[test]
    fn default_induction_closes_with_expected_structure() {
        let sys = InductionSystem::paper_default();
        let report = check_induction_closure(&sys);
        assert!(report.closes);
        assert!(report.constraints_solvable);
        assert_eq!(report.min_positive_margin, Some(rat(1, 2)));
        // Frozen from the hand substitution of the assumed bounds into the
        // three rules.
        let expect: Vec<Constraint> = vec![
            Constraint { lhs: vec!["A1".into()], rhs: "C4".into() },
            Constraint { lhs: vec!["A1".into(), "C2".into()], rhs: "C5".into() },
            Constraint { lhs: vec!["C2".into(), "C4".into()], rhs: "C5".into() },
            Constraint { lhs: vec!["C3".into(), "C4".into()], rhs: "K".into() },
            Constraint { lhs: vec!["C3".into(), "C5".into()], rhs: "K".into() },
        ];
        let mut expect_sorted = expect;
        expect_sorted.sort();
        assert_eq!(report.constant_constraints, expect_sorted);
        let margin_labels: Vec<(String, Rational)> =
            report.t_margins.iter().map(|m| (m.label.clone(), m.margin.clone())).collect();
        assert_eq!(
            margin_labels,
            vec![
                ("C1*C4*K".to_string(), rat(1, 2)),
                ("C2*C5*K".to_string(), rat(1, 2)),
            ]
        );
        // The derived constants resolve in dependency order.
        assert_eq!(report.resolution_order, vec!["C4", "C5", "K"]);
        // The substituted right sides, rendered.
        assert_eq!(
            report.rule_outcomes[0].substituted.to_string(),
            "A1 * t^4 + C1*C4*K * t^(9/2)"
        );
        assert_eq!(
            report.rule_outcomes[1].substituted.to_string(),
            "A1*C2 + C2*C5*K * t^(1/2) + C2*C4"
        );
        assert_eq!(
            report.rule_outcomes[2].substituted.to_string(),
            "C3*C5 * t^(1/2) + C3*C4 * t^(1/2)"
        );
    }

    #[test]
    fn weakened_regularity_term_breaks_closure() {
        let mut sys = InductionSystem::paper_default();
        // Replace the elliptic-regularity loss t^-4 by t^-5.
        sys.rules[1].terms[2].coefficient = OrderTerm::new(&["C2"], rat(-5, 1));
        let report = check_induction_closure(&sys);
        assert!(!report.closes);
        let fails: Vec<&FailedTerm> =
            report.rule_outcomes.iter().flat_map(|o| o.failures.iter()).collect();
        assert_eq!(fails.len(), 1);
        assert_eq!(fails[0].target, TrackedNorm::NablaDEtaL14);
        assert_eq!(fails[0].deficit, rat(-1, 1));
    }

    #[test]
    fn trivial_system_closes() {
        let sys = InductionSystem {
            rules: vec![
                InductionRule { target: TrackedNorm::DEtaL2, terms: vec![] },
                InductionRule { target: TrackedNorm::NablaDEtaL14, terms: vec![] },
                InductionRule { target: TrackedNorm::DEtaC0, terms: vec![] },
            ],
            assumed: InductionSystem::paper_default().assumed,
        };
        let report = check_induction_closure(&sys);
        assert!(report.closes);
        assert!(report.constant_constraints.is_empty());
        assert_eq!(report.min_positive_margin, None);
    }

    #[test]
    fn cyclic_constraints_are_unsolvable() {
        let constraints = vec![
            Constraint { lhs: vec!["K".into()], rhs: "C4".into() },
            Constraint { lhs: vec!["C4".into()], rhs: "K".into() },
        ];
        let (ok, _) = solve_constraints(&constraints);
        assert!(!ok);
        let self_ref = vec![Constraint { lhs: vec!["K".into(), "C3".into()], rhs: "K".into() }];
        let (ok, _) = solve_constraints(&self_ref);
        assert!(!ok);
    }

    #[test]
    fn closure_is_order_independent() {
        let sys = InductionSystem::paper_default();
        let mut shuffled = sys.clone();
        shuffled.rules.reverse();
        for r in &mut shuffled.rules {
            r.terms.reverse();
        }
        let a = check_induction_closure(&sys);
        let b = check_induction_closure(&shuffled);
        assert_eq!(a.closes, b.closes);
        assert_eq!(a.constant_constraints, b.constant_constraints);
        assert_eq!(a.t_margins, b.t_margins);
        assert_eq!(a.min_positive_margin, b.min_positive_margin);
    }

    #[test]
    fn bundled_file_matches_constructed_defaults() {
        let (profile, system) = bundled_defaults();
        assert_eq!(profile, EstimateProfile::paper_default());
        assert_eq!(system, InductionSystem::paper_default());
    }

    #[test]
    fn parser_errors_are_located() {
        let err = parse_estimates("rule dEta_L2 <= C1 * ???").unwrap_err();
        assert!(matches!(err, EstimateError::Parse { line: 1, .. }));
        let err = parse_estimates("psi_L2 = A1 * t^4").unwrap_err();
        assert!(matches!(err, EstimateError::Parse { .. }));
    }

    #[test]
    fn dominates_is_a_preorder_on_exponents() {
        let exps = [rat(0, 1), rat(1, 2), rat(4, 1), rat(-2, 1), rat(16, 7)];
        let holds = |a: &OrderTerm, b: &OrderTerm| {
            !matches!(dominates(a, b), DominationVerdict::NeverByExponent { .. })
        };
        for e in &exps {
            let t = OrderTerm::unit(e.clone());
            assert!(holds(&t, &t), "reflexive at {e}");
        }
        for a in &exps {
            for b in &exps {
                for c in &exps {
                    let (ta, tb, tc) = (
                        OrderTerm::unit(a.clone()),
                        OrderTerm::unit(b.clone()),
                        OrderTerm::unit(c.clone()),
                    );
                    if holds(&ta, &tb) && holds(&tb, &tc) {
                        assert!(holds(&ta, &tc), "transitivity at {a}, {b}, {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn order_term_display() {
        assert_eq!(OrderTerm::new(&["A1"], rat(4, 1)).to_string(), "A1 * t^4");
        assert_eq!(
            OrderTerm::new(&["C1", "C4", "K"], rat(9, 2)).to_string(),
            "C1*C4*K * t^(9/2)"
        );
        assert_eq!(OrderTerm::unit(rat(0, 1)).to_string(), "1");
        assert_eq!(OrderTerm::new(&["C5"], rat(0, 1)).to_string(), "C5");
    }
}
