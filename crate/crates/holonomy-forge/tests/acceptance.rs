//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line and enforcing its runtime budget. Expected values are
//! frozen from independent derivations (permutation-sign pairings, grid
//! enumeration, invariant-basis counting, hand substitution of the
//! estimate system), never from the code paths under test.

use std::time::{Duration, Instant};

use holonomy_forge::assets;
use holonomy_forge::estimates::{
    check_hypotheses, check_induction_closure, EstimateProfile, InductionSystem,
};
use holonomy_forge::forms::{
    canonical, combinations, verify_identity, CanonicalStructure, KForm, LinearEndo,
    StructureIdentity,
};
use holonomy_forge::orbifold::{
    fixed_locus, generate_group, singular_set, standard_t7_group, standard_t7_involutions,
    AffineIsometry, FiniteIsomGroup,
};
use holonomy_forge::rat::{int, rat, Rational};
use holonomy_forge::resolution::{
    classify_local_model, orbifold_betti, resolution_data, AdeTable, LocalModelKind,
};
use holonomy_forge::spin7::cyclotomic::Cyc;
use holonomy_forge::spin7::wps::{
    points_equivalent, singular_points, verify_involution, WpsPoint,
};
use holonomy_forge::spin7::{
    build_group_g, frame_report, holonomy_outcome, w_frame, z_frame, HolonomyOutcome,
    ResolutionChoice,
};

fn conclude(label: &str, budget: Duration, started: Instant, ok: bool) {
    let elapsed = started.elapsed();
    println!(
        "criterion {label}: {} ({} ms, budget {} ms)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_millis(),
        budget.as_millis()
    );
    assert!(ok, "criterion {label} failed");
    assert!(
        elapsed <= budget,
        "criterion {label} exceeded its {budget:?} budget: {elapsed:?}"
    );
}

const SECOND: Duration = Duration::from_secs(1);

#[test]
fn criterion_01_canonical_forms() {
    let started = Instant::now();
    // The sign tables, frozen.
    let phi_terms: [(i64, [u8; 3]); 7] = [
        (1, [1, 2, 3]),
        (1, [1, 4, 5]),
        (1, [1, 6, 7]),
        (1, [2, 4, 6]),
        (-1, [2, 5, 7]),
        (-1, [3, 4, 7]),
        (-1, [3, 5, 6]),
    ];
    let star_terms: [(i64, [u8; 4]); 7] = [
        (1, [4, 5, 6, 7]),
        (1, [2, 3, 6, 7]),
        (1, [2, 3, 4, 5]),
        (1, [1, 3, 5, 7]),
        (-1, [1, 3, 4, 6]),
        (-1, [1, 2, 5, 6]),
        (-1, [1, 2, 4, 7]),
    ];
    let omega_terms: [(i64, [u8; 4]); 14] = [
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
    let phi = canonical(CanonicalStructure::G2Phi);
    let star_phi = canonical(CanonicalStructure::G2StarPhi);
    let omega = canonical(CanonicalStructure::Spin7Omega);
    let mut ok = phi.term_count() == 7 && star_phi.term_count() == 7 && omega.term_count() == 14;
    for (c, idx) in phi_terms {
        ok &= phi.coeff(&idx) == int(c);
    }
    for (c, idx) in star_terms {
        ok &= star_phi.coeff(&idx) == int(c);
    }
    for (c, idx) in omega_terms {
        ok &= omega.coeff(&idx) == int(c);
    }
    ok &= phi.hodge_star() == star_phi;
    conclude("1 canonical forms", SECOND, started, ok);
}

#[test]
fn criterion_02_identity_suite() {
    let started = Instant::now();
    let mut ok = true;
    for id in [
        StructureIdentity::G2FromCy3,
        StructureIdentity::G2FromCy2,
        StructureIdentity::G2StarFromCy2,
        StructureIdentity::Spin7FromCy4,
    ] {
        let r = verify_identity(id);
        ok &= r.holds && r.discrepancy.is_zero();
    }
    conclude("2 identity suite", SECOND, started, ok);
}

#[test]
fn criterion_03_singular_set_reproduction() {
    let started = Instant::now();
    let (a, b, c) = standard_t7_involutions();
    let compose =
        |x: &AffineIsometry, y: &AffineIsometry| x.compose(y).expect("same dimension");
    let mut ok = true;
    // Mixed products act freely.
    for g in [compose(&b, &c), compose(&c, &a), compose(&a, &b), compose(&compose(&a, &b), &c)] {
        ok &= fixed_locus(&g).is_empty();
    }
    // Each generator fixes 16 three-tori.
    for g in [&a, &b, &c] {
        let fl = fixed_locus(g);
        ok &= fl.count() == 16 && fl.component_dim == 3;
    }
    let group = standard_t7_group();
    let phi = canonical(CanonicalStructure::G2Phi);
    let ss = singular_set(&group, &phi).expect("structure preserved");
    ok &= ss.components.len() == 12;
    ok &= ss.intersections.is_empty();
    for gen in [&a, &b, &c] {
        let idx = group.elements().iter().position(|e| e == gen).unwrap();
        let from_gen =
            ss.components.iter().filter(|comp| comp.owners.contains(&idx)).count();
        ok &= from_gen == 4;
    }
    for comp in &ss.components {
        ok &= comp.orbit_size == 4;
        let model = classify_local_model(comp);
        ok &= model.kind == LocalModelKind::C2Quotient { order: 2 };
        ok &= model.normal_dim == 4;
    }
    conclude("3 singular set", SECOND, started, ok);
}

/// Independent oracle: count basis k-forms invariant under all the diagonal
/// sign patterns of a group.
fn invariant_basis_count(group: &FiniteIsomGroup, k: usize) -> usize {
    let n = group.dim();
    combinations(n as u8, k)
        .into_iter()
        .filter(|idx| {
            group.elements().iter().all(|g| {
                let sign: i64 = idx
                    .iter()
                    .map(|&i| g.linear()[(i as usize - 1, i as usize - 1)])
                    .product();
                sign == 1
            })
        })
        .count()
}

#[test]
fn criterion_04_betti_pipeline() {
    let started = Instant::now();
    let group = standard_t7_group();
    let base = orbifold_betti(&group).expect("integral traces");
    let mut ok = base.b == vec![1, 0, 0, 7, 7, 0, 0, 1];
    for k in 0..=7 {
        ok &= base.b[k] == invariant_basis_count(&group, k);
    }
    let phi = canonical(CanonicalStructure::G2Phi);
    let ss = singular_set(&group, &phi).unwrap();
    let table = AdeTable::bundled();
    let items: Vec<_> = ss
        .components
        .into_iter()
        .map(|c| {
            let model = classify_local_model(&c);
            let data = resolution_data(&model, &table).expect("supported model");
            (c, model, data)
        })
        .collect();
    let resolved = holonomy_forge::resolution::resolved_betti(&base, &items).unwrap();
    ok &= resolved == (12, 43);
    ok &= assets::g2_betti_catalogue().contains(&(12, 43));
    conclude("4 betti pipeline", SECOND, started, ok);
}

#[test]
fn criterion_05_estimates() {
    let started = Instant::now();
    let report = check_hypotheses(&EstimateProfile::paper_default());
    let mut ok = report.all_pass();
    ok &= report.margins() == vec![rat(0, 1), rat(5, 2), rat(16, 7), rat(0, 1), rat(0, 1)];
    let closure = check_induction_closure(&InductionSystem::paper_default());
    ok &= closure.closes;
    ok &= closure.min_positive_margin == Some(rat(1, 2));
    ok &= closure.constraints_solvable;
    ok &= !closure.constant_constraints.is_empty();
    conclude("5 estimates", SECOND, started, ok);
}

#[test]
fn criterion_06_spin7_group() {
    let started = Instant::now();
    let g = build_group_g().expect("group builds");
    let ok = g.order == 8
        && g.nonabelian
        && g.alpha_order_four
        && g.beta_order_four
        && g.squares_agree
        && g.braid_relation
        && g.nonidentity_kernel_dims == vec![0usize; 7]
        && g.omega_preserved_count == 8;
    conclude("6 spin7 group", SECOND, started, ok);
}

#[test]
fn criterion_07_frames() {
    let started = Instant::now();
    let z = frame_report(&z_frame()).expect("z frame verifies");
    let w = frame_report(&w_frame()).expect("w frame verifies");
    let ok = z.identity_holds
        && w.identity_holds
        && z.i_multiplication == "alpha"
        && w.i_multiplication == "beta"
        && z.conjugate_swap_matches
        && w.conjugate_swap_matches;
    conclude("7 frames", SECOND, started, ok);
}

#[test]
fn criterion_08_weighted_projective_example() {
    let started = Instant::now();
    let spec = holonomy_forge::io::parse_wps_spec(&assets::asset_text("joyce_wps.ywp"))
        .expect("bundled spec parses");
    let y = spec.hypersurface;
    let sigma = spec.involution.expect("bundled involution");
    let mut ok = y.canonical_degree_check();
    let found = singular_points(&y).expect("finite singular set");
    ok &= found.len() == 3;
    ok &= found.iter().all(|p| p.stabilizer_order == 4);
    // The three known points, frozen: [0,0,0,0,1,w] with w = -1, e^{±iπ/3}.
    let zero = Cyc::zero;
    let known: Vec<WpsPoint> = [Cyc::from_int(-1), Cyc::zeta_pow(2), Cyc::zeta_pow(10)]
        .into_iter()
        .map(|w| WpsPoint::new(vec![zero(), zero(), zero(), zero(), Cyc::one(), w]))
        .collect();
    for k in &known {
        ok &= found.iter().any(|p| points_equivalent(y.weights(), &p.point, k));
    }
    let inv = verify_involution(&y, &sigma).expect("well defined and involutive");
    ok &= inv.singular_fixed.len() == 3;
    ok &= inv.singular_fixed.iter().all(|(_, fixed)| *fixed);
    ok &= inv.fixed_smooth_samples == 0 && inv.samples_checked > 0;
    conclude("8 weighted projective", Duration::from_secs(5), started, ok);
}

#[test]
fn criterion_09_holonomy_outcomes() {
    let started = Instant::now();
    let mut reducible = 0;
    let mut full = 0;
    for mask in 0u8..8 {
        let choices: Vec<ResolutionChoice> = (0..3)
            .map(|i| {
                if mask & (1 << i) == 0 {
                    ResolutionChoice::FrameAligned
                } else {
                    ResolutionChoice::FrameSwapped
                }
            })
            .collect();
        match holonomy_outcome(&choices).outcome {
            HolonomyOutcome::Z2SemidirectSu4 => reducible += 1,
            HolonomyOutcome::Spin7 => full += 1,
        }
    }
    let all_aligned = holonomy_outcome(&[ResolutionChoice::FrameAligned; 3]);
    let ok = reducible == 1
        && full == 7
        && all_aligned.outcome == HolonomyOutcome::Z2SemidirectSu4;
    conclude("9 holonomy outcomes", SECOND, started, ok);
}

// --- Criterion 10: randomized property suites -----------------------------

struct Xorshift(u64);

impl Xorshift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

fn random_form(rng: &mut Xorshift, n: usize, degree: usize) -> KForm {
    let pool = combinations(n as u8, degree);
    let mut terms = Vec::new();
    for _ in 0..rng.below(4) {
        let idx = pool[rng.below(pool.len() as u64) as usize].clone();
        let coeff = rat(rng.below(9) as i64 - 4, 1 + rng.below(3) as i64);
        terms.push((idx, coeff));
    }
    KForm::from_terms(n, degree, terms)
}

/// Random rational special orthogonal matrix: signed permutation, det fixed
/// to +1, optionally mixed with an exact 3-4-5 rotation block.
fn random_special_orthogonal(rng: &mut Xorshift, n: usize) -> LinearEndo {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.below(i as u64 + 1) as usize);
    }
    let mut rows = vec![vec![rat(0, 1); n]; n];
    for (i, &p) in perm.iter().enumerate() {
        rows[i][p] = if rng.below(2) == 0 { rat(1, 1) } else { rat(-1, 1) };
    }
    let mut m = LinearEndo::from_rows(rows);
    if m.det() != rat(1, 1) {
        let mut rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| m.matrix()[(i, j)].clone()).collect())
            .collect();
        for x in rows[0].iter_mut() {
            *x = -x.clone();
        }
        m = LinearEndo::from_rows(rows);
    }
    if rng.below(2) == 0 {
        let mut rot = vec![vec![rat(0, 1); n]; n];
        rot[0][0] = rat(3, 5);
        rot[0][1] = rat(-4, 5);
        rot[1][0] = rat(4, 5);
        rot[1][1] = rat(3, 5);
        for i in 2..n {
            rot[i][i] = rat(1, 1);
        }
        m = m.compose(&LinearEndo::from_rows(rot));
    }
    m
}

#[test]
fn criterion_10_property_suites() {
    let started = Instant::now();
    let mut rng = Xorshift(0x5851f42d4c957f2d);
    let mut ok = true;
    let mut cases = 0usize;
    while cases < 1000 {
        let n = 3 + rng.below(6) as usize; // 3..=8
        let da = (rng.below(5) as usize).min(n).min(4);
        let db = (rng.below(5) as usize).min(n).min(4);
        let dc = (rng.below(5) as usize).min(n).min(4);
        let a = random_form(&mut rng, n, da);
        let b = random_form(&mut rng, n, db);
        let c = random_form(&mut rng, n, dc);
        // Associativity.
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        ok &= left == right;
        // Graded anticommutativity.
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        let sign = if (a.degree() * b.degree()).is_multiple_of(2) { 1 } else { -1 };
        ok &= ab == ba.scale(&rat(sign, 1));
        // Star involution sign on a.
        if a.degree() <= n {
            let k = a.degree();
            let sign = if (k * (n - k)).is_multiple_of(2) { 1 } else { -1 };
            ok &= a.hodge_star().hodge_star() == a.scale(&rat(sign, 1));
        }
        // Orthogonal pullback commutes with the star.
        let g = random_special_orthogonal(&mut rng, n);
        let lhs = KForm::pullback(&g, &a.hodge_star()).unwrap();
        let rhs = KForm::pullback(&g, &a).unwrap().hodge_star();
        ok &= lhs == rhs;
        cases += 1;
        assert!(ok, "algebra law failed at case {cases} (n = {n})");
    }
    // Smith-normal-form component counts against the grid oracle, for every
    // element of the standard group.
    let group = standard_t7_group();
    for g in group.elements() {
        let fl = fixed_locus(g);
        let mut grid_count = 0usize;
        let step = 4i64;
        let mut x = [0i64; 7];
        'grid: loop {
            let point: Vec<Rational> = x.iter().map(|&k| rat(k, step)).collect();
            let image = g.apply_point(&point);
            if image
                .iter()
                .zip(point.iter())
                .all(|(p, q)| (p - q).is_integer())
            {
                grid_count += 1;
            }
            let mut i = 0;
            loop {
                if i == 7 {
                    break 'grid;
                }
                x[i] += 1;
                if x[i] < step {
                    break;
                }
                x[i] = 0;
                i += 1;
            }
        }
        let predicted = fl.count() * 4usize.pow(fl.component_dim as u32);
        ok &= grid_count == if fl.is_empty() { 0 } else { predicted };
    }
    // Poincaré symmetry of the invariant cohomology over all subgroups.
    for sub in group.subgroups() {
        let betti = orbifold_betti(&sub).expect("integral traces");
        ok &= betti.poincare_symmetric();
        for k in 0..=7 {
            ok &= betti.b[k] == invariant_basis_count(&sub, k);
        }
    }
    conclude("10 property suites", Duration::from_secs(30), started, ok);
}

#[test]
fn criterion_runtime_smoke() {
    // The per-criterion budgets above are enforced inside each test; this
    // one records that the whole suite exists and the assets resolve.
    assert_eq!(assets::g2_betti_catalogue().len(), 252);
    assert_eq!(assets::spin7_betti_catalogue().len(), 14);
    let group = generate_group(7, &[], 1).unwrap();
    assert_eq!(group.order(), 1);
}
