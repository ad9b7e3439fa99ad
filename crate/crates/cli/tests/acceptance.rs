//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! A check that fails only because a stated value disagrees with the exact
//! computation carries a `known` note with the analysis; the criterion is
//! reported red and the run still succeeds. Any other red check fails the run.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use trop_theta::divisor::*;
use trop_theta::matrix::QMatrix;
use trop_theta::num::{add_vec, frac, int, rat};
use trop_theta::oracle;
use trop_theta::polyhedra::RationalPolyhedron;
use trop_theta::theta::*;
use trop_theta::{trop_det, Int, Rat, Tropical, TropicalMatrix};
use trop_theta_cli::{rr_check, run, RRCase};

struct Check {
    name: String,
    ok: bool,
    known: Option<&'static str>,
}

#[derive(Default)]
struct Criterion {
    checks: Vec<Check>,
}

impl Criterion {
    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push(Check {
            name: name.into(),
            ok,
            known: None,
        });
    }

    /// A check on a stated value that is expected to be contradicted.
    fn check_stated(&mut self, name: impl Into<String>, ok: bool, known: &'static str) {
        self.checks.push(Check {
            name: name.into(),
            ok,
            known: Some(known),
        });
    }
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name]
        .iter()
        .collect();
    p.display().to_string()
}

fn cli(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["trop-theta"];
    all.extend_from_slice(args);
    let out = run(all);
    (
        out.code,
        serde_json::from_str(&out.stdout).unwrap_or(Value::Null),
    )
}

fn m(rows: Vec<Vec<Rat>>) -> QMatrix {
    QMatrix::from_rows(rows)
}

fn m2(a: i64, b: i64, c: i64, d: i64) -> QMatrix {
    m(vec![vec![rat(a), rat(b)], vec![rat(c), rat(d)]])
}

fn rand_rat(rng: &mut ChaCha8Rng, range: i64, den: i64) -> Rat {
    frac(rng.gen_range(-range..=range), rng.gen_range(1..=den))
}

fn rand_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rat> {
    (0..n).map(|_| rand_rat(rng, 12, 6)).collect()
}

/// `Q = A` and `Λ = A^-1 M` with `1 <= |det M| <= max_det`.
fn definite_surface(rng: &mut ChaCha8Rng, max_det: i64) -> BundleSpec {
    loop {
        let (a, b, c) = (
            rng.gen_range(1..=3),
            rng.gen_range(-1..=1),
            rng.gen_range(1..=3),
        );
        if a * c <= b * b {
            continue;
        }
        let mm: Vec<i64> = (0..4).map(|_| rng.gen_range(-2..=2)).collect();
        let det = mm[0] * mm[3] - mm[1] * mm[2];
        if det == 0 || det.abs() > max_det {
            continue;
        }
        let q = m2(a, b, b, c);
        let l = q.inverse().unwrap().mul(&m2(mm[0], mm[1], mm[2], mm[3]));
        let alpha = rand_vec(rng, 2);
        return BundleSpec::from_parts(l, q, alpha).unwrap();
    }
}

fn definite_circle(rng: &mut ChaCha8Rng, max_det: i64) -> BundleSpec {
    let a = rng.gen_range(1..=4);
    let mm = rng.gen_range(1..=max_det);
    BundleSpec::from_parts(
        m(vec![vec![frac(mm, a)]]),
        m(vec![vec![rat(a)]]),
        rand_vec(rng, 1),
    )
    .unwrap()
}

/// Singular semidefinite forms `k v v^T` (or zero) on an integral lattice,
/// with `α` chosen to admit sections.
fn semidefinite_surface(rng: &mut ChaCha8Rng) -> BundleSpec {
    loop {
        let v = [rng.gen_range(-2i64..=2), rng.gen_range(-2i64..=2)];
        let k = rng.gen_range(0..=3);
        let q = m2(
            k * v[0] * v[0],
            k * v[0] * v[1],
            k * v[0] * v[1],
            k * v[1] * v[1],
        );
        let mm: Vec<i64> = (0..4).map(|_| rng.gen_range(-2..=2)).collect();
        let det = mm[0] * mm[3] - mm[1] * mm[2];
        if det == 0 || det.abs() > 2 {
            continue;
        }
        let r = rand_vec(rng, 2);
        let gamma = [rat(rng.gen_range(-2..=2)), rat(rng.gen_range(-2..=2))];
        let alpha = add_vec(&q.mul_vec(&r), &gamma);
        let spec = BundleSpec::from_parts(m2(mm[0], mm[1], mm[2], mm[3]), q, alpha).unwrap();
        if spec.class() == BundleClass::SemidefiniteSectionful {
            return spec;
        }
    }
}

fn random_section(rng: &mut ChaCha8Rng, basis: &Arc<GeneratorBasis>) -> ThetaSection {
    loop {
        let coeffs: Vec<Tropical> = (0..basis.len())
            .map(|_| {
                if rng.gen_bool(0.2) {
                    Tropical::NegInf
                } else {
                    Tropical::Finite(rand_rat(rng, 6, 4))
                }
            })
            .collect();
        if coeffs.iter().any(|c| !c.is_neg_inf()) {
            return ThetaSection::new(basis.clone(), coeffs).unwrap();
        }
    }
}

fn basis_of(spec: &BundleSpec) -> Arc<GeneratorBasis> {
    Arc::new(GeneratorBasis::new(spec).unwrap())
}

fn sorted_weights(c: &WeightedComplex) -> Vec<i64> {
    let mut w: Vec<i64> = c.cells.iter().map(|c| c.weight).collect();
    w.sort_unstable_by(|a, b| b.cmp(a));
    w
}

fn slice_of(v: &Value) -> RationalPolyhedron {
    serde_json::from_value(v["slice"].clone()).expect("slice polyhedron")
}

fn criterion_1() -> Criterion {
    let mut c = Criterion::default();
    let (code, v) = cli(&["polyhedron", &data("circle_q3.json")]);
    c.check("polyhedron exits 0", code == 0);
    let slice = slice_of(&v);
    let t = frac(1, 3);
    // coordinates (r, s) = (t_1, t_2) on the slice t_0 = 0
    let stated = RationalPolyhedron::from_ineqs(
        2,
        vec![
            trop_theta::polyhedra::Constraint::new(vec![rat(-2), rat(1)], t.clone()),
            trop_theta::polyhedra::Constraint::new(vec![rat(1), rat(-2)], t.clone()),
            trop_theta::polyhedra::Constraint::new(vec![rat(1), rat(1)], t.clone()),
        ],
    );
    c.check("slice equals the stated triangle", slice.set_equal(&stated));
    c.check(
        "H-representation is minimal",
        slice.eqs.is_empty()
            && slice.ineqs.len() == 3
            && slice.remove_redundancy().ineqs.len() == 3,
    );
    let lo = slice.minimize(&[rat(1), rat(0)]).value().cloned();
    let hi = slice.maximize(&[rat(1), rat(0)]).value().cloned();
    c.check(
        "φ¹ ranges over [-1/3, 1/3]",
        lo == Some(-t.clone()) && hi == Some(t.clone()),
    );
    let samples = [frac(-1, 3), frac(-1, 5), rat(0), frac(1, 7), frac(1, 3)];
    let mut upper = true;
    let mut stated_lower = true;
    let mut derived_lower = true;
    for r in &samples {
        let fibre = slice.fix_coordinate(0, r);
        let smax = fibre.maximize(&[rat(1)]).value().cloned();
        let smin = fibre.minimize(&[rat(1)]).value().cloned();
        let two_r = rat(2) * r;
        upper &= smax == Some(two_r.min(-r.clone()) + t.clone());
        stated_lower &= smin == Some(r / rat(2) + frac(1, 6));
        derived_lower &= smin == Some(r / rat(2) - frac(1, 6));
    }
    c.check("φ² <= min{2r, -r} + 1/3 is attained", upper);
    c.check_stated(
        "φ² >= ½r + 1/6 is attained",
        stated_lower,
        "the slice constraint r <= 2s + 1/3 gives s >= ½r - 1/6; at r = 0 the stated bound would exclude φ(Ξ) = (0, 0, 0)",
    );
    c.check("φ² >= ½r - 1/6 is attained", derived_lower);
    c
}

fn criterion_2() -> Criterion {
    let mut c = Criterion::default();
    let (code, v) = cli(&["polyhedron", &data("hexagonal.json")]);
    c.check("polyhedron exits 0", code == 0);
    c.check("slice has 14 vertices", v["slice_vertex_count"] == 14);
    let slice = slice_of(&v);
    let t = frac(1, 3);
    let e = |i: usize, sign: i64| {
        let mut a = vec![rat(0); 3];
        a[i] = rat(sign);
        a
    };
    let mut region = RationalPolyhedron::universe(3);
    // -1/3 <= r <= 1/3
    region.add_ineq(e(0, 1), t.clone());
    region.add_ineq(e(0, -1), t.clone());
    // max{0, earlier} - 1/3 <= x <= min{0, earlier} + 1/3 for x = s, t
    for x in 1..3 {
        region.add_ineq(e(x, 1), t.clone());
        region.add_ineq(e(x, -1), t.clone());
        for y in 0..x {
            region.add_ineq(add_vec(&e(x, 1), &e(y, -1)), t.clone());
            region.add_ineq(add_vec(&e(y, 1), &e(x, -1)), t.clone());
        }
    }
    c.check("slice equals the stated region", slice.set_equal(&region));
    c
}

fn criterion_3() -> Criterion {
    let mut c = Criterion::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut specs = Vec::new();
    for _ in 0..8 {
        specs.push(definite_surface(&mut rng, 6));
    }
    for _ in 0..6 {
        specs.push(definite_circle(&mut rng, 6));
    }
    while specs.len() < 24 {
        let s = semidefinite_surface(&mut rng);
        if h0(&s) <= 6 {
            specs.push(s);
        }
    }
    let mut agree = 0;
    for spec in &specs {
        let report = h0_report(spec, 8).unwrap();
        if report.polyhedron_dimension == Some(report.cokernel_formula as i64) && report.h0 <= 6 {
            agree += 1;
        }
    }
    c.check(
        format!("h⁰ = dim Im φ on {agree}/{} inputs", specs.len()),
        agree == specs.len(),
    );
    let (code, v) = cli(&["h0", &data("rank_one.json"), "--oracle"]);
    c.check(
        "semidefinite input through the CLI",
        code == 0 && v["agrees"] == true && v["h0"] == 2,
    );
    c
}

fn criterion_4() -> Criterion {
    let mut c = Criterion::default();
    let (code, v) = cli(&["self-intersect", &data("grid.json")]);
    c.check(
        "E₂ grid: stable total 2",
        code == 0 && v["stable"]["total"] == 2 && v["formula"] == "2",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut ok = 0;
    let trials = 12;
    for _ in 0..trials {
        let spec = definite_surface(&mut rng, 4);
        let basis = basis_of(&spec);
        let d = divisor_from_section(&random_section(&mut rng, &basis)).unwrap();
        let e = divisor_from_section(&random_section(&mut rng, &basis)).unwrap();
        let total = rat(stable_intersection_2d(&d, &e).unwrap().total);
        let two_det = rat(2) * spec.form().det_q(spec.torus());
        if total == two_det && total == self_intersection_formula(&spec) {
            ok += 1;
        }
    }
    c.check(
        format!("random definite surfaces: {ok}/{trials} with total = 2 det q"),
        ok == trials,
    );
    c
}

fn criterion_5() -> Criterion {
    let mut c = Criterion::default();
    let id = m2(1, 0, 0, 1);
    let hex_l = m(vec![
        vec![frac(4, 3), frac(-2, 3)],
        vec![frac(-2, 3), frac(4, 3)],
    ]);
    let hex = BundleSpec::from_parts(hex_l, m2(2, 1, 1, 2), vec![rat(0), rat(0)]).unwrap();
    let z = || vec![rat(0), rat(0)];
    let cases: Vec<(&str, BundleSpec, RRCase, usize, Rat)> = vec![
        ("hexagonal", hex.clone(), RRCase::Definite, 4, rat(4)),
        (
            "hexagonal, negated",
            hex.negate(),
            RRCase::Definite,
            4,
            rat(4),
        ),
        (
            "E₂",
            BundleSpec::from_parts(id.clone(), id.clone(), z()).unwrap(),
            RRCase::Definite,
            1,
            rat(1),
        ),
        (
            "Q = 0, integral α",
            BundleSpec::from_parts(id.clone(), m2(0, 0, 0, 0), vec![rat(1), rat(-2)]).unwrap(),
            RRCase::Trivial,
            2,
            rat(0),
        ),
        (
            "Q = 0, α not integral",
            BundleSpec::from_parts(id.clone(), m2(0, 0, 0, 0), vec![frac(1, 2), rat(0)]).unwrap(),
            RRCase::Sectionless,
            0,
            rat(0),
        ),
        (
            "rank one, α in Im q_R + Z*",
            BundleSpec::from_parts(id.clone(), m2(2, 0, 0, 0), vec![frac(1, 3), rat(0)]).unwrap(),
            RRCase::SemidefiniteSectionful,
            2,
            rat(0),
        ),
        (
            "rank one, negated",
            BundleSpec::from_parts(id.clone(), m2(-2, 0, 0, 0), vec![frac(1, 3), rat(0)]).unwrap(),
            RRCase::SemidefiniteSectionful,
            2,
            rat(0),
        ),
        (
            "rank one, α not integral on the kernel",
            BundleSpec::from_parts(id.clone(), m2(2, 0, 0, 0), vec![rat(0), frac(1, 2)]).unwrap(),
            RRCase::Sectionless,
            0,
            rat(0),
        ),
        (
            "indefinite diag(1, -1)",
            BundleSpec::from_parts(id.clone(), m2(1, 0, 0, -1), z()).unwrap(),
            RRCase::Indefinite,
            0,
            rat(-1),
        ),
        (
            "indefinite hyperbolic, index 2 lattice",
            BundleSpec::from_parts(m2(2, 0, 0, 1), m2(0, 1, 1, 0), z()).unwrap(),
            RRCase::Indefinite,
            0,
            rat(-2),
        ),
    ];
    for (name, spec, case, sum, half) in cases {
        let r = rr_check(&spec).unwrap();
        let ok = r.case == case
            && r.sum() == sum
            && r.half_d2 == half
            && r.matches_case_table
            && r.is_consistent()
            && r.inequality_holds;
        c.check(
            format!(
                "{name}: case {} with {} >= {}",
                r.case.tag(),
                r.sum(),
                r.half_d2
            ),
            ok,
        );
    }
    c
}

fn criterion_6() -> Criterion {
    let mut c = Criterion::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    // quasi-periodicity
    let mut probes = 0;
    let mut good = 0;
    while probes < 500 {
        let spec = match probes / 25 % 3 {
            0 => definite_surface(&mut rng, 4),
            1 => definite_circle(&mut rng, 5),
            _ => semidefinite_surface(&mut rng),
        };
        let basis = basis_of(&spec);
        let s = random_section(&mut rng, &basis);
        for _ in 0..25 {
            let n = spec.dim();
            let x = rand_vec(&mut rng, n);
            let z: Vec<Int> = (0..n).map(|_| int(rng.gen_range(-3..=3))).collect();
            let lambda = spec.torus().point(&z);
            let lhs = s.eval(&add_vec(&x, &lambda)).unwrap();
            let shift = spec.form().pair(&lambda, &x) + spec.beta(&lambda);
            if lhs == s.eval(&x).unwrap().mul(&Tropical::Finite(shift)) {
                good += 1;
            }
            probes += 1;
        }
    }
    c.check(
        format!("quasi-periodicity on {good}/{probes} probes"),
        good == probes,
    );
    // balancing of section divisors
    let mut balanced = 0;
    let trials = 12;
    for k in 0..trials {
        let spec = if k % 4 == 3 {
            semidefinite_surface(&mut rng)
        } else {
            definite_surface(&mut rng, 6)
        };
        let basis = basis_of(&spec);
        let d = divisor_from_section(&random_section(&mut rng, &basis)).unwrap();
        if d.validate_balancing().unwrap().is_balanced() {
            balanced += 1;
        }
    }
    c.check(
        format!("balancing of {balanced}/{trials} section divisors"),
        balanced == trials,
    );
    // fixtures
    let f1 = figure_one();
    let f2 = figure_two();
    let f3 = figure_three();
    c.check(
        "max{x, y, 0}: weights 1,1,1 and balanced",
        sorted_weights(&f1) == vec![1, 1, 1] && f1.validate_balancing().unwrap().is_balanced(),
    );
    c.check(
        "max{2x, y+1, x+y-1, 0}: computed divisor balanced",
        f2.validate_balancing().unwrap().is_balanced(),
    );
    c.check_stated(
        "max{2x, y+1, x+y-1, 0}: weights 1,1,1,1,1",
        sorted_weights(&f2) == vec![1, 1, 1, 1, 1],
        "the ray between the regions of 0 and 2x has slope difference (2, 0), so its weight is 2; the computed weights are 2,1,1,1,1",
    );
    let mut listed = f2.clone();
    listed.cells.iter_mut().for_each(|cell| cell.weight = 1);
    c.check_stated(
        "max{2x, y+1, x+y-1, 0}: listed weights balanced",
        listed.validate_balancing().unwrap().is_balanced(),
        "with every weight 1 the vertex where the regions of 0, y+1 and 2x meet sums to (0, 1), not zero",
    );
    c.check(
        "max{3x, 3y-3, 2x+y+3, x+3, 0}: weights 3,2,2,1,1,1,1 and balanced",
        sorted_weights(&f3) == vec![3, 2, 2, 1, 1, 1, 1]
            && f3.validate_balancing().unwrap().is_balanced(),
    );
    // φ∘π idempotent and φ(Ξ) = 0
    let mut idem = 0;
    let mut zero = 0;
    for k in 0..10 {
        let spec = if k % 2 == 0 {
            definite_surface(&mut rng, 4)
        } else {
            definite_circle(&mut rng, 5)
        };
        let basis = basis_of(&spec);
        let s = random_section(&mut rng, &basis);
        let once = s.normalize().unwrap();
        let twice = once.normalize().unwrap();
        let phi = once.phi_embed().unwrap();
        if twice.coeffs() == once.coeffs()
            && phi
                .iter()
                .zip(once.coeffs())
                .all(|(p, c)| c.finite() == Some(p))
        {
            idem += 1;
        }
        if ThetaSection::xi(basis)
            .phi_embed()
            .unwrap()
            .iter()
            .all(|v| *v == rat(0))
        {
            zero += 1;
        }
    }
    c.check(format!("φ∘π idempotent on {idem}/10"), idem == 10);
    c.check(
        format!("φ(Ξ) = 0 on {zero}/10 definite bundles"),
        zero == 10,
    );
    c
}

fn criterion_7() -> Criterion {
    let mut c = Criterion::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut dets = 0;
    for k in 0..42 {
        let l = k % 6 + 1;
        let entries: Vec<Tropical> = (0..l * l)
            .map(|_| {
                if rng.gen_bool(0.25) {
                    Tropical::NegInf
                } else {
                    Tropical::Finite(rand_rat(&mut rng, 20, 5))
                }
            })
            .collect();
        let mat = TropicalMatrix::new(l, l, entries).unwrap();
        if trop_det(&mat).unwrap() == oracle::trop_det_by_permutations(&mat).unwrap() {
            dets += 1;
        }
    }
    c.check(
        format!("tropical determinant = permutation max on {dets}/42"),
        dets == 42,
    );
    let mut cosets = 0;
    let trials = 20;
    for k in 0..trials {
        let spec = if k % 2 == 0 {
            definite_surface(&mut rng, 8)
        } else {
            definite_circle(&mut rng, 8)
        };
        let found = oracle::cosets_in_box(spec.form(), spec.torus(), 8).unwrap();
        let fast =
            trop_theta::lattice::coker_torsion_representatives(spec.torus(), spec.form()).unwrap();
        let mq = QMatrix::from_int(&spec.form().integral_matrix(spec.torus()).unwrap());
        let hit_once = found.iter().all(|a| {
            fast.iter()
                .filter(|b| oracle::congruent_mod_image(&mq, a, b))
                .count()
                == 1
        });
        if hit_once && found.len() == fast.len() {
            cosets += 1;
        }
    }
    c.check(
        format!("coset representatives = box enumeration on {cosets}/{trials}"),
        cosets == trials,
    );
    let mut phis = 0;
    for k in 0..10 {
        let spec = if k % 2 == 0 {
            definite_surface(&mut rng, 4)
        } else {
            definite_circle(&mut rng, 4)
        };
        let basis = basis_of(&spec);
        let s = random_section(&mut rng, &basis);
        let fast = s.phi_embed().unwrap();
        let all = (0..basis.len()).all(|i| {
            let brk = oracle::phi_by_breakpoints(&spec, basis.reps(), s.coeffs(), i, 3);
            let leg = oracle::phi_by_legendre(&spec, basis.reps(), s.coeffs(), i, 4);
            brk == fast[i] && leg.as_ref() == Some(&brk)
        });
        if all {
            phis += 1;
        }
    }
    c.check(
        format!("φ by Legendre = φ by breakpoints = fast φ on {phis}/10"),
        phis == 10,
    );
    for args in [
        vec!["sections", "circle_q3.json"],
        vec!["sections", "hexagonal.json"],
        vec!["h0", "hexagonal.json"],
        vec!["polyhedron", "hexagonal.json"],
        vec!["interpolate", "circle_interpolate.json"],
        vec!["self-intersect", "hexagonal.json"],
    ] {
        let path = data(args[1]);
        let (code, v) = cli(&[args[0], &path, "--oracle"]);
        c.check(
            format!("{} {} --oracle", args[0], args[1]),
            code == 0 && v["oracle"]["agree"] == true,
        );
    }
    c
}

fn criterion_8() -> Criterion {
    let mut c = Criterion::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let spec =
        BundleSpec::from_parts(m(vec![vec![rat(1)]]), m(vec![vec![rat(3)]]), vec![rat(0)]).unwrap();
    let basis = basis_of(&spec);
    let mut ok = 0;
    for _ in 0..20 {
        let pts: Vec<Vec<Rat>> = (0..2)
            .map(|_| {
                let d = rng.gen_range(1..=12);
                vec![frac(rng.gen_range(-2 * d..=2 * d), d)]
            })
            .collect();
        let s = vandermonde_interpolate(basis.clone(), &pts).unwrap();
        let d = divisor_from_section(&s).unwrap();
        if pts.iter().all(|p| d.contains_point(p)) {
            ok += 1;
        }
    }
    c.check(
        format!("divisor contains both points for {ok}/20 pairs"),
        ok == 20,
    );
    c
}

fn main() {
    let criteria: [(u8, &str, fn() -> Criterion); 8] = [
        (1, "L(3,0) slice and φ bounds", criterion_1),
        (2, "hexagonal slice, 14 vertices", criterion_2),
        (3, "h⁰ cross-validation", criterion_3),
        (4, "self-intersection", criterion_4),
        (5, "Riemann-Roch regression matrix", criterion_5),
        (6, "property suites", criterion_6),
        (7, "oracle equivalences", criterion_7),
        (8, "Vandermonde interpolation", criterion_8),
    ];
    let mut unexpected = false;
    let mut details = Vec::new();
    for (id, title, f) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(f);
        let secs = start.elapsed().as_secs_f64();
        let Ok(crit) = result else {
            println!("criterion {id} ({title}): FAIL (panicked) [{secs:.1}s]");
            unexpected = true;
            continue;
        };
        let red: Vec<&Check> = crit.checks.iter().filter(|c| !c.ok).collect();
        if red.is_empty() {
            println!(
                "criterion {id} ({title}): PASS ({} checks) [{secs:.1}s]",
                crit.checks.len()
            );
        } else {
            println!(
                "criterion {id} ({title}): FAIL ({} of {} checks red) [{secs:.1}s]",
                red.len(),
                crit.checks.len()
            );
        }
        for ch in &red {
            match ch.known {
                Some(why) => details.push(format!("  {id}: {} is contradicted: {why}", ch.name)),
                None => {
                    unexpected = true;
                    details.push(format!("  {id}: {} FAILED", ch.name));
                }
            }
        }
    }
    for d in &details {
        println!("{d}");
    }
    if unexpected {
        println!("acceptance: unexpected failures");
        std::process::exit(1);
    }
}
