//! Argument parsing and the subcommands.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use serde_json::{json, Value};
use trop_theta::divisor::{
    divisor_from_section, figure_one, figure_three, figure_two, intersection_formula_2d,
    self_intersection_formula, stable_intersection_2d, vandermonde_interpolate, WeightedComplex,
};
use trop_theta::oracle;
use trop_theta::theta::{
    h0, section_polyhedron_with, BundleClass, BundleSpec, GeneratorBasis, H0Report, ThetaSection,
    DEFAULT_H0_POLYHEDRON_CAP,
};
use trop_theta::{trop_det, Error, Rat, Result, Tropical, TropicalMatrix};

use crate::input::Input;
use crate::rr::rr_check;
use crate::svg;

#[derive(Parser, Debug)]
#[command(
    name = "trop-theta",
    version,
    about = "Exact tropical theta functions on tropical tori"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Run the brute-force cross-checks alongside the fast path.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Directory for SVG output.
    #[arg(long, global = true)]
    pub svg_out: Option<PathBuf>,
    /// Cap on lattice enumeration nodes.
    #[arg(long, global = true)]
    pub max_box: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generator basis, fundamental cells and the φ-coordinates of a section.
    Sections { input: PathBuf },
    /// h⁰ by the cokernel count, cross-checked with the section polyhedron.
    H0 { input: PathBuf },
    /// The section polyhedron and its slice.
    Polyhedron {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        slice_coordinate: usize,
    },
    /// The divisor of a section.
    Divisor { input: PathBuf },
    /// Stable intersection of the divisors of two sections on one surface.
    Intersect {
        input: PathBuf,
        #[arg(long)]
        with: PathBuf,
    },
    /// `D^n` by the determinant formula and, on surfaces, by stable intersection.
    SelfIntersect { input: PathBuf },
    /// Both sides of the Riemann-Roch inequality on a surface.
    RrCheck { input: PathBuf },
    /// The section through given points by the tropical Vandermonde determinant.
    Interpolate { input: PathBuf },
    /// Writes SVG figures to `--svg-out`.
    Figures {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Figure::All)]
        what: Figure,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    All,
    Divisor,
    Polyhedron,
    Intersection,
    Fixtures,
}

/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_ORACLE_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnsupportedDimension(_)
        | Error::TooHighDimensional(_)
        | Error::NoSections(_)
        | Error::NotApplicable(_)
        | Error::DegenerateBasis(_)
        | Error::DegeneratePerturbation
        | Error::NotSemidefinite
        | Error::NotPositiveDefinite => EXIT_UNSUPPORTED,
        _ => EXIT_INVALID,
    }
}

fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or("Error")
        .to_string()
}

pub fn error_json(e: &Error) -> Value {
    json!({"error": {"kind": error_kind(e), "message": e.to_string(), "exit_code": exit_code(e)}})
}

fn rs(r: &Rat) -> Value {
    Value::String(r.to_string())
}

fn rsv(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rs).collect())
}

fn to_value<T: serde::Serialize + ?Sized>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

/// Cross-check results collected under `--oracle`.
#[derive(Default)]
struct Checks(Vec<Value>);

impl Checks {
    fn push(&mut self, name: &str, agree: bool, detail: Value) {
        self.0
            .push(json!({"name": name, "agree": agree, "detail": detail}));
    }

    fn skip(&mut self, name: &str, why: &str) {
        self.0.push(json!({"name": name, "skipped": why}));
    }

    fn agree(&self) -> bool {
        self.0
            .iter()
            .all(|c| c.get("agree").is_none_or(|a| a == &Value::Bool(true)))
    }

    fn attach(self, out: &mut Value) {
        out["oracle"] = json!({"agree": self.agree(), "checks": self.0});
    }
}

struct Ctx {
    oracle: bool,
    svg_out: Option<PathBuf>,
    max_box: Option<usize>,
}

impl Ctx {
    fn basis(&self, spec: &BundleSpec) -> Result<Arc<GeneratorBasis>> {
        Ok(Arc::new(match self.max_box {
            Some(cap) => GeneratorBasis::with_cap(spec, cap)?,
            None => GeneratorBasis::new(spec)?,
        }))
    }

    fn section(&self, input: &Input) -> Result<ThetaSection> {
        let basis = self.basis(&input.spec)?;
        match &input.options.coefficients {
            Some(c) => {
                if c.len() != basis.len() {
                    return Err(Error::DimensionMismatch(format!(
                        "{} coefficients for {} generators",
                        c.len(),
                        basis.len()
                    )));
                }
                ThetaSection::new(basis, c.clone())
            }
            None => Ok(ThetaSection::xi(basis)),
        }
    }

    fn write_svg(&self, name: &str, body: &str) -> Result<Option<String>> {
        let Some(dir) = &self.svg_out else {
            return Ok(None);
        };
        std::fs::create_dir_all(dir)
            .map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
        let path = dir.join(name);
        std::fs::write(&path, body)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Ok(Some(path.display().to_string()))
    }
}

fn require_sections(spec: &BundleSpec) -> Result<()> {
    if spec.class().has_sections() {
        Ok(())
    } else {
        Err(Error::NoSections(format!("{:?}", spec.class())))
    }
}

fn definite(spec: &BundleSpec) -> bool {
    spec.class() == BundleClass::PositiveDefinite
}

fn coset_check(
    checks: &mut Checks,
    spec: &BundleSpec,
    reps: &[Vec<trop_theta::Int>],
) -> Result<()> {
    let det = spec.form().det_q(spec.torus()).abs();
    let Some(radius) = det
        .to_integer()
        .try_into()
        .ok()
        .filter(|&r: &i64| r > 0 && r <= 8)
    else {
        checks.skip(
            "coset_representatives",
            "needs a nondegenerate form with |det q| <= 8",
        );
        return Ok(());
    };
    let found = oracle::cosets_in_box(spec.form(), spec.torus(), radius)?;
    let m = trop_theta::matrix::QMatrix::from_int(&spec.form().integral_matrix(spec.torus())?);
    let covered = found.iter().all(|a| {
        reps.iter()
            .filter(|b| oracle::congruent_mod_image(&m, a, b))
            .count()
            == 1
    });
    checks.push(
        "coset_representatives",
        covered && found.len() == reps.len(),
        json!({"fast": reps.len(), "box": found.len()}),
    );
    Ok(())
}

fn phi_checks(checks: &mut Checks, s: &ThetaSection) -> Result<()> {
    let basis = s.basis();
    let spec = basis.spec();
    if !definite(spec) || spec.dim() > 2 {
        checks.skip("phi", "oracles cover positive definite bundles with n <= 2");
        return Ok(());
    }
    let phi = s.phi_embed()?;
    for (i, v) in phi.iter().enumerate() {
        let by_breakpoints = oracle::phi_by_breakpoints(spec, basis.reps(), s.coeffs(), i, 3);
        let by_legendre = oracle::phi_by_legendre(spec, basis.reps(), s.coeffs(), i, 4);
        checks.push(
            "phi_breakpoints",
            &by_breakpoints == v,
            json!({"b": i, "fast": rs(v), "oracle": rs(&by_breakpoints)}),
        );
        checks.push(
            "phi_legendre",
            by_legendre.as_ref() == Some(v),
            json!({"b": i, "fast": rs(v), "oracle": by_legendre.as_ref().map(rs)}),
        );
    }
    Ok(())
}

fn sections(ctx: &Ctx, input: &Input) -> Result<Value> {
    let spec = &input.spec;
    let mut out = json!({"class": to_value(&spec.class()), "h0": h0(spec)});
    if !spec.class().has_sections() {
        out["reps"] = json!([]);
        return Ok(out);
    }
    let s = ctx.section(input)?;
    let basis = s.basis().clone();
    let generators: Vec<Value> = (0..basis.len())
        .map(|i| {
            let cell = basis.fundamental_cell(i).vertex_enumeration();
            json!({
                "b": to_value(&basis.reps()[i].iter().map(|v| v.to_string()).collect::<Vec<_>>()),
                "r_b": rs(basis.r_of_b(i)),
                "center": rsv(basis.center(i)),
                "cell_vertices": Value::Array(cell.vertices.iter().map(|v| rsv(v)).collect()),
            })
        })
        .collect();
    out["working_dim"] = json!(basis.working_dim());
    out["generators"] = Value::Array(generators);
    out["coefficients"] = to_value(s.coeffs());
    out["phi"] = rsv(&s.phi_embed()?);
    if ctx.oracle {
        let mut checks = Checks::default();
        coset_check(&mut checks, spec, basis.reps())?;
        phi_checks(&mut checks, &s)?;
        checks.attach(&mut out);
    }
    Ok(out)
}

fn h0_report(ctx: &Ctx, spec: &BundleSpec) -> Result<H0Report> {
    let cokernel_formula = h0(spec);
    let polyhedron_dimension =
        if spec.class().has_sections() && cokernel_formula <= DEFAULT_H0_POLYHEDRON_CAP {
            Some(section_polyhedron_with(&*ctx.basis(spec)?, 0)?.dimension())
        } else {
            None
        };
    Ok(H0Report {
        class: spec.class(),
        h0: cokernel_formula,
        cokernel_formula,
        polyhedron_dimension,
    })
}

fn h0_cmd(ctx: &Ctx, input: &Input) -> Result<Value> {
    let report = h0_report(ctx, &input.spec)?;
    let mut out = to_value(&report);
    out["agrees"] = json!(report.agrees());
    if ctx.oracle {
        let mut checks = Checks::default();
        checks.push(
            "polyhedron_dimension",
            report.agrees(),
            json!({"cokernel": report.cokernel_formula, "polyhedron": report.polyhedron_dimension}),
        );
        if input.spec.class().has_sections() {
            coset_check(&mut checks, &input.spec, ctx.basis(&input.spec)?.reps())?;
        }
        checks.attach(&mut out);
    }
    Ok(out)
}

fn polyhedron(ctx: &Ctx, input: &Input, slice: usize) -> Result<Value> {
    require_sections(&input.spec)?;
    let basis = ctx.basis(&input.spec)?;
    let sp = section_polyhedron_with(&basis, slice)?;
    let mut out = to_value(&sp);
    out["dimension"] = json!(sp.dimension());
    out["slice_vertex_count"] = json!(sp.slice_vertices.vertices.len());
    if ctx.svg_out.is_some() && (2..=4).contains(&basis.len()) {
        out["svg"] = json!(ctx.write_svg("polyhedron.svg", &svg::slice_svg(&sp)?)?);
    }
    if ctx.oracle {
        let mut checks = Checks::default();
        let mut fast = sp.slice_vertices.vertices.clone();
        fast.sort();
        let brute = oracle::vertices_by_subsets(&sp.slice);
        checks.push(
            "slice_vertices",
            sp.slice_vertices.rays.is_empty() && fast == brute,
            json!({"fast": fast.len(), "subsets": brute.len()}),
        );
        let xi = ThetaSection::xi(basis.clone());
        checks.push(
            "phi_of_xi_in_polyhedron",
            sp.contains(&xi.phi_embed()?),
            Value::Null,
        );
        phi_checks(&mut checks, &xi)?;
        checks.attach(&mut out);
    }
    Ok(out)
}

fn divisor(ctx: &Ctx, input: &Input) -> Result<Value> {
    require_sections(&input.spec)?;
    let s = ctx.section(input)?;
    let d = divisor_from_section(&s)?;
    let balancing = d.validate_balancing()?;
    let mut out = json!({
        "coefficients": to_value(s.coeffs()),
        "divisor": to_value(&d),
        "balancing": to_value(&balancing),
    });
    if d.ambient_dim == 1 {
        out["degree"] = json!(d.degree());
    }
    if ctx.svg_out.is_some() {
        out["svg"] = json!(ctx.write_svg("divisor.svg", &svg::divisor_svg(&d)?)?);
    }
    if ctx.oracle {
        let mut checks = Checks::default();
        checks.push("balancing", balancing.is_balanced(), Value::Null);
        checks.attach(&mut out);
    }
    Ok(out)
}

fn surface_divisor(ctx: &Ctx, input: &Input) -> Result<(ThetaSection, WeightedComplex)> {
    require_sections(&input.spec)?;
    if input.spec.dim() != 2 || !definite(&input.spec) {
        return Err(Error::NotApplicable(
            "stable intersection needs a positive definite bundle on a surface".into(),
        ));
    }
    let s = ctx.section(input)?;
    let d = divisor_from_section(&s)?;
    Ok((s, d))
}

fn intersect(ctx: &Ctx, input: &Input, with: &Path) -> Result<Value> {
    let other = Input::from_path(with)?;
    let (_, d1) = surface_divisor(ctx, input)?;
    let (_, mut d2) = surface_divisor(ctx, &other)?;
    if let Some(v) = &other.options.shift {
        d2 = d2.translate(v);
    }
    let formula = intersection_formula_2d(&input.spec, &other.spec)?;
    let report = stable_intersection_2d(&d1, &d2)?;
    let mut out = json!({"stable": to_value(&report), "formula": rs(&formula)});
    if ctx.svg_out.is_some() {
        out["svg"] = json!(ctx.write_svg(
            "intersection.svg",
            &svg::intersection_svg(&d1, &d2, &report)?
        )?);
    }
    if ctx.oracle {
        let mut checks = Checks::default();
        checks.push(
            "stable_vs_formula",
            Rat::from_integer(report.total.into()) == formula,
            json!({"stable": report.total, "formula": rs(&formula)}),
        );
        checks.attach(&mut out);
    }
    Ok(out)
}

fn self_intersect(ctx: &Ctx, input: &Input) -> Result<Value> {
    let spec = &input.spec;
    let formula = self_intersection_formula(spec);
    let mut out = json!({"dim": spec.dim(), "formula": rs(&formula), "det_q": rs(&spec.form().det_q(spec.torus()))});
    if spec.dim() == 2 && definite(spec) {
        let (_, d) = surface_divisor(ctx, input)?;
        let moved = match &input.options.shift {
            Some(v) => d.translate(v),
            None => d.clone(),
        };
        let report = stable_intersection_2d(&d, &moved)?;
        if ctx.svg_out.is_some() {
            out["svg"] = json!(ctx.write_svg(
                "self_intersection.svg",
                &svg::intersection_svg(&d, &moved, &report)?
            )?);
        }
        if ctx.oracle {
            let mut checks = Checks::default();
            checks.push(
                "stable_vs_formula",
                Rat::from_integer(report.total.into()) == formula,
                json!({"stable": report.total, "formula": rs(&formula)}),
            );
            checks.attach(&mut out);
        }
        out["stable"] = to_value(&report);
    } else {
        out["stable"] = Value::Null;
    }
    Ok(out)
}

fn rr(ctx: &Ctx, input: &Input) -> Result<Value> {
    let report = rr_check(&input.spec)?;
    let mut out = to_value(&report);
    out["consistent"] = json!(report.is_consistent());
    if ctx.oracle {
        let mut checks = Checks::default();
        for (name, spec) in [
            ("h0_d", input.spec.clone()),
            ("h0_neg_d", input.spec.negate()),
        ] {
            let r = h0_report(ctx, &spec)?;
            match r.polyhedron_dimension {
                Some(d) => {
                    checks.push(name, r.agrees(), json!({"cokernel": r.h0, "polyhedron": d}))
                }
                None => checks.skip(name, "no sections or beyond the polyhedron cap"),
            }
        }
        checks.attach(&mut out);
    }
    Ok(out)
}

fn interpolate(ctx: &Ctx, input: &Input) -> Result<Value> {
    require_sections(&input.spec)?;
    let points = input
        .options
        .points
        .clone()
        .ok_or_else(|| Error::Parse("options.points is required".into()))?;
    let basis = ctx.basis(&input.spec)?;
    let s = vandermonde_interpolate(basis.clone(), &points)?;
    let d = divisor_from_section(&s)?;
    let contains: Vec<bool> = points.iter().map(|p| d.contains_point(p)).collect();
    let mut out = json!({
        "coefficients": to_value(s.coeffs()),
        "divisor": to_value(&d),
        "contains": contains,
    });
    if ctx.oracle {
        let mut checks = Checks::default();
        let l = basis.len();
        if l <= 6 {
            let mut entries = vec![Tropical::one(); l];
            for q in &points {
                let w = basis.project(q);
                for j in 0..l {
                    entries.push(Tropical::Finite(basis.eval_working(j, &w)?));
                }
            }
            let m = TropicalMatrix::new(l, l, entries)?;
            for j in 0..l {
                let minor = m.minor(0, j).expect("square");
                let brute = oracle::trop_det_by_permutations(&minor)?;
                checks.push(
                    "cofactor",
                    brute == s.coeffs()[j] && trop_det(&minor)? == brute,
                    json!({"j": j, "fast": to_value(&s.coeffs()[j]), "permutations": to_value(&brute)}),
                );
            }
        } else {
            checks.skip("cofactor", "permutation enumeration is limited to l <= 6");
        }
        checks.push("contains_points", contains.iter().all(|&c| c), Value::Null);
        checks.attach(&mut out);
    }
    Ok(out)
}

fn figures(ctx: &Ctx, input: &Input, what: Figure) -> Result<Value> {
    if ctx.svg_out.is_none() {
        return Err(Error::Parse("figures needs --svg-out".into()));
    }
    let spec = &input.spec;
    let want = |f: Figure| what == Figure::All || what == f;
    let mut written = Vec::new();
    let mut skipped = Vec::new();
    if want(Figure::Divisor) {
        if spec.class().has_sections() && spec.dim() <= 2 {
            let d = divisor_from_section(&ctx.section(input)?)?;
            written.extend(ctx.write_svg("divisor.svg", &svg::divisor_svg(&d)?)?);
        } else {
            skipped.push(
                json!({"figure": "divisor", "why": "needs a bundle with sections and n <= 2"}),
            );
        }
    }
    if want(Figure::Polyhedron) {
        let m = if spec.class().has_sections() {
            h0(spec)
        } else {
            0
        };
        if (2..=4).contains(&m) {
            let sp = section_polyhedron_with(&*ctx.basis(spec)?, 0)?;
            written.extend(ctx.write_svg("polyhedron.svg", &svg::slice_svg(&sp)?)?);
        } else {
            skipped.push(json!({"figure": "polyhedron", "why": "needs 2 <= |B| <= 4"}));
        }
    }
    if want(Figure::Intersection) {
        if spec.dim() == 2 && definite(spec) {
            let (_, d) = surface_divisor(ctx, input)?;
            let shift = input.options.shift.clone().unwrap_or_else(|| {
                spec.torus()
                    .basis()
                    .mul_vec(&[Rat::new(1.into(), 5.into()), Rat::new(2.into(), 7.into())])
            });
            let moved = d.translate(&shift);
            let report = stable_intersection_2d(&d, &moved)?;
            written.extend(ctx.write_svg(
                "self_intersection.svg",
                &svg::intersection_svg(&d, &moved, &report)?,
            )?);
        } else {
            skipped.push(json!({"figure": "intersection", "why": "needs a positive definite bundle on a surface"}));
        }
    }
    if want(Figure::Fixtures) {
        for (name, c) in [
            ("figure1.svg", figure_one()),
            ("figure2.svg", figure_two()),
            ("figure3.svg", figure_three()),
        ] {
            written.extend(ctx.write_svg(name, &svg::divisor_svg(&c)?)?);
        }
    }
    Ok(json!({"written": written, "skipped": skipped}))
}

fn dispatch(cli: &Cli) -> Result<Value> {
    let ctx = Ctx {
        oracle: cli.oracle,
        svg_out: cli.svg_out.clone(),
        max_box: cli.max_box,
    };
    let load = |p: &Path| Input::from_path(p);
    match &cli.command {
        Command::Sections { input } => sections(&ctx, &load(input)?),
        Command::H0 { input } => h0_cmd(&ctx, &load(input)?),
        Command::Polyhedron {
            input,
            slice_coordinate,
        } => polyhedron(&ctx, &load(input)?, *slice_coordinate),
        Command::Divisor { input } => divisor(&ctx, &load(input)?),
        Command::Intersect { input, with } => intersect(&ctx, &load(input)?, with),
        Command::SelfIntersect { input } => self_intersect(&ctx, &load(input)?),
        Command::RrCheck { input } => rr(&ctx, &load(input)?),
        Command::Interpolate { input } => interpolate(&ctx, &load(input)?),
        Command::Figures { input, what } => figures(&ctx, &load(input)?, *what),
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::*;
            let text = e.render().to_string();
            return match e.kind() {
                DisplayHelp | DisplayVersion | DisplayHelpOnMissingArgumentOrSubcommand => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: json!({"error": {"kind": "Usage", "message": text.trim_end(), "exit_code": EXIT_INVALID}})
                        .to_string()
                        + "\n",
                },
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => {
            let code = match out.get("oracle").and_then(|o| o.get("agree")) {
                Some(Value::Bool(false)) => EXIT_ORACLE_MISMATCH,
                _ => EXIT_OK,
            };
            Outcome {
                code,
                stdout: serde_json::to_string_pretty(&out).expect("json") + "\n",
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: error_json(&e).to_string() + "\n",
        },
    }
}
