use crate::{BranchCmd, Cli, ClassifyCmd, Command, IrregularCmd, ModuliCmd, ParamArgs, RingCmd};
use cover13::abelian13::branch::{bl_sextic_at, branch_report, cube_check, BranchReport, CubeCheck, DEFAULT_BOUND};
use cover13::abelian13::irregular::{irregular_ring, IrregularTable};
use cover13::abelian13::*;
use cover13::exactring::{parse_poly, FieldSpec, MultiPoly, Scalar};
use cover13::heisenberg::{classify_all, TwoTwistRow, CASE_ONLY_C1, CASE_ONLY_C2, CASE_PROPORTIONAL};
use cover13::koszul::random_scalar;
use cover13::moduli::*;
use cover13::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

/// Everything that determines a run's output.
#[derive(Clone, Debug, Serialize)]
pub struct JobConfig {
    pub command: String,
    pub field: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chart: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Envelope {
    pub config: JobConfig,
    /// "ok" or "failed"
    pub status: &'static str,
    pub witness: Option<String>,
    pub report: Value,
}

pub enum Outcome {
    /// the envelope and an optional text rendering that replaces the generic one
    Report(Envelope, Option<String>),
    Invalid(String),
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        match self {
            Outcome::Report(e, _) if e.status == "ok" => 0,
            Outcome::Report(..) => 1,
            Outcome::Invalid(_) => 2,
        }
    }
}

struct Done {
    ok: bool,
    witness: Option<String>,
    report: Value,
    text: Option<String>,
}

impl Done {
    fn new(ok: bool, witness: Option<String>, report: impl Serialize) -> Self {
        Done { ok, witness, report: serde_json::to_value(report).expect("reports serialize"), text: None }
    }

    fn with_text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }
}

/// Errors caused by the input rather than by a failed verification.
fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidField(_)
            | Error::FieldMismatch(_)
            | Error::Parse { .. }
            | Error::UnknownVariable(_)
            | Error::NoCubeRoot(_)
            | Error::DivisionByZero
            | Error::NegativeExponent(_)
            | Error::Precondition(_)
    )
}

pub fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    let field = match FieldSpec::parse(&g.field) {
        Ok(f) => f,
        Err(e) => return Outcome::Invalid(e.to_string()),
    };
    let mut config = JobConfig { command: String::new(), field: field.label(), seed: g.seed, chart: None, samples: None };
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let result = match &cli.command {
        Command::Ring { action } => {
            let (name, args) = match action {
                RingCmd::Build(a) => ("ring build", a),
                RingCmd::Verify(a) => ("ring verify", a),
            };
            config.command = name.into();
            config.chart = Some(args.chart.clone());
            match action {
                RingCmd::Build(a) => ring_build(field, a),
                RingCmd::Verify(a) => ring_verify(field, a),
            }
        }
        Command::Fiber(a) => {
            config.command = "fiber".into();
            config.chart = Some(a.params.chart.clone());
            config.samples = a.point.is_none().then_some(a.samples);
            fiber(field, &a.params, a.point.as_deref(), a.samples, &mut rng)
        }
        Command::Branch { action: BranchCmd::Scan(a) } => {
            config.command = "branch scan".into();
            branch_scan(field, a, &mut rng)
        }
        Command::Moduli { action } => match action {
            ModuliCmd::Invariants(a) => {
                config.command = "moduli invariants".into();
                moduli_invariants_cmd(field, &a.alpha, a.beta.as_deref())
            }
            ModuliCmd::Normalize(a) => {
                config.command = "moduli normalize".into();
                moduli_normalize(field, &a.alpha, &a.beta)
            }
            ModuliCmd::Equivalent(a) => {
                config.command = "moduli equivalent".into();
                moduli_equivalent(field, &a.a, &a.b)
            }
        },
        Command::Classify { action: ClassifyCmd::Twists } => {
            config.command = "classify twists".into();
            classify_twists(field)
        }
        Command::Irregular { action: IrregularCmd::Build(a) } => {
            config.command = "irregular build".into();
            irregular_build(field, a.c1.as_deref(), a.c3.as_deref(), &mut rng)
        }
        Command::Selftest(a) => {
            config.command = "selftest".into();
            selftest(g.seed, a.only.as_deref(), a.timings)
        }
    };
    match result {
        Ok(d) => Outcome::Report(
            Envelope { config, status: if d.ok { "ok" } else { "failed" }, witness: d.witness, report: d.report },
            d.text,
        ),
        Err(e) if is_input_error(&e) => Outcome::Invalid(e.to_string()),
        Err(e) => Outcome::Report(Envelope { config, status: "failed", witness: Some(e.to_string()), report: Value::Null }, None),
    }
}

fn parse_list(field: FieldSpec, s: &str, n: usize, what: &str) -> Result<Vec<Scalar>> {
    let v: Vec<Scalar> = s.split(',').map(|t| field.parse_scalar(t)).collect::<Result<_>>()?;
    if v.len() != n {
        return Err(Error::Precondition(format!("{what} needs {n} comma-separated entries, got {}", v.len())));
    }
    Ok(v)
}

fn array<const N: usize>(v: Vec<Scalar>) -> [Scalar; N] {
    v.try_into().expect("length checked by parse_list")
}

fn parse_params(field: FieldSpec, alpha: &str, beta: &str) -> Result<SurfaceParams> {
    Ok(SurfaceParams::new(field, array(parse_list(field, alpha, 4, "--alpha")?), array(parse_list(field, beta, 4, "--beta")?)))
}

fn parse_chart(s: &str) -> Result<usize> {
    match s {
        "u0" => Ok(0),
        "u1" => Ok(1),
        "u2" => Ok(2),
        _ => Err(Error::Precondition(format!("unknown chart `{s}` (expected u0, u1 or u2)"))),
    }
}

fn show(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn residual_witness(p: &SurfaceParams) -> Option<String> {
    let r = check_moduli_equation(p);
    (!r.is_zero()).then(|| format!("moduli equation residual {r}"))
}

fn ring_build(field: FieldSpec, a: &ParamArgs) -> Result<Done> {
    let p = parse_params(field, &a.alpha, &a.beta)?;
    let chart = parse_chart(&a.chart)?;
    if let Some(w) = residual_witness(&p) {
        return Ok(Done::new(false, Some(w), ParamsReport::of(&p)));
    }
    let id = build_ideal(&p, chart)?;
    let text = id.generators.iter().map(|g| format!("{g}\n")).collect();
    Ok(Done::new(true, None, id.export()).with_text(text))
}

#[derive(Serialize)]
struct ParamsReport {
    alpha: Vec<String>,
    beta: Vec<String>,
}

impl ParamsReport {
    fn of(p: &SurfaceParams) -> Self {
        ParamsReport { alpha: p.alpha_strings(), beta: p.beta_strings() }
    }
}

#[derive(Serialize)]
struct VerifyReport {
    alpha: Vec<String>,
    beta: Vec<String>,
    moduli_residual: String,
    moduli_equation: bool,
    degrees: Option<Vec<i64>>,
    homogeneous: Option<bool>,
    equivariance: Option<Vec<EquivarianceReport>>,
    /// why equivariance was not checked
    equivariance_skipped: Option<String>,
}

fn ring_verify(field: FieldSpec, a: &ParamArgs) -> Result<Done> {
    let p = parse_params(field, &a.alpha, &a.beta)?;
    let chart = parse_chart(&a.chart)?;
    let residual = check_moduli_equation(&p);
    let mut rep = VerifyReport {
        alpha: p.alpha_strings(),
        beta: p.beta_strings(),
        moduli_residual: residual.to_string(),
        moduli_equation: residual.is_zero(),
        degrees: None,
        homogeneous: None,
        equivariance: None,
        equivariance_skipped: None,
    };
    if let Some(w) = residual_witness(&p) {
        return Ok(Done::new(false, Some(w), rep));
    }
    let id = build_ideal(&p, chart)?;
    let degrees = id.generator_degrees()?;
    let homogeneous = degrees == [4; 9] && id.has_q_leading_parts();
    rep.degrees = Some(degrees.clone());
    rep.homogeneous = Some(homogeneous);
    let mut witness = (!homogeneous).then(|| format!("generator degrees {degrees:?}"));
    // the group acts through ξ, so fields without a cube root of unity skip it
    match field.xi() {
        Ok(_) => {
            let eq = check_equivariance(&build_ideal(&p, 2)?)?;
            if witness.is_none() {
                witness = eq.iter().find(|r| !r.pass).map(|r| format!("{}: {}", r.generator, r.witness.clone().unwrap_or_default()));
            }
            rep.equivariance = Some(eq);
        }
        Err(e) => rep.equivariance_skipped = Some(e.to_string()),
    }
    Ok(Done::new(witness.is_none(), witness, rep))
}

fn random_point(field: FieldSpec, rng: &mut ChaCha8Rng) -> [Scalar; 3] {
    loop {
        let p: [Scalar; 3] = std::array::from_fn(|_| random_scalar(field, rng));
        if p.iter().all(|v| !v.is_zero()) {
            return p;
        }
    }
}

fn fiber(field: FieldSpec, a: &ParamArgs, point: Option<&str>, samples: usize, rng: &mut ChaCha8Rng) -> Result<Done> {
    let p = parse_params(field, &a.alpha, &a.beta)?;
    let chart = parse_chart(&a.chart)?;
    if let Some(w) = residual_witness(&p) {
        return Ok(Done::new(false, Some(w), ParamsReport::of(&p)));
    }
    let id = build_ideal(&p, chart)?;
    let points: Vec<[Scalar; 3]> = match point {
        Some(s) => vec![array(parse_list(field, s, 3, "--point")?)],
        None => (0..samples).map(|_| random_point(field, rng)).collect(),
    };
    let reports = points
        .par_iter()
        .map(|x| match fiber_algebra(&id, x) {
            Ok(fa) => Ok(Ok(fa.report())),
            Err(Error::NotFlat(e)) => Ok(Err(format!("not flat at ({}): {e}", show(x).join(",")))),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>>>()?;
    let witness = reports.iter().find_map(|r| match r {
        Err(w) => Some(w.clone()),
        Ok(f) if f.dimension != 6 || !f.commutative || !f.associative => {
            Some(format!("fiber at ({}) has dimension {}", f.point.join(","), f.dimension))
        }
        Ok(_) => None,
    });
    let fibers: Vec<_> = reports.into_iter().filter_map(|r| r.ok()).collect();
    Ok(Done::new(witness.is_none(), witness, fibers))
}

#[derive(Serialize)]
struct BranchScan {
    lambda: Option<String>,
    alpha: Vec<String>,
    beta: Vec<String>,
    line: [Vec<String>; 2],
    branch: BranchReport,
    /// against the cube of the sextic, for the Birkenhake-Lange family
    cube_check: Option<CubeCheck>,
}

fn independent(p: &[Scalar; 3], q: &[Scalar; 3]) -> bool {
    (0..3).any(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        !(&(&p[j] * &q[k]) - &(&p[k] * &q[j])).is_zero()
    })
}

fn branch_scan(field: FieldSpec, a: &crate::BranchArgs, rng: &mut ChaCha8Rng) -> Result<Done> {
    if !matches!(field, FieldSpec::PrimeField(_)) {
        return Err(Error::Precondition("branch scan interpolates over a prime field (--field fp:<p>)".into()));
    }
    let lambda = a.lambda.as_deref().map(|s| field.parse_scalar(s)).transpose()?;
    let params = match (&lambda, &a.alpha, &a.beta) {
        (Some(l), _, _) => bl_params(field, l),
        (None, Some(al), Some(be)) => parse_params(field, al, be)?,
        _ => return Err(Error::Precondition("give --lambda or both --alpha and --beta".into())),
    };
    if let Some(w) = residual_witness(&params) {
        return Ok(Done::new(false, Some(w), ParamsReport::of(&params)));
    }
    let (p, q) = match &a.line {
        Some(s) => {
            let (ps, qs) = s.split_once(';').ok_or_else(|| Error::Precondition("--line is p0,p1,p2;q0,q1,q2".into()))?;
            (array(parse_list(field, ps, 3, "--line")?), array(parse_list(field, qs, 3, "--line")?))
        }
        None => loop {
            let (p, q) = (random_point(field, rng), random_point(field, rng));
            if independent(&p, &q) {
                break (p, q);
            }
        },
    };
    if !independent(&p, &q) {
        return Err(Error::Precondition("the two points of --line must be distinct in the plane".into()));
    }
    let bound = a.bound.unwrap_or(DEFAULT_BOUND);
    let coeffs = branch_on_line(&params, &p, &q, bound)?;
    let cube = match &lambda {
        Some(l) => Some(cube_check(&coeffs, &bl_sextic_at(&surface_ring(field)?, l), &p, &q)?),
        None => None,
    };
    let witness = match &cube {
        Some(c) if !c.cube_divides => Some("the cube of the sextic does not divide the branch polynomial".to_string()),
        Some(c) if c.x2_power.is_none() => Some("the cofactor is not a unit times a power of x2".to_string()),
        _ => None,
    };
    let rep = BranchScan {
        lambda: lambda.map(|l| l.to_string()),
        alpha: params.alpha_strings(),
        beta: params.beta_strings(),
        line: [show(&p), show(&q)],
        branch: branch_report(&coeffs, bound),
        cube_check: cube,
    };
    Ok(Done::new(witness.is_none(), witness, rep))
}

fn moduli_invariants_cmd(field: FieldSpec, alpha: &str, beta: Option<&str>) -> Result<Done> {
    let a3 = match beta {
        Some(b) => alpha3_of(&normalize_beta(&parse_params(field, alpha, b)?)?.params)?,
        None => array(parse_list(field, alpha, 3, "--alpha")?),
    };
    Ok(Done::new(true, None, moduli_point(&a3)?))
}

#[derive(Serialize)]
struct NormalizeReport {
    g: Vec<Vec<String>>,
    alpha: Vec<String>,
    beta: Vec<String>,
    substitution_matches: bool,
    #[serde(flatten)]
    point: ModuliPoint,
}

fn moduli_normalize(field: FieldSpec, alpha: &str, beta: &str) -> Result<Done> {
    let p = parse_params(field, alpha, beta)?;
    if let Some(w) = residual_witness(&p) {
        return Ok(Done::new(false, Some(w), ParamsReport::of(&p)));
    }
    let n = normalize_beta(&p)?;
    let matches = substitution_matches(&p, &n.g, &n.params)?;
    let rep = NormalizeReport {
        g: n.g.iter().map(|row| show(row)).collect(),
        alpha: n.params.alpha_strings(),
        beta: n.params.beta_strings(),
        substitution_matches: matches,
        point: moduli_point(&alpha3_of(&n.params)?)?,
    };
    let witness = (!matches).then(|| "substituted generators do not lie in the normalized ideal".to_string());
    Ok(Done::new(matches, witness, rep))
}

#[derive(Serialize)]
struct EquivalentReport {
    a: ModuliPoint,
    b: ModuliPoint,
    #[serde(flatten)]
    result: Equivalence,
}

fn moduli_equivalent(field: FieldSpec, a: &str, b: &str) -> Result<Done> {
    let a: [Scalar; 3] = array(parse_list(field, a, 3, "--a")?);
    let b: [Scalar; 3] = array(parse_list(field, b, 3, "--b")?);
    let eq = orbit_equivalent(&a, &b)?;
    let witness = (!eq.equivalent).then(|| "no element of S3 maps a to b".to_string());
    Ok(Done::new(eq.equivalent, witness, EquivalentReport { a: moduli_point(&a)?, b: moduli_point(&b)?, result: eq }))
}

fn classify_twists(field: FieldSpec) -> Result<Done> {
    let rows: Vec<TwoTwistRow> = classify_all(field)?;
    let printed = [CASE_PROPORTIONAL, CASE_ONLY_C1, CASE_ONLY_C2];
    let witness = rows
        .iter()
        .find(|r| r.m != r.n && !printed.contains(&r.label.as_str()))
        .map(|r| format!("({},{}): {}", r.m, r.n, r.label));
    let mut text = String::from("m n dim surviving    case\n");
    for r in &rows {
        let surv: Vec<String> = r.surviving.iter().map(|i| format!("C{i}")).collect();
        text.push_str(&format!("{} {} {:>3} {:<12} {}\n", r.m, r.n, r.dimension, surv.join(","), r.label));
    }
    Ok(Done::new(witness.is_none(), witness, rows).with_text(text))
}

#[derive(Serialize)]
struct IrregularReport {
    #[serde(flatten)]
    ideal: IdealExport,
    degrees: Vec<i64>,
    c1: Vec<String>,
    c3: Vec<String>,
}

fn parse_forms(ring: &cover13::exactring::RingRef, s: &str, what: &str) -> Result<[MultiPoly; 4]> {
    let v: Vec<MultiPoly> = s.split(';').map(|t| parse_poly(t, ring)).collect::<Result<_>>()?;
    v.try_into().map_err(|v: Vec<_>| Error::Precondition(format!("{what} needs 4 ';'-separated forms, got {}", v.len())))
}

fn irregular_build(field: FieldSpec, c1: Option<&str>, c3: Option<&str>, rng: &mut ChaCha8Rng) -> Result<Done> {
    let ring = irregular_ring(field)?;
    let table = match (c1, c3) {
        (Some(a), Some(b)) => IrregularTable { c1: parse_forms(&ring, a, "--c1")?, c3: parse_forms(&ring, b, "--c3")? },
        _ => IrregularTable::random(&ring, rng),
    };
    let strings = |v: &[MultiPoly; 4]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>();
    match build_irregular_ideal(&table) {
        Ok(id) => {
            let text = id.generators.iter().map(|g| format!("{g}\n")).collect();
            let rep = IrregularReport {
                degrees: id.generator_degrees()?,
                ideal: id.export(),
                c1: strings(&table.c1),
                c3: strings(&table.c3),
            };
            Ok(Done::new(true, None, rep).with_text(text))
        }
        Err(Error::Degenerate(w)) => {
            #[derive(Serialize)]
            struct Table {
                c1: Vec<String>,
                c3: Vec<String>,
                relation: String,
            }
            let rep = Table { c1: strings(&table.c1), c3: strings(&table.c3), relation: table.relation().to_string() };
            Ok(Done::new(false, Some(w), rep))
        }
        Err(e) => Err(e),
    }
}

#[derive(Serialize)]
struct SelftestRow {
    id: usize,
    name: &'static str,
    pass: bool,
    detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_seconds: Option<f64>,
    budget_seconds: u64,
}

fn selftest(seed: u64, only: Option<&str>, timings: bool) -> Result<Done> {
    let ids: Vec<usize> = match only {
        Some(s) => s
            .split(',')
            .map(|t| t.trim().parse::<usize>().ok().filter(|i| (1..=10).contains(i)))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Precondition(format!("--only takes criterion numbers 1..10, got `{s}`")))?,
        None => (1..=10).collect(),
    };
    let results: Vec<_> = ids.iter().filter_map(|i| cover13_acceptance::run_one(*i, seed)).collect();
    let text = results.iter().map(|r| format!("{}\n", r.line(timings))).collect();
    let failed: Vec<String> = results.iter().filter(|r| !r.pass()).map(|r| r.id.to_string()).collect();
    let rows: Vec<SelftestRow> = results
        .iter()
        .map(|r| SelftestRow {
            id: r.id,
            name: r.name,
            pass: r.pass(),
            detail: r.detail.clone(),
            elapsed_seconds: timings.then(|| r.elapsed.as_secs_f64()),
            budget_seconds: r.budget.as_secs(),
        })
        .collect();
    let witness = (!failed.is_empty()).then(|| format!("failing criteria {}", failed.join(",")));
    Ok(Done::new(failed.is_empty(), witness, rows).with_text(text))
}
