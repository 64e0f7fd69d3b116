//! Jobs shared by the command line and the C interface. Each job picks its
//! field at run time and produces a JSON value plus a plain-text table.

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use num::{BigRational, ToPrimitive};
use serde::Serialize;
use serde_json::Value;

use crate::chern::{
    gysin_map, segre_from_sv, segre_regular_embedding, sv_from_segre, CohomClass,
};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::groebner::{Budget, Ideal};
use crate::input::{InputFile, Parsed};
use crate::mult::{local_dim, mult_at_origin, segre_numbers, AffineIdeal};
use crate::poly::{PolyRing, Polynomial};
use crate::rng::{RandomSource, DEFAULT_SEED};
use crate::scheme::{equalize_degrees_to, ProjScheme};
use crate::sv::{sv_repeat, sv_run, MassCheck, SvResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    Sv,
    Segre,
    MassCheck,
    Gysin,
    Mult,
    SegreNumbers,
    CheckGata1,
    CheckRoundtrip,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Sv,
        Command::Segre,
        Command::MassCheck,
        Command::Gysin,
        Command::Mult,
        Command::SegreNumbers,
        Command::CheckGata1,
        Command::CheckRoundtrip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Sv => "sv",
            Command::Segre => "segre",
            Command::MassCheck => "mass-check",
            Command::Gysin => "gysin",
            Command::Mult => "mult",
            Command::SegreNumbers => "segre-numbers",
            Command::CheckGata1 => "check-gata1",
            Command::CheckRoundtrip => "check-roundtrip",
        }
    }

    pub fn needs_input(self) -> bool {
        self != Command::Gysin
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown command `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub command: Command,
    /// Overrides the field declared in the input file.
    pub field: Option<FieldSpec>,
    pub seed: u64,
    pub trials: usize,
    pub twist: Option<u32>,
    /// Maximum number of S-pairs per Gröbner basis.
    pub budget: Option<usize>,
    /// Complete-intersection degrees for `check-gata1` and `gysin`.
    pub twists: Vec<i64>,
    /// Expected dimension for `mult`.
    pub dim: Option<usize>,
    /// Ambient dimension for `gysin`.
    pub ambient: Option<usize>,
    /// Class coefficients for `gysin`.
    pub class: Vec<BigRational>,
    /// Variable set to 1 before local computations.
    pub chart: Option<String>,
    /// Point moved to the origin before local computations.
    pub point: Vec<i64>,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec {
            command,
            field: None,
            seed: DEFAULT_SEED,
            trials: 1,
            twist: None,
            budget: None,
            twists: Vec::new(),
            dim: None,
            ambient: None,
            class: Vec::new(),
            chart: None,
            point: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub table: String,
    /// Set when the job ran but a check it performs did not hold.
    pub failure: Option<String>,
}

impl Report {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.json).expect("JSON values serialize")
    }

    /// Turns a failed check into an error.
    pub fn into_result(self) -> Result<Report> {
        match self.failure {
            Some(msg) => Err(Error::CheckFailed(msg)),
            None => Ok(self),
        }
    }
}

/// Integers as JSON numbers, other rationals as `"p/q"` strings.
pub fn rational_json(q: &BigRational) -> Value {
    if q.is_integer() {
        if let Some(i) = q.to_integer().to_i64() {
            return Value::from(i);
        }
    }
    Value::from(q.to_string())
}

fn class_json(c: &[BigRational]) -> Value {
    Value::Array(c.iter().map(rational_json).collect())
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

pub fn run(job: &JobSpec, input: Option<&InputFile>) -> Result<Report> {
    if job.command == Command::Gysin {
        return gysin(job);
    }
    let input = input.ok_or_else(|| {
        Error::InvalidArgument(format!("`{}` needs an input file", job.command.name()))
    })?;
    match job.field.or(input.field()).unwrap_or_default() {
        FieldSpec::Rational => run_with(job, input, Rationals::default()),
        FieldSpec::Prime(p) => run_with(job, input, PrimeField::new(p)?),
    }
}

fn run_with<F: Field>(job: &JobSpec, input: &InputFile, field: F) -> Result<Report> {
    let budget = job.budget.map(Budget::with_max_pairs).unwrap_or_default();
    let parsed = input.build_with_budget(field, budget)?;
    match job.command {
        Command::Sv => sv(job, &parsed),
        Command::Segre => segre(job, &parsed),
        Command::MassCheck => mass(job, &parsed),
        Command::CheckGata1 => gata1(job, &parsed),
        Command::CheckRoundtrip => roundtrip(job, &parsed),
        Command::Mult => mult(job, &parsed),
        Command::SegreNumbers => numbers(job, &parsed),
        Command::Gysin => unreachable!("handled without input"),
    }
}

struct SvContext<F: Field> {
    mu: ProjScheme<F>,
    result: SvResult,
    mass: MassCheck,
    /// Codimension of `V(J) ∩ μ`, `n + 1` when empty.
    kappa: usize,
}

fn sv_context<F: Field>(job: &JobSpec, p: &Parsed<F>) -> Result<SvContext<F>> {
    let mu = match &p.mu {
        Some(eqs) => ProjScheme::new(&p.ring, eqs.clone())?,
        None => ProjScheme::full(&p.ring)?,
    };
    let j = Ideal::new(&p.ring, p.gens.clone())?;
    let mut rng = RandomSource::new(job.seed);
    let family = equalize_degrees_to(&j, job.twist, &mut rng)?;
    let result = if job.trials > 1 {
        sv_repeat(&family, &mu, job.trials, job.seed)?
    } else {
        sv_run(&family, &mu, &mut rng)?
    };
    let mass = result.mass_check(mu.degree());
    let mut z_gens = p.gens.clone();
    z_gens.extend(mu.ideal().gens().iter().cloned());
    let z = ProjScheme::new(&p.ring, z_gens)?;
    let n = mu.ambient_dim();
    let kappa = (n as i64 - z.dim()) as usize;
    Ok(SvContext {
        mu,
        result,
        mass,
        kappa,
    })
}

fn sv<F: Field>(job: &JobSpec, p: &Parsed<F>) -> Result<Report> {
    #[derive(Serialize)]
    struct SvReport<'a> {
        #[serde(flatten)]
        result: &'a SvResult,
        mass_check: MassCheck,
    }
    let cx = sv_context(job, p)?;
    let r = &cx.result;
    let json = to_value(&SvReport {
        result: r,
        mass_check: cx.mass,
    });
    let mut table = String::new();
    writeln!(table, "ambient dimension   {}", r.n).unwrap();
    writeln!(table, "twist               {}", r.twist).unwrap();
    writeln!(table, "cycle dimension     {}", r.mu_dim).unwrap();
    writeln!(table, "sv degrees          {}", join(&r.v_degrees)).unwrap();
    writeln!(table, "residual degree     {}", r.residual_degree).unwrap();
    let trace: Vec<String> = r.out_trace.iter().map(|(d, e)| format!("({d}, {e})")).collect();
    writeln!(table, "outside trace       {}", trace.join(" ")).unwrap();
    writeln!(table, "seed                {}", r.seed).unwrap();
    writeln!(table, "retries             {}", r.retries).unwrap();
    writeln!(
        table,
        "mass check          {} = {} {}",
        cx.mass.lhs,
        cx.mass.rhs,
        if cx.mass.ok { "ok" } else { "FAILED" }
    )
    .unwrap();
    Ok(Report {
        json,
        table,
        failure: mass_failure(&cx.mass),
    })
}

fn mass_failure(m: &MassCheck) -> Option<String> {
    (!m.ok).then(|| format!("mass balance {} != {}", m.lhs, m.rhs))
}

fn mass<F: Field>(job: &JobSpec, p: &Parsed<F>) -> Result<Report> {
    let cx = sv_context(job, p)?;
    let r = &cx.result;
    let json = serde_json::json!({
        "lhs": cx.mass.lhs,
        "rhs": cx.mass.rhs,
        "ok": cx.mass.ok,
        "v_degrees": r.v_degrees,
        "residual_degree": r.residual_degree,
        "mu_degree": cx.mu.degree(),
        "seed": r.seed,
    });
    let mut table = String::new();
    let terms: Vec<String> = r
        .v_degrees
        .iter()
        .enumerate()
        .map(|(k, v)| format!("{}^{}*{}", r.twist, r.mu_dim - k, v))
        .collect();
    writeln!(table, "lhs  {}^{}*{} = {}", r.twist, r.mu_dim, cx.mu.degree(), cx.mass.lhs).unwrap();
    writeln!(table, "rhs  {} + {} = {}", terms.join(" + "), r.residual_degree, cx.mass.rhs).unwrap();
    writeln!(table, "{}", if cx.mass.ok { "balanced" } else { "NOT balanced" }).unwrap();
    Ok(Report {
        json,
        table,
        failure: mass_failure(&cx.mass),
    })
}

fn segre_degrees(s: &CohomClass, kappa: usize) -> Vec<BigRational> {
    s.coeffs().iter().skip(kappa).cloned().collect()
}

fn segre<F: Field>(job: &JobSpec, p: &Parsed<F>) -> Result<Report> {
    let cx = sv_context(job, p)?;
    let r = &cx.result;
    let s = segre_from_sv(r);
    let degrees = segre_degrees(&s, cx.kappa);
    let json = serde_json::json!({
        "n": r.n,
        "twist": r.twist,
        "kappa": cx.kappa,
        "segre_degrees": class_json(&degrees),
        "sv_degrees": r.v_degrees,
        "seed": r.seed,
    });
    let mut table = String::new();
    writeln!(table, "codimension     {}", cx.kappa).unwrap();
    writeln!(table, "sv degrees      {}", join(&r.v_degrees)).unwrap();
    writeln!(table, "segre degrees   {}", join(&degrees)).unwrap();
    writeln!(table, "segre class     {s}").unwrap();
    Ok(Report {
        json,
        table,
        failure: None,
    })
}

fn gata1<F: Field>(job: &JobSpec, p: &Parsed<F>) -> Result<Report> {
    if job.twists.is_empty() {
        return Err(Error::InvalidArgument("`check-gata1` needs --twists".into()));
    }
    if p.mu.is_some() {
        return Err(Error::InvalidArgument(
            "the closed form applies on the whole projective space".into(),
        ));
    }
    let cx = sv_context(job, p)?;
    let s = segre_from_sv(&cx.result);
    let expected = segre_regular_embedding(&job.twists, cx.result.n)?;
    let equal = s == expected;
    let kappa = job.twists.len();
    let json = serde_json::json!({
        "twists": job.twists,
        "sv_degrees": cx.result.v_degrees,
        "segre_degrees": class_json(&segre_degrees(&s, kappa)),
        "expected": class_json(&segre_degrees(&expected, kappa)),
        "equal": equal,
        "seed": cx.result.seed,
    });
    let mut table = String::new();
    writeln!(table, "computed   {s}").unwrap();
    writeln!(table, "expected   {expected}").unwrap();
    writeln!(table, "{}", if equal { "equal" } else { "unequal" }).unwrap();
    Ok(Report {
        json,
        table,
        failure: (!equal).then(|| format!("Segre class {s} differs from {expected}")),
    })
}

fn roundtrip<F: Field>(job: &JobSpec, p: &Parsed<F>) -> Result<Report> {
    let cx = sv_context(job, p)?;
    let r = &cx.result;
    let s = segre_from_sv(r);
    let back = sv_from_segre(&s, r.twist as i64, r.mu_dim)?;
    let ok = back
        .iter()
        .zip(&r.v_degrees)
        .all(|(a, &b)| *a == BigRational::from_integer(b.into()));
    let json = serde_json::json!({
        "sv_degrees": r.v_degrees,
        "segre_degrees": class_json(&segre_degrees(&s, cx.kappa)),
        "recovered": class_json(&back),
        "ok": ok,
        "seed": r.seed,
    });
    let mut table = String::new();
    writeln!(table, "sv degrees      {}", join(&r.v_degrees)).unwrap();
    writeln!(table, "segre class     {s}").unwrap();
    writeln!(table, "recovered       {}", join(&back)).unwrap();
    writeln!(table, "{}", if ok { "round trip ok" } else { "round trip FAILED" }).unwrap();
    Ok(Report {
        json,
        table,
        failure: (!ok).then(|| "van Gastel round trip does not reproduce the SV degrees".into()),
    })
}

/// Applies `--chart` and `--point` to the generators.
fn localize<F: Field>(job: &JobSpec, p: &Parsed<F>) -> Result<AffineIdeal<F>> {
    let mut ring: Arc<PolyRing<F>> = p.ring.clone();
    let mut gens: Vec<Polynomial<F>> = p.gens.clone();
    if let Some(var) = &job.chart {
        let pos = ring
            .var_index(var)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown chart variable `{var}`")))?;
        let rest: Vec<&str> = ring
            .vars()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != pos)
            .map(|(_, v)| v.as_str())
            .collect();
        let affine = PolyRing::with_order(&rest, ring.field().clone(), ring.order())?
            .with_budget(ring.budget());
        gens = gens.iter().map(|g| g.dehomogenize_into(&affine, pos)).collect();
        ring = affine;
    }
    if !job.point.is_empty() {
        if job.point.len() != ring.nvars() {
            return Err(Error::InvalidArgument(format!(
                "point has {} coordinates but the ring has {} variables",
                job.point.len(),
                ring.nvars()
            )));
        }
        let f = ring.field();
        let images: Vec<Polynomial<F>> = job
            .point
            .iter()
            .enumerate()
            .map(|(i, &c)| &ring.var(i) + &ring.constant(f.from_i64(c)))
            .collect();
        gens = gens
            .iter()
            .map(|g| g.substitute(&images))
            .collect::<Result<_>>()?;
    }
    AffineIdeal::new(&ring, gens)
}

fn mult<F: Field>(job: &JobSpec, p: &Parsed<F>) -> Result<Report> {
    let i = localize(job, p)?;
    let mut rng = RandomSource::new(job.seed);
    let dim = match job.dim {
        Some(d) => d as i64,
        None => local_dim(&i, &mut rng)?,
    };
    let m = if dim < 0 {
        0
    } else {
        mult_at_origin(&i, dim as usize, &mut rng)?
    };
    let json = serde_json::json!({
        "dim": dim,
        "multiplicity": m,
        "seed": job.seed,
    });
    let table = format!("local dimension   {dim}\nmultiplicity      {m}\n");
    Ok(Report {
        json,
        table,
        failure: None,
    })
}

fn numbers<F: Field>(job: &JobSpec, p: &Parsed<F>) -> Result<Report> {
    let i = localize(job, p)?;
    let mut rng = RandomSource::new(job.seed);
    let s = segre_numbers(&i, &mut rng)?;
    let json = to_value(&s);
    let mut table = String::new();
    writeln!(table, "codimension   {}", s.kappa).unwrap();
    for (k, e) in s.e.iter().enumerate() {
        writeln!(table, "e_{:<11} {e}", s.kappa + k).unwrap();
    }
    writeln!(
        table,
        "zeros below codimension {}",
        if s.zeros_below_kappa_ok { "ok" } else { "VIOLATED" }
    )
    .unwrap();
    Ok(Report {
        json,
        table,
        failure: (!s.zeros_below_kappa_ok)
            .then(|| "a Segre number below the codimension is nonzero".into()),
    })
}

fn gysin(job: &JobSpec) -> Result<Report> {
    let n = job
        .ambient
        .ok_or_else(|| Error::InvalidArgument("`gysin` needs --ambient".into()))?;
    let gamma = if job.class.is_empty() {
        CohomClass::one(n)
    } else {
        CohomClass::new(n, job.class.clone())?
    };
    let g = gysin_map(&gamma, &job.twists, n)?;
    let json = serde_json::json!({
        "n": n,
        "twists": job.twists,
        "class": class_json(gamma.coeffs()),
        "gysin": class_json(g.coeffs()),
    });
    let table = format!("class   {gamma}\ngysin   {g}\n");
    Ok(Report {
        json,
        table,
        failure: None,
    })
}
