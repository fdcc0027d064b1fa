//! Subcommands and their reports.

use std::fmt;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use derizero::algebra::Algebra;
use derizero::complexes::{
    census_with_budget, ks_decompose_complex, minimal_decomposition, strong_gldim_search, ProjComplex,
    StrongGlobalDimension, DEFAULT_BUDGET,
};
use derizero::derdim::{
    crosscheck_trivext, decide_derdim_zero, derdim_upper_bound, FilterFailure, Outcome, Verdict,
};
use derizero::error::Error;
use derizero::exactlin::{Field, FieldSpec, PrimeField};
use derizero::graded::{syzygy_orbit, window_census_with_budget, GradedAlgebra, GradedModule, OrbitReport};
use derizero::modules::{gldim, krull_schmidt, projective_dimension, GlobalDimension, ProjectiveDimension};
use derizero::trivext::{check_selfinjective, trivial_extension, SelfInjectivity};

use crate::formats::{
    load_algebra, parse_complex, parse_module, write_complex, write_dump, AnyComplex, AnyModule, Loaded, ParseError,
};
use crate::report::{join, Report};
use crate::{with_field, EXIT_BUDGET, EXIT_ERROR, EXIT_PARSE};

#[derive(Debug, Parser)]
#[command(name = "derizero", version, about = "Exact computations for finite-dimensional algebras and derived dimension zero")]
pub struct Cli {
    /// Seed for randomized procedures.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for census enumeration.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basis, Cartan matrix, Coxeter polynomial, Loewy length and global dimension.
    Algebra { file: PathBuf },
    /// Dimension vector, projective dimension and Krull-Schmidt decomposition.
    Module { file: PathBuf },
    /// Graded modules: syzygy orbits and window censuses.
    Graded {
        #[command(subcommand)]
        command: GradedCommand,
    },
    /// Emit the trivial extension as a structure-constant dump.
    Trivext {
        file: PathBuf,
        /// Print a report of its invariants instead of the dump.
        #[arg(long)]
        report: bool,
    },
    /// Split a complex into its minimal part and contractible summands.
    Minimize { file: PathBuf },
    /// Krull-Schmidt decomposition of a complex.
    Decompose { file: PathBuf },
    /// Search for the strong global dimension.
    Sglobal {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        width_cap: usize,
        #[arg(long, default_value_t = 2)]
        mult_cap: usize,
        #[arg(long)]
        census_field: Option<u32>,
    },
    /// Indecomposable minimal complexes up to shift.
    Census {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        width_cap: usize,
        #[arg(long, default_value_t = 2)]
        mult_cap: usize,
        #[arg(long)]
        census_field: Option<u32>,
        /// Maximum number of candidate differentials.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Derived dimension: bounds, decision and trivial-extension cross-check.
    Derdim {
        #[command(subcommand)]
        command: DerdimCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum GradedCommand {
    /// Degree bounds along the graded syzygy orbit.
    Orbit {
        /// A graded module file, or an algebra file together with --simple.
        file: PathBuf,
        /// Use the simple module at this vertex.
        #[arg(long)]
        simple: Option<String>,
        /// Degree of the simple module.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        degree: i64,
        /// Work over the trivial extension of the algebra.
        #[arg(long)]
        trivext: bool,
        /// Number of syzygies; by default enough to pass the escape bound.
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Graded indecomposables with nonzero degree-0 part.
    Census {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        dim_cap: usize,
        #[arg(long)]
        trivext: bool,
        #[arg(long)]
        census_field: Option<u32>,
        /// Maximum number of candidate structures.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
}

#[derive(Debug, Subcommand)]
pub enum DerdimCommand {
    /// Decide whether the derived dimension is zero.
    Decide {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        width_cap: usize,
        #[arg(long, default_value_t = 2)]
        mult_cap: usize,
        #[arg(long)]
        census_field: Option<u32>,
    },
    /// Upper bounds from the Loewy length and the global dimension.
    Bound { file: PathBuf },
    /// Window census and syzygy orbits over the trivial extension.
    Crosscheck {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        dim_cap: usize,
        #[arg(long)]
        census_field: Option<u32>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Parse(ParseError),
    Usage(String),
    Budget(String),
    Compute(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => EXIT_PARSE,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Compute(_) => EXIT_ERROR,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Budget(m) => write!(f, "{m}"),
            CliError::Compute(e) => write!(f, "{e}"),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget { .. } => CliError::Budget(e.to_string()),
            e => CliError::Compute(e),
        }
    }
}

type CmdResult = Result<(i32, String), CliError>;

pub fn execute(cli: &Cli) -> CmdResult {
    let pool = match cli.threads {
        Some(n) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?,
        ),
        None => None,
    };
    match pool {
        Some(p) => p.install(|| dispatch(cli)),
        None => dispatch(cli),
    }
}

fn ok(r: Report) -> CmdResult {
    Ok((0, r.render()))
}

fn dispatch(cli: &Cli) -> CmdResult {
    let seed = cli.seed;
    match &cli.command {
        Command::Algebra { file } => with_field!(load_algebra(file)?, l => ok(algebra_report(&l)?)),
        Command::Module { file } => match parse_module(file)? {
            AnyModule::Q(m) => ok(module_report(&m.module, seed)?),
            AnyModule::P(m) => ok(module_report(&m.module, seed)?),
        },
        Command::Graded { command } => graded(command),
        Command::Trivext { file, report } => with_field!(load_algebra(file)?, l => trivext(&l, *report)),
        Command::Minimize { file } => match parse_complex(file)? {
            AnyComplex::Q(c) => ok(minimize_report(&c.complex, &c.over)),
            AnyComplex::P(c) => ok(minimize_report(&c.complex, &c.over)),
        },
        Command::Decompose { file } => match parse_complex(file)? {
            AnyComplex::Q(c) => ok(decompose_report(&c.complex, &c.over, seed)?),
            AnyComplex::P(c) => ok(decompose_report(&c.complex, &c.over, seed)?),
        },
        Command::Sglobal { file, width_cap, mult_cap, census_field } => {
            with_field!(load_algebra(file)?, l => ok(sglobal_report(&l.algebra, *width_cap, *mult_cap, *census_field)?))
        }
        Command::Census { file, width_cap, mult_cap, census_field, budget } => {
            with_field!(load_algebra(file)?, l => ok(census_report(&l.algebra, *width_cap, *mult_cap, *census_field, *budget)?))
        }
        Command::Derdim { command } => derdim(command),
    }
}

fn fmt_gldim(g: &GlobalDimension, cap: usize) -> String {
    match g {
        GlobalDimension::Finite(d) => d.to_string(),
        GlobalDimension::InfiniteCertified { .. } => "infinite".into(),
        GlobalDimension::ExceedsCap { .. } => format!(">{cap}"),
    }
}

fn gldim_cap<F: Field>(a: &Algebra<F>) -> usize {
    2 * a.dim() + 2
}

fn poly_string(p: &[i64]) -> String {
    let mut terms = Vec::new();
    for (k, &c) in p.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{k}"),
        };
        let coeff = match (c, k) {
            (1, k) if k > 0 => String::new(),
            (-1, k) if k > 0 => "-".into(),
            _ => c.to_string(),
        };
        terms.push(format!("{coeff}{mono}"));
    }
    if terms.is_empty() {
        return "0".into();
    }
    terms.join(" + ").replace("+ -", "- ")
}

/// Census prime: the one given, else the algebra's own prime, else 2.
fn census_prime(spec: FieldSpec, given: Option<u32>) -> Result<PrimeField, CliError> {
    let p = given.unwrap_or(match spec {
        FieldSpec::PrimeField(p) => p,
        FieldSpec::Rationals => 2,
    });
    PrimeField::new(p).map_err(|e| CliError::Usage(e.to_string()))
}

fn to_prime<F: Field>(a: &Arc<Algebra<F>>, p: PrimeField) -> Result<Arc<Algebra<PrimeField>>, CliError> {
    Ok(Arc::new(a.change_field(p)?))
}

fn vertex_index<F: Field>(a: &Algebra<F>, name: &str) -> Result<usize, CliError> {
    a.vertices().iter().position(|v| v == name).ok_or_else(|| CliError::Usage(format!("unknown vertex {name}")))
}

fn algebra_report<F: Field>(l: &Loaded<F>) -> Result<Report, CliError> {
    let a = &l.algebra;
    let mut r = Report::new();
    r.line(format!("field: {}", a.field().spec()));
    r.line(format!("vertices: {}", join(a.vertices(), " ")));
    r.line(format!("dimension: {}", a.dim()));
    for b in a.basis() {
        r.line(format!("  {}: {} -> {}", b.name, a.vertices()[b.source], a.vertices()[b.target]));
    }
    let cartan = a.cartan();
    r.line("Cartan matrix (entry (i, j) = dim e_i A e_j):");
    for row in &cartan {
        r.line(format!("  {}", join(row, " ")));
    }
    let coxeter = a.coxeter_polynomial();
    match &coxeter {
        Ok(p) => r.line(format!("Coxeter polynomial: {}", poly_string(p))),
        Err(_) => r.line("Coxeter polynomial: undefined (Cartan matrix not invertible over the integers)"),
    }
    r.line(format!("Loewy length: {}", a.loewy_length()));
    let cap = gldim_cap(a);
    let g = gldim(a, cap)?;
    r.line(format!("global dimension: {}", fmt_gldim(&g, cap)));
    if let GlobalDimension::InfiniteCertified { simple, first, repeat } = g {
        r.line(format!(
            "  the syzygies of the simple at {} repeat: syzygy {repeat} is isomorphic to syzygy {first}",
            a.vertices()[simple]
        ));
    }
    r.kv("field", a.field().spec());
    r.kv("vertices", a.num_vertices());
    r.kv("dim", a.dim());
    r.kv("loewy_length", a.loewy_length());
    r.kv("gldim", fmt_gldim(&g, cap));
    r.kv("cartan", cartan.iter().map(|row| join(row, " ")).collect::<Vec<_>>().join(" ; "));
    r.kv("coxeter", coxeter.map_or("undefined".into(), |p| join(&p, " ")));
    Ok(r)
}

fn module_report<F: Field>(m: &derizero::modules::Module<F>, seed: u64) -> Result<Report, CliError> {
    let a = m.algebra();
    let mut r = Report::new();
    r.line(format!("dimension vector: {}", join(&m.dim_vector(), " ")));
    let cap = gldim_cap(a);
    let pd = projective_dimension(m, cap)?;
    let pd_text = match pd {
        ProjectiveDimension::Finite(d) => d.to_string(),
        ProjectiveDimension::Periodic { .. } => "infinite".into(),
        ProjectiveDimension::ExceedsCap => format!(">{cap}"),
    };
    r.line(format!("projective dimension: {pd_text}"));
    if let ProjectiveDimension::Periodic { first, repeat } = pd {
        r.line(format!("  syzygy {repeat} is isomorphic to syzygy {first}"));
    }
    let ks = if m.is_zero() { None } else { Some(krull_schmidt(m, seed)?) };
    let mut summary = Vec::new();
    if let Some(ks) = &ks {
        r.line(format!("indecomposable summands: {}", ks.pieces.len()));
        for s in &ks.summands {
            let dv = join(&s.module.dim_vector(), " ");
            r.line(format!("  [{dv}] x{}", s.multiplicity));
            summary.push(format!("[{dv}]x{}", s.multiplicity));
        }
    }
    r.kv("dim_vector", join(&m.dim_vector(), " "));
    r.kv("projective_dimension", pd_text);
    r.kv("summands", ks.as_ref().map_or(0, |k| k.pieces.len()));
    r.kv("summand_classes", summary.join(" "));
    Ok(r)
}

fn trivext<F: Field>(l: &Loaded<F>, report: bool) -> CmdResult {
    let t = trivial_extension(&l.algebra)?;
    if !report {
        return Ok((0, write_dump(t.algebra(), t.graded.degrees())));
    }
    let mut r = Report::new();
    let si = check_selfinjective(t.algebra())?;
    let dim = t.algebra().dim();
    r.line(format!("trivial extension of an algebra of dimension {}", l.algebra.dim()));
    r.line(format!("dimension: {dim}"));
    r.line(format!("pairing symmetric, associative and nondegenerate: {}", t.verify_pairing()));
    r.line(format!("self-injective: {}", si == SelfInjectivity::SelfInjective));
    r.line(format!("degree-0 part equals the base algebra: {}", t.degree_zero_matches_base()));
    r.kv("dim", dim);
    r.kv("pairing", t.verify_pairing());
    r.kv("self_injective", si == SelfInjectivity::SelfInjective);
    r.kv("degree0_matches", t.degree_zero_matches_base());
    ok(r)
}

fn term_string<F: Field>(x: &ProjComplex<F>, n: i64) -> String {
    let a = x.algebra();
    let mut vs: Vec<usize> = x.term(n).to_vec();
    vs.sort();
    let names: Vec<String> = vs.iter().map(|&v| format!("P{}", a.vertices()[v])).collect();
    if names.is_empty() {
        "0".into()
    } else {
        names.join("+")
    }
}

/// `P1 -> P2+P2` with the position of the first term.
pub fn complex_string<F: Field>(x: &ProjComplex<F>) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = (x.start()..x.end()).map(|n| term_string(x, n)).collect();
    format!("{} (from position {})", terms.join(" -> "), x.start())
}

fn minimize_report<F: Field>(x: &ProjComplex<F>, over: &str) -> Report {
    let md = minimal_decomposition(x);
    let pairs = md.contractible.terms().iter().map(|t| t.len()).sum::<usize>() / 2;
    let mut r = Report::new();
    r.line(format!("input: {}", complex_string(x)));
    r.line(format!("input is minimal: {}", x.is_minimal()));
    r.line(format!("minimal part: {}", complex_string(&md.minimal)));
    r.line(format!("contractible summands P --Id--> P: {pairs}"));
    r.line("");
    r.line(write_complex(&md.minimal, over).trim_end().to_string());
    r.kv("minimal", x.is_minimal());
    r.kv("minimal_width", md.minimal.width());
    r.kv("contractible_pairs", pairs);
    r
}

fn decompose_report<F: Field>(x: &ProjComplex<F>, over: &str, seed: u64) -> Result<Report, CliError> {
    let mut r = Report::new();
    r.line(format!("input: {}", complex_string(x)));
    if x.is_zero() {
        r.kv("pieces", 0);
        r.kv("classes", 0);
        return Ok(r);
    }
    let dec = ks_decompose_complex(x, seed)?;
    r.line(format!("indecomposable summands: {} in {} iso classes", dec.pieces.len(), dec.num_classes()));
    for (p, c) in dec.pieces.iter().zip(&dec.classes) {
        r.line(format!("  class {c}: {}", complex_string(p)));
    }
    for (k, p) in dec.pieces.iter().enumerate() {
        r.line("");
        r.line(format!("# summand {k}"));
        r.line(write_complex(p, over).trim_end().to_string());
    }
    r.kv("pieces", dec.pieces.len());
    r.kv("classes", dec.num_classes());
    r.kv("class_of_piece", join(&dec.classes, " "));
    Ok(r)
}

fn sglobal_report<F: Field>(
    a: &Arc<Algebra<F>>,
    width_cap: usize,
    mult_cap: usize,
    census_field: Option<u32>,
) -> Result<Report, CliError> {
    let cap = gldim_cap(a);
    let g = gldim(a, cap)?;
    let p = census_prime(a.field().spec(), census_field)?;
    let ap = to_prime(a, p)?;
    let s = strong_gldim_search(&ap, width_cap, mult_cap)?;
    let mut r = Report::new();
    r.line(format!("global dimension: {}", fmt_gldim(&g, cap)));
    r.kv("gldim", fmt_gldim(&g, cap));
    match &s {
        StrongGlobalDimension::LowerBound { width, witness } => {
            r.line(format!("lower bound {width}: indecomposable minimal complex {}", complex_string(witness)));
            r.kv("sgldim_lower_bound", width);
            if g.finite().is_none() && matches!(g, GlobalDimension::InfiniteCertified { .. }) {
                r.line(
                    "strong global dimension: infinite (truncated minimal resolutions of a simple of infinite \
                     projective dimension are indecomposable of every width)",
                );
                r.kv("sgldim", "infinite");
            } else {
                r.line(format!("strong global dimension: at least {width}"));
                r.kv("sgldim", format!(">={width}"));
            }
        }
        StrongGlobalDimension::ExactUpTo { width, width_cap } => {
            r.line(format!(
                "strong global dimension: {width} (exhaustive up to width {width_cap}, multiplicity cap {mult_cap}, over {})",
                p.spec()
            ));
            r.kv("sgldim", width);
        }
    }
    r.kv("width_cap", width_cap);
    r.kv("mult_cap", mult_cap);
    r.kv("census_field", p.spec());
    Ok(r)
}

fn census_report<F: Field>(
    a: &Arc<Algebra<F>>,
    width_cap: usize,
    mult_cap: usize,
    census_field: Option<u32>,
    budget: u128,
) -> Result<Report, CliError> {
    let p = census_prime(a.field().spec(), census_field)?;
    let ap = to_prime(a, p)?;
    let c = census_with_budget(&ap, width_cap, mult_cap, budget)?;
    let mut r = Report::new();
    r.line(format!(
        "{} indecomposable minimal complexes up to shift (width <= {width_cap}, multiplicities <= {mult_cap}, over {})",
        c.len(),
        p.spec()
    ));
    for (k, x) in c.classes.iter().enumerate() {
        r.line(format!("  {k}: {}", complex_string(x)));
    }
    r.line(format!("differentials examined: {}", c.candidates));
    r.kv("count", c.len());
    r.kv("max_width", c.max_width());
    r.kv("width_cap", width_cap);
    r.kv("mult_cap", mult_cap);
    r.kv("census_field", p.spec());
    Ok(r)
}

fn graded_algebra<F: Field>(l: &Loaded<F>, trivext: bool) -> Result<Arc<GradedAlgebra<F>>, CliError> {
    if trivext {
        return Ok(trivial_extension(&l.algebra)?.graded);
    }
    let degrees = l.degrees.clone().unwrap_or_else(|| vec![0; l.algebra.dim()]);
    Ok(Arc::new(GradedAlgebra::new(l.algebra.clone(), degrees)?))
}

fn graded(cmd: &GradedCommand) -> CmdResult {
    match cmd {
        GradedCommand::Orbit { file, simple, degree, trivext, max_steps } => {
            if let Some(v) = simple {
                return with_field!(load_algebra(file)?, l => {
                    let g = graded_algebra(&l, *trivext)?;
                    let vi = vertex_index(g.algebra(), v)?;
                    let m = GradedModule::simple(&g, vi, *degree);
                    ok(orbit_report(&m, *max_steps)?)
                });
            }
            if *trivext {
                return Err(CliError::Usage("--trivext needs --simple".into()));
            }
            match parse_module(file)? {
                AnyModule::Q(p) => {
                    let g = graded_algebra(&p.loaded, false)?;
                    let n = p.module.dim();
                    let m = GradedModule::new(g, p.module, p.degrees.unwrap_or_else(|| vec![0; n]))?;
                    ok(orbit_report(&m, *max_steps)?)
                }
                AnyModule::P(p) => {
                    let g = graded_algebra(&p.loaded, false)?;
                    let n = p.module.dim();
                    let m = GradedModule::new(g, p.module, p.degrees.unwrap_or_else(|| vec![0; n]))?;
                    ok(orbit_report(&m, *max_steps)?)
                }
            }
        }
        GradedCommand::Census { file, dim_cap, trivext, census_field, budget } => {
            with_field!(load_algebra(file)?, l => {
                let p = census_prime(l.algebra.field().spec(), *census_field)?;
                let base = Loaded { algebra: to_prime(&l.algebra, p)?, degrees: l.degrees.clone() };
                let g = graded_algebra(&base, *trivext)?;
                let c = window_census_with_budget(&g, *dim_cap, *budget)?;
                let mut r = Report::new();
                r.line(format!(
                    "{} graded indecomposables with nonzero degree-0 part and dimension <= {dim_cap} over {}",
                    c.len(),
                    p.spec()
                ));
                for (k, m) in c.classes.iter().enumerate() {
                    let dims: Vec<String> = m.component_dims().iter().map(|(d, n)| format!("{d}:{n}")).collect();
                    r.line(format!("  {k}: dimension {} by degree {}", m.dim(), dims.join(" ")));
                }
                r.line(format!("saturated (no class reaches the cap): {}", c.saturated()));
                r.kv("count", c.len());
                r.kv("saturated", c.saturated());
                r.kv("dim_cap", dim_cap);
                r.kv("census_field", p.spec());
                ok(r)
            })
        }
    }
}

fn orbit_report<F: Field>(m: &GradedModule<F>, max_steps: Option<usize>) -> Result<Report, CliError> {
    let steps = match max_steps {
        Some(s) => s,
        None => syzygy_orbit(m, 0)?.conservative_bound + 1,
    };
    let o: OrbitReport = syzygy_orbit(m, steps)?;
    let mut r = Report::new();
    r.line(format!("global dimension of the degree-0 part: {}", o.degree0_gldim));
    r.line("  j   b   t   dimensions by degree");
    for s in &o.steps {
        let dims: Vec<String> = s.dims.iter().map(|(d, n)| format!("{d}:{n}")).collect();
        r.line(format!("{:>3} {:>3} {:>3}   {}", s.j, s.b, s.t, dims.join(" ")));
    }
    match o.first_escape {
        Some(j) => r.line(format!("lowest degree becomes positive at syzygy {j}")),
        None => r.line(format!("lowest degree stays non-positive for {steps} syzygies")),
    }
    r.line(format!("escape bound (1 - min(b, 0)) (N + 1) = {}: {}", o.conservative_bound, holds(o.conservative_bound_holds())));
    r.line(format!("bound max(1, -b N) = {}: {}", o.literal_bound, holds(o.literal_bound_holds())));
    r.kv("first_escape", o.first_escape.map_or("none".into(), |j| j.to_string()));
    r.kv("degree0_gldim", o.degree0_gldim);
    r.kv("escape_bound", o.conservative_bound);
    r.kv("escape_bound_holds", holds(o.conservative_bound_holds()));
    r.kv("tight_bound", o.literal_bound);
    r.kv("tight_bound_holds", holds(o.literal_bound_holds()));
    Ok(r)
}

fn holds(h: Option<bool>) -> &'static str {
    match h {
        Some(true) => "holds",
        Some(false) => "violated",
        None => "untested",
    }
}

fn derdim(cmd: &DerdimCommand) -> CmdResult {
    match cmd {
        DerdimCommand::Decide { file, width_cap, mult_cap, census_field } => {
            with_field!(load_algebra(file)?, l => {
                let p = census_prime(l.algebra.field().spec(), *census_field)?;
                if *width_cap < 2 || *mult_cap < 2 {
                    return Err(CliError::Usage("--width-cap and --mult-cap must be at least 2".into()));
                }
                let v = decide_derdim_zero(&l.algebra, *width_cap, *mult_cap, p)?;
                Ok(verdict_report(&v, l.algebra.field().spec()))
            })
        }
        DerdimCommand::Bound { file } => with_field!(load_algebra(file)?, l => {
            let b = derdim_upper_bound(&l.algebra)?;
            let mut r = Report::new();
            r.line(format!("Loewy length: {}", b.loewy_length));
            match b.global_dimension {
                Some(g) => r.line(format!("global dimension: {g}")),
                None => r.line("global dimension: not finite within the cap, no bound"),
            }
            r.line(format!("derived dimension <= {}", b.bound));
            r.kv("bound", b.bound);
            r.kv("loewy_length", b.loewy_length);
            r.kv("gldim", b.global_dimension.map_or("none".into(), |g| g.to_string()));
            ok(r)
        }),
        DerdimCommand::Crosscheck { file, dim_cap, census_field } => with_field!(load_algebra(file)?, l => {
            let p = census_prime(l.algebra.field().spec(), *census_field)?;
            let c = crosscheck_trivext(&l.algebra, *dim_cap, p)?;
            let mut r = Report::new();
            r.line(format!(
                "trivial extension over {}: {} graded indecomposables with nonzero degree-0 part up to dimension {}",
                p.spec(),
                c.census_size,
                c.dim_cap
            ));
            r.line(format!("window census saturated: {}", c.census_saturated));
            let escapes: Vec<String> =
                c.orbits.iter().map(|o| o.first_escape.map_or("none".into(), |j| j.to_string())).collect();
            for (v, e) in l.algebra.vertices().iter().zip(&escapes) {
                r.line(format!("  simple at {v}: lowest degree becomes positive at syzygy {e}"));
            }
            r.line(format!("consistent with derived dimension zero: {}", c.consistent));
            r.kv("census_size", c.census_size);
            r.kv("saturated", c.census_saturated);
            r.kv("escapes", escapes.join(" "));
            r.kv("consistent", c.consistent);
            ok(r)
        }),
    }
}

fn failure_text(f: &FilterFailure) -> (String, &'static str) {
    match f {
        FilterFailure::InfiniteGlobalDimension { .. } => (
            "global dimension is infinite (periodic syzygies of a simple); derived dimension zero forces finite global dimension".into(),
            "InfiniteGlobalDimension",
        ),
        FilterFailure::GlobalDimensionUndetermined { cap } => {
            (format!("global dimension exceeds the cap {cap}"), "GlobalDimensionUndetermined")
        }
        FilterFailure::CartanNotInvertible => (
            "Cartan matrix is not invertible over the integers, so the algebra is not derived equivalent to a Dynkin path algebra".into(),
            "CartanNotInvertible",
        ),
        FilterFailure::CoxeterNotDynkin { polynomial, root_one } => (
            format!(
                "Coxeter polynomial {} is not a product of Dynkin Coxeter polynomials{}",
                poly_string(polynomial),
                if *root_one { " (it vanishes at 1)" } else { "" }
            ),
            "CoxeterNotDynkin",
        ),
    }
}

fn verdict_report(v: &Verdict<PrimeField>, input_field: FieldSpec) -> (i32, String) {
    let mut r = Report::new();
    let code = match &v.outcome {
        Outcome::Zero { certificate, global_dimension } => {
            r.line(format!(
                "global dimension {global_dimension}; Coxeter polynomial of Dynkin type {}",
                v.dynkin_type.as_ref().map_or(String::new(), |t| join(t, "+"))
            ));
            r.line(format!(
                "census of indecomposable complexes over {} is the same at caps ({}, {}) and one step below: {} classes",
                v.field,
                v.width_cap,
                v.mult_cap,
                certificate.len()
            ));
            for (k, x) in certificate.iter().enumerate() {
                r.line(format!("  {k}: {}", complex_string(x)));
            }
            r.line(
                "Up to shift there are finitely many indecomposables at these budgets, so their direct sum \
                 generates the bounded derived category in one step: derived dimension zero, as expected for \
                 iterated tilted algebras of Dynkin type.",
            );
            0
        }
        Outcome::Positive(f) => {
            r.line(format!("derived dimension is positive: {}", failure_text(f).0));
            1
        }
        Outcome::Unknown { report } => {
            r.line(format!("undecided at these budgets: {report}"));
            2
        }
    };
    r.kv("verdict", v.label());
    if let Outcome::Zero { certificate, global_dimension } = &v.outcome {
        r.kv("scope", "at recorded budgets");
        r.kv("certificate_size", certificate.len());
        r.kv("gldim", global_dimension);
    }
    if let Outcome::Positive(f) = &v.outcome {
        r.kv("reason", failure_text(f).1);
    }
    if let Some(t) = &v.dynkin_type {
        r.kv("dynkin_type", join(t, "+"));
    }
    if let Some((a, b)) = v.census_sizes {
        r.kv("census_below_caps", a);
        r.kv("census_at_caps", b);
    }
    r.kv("input_field", input_field);
    r.kv("census_field", v.field);
    r.kv("width_cap", v.width_cap);
    r.kv("mult_cap", v.mult_cap);
    (code, r.render())
}
