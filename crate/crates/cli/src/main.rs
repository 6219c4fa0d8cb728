use std::io::{self, Read, Write};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use normsurf::analysis::{
    certify_lens, class_spectrum, verify_average, AnalysisError, AverageReport, Certificate,
    ClassSpectrum, EnumerationOptions, DEFAULT_BUDGET,
};
use normsurf::cohomology::{h1, Cochain, CohomologyBasis, CohomologyError};
use normsurf::format::{self, FormatError};
use normsurf::generators::{self, GeneratorError, LensParams};
use normsurf::poset::{validate, FacePoset, PosetError, ValidationReport};
use normsurf::surface::{classify_components, extract_surface, ComponentClass, SurfaceError, SurfaceType};
use normsurf::Parallelism;

#[derive(Parser, Debug)]
#[command(name = "normsurf", version, about = "Simplicial posets, Z/2 cohomology and discrete normal surfaces")]
struct Cli {
    /// Output style for reports.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    /// Worker threads for class enumeration (1 = sequential).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Largest number of cocycles enumerated per class.
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit a generated complex in the interchange format.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Check simplicial poset axioms, closedness and the manifold condition.
    Validate { file: String },
    /// f-vector, Euler characteristic and manifold flags.
    Info { file: String },
    /// First Z/2 cohomology with class representatives.
    H1 { file: String },
    /// Discrete normal surface dual to a 1-cocycle.
    Surface {
        file: String,
        /// Hex bits or a full cochain record.
        #[arg(long)]
        cocycle: String,
    },
    /// Enumerate one cohomology class and report every dual surface.
    Spectrum {
        file: String,
        /// `trivial` or `rep-I` for the I-th H^1 representative.
        #[arg(long, default_value = "trivial")]
        class: String,
    },
    /// Compare enumerated class means with the f-vector formulas, exactly.
    VerifyAverage { file: String },
    /// Lower-bound certificate for a crystallization of L(2k, q).
    CertifyLens {
        file: String,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        q: i64,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Standard crystallization of L(p, q).
    Lens {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
    },
    /// Boundary of the cyclic 4-polytope with n vertices.
    Cyclic {
        #[arg(long)]
        n: u64,
    },
    /// Small 3-sphere: 2, 5 or any even number >= 4 of tetrahedra.
    Sphere {
        #[arg(long)]
        tets: u64,
    },
    /// Suspension of the 7-vertex torus (a closed pseudomanifold).
    TorusSuspension,
}

enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = io::stdout().lock();
    match run(&cli, &mut stdout) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(err) => {
            let _ = stdout.flush();
            eprintln!("error[{}]: {err:#}", error_code(&err));
            ExitCode::from(2)
        }
    }
}

fn error_code(err: &anyhow::Error) -> &'static str {
    if let Some(e) = err.downcast_ref::<AnalysisError>() {
        return match e {
            AnalysisError::BudgetExceeded { .. } => "E_BUDGET",
            AnalysisError::NotClosed3ManifoldFVector(_) | AnalysisError::NotClosed3Manifold => {
                "E_NOT_MANIFOLD"
            }
            AnalysisError::WrongH1Dimension(_) => "E_H1_DIMENSION",
            AnalysisError::BadParity { .. } => "E_BAD_PARITY",
            AnalysisError::Surface(s) => surface_code(s),
            AnalysisError::Cohomology(c) => cohomology_code(c),
            AnalysisError::Generator(g) => generator_code(g),
            AnalysisError::Pool(_) => "E_WORKERS",
        };
    }
    if let Some(e) = err.downcast_ref::<SurfaceError>() {
        return surface_code(e);
    }
    if let Some(e) = err.downcast_ref::<CohomologyError>() {
        return cohomology_code(e);
    }
    if let Some(e) = err.downcast_ref::<GeneratorError>() {
        return generator_code(e);
    }
    if err.downcast_ref::<FormatError>().is_some() {
        return "E_FORMAT";
    }
    if err.downcast_ref::<PosetError>().is_some() {
        return "E_POSET";
    }
    if err.downcast_ref::<io::Error>().is_some() {
        return "E_IO";
    }
    "E_USAGE"
}

fn surface_code(e: &SurfaceError) -> &'static str {
    match e {
        SurfaceError::NotACocycle | SurfaceError::NotACutFunction(_) => "E_NOT_COCYCLE",
        SurfaceError::NotClosed { .. } => "E_NOT_CLOSED",
        SurfaceError::WrongDimension(_) => "E_DIMENSION",
        SurfaceError::Cohomology(c) => cohomology_code(c),
    }
}

fn cohomology_code(e: &CohomologyError) -> &'static str {
    match e {
        CohomologyError::NotACocycle => "E_NOT_COCYCLE",
        CohomologyError::ComplexMismatch { .. } => "E_COMPLEX_MISMATCH",
        _ => "E_COCHAIN",
    }
}

fn generator_code(e: &GeneratorError) -> &'static str {
    match e {
        GeneratorError::NoSuchR { .. } => "E_NO_SUCH_R",
        GeneratorError::Poset(_) => "E_POSET",
        _ => "E_GENERATOR",
    }
}

fn load(path: &str) -> Result<FacePoset> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    };
    Ok(format::read(&text)?)
}

fn options(cli: &Cli) -> EnumerationOptions {
    EnumerationOptions {
        budget: cli.budget,
        parallelism: Parallelism::from_workers(cli.workers),
    }
}

fn emit<T: Serialize>(out: &mut impl Write, cli: &Cli, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    match cli.format {
        OutputFormat::Structured => writeln!(out, "{}", serde_json::to_string_pretty(value)?)?,
        OutputFormat::Text => write!(out, "{}", text())?,
    }
    Ok(())
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<Outcome> {
    match &cli.command {
        Command::Gen { family } => {
            let p = match family {
                Family::Lens { p, q } => generators::lens_standard(LensParams::new(*p, *q)?)?,
                Family::Cyclic { n } => generators::cyclic_polytope_boundary(*n)?,
                Family::Sphere { tets } => generators::sphere(*tets)?,
                Family::TorusSuspension => generators::torus_suspension()?,
            };
            write!(out, "{}", format::write(&p))?;
            Ok(Outcome::Pass)
        }
        Command::Validate { file } => {
            let p = load(file)?;
            let report = validate(&p);
            emit(out, cli, &report, || validation_text(&report))?;
            Ok(if report.is_simplicial_poset { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Info { file } => {
            let p = load(file)?;
            let info = Info::new(&p);
            emit(out, cli, &info, || info.text())?;
            Ok(Outcome::Pass)
        }
        Command::H1 { file } => {
            let p = load(file)?;
            let basis = h1(&p);
            emit(out, cli, &basis, || h1_text(&basis))?;
            Ok(Outcome::Pass)
        }
        Command::Surface { file, cocycle } => {
            let p = load(file)?;
            let psi = Cochain::parse(&p, 1, cocycle)?;
            let surface = extract_surface(&p, &psi)?;
            let report = SurfaceReport {
                points: surface.points.len(),
                arcs: surface.arcs.len(),
                pieces: surface.pieces.len(),
                chi: surface.euler_char(),
                components: classify_components(&surface),
            };
            emit(out, cli, &report, || report.text())?;
            Ok(Outcome::Pass)
        }
        Command::Spectrum { file, class } => {
            let p = load(file)?;
            let sigma = class_representative(&p, class)?;
            let spectrum = class_spectrum(&p, &sigma, &options(cli))?;
            emit(out, cli, &spectrum, || spectrum_text(&spectrum))?;
            Ok(if spectrum.cross_check_failures == 0 { Outcome::Pass } else { Outcome::Fail })
        }
        Command::VerifyAverage { file } => {
            let p = load(file)?;
            let report = verify_average(&p, &options(cli))?;
            emit(out, cli, &report, || average_text(&report))?;
            Ok(if report.pass { Outcome::Pass } else { Outcome::Fail })
        }
        Command::CertifyLens { file, k, q } => {
            let p = load(file)?;
            let cert = certify_lens(&p, *k, *q, &options(cli))?;
            emit(out, cli, &cert, || certificate_text(&cert))?;
            Ok(if cert.checks_pass { Outcome::Pass } else { Outcome::Fail })
        }
    }
}

fn class_representative(p: &FacePoset, class: &str) -> Result<Cochain> {
    if class == "trivial" {
        return Ok(Cochain::zero(p, 1));
    }
    let index: usize = class
        .strip_prefix("rep-")
        .and_then(|i| i.parse().ok())
        .ok_or_else(|| anyhow!("--class must be `trivial` or `rep-I`, got {class:?}"))?;
    let basis = h1(p);
    match basis.representatives.get(index) {
        Some(rep) => Ok(rep.clone()),
        None => bail!("H^1 has dimension {}, no representative rep-{index}", basis.dim),
    }
}

fn validation_text(r: &ValidationReport) -> String {
    let mut s = format!(
        "simplicial_poset {}\nclosed {}\nconnected {}\nclosed_3_manifold {}\nviolations {}\n",
        yes(r.is_simplicial_poset),
        yes(r.is_closed),
        yes(r.is_connected),
        yes(r.is_closed_3_manifold),
        r.violations.len()
    );
    for v in &r.violations {
        s.push_str(&format!("  {}-face {}: {:?}\n", v.dim, v.face, v.kind));
    }
    s
}

#[derive(Serialize)]
struct Info {
    complex: String,
    dimension: usize,
    f_vector: Vec<u64>,
    euler_char: i64,
    components: usize,
    is_simplicial_poset: bool,
    is_closed: bool,
    is_connected: bool,
    is_closed_3_manifold: bool,
}

impl Info {
    fn new(p: &FacePoset) -> Info {
        let r = validate(p);
        Info {
            complex: p.id().to_string(),
            dimension: p.dim(),
            f_vector: p.f_vector().0,
            euler_char: p.euler_char(),
            components: p.components(),
            is_simplicial_poset: r.is_simplicial_poset,
            is_closed: r.is_closed,
            is_connected: r.is_connected,
            is_closed_3_manifold: r.is_closed_3_manifold,
        }
    }

    fn text(&self) -> String {
        let f: Vec<String> = self.f_vector.iter().map(u64::to_string).collect();
        format!(
            "complex {}\ndimension {}\nf = ({})\nchi = {}\ncomponents {}\nsimplicial_poset {}\nclosed {}\nconnected {}\nclosed_3_manifold {}\n",
            self.complex,
            self.dimension,
            f.join(","),
            self.euler_char,
            self.components,
            yes(self.is_simplicial_poset),
            yes(self.is_closed),
            yes(self.is_connected),
            yes(self.is_closed_3_manifold),
        )
    }
}

fn h1_text(b: &CohomologyBasis) -> String {
    let mut s = format!("h1_dim {}\nkernel_dim_delta0 {}\n", b.dim, b.kernel_dim_delta0);
    for (i, rep) in b.representatives.iter().enumerate() {
        s.push_str(&format!("rep-{i} {}\n", rep.to_record()));
    }
    s
}

#[derive(Serialize)]
struct SurfaceReport {
    points: usize,
    arcs: usize,
    pieces: usize,
    chi: i64,
    components: Vec<ComponentClass>,
}

fn component_table(components: &[ComponentClass]) -> String {
    let mut s = format!("{:>4} {:>6} {:>11} {:>16} {:>7}\n", "#", "chi", "orientable", "type", "pieces");
    for (i, c) in components.iter().enumerate() {
        let kind = match c.topology {
            SurfaceType::Orientable { genus } => format!("genus {genus}"),
            SurfaceType::NonOrientable { crosscaps } => format!("crosscaps {crosscaps}"),
        };
        s.push_str(&format!(
            "{:>4} {:>6} {:>11} {:>16} {:>7}\n",
            i,
            c.chi,
            yes(c.orientable),
            kind,
            c.pieces
        ));
    }
    s
}

impl SurfaceReport {
    fn text(&self) -> String {
        format!(
            "points {}\narcs {}\npieces {}\nchi {}\ncomponents {}\n{}",
            self.points,
            self.arcs,
            self.pieces,
            self.chi,
            self.components.len(),
            component_table(&self.components)
        )
    }
}

fn spectrum_text(s: &ClassSpectrum) -> String {
    let mut out = format!(
        "representative {}\ncount {}\nsum {}\nmean {}\nmin {}\nmax {}\nslicing_mean {}\ncross_check_failures {}\nchi  cocycles\n",
        s.representative.to_record(),
        s.count,
        s.enumerated_sum,
        s.mean,
        s.min_chi,
        s.max_chi,
        s.slicing_mean,
        s.cross_check_failures
    );
    for (chi, n) in s.histogram() {
        out.push_str(&format!("{chi:>3}  {n}\n"));
    }
    out
}

fn average_text(r: &AverageReport) -> String {
    let mut s = format!(
        "f = {}\nformula {}\nclosed3_average {}\nh1_dim {}\n",
        r.f_vector,
        r.formula,
        r.closed3_average.as_ref().map_or("n/a".to_string(), |x| x.to_string()),
        r.h1_dim
    );
    for (i, c) in r.classes.iter().enumerate() {
        let name = if i == 0 { "trivial".to_string() } else { format!("mask-{i}") };
        s.push_str(&format!(
            "class {name}: count {} slicing_mean {} surface_mean {} {}\n",
            c.count,
            c.slicing_mean,
            c.surface_mean.as_ref().map_or("n/a".to_string(), |x| x.to_string()),
            if c.pass { "pass" } else { "FAIL" }
        ));
    }
    s.push_str(&format!("class_independent {}\n", yes(r.class_independent)));
    s.push_str(if r.pass { "result pass\n" } else { "result FAIL\n" });
    s
}

fn certificate_text(c: &Certificate) -> String {
    let set = |xs: &std::collections::BTreeSet<i64>| {
        xs.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
    };
    let mut s = format!(
        "complex {}\ntool_version {}\nk {} q {} r {}\nbound {}\nf0 {}\nf3 {}\ncrystallization {}\nbound_met {}\nbound_respected {}\nclass_size {}\nclass_mean {}\nwitness {}\nwitness_chi {}\nwitness_meets_mean {}\nnonorientable_component_present {}\nsphere_component_present {}\nevery_surface_nonorientable {}\nsphere_components_in_class {}\nnonorientable_chis {{{}}}\nbredon_wood_allowed {{{}}}\nbredon_wood_ok {}\nimplied_f3_lower_bound {}\n",
        c.complex,
        c.tool_version,
        c.k,
        c.q,
        c.r,
        c.bound,
        c.f0,
        c.f3,
        yes(c.is_crystallization),
        yes(c.bound_met),
        yes(c.bound_respected),
        c.class_size,
        c.class_mean,
        c.witness.to_record(),
        c.witness_chi,
        yes(c.witness_meets_mean),
        yes(c.nonorientable_component_present),
        yes(c.sphere_component_present),
        yes(c.every_surface_nonorientable),
        c.sphere_components_in_class,
        set(&c.nonorientable_chis),
        set(&c.bredon_wood_allowed),
        yes(c.bredon_wood_ok),
        c.implied_f3_lower_bound,
    );
    s.push_str("conditional on:\n");
    for h in &c.hypotheses {
        s.push_str(&format!("  - {h}\n"));
    }
    s.push_str(if c.checks_pass { "result pass\n" } else { "result FAIL\n" });
    s
}
