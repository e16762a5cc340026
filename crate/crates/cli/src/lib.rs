//! `hls`: load, validate and analyze Hom-Lie superalgebras given by structure
//! constants, compute their biderivation, centroid and commuting-map spaces,
//! and run the verification suite.
//!
//! Exit codes: 0 success, 1 the input is not a valid algebra (or violates a
//! hypothesis of the request), 2 input or usage error, 3 a check failed.

pub mod render;
pub mod suite;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{self, Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use homlie::linalg::{format_rational, parse_rational};
use homlie::spaces::{biderivation_space, centroid_space, commuting_map_space};
use homlie::zoo::{self, CATALOG};
use homlie::{AlgebraDescription, Error, HomLieSuperalgebra, Parity, Rational, SymmetryConvention};
use serde::Serialize;

use crate::render::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "hls",
    version,
    about = "Exact computations on Hom-Lie superalgebras"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Zoo parameter `k=v`, e.g. `lambda=1/2`; repeatable.
    #[arg(long = "param", global = true, value_parser = parse_param)]
    pub params: Vec<(String, Rational)>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DegreeFilter {
    #[value(name = "0")]
    Even,
    #[value(name = "1")]
    Odd,
    All,
}

impl DegreeFilter {
    fn degrees(self) -> Vec<Parity> {
        match self {
            DegreeFilter::Even => vec![Parity::Even],
            DegreeFilter::Odd => vec![Parity::Odd],
            DegreeFilter::All => Parity::ALL.to_vec(),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check grading, skew-supersymmetry and the Hom-Jacobi identity.
    Validate {
        /// JSON file, `-` for stdin, or `zoo:NAME`.
        input: String,
    },
    /// Print the derived subalgebra, center, centralizer of H' and structural flags.
    Analyze { input: String },
    /// Compute biderivation, centroid and commuting-map spaces.
    Spaces {
        input: String,
        #[arg(long, value_enum, default_value_t = DegreeFilter::All)]
        degree: DegreeFilter,
        #[arg(long, value_parser = parse_convention, default_value = "skew")]
        convention: SymmetryConvention,
    },
    /// Run every identity and structure check.
    Verify {
        input: String,
        #[arg(long, value_parser = parse_convention, default_value = "skew")]
        convention: SymmetryConvention,
    },
    /// Built-in example algebras.
    #[command(subcommand)]
    Zoo(ZooCommand),
}

#[derive(Subcommand, Debug)]
pub enum ZooCommand {
    /// List catalog entries with their parameters.
    List,
    /// Print the structure constants of a catalog entry as JSON.
    Emit { name: String },
}

fn parse_param(s: &str) -> Result<(String, Rational), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected k=v, got {s:?}"))?;
    let v = parse_rational(v).map_err(|e| e.to_string())?;
    Ok((k.trim().to_string(), v))
}

fn parse_convention(s: &str) -> Result<SymmetryConvention, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{0}")]
    Io(#[from] io::Error),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Lib(Error::Input(_) | Error::Json(_)) | Failure::Io(_) => EXIT_INPUT,
            Failure::Lib(Error::Grading(_) | Error::Validation { .. } | Error::Precondition(_)) => {
                EXIT_INVALID
            }
            Failure::Lib(Error::TheoremViolation(_)) => EXIT_CHECK_FAILED,
        }
    }
}

/// Runs the command line `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_INPUT
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(&cli, stdin, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.exit_code()
        }
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, Failure> {
    let params: BTreeMap<String, Rational> = cli.params.iter().cloned().collect();
    match &cli.command {
        Command::Validate { input } => {
            let desc = read_description(input, &params, stdin)?;
            let h = HomLieSuperalgebra::from_description_unchecked(&desc)?;
            validate(&h, cli.format, out)
        }
        Command::Analyze { input } => {
            let h = load(input, &params, stdin)?;
            analyze(&h, cli.format, out)
        }
        Command::Spaces {
            input,
            degree,
            convention,
        } => {
            let h = load(input, &params, stdin)?;
            spaces(&h, *degree, *convention, cli.format, out)
        }
        Command::Verify { input, convention } => {
            let h = load(input, &params, stdin)?;
            verify(&h, *convention, cli.format, out)
        }
        Command::Zoo(ZooCommand::List) => zoo_list(cli.format, out),
        Command::Zoo(ZooCommand::Emit { name }) => {
            let h = zoo_lookup(name, &params)?;
            writeln!(out, "{}", h.to_description().to_json())?;
            Ok(EXIT_OK)
        }
    }
}

fn zoo_lookup(
    spec: &str,
    params: &BTreeMap<String, Rational>,
) -> Result<HomLieSuperalgebra, Error> {
    let (name, mut inline) = zoo::parse_zoo_spec(spec)?;
    inline.extend(params.iter().map(|(k, v)| (k.clone(), v.clone())));
    zoo::zoo_get(&name, &inline)
}

fn read_description(
    input: &str,
    params: &BTreeMap<String, Rational>,
    stdin: &mut dyn Read,
) -> Result<AlgebraDescription, Failure> {
    if let Some(spec) = input.strip_prefix("zoo:") {
        return Ok(zoo_lookup(spec, params)?.to_description());
    }
    if !params.is_empty() {
        return Err(Error::Input("--param only applies to zoo: inputs".into()).into());
    }
    let text = if input == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(input)
            .map_err(|e| Error::Input(format!("cannot read {input}: {e}")))?
    };
    Ok(AlgebraDescription::from_json(&text)?)
}

fn load(
    input: &str,
    params: &BTreeMap<String, Rational>,
    stdin: &mut dyn Read,
) -> Result<HomLieSuperalgebra, Failure> {
    Ok(HomLieSuperalgebra::load(&read_description(
        input, params, stdin,
    )?)?)
}

fn write_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(Error::from)?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn labels(h: &HomLieSuperalgebra) -> Vec<String> {
    h.basis().labels().to_vec()
}

fn header(h: &HomLieSuperalgebra) -> String {
    let b = h.basis();
    format!(
        "{} (dim {} = {}|{})",
        h.name(),
        b.dim(),
        b.even_dim(),
        b.odd_dim()
    )
}

#[derive(Serialize)]
struct ValidateJson<'a> {
    algebra: &'a str,
    grading: bool,
    skew: bool,
    jacobi: bool,
    multiplicative: bool,
    alpha_invertible: bool,
    valid: bool,
    failures: Vec<LabeledWitness>,
}

#[derive(Serialize)]
struct LabeledWitness {
    kind: String,
    tuple: Vec<String>,
    residual: Vec<String>,
}

fn validate(h: &HomLieSuperalgebra, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    let r = h.validate();
    let code = if r.is_valid() { EXIT_OK } else { EXIT_INVALID };
    let labels = labels(h);
    if format == Format::Json {
        let failures = r
            .failures
            .iter()
            .map(|w| LabeledWitness {
                kind: w.kind.clone(),
                tuple: w.tuple.iter().map(|&i| labels[i].clone()).collect(),
                residual: w.residual.iter().map(format_rational).collect(),
            })
            .collect();
        write_json(
            out,
            &ValidateJson {
                algebra: h.name(),
                grading: r.grading_ok,
                skew: r.skew_ok,
                jacobi: r.jacobi_ok,
                multiplicative: r.multiplicative,
                alpha_invertible: r.alpha_invertible,
                valid: r.is_valid(),
                failures,
            },
        )?;
        return Ok(code);
    }
    let ok = |b: bool| if b { "ok" } else { "FAILED" };
    writeln!(out, "algebra: {}", header(h))?;
    writeln!(out, "grading: {}", ok(r.grading_ok))?;
    writeln!(out, "skew-supersymmetry: {}", ok(r.skew_ok))?;
    writeln!(out, "hom-jacobi: {}", ok(r.jacobi_ok))?;
    writeln!(out, "multiplicative: {}", yes_no(r.multiplicative))?;
    writeln!(out, "alpha invertible: {}", yes_no(r.alpha_invertible))?;
    for w in &r.failures {
        let residual: Vec<String> = w.residual.iter().map(format_rational).collect();
        writeln!(
            out,
            "  {} at {}: residual ({})",
            w.kind,
            h.tuple_labels(&w.tuple),
            residual.join(", ")
        )?;
    }
    writeln!(out, "valid: {}", yes_no(r.is_valid()))?;
    Ok(code)
}

#[derive(Serialize)]
struct AnalyzeJson<'a> {
    algebra: &'a str,
    dim: usize,
    even: Vec<String>,
    odd: Vec<String>,
    alpha: LinearMapJson,
    derived: Vec<BTreeMap<String, String>>,
    center: Vec<BTreeMap<String, String>>,
    derived_centralizer: Vec<BTreeMap<String, String>>,
    perfect: bool,
    centerless: bool,
    multiplicative: bool,
    alpha_invertible: bool,
}

fn analyze(h: &HomLieSuperalgebra, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    let labels = labels(h);
    let derived = h.derived_subalgebra();
    let center = h.center();
    let zc = h.derived_centralizer();
    let b = h.basis();
    let (even, odd) = labels.split_at(b.even_dim());
    if format == Format::Json {
        write_json(
            out,
            &AnalyzeJson {
                algebra: h.name(),
                dim: h.dim(),
                even: even.to_vec(),
                odd: odd.to_vec(),
                alpha: linear_map_json(h.alpha(), &labels),
                derived: subspace_json(&derived, &labels),
                center: subspace_json(&center, &labels),
                derived_centralizer: subspace_json(&zc, &labels),
                perfect: h.is_perfect(),
                centerless: h.is_centerless(),
                multiplicative: h.is_multiplicative(),
                alpha_invertible: h.alpha_is_invertible(),
            },
        )?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "algebra: {}", header(h))?;
    writeln!(out, "even: {}", even.join(", "))?;
    writeln!(out, "odd: {}", odd.join(", "))?;
    writeln!(
        out,
        "alpha: {}",
        linear_map_text("alpha", h.alpha(), &labels)
    )?;
    writeln!(
        out,
        "H' (dim {}): {}",
        derived.dim(),
        subspace_text(&derived, &labels)
    )?;
    writeln!(
        out,
        "Z(H) (dim {}): {}",
        center.dim(),
        subspace_text(&center, &labels)
    )?;
    writeln!(
        out,
        "Z_H(H') (dim {}): {}",
        zc.dim(),
        subspace_text(&zc, &labels)
    )?;
    writeln!(out, "perfect: {}", yes_no(h.is_perfect()))?;
    writeln!(out, "centerless: {}", yes_no(h.is_centerless()))?;
    writeln!(out, "multiplicative: {}", yes_no(h.is_multiplicative()))?;
    writeln!(out, "alpha invertible: {}", yes_no(h.alpha_is_invertible()))?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct BiderJson {
    degree: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    skipped: Option<String>,
    dim: usize,
    unknowns: usize,
    rank: usize,
    other_convention: SymmetryConvention,
    other_convention_dim: usize,
    basis: Vec<BilinearMapJson>,
}

#[derive(Serialize)]
struct LinearSpaceJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<u8>,
    dim: usize,
    unknowns: usize,
    rank: usize,
    basis: Vec<LinearMapJson>,
}

#[derive(Serialize)]
struct SpacesJson<'a> {
    algebra: &'a str,
    convention: SymmetryConvention,
    biderivations: Vec<BiderJson>,
    centroid: Vec<LinearSpaceJson>,
    commuting: LinearSpaceJson,
}

fn spaces(
    h: &HomLieSuperalgebra,
    degree: DegreeFilter,
    convention: SymmetryConvention,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let labels = labels(h);
    let mut biderivations = Vec::new();
    let mut centroid = Vec::new();
    for s in degree.degrees() {
        biderivations.push(match biderivation_space(h, s, convention) {
            Ok(space) => {
                let other = biderivation_space(h, s, convention.other())?;
                BiderJson {
                    degree: s.as_u8(),
                    skipped: None,
                    dim: space.dim(),
                    unknowns: space.unknowns,
                    rank: space.constraint_rank,
                    other_convention: convention.other(),
                    other_convention_dim: other.dim(),
                    basis: space
                        .basis
                        .iter()
                        .map(|phi| bilinear_map_json(phi, &labels))
                        .collect(),
                }
            }
            Err(Error::Precondition(reason)) => BiderJson {
                degree: s.as_u8(),
                skipped: Some(reason),
                dim: 0,
                unknowns: 0,
                rank: 0,
                other_convention: convention.other(),
                other_convention_dim: 0,
                basis: Vec::new(),
            },
            Err(e) => return Err(e.into()),
        });
        let c = centroid_space(h, s);
        centroid.push(LinearSpaceJson {
            degree: Some(s.as_u8()),
            dim: c.dim(),
            unknowns: c.unknowns,
            rank: c.constraint_rank,
            basis: c
                .basis
                .iter()
                .map(|d| linear_map_json(d, &labels))
                .collect(),
        });
    }
    let cm = commuting_map_space(h);
    let commuting = LinearSpaceJson {
        degree: None,
        dim: cm.dim(),
        unknowns: cm.unknowns,
        rank: cm.constraint_rank,
        basis: cm
            .basis
            .iter()
            .map(|d| linear_map_json(d, &labels))
            .collect(),
    };
    if format == Format::Json {
        write_json(
            out,
            &SpacesJson {
                algebra: h.name(),
                convention,
                biderivations,
                centroid,
                commuting,
            },
        )?;
        return Ok(EXIT_OK);
    }

    writeln!(out, "algebra: {}", header(h))?;
    writeln!(out, "convention: {convention}")?;
    for (s, b) in degree.degrees().into_iter().zip(&biderivations) {
        if let Some(reason) = &b.skipped {
            writeln!(out, "BDer{s}: skipped ({reason})")?;
            continue;
        }
        writeln!(
            out,
            "BDer{s}: dim {} ({} unknowns, rank {}; {} convention: dim {})",
            b.dim, b.unknowns, b.rank, b.other_convention, b.other_convention_dim
        )?;
        let space = biderivation_space(h, s, convention)?;
        for (i, phi) in space.basis.iter().enumerate() {
            writeln!(out, "  [{i}] {}", bilinear_map_text("phi", phi, &labels))?;
        }
    }
    for s in degree.degrees() {
        let c = centroid_space(h, s);
        writeln!(
            out,
            "C{s}: dim {} ({} unknowns, rank {})",
            c.dim(),
            c.unknowns,
            c.constraint_rank
        )?;
        for (i, d) in c.basis.iter().enumerate() {
            writeln!(out, "  [{i}] {}", linear_map_text("delta", d, &labels))?;
        }
    }
    writeln!(
        out,
        "commuting maps: dim {} ({} unknowns, rank {})",
        cm.dim(),
        cm.unknowns,
        cm.constraint_rank
    )?;
    for (i, d) in cm.basis.iter().enumerate() {
        writeln!(out, "  [{i}] {}", linear_map_text("d", d, &labels))?;
    }
    Ok(EXIT_OK)
}

fn verify(
    h: &HomLieSuperalgebra,
    convention: SymmetryConvention,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let report = suite::verify(h, convention);
    let code = if report.passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    };
    if format == Format::Json {
        write_json(out, &report)?;
        return Ok(code);
    }
    writeln!(out, "algebra: {}", header(h))?;
    writeln!(out, "convention: {convention}")?;
    let width = report
        .checks
        .iter()
        .map(|c| c.check.len())
        .max()
        .unwrap_or(0);
    for c in &report.checks {
        let detail = match (&c.skipped, c.passed) {
            (Some(reason), _) => reason.clone(),
            (None, true) => c.notes.join("; "),
            (None, false) => {
                let mut d = format!("{} witnesses", c.witnesses.len());
                if !c.notes.is_empty() {
                    d = format!("{d}; {}", c.notes.join("; "));
                }
                d
            }
        };
        writeln!(out, "{}  {:width$}  {detail}", status(c), c.check)?;
        if c.failed() {
            write!(out, "{}", witness_lines(h, c, "      "))?;
        }
    }
    let ran = report.checks.iter().filter(|c| !c.is_skipped()).count();
    let failed = report.failed_checks().count();
    let skipped = report.checks.len() - ran;
    if report.passed {
        writeln!(out, "result: PASS ({ran} checks passed, {skipped} skipped)")?;
    } else {
        writeln!(
            out,
            "result: FAIL ({failed} of {ran} checks failed, {skipped} skipped)"
        )?;
    }
    Ok(code)
}

#[derive(Serialize)]
struct ZooEntryJson {
    name: &'static str,
    params: BTreeMap<&'static str, &'static str>,
    summary: &'static str,
}

fn zoo_list(format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    if format == Format::Json {
        let entries: Vec<ZooEntryJson> = CATALOG
            .iter()
            .map(|e| ZooEntryJson {
                name: e.name,
                params: e.params.iter().copied().collect(),
                summary: e.summary,
            })
            .collect();
        write_json(out, &entries)?;
        return Ok(EXIT_OK);
    }
    for e in CATALOG {
        let params: Vec<String> = e.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let params = if params.is_empty() {
            String::new()
        } else {
            format!("({})", params.join(", "))
        };
        writeln!(out, "{:<28}{}", format!("{}{params}", e.name), e.summary)?;
    }
    Ok(EXIT_OK)
}
