//! The `frobex` command line: descriptor parsing, dispatch and reports.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use frobex::covers::{CoverSpec, MainTheoremReport};
use frobex::divisor::{DivisorTerm, RationalJson};
use frobex::dvrext::{ExtensionSpec, IterateCheck};
use frobex::fields::{FieldDesc, FieldSpec};
use frobex::pmaps::{Images, PeMap, PeMapJson, RingKind, RingModel, Witness};
use frobex::sweep::{parse_pool, run_sweep, SweepConfig, SweepReport};
use frobex::wildcase::{WildCase, TABLE_ROWS};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 1;
pub const EXIT_DOES_NOT_EXTEND: i32 = 2;
pub const EXIT_DISCREPANCY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "frobex", version, about = "Extend p^-e-linear maps along tame covers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Root basis of R^{1/p^e} over R.
    Basis(RingArgs),
    /// The canonical generator of Hom_R(R^{1/p^e}, R).
    Generator(RingArgs),
    /// Cofactor and divisor of a map.
    Delta(SpecArg),
    /// Twist a map by the element `c` of its descriptor.
    Twist(SpecArg),
    /// Compose a map with itself `m` times.
    Iterate(SpecArg),
    /// Extend a map along a tame DVR extension.
    ExtendDvr(SpecArg),
    /// Extend a map along the Kummer cover y = x^n.
    ExtendCover(SpecArg),
    /// Check every route of the extension criterion over a pool of maps.
    VerifySweep(SweepArgs),
    /// Table 1 and both criteria for the wildly ramified example.
    WildDemo(SpecArg),
}

#[derive(Args, Debug)]
pub struct SpecArg {
    #[arg(long)]
    pub spec: PathBuf,
}

#[derive(Args, Debug)]
pub struct RingArgs {
    /// Map descriptor; `images` is ignored.
    #[arg(long, conflicts_with = "p")]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub e: u32,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 3)]
    pub p: u32,
    #[arg(long, default_value_t = 4)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    /// Comma-separated images; `y2` means `y^2`.
    #[arg(long, default_value = "0,1,2,y,y2")]
    pub pool: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads, 0 for one per core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Random draws when the pool is too large to enumerate.
    #[arg(long, default_value_t = 300)]
    pub samples: usize,
}

/// A map on `k[t]` or `k[t]_(t)`: `{"p":3,"e":1,"images":["0","y","0"]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub p: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<FieldSpec>,
    #[serde(default = "default_kind")]
    pub ring: RingKind,
    #[serde(default = "default_var")]
    pub var: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<Images>,
    /// Twisting element.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    /// Number of compositions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
}

fn default_kind() -> RingKind {
    RingKind::Poly
}

fn default_var() -> String {
    "y".into()
}

impl MapSpec {
    pub fn ring(&self) -> Result<RingModel<FieldDesc>, CliError> {
        let spec = self.k.clone().unwrap_or_else(|| FieldSpec::prime(self.p));
        if spec.p != self.p {
            return Err(CliError::Malformed(format!(
                "k has characteristic {} but p = {}",
                spec.p, self.p
            )));
        }
        let k = FieldDesc::from_spec(&spec)?;
        Ok(RingModel::over(self.ring, &k, &self.var))
    }

    pub fn map(&self, ring: &RingModel<FieldDesc>) -> Result<PeMap<FieldDesc>, CliError> {
        let images = self
            .images
            .clone()
            .ok_or_else(|| CliError::Malformed("descriptor has no `images`".into()))?;
        Ok(PeMapJson { e: self.e, images }.build_at(ring, 1)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub tag: String,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisReport {
    pub ring: String,
    pub e: u32,
    pub basis: Vec<BasisEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapReport {
    pub ring: String,
    pub map: PeMapJson,
    pub is_generator: bool,
    pub is_splitting: bool,
    pub cofactor: String,
    pub delta: Vec<DivisorTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DvrReport {
    pub extends: bool,
    pub map_extends: bool,
    pub delta_psi: Option<Vec<DivisorTerm>>,
    pub pullback: Option<Vec<DivisorTerm>>,
    pub ram: Vec<DivisorTerm>,
    pub delta_bar: Option<Vec<DivisorTerm>>,
    pub delta_extension: Option<Vec<DivisorTerm>>,
    pub iterate_check: Option<IterateCheck>,
    pub extension: Option<PeMapJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    #[serde(flatten)]
    pub report: MainTheoremReport,
    pub extension: Option<PeMapJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WildRow {
    pub element: String,
    pub value: String,
    pub integral: bool,
    /// The same row as printed in the source table, evaluated on this map.
    pub printed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WildReport {
    pub rows: Vec<WildRow>,
    pub extends: bool,
    pub cofactor: String,
    pub delta_order: RationalJson,
    pub delta_criterion: bool,
}

#[derive(Debug)]
pub enum CliError {
    Malformed(String),
    Core(frobex::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Malformed(m) => write!(f, "malformed input: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<frobex::Error> for CliError {
    fn from(e: frobex::Error) -> Self {
        CliError::Core(e)
    }
}

/// What a command printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Deserialize `text`, naming the JSON path of the first schema violation.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::Malformed(format!("at `{path}`: {}", e.inner()))
    })
}

fn read_spec<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))?;
    parse_json(&text)
}

fn emit<T: Serialize>(format: Format, report: &T, text: String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => text,
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: EXIT_MALFORMED,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(cli: &Cli) -> Result<(i32, String), CliError> {
    let fmt = cli.format;
    match &cli.command {
        Command::Basis(args) => basis(fmt, args),
        Command::Generator(args) => generator(fmt, args),
        Command::Delta(args) => delta(fmt, &read_spec(&args.spec)?),
        Command::Twist(args) => twist(fmt, &read_spec(&args.spec)?),
        Command::Iterate(args) => iterate(fmt, &read_spec(&args.spec)?),
        Command::ExtendDvr(args) => extend_dvr(fmt, &read_spec(&args.spec)?),
        Command::ExtendCover(args) => extend_cover(fmt, &read_spec(&args.spec)?),
        Command::VerifySweep(args) => verify_sweep(fmt, args),
        Command::WildDemo(args) => wild_demo(fmt, &read_spec(&args.spec)?),
    }
}

fn ring_args(args: &RingArgs) -> Result<(RingModel<FieldDesc>, u32), CliError> {
    match (&args.spec, args.p) {
        (Some(path), _) => {
            let spec: MapSpec = read_spec(path)?;
            Ok((spec.ring()?, spec.e.unwrap_or(args.e)))
        }
        (None, Some(p)) => {
            let k = FieldDesc::finite_prime(p)?;
            Ok((RingModel::poly(&k, "y"), args.e))
        }
        (None, None) => Err(CliError::Malformed("give --spec or --p".into())),
    }
}

fn check_level(e: u32) -> Result<(), CliError> {
    if e == 0 {
        return Err(CliError::Malformed("e must be at least 1".into()));
    }
    Ok(())
}

pub fn basis(fmt: Format, args: &RingArgs) -> Result<(i32, String), CliError> {
    let (ring, e) = ring_args(args)?;
    check_level(e)?;
    let b = ring.root_basis(e);
    let report = BasisReport {
        ring: ring.name(),
        e,
        basis: b
            .tags
            .iter()
            .zip(&b.labels)
            .map(|(t, l)| BasisEntry {
                tag: t.to_string(),
                label: l.clone(),
            })
            .collect(),
    };
    let mut text = format!("basis of {}^(1/{}) over {}:\n", ring.name(), ring.q(e), ring.name());
    for entry in &report.basis {
        let _ = writeln!(text, "{} {}", entry.tag, entry.label);
    }
    Ok((EXIT_OK, emit(fmt, &report, text)))
}

fn map_report(fmt: Format, map: &PeMap<FieldDesc>) -> Result<String, CliError> {
    let ring = map.ring();
    let cofactor = map.canonical_cofactor()?;
    let delta = map.delta()?;
    let report = MapReport {
        ring: ring.name(),
        map: map.to_json(),
        is_generator: map.is_generator()?,
        is_splitting: map.is_splitting(),
        cofactor: ring.format(&cofactor),
        delta: delta.to_json(ring.coeff())?,
    };
    let mut text = format!("map on {} at e = {}:\n{}", ring.name(), map.e(), map.describe());
    let _ = writeln!(text, "generator: {}", report.is_generator);
    let _ = writeln!(text, "splitting: {}", report.is_splitting);
    let _ = writeln!(text, "cofactor: {}", report.cofactor);
    let _ = writeln!(text, "delta: {}", delta.format(ring.coeff(), ring.param()));
    Ok(emit(fmt, &report, text))
}

pub fn generator(fmt: Format, args: &RingArgs) -> Result<(i32, String), CliError> {
    let (ring, e) = ring_args(args)?;
    check_level(e)?;
    Ok((EXIT_OK, map_report(fmt, &ring.generator_map(e))?))
}

pub fn delta(fmt: Format, spec: &MapSpec) -> Result<(i32, String), CliError> {
    let ring = spec.ring()?;
    let map = spec.map(&ring)?;
    if fmt == Format::Text {
        let d = map.delta()?;
        return Ok((EXIT_OK, format!("{}\n", d.format(ring.coeff(), ring.param()))));
    }
    Ok((EXIT_OK, map_report(fmt, &map)?))
}

pub fn twist(fmt: Format, spec: &MapSpec) -> Result<(i32, String), CliError> {
    let ring = spec.ring()?;
    let map = spec.map(&ring)?;
    let c = spec
        .c
        .as_deref()
        .ok_or_else(|| CliError::Malformed("twist needs `c`".into()))?;
    let c = ring.parse(c)?;
    Ok((EXIT_OK, map_report(fmt, &map.twist(&c)?)?))
}

pub fn iterate(fmt: Format, spec: &MapSpec) -> Result<(i32, String), CliError> {
    let ring = spec.ring()?;
    let map = spec.map(&ring)?;
    let m = spec
        .m
        .ok_or_else(|| CliError::Malformed("iterate needs `m`".into()))?;
    if m == 0 {
        return Err(CliError::Malformed("m must be at least 1".into()));
    }
    Ok((EXIT_OK, map_report(fmt, &map.iterate(m)?)?))
}

fn verdict(extends: bool) -> i32 {
    if extends {
        EXIT_OK
    } else {
        EXIT_DOES_NOT_EXTEND
    }
}

pub fn extend_dvr(fmt: Format, spec: &ExtensionSpec) -> Result<(i32, String), CliError> {
    let ext = spec.build()?;
    let map = spec
        .map
        .as_ref()
        .ok_or_else(|| CliError::Malformed("descriptor has no `map`".into()))?;
    let e = spec.e.unwrap_or(ext.minimal_e().0);
    let psi = map.build_at(ext.base(), e)?;
    let r = ext.extends_criterion(&psi)?;
    let sj = |d: &Option<_>| d.as_ref().map(|d| ext.s_divisor_json(d)).transpose();
    let report = DvrReport {
        extends: r.extends,
        map_extends: r.map_extends,
        delta_psi: r
            .delta_psi
            .as_ref()
            .map(|d| d.to_json(ext.k()))
            .transpose()?,
        pullback: sj(&r.pullback)?,
        ram: ext.s_divisor_json(&r.ram)?,
        delta_bar: sj(&r.delta_bar)?,
        delta_extension: sj(&r.delta_extension)?,
        iterate_check: r.iterate_check.clone(),
        extension: r.extension.map().map(|m| m.to_json()),
        witness: r.extension.witness().cloned(),
        consistent: r.consistent(),
    };
    let fs = |d: &Option<_>| d.as_ref().map(|d| ext.format_s_divisor(d)).unwrap_or_else(|| "-".into());
    let mut text = format!(
        "{} -> {}, n = {}, e = {}\n",
        ext.base().name(),
        ext.cover().name(),
        ext.n(),
        psi.e()
    );
    let _ = writeln!(text, "extends: {}", report.extends);
    let _ = writeln!(text, "map extends: {}", report.map_extends);
    let _ = writeln!(
        text,
        "delta_psi: {}",
        r.delta_psi.as_ref().map(|d| ext.format_r_divisor(d)).unwrap_or_else(|| "-".into())
    );
    let _ = writeln!(text, "pullback: {}", fs(&r.pullback));
    let _ = writeln!(text, "ram: {}", ext.format_s_divisor(&r.ram));
    let _ = writeln!(text, "delta_bar: {}", fs(&r.delta_bar));
    if let Some(it) = &r.iterate_check {
        let _ = writeln!(
            text,
            "iterate m = {}: divisor {}, map {}",
            it.m, it.divisor_extends, it.map_extends
        );
    }
    match &r.extension {
        frobex::pmaps::Extension::Extends(m) => text.push_str(&m.describe()),
        frobex::pmaps::Extension::Fails(w) => {
            let _ = writeln!(text, "witness: {} -> {}", w.element, w.value);
        }
    }
    let _ = writeln!(text, "consistent: {}", report.consistent);
    let code = if report.consistent {
        verdict(report.extends)
    } else {
        EXIT_DISCREPANCY
    };
    Ok((code, emit(fmt, &report, text)))
}

pub fn extend_cover(fmt: Format, spec: &CoverSpec) -> Result<(i32, String), CliError> {
    let cover = spec.build()?;
    let psi = spec
        .psi(&cover)?
        .ok_or_else(|| CliError::Malformed("descriptor has no `map`".into()))?;
    let (report, t) = cover.check_main_theorem(&psi)?;
    let extension = cover.global_extend(&psi)?;
    let dash = |s: &Option<String>| s.clone().unwrap_or_else(|| "-".into());
    let mut text = format!("y = x^{} over {}, e = {}\n", cover.n(), cover.field().name(), psi.e());
    let _ = writeln!(text, "extends: {}", report.global_extends);
    let _ = writeln!(text, "criterion: {}", report.criterion_extends);
    let _ = writeln!(text, "local: {}", report.local_extends);
    let _ = writeln!(text, "delta_psi: {}", dash(&t.delta_psi));
    let _ = writeln!(text, "pullback: {}", dash(&t.pullback));
    let _ = writeln!(text, "ram: {}", t.ram);
    let _ = writeln!(text, "delta_bar: {}", dash(&t.delta_bar));
    let _ = writeln!(
        text,
        "splitting: {} -> {}",
        report.splitting_in,
        report.splitting_out.map(|b| b.to_string()).unwrap_or_else(|| "-".into())
    );
    if let Some(e) = &t.extension {
        text.push_str(e);
    }
    if let Some(w) = &report.witness {
        let _ = writeln!(text, "witness: {} -> {}", w.element, w.value);
    }
    let _ = writeln!(text, "consistent: {}", report.consistent);
    let code = if report.consistent {
        verdict(report.global_extends)
    } else {
        EXIT_DISCREPANCY
    };
    let full = CoverReport {
        report,
        extension: extension.map().map(|m| m.to_json()),
    };
    Ok((code, emit(fmt, &full, text)))
}

pub fn verify_sweep(fmt: Format, args: &SweepArgs) -> Result<(i32, String), CliError> {
    check_level(args.e)?;
    let pool = parse_pool(&args.pool, "y");
    let cfg = SweepConfig {
        p: args.p,
        n: args.n,
        e: args.e,
        pool,
        seed: args.seed,
        jobs: args.jobs,
        samples: args.samples,
    };
    let report: SweepReport = run_sweep(&cfg)?;
    let mut text = format!("{}\n", report.summary());
    let _ = writeln!(
        text,
        "{} extend; {}",
        report.extends,
        if report.exhaustive {
            "exhaustive".to_string()
        } else {
            format!("sampled with seed {}", args.seed)
        }
    );
    for f in &report.failures {
        let _ = writeln!(text, "discrepancy: images {}", f.join(", "));
    }
    let code = if report.discrepancies == 0 {
        EXIT_OK
    } else {
        EXIT_DISCREPANCY
    };
    Ok((code, emit(fmt, &report, text)))
}

pub fn wild_demo(fmt: Format, spec: &PeMapJson) -> Result<(i32, String), CliError> {
    let w = WildCase::new()?;
    if spec.e.is_some_and(|e| e != 1) {
        return Err(CliError::Malformed("the wild example is at e = 1".into()));
    }
    let phi = spec.build_at(w.base(), 1)?;
    let values = w.table1_formulae(&phi)?;
    let printed = w.printed_table1(&phi)?;
    let rows: Vec<WildRow> = TABLE_ROWS
        .iter()
        .zip(values.iter().zip(&printed))
        .map(|(name, (v, p))| WildRow {
            element: name.to_string(),
            value: w.format_l(v),
            integral: w.is_integral(v),
            printed: w.format_l(p),
        })
        .collect();
    let extends = w.wild_extends(&phi)?;
    let report = WildReport {
        rows,
        extends,
        cofactor: w.base().format(&w.cofactor(&phi)?),
        delta_order: RationalJson::from_rational(&w.delta_order(&phi)?)?,
        delta_criterion: w.wild_delta_criterion(&phi)?,
    };
    let mut text = String::from("phi_bar on x^(i/3)*z^(j/3):\n");
    for r in &report.rows {
        let mark = if r.value == r.printed {
            String::new()
        } else {
            format!("   (table as printed: {})", r.printed)
        };
        let _ = writeln!(
            text,
            "{} -> {}{}{}",
            r.element,
            r.value,
            if r.integral { "" } else { "   [not in S_q]" },
            mark
        );
    }
    let _ = writeln!(text, "extends: {}", report.extends);
    let _ = writeln!(text, "cofactor: {}", report.cofactor);
    let ord = match report.delta_order.den {
        1 => report.delta_order.num.to_string(),
        d => format!("{}/{d}", report.delta_order.num),
    };
    let _ = writeln!(text, "ord_x(delta): {ord}, criterion: {}", report.delta_criterion);
    let code = if report.extends != report.delta_criterion {
        EXIT_DISCREPANCY
    } else {
        verdict(report.extends)
    };
    Ok((code, emit(fmt, &report, text)))
}
