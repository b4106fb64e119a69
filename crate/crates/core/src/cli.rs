//! Batch front-end: `gen`, `verify`, `moments` and `report`.
//!
//! Exit codes: 0 when no identity fails, 1 when one does, 2 for usage
//! errors and invalid parameters. Warnings go to stderr and never change
//! the exit code.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{
    hyp_laguerre, Family, FamilyData, FamilyKind, HypParams, LagFamily, LagParams, MlFamily,
    MlParams, ParamMap,
};
use crate::identities::{run_suites, Status, Suite, VerificationReport};
use crate::orthogonality::{moments_by_inversion, verify_d_orthogonality, OrthogonalityReport};
use crate::poly::Poly;
use crate::rational::{latex_rational, Rational};

pub const DEFAULT_ORDER: usize = 16;
pub const ORDER_ENV: &str = "DOPS_DEFAULT_ORDER";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Latex,
}

/// One fully resolved run. `table` switches `verify`, `moments` and
/// `report` to read `P_0..P_N` from a `gen` artifact instead of generating.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyKind>,
    #[serde(default)]
    pub params: ParamMap,
    #[serde(default = "default_order")]
    pub order: usize,
    #[serde(default)]
    pub suites: Vec<String>,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub with_q: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<PathBuf>,
}

fn default_order() -> usize {
    std::env::var(ORDER_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORDER)
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            family: None,
            params: ParamMap::new(),
            order: default_order(),
            suites: Vec::new(),
            format: Format::Json,
            with_q: false,
            table: None,
        }
    }
}

/// A parameter value in a config file: a `"p/q"` string, an integer, or a
/// list of either.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum ParamValue {
    Int(i64),
    Str(String),
    List(Vec<ParamValue>),
}

impl ParamValue {
    fn flatten(&self) -> String {
        match self {
            ParamValue::Int(i) => i.to_string(),
            ParamValue::Str(s) => s.clone(),
            ParamValue::List(v) => v
                .iter()
                .map(ParamValue::flatten)
                .collect::<Vec<_>>()
                .join(","),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    family: Option<FamilyKind>,
    d: Option<usize>,
    #[serde(default)]
    params: std::collections::BTreeMap<String, ParamValue>,
    order: Option<usize>,
    suites: Option<Vec<String>>,
    format: Option<Format>,
    with_q: Option<bool>,
    table: Option<PathBuf>,
}

fn allowed_keys(kind: FamilyKind) -> &'static [&'static str] {
    match kind {
        FamilyKind::Ml | FamilyKind::Charlier => &["d", "alpha", "beta", "c"],
        FamilyKind::Laguerre => &["d", "a", "beta_exp", "theta", "b"],
        FamilyKind::HypLaguerre => &["d", "alphavec", "beta", "l"],
    }
}

impl RunConfig {
    pub fn new(family: FamilyKind, params: &[(&str, &str)], order: usize) -> Self {
        RunConfig {
            family: Some(family),
            params: params
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
            order,
            ..RunConfig::default()
        }
    }

    pub fn suite_list(&self) -> Result<Vec<Suite>> {
        if self.suites.is_empty() {
            return Ok(Suite::ALL.to_vec());
        }
        Suite::parse_list(&self.suites.join(","))
    }

    /// Validates the parameters and builds the family, either by generation
    /// or from the table file.
    pub fn family(&self) -> Result<Family> {
        if let Some(path) = &self.table {
            let text = std::fs::read_to_string(path)?;
            let table: FamilyTable = serde_json::from_str(&text)?;
            return table.to_family();
        }
        let kind = self
            .family
            .ok_or_else(|| Error::InvalidParameter("no family given".into()))?;
        let allowed = allowed_keys(kind);
        if let Some(k) = self.params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::InvalidParameter(format!(
                "parameter {k} is not used by the {kind} family"
            )));
        }
        let mut map = self.params.clone();
        let n = self.order;
        match kind {
            FamilyKind::Ml | FamilyKind::Charlier => {
                if kind == FamilyKind::Charlier {
                    map.entry("alpha".into()).or_insert_with(|| "0".into());
                }
                let params = MlParams::from_map(&map)?;
                if kind == FamilyKind::Charlier && !num_traits::Zero::is_zero(params.alpha()) {
                    return Err(Error::InvalidParameter(
                        "charlier requires alpha = 0".into(),
                    ));
                }
                Ok(Family::ml(MlFamily::generate(params, n)?))
            }
            FamilyKind::Laguerre => {
                for key in ["theta", "beta_exp"] {
                    map.entry(key.into()).or_insert_with(|| "0".into());
                }
                let fam = LagFamily::generate(LagParams::from_map(&map)?, n)?;
                Ok(Family {
                    kind,
                    data: FamilyData::Laguerre(fam),
                })
            }
            FamilyKind::HypLaguerre => {
                let hp = HypParams::from_map(&map)?;
                let p = (0..=n)
                    .map(|k| hyp_laguerre(&hp, k))
                    .collect::<Result<Vec<_>>>()?;
                Family::from_table(kind, &map, p)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub coeffs: Vec<String>,
}

impl TableRow {
    fn new(n: usize, p: &Poly, len: usize) -> Self {
        TableRow {
            n,
            coeffs: p.padded(len).iter().map(|c| c.to_string()).collect(),
        }
    }
}

/// The `gen` artifact. Coefficients are ascending and dense.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyTable {
    pub family: FamilyKind,
    pub params: ParamMap,
    pub polys: Vec<TableRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<TableRow>>,
}

fn read_rows(rows: &[TableRow], what: &str) -> Result<Vec<Poly>> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            if row.n != i {
                return Err(Error::MalformedTable(format!(
                    "{what} row {i} is labelled n = {}",
                    row.n
                )));
            }
            Poly::from_strings(&row.coeffs)
        })
        .collect()
}

impl FamilyTable {
    pub fn from_family(fam: &Family, with_q: bool) -> Self {
        let polys = fam
            .p()
            .iter()
            .enumerate()
            .map(|(n, p)| TableRow::new(n, p, n + 1))
            .collect();
        let q = with_q.then(|| fam.q()).flatten().map(|q| {
            q.iter()
                .enumerate()
                .map(|(n, p)| TableRow::new(n, p, n + 1))
                .collect()
        });
        FamilyTable {
            family: fam.kind,
            params: fam.params_map(),
            polys,
            q,
        }
    }

    /// Rebuilds the family. A stored `Q` column must agree with the one
    /// recomputed from `P`.
    pub fn to_family(&self) -> Result<Family> {
        if self.polys.is_empty() {
            return Err(Error::MalformedTable("no polynomials".into()));
        }
        let fam = Family::from_table(self.family, &self.params, read_rows(&self.polys, "P")?)?;
        if let Some(rows) = &self.q {
            let stored = read_rows(rows, "Q")?;
            let computed = fam.q().unwrap_or(&[]);
            if let Some(n) = (0..stored.len()).find(|&n| computed.get(n) != Some(&stored[n])) {
                return Err(Error::MalformedTable(format!(
                    "stored Q_{n} disagrees with the lowering of P"
                )));
            }
        }
        Ok(fam)
    }
}

fn json_text<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn csv_text(rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    for row in rows {
        w.write_record(&row)
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(std::io::Error::other(e)))
}

fn latex_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '_' | '&' | '%' | '#' | '$' | '{' | '}' => {
                out.push('\\');
                out.push(ch);
            }
            '^' => out.push_str("\\^{}"),
            '~' => out.push_str("\\~{}"),
            '\\' => out.push_str("\\textbackslash{}"),
            _ => out.push(ch),
        }
    }
    out
}

fn params_latex(params: &ParamMap) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{} = {}", latex_escape(k), latex_escape(v)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn render_table(table: &FamilyTable, format: Format) -> Result<String> {
    match format {
        Format::Json => json_text(table),
        Format::Csv => {
            let width = table.polys.len();
            let mut rows = vec![std::iter::once("seq".to_string())
                .chain(std::iter::once("n".into()))
                .chain((0..width).map(|k| format!("c{k}")))
                .collect::<Vec<_>>()];
            let mut push = |tag: &str, list: &[TableRow]| {
                for r in list {
                    let mut row = vec![tag.to_string(), r.n.to_string()];
                    row.extend(r.coeffs.iter().cloned());
                    row.resize(width + 2, "0".into());
                    rows.push(row);
                }
            };
            push("P", &table.polys);
            if let Some(q) = &table.q {
                push("Q", q);
            }
            csv_text(rows)
        }
        Format::Latex => {
            let mut s = format!(
                "% {} family, {}\n\\begin{{align*}}\n",
                table.family,
                params_latex(&table.params)
            );
            let mut push = |name: &str, list: &[TableRow]| -> Result<()> {
                for r in list {
                    let p = Poly::from_strings(&r.coeffs)?;
                    writeln!(s, "{name}_{{{}}}(x) &= {} \\\\", r.n, p.to_latex()).unwrap();
                }
                Ok(())
            };
            push("P", &table.polys)?;
            if let Some(q) = &table.q {
                push("Q", q)?;
            }
            s.push_str("\\end{align*}\n");
            Ok(s)
        }
    }
}

/// `P_0..P_N` (and `Q_0..Q_{N-1}` when requested) in the configured format.
pub fn cmd_gen(cfg: &RunConfig) -> Result<String> {
    let fam = cfg.family()?;
    render_table(&FamilyTable::from_family(&fam, cfg.with_q), cfg.format)
}

#[derive(Serialize)]
struct VerifyArtifact<'a> {
    family: FamilyKind,
    params: &'a ParamMap,
    order: usize,
    reports: &'a [VerificationReport],
}

/// Renders verification reports. The JSON form embeds every report in full.
pub fn render_reports(
    fam: &Family,
    reports: &[VerificationReport],
    format: Format,
) -> Result<String> {
    let params = fam.params_map();
    match format {
        Format::Json => json_text(&VerifyArtifact {
            family: fam.kind,
            params: &params,
            order: fam.order(),
            reports,
        }),
        Format::Csv => {
            let mut rows = vec![[
                "id",
                "status",
                "n_min",
                "n_max",
                "convention",
                "witness_n",
                "notes",
            ]
            .map(String::from)
            .to_vec()];
            for r in reports {
                rows.push(vec![
                    r.id.clone(),
                    status_name(r.status).into(),
                    r.range.0.to_string(),
                    r.range.1.to_string(),
                    r.convention.clone().unwrap_or_default(),
                    r.witness
                        .as_ref()
                        .map(|w| w.n.to_string())
                        .unwrap_or_default(),
                    r.notes.join("; "),
                ]);
            }
            csv_text(rows)
        }
        Format::Latex => {
            let mut s = format!(
                "% {} family, {}\n\\begin{{tabular}}{{llll}}\n\\hline\nidentity & status & range & convention \\\\\n\\hline\n",
                fam.kind,
                params_latex(&params)
            );
            for r in reports {
                writeln!(
                    s,
                    "{} & {} & ${}\\le n\\le {}$ & {} \\\\",
                    latex_escape(&r.id),
                    status_name(r.status),
                    r.range.0,
                    r.range.1,
                    latex_escape(r.convention.as_deref().unwrap_or("")),
                )
                .unwrap();
            }
            s.push_str("\\hline\n\\end{tabular}\n");
            Ok(s)
        }
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::NotApplicable => "not-applicable",
        Status::Warning => "warning",
    }
}

pub struct VerifyOutcome {
    pub reports: Vec<VerificationReport>,
    pub rendered: String,
}

impl VerifyOutcome {
    pub fn failed(&self) -> bool {
        self.reports.iter().any(VerificationReport::is_failure)
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed())
    }

    pub fn warnings(&self) -> Vec<String> {
        self.reports
            .iter()
            .filter(|r| r.status == Status::Warning)
            .map(|r| format!("{}: {}", r.id, r.notes.join("; ")))
            .collect()
    }
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<VerifyOutcome> {
    let suites = cfg.suite_list()?;
    let fam = cfg.family()?;
    let reports = run_suites(&fam, &suites)?;
    let rendered = render_reports(&fam, &reports, cfg.format)?;
    Ok(VerifyOutcome { reports, rendered })
}

/// Plain-text summary, one line per report followed by its witness,
/// convention and notes.
pub fn cmd_report(cfg: &RunConfig) -> Result<VerifyOutcome> {
    let suites = cfg.suite_list()?;
    let fam = cfg.family()?;
    let reports = run_suites(&fam, &suites)?;
    let params = fam.params_map();
    let mut s = format!("family: {}\norder: {}\n", fam.kind, fam.order());
    for (k, v) in &params {
        writeln!(s, "  {k} = {v}").unwrap();
    }
    s.push('\n');
    for r in &reports {
        writeln!(
            s,
            "{:<15} {:<28} n = {}..{}",
            status_name(r.status),
            r.id,
            r.range.0,
            r.range.1
        )
        .unwrap();
        if let Some(c) = &r.convention {
            writeln!(s, "    convention: {c}").unwrap();
        }
        if let Some(w) = &r.witness {
            writeln!(s, "    {}", crate::identities::describe_witness(w)).unwrap();
        }
        for note in &r.notes {
            writeln!(s, "    {note}").unwrap();
        }
    }
    let count = |st: Status| reports.iter().filter(|r| r.status == st).count();
    writeln!(
        s,
        "\n{} pass, {} fail, {} warning, {} not applicable",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Warning),
        count(Status::NotApplicable)
    )
    .unwrap();
    Ok(VerifyOutcome {
        reports,
        rendered: s,
    })
}

#[derive(Serialize)]
struct MomentsArtifact<'a> {
    family: FamilyKind,
    params: &'a ParamMap,
    d: usize,
    order: usize,
    #[serde(serialize_with = "crate::rational::serialize_rational_rows")]
    moments: Vec<Vec<Rational>>,
    zero_conditions_hold: bool,
    regularity_conditions_hold: bool,
    conditions: &'a OrthogonalityReport,
}

pub struct MomentsOutcome {
    pub report: OrthogonalityReport,
    pub rendered: String,
}

impl MomentsOutcome {
    pub fn exit_code(&self) -> i32 {
        i32::from(!self.report.zero_conditions_hold())
    }
}

/// Moment rows of the first `d` dual functionals and the zero/nonzero
/// pattern of every `<u_r, x^m P_n>`.
pub fn cmd_moments(cfg: &RunConfig) -> Result<MomentsOutcome> {
    let fam = cfg.family()?;
    let d = fam.d();
    let p: Vec<Poly> = match fam.kind {
        FamilyKind::HypLaguerre => fam
            .p()
            .iter()
            .map(|q| {
                let lead = q
                    .leading()
                    .cloned()
                    .unwrap_or_else(|| Rational::from_integer(1.into()));
                q.scale(&(Rational::from_integer(1.into()) / lead))
            })
            .collect(),
        _ => fam.p().to_vec(),
    };
    let moments = moments_by_inversion(&p, d)?;
    let report = verify_d_orthogonality(&p, &moments, d, fam.order())?;
    let rows: Vec<Vec<Rational>> = (0..d).map(|r| moments.row(r).to_vec()).collect();
    let params = fam.params_map();
    let rendered = match cfg.format {
        Format::Json => json_text(&MomentsArtifact {
            family: fam.kind,
            params: &params,
            d,
            order: fam.order(),
            moments: rows,
            zero_conditions_hold: report.zero_conditions_hold(),
            regularity_conditions_hold: report.regularity_conditions_hold(),
            conditions: &report,
        })?,
        Format::Csv => {
            let mut out = vec![["kind", "r", "m", "n", "value", "holds"]
                .map(String::from)
                .to_vec()];
            for (r, row) in rows.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    out.push(vec![
                        "moment".into(),
                        r.to_string(),
                        String::new(),
                        k.to_string(),
                        v.to_string(),
                        String::new(),
                    ]);
                }
            }
            for e in &report.entries {
                out.push(vec![
                    format!("{:?}", e.kind).to_lowercase(),
                    e.r.to_string(),
                    e.m.to_string(),
                    e.n.to_string(),
                    e.value.to_string(),
                    e.holds.to_string(),
                ]);
            }
            csv_text(out)?
        }
        Format::Latex => {
            let cols = rows.first().map_or(0, Vec::len);
            let mut s = format!(
                "% moments <u_r, x^k>, {} family, {}\n\\[\n\\begin{{array}}{{{}}}\n",
                fam.kind,
                params_latex(&params),
                "r".repeat(cols)
            );
            for row in &rows {
                let cells: Vec<String> = row.iter().map(latex_rational).collect();
                writeln!(s, "{} \\\\", cells.join(" & ")).unwrap();
            }
            s.push_str("\\end{array}\n\\]\n");
            s.push_str("\\begin{tabular}{rrrlc}\n$r$ & $m$ & $n$ & value & holds \\\\\n\\hline\n");
            for e in &report.entries {
                writeln!(
                    s,
                    "{} & {} & {} & ${}$ & {} \\\\",
                    e.r,
                    e.m,
                    e.n,
                    latex_rational(&e.value),
                    if e.holds { "yes" } else { "no" }
                )
                .unwrap();
            }
            s.push_str("\\end{tabular}\n");
            s
        }
    };
    Ok(MomentsOutcome { report, rendered })
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

#[derive(Debug, Parser)]
#[command(
    name = "dops",
    version,
    about = "Exact d-orthogonal polynomial families and their identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate P_0..P_N (and Q with --with-q).
    Gen(RunArgs),
    /// Run verification suites; exit 1 if an identity fails.
    Verify(RunArgs),
    /// Moments of the dual functionals and the orthogonality pattern.
    Moments(RunArgs),
    /// Human-readable verification summary (ignores --format).
    Report(RunArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// JSON config file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    family: Option<FamilyKind>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Comma-separated c_1..c_{d-1}.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    #[arg(long = "beta-exp", allow_hyphen_values = true)]
    beta_exp: Option<String>,
    /// Comma-separated b_1..b_d.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Comma-separated alpha_1..alpha_d.
    #[arg(long, allow_hyphen_values = true)]
    alphavec: Option<String>,
    /// Quasi-orthogonality order of the hypergeometric family.
    #[arg(long)]
    l: Option<usize>,
    /// Highest degree N (default 16, or DOPS_DEFAULT_ORDER).
    #[arg(long)]
    order: Option<usize>,
    /// Comma-separated suite ids, or `all`.
    #[arg(long)]
    suites: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Read P_0..P_N from a JSON table written by `gen`.
    #[arg(long, visible_alias = "in")]
    table: Option<PathBuf>,
    #[arg(long)]
    with_q: bool,
}

impl RunArgs {
    fn resolve(&self) -> Result<RunConfig> {
        let file: ConfigFile = match &self.config {
            Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
            None => ConfigFile::default(),
        };
        let mut params: ParamMap = file
            .params
            .iter()
            .map(|(k, v)| (k.clone(), v.flatten()))
            .collect();
        if let Some(d) = file.d {
            params.insert("d".into(), d.to_string());
        }
        let flags = [
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("c", &self.c),
            ("a", &self.a),
            ("theta", &self.theta),
            ("beta_exp", &self.beta_exp),
            ("b", &self.b),
            ("alphavec", &self.alphavec),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                params.insert(k.into(), v.clone());
            }
        }
        if let Some(d) = self.d {
            params.insert("d".into(), d.to_string());
        }
        if let Some(l) = self.l {
            params.insert("l".into(), l.to_string());
        }
        let suites = match &self.suites {
            Some(s) => vec![s.clone()],
            None => file.suites.unwrap_or_default(),
        };
        Ok(RunConfig {
            family: self.family.or(file.family),
            params,
            order: self.order.or(file.order).unwrap_or_else(default_order),
            suites,
            format: self.format.or(file.format).unwrap_or_default(),
            with_q: self.with_q || file.with_q.unwrap_or(false),
            table: self.table.clone().or(file.table),
        })
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let (Command::Gen(args)
    | Command::Verify(args)
    | Command::Moments(args)
    | Command::Report(args)) = &cli.command;
    let cfg = args.resolve()?;
    let out = args.out.as_deref();
    match &cli.command {
        Command::Gen(_) => {
            emit(out, &cmd_gen(&cfg)?)?;
            Ok(0)
        }
        Command::Verify(_) | Command::Report(_) => {
            let outcome = if matches!(cli.command, Command::Verify(_)) {
                cmd_verify(&cfg)?
            } else {
                cmd_report(&cfg)?
            };
            for w in outcome.warnings() {
                eprintln!("warning: {w}");
            }
            emit(out, &outcome.rendered)?;
            Ok(outcome.exit_code())
        }
        Command::Moments(_) => {
            let outcome = cmd_moments(&cfg)?;
            for (r, m) in outcome.report.regularity_failures() {
                eprintln!("warning: <u_{r}, x^{m} P_n> vanishes on the diagonal");
            }
            emit(out, &outcome.rendered)?;
            Ok(outcome.exit_code())
        }
    }
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_classical_row() {
        let cfg = RunConfig::new(
            FamilyKind::Ml,
            &[("d", "1"), ("alpha", "1"), ("beta", "-1")],
            4,
        );
        let table: FamilyTable = serde_json::from_str(&cmd_gen(&cfg).unwrap()).unwrap();
        assert_eq!(table.polys[3].coeffs, ["0", "2", "0", "1"]);
    }

    #[test]
    fn gen_order_zero() {
        let cfg = RunConfig::new(
            FamilyKind::Ml,
            &[("d", "2"), ("alpha", "1/2"), ("beta", "3")],
            0,
        );
        let table: FamilyTable = serde_json::from_str(&cmd_gen(&cfg).unwrap()).unwrap();
        assert_eq!(table.polys.len(), 1);
        assert_eq!(table.polys[0].coeffs, ["1"]);
    }

    #[test]
    fn equal_alpha_beta_rejected() {
        let cfg = RunConfig::new(
            FamilyKind::Ml,
            &[("d", "1"), ("alpha", "1"), ("beta", "1")],
            4,
        );
        assert_eq!(
            cmd_gen(&cfg).unwrap_err().to_string(),
            "alpha must differ from beta"
        );
    }

    #[test]
    fn foreign_parameter_rejected() {
        let cfg = RunConfig::new(
            FamilyKind::Ml,
            &[("d", "1"), ("alpha", "1"), ("beta", "2"), ("a", "1")],
            4,
        );
        assert!(matches!(cmd_gen(&cfg), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn moments_need_order() {
        let cfg = RunConfig::new(
            FamilyKind::Ml,
            &[("d", "3"), ("alpha", "1"), ("beta", "2")],
            2,
        );
        let err = cmd_moments(&cfg).err().unwrap();
        assert!(err.to_string().starts_with("need N >= 3"), "{err}");
    }

    #[test]
    fn csv_and_latex_render() {
        let mut cfg = RunConfig::new(
            FamilyKind::Ml,
            &[("d", "1"), ("alpha", "1"), ("beta", "-1")],
            2,
        );
        cfg.format = Format::Csv;
        assert_eq!(
            cmd_gen(&cfg).unwrap(),
            "seq,n,c0,c1,c2\nP,0,1,0,0\nP,1,0,1,0\nP,2,0,0,1\n"
        );
        cfg.format = Format::Latex;
        assert!(cmd_gen(&cfg).unwrap().contains("P_{2}(x) &= x^{2} \\\\"));
    }
}
