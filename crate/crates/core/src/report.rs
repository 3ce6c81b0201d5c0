//! Command implementations behind the `mixmaster` binary: chain analysis,
//! appendix tables, sweeps and oracle verification, rendered as text, CSV or
//! JSON.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cfrac::{cf_value, quad_coeffs, CfError, CfWord, ClosedForm, CoeffVector};
use crate::kasner::{base_points, eigenvalues};
use crate::resonance::{oracle_hits, verify_identity, KVector};
use crate::snc::{
    chain_verdict, table_coeffs, two_periodic_admissible, verdict_with_coeffs, word_verdict,
    BasePointReport, ChainReport, Reason, SncError,
};

type Report = BasePointReport<BigInt>;
type Chain = ChainReport<BigInt>;

pub const DEFAULT_ORACLE_ORDER: u32 = 30;
pub const MAX_SWEEP_PERIOD: usize = 10;
pub const MAX_SWEEP_WORDS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, PartialOrd, Ord, clap::ValueEnum)]
pub enum Section {
    A1,
    A2,
    A3,
    A4,
    #[default]
    All,
}

impl Section {
    pub fn id(self) -> &'static str {
        match self {
            Section::A1 => "a1",
            Section::A2 => "a2",
            Section::A3 => "a3",
            Section::A4 => "a4",
            Section::All => "all",
        }
    }

    fn title(self) -> &'static str {
        match self {
            Section::A1 => "constant period",
            Section::A2 => "two-periodic",
            Section::A3 => "three-periodic",
            Section::A4 => "pre-periodic heads",
            Section::All => "all",
        }
    }

    fn covers(self, other: Section) -> bool {
        self == Section::All || self == other
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepBounds {
    pub max_period: usize,
    pub min_entry: u64,
    pub max_entry: u64,
    pub admissible_only: bool,
}

impl Default for SweepBounds {
    fn default() -> Self {
        Self {
            max_period: 2,
            min_entry: 1,
            max_entry: 6,
            admissible_only: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Analyze { cf: String },
    Appendix { section: Section },
    Sweep(SweepBounds),
    Verify { cf: Option<String> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub smoothness: u32,
    pub format: Format,
    pub oracle_order: u32,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            smoothness: 1,
            format: Format::Text,
            oracle_order: DEFAULT_ORACLE_ORDER,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Snc(#[from] SncError),
}

impl From<CfError> for ReportError {
    fn from(e: CfError) -> Self {
        ReportError::Input(e.to_string())
    }
}

/// Rendered output with the process exit status it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub status: i32,
}

/// Exit status for errors.
pub const EXIT_ERROR: i32 = 2;

pub fn run(cfg: &RunConfig) -> Result<Outcome, ReportError> {
    if cfg.smoothness == 0 {
        return Err(ReportError::Config("smoothness must be at least 1".into()));
    }
    match &cfg.command {
        Command::Analyze { cf } => cmd_analyze(cfg, cf),
        Command::Appendix { section } => cmd_appendix(cfg, *section),
        Command::Sweep(bounds) => cmd_sweep(cfg, bounds),
        Command::Verify { cf } => cmd_verify(cfg, cf.as_deref()),
    }
}

fn parse_word(src: &str) -> Result<CfWord, ReportError> {
    src.parse()
        .map_err(|e: CfError| ReportError::Input(format!("`{src}`: {e}")))
}

// ---------------------------------------------------------------- analyze

/// Exit status 0 when the chain is admissible, 1 when blocked.
pub fn cmd_analyze(cfg: &RunConfig, cf: &str) -> Result<Outcome, ReportError> {
    let w = parse_word(cf)?;
    let chain = word_verdict::<BigInt>(&w, cfg.smoothness)?;
    Ok(Outcome {
        output: render_chain(&chain, cfg.format),
        status: if chain.admissible { 0 } else { 1 },
    })
}

pub fn render_chain(chain: &Chain, format: Format) -> String {
    match format {
        Format::Text => chain_text(chain),
        Format::Csv => chain_csv(chain),
        Format::Json => chain_json(chain),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join_words<'a>(rs: impl Iterator<Item = &'a Report>) -> String {
    rs.map(|r| r.word.to_string()).collect::<Vec<_>>().join(" ")
}

/// One base point as `key=value` pairs, in JSON field order.
pub fn base_point_line(r: &Report) -> String {
    format!(
        "{} c_raw={} c_reduced={} k_raw={} k_reduced={} gcd={} order={} rsc={} alpha={} beta={} linearizable={} reason={} boundary={}",
        r.word,
        r.c_raw,
        r.c_reduced,
        r.k_raw,
        r.k_reduced,
        r.common_factor,
        r.order,
        r.rsc_holds,
        r.alpha,
        r.beta,
        r.linearizable,
        r.reason,
        r.boundary
    )
}

fn chain_text(chain: &Chain) -> String {
    let mut out = String::new();
    let period = join_u64(&chain.period);
    let verdict = if chain.admissible {
        "admissible"
    } else {
        "blocked"
    };
    writeln!(
        out,
        "chain ({period}) smoothness {}: {verdict}",
        chain.smoothness
    )
    .unwrap();
    for (i, r) in chain.base_reports.iter().enumerate() {
        let marker = if i < chain.transient_len { "* " } else { "  " };
        writeln!(out, "{marker}{}", base_point_line(r)).unwrap();
    }
    if chain.transient_len > 0 {
        writeln!(out, "(* = visited before the orbit reaches the chain)").unwrap();
    }
    if !chain.admissible {
        writeln!(out, "blocked at: {}", join_words(chain.blocking())).unwrap();
    }
    for r in chain
        .base_reports
        .iter()
        .filter(|r| !r.common_factor.is_one())
    {
        writeln!(
            out,
            "common factor {} at {}: k_raw {} reduces to {}",
            r.common_factor, r.word, r.k_raw, r.k_reduced
        )
        .unwrap();
    }
    let boundary: Vec<&Report> = chain.base_reports.iter().filter(|r| r.boundary).collect();
    if !boundary.is_empty() {
        writeln!(
            out,
            "order equals alpha (counted as blocked) at: {}",
            join_words(boundary.into_iter())
        )
        .unwrap();
    }
    let zeros: Vec<&Report> = chain
        .base_reports
        .iter()
        .filter(|r| r.zero_component)
        .collect();
    if !zeros.is_empty() {
        writeln!(
            out,
            "zero entry in k (sign condition treats zero as either sign) at: {}",
            join_words(zeros.into_iter())
        )
        .unwrap();
    }
    if let Some(ok) = chain.two_periodic_admissible {
        writeln!(
            out,
            "two-periodic admissibility (entries > 1, no divisibility): {}",
            yes_no(ok)
        )
        .unwrap();
    }
    out
}

pub const CSV_COLUMNS: [&str; 22] = [
    "word",
    "c_raw_1",
    "c_raw_2",
    "c_raw_3",
    "c_reduced_1",
    "c_reduced_2",
    "c_reduced_3",
    "k_raw_1",
    "k_raw_2",
    "k_raw_3",
    "k_reduced_1",
    "k_reduced_2",
    "k_reduced_3",
    "gcd",
    "order",
    "rsc",
    "alpha",
    "beta",
    "linearizable",
    "reason",
    "boundary",
    "transient",
];

fn chain_csv(chain: &Chain) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).unwrap();
    for (i, r) in chain.base_reports.iter().enumerate() {
        let mut rec = vec![r.word.to_string()];
        for triple in [
            r.c_raw.components(),
            r.c_reduced.components(),
            r.k_raw.components(),
            r.k_reduced.components(),
        ] {
            rec.extend(triple.iter().map(BigInt::to_string));
        }
        rec.extend([
            r.common_factor.to_string(),
            r.order.to_string(),
            r.rsc_holds.to_string(),
            r.alpha.to_string(),
            r.beta.to_string(),
            r.linearizable.to_string(),
            r.reason.to_string(),
            r.boundary.to_string(),
            (i < chain.transient_len).to_string(),
        ]);
        w.write_record(&rec).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

fn chain_json(chain: &Chain) -> String {
    let mut s = serde_json::to_string_pretty(&ChainDto::from(chain)).unwrap();
    s.push('\n');
    s
}

// ---------------------------------------------------------------- JSON

/// Arbitrary-size integer written as a bare JSON number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde_json::Number::from_str(&self.0.to_string())
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        BigInt::from_str(&n.to_string())
            .map(JsonInt)
            .map_err(|_| serde::de::Error::custom(format!("expected an integer, got {n}")))
    }
}

fn json_triple(xs: &[BigInt; 3]) -> [JsonInt; 3] {
    xs.clone().map(JsonInt)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasePointDto {
    pub word: String,
    pub c_raw: [JsonInt; 3],
    pub c_reduced: [JsonInt; 3],
    pub k_raw: [JsonInt; 3],
    pub k_reduced: [JsonInt; 3],
    pub gcd: JsonInt,
    pub order: JsonInt,
    pub rsc: bool,
    pub alpha: JsonInt,
    pub beta: JsonInt,
    pub linearizable: bool,
    pub reason: String,
    pub boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDto {
    pub period: Vec<u64>,
    pub smoothness: u32,
    pub admissible: bool,
    pub base_points: Vec<BasePointDto>,
}

impl From<&Report> for BasePointDto {
    fn from(r: &Report) -> Self {
        Self {
            word: r.word.to_string(),
            c_raw: json_triple(r.c_raw.components()),
            c_reduced: json_triple(r.c_reduced.components()),
            k_raw: json_triple(r.k_raw.components()),
            k_reduced: json_triple(r.k_reduced.components()),
            gcd: JsonInt(r.common_factor.clone()),
            order: JsonInt(r.order.clone()),
            rsc: r.rsc_holds,
            alpha: JsonInt(r.alpha.clone()),
            beta: JsonInt(r.beta.clone()),
            linearizable: r.linearizable,
            reason: r.reason.to_string(),
            boundary: r.boundary,
        }
    }
}

impl From<&Chain> for ChainDto {
    fn from(c: &Chain) -> Self {
        Self {
            period: c.period.clone(),
            smoothness: c.smoothness,
            admissible: c.admissible,
            base_points: c.base_reports.iter().map(BasePointDto::from).collect(),
        }
    }
}

impl TryFrom<&BasePointDto> for Report {
    type Error = ReportError;

    fn try_from(d: &BasePointDto) -> Result<Self, ReportError> {
        let bad = |what: &str| ReportError::Input(format!("base point {}: {what}", d.word));
        let ints = |xs: &[JsonInt; 3]| xs.clone().map(|x| x.0);
        let word = parse_word(&d.word)?;
        let c_raw = CoeffVector::from_array(ints(&d.c_raw)).map_err(|_| bad("zero c_raw"))?;
        let c_reduced = c_raw.reduce();
        if c_reduced.components() != &ints(&d.c_reduced) {
            return Err(bad("c_reduced is not the reduction of c_raw"));
        }
        let [a, b, c] = ints(&d.k_raw);
        let k_raw = KVector::new(a, b, c).ok_or_else(|| bad("zero k_raw"))?;
        let [a, b, c] = ints(&d.k_reduced);
        let k_reduced = KVector::new(a, b, c).ok_or_else(|| bad("zero k_reduced"))?;
        let reason = Reason::parse(&d.reason).ok_or_else(|| bad("unknown reason"))?;
        Ok(Report {
            u_value: cf_value(&word),
            word,
            c_raw,
            c_reduced,
            zero_component: k_reduced.has_zero_component(),
            k_raw,
            k_reduced,
            common_factor: d.gcd.0.clone(),
            order: d.order.0.clone(),
            rsc_holds: d.rsc,
            alpha: d.alpha.0.clone(),
            beta: d.beta.0.clone(),
            linearizable: d.linearizable,
            reason,
            boundary: d.boundary,
        })
    }
}

impl TryFrom<&ChainDto> for Chain {
    type Error = ReportError;

    fn try_from(d: &ChainDto) -> Result<Self, ReportError> {
        let base_reports = d
            .base_points
            .iter()
            .map(Report::try_from)
            .collect::<Result<Vec<_>, _>>()?;
        let on_cycle: BTreeSet<CfWord> = base_points(&d.period)?
            .iter()
            .map(CfWord::canonicalize)
            .collect();
        let transient_len = base_reports
            .iter()
            .take_while(|r| !on_cycle.contains(&r.word.canonicalize()))
            .count();
        Ok(Chain {
            period: d.period.clone(),
            smoothness: d.smoothness,
            base_reports,
            transient_len,
            admissible: d.admissible,
            two_periodic_admissible: match d.period[..] {
                [a, b] => Some(two_periodic_admissible(a, b)),
                _ => None,
            },
        })
    }
}

pub fn parse_chain_json(s: &str) -> Result<Chain, ReportError> {
    let dto: ChainDto = serde_json::from_str(s).map_err(|e| ReportError::Input(e.to_string()))?;
    Chain::try_from(&dto)
}

// ---------------------------------------------------------------- appendix

/// One table block: a closed-form family evaluated at heads `1..=max_head`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppendixBlock {
    pub section: Section,
    pub family: ClosedForm,
    pub max_head: u64,
}

impl AppendixBlock {
    pub fn title(&self) -> String {
        format!(
            "[m;{}] m=1..{}",
            join_u64(&self.family.period()),
            self.max_head
        )
    }
}

pub fn appendix_blocks(section: Section) -> Vec<AppendixBlock> {
    let mut blocks = Vec::new();
    let mut push = |section, family: ClosedForm, max_head| {
        blocks.push(AppendixBlock {
            section,
            family,
            max_head,
        })
    };
    for a in 1..=9 {
        push(Section::A1, ClosedForm::Constant { a }, a);
    }
    for (a, b) in [(2, 3), (3, 5), (1, 2), (2, 4)] {
        push(Section::A2, ClosedForm::TwoPeriodic { a, b }, b);
        push(Section::A2, ClosedForm::TwoPeriodic { a: b, b: a }, a);
    }
    for (a, b, c) in [(1, 1, 2), (3, 3, 2), (1, 1, 1), (3, 3, 3)] {
        push(Section::A3, ClosedForm::ThreePeriodic { a, b, c }, a);
        push(
            Section::A3,
            ClosedForm::ThreePeriodic { a: b, b: c, c: a },
            b,
        );
        push(
            Section::A3,
            ClosedForm::ThreePeriodic { a: c, b: a, c: b },
            c,
        );
    }
    push(Section::A4, ClosedForm::TwoPeriodic { a: 2, b: 3 }, 5);
    push(
        Section::A4,
        ClosedForm::ThreePeriodic { a: 2, b: 1, c: 1 },
        3,
    );
    blocks.retain(|b| section.covers(b.section));
    blocks
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppendixRow {
    pub block: AppendixBlock,
    pub m: u64,
    pub report: Report,
}

/// Every table row, with `k_raw` in the family's printed layout.
pub fn appendix_rows(section: Section, smoothness: u32) -> Result<Vec<AppendixRow>, ReportError> {
    let jobs: Vec<(AppendixBlock, u64)> = appendix_blocks(section)
        .into_iter()
        .flat_map(|b| (1..=b.max_head).map(move |m| (b.clone(), m)))
        .collect();
    jobs.into_par_iter()
        .map(|(block, m)| {
            let f = block.family;
            let report =
                verdict_with_coeffs(f.word(m), f.coeffs_any_head(m), f.table_sign(), smoothness)?;
            Ok(AppendixRow { block, m, report })
        })
        .collect()
}

pub fn table_row_line(m: u64, r: &Report) -> String {
    let k = r.k_raw.components();
    format!(
        "m= {} alpha= {} beta= {} k1= {} k2= {} k3= {}",
        m, r.alpha, r.beta, k[0], k[1], k[2]
    )
}

pub fn render_appendix_text(rows: &[AppendixRow]) -> String {
    let mut out = String::new();
    let mut section = None;
    let mut block = None;
    for row in rows {
        if section != Some(row.block.section) {
            if section.is_some() {
                out.push('\n');
            }
            section = Some(row.block.section);
            writeln!(
                out,
                "== {} {}",
                row.block.section.id(),
                row.block.section.title()
            )
            .unwrap();
        }
        if block.as_ref() != Some(&row.block) {
            block = Some(row.block.clone());
            writeln!(out, "-- {}", row.block.title()).unwrap();
        }
        writeln!(out, "{}", table_row_line(row.m, &row.report)).unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct AppendixRowDto {
    section: String,
    block: String,
    m: u64,
    word: String,
    alpha: JsonInt,
    beta: JsonInt,
    k: [JsonInt; 3],
}

pub fn cmd_appendix(cfg: &RunConfig, section: Section) -> Result<Outcome, ReportError> {
    let rows = appendix_rows(section, cfg.smoothness)?;
    let output = match cfg.format {
        Format::Text => render_appendix_text(&rows),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "section", "block", "m", "word", "alpha", "beta", "k1", "k2", "k3",
            ])
            .unwrap();
            for row in &rows {
                let k = row.report.k_raw.components();
                w.write_record([
                    row.block.section.id().to_string(),
                    row.block.title(),
                    row.m.to_string(),
                    row.report.word.to_string(),
                    row.report.alpha.to_string(),
                    row.report.beta.to_string(),
                    k[0].to_string(),
                    k[1].to_string(),
                    k[2].to_string(),
                ])
                .unwrap();
            }
            String::from_utf8(w.into_inner().unwrap()).unwrap()
        }
        Format::Json => {
            let dtos: Vec<AppendixRowDto> = rows
                .iter()
                .map(|row| AppendixRowDto {
                    section: row.block.section.id().into(),
                    block: row.block.title(),
                    m: row.m,
                    word: row.report.word.to_string(),
                    alpha: JsonInt(row.report.alpha.clone()),
                    beta: JsonInt(row.report.beta.clone()),
                    k: json_triple(row.report.k_raw.components()),
                })
                .collect();
            serde_json::to_string_pretty(&dtos).unwrap() + "\n"
        }
    };
    Ok(Outcome { output, status: 0 })
}

/// A parsed `m= .. alpha= .. beta= .. k1= .. k2= .. k3= ..` line with the
/// section and block headers it appeared under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub section: String,
    pub block: String,
    pub m: i64,
    pub alpha: i64,
    pub beta: i64,
    pub k: [i64; 3],
}

/// Reads tables in the layout of [`render_appendix_text`]. Any run of
/// whitespace separates tokens.
pub fn parse_table(text: &str) -> Result<Vec<TableRow>, String> {
    let mut rows = Vec::new();
    let (mut section, mut block) = (String::new(), String::new());
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("==") {
            section = rest
                .split_whitespace()
                .next()
                .unwrap_or_default()
                .to_string();
        } else if let Some(rest) = line.strip_prefix("--") {
            block = rest.trim().to_string();
        } else if line.starts_with("m=") {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let keys = ["m=", "alpha=", "beta=", "k1=", "k2=", "k3="];
            if toks.len() != 12 || toks.iter().step_by(2).zip(keys).any(|(t, k)| *t != k) {
                return Err(format!("line {}: unexpected layout `{line}`", lineno + 1));
            }
            let v: Vec<i64> = toks
                .iter()
                .skip(1)
                .step_by(2)
                .map(|t| t.parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|e| format!("line {}: {e}", lineno + 1))?;
            rows.push(TableRow {
                section: section.clone(),
                block: block.clone(),
                m: v[0],
                alpha: v[1],
                beta: v[2],
                k: [v[3], v[4], v[5]],
            });
        }
    }
    Ok(rows)
}

// ---------------------------------------------------------------- sweep

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub period: Vec<u64>,
    pub base_points: usize,
    pub admissible: bool,
    pub blocking: Vec<String>,
    pub common_factor: Vec<String>,
    pub two_periodic_admissible: Option<bool>,
}

/// Primitive necklaces of length `1..=max_len` over `min..=max`, each given by
/// its lexicographically smallest rotation; ordered by length, then
/// lexicographically.
pub fn necklaces(max_len: usize, min: u64, max: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        let mut word = vec![min; len];
        loop {
            let is_rep = (1..len).all(|r| {
                let mut rot = word.clone();
                rot.rotate_left(r);
                rot > word
            });
            if is_rep {
                out.push(word.clone());
            }
            match word.iter().rposition(|&x| x < max) {
                Some(i) => {
                    word[i] += 1;
                    word[i + 1..].iter_mut().for_each(|x| *x = min);
                }
                None => break,
            }
        }
    }
    out
}

pub fn sweep_rows(bounds: &SweepBounds, smoothness: u32) -> Result<Vec<SweepRow>, ReportError> {
    if bounds.min_entry == 0 || bounds.min_entry > bounds.max_entry {
        return Err(ReportError::Config(format!(
            "entry range {}..={} must be non-empty and start at 1 or more",
            bounds.min_entry, bounds.max_entry
        )));
    }
    if bounds.max_period == 0 || bounds.max_period > MAX_SWEEP_PERIOD {
        return Err(ReportError::Config(format!(
            "period length must lie in 1..={MAX_SWEEP_PERIOD}"
        )));
    }
    let alphabet = bounds.max_entry - bounds.min_entry + 1;
    let words = alphabet
        .checked_pow(bounds.max_period as u32)
        .filter(|&n| n <= MAX_SWEEP_WORDS);
    if words.is_none() {
        return Err(ReportError::Config(format!(
            "sweep would enumerate more than {MAX_SWEEP_WORDS} words"
        )));
    }
    let rows = necklaces(bounds.max_period, bounds.min_entry, bounds.max_entry)
        .into_par_iter()
        .map(|p| {
            let chain = chain_verdict::<BigInt>(&p, smoothness)?;
            Ok(SweepRow {
                base_points: chain.base_reports.len(),
                admissible: chain.admissible,
                blocking: chain.blocking().map(|r| r.word.to_string()).collect(),
                common_factor: chain
                    .base_reports
                    .iter()
                    .filter(|r| !r.common_factor.is_one())
                    .map(|r| r.word.to_string())
                    .collect(),
                two_periodic_admissible: chain.two_periodic_admissible,
                period: p,
            })
        })
        .collect::<Result<Vec<_>, ReportError>>()?;
    Ok(rows
        .into_iter()
        .filter(|r| r.admissible || !bounds.admissible_only)
        .collect())
}

pub fn cmd_sweep(cfg: &RunConfig, bounds: &SweepBounds) -> Result<Outcome, ReportError> {
    let rows = sweep_rows(bounds, cfg.smoothness)?;
    let list = |xs: &[String]| {
        if xs.is_empty() {
            "-".to_string()
        } else {
            xs.join(" ")
        }
    };
    let output = match cfg.format {
        Format::Text => {
            let mut out = String::new();
            for r in &rows {
                writeln!(
                    out,
                    "({}) points={} admissible={} blocking=[{}] common_factor=[{}]",
                    join_u64(&r.period),
                    r.base_points,
                    r.admissible,
                    list(&r.blocking),
                    list(&r.common_factor)
                )
                .unwrap();
            }
            let admissible = rows.iter().filter(|r| r.admissible).count();
            writeln!(out, "{} periods, {} admissible", rows.len(), admissible).unwrap();
            out
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "period",
                "base_points",
                "admissible",
                "blocking",
                "common_factor",
            ])
            .unwrap();
            for r in &rows {
                w.write_record([
                    join_u64(&r.period),
                    r.base_points.to_string(),
                    r.admissible.to_string(),
                    r.blocking.join(" "),
                    r.common_factor.join(" "),
                ])
                .unwrap();
            }
            String::from_utf8(w.into_inner().unwrap()).unwrap()
        }
        Format::Json => serde_json::to_string_pretty(&rows).unwrap() + "\n",
    };
    Ok(Outcome { output, status: 0 })
}

// ---------------------------------------------------------------- verify

/// Outcome of the exact and brute-force checks on one row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowCheck {
    pub label: String,
    pub report: Report,
    /// `k1 lambda1 + k2 lambda2 + k3 lambda3 = 0` for raw and reduced `k`.
    pub identity: bool,
    /// Smallest-order oracle hit, sign-canonical.
    pub oracle_first: Option<KVector<BigInt>>,
    pub oracle_hits: usize,
    /// The reduced order is within the oracle bound.
    pub covered: bool,
    /// Covered rows: the oracle's first hit is the reduced `k` up to sign.
    /// Other rows: the oracle finds nothing up to the bound.
    pub minimal: bool,
    /// Every oracle hit is an integer multiple of the reduced `k`.
    pub multiples: bool,
    /// Closed form agrees with the convergent formula; `None` when the row has
    /// no closed form.
    pub recursion: Option<bool>,
}

impl RowCheck {
    pub fn passed(&self) -> bool {
        self.identity && self.minimal && self.multiples && self.recursion != Some(false)
    }
}

pub fn check_row(label: String, report: Report, closed_form: bool, oracle_order: u32) -> RowCheck {
    let eig = eigenvalues(&report.u_value).expect("reports only exist for u > 1");
    let identity = verify_identity(&report.k_raw, &eig) && verify_identity(&report.k_reduced, &eig);
    let hits = oracle_hits(&eig, oracle_order);
    let first = hits.first().cloned();
    let covered = report.order <= BigInt::from(oracle_order);
    let minimal = if covered {
        first.as_ref() == Some(&report.k_reduced.canonical_sign())
    } else {
        hits.is_empty()
    };
    let multiples = hits
        .iter()
        .all(|h| h.multiple_of(&report.k_reduced).is_some());
    let recursion = closed_form.then(|| {
        quad_coeffs::<BigInt>(&report.word)
            .raw
            .is_proportional(&report.c_raw)
    });
    RowCheck {
        label,
        report,
        identity,
        oracle_first: first,
        oracle_hits: hits.len(),
        covered,
        minimal,
        multiples,
        recursion,
    }
}

/// Rows checked by `verify`: the appendix tables, or the orbit of one word.
pub fn verify_rows(
    cf: Option<&str>,
    smoothness: u32,
) -> Result<Vec<(String, Report, bool)>, ReportError> {
    match cf {
        None => Ok(appendix_rows(Section::All, smoothness)?
            .into_iter()
            .map(|row| {
                let label = format!(
                    "{} {} m={}",
                    row.block.section.id(),
                    row.block.title(),
                    row.m
                );
                (label, row.report, true)
            })
            .collect()),
        Some(src) => {
            let chain = word_verdict::<BigInt>(&parse_word(src)?, smoothness)?;
            Ok(chain
                .base_reports
                .into_iter()
                .map(|r| {
                    let closed = r.word.pre_period_len() == 1
                        && ClosedForm::for_period(r.word.period()).is_some();
                    debug_assert_eq!(table_coeffs::<BigInt>(&r.word).1, r.c_raw);
                    (format!("cf {}", r.word), r, closed)
                })
                .collect())
        }
    }
}

pub fn cmd_verify(cfg: &RunConfig, cf: Option<&str>) -> Result<Outcome, ReportError> {
    let rows = verify_rows(cf, cfg.smoothness)?;
    let bound = BigInt::from(cfg.oracle_order);
    // Rows above the bound are still checked (no smaller hit may exist), but
    // a bound below every row confirms no resonance at all.
    if let Some((label, r, _)) = rows.iter().min_by(|a, b| a.1.order.cmp(&b.1.order)) {
        if r.order > bound {
            return Err(ReportError::Config(format!(
                "oracle order {} is below the resonance order {} at {label}",
                cfg.oracle_order, r.order
            )));
        }
    }
    let checks: Vec<RowCheck> = rows
        .into_par_iter()
        .map(|(label, r, closed)| check_row(label, r, closed, cfg.oracle_order))
        .collect();
    let mut out = String::new();
    for c in &checks {
        let status = if c.passed() { "PASS" } else { "FAIL" };
        let recursion = match c.recursion {
            Some(b) => b.to_string(),
            None => "n/a".into(),
        };
        writeln!(
            out,
            "{status} {} k={} order={}{} identity={} oracle_min={} multiples={} hits={} recursion={}",
            c.label,
            c.report.k_reduced,
            c.report.order,
            if c.covered { "" } else { " (above bound)" },
            c.identity,
            c.minimal,
            c.multiples,
            c.oracle_hits,
            recursion
        )
        .unwrap();
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    writeln!(
        out,
        "{} rows checked, {} failed, oracle order {}",
        checks.len(),
        failed,
        cfg.oracle_order
    )
    .unwrap();
    if let Some(c) = checks.iter().find(|c| !c.passed()) {
        let first = c
            .oracle_first
            .as_ref()
            .map_or("none".to_string(), |k| k.to_string());
        writeln!(out, "first failure: {}", c.label).unwrap();
        writeln!(out, "  {}", base_point_line(&c.report)).unwrap();
        writeln!(out, "  u = {}", c.report.u_value).unwrap();
        writeln!(out, "  oracle first hit = {first}").unwrap();
    }
    Ok(Outcome {
        output: out,
        status: if failed == 0 { 0 } else { 1 },
    })
}

fn join_u64(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}
