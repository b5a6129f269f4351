//! Exhaustive verification over a box of integer polynomials.
//!
//! Candidates are every primitive, squarefree, irreducible polynomial with
//! positive leading coefficient, degree in `[1, max_degree]` and coefficients
//! in `[-coeff_bound, coeff_bound]` that does not vanish at `0` or `±1`. Each
//! candidate is checked against the height bound and the product identities,
//! and the smallest height per `(d, r)` is collected into an [`ExtremalTable`].
//!
//! Work is split into blocks keyed by degree and the two highest coefficients.
//! Blocks are processed in parallel and their summaries are merged in block
//! order with associative min / concat operations, so the result does not
//! depend on the number of workers.

// Tolerance checks are written `!(x <= tol)` so that NaN counts as a failure.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::fmt::sig17;
use crate::heights::{self, HeightProfile, ProductSides};
use crate::polyint::IntPoly;
use crate::roots::{self, RootSet};
use crate::{Error, Result};

pub const MAX_SUPPORTED_DEGREE: usize = 8;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const INTEGER_CASE_EXPONENTS: [f64; 4] = [0.1, 0.2, 0.3, 0.4];
pub const INTEGER_CASE_TOLERANCE: f64 = 1e-8;
pub const ARCHIMEDEAN_TOLERANCE: f64 = 1e-8;
pub const REVERSAL_TOLERANCE: f64 = 1e-9;
pub const FINAL_SLACK_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct ScanConfig {
    pub max_degree: usize,
    pub coeff_bound: i64,
    pub monic_only: bool,
    /// Allowed negative margin `H - B(R)`.
    pub tolerance: f64,
    pub workers: usize,
}

impl ScanConfig {
    pub fn new(max_degree: usize, coeff_bound: i64) -> Self {
        ScanConfig {
            max_degree,
            coeff_bound,
            monic_only: false,
            tolerance: DEFAULT_TOLERANCE,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_degree < 1 || self.max_degree > MAX_SUPPORTED_DEGREE {
            return Err(Error::Config(format!(
                "max degree {} outside [1, {MAX_SUPPORTED_DEGREE}]",
                self.max_degree
            )));
        }
        if self.coeff_bound < 1 {
            return Err(Error::Config(format!(
                "coefficient bound {} must be at least 1",
                self.coeff_bound
            )));
        }
        if self.workers < 1 {
            return Err(Error::Config("at least one worker is required".into()));
        }
        if !(self.tolerance >= 0.0) {
            return Err(Error::Config("tolerance must be nonnegative".into()));
        }
        Ok(())
    }
}

/// Integer-case identity over [`INTEGER_CASE_EXPONENTS`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegerCaseCheck {
    pub max_relative_error: f64,
    pub min_exact: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityChecks {
    /// Monic candidates only.
    pub integer_case: Option<IntegerCaseCheck>,
    pub archimedean: ProductSides,
    /// `(H(α), H(α⁻¹))`.
    pub reversal: (f64, f64),
    /// Eligible candidates only.
    pub final_slack: Option<f64>,
}

impl IdentityChecks {
    pub fn reversal_relative_error(&self) -> f64 {
        (self.reversal.0 - self.reversal.1).abs() / self.reversal.0
    }

    /// Names of the identities that miss their tolerance.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if let Some(ic) = self.integer_case {
            if !(ic.max_relative_error <= INTEGER_CASE_TOLERANCE) || !(ic.min_exact >= 1.0) {
                out.push("integer-case product");
            }
        }
        if !(self.archimedean.relative_error() <= ARCHIMEDEAN_TOLERANCE) {
            out.push("archimedean norm product");
        }
        if !(self.reversal_relative_error() <= REVERSAL_TOLERANCE) {
            out.push("reversal symmetry");
        }
        if let Some(s) = self.final_slack {
            if !(s >= -FINAL_SLACK_TOLERANCE) {
                out.push("final inequality");
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRecord {
    pub profile: HeightProfile,
    /// `r > 0` and `α ∉ {0, ±1}`.
    pub eligible: bool,
    pub identities: IdentityChecks,
    /// Eligible with `H < B(R) - tolerance`.
    pub violation: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanException {
    pub poly: IntPoly,
    pub error: Error,
}

/// One contiguous slice of the coefficient box.
#[derive(Clone, Copy, Debug)]
struct Block {
    degree: usize,
    lead: i64,
    /// Coefficient of `x^(degree-1)`.
    next: i64,
}

fn blocks(config: &ScanConfig) -> Vec<Block> {
    let c = config.coeff_bound;
    let leads: Vec<i64> = if config.monic_only { vec![1] } else { (1..=c).collect() };
    let mut out = Vec::new();
    for degree in 1..=config.max_degree {
        for &lead in &leads {
            for next in -c..=c {
                out.push(Block { degree, lead, next });
            }
        }
    }
    out
}

/// Every coefficient vector of a block, lower coefficients varying fastest.
fn block_polys(block: Block, bound: i64) -> impl Iterator<Item = IntPoly> {
    let free = block.degree - 1;
    let span = (2 * bound + 1) as u64;
    let total = span.pow(free as u32);
    (0..total).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(block.degree + 1);
        for _ in 0..free {
            coeffs.push(BigInt::from((idx % span) as i64 - bound));
            idx /= span;
        }
        coeffs.push(BigInt::from(block.next));
        coeffs.push(BigInt::from(block.lead));
        IntPoly::new(coeffs).expect("leading coefficient is nonzero")
    })
}

/// Filters one raw polynomial down to a candidate, returning its roots.
fn screen(p: IntPoly) -> std::result::Result<Option<(IntPoly, RootSet)>, ScanException> {
    if !p.content().is_one() || !p.avoids_zero_and_units() || !p.is_squarefree() {
        return Ok(None);
    }
    match roots::find_roots(&p) {
        Ok(rs) => {
            if p.is_irreducible_with(&rs.roots) {
                Ok(Some((p, rs)))
            } else {
                Ok(None)
            }
        }
        Err(error) => Err(ScanException { poly: p, error }),
    }
}

/// All candidates of the box, in deterministic block order.
pub fn enumerate_candidates(
    config: &ScanConfig,
) -> impl Iterator<Item = std::result::Result<IntPoly, ScanException>> + '_ {
    blocks(config).into_iter().flat_map(move |b| {
        block_polys(b, config.coeff_bound)
            .filter_map(|p| screen(p).map(|o| o.map(|(p, _)| p)).transpose())
    })
}

/// Full verification record for one candidate.
pub fn verify_polynomial(p: &IntPoly, config: &ScanConfig) -> Result<ScanRecord> {
    let p = p.normalize();
    let rs = roots::find_roots(&p)?;
    record_from_roots(&p, &rs, config)
}

fn record_from_roots(p: &IntPoly, rs: &RootSet, config: &ScanConfig) -> Result<ScanRecord> {
    let profile = heights::profile_from_roots(p, rs);
    let eligible = profile.eligible();

    let integer_case = if p.is_monic() && p.avoids_zero_and_units() {
        let mut check = IntegerCaseCheck {
            max_relative_error: 0.0,
            min_exact: f64::INFINITY,
        };
        for a in INTEGER_CASE_EXPONENTS {
            let sides = heights::integer_case_product_with_roots(p, rs, a)?;
            check.max_relative_error = check.max_relative_error.max(sides.relative_error());
            check.min_exact = check.min_exact.min(sides.exact);
        }
        Some(check)
    } else {
        None
    };
    let archimedean = heights::archimedean_norm_product_with_roots(p, rs)?;
    let rev = p.reverse()?;
    let height_inv = heights::absolute_height(&rev)?;
    let final_slack = if eligible {
        Some(heights::final_inequality_slack(
            profile.ratio_f64(),
            profile.height,
            height_inv,
        )?)
    } else {
        None
    };
    let violation = eligible && profile.margin.is_some_and(|m| !(m >= -config.tolerance));
    Ok(ScanRecord {
        identities: IdentityChecks {
            integer_case,
            archimedean,
            reversal: (profile.height, height_inv),
            final_slack,
        },
        profile,
        eligible,
        violation,
    })
}

/// Worst values of each identity over a scan.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IdentityStats {
    pub monic_checked: usize,
    #[serde(serialize_with = "crate::fmt::serialize_f64")]
    pub max_integer_case_error: f64,
    #[serde(serialize_with = "crate::fmt::serialize_f64")]
    pub min_integer_case_exact: f64,
    #[serde(serialize_with = "crate::fmt::serialize_f64")]
    pub max_archimedean_error: f64,
    #[serde(serialize_with = "crate::fmt::serialize_f64")]
    pub max_reversal_error: f64,
    #[serde(serialize_with = "crate::fmt::serialize_f64")]
    pub min_final_slack: f64,
    #[serde(serialize_with = "crate::fmt::serialize_f64")]
    pub min_margin: f64,
}

impl Default for IdentityStats {
    fn default() -> Self {
        IdentityStats {
            monic_checked: 0,
            max_integer_case_error: 0.0,
            min_integer_case_exact: f64::INFINITY,
            max_archimedean_error: 0.0,
            max_reversal_error: 0.0,
            min_final_slack: f64::INFINITY,
            min_margin: f64::INFINITY,
        }
    }
}

impl IdentityStats {
    fn absorb(&mut self, rec: &ScanRecord) {
        let ids = &rec.identities;
        if let Some(ic) = ids.integer_case {
            self.monic_checked += 1;
            self.max_integer_case_error = self.max_integer_case_error.max(ic.max_relative_error);
            self.min_integer_case_exact = self.min_integer_case_exact.min(ic.min_exact);
        }
        self.max_archimedean_error = self.max_archimedean_error.max(ids.archimedean.relative_error());
        self.max_reversal_error = self.max_reversal_error.max(ids.reversal_relative_error());
        if let Some(s) = ids.final_slack {
            self.min_final_slack = self.min_final_slack.min(s);
        }
        if let Some(m) = rec.profile.margin {
            self.min_margin = self.min_margin.min(m);
        }
    }

    fn merge(&mut self, o: &IdentityStats) {
        self.monic_checked += o.monic_checked;
        self.max_integer_case_error = self.max_integer_case_error.max(o.max_integer_case_error);
        self.min_integer_case_exact = self.min_integer_case_exact.min(o.min_integer_case_exact);
        self.max_archimedean_error = self.max_archimedean_error.max(o.max_archimedean_error);
        self.max_reversal_error = self.max_reversal_error.max(o.max_reversal_error);
        self.min_final_slack = self.min_final_slack.min(o.min_final_slack);
        self.min_margin = self.min_margin.min(o.min_margin);
    }
}

/// Smallest height found for one `(d, r)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtremalRow {
    pub d: usize,
    pub r: usize,
    pub ratio: Ratio<usize>,
    pub poly: IntPoly,
    pub mahler: f64,
    pub height: f64,
    pub bound: f64,
    /// `height - bound`.
    pub margin: f64,
}

impl ExtremalRow {
    fn from_profile(p: &HeightProfile) -> Option<Self> {
        Some(ExtremalRow {
            d: p.d,
            r: p.r,
            ratio: p.ratio,
            poly: p.poly.clone(),
            mahler: p.mahler,
            height: p.height,
            bound: p.bound?,
            margin: p.margin?,
        })
    }

    fn beats(&self, other: &ExtremalRow) -> bool {
        self.height
            .total_cmp(&other.height)
            .then_with(|| self.poly.cmp(&other.poly))
            .is_lt()
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExtremalTable {
    rows: BTreeMap<(usize, usize), ExtremalRow>,
}

pub const CSV_HEADER: &str = "d,r,R,coeffs,mahler,height,bound,margin";

#[derive(Serialize, Deserialize)]
struct RowJson {
    d: usize,
    r: usize,
    #[serde(rename = "R")]
    ratio: String,
    coeffs: Vec<serde_json::Number>,
    mahler: serde_json::Number,
    height: serde_json::Number,
    bound: serde_json::Number,
    margin: serde_json::Number,
}

fn num17(x: f64) -> serde_json::Number {
    serde_json::Number::from_str(&sig17(x)).expect("finite float")
}

fn num_f64(n: &serde_json::Number) -> Result<f64> {
    n.as_f64().ok_or_else(|| Error::Table(format!("`{n}` is not a float")))
}

impl ExtremalTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rows(&self) -> impl Iterator<Item = &ExtremalRow> {
        self.rows.values()
    }

    pub fn get(&self, d: usize, r: usize) -> Option<&ExtremalRow> {
        self.rows.get(&(d, r))
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn offer(&mut self, row: ExtremalRow) {
        use std::collections::btree_map::Entry;
        match self.rows.entry((row.d, row.r)) {
            Entry::Vacant(e) => {
                e.insert(row);
            }
            Entry::Occupied(mut e) => {
                if row.beats(e.get()) {
                    e.insert(row);
                }
            }
        }
    }

    pub fn merge(&mut self, other: ExtremalTable) {
        for row in other.rows.into_values() {
            self.offer(row);
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in self.rows() {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                row.d,
                row.r,
                row.ratio,
                row.poly.to_spaced(),
                sig17(row.mahler),
                sig17(row.height),
                sig17(row.bound),
                sig17(row.margin)
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<RowJson> = self
            .rows()
            .map(|row| RowJson {
                d: row.d,
                r: row.r,
                ratio: row.ratio.to_string(),
                coeffs: row
                    .poly
                    .coeffs()
                    .iter()
                    .map(|c| serde_json::Number::from_str(&c.to_string()).expect("integer"))
                    .collect(),
                mahler: num17(row.mahler),
                height: num17(row.height),
                bound: num17(row.bound),
                margin: num17(row.margin),
            })
            .collect();
        serde_json::to_string_pretty(&rows).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rows: Vec<RowJson> =
            serde_json::from_str(text).map_err(|e| Error::Table(e.to_string()))?;
        let mut table = ExtremalTable::new();
        for row in rows {
            let coeffs = row
                .coeffs
                .iter()
                .map(|n| BigInt::from_str(&n.to_string()).map_err(|e| Error::Table(e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            let ratio = Ratio::<usize>::from_str(&row.ratio)
                .map_err(|_| Error::Table(format!("bad ratio `{}`", row.ratio)))?;
            if row.d == 0 || ratio != Ratio::new(row.r, row.d) {
                return Err(Error::Table(format!(
                    "ratio {} does not match r/d = {}/{}",
                    row.ratio, row.r, row.d
                )));
            }
            let key = (row.d, row.r);
            let parsed = ExtremalRow {
                d: row.d,
                r: row.r,
                ratio,
                poly: IntPoly::new(coeffs)?,
                mahler: num_f64(&row.mahler)?,
                height: num_f64(&row.height)?,
                bound: num_f64(&row.bound)?,
                margin: num_f64(&row.margin)?,
            };
            if table.rows.insert(key, parsed).is_some() {
                return Err(Error::Table(format!("duplicate row for (d, r) = {key:?}")));
            }
        }
        Ok(table)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(Error::Config(format!("unknown table format `{other}`"))),
        }
    }
}

impl TableFormat {
    pub fn render(self, table: &ExtremalTable) -> String {
        match self {
            TableFormat::Csv => table.to_csv(),
            TableFormat::Json => table.to_json(),
        }
    }
}

pub fn export_table(table: &ExtremalTable, format: TableFormat, dest: &Path) -> Result<()> {
    std::fs::write(dest, format.render(table))?;
    Ok(())
}

/// Aggregate of a scan (or of one block of it).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ScanOutcome {
    pub table: ExtremalTable,
    /// Candidates that passed the irreducibility screen.
    pub candidates: usize,
    pub eligible: usize,
    pub violations: Vec<ScanRecord>,
    pub exceptions: Vec<ScanException>,
    pub identity_failures: Vec<(IntPoly, Vec<&'static str>)>,
    pub stats: IdentityStats,
}

impl ScanOutcome {
    /// Zero violations, zero exceptions and every identity within tolerance.
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.exceptions.is_empty() && self.identity_failures.is_empty()
    }

    fn absorb(&mut self, rec: ScanRecord) {
        self.candidates += 1;
        self.stats.absorb(&rec);
        let failures = rec.identities.failures();
        if !failures.is_empty() {
            self.identity_failures.push((rec.profile.poly.clone(), failures));
        }
        if rec.eligible {
            self.eligible += 1;
            if let Some(row) = ExtremalRow::from_profile(&rec.profile) {
                self.table.offer(row);
            }
        }
        if rec.violation {
            self.violations.push(rec);
        }
    }

    fn merge(&mut self, other: ScanOutcome) {
        self.table.merge(other.table);
        self.candidates += other.candidates;
        self.eligible += other.eligible;
        self.violations.extend(other.violations);
        self.exceptions.extend(other.exceptions);
        self.identity_failures.extend(other.identity_failures);
        self.stats.merge(&other.stats);
    }
}

fn scan_block(block: Block, config: &ScanConfig) -> ScanOutcome {
    let mut out = ScanOutcome::default();
    for raw in block_polys(block, config.coeff_bound) {
        match screen(raw) {
            Ok(None) => {}
            Ok(Some((p, rs))) => match record_from_roots(&p, &rs, config) {
                Ok(rec) => out.absorb(rec),
                Err(error) => out.exceptions.push(ScanException { poly: p, error }),
            },
            Err(exc) => out.exceptions.push(exc),
        }
    }
    out
}

/// Runs the whole box on `config.workers` threads.
pub fn run_scan(config: &ScanConfig) -> Result<ScanOutcome> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let parts: Vec<ScanOutcome> = pool.install(|| {
        blocks(config)
            .into_par_iter()
            .map(|b| scan_block(b, config))
            .collect()
    });
    let mut total = ScanOutcome::default();
    for part in parts {
        total.merge(part);
    }
    Ok(total)
}
