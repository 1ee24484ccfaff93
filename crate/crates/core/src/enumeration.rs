//! Complete searches over feasible parameters and bulk catalog output.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::arith::{divisors_up_to, format_rational, isqrt, Int, Rational};
use crate::error::{Error, Result};
use crate::families::{find_rule, FamilyRule};
use crate::feasibility::{check, is_feasible, Condition};
use crate::params::{derive_spectrum, ParamPair};

fn is_infinite_c(c: &Int) -> bool {
    *c == Int::from(2) || *c == Int::from(4) || *c == Int::from(6)
}

/// Smallest `q` with `q(q+1) ≥ c`.
pub fn q_min_for_c(c: &Int) -> Result<Int> {
    if !c.is_positive() {
        return Err(Error::domain(format!("c must be positive, got {c}")));
    }
    let mut q = (isqrt(&(4 * c + 1))? - 1) / 2;
    while &q * (&q + 1) < *c {
        q += 1;
    }
    Ok(std::cmp::max(q, Int::one()))
}

/// All `q` with `(q, c)` feasible, ascending.
///
/// For `c ∉ {2, 4, 6}` the search is complete without a limit: an integral β
/// forces `c + 2q` to divide `c(c−2)(c−4)(c−6)`, so only those divisors (of
/// the same parity as `c`) are candidates. For `c ∈ {2, 4, 6}` a limit is
/// mandatory; the optional limit otherwise just truncates the answer.
pub fn feasible_q_for_c(c: &Int, limit: Option<&Int>) -> Result<Vec<Int>> {
    let q_min = q_min_for_c(c)?;
    if is_infinite_c(c) {
        let limit = limit.ok_or_else(|| Error::MissingLimit(c.clone()))?;
        let mut out = Vec::new();
        let mut q = q_min;
        while q <= *limit {
            if is_feasible(&ParamPair::new(q.clone(), c.clone())?) {
                out.push(q.clone());
            }
            q += 1;
        }
        return Ok(out);
    }

    let signed: Int = c * (c - 2) * (c - 4) * (c - 6);
    let quartic = signed.abs();
    let mut out = Vec::new();
    for s in divisors_up_to(&quartic, &quartic)? {
        if s <= *c || (&s - c).is_odd() {
            continue;
        }
        let q: Int = (&s - c) / 2;
        if q < q_min || limit.is_some_and(|l| q > *l) {
            continue;
        }
        if is_feasible(&ParamPair::new(q.clone(), c.clone())?) {
            out.push(q);
        }
    }
    Ok(out)
}

/// All `c` with `(q, c)` feasible, ascending: the divisors of `q⁴ − q²` up to
/// `q(q+1)` that pass the oracle. At `q = 1` every `c` divides zero, so the
/// whole range `{1, 2}` is tried.
pub fn feasible_c_for_q(q: &Int) -> Result<Vec<Int>> {
    if !q.is_positive() {
        return Err(Error::domain(format!("q must be positive, got {q}")));
    }
    let c_max = q * (q + 1);
    let candidates = if q.is_one() {
        vec![Int::from(1), Int::from(2)]
    } else {
        let q2 = q * q;
        divisors_up_to(&(&q2 * &q2 - &q2), &c_max)?
    };
    let mut out = Vec::new();
    for c in candidates {
        if is_feasible(&ParamPair::new(q.clone(), c.clone())?) {
            out.push(c);
        }
    }
    Ok(out)
}

/// One row of a catalog: the derived spectrum and the oracle's verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogRecord {
    pub q: Int,
    pub c: Int,
    pub k: Int,
    pub s: Int,
    pub lambda1: Int,
    pub lambda2: Int,
    pub m1: Rational,
    pub m2: Rational,
    pub n: Rational,
    pub feasible: bool,
    pub first_failed_condition: Option<Condition>,
}

impl CatalogRecord {
    pub fn from_pair(p: &ParamPair) -> Self {
        let sp = derive_spectrum(p);
        let verdict = check(p);
        CatalogRecord {
            q: p.q().clone(),
            c: p.c().clone(),
            k: sp.k,
            s: sp.s,
            lambda1: sp.lambda1,
            lambda2: sp.lambda2,
            m1: sp.m1,
            m2: sp.m2,
            n: sp.n,
            feasible: verdict.feasible,
            first_failed_condition: verdict.first_failed(),
        }
    }

    pub const COLUMNS: [&'static str; 11] = [
        "q",
        "c",
        "k",
        "s",
        "lambda1",
        "lambda2",
        "m1",
        "m2",
        "n",
        "feasible",
        "first_failed_condition",
    ];

    fn csv_row(&self) -> [String; 11] {
        [
            self.q.to_string(),
            self.c.to_string(),
            self.k.to_string(),
            self.s.to_string(),
            self.lambda1.to_string(),
            self.lambda2.to_string(),
            format_rational(&self.m1),
            format_rational(&self.m2),
            format_rational(&self.n),
            self.feasible.to_string(),
            self.first_failed_condition
                .map(|c| c.name().to_string())
                .unwrap_or_default(),
        ]
    }

    fn text_line(&self) -> String {
        let verdict = match self.first_failed_condition {
            None => "feasible".to_string(),
            Some(cond) => format!("infeasible({cond})"),
        };
        format!(
            "q={} c={} k={} s={} lambda1={} lambda2={} m1={} m2={} n={} {}",
            self.q,
            self.c,
            self.k,
            self.s,
            self.lambda1,
            self.lambda2,
            format_rational(&self.m1),
            format_rational(&self.m2),
            format_rational(&self.n),
            verdict
        )
    }
}

/// A JSON number carrying every digit of a big integer.
pub(crate) struct JsonInt<'a>(pub &'a Int);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let number = serde_json::Number::from_str(&self.0.to_string())
            .map_err(serde::ser::Error::custom)?;
        number.serialize(serializer)
    }
}

/// An integral rational as a JSON number, otherwise the string `"p/q"`.
pub(crate) struct JsonRational<'a>(pub &'a Rational);

impl Serialize for JsonRational<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            JsonInt(&self.0.to_integer()).serialize(serializer)
        } else {
            serializer.serialize_str(&format_rational(self.0))
        }
    }
}

impl Serialize for CatalogRecord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CatalogRecord", 11)?;
        st.serialize_field("q", &JsonInt(&self.q))?;
        st.serialize_field("c", &JsonInt(&self.c))?;
        st.serialize_field("k", &JsonInt(&self.k))?;
        st.serialize_field("s", &JsonInt(&self.s))?;
        st.serialize_field("lambda1", &JsonInt(&self.lambda1))?;
        st.serialize_field("lambda2", &JsonInt(&self.lambda2))?;
        st.serialize_field("m1", &JsonRational(&self.m1))?;
        st.serialize_field("m2", &JsonRational(&self.m2))?;
        st.serialize_field("n", &JsonRational(&self.n))?;
        st.serialize_field("feasible", &self.feasible)?;
        st.serialize_field("first_failed_condition", &self.first_failed_condition)?;
        st.end()
    }
}

/// Inclusive integer range written `A..B` (or a single `A`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntRange {
    pub lo: Int,
    pub hi: Int,
}

impl IntRange {
    pub fn new(lo: impl Into<Int>, hi: impl Into<Int>) -> Result<Self> {
        let (lo, hi) = (lo.into(), hi.into());
        if lo > hi {
            return Err(Error::InvalidRange(format!("{lo}..{hi}")));
        }
        Ok(IntRange { lo, hi })
    }

    fn values(&self) -> impl Iterator<Item = Int> + '_ {
        let mut next = self.lo.clone();
        std::iter::from_fn(move || {
            (next <= self.hi).then(|| {
                let v = next.clone();
                next += 1;
                v
            })
        })
    }
}

impl FromStr for IntRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRange(s.to_string());
        let parse = |t: &str| Int::from_str(t.trim()).map_err(|_| bad());
        match s.split_once("..") {
            Some((lo, hi)) => {
                let hi = hi.strip_prefix('=').unwrap_or(hi);
                IntRange::new(parse(lo)?, parse(hi)?).map_err(|_| bad())
            }
            None => {
                let v = parse(s)?;
                IntRange::new(v.clone(), v)
            }
        }
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

/// Which `c` values accompany each `q` in a catalog.
#[derive(Clone, Debug)]
pub enum CSelector {
    Range(IntRange),
    Family(FamilyRule),
}

impl CSelector {
    pub fn family(name: &str) -> Result<Self> {
        Ok(CSelector::Family(find_rule(name)?))
    }

    fn values_for(&self, q: &Int) -> Vec<Int> {
        match self {
            CSelector::Range(r) => r.values().collect(),
            CSelector::Family(rule) => rule.generate(q, None),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Jsonl,
    Csv,
}

#[derive(Clone, Debug)]
pub struct CatalogRequest {
    pub q_range: IntRange,
    pub c_selector: CSelector,
    pub feasible_only: bool,
    pub format: Format,
    /// Worker threads; 0 means rayon's default.
    pub jobs: usize,
}

/// Number of `q` values handed to the workers at once.
const SHARD_Q: usize = 64;

fn records_for_q(req: &CatalogRequest, q: &Int) -> Result<Vec<CatalogRecord>> {
    let mut out = Vec::new();
    for c in req.c_selector.values_for(q) {
        if !c.is_positive() {
            continue;
        }
        let p = ParamPair::new(q.clone(), c)?;
        if req.feasible_only && !is_feasible(&p) {
            continue;
        }
        out.push(CatalogRecord::from_pair(&p));
    }
    Ok(out)
}

/// Streams every record of the request to `sink` in ascending `(q, c)` order
/// and returns how many were written.
///
/// The `q` range is cut into shards that the workers evaluate concurrently;
/// shards are written back in order, so the bytes written do not depend on
/// the number of workers.
pub fn emit_catalog<W: Write>(req: &CatalogRequest, sink: W) -> Result<u64> {
    if !req.q_range.lo.is_positive() {
        return Err(Error::InvalidRange(format!(
            "q range must start at 1 or above: {}",
            req.q_range
        )));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(req.jobs)
        .build()
        .map_err(|e| Error::domain(format!("cannot start worker pool: {e}")))?;

    let mut writer = RecordWriter::new(req.format, sink);
    writer.begin()?;
    let mut count = 0u64;
    let mut qs = req.q_range.values().peekable();
    while qs.peek().is_some() {
        let shard: Vec<Int> = qs.by_ref().take(SHARD_Q).collect();
        let batches: Vec<Result<Vec<CatalogRecord>>> =
            pool.install(|| shard.par_iter().map(|q| records_for_q(req, q)).collect());
        for batch in batches {
            let mut batch = batch?;
            batch.sort_by(|a, b| a.c.cmp(&b.c));
            for record in &batch {
                writer.write(record)?;
                count += 1;
            }
        }
    }
    writer.finish()?;
    Ok(count)
}

enum RecordWriter<W: Write> {
    Text(W),
    Jsonl(W),
    Csv(csv::Writer<W>),
}

impl<W: Write> RecordWriter<W> {
    fn new(format: Format, sink: W) -> Self {
        match format {
            Format::Text => RecordWriter::Text(sink),
            Format::Jsonl => RecordWriter::Jsonl(sink),
            Format::Csv => RecordWriter::Csv(csv::Writer::from_writer(sink)),
        }
    }

    fn begin(&mut self) -> Result<()> {
        if let RecordWriter::Csv(w) = self {
            w.write_record(CatalogRecord::COLUMNS)?;
        }
        Ok(())
    }

    fn write(&mut self, record: &CatalogRecord) -> Result<()> {
        match self {
            RecordWriter::Text(w) => writeln!(w, "{}", record.text_line())?,
            RecordWriter::Jsonl(w) => {
                serde_json::to_writer(&mut *w, record)?;
                w.write_all(b"\n")?;
            }
            RecordWriter::Csv(w) => w.write_record(record.csv_row())?,
        }
        Ok(())
    }

    fn finish(&mut self) -> Result<()> {
        match self {
            RecordWriter::Text(w) | RecordWriter::Jsonl(w) => w.flush()?,
            RecordWriter::Csv(w) => w.flush()?,
        }
        Ok(())
    }
}
