//! JSON and CSV forms of scan reports and example tables.
//!
//! CSV layout, one block per report:
//!
//! ```text
//! # kind=theorem1
//! # b_lo=2
//! # b_hi=9
//! # b_max=9
//! # include_9div=true
//! # cap=100
//! # identities=
//! # tuples_checked=45
//! # violation_count=4
//! b,a1,a2,condition,diff_num,diff_den,in8Z,in24Z
//! 9,1,4,true,8,1,true,false
//! 9,1,7,true,8,1,true,false
//! 9,2,8,true,8,1,true,false
//! 9,5,8,true,8,1,true,false
//! # elapsed_micros=57
//! ```
//!
//! The columns depend on the kind; see [`Theorem1Row`], [`Theorem2Row`] and
//! [`IdentityRow`]. Blocks are separated by a blank line. The trailing
//! `elapsed_micros` line is the only non-deterministic content.

use std::collections::HashMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::congruence::{family_example, FamilyExample};
use crate::error::{Error, Result};
use crate::scan::{
    Identity, IdentityRow, ScanKind, ScanParameters, ScanReport, Theorem1Row, Theorem2Row,
    Violation,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportSet {
    pub reports: Vec<ScanReport>,
}

impl ReportSet {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(ScanReport::passed)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn parse(text: &str, format: Format) -> Result<Self> {
        match format {
            Format::Json => Self::from_json(text),
            Format::Csv => Self::from_csv(text),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(report_err)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(report_err)
    }

    pub fn to_csv(&self) -> Result<String> {
        let blocks: Result<Vec<String>> = self.reports.iter().map(report_to_csv).collect();
        Ok(blocks?.join("\n"))
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut blocks: Vec<Vec<&str>> = Vec::new();
        for line in text.lines() {
            if line.starts_with("# kind=") {
                blocks.push(Vec::new());
            }
            if line.trim().is_empty() {
                continue;
            }
            blocks
                .last_mut()
                .ok_or_else(|| Error::Report("CSV report must start with '# kind='".into()))?
                .push(line);
        }
        let reports = blocks
            .into_iter()
            .map(report_from_csv)
            .collect::<Result<_>>()?;
        Ok(ReportSet { reports })
    }
}

fn report_err(e: impl std::fmt::Display) -> Error {
    Error::Report(e.to_string())
}

fn columns(kind: ScanKind) -> &'static [&'static str] {
    match kind {
        ScanKind::Theorem1 => Theorem1Row::COLUMNS,
        ScanKind::Theorem2 => Theorem2Row::COLUMNS,
        ScanKind::Identities => IdentityRow::COLUMNS,
    }
}

fn report_to_csv(r: &ScanReport) -> Result<String> {
    let identities: Vec<&str> = r.parameters.identities.iter().map(|i| i.as_str()).collect();
    let mut out = String::new();
    for (k, v) in [
        ("kind", r.kind.as_str().to_string()),
        ("b_lo", r.b_range[0].to_string()),
        ("b_hi", r.b_range[1].to_string()),
        ("b_max", r.parameters.b_max.to_string()),
        ("include_9div", r.parameters.include_9div.to_string()),
        ("cap", r.parameters.cap.to_string()),
        ("identities", identities.join(";")),
        ("tuples_checked", r.tuples_checked.to_string()),
        ("violation_count", r.violation_count.to_string()),
    ] {
        out.push_str(&format!("# {k}={v}\n"));
    }
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    w.write_record(columns(r.kind)).map_err(report_err)?;
    for v in &r.violations {
        match v {
            Violation::Theorem1(row) => w.serialize(row),
            Violation::Theorem2(row) => w.serialize(row),
            Violation::Identity(row) => w.serialize(row),
        }
        .map_err(report_err)?;
    }
    let body = w.into_inner().map_err(report_err)?;
    out.push_str(&String::from_utf8(body).map_err(report_err)?);
    out.push_str(&format!("# elapsed_micros={}\n", r.elapsed_micros));
    Ok(out)
}

fn report_from_csv(lines: Vec<&str>) -> Result<ScanReport> {
    let mut meta = HashMap::new();
    let mut body = String::new();
    for line in lines {
        if let Some(kv) = line.strip_prefix("# ") {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Report(format!("bad metadata line: {line}")))?;
            meta.insert(k, v);
        } else {
            body.push_str(line);
            body.push('\n');
        }
    }
    let get = |k: &str| {
        meta.get(k)
            .copied()
            .ok_or_else(|| Error::Report(format!("missing metadata '{k}'")))
    };
    fn num<T: std::str::FromStr>(k: &str, v: &str) -> Result<T> {
        v.parse()
            .map_err(|_| Error::Report(format!("bad value for '{k}': {v}")))
    }
    let kind = ScanKind::parse(get("kind")?)
        .ok_or_else(|| Error::Report(format!("unknown kind {:?}", meta.get("kind"))))?;
    let identities = get("identities")?
        .split(';')
        .filter(|s| !s.is_empty())
        .map(|s| Identity::parse(s).ok_or_else(|| Error::Report(format!("unknown identity {s}"))))
        .collect::<Result<Vec<_>>>()?;

    let mut rdr = csv::ReaderBuilder::new().from_reader(body.as_bytes());
    let header: Vec<String> = rdr
        .headers()
        .map_err(report_err)?
        .iter()
        .map(str::to_string)
        .collect();
    if header != columns(kind) {
        return Err(Error::Report(format!(
            "unexpected columns {header:?} for {}",
            kind.as_str()
        )));
    }
    fn rows<T: DeserializeOwned>(
        rdr: &mut csv::Reader<&[u8]>,
        wrap: fn(T) -> Violation,
    ) -> Result<Vec<Violation>> {
        rdr.deserialize::<T>()
            .map(|r| r.map(wrap).map_err(report_err))
            .collect()
    }
    let violations = match kind {
        ScanKind::Theorem1 => rows(&mut rdr, Violation::Theorem1)?,
        ScanKind::Theorem2 => rows(&mut rdr, Violation::Theorem2)?,
        ScanKind::Identities => rows(&mut rdr, Violation::Identity)?,
    };

    Ok(ScanReport {
        kind,
        b_range: [num("b_lo", get("b_lo")?)?, num("b_hi", get("b_hi")?)?],
        parameters: ScanParameters {
            b_max: num("b_max", get("b_max")?)?,
            include_9div: num("include_9div", get("include_9div")?)?,
            cap: num("cap", get("cap")?)?,
            identities,
        },
        tuples_checked: num("tuples_checked", get("tuples_checked")?)?,
        violation_count: num("violation_count", get("violation_count")?)?,
        violations,
        elapsed_micros: num("elapsed_micros", get("elapsed_micros")?)?,
    })
}

/// One line of the `b = c d^2`, `a = c d + 1` example table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub c: i64,
    pub d: i64,
    pub b: i64,
    pub a: i64,
    pub diff: i128,
    pub div8: bool,
    pub div24: bool,
}

impl From<&FamilyExample> for FamilyRow {
    fn from(e: &FamilyExample) -> Self {
        FamilyRow {
            c: e.c,
            d: e.d,
            b: e.b,
            a: e.a,
            diff: e.s_diff.numer(),
            div8: e.divisible_by(8),
            div24: e.divisible_by(24),
        }
    }
}

/// Rows for every odd `c` in `[1, c_max]` and odd `d` in `[3, d_max]`,
/// ordered by `c` then `d`. Each row is verified against `c (d^2 - 1)`.
pub fn family_table(c_max: i64, d_max: i64) -> Result<Vec<FamilyRow>> {
    if c_max < 1 || d_max < 3 {
        return Err(Error::InvalidFamily { c: c_max, d: d_max });
    }
    let mut rows = Vec::new();
    for c in (1..=c_max).step_by(2) {
        for d in (3..=d_max).step_by(2) {
            rows.push(FamilyRow::from(&family_example(c, d)?));
        }
    }
    Ok(rows)
}

pub fn family_table_to_json(rows: &[FamilyRow]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(rows).map_err(report_err)?;
    s.push('\n');
    Ok(s)
}

pub fn family_table_to_csv(rows: &[FamilyRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        w.write_record(["c", "d", "b", "a", "diff", "div8", "div24"])
            .map_err(report_err)?;
    }
    for r in rows {
        w.serialize(r).map_err(report_err)?;
    }
    String::from_utf8(w.into_inner().map_err(report_err)?).map_err(report_err)
}

pub fn family_table_from_csv(text: &str) -> Result<Vec<FamilyRow>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .map(|r| r.map_err(report_err))
        .collect()
}

pub fn family_table_from_json(text: &str) -> Result<Vec<FamilyRow>> {
    serde_json::from_str(text).map_err(report_err)
}
