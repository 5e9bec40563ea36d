//! CSV and JSON emission for certificates, audits and search reports, plus the
//! plain-text set file format.
//!
//! Set files look like
//!
//! ```text
//! group: Z2xZ4
//! # one element per line
//! 1,0
//! 0,3
//! ```

use std::collections::HashSet;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::bounds::{format_rational, BoundTable};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::procedures::{AuditRow, GrowthCertificate, GrowthStep, StageSchedule, StopRule};
use crate::search::SearchReport;
use crate::setops::ElementSet;

pub const SCHEMA: &str = "v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Parse(format!("unknown format {other:?} (expected csv or json)"))),
        }
    }
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

/// CSV with a fixed header, written even when there are no rows.
pub fn csv_table<T: Serialize>(header: &[&str], rows: impl IntoIterator<Item = T>) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header).map_err(io_err)?;
    for r in rows {
        w.serialize(r).map_err(io_err)?;
    }
    let bytes = w.into_inner().map_err(io_err)?;
    String::from_utf8(bytes).map_err(io_err)
}

#[derive(Serialize, Deserialize)]
struct CertificateDoc {
    schema: String,
    group: String,
    ground_set: String,
    stop: StopRule,
    /// `[element, lambda, span]`
    steps: Vec<(String, usize, usize)>,
    stage_marks: Vec<i64>,
    schedule: Option<StageSchedule>,
    final_span: usize,
    target: Option<usize>,
    reached: bool,
}

pub fn certificate_to_json(cert: &GrowthCertificate) -> Result<String> {
    let g = &cert.group;
    let doc = CertificateDoc {
        schema: SCHEMA.into(),
        group: g.to_string(),
        ground_set: cert.ground_set.to_hex(),
        stop: cert.stop,
        steps: cert.steps.iter().map(|s| (g.format_element(s.element), s.lambda, s.span)).collect(),
        stage_marks: cert.stage_marks.clone(),
        schedule: cert.schedule,
        final_span: cert.final_span,
        target: cert.target,
        reached: cert.reached,
    };
    serde_json::to_string_pretty(&doc).map_err(io_err)
}

pub fn certificate_from_json(text: &str) -> Result<GrowthCertificate> {
    let doc: CertificateDoc = serde_json::from_str(text).map_err(io_err)?;
    if doc.schema != SCHEMA {
        return Err(Error::Parse(format!("unsupported schema {:?}", doc.schema)));
    }
    let group: GroupSpec = doc.group.parse()?;
    let ground_set = ElementSet::from_hex(&group, &doc.ground_set)?;
    let steps = doc
        .steps
        .iter()
        .map(|(e, lambda, span)| Ok(GrowthStep { element: group.parse_element(e)?, lambda: *lambda, span: *span }))
        .collect::<Result<Vec<_>>>()?;
    Ok(GrowthCertificate {
        group,
        ground_set,
        steps,
        stop: doc.stop,
        stage_marks: doc.stage_marks,
        schedule: doc.schedule,
        final_span: doc.final_span,
        target: doc.target,
        reached: doc.reached,
    })
}

/// One row per step: `step,element,lambda,span`.
pub fn certificate_to_csv(cert: &GrowthCertificate) -> Result<String> {
    let g = &cert.group;
    csv_table(
        &["step", "element", "lambda", "span"],
        cert.steps.iter().enumerate().map(|(t, s)| (t + 1, g.format_element(s.element), s.lambda, s.span)),
    )
}

pub fn audit_to_csv(rows: &[AuditRow]) -> Result<String> {
    csv_table(&["stage", "check", "steps_checked", "violations", "held", "observed", "bound"], rows)
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    schema: &'a str,
    #[serde(flatten)]
    report: &'a SearchReport,
}

#[derive(Deserialize)]
struct ReportDocOwned {
    schema: String,
    #[serde(flatten)]
    report: SearchReport,
}

pub fn search_report_to_json(report: &SearchReport) -> Result<String> {
    serde_json::to_string_pretty(&ReportDoc { schema: SCHEMA, report }).map_err(io_err)
}

pub fn search_report_from_json(text: &str) -> Result<SearchReport> {
    let doc: ReportDocOwned = serde_json::from_str(text).map_err(io_err)?;
    if doc.schema != SCHEMA {
        return Err(Error::Parse(format!("unsupported schema {:?}", doc.schema)));
    }
    Ok(doc.report)
}

/// Rows only; metadata goes to the JSON form.
pub fn search_report_to_csv(report: &SearchReport) -> Result<String> {
    csv_table(
        &["group", "witness", "card", "sigma_size", "ratio", "stab_size", "bound", "satisfied"],
        report.rows.iter().map(|r| {
            (&r.group, r.witness.join(" "), r.card, r.sigma_size, r.ratio, r.stab_size, &r.bound, r.satisfied)
        }),
    )
}

/// `k,n_k,alpha_k` with exact integers and rationals.
pub fn bounds_to_csv(table: &BoundTable) -> Result<String> {
    csv_table(
        &["k", "n_k", "alpha_k"],
        (table.k_min..=table.k_max()).map(|k| {
            (k, table.n(k).expect("in range").to_string(), format_rational(table.alpha(k).expect("in range")))
        }),
    )
}

/// Writes to `path`, or stdout for `None` / `-`.
pub fn write_output(path: Option<&str>, text: &str) -> std::io::Result<()> {
    match path {
        None | Some("-") => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                out.write_all(b"\n")?;
            }
            out.flush()
        }
        Some(p) => std::fs::write(p, text),
    }
}

/// Parses a set file. A `group:` header is required unless `group` is given; when both
/// are present they must agree.
pub fn parse_set_file(text: &str, group: Option<&GroupSpec>, cap: usize) -> Result<(GroupSpec, ElementSet)> {
    let mut g: Option<GroupSpec> = group.cloned();
    let mut pending: Vec<(usize, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(spec) = line.strip_prefix("group:") {
            let parsed = GroupSpec::parse_with_cap(spec, cap).map_err(|e| Error::ParseLine { line: line_no, msg: e.to_string() })?;
            match &g {
                Some(existing) if !existing.same_as(&parsed) => {
                    return Err(Error::ParseLine {
                        line: line_no,
                        msg: format!("file declares {parsed} but {existing} was requested"),
                    })
                }
                _ => g = Some(parsed),
            }
            continue;
        }
        pending.push((line_no, line.to_string()));
    }
    let g = g.ok_or(Error::ParseLine { line: 1, msg: "missing `group:` header".into() })?;
    let mut set = ElementSet::empty(&g);
    let mut seen = HashSet::new();
    for (line, lit) in pending {
        let x = g.parse_element(&lit).map_err(|e| Error::ParseLine { line, msg: e.to_string() })?;
        if !seen.insert(x) {
            return Err(Error::ParseLine { line, msg: format!("duplicate element {lit}") });
        }
        set.insert(x);
    }
    Ok((g, set))
}

pub fn format_set_file(set: &ElementSet) -> String {
    let g = set.group();
    let mut out = format!("group: {g}\n");
    for x in set.iter() {
        out.push_str(&g.format_element(x));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_group, DEFAULT_MAX_ORDER};
    use crate::procedures::{annotate_stages, greedy_grow, stage_bound_audit};
    use crate::search::min_ratio_scan;

    #[test]
    fn certificate_round_trips() {
        let g = make_group(&[101]).unwrap();
        let a = ElementSet::from_indices(&g, 1..=12).unwrap();
        let mut cert = greedy_grow(&a, StopRule::SpanAbove(50)).unwrap();
        annotate_stages(&mut cert, 101, StageSchedule::ThreeStage);
        let json = certificate_to_json(&cert).unwrap();
        assert!(json.starts_with("{\n  \"schema\": \"v1\",\n  \"group\": \"Z101\""));
        let back = certificate_from_json(&json).unwrap();
        assert_eq!(back, cert);
        back.verify().unwrap();

        let csv = certificate_to_csv(&cert).unwrap();
        assert_eq!(csv.lines().count(), cert.steps.len() + 1);
        let audit = audit_to_csv(&stage_bound_audit(&cert, 101)).unwrap();
        assert!(audit.starts_with("stage,check,"));
    }

    #[test]
    fn empty_tables_keep_their_header() {
        assert_eq!(audit_to_csv(&[]).unwrap().lines().count(), 1);
        let g = make_group(&[5]).unwrap();
        let cert = greedy_grow(&ElementSet::empty(&g), StopRule::Exhaust).unwrap();
        assert_eq!(certificate_to_csv(&cert).unwrap(), "step,element,lambda,span\n");
    }

    #[test]
    fn search_report_round_trips() {
        let g = make_group(&[2, 4]).unwrap();
        let r = min_ratio_scan(&g, false, None).unwrap();
        let json = search_report_to_json(&r).unwrap();
        assert!(json.contains("\"schema\": \"v1\""));
        assert_eq!(search_report_from_json(&json).unwrap(), r);
        let csv = search_report_to_csv(&r).unwrap();
        assert_eq!(csv.lines().count(), r.rows.len() + 1);
        // multi-coordinate witnesses contain commas and are quoted
        assert!(csv.contains('"'));
        let mut rd = csv::Reader::from_reader(csv.as_bytes());
        assert_eq!(rd.records().count(), r.rows.len());
    }

    #[test]
    fn bounds_csv() {
        let t = BoundTable::up_to(10).unwrap();
        let csv = bounds_to_csv(&t).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "k,n_k,alpha_k");
        assert_eq!(lines[1], "9,1,1/64");
        assert!(lines[2].ends_with(",3/160"));
    }

    #[test]
    fn set_files() {
        let text = "group: Z2xZ5\n# comment\n1,0\n\n0,4  # trailing\n";
        let (g, s) = parse_set_file(text, None, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(g.to_string(), "Z2xZ5");
        assert_eq!(s.len(), 2);
        let (_, again) = parse_set_file(&format_set_file(&s), None, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(again, s);

        let z7 = make_group(&[7]).unwrap();
        let (_, s) = parse_set_file("1\n-1\n", Some(&z7), DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(s.indices(), vec![1, 6]);

        let err = |t: &str| parse_set_file(t, None, DEFAULT_MAX_ORDER).unwrap_err();
        assert_eq!(err("1\n"), Error::ParseLine { line: 1, msg: "missing `group:` header".into() });
        assert!(matches!(err("group: Z7\n1\nfoo\n"), Error::ParseLine { line: 3, .. }));
        assert!(matches!(err("group: Z7\n1\n8\n"), Error::ParseLine { line: 3, .. }));
        assert!(matches!(err("group: Z7\n1\n1\n"), Error::ParseLine { line: 3, .. }));
        assert!(matches!(err("group: Q7\n"), Error::ParseLine { line: 1, .. }));
        assert!(matches!(parse_set_file("group: Z5\n", Some(&z7), 100), Err(Error::ParseLine { line: 1, .. })));
    }
}
