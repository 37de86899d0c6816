//! Text and JSON renderings of reports and series.

use std::collections::BTreeMap;

use qzeta_core::{QSeries, RelationReport};
use serde::{Deserialize, Serialize};

use crate::polyfile::format_rational;

/// Wire form of a [`RelationReport`]; field order is the canonical key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportJson {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub status: String,
    pub detail: String,
    pub runtime_ms: u64,
}

impl From<&RelationReport> for ReportJson {
    fn from(r: &RelationReport) -> Self {
        Self {
            check: r.check.clone(),
            params: r.params.clone(),
            status: r.status.as_str().to_string(),
            detail: r.detail.to_string(),
            runtime_ms: r.runtime_ms,
        }
    }
}

/// Reports sorted by check name, then parameters.
pub fn sort_reports(reports: &mut [RelationReport]) {
    reports.sort_by(|a, b| a.check.cmp(&b.check).then_with(|| a.params.cmp(&b.params)));
}

pub fn reports_json(reports: &[RelationReport]) -> String {
    let wire: Vec<ReportJson> = reports.iter().map(ReportJson::from).collect();
    serde_json::to_string_pretty(&wire).expect("plain data serialises") + "\n"
}

pub fn reports_text(reports: &[RelationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!(
            "{:<5} {:<14} {:<28} {} ({} ms)\n",
            r.status.as_str().to_uppercase(),
            r.check,
            params.join(" "),
            r.detail,
            r.runtime_ms
        ));
    }
    out
}

/// One row per check name: number of runs, passes and failures.
pub fn summary_table(reports: &[RelationReport]) -> String {
    let mut rows: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for r in reports {
        let row = rows.entry(r.check.as_str()).or_default();
        row.0 += 1;
        if r.passed() {
            row.1 += 1;
        }
    }
    let mut out = format!("{:<14} {:>5} {:>5} {:>5}\n", "check", "runs", "pass", "fail");
    for (name, (runs, pass)) in &rows {
        out.push_str(&format!("{name:<14} {runs:>5} {pass:>5} {:>5}\n", runs - pass));
    }
    let total = reports.len();
    let passed = reports.iter().filter(|r| r.passed()).count();
    out.push_str(&format!("{:<14} {total:>5} {passed:>5} {:>5}\n", "total", total - passed));
    out
}

pub fn series_text(s: &QSeries) -> String {
    let parts: Vec<String> = s.coeffs().iter().map(format_rational).collect();
    parts.join(", ") + "\n"
}

#[derive(Serialize)]
struct SeriesJson<'a> {
    kind: &'a str,
    params: &'a BTreeMap<String, String>,
    coefficients: Vec<String>,
}

pub fn series_json(kind: &str, params: &BTreeMap<String, String>, s: &QSeries) -> String {
    let wire = SeriesJson { kind, params, coefficients: s.coeffs().iter().map(format_rational).collect() };
    serde_json::to_string_pretty(&wire).expect("plain data serialises") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use qzeta_core::algebra::int;
    use qzeta_core::qseries::zeta_q;

    #[test]
    fn series_rendering() {
        assert_eq!(series_text(&zeta_q(2, 5)), "0, 1, 3, 4, 7, 6\n");
        let p = BTreeMap::from([("k".to_string(), "2".to_string())]);
        assert!(series_json("zeta", &p, &zeta_q(2, 2)).contains("\"coefficients\""));
    }

    #[test]
    fn report_round_trip() {
        let mut reports = vec![
            RelationReport::exact("thm2", 5, Some((3, int(1), int(2)))).with_param("k", 6),
            RelationReport::exact("thm2", 5, None).with_param("k", 4),
            RelationReport::numeric("relation", 1e-12, 1e-8, 1e-15).with_param("k", 12),
        ];
        sort_reports(&mut reports);
        assert_eq!(reports[0].check, "relation");
        assert_eq!(reports[1].params["k"], "4");
        let text = reports_json(&reports);
        let parsed: Vec<ReportJson> = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", text);
        assert!(summary_table(&reports).contains("total              3     2     1"));
    }
}
