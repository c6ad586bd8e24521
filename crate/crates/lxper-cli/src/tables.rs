//! Renderers and loaders for the evaluation, version and summary tables
//! the subcommands emit. TSV forms parse back; aligned forms are for the
//! terminal.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use lxper_core::corpus::{CorpusSummary, Grade};
use lxper_core::model::{EvaluationReport, FeatureFamilyVersion, ModelError, RegressionModel};

use crate::report::ReportError;

/// Evaluation report as TSV: one row per grade plus an `all` row.
pub fn evaluation_tsv(report: &EvaluationReport) -> String {
    let mut out = String::from("grade\tmean_prediction\tavg_err\ttexts\n");
    for (grade, mean) in &report.per_grade_mean {
        writeln!(out, "{grade}\t{mean}\t{}\t-", report.per_grade_error[grade])
            .expect("string write");
    }
    writeln!(
        out,
        "all\t-\t{}\t{}",
        report.average_error, report.text_count
    )
    .expect("string write");
    out
}

/// Parse the TSV form of an evaluation report back.
pub fn parse_evaluation_tsv(content: &str) -> Result<EvaluationReport, ReportError> {
    let mut per_grade_mean = BTreeMap::new();
    let mut per_grade_error = BTreeMap::new();
    let mut average_error = None;
    let mut text_count = 0;
    for (lineno, line) in content.lines().enumerate() {
        if lineno == 0 || line.trim().is_empty() {
            continue;
        }
        let bad = |m: String| ReportError::BadLine(lineno + 1, m);
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(bad("expected 4 fields".into()));
        }
        if fields[0] == "all" {
            average_error = Some(fields[2].parse().map_err(|_| bad("bad avg_err".into()))?);
            text_count = fields[3]
                .parse()
                .map_err(|_| bad("bad text count".into()))?;
        } else {
            let grade = fields[0]
                .parse::<f64>()
                .ok()
                .and_then(|g| Grade::new(g).ok())
                .ok_or_else(|| bad(format!("bad grade {:?}", fields[0])))?;
            per_grade_mean.insert(
                grade,
                fields[1].parse().map_err(|_| bad("bad mean".into()))?,
            );
            per_grade_error.insert(
                grade,
                fields[2].parse().map_err(|_| bad("bad error".into()))?,
            );
        }
    }
    Ok(EvaluationReport {
        per_grade_mean,
        per_grade_error,
        average_error: average_error.ok_or(ReportError::BadLine(0, "missing all row".into()))?,
        text_count,
    })
}

/// Aligned evaluation report for the terminal.
pub fn evaluation_aligned(report: &EvaluationReport) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:<8} {:>16} {:>10}",
        "grade", "mean prediction", "AvgEr"
    )
    .expect("write");
    for (grade, mean) in &report.per_grade_mean {
        writeln!(
            out,
            "{:<8} {:>16.3} {:>10.3}",
            format!("Gr {grade}"),
            mean,
            report.per_grade_error[grade]
        )
        .expect("write");
    }
    writeln!(
        out,
        "{:<8} {:>16} {:>10.3}  ({} texts)",
        "all", "-", report.average_error, report.text_count
    )
    .expect("write");
    out
}

/// The seven-version table over held-out data, one row per version.
pub fn versions_aligned(
    outcomes: &BTreeMap<
        FeatureFamilyVersion,
        Result<(RegressionModel, EvaluationReport), ModelError>,
    >,
) -> String {
    let mut grades: Vec<Grade> = Vec::new();
    for outcome in outcomes.values().flatten() {
        for grade in outcome.1.per_grade_mean.keys() {
            if !grades.contains(grade) {
                grades.push(*grade);
            }
        }
    }
    grades.sort();

    let mut out = String::new();
    write!(out, "{:<10}", "version").expect("write");
    for grade in &grades {
        write!(out, " {:>9}", format!("Gr {grade}")).expect("write");
    }
    writeln!(out, " {:>9}", "AvgEr").expect("write");
    for version in FeatureFamilyVersion::ALL_VERSIONS {
        match &outcomes[&version] {
            Ok((_, report)) => {
                write!(out, "{:<10}", version.name()).expect("write");
                for grade in &grades {
                    match report.per_grade_mean.get(grade) {
                        Some(mean) => write!(out, " {:>9.3}", mean).expect("write"),
                        None => write!(out, " {:>9}", "-").expect("write"),
                    }
                }
                writeln!(out, " {:>9.3}", report.average_error).expect("write");
            }
            Err(e) => {
                writeln!(out, "{:<10} error: {e}", version.name()).expect("write");
            }
        }
    }
    out
}

/// Corpus summary in the metric-rows, grade-columns layout.
pub fn summary_aligned(summary: &CorpusSummary) -> String {
    let grades: Vec<Grade> = summary.per_grade.keys().copied().collect();
    let mut out = String::new();
    write!(out, "{:<8}", "").expect("write");
    for grade in &grades {
        write!(out, " {:>9}", format!("Gr {grade}")).expect("write");
    }
    writeln!(out, " {:>9}", "All").expect("write");
    for (name, pick) in [
        (
            "aWPT",
            &(|s: &lxper_core::corpus::GradeStats| s.awpt) as &dyn Fn(_) -> f64,
        ),
        ("aSPT", &|s: &lxper_core::corpus::GradeStats| s.aspt),
        ("aWPS", &|s: &lxper_core::corpus::GradeStats| s.awps),
    ] {
        write!(out, "{:<8}", name).expect("write");
        for grade in &grades {
            write!(out, " {:>9.3}", pick(&summary.per_grade[grade])).expect("write");
        }
        writeln!(out, " {:>9.3}", pick(&summary.overall)).expect("write");
    }
    out
}

/// Corpus summary as TSV: one row per grade plus an `all` row.
pub fn summary_tsv(summary: &CorpusSummary) -> String {
    let mut out = String::from("grade\ttexts\tawpt\taspt\tawps\n");
    for (grade, stats) in &summary.per_grade {
        writeln!(
            out,
            "{grade}\t{}\t{}\t{}\t{}",
            stats.text_count, stats.awpt, stats.aspt, stats.awps
        )
        .expect("write");
    }
    let all = &summary.overall;
    writeln!(
        out,
        "all\t{}\t{}\t{}\t{}",
        all.text_count, all.awpt, all.aspt, all.awps
    )
    .expect("write");
    out
}

/// Parse the TSV form of a corpus summary back. Word and sentence totals
/// are reconstructed from the per-text means.
pub fn parse_summary_tsv(content: &str) -> Result<CorpusSummary, ReportError> {
    let mut per_grade = BTreeMap::new();
    let mut overall = None;
    for (lineno, line) in content.lines().enumerate() {
        if lineno == 0 || line.trim().is_empty() {
            continue;
        }
        let bad = |m: String| ReportError::BadLine(lineno + 1, m);
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 5 {
            return Err(bad("expected 5 fields".into()));
        }
        let text_count: usize = fields[1]
            .parse()
            .map_err(|_| bad("bad text count".into()))?;
        let awpt: f64 = fields[2].parse().map_err(|_| bad("bad awpt".into()))?;
        let aspt: f64 = fields[3].parse().map_err(|_| bad("bad aspt".into()))?;
        let awps: f64 = fields[4].parse().map_err(|_| bad("bad awps".into()))?;
        let stats = lxper_core::corpus::GradeStats {
            text_count,
            word_total: (awpt * text_count as f64).round() as usize,
            sentence_total: (aspt * text_count as f64).round() as usize,
            awpt,
            aspt,
            awps,
        };
        if fields[0] == "all" {
            overall = Some(stats);
        } else {
            let grade = fields[0]
                .parse::<f64>()
                .ok()
                .and_then(|g| Grade::new(g).ok())
                .ok_or_else(|| bad(format!("bad grade {:?}", fields[0])))?;
            per_grade.insert(grade, stats);
        }
    }
    Ok(CorpusSummary {
        per_grade,
        overall: overall.ok_or(ReportError::BadLine(0, "missing all row".into()))?,
    })
}
