//! Code-mixing summaries over release records.

use codemix::corpus::{complexity, ComplexityReport, CorpusRecord};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecordComplexity {
    pub id: i64,
    #[serde(flatten)]
    pub report: ComplexityReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexitySummary {
    pub records: usize,
    /// Records with a nonzero mixing index.
    pub mixed_records: usize,
    pub mean_cmi: f64,
    pub mean_cf1: f64,
    pub mean_cf2: f64,
    pub mean_cf3: f64,
}

pub fn per_record(records: &[CorpusRecord]) -> Vec<RecordComplexity> {
    records
        .iter()
        .map(|r| RecordComplexity {
            id: r.id,
            report: complexity(&r.tags()),
        })
        .collect()
}

impl ComplexitySummary {
    pub fn of(records: &[CorpusRecord]) -> Self {
        Self::from_reports(&per_record(records))
    }

    pub fn from_reports(reports: &[RecordComplexity]) -> Self {
        let n = reports.len();
        let mean = |f: fn(&ComplexityReport) -> f64| {
            if n == 0 {
                0.0
            } else {
                reports.iter().map(|r| f(&r.report)).sum::<f64>() / n as f64
            }
        };
        ComplexitySummary {
            records: n,
            mixed_records: reports.iter().filter(|r| r.report.cmi > 0.0).count(),
            mean_cmi: mean(|r| r.cmi),
            mean_cf1: mean(|r| r.cf1),
            mean_cf2: mean(|r| r.cf2),
            mean_cf3: mean(|r| r.cf3),
        }
    }
}
