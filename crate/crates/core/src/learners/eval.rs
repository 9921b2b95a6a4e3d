use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::LearnError;

/// Rows are true classes, columns predicted classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfusionMatrix {
    pub labels: Vec<String>,
    pub counts: Vec<Vec<u64>>,
}

impl ConfusionMatrix {
    pub fn from_counts(labels: Vec<String>, counts: Vec<Vec<u64>>) -> Result<Self, LearnError> {
        let k = labels.len();
        if counts.len() != k {
            return Err(LearnError::LengthMismatch(k, counts.len()));
        }
        if let Some(row) = counts.iter().find(|r| r.len() != k) {
            return Err(LearnError::LengthMismatch(k, row.len()));
        }
        Ok(ConfusionMatrix { labels, counts })
    }

    /// Counts `(gold[i], pred[i])` pairs over the given class labels.
    pub fn from_labels<S: AsRef<str>>(
        classes: &[S],
        gold: &[S],
        pred: &[S],
    ) -> Result<Self, LearnError> {
        let position = |s: &S| {
            classes
                .iter()
                .position(|c| c.as_ref() == s.as_ref())
                .ok_or_else(|| LearnError::UnknownLabel(s.as_ref().to_string()))
        };
        let gold: Vec<usize> = gold.iter().map(position).collect::<Result<_, _>>()?;
        let pred: Vec<usize> = pred.iter().map(position).collect::<Result<_, _>>()?;
        let labels = classes.iter().map(|c| c.as_ref().to_string()).collect();
        ConfusionMatrix::from_indices(labels, &gold, &pred)
    }

    pub fn from_indices(
        labels: Vec<String>,
        gold: &[usize],
        pred: &[usize],
    ) -> Result<Self, LearnError> {
        if gold.len() != pred.len() {
            return Err(LearnError::LengthMismatch(gold.len(), pred.len()));
        }
        if gold.is_empty() {
            return Err(LearnError::Empty);
        }
        let k = labels.len();
        let mut counts = vec![vec![0u64; k]; k];
        for (&g, &p) in gold.iter().zip(pred) {
            if g >= k {
                return Err(LearnError::UnknownClass(g));
            }
            if p >= k {
                return Err(LearnError::UnknownClass(p));
            }
            counts[g][p] += 1;
        }
        Ok(ConfusionMatrix { labels, counts })
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn trace(&self) -> u64 {
        (0..self.counts.len()).map(|i| self.counts[i][i]).sum()
    }

    pub fn row_sum(&self, i: usize) -> u64 {
        self.counts[i].iter().sum()
    }

    pub fn col_sum(&self, j: usize) -> u64 {
        self.counts.iter().map(|r| r[j]).sum()
    }
}

impl fmt::Display for ConfusionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:>8}", "")?;
        for l in &self.labels {
            write!(f, "{l:>8}")?;
        }
        writeln!(f)?;
        for (l, row) in self.labels.iter().zip(&self.counts) {
            write!(f, "{l:>8}")?;
            for c in row {
                write!(f, "{c:>8}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassMetrics {
    pub label: String,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub g: f64,
    pub support: u64,
}

/// Percentages rounded to two decimals; macro values are unweighted means
/// over classes. `per_class` keeps the unrounded fractions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport {
    pub accuracy: f64,
    pub macro_precision: f64,
    pub macro_recall: f64,
    pub macro_f1: f64,
    pub macro_g: f64,
    pub per_class: Vec<ClassMetrics>,
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn percent(x: f64) -> f64 {
    (x * 10000.0).round() / 100.0
}

pub fn metrics(cm: &ConfusionMatrix) -> Result<MetricsReport, LearnError> {
    let total = cm.total();
    if total == 0 || cm.labels.is_empty() {
        return Err(LearnError::Empty);
    }
    let per_class: Vec<ClassMetrics> = cm
        .labels
        .iter()
        .enumerate()
        .map(|(i, label)| {
            let tp = cm.counts[i][i];
            let precision = ratio(tp, cm.col_sum(i));
            let recall = ratio(tp, cm.row_sum(i));
            let f1 = if precision + recall == 0.0 {
                0.0
            } else {
                2.0 * precision * recall / (precision + recall)
            };
            ClassMetrics {
                label: label.clone(),
                precision,
                recall,
                f1,
                g: (precision * recall).sqrt(),
                support: cm.row_sum(i),
            }
        })
        .collect();
    let k = per_class.len() as f64;
    let mean = |f: fn(&ClassMetrics) -> f64| per_class.iter().map(f).sum::<f64>() / k;
    Ok(MetricsReport {
        accuracy: percent(ratio(cm.trace(), total)),
        macro_precision: percent(mean(|c| c.precision)),
        macro_recall: percent(mean(|c| c.recall)),
        macro_f1: percent(mean(|c| c.f1)),
        macro_g: percent(mean(|c| c.g)),
        per_class,
    })
}

/// Cohen's kappa between two label sequences.
///
/// Computed as `(n·matches − Σ a_k·b_k) / (n² − Σ a_k·b_k)` over the
/// marginal counts, in exact integer arithmetic up to the final division,
/// which makes the result exactly symmetric in its arguments. Perfect
/// agreement returns 1.0 even when chance agreement is also 1.
pub fn cohen_kappa<L: Ord>(a: &[L], b: &[L]) -> Result<f64, LearnError> {
    if a.len() != b.len() {
        return Err(LearnError::LengthMismatch(a.len(), b.len()));
    }
    if a.is_empty() {
        return Err(LearnError::Empty);
    }
    let n = a.len() as u128;
    let matches = a.iter().zip(b).filter(|(x, y)| x == y).count() as u128;
    if matches == n {
        return Ok(1.0);
    }
    let mut marginals: BTreeMap<&L, (u128, u128)> = BTreeMap::new();
    for x in a {
        marginals.entry(x).or_default().0 += 1;
    }
    for y in b {
        marginals.entry(y).or_default().1 += 1;
    }
    let chance: u128 = marginals.values().map(|(p, q)| p * q).sum();
    let num = (n * matches) as f64 - chance as f64;
    let den = (n * n - chance) as f64;
    Ok(num / den)
}
