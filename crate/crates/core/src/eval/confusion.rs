use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::ClassLabel;
use crate::error::{Error, Result};

/// Rows are true labels, columns predictions, both in [`ClassLabel`] order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub counts: [[u64; 3]; 3],
}

/// Precision and recall of one class; `None` where the ratio is 0/0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassMetrics {
    pub precision: Option<f64>,
    pub recall: Option<f64>,
}

impl ConfusionMatrix {
    pub fn from_counts(counts: [[u64; 3]; 3]) -> Self {
        ConfusionMatrix { counts }
    }

    pub fn record(&mut self, truth: ClassLabel, predicted: ClassLabel) {
        self.counts[truth.index()][predicted.index()] += 1;
    }

    pub fn merge(&mut self, other: &ConfusionMatrix) {
        for r in 0..3 {
            for c in 0..3 {
                self.counts[r][c] += other.counts[r][c];
            }
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn trace(&self) -> u64 {
        (0..3).map(|i| self.counts[i][i]).sum()
    }

    pub fn row_total(&self, truth: ClassLabel) -> u64 {
        self.counts[truth.index()].iter().sum()
    }

    pub fn column_total(&self, predicted: ClassLabel) -> u64 {
        self.counts.iter().map(|r| r[predicted.index()]).sum()
    }

    /// Share of instances on the diagonal.
    pub fn accuracy(&self) -> Result<f64> {
        match self.total() {
            0 => Err(Error::EmptyMatrix),
            n => Ok(self.trace() as f64 / n as f64),
        }
    }

    pub fn per_class_metrics(&self) -> [ClassMetrics; 3] {
        let ratio = |num: u64, den: u64| (den > 0).then(|| num as f64 / den as f64);
        ClassLabel::ALL.map(|l| {
            let hit = self.counts[l.index()][l.index()];
            ClassMetrics { precision: ratio(hit, self.column_total(l)), recall: ratio(hit, self.row_total(l)) }
        })
    }
}

/// Three lines of three space-separated integers.
impl fmt::Display for ConfusionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.counts {
            writeln!(f, "{} {} {}", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}

impl FromStr for ConfusionMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<&str> = s.lines().filter(|l| !l.trim().is_empty()).collect();
        if rows.len() != 3 {
            return Err(Error::ModelFormat(format!("confusion matrix needs 3 rows, got {}", rows.len())));
        }
        let mut counts = [[0u64; 3]; 3];
        for (r, line) in rows.iter().enumerate() {
            let cells: Vec<u64> = line
                .split_whitespace()
                .map(|c| c.parse().map_err(|_| Error::ModelFormat(format!("bad count {c:?}"))))
                .collect::<Result<_>>()?;
            if cells.len() != 3 {
                return Err(Error::ModelFormat(format!("row {} needs 3 counts", r + 1)));
            }
            counts[r].copy_from_slice(&cells);
        }
        Ok(ConfusionMatrix { counts })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accuracy_and_metrics() {
        let m = ConfusionMatrix::from_counts([[599, 15, 212], [10, 591, 181], [41, 29, 322]]);
        assert_eq!(m.total(), 2000);
        assert!((m.accuracy().unwrap() - 0.756).abs() < 1e-12);
        let metrics = m.per_class_metrics();
        assert!((metrics[2].recall.unwrap() - 322.0 / 392.0).abs() < 1e-12);
        assert!((metrics[0].precision.unwrap() - 599.0 / 650.0).abs() < 1e-12);
        assert!(matches!(ConfusionMatrix::default().accuracy(), Err(Error::EmptyMatrix)));
    }

    #[test]
    fn undefined_precision() {
        let m = ConfusionMatrix::from_counts([[3, 0, 0], [1, 0, 0], [0, 0, 2]]);
        let metrics = m.per_class_metrics();
        assert_eq!(metrics[1].precision, None);
        assert_eq!(metrics[1].recall, Some(0.0));
        let diag = ConfusionMatrix::from_counts([[2, 0, 0], [0, 5, 0], [0, 0, 1]]);
        for c in diag.per_class_metrics() {
            assert_eq!((c.precision, c.recall), (Some(1.0), Some(1.0)));
        }
        assert_eq!(diag.accuracy().unwrap(), 1.0);
    }

    #[test]
    fn text_round_trip() {
        let m = ConfusionMatrix::from_counts([[783, 17, 26], [19, 738, 25], [70, 45, 277]]);
        let s = m.to_string();
        assert_eq!(s, "783 17 26\n19 738 25\n70 45 277\n");
        assert_eq!(s.parse::<ConfusionMatrix>().unwrap(), m);
        assert!("1 2\n3 4\n".parse::<ConfusionMatrix>().is_err());
    }
}
