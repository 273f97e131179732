use std::collections::HashSet;
use std::io::{BufRead, Write};

use crate::corpus::ClassLabel;
use crate::error::{Error, Result};

/// Sparse vector: strictly increasing indices below `dimension`, no zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    entries: Vec<(usize, f64)>,
    dimension: usize,
}

impl FeatureVector {
    pub fn zeros(dimension: usize) -> Self {
        FeatureVector { entries: Vec::new(), dimension }
    }

    /// Builds from `(index, weight)` pairs in any order; weights of repeated
    /// indices are summed and zeros dropped.
    pub fn from_entries(dimension: usize, entries: impl IntoIterator<Item = (usize, f64)>) -> Result<Self> {
        let mut entries: Vec<(usize, f64)> = entries.into_iter().collect();
        if let Some(&(i, _)) = entries.iter().find(|(i, _)| *i >= dimension) {
            return Err(Error::DimensionMismatch { expected: dimension, found: i + 1 });
        }
        entries.sort_by_key(|e| e.0);
        let mut merged: Vec<(usize, f64)> = Vec::with_capacity(entries.len());
        for (i, w) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == i => last.1 += w,
                _ => merged.push((i, w)),
            }
        }
        merged.retain(|e| e.1 != 0.0);
        Ok(FeatureVector { entries: merged, dimension })
    }

    pub fn from_dense(values: &[f64]) -> Self {
        FeatureVector {
            entries: values.iter().copied().enumerate().filter(|e| e.1 != 0.0).collect(),
            dimension: values.len(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Weight at `index`; absent entries are zero.
    pub fn get(&self, index: usize) -> f64 {
        self.entries
            .binary_search_by_key(&index, |e| e.0)
            .map(|p| self.entries[p].1)
            .unwrap_or(0.0)
    }

    /// Dot product with a dense vector. Indices past its end count as zero.
    pub fn dot(&self, dense: &[f64]) -> f64 {
        self.entries.iter().filter_map(|&(i, w)| dense.get(i).map(|d| d * w)).sum()
    }

    pub fn squared_norm(&self) -> f64 {
        self.entries.iter().map(|e| e.1 * e.1).sum()
    }

    pub fn sum(&self) -> f64 {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.dimension];
        for &(i, w) in &self.entries {
            d[i] = w;
        }
        d
    }

    pub(crate) fn scale(&mut self, factor: f64) {
        for e in &mut self.entries {
            e.1 *= factor;
        }
    }
}

/// Labeled vectors of one data set.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    rows: Vec<(String, FeatureVector, ClassLabel)>,
    dimension: usize,
}

impl FeatureMatrix {
    pub fn new(dimension: usize, rows: Vec<(String, FeatureVector, ClassLabel)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (user, v, _) in &rows {
            if v.dimension() != dimension {
                return Err(Error::DimensionMismatch { expected: dimension, found: v.dimension() });
            }
            if !seen.insert(user.as_str()) {
                return Err(Error::MalformedRecord(format!("duplicate user {user}")));
            }
        }
        Ok(FeatureMatrix { rows, dimension })
    }

    /// Matrix from unnamed rows, users numbered `r0, r1, …`.
    pub fn from_rows(dimension: usize, rows: Vec<(FeatureVector, ClassLabel)>) -> Result<Self> {
        let rows = rows.into_iter().enumerate().map(|(i, (v, l))| (format!("r{i}"), v, l)).collect();
        FeatureMatrix::new(dimension, rows)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[(String, FeatureVector, ClassLabel)] {
        &self.rows
    }

    pub fn vector(&self, i: usize) -> &FeatureVector {
        &self.rows[i].1
    }

    pub fn label(&self, i: usize) -> ClassLabel {
        self.rows[i].2
    }

    pub fn labels(&self) -> Vec<ClassLabel> {
        self.rows.iter().map(|r| r.2).collect()
    }

    /// Rows at `indices`, in that order.
    pub fn select(&self, indices: &[usize]) -> FeatureMatrix {
        FeatureMatrix { rows: indices.iter().map(|&i| self.rows[i].clone()).collect(), dimension: self.dimension }
    }
}

/// Writes `user_id<TAB>label<TAB>index:weight …` lines, preceded by a
/// `# dimension=N` header.
pub fn write_feature_matrix<W: Write>(mut w: W, m: &FeatureMatrix) -> Result<()> {
    writeln!(w, "# dimension={}", m.dimension)?;
    for (user, v, label) in &m.rows {
        write!(w, "{user}\t{label}\t")?;
        let cells: Vec<String> = v.entries.iter().map(|(i, x)| format!("{i}:{x}")).collect();
        writeln!(w, "{}", cells.join(" "))?;
    }
    Ok(())
}

pub fn read_feature_matrix<R: BufRead>(reader: R) -> Result<FeatureMatrix> {
    let mut lines = reader.lines();
    let header = lines.next().ok_or_else(|| Error::ModelFormat("empty matrix file".into()))??;
    let dimension: usize = header
        .strip_prefix("# dimension=")
        .and_then(|d| d.trim().parse().ok())
        .ok_or_else(|| Error::ModelFormat("missing dimension header".into()))?;
    let mut rows = Vec::new();
    for line in lines {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        let mut cols = line.splitn(3, '\t');
        let (Some(user), Some(label), Some(cells)) = (cols.next(), cols.next(), cols.next()) else {
            return Err(Error::ModelFormat(format!("bad matrix line {line:?}")));
        };
        let mut entries = Vec::new();
        for cell in cells.split_whitespace() {
            let parsed = cell
                .split_once(':')
                .and_then(|(i, x)| Some((i.parse::<usize>().ok()?, x.parse::<f64>().ok()?)));
            entries.push(parsed.ok_or_else(|| Error::ModelFormat(format!("bad cell {cell:?}")))?);
        }
        rows.push((user.to_string(), FeatureVector::from_entries(dimension, entries)?, label.parse()?));
    }
    FeatureMatrix::new(dimension, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_invariants() {
        let v = FeatureVector::from_entries(5, [(3, 1.0), (1, 2.0), (3, 1.5), (4, 0.0)]).unwrap();
        assert_eq!(v.entries(), &[(1, 2.0), (3, 2.5)]);
        assert_eq!(v.get(0), 0.0);
        assert_eq!(v.get(3), 2.5);
        assert_eq!(v.dot(&[1.0, 1.0, 1.0, 2.0, 1.0]), 7.0);
        assert!(FeatureVector::from_entries(2, [(2, 1.0)]).is_err());
        assert_eq!(FeatureVector::from_dense(&[0.0, 3.0]).entries(), &[(1, 3.0)]);
    }

    #[test]
    fn matrix_file_round_trip() {
        let m = FeatureMatrix::new(
            4,
            vec![
                ("u1".into(), FeatureVector::from_entries(4, [(0, 2.0), (3, 0.1)]).unwrap(), ClassLabel::Yes),
                ("u2".into(), FeatureVector::zeros(4), ClassLabel::Ambiguous),
            ],
        )
        .unwrap();
        let mut buf = Vec::new();
        write_feature_matrix(&mut buf, &m).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "# dimension=4\nu1\tyes\t0:2 3:0.1\nu2\tambiguous\t\n");
        assert_eq!(read_feature_matrix(buf.as_slice()).unwrap(), m);
    }

    #[test]
    fn matrix_rejects_mixed_dimensions() {
        let rows = vec![(FeatureVector::zeros(3), ClassLabel::Yes), (FeatureVector::zeros(2), ClassLabel::No)];
        assert!(FeatureMatrix::from_rows(3, rows).is_err());
    }
}
