//! Dense matrices over a [`FieldSpec`](crate::gf::FieldSpec) and binary 0/1 matrices.
//!
//! Column index sets in the public API are 1-based, matching the coordinate
//! convention used throughout the crate. Methods suffixed `_0` take 0-based
//! indices.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{same_field, Field};

#[derive(Clone)]
pub struct MatrixGF {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl PartialEq for MatrixGF {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && same_field(&self.field, &other.field)
    }
}

impl Eq for MatrixGF {}

impl fmt::Debug for MatrixGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixGF {}x{} over {}", self.rows, self.cols, self.field)?;
        f.write_str(&self.to_text())
    }
}

/// Checks that every 1-based index lies in `1..=len`, returning 0-based copies.
pub(crate) fn to_zero_based(idx: &[usize], len: usize) -> Result<Vec<usize>> {
    idx.iter()
        .map(|&i| {
            if i == 0 || i > len {
                Err(Error::IndexOutOfRange { index: i, len })
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

impl MatrixGF {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        MatrixGF { field: Arc::clone(field), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from integer-form entries; every row must have `cols` entries.
    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} entries, expected {cols}",
                    i + 1,
                    row.len()
                )));
            }
            if let Some(&v) = row.iter().find(|&&v| !field.contains(v)) {
                return Err(Error::Parse(format!("entry {v} is not in {field}")));
            }
            data.extend_from_slice(row);
        }
        Ok(MatrixGF { field: Arc::clone(field), rows: rows.len(), cols, data })
    }

    /// Builds a matrix from `0`/`1`/`z^i` strings.
    pub fn from_strs(field: &Field, rows: &[&[&str]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| field.parse_elem(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(field, cols, &parsed)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// 0-based entry access.
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &MatrixGF) -> Result<MatrixGF> {
        if !same_field(&self.field, &other.field) {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let mut out = vec![0u32; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self.get(r, c)));
            }
        }
        out
    }

    /// Reduced row echelon form and the 0-based pivot columns.
    ///
    /// Pivot search walks columns left to right and takes the lowest-index
    /// row holding a nonzero entry.
    pub fn rref(&self) -> (MatrixGF, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let Some(sel) = (pr..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            m.swap_rows(sel, pr);
            let inv = f.inv(m.get(pr, c)).expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = f.mul(m.get(pr, j), inv);
                m.set(pr, j, v);
            }
            for r in 0..m.rows {
                let factor = m.get(r, c);
                if r == pr || factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(pr, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(c);
            pr += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        rank_of_columns(&self.field, self.rows, |r, c| self.get(r, c), self.cols)
    }

    /// Rank of the column-restricted submatrix, 0-based columns, without copying.
    pub fn rank_of_cols_0(&self, cols: &[usize]) -> usize {
        rank_of_columns(&self.field, self.rows, |r, c| self.get(r, cols[c]), cols.len())
    }

    /// Column-restricted submatrix, 1-based column indices.
    pub fn restrict(&self, cols: &[usize]) -> Result<MatrixGF> {
        let zero_based = to_zero_based(cols, self.cols)?;
        Ok(self.select_columns_0(&zero_based))
    }

    pub fn select_columns_0(&self, cols: &[usize]) -> MatrixGF {
        let mut out = Self::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    pub fn select_rows_0(&self, rows: &[usize]) -> MatrixGF {
        let mut out = Self::zeros(&self.field, rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            out.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(self.row(r));
        }
        out
    }

    /// Basis of the right kernel `{x : M x^T = 0}`, one basis vector per row.
    ///
    /// Each basis vector has a 1 in one non-pivot column and 0 in the others.
    pub fn kernel(&self) -> MatrixGF {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(f, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.set(i, fc, 1);
            for (pr, &pc) in pivots.iter().enumerate() {
                out.set(i, pc, f.neg(r.get(pr, fc)));
            }
        }
        out
    }

    /// Recovers erased symbols of a word lying in the kernel of `self`.
    ///
    /// `erased` holds 1-based coordinates; entries of `received` at erased
    /// positions are ignored. Fails with [`Error::Unsolvable`] unless the erased
    /// columns are linearly independent and the system is consistent.
    pub fn solve_erasures(&self, erased: &[usize], received: &[u32]) -> Result<Vec<u32>> {
        if received.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, got: received.len() });
        }
        let mut er = to_zero_based(erased, self.cols)?;
        er.sort_unstable();
        er.dedup();
        let mut word = received.to_vec();
        if er.is_empty() {
            return Ok(word);
        }
        let f = &self.field;
        // Augmented system [H_E | -H_rest y_rest].
        let mut aug = Self::zeros(f, self.rows, er.len() + 1);
        for r in 0..self.rows {
            let mut rhs = 0;
            for c in 0..self.cols {
                if er.binary_search(&c).is_err() {
                    rhs = f.sub(rhs, f.mul(self.get(r, c), received[c]));
                }
            }
            for (j, &c) in er.iter().enumerate() {
                aug.set(r, j, self.get(r, c));
            }
            aug.set(r, er.len(), rhs);
        }
        let (red, pivots) = aug.rref();
        if pivots.len() != er.len() || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::Unsolvable);
        }
        for (i, &c) in er.iter().enumerate() {
            word[c] = red.get(i, er.len());
        }
        Ok(word)
    }

    pub fn hconcat(blocks: &[&MatrixGF]) -> Result<MatrixGF> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::DimensionMismatch("no blocks to concatenate".into()))?;
        let rows = first.rows;
        for b in blocks {
            if !same_field(&b.field, &first.field) {
                return Err(Error::FieldMismatch);
            }
            if b.rows != rows {
                return Err(Error::DimensionMismatch(format!(
                    "row counts {} and {} differ",
                    rows, b.rows
                )));
            }
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(&first.field, rows, cols);
        for r in 0..rows {
            let mut off = 0;
            for b in blocks {
                out.data[r * cols + off..r * cols + off + b.cols].copy_from_slice(b.row(r));
                off += b.cols;
            }
        }
        Ok(out)
    }

    pub fn vconcat(blocks: &[&MatrixGF]) -> Result<MatrixGF> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::DimensionMismatch("no blocks to concatenate".into()))?;
        let cols = first.cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if !same_field(&b.field, &first.field) {
                return Err(Error::FieldMismatch);
            }
            if b.cols != cols {
                return Err(Error::DimensionMismatch(format!(
                    "column counts {} and {} differ",
                    cols, b.cols
                )));
            }
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Ok(MatrixGF { field: Arc::clone(&first.field), rows, cols, data })
    }

    /// Copies `block` into `self` with its top-left corner at (r0, c0), 0-based.
    pub fn place(&mut self, r0: usize, c0: usize, block: &MatrixGF) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    /// Rectangular sub-block, 0-based origin.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> MatrixGF {
        let mut out = Self::zeros(&self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c));
            }
        }
        out
    }

    /// One row per line, entries space-separated as `0`, `1` or `z^i`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|&v| self.field.format_elem(v)).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses [`MatrixGF::to_text`] output; blank lines and `#` comments are skipped.
    pub fn from_text(field: &Field, text: &str) -> Result<MatrixGF> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.split_whitespace().map(|s| field.parse_elem(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(field, cols, &rows)
    }
}

/// Gaussian elimination on a virtual `rows x cols` matrix given by `entry`.
fn rank_of_columns(field: &Field, rows: usize, entry: impl Fn(usize, usize) -> u32, cols: usize) -> usize {
    if rows == 0 || cols == 0 {
        return 0;
    }
    let mut m: Vec<u32> = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            m.push(entry(r, c));
        }
    }
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(sel) = (rank..rows).find(|&r| m[r * cols + c] != 0) else {
            continue;
        };
        if sel != rank {
            for j in 0..cols {
                m.swap(sel * cols + j, rank * cols + j);
            }
        }
        let inv = field.inv(m[rank * cols + c]).expect("pivot is nonzero");
        for r in rank + 1..rows {
            let factor = m[r * cols + c];
            if factor == 0 {
                continue;
            }
            let scale = field.mul(factor, inv);
            for j in c..cols {
                m[r * cols + j] = field.sub(m[r * cols + j], field.mul(scale, m[rank * cols + j]));
            }
        }
        rank += 1;
    }
    rank
}

/// Free function form of [`MatrixGF::rank`].
pub fn rank(m: &MatrixGF) -> usize {
    m.rank()
}

/// Free function form of [`MatrixGF::restrict`].
pub fn restrict(m: &MatrixGF, cols: &[usize]) -> Result<MatrixGF> {
    m.restrict(cols)
}

/// Free function form of [`MatrixGF::hconcat`].
pub fn hconcat(blocks: &[&MatrixGF]) -> Result<MatrixGF> {
    MatrixGF::hconcat(blocks)
}

/// Free function form of [`MatrixGF::solve_erasures`].
pub fn solve_erasures(h: &MatrixGF, erased: &[usize], received: &[u32]) -> Result<Vec<u32>> {
    h.solve_erasures(erased, received)
}

/// A 0/1 matrix, used for erasure-pattern collections.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        f.write_str(&self.to_text())
    }
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BinaryMatrix { rows, cols, bits: vec![false; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(i) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!("row {} has a different length", i + 1)));
        }
        Ok(BinaryMatrix { rows: rows.len(), cols, bits: rows.concat() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.bits[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[bool] {
        &self.bits[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row(r).iter().filter(|&&b| b).count()
    }

    pub fn col_weight(&self, c: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, c)).count()
    }

    pub fn row_weights(&self) -> Vec<usize> {
        (0..self.rows).map(|r| self.row_weight(r)).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        (0..self.cols).map(|c| self.col_weight(c)).collect()
    }

    /// Weight of row `r` restricted to columns `c0..c0+len`, 0-based.
    pub fn segment_weight(&self, r: usize, c0: usize, len: usize) -> usize {
        self.row(r)[c0..c0 + len].iter().filter(|&&b| b).count()
    }

    /// Rectangular sub-block, 0-based origin.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> BinaryMatrix {
        let mut out = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c));
            }
        }
        out
    }

    pub fn is_regular(&self, weight: usize) -> bool {
        self.row_weights().iter().all(|&w| w == weight) && self.col_weights().iter().all(|&w| w == weight)
    }

    /// Rows of `0`/`1` characters.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.rows * (self.cols + 1));
        for r in 0..self.rows {
            s.extend(self.row(r).iter().map(|&b| if b { '1' } else { '0' }));
            s.push('\n');
        }
        s
    }

    /// Parses rows of `0`/`1` characters; whitespace inside a row is ignored,
    /// as are blank lines and `#` comments.
    pub fn from_text(text: &str) -> Result<BinaryMatrix> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                l.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(Error::Parse(format!("unexpected character {other:?} in binary matrix"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(&rows)
    }
}
