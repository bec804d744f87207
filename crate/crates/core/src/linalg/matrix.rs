use std::fmt;

use super::scalar::{Field, FieldScalar};
use crate::error::{Error, Result};

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, FieldScalar)>;

/// `y + a·x` for sparse vectors.
pub fn axpy(y: &[(usize, FieldScalar)], a: &FieldScalar, x: &[(usize, FieldScalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        if j == x.len() || (i < y.len() && y[i].0 < x[j].0) {
            out.push(y[i].clone());
            i += 1;
        } else if i == y.len() || x[j].0 < y[i].0 {
            out.push((x[j].0, a * &x[j].1));
            j += 1;
        } else {
            let v = &y[i].1 + &(a * &x[j].1);
            if !v.is_zero() {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Collects `(index, value)` pairs into canonical sparse form.
pub fn canonicalize(mut terms: Vec<(usize, FieldScalar)>) -> SparseVec {
    terms.sort_by_key(|t| t.0);
    let mut out: SparseVec = Vec::with_capacity(terms.len());
    for (i, v) in terms {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = &*acc + &v,
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// Sparse exact matrix, stored column by column.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl ExactMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let columns = (0..n).map(|i| vec![(i, field.one())]).collect();
        Self {
            field,
            rows: n,
            cols: n,
            columns,
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(
        field: Field,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, FieldScalar)>,
    ) -> Result<Self> {
        let mut buckets: Vec<Vec<(usize, FieldScalar)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Shape(format!(
                    "entry ({r}, {c}) outside {rows}×{cols}"
                )));
            }
            if v.field() != field {
                return Err(Error::FieldMismatch(v.field().to_string(), field.to_string()));
            }
            buckets[c].push((r, v));
        }
        let columns = buckets.into_iter().map(canonicalize).collect();
        Ok(Self {
            field,
            rows,
            cols,
            columns,
        })
    }

    /// Column-wise constructor; each column must already be canonical.
    pub(crate) fn from_columns(field: Field, rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.windows(2).all(|w| w[0].0 < w[1].0) && c.iter().all(|e| e.0 < rows)));
        Self {
            field,
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn from_dense(field: Field, rows: &[Vec<FieldScalar>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let trips = rows.iter().enumerate().flat_map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(move |(c, v)| (r, c, v.clone()))
        });
        Self::from_triplets(field, rows.len(), cols, trips)
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Result<Self> {
        let dense: Vec<Vec<FieldScalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_dense(field, &dense)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(usize, FieldScalar)] {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> FieldScalar {
        match self.columns[c].binary_search_by_key(&r, |e| e.0) {
            Ok(i) => self.columns[c][i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    /// Nonzero entries in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &FieldScalar)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                cols[*r].push((c, v.clone()));
            }
        }
        Self::from_columns(self.field, self.cols, cols)
    }

    pub fn scale(&self, s: &FieldScalar) -> Self {
        if s.is_zero() {
            return Self::zeros(self.field, self.rows, self.cols);
        }
        let columns = self
            .columns
            .iter()
            .map(|c| c.iter().map(|(r, v)| (*r, v * s)).collect())
            .collect();
        Self::from_columns(self.field, self.rows, columns)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        Ok(())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("subtracting matrices of different shapes".into()));
        }
        let minus_one = self.field.from_i64(-1);
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| axpy(a, &minus_one, b))
            .collect();
        Ok(Self::from_columns(self.field, self.rows, columns))
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let columns = other
            .columns
            .iter()
            .map(|bcol| {
                let terms = bcol
                    .iter()
                    .flat_map(|(k, bv)| self.columns[*k].iter().map(move |(r, av)| (*r, av * bv)))
                    .collect();
                canonicalize(terms)
            })
            .collect();
        Ok(Self::from_columns(self.field, self.rows, columns))
    }

    /// Applies the matrix to a sparse vector.
    pub fn apply(&self, v: &[(usize, FieldScalar)]) -> SparseVec {
        let terms = v
            .iter()
            .flat_map(|(k, x)| self.columns[*k].iter().map(move |(r, a)| (*r, a * x)))
            .collect();
        canonicalize(terms)
    }

    pub fn to_dense(&self) -> Vec<Vec<FieldScalar>> {
        let mut out = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            out[r][c] = v.clone();
        }
        out
    }

    /// Dimension of the column space.
    pub fn rank(&self) -> usize {
        rank_of_columns(self.rows, self.columns.iter().cloned())
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let rows = self.transpose().columns;
        let echelon = Echelon::from_rows(self.field, rows);
        let mut columns: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (r, row) in echelon.rows.iter().enumerate() {
            for (c, v) in row {
                columns[*c].push((r, v.clone()));
            }
        }
        (
            Self::from_columns(self.field, self.rows, columns),
            echelon.pivots,
        )
    }

    /// Basis of the right null space, one vector per non-pivot column of the
    /// rref: the free coordinate is 1, the other free coordinates are 0.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldScalar>> {
        self.kernel_basis_sparse()
            .into_iter()
            .map(|v| densify(self.field, self.cols, &v))
            .collect()
    }

    pub fn kernel_basis_sparse(&self) -> Vec<SparseVec> {
        let rows = self.transpose().columns;
        Echelon::from_rows(self.field, rows).kernel(self.cols)
    }
}

pub fn densify(field: Field, n: usize, v: &[(usize, FieldScalar)]) -> Vec<FieldScalar> {
    let mut out = vec![field.zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}×{} over {}", self.rows, self.cols, self.field)?;
        if self.rows * self.cols <= 400 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        }
        Ok(())
    }
}

/// Rank of the span of the given columns by incremental column reduction.
pub fn rank_of_columns(rows: usize, columns: impl Iterator<Item = SparseVec>) -> usize {
    let mut pivot_of_row: Vec<u32> = vec![u32::MAX; rows];
    let mut reduced: Vec<SparseVec> = Vec::new();
    for mut col in columns {
        loop {
            let Some((lead, coeff)) = col.first().cloned() else {
                break;
            };
            let p = pivot_of_row[lead];
            if p == u32::MAX {
                let inv = coeff.inv().expect("nonzero lead");
                let normalized: SparseVec = col.iter().map(|(r, v)| (*r, v * &inv)).collect();
                pivot_of_row[lead] = reduced.len() as u32;
                reduced.push(normalized);
                break;
            }
            col = axpy(&col, &(-&coeff), &reduced[p as usize]);
        }
    }
    reduced.len()
}

/// Fully reduced row echelon basis of a row space.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    /// Rows sorted by pivot column, each with leading coefficient 1 and
    /// zeros in every other pivot column.
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: Field) -> Self {
        Self {
            field,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows(field: Field, rows: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut e = Self::new(field);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current basis.
    pub fn reduce(&self, v: &[(usize, FieldScalar)]) -> SparseVec {
        let mut v: SparseVec = v.to_vec();
        let mut idx = 0;
        while idx < v.len() {
            let col = v[idx].0;
            match self.pivots.binary_search(&col) {
                Ok(p) => {
                    let c = v[idx].1.clone();
                    v = axpy(&v, &(-&c), &self.rows[p]);
                }
                Err(_) => idx += 1,
            }
        }
        v
    }

    /// Coordinates of `v` in terms of the echelon rows, if `v` lies in the span.
    pub fn coordinates(&self, v: &[(usize, FieldScalar)]) -> Option<SparseVec> {
        let mut coords = Vec::new();
        for (c, x) in v {
            if let Ok(p) = self.pivots.binary_search(c) {
                coords.push((p, x.clone()));
            }
        }
        let mut check: SparseVec = v.to_vec();
        for (p, x) in &coords {
            check = axpy(&check, &(-x), &self.rows[*p]);
        }
        check.is_empty().then_some(coords)
    }

    /// Adds a row; returns false when it was already in the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(&v);
        let Some((lead, c)) = v.first().cloned() else {
            return false;
        };
        let inv = c.inv().expect("nonzero lead");
        let v: SparseVec = v.iter().map(|(i, x)| (*i, x * &inv)).collect();
        for row in &mut self.rows {
            if let Ok(k) = row.binary_search_by_key(&lead, |e| e.0) {
                let c = row[k].1.clone();
                *row = axpy(row, &(-&c), &v);
            }
        }
        let pos = self.pivots.binary_search(&lead).unwrap_err();
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, v);
        true
    }

    /// Null space of the matrix whose rows span this echelon form.
    pub fn kernel(&self, cols: usize) -> Vec<SparseVec> {
        let mut out = Vec::new();
        let mut p = 0;
        for free in 0..cols {
            if p < self.pivots.len() && self.pivots[p] == free {
                p += 1;
                continue;
            }
            let mut v: SparseVec = vec![(free, self.field.one())];
            for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                if let Ok(k) = row.binary_search_by_key(&free, |e| e.0) {
                    v.push((pc, -&row[k].1));
                }
            }
            out.push(canonicalize(v));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ExactMatrix::identity(q(), 3).rank(), 3);
        assert_eq!(ExactMatrix::zeros(q(), 4, 7).rank(), 0);
        let m = ExactMatrix::from_i64(q(), &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(ExactMatrix::identity(q(), 2).kernel_basis().is_empty());
        let m = ExactMatrix::from_i64(q(), &[&[1, -1]]).unwrap();
        assert_eq!(m.kernel_basis(), vec![vec![q().one(), q().one()]]);
        // Over 𝔽₅: rref of [[1,2],[2,4]] is [1,2]; x₀ = −2x₁, so (−2, 1) ≡ (3, 1).
        let f5 = Field::prime(5).unwrap();
        let m = ExactMatrix::from_i64(f5, &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(m.kernel_basis(), vec![vec![f5.from_i64(3), f5.from_i64(1)]]);
    }

    #[test]
    fn rref_examples() {
        let id = ExactMatrix::identity(q(), 3);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2]));
        let z = ExactMatrix::zeros(q(), 2, 3);
        assert_eq!(z.rref(), (z.clone(), vec![]));
        let swap = ExactMatrix::from_i64(q(), &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(swap.rref(), (ExactMatrix::identity(q(), 2), vec![0, 1]));
    }

    #[test]
    fn rref_reduces_above_pivots() {
        let m = ExactMatrix::from_i64(q(), &[&[2, 4, 1], &[1, 2, 3], &[0, 0, 5]]).unwrap();
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![0, 2]);
        let expect = ExactMatrix::from_i64(q(), &[&[1, 2, 0], &[0, 0, 1], &[0, 0, 0]]).unwrap();
        assert_eq!(r, expect);
    }

    #[test]
    fn triplets_canonicalize() {
        let f = q();
        let m = ExactMatrix::from_triplets(
            f,
            2,
            2,
            vec![(0, 0, f.one()), (0, 0, f.from_i64(-1)), (1, 1, f.from_i64(3))],
        )
        .unwrap();
        assert_eq!(m.nnz(), 1);
        assert!(ExactMatrix::from_triplets(f, 1, 1, vec![(1, 0, f.one())]).is_err());
        let f5 = Field::prime(5).unwrap();
        assert!(ExactMatrix::from_triplets(f, 1, 1, vec![(0, 0, f5.one())]).is_err());
    }

    #[test]
    fn product_and_transpose() {
        let a = ExactMatrix::from_i64(q(), &[&[1, 2], &[3, 4]]).unwrap();
        let b = ExactMatrix::from_i64(q(), &[&[0, 1], &[1, 0]]).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, ExactMatrix::from_i64(q(), &[&[2, 1], &[4, 3]]).unwrap());
        assert_eq!(a.transpose().transpose(), a);
        assert!(a.mul(&ExactMatrix::zeros(q(), 3, 1)).is_err());
    }
}
