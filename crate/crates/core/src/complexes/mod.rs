//! Bounded chain complexes of finite-dimensional graded vector spaces.

mod betti;

use std::collections::{BTreeMap, BTreeSet};

pub use betti::{BettiTable, ComputedBetti, Validity};

use crate::error::{Error, Result};
use crate::linalg::{rank_of_columns, Echelon, ExactMatrix, Field, SparseVec};

/// Basis of one degree of a graded space.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Piece {
    dim: usize,
    labels: Option<Vec<String>>,
    weights: Option<Vec<u32>>,
}

impl Piece {
    pub fn anonymous(dim: usize) -> Self {
        Piece {
            dim,
            labels: None,
            weights: None,
        }
    }

    pub fn labelled(labels: Vec<String>) -> Self {
        Piece {
            dim: labels.len(),
            labels: Some(labels),
            weights: None,
        }
    }

    pub fn with_weights(mut self, weights: Vec<u32>) -> Result<Self> {
        if weights.len() != self.dim {
            return Err(Error::Shape(format!(
                "{} weights for a piece of dimension {}",
                weights.len(),
                self.dim
            )));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("e{i}"),
        }
    }

    pub fn weight(&self, i: usize) -> Option<u32> {
        self.weights.as_ref().map(|w| w[i])
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    fn weight_groups(&self) -> BTreeMap<Option<u32>, Vec<usize>> {
        let mut groups: BTreeMap<Option<u32>, Vec<usize>> = BTreeMap::new();
        for i in 0..self.dim {
            groups.entry(self.weight(i)).or_default().push(i);
        }
        groups
    }
}

/// Finitely many nonzero degrees, each with an ordered basis.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedSpace {
    pieces: BTreeMap<i64, Piece>,
}

impl GradedSpace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a space and checks that weights are all present or all absent.
    pub fn from_pieces(pieces: impl IntoIterator<Item = (i64, Piece)>) -> Result<Self> {
        let pieces: BTreeMap<i64, Piece> = pieces.into_iter().filter(|(_, p)| p.dim > 0).collect();
        let flags: BTreeSet<bool> = pieces.values().map(|p| p.weights.is_some()).collect();
        if flags.len() > 1 {
            return Err(Error::Invariant(
                "weights must be given for every basis element or none".into(),
            ));
        }
        Ok(GradedSpace { pieces })
    }

    pub fn piece(&self, n: i64) -> Option<&Piece> {
        self.pieces.get(&n)
    }

    pub fn dim(&self, n: i64) -> usize {
        self.pieces.get(&n).map_or(0, |p| p.dim)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.pieces.keys().copied()
    }

    pub fn pieces(&self) -> impl Iterator<Item = (i64, &Piece)> {
        self.pieces.iter().map(|(n, p)| (*n, p))
    }

    pub fn is_weighted(&self) -> bool {
        self.pieces.values().any(|p| p.weights.is_some())
    }

    pub fn total_dim(&self) -> usize {
        self.pieces.values().map(|p| p.dim).sum()
    }
}

/// A bounded chain complex. `diff(n)` maps degree n to degree n − 1.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    field: Field,
    space: GradedSpace,
    diffs: BTreeMap<i64, ExactMatrix>,
}

impl ChainComplex {
    /// Validates shapes, weight preservation and d∘d = 0.
    pub fn new(field: Field, space: GradedSpace, diffs: BTreeMap<i64, ExactMatrix>) -> Result<Self> {
        let c = Self::assemble(field, space, diffs)?;
        c.check_weights()?;
        c.check_square_zero()?;
        Ok(c)
    }

    /// Checks shapes only. Callers are responsible for d∘d = 0 and weight
    /// preservation; `homology` still checks d∘d = 0.
    pub fn assemble(
        field: Field,
        space: GradedSpace,
        diffs: BTreeMap<i64, ExactMatrix>,
    ) -> Result<Self> {
        let mut kept = BTreeMap::new();
        for (n, d) in diffs {
            if d.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), d.field().to_string()));
            }
            if d.cols() != space.dim(n) || d.rows() != space.dim(n - 1) {
                return Err(Error::Shape(format!(
                    "d_{n} is {}×{} but the pieces have dimensions {} and {}",
                    d.rows(),
                    d.cols(),
                    space.dim(n - 1),
                    space.dim(n)
                )));
            }
            if !d.is_zero() {
                kept.insert(n, d);
            }
        }
        Ok(ChainComplex {
            field,
            space,
            diffs: kept,
        })
    }

    /// The field placed in degree 0 with zero differential.
    pub fn unit(field: Field) -> Self {
        let space = GradedSpace::from_pieces([(0, Piece::labelled(vec!["1".into()]))]).unwrap();
        ChainComplex {
            field,
            space,
            diffs: BTreeMap::new(),
        }
    }

    /// Zero differential on the given dimensions.
    pub fn from_dims(field: Field, dims: impl IntoIterator<Item = (i64, usize)>) -> Self {
        let space =
            GradedSpace::from_pieces(dims.into_iter().map(|(n, d)| (n, Piece::anonymous(d)))).unwrap();
        ChainComplex {
            field,
            space,
            diffs: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self, n: i64) -> usize {
        self.space.dim(n)
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.space.degrees().collect()
    }

    pub fn is_weighted(&self) -> bool {
        self.space.is_weighted()
    }

    /// The differential out of degree n (zero if not stored).
    pub fn diff(&self, n: i64) -> ExactMatrix {
        self.diffs
            .get(&n)
            .cloned()
            .unwrap_or_else(|| ExactMatrix::zeros(self.field, self.dim(n - 1), self.dim(n)))
    }

    pub fn diff_ref(&self, n: i64) -> Option<&ExactMatrix> {
        self.diffs.get(&n)
    }

    fn check_weights(&self) -> Result<()> {
        if !self.is_weighted() {
            return Ok(());
        }
        for (&n, d) in &self.diffs {
            let src = self.space.piece(n).expect("nonzero differential has a source");
            let dst = self.space.piece(n - 1).expect("nonzero differential has a target");
            for (r, c, _) in d.entries() {
                if src.weight(c) != dst.weight(r) {
                    return Err(Error::WeightNotPreserved { degree: n });
                }
            }
        }
        Ok(())
    }

    /// Verifies d_{n} ∘ d_{n+1} = 0 for every n.
    pub fn check_square_zero(&self) -> Result<()> {
        for (&n, d) in &self.diffs {
            if let Some(below) = self.diffs.get(&(n - 1)) {
                if !below.mul(d)?.is_zero() {
                    return Err(Error::DifferentialSquare { degree: n });
                }
            }
        }
        Ok(())
    }

    /// Betti numbers, computed weight by weight.
    pub fn homology(&self) -> Result<BettiTable> {
        self.homology_where(|_, _| true)
    }

    /// Betti numbers restricted to the (degree, weight) pairs accepted by `keep`.
    pub fn homology_where(&self, keep: impl Fn(i64, Option<u32>) -> bool) -> Result<BettiTable> {
        self.check_square_zero()?;
        let mut table = BettiTable::new();
        for (n, piece) in self.space.pieces() {
            for (w, cols) in piece.weight_groups() {
                if !keep(n, w) {
                    continue;
                }
                let ker = cols.len() - self.rank_on(n, &cols);
                let above = self
                    .space
                    .piece(n + 1)
                    .map(|p| p.weight_groups().remove(&w).unwrap_or_default())
                    .unwrap_or_default();
                let im = self.rank_on(n + 1, &above);
                table.add(n, w, ker - im);
            }
        }
        Ok(table)
    }

    fn rank_on(&self, n: i64, cols: &[usize]) -> usize {
        match self.diffs.get(&n) {
            Some(d) if !cols.is_empty() => {
                rank_of_columns(d.rows(), cols.iter().map(|&c| d.column(c).to_vec()))
            }
            _ => 0,
        }
    }

    /// Cycles in degree n whose classes form a basis of H_n. Each vector is
    /// weight-homogeneous; the choice is deterministic.
    pub fn homology_representatives(&self, n: i64) -> Vec<SparseVec> {
        let Some(piece) = self.space.piece(n) else {
            return Vec::new();
        };
        let mut boundaries = Echelon::new(self.field);
        if let Some(d) = self.diffs.get(&(n + 1)) {
            for c in 0..d.cols() {
                boundaries.insert(d.column(c).to_vec());
            }
        }
        let mut reps = Vec::new();
        for cols in piece.weight_groups().into_values() {
            for z in self.kernel_on(n, &cols) {
                if boundaries.insert(z.clone()) {
                    reps.push(z);
                }
            }
        }
        reps
    }

    /// Kernel of d_n restricted to the given columns, in global coordinates.
    fn kernel_on(&self, n: i64, cols: &[usize]) -> Vec<SparseVec> {
        let Some(d) = self.diffs.get(&n) else {
            return cols.iter().map(|&c| vec![(c, self.field.one())]).collect();
        };
        let local: Vec<SparseVec> = cols.iter().map(|&c| d.column(c).to_vec()).collect();
        let sub = ExactMatrix::from_columns(self.field, d.rows(), local);
        sub.kernel_basis_sparse()
            .into_iter()
            .map(|v| v.into_iter().map(|(i, x)| (cols[i], x)).collect())
            .collect()
    }

    /// Euler characteristic of the chain groups.
    pub fn euler_characteristic(&self) -> i64 {
        self.space
            .pieces()
            .map(|(n, p)| if n.rem_euclid(2) == 0 { p.dim as i64 } else { -(p.dim as i64) })
            .sum()
    }
}

/// Offsets of the blocks a_i ⊗ b_{n−i} inside degree n of a tensor product.
fn tensor_blocks(a: &GradedSpace, b: &GradedSpace) -> BTreeMap<i64, Vec<(i64, usize)>> {
    let mut blocks: BTreeMap<i64, Vec<(i64, usize)>> = BTreeMap::new();
    let mut sizes: BTreeMap<i64, usize> = BTreeMap::new();
    for (i, pa) in a.pieces() {
        for (j, pb) in b.pieces() {
            let n = i + j;
            let off = sizes.entry(n).or_insert(0);
            blocks.entry(n).or_default().push((i, *off));
            *off += pa.dim * pb.dim;
        }
    }
    blocks
}

/// Total complex of a ⊗ b with d(x⊗y) = dx⊗y + (−1)^{|x|} x⊗dy. Basis
/// order is lexicographic in (degree of x, index of x, index of y).
pub fn tensor(a: &ChainComplex, b: &ChainComplex) -> Result<ChainComplex> {
    if a.field != b.field {
        return Err(Error::FieldMismatch(a.field.to_string(), b.field.to_string()));
    }
    let field = a.field;
    let blocks = tensor_blocks(&a.space, &b.space);
    let weighted = a.is_weighted() || b.is_weighted();
    let offset = |n: i64, i: i64| -> usize {
        blocks[&n].iter().find(|(k, _)| *k == i).expect("block exists").1
    };

    let mut pieces = Vec::new();
    for (&n, bl) in &blocks {
        let mut labels = Vec::new();
        let mut weights = Vec::new();
        for &(i, _) in bl {
            let pa = a.space.piece(i).unwrap();
            let pb = b.space.piece(n - i).unwrap();
            for x in 0..pa.dim {
                for y in 0..pb.dim {
                    labels.push(format!("{}⊗{}", pa.label(x), pb.label(y)));
                    weights.push(pa.weight(x).unwrap_or(0) + pb.weight(y).unwrap_or(0));
                }
            }
        }
        let mut piece = Piece::labelled(labels);
        if weighted {
            piece = piece.with_weights(weights)?;
        }
        pieces.push((n, piece));
    }
    let space = GradedSpace::from_pieces(pieces)?;

    let mut diffs = BTreeMap::new();
    for (&n, bl) in &blocks {
        let mut trip = Vec::new();
        for &(i, off) in bl {
            let j = n - i;
            let (da, db) = (a.space.dim(i), b.space.dim(j));
            if let Some(d) = a.diffs.get(&i) {
                let tgt = offset(n - 1, i - 1);
                let db_t = b.space.dim(j);
                for (r, c, v) in d.entries() {
                    for y in 0..db {
                        trip.push((tgt + r * db_t + y, off + c * db + y, v.clone()));
                    }
                }
            }
            if let Some(d) = b.diffs.get(&j) {
                let tgt = offset(n - 1, i);
                let db_t = b.space.dim(j - 1);
                let odd = i.rem_euclid(2) == 1;
                for (r, c, v) in d.entries() {
                    let v = v.signed(odd);
                    for x in 0..da {
                        trip.push((tgt + x * db_t + r, off + x * db + c, v.clone()));
                    }
                }
            }
        }
        if !trip.is_empty() {
            let d = ExactMatrix::from_triplets(field, space.dim(n - 1), space.dim(n), trip)?;
            diffs.insert(n, d);
        }
    }
    ChainComplex::assemble(field, space, diffs)
}

/// piece(n) of the result is piece(n − k) of `c`; the differential picks up (−1)^k.
pub fn shift(c: &ChainComplex, k: i64) -> ChainComplex {
    let pieces = c.space.pieces.iter().map(|(n, p)| (n + k, p.clone())).collect();
    let odd = k.rem_euclid(2) == 1;
    let sign = c.field.sign(odd);
    let diffs = c
        .diffs
        .iter()
        .map(|(n, d)| (n + k, if odd { d.scale(&sign) } else { d.clone() }))
        .collect();
    ChainComplex {
        field: c.field,
        space: GradedSpace { pieces },
        diffs,
    }
}

/// Linear dual: piece(n) is the dual of piece(−n), and
/// d^∨(φ) = −(−1)^{|φ|} φ∘d.
pub fn dual(c: &ChainComplex) -> ChainComplex {
    let pieces = c
        .space
        .pieces
        .iter()
        .map(|(n, p)| {
            let labels = (0..p.dim).map(|i| format!("{}*", p.label(i))).collect();
            let piece = Piece {
                dim: p.dim,
                labels: Some(labels),
                weights: p.weights.clone(),
            };
            (-n, piece)
        })
        .collect();
    let diffs = c
        .diffs
        .iter()
        .map(|(m, d)| {
            // d_m: piece(m) → piece(m−1) dualizes to degree n = 1 − m.
            let n = 1 - m;
            let odd = n.rem_euclid(2) == 0;
            (n, d.transpose().scale(&c.field.sign(odd)))
        })
        .collect();
    ChainComplex {
        field: c.field,
        space: GradedSpace { pieces },
        diffs,
    }
}
