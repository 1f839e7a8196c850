//! Exact sparse row reduction over the rationals.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Sparse vector: strictly increasing indices, nonzero entries.
pub type SparseVec = Vec<(usize, BigRational)>;

/// `a + c·b`
fn axpy(a: &SparseVec, c: &BigRational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn from_dense(v: &[BigRational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// Row echelon form built by inserting rows one at a time. Each stored row
/// is normalized to leading coefficient 1 and keyed by its pivot column.
///
/// The set of pivot columns depends only on the row space, so solutions
/// read off with free coordinates set to zero are independent of insertion
/// order.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces `row` until its leading column is not a pivot.
    pub fn reduce(&self, mut row: SparseVec) -> SparseVec {
        while let Some((lead, c)) = row.first().cloned() {
            match self.rows.get(&lead) {
                Some(p) => row = axpy(&row, &-c, p),
                None => break,
            }
        }
        row
    }

    /// Inserts a row; returns `true` if it was independent of the rows so far.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        let row = self.reduce(row);
        match row.first() {
            None => false,
            Some((lead, c)) => {
                let lead = *lead;
                let inv = BigRational::one() / c;
                let row = row.into_iter().map(|(i, v)| (i, v * &inv)).collect();
                self.rows.insert(lead, row);
                true
            }
        }
    }

    /// Whether `row` lies in the row space.
    pub fn contains(&self, row: &SparseVec) -> bool {
        self.reduce_fully(row.clone()).is_empty()
    }

    fn reduce_fully(&self, mut row: SparseVec) -> SparseVec {
        let mut k = 0;
        while k < row.len() {
            let (col, c) = row[k].clone();
            match self.rows.get(&col) {
                Some(p) => row = axpy(&row, &-c, p),
                None => k += 1,
            }
        }
        row
    }

    /// Back-substitution for the augmented system whose right-hand side sits
    /// in column `rhs_col` (greater than every unknown column). Free unknowns
    /// are zero. Returns `None` if some row reads `0 = nonzero`.
    pub fn solve(&self, num_unknowns: usize, rhs_col: usize) -> Option<Vec<BigRational>> {
        if self.rows.contains_key(&rhs_col) {
            return None;
        }
        let mut z = vec![BigRational::zero(); num_unknowns];
        for (&col, row) in self.rows.iter().rev() {
            let mut value = BigRational::zero();
            for (j, c) in row.iter().skip(1) {
                if *j == rhs_col {
                    value += c;
                } else if !z[*j].is_zero() {
                    value -= c * &z[*j];
                }
            }
            z[col] = value;
        }
        Some(z)
    }

    /// A basis of `{z : A z = 0}` where `A` has the inserted rows, over
    /// `num_unknowns` columns: one vector per free column.
    pub fn kernel(&self, num_unknowns: usize) -> Vec<Vec<BigRational>> {
        let free: Vec<usize> = (0..num_unknowns).filter(|c| !self.rows.contains_key(c)).collect();
        free.into_iter()
            .map(|f| {
                let mut z = vec![BigRational::zero(); num_unknowns];
                z[f] = BigRational::one();
                for (&col, row) in self.rows.iter().rev() {
                    if col > f {
                        continue;
                    }
                    let mut value = BigRational::zero();
                    for (j, c) in row.iter().skip(1) {
                        if !z[*j].is_zero() {
                            value -= c * &z[*j];
                        }
                    }
                    z[col] = value;
                }
                z
            })
            .collect()
    }
}

/// Solves `A z = b` for `A` given by its columns (sparse, over `num_rows`
/// rows). Free coordinates of the returned solution are zero.
pub fn solve_columns(columns: &[SparseVec], b: &SparseVec, num_rows: usize) -> Option<Vec<BigRational>> {
    let n = columns.len();
    let mut rows: Vec<SparseVec> = vec![Vec::new(); num_rows];
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col {
            rows[*i].push((j, v.clone()));
        }
    }
    for (i, v) in b {
        rows[*i].push((n, v.clone()));
    }
    let mut ech = Echelon::new();
    for row in rows {
        if !row.is_empty() {
            ech.insert(row);
        }
    }
    ech.solve(n, n)
}

/// Rank of the span of `vectors`.
pub fn rank(vectors: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}
