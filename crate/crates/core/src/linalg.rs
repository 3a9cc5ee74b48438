//! Exact sparse linear algebra over Q(i): rank, solving, kernel and
//! image bases by fraction-based Gaussian elimination. Results do not
//! depend on pivot choices; pivots are selected deterministically
//! (smallest leading column, then sparsest row) to keep runs reproducible.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

type SparseRow = BTreeMap<usize, Scalar>;

#[derive(Debug, Clone)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r].get(&c).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Accumulates into the entry, dropping exact zeros.
    pub fn add(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "entry out of range");
        if v.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.data[r].entry(c) {
            Entry::Vacant(e) => {
                e.insert(v);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + v;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "entry out of range");
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn rank(&self) -> usize {
        reduce(self.data.clone()).len()
    }

    /// Rank of [A | extra_0 | extra_1 | ...] with the extra columns
    /// appended on the right.
    pub fn rank_with_columns(&self, extra: &[Vec<Scalar>]) -> usize {
        let mut rows = self.data.clone();
        for (e, colv) in extra.iter().enumerate() {
            assert_eq!(colv.len(), self.rows, "extra column has wrong length");
            for (r, v) in colv.iter().enumerate() {
                if !v.is_zero() {
                    rows[r].insert(self.cols + e, v.clone());
                }
            }
        }
        reduce(rows).len()
    }

    /// One exact solution of A x = rhs (free variables set to zero), or
    /// None when the system is inconsistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(rhs.len(), self.rows, "rhs has wrong length");
        let mut rows = self.data.clone();
        for (r, v) in rhs.iter().enumerate() {
            if !v.is_zero() {
                rows[r].insert(self.cols, v.clone());
            }
        }
        let pivots = reduce(rows);
        let mut x = vec![Scalar::zero(); self.cols];
        for (col, row) in &pivots {
            if *col == self.cols {
                return None; // pivot in the augmented column
            }
            if let Some(v) = row.get(&self.cols) {
                x[*col] = v.clone();
            }
        }
        Some(x)
    }

    /// Basis of the null space (one vector per free column).
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let pivots = reduce(self.data.clone());
        let pivot_cols: Vec<usize> = pivots.iter().map(|(c, _)| *c).collect();
        let mut out = Vec::new();
        for f in 0..self.cols {
            if pivot_cols.contains(&f) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[f] = Scalar::one();
            for (col, row) in &pivots {
                if let Some(c) = row.get(&f) {
                    v[*col] = -c.clone();
                }
            }
            out.push(v);
        }
        out
    }

    /// The pivot columns of A: an independent generating set of the image.
    pub fn image_basis(&self) -> Vec<Vec<Scalar>> {
        let pivots = reduce(self.data.clone());
        pivots.iter().map(|(c, _)| self.column(*c)).collect()
    }
}

/// Reduced row echelon form. Returns the pivot rows as (pivot column,
/// normalized row), ascending in pivot column; zero rows are dropped.
fn reduce(rows: Vec<SparseRow>) -> Vec<(usize, SparseRow)> {
    let mut storage: Vec<Option<SparseRow>> = Vec::new();
    let mut buckets: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for row in rows {
        if let Some((&lead, _)) = row.first_key_value() {
            let idx = storage.len();
            storage.push(Some(row));
            buckets.entry(lead).or_default().push(idx);
        }
    }

    let mut pivots: Vec<(usize, SparseRow)> = Vec::new();
    while let Some((&col, _)) = buckets.first_key_value() {
        let mut here = buckets.remove(&col).unwrap();
        // deterministic pivot: sparsest row, then lowest index
        here.sort_by_key(|&i| (storage[i].as_ref().unwrap().len(), i));
        let pivot_idx = here[0];
        let pivot = storage[pivot_idx].take().unwrap();
        let pivot_lead = pivot.get(&col).unwrap().clone();
        for &other_idx in &here[1..] {
            let mut other = storage[other_idx].take().unwrap();
            let factor = other.get(&col).unwrap() / &pivot_lead;
            other.remove(&col);
            for (c, v) in &pivot {
                if *c == col {
                    continue;
                }
                let delta = -(&factor * v);
                use std::collections::btree_map::Entry;
                match other.entry(*c) {
                    Entry::Vacant(e) => {
                        if !delta.is_zero() {
                            e.insert(delta);
                        }
                    }
                    Entry::Occupied(mut e) => {
                        let sum = e.get().clone() + delta;
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                }
            }
            if let Some((&lead, _)) = other.first_key_value() {
                storage[other_idx] = Some(other);
                buckets.entry(lead).or_default().push(other_idx);
            }
        }
        pivots.push((col, pivot));
    }

    // normalize and back-eliminate to reach reduced echelon form
    for (col, row) in pivots.iter_mut() {
        let lead = row.get(col).unwrap().clone();
        if !lead.is_one() {
            let inv = lead.inv();
            for v in row.values_mut() {
                *v = &*v * &inv;
            }
        }
    }
    for i in (0..pivots.len()).rev() {
        let (col_i, row_i) = pivots[i].clone();
        for (_, row_j) in pivots.iter_mut().take(i) {
            if let Some(f) = row_j.get(&col_i).cloned() {
                row_j.remove(&col_i);
                for (c, v) in &row_i {
                    if *c == col_i {
                        continue;
                    }
                    let delta = -(&f * v);
                    use std::collections::btree_map::Entry;
                    match row_j.entry(*c) {
                        Entry::Vacant(e) => {
                            if !delta.is_zero() {
                                e.insert(delta);
                            }
                        }
                        Entry::Occupied(mut e) => {
                            let sum = e.get().clone() + delta;
                            if sum.is_zero() {
                                e.remove();
                            } else {
                                *e.get_mut() = sum;
                            }
                        }
                    }
                }
            }
        }
    }
    pivots
}
