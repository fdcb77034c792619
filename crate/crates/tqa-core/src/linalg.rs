//! Exact sparse linear algebra over the rationals.
//!
//! Everything here reduces to one primitive: rational Gaussian elimination
//! to reduced row echelon form. The reduced form is unique, so internal row
//! handling cannot affect any result; pivot columns are scanned left to
//! right and rows top to bottom, deterministically. Rows are kept sparse
//! throughout; the coboundary matrices this library produces have a handful
//! of entries per column and sparse elimination is what keeps the larger
//! instances tractable.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use num::{One, Zero};

/// A sparse vector: coordinate index to nonzero value.
pub type SparseVec = BTreeMap<usize, Rational>;

/// Sparse matrix over the rationals. Zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        assert!(row < self.rows && col < self.cols, "entry out of range");
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: Rational) {
        if value.is_zero() {
            return;
        }
        let current = self.get(row, col) + value;
        self.set(row, col, current);
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn from_rows(data: &[Vec<i64>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        let mut m = RationalMatrix::new(rows, cols);
        for (i, r) in data.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, v) in r.iter().enumerate() {
                if *v != 0 {
                    m.set(i, j, Rational::from_integer((*v).into()));
                }
            }
        }
        m
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = RationalMatrix::new(self.cols, self.rows);
        for (r, c, v) in self.entries() {
            t.set(c, r, v.clone());
        }
        t
    }

    pub fn column(&self, col: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, col)).collect()
    }

    pub fn mul_matrix(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions disagree");
        // Group the right factor by row for sparse traversal.
        let mut right_rows: BTreeMap<usize, Vec<(usize, &Rational)>> = BTreeMap::new();
        for (r, c, v) in other.entries() {
            right_rows.entry(r).or_default().push((c, v));
        }
        let mut out = RationalMatrix::new(self.rows, other.cols);
        for (i, k, a) in self.entries() {
            if let Some(row) = right_rows.get(&k) {
                for (c, b) in row {
                    out.add_to(i, *c, a.clone() * (*b).clone());
                }
            }
        }
        out
    }

    pub fn mul_vector(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, vector has {} entries",
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![Rational::zero(); self.rows];
        for (r, c, a) in self.entries() {
            if !v[c].is_zero() {
                out[r] += a.clone() * v[c].clone();
            }
        }
        Ok(out)
    }

    /// Matrix-vector product with a sparse vector.
    pub fn mul_sparse_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (r, c, a) in self.entries() {
            if let Some(x) = v.get(&c) {
                let e = out.entry(r).or_insert_with(Rational::zero);
                *e += a.clone() * x.clone();
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rational>], rows: usize) -> Self {
        let mut m = RationalMatrix::new(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        m
    }

    fn to_sparse_rows(&self) -> Vec<SparseVec> {
        let mut rows = vec![SparseVec::new(); self.rows];
        for (r, c, v) in self.entries() {
            rows[r].insert(c, v.clone());
        }
        rows
    }

    pub fn render(&self) -> String {
        (0..self.rows)
            .map(|r| {
                let cells: Vec<String> = (0..self.cols)
                    .map(|c| format_rational(&self.get(r, c)))
                    .collect();
                format!("[{}]", cells.join(", "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Reduced row echelon form: nonzero rows plus their pivot columns, in
/// order. The reduced form is unique; this is the canonical object every
/// basis below is read off from.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
}

/// Sparse Gauss-Jordan elimination.
pub fn rref_sparse(mut rows: Vec<SparseVec>, cols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        if pivot_row == rows.len() {
            break;
        }
        let Some(src) = (pivot_row..rows.len()).find(|&r| rows[r].contains_key(&col)) else {
            continue;
        };
        rows.swap(pivot_row, src);
        let inv = rows[pivot_row][&col].clone();
        if !inv.is_one() {
            for v in rows[pivot_row].values_mut() {
                *v = v.clone() / inv.clone();
            }
        }
        let pivot_vec = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row {
                continue;
            }
            let Some(factor) = row.get(&col).cloned() else {
                continue;
            };
            for (c, v) in &pivot_vec {
                let delta = factor.clone() * v.clone();
                let e = row.entry(*c).or_insert_with(Rational::zero);
                *e -= delta;
            }
            row.retain(|_, v| !v.is_zero());
        }
        pivots.push(col);
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    Echelon { rows, pivots }
}

pub fn rref_of(m: &RationalMatrix) -> Echelon {
    rref_sparse(m.to_sparse_rows(), m.cols())
}

/// Exact rank.
pub fn rank(m: &RationalMatrix) -> usize {
    rref_of(m).pivots.len()
}

/// Reduced-echelon kernel basis; its length is `cols - rank`.
///
/// The basis vector for free column `f` carries a one at `f`, the negated
/// reduced entries at the pivot columns, and zeros elsewhere; vectors are
/// ordered by free column.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let ech = rref_of(m);
    let cols = m.cols();
    kernel_from_echelon(&ech, cols)
        .into_iter()
        .map(|sv| {
            let mut v = vec![Rational::zero(); cols];
            for (i, x) in sv {
                v[i] = x;
            }
            v
        })
        .collect()
}

/// Sparse kernel basis from an echelon form.
pub fn kernel_from_echelon(ech: &Echelon, cols: usize) -> Vec<SparseVec> {
    let pivot_of_col: BTreeMap<usize, usize> = ech
        .pivots
        .iter()
        .enumerate()
        .map(|(row, &col)| (col, row))
        .collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col.contains_key(&free) {
            continue;
        }
        let mut v = SparseVec::new();
        v.insert(free, Rational::one());
        for (&pcol, &prow) in &pivot_of_col {
            if let Some(coeff) = ech.rows[prow].get(&free) {
                if !coeff.is_zero() {
                    v.insert(pcol, -coeff.clone());
                }
            }
        }
        basis.push(v);
    }
    basis
}

/// Canonical basis of the column span: the reduced echelon form of the
/// transpose.
pub fn image_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let ech = image_echelon(m);
    ech.rows
        .into_iter()
        .map(|sv| {
            let mut v = vec![Rational::zero(); m.rows()];
            for (i, x) in sv {
                v[i] = x;
            }
            v
        })
        .collect()
}

/// Image basis in sparse echelon form (pivot coordinates included).
pub fn image_echelon(m: &RationalMatrix) -> Echelon {
    rref_of(&m.transpose())
}

/// Solves `M c = v` exactly, free variables pinned to zero.
pub fn solve(m: &RationalMatrix, v: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if v.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows, vector has {} entries",
            m.rows(),
            v.len()
        )));
    }
    let cols = m.cols();
    let mut rows = m.to_sparse_rows();
    for (r, row) in rows.iter_mut().enumerate() {
        if !v[r].is_zero() {
            row.insert(cols, v[r].clone());
        }
    }
    let ech = rref_sparse(rows, cols + 1);
    if ech.pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut c = vec![Rational::zero(); cols];
    for (row, &col) in ech.pivots.iter().enumerate() {
        if let Some(x) = ech.rows[row].get(&cols) {
            c[col] = x.clone();
        }
    }
    Ok(Some(c))
}

/// Coordinates of a preimage when `v` lies in the column span, else `None`.
pub fn in_image(m: &RationalMatrix, v: &[Rational]) -> Result<Option<Vec<Rational>>> {
    solve(m, v)
}

/// Representative coordinates for the quotient of `k^dim` by the span of
/// `image`: the non-pivot coordinates of the reduced echelon form of the
/// spanning set.
pub fn quotient_reps(dim: usize, image: &[Vec<Rational>]) -> Vec<usize> {
    let rows: Vec<SparseVec> = image
        .iter()
        .map(|v| {
            assert_eq!(v.len(), dim, "image vector has wrong length");
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect()
        })
        .collect();
    let ech = rref_sparse(rows, dim);
    (0..dim).filter(|c| !ech.pivots.contains(c)).collect()
}

/// Reduces `v` against an echelon basis in place: subtracts the multiple of
/// each echelon row dictated by the entry at its pivot. Afterwards `v` has
/// zeros at all pivots; `v` was in the span iff the result is empty.
pub fn reduce_against_echelon(v: &mut SparseVec, ech: &Echelon) {
    for (row, &pivot) in ech.rows.iter().zip(&ech.pivots) {
        let Some(coeff) = v.get(&pivot).cloned() else {
            continue;
        };
        for (c, x) in row {
            let delta = coeff.clone() * x.clone();
            let e = v.entry(*c).or_insert_with(Rational::zero);
            *e -= delta;
        }
        v.retain(|_, x| !x.is_zero());
    }
}
