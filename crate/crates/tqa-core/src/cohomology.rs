//! The bigraded cohomology complex and its cohomology spaces.
//!
//! The dual of the minimal resolution has basis the parallel pairs (α, π)
//! with |π| = kN in degree 2k and kN+1 in degree 2k+1, graded by the row
//! i = |α|. The coboundary decomposes into small blocks: even-degree row j
//! maps to row j+1 (j ≤ N−2) by bordering with arrows on both sides, and
//! odd-degree row 0 maps to row N−1 by bordering with complementary path
//! pairs of total length N−1. The same matrix is also assembled by
//! mechanically dualizing the resolution differential; equality of the two
//! assemblies is a standing check against sign or indexing drift.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::TruncatedAlgebra;
use crate::error::{Error, Limits, Result};
use crate::linalg::{self, Echelon, RationalMatrix, SparseVec};
use crate::medals::medal_classes;
use crate::quiver::{ParallelPair, Path};
use crate::rational::{format_rational, rat, Rational};
use crate::resolutions::{middle_len, min_diff, p_generator_basis, PChain};
use num::Zero;

/// Length of the second path of a degree-n pair.
pub fn pair_len(n: usize, n_trunc: usize) -> usize {
    middle_len(n, n_trunc)
}

/// Homological degree encoded by a second-path length, if any.
pub fn degree_for_pair_len(len: usize, n_trunc: usize) -> Option<usize> {
    if len % n_trunc == 0 {
        Some(2 * (len / n_trunc))
    } else if len % n_trunc == 1 {
        Some(2 * (len / n_trunc) + 1)
    } else {
        None
    }
}

/// Rational combination of parallel pairs of one homological degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCochain {
    pub degree: usize,
    terms: BTreeMap<ParallelPair, Rational>,
}

impl DualCochain {
    pub fn zero(degree: usize) -> Self {
        DualCochain {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_pair(degree: usize, p: ParallelPair) -> Self {
        let mut c = DualCochain::zero(degree);
        c.add_term(p, rat(1));
        c
    }

    pub fn add_term(&mut self, p: ParallelPair, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &DualCochain) -> DualCochain {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> DualCochain {
        let mut out = DualCochain::zero(self.degree);
        for (p, v) in &self.terms {
            out.add_term(p.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParallelPair, &Rational)> {
        self.terms.iter()
    }

    /// The sub-cochain supported on first-path length `row`.
    pub fn row_component(&self, row: usize) -> DualCochain {
        let mut out = DualCochain::zero(self.degree);
        for (p, c) in &self.terms {
            if p.first.len() == row {
                out.add_term(p.clone(), c.clone());
            }
        }
        out
    }

    /// Rows carrying nonzero terms.
    pub fn rows(&self) -> Vec<usize> {
        let mut rows: Vec<usize> = self.terms.keys().map(|p| p.first.len()).collect();
        rows.sort_unstable();
        rows.dedup();
        rows
    }
}

/// Pair basis of the dual complex at degree n, ordered by
/// (row, first, second).
pub fn pair_basis(a: &TruncatedAlgebra, n: usize, limits: &Limits) -> Result<Vec<ParallelPair>> {
    let m = pair_len(n, a.n());
    let mut out = Vec::new();
    for i in 0..a.n() {
        out.extend(a.quiver().parallel_pairs(i, m, limits)?);
    }
    Ok(out)
}

/// Pairs of one row only.
pub fn pair_row_basis(
    a: &TruncatedAlgebra,
    n: usize,
    row: usize,
    limits: &Limits,
) -> Result<Vec<ParallelPair>> {
    a.quiver().parallel_pairs(row, pair_len(n, a.n()), limits)
}

/// Coboundary of a single pair, by the explicit block formulas.
pub fn coboundary_of_pair(
    a: &TruncatedAlgebra,
    n: usize,
    p: &ParallelPair,
    limits: &Limits,
) -> Result<DualCochain> {
    let q = a.quiver();
    let nn = a.n();
    let mut out = DualCochain::zero(n + 1);
    let row = p.first.len();

    if n % 2 == 0 {
        // Row j → row j+1 for j ≤ N−2; top row dies.
        if row <= nn - 2 {
            for u in q.in_arrows(p.first.source()) {
                let arrow = q.arrow_path(u);
                out.add_term(
                    ParallelPair {
                        first: q.concat(&arrow, &p.first).expect("borders compose"),
                        second: q.concat(&arrow, &p.second).expect("borders compose"),
                    },
                    rat(1),
                );
            }
            for w in q.out_arrows(p.first.target()) {
                let arrow = q.arrow_path(w);
                out.add_term(
                    ParallelPair {
                        first: q.concat(&p.first, &arrow).expect("borders compose"),
                        second: q.concat(&p.second, &arrow).expect("borders compose"),
                    },
                    rat(-1),
                );
            }
        }
    } else if row == 0 {
        // Row 0 → row N−1: border with all path pairs of total length N−1
        // through the vertex.
        let v = p.first.source();
        for left_len in 0..nn {
            let right_len = nn - 1 - left_len;
            for left in q.paths(left_len, limits)? {
                if left.target() != v {
                    continue;
                }
                for right in q.paths(right_len, limits)? {
                    if right.source() != v {
                        continue;
                    }
                    let first = q.concat(&left, &right).expect("borders compose");
                    let mid = q.concat(&left, &p.second).expect("borders compose");
                    let second = q.concat(&mid, &right).expect("borders compose");
                    out.add_term(ParallelPair { first, second }, rat(1));
                }
            }
        }
    }
    Ok(out)
}

/// The full coboundary matrix from degree n to n+1 in the pair bases,
/// assembled from the explicit block formulas.
pub fn dual_diff_matrix(a: &TruncatedAlgebra, n: usize, limits: &Limits) -> Result<RationalMatrix> {
    let cols = pair_basis(a, n, limits)?;
    let rows = pair_basis(a, n + 1, limits)?;
    let row_index: BTreeMap<&ParallelPair, usize> =
        rows.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut m = RationalMatrix::new(rows.len(), cols.len());
    for (j, p) in cols.iter().enumerate() {
        for (target, coeff) in coboundary_of_pair(a, n, p, limits)?.terms() {
            let i = *row_index
                .get(target)
                .expect("coboundary lands in the next pair basis");
            m.add_to(i, j, coeff.clone());
        }
    }
    Ok(m)
}

/// The same matrix assembled by dualizing the minimal-resolution
/// differential through the pair pairing.
pub fn dual_diff_matrix_via_resolution(
    a: &TruncatedAlgebra,
    n: usize,
    limits: &Limits,
) -> Result<RationalMatrix> {
    let cols = pair_basis(a, n, limits)?;
    let rows = pair_basis(a, n + 1, limits)?;
    let row_index: BTreeMap<&ParallelPair, usize> =
        rows.iter().enumerate().map(|(i, p)| (p, i)).collect();
    // Columns grouped by their second path, which the pairing matches
    // against middle components of the differential.
    let mut by_second: BTreeMap<&Path, Vec<usize>> = BTreeMap::new();
    for (j, p) in cols.iter().enumerate() {
        by_second.entry(&p.second).or_default().push(j);
    }

    let mut m = RationalMatrix::new(rows.len(), cols.len());
    for gen in p_generator_basis(a, n + 1, limits)? {
        let target_second = gen.middle.clone();
        let d = min_diff(a, &PChain::from_word(n + 1, gen))?;
        for (term, coeff) in d.terms() {
            let Some(col_ids) = by_second.get(&term.middle) else {
                continue;
            };
            for &j in col_ids {
                let alpha = &cols[j].first;
                let Some(la) = a.mul_paths(&term.left, alpha) else {
                    continue;
                };
                let Some(lar) = a.mul_paths(&la, &term.right) else {
                    continue;
                };
                let target = ParallelPair {
                    first: lar,
                    second: target_second.clone(),
                };
                let i = *row_index.get(&target).expect("dual image stays in basis");
                m.add_to(i, j, coeff.clone());
            }
        }
    }
    Ok(m)
}

/// The block of the coboundary sending row `row` of degree `n` into row
/// `target_row` of degree n+1, together with its domain and codomain pair
/// bases.
pub fn diff_block(
    a: &TruncatedAlgebra,
    n: usize,
    row: usize,
    target_row: usize,
    limits: &Limits,
) -> Result<(Vec<ParallelPair>, Vec<ParallelPair>, RationalMatrix)> {
    let dom = pair_row_basis(a, n, row, limits)?;
    let cod = pair_row_basis(a, n + 1, target_row, limits)?;
    let cod_index: BTreeMap<&ParallelPair, usize> =
        cod.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut m = RationalMatrix::new(cod.len(), dom.len());
    for (col, p) in dom.iter().enumerate() {
        for (t, c) in coboundary_of_pair(a, n, p, limits)?.terms() {
            if let Some(&r) = cod_index.get(t) {
                m.add_to(r, col, c.clone());
            }
        }
    }
    Ok((dom, cod, m))
}

/// One chosen cohomology representative.
#[derive(Debug, Clone)]
pub struct Representative {
    pub cochain: DualCochain,
    pub row: usize,
    /// True when the representative is a medal-class sum.
    pub from_medal: bool,
    /// Global pair-basis coordinate where this representative has
    /// coefficient one and every other representative vanishes; reduction
    /// reads class coordinates off these positions.
    lead: usize,
    coords: SparseVec,
}

/// How a row of the bigraded complex contributes at this degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RowKind {
    /// No incoming coboundary; cohomology is the kernel of the out-block.
    Kernel,
    /// Kernel row whose canonical basis is the medal sums.
    Medal,
    /// Zero out-block with incoming coboundary; cohomology is a cokernel.
    Cokernel,
    /// Zero out-block, no incoming coboundary; the whole row survives.
    Full,
}

fn row_kind(n: usize, row: usize, n_trunc: usize) -> RowKind {
    let top = n_trunc - 1;
    if n == 0 {
        if row == top {
            RowKind::Full
        } else {
            RowKind::Kernel
        }
    } else if n % 2 == 0 {
        if row == top {
            RowKind::Cokernel
        } else if row >= 1 {
            RowKind::Medal
        } else {
            RowKind::Kernel
        }
    } else if row == 0 {
        RowKind::Kernel
    } else {
        RowKind::Cokernel
    }
}

/// Cohomology at one degree: per-row dimensions, representatives, the
/// coboundary image in echelon form, and everything needed to reduce a
/// cocycle to canonical class coordinates.
#[derive(Debug, Clone)]
pub struct CohomologySpace {
    pub degree: usize,
    pub basis: Vec<ParallelPair>,
    pub row_dims: Vec<usize>,
    pub reps: Vec<Representative>,
    image_ech: Echelon,
    /// Column-major view of the outgoing coboundary, for fast cocycle
    /// checks on sparse cochains.
    out_cols: Vec<Vec<(usize, Rational)>>,
    /// Lead coordinate to representative position.
    lead_index: BTreeMap<usize, usize>,
    index: BTreeMap<ParallelPair, usize>,
}

impl CohomologySpace {
    pub fn total_dim(&self) -> usize {
        self.reps.len()
    }

    /// Canonical echelon basis of the coboundary image from degree n-1, as
    /// sparse vectors in pair coordinates.
    pub fn image_echelon(&self) -> &Echelon {
        &self.image_ech
    }

    pub fn pair_index(&self, p: &ParallelPair) -> Option<usize> {
        self.index.get(p).copied()
    }

    fn to_sparse(&self, z: &DualCochain) -> Result<SparseVec> {
        if z.degree != self.degree {
            return Err(Error::DimensionMismatch(format!(
                "cochain degree {} vs space degree {}",
                z.degree, self.degree
            )));
        }
        let mut v = SparseVec::new();
        for (p, c) in z.terms() {
            let Some(&i) = self.index.get(p) else {
                return Err(Error::Validation(format!(
                    "pair with first length {} and second length {} is not in the degree-{} basis",
                    p.first.len(),
                    p.second.len(),
                    self.degree
                )));
            };
            v.insert(i, c.clone());
        }
        Ok(v)
    }

    pub fn to_coords(&self, z: &DualCochain) -> Result<Vec<Rational>> {
        let sparse = self.to_sparse(z)?;
        let mut v = vec![Rational::zero(); self.basis.len()];
        for (i, c) in sparse {
            v[i] = c;
        }
        Ok(v)
    }

    pub fn from_coords(&self, v: &[Rational]) -> DualCochain {
        let mut out = DualCochain::zero(self.degree);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out.add_term(self.basis[i].clone(), c.clone());
            }
        }
        out
    }

    fn kills(&self, v: &SparseVec) -> bool {
        let mut acc: SparseVec = SparseVec::new();
        for (c, x) in v {
            for (r, a) in &self.out_cols[*c] {
                let e = acc.entry(*r).or_insert_with(Rational::zero);
                *e += a.clone() * x.clone();
            }
        }
        acc.retain(|_, x| !x.is_zero());
        acc.is_empty()
    }

    pub fn is_cocycle(&self, z: &DualCochain) -> Result<bool> {
        let v = self.to_sparse(z)?;
        Ok(self.kills(&v))
    }

    /// Whether a cochain lies in the coboundary image.
    pub fn is_coboundary(&self, z: &DualCochain) -> Result<bool> {
        let mut v = self.to_sparse(z)?;
        linalg::reduce_against_echelon(&mut v, &self.image_ech);
        Ok(v.is_empty())
    }

    /// Reduces a cocycle to coordinates in the representative basis.
    pub fn reduce(&self, z: &DualCochain) -> Result<Vec<Rational>> {
        let mut v = self.to_sparse(z)?;
        if !self.kills(&v) {
            return Err(Error::NotACocycle {
                degree: self.degree,
            });
        }
        // Kill the coboundary part, then read class coordinates off the
        // representative leads (each lead is zero on every other
        // representative and on the reduced image).
        linalg::reduce_against_echelon(&mut v, &self.image_ech);
        let mut out = vec![Rational::zero(); self.reps.len()];
        let hits: Vec<usize> = v
            .keys()
            .filter_map(|c| self.lead_index.get(c).copied())
            .collect();
        for j in hits {
            let r = &self.reps[j];
            let c = v.get(&r.lead).cloned().unwrap_or_else(Rational::zero);
            if c.is_zero() {
                continue;
            }
            for (i, x) in &r.coords {
                let delta = c.clone() * x.clone();
                let e = v.entry(*i).or_insert_with(Rational::zero);
                *e -= delta;
            }
            v.retain(|_, x| !x.is_zero());
            out[j] = c;
        }
        if !v.is_empty() {
            return Err(Error::Validation(
                "cocycle does not decompose over representatives and image".into(),
            ));
        }
        Ok(out)
    }

    /// The canonical cochain with the given class coordinates.
    pub fn class_cochain(&self, coords: &[Rational]) -> DualCochain {
        let mut out = DualCochain::zero(self.degree);
        for (c, r) in coords.iter().zip(&self.reps) {
            out = out.add(&r.cochain.scale(c));
        }
        out
    }
}

/// Computes the cohomology space at degree n, rowwise.
pub fn cohomology(a: &TruncatedAlgebra, n: usize, limits: &Limits) -> Result<CohomologySpace> {
    let nn = a.n();
    let basis = pair_basis(a, n, limits)?;
    let index: BTreeMap<ParallelPair, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let out_matrix = dual_diff_matrix(a, n, limits)?;
    let image_ech = if n >= 1 {
        linalg::image_echelon(&dual_diff_matrix(a, n - 1, limits)?)
    } else {
        Echelon {
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    };

    // Row offsets inside the global pair basis.
    let mut row_ranges: Vec<(usize, usize)> = Vec::new();
    {
        let mut start = 0usize;
        for i in 0..nn {
            let count = basis[start..]
                .iter()
                .take_while(|p| p.first.len() == i)
                .count();
            row_ranges.push((start, start + count));
            start += count;
        }
        debug_assert_eq!(start, basis.len());
    }

    let mut reps: Vec<Representative> = Vec::new();
    let mut row_dims = vec![0usize; nn];

    for row in 0..nn {
        let (lo, hi) = row_ranges[row];
        let size = hi - lo;
        if size == 0 {
            continue;
        }
        let kind = row_kind(n, row, nn);
        let pivots_here: Vec<usize> = image_ech
            .pivots
            .iter()
            .copied()
            .filter(|&p| p >= lo && p < hi)
            .collect();
        if kind != RowKind::Cokernel && !pivots_here.is_empty() {
            return Err(Error::Validation(format!(
                "coboundary image unexpectedly meets row {row} at degree {n}"
            )));
        }

        match kind {
            RowKind::Kernel => {
                // Columns of this row inside the outgoing coboundary.
                let mut block_rows: Vec<SparseVec> = vec![SparseVec::new(); out_matrix.rows()];
                for (r, c, v) in out_matrix.entries() {
                    if c >= lo && c < hi {
                        block_rows[r].insert(c - lo, v.clone());
                    }
                }
                let ech = linalg::rref_sparse(block_rows, size);
                let kernel = linalg::kernel_from_echelon(&ech, size);
                row_dims[row] = kernel.len();
                for kv in kernel {
                    // The free coordinate is the largest in the support.
                    let lead_local = *kv.keys().max().expect("kernel vector is nonzero");
                    let mut z = DualCochain::zero(n);
                    let mut coords = SparseVec::new();
                    for (i, c) in &kv {
                        z.add_term(basis[lo + i].clone(), c.clone());
                        coords.insert(lo + i, c.clone());
                    }
                    reps.push(Representative {
                        cochain: z,
                        row,
                        from_medal: false,
                        lead: lo + lead_local,
                        coords,
                    });
                }
            }
            RowKind::Medal => {
                let mut block_rows: Vec<SparseVec> = vec![SparseVec::new(); out_matrix.rows()];
                for (r, c, v) in out_matrix.entries() {
                    if c >= lo && c < hi {
                        block_rows[r].insert(c - lo, v.clone());
                    }
                }
                let rank = linalg::rref_sparse(block_rows, size).pivots.len();
                let expected = size - rank;
                let classes = medal_classes(a.quiver(), row, pair_len(n, nn), limits)?;
                let medals: Vec<_> = classes.into_iter().filter(|c| c.is_medal).collect();
                if medals.len() != expected {
                    return Err(Error::Validation(format!(
                        "medal count {} does not match kernel dimension {expected} at degree {n} row {row}",
                        medals.len()
                    )));
                }
                row_dims[row] = expected;
                for class in medals {
                    let mut z = DualCochain::zero(n);
                    let mut coords = SparseVec::new();
                    for p in &class.members {
                        let i = index[p];
                        z.add_term(p.clone(), rat(1));
                        coords.insert(i, rat(1));
                    }
                    let sum_sparse = coords.clone();
                    if !out_matrix.mul_sparse_vec(&sum_sparse).is_empty() {
                        return Err(Error::Validation(format!(
                            "medal sum is not a cocycle at degree {n} row {row}"
                        )));
                    }
                    let lead = *coords.keys().next().expect("medal class is nonempty");
                    reps.push(Representative {
                        cochain: z,
                        row,
                        from_medal: true,
                        lead,
                        coords,
                    });
                }
            }
            RowKind::Cokernel | RowKind::Full => {
                row_dims[row] = size - pivots_here.len();
                for i in lo..hi {
                    if pivots_here.contains(&i) {
                        continue;
                    }
                    let mut coords = SparseVec::new();
                    coords.insert(i, rat(1));
                    reps.push(Representative {
                        cochain: DualCochain::from_pair(n, basis[i].clone()),
                        row,
                        from_medal: false,
                        lead: i,
                        coords,
                    });
                }
            }
        }
    }

    let mut out_cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); basis.len()];
    for (r, c, v) in out_matrix.entries() {
        out_cols[c].push((r, v.clone()));
    }
    let lead_index: BTreeMap<usize, usize> =
        reps.iter().enumerate().map(|(j, r)| (r.lead, j)).collect();

    Ok(CohomologySpace {
        degree: n,
        basis,
        row_dims,
        reps,
        image_ech,
        out_cols,
        lead_index,
        index,
    })
}

/// Brute-force center of A: all elements commuting with every vertex and
/// arrow. Independent check for degree-zero cohomology.
pub fn center_dimension(a: &TruncatedAlgebra, limits: &Limits) -> Result<usize> {
    let q = a.quiver();
    let basis = a.basis(limits)?;
    let index: BTreeMap<&Path, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
    // Rows: one per (generator, basis path) coordinate of [g, z].
    let mut gens: Vec<Path> = (0..q.vertex_count()).map(|v| q.vertex_path(v)).collect();
    gens.extend((0..q.arrow_count()).map(|id| q.arrow_path(id)));

    let mut m = RationalMatrix::new(gens.len() * basis.len(), basis.len());
    for (col, z) in basis.iter().enumerate() {
        for (gi, g) in gens.iter().enumerate() {
            if let Some(gz) = a.mul_paths(g, z) {
                m.add_to(gi * basis.len() + index[&gz], col, rat(1));
            }
            if let Some(zg) = a.mul_paths(z, g) {
                m.add_to(gi * basis.len() + index[&zg], col, rat(-1));
            }
        }
    }
    Ok(linalg::kernel_basis(&m).len())
}

/// JSON-facing view of a cohomology space.
#[derive(Debug, Serialize)]
pub struct CohomologyJson {
    pub degree: usize,
    pub rows: BTreeMap<String, usize>,
    pub total: usize,
    pub representatives: Vec<Vec<PairTermJson>>,
}

#[derive(Debug, Serialize)]
pub struct PairTermJson {
    pub alpha: String,
    pub pi: String,
    pub coeff: String,
}

pub fn space_to_json(a: &TruncatedAlgebra, s: &CohomologySpace) -> CohomologyJson {
    let q = a.quiver();
    CohomologyJson {
        degree: s.degree,
        rows: s
            .row_dims
            .iter()
            .enumerate()
            .map(|(i, d)| (i.to_string(), *d))
            .collect(),
        total: s.total_dim(),
        representatives: s
            .reps
            .iter()
            .map(|r| {
                r.cochain
                    .terms()
                    .map(|(p, c)| PairTermJson {
                        alpha: q.path_string(&p.first),
                        pi: q.path_string(&p.second),
                        coeff: format_rational(c),
                    })
                    .collect()
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::builtins::{example83, linear, one_loop};

    fn lim() -> Limits {
        Limits::default()
    }

    fn e83(n: usize) -> TruncatedAlgebra {
        TruncatedAlgebra::new(example83(), n).unwrap()
    }

    fn loop_a(n: usize) -> TruncatedAlgebra {
        TruncatedAlgebra::new(one_loop(), n).unwrap()
    }

    /// Extracts the block sending row `j` of degree `n` into the pair basis
    /// of degree n+1, restricted to the target row.
    fn block(
        a: &TruncatedAlgebra,
        n: usize,
        j: usize,
        target_row: usize,
    ) -> RationalMatrix {
        let l = lim();
        let dom = pair_row_basis(a, n, j, &l).unwrap();
        let cod = pair_row_basis(a, n + 1, target_row, &l).unwrap();
        let cod_index: BTreeMap<&ParallelPair, usize> =
            cod.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut m = RationalMatrix::new(cod.len(), dom.len());
        for (col, p) in dom.iter().enumerate() {
            for (t, c) in coboundary_of_pair(a, n, p, &l).unwrap().terms() {
                if let Some(&row) = cod_index.get(t) {
                    m.add_to(row, col, c.clone());
                }
            }
        }
        m
    }

    #[test]
    fn degree_zero_block_matches_printed_matrix() {
        // Degree 0, row 0 block of the three-vertex example.
        let a = e83(3);
        let m = block(&a, 0, 0, 1);
        assert_eq!(
            m,
            RationalMatrix::from_rows(&[vec![-1, 1, 0], vec![0, 0, 0], vec![0, -1, 1]])
        );
    }

    #[test]
    fn even_block_row1_matches_printed_matrix() {
        // Row-1 block at k = 1, N = 3, after permuting to the reference
        // basis order (ax^{j-1}, x^j, x^{j-1}b, ax^{j-2}b).
        let a = e83(3);
        let m = block(&a, 2, 1, 2);
        let perm = [0usize, 2, 3, 1];
        let mut permuted = RationalMatrix::new(4, 3);
        for r in 0..4 {
            for c in 0..3 {
                permuted.set(r, c, m.get(perm[r], c));
            }
        }
        assert_eq!(
            permuted,
            RationalMatrix::from_rows(&[
                vec![-1, 1, 0],
                vec![0, 0, 0],
                vec![0, -1, 1],
                vec![-1, 0, 1]
            ])
        );
    }

    #[test]
    fn odd_block_is_the_printed_column() {
        // D_0^{2k+1} column (N-1, N, N-1, N-2)^T at N = 3, reference order.
        let a = e83(3);
        let m = block(&a, 1, 0, 2);
        let perm = [0usize, 2, 3, 1];
        let col: Vec<Rational> = (0..4).map(|r| m.get(perm[r], 0)).collect();
        assert_eq!(col, vec![rat(2), rat(3), rat(2), rat(1)]);
    }

    #[test]
    fn loop_even_blocks_vanish() {
        let a = loop_a(3);
        for n in [0usize, 2, 4] {
            for j in 0..2 {
                assert!(block(&a, n, j, j + 1).is_zero(), "n={n} j={j}");
            }
        }
    }

    #[test]
    fn fast_and_dual_assemblies_agree() {
        for a in [e83(3), loop_a(2), loop_a(4)] {
            for n in 0..=5 {
                let fast = dual_diff_matrix(&a, n, &lim()).unwrap();
                let slow = dual_diff_matrix_via_resolution(&a, n, &lim()).unwrap();
                assert_eq!(fast, slow, "degree {n}");
            }
        }
    }

    #[test]
    fn coboundary_squares_to_zero() {
        let a = e83(3);
        for n in 0..=4 {
            let d1 = dual_diff_matrix(&a, n, &lim()).unwrap();
            let d2 = dual_diff_matrix(&a, n + 1, &lim()).unwrap();
            assert!(d2.mul_matrix(&d1).is_zero(), "degree {n}");
        }
    }

    #[test]
    fn example83_dimension_table() {
        let a = e83(3);
        let dims: Vec<usize> = (0..=4)
            .map(|n| cohomology(&a, n, &lim()).unwrap().total_dim())
            .collect();
        assert_eq!(dims, vec![2, 3, 4, 4, 4]);
    }

    #[test]
    fn one_loop_dimensions() {
        for n_trunc in 2..=4 {
            let a = loop_a(n_trunc);
            let h0 = cohomology(&a, 0, &lim()).unwrap();
            assert_eq!(h0.total_dim(), n_trunc, "H^0 at N={n_trunc}");
            for n in 1..=6 {
                let h = cohomology(&a, n, &lim()).unwrap();
                assert_eq!(h.total_dim(), n_trunc - 1, "H^{n} at N={n_trunc}");
            }
        }
    }

    #[test]
    fn single_arrow_quiver_is_rigid() {
        let a = TruncatedAlgebra::new(linear(2), 2).unwrap();
        for n in 1..=5 {
            assert_eq!(cohomology(&a, n, &lim()).unwrap().total_dim(), 0, "H^{n}");
        }
    }

    #[test]
    fn center_matches_degree_zero() {
        for a in [e83(3), e83(4), loop_a(2), loop_a(5)] {
            let h0 = cohomology(&a, 0, &lim()).unwrap().total_dim();
            assert_eq!(h0, center_dimension(&a, &lim()).unwrap());
        }
    }

    #[test]
    fn injectivity_of_the_odd_blocks() {
        // D_0^{2k+1} has full column rank for all k ≥ 0.
        for a in [e83(3), e83(4), loop_a(3)] {
            for k in 0..=2 {
                let n = 2 * k + 1;
                let m = block(&a, n, 0, a.n() - 1);
                assert_eq!(linalg::rank(&m), m.cols(), "k={k}");
            }
        }
    }

    #[test]
    fn even_row0_blocks_injective_off_cycles() {
        // D_0^{2k} is injective for k > 0 unless the quiver is a cycle.
        let a = e83(3);
        for k in 1..=2 {
            let m = block(&a, 2 * k, 0, 1);
            assert_eq!(linalg::rank(&m), m.cols(), "k={k}");
        }
        // On the loop it is the zero map instead.
        let a = loop_a(3);
        let m = block(&a, 2, 0, 1);
        assert!(m.is_zero());
    }

    #[test]
    fn row_dims_sum_to_total_and_reps_are_cocycles() {
        for a in [e83(3), e83(4), loop_a(3)] {
            for n in 0..=5 {
                let h = cohomology(&a, n, &lim()).unwrap();
                assert_eq!(h.row_dims.iter().sum::<usize>(), h.total_dim());
                for r in &h.reps {
                    assert!(h.is_cocycle(&r.cochain).unwrap());
                    assert_eq!(r.cochain.rows(), vec![r.row]);
                }
            }
        }
    }

    #[test]
    fn row_components_split_cochains() {
        let a = e83(3);
        let q = a.quiver().clone();
        let mut z = DualCochain::zero(1);
        z.add_term(
            ParallelPair {
                first: q.parse_path("x").unwrap(),
                second: q.parse_path("x").unwrap(),
            },
            rat(1),
        );
        z.add_term(
            ParallelPair {
                first: q.parse_path("ax").unwrap(),
                second: q.parse_path("ax").unwrap(),
            },
            rat(2),
        );
        assert_eq!(z.rows(), vec![1, 2]);
        let r1 = z.row_component(1);
        let r2 = z.row_component(2);
        assert_eq!(r1.add(&r2), z);
        assert!(z.row_component(0).is_zero());
    }

    #[test]
    fn row_zero_vanishes_in_positive_degrees_off_cycles() {
        // Not asserted for oriented cycles, whose row-0 classes survive.
        for a in [e83(3), e83(4), TruncatedAlgebra::new(linear(3), 2).unwrap()] {
            for n in 1..=5 {
                let h = cohomology(&a, n, &lim()).unwrap();
                assert_eq!(h.row_dims[0], 0, "H^{n}_0");
            }
        }
        // Contrast: the loop keeps its row-0 even classes.
        let a = loop_a(3);
        assert_eq!(cohomology(&a, 2, &lim()).unwrap().row_dims[0], 1);
    }

    #[test]
    fn medal_reps_populate_even_rows() {
        let a = e83(4);
        let h = cohomology(&a, 2, &lim()).unwrap();
        let medal_rows: Vec<usize> = h
            .reps
            .iter()
            .filter(|r| r.from_medal)
            .map(|r| r.row)
            .collect();
        assert!(!medal_rows.is_empty());
        assert!(medal_rows.iter().all(|&r| (1..=a.n() - 2).contains(&r)));
    }

    #[test]
    fn reduce_kills_coboundaries() {
        let a = e83(3);
        let h1 = cohomology(&a, 1, &lim()).unwrap();
        // (a, a) is the coboundary of (v1, v1) in degree 0.
        let q = a.quiver().clone();
        let pa = ParallelPair {
            first: q.parse_path("a").unwrap(),
            second: q.parse_path("a").unwrap(),
        };
        let z = DualCochain::from_pair(1, pa);
        let coords = h1.reduce(&z).unwrap();
        assert!(coords.iter().all(Rational::is_zero));
    }

    #[test]
    fn reduce_rejects_non_cocycles() {
        let a = e83(3);
        let h0 = cohomology(&a, 0, &lim()).unwrap();
        let q = a.quiver().clone();
        let v1 = q.parse_path("v1").unwrap();
        let z = DualCochain::from_pair(0, ParallelPair { first: v1.clone(), second: v1 });
        assert!(matches!(h0.reduce(&z), Err(Error::NotACocycle { .. })));
    }
}
