//! The complex of compositions (ordered partitions).
//!
//! C_n(m, N) is spanned by compositions of m into n parts, interior parts
//! strictly positive, taken modulo compositions containing a part >= N.
//! The differential merges adjacent parts with alternating signs. The
//! distinguished sums A, B and their zero-padded variants package the tuple
//! sums that define the comparison morphism from the minimal resolution to
//! the bar resolution.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{rat, Rational};
use num::Zero;

/// A composition with positive interior parts; first and last may be zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    /// Validates interior positivity.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Precondition("composition needs at least one part".into()));
        }
        if parts.len() > 2 && parts[1..parts.len() - 1].iter().any(|&p| p == 0) {
            return Err(Error::Precondition(
                "interior parts of a composition must be positive".into(),
            ));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Represents zero in C_n(m, N) when some part reaches N.
    pub fn is_reduced(&self, n_trunc: usize) -> bool {
        self.parts.iter().all(|&p| p < n_trunc)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "[{}]", inner.join(","))
    }
}

/// Rational combination of compositions with common part count and total,
/// reduced eagerly modulo parts >= N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionSum {
    n_trunc: usize,
    terms: BTreeMap<Composition, Rational>,
}

impl CompositionSum {
    pub fn zero(n_trunc: usize) -> Self {
        CompositionSum {
            n_trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_composition(n_trunc: usize, c: Composition) -> Self {
        let mut s = CompositionSum::zero(n_trunc);
        s.add_term(c, rat(1));
        s
    }

    pub fn n_trunc(&self) -> usize {
        self.n_trunc
    }

    pub fn add_term(&mut self, c: Composition, coeff: Rational) {
        if coeff.is_zero() || !c.is_reduced(self.n_trunc) {
            return;
        }
        if let Some((first, _)) = self.terms.iter().next() {
            debug_assert_eq!(first.part_count(), c.part_count(), "mixed part counts");
            debug_assert_eq!(first.total(), c.total(), "mixed totals");
        }
        match self.terms.entry(c) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn add(&self, other: &CompositionSum) -> CompositionSum {
        assert_eq!(self.n_trunc, other.n_trunc);
        let mut out = self.clone();
        for (c, v) in &other.terms {
            out.add_term(c.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, coeff: &Rational) -> CompositionSum {
        let mut out = CompositionSum::zero(self.n_trunc);
        for (c, v) in &self.terms {
            out.add_term(c.clone(), v.clone() * coeff.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &Rational)> {
        self.terms.iter()
    }

    /// Prepends a part, as in the juxtaposition [j, s].
    pub fn prepend(&self, part: usize) -> CompositionSum {
        let mut out = CompositionSum::zero(self.n_trunc);
        for (c, v) in &self.terms {
            let mut parts = Vec::with_capacity(c.part_count() + 1);
            parts.push(part);
            parts.extend_from_slice(c.parts());
            out.add_term(Composition { parts }, v.clone());
        }
        out
    }
}

/// The differential D_N: alternating merge of adjacent parts, reduced
/// modulo parts >= N. Requires at least two parts.
pub fn comp_diff(s: &CompositionSum) -> Result<CompositionSum> {
    let mut out = CompositionSum::zero(s.n_trunc());
    for (c, coeff) in s.terms() {
        let n = c.part_count();
        if n < 2 {
            return Err(Error::Precondition(
                "differential of a one-part composition".into(),
            ));
        }
        for j in 1..n {
            let sign = if j % 2 == 1 { rat(1) } else { rat(-1) };
            let mut parts = Vec::with_capacity(n - 1);
            parts.extend_from_slice(&c.parts()[..j - 1]);
            parts.push(c.parts()[j - 1] + c.parts()[j]);
            parts.extend_from_slice(&c.parts()[j + 1..]);
            out.add_term(Composition { parts }, sign * coeff.clone());
        }
    }
    Ok(out)
}

/// A_M^k: the sum of [x_1, 1, x_2, 1, ..., x_k, 1, M − Σx_i] over all
/// tuples x in {1..N−1}^k. Requires k >= 1 and M >= k(N−1).
pub fn build_a(k: usize, m: usize, n_trunc: usize) -> Result<CompositionSum> {
    if k < 1 {
        return Err(Error::Precondition("A_M^k needs k >= 1".into()));
    }
    check_m(k, m, n_trunc)?;
    let mut out = CompositionSum::zero(n_trunc);
    for x in tuples(k, n_trunc) {
        let sum: usize = x.iter().sum();
        let mut parts = Vec::with_capacity(2 * k + 1);
        for xi in &x {
            parts.push(*xi);
            parts.push(1);
        }
        parts.push(m - sum);
        out.add_term(Composition { parts }, rat(1));
    }
    Ok(out)
}

/// B_M^k: the sum of [1, x_1, 1, ..., x_k, 1, M − Σx_i]; B_M^0 = [1, M].
/// Requires M >= k(N−1).
pub fn build_b(k: usize, m: usize, n_trunc: usize) -> Result<CompositionSum> {
    check_m(k, m, n_trunc)?;
    if k == 0 {
        let mut out = CompositionSum::zero(n_trunc);
        out.add_term(Composition { parts: vec![1, m] }, rat(1));
        return Ok(out);
    }
    Ok(build_a(k, m, n_trunc)?.prepend(1))
}

/// Ã_M^k = [0, A_M^k].
pub fn build_a_tilde(k: usize, m: usize, n_trunc: usize) -> Result<CompositionSum> {
    Ok(build_a(k, m, n_trunc)?.prepend(0))
}

/// B̃_M^k = [0, B_M^k].
pub fn build_b_tilde(k: usize, m: usize, n_trunc: usize) -> Result<CompositionSum> {
    Ok(build_b(k, m, n_trunc)?.prepend(0))
}

fn check_m(k: usize, m: usize, n_trunc: usize) -> Result<()> {
    if n_trunc < 2 {
        return Err(Error::Precondition("truncation length must be >= 2".into()));
    }
    if m < k * (n_trunc - 1) {
        return Err(Error::Precondition(format!(
            "need M >= k(N-1): M={m}, k={k}, N={n_trunc}"
        )));
    }
    Ok(())
}

/// All tuples in {1..N−1}^k, lexicographic.
fn tuples(k: usize, n_trunc: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in &out {
            for x in 1..n_trunc {
                let mut t2 = t.clone();
                t2.push(x);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}
