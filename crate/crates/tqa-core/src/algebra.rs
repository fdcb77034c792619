//! The truncated quiver algebra A = kΔ/(Δ_N).
//!
//! Basis paths are the paths of length strictly below the truncation
//! length N; multiplication is concatenation, with products of length N or
//! more (and endpoint mismatches) equal to zero.

use std::collections::BTreeMap;

use crate::error::{Error, Limits, Result};
use crate::quiver::{Path, Quiver};
use crate::rational::{format_rational, Rational};
use num::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedAlgebra {
    quiver: Quiver,
    n_trunc: usize,
}

/// Finite rational combination of basis paths (all of length < N).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<Path, Rational>,
}

impl TruncatedAlgebra {
    /// Requires N >= 2.
    pub fn new(quiver: Quiver, n_trunc: usize) -> Result<Self> {
        if n_trunc < 2 {
            return Err(Error::Validation(format!(
                "truncation length must be at least 2, got {n_trunc}"
            )));
        }
        Ok(TruncatedAlgebra { quiver, n_trunc })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// The truncation length N.
    pub fn n(&self) -> usize {
        self.n_trunc
    }

    /// All basis paths, lengths 0 through N-1, in canonical order.
    pub fn basis(&self, limits: &Limits) -> Result<Vec<Path>> {
        let mut out = Vec::new();
        for len in 0..self.n_trunc {
            out.extend(self.quiver.paths(len, limits)?);
        }
        Ok(out)
    }

    pub fn dim(&self, limits: &Limits) -> Result<usize> {
        Ok(self.basis(limits)?.len())
    }

    /// The unit: the sum of all vertices.
    pub fn unit(&self) -> AlgebraElement {
        let mut e = AlgebraElement::default();
        for v in 0..self.quiver.vertex_count() {
            e.add_term(self.quiver.vertex_path(v), Rational::from_integer(1.into()));
        }
        e
    }

    pub fn element_from_path(&self, p: &Path) -> AlgebraElement {
        let mut e = AlgebraElement::default();
        if p.len() < self.n_trunc {
            e.add_term(p.clone(), Rational::from_integer(1.into()));
        }
        e
    }

    /// Product of two basis paths in A: concatenation, or `None` when the
    /// endpoints mismatch or the result reaches length N.
    pub fn mul_paths(&self, p: &Path, r: &Path) -> Option<Path> {
        if p.len() + r.len() >= self.n_trunc {
            return None;
        }
        self.quiver.concat(p, r)
    }

    /// Checks that an element is structurally valid over this algebra:
    /// every key is a composable path of this quiver of length below N.
    pub fn check_element(&self, e: &AlgebraElement) -> Result<()> {
        for (p, _) in e.terms() {
            let ok = if p.is_vertex() {
                p.source() < self.quiver.vertex_count()
            } else {
                p.len() < self.n_trunc
                    && self
                        .quiver
                        .path_from_arrows(p.arrows())
                        .is_some_and(|q| &q == p)
            };
            if !ok {
                return Err(Error::MixedAlgebra);
            }
        }
        Ok(())
    }

    /// [`multiply`](Self::multiply) with operand validation; rejects
    /// elements that do not live over this algebra.
    pub fn multiply_checked(
        &self,
        u: &AlgebraElement,
        v: &AlgebraElement,
    ) -> Result<AlgebraElement> {
        self.check_element(u)?;
        self.check_element(v)?;
        Ok(self.multiply(u, v))
    }

    /// Bilinear extension of path concatenation with truncation.
    pub fn multiply(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::default();
        for (p, cp) in &u.terms {
            for (r, cr) in &v.terms {
                if let Some(pr) = self.mul_paths(p, r) {
                    out.add_term(pr, cp.clone() * cr.clone());
                }
            }
        }
        out
    }

    pub fn render_element(&self, e: &AlgebraElement) -> String {
        if e.terms.is_empty() {
            return "0".to_string();
        }
        e.terms
            .iter()
            .map(|(p, c)| format!("{}*{}", format_rational(c), self.quiver.path_string(p)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, p: Path, c: Rational) {
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

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> AlgebraElement {
        let mut out = AlgebraElement::default();
        if c.is_zero() {
            return out;
        }
        for (p, v) in &self.terms {
            out.add_term(p.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &Path) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }
}
