//! Parser for the class-expression mini-syntax: `coeff:(alpha,pi)` terms
//! joined by `+`, with paths written as arrow-label strings (`^` powers
//! allowed, `x^0` for a vertex).

use tqa_core::cohomology::{degree_for_pair_len, DualCochain};
use tqa_core::error::{Error, Result};
use tqa_core::quiver::ParallelPair;
use tqa_core::rational::parse_rational;
use tqa_core::TruncatedAlgebra;

pub fn parse_class(a: &TruncatedAlgebra, text: &str) -> Result<DualCochain> {
    let q = a.quiver();
    let mut degree: Option<usize> = None;
    let mut terms = Vec::new();

    for raw in text.split('+') {
        let term = raw.trim();
        if term.is_empty() {
            return Err(Error::ClassExpr("empty term".into()));
        }
        let (coeff_str, rest) = term
            .split_once(':')
            .ok_or_else(|| Error::ClassExpr(format!("missing `:` in term `{term}`")))?;
        let coeff = parse_rational(coeff_str)
            .ok_or_else(|| Error::ClassExpr(format!("bad coefficient `{coeff_str}`")))?;
        let rest = rest.trim();
        let inner = rest
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::ClassExpr(format!("expected `(alpha,pi)` in `{term}`")))?;
        let (alpha_str, pi_str) = inner
            .split_once(',')
            .ok_or_else(|| Error::ClassExpr(format!("expected two paths in `{term}`")))?;
        let alpha = q.parse_path(alpha_str.trim())?;
        let pi = q.parse_path(pi_str.trim())?;
        if alpha.source() != pi.source() || alpha.target() != pi.target() {
            return Err(Error::ClassExpr(format!(
                "paths in `{term}` are not parallel"
            )));
        }
        if alpha.len() >= a.n() {
            return Err(Error::ClassExpr(format!(
                "first path in `{term}` has length >= N"
            )));
        }
        let d = degree_for_pair_len(pi.len(), a.n()).ok_or_else(|| {
            Error::ClassExpr(format!(
                "second path length {} is not kN or kN+1 for N = {}",
                pi.len(),
                a.n()
            ))
        })?;
        match degree {
            None => degree = Some(d),
            Some(existing) if existing != d => {
                return Err(Error::ClassExpr(format!(
                    "terms of mixed homological degree ({existing} and {d})"
                )));
            }
            _ => {}
        }
        terms.push((ParallelPair { first: alpha, second: pi }, coeff));
    }

    let degree = degree.ok_or_else(|| Error::ClassExpr("empty expression".into()))?;
    let mut out = DualCochain::zero(degree);
    for (p, c) in terms {
        out.add_term(p, c);
    }
    Ok(out)
}

