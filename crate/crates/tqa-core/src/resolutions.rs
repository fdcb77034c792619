//! The two projective bimodule resolutions of A.
//!
//! The reduced bar resolution Q has degree-n part spanned by words
//! `α_0[α_1|...|α_n]α_{n+1}` (inner components of length 1..N-1, everything
//! composable), differential `b` and contraction `s`. The minimal resolution
//! P has degree-2k part built on paths of length kN and degree-(2k+1) part
//! on length kN+1, differential `d` and contraction `r`. Zero summands
//! (truncated products) are dropped during evaluation; a chain never stores
//! a zero coefficient.

use std::collections::BTreeMap;

use crate::algebra::TruncatedAlgebra;
use crate::error::{Error, Limits, Result};
use crate::quiver::Path;
use crate::rational::{rat, Rational};
use num::Zero;

/// Bar word `left [inner_1 | ... | inner_n] right`; degree = inner count.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QWord {
    pub left: Path,
    pub inner: Vec<Path>,
    pub right: Path,
}

/// Minimal-resolution word `left ⊗ middle ⊗ right`; the middle has length
/// kN in degree 2k and kN+1 in degree 2k+1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PWord {
    pub left: Path,
    pub middle: Path,
    pub right: Path,
}

impl QWord {
    pub fn degree(&self) -> usize {
        self.inner.len()
    }

    /// Both outer components are vertices.
    pub fn is_generator(&self) -> bool {
        self.left.is_vertex() && self.right.is_vertex()
    }
}

impl PWord {
    pub fn is_generator(&self) -> bool {
        self.left.is_vertex() && self.right.is_vertex()
    }
}

/// Middle length of a P-word of homological degree n.
pub fn middle_len(n: usize, n_trunc: usize) -> usize {
    let k = n / 2;
    if n % 2 == 0 {
        k * n_trunc
    } else {
        k * n_trunc + 1
    }
}

/// Formal rational combination of degree-n words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain<W: Ord> {
    pub degree: usize,
    terms: BTreeMap<W, Rational>,
}

pub type QChain = Chain<QWord>;
pub type PChain = Chain<PWord>;

impl<W: Ord + Clone> Chain<W> {
    pub fn zero(degree: usize) -> Self {
        Chain {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_word(degree: usize, w: W) -> Self {
        let mut c = Chain::zero(degree);
        c.add_term(w, rat(1));
        c
    }

    pub fn add_term(&mut self, w: W, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn add(&self, other: &Chain<W>) -> Chain<W> {
        assert_eq!(self.degree, other.degree, "degree mismatch in chain sum");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Chain<W>) -> Chain<W> {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Chain<W> {
        let mut out = Chain::zero(self.degree);
        if c.is_zero() {
            return out;
        }
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&W, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Left- and right-multiplies a Q-chain by basis paths, truncating.
pub fn q_bimodule_act(a: &TruncatedAlgebra, left: &Path, c: &QChain, right: &Path) -> QChain {
    let mut out = QChain::zero(c.degree);
    for (w, coeff) in c.terms() {
        let Some(l) = a.mul_paths(left, &w.left) else {
            continue;
        };
        let Some(r) = a.mul_paths(&w.right, right) else {
            continue;
        };
        out.add_term(
            QWord {
                left: l,
                inner: w.inner.clone(),
                right: r,
            },
            coeff.clone(),
        );
    }
    out
}

/// Left- and right-multiplies a P-chain by basis paths, truncating.
pub fn p_bimodule_act(a: &TruncatedAlgebra, left: &Path, c: &PChain, right: &Path) -> PChain {
    let mut out = PChain::zero(c.degree);
    for (w, coeff) in c.terms() {
        let Some(l) = a.mul_paths(left, &w.left) else {
            continue;
        };
        let Some(r) = a.mul_paths(&w.right, right) else {
            continue;
        };
        out.add_term(
            PWord {
                left: l,
                middle: w.middle.clone(),
                right: r,
            },
            coeff.clone(),
        );
    }
    out
}

/// Bar differential on a single basis word.
fn bar_diff_word(a: &TruncatedAlgebra, w: &QWord) -> QChain {
    let n = w.degree();
    assert!(n >= 1);
    let mut out = QChain::zero(n - 1);

    // Leading term: merge the first inner component into the left outer.
    if let Some(l) = a.mul_paths(&w.left, &w.inner[0]) {
        out.add_term(
            QWord {
                left: l,
                inner: w.inner[1..].to_vec(),
                right: w.right.clone(),
            },
            rat(1),
        );
    }
    // Interior merges, alternating signs (i runs 1..n-1).
    for i in 1..n {
        let sign = if i % 2 == 0 { rat(1) } else { rat(-1) };
        if let Some(merged) = a.mul_paths(&w.inner[i - 1], &w.inner[i]) {
            let mut inner = Vec::with_capacity(n - 1);
            inner.extend_from_slice(&w.inner[..i - 1]);
            inner.push(merged);
            inner.extend_from_slice(&w.inner[i + 1..]);
            out.add_term(
                QWord {
                    left: w.left.clone(),
                    inner,
                    right: w.right.clone(),
                },
                sign,
            );
        }
    }
    // Trailing term: merge the last inner component into the right outer.
    let sign = if n % 2 == 0 { rat(1) } else { rat(-1) };
    if let Some(r) = a.mul_paths(&w.inner[n - 1], &w.right) {
        out.add_term(
            QWord {
                left: w.left.clone(),
                inner: w.inner[..n - 1].to_vec(),
                right: r,
            },
            sign,
        );
    }
    out
}

/// The reduced bar differential b, extended linearly. Errors on degree 0.
pub fn bar_diff(a: &TruncatedAlgebra, c: &QChain) -> Result<QChain> {
    if c.degree == 0 {
        return Err(Error::DegreeZero);
    }
    let mut out = QChain::zero(c.degree - 1);
    for (w, coeff) in c.terms() {
        out = out.add(&bar_diff_word(a, w).scale(coeff));
    }
    Ok(out)
}

/// Minimal-resolution differential on a single basis word.
fn min_diff_word(a: &TruncatedAlgebra, w: &PWord, degree: usize) -> PChain {
    assert!(degree >= 1);
    let q = a.quiver();
    let nn = a.n();
    let mut out = PChain::zero(degree - 1);
    let s = w.middle.len();
    debug_assert_eq!(s, middle_len(degree, nn));

    if degree % 2 == 0 {
        // d_{2k}: slide a length-j prefix left and the complement right.
        let k = degree / 2;
        let target_mid = (k - 1) * nn + 1;
        for j in 0..nn {
            let prefix = q.subpath(&w.middle, 0, j);
            let mid = q.subpath(&w.middle, j, j + target_mid);
            let suffix = q.subpath(&w.middle, j + target_mid, s);
            let Some(l) = a.mul_paths(&w.left, &prefix) else {
                continue;
            };
            let Some(r) = a.mul_paths(&suffix, &w.right) else {
                continue;
            };
            out.add_term(
                PWord {
                    left: l,
                    middle: mid,
                    right: r,
                },
                rat(1),
            );
        }
    } else {
        // d_{2k+1}: two-term difference.
        let first = q.subpath(&w.middle, 0, 1);
        let rest = q.subpath(&w.middle, 1, s);
        if let Some(l) = a.mul_paths(&w.left, &first) {
            out.add_term(
                PWord {
                    left: l,
                    middle: rest,
                    right: w.right.clone(),
                },
                rat(1),
            );
        }
        let head = q.subpath(&w.middle, 0, s - 1);
        let last = q.subpath(&w.middle, s - 1, s);
        if let Some(r) = a.mul_paths(&last, &w.right) {
            out.add_term(
                PWord {
                    left: w.left.clone(),
                    middle: head,
                    right: r,
                },
                rat(-1),
            );
        }
    }
    out
}

/// The minimal-resolution differential d. Errors on degree 0.
pub fn min_diff(a: &TruncatedAlgebra, c: &PChain) -> Result<PChain> {
    if c.degree == 0 {
        return Err(Error::DegreeZero);
    }
    let mut out = PChain::zero(c.degree - 1);
    for (w, coeff) in c.terms() {
        out = out.add(&min_diff_word(a, w, c.degree).scale(coeff));
    }
    Ok(out)
}

/// Contraction s of the reduced bar resolution: shifts a positive-length
/// left outer component into the bracket, zero otherwise.
pub fn contraction_s(a: &TruncatedAlgebra, c: &QChain) -> QChain {
    let q = a.quiver();
    let mut out = QChain::zero(c.degree + 1);
    for (w, coeff) in c.terms() {
        if w.left.is_vertex() {
            continue;
        }
        let mut inner = Vec::with_capacity(w.inner.len() + 1);
        inner.push(w.left.clone());
        inner.extend_from_slice(&w.inner);
        out.add_term(
            QWord {
                left: q.vertex_path(w.left.source()),
                inner,
                right: w.right.clone(),
            },
            coeff.clone(),
        );
    }
    out
}

/// Contraction r of the minimal resolution.
pub fn contraction_r(a: &TruncatedAlgebra, c: &PChain) -> PChain {
    let q = a.quiver();
    let nn = a.n();
    let degree = c.degree;
    let mut out = PChain::zero(degree + 1);

    for (w, coeff) in c.terms() {
        if degree % 2 == 0 {
            // r_{2k}: slide cuts of the left component into the middle. The
            // new middle is the first kN+1 arrows of (left tail)·(middle);
            // at k = 0 the cut lands inside the left tail itself.
            let k = degree / 2;
            let alen = w.left.len();
            let target_mid = k * nn + 1;
            for j in 1..=alen {
                let left_part = q.subpath(&w.left, 0, j - 1);
                let tail_of_left = q.subpath(&w.left, j - 1, alen);
                let combined = q
                    .concat(&tail_of_left, &w.middle)
                    .expect("cut pieces of a composable word compose");
                let mid = q.subpath(&combined, 0, target_mid);
                let rest = q.subpath(&combined, target_mid, combined.len());
                let Some(r) = a.mul_paths(&rest, &w.right) else {
                    continue;
                };
                out.add_term(
                    PWord {
                        left: left_part,
                        middle: mid,
                        right: r,
                    },
                    coeff.clone(),
                );
            }
        } else {
            // r_{2k+1}: single term when the left component has maximal
            // length N-1, zero otherwise.
            if w.left.len() != nn - 1 {
                continue;
            }
            let mid = q
                .concat(&w.left, &w.middle)
                .expect("left and middle of a valid word compose");
            out.add_term(
                PWord {
                    left: q.vertex_path(w.left.source()),
                    middle: mid,
                    right: w.right.clone(),
                },
                coeff.clone(),
            );
        }
    }
    out
}

/// Augmentation: multiply the two tensor factors of a degree-0 chain in A.
pub fn augment_q(a: &TruncatedAlgebra, c: &QChain) -> Result<crate::algebra::AlgebraElement> {
    if c.degree != 0 {
        return Err(Error::Precondition("augment requires degree 0".into()));
    }
    let mut out = crate::algebra::AlgebraElement::zero();
    for (w, coeff) in c.terms() {
        if let Some(p) = a.mul_paths(&w.left, &w.right) {
            out.add_term(p, coeff.clone());
        }
    }
    Ok(out)
}

pub fn augment_p(a: &TruncatedAlgebra, c: &PChain) -> Result<crate::algebra::AlgebraElement> {
    if c.degree != 0 {
        return Err(Error::Precondition("augment requires degree 0".into()));
    }
    let mut out = crate::algebra::AlgebraElement::zero();
    for (w, coeff) in c.terms() {
        // Degree-0 middles are vertices and disappear in the product.
        if let Some(p) = a.mul_paths(&w.left, &w.right) {
            out.add_term(p, coeff.clone());
        }
    }
    Ok(out)
}

/// Full k-basis of Q_n: all composable words with basis-path outer
/// components and inner components of length 1..N-1.
pub fn q_basis(a: &TruncatedAlgebra, n: usize, limits: &Limits) -> Result<Vec<QWord>> {
    let inner_words = q_generator_basis(a, n, limits)?;
    let q = a.quiver();
    let mut out = Vec::new();
    for w in &inner_words {
        let (o, t) = (w.left.source(), w.right.target());
        for len_l in 0..a.n() {
            for l in q.paths(len_l, limits)? {
                if l.target() != o {
                    continue;
                }
                for len_r in 0..a.n() {
                    for r in q.paths(len_r, limits)? {
                        if r.source() != t {
                            continue;
                        }
                        out.push(QWord {
                            left: l.clone(),
                            inner: w.inner.clone(),
                            right: r.clone(),
                        });
                        limits.check_words(out.len(), "enumerating bar words")?;
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Generator basis of Q_n: words `1[α_1|...|α_n]1`.
pub fn q_generator_basis(a: &TruncatedAlgebra, n: usize, limits: &Limits) -> Result<Vec<QWord>> {
    let q = a.quiver();
    if n == 0 {
        return Ok((0..q.vertex_count())
            .map(|v| QWord {
                left: q.vertex_path(v),
                inner: Vec::new(),
                right: q.vertex_path(v),
            })
            .collect());
    }
    // Components of length 1..N-1, chained by composability.
    let mut pieces: Vec<Path> = Vec::new();
    for len in 1..a.n() {
        pieces.extend(q.paths(len, limits)?);
    }
    pieces.sort();

    let mut partial: Vec<Vec<Path>> = pieces.iter().map(|p| vec![p.clone()]).collect();
    for _ in 1..n {
        let mut next = Vec::new();
        for word in &partial {
            let t = word.last().unwrap().target();
            for p in &pieces {
                if p.source() == t {
                    let mut w = word.clone();
                    w.push(p.clone());
                    next.push(w);
                }
            }
            limits.check_words(next.len(), "enumerating bar generator words")?;
        }
        partial = next;
    }
    let mut out: Vec<QWord> = partial
        .into_iter()
        .map(|inner| QWord {
            left: q.vertex_path(inner[0].source()),
            right: q.vertex_path(inner.last().unwrap().target()),
            inner,
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Full k-basis of P_n.
pub fn p_basis(a: &TruncatedAlgebra, n: usize, limits: &Limits) -> Result<Vec<PWord>> {
    let q = a.quiver();
    let mids = q.paths(middle_len(n, a.n()), limits)?;
    let mut out = Vec::new();
    for m in &mids {
        for len_l in 0..a.n() {
            for l in q.paths(len_l, limits)? {
                if l.target() != m.source() {
                    continue;
                }
                for len_r in 0..a.n() {
                    for r in q.paths(len_r, limits)? {
                        if r.source() != m.target() {
                            continue;
                        }
                        out.push(PWord {
                            left: l.clone(),
                            middle: m.clone(),
                            right: r.clone(),
                        });
                        limits.check_words(out.len(), "enumerating minimal-resolution words")?;
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Generator basis of P_n: words `1 ⊗ v_1...v_s ⊗ 1`.
pub fn p_generator_basis(a: &TruncatedAlgebra, n: usize, limits: &Limits) -> Result<Vec<PWord>> {
    let q = a.quiver();
    let mids = q.paths(middle_len(n, a.n()), limits)?;
    Ok(mids
        .into_iter()
        .map(|m| PWord {
            left: q.vertex_path(m.source()),
            right: q.vertex_path(m.target()),
            middle: m,
        })
        .collect())
}

/// Renders a Q-chain in bar notation, vertices printed as `1`.
pub fn render_q_chain(a: &TruncatedAlgebra, c: &QChain) -> String {
    let q = a.quiver();
    if c.is_zero() {
        return "0".into();
    }
    let part = |p: &Path| {
        if p.is_vertex() {
            "1".to_string()
        } else {
            q.path_string_pow(p)
        }
    };
    c.terms()
        .map(|(w, coeff)| {
            let inner = w
                .inner
                .iter()
                .map(|p| q.path_string_pow(p))
                .collect::<Vec<_>>()
                .join("|");
            let body = if w.inner.is_empty() {
                format!("{}⊗{}", part(&w.left), part(&w.right))
            } else {
                format!("{}[{}]{}", part(&w.left), inner, part(&w.right))
            };
            format!("{}·{}", crate::rational::format_rational(coeff), body)
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Renders a P-chain in tensor notation.
pub fn render_p_chain(a: &TruncatedAlgebra, c: &PChain) -> String {
    let q = a.quiver();
    if c.is_zero() {
        return "0".into();
    }
    let part = |p: &Path| {
        if p.is_vertex() {
            "1".to_string()
        } else {
            q.path_string_pow(p)
        }
    };
    c.terms()
        .map(|(w, coeff)| {
            let body = if w.middle.is_vertex() {
                format!("{}⊗{}", part(&w.left), part(&w.right))
            } else {
                format!("{}⊗{}⊗{}", part(&w.left), q.path_string_pow(&w.middle), part(&w.right))
            };
            format!("{}·{}", crate::rational::format_rational(coeff), body)
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Decomposes a full basis word into (left, generator word, right).
fn q_word_parts(a: &TruncatedAlgebra, w: &QWord) -> (Path, QWord, Path) {
    let q = a.quiver();
    let (o, t) = match w.inner.first() {
        Some(first) => (first.source(), w.inner.last().unwrap().target()),
        None => (w.left.target(), w.left.target()),
    };
    (
        w.left.clone(),
        QWord {
            left: q.vertex_path(o),
            inner: w.inner.clone(),
            right: q.vertex_path(t),
        },
        w.right.clone(),
    )
}

fn p_word_parts(a: &TruncatedAlgebra, w: &PWord) -> (Path, PWord, Path) {
    let q = a.quiver();
    (
        w.left.clone(),
        PWord {
            left: q.vertex_path(w.middle.source()),
            middle: w.middle.clone(),
            right: q.vertex_path(w.middle.target()),
        },
        w.right.clone(),
    )
}

/// Exhaustively checks the resolution identities on every basis word up to
/// `max_degree`: b²=0, d²=0, sb+bs=id and rd+dr=id in degrees ≥ 1, the
/// degree-0 telescoping identity, ε∘b₁=0, and that b and d are bimodule
/// maps. Each failing check carries its first counterexample.
pub fn verify_resolutions(
    a: &TruncatedAlgebra,
    max_degree: usize,
    limits: &Limits,
) -> Result<crate::report::Report> {
    if max_degree < 1 {
        return Err(Error::Precondition("max_degree must be at least 1".into()));
    }
    let mut report = crate::report::Report::default();

    for n in 2..=max_degree {
        let words = q_basis(a, n, limits)?;
        let mut witness = None;
        for w in &words {
            let c = QChain::from_word(n, w.clone());
            let bb = bar_diff(a, &bar_diff(a, &c)?)?;
            if !bb.is_zero() {
                witness = Some(render_q_chain(a, &c));
                break;
            }
        }
        report.record("b∘b = 0", Some(n), words.len(), witness);

        let words = p_basis(a, n, limits)?;
        let mut witness = None;
        for w in &words {
            let c = PChain::from_word(n, w.clone());
            let dd = min_diff(a, &min_diff(a, &c)?)?;
            if !dd.is_zero() {
                witness = Some(render_p_chain(a, &c));
                break;
            }
        }
        report.record("d∘d = 0", Some(n), words.len(), witness);
    }

    for n in 1..=max_degree {
        let words = q_basis(a, n, limits)?;
        let mut witness = None;
        for w in &words {
            let c = QChain::from_word(n, w.clone());
            let sb = contraction_s(a, &bar_diff(a, &c)?);
            let bs = bar_diff(a, &contraction_s(a, &c))?;
            if sb.add(&bs) != c {
                witness = Some(render_q_chain(a, &c));
                break;
            }
        }
        report.record("s∘b + b∘s = id", Some(n), words.len(), witness);

        let words = p_basis(a, n, limits)?;
        let mut witness = None;
        for w in &words {
            let c = PChain::from_word(n, w.clone());
            let rd = contraction_r(a, &min_diff(a, &c)?);
            let dr = min_diff(a, &contraction_r(a, &c))?;
            if rd.add(&dr) != c {
                witness = Some(render_p_chain(a, &c));
                break;
            }
        }
        report.record("r∘d + d∘r = id", Some(n), words.len(), witness);
    }

    // Degree-0 telescoping: d₁∘r₀(α⊗β) = α⊗β − 1⊗αβ.
    {
        let words = p_basis(a, 0, limits)?;
        let q = a.quiver();
        let mut witness = None;
        for w in &words {
            let c = PChain::from_word(0, w.clone());
            let lhs = min_diff(a, &contraction_r(a, &c))?;
            let mut rhs = c.clone();
            if let Some(ab) = a.mul_paths(&w.left, &w.right) {
                let v = q.vertex_path(w.left.source());
                rhs.add_term(
                    PWord {
                        left: v.clone(),
                        middle: v,
                        right: ab,
                    },
                    rat(-1),
                );
            }
            if lhs != rhs {
                witness = Some(render_p_chain(a, &c));
                break;
            }
        }
        report.record("d₁∘r₀ = id − unit section", Some(0), words.len(), witness);
    }

    // ε∘b₁ = 0.
    {
        let words = q_basis(a, 1, limits)?;
        let mut witness = None;
        for w in &words {
            let c = QChain::from_word(1, w.clone());
            let eb = augment_q(a, &bar_diff(a, &c)?)?;
            if !eb.is_zero() {
                witness = Some(render_q_chain(a, &c));
                break;
            }
        }
        report.record("ε∘b₁ = 0", Some(1), words.len(), witness);
    }

    // Differentials are bimodule maps: evaluating on γ·w·δ equals
    // γ·(evaluation on w)·δ.
    for n in 1..=max_degree {
        let words = q_basis(a, n, limits)?;
        let mut witness = None;
        for w in &words {
            let (l, gen, r) = q_word_parts(a, w);
            let direct = bar_diff(a, &QChain::from_word(n, w.clone()))?;
            let via_gen = q_bimodule_act(a, &l, &bar_diff(a, &QChain::from_word(n, gen))?, &r);
            if direct != via_gen {
                witness = Some(render_q_chain(a, &QChain::from_word(n, w.clone())));
                break;
            }
        }
        report.record("b is a bimodule map", Some(n), words.len(), witness);

        let words = p_basis(a, n, limits)?;
        let mut witness = None;
        for w in &words {
            let (l, gen, r) = p_word_parts(a, w);
            let direct = min_diff(a, &PChain::from_word(n, w.clone()))?;
            let via_gen = p_bimodule_act(a, &l, &min_diff(a, &PChain::from_word(n, gen))?, &r);
            if direct != via_gen {
                witness = Some(render_p_chain(a, &PChain::from_word(n, w.clone())));
                break;
            }
        }
        report.record("d is a bimodule map", Some(n), words.len(), witness);
    }

    Ok(report)
}
