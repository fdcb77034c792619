//! Comparison morphisms between the two resolutions.
//!
//! F maps the minimal resolution into the reduced bar resolution by
//! bracketing the middle path in every way prescribed by a tuple sum; G maps
//! back, collapsing a bar word to a single tensor (even degrees) or a
//! sliding sum (odd degrees) gated on truncated products. F is implemented
//! twice on purpose — the direct tuple sum, and φ applied to the composition
//! sums Ã/B̃ — and their agreement is a standing check.

use crate::algebra::TruncatedAlgebra;
use crate::composition::{
    build_a, build_a_tilde, build_b, build_b_tilde, comp_diff, Composition, CompositionSum,
};
use crate::error::{Error, Limits, Result};
use crate::quiver::Path;
use crate::rational::rat;
use crate::report::Report;
use crate::resolutions::{
    bar_diff, middle_len, min_diff, p_bimodule_act, p_generator_basis, q_bimodule_act,
    q_generator_basis, render_p_chain, render_q_chain, PChain, PWord, QChain, QWord,
};

/// All tuples in {1..N-1}^k in lexicographic order.
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

fn f_word(a: &TruncatedAlgebra, w: &PWord, degree: usize) -> QChain {
    let q = a.quiver();
    let nn = a.n();
    let k = degree / 2;
    let s = w.middle.len();
    debug_assert_eq!(s, middle_len(degree, nn));

    let mut gen_out = QChain::zero(degree);
    if degree == 0 {
        gen_out.add_term(
            QWord {
                left: q.vertex_path(w.middle.source()),
                inner: Vec::new(),
                right: q.vertex_path(w.middle.target()),
            },
            rat(1),
        );
    } else {
        for x in tuples(k, nn) {
            // Bracket blocks: [x_1,1,x_2,1,...,x_k,1] in even degree,
            // [1,x_1,1,...,x_k,1] in odd degree.
            let mut blocks: Vec<usize> = Vec::with_capacity(2 * k + 1);
            if degree % 2 == 1 {
                blocks.push(1);
            }
            for xi in &x {
                blocks.push(*xi);
                blocks.push(1);
            }
            let consumed: usize = blocks.iter().sum();
            let tail = s - consumed;
            if tail >= nn {
                continue; // right outer component dies in A
            }
            let mut inner = Vec::with_capacity(blocks.len());
            let mut pos = 0;
            for b in &blocks {
                inner.push(q.subpath(&w.middle, pos, pos + b));
                pos += b;
            }
            let right = q.subpath(&w.middle, pos, s);
            gen_out.add_term(
                QWord {
                    left: q.vertex_path(w.middle.source()),
                    inner,
                    right,
                },
                rat(1),
            );
        }
    }
    q_bimodule_act(a, &w.left, &gen_out, &w.right)
}

/// The comparison morphism F from the minimal to the bar resolution,
/// extended as a bimodule map; the direct tuple-sum implementation.
pub fn f_map(a: &TruncatedAlgebra, c: &PChain) -> QChain {
    let mut out = QChain::zero(c.degree);
    for (w, coeff) in c.terms() {
        out = out.add(&f_word(a, w, c.degree).scale(coeff));
    }
    out
}

fn g_word(a: &TruncatedAlgebra, w: &QWord, degree: usize) -> PChain {
    let q = a.quiver();
    let nn = a.n();
    let k = degree / 2;
    let mut gen_out = PChain::zero(degree);

    if degree == 0 {
        let v = w.left.target();
        gen_out.add_term(
            PWord {
                left: q.vertex_path(v),
                middle: q.vertex_path(v),
                right: q.vertex_path(v),
            },
            rat(1),
        );
        return p_bimodule_act(a, &w.left, &gen_out, &w.right);
    }

    // Arrow decomposition of the inner word, taken in kΔ (no truncation).
    let mut full = w.inner[0].clone();
    for p in &w.inner[1..] {
        match q.concat(&full, p) {
            Some(f) => full = f,
            None => return gen_out,
        }
    }
    let total = full.len();

    if degree % 2 == 0 {
        // Gate: products α_{2i-1}·α_{2i} vanish in A for i = 1..k.
        let gate = (0..k).all(|i| w.inner[2 * i].len() + w.inner[2 * i + 1].len() >= nn);
        if gate {
            let mid = q.subpath(&full, 0, k * nn);
            let rest = q.subpath(&full, k * nn, total);
            if rest.len() < nn {
                gen_out.add_term(
                    PWord {
                        left: q.vertex_path(full.source()),
                        middle: mid,
                        right: rest,
                    },
                    rat(1),
                );
            }
        }
    } else {
        // Gate: products α_{2i}·α_{2i+1} vanish in A for i = 1..k.
        let gate = (0..k).all(|i| w.inner[2 * i + 1].len() + w.inner[2 * i + 2].len() >= nn);
        if gate {
            let alpha1 = w.inner[0].len();
            for j in 1..=alpha1 {
                let left = q.subpath(&full, 0, j - 1);
                let mid = q.subpath(&full, j - 1, k * nn + j);
                let rest = q.subpath(&full, k * nn + j, total);
                if rest.len() < nn {
                    gen_out.add_term(
                        PWord {
                            left,
                            middle: mid,
                            right: rest,
                        },
                        rat(1),
                    );
                }
            }
        }
    }
    p_bimodule_act(a, &w.left, &gen_out, &w.right)
}

/// The comparison morphism G from the bar to the minimal resolution.
pub fn g_map(a: &TruncatedAlgebra, c: &QChain) -> PChain {
    let mut out = PChain::zero(c.degree);
    for (w, coeff) in c.terms() {
        out = out.add(&g_word(a, w, c.degree).scale(coeff));
    }
    out
}

/// φ of a single composition, applied to the generator 1⊗v_1...v_m⊗1:
/// brackets the word by the interior parts (first and last parts become the
/// outer components). Zero when any part reaches N. Errors when the
/// composition total differs from the path length.
pub fn phi(a: &TruncatedAlgebra, c: &Composition, middle: &Path) -> Result<QChain> {
    let q = a.quiver();
    let n_parts = c.part_count();
    if n_parts < 2 {
        return Err(Error::Precondition(
            "phi needs a composition with at least two parts".into(),
        ));
    }
    if c.total() != middle.len() {
        return Err(Error::Precondition(format!(
            "composition total {} does not match path length {}",
            c.total(),
            middle.len()
        )));
    }
    let degree = n_parts - 2;
    let mut out = QChain::zero(degree);
    if !c.is_reduced(a.n()) {
        return Ok(out);
    }
    let parts = c.parts();
    let left = q.subpath(middle, 0, parts[0]);
    let mut pos = parts[0];
    let mut inner = Vec::with_capacity(degree);
    for &p in &parts[1..n_parts - 1] {
        inner.push(q.subpath(middle, pos, pos + p));
        pos += p;
    }
    let right = q.subpath(middle, pos, middle.len());
    out.add_term(QWord { left, inner, right }, rat(1));
    Ok(out)
}

/// φ extended linearly over a composition sum.
pub fn phi_sum(a: &TruncatedAlgebra, s: &CompositionSum, middle: &Path) -> Result<QChain> {
    let degree = s
        .terms()
        .next()
        .map(|(c, _)| c.part_count() - 2)
        .unwrap_or(0);
    let mut out = QChain::zero(degree);
    for (c, coeff) in s.terms() {
        out = out.add(&phi(a, c, middle)?.scale(coeff));
    }
    Ok(out)
}

/// F computed through φ of the composition sums Ã (even degrees) and B̃
/// (odd degrees); degree 0 is the identity.
pub fn f_map_via_phi(a: &TruncatedAlgebra, c: &PChain) -> Result<QChain> {
    let nn = a.n();
    let degree = c.degree;
    let k = degree / 2;
    let mut out = QChain::zero(degree);
    for (w, coeff) in c.terms() {
        let gen = if degree == 0 {
            let q = a.quiver();
            QChain::from_word(
                0,
                QWord {
                    left: q.vertex_path(w.middle.source()),
                    inner: Vec::new(),
                    right: q.vertex_path(w.middle.target()),
                },
            )
        } else {
            let sum = if degree % 2 == 0 {
                build_a_tilde(k, k * (nn - 1), nn)?
            } else {
                build_b_tilde(k, k * (nn - 1), nn)?
            };
            phi_sum(a, &sum, &w.middle)?
        };
        out = out.add(&q_bimodule_act(a, &w.left, &gen, &w.right).scale(coeff));
    }
    Ok(out)
}

fn d_squared_nonzero(s: &CompositionSum) -> Result<bool> {
    if s.is_zero() {
        return Ok(false);
    }
    let dd = comp_diff(&comp_diff(s)?)?;
    Ok(!dd.is_zero())
}

/// Exhaustive comparison checks up to `max_degree`: both commuting squares,
/// G∘F = id, agreement of the two F implementations, b∘φ_α = φ_{D_N(α)} on
/// the composition sums in play, and the composition-complex lemmas.
pub fn verify_comparison(
    a: &TruncatedAlgebra,
    max_degree: usize,
    limits: &Limits,
) -> Result<Report> {
    if max_degree < 1 {
        return Err(Error::Precondition("max_degree must be at least 1".into()));
    }
    let nn = a.n();
    let mut report = Report::default();

    for n in 1..=max_degree {
        // b∘F = F∘d on generator P-words.
        let words = p_generator_basis(a, n, limits)?;
        let mut witness = None;
        for w in &words {
            let c = PChain::from_word(n, w.clone());
            let lhs = bar_diff(a, &f_map(a, &c))?;
            let rhs = f_map(a, &min_diff(a, &c)?);
            if lhs != rhs {
                witness = Some(render_p_chain(a, &c));
                break;
            }
        }
        report.record("b∘F = F∘d", Some(n), words.len(), witness);

        // d∘G = G∘b on generator Q-words.
        let words = q_generator_basis(a, n, limits)?;
        let mut witness = None;
        for w in &words {
            let c = QChain::from_word(n, w.clone());
            let lhs = min_diff(a, &g_map(a, &c))?;
            let rhs = g_map(a, &bar_diff(a, &c)?);
            if lhs != rhs {
                witness = Some(render_q_chain(a, &c));
                break;
            }
        }
        report.record("d∘G = G∘b", Some(n), words.len(), witness);
    }

    for n in 0..=max_degree {
        // G∘F = id on generator P-words.
        let words = p_generator_basis(a, n, limits)?;
        let mut witness = None;
        for w in &words {
            let c = PChain::from_word(n, w.clone());
            if g_map(a, &f_map(a, &c)) != c {
                witness = Some(render_p_chain(a, &c));
                break;
            }
        }
        report.record("G∘F = id", Some(n), words.len(), witness);

        // The two implementations of F agree.
        let mut witness = None;
        for w in &words {
            let c = PChain::from_word(n, w.clone());
            if f_map(a, &c) != f_map_via_phi(a, &c)? {
                witness = Some(render_p_chain(a, &c));
                break;
            }
        }
        report.record("F direct = F via φ", Some(n), words.len(), witness);
    }

    // b∘φ_α = φ_{D_N(α)} for the compositions appearing in the tuple sums
    // (and their differentials), evaluated on every matching generator path.
    {
        let mut witness = None;
        let mut checked = 0usize;
        'outer: for k in 1..=3usize {
            for m in (k * (nn - 1))..=(k * (nn - 1) + nn) {
                for sum in [build_a_tilde(k, m, nn)?, build_b_tilde(k, m, nn)?] {
                    for (comp, _) in sum.terms() {
                        if comp.part_count() < 3 {
                            continue;
                        }
                        let total = comp.total();
                        for mid in a.quiver().paths(total, limits)? {
                            checked += 1;
                            let lhs = bar_diff(a, &phi(a, comp, &mid)?)?;
                            let dcomp =
                                comp_diff(&CompositionSum::from_composition(nn, comp.clone()))?;
                            let rhs = phi_sum(a, &dcomp, &mid)?;
                            if lhs != rhs {
                                witness = Some(format!("{comp}"));
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        report.record("b∘φ_α = φ_{D_N α}", None, checked, witness);
    }

    // Lemma identities for the composition sums.
    {
        let mut witness = None;
        let mut checked = 0usize;
        'outer: for k in 1..=3usize {
            for m in (k * (nn - 1))..=12 {
                checked += 1;
                let a_sum = build_a(k, m, nn)?;
                let b_sum = build_b(k, m, nn)?;
                if comp_diff(&a_sum)? != build_b(k - 1, m, nn)?.scale(&rat(-1)) {
                    witness = Some(format!("D(A) k={k} M={m}"));
                    break 'outer;
                }
                if comp_diff(&b_sum)? != build_a(k, m + 1, nn)? {
                    witness = Some(format!("D(B) k={k} M={m}"));
                    break 'outer;
                }
                if b_sum != a_sum.prepend(1) {
                    witness = Some(format!("comp1 k={k} M={m}"));
                    break 'outer;
                }
                let vanish = m > (k + 1) * (nn - 1);
                if a_sum.is_zero() != vanish || b_sum.is_zero() != vanish {
                    witness = Some(format!("vanishing k={k} M={m}"));
                    break 'outer;
                }
                // Prop D, with the M+1 shift in the second term forced by
                // the grading of the composition complex.
                let bt = build_b_tilde(k, m, nn)?;
                let rhs = a_sum
                    .prepend(1)
                    .add(&build_a(k, m + 1, nn)?.prepend(0).scale(&rat(-1)));
                if comp_diff(&bt)? != rhs {
                    witness = Some(format!("Prop D (B~) k={k} M={m}"));
                    break 'outer;
                }
                let at = build_a_tilde(k, m, nn)?;
                let mut rhs = CompositionSum::zero(nn);
                for j in 0..nn {
                    if m >= j && m - j >= (k - 1) * (nn - 1) {
                        rhs = rhs.add(&build_b(k - 1, m - j, nn)?.prepend(j));
                    }
                }
                if comp_diff(&at)? != rhs {
                    witness = Some(format!("Prop D (A~) k={k} M={m}"));
                    break 'outer;
                }
                if d_squared_nonzero(&bt)? {
                    witness = Some(format!("D² k={k} M={m}"));
                    break 'outer;
                }
            }
        }
        report.record("composition lemmas", None, checked, witness);
    }

    Ok(report)
}
