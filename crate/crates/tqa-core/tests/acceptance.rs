//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use std::time::Instant;

use tqa_core::algebra::TruncatedAlgebra;
use tqa_core::cohomology::{
    cohomology, diff_block, dual_diff_matrix, dual_diff_matrix_via_resolution, pair_len,
    DualCochain,
};
use tqa_core::comparison::{phi, phi_sum, verify_comparison};
use tqa_core::composition::{
    build_a, build_a_tilde, build_b, build_b_tilde, comp_diff, CompositionSum,
};
use tqa_core::cup::{
    cup_bar_route, cup_cochain_full, is_bar_cocycle, poly_cochain, push_forward, vee, BarCup,
    Tower,
};
use tqa_core::error::Limits;
use tqa_core::linalg::{self, RationalMatrix};
use tqa_core::medals::medals;
use tqa_core::oracle::bar_cohomology_oracle;
use tqa_core::quiver::{builtins, ParallelPair, Quiver};
use num::Zero;
use tqa_core::rational::{rat, Rational};
use tqa_core::resolutions::verify_resolutions;

fn lim() -> Limits {
    Limits::default()
}

fn e83(n: usize) -> TruncatedAlgebra {
    TruncatedAlgebra::new(builtins::example83(), n).unwrap()
}

fn loop_a(n: usize) -> TruncatedAlgebra {
    TruncatedAlgebra::new(builtins::one_loop(), n).unwrap()
}

fn pass(criterion: usize, message: &str) {
    println!("[PASS] criterion {criterion}: {message}");
}

fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(num::Zero::is_zero)
}

/// Path string in the three-vertex example: optional leading a, a power of
/// the loop, optional trailing b; the empty word is the middle vertex.
fn p83(a: bool, x: usize, b: bool) -> String {
    let mut s = String::new();
    if a {
        s.push('a');
    }
    s.push_str(&"x".repeat(x));
    if b {
        s.push('b');
    }
    if s.is_empty() {
        s = "v2".into();
    }
    s
}

fn pair(q: &Quiver, first: &str, second: &str) -> ParallelPair {
    ParallelPair {
        first: q.parse_path(first).unwrap(),
        second: q.parse_path(second).unwrap(),
    }
}

/// The four pair shapes of the three-vertex example at (row j, length M).
#[derive(Clone, Copy)]
enum Shape {
    A,
    X,
    B,
    Ab,
}

fn shape_pair(q: &Quiver, shape: Shape, j: usize, m: usize) -> ParallelPair {
    match shape {
        Shape::A => pair(q, &p83(true, j - 1, false), &p83(true, m - 1, false)),
        Shape::X => pair(q, &p83(false, j, false), &p83(false, m, false)),
        Shape::B => pair(q, &p83(false, j - 1, true), &p83(false, m - 1, true)),
        Shape::Ab => pair(q, &p83(true, j - 2, true), &p83(true, m - 2, true)),
    }
}

fn combo(q: &Quiver, degree: usize, j: usize, m: usize, shapes: &[(i64, Shape)]) -> DualCochain {
    let mut z = DualCochain::zero(degree);
    for (c, s) in shapes {
        z.add_term(shape_pair(q, *s, j, m), rat(*c));
    }
    z
}

/// The distinguished classes ω_{n,j} of the three-vertex example.
fn omega(a: &TruncatedAlgebra, n: usize, j: usize) -> DualCochain {
    let q = a.quiver();
    let m = pair_len(n, a.n());
    assert!(n >= 1 && j >= 1 && j <= a.n() - 1);
    if n % 2 == 1 {
        combo(q, n, j, m, &[(1, Shape::X), (1, Shape::A)])
    } else if j >= 2 {
        combo(
            q,
            n,
            j,
            m,
            &[(1, Shape::A), (1, Shape::X), (1, Shape::B), (1, Shape::Ab)],
        )
    } else {
        combo(q, n, j, m, &[(1, Shape::A), (1, Shape::X), (1, Shape::B)])
    }
}

/// The reference row order of the three-vertex example: source-to-inner,
/// inner, inner-to-sink, source-to-sink.
fn reference_permutation(a: &TruncatedAlgebra, pairs: &[ParallelPair]) -> Vec<usize> {
    let q = a.quiver();
    let key = |p: &ParallelPair| {
        let sa = q.is_source(p.first.source()) && !p.first.is_vertex();
        let sb = q.is_sink(p.first.target()) && !p.first.is_vertex();
        match (sa, sb) {
            (true, true) => 3u8,
            (true, false) => 0,
            (false, true) => 2,
            (false, false) => 1,
        }
    };
    let mut idx: Vec<usize> = (0..pairs.len()).collect();
    idx.sort_by_key(|&i| (key(&pairs[i]), pairs[i].clone()));
    idx
}

fn permuted_block(
    a: &TruncatedAlgebra,
    n: usize,
    row: usize,
    target: usize,
) -> RationalMatrix {
    let (dom, cod, m) = diff_block(a, n, row, target, &lim()).unwrap();
    let dp = reference_permutation(a, &dom);
    let cp = reference_permutation(a, &cod);
    let mut out = RationalMatrix::new(cod.len(), dom.len());
    for (r, &ri) in cp.iter().enumerate() {
        for (c, &ci) in dp.iter().enumerate() {
            out.set(r, c, m.get(ri, ci));
        }
    }
    out
}

#[test]
fn criterion_01_dimension_table() {
    for n_trunc in [3usize, 4, 5] {
        let start = Instant::now();
        let a = e83(n_trunc);
        let dims: Vec<usize> = (0..=8)
            .map(|n| cohomology(&a, n, &lim()).unwrap().total_dim())
            .collect();
        assert_eq!(dims[0], 2, "H^0 at N={n_trunc}");
        assert_eq!(dims[1], 2 * n_trunc - 3, "H^1 at N={n_trunc}");
        for n in 2..=8 {
            assert_eq!(dims[n], 2 * n_trunc - 2, "H^{n} at N={n_trunc}");
        }
        let elapsed = start.elapsed();
        assert!(
            elapsed.as_secs_f64() < 10.0,
            "N={n_trunc} took {elapsed:?}, budget is 10 s"
        );
    }
    pass(1, "dimension table (2, 2N-3, 2N-2, ...) for N = 3, 4, 5 through degree 8");
}

#[test]
fn criterion_02_printed_matrices() {
    for n_trunc in [3usize, 4] {
        let a = e83(n_trunc);
        let nt = n_trunc as i64;

        let d00 = RationalMatrix::from_rows(&[vec![-1, 1, 0], vec![0, 0, 0], vec![0, -1, 1]]);
        assert_eq!(permuted_block(&a, 0, 0, 1), d00, "D_0^0 at N={n_trunc}");

        let dj0 = RationalMatrix::from_rows(&[vec![1], vec![0], vec![-1]]);
        for j in 2..=n_trunc.saturating_sub(2) {
            assert_eq!(permuted_block(&a, 0, j, j + 1), dj0, "D_{j}^0 at N={n_trunc}");
        }

        let odd_col =
            RationalMatrix::from_rows(&[vec![nt - 1], vec![nt], vec![nt - 1], vec![nt - 2]]);
        assert_eq!(permuted_block(&a, 1, 0, n_trunc - 1), odd_col, "D_0^1 at N={n_trunc}");

        let d1 = RationalMatrix::from_rows(&[
            vec![-1, 1, 0],
            vec![0, 0, 0],
            vec![0, -1, 1],
            vec![-1, 0, 1],
        ]);
        let dj = RationalMatrix::from_rows(&[
            vec![-1, 1, 0, 0],
            vec![0, 0, 0, 0],
            vec![0, -1, 1, 0],
            vec![-1, 0, 1, 0],
        ]);
        for k in [1usize, 2] {
            assert_eq!(permuted_block(&a, 2 * k, 1, 2), d1, "D_1^{{2k}} k={k} N={n_trunc}");
            for j in 2..=n_trunc.saturating_sub(2) {
                assert_eq!(
                    permuted_block(&a, 2 * k, j, j + 1),
                    dj,
                    "D_{j}^{{2k}} k={k} N={n_trunc}"
                );
            }
            assert_eq!(
                permuted_block(&a, 2 * k + 1, 0, n_trunc - 1),
                odd_col,
                "D_0^{{2k+1}} k={k} N={n_trunc}"
            );
        }
    }
    pass(2, "differential blocks match the reference matrices entry-for-entry (N = 3, 4; k = 1, 2)");
}

#[test]
fn criterion_03_table_membership() {
    for n_trunc in [3usize, 4] {
        let a = e83(n_trunc);
        let q = a.quiver().clone();
        let nt = n_trunc as i64;

        // Degree 0: the unit and the top power of the loop.
        {
            let space = cohomology(&a, 0, &lim()).unwrap();
            let mut unit = DualCochain::zero(0);
            for label in ["v1", "v2", "v3"] {
                unit.add_term(pair(&q, label, label), rat(1));
            }
            let top = DualCochain::from_pair(
                0,
                pair(&q, &p83(false, n_trunc - 1, false), "v2"),
            );
            let mut coords = Vec::new();
            for z in [&unit, &top] {
                assert!(space.is_cocycle(z).unwrap());
                coords.push(space.reduce(z).unwrap());
            }
            let m = RationalMatrix::from_columns(&coords, space.total_dim());
            assert_eq!(linalg::rank(&m), 2, "H^0 members at N={n_trunc}");
        }

        // One homological degree: every listed element is a cocycle whose
        // class is nonzero (independent of the coboundaries); the listed
        // coboundaries lie in the image. `full_rank` additionally asserts
        // the whole list is linearly independent modulo coboundaries, which
        // holds in every degree except the even top row (see the relation
        // check below).
        let check_degree = |n: usize,
                            elements: Vec<DualCochain>,
                            coboundaries: Vec<DualCochain>,
                            full_rank: Option<usize>| {
            let space = cohomology(&a, n, &lim()).unwrap();
            let mut coords = Vec::new();
            for z in &elements {
                assert!(space.is_cocycle(z).unwrap(), "cocycle at N={n_trunc} degree {n}");
                let c = space.reduce(z).unwrap();
                assert!(
                    !is_zero_vec(&c),
                    "listed element is a coboundary at N={n_trunc} degree {n}"
                );
                coords.push(c);
            }
            let m = RationalMatrix::from_columns(&coords, space.total_dim());
            let expected = full_rank.unwrap_or(elements.len());
            assert_eq!(
                linalg::rank(&m),
                expected,
                "independence at N={n_trunc} degree {n}"
            );
            for z in &coboundaries {
                assert!(
                    space.is_coboundary(z).unwrap(),
                    "coboundary at N={n_trunc} degree {n}"
                );
            }
        };

        // Degree 1 (M = 1).
        {
            let mut elements = vec![combo(&q, 1, 1, 1, &[(1, Shape::X), (1, Shape::A)])];
            for j in 2..=n_trunc - 1 {
                elements.push(combo(&q, 1, j, 1, &[(1, Shape::X), (1, Shape::A)]));
                elements.push(combo(&q, 1, j, 1, &[(1, Shape::A)]));
            }
            let mut coboundaries = vec![
                combo(&q, 1, 1, 1, &[(1, Shape::A)]),
                combo(&q, 1, 1, 1, &[(1, Shape::B)]),
            ];
            for j in 2..=n_trunc - 1 {
                coboundaries.push(combo(&q, 1, j, 1, &[(1, Shape::A), (-1, Shape::B)]));
            }
            check_degree(1, elements, coboundaries, None);
        }

        for k in [1usize, 2] {
            // Even degree 2k (M = kN).
            let n = 2 * k;
            let m = k * n_trunc;
            let mut elements = vec![combo(
                &q,
                n,
                1,
                m,
                &[(1, Shape::A), (1, Shape::X), (1, Shape::B)],
            )];
            for j in 2..=n_trunc - 2 {
                elements.push(combo(
                    &q,
                    n,
                    j,
                    m,
                    &[(1, Shape::A), (1, Shape::X), (1, Shape::B), (1, Shape::Ab)],
                ));
                elements.push(combo(&q, n, j, m, &[(1, Shape::Ab)]));
            }
            let top = n_trunc - 1;
            elements.push(combo(
                &q,
                n,
                top,
                m,
                &[(1, Shape::A), (1, Shape::X), (1, Shape::B), (1, Shape::Ab)],
            ));
            elements.push(combo(&q, n, top, m, &[(1, Shape::Ab)]));
            elements.push(combo(&q, n, top, m, &[(1, Shape::X)]));
            let coboundaries = vec![combo(
                &q,
                n,
                top,
                m,
                &[
                    (nt - 1, Shape::A),
                    (nt, Shape::X),
                    (nt - 1, Shape::B),
                    (nt - 2, Shape::Ab),
                ],
            )];
            // The three top-row entries of the reference table satisfy
            // one relation modulo coboundaries: (N-1)*(4-sum) + x^{N-1} -
            // ax^{N-3}b is exactly the coboundary column, so they span two
            // of the cokernel's three dimensions. Every entry is still a
            // nonzero class.
            let relation = combo(
                &q,
                n,
                top,
                m,
                &[
                    (nt - 1, Shape::A),
                    (nt, Shape::X),
                    (nt - 1, Shape::B),
                    (nt - 2, Shape::Ab),
                ],
            );
            let space = cohomology(&a, n, &lim()).unwrap();
            assert!(space.is_coboundary(&relation).unwrap());
            let expected_rank = elements.len() - 1;
            check_degree(n, elements, coboundaries, Some(expected_rank));

            // Odd degree 2k+1 (M = kN+1).
            let n = 2 * k + 1;
            let m = k * n_trunc + 1;
            let mut elements = vec![
                combo(&q, n, 1, m, &[(1, Shape::X), (1, Shape::A)]),
                combo(&q, n, 1, m, &[(1, Shape::A)]),
            ];
            for j in 2..=n_trunc - 1 {
                elements.push(combo(&q, n, j, m, &[(1, Shape::X), (1, Shape::A)]));
                elements.push(combo(&q, n, j, m, &[(1, Shape::A)]));
            }
            let mut coboundaries = vec![combo(&q, n, 1, m, &[(1, Shape::A), (-1, Shape::B)])];
            for j in 2..=n_trunc - 1 {
                coboundaries.push(combo(&q, n, j, m, &[(1, Shape::A), (1, Shape::Ab)]));
                coboundaries.push(combo(&q, n, j, m, &[(1, Shape::B), (1, Shape::Ab)]));
            }
            check_degree(n, elements, coboundaries, None);
        }
    }
    pass(3, "table elements are non-coboundary cocycles (even top rows carry one known relation), table coboundaries lie in the image (N = 3, 4)");
}

#[test]
fn criterion_04_omega_product_law() {
    let a = e83(4);
    let mut tower = Tower::new(&a, lim());
    for n1 in 1..=4usize {
        for n2 in 1..=4usize {
            for j1 in 1..=3usize {
                for j2 in 1..=3usize {
                    let f = omega(&a, n1, j1);
                    let g = omega(&a, n2, j2);
                    let product = vee(&a, &f, &g);
                    let target = tower.space(n1 + n2).unwrap();
                    let got = target.reduce(&product).unwrap();
                    let gate = (n1 % 2 == 0 || n2 % 2 == 0) && j1 + j2 < 4;
                    if gate {
                        let expected = target.reduce(&omega(&a, n1 + n2, j1 + j2)).unwrap();
                        assert!(!is_zero_vec(&expected), "omega target nonzero");
                        assert_eq!(got, expected, "({n1},{j1}) cup ({n2},{j2})");
                    } else {
                        assert!(is_zero_vec(&got), "({n1},{j1}) cup ({n2},{j2}) should vanish");
                    }
                }
            }
        }
    }
    pass(4, "omega product law at N = 4 for all degrees <= 4 and row indices");
}

#[test]
fn criterion_05_truncated_polynomial_ring() {
    for n_trunc in 2..=5usize {
        let a = loop_a(n_trunc);
        let mut tower = Tower::new(&a, lim());

        // Dimensions through degree 8.
        assert_eq!(
            tower.space(0).unwrap().total_dim(),
            n_trunc,
            "H^0 at N={n_trunc}"
        );
        for n in 1..=8 {
            assert_eq!(
                tower.space(n).unwrap().total_dim(),
                n_trunc - 1,
                "H^{n} at N={n_trunc}"
            );
        }

        // The closed-form cochains are cocycles.
        for n in 0..=3usize {
            let lo = if n % 2 == 0 { 0 } else { 1 };
            for i in lo..n_trunc {
                let f = poly_cochain(&a, n, i).unwrap();
                assert!(
                    is_bar_cocycle(&a, &f, &lim()).unwrap(),
                    "f_{{{n},{i}}} at N={n_trunc}"
                );
            }
        }

        // Product rule under the stated gates, at the level of classes.
        let valid = |m: usize, i: usize| -> bool {
            if m % 2 == 0 {
                i <= n_trunc - 1
            } else {
                (1..=n_trunc - 1).contains(&i)
            }
        };
        for m in 0..=4usize {
            for n in 0..=4usize {
                for i in 0..n_trunc {
                    for j in 0..n_trunc {
                        if !valid(m, i) || !valid(n, j) {
                            continue;
                        }
                        let f = poly_cochain(&a, m, i).unwrap();
                        let g = poly_cochain(&a, n, j).unwrap();
                        let product = BarCup {
                            left: &f,
                            right: &g,
                        };
                        let pushed = push_forward(&a, &product, &lim()).unwrap();
                        let target = tower.space(m + n).unwrap();
                        let got = target.reduce(&pushed).unwrap();
                        let gate = (m % 2 == 0 || n % 2 == 0) && i + j < n_trunc;
                        if gate {
                            let h = poly_cochain(&a, m + n, i + j).unwrap();
                            let expected =
                                target.reduce(&push_forward(&a, &h, &lim()).unwrap()).unwrap();
                            assert_eq!(
                                got, expected,
                                "f_{{{m},{i}}} cup f_{{{n},{j}}} at N={n_trunc}"
                            );
                        } else {
                            assert!(
                                is_zero_vec(&got),
                                "f_{{{m},{i}}} cup f_{{{n},{j}}} should vanish at N={n_trunc}"
                            );
                        }
                    }
                }
            }
        }

        // {f_{0,1}, f_{1,1}, f_{2,0}} generate everything through degree 6.
        let q = a.quiver().clone();
        let xs = |e: usize| -> String {
            if e == 0 {
                "x^0".into()
            } else {
                "x".repeat(e)
            }
        };
        let g01 = |e0: usize| DualCochain::from_pair(0, pair(&q, &xs(e0), "x^0"));
        let g11 = DualCochain::from_pair(1, pair(&q, "x", "x"));
        let g20 = DualCochain::from_pair(2, pair(&q, "x^0", &xs(n_trunc)));
        for n in 0..=6usize {
            let e1 = n % 2;
            let e2 = (n - e1) / 2;
            let mut coords = Vec::new();
            for e0 in 0..n_trunc {
                let mut z = g01(e0);
                if e1 == 1 {
                    z = vee(&a, &z, &g11);
                }
                for _ in 0..e2 {
                    z = vee(&a, &z, &g20);
                }
                let target = tower.space(n).unwrap();
                coords.push(target.reduce(&z).unwrap());
            }
            let dim = tower.space(n).unwrap().total_dim();
            let m = RationalMatrix::from_columns(&coords, dim);
            assert_eq!(
                linalg::rank(&m),
                dim,
                "generators span H^{n} at N={n_trunc}"
            );
        }
    }
    pass(5, "k[x]/(x^N) for N = 2..5: dimensions, product rule, and three generators");
}

#[test]
fn criterion_06_resolution_identities() {
    let start = Instant::now();
    for (a, degree) in [(loop_a(2), 6usize), (loop_a(3), 6), (e83(3), 4)] {
        let report = verify_resolutions(&a, degree, &lim()).unwrap();
        assert!(report.all_pass(), "{}", report.render_text());
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}, budget 60 s");
    pass(6, "b2 = 0, d2 = 0, sb+bs = id, rd+dr = id on every basis word at the stated scales");
}

#[test]
fn criterion_07_comparison_identities() {
    for (a, degree) in [(loop_a(2), 6usize), (loop_a(3), 6), (e83(3), 4)] {
        let report = verify_comparison(&a, degree, &lim()).unwrap();
        assert!(report.all_pass(), "{}", report.render_text());
    }
    pass(7, "bF = Fd, dG = Gb, GF = id on all basis words at the stated scales");
}

#[test]
fn criterion_08_composition_machinery() {
    for n_trunc in 2..=4usize {
        // Composition-complex identities, exhaustively over k <= 3, M <= 12.
        for k in 1..=3usize {
            for m in (k * (n_trunc - 1))..=12 {
                let a_sum = build_a(k, m, n_trunc).unwrap();
                let b_sum = build_b(k, m, n_trunc).unwrap();
                // comp1
                assert_eq!(b_sum, a_sum.prepend(1));
                let mut rhs = CompositionSum::zero(n_trunc);
                for j in 1..n_trunc {
                    if m >= j && m - j >= (k - 1) * (n_trunc - 1) {
                        rhs = rhs.add(&build_b(k - 1, m - j, n_trunc).unwrap().prepend(j));
                    }
                }
                assert_eq!(a_sum, rhs, "comp1 A k={k} M={m} N={n_trunc}");
                // comp2
                assert_eq!(
                    comp_diff(&a_sum).unwrap(),
                    build_b(k - 1, m, n_trunc).unwrap().scale(&rat(-1))
                );
                assert_eq!(comp_diff(&b_sum).unwrap(), build_a(k, m + 1, n_trunc).unwrap());
                // vanishing threshold
                let vanish = m > (k + 1) * (n_trunc - 1);
                assert_eq!(a_sum.is_zero(), vanish);
                assert_eq!(b_sum.is_zero(), vanish);
                // Prop D (with the forced M+1 shift in the second term)
                let bt = build_b_tilde(k, m, n_trunc).unwrap();
                let rhs = a_sum
                    .prepend(1)
                    .add(&build_a(k, m + 1, n_trunc).unwrap().prepend(0).scale(&rat(-1)));
                assert_eq!(comp_diff(&bt).unwrap(), rhs, "PropD B~ k={k} M={m} N={n_trunc}");
                let at = build_a_tilde(k, m, n_trunc).unwrap();
                let mut rhs = CompositionSum::zero(n_trunc);
                for j in 0..n_trunc {
                    if m >= j && m - j >= (k - 1) * (n_trunc - 1) {
                        rhs = rhs.add(&build_b(k - 1, m - j, n_trunc).unwrap().prepend(j));
                    }
                }
                assert_eq!(comp_diff(&at).unwrap(), rhs, "PropD A~ k={k} M={m} N={n_trunc}");
                // D^2 = 0
                if !bt.is_zero() {
                    let dd = comp_diff(&comp_diff(&bt).unwrap()).unwrap();
                    assert!(dd.is_zero(), "D2 k={k} M={m} N={n_trunc}");
                }
            }
        }

        // b circ phi_alpha = phi_{D_N alpha} on the one-loop quiver (and on
        // the three-vertex quiver where matching paths exist).
        if n_trunc >= 2 {
            let algebras = vec![loop_a(n_trunc), e83(n_trunc)];
            for a in &algebras {
                for k in 1..=3usize {
                    for m in (k * (n_trunc - 1))..=(k * (n_trunc - 1) + n_trunc) {
                        for sum in [
                            build_a_tilde(k, m, n_trunc).unwrap(),
                            build_b_tilde(k, m, n_trunc).unwrap(),
                        ] {
                            for (comp, _) in sum.terms() {
                                if comp.part_count() < 3 {
                                    continue;
                                }
                                for mid in a.quiver().paths(comp.total(), &lim()).unwrap() {
                                    let lhs = tqa_core::resolutions::bar_diff(
                                        a,
                                        &phi(a, comp, &mid).unwrap(),
                                    )
                                    .unwrap();
                                    let d = comp_diff(&CompositionSum::from_composition(
                                        n_trunc,
                                        comp.clone(),
                                    ))
                                    .unwrap();
                                    let rhs = phi_sum(a, &d, &mid).unwrap();
                                    assert_eq!(lhs, rhs, "b phi {comp} N={n_trunc}");
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    pass(8, "composition complex: D2 = 0, comp1, comp2, Prop D, vanishing threshold, b.phi = phi.D (N <= 4, k <= 3, M <= 12)");
}

#[test]
fn criterion_09_oracle_agreement() {
    for (a, max_n) in [(loop_a(2), 6usize), (loop_a(3), 6), (e83(3), 4)] {
        for n in 0..=max_n {
            let minimal = cohomology(&a, n, &lim()).unwrap().total_dim();
            let oracle = bar_cohomology_oracle(&a, n, &lim()).unwrap();
            assert_eq!(minimal, oracle, "degree {n}");
        }
    }
    pass(9, "bar-complex oracle dimensions equal minimal-complex dimensions on all three instances");
}

#[test]
fn criterion_10_medal_kernel_law() {
    let cases = [
        (TruncatedAlgebra::new(builtins::cycle(4), 3).unwrap(),),
        (e83(3),),
        (e83(4),),
    ];
    for (a,) in &cases {
        let nn = a.n();
        for j in 1..=nn - 2 {
            for k in [1usize, 2] {
                let (dom, _cod, block) = diff_block(a, 2 * k, j, j + 1, &lim()).unwrap();
                let kernel_dim = dom.len() - linalg::rank(&block);
                let medal_classes = medals(a.quiver(), j, k * nn, &lim()).unwrap();
                assert_eq!(medal_classes.len(), kernel_dim, "count at j={j} k={k}");
                // The medal sums are annihilated by the block and are
                // independent (disjoint supports), hence span the kernel.
                let mut sums = Vec::new();
                for class in &medal_classes {
                    let mut v = vec![Rational::zero(); dom.len()];
                    for p in &class.members {
                        let idx = dom.iter().position(|d| d == p).unwrap();
                        v[idx] = rat(1);
                    }
                    assert!(block.mul_vector(&v).unwrap().iter().all(num::Zero::is_zero));
                    sums.push(v);
                }
                let m = RationalMatrix::from_columns(&sums, dom.len());
                assert_eq!(linalg::rank(&m), kernel_dim, "span at j={j} k={k}");
            }
        }
    }
    pass(10, "kernel dimensions equal medal counts and medal sums span (cycle4 N=3; example N=3,4; k=1,2)");
}

#[test]
fn criterion_11_triviality_theorems() {
    let cases = [
        TruncatedAlgebra::new(builtins::linear(3), 2).unwrap(),
        TruncatedAlgebra::new(builtins::linear(3), 3).unwrap(),
        TruncatedAlgebra::new(builtins::branching(), 3).unwrap(),
        TruncatedAlgebra::new(builtins::tensor(2), 3).unwrap(),
    ];
    let mut total_products = 0usize;
    for a in &cases {
        let flags = a.quiver().structure_flags();
        assert!(
            flags.is_acyclic
                || (!flags.has_sink && !flags.has_source && !flags.is_oriented_cycle)
        );
        let mut tower = Tower::new(a, lim());
        let mut reps: Vec<(usize, DualCochain)> = Vec::new();
        for n in 1..=5usize {
            let s = tower.space(n).unwrap();
            for r in &s.reps {
                reps.push((n, r.cochain.clone()));
            }
        }
        let mut products = 0usize;
        for (n1, f) in &reps {
            for (n2, g) in &reps {
                if n1 + n2 > 6 {
                    continue;
                }
                let target = tower.space(n1 + n2).unwrap();
                let got = target.reduce(&vee(a, f, g)).unwrap();
                assert!(is_zero_vec(&got), "nonzero product at ({n1},{n2})");
                products += 1;
            }
        }
        // The linear quiver at N = 2 has no positive-degree classes at all;
        // the theorem holds vacuously there. The other cases must exercise
        // real products.
        assert!(products > 0 || reps.is_empty());
        total_products += products;
    }
    assert!(total_products > 0, "no case exercised a product");
    pass(11, "all products of positive-degree classes vanish on a3 (N=2,3), a branching quiver and tensor2 (N=3)");
}

#[test]
fn criterion_12_product_cross_validation() {
    for a in [loop_a(2), loop_a(3), e83(3)] {
        let nn = a.n();
        let mut tower = Tower::new(&a, lim());

        // The three routes agree on the nose on representatives in rows >= 1
        // through total degree 4.
        for n1 in 1..=3usize {
            for n2 in 1..=(4 - n1) {
                let s1 = tower.space(n1).unwrap();
                let s2 = tower.space(n2).unwrap();
                for r1 in s1.reps.iter().filter(|r| r.row >= 1) {
                    for r2 in s2.reps.iter().filter(|r| r.row >= 1) {
                        let v = vee(&a, &r1.cochain, &r2.cochain);
                        let full = cup_cochain_full(&a, &r1.cochain, &r2.cochain, &lim()).unwrap();
                        let bar = cup_bar_route(&a, &r1.cochain, &r2.cochain, &lim()).unwrap();
                        assert_eq!(v, full, "vee vs full at ({n1},{n2})");
                        assert_eq!(v, bar, "vee vs bar at ({n1},{n2})");
                    }
                }
            }
        }

        // odd.odd products always reduce to zero, computed through the
        // nontrivial cochain-level product.
        for n1 in [1usize, 3, 5] {
            for n2 in [1usize, 3, 5] {
                if n1 + n2 > 6 {
                    continue;
                }
                let s1 = tower.space(n1).unwrap();
                let s2 = tower.space(n2).unwrap();
                let target = tower.space(n1 + n2).unwrap();
                for r1 in &s1.reps {
                    for r2 in &s2.reps {
                        let full = cup_cochain_full(&a, &r1.cochain, &r2.cochain, &lim()).unwrap();
                        let got = target.reduce(&full).unwrap();
                        assert!(is_zero_vec(&got), "odd.odd at ({n1},{n2})");
                    }
                }
            }
        }

        // class^N = 0 for positive-degree classes in rows >= 1.
        for n in 1..=4usize {
            if n * nn > 8 {
                continue;
            }
            let s = tower.space(n).unwrap();
            for r in s.reps.iter().filter(|r| r.row >= 1) {
                let mut acc = r.cochain.clone();
                for _ in 1..nn {
                    acc = vee(&a, &acc, &r.cochain);
                }
                let target = tower.space(n * nn).unwrap();
                let got = target.reduce(&acc).unwrap();
                assert!(is_zero_vec(&got), "power at degree {n}");
            }
        }
    }
    pass(12, "vee, full cochain product and bar route agree; odd.odd = 0; class^N = 0 in rows >= 1");
}

#[test]
fn standing_check_fast_equals_dual_assembly() {
    // Not numbered in the acceptance list but load-bearing: the two
    // assemblies of the coboundary agree wherever the suite computes.
    for a in [loop_a(2), loop_a(3), e83(3), e83(4)] {
        for n in 0..=4 {
            let fast = dual_diff_matrix(&a, n, &lim()).unwrap();
            let slow = dual_diff_matrix_via_resolution(&a, n, &lim()).unwrap();
            assert_eq!(fast, slow, "degree {n}");
        }
    }
    println!("[PASS] standing check: block assembly equals dualized differential");
}
