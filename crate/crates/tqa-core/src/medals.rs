//! Medal combinatorics of parallel paths.
//!
//! Parallel pairs that start together can be pushed forward one arrow;
//! pairs that end together can be pulled backwards. The movement closure
//! partitions each Δ_i ∥ Δ_m into classes; a class is a medal when every
//! +extreme ends at a sink and every −extreme starts at a source. The sums
//! over medal classes are canonical kernel bases for the even-degree
//! coboundary blocks.

use std::collections::BTreeSet;

use crate::error::{Limits, Result};
use crate::quiver::{ParallelPair, Quiver};

#[derive(Debug, Clone)]
pub struct MedalClass {
    pub members: Vec<ParallelPair>,
    pub plus_extremes: Vec<ParallelPair>,
    pub minus_extremes: Vec<ParallelPair>,
    pub is_medal: bool,
}

pub fn starts_together(p: &ParallelPair) -> bool {
    match (p.first.arrows().first(), p.second.arrows().first()) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    }
}

pub fn ends_together(p: &ParallelPair) -> bool {
    match (p.first.arrows().last(), p.second.arrows().last()) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    }
}

/// +movements: drop the shared first arrow, append any arrow leaving the
/// common target.
fn plus_movements(q: &Quiver, p: &ParallelPair) -> Vec<ParallelPair> {
    if !starts_together(p) {
        return Vec::new();
    }
    let gamma = q.subpath(&p.first, 1, p.first.len());
    let delta = q.subpath(&p.second, 1, p.second.len());
    q.out_arrows(p.first.target())
        .map(|w| {
            let arrow = q.arrow_path(w);
            ParallelPair {
                first: q.concat(&gamma, &arrow).expect("movement composes"),
                second: q.concat(&delta, &arrow).expect("movement composes"),
            }
        })
        .collect()
}

/// −movements: drop the shared last arrow, prepend any arrow entering the
/// common source.
fn minus_movements(q: &Quiver, p: &ParallelPair) -> Vec<ParallelPair> {
    if !ends_together(p) {
        return Vec::new();
    }
    let gamma = q.subpath(&p.first, 0, p.first.len() - 1);
    let delta = q.subpath(&p.second, 0, p.second.len() - 1);
    q.in_arrows(p.first.source())
        .map(|w| {
            let arrow = q.arrow_path(w);
            ParallelPair {
                first: q.concat(&arrow, &gamma).expect("movement composes"),
                second: q.concat(&arrow, &delta).expect("movement composes"),
            }
        })
        .collect()
}

/// A pair is a +extreme iff it does not start together or ends at a sink.
pub fn is_plus_extreme(q: &Quiver, p: &ParallelPair) -> bool {
    !starts_together(p) || q.is_sink(p.first.target())
}

/// A pair is a −extreme iff it does not end together or starts at a source.
pub fn is_minus_extreme(q: &Quiver, p: &ParallelPair) -> bool {
    !ends_together(p) || q.is_source(p.first.source())
}

/// Partitions Δ_i ∥ Δ_m into movement classes, each annotated with its
/// extremes and medal flag. Classes are ordered by smallest member;
/// members are sorted.
pub fn medal_classes(q: &Quiver, i: usize, m: usize, limits: &Limits) -> Result<Vec<MedalClass>> {
    let all = q.parallel_pairs(i, m, limits)?;
    let mut seen: BTreeSet<ParallelPair> = BTreeSet::new();
    let mut classes = Vec::new();

    for start in &all {
        if seen.contains(start) {
            continue;
        }
        // Breadth-first closure under movements in both directions;
        // termination comes from finiteness of the pair set.
        let mut members: BTreeSet<ParallelPair> = BTreeSet::new();
        let mut queue = vec![start.clone()];
        members.insert(start.clone());
        while let Some(p) = queue.pop() {
            for next in plus_movements(q, &p)
                .into_iter()
                .chain(minus_movements(q, &p))
            {
                if members.insert(next.clone()) {
                    queue.push(next);
                }
            }
        }
        seen.extend(members.iter().cloned());

        let plus_extremes: Vec<ParallelPair> = members
            .iter()
            .filter(|p| is_plus_extreme(q, p))
            .cloned()
            .collect();
        let minus_extremes: Vec<ParallelPair> = members
            .iter()
            .filter(|p| is_minus_extreme(q, p))
            .cloned()
            .collect();
        let is_medal = plus_extremes.iter().all(|p| q.is_sink(p.first.target()))
            && minus_extremes.iter().all(|p| q.is_source(p.first.source()));

        classes.push(MedalClass {
            members: members.into_iter().collect(),
            plus_extremes,
            minus_extremes,
            is_medal,
        });
    }
    classes.sort_by(|a, b| a.members[0].cmp(&b.members[0]));
    Ok(classes)
}

/// Only the medals of Δ_i ∥ Δ_m.
pub fn medals(q: &Quiver, i: usize, m: usize, limits: &Limits) -> Result<Vec<MedalClass>> {
    Ok(medal_classes(q, i, m, limits)?
        .into_iter()
        .filter(|c| c.is_medal)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::builtins::{example7_1, example7_2, example83, tensor};

    fn lim() -> Limits {
        Limits::default()
    }

    fn pair(q: &Quiver, first: &str, second: &str) -> ParallelPair {
        ParallelPair {
            first: q.parse_path(first).unwrap(),
            second: q.parse_path(second).unwrap(),
        }
    }

    fn class_of<'c>(classes: &'c [MedalClass], p: &ParallelPair) -> &'c MedalClass {
        classes
            .iter()
            .find(|c| c.members.contains(p))
            .expect("pair belongs to some class")
    }

    #[test]
    fn oriented_cycle_classes_are_medals() {
        // In an oriented cycle every pair moves freely: no extremes at all.
        let q = example7_1();
        let classes = medal_classes(&q, 2, 6, &lim()).unwrap();
        let p = pair(&q, "v1v2", "v1v2v3v4v1v2");
        let c = class_of(&classes, &p);
        assert!(c.plus_extremes.is_empty() && c.minus_extremes.is_empty());
        assert!(c.is_medal);
    }

    #[test]
    fn glued_cycles_class_is_not_a_medal() {
        // The same pair in the glued two-cycle quiver reaches a +extreme
        // that does not end at a sink.
        let q = example7_2();
        let classes = medal_classes(&q, 2, 6, &lim()).unwrap();
        let p = pair(&q, "v1v2", "v1v2v3v4v1v2");
        let c = class_of(&classes, &p);
        assert!(!c.is_medal);
        assert!(!c.plus_extremes.is_empty());
        // The witness from the movement chain.
        assert!(c.members.contains(&pair(&q, "v2v3", "v4v1v2v3v2v3")));
    }

    #[test]
    fn two_loops_have_no_medals_off_diagonal() {
        let q = tensor(2);
        for (i, m) in [(1usize, 3usize), (2, 4), (1, 4)] {
            assert!(medals(&q, i, m, &lim()).unwrap().is_empty(), "i={i} m={m}");
        }
    }

    #[test]
    fn example83_medals_match_kernel_structure() {
        let q = example83();
        // Δ_1 ∥ Δ_3 (N = 3, k = 1): one class {a, x, b}, a medal.
        let classes = medal_classes(&q, 1, 3, &lim()).unwrap();
        assert_eq!(classes.len(), 1);
        assert!(classes[0].is_medal);
        assert_eq!(classes[0].members.len(), 3);

        // Δ_2 ∥ Δ_4: the 3-member class and the singleton through ab.
        let classes = medal_classes(&q, 2, 4, &lim()).unwrap();
        assert_eq!(classes.len(), 2);
        assert!(classes.iter().all(|c| c.is_medal));
        let sizes: Vec<usize> = classes.iter().map(|c| c.members.len()).collect();
        assert!(sizes.contains(&3) && sizes.contains(&1));
    }

    #[test]
    fn vertex_pairs_are_double_extremes() {
        let q = example83();
        let classes = medal_classes(&q, 0, 3, &lim()).unwrap();
        // (v2, x^3) cannot move at all and v2 is neither sink nor source.
        assert_eq!(classes.len(), 1);
        assert!(!classes[0].is_medal);
    }
}
