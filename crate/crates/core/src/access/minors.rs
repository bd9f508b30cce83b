//! Deletion, contraction and the forbidden-minor search for matroid ports.

use std::collections::HashSet;
use std::fmt;

use crate::subset::{k_subsets, minimalize, Subset};

/// Largest player count accepted by the forbidden-minor search.
pub const MINOR_SEARCH_LIMIT: usize = 10;

/// The excluded minors of matroid ports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ForbiddenMinor {
    /// `{{1,2},{2,3},{3,4}}`
    A,
    /// `{{1,2},{1,3},{1,4},{2,3}}`
    B,
    /// `{{1,2},{1,3},{2,3,4}}`
    C,
    /// `{{1..s},{1,s+1},...,{s,s+1}}` with `s >= 3`
    D(usize),
}

impl ForbiddenMinor {
    pub fn num_players(self) -> usize {
        match self {
            ForbiddenMinor::D(s) => s + 1,
            _ => 4,
        }
    }

    /// Minimal sets on players `1..=num_players()`.
    pub fn minimal_sets(self) -> Vec<Subset> {
        let lists: Vec<Vec<usize>> = match self {
            ForbiddenMinor::A => vec![vec![1, 2], vec![2, 3], vec![3, 4]],
            ForbiddenMinor::B => vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3]],
            ForbiddenMinor::C => vec![vec![1, 2], vec![1, 3], vec![2, 3, 4]],
            ForbiddenMinor::D(s) => {
                let mut v = vec![(1..=s).collect::<Vec<_>>()];
                v.extend((1..=s).map(|i| vec![i, s + 1]));
                v
            }
        };
        lists.into_iter().map(Subset::from_iter).collect()
    }

    /// The forbidden minors with exactly `k` players.
    fn with_players(k: usize) -> Vec<ForbiddenMinor> {
        match k {
            0..=3 => vec![],
            4 => vec![
                ForbiddenMinor::A,
                ForbiddenMinor::B,
                ForbiddenMinor::C,
                ForbiddenMinor::D(3),
            ],
            _ => vec![ForbiddenMinor::D(k - 1)],
        }
    }
}

impl fmt::Display for ForbiddenMinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForbiddenMinor::A => f.write_str("gamma_a"),
            ForbiddenMinor::B => f.write_str("gamma_b"),
            ForbiddenMinor::C => f.write_str("gamma_c"),
            ForbiddenMinor::D(s) => write!(f, "gamma_d(s={s})"),
        }
    }
}

/// A minor `Γ \ deleted / contracted` isomorphic to `minor`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinorWitness {
    pub minor: ForbiddenMinor,
    pub deleted: Subset,
    pub contracted: Subset,
}

pub(crate) fn delete_raw(players: Subset, sets: &[Subset], z: Subset) -> (Subset, Vec<Subset>) {
    let kept: Vec<Subset> = sets.iter().copied().filter(|s| s.is_disjoint(z)).collect();
    (players.difference(z), minimalize(&kept))
}

pub(crate) fn contract_raw(players: Subset, sets: &[Subset], z: Subset) -> (Subset, Vec<Subset>) {
    let shrunk: Vec<Subset> = sets.iter().map(|s| s.difference(z)).collect();
    (players.difference(z), minimalize(&shrunk))
}

pub(crate) fn find_forbidden_minor(players: Subset, sets: &[Subset]) -> Option<MinorWitness> {
    let n = players.len();
    if n < 4 {
        return None;
    }
    for total in 0..=n - 4 {
        let remaining = n - total;
        let targets = ForbiddenMinor::with_players(remaining);
        for del_size in (0..=total).rev() {
            let con_size = total - del_size;
            for zdel in k_subsets(players, del_size) {
                let (after_del, del_sets) = delete_raw(players, sets, zdel);
                if del_sets.is_empty() {
                    continue;
                }
                for zcon in k_subsets(after_del, con_size) {
                    let (rest, minor) = contract_raw(after_del, &del_sets, zcon);
                    if minor.is_empty() || minor[0].is_empty() {
                        continue;
                    }
                    for &t in &targets {
                        let tp = Subset::span(1, t.num_players());
                        if isomorphic(&minor, rest, &t.minimal_sets(), tp) {
                            return Some(MinorWitness {
                                minor: t,
                                deleted: zdel,
                                contracted: zcon,
                            });
                        }
                    }
                }
            }
        }
    }
    None
}

/// Whether some bijection `pa -> pb` maps family `a` onto family `b`.
pub(crate) fn isomorphic(a: &[Subset], pa: Subset, b: &[Subset], pb: Subset) -> bool {
    if pa.len() != pb.len() || a.len() != b.len() {
        return false;
    }
    let mut sa: Vec<usize> = a.iter().map(|s| s.len()).collect();
    let mut sb: Vec<usize> = b.iter().map(|s| s.len()).collect();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    // per-player profile: sorted sizes of the sets containing the player
    let profile = |fam: &[Subset], p: usize| {
        let mut v: Vec<usize> = fam
            .iter()
            .filter(|s| s.contains(p))
            .map(|s| s.len())
            .collect();
        v.sort_unstable();
        v
    };
    let la = pa.to_vec();
    let lb = pb.to_vec();
    let prof_a: Vec<Vec<usize>> = la.iter().map(|&p| profile(a, p)).collect();
    let prof_b: Vec<Vec<usize>> = lb.iter().map(|&p| profile(b, p)).collect();
    let mut pa_sorted = prof_a.clone();
    let mut pb_sorted = prof_b.clone();
    pa_sorted.sort();
    pb_sorted.sort();
    if pa_sorted != pb_sorted {
        return false;
    }
    let target: HashSet<Subset> = b.iter().copied().collect();
    let mut map = vec![usize::MAX; 64];
    let mut used = vec![false; lb.len()];
    extend_map(
        0, &la, &lb, &prof_a, &prof_b, a, &target, &mut map, &mut used,
    )
}

#[allow(clippy::too_many_arguments)]
fn extend_map(
    depth: usize,
    la: &[usize],
    lb: &[usize],
    prof_a: &[Vec<usize>],
    prof_b: &[Vec<usize>],
    a: &[Subset],
    target: &HashSet<Subset>,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == la.len() {
        return true;
    }
    let p = la[depth];
    let assigned: Subset = la[..=depth].iter().copied().collect();
    for j in 0..lb.len() {
        if used[j] || prof_a[depth] != prof_b[j] {
            continue;
        }
        map[p] = lb[j];
        used[j] = true;
        // every set of `a` now fully mapped must land in `b`
        let ok = a
            .iter()
            .filter(|s| s.contains(p) && s.is_subset_of(assigned))
            .all(|s| target.contains(&s.iter().map(|x| map[x]).collect::<Subset>()));
        if ok && extend_map(depth + 1, la, lb, prof_a, prof_b, a, target, map, used) {
            return true;
        }
        used[j] = false;
        map[p] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::access::catalog::*;
    use crate::access::AccessStructure;

    fn set(v: &[usize]) -> Subset {
        v.iter().copied().collect()
    }

    #[test]
    fn forbidden_minors_witness_themselves() {
        let cases = [
            (gamma_a(), ForbiddenMinor::A),
            (gamma_b(), ForbiddenMinor::B),
            (gamma_c(), ForbiddenMinor::C),
            (gamma_d(3), ForbiddenMinor::D(3)),
            (gamma_d(4), ForbiddenMinor::D(4)),
        ];
        for (g, m) in cases {
            assert_eq!(
                g.forbidden_minor().unwrap(),
                Some(MinorWitness {
                    minor: m,
                    deleted: Subset::EMPTY,
                    contracted: Subset::EMPTY
                }),
                "{m}"
            );
        }
    }

    #[test]
    fn padded_gamma_a_needs_a_deletion() {
        let g = AccessStructure::from_lists(5, &[&[1, 2], &[2, 3], &[3, 4]]).unwrap();
        assert_eq!(
            g.forbidden_minor().unwrap(),
            Some(MinorWitness {
                minor: ForbiddenMinor::A,
                deleted: set(&[5]),
                contracted: Subset::EMPTY
            })
        );
    }

    #[test]
    fn fano_has_no_forbidden_minor() {
        assert_eq!(fano().forbidden_minor().unwrap(), None);
    }

    #[test]
    fn isomorphism_respects_relabeling() {
        let a = [set(&[5, 7]), set(&[7, 9]), set(&[9, 2])];
        let pa = set(&[2, 5, 7, 9]);
        let b = ForbiddenMinor::A.minimal_sets();
        assert!(isomorphic(&a, pa, &b, Subset::span(1, 4)));
        let c = ForbiddenMinor::B.minimal_sets();
        assert!(!isomorphic(&a, pa, &c, Subset::span(1, 4)));
    }

    #[test]
    fn search_guard() {
        let g = threshold(2, 11);
        assert!(g.forbidden_minor().is_err());
    }
}
