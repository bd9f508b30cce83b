//! The candidate matroid `f(Γ)` on players plus dealer.
//!
//! Players are renumbered `1..=k` in increasing label order and the dealer
//! becomes element 0. The extended sets are `A ∪ {0}` for each minimal set
//! `A`; for every pair of distinct extended sets the set
//! `J(A, B) = (A ∪ B) \ ⋂{C extended : C ⊆ A ∪ B}` is formed, and the
//! candidate circuits are the minimal members of the extended sets together
//! with all `J` sets.

use crate::matroid::{verify_circuit_axioms, Matroid};
use crate::subset::{minimalize, Subset};

use super::{AccessError, AccessStructure};

/// Largest player count accepted by [`AccessStructure::matroid_relation`].
pub const RELATION_LIMIT: usize = 12;

#[derive(Debug, Clone)]
pub struct MatroidRelation {
    /// `labels[j - 1]` is the player label of matroid element `j`.
    pub labels: Vec<usize>,
    /// The candidate circuit family, on elements `0..=k`.
    pub candidate: Vec<Subset>,
    /// Whether `candidate` satisfies the circuit axioms.
    pub axioms_hold: bool,
    /// Whether the matroid's port at element 0 reproduces the structure.
    pub port_matches: bool,
    /// The matroid, when the structure is matroid related.
    pub matroid: Option<Matroid>,
}

pub(crate) fn matroid_relation(g: &AccessStructure) -> Result<MatroidRelation, AccessError> {
    let labels = g.players().to_vec();
    let to_elem = |p: usize| labels.iter().position(|&l| l == p).unwrap() + 1;
    let extended: Vec<Subset> = g
        .minimal_sets()
        .iter()
        .map(|s| s.iter().map(to_elem).collect::<Subset>().with(0))
        .collect();

    let mut family = extended.clone();
    for (i, &a) in extended.iter().enumerate() {
        for &b in &extended[i + 1..] {
            let u = a.union(b);
            let common = extended
                .iter()
                .filter(|c| c.is_subset_of(u))
                .fold(u, |acc, &c| acc.intersection(c));
            family.push(u.difference(common));
        }
    }
    let candidate = minimalize(&family);
    let ground = labels.len() + 1;
    let axioms_hold = verify_circuit_axioms(&candidate);

    let mut port_matches = false;
    let mut matroid = None;
    if axioms_hold {
        let m = Matroid::from_circuits(ground, &candidate).map_err(Box::new)?;
        let compact = g.relabel(to_elem)?;
        port_matches = m
            .induced_access_structure(0)
            .is_ok_and(|port| port == compact);
        if port_matches {
            matroid = Some(m);
        }
    }
    Ok(MatroidRelation {
        labels,
        candidate,
        axioms_hold,
        port_matches,
        matroid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::access::catalog::*;

    #[test]
    fn fano_gives_a_matroid() {
        let r = fano().matroid_relation().unwrap();
        assert!(r.axioms_hold && r.port_matches);
        let m = r.matroid.unwrap();
        assert_eq!(m.ground_size(), 8);
        assert_eq!(m.circuits().len(), 14);
    }

    #[test]
    fn gamma_a_is_not_related() {
        assert!(!gamma_a().is_matroid_related().unwrap());
    }

    #[test]
    fn single_player() {
        let g = AccessStructure::from_lists(1, &[&[1]]).unwrap();
        let r = g.matroid_relation().unwrap();
        assert_eq!(r.candidate, vec![Subset::from_iter([0, 1])]);
        assert!(r.matroid.is_some());
    }
}
