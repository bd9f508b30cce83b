use crate::subset::Subset;

/// An arbitrary family of subsets of a player set, stored as a membership
/// bit per subset. Used to compare families literally rather than through
/// their minimal sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Family {
    players: Vec<usize>,
    members: Vec<bool>,
}

impl Family {
    pub fn from_predicate(players: Subset, mut pred: impl FnMut(Subset) -> bool) -> Self {
        let players = players.to_vec();
        let size = 1usize << players.len();
        let mut members = vec![false; size];
        for (idx, slot) in members.iter_mut().enumerate() {
            *slot = pred(expand(&players, idx));
        }
        Family { players, members }
    }

    fn mask(&self) -> usize {
        self.members.len() - 1
    }

    pub fn contains(&self, x: Subset) -> bool {
        self.members[compress(&self.players, x)]
    }

    /// Number of member sets.
    pub fn len(&self) -> u64 {
        self.members.iter().filter(|&&b| b).count() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn members(&self) -> impl Iterator<Item = Subset> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| expand(&self.players, i))
    }

    /// `{x : complement(x) not in self}`.
    pub fn dual(&self) -> Family {
        let mask = self.mask();
        let members = (0..self.members.len())
            .map(|i| !self.members[!i & mask])
            .collect();
        Family {
            players: self.players.clone(),
            members,
        }
    }

    /// All subsets not in `self`.
    pub fn complement(&self) -> Family {
        Family {
            players: self.players.clone(),
            members: self.members.iter().map(|b| !b).collect(),
        }
    }

    pub fn is_subfamily_of(&self, other: &Family) -> bool {
        assert_eq!(
            self.players, other.players,
            "families over different players"
        );
        self.members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !a || b)
    }
}

fn expand(players: &[usize], idx: usize) -> Subset {
    players
        .iter()
        .enumerate()
        .filter(|(k, _)| idx >> k & 1 == 1)
        .map(|(_, &p)| p)
        .collect()
}

fn compress(players: &[usize], x: Subset) -> usize {
    players
        .iter()
        .enumerate()
        .filter(|(_, &p)| x.contains(p))
        .fold(0, |acc, (k, _)| acc | 1 << k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_is_an_involution_on_arbitrary_families() {
        let players = Subset::from_iter([1, 3, 4]);
        let f = Family::from_predicate(players, |x| x.len() == 1 || x.contains(3));
        assert_eq!(f.dual().dual(), f);
        assert_eq!(f.complement().complement(), f);
        for x in players.subsets() {
            assert_eq!(f.dual().contains(x), !f.contains(players.difference(x)));
        }
    }
}
