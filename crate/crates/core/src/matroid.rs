//! Matroids given by their circuits, optionally with a linear representation.
//!
//! Elements are `0..n`. Circuits are kept sorted by size and then
//! lexicographically so that two matroids on the same ground set are equal
//! exactly when their circuit lists are.

use thiserror::Error;

use crate::access::{AccessError, AccessStructure};
use crate::algebra::{AlgebraError, Matrix};
use crate::subset::{k_subsets, Subset, MAX_ELEMENTS};

/// Largest ground set for operations that search subsets.
pub const GROUND_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("{what} needs a ground set of at most {limit} elements, got {size}")]
    TooLarge {
        what: &'static str,
        limit: usize,
        size: usize,
    },
    #[error("circuit axioms violated: {0}")]
    AxiomViolation(String),
    #[error("element {0} is not in the ground set")]
    NotInGround(usize),
    #[error("dealer is a coloop; induced structure empty")]
    DealerIsColoop(usize),
    #[error("dealer {0} is a loop; every set would be authorized")]
    DealerIsLoop(usize),
    #[error("representation does not match the circuits")]
    RepresentationMismatch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Access(#[from] AccessError),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Clone, Debug)]
pub struct Matroid {
    ground: usize,
    circuits: Vec<Subset>,
    representation: Option<Matrix>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.circuits == other.circuits
    }
}

impl Eq for Matroid {}

/// Checks incomparability and circuit elimination on a family of sets.
pub fn verify_circuit_axioms(circuits: &[Subset]) -> bool {
    axiom_violation(circuits).is_none()
}

fn axiom_violation(circuits: &[Subset]) -> Option<String> {
    if circuits.iter().any(|c| c.is_empty()) {
        return Some("the empty set is not a circuit".into());
    }
    for (i, &a) in circuits.iter().enumerate() {
        for &b in &circuits[i + 1..] {
            if a == b {
                return Some(format!("{a} listed twice"));
            }
            if a.is_subset_of(b) || b.is_subset_of(a) {
                return Some(format!("{a} and {b} are nested"));
            }
            let u = a.union(b);
            for x in a.intersection(b).iter() {
                let rest = u.without(x);
                if !circuits.iter().any(|c| c.is_subset_of(rest)) {
                    return Some(format!("no circuit inside ({a} ∪ {b}) \\ {{{x}}}"));
                }
            }
        }
    }
    None
}

fn guard(what: &'static str, size: usize) -> Result<(), MatroidError> {
    if size > GROUND_LIMIT {
        Err(MatroidError::TooLarge {
            what,
            limit: GROUND_LIMIT,
            size,
        })
    } else {
        Ok(())
    }
}

/// Minimal sets satisfying a monotone predicate, searched by increasing size
/// and skipping supersets of sets already found.
fn minimal_sets_where(ground: usize, dependent: impl Fn(Subset) -> bool) -> Vec<Subset> {
    let all = Subset::range(ground);
    let mut found: Vec<Subset> = Vec::new();
    for size in 1..=ground {
        for s in k_subsets(all, size) {
            if found.iter().any(|c| c.is_subset_of(s)) {
                continue;
            }
            if dependent(s) {
                found.push(s);
            }
        }
    }
    found
}

impl Matroid {
    /// Matroid on `0..ground` with the given circuits; fails if the circuit
    /// axioms do not hold.
    pub fn from_circuits(ground: usize, circuits: &[Subset]) -> Result<Self, MatroidError> {
        if ground > MAX_ELEMENTS {
            return Err(MatroidError::TooLarge {
                what: "a matroid",
                limit: MAX_ELEMENTS,
                size: ground,
            });
        }
        let all = Subset::range(ground);
        if let Some(c) = circuits.iter().find(|c| !c.is_subset_of(all)) {
            return Err(MatroidError::NotInGround(
                c.difference(all).first().unwrap_or(0),
            ));
        }
        if let Some(why) = axiom_violation(circuits) {
            return Err(MatroidError::AxiomViolation(why));
        }
        let mut circuits = circuits.to_vec();
        circuits.sort_by(Subset::cmp_canonical);
        Ok(Matroid {
            ground,
            circuits,
            representation: None,
        })
    }

    /// The column matroid of `m`: circuits are the minimal linearly
    /// dependent sets of columns.
    pub fn from_matrix(m: &Matrix) -> Result<Self, MatroidError> {
        guard("from_matrix", m.cols())?;
        let circuits =
            minimal_sets_where(m.cols(), |s| m.select_columns(&s.to_vec()).rank() < s.len());
        Ok(Matroid {
            ground: m.cols(),
            circuits,
            representation: Some(m.clone()),
        })
    }

    /// Attaches a representation after checking that its column matroid
    /// has exactly these circuits.
    pub fn with_representation(self, rep: Matrix) -> Result<Self, MatroidError> {
        if rep.cols() != self.ground {
            return Err(MatroidError::RepresentationMismatch);
        }
        let from_rep = Matroid::from_matrix(&rep)?;
        if from_rep.circuits != self.circuits {
            return Err(MatroidError::RepresentationMismatch);
        }
        Ok(Matroid {
            representation: Some(rep),
            ..self
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn ground(&self) -> Subset {
        Subset::range(self.ground)
    }

    pub fn circuits(&self) -> &[Subset] {
        &self.circuits
    }

    pub fn representation(&self) -> Option<&Matrix> {
        self.representation.as_ref()
    }

    pub fn is_independent(&self, x: Subset) -> bool {
        !self.circuits.iter().any(|c| c.is_subset_of(x))
    }

    /// Size of a maximal independent subset of `x`.
    pub fn rank(&self, x: Subset) -> Result<usize, MatroidError> {
        if !x.is_subset_of(self.ground()) {
            return Err(MatroidError::NotInGround(
                x.difference(self.ground()).first().unwrap_or(0),
            ));
        }
        // greedy is exact for matroids
        let mut indep = Subset::EMPTY;
        for e in x.iter() {
            if self.is_independent(indep.with(e)) {
                indep = indep.with(e);
            }
        }
        Ok(indep.len())
    }

    pub fn full_rank(&self) -> usize {
        self.rank(self.ground()).expect("ground is within ground")
    }

    /// All bases, in lexicographic order.
    pub fn bases(&self) -> Result<Vec<Subset>, MatroidError> {
        guard("bases", self.ground)?;
        let r = self.full_rank();
        Ok(k_subsets(self.ground(), r)
            .into_iter()
            .filter(|&b| self.is_independent(b))
            .collect())
    }

    /// The dual matroid, whose bases are the complements of this matroid's
    /// bases. A representation, if present, is carried over as the null space
    /// of this one.
    pub fn dual(&self) -> Result<Matroid, MatroidError> {
        guard("dual", self.ground)?;
        let r = self.full_rank();
        let all = self.ground();
        // X is dependent in the dual iff its complement has lower rank
        let circuits =
            minimal_sets_where(self.ground, |x| self.rank(all.difference(x)).unwrap() < r);
        Ok(Matroid {
            ground: self.ground,
            circuits,
            representation: self.representation.as_ref().map(Matrix::null_space),
        })
    }

    /// Equal (not merely isomorphic) to its dual.
    pub fn is_identically_self_dual(&self) -> Result<bool, MatroidError> {
        Ok(self.dual()?.circuits == self.circuits)
    }

    /// The access structure with `dealer` as dealer: minimal sets are the
    /// circuits through the dealer with the dealer removed.
    ///
    /// Players are the other elements, labelled `1..n` in element order
    /// (element `e` becomes player `e + 1` below the dealer and `e` above).
    pub fn induced_access_structure(&self, dealer: usize) -> Result<AccessStructure, MatroidError> {
        if dealer >= self.ground {
            return Err(MatroidError::NotInGround(dealer));
        }
        let through: Vec<Subset> = self
            .circuits
            .iter()
            .filter(|c| c.contains(dealer))
            .map(|c| c.without(dealer))
            .collect();
        if through.is_empty() {
            return Err(MatroidError::DealerIsColoop(dealer));
        }
        if through.iter().any(|s| s.is_empty()) {
            return Err(MatroidError::DealerIsLoop(dealer));
        }
        let relabel = |s: &Subset| -> Subset { s.iter().map(|e| share_label(e, dealer)).collect() };
        let sets: Vec<Subset> = through.iter().map(relabel).collect();
        Ok(AccessStructure::on_players(self.ground - 1, &sets)?)
    }

    /// Text form: `ground <n>` followed by one circuit per line, or `matrix`
    /// followed by a matrix when a representation is present.
    pub fn to_text(&self) -> String {
        if let Some(rep) = &self.representation {
            return format!("matrix\n{}", rep.to_text());
        }
        let mut s = format!("ground {}\n", self.ground);
        for c in &self.circuits {
            s.push_str(
                &c.iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Matroid, MatroidError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let head = lines
            .next()
            .ok_or_else(|| MatroidError::Parse("empty matroid file".into()))?
            .trim();
        if head == "matrix" {
            let rest: Vec<&str> = lines.collect();
            let m = Matrix::from_text(&rest.join("\n"))?;
            return Matroid::from_matrix(&m);
        }
        let mut toks = head.split_whitespace();
        if toks.next() != Some("ground") {
            return Err(MatroidError::Parse(format!(
                "expected `ground <n>` or `matrix`, got `{head}`"
            )));
        }
        let n: usize = toks
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| MatroidError::Parse(format!("bad ground size in `{head}`")))?;
        let mut circuits = Vec::new();
        for line in lines {
            let mut c = Subset::EMPTY;
            for t in line.split_whitespace() {
                let e: usize = t
                    .parse()
                    .map_err(|_| MatroidError::Parse(format!("not an element: `{t}`")))?;
                if e >= n {
                    return Err(MatroidError::NotInGround(e));
                }
                c = c.with(e);
            }
            circuits.push(c);
        }
        Matroid::from_circuits(n, &circuits)
    }
}

/// Player label of ground element `e` when `dealer` is removed.
pub fn share_label(e: usize, dealer: usize) -> usize {
    if e < dealer {
        e + 1
    } else {
        e
    }
}

/// Ground element of player `label` when `dealer` is removed.
pub fn share_element(label: usize, dealer: usize) -> usize {
    if label <= dealer {
        label - 1
    } else {
        label
    }
}
