//! Pure-state quantum secret sharing schemes built from self-dual codes and
//! identically self-dual matroids.
//!
//! Shares are labelled `1..=n` in coordinate order with the dealer
//! coordinate removed. The stabilizer is the CSS code
//! `[G_short | 0 ; 0 | G_punct_dual]` and a secret `s` is encoded as the
//! uniform superposition over the coset `s·g + C_short`.

use std::fmt;

use thiserror::Error;

use crate::access::{labels, AccessError, AccessStructure};
use crate::algebra::{join, parse_numbers, AlgebraError, Elem, FieldSpec, Matrix};
use crate::codes::{CodeError, DealerSplit, LinearCode};
use crate::matroid::{share_element, share_label, Matroid, MatroidError};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QssError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Access(#[from] AccessError),
    #[error("code is not self-dual")]
    NotSelfDual,
    #[error("matroid is not identically self-dual")]
    NotIsd,
    #[error("matroid has no linear representation")]
    NoRepresentation,
    #[error("set {0} is not authorized")]
    NotAuthorized(Subset),
    #[error("share {0} is out of range")]
    ShareOutOfRange(usize),
    #[error("no codeword with support {0} and unit dealer entry")]
    NoCodeword(Subset),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("scheme file inconsistent with its code: section `{0}` differs")]
    Inconsistent(&'static str),
}

/// Stabilizer rows and logical operators as `2n`-column vectors `(x | z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerTableau {
    pub field: FieldSpec,
    pub n: usize,
    /// `(k - 1)` X-type rows followed by `(n - k)` Z-type rows.
    pub rows: Matrix,
    pub logical_x: Vec<Elem>,
    pub logical_z: Vec<Elem>,
}

/// `Σ x_i z'_i - z_i x'_i`.
pub fn symplectic_product(f: &FieldSpec, a: &[Elem], b: &[Elem]) -> Elem {
    let n = a.len() / 2;
    let (ax, az) = a.split_at(n);
    let (bx, bz) = b.split_at(n);
    f.sub(f.dot(ax, bz), f.dot(az, bx))
}

impl StabilizerTableau {
    /// Rows pairwise commute; logicals commute with every row and
    /// anticommute with each other.
    pub fn is_valid(&self) -> bool {
        let f = &self.field;
        let rows: Vec<&[Elem]> = self.rows.row_iter().collect();
        let rows_commute = rows.iter().enumerate().all(|(i, a)| {
            rows[i + 1..]
                .iter()
                .all(|b| symplectic_product(f, a, b) == 0)
        });
        let logicals_commute = rows.iter().all(|r| {
            symplectic_product(f, r, &self.logical_x) == 0
                && symplectic_product(f, r, &self.logical_z) == 0
        });
        rows_commute
            && logicals_commute
            && symplectic_product(f, &self.logical_x, &self.logical_z) != 0
    }

    /// The X-part (first `n` columns) of every row.
    pub fn x_block(&self) -> Matrix {
        self.rows.select_columns(&(0..self.n).collect::<Vec<_>>())
    }

    /// The Z-part (last `n` columns) of every row.
    pub fn z_block(&self) -> Matrix {
        self.rows
            .select_columns(&(self.n..2 * self.n).collect::<Vec<_>>())
    }

    /// The tableau after conjugation by `gate`.
    pub fn apply(&self, gate: &Gate) -> StabilizerTableau {
        let f = &self.field;
        let n = self.n;
        let act = |v: &[Elem]| {
            let mut v = v.to_vec();
            gate.act_symplectic(f, n, &mut v);
            v
        };
        let rows: Vec<Vec<Elem>> = self.rows.row_iter().map(act).collect();
        StabilizerTableau {
            field: f.clone(),
            n,
            rows: Matrix::from_rows(f, 2 * n, &rows).expect("width preserved"),
            logical_x: act(&self.logical_x),
            logical_z: act(&self.logical_z),
        }
    }

    pub fn apply_all(&self, gates: &[Gate]) -> StabilizerTableau {
        gates.iter().fold(self.clone(), |t, g| t.apply(g))
    }
}

/// Gates on shares, with 1-based share labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    /// `a_target += lambda * a_control`
    Add {
        lambda: Elem,
        control: usize,
        target: usize,
    },
    /// `a_share *= beta`
    Mul {
        beta: Elem,
        share: usize,
    },
    Swap(usize, usize),
}

impl Gate {
    pub fn shares(&self) -> Subset {
        match *self {
            Gate::Add {
                control, target, ..
            } => Subset::from_iter([control, target]),
            Gate::Mul { share, .. } => Subset::singleton(share),
            Gate::Swap(a, b) => Subset::from_iter([a, b]),
        }
    }

    /// Action on a computational basis string (0-based positions).
    pub fn act_basis(&self, f: &FieldSpec, word: &mut [Elem]) {
        match *self {
            Gate::Add {
                lambda,
                control,
                target,
            } => {
                let c = word[control - 1];
                word[target - 1] = f.add(word[target - 1], f.mul(lambda, c));
            }
            Gate::Mul { beta, share } => word[share - 1] = f.mul(beta, word[share - 1]),
            Gate::Swap(a, b) => word.swap(a - 1, b - 1),
        }
    }

    /// Conjugation action on a `(x | z)` vector: ADD maps
    /// `x_t += λ x_c` and `z_c -= λ z_t`; MUL maps `x_i *= β` and
    /// `z_i *= β⁻¹`.
    pub fn act_symplectic(&self, f: &FieldSpec, n: usize, v: &mut [Elem]) {
        match *self {
            Gate::Add {
                lambda,
                control,
                target,
            } => {
                let (c, t) = (control - 1, target - 1);
                v[t] = f.add(v[t], f.mul(lambda, v[c]));
                v[n + c] = f.sub(v[n + c], f.mul(lambda, v[n + t]));
            }
            Gate::Mul { beta, share } => {
                let i = share - 1;
                let inv = f.inv(beta).expect("MUL by a nonzero scalar");
                v[i] = f.mul(beta, v[i]);
                v[n + i] = f.mul(inv, v[n + i]);
            }
            Gate::Swap(a, b) => {
                v.swap(a - 1, b - 1);
                v.swap(n + a - 1, n + b - 1);
            }
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Add {
                lambda,
                control,
                target,
            } => write!(f, "ADD {lambda} {control} {target}"),
            Gate::Mul { beta, share } => write!(f, "MUL {beta} {share}"),
            Gate::Swap(a, b) => write!(f, "SWAP {a} {b}"),
        }
    }
}

impl Gate {
    pub fn parse(line: &str, field: &FieldSpec, n: usize) -> Result<Gate, QssError> {
        let mut toks = line.split_whitespace();
        let verb = toks.next().unwrap_or("");
        let nums = parse_numbers(&toks.collect::<Vec<_>>().join(" "))?;
        let share = |x: u64| {
            let x = x as usize;
            if (1..=n).contains(&x) {
                Ok(x)
            } else {
                Err(QssError::ShareOutOfRange(x))
            }
        };
        let scalar = |x: u64| {
            if x != 0 && x < field.order() as u64 {
                Ok(x as Elem)
            } else {
                Err(QssError::Parse(format!("bad gate scalar {x} in `{line}`")))
            }
        };
        match (verb, nums.as_slice()) {
            ("ADD", &[l, c, t]) => Ok(Gate::Add {
                lambda: scalar(l)?,
                control: share(c)?,
                target: share(t)?,
            }),
            ("MUL", &[b, i]) => Ok(Gate::Mul {
                beta: scalar(b)?,
                share: share(i)?,
            }),
            ("SWAP", &[a, b]) => Ok(Gate::Swap(share(a)?, share(b)?)),
            _ => Err(QssError::Parse(format!("not a gate: `{line}`"))),
        }
    }
}

/// Reconstruction circuit for one authorized set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GatePlan {
    /// The minimal authorized set the plan acts on.
    pub set: Subset,
    /// Share that ends up holding the secret.
    pub target: usize,
    pub gates: Vec<Gate>,
    /// Number of leading gates that collect the secret into the target.
    pub phase1_len: usize,
    /// The logical X representative carried to `e_target` by the gates.
    pub logical_x: Vec<Elem>,
}

impl GatePlan {
    pub fn phase1(&self) -> &[Gate] {
        &self.gates[..self.phase1_len]
    }

    pub fn touched(&self) -> Subset {
        self.gates
            .iter()
            .fold(Subset::EMPTY, |acc, g| acc.union(g.shares()))
    }

    /// One gate per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("target {}\n", self.target);
        for g in &self.gates {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct QssScheme {
    pub code: LinearCode,
    pub dealer: usize,
    pub split: DealerSplit,
    pub tableau: StabilizerTableau,
    /// Minimal authorized sets, as share labels.
    pub minimal_access: Vec<Subset>,
    access: AccessStructure,
}

impl PartialEq for QssScheme {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code
            && self.dealer == other.dealer
            && self.split == other.split
            && self.tableau == other.tableau
            && self.minimal_access == other.minimal_access
    }
}

impl QssScheme {
    pub fn field(&self) -> &FieldSpec {
        self.code.field()
    }

    pub fn num_shares(&self) -> usize {
        self.code.n() - 1
    }

    /// Share size over secret size; 1 for every scheme built here.
    pub fn rate(&self) -> usize {
        1
    }

    pub fn access_structure(&self) -> &AccessStructure {
        &self.access
    }

    /// Code coordinate holding share `label`.
    pub fn coordinate(&self, label: usize) -> usize {
        share_element(label, self.dealer)
    }

    fn to_shares(&self, word: &[Elem]) -> Vec<Elem> {
        word.iter()
            .enumerate()
            .filter(|&(j, _)| j != self.dealer)
            .map(|(_, &x)| x)
            .collect()
    }

    fn coord_set(&self, shares: Subset) -> Subset {
        shares.iter().map(|l| self.coordinate(l)).collect()
    }

    /// The basis strings of the encoding of `|s>`: the coset `s·g + C_short`.
    pub fn encode_basis(&self, s: Elem) -> Result<Vec<Vec<Elem>>, QssError> {
        let f = self.field();
        if !f.is_element(s) {
            return Err(AlgebraError::BadEntry {
                value: s as u64,
                order: f.order(),
            }
            .into());
        }
        let short = LinearCode::new(self.split.gen_short.clone());
        let shift: Vec<Elem> = self.split.g.iter().map(|&x| f.mul(s, x)).collect();
        Ok(short
            .codewords()?
            .map(|mut w| {
                f.axpy(&mut w, 1, &shift);
                w
            })
            .collect())
    }

    /// Reconstruction plan for `a`, acting on the first minimal authorized
    /// set inside it.
    ///
    /// Phase 1 writes `s = -Σ c'_i a_i` into the target, where `c'` is the
    /// dual codeword on `A ∪ {dealer}` with unit dealer entry. Phase 2
    /// subtracts `c_j s` from the other shares of `A`, where `c` is the
    /// codeword of the code itself on the same support.
    pub fn reconstruction_plan(&self, a: Subset) -> Result<GatePlan, QssError> {
        let f = self.field();
        let set = self
            .access
            .minimal_set_within(a)
            .ok_or(QssError::NotAuthorized(a))?;
        let target = set.first().ok_or(QssError::NoCodeword(set))?;
        let coords = self.coord_set(set).with(self.dealer);
        let dual_word = self
            .code
            .dual()
            .codeword_on_support(coords, self.dealer)
            .ok_or(QssError::NoCodeword(set))?;
        let word = self
            .code
            .codeword_on_support(coords, self.dealer)
            .ok_or(QssError::NoCodeword(set))?;

        let mut gates = Vec::new();
        let lead = f.neg(dual_word[self.coordinate(target)]);
        if lead != 1 {
            gates.push(Gate::Mul {
                beta: lead,
                share: target,
            });
        }
        for i in set.without(target).iter() {
            gates.push(Gate::Add {
                lambda: f.neg(dual_word[self.coordinate(i)]),
                control: i,
                target,
            });
        }
        let phase1_len = gates.len();
        for j in set.without(target).iter() {
            gates.push(Gate::Add {
                lambda: f.neg(word[self.coordinate(j)]),
                control: target,
                target: j,
            });
        }
        let n = self.num_shares();
        let mut logical_x = self.to_shares(&word);
        logical_x.resize(2 * n, 0);
        Ok(GatePlan {
            set,
            target,
            gates,
            phase1_len,
            logical_x,
        })
    }

    /// Checks a plan against the tableau: only shares of the plan's set are
    /// touched, the logical X becomes `X_target`, the original logical X
    /// still agrees with it modulo the stabilizer, and every stabilizer row
    /// vanishes on the target in both parts.
    pub fn check_plan(&self, plan: &GatePlan) -> Result<bool, QssError> {
        let f = self.field();
        let n = self.num_shares();
        let after = self.tableau.apply_all(&plan.gates);
        let mut rep = plan.logical_x.clone();
        for g in &plan.gates {
            g.act_symplectic(f, n, &mut rep);
        }
        let mut unit = vec![0; 2 * n];
        unit[plan.target - 1] = 1;

        let mut diff = after.logical_x.clone();
        f.axpy(&mut diff, f.neg(1), &unit);
        let diff = Matrix::from_rows(f, 2 * n, &[diff])?;
        let in_stabilizer = after.rows.row_space_contains(&diff)?;

        let t = plan.target - 1;
        let clear = after.rows.row_iter().all(|r| r[t] == 0 && r[n + t] == 0);
        Ok(plan.touched().is_subset_of(plan.set)
            && plan.set.contains(plan.target)
            && rep == unit
            && in_stabilizer
            && clear
            && after.is_valid())
    }

    /// Text export: sections `code`, `dealer`, `g`, `stabilizer`,
    /// `logical_x`, `logical_z`, `minimal_access`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str("code\n");
        s.push_str(&self.code.to_text());
        s.push_str(&format!("dealer {}\n", self.dealer));
        s.push_str(&format!("g\n{}\n", join(&self.split.g)));
        s.push_str("stabilizer\n");
        s.push_str(&self.tableau.rows.to_text());
        s.push_str(&format!("logical_x\n{}\n", join(&self.tableau.logical_x)));
        s.push_str(&format!("logical_z\n{}\n", join(&self.tableau.logical_z)));
        s.push_str("minimal_access\n");
        s.push_str(&self.access.to_text());
        s
    }

    /// Parses a scheme export, rebuilding the scheme from its code and
    /// dealer and rejecting the file if any stored section disagrees.
    pub fn from_text(text: &str) -> Result<QssScheme, QssError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let expect = |name: &str, lines: &mut dyn Iterator<Item = &str>| match lines.next() {
            Some(l) if l == name => Ok(()),
            other => Err(QssError::Parse(format!(
                "expected section `{name}`, got {other:?}"
            ))),
        };
        expect("code", &mut lines)?;
        let code = LinearCode::new(Matrix::parse_lines(&mut lines)?);
        let dealer_line = lines
            .next()
            .ok_or_else(|| QssError::Parse("missing `dealer` line".into()))?;
        let dealer = match dealer_line.split_whitespace().collect::<Vec<_>>()[..] {
            ["dealer", d] => d
                .parse::<usize>()
                .map_err(|_| QssError::Parse(format!("bad dealer `{d}`")))?,
            _ => {
                return Err(QssError::Parse(format!(
                    "expected `dealer <d>`, got `{dealer_line}`"
                )))
            }
        };
        expect("g", &mut lines)?;
        let g = vector_line(lines.next(), "g")?;
        expect("stabilizer", &mut lines)?;
        let rows = Matrix::parse_lines(&mut lines)?;
        expect("logical_x", &mut lines)?;
        let lx = vector_line(lines.next(), "logical_x")?;
        expect("logical_z", &mut lines)?;
        let lz = vector_line(lines.next(), "logical_z")?;
        expect("minimal_access", &mut lines)?;
        let access = AccessStructure::parse_lines(&mut lines)?;
        if let Some(extra) = lines.next() {
            return Err(QssError::Parse(format!("unexpected line `{extra}`")));
        }

        let scheme = build_from_isd_code(code, dealer)?;
        let widened = |v: &[Elem]| v.iter().map(|&x| x as u64).collect::<Vec<_>>();
        if widened(&scheme.split.g) != g {
            return Err(QssError::Inconsistent("g"));
        }
        if scheme.tableau.rows != rows {
            return Err(QssError::Inconsistent("stabilizer"));
        }
        if widened(&scheme.tableau.logical_x) != lx {
            return Err(QssError::Inconsistent("logical_x"));
        }
        if widened(&scheme.tableau.logical_z) != lz {
            return Err(QssError::Inconsistent("logical_z"));
        }
        if scheme.access != access {
            return Err(QssError::Inconsistent("minimal_access"));
        }
        Ok(scheme)
    }
}

fn vector_line(line: Option<&str>, name: &str) -> Result<Vec<u64>, QssError> {
    let line = line.ok_or_else(|| QssError::Parse(format!("missing `{name}` vector")))?;
    Ok(parse_numbers(line)?)
}

/// Scheme from a self-dual code with the given dealer coordinate.
pub fn build_scheme(code: &LinearCode, dealer: usize) -> Result<QssScheme, QssError> {
    if !code.is_self_dual() {
        return Err(QssError::NotSelfDual);
    }
    build_from_isd_code(code.clone(), dealer)
}

/// Scheme from an identically self-dual matroid with a representation. The
/// represented code need not be self-dual.
pub fn build_scheme_from_matroid(m: &Matroid, dealer: usize) -> Result<QssScheme, QssError> {
    let rep = m.representation().ok_or(QssError::NoRepresentation)?;
    if !m.is_identically_self_dual()? {
        return Err(QssError::NotIsd);
    }
    if Matroid::from_matrix(rep)? != *m {
        return Err(MatroidError::RepresentationMismatch.into());
    }
    build_from_isd_code(LinearCode::new(rep.clone()), dealer)
}

/// Shared construction for codes whose column matroid is identically
/// self-dual.
fn build_from_isd_code(code: LinearCode, dealer: usize) -> Result<QssScheme, QssError> {
    let f = code.field().clone();
    let split = code.dealer_split(dealer)?;
    let dual = code.dual();
    if !code.is_self_dual()
        && Matroid::from_matrix(code.generator())? != Matroid::from_matrix(dual.generator())?
    {
        return Err(QssError::NotIsd);
    }
    let n = code.n() - 1;

    let x_rows = split.gen_short.clone();
    let z_rows = code.puncture(dealer)?.dual().generator().clone();
    let top = x_rows.hstack(&Matrix::zeros(&f, x_rows.rows(), n))?;
    let bottom = Matrix::zeros(&f, z_rows.rows(), n).hstack(&z_rows)?;
    let rows = top.vstack(&bottom)?;

    let g_dual = if code.is_self_dual() {
        split.g.clone()
    } else {
        dual.dealer_split(dealer)?.g
    };
    let mut logical_x = split.g.clone();
    logical_x.resize(2 * n, 0);
    let mut logical_z = vec![0; n];
    logical_z.extend_from_slice(&g_dual);
    let tableau = StabilizerTableau {
        field: f,
        n,
        rows,
        logical_x,
        logical_z,
    };

    let sets: Vec<Subset> = dual
        .minimal_codewords()?
        .into_iter()
        .filter(|c| c.support.contains(dealer))
        .map(|c| {
            c.support
                .without(dealer)
                .iter()
                .map(|e| share_label(e, dealer))
                .collect()
        })
        .collect();
    let access = AccessStructure::on_players(n, &sets)?;
    Ok(QssScheme {
        code,
        dealer,
        split,
        tableau,
        minimal_access: access.minimal_sets().to_vec(),
        access,
    })
}

impl fmt::Display for QssScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "[{}, {}] code over GF({}), dealer {}, {} shares",
            self.code.n(),
            self.code.k(),
            self.field().order(),
            self.dealer,
            self.num_shares()
        )?;
        for s in &self.minimal_access {
            writeln!(f, "  {}", labels(*s))?;
        }
        Ok(())
    }
}
