//! Exact simulation of encoded secrets and the recovery/privacy harness.
//!
//! Amplitudes are complex rationals divided by `√N` for a shared integer
//! `N`, which covers every state reached here: encodings are uniform coset
//! superpositions and every gate permutes basis strings.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{Elem, FieldSpec};
use crate::qss::{Gate, GatePlan, QssError, QssScheme};
use crate::subset::Subset;

pub type Amplitude = Complex<BigRational>;

/// Largest `q^n` a state may span.
pub const STATE_LIMIT: u64 = 1 << 22;
/// Largest side of a density block.
pub const BLOCK_LIMIT: u64 = 4096;
/// Largest share count for exhaustive classification.
pub const CLASSIFY_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error(transparent)]
    Scheme(#[from] QssError),
    #[error("secret amplitudes are not normalized")]
    NotNormalized,
    #[error("expected {expected} secret amplitudes, got {got}")]
    SecretLength { expected: usize, got: usize },
    #[error("share {0} is out of range")]
    OutOfRange(usize),
    #[error("{what} exceeds the simulation limit")]
    TooLarge { what: &'static str },
    #[error("set is authorized; privacy check inapplicable")]
    Authorized(Subset),
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn amp(re: BigRational, im: BigRational) -> Amplitude {
    Complex::new(re, im)
}

fn norm_sqr(a: &Amplitude) -> BigRational {
    &a.re * &a.re + &a.im * &a.im
}

/// A state `Σ coeff(x) |x> / √N` on `n` qudits.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseState {
    pub field: FieldSpec,
    pub n: usize,
    pub amplitudes: BTreeMap<Vec<Elem>, Amplitude>,
    pub normalizer: BigInt,
}

impl SparseState {
    /// `Σ |coeff|² / N`, exactly 1 for every state built here.
    pub fn norm_sqr(&self) -> BigRational {
        let total = self
            .amplitudes
            .values()
            .fold(BigRational::zero(), |acc, a| acc + norm_sqr(a));
        total / BigRational::from_integer(self.normalizer.clone())
    }

    pub fn apply_gate(&self, gate: &Gate) -> Result<SparseState, SimError> {
        if let Some(bad) = gate.shares().iter().find(|&s| s == 0 || s > self.n) {
            return Err(SimError::OutOfRange(bad));
        }
        let amplitudes = self
            .amplitudes
            .iter()
            .map(|(x, a)| {
                let mut y = x.clone();
                gate.act_basis(&self.field, &mut y);
                (y, a.clone())
            })
            .collect();
        Ok(SparseState {
            amplitudes,
            ..self.clone()
        })
    }

    pub fn apply_gates(&self, gates: &[Gate]) -> Result<SparseState, SimError> {
        gates.iter().try_fold(self.clone(), |s, g| s.apply_gate(g))
    }

    /// Partial trace onto the shares in `keep`.
    pub fn reduced_state(&self, keep: Subset) -> Result<DensityBlock, SimError> {
        if let Some(bad) = keep.iter().find(|&s| s == 0 || s > self.n) {
            return Err(SimError::OutOfRange(bad));
        }
        let side = (self.field.order() as u64).checked_pow(keep.len() as u32);
        if side.is_none_or(|s| s > BLOCK_LIMIT) {
            return Err(SimError::TooLarge {
                what: "density block",
            });
        }
        let kept: Vec<usize> = keep.iter().map(|l| l - 1).collect();
        let traced: Vec<usize> = (0..self.n).filter(|i| !keep.contains(i + 1)).collect();
        let mut groups: BTreeMap<Vec<Elem>, Vec<(Vec<Elem>, &Amplitude)>> = BTreeMap::new();
        for (x, a) in &self.amplitudes {
            let k: Vec<Elem> = kept.iter().map(|&i| x[i]).collect();
            let t: Vec<Elem> = traced.iter().map(|&i| x[i]).collect();
            groups.entry(t).or_default().push((k, a));
        }
        let scale = BigRational::from_integer(self.normalizer.clone()).recip();
        let mut entries: BTreeMap<(Vec<Elem>, Vec<Elem>), Amplitude> = BTreeMap::new();
        for members in groups.values() {
            for (b, x) in members {
                for (b2, y) in members {
                    let term = *x * y.conj();
                    let e = entries
                        .entry((b.clone(), b2.clone()))
                        .or_insert_with(Amplitude::zero);
                    *e = &*e + term;
                }
            }
        }
        let entries = entries
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k, v.scale(scale.clone())))
            .collect();
        Ok(DensityBlock {
            subset: keep,
            entries,
        })
    }
}

/// A density matrix on the shares in `subset`, stored as its nonzero
/// entries indexed by (row string, column string).
#[derive(Clone, Debug, PartialEq)]
pub struct DensityBlock {
    pub subset: Subset,
    pub entries: BTreeMap<(Vec<Elem>, Vec<Elem>), Amplitude>,
}

impl DensityBlock {
    /// `|ψ><ψ|` for a single-qudit vector `psi`.
    pub fn pure(share: usize, psi: &[Amplitude]) -> DensityBlock {
        let mut entries = BTreeMap::new();
        for (a, x) in psi.iter().enumerate() {
            for (b, y) in psi.iter().enumerate() {
                let v = x * y.conj();
                if !v.is_zero() {
                    entries.insert((vec![a as Elem], vec![b as Elem]), v);
                }
            }
        }
        DensityBlock {
            subset: Subset::singleton(share),
            entries,
        }
    }

    pub fn trace(&self) -> Amplitude {
        self.entries
            .iter()
            .filter(|((r, c), _)| r == c)
            .fold(Amplitude::zero(), |acc, (_, v)| acc + v)
    }

    pub fn is_hermitian(&self) -> bool {
        self.entries.iter().all(|((r, c), v)| {
            self.entries
                .get(&(c.clone(), r.clone()))
                .is_some_and(|w| *w == v.conj())
        })
    }

    /// Nonnegative diagonal and nonnegative 2×2 principal minors.
    pub fn passes_minor_checks(&self) -> bool {
        let zero = Amplitude::zero();
        let get = |r: &Vec<Elem>, c: &Vec<Elem>| {
            self.entries
                .get(&(r.clone(), c.clone()))
                .unwrap_or(&zero)
                .clone()
        };
        let diag: Vec<&Vec<Elem>> = self
            .entries
            .keys()
            .filter(|(r, c)| r == c)
            .map(|(r, _)| r)
            .collect();
        let diag_ok = diag.iter().all(|r| {
            let v = get(r, r);
            v.im.is_zero() && v.re >= BigRational::zero()
        });
        diag_ok
            && diag.iter().enumerate().all(|(i, r)| {
                diag[i + 1..].iter().all(|s| {
                    let off = get(r, s);
                    get(r, r).re * get(s, s).re >= norm_sqr(&off)
                })
            })
    }
}

/// A secret as amplitudes on the `q` levels of one qudit.
#[derive(Clone, Debug, PartialEq)]
pub struct Secret {
    pub label: String,
    pub amps: Vec<Amplitude>,
}

/// The test secrets: every basis state, then `(3/5, 4/5)` and
/// `(3/5, 4i/5)` on the first two levels.
pub fn test_secrets(q: usize) -> Vec<Secret> {
    let zero = || amp(rational(0, 1), rational(0, 1));
    let mut out: Vec<Secret> = (0..q)
        .map(|s| {
            let mut amps = vec![zero(); q];
            amps[s] = Amplitude::one();
            Secret {
                label: format!("basis:{s}"),
                amps,
            }
        })
        .collect();
    for (label, second) in [
        ("super:a", amp(rational(4, 5), rational(0, 1))),
        ("super:b", amp(rational(0, 1), rational(4, 5))),
    ] {
        let mut amps = vec![zero(); q];
        amps[0] = amp(rational(3, 5), rational(0, 1));
        amps[1] = second;
        out.push(Secret {
            label: label.into(),
            amps,
        });
    }
    out
}

/// The encoding of `Σ amps[s] |s>`.
pub fn prepare_secret(scheme: &QssScheme, amps: &[Amplitude]) -> Result<SparseState, SimError> {
    let f = scheme.field();
    let q = f.order();
    if amps.len() != q {
        return Err(SimError::SecretLength {
            expected: q,
            got: amps.len(),
        });
    }
    let total = amps
        .iter()
        .fold(BigRational::zero(), |acc, a| acc + norm_sqr(a));
    if !total.is_one() {
        return Err(SimError::NotNormalized);
    }
    let n = scheme.num_shares();
    if (q as u64)
        .checked_pow(n as u32)
        .is_none_or(|s| s > STATE_LIMIT)
    {
        return Err(SimError::TooLarge { what: "state" });
    }
    let mut amplitudes = BTreeMap::new();
    let mut coset_size = 0u64;
    for (s, a) in amps.iter().enumerate() {
        let coset = scheme.encode_basis(s as Elem)?;
        coset_size = coset.len() as u64;
        if a.is_zero() {
            continue;
        }
        for x in coset {
            amplitudes.insert(x, a.clone());
        }
    }
    Ok(SparseState {
        field: f.clone(),
        n,
        amplitudes,
        normalizer: BigInt::from(coset_size),
    })
}

pub fn apply_plan(state: &SparseState, plan: &GatePlan) -> Result<SparseState, SimError> {
    state.apply_gates(&plan.gates)
}

/// One harness check, printed as `<subset> <label> PASS|FAIL`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub subset: Subset,
    pub label: String,
    pub pass: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{} {} {}", self.subset, self.label, verdict)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        writeln!(f, "TOTAL {} {}", self.passed(), self.failed())
    }
}

/// Runs the plan for `a` on every test secret and compares the target
/// qudit with the pure secret state.
pub fn check_recovery(scheme: &QssScheme, a: Subset) -> Result<Report, SimError> {
    let plan = scheme.reconstruction_plan(a)?;
    let mut report = Report::default();
    for secret in test_secrets(scheme.field().order()) {
        let state = apply_plan(&prepare_secret(scheme, &secret.amps)?, &plan)?;
        let got = state.reduced_state(Subset::singleton(plan.target))?;
        report.checks.push(Check {
            subset: a,
            label: format!("recover:{}", secret.label),
            pass: got == DensityBlock::pure(plan.target, &secret.amps),
        });
    }
    Ok(report)
}

fn reduced_states(scheme: &QssScheme, b: Subset) -> Result<Vec<(String, DensityBlock)>, SimError> {
    test_secrets(scheme.field().order())
        .into_iter()
        .map(|s| Ok((s.label, prepare_secret(scheme, &s.amps)?.reduced_state(b)?)))
        .collect()
}

/// Compares the reduced state on `b` for every test secret against that of
/// `basis:0`.
pub fn check_privacy(scheme: &QssScheme, b: Subset) -> Result<Report, SimError> {
    if scheme.access_structure().authorizes(b) {
        return Err(SimError::Authorized(b));
    }
    let states = reduced_states(scheme, b)?;
    let (_, reference) = &states[0];
    Ok(Report {
        checks: states[1..]
            .iter()
            .map(|(label, rho)| Check {
                subset: b,
                label: format!("private:{label}"),
                pass: rho == reference,
            })
            .collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Authorized,
    Unauthorized,
    /// Both or neither of recovery and privacy held.
    Inconsistent,
}

#[derive(Clone, Debug)]
pub struct Classification {
    /// Every subset of shares in lexicographic order with its simulated
    /// verdict.
    pub verdicts: Vec<(Subset, Verdict)>,
    pub report: Report,
}

impl Classification {
    pub fn authorized(&self) -> Vec<Subset> {
        self.with(Verdict::Authorized)
    }

    pub fn unauthorized(&self) -> Vec<Subset> {
        self.with(Verdict::Unauthorized)
    }

    fn with(&self, v: Verdict) -> Vec<Subset> {
        self.verdicts
            .iter()
            .filter(|(_, w)| *w == v)
            .map(|(s, _)| *s)
            .collect()
    }
}

/// Labels every subset of shares by simulation.
///
/// A subset counts as authorized when the plan for a contained minimal set
/// recovers every test secret and its reduced state distinguishes secrets,
/// and as unauthorized when its reduced state is independent of the secret
/// and no contained minimal set exists. Each subset's check passes when the
/// verdict matches the access structure and the complement gets the
/// opposite verdict.
pub fn classify_all_subsets(scheme: &QssScheme) -> Result<Classification, SimError> {
    let n = scheme.num_shares();
    if n > CLASSIFY_LIMIT {
        return Err(SimError::TooLarge {
            what: "share count for classification",
        });
    }
    let all = Subset::span(1, n);
    let mut subsets: Vec<Subset> = all.subsets().collect();
    subsets.sort_by(Subset::cmp_lex);

    let mut verdicts = Vec::with_capacity(subsets.len());
    for &x in &subsets {
        let recovers = match scheme.access_structure().minimal_set_within(x) {
            Some(_) => check_recovery(scheme, x)?.all_pass(),
            None => false,
        };
        let states = reduced_states(scheme, x)?;
        let private = states.iter().all(|(_, rho)| *rho == states[0].1);
        let v = match (recovers, private) {
            (true, false) => Verdict::Authorized,
            (false, true) => Verdict::Unauthorized,
            _ => Verdict::Inconsistent,
        };
        verdicts.push((x, v));
    }

    let lookup: BTreeMap<Subset, Verdict> = verdicts.iter().copied().collect();
    let checks = verdicts
        .iter()
        .map(|&(x, v)| {
            let expected = if scheme.access_structure().authorizes(x) {
                Verdict::Authorized
            } else {
                Verdict::Unauthorized
            };
            let opposite = match v {
                Verdict::Authorized => Verdict::Unauthorized,
                Verdict::Unauthorized => Verdict::Authorized,
                Verdict::Inconsistent => Verdict::Inconsistent,
            };
            let complement_ok = lookup[&all.difference(x)] == opposite;
            Check {
                subset: x,
                label: "classify".into(),
                pass: v == expected && v != Verdict::Inconsistent && complement_ok,
            }
        })
        .collect();
    Ok(Classification {
        verdicts,
        report: Report { checks },
    })
}

/// Recovery on every minimal set, privacy on every unauthorized set, and
/// the full classification, in that order.
pub fn verify_all(scheme: &QssScheme) -> Result<Report, SimError> {
    let mut report = Report::default();
    for &a in &scheme.minimal_access {
        report.extend(check_recovery(scheme, a)?);
    }
    let classification = classify_all_subsets(scheme)?;
    for x in classification.unauthorized() {
        report.extend(check_privacy(scheme, x)?);
    }
    report.extend(classification.report);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::catalog::{extended_hamming, repetition_pair, tetracode};
    use crate::qss::build_scheme;

    fn set(v: &[usize]) -> Subset {
        v.iter().copied().collect()
    }

    fn basis_state(f: &FieldSpec, words: &[&[Elem]]) -> SparseState {
        SparseState {
            field: f.clone(),
            n: words[0].len(),
            amplitudes: words
                .iter()
                .map(|w| (w.to_vec(), Amplitude::one()))
                .collect(),
            normalizer: BigInt::from(words.len()),
        }
    }

    #[test]
    fn gate_semantics() {
        let f2 = FieldSpec::new(2).unwrap();
        let s = basis_state(&f2, &[&[1, 0]]);
        let out = s
            .apply_gate(&Gate::Add {
                lambda: 1,
                control: 1,
                target: 2,
            })
            .unwrap();
        assert!(out.amplitudes.contains_key(&vec![1, 1]));

        let f3 = FieldSpec::new(3).unwrap();
        let s = basis_state(&f3, &[&[1]]);
        let out = s.apply_gate(&Gate::Mul { beta: 2, share: 1 }).unwrap();
        assert!(out.amplitudes.contains_key(&vec![2]));

        assert_eq!(
            s.apply_gate(&Gate::Swap(1, 2)).unwrap_err(),
            SimError::OutOfRange(2)
        );
    }

    #[test]
    fn reduced_state_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        let plus = basis_state(&f2, &[&[0, 0], &[0, 1]]);
        let rho = plus.reduced_state(set(&[1])).unwrap();
        assert_eq!(rho.entries.len(), 1);
        assert_eq!(rho.entries[&(vec![0], vec![0])], Amplitude::one());

        let bell = basis_state(&f2, &[&[0, 0], &[1, 1]]);
        let rho = bell.reduced_state(set(&[1])).unwrap();
        let half = amp(rational(1, 2), rational(0, 1));
        assert_eq!(rho.entries.len(), 2);
        assert_eq!(rho.entries[&(vec![0], vec![0])], half);
        assert_eq!(rho.entries[&(vec![1], vec![1])], half);
        assert!(rho.is_hermitian() && rho.passes_minor_checks());
        assert_eq!(rho.trace(), Amplitude::one());
    }

    #[test]
    fn trivial_scheme_superposition() {
        let s = build_scheme(&repetition_pair(), 0).unwrap();
        let secrets = test_secrets(2);
        let st = prepare_secret(&s, &secrets[2].amps).unwrap();
        assert_eq!(st.normalizer, BigInt::from(1));
        assert_eq!(st.amplitudes[&vec![0]], amp(rational(3, 5), rational(0, 1)));
        assert_eq!(st.amplitudes[&vec![1]], amp(rational(4, 5), rational(0, 1)));
        assert!(check_recovery(&s, set(&[1])).unwrap().all_pass());
        assert!(check_privacy(&s, Subset::EMPTY).unwrap().all_pass());
        let c = classify_all_subsets(&s).unwrap();
        assert_eq!(c.authorized(), vec![set(&[1])]);
        assert_eq!(c.unauthorized(), vec![Subset::EMPTY]);
    }

    #[test]
    fn unnormalized_secret_is_rejected() {
        let s = build_scheme(&repetition_pair(), 0).unwrap();
        let bad = vec![Amplitude::one(), Amplitude::one()];
        assert_eq!(
            prepare_secret(&s, &bad).unwrap_err(),
            SimError::NotNormalized
        );
    }

    #[test]
    fn privacy_on_authorized_set_is_rejected() {
        let s = build_scheme(&extended_hamming(), 0).unwrap();
        let err = check_privacy(&s, set(&[1, 2, 7])).unwrap_err();
        assert_eq!(
            err.to_string(),
            "set is authorized; privacy check inapplicable"
        );
    }

    #[test]
    fn gates_preserve_norm_and_amplitudes() {
        let s = build_scheme(&tetracode(), 0).unwrap();
        let secret = &test_secrets(3)[4];
        let st = prepare_secret(&s, &secret.amps).unwrap();
        let plan = s.reconstruction_plan(set(&[2, 3])).unwrap();
        let out = apply_plan(&st, &plan).unwrap();
        assert!(out.norm_sqr().is_one());
        let mut before: Vec<String> = st.amplitudes.values().map(|a| a.to_string()).collect();
        let mut after: Vec<String> = out.amplitudes.values().map(|a| a.to_string()).collect();
        before.sort();
        after.sort();
        assert_eq!(before, after);
    }

    #[test]
    fn tetracode_classification() {
        let s = build_scheme(&tetracode(), 0).unwrap();
        let c = classify_all_subsets(&s).unwrap();
        assert_eq!(c.authorized().len(), 4);
        assert_eq!(c.unauthorized().len(), 4);
        assert!(c.report.all_pass());
    }
}
