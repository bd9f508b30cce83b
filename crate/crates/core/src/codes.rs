//! Linear codes over GF(q): duals, puncturing, shortening, the dealer split
//! of a generator matrix, and brute-force minimal-codeword enumeration.

use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, Elem, FieldSpec, Matrix};
use crate::subset::{Subset, MAX_ELEMENTS};

/// Upper bound on `q^k` for anything that enumerates codewords.
pub const ENUMERATION_LIMIT: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("coordinate {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("code too large to enumerate")]
    TooLargeToEnumerate,
    #[error("code length {0} exceeds the {MAX_ELEMENTS}-coordinate support limit")]
    TooLong(usize),
    #[error("dealer coordinate not covered")]
    DealerNotCovered(usize),
}

/// A linear code given by a generator matrix.
///
/// Two generators are kept: the rows as supplied (minus any linearly
/// dependent ones), which fix the dealer row used for encoding, and the
/// reduced row-echelon form, which is canonical and used for equality.
#[derive(Clone)]
pub struct LinearCode {
    n: usize,
    basis: Matrix,
    gen: Matrix,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.gen == other.gen
    }
}

impl Eq for LinearCode {}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}] code over {:?}\n{:?}",
            self.n,
            self.k(),
            self.field(),
            self.gen
        )
    }
}

/// A support-minimal codeword whose leftmost nonzero entry is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalCodeword {
    pub word: Vec<Elem>,
    pub support: Subset,
}

/// The generator split `[1 g; 0 G_short]` around a dealer coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DealerSplit {
    pub dealer: usize,
    /// The dealer row with the dealer coordinate removed.
    pub g: Vec<Elem>,
    /// Generator of the code shortened at the dealer, in rref.
    pub gen_short: Matrix,
}

impl DealerSplit {
    /// Reassembles `[1 g; 0 G_short]` with the dealer column moved first.
    pub fn block_matrix(&self) -> Matrix {
        let f = self.gen_short.field();
        let n = self.g.len() + 1;
        let mut rows = Vec::with_capacity(self.gen_short.rows() + 1);
        let mut top = vec![1];
        top.extend_from_slice(&self.g);
        rows.push(top);
        for r in self.gen_short.row_iter() {
            let mut row = vec![0];
            row.extend_from_slice(r);
            rows.push(row);
        }
        Matrix::from_rows(f, n, &rows).expect("split blocks have consistent widths")
    }

    /// Same rows as [`block_matrix`](Self::block_matrix) with the dealer
    /// column back at its original position.
    pub fn generator(&self) -> Matrix {
        let block = self.block_matrix();
        let n = block.cols();
        let order: Vec<usize> = (0..n)
            .map(|c| match c.cmp(&self.dealer) {
                std::cmp::Ordering::Less => c + 1,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => c,
            })
            .collect();
        block.select_columns(&order)
    }
}

/// Nonzero positions of a vector.
pub fn support(word: &[Elem]) -> Subset {
    word.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, _)| i)
        .collect()
}

/// Reduces `v` against the rows of an rref matrix with the given pivots.
fn reduce(field: &FieldSpec, rref: &Matrix, pivots: &[usize], v: &mut [Elem]) {
    for (i, &p) in pivots.iter().enumerate() {
        let c = v[p];
        if c != 0 {
            field.axpy(v, field.neg(c), rref.row(i));
        }
    }
}

impl LinearCode {
    /// Code generated by the rows of `gen`. Linearly dependent rows are
    /// dropped (earliest rows win).
    pub fn new(gen: Matrix) -> Self {
        let field = gen.field().clone();
        let n = gen.cols();
        let mut kept: Vec<usize> = Vec::new();
        let mut echelon = Matrix::zeros(&field, 0, n);
        let mut pivots: Vec<usize> = Vec::new();
        for r in 0..gen.rows() {
            let mut v = gen.row(r).to_vec();
            reduce(&field, &echelon, &pivots, &mut v);
            if v.iter().any(|&x| x != 0) {
                kept.push(r);
                let rr = gen.select_rows(&kept).rref();
                pivots = rr.pivots.clone();
                echelon = rr.matrix;
            }
        }
        let basis = gen.select_rows(&kept);
        let gen = basis.row_basis();
        LinearCode { n, basis, gen }
    }

    pub fn from_rows<R: AsRef<[Elem]>>(
        field: &FieldSpec,
        n: usize,
        rows: &[R],
    ) -> Result<Self, CodeError> {
        Ok(LinearCode::new(Matrix::from_rows(field, n, rows)?))
    }

    /// The zero code of length `n`.
    pub fn zero(field: &FieldSpec, n: usize) -> Self {
        LinearCode::new(Matrix::zeros(field, 0, n))
    }

    pub fn field(&self) -> &FieldSpec {
        self.gen.field()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    /// Canonical generator in reduced row-echelon form.
    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    /// Generator rows as supplied.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    fn check_index(&self, i: usize) -> Result<(), CodeError> {
        if i >= self.n {
            Err(CodeError::IndexOutOfRange {
                index: i,
                len: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn contains(&self, word: &[Elem]) -> bool {
        if word.len() != self.n || word.iter().any(|&x| !self.field().is_element(x)) {
            return false;
        }
        let pivots: Vec<usize> = (0..self.k())
            .map(|r| self.gen.row(r).iter().position(|&x| x != 0).unwrap())
            .collect();
        let mut v = word.to_vec();
        reduce(self.field(), &self.gen, &pivots, &mut v);
        v.iter().all(|&x| x == 0)
    }

    /// True when every codeword of `self` lies in `other`.
    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.n == other.n
            && self.field() == other.field()
            && self.gen.row_iter().all(|r| other.contains(r))
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode::new(self.gen.null_space())
    }

    /// Deletes coordinate `i` from every codeword.
    pub fn puncture(&self, i: usize) -> Result<LinearCode, CodeError> {
        self.check_index(i)?;
        Ok(LinearCode::new(self.basis.remove_column(i)))
    }

    /// Codewords vanishing at `i`, with coordinate `i` deleted.
    pub fn shorten(&self, i: usize) -> Result<LinearCode, CodeError> {
        self.check_index(i)?;
        Ok(match self.eliminate(i) {
            Some((_, rest)) => LinearCode::new(rest.remove_column(i)),
            None => LinearCode::new(self.basis.remove_column(i)),
        })
    }

    /// Picks the first supplied row that is nonzero at `col`, scales it to 1
    /// there and clears `col` from every other row. Returns the pivot row and
    /// the remaining rows, or `None` when the column is identically zero.
    fn eliminate(&self, col: usize) -> Option<(Vec<Elem>, Matrix)> {
        let f = self.field();
        let p = (0..self.basis.rows()).find(|&r| self.basis.get(r, col) != 0)?;
        let mut pivot = self.basis.row(p).to_vec();
        let lead = f.inv(pivot[col]).expect("nonzero");
        f.scale(&mut pivot, lead);
        let rest: Vec<Vec<Elem>> = (0..self.basis.rows())
            .filter(|&r| r != p)
            .map(|r| {
                let mut v = self.basis.row(r).to_vec();
                let c = f.neg(v[col]);
                f.axpy(&mut v, c, &pivot);
                v
            })
            .collect();
        let rest = Matrix::from_rows(f, self.n, &rest).expect("rows have length n");
        Some((pivot, rest))
    }

    /// `[1 g; 0 G_short]` around `dealer`: the dealer row is the first
    /// supplied generator row that is nonzero at the dealer, normalized.
    pub fn dealer_split(&self, dealer: usize) -> Result<DealerSplit, CodeError> {
        self.check_index(dealer)?;
        let (pivot, rest) = self
            .eliminate(dealer)
            .ok_or(CodeError::DealerNotCovered(dealer))?;
        let g: Vec<Elem> = pivot
            .iter()
            .enumerate()
            .filter(|&(c, _)| c != dealer)
            .map(|(_, &x)| x)
            .collect();
        let gen_short = rest.remove_column(dealer).row_basis();
        Ok(DealerSplit {
            dealer,
            g,
            gen_short,
        })
    }

    pub fn is_self_dual(&self) -> bool {
        self.n == 2 * self.k()
            && self
                .gen
                .mul_transpose(&self.gen)
                .expect("same field")
                .is_zero()
    }

    /// Number of codewords, `q^k`, if it is within the enumeration limit.
    pub fn size(&self) -> Result<u64, CodeError> {
        (self.field().order() as u64)
            .checked_pow(self.k() as u32)
            .filter(|&s| s <= ENUMERATION_LIMIT)
            .ok_or(CodeError::TooLargeToEnumerate)
    }

    /// Every codeword, each exactly once.
    pub fn codewords(&self) -> Result<Codewords<'_>, CodeError> {
        let total = self.size()?;
        Ok(Codewords {
            code: self,
            coeffs: vec![0; self.k()],
            remaining: total,
        })
    }

    /// All minimal codewords (support-minimal, leftmost nonzero entry 1),
    /// sorted lexicographically.
    pub fn minimal_codewords(&self) -> Result<Vec<MinimalCodeword>, CodeError> {
        if self.n > MAX_ELEMENTS {
            return Err(CodeError::TooLong(self.n));
        }
        let mut candidates: Vec<MinimalCodeword> = self
            .codewords()?
            .filter(|w| w.iter().find(|&&x| x != 0) == Some(&1))
            .map(|word| MinimalCodeword {
                support: support(&word),
                word,
            })
            .collect();
        candidates.sort_by_key(|c| c.support.len());
        let mut minimal: Vec<MinimalCodeword> = Vec::new();
        for c in candidates {
            if !minimal.iter().any(|m| m.support.is_subset_of(c.support)) {
                minimal.push(c);
            }
        }
        minimal.sort_by(|a, b| a.word.cmp(&b.word));
        Ok(minimal)
    }

    /// The codeword with support exactly `s` and entry 1 at `anchor`, if the
    /// codewords vanishing outside `s` form a line spanned by such a word.
    pub fn codeword_on_support(&self, s: Subset, anchor: usize) -> Option<Vec<Elem>> {
        let f = self.field();
        let outside: Vec<usize> = (0..self.n).filter(|&j| !s.contains(j)).collect();
        let coeffs = self.gen.select_columns(&outside).transpose().null_space();
        if coeffs.rows() != 1 {
            return None;
        }
        let mut word = coeffs.mul(&self.gen).ok()?.row(0).to_vec();
        if support(&word) != s || !s.contains(anchor) {
            return None;
        }
        let lead = f.inv(word[anchor]).ok()?;
        f.scale(&mut word, lead);
        Some(word)
    }

    pub fn to_text(&self) -> String {
        self.basis.to_text()
    }

    pub fn from_text(text: &str) -> Result<LinearCode, CodeError> {
        Ok(LinearCode::new(Matrix::from_text(text)?))
    }
}

/// Iterator over all codewords in order of the coefficient vector, read as
/// a base-q counter with the first generator row least significant.
pub struct Codewords<'a> {
    code: &'a LinearCode,
    coeffs: Vec<Elem>,
    remaining: u64,
}

impl Iterator for Codewords<'_> {
    type Item = Vec<Elem>;

    fn next(&mut self) -> Option<Vec<Elem>> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let f = self.code.field();
        let mut word = vec![0; self.code.n];
        for (r, &c) in self.coeffs.iter().enumerate() {
            f.axpy(&mut word, c, self.code.gen.row(r));
        }
        let q = f.order();
        for c in self.coeffs.iter_mut() {
            if (*c as usize) + 1 < q {
                *c += 1;
                break;
            }
            *c = 0;
        }
        Some(word)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining as usize, Some(self.remaining as usize))
    }
}

/// Small codes used throughout tests, examples and the CLI.
pub mod catalog {
    use super::*;

    /// The [8,4,4] extended Hamming code over GF(2), with the generator rows
    /// in the order that puts the all-ones dealer row first.
    pub fn extended_hamming() -> LinearCode {
        let f = FieldSpec::new(2).unwrap();
        LinearCode::from_rows(
            &f,
            8,
            &[
                [1, 1, 1, 1, 1, 1, 1, 1],
                [0, 1, 0, 0, 0, 1, 1, 1],
                [0, 0, 1, 0, 1, 0, 1, 1],
                [0, 0, 0, 1, 1, 1, 1, 0],
            ],
        )
        .unwrap()
    }

    /// The [4,2,3] tetracode over GF(3).
    pub fn tetracode() -> LinearCode {
        let f = FieldSpec::new(3).unwrap();
        LinearCode::from_rows(&f, 4, &[[1, 1, 1, 0], [0, 1, 2, 1]]).unwrap()
    }

    /// The [2,1] code {00, 11} over GF(2).
    pub fn repetition_pair() -> LinearCode {
        let f = FieldSpec::new(2).unwrap();
        LinearCode::from_rows(&f, 2, &[[1, 1]]).unwrap()
    }

    /// The [n,1] repetition code over GF(2).
    pub fn repetition(n: usize) -> LinearCode {
        let f = FieldSpec::new(2).unwrap();
        LinearCode::from_rows(&f, n, &[vec![1; n]]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;

    fn mat(q: usize, rows: &[&[Elem]]) -> Matrix {
        let f = FieldSpec::new(q).unwrap();
        Matrix::from_rows(&f, rows[0].len(), rows).unwrap()
    }

    fn bits(s: &str) -> Vec<Elem> {
        s.bytes().map(|b| b - b'0').collect()
    }

    fn shortened_hamming() -> Matrix {
        mat(
            2,
            &[
                &[1, 0, 0, 0, 1, 1, 1],
                &[0, 1, 0, 1, 0, 1, 1],
                &[0, 0, 1, 1, 1, 1, 0],
            ],
        )
    }

    #[test]
    fn dual_examples() {
        let even = repetition(3).dual();
        assert_eq!(even.k(), 2);
        let expected = LinearCode::new(mat(2, &[&[1, 1, 0], &[0, 1, 1]]));
        assert_eq!(even, expected);

        let h = extended_hamming();
        assert_eq!(h.dual(), h);

        let t = tetracode();
        assert_eq!(t.dual(), t);
    }

    #[test]
    fn puncture_examples() {
        let h = extended_hamming();
        let displayed = mat(
            2,
            &[
                &[1, 1, 1, 1, 1, 1, 1],
                &[1, 0, 0, 0, 1, 1, 1],
                &[0, 1, 0, 1, 0, 1, 1],
                &[0, 0, 1, 1, 1, 1, 0],
            ],
        );
        let p = h.puncture(0).unwrap();
        assert!(p.generator().row_space_equal(&displayed).unwrap());

        let p = repetition_pair().puncture(0).unwrap();
        assert_eq!((p.n(), p.k()), (1, 1));

        let p = tetracode().puncture(0).unwrap();
        assert_eq!((p.n(), p.k()), (3, 2));

        assert_eq!(
            h.puncture(8).unwrap_err(),
            CodeError::IndexOutOfRange { index: 8, len: 8 }
        );
    }

    #[test]
    fn shorten_examples() {
        let h = extended_hamming();
        let s = h.shorten(0).unwrap();
        assert!(s.generator().row_space_equal(&shortened_hamming()).unwrap());

        let s = repetition_pair().shorten(0).unwrap();
        assert_eq!((s.n(), s.k()), (1, 0));

        let s = tetracode().shorten(0).unwrap();
        assert_eq!((s.n(), s.k()), (3, 1));
        assert!(s.contains(&[1, 2, 1]));
        assert!(tetracode().shorten(4).is_err());
    }

    #[test]
    fn shorten_of_uncovered_column_keeps_dimension() {
        let c = LinearCode::new(mat(2, &[&[0, 1, 1], &[0, 1, 0]]));
        let s = c.shorten(0).unwrap();
        assert_eq!((s.n(), s.k()), (2, 2));
    }

    #[test]
    fn codeword_examples() {
        let words: Vec<_> = repetition_pair().codewords().unwrap().collect();
        assert_eq!(words, vec![vec![0, 0], vec![1, 1]]);

        let h = extended_hamming();
        let words: Vec<_> = h.codewords().unwrap().collect();
        assert_eq!(words.len(), 16);
        let mut zero_dealer: Vec<Vec<Elem>> = words
            .iter()
            .filter(|w| w[0] == 0)
            .map(|w| w[1..].to_vec())
            .collect();
        zero_dealer.sort();
        let mut listed: Vec<Vec<Elem>> = [
            "0000000", "1000111", "0101011", "0011110", "1101100", "1011001", "0110101", "1110010",
        ]
        .iter()
        .map(|s| bits(s))
        .collect();
        listed.sort();
        assert_eq!(zero_dealer, listed);

        let t: Vec<_> = tetracode().codewords().unwrap().collect();
        assert_eq!(t.len(), 9);
        let mut dedup = t.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 9);
        assert!(t.iter().all(|w| tetracode().contains(w)));
    }

    #[test]
    fn enumeration_guard() {
        let f = FieldSpec::new(2).unwrap();
        let big = LinearCode::new(Matrix::identity(&f, 25));
        assert!(matches!(
            big.codewords(),
            Err(CodeError::TooLargeToEnumerate)
        ));
        assert_eq!(
            CodeError::TooLargeToEnumerate.to_string(),
            "code too large to enumerate"
        );
        let ok = LinearCode::new(Matrix::identity(&f, 24));
        assert_eq!(ok.size().unwrap(), 1 << 24);
    }

    #[test]
    fn minimal_codeword_examples() {
        let h = extended_hamming();
        let mins = h.minimal_codewords().unwrap();
        assert_eq!(mins.len(), 14);
        assert!(mins.iter().all(|m| m.support.len() == 4));
        assert_eq!(mins.iter().filter(|m| m.word[0] == 1).count(), 7);
        assert!(mins.iter().any(|m| m.word == bits("11100001")));
        assert!(mins.windows(2).all(|w| w[0].word < w[1].word));

        let r = repetition(3).minimal_codewords().unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].word, vec![1, 1, 1]);
    }

    #[test]
    fn tetracode_minimal_codewords_are_weight_three() {
        let mins = tetracode().minimal_codewords().unwrap();
        // 8 nonzero words, 4 up to scalars, all of weight 3 (MDS)
        assert_eq!(mins.len(), 4);
        for m in &mins {
            assert_eq!(m.support.len(), 3);
            assert_eq!(m.word.iter().find(|&&x| x != 0), Some(&1));
        }
    }

    #[test]
    fn self_duality() {
        assert!(extended_hamming().is_self_dual());
        assert!(repetition_pair().is_self_dual());
        assert!(!repetition(3).is_self_dual());
        assert!(tetracode().is_self_dual());
    }

    #[test]
    fn dealer_split_examples() {
        let h = extended_hamming();
        let s = h.dealer_split(0).unwrap();
        assert_eq!(s.g, vec![1; 7]);
        assert_eq!(s.gen_short, shortened_hamming());
        assert!(s.generator().row_space_equal(h.generator()).unwrap());

        let s = repetition_pair().dealer_split(0).unwrap();
        assert_eq!(s.g, vec![1]);
        assert_eq!(s.gen_short.rows(), 0);

        let t = tetracode();
        let s = t.dealer_split(0).unwrap();
        assert_eq!(s.g, vec![1, 1, 0]);
        assert_eq!(s.gen_short.rows(), 1);
        assert!(s.generator().row_space_equal(t.generator()).unwrap());
    }

    #[test]
    fn dealer_split_at_inner_coordinate() {
        let t = tetracode();
        for d in 0..4 {
            let s = t.dealer_split(d).unwrap();
            assert!(s.generator().row_space_equal(t.generator()).unwrap());
            assert_eq!(LinearCode::new(s.gen_short.clone()), t.shorten(d).unwrap());
        }
    }

    #[test]
    fn dealer_split_uncovered() {
        let c = LinearCode::new(mat(2, &[&[0, 1, 1]]));
        assert_eq!(
            c.dealer_split(0).unwrap_err(),
            CodeError::DealerNotCovered(0)
        );
        assert_eq!(
            CodeError::DealerNotCovered(0).to_string(),
            "dealer coordinate not covered"
        );
    }

    #[test]
    fn dependent_rows_are_dropped() {
        let c = LinearCode::new(mat(3, &[&[1, 1, 1, 0], &[2, 2, 2, 0], &[0, 1, 2, 1]]));
        assert_eq!(c.k(), 2);
        assert_eq!(c.basis().rows(), 2);
        assert_eq!(c, tetracode());
    }
}
