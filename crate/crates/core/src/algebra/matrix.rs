use std::fmt;

use super::{AlgebraError, Elem, FieldSpec};

/// Dense row-major matrix over a finite field.
///
/// Values are never mutated in place by the public API; every operation
/// returns a new matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Reduced row-echelon form, same shape as the input (zero rows last).
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn new(
        field: &FieldSpec,
        rows: usize,
        cols: usize,
        data: Vec<Elem>,
    ) -> Result<Self, AlgebraError> {
        if data.len() != rows * cols {
            return Err(AlgebraError::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&x| !field.is_element(x)) {
            return Err(AlgebraError::BadEntry {
                value: bad as u64,
                order: field.order(),
            });
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Builds from rows; every row must have length `cols`.
    pub fn from_rows<R: AsRef<[Elem]>>(
        field: &FieldSpec,
        cols: usize,
        rows: &[R],
    ) -> Result<Self, AlgebraError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(AlgebraError::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Matrix::new(field, rows.len(), cols, data)
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Elem]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c));
            }
        }
        Matrix {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, AlgebraError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(AlgebraError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                let (lo, hi) = (r * other.cols, (r + 1) * other.cols);
                f.axpy(&mut out.data[lo..hi], a, other.row(k));
            }
        }
        Ok(out)
    }

    /// `self * other^T`: the matrix of pairwise row dot products.
    pub fn mul_transpose(&self, other: &Matrix) -> Result<Matrix, AlgebraError> {
        self.mul(&other.transpose())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, AlgebraError> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(AlgebraError::ColumnMismatch(self.cols, other.cols));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, AlgebraError> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(AlgebraError::Shape(format!(
                "cannot place {} rows beside {} rows",
                other.rows, self.rows
            )));
        }
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        })
    }

    /// Keeps the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            let row = self.row(r);
            data.extend(cols.iter().map(|&c| row[c]));
        }
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix {
            field: self.field.clone(),
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn remove_column(&self, c: usize) -> Matrix {
        let keep: Vec<usize> = (0..self.cols).filter(|&j| j != c).collect();
        self.select_columns(&keep)
    }

    /// Drops all-zero rows.
    pub fn nonzero_rows(&self) -> Matrix {
        let keep: Vec<usize> = (0..self.rows)
            .filter(|&r| self.row(r).iter().any(|&x| x != 0))
            .collect();
        self.select_rows(&keep)
    }

    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.data.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..cols {
            if lead == self.rows {
                break;
            }
            let Some(p) = (lead..self.rows).find(|&r| m[r * cols + c] != 0) else {
                continue;
            };
            if p != lead {
                for j in 0..cols {
                    m.swap(p * cols + j, lead * cols + j);
                }
            }
            let inv = f.inv(m[lead * cols + c]).expect("pivot is nonzero");
            f.scale(&mut m[lead * cols..(lead + 1) * cols], inv);
            let pivot_row: Vec<Elem> = m[lead * cols..(lead + 1) * cols].to_vec();
            for r in 0..self.rows {
                if r == lead {
                    continue;
                }
                let factor = m[r * cols + c];
                if factor != 0 {
                    f.axpy(&mut m[r * cols..(r + 1) * cols], f.neg(factor), &pivot_row);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        let rank = pivots.len();
        Rref {
            matrix: Matrix {
                field: f.clone(),
                rows: self.rows,
                cols,
                data: m,
            },
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{x : self * x^T = 0}`, returned in reduced row-echelon form.
    pub fn null_space(&self) -> Matrix {
        let Rref { matrix, pivots, .. } = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut data = Vec::with_capacity(free.len() * self.cols);
        for &fc in &free {
            let mut v = vec![0; self.cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(matrix.get(i, fc));
            }
            data.extend(v);
        }
        let basis = Matrix {
            field: f.clone(),
            rows: free.len(),
            cols: self.cols,
            data,
        };
        basis.rref().matrix
    }

    /// Canonical basis of the row space: the nonzero rows of the rref.
    pub fn row_basis(&self) -> Matrix {
        let r = self.rref();
        r.matrix.select_rows(&(0..r.rank).collect::<Vec<_>>())
    }

    pub fn row_space_equal(&self, other: &Matrix) -> Result<bool, AlgebraError> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(AlgebraError::ColumnMismatch(self.cols, other.cols));
        }
        Ok(self.row_basis() == other.row_basis())
    }

    /// True when every row of `other` lies in the row space of `self`.
    pub fn row_space_contains(&self, other: &Matrix) -> Result<bool, AlgebraError> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(AlgebraError::ColumnMismatch(self.cols, other.cols));
        }
        Ok(self.vstack(other)?.rank() == self.rank())
    }

    fn check_field(&self, other: &Matrix) -> Result<(), AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(())
    }

    /// Writes the matrix text format: a `q` header line (with `poly` for
    /// extension fields), a `rows cols` line, then one line per row.
    pub fn to_text(&self) -> String {
        let mut s = header_line(&self.field);
        s.push('\n');
        s.push_str(&format!("{} {}\n", self.rows, self.cols));
        for r in self.row_iter() {
            s.push_str(&join(r));
            s.push('\n');
        }
        s
    }

    /// Parses the matrix text format from the start of `lines`, consuming
    /// exactly the lines that belong to the matrix.
    pub fn parse_lines<'a, I>(lines: &mut I) -> Result<Matrix, AlgebraError>
    where
        I: Iterator<Item = &'a str>,
    {
        let head = lines
            .next()
            .ok_or_else(|| AlgebraError::Parse("missing `q` header".into()))?;
        let field = parse_header(head)?;
        let dims = lines
            .next()
            .ok_or_else(|| AlgebraError::Parse("missing `rows cols` line".into()))?;
        let dims = parse_numbers(dims)?;
        let [rows, cols] = dims[..] else {
            return Err(AlgebraError::Parse(format!(
                "expected `rows cols`, got {dims:?}"
            )));
        };
        let (rows, cols) = (rows as usize, cols as usize);
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| AlgebraError::Parse(format!("missing row {r}")))?;
            let nums = parse_numbers(line)?;
            if nums.len() != cols {
                return Err(AlgebraError::Parse(format!(
                    "row {r} has {} entries, expected {cols}",
                    nums.len()
                )));
            }
            for x in nums {
                if x >= field.order() as u64 {
                    return Err(AlgebraError::BadEntry {
                        value: x,
                        order: field.order(),
                    });
                }
                data.push(x as Elem);
            }
        }
        Matrix::new(&field, rows, cols, data)
    }

    pub fn from_text(text: &str) -> Result<Matrix, AlgebraError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let m = Matrix::parse_lines(&mut lines)?;
        if let Some(extra) = lines.next() {
            return Err(AlgebraError::Parse(format!(
                "unexpected trailing line `{extra}`"
            )));
        }
        Ok(m)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?} {}x{}", self.field, self.rows, self.cols)?;
        for r in self.row_iter() {
            writeln!(f, "  {}", join(r))?;
        }
        Ok(())
    }
}

/// Space-separated decimal entries.
pub fn join(v: &[Elem]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn header_line(field: &FieldSpec) -> String {
    if field.degree() == 1 {
        format!("q {}", field.order())
    } else {
        format!("q {} poly {}", field.order(), join(field.poly()))
    }
}

pub fn parse_header(line: &str) -> Result<FieldSpec, AlgebraError> {
    let mut toks = line.split_whitespace();
    if toks.next() != Some("q") {
        return Err(AlgebraError::Parse(format!(
            "expected `q <order>`, got `{line}`"
        )));
    }
    let q: usize = toks
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| AlgebraError::Parse(format!("bad field order in `{line}`")))?;
    match toks.next() {
        None => FieldSpec::new(q),
        Some("poly") => {
            let poly: Vec<u8> = toks
                .map(|t| t.parse::<u8>())
                .collect::<Result<_, _>>()
                .map_err(|e| AlgebraError::Parse(format!("bad poly coefficient: {e}")))?;
            FieldSpec::with_poly(q, &poly)
        }
        Some(t) => Err(AlgebraError::Parse(format!(
            "unexpected token `{t}` in header"
        ))),
    }
}

pub fn parse_numbers(line: &str) -> Result<Vec<u64>, AlgebraError> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| AlgebraError::Parse(format!("not a number: `{t}`")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(q: usize, rows: &[&[Elem]]) -> Matrix {
        let f = FieldSpec::new(q).unwrap();
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(&f, cols, rows).unwrap()
    }

    #[test]
    fn rref_examples() {
        let r = m(2, &[&[0, 1], &[1, 0]]).rref();
        assert_eq!(r.matrix, m(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);

        let r = m(2, &[&[1, 1, 1], &[1, 1, 1]]).rref();
        assert_eq!(r.matrix, m(2, &[&[1, 1, 1], &[0, 0, 0]]));
        assert_eq!(r.rank, 1);

        let r = m(3, &[&[1, 2], &[2, 1]]).rref();
        assert_eq!(r.matrix, m(3, &[&[1, 2], &[0, 0]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn rref_is_idempotent() {
        let a = m(5, &[&[2, 4, 1, 0], &[3, 1, 0, 2], &[0, 0, 4, 4]]);
        let once = a.rref().matrix;
        assert_eq!(once.rref().matrix, once);
    }

    #[test]
    fn null_space_examples() {
        let ns = m(2, &[&[1, 1]]).null_space();
        assert_eq!(ns, m(2, &[&[1, 1]]));

        let f3 = FieldSpec::new(3).unwrap();
        let ns = Matrix::identity(&f3, 3).null_space();
        assert_eq!((ns.rows(), ns.cols()), (0, 3));

        let tetra = m(3, &[&[1, 1, 1, 0], &[0, 1, 2, 1]]);
        let ns = tetra.null_space();
        assert_eq!(ns.rows(), 2);
        assert!(tetra.mul_transpose(&ns).unwrap().is_zero());
        assert!(tetra.mul_transpose(&tetra).unwrap().is_zero());
        assert!(ns.row_space_equal(&tetra).unwrap());
    }

    #[test]
    fn row_space_equality() {
        let a = m(2, &[&[1, 1]]);
        let b = m(2, &[&[1, 1], &[1, 1]]);
        assert!(a.row_space_equal(&b).unwrap());
        assert!(!m(2, &[&[1, 0]]).row_space_equal(&m(2, &[&[0, 1]])).unwrap());
        assert!(matches!(
            a.row_space_equal(&m(2, &[&[1, 1, 0]])),
            Err(AlgebraError::ColumnMismatch(2, 3))
        ));
    }

    #[test]
    fn shortened_hamming_generator_matches_its_rref() {
        let g = m(
            2,
            &[
                &[1, 0, 0, 0, 1, 1, 1],
                &[0, 1, 0, 1, 0, 1, 1],
                &[0, 0, 1, 1, 1, 1, 0],
            ],
        );
        assert!(g.row_space_equal(&g.rref().matrix).unwrap());
        assert_eq!(g.rref().matrix, g);
    }

    #[test]
    fn text_round_trip() {
        let a = m(3, &[&[1, 1, 1, 0], &[0, 1, 2, 1]]);
        let text = a.to_text();
        assert_eq!(text, "q 3\n2 4\n1 1 1 0\n0 1 2 1\n");
        assert_eq!(Matrix::from_text(&text).unwrap(), a);

        let f4 = FieldSpec::new(4).unwrap();
        let b = Matrix::from_rows(&f4, 2, &[[1u8, 2], [3, 0]]).unwrap();
        let text = b.to_text();
        assert_eq!(text, "q 4 poly 1 1 1\n2 2\n1 2\n3 0\n");
        assert_eq!(Matrix::from_text(&text).unwrap(), b);

        let empty = Matrix::zeros(&f4, 0, 3);
        assert_eq!(Matrix::from_text(&empty.to_text()).unwrap(), empty);
    }

    #[test]
    fn text_errors() {
        assert!(Matrix::from_text("q 2\n1 2\n1 2\n").is_err());
        assert!(Matrix::from_text("q 2\n1 2\n1\n").is_err());
        assert!(Matrix::from_text("q 6\n1 1\n1\n").is_err());
        assert!(Matrix::from_text("2\n1 1\n1\n").is_err());
    }
}
