//! Table-driven arithmetic in GF(p^m) for q = p^m <= 256.
//!
//! Elements are the integers `0..q`. For m > 1 an element encodes the
//! polynomial whose coefficients are its base-p digits, lowest degree first,
//! reduced modulo the field's defining polynomial.

use std::fmt;
use std::sync::Arc;

use super::AlgebraError;

/// Field element. Every supported field fits in a byte.
pub type Elem = u8;

pub const MAX_ORDER: usize = 256;

/// Defining polynomials (coefficients low to high, monic) used when a field
/// is requested by order alone. GF(4), GF(8) and GF(9) use their Conway
/// polynomials x^2+x+1, x^3+x+1 and x^2+2x+2. Orders not listed fall back to
/// the first primitive polynomial in digit order.
const DEFAULT_POLYS: &[(usize, &[u8])] = &[
    (4, &[1, 1, 1]),
    (8, &[1, 1, 0, 1]),
    (9, &[2, 2, 1]),
    (16, &[1, 1, 0, 0, 1]),
    (25, &[2, 4, 1]),
    (27, &[1, 2, 0, 1]),
    (32, &[1, 0, 1, 0, 0, 1]),
    (64, &[1, 1, 0, 1, 1, 0, 1]),
    (128, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (256, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
];

struct Tables {
    p: u32,
    m: u32,
    q: usize,
    poly: Vec<u8>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

/// A finite field GF(p^m). Cheap to clone; all clones share one set of tables.
#[derive(Clone)]
pub struct FieldSpec {
    t: Arc<Tables>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t) || (self.t.q == other.t.q && self.t.poly == other.t.poly)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t.m == 1 {
            write!(f, "GF({})", self.t.q)
        } else {
            write!(f, "GF({}; poly {:?})", self.t.q, self.t.poly)
        }
    }
}

pub fn is_prime(n: u32) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Splits `q` as `p^m` with `p` prime.
pub fn prime_power(q: usize) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let q = q as u32;
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

// Polynomials over GF(p) as coefficient vectors, low degree first, with no
// trailing zeros (the zero polynomial is empty).

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let lead_inv = mod_inv(*b.last().expect("nonzero divisor"), p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = r.last().unwrap() * lead_inv % p;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - factor * bc % p) % p;
        }
        r = trim(r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|x| a * x % p == 1).expect("invertible mod p")
}

fn digits(mut e: usize, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = (e % p as usize) as u32;
            e /= p as usize;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> usize {
    d.iter()
        .rev()
        .fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

/// True when the monic-or-not polynomial `f` (coefficients low to high) of
/// degree m is irreducible over GF(p): no monic divisor of degree 1..=m/2.
pub fn is_irreducible(f: &[u8], p: u32) -> bool {
    let f: Vec<u32> = trim(f.iter().map(|&c| c as u32).collect());
    if f.len() < 2 {
        return false;
    }
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        // every monic polynomial of degree d
        for low in 0..(p as usize).pow(d as u32) {
            let mut g = digits(low, p, d as u32);
            g.push(1);
            if poly_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn poly_mul_mod(a: usize, b: usize, p: u32, m: u32, f: &[u32]) -> usize {
    let da = digits(a, p, m);
    let db = digits(b, p, m);
    let mut prod = vec![0u32; 2 * m as usize];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, f, p);
    r.resize(m as usize, 0);
    undigits(&r, p)
}

impl FieldSpec {
    /// GF(q) for a prime power q <= 256. Extension fields use the default
    /// defining polynomial for that order.
    pub fn new(q: usize) -> Result<Self, AlgebraError> {
        let (p, m) = prime_power(q).ok_or(AlgebraError::NotPrimePower(q))?;
        if q > MAX_ORDER {
            return Err(AlgebraError::FieldTooLarge(q));
        }
        if m == 1 {
            return Ok(Self::build(p, 1, vec![0, 1]));
        }
        let poly = match DEFAULT_POLYS.iter().find(|(order, _)| *order == q) {
            Some((_, poly)) => poly.to_vec(),
            None => Self::first_primitive_poly(p, m),
        };
        Self::with_poly(q, &poly)
    }

    /// GF(q) with an explicit defining polynomial (coefficients low to high).
    pub fn with_poly(q: usize, poly: &[u8]) -> Result<Self, AlgebraError> {
        let (p, m) = prime_power(q).ok_or(AlgebraError::NotPrimePower(q))?;
        if q > MAX_ORDER {
            return Err(AlgebraError::FieldTooLarge(q));
        }
        if m == 1 {
            return Self::new(q);
        }
        let mut poly = poly.to_vec();
        while poly.last() == Some(&0) {
            poly.pop();
        }
        if poly.len() != m as usize + 1 || poly.iter().any(|&c| c as u32 >= p) {
            return Err(AlgebraError::BadPolynomial(format!(
                "expected {} coefficients in 0..{p}, got {poly:?}",
                m + 1
            )));
        }
        // normalize to monic
        let lead = *poly.last().unwrap() as u32;
        if lead != 1 {
            let li = mod_inv(lead, p);
            for c in poly.iter_mut() {
                *c = (*c as u32 * li % p) as u8;
            }
        }
        if !is_irreducible(&poly, p) {
            return Err(AlgebraError::BadPolynomial(format!(
                "{poly:?} is reducible over GF({p})"
            )));
        }
        Ok(Self::build(p, m, poly))
    }

    fn first_primitive_poly(p: u32, m: u32) -> Vec<u8> {
        let q = (p as usize).pow(m);
        for low in 0..q {
            let mut f: Vec<u8> = digits(low, p, m).into_iter().map(|d| d as u8).collect();
            f.push(1);
            if f[0] == 0 || !is_irreducible(&f, p) {
                continue;
            }
            let fu: Vec<u32> = f.iter().map(|&c| c as u32).collect();
            // x is primitive iff its order is q - 1
            let x = p as usize;
            let mut acc = 1usize;
            let mut order = 0;
            loop {
                acc = poly_mul_mod(acc, x, p, m, &fu);
                order += 1;
                if acc == 1 {
                    break;
                }
            }
            if order == q - 1 {
                return f;
            }
        }
        unreachable!("every finite field has a primitive polynomial")
    }

    fn build(p: u32, m: u32, poly: Vec<u8>) -> Self {
        let q = (p as usize).pow(m);
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        if m == 1 {
            for a in 0..q {
                for b in 0..q {
                    add[a * q + b] = ((a + b) % q) as Elem;
                    mul[a * q + b] = ((a * b) % q) as Elem;
                }
            }
        } else {
            let fu: Vec<u32> = poly.iter().map(|&c| c as u32).collect();
            for a in 0..q {
                let da = digits(a, p, m);
                for b in 0..q {
                    let db = digits(b, p, m);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    add[a * q + b] = undigits(&s, p) as Elem;
                }
            }
            // log/antilog tables from a generator of the multiplicative group
            let (exp, log) = (2..q)
                .find_map(|g| {
                    let mut exp = vec![0usize; q - 1];
                    let mut log = vec![usize::MAX; q];
                    let mut acc = 1usize;
                    for (k, slot) in exp.iter_mut().enumerate() {
                        if log[acc] != usize::MAX {
                            return None;
                        }
                        *slot = acc;
                        log[acc] = k;
                        acc = poly_mul_mod(acc, g, p, m, &fu);
                    }
                    (acc == 1).then_some((exp, log))
                })
                .expect("multiplicative group is cyclic");
            for a in 1..q {
                for b in 1..q {
                    mul[a * q + b] = exp[(log[a] + log[b]) % (q - 1)] as Elem;
                }
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as Elem)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as Elem
                }
            })
            .collect();
        FieldSpec {
            t: Arc::new(Tables {
                p,
                m,
                q,
                poly,
                add,
                mul,
                neg,
                inv,
            }),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.t.p
    }

    pub fn degree(&self) -> u32 {
        self.t.m
    }

    pub fn order(&self) -> usize {
        self.t.q
    }

    /// Defining polynomial, low to high. `[0, 1]` (that is, x) for prime fields.
    pub fn poly(&self) -> &[u8] {
        &self.t.poly
    }

    pub fn is_element(&self, a: Elem) -> bool {
        (a as usize) < self.t.q
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.t.q).map(|a| a as Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + '_ {
        (1..self.t.q).map(|a| a as Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.t.add[a as usize * self.t.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.t.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.t.mul[a as usize * self.t.q + b as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, AlgebraError> {
        if a == 0 {
            Err(AlgebraError::DivisionByZero)
        } else {
            Ok(self.t.inv[a as usize])
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, AlgebraError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Dot product of two equal-length vectors.
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        debug_assert_eq!(a.len(), b.len());
        a.iter()
            .zip(b)
            .fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// `dst += c * src` elementwise.
    pub fn axpy(&self, dst: &mut [Elem], c: Elem, src: &[Elem]) {
        if c == 0 {
            return;
        }
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.add(*d, self.mul(c, s));
        }
    }

    pub fn scale(&self, v: &mut [Elem], c: Elem) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        assert_eq!(f2.add(1, 1), 0);
        let f3 = FieldSpec::new(3).unwrap();
        assert_eq!(f3.inv(2).unwrap(), 2);
        let f4 = FieldSpec::new(4).unwrap();
        assert_eq!(f4.poly(), &[1, 1, 1]);
        // x * x = x + 1
        assert_eq!(f4.mul(2, 2), 3);
        assert_eq!(f4.add(2, 3), 1);
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        let f5 = FieldSpec::new(5).unwrap();
        assert_eq!(f5.inv(0), Err(AlgebraError::DivisionByZero));
        assert_eq!(AlgebraError::DivisionByZero.to_string(), "division by zero");
    }

    #[test]
    fn rejects_bad_orders_and_polys() {
        assert!(matches!(
            FieldSpec::new(6),
            Err(AlgebraError::NotPrimePower(6))
        ));
        assert!(matches!(
            FieldSpec::new(1),
            Err(AlgebraError::NotPrimePower(1))
        ));
        assert!(matches!(
            FieldSpec::new(257),
            Err(AlgebraError::FieldTooLarge(257))
        ));
        // x^2 + 1 = (x+1)^2 over GF(2)
        assert!(matches!(
            FieldSpec::with_poly(4, &[1, 0, 1]),
            Err(AlgebraError::BadPolynomial(_))
        ));
        // x^2 + 1 is irreducible over GF(3)
        assert!(FieldSpec::with_poly(9, &[1, 0, 1]).is_ok());
    }

    #[test]
    fn default_polys_are_irreducible() {
        for (q, poly) in DEFAULT_POLYS {
            let (p, m) = prime_power(*q).unwrap();
            assert_eq!(poly.len(), m as usize + 1, "GF({q})");
            assert!(is_irreducible(poly, p), "GF({q})");
        }
    }

    #[test]
    fn every_order_up_to_256_builds() {
        for q in 2..=256 {
            if prime_power(q).is_none() {
                continue;
            }
            let f = FieldSpec::new(q).unwrap();
            assert_eq!(f.order(), q);
            for a in f.nonzero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "GF({q}) a={a}");
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = FieldSpec::new(q).unwrap();
            let els: Vec<Elem> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            for a in f.nonzero() {
                let invs: Vec<Elem> = f.nonzero().filter(|&b| f.mul(a, b) == 1).collect();
                assert_eq!(invs.len(), 1, "GF({q}) unique inverse of {a}");
            }
        }
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let f = FieldSpec::new(9).unwrap();
        for a in f.elements() {
            let mut acc = 1;
            for e in 0..12 {
                assert_eq!(f.pow(a, e), acc);
                acc = f.mul(acc, a);
            }
        }
    }
}
