//! Exact arithmetic in Z[q, q^-1], its fraction field, and dense matrices over both.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("singular matrix")]
    SingularMatrix,
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("cannot parse Laurent polynomial: {0}")]
    Parse(String),
    #[error("division by a non-monomial")]
    NotMonomial,
}

/// An element of Z[q, q^-1], stored sparsely by exponent. No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: BTreeMap<i64, BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// The indeterminate q.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// c * q^e.
    pub fn monomial<C: Into<BigInt>>(e: i64, c: C) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Laurent { terms }
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(0, c)
    }

    /// Build from (exponent, coefficient) pairs; repeated exponents are summed.
    pub fn from_terms<I, C>(it: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = Laurent::zero();
        for (e, c) in it {
            out.add_term(e, &c.into());
        }
        out
    }

    /// p^e with p = -q^-1, for any integer e.
    pub fn p_pow(e: i64) -> Self {
        let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(-e, sign)
    }

    /// Image of the integer polynomial sum_k coeffs[k] p^k under p -> -q^-1.
    pub fn p_substitute<C: Clone + Into<BigInt>>(coeffs: &[C]) -> Self {
        let mut out = Laurent::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let c: BigInt = c.clone().into();
            if c.is_zero() {
                continue;
            }
            let c = if k % 2 == 1 { -c } else { c };
            out.add_term(-(k as i64), &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, e: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// The bar conjugation q -> q^-1.
    pub fn bar(&self) -> Self {
        Laurent { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Multiply by q^k.
    pub fn shift(&self, k: i64) -> Self {
        Laurent { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    /// Terms with exponent > 0.
    pub fn positive_part(&self) -> Self {
        Laurent { terms: self.terms.range(1..).map(|(e, c)| (*e, c.clone())).collect() }
    }

    /// Terms with exponent < 0.
    pub fn negative_part(&self) -> Self {
        Laurent { terms: self.terms.range(..0).map(|(e, c)| (*e, c.clone())).collect() }
    }

    /// Is this element of N[q] (nonnegative coefficients, nonnegative exponents)?
    pub fn in_nat_q(&self) -> bool {
        self.terms.iter().all(|(e, c)| *e >= 0 && !c.is_negative())
    }

    /// Is this element of N[p] once rewritten through p = -q^-1?
    pub fn in_nat_p(&self) -> bool {
        self.terms.iter().all(|(e, c)| {
            let k = -*e;
            k >= 0 && {
                let pc = if k % 2 == 1 { -c.clone() } else { c.clone() };
                !pc.is_negative()
            }
        })
    }

    /// Exact evaluation at a rational point (must be nonzero if negative exponents occur).
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                num_traits::pow(x.clone(), *e as usize)
            } else {
                num_traits::pow(x.recip(), (-*e) as usize)
            };
            acc += p * BigRational::from_integer(c.clone());
        }
        acc
    }

    /// The unique monomial unit ±q^k, if this is one.
    pub fn as_unit(&self) -> Option<(i64, bool)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if c.is_one() {
            Some((*e, true))
        } else if (-c).is_one() {
            Some((*e, false))
        } else {
            None
        }
    }

    /// Exact division by a monomial ±q^k.
    pub fn div_unit(&self, d: &Laurent) -> Result<Laurent, LaurentError> {
        let (k, pos) = d.as_unit().ok_or(LaurentError::NotMonomial)?;
        let r = self.shift(-k);
        Ok(if pos { r } else { -r })
    }

    // dense polynomial view: q^shift * sum poly[i] q^i, poly[0] != 0
    fn to_dense(&self) -> (i64, Vec<BigInt>) {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => {
                let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
                for (e, c) in &self.terms {
                    v[(e - lo) as usize] = c.clone();
                }
                (lo, v)
            }
            _ => (0, Vec::new()),
        }
    }

    fn from_dense(shift: i64, v: &[BigInt]) -> Self {
        Laurent::from_terms(v.iter().enumerate().map(|(i, c)| (shift + i as i64, c.clone())))
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if *e == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "q^{e}")?;
            } else {
                write!(f, "{a}*q^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Laurent {
    type Err = LaurentError;

    /// Accepts the canonical text form as well as `q`, `3q^2`, `2*q`, `-q^-1` and so on.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || LaurentError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let bytes: Vec<char> = t.chars().collect();
        let mut pieces = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            if (bytes[i] == '+' || bytes[i] == '-') && bytes[i - 1] != '^' {
                pieces.push(bytes[start..i].iter().collect::<String>());
                start = i;
            }
        }
        pieces.push(bytes[start..].iter().collect::<String>());
        let mut out = Laurent::zero();
        for piece in pieces {
            let (neg, body) = match piece.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            if body.is_empty() {
                return Err(err());
            }
            let (c, e) = match body.find('q') {
                None => (body.parse::<BigInt>().map_err(|_| err())?, 0i64),
                Some(pos) => {
                    let cpart = body[..pos].trim_end_matches('*');
                    let c = if cpart.is_empty() {
                        BigInt::one()
                    } else {
                        cpart.parse::<BigInt>().map_err(|_| err())?
                    };
                    let rest = &body[pos + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(err)?.parse::<i64>().map_err(|_| err())?
                    };
                    (c, e)
                }
            };
            out.add_term(e, &if neg { -c } else { c });
        }
        Ok(out)
    }
}

impl From<i64> for Laurent {
    fn from(c: i64) -> Self {
        Laurent::constant(c)
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c);
        }
    }
}

impl SubAssign<&Laurent> for Laurent {
    fn sub_assign(&mut self, rhs: &Laurent) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, &-c);
        }
    }
}

impl Add<&Laurent> for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Laurent> for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Laurent> for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Laurent> for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: Laurent) -> Laurent {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Laurent> for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: &Laurent) -> Laurent {
                (&self).$m(rhs)
            }
        }
        impl $tr<Laurent> for &Laurent {
            type Output = Laurent;
            fn $m(self, rhs: Laurent) -> Laurent {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

// ---- dense integer polynomials (ascending coefficients) used for gcds ----

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let c = content(v);
    if c.is_zero() || c.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &c).collect()
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, c) in b.iter().enumerate() {
            r[dr - db + i] -= &lr * c;
        }
        trim(&mut r);
        r = primitive(&r);
    }
    r
}

/// gcd in Z[x] with positive leading coefficient.
fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() {
        return normalize_sign(b);
    }
    if b.is_empty() {
        return normalize_sign(a);
    }
    let g = content(&a).gcd(&content(&b));
    let mut a = primitive(&a);
    let mut b = primitive(&b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.len() == 1 {
            return vec![g];
        }
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            let out: Vec<BigInt> = b.iter().map(|c| c * &g).collect();
            return normalize_sign(out);
        }
        a = b;
        b = primitive(&r);
    }
}

fn normalize_sign(v: Vec<BigInt>) -> Vec<BigInt> {
    if v.last().is_some_and(|c| c.is_negative()) {
        v.into_iter().map(|c| -c).collect()
    } else {
        v
    }
}

fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        assert!(r.is_empty(), "inexact polynomial division");
        return Vec::new();
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let (c, rem) = r[dr].div_rem(&b[db]);
        assert!(rem.is_zero(), "inexact polynomial division");
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] -= &c * bc;
        }
        q[dr - db] = c;
        trim(&mut r);
    }
    assert!(r.is_empty(), "inexact polynomial division");
    q
}

/// An element of Q(q), kept as numerator/denominator in lowest terms.
///
/// Normal form: the denominator is a polynomial with nonzero constant term and positive
/// leading coefficient, numerator and denominator are coprime in Z[q], and any power of q
/// lives in the numerator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Laurent,
    den: Laurent,
}

impl RationalFunction {
    pub fn new(num: Laurent, den: Laurent) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let (ns, np) = num.to_dense();
        let (ds, dp) = den.to_dense();
        let g = poly_gcd(&np, &dp);
        let mut np = poly_div_exact(&np, &g);
        let mut dp = poly_div_exact(&dp, &g);
        if dp.last().is_some_and(|c| c.is_negative()) {
            np.iter_mut().for_each(|c| *c = -c.clone());
            dp.iter_mut().for_each(|c| *c = -c.clone());
        }
        RationalFunction { num: Laurent::from_dense(ns - ds, &np), den: Laurent::from_dense(0, &dp) }
    }

    pub fn zero() -> Self {
        RationalFunction { num: Laurent::zero(), den: Laurent::one() }
    }

    pub fn one() -> Self {
        Self::from(Laurent::one())
    }

    pub fn numerator(&self) -> &Laurent {
        &self.num
    }

    pub fn denominator(&self) -> &Laurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The Laurent polynomial this equals, if any.
    pub fn to_laurent(&self) -> Option<Laurent> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn bar(&self) -> Self {
        Self::new(self.num.bar(), self.den.bar())
    }
}

impl From<Laurent> for RationalFunction {
    fn from(l: Laurent) -> Self {
        RationalFunction { num: l, den: Laurent::one() }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::new(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &-rhs
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type LaurentMatrix = Matrix<Laurent>;
pub type RationalMatrix = Matrix<RationalFunction>;

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Reorder rows and columns: entry (i, j) of the result is entry (perm[i], perm[j]).
    pub fn permute(&self, perm: &[usize]) -> Self {
        Matrix::from_fn(perm.len(), perm.len(), |i, j| self.get(perm[i], perm[j]).clone())
    }
}

impl<T: fmt::Display + Clone> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| Laurent::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { Laurent::one() } else { Laurent::zero() })
    }

    pub fn bar(&self) -> Self {
        self.map(|x| x.bar())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LaurentError> {
        if self.cols != other.rows {
            return Err(LaurentError::DimensionMismatch);
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Laurent::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                acc += &(a * other.get(k, j));
            }
            acc
        }))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() })
            })
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                self.get(i, i).is_one() && (i + 1..self.cols).all(|j| self.get(i, j).is_zero())
            })
    }

    pub fn to_rational(&self) -> RationalMatrix {
        self.map(|x| RationalFunction::from(x.clone()))
    }

    /// Number of nonzero entries.
    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }
}

impl RationalMatrix {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { RationalFunction::one() } else { RationalFunction::zero() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LaurentError> {
        if self.cols != other.rows {
            return Err(LaurentError::DimensionMismatch);
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = RationalFunction::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = &acc + &(a * b);
            }
            acc
        }))
    }

    /// Entrywise conversion back to Laurent polynomials, if every entry is one.
    pub fn to_laurent(&self) -> Option<LaurentMatrix> {
        let data: Option<Vec<Laurent>> = self.data.iter().map(|x| x.to_laurent()).collect();
        data.map(|data| Matrix { rows: self.rows, cols: self.cols, data })
    }
}

/// Inverse of a square matrix over Q(q) by Gauss-Jordan elimination with exact
/// rational-function arithmetic. (Named for its main use on unitriangular input, but any
/// invertible matrix is accepted.)
pub fn solve_unitriangular(c: &RationalMatrix) -> Result<RationalMatrix, LaurentError> {
    if c.rows != c.cols {
        return Err(LaurentError::NotSquare(c.rows, c.cols));
    }
    let n = c.rows;
    let mut a = c.clone();
    let mut inv = RationalMatrix::identity(n);
    for col in 0..n {
        let piv = (col..n).find(|&r| !a.get(r, col).is_zero()).ok_or(LaurentError::SingularMatrix)?;
        if piv != col {
            for k in 0..n {
                a.data.swap(piv * n + k, col * n + k);
                inv.data.swap(piv * n + k, col * n + k);
            }
        }
        let p = a.get(col, col).clone();
        if !p.to_laurent().is_some_and(|x| x.is_one()) {
            let pr = p.recip();
            for k in 0..n {
                let v = a.get(col, k) * &pr;
                a.set(col, k, v);
                let v = inv.get(col, k) * &pr;
                inv.set(col, k, v);
            }
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a.get(r, col).clone();
            if f.is_zero() {
                continue;
            }
            for k in 0..n {
                let ak = a.get(col, k);
                if !ak.is_zero() {
                    let v = a.get(r, k) - &(&f * ak);
                    a.set(r, k, v);
                }
                let ik = inv.get(col, k);
                if !ik.is_zero() {
                    let v = inv.get(r, k) - &(&f * ik);
                    inv.set(r, k, v);
                }
            }
        }
    }
    Ok(inv)
}
