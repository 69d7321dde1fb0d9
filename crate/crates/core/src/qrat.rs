//! Exact rational functions in the deformation parameter q.
//!
//! [`ZPoly`] is a dense univariate polynomial over arbitrary-precision
//! integers, always stored without trailing zero coefficients. [`QRat`] is a
//! quotient of two such polynomials kept in canonical form (coprime numerator
//! and denominator, positive leading coefficient in the denominator, zero
//! represented as 0/1), so structural equality is semantic equality. QRat is
//! the coefficient field for every polynomial and Hecke-algebra element in
//! this crate.
//!
//! Also provides the q-integer `[k]_q = 1 + q + ... + q^{k-1}`, the
//! q-factorial, and the normalization constant `d_lambda(q)` attached to a
//! partition inside a fixed number of variables.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// Errors from coefficient-level operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QRatError {
    /// Division by the zero rational function.
    DivisionByZero,
    /// Evaluation or series expansion at a root of the denominator.
    Pole(BigRational),
    /// A q-integer index must be nonnegative.
    NegativeIndex(i64),
    /// Input expected to be a partition is not weakly decreasing nonnegative.
    NotAPartition(Vec<i64>),
    /// A partition has more parts than the ambient number of variables.
    PartitionTooLong { len: usize, n: usize },
    /// Failure while parsing a textual or JSON representation.
    Parse(String),
}

impl fmt::Display for QRatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QRatError::DivisionByZero => write!(f, "division by zero"),
            QRatError::Pole(at) => write!(f, "pole at q = {at}"),
            QRatError::NegativeIndex(k) => write!(f, "q-integer index {k} is negative"),
            QRatError::NotAPartition(v) => write!(f, "{v:?} is not a partition"),
            QRatError::PartitionTooLong { len, n } => {
                write!(f, "partition has {len} parts but only {n} variables")
            }
            QRatError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for QRatError {}

/// Univariate polynomial in q over arbitrary-precision integers.
///
/// Coefficients are stored in ascending powers; the vector never ends in a
/// zero, and the zero polynomial is the empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        ZPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        ZPoly::new(vec![c])
    }

    /// The monomial `c * q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return ZPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        ZPoly { coeffs }
    }

    pub fn q() -> Self {
        ZPoly::monomial(BigInt::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Smallest power with a nonzero coefficient, or `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        // Horner, highest power first.
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    fn add_ref(&self, other: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        ZPoly::new(out)
    }

    fn sub_ref(&self, other: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - other.coeff(k));
        }
        ZPoly::new(out)
    }

    fn mul_ref(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }

    fn neg_ref(&self) -> ZPoly {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn scale_int(&self, c: &BigInt) -> ZPoly {
        if c.is_zero() {
            return ZPoly::zero();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by q^k.
    fn shift_up(&self, k: usize) -> ZPoly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs }
    }

    /// Nonnegative gcd of all coefficients; 0 for the zero polynomial.
    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Exact division by a nonzero divisor; panics if division is not exact.
    fn div_exact(&self, d: &ZPoly) -> ZPoly {
        assert!(!d.is_zero(), "exact division by zero polynomial");
        if self.is_zero() {
            return ZPoly::zero();
        }
        let dd = d.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let mut deg = rem.len() - 1;
        assert!(deg >= dd, "exact division with too small a dividend");
        let mut quot = vec![BigInt::zero(); deg - dd + 1];
        let lead = &d.coeffs[dd];
        loop {
            while rem[deg].is_zero() {
                if deg == 0 {
                    break;
                }
                deg -= 1;
            }
            if rem[deg].is_zero() || deg < dd {
                break;
            }
            let (c, r) = rem[deg].div_rem(lead);
            assert!(r.is_zero(), "inexact polynomial division");
            let shift = deg - dd;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let sub = dc * &c;
                rem[shift + j] -= sub;
            }
            quot[shift] = c;
            if deg == 0 {
                break;
            }
        }
        assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
        ZPoly::new(quot)
    }

    fn primitive(&self) -> ZPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    /// Pseudo-remainder of self by d (coefficient growth is tolerated; callers
    /// take primitive parts between steps).
    fn pseudo_rem(&self, d: &ZPoly) -> ZPoly {
        let dd = d.degree().expect("pseudo_rem by zero");
        let lead = d.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let top = r.leading().unwrap().clone();
            r = r.scale_int(&lead).sub_ref(&d.shift_up(dr - dd).scale_int(&top));
        }
        r
    }

    /// Greatest common divisor over the integers, normalized to a positive
    /// leading coefficient.
    pub fn gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
        fn pos_leading(p: ZPoly) -> ZPoly {
            match p.leading() {
                Some(l) if l.is_negative() => p.neg_ref(),
                _ => p,
            }
        }
        if a.is_zero() {
            return pos_leading(b.clone());
        }
        if b.is_zero() {
            return pos_leading(a.clone());
        }
        let content = a.content().gcd(&b.content());
        let mut f = a.primitive();
        let mut g = b.primitive();
        while !g.is_zero() {
            let r = f.pseudo_rem(&g).primitive();
            f = g;
            g = r;
        }
        pos_leading(f.scale_int(&content))
    }

    fn fmt_term(c: &BigInt, k: usize, first: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        if k == 0 {
            write!(f, "{mag}")
        } else {
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            if k == 1 {
                write!(f, "q")
            } else {
                write!(f, "q^{k}")
            }
        }
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            ZPoly::fmt_term(c, k, first, f)?;
            first = false;
        }
        Ok(())
    }
}

macro_rules! zpoly_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait for &ZPoly {
            type Output = ZPoly;
            fn $method(self, rhs: &ZPoly) -> ZPoly {
                self.$inner(rhs)
            }
        }
        impl $trait for ZPoly {
            type Output = ZPoly;
            fn $method(self, rhs: ZPoly) -> ZPoly {
                (&self).$inner(&rhs)
            }
        }
    };
}

zpoly_binop!(Add, add, add_ref);
zpoly_binop!(Sub, sub, sub_ref);
zpoly_binop!(Mul, mul, mul_ref);

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        self.neg_ref()
    }
}

impl Neg for ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        self.neg_ref()
    }
}

/// Rational function in q, held in canonical reduced form.
///
/// Invariants: numerator and denominator share no nonconstant or constant
/// factor beyond units, the denominator has a positive leading coefficient,
/// and zero is 0/1. Equality of values is therefore structural equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QRat {
    num: ZPoly,
    den: ZPoly,
}

impl Default for QRat {
    fn default() -> Self {
        QRat::zero()
    }
}

impl QRat {
    fn canonical(num: ZPoly, den: ZPoly) -> QRat {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return QRat {
                num: ZPoly::zero(),
                den: ZPoly::one(),
            };
        }
        if den.is_one() {
            return QRat { num, den };
        }
        let g = ZPoly::gcd(&num, &den);
        let mut num = num.div_exact(&g);
        let mut den = den.div_exact(&g);
        if den.leading().is_some_and(|l| l.is_negative()) {
            num = num.neg_ref();
            den = den.neg_ref();
        }
        QRat { num, den }
    }

    /// Build a quotient; errors if `den` is the zero polynomial.
    pub fn new(num: ZPoly, den: ZPoly) -> Result<QRat, QRatError> {
        if den.is_zero() {
            return Err(QRatError::DivisionByZero);
        }
        Ok(QRat::canonical(num, den))
    }

    pub fn from_poly(p: ZPoly) -> QRat {
        QRat {
            num: p,
            den: ZPoly::one(),
        }
    }

    pub fn from_int(c: i64) -> QRat {
        QRat::from_poly(ZPoly::from_ints(&[c]))
    }

    pub fn from_bigint(c: BigInt) -> QRat {
        QRat::from_poly(ZPoly::constant(c))
    }

    pub fn from_rational(r: &BigRational) -> QRat {
        QRat {
            num: ZPoly::constant(r.numer().clone()),
            den: ZPoly::constant(r.denom().clone()),
        }
    }

    pub fn zero() -> QRat {
        QRat::from_poly(ZPoly::zero())
    }

    pub fn one() -> QRat {
        QRat::from_poly(ZPoly::one())
    }

    pub fn q() -> QRat {
        QRat::from_poly(ZPoly::q())
    }

    /// The monomial q^k.
    pub fn q_pow(k: usize) -> QRat {
        QRat::from_poly(ZPoly::monomial(BigInt::one(), k))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn numer(&self) -> &ZPoly {
        &self.num
    }

    pub fn denom(&self) -> &ZPoly {
        &self.den
    }

    /// The numerator, provided the value is a polynomial.
    pub fn as_poly(&self) -> Option<&ZPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    fn add_ref(&self, other: &QRat) -> QRat {
        if self.den.is_one() && other.den.is_one() {
            return QRat::from_poly(self.num.add_ref(&other.num));
        }
        let num = self.num.mul_ref(&other.den).add_ref(&other.num.mul_ref(&self.den));
        let den = self.den.mul_ref(&other.den);
        QRat::canonical(num, den)
    }

    fn sub_ref(&self, other: &QRat) -> QRat {
        if self.den.is_one() && other.den.is_one() {
            return QRat::from_poly(self.num.sub_ref(&other.num));
        }
        let num = self.num.mul_ref(&other.den).sub_ref(&other.num.mul_ref(&self.den));
        let den = self.den.mul_ref(&other.den);
        QRat::canonical(num, den)
    }

    fn mul_ref(&self, other: &QRat) -> QRat {
        if self.is_zero() || other.is_zero() {
            return QRat::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return QRat::from_poly(self.num.mul_ref(&other.num));
        }
        // Cross-cancel so the product of two canonical values needs no
        // further gcd beyond a sign fix.
        let g1 = ZPoly::gcd(&self.num, &other.den);
        let g2 = ZPoly::gcd(&other.num, &self.den);
        let num = self.num.div_exact(&g1).mul_ref(&other.num.div_exact(&g2));
        let mut num = num;
        let mut den = self.den.div_exact(&g2).mul_ref(&other.den.div_exact(&g1));
        if den.leading().is_some_and(|l| l.is_negative()) {
            num = num.neg_ref();
            den = den.neg_ref();
        }
        QRat { num, den }
    }

    fn neg_ref(&self) -> QRat {
        QRat {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn recip(&self) -> Result<QRat, QRatError> {
        if self.is_zero() {
            return Err(QRatError::DivisionByZero);
        }
        let mut num = self.den.clone();
        let mut den = self.num.clone();
        if den.leading().is_some_and(|l| l.is_negative()) {
            num = num.neg_ref();
            den = den.neg_ref();
        }
        Ok(QRat { num, den })
    }

    pub fn checked_div(&self, other: &QRat) -> Result<QRat, QRatError> {
        Ok(self.mul_ref(&other.recip()?))
    }

    pub fn pow(&self, k: u32) -> QRat {
        let mut acc = QRat::one();
        for _ in 0..k {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Exact evaluation at a rational point; errors at a pole.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational, QRatError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(QRatError::Pole(x.clone()));
        }
        Ok(self.num.eval(x) / d)
    }

    /// Power-series coefficients at q = 0, orders `0..=order`.
    /// Errors when the denominator vanishes at q = 0.
    pub fn taylor(&self, order: usize) -> Result<Vec<BigRational>, QRatError> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(QRatError::Pole(BigRational::zero()));
        }
        let d0 = BigRational::from_integer(d0);
        // inv = 1/den as a series.
        let mut inv: Vec<BigRational> = Vec::with_capacity(order + 1);
        inv.push(d0.recip());
        for k in 1..=order {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                let c = self.den.coeff(j);
                if c.is_zero() {
                    continue;
                }
                acc += BigRational::from_integer(c) * &inv[k - j];
            }
            inv.push(-acc / &d0);
        }
        let mut out = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = BigRational::zero();
            for j in 0..=k {
                let c = self.num.coeff(j);
                if c.is_zero() {
                    continue;
                }
                acc += BigRational::from_integer(c) * &inv[k - j];
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// True when `self - other` lies in the ideal generated by q^{cap+1},
    /// i.e. the two values agree as power series through order `cap`.
    pub fn congruent_mod_q_pow(&self, other: &QRat, cap: usize) -> bool {
        let d = self.sub_ref(other);
        if d.is_zero() {
            return true;
        }
        if d.den.coeff(0).is_zero() {
            return false;
        }
        d.num.valuation().is_some_and(|v| v > cap)
    }

    /// For a polynomial value, its top monomial as (coefficient, degree).
    pub fn leading_q_term(&self) -> Option<(BigInt, usize)> {
        let p = self.as_poly()?;
        let d = p.degree()?;
        Some((p.leading().unwrap().clone(), d))
    }

    fn fmt_part(p: &ZPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = p.coeffs.iter().filter(|c| !c.is_zero()).count();
        if terms > 1 {
            write!(f, "({p})")
        } else {
            write!(f, "{p}")
        }
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        QRat::fmt_part(&self.num, f)?;
        write!(f, "/")?;
        let single_unit_term = self.den.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
            && self.den.leading().is_some_and(|l| l.is_one());
        if single_unit_term {
            write!(f, "{}", self.den)
        } else {
            write!(f, "({})", self.den)
        }
    }
}

macro_rules! qrat_binop {
    ($trait:ident, $method:ident, $inner:ident, $assign:ident, $assign_method:ident) => {
        impl $trait for &QRat {
            type Output = QRat;
            fn $method(self, rhs: &QRat) -> QRat {
                self.$inner(rhs)
            }
        }
        impl $trait for QRat {
            type Output = QRat;
            fn $method(self, rhs: QRat) -> QRat {
                (&self).$inner(&rhs)
            }
        }
        impl $trait<&QRat> for QRat {
            type Output = QRat;
            fn $method(self, rhs: &QRat) -> QRat {
                (&self).$inner(rhs)
            }
        }
        impl $assign<&QRat> for QRat {
            fn $assign_method(&mut self, rhs: &QRat) {
                *self = (&*self).$inner(rhs);
            }
        }
    };
}

qrat_binop!(Add, add, add_ref, AddAssign, add_assign);
qrat_binop!(Sub, sub, sub_ref, SubAssign, sub_assign);
qrat_binop!(Mul, mul, mul_ref, MulAssign, mul_assign);

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        self.neg_ref()
    }
}

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        self.neg_ref()
    }
}

/// Panics on division by zero; use [`QRat::checked_div`] for an error value.
impl Div for &QRat {
    type Output = QRat;
    fn div(self, rhs: &QRat) -> QRat {
        self.checked_div(rhs).expect("division by zero QRat")
    }
}

impl Div for QRat {
    type Output = QRat;
    fn div(self, rhs: QRat) -> QRat {
        (&self) / (&rhs)
    }
}

/// The q-integer `[k]_q = 1 + q + ... + q^{k-1}`; `[0]_q = 0`.
/// Errors on negative k.
pub fn q_int(k: i64) -> Result<QRat, QRatError> {
    if k < 0 {
        return Err(QRatError::NegativeIndex(k));
    }
    Ok(QRat::from_poly(ZPoly::new(vec![BigInt::one(); k as usize])))
}

/// `[m]_q! = [1]_q [2]_q ... [m]_q`.
pub fn q_factorial(m: usize) -> QRat {
    let mut acc = QRat::one();
    for j in 1..=m {
        acc = acc * q_int(j as i64).unwrap();
    }
    acc
}

/// The normalization constant `d_lambda(q)`: the product of q-factorials of
/// the multiplicities of each part value occurring in lambda, where the value
/// 0 occurs `n - len(lambda)` times.
///
/// The input may carry explicit trailing zeros; those count toward the
/// multiplicity of 0 exactly as the implicit padding does.
pub fn d_lambda(lambda: &[i64], n: usize) -> Result<QRat, QRatError> {
    for w in lambda.windows(2) {
        if w[0] < w[1] {
            return Err(QRatError::NotAPartition(lambda.to_vec()));
        }
    }
    if lambda.iter().any(|&p| p < 0) {
        return Err(QRatError::NotAPartition(lambda.to_vec()));
    }
    if lambda.len() > n {
        return Err(QRatError::PartitionTooLong {
            len: lambda.len(),
            n,
        });
    }
    let mut acc = QRat::one();
    let mut run = 0usize;
    let mut prev: Option<i64> = None;
    let positive: Vec<i64> = lambda.iter().copied().filter(|&p| p > 0).collect();
    for &p in &positive {
        if Some(p) == prev {
            run += 1;
        } else {
            acc = acc * q_factorial(run);
            run = 1;
            prev = Some(p);
        }
    }
    acc = acc * q_factorial(run);
    acc = acc * q_factorial(n - positive.len());
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn err(&self, msg: &str) -> QRatError {
        QRatError::Parse(format!("{msg} at byte {}", self.pos))
    }

    fn expr(&mut self) -> Result<QRat, QRatError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                b'-' => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<QRat, QRatError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.bump();
                    acc = acc * self.factor()?;
                }
                Some(b'/') => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc
                        .checked_div(&rhs)
                        .map_err(|_| self.err("division by zero"))?;
                }
                // Juxtaposition like "2q^2" or "3(1+q)".
                Some(b'q') | Some(b'(') => {
                    acc = acc * self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<QRat, QRatError> {
        match self.peek() {
            Some(b'-') => {
                self.bump();
                Ok(-self.factor()?)
            }
            _ => {
                let base = self.atom()?;
                if self.peek() == Some(b'^') {
                    self.bump();
                    let k = self.integer()?;
                    if k < 0 {
                        return Err(self.err("negative exponent"));
                    }
                    Ok(base.pow(k as u32))
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn atom(&mut self) -> Result<QRat, QRatError> {
        match self.peek() {
            Some(b'q') => {
                self.bump();
                Ok(QRat::q())
            }
            Some(b'(') => {
                self.bump();
                let e = self.expr()?;
                if self.bump() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let k = self.integer()?;
                Ok(QRat::from_int(k))
            }
            _ => Err(self.err("expected 'q', '(' or a number")),
        }
    }

    fn integer(&mut self) -> Result<i64, QRatError> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        s.parse::<i64>()
            .map_err(|_| QRatError::Parse(format!("bad integer {s:?}")))
    }
}

impl FromStr for QRat {
    type Err = QRatError;

    /// Parses expressions like `"(1-q)/(1+q)"`, `"q^2(1-q)(1-q^2)"` or
    /// `"-2q^3 + 1"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser::new(s);
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

pub(crate) fn bigint_to_json(c: &BigInt) -> serde_json::Value {
    let n: serde_json::Number = c
        .to_string()
        .parse()
        .expect("integer is a valid JSON number");
    serde_json::Value::Number(n)
}

pub(crate) fn json_to_bigint(v: &serde_json::Value) -> Result<BigInt, QRatError> {
    match v {
        serde_json::Value::Number(n) => n
            .to_string()
            .parse::<BigInt>()
            .map_err(|_| QRatError::Parse(format!("non-integer JSON number {n}"))),
        other => Err(QRatError::Parse(format!("expected number, got {other}"))),
    }
}

impl ZPoly {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(bigint_to_json).collect())
    }

    pub fn from_json(v: &serde_json::Value) -> Result<ZPoly, QRatError> {
        let arr = v
            .as_array()
            .ok_or_else(|| QRatError::Parse(format!("expected array, got {v}")))?;
        let coeffs = arr
            .iter()
            .map(json_to_bigint)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ZPoly::new(coeffs))
    }
}

impl QRat {
    /// `{"num": [c0, c1, ...], "den": [d0, ...]}` with ascending powers.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "num": self.num.to_json(),
            "den": self.den.to_json(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<QRat, QRatError> {
        let num = ZPoly::from_json(
            v.get("num")
                .ok_or_else(|| QRatError::Parse("missing \"num\"".into()))?,
        )?;
        let den = ZPoly::from_json(
            v.get("den")
                .ok_or_else(|| QRatError::Parse("missing \"den\"".into()))?,
        )?;
        QRat::new(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qr(s: &str) -> QRat {
        s.parse().unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn canonical_form_examples() {
        // (1 - q^2) / (1 + q) reduces to 1 - q.
        let v = QRat::new(ZPoly::from_ints(&[1, 0, -1]), ZPoly::from_ints(&[1, 1])).unwrap();
        assert_eq!(v, qr("1-q"));
        assert!(v.is_polynomial());
        // Denominator keeps a positive leading coefficient.
        let w = QRat::new(ZPoly::from_ints(&[1]), ZPoly::from_ints(&[1, -1])).unwrap();
        assert_eq!(w.denom(), &ZPoly::from_ints(&[-1, 1]));
        assert_eq!(w.numer(), &ZPoly::from_ints(&[-1]));
        // Zero is 0/1 no matter how it is produced.
        let z = QRat::new(ZPoly::zero(), ZPoly::from_ints(&[3, 7])).unwrap();
        assert_eq!(z, QRat::zero());
        assert_eq!(z.denom(), &ZPoly::one());
    }

    #[test]
    fn arithmetic_examples() {
        let a = qr("1/(1-q)");
        let b = qr("-q/(1-q)");
        assert_eq!(&a + &b, QRat::one());
        let c = qr("(1-q)/(1+q)");
        let d = qr("(1+q)/(1-q)");
        assert_eq!(&c * &d, QRat::one());
        assert_eq!(
            QRat::from_int(1).checked_div(&QRat::zero()),
            Err(QRatError::DivisionByZero)
        );
    }

    #[test]
    fn field_axioms_random() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let rand_poly = |rng: &mut rand_chacha::ChaCha8Rng| {
            let deg = rng.gen_range(0..=3);
            ZPoly::new(
                (0..=deg)
                    .map(|_| BigInt::from(rng.gen_range(-5i64..=5)))
                    .collect(),
            )
        };
        let rand_qrat = |rng: &mut rand_chacha::ChaCha8Rng| loop {
            let num = rand_poly(rng);
            let den = rand_poly(rng);
            if !den.is_zero() {
                return QRat::new(num, den).unwrap();
            }
        };
        for _ in 0..400 {
            let a = rand_qrat(&mut rng);
            let b = rand_qrat(&mut rng);
            let c = rand_qrat(&mut rng);
            assert_eq!(&a + &b, &b + &a);
            assert_eq!(&a * &b, &b * &a);
            assert_eq!((&a + &b) + &c, &a + &(&b + &c));
            assert_eq!((&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&a - &a, QRat::zero());
            if !a.is_zero() {
                assert_eq!(&a * &a.recip().unwrap(), QRat::one());
            }
        }
    }

    #[test]
    fn q_int_values() {
        assert_eq!(q_int(0).unwrap(), QRat::zero());
        assert_eq!(q_int(1).unwrap(), QRat::one());
        assert_eq!(q_int(3).unwrap(), qr("1+q+q^2"));
        assert_eq!(q_int(-1), Err(QRatError::NegativeIndex(-1)));
    }

    #[test]
    fn q_int_additivity() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let a = rng.gen_range(0..=12i64);
            let b = rng.gen_range(0..=12i64);
            let lhs = q_int(a + b).unwrap();
            let rhs = q_int(a).unwrap() + QRat::q_pow(a as usize) * q_int(b).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn d_lambda_values() {
        assert_eq!(d_lambda(&[2, 1, 0], 3).unwrap(), QRat::one());
        assert_eq!(d_lambda(&[2, 0, 0], 3).unwrap(), qr("1+q"));
        assert_eq!(d_lambda(&[], 3).unwrap(), qr("(1+q)(1+q+q^2)"));
        assert_eq!(d_lambda(&[2], 3).unwrap(), qr("1+q"));
        assert_eq!(
            d_lambda(&[1, 2], 2),
            Err(QRatError::NotAPartition(vec![1, 2]))
        );
        assert_eq!(
            d_lambda(&[1, 1, 1], 2),
            Err(QRatError::PartitionTooLong { len: 3, n: 2 })
        );
    }

    #[test]
    fn eval_examples() {
        let v = qr("(1-q)/(1+q)");
        assert_eq!(v.eval(&rat(0, 1)).unwrap(), rat(1, 1));
        assert_eq!(v.eval(&rat(1, 2)).unwrap(), rat(1, 3));
        assert_eq!(
            v.eval(&rat(-1, 1)),
            Err(QRatError::Pole(rat(-1, 1)))
        );
    }

    #[test]
    fn taylor_series() {
        let v = qr("1/(1-q)");
        let t = v.taylor(4).unwrap();
        assert!(t.iter().all(|c| c == &rat(1, 1)));
        let w = qr("(1-q)/(1+q)");
        let t = w.taylor(3).unwrap();
        assert_eq!(t, vec![rat(1, 1), rat(-2, 1), rat(2, 1), rat(-2, 1)]);
        assert!(qr("1/q").taylor(1).is_err());
    }

    #[test]
    fn congruence_mod_q_power() {
        let a = qr("1/(1-q)");
        let b = qr("1+q+q^2");
        assert!(a.congruent_mod_q_pow(&b, 2));
        assert!(!a.congruent_mod_q_pow(&b, 3));
    }

    #[test]
    fn display_round_trip() {
        for s in [
            "0",
            "1",
            "-q",
            "1 - q",
            "q^5 + q^4 - q^3 - 2q^2 + q",
            "(1 - q)/(1 + q)",
            "1/(1 + q)",
            "-q/(1 + q)",
        ] {
            let v = qr(s);
            let back: QRat = v.to_string().parse().unwrap();
            assert_eq!(v, back, "round trip of {s}");
        }
    }

    #[test]
    fn json_round_trip() {
        for s in ["0", "1-q", "q^3/(1+q)", "(1-q)/(1+q+q^2)"] {
            let v = qr(s);
            let j = v.to_json();
            assert_eq!(QRat::from_json(&j).unwrap(), v);
        }
        // Arbitrary precision integers survive.
        let big = QRat::from_bigint("123456789012345678901234567890".parse().unwrap());
        assert_eq!(QRat::from_json(&big.to_json()).unwrap(), big);
    }

    #[test]
    fn leading_q_term_examples() {
        let v = qr("q^4 - q^3 - q^2 + q");
        assert_eq!(v.leading_q_term(), Some((BigInt::one(), 4)));
        assert_eq!(qr("1/(1+q)").leading_q_term(), None);
    }
}
