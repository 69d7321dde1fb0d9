//! Sparse Laurent polynomials in n variables with [`QRat`] coefficients.
//!
//! Exponent vectors are plain `Vec<i64>` of length n (negative entries
//! allowed). Terms are kept in a `BTreeMap` so iteration order is
//! deterministic; display walks the map in reverse, i.e. descending
//! left-to-right lexicographic order of exponents.
//!
//! The module also carries the exponent-level combinatorics the rest of the
//! crate is built on: the partial order in which operator images triangulate,
//! the right-to-left lexicographic total order refining it, the `club`
//! involution, and the staircase statistic `n_stat`.

use crate::qrat::QRat;
use num_rational::BigRational;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent vector of a Laurent monomial; entry i is the power of x_{i+1}.
pub type Exponent = Vec<i64>;

/// Errors from polynomial-level operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    /// Arithmetic between polynomials in different numbers of variables.
    VariableMismatch { left: usize, right: usize },
    /// The zero polynomial has no leading terms.
    ZeroPolynomial,
    /// A coefficient has a pole at the requested q value.
    Pole { exp: Exponent },
    /// Failure while parsing a JSON representation.
    Parse(String),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::VariableMismatch { left, right } => {
                write!(f, "polynomials in {left} and {right} variables")
            }
            PolyError::ZeroPolynomial => write!(f, "zero polynomial"),
            PolyError::Pole { exp } => {
                write!(f, "coefficient of x^{exp:?} has a pole at the requested q")
            }
            PolyError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for PolyError {}

/// Sum of the entries.
pub fn weight(v: &[i64]) -> i64 {
    v.iter().sum()
}

/// The involution sending v to the negated reversal of v.
pub fn club(v: &[i64]) -> Exponent {
    v.iter().rev().map(|&e| -e).collect()
}

/// The staircase statistic: sum of (i-1) * v_i over positions i = 1..n.
pub fn n_stat(v: &[i64]) -> i64 {
    v.iter()
        .enumerate()
        .map(|(i, &e)| i as i64 * e)
        .sum()
}

/// Entry j (1-based) of the permuted vector is entry sigma(j) of v.
///
/// With this convention, acting by a product permutes in stages:
/// `act(v, sigma*tau) = act(act(v, sigma), tau)`.
pub fn act_on_exponent(v: &[i64], images: &[usize]) -> Exponent {
    assert_eq!(v.len(), images.len(), "permutation size mismatch");
    images.iter().map(|&s| v[s - 1]).collect()
}

/// Partial order on exponent vectors: u <= v when every suffix sum of v - u
/// is nonnegative.
///
/// Larger vectors are closer to their increasing rearrangement, so on
/// rearrangements of a partition the increasing arrangement is the unique
/// maximum; e.g. (3,0,0) < (1,1,1) < (0,1,2)-style comparisons hold while
/// (2,0,1) and (1,2,0) are incomparable.
pub fn compare_order(u: &[i64], v: &[i64]) -> Option<Ordering> {
    assert_eq!(u.len(), v.len(), "exponent length mismatch");
    let mut le = true; // u <= v so far
    let mut ge = true;
    let mut suffix = 0i64;
    for k in (0..u.len()).rev() {
        suffix += v[k] - u[k];
        if suffix > 0 {
            ge = false;
        }
        if suffix < 0 {
            le = false;
        }
    }
    match (le, ge) {
        (true, true) => Some(Ordering::Equal),
        (true, false) => Some(Ordering::Less),
        (false, true) => Some(Ordering::Greater),
        (false, false) => None,
    }
}

/// Right-to-left lexicographic total order: compare at the largest index
/// where the vectors differ; the one smaller there is smaller.
///
/// This refines [`compare_order`]: if u < v in the partial order then the
/// rightmost nonzero suffix sum of v - u is positive, so at the largest
/// differing index v exceeds u.
pub fn r2l_lex_cmp(u: &[i64], v: &[i64]) -> Ordering {
    assert_eq!(u.len(), v.len(), "exponent length mismatch");
    for k in (0..u.len()).rev() {
        match u[k].cmp(&v[k]) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Sparse Laurent polynomial in a fixed number of variables.
///
/// Invariant: no stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<Exponent, QRat>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> Self {
        LaurentPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        LaurentPoly::monomial(n, &vec![0; n], QRat::one())
    }

    pub fn monomial(n: usize, exp: &[i64], coeff: QRat) -> Self {
        assert_eq!(exp.len(), n, "exponent length mismatch");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp.to_vec(), coeff);
        }
        LaurentPoly { n, terms }
    }

    /// The variable x_i (1-based).
    pub fn var(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "variable index {i} out of 1..={n}");
        let mut exp = vec![0; n];
        exp[i - 1] = 1;
        LaurentPoly::monomial(n, &exp, QRat::one())
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, QRat)>,
    {
        let mut p = LaurentPoly::zero(n);
        for (exp, c) in terms {
            p.add_term(&exp, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &QRat)> {
        self.terms.iter()
    }

    /// Terms in the display order: descending lexicographic.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Exponent, &QRat)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exp: &[i64]) -> QRat {
        self.terms.get(exp).cloned().unwrap_or_else(QRat::zero)
    }

    /// Adds `c * x^exp`, dropping the term if the sum cancels.
    pub fn add_term(&mut self, exp: &[i64], c: &QRat) {
        assert_eq!(exp.len(), self.n, "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(exp) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(exp);
                }
            }
            None => {
                self.terms.insert(exp.to_vec(), c.clone());
            }
        }
    }

    fn check_same_vars(&self, other: &LaurentPoly) -> Result<(), PolyError> {
        if self.n != other.n {
            return Err(PolyError::VariableMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (exp, c) in &other.terms {
            out.add_term(exp, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (exp, c) in &other.terms {
            out.add_term(exp, &(-c));
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        self.check_same_vars(other)?;
        let mut out = LaurentPoly::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let exp: Exponent = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(&exp, &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &QRat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.n);
        }
        LaurentPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.clone(), a * c))
                .collect(),
        }
    }

    /// Multiplies by the monomial `c * x^exp`.
    pub fn mul_monomial(&self, exp: &[i64], c: &QRat) -> LaurentPoly {
        assert_eq!(exp.len(), self.n, "exponent length mismatch");
        if c.is_zero() {
            return LaurentPoly::zero(self.n);
        }
        LaurentPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| {
                    let shifted: Exponent = e.iter().zip(exp).map(|(x, y)| x + y).collect();
                    (shifted, a * c)
                })
                .collect(),
        }
    }

    /// Swaps variables i and i+1 (1-based).
    pub fn swap_vars(&self, i: usize) -> LaurentPoly {
        assert!(
            (1..self.n).contains(&i),
            "adjacent swap index {i} out of 1..{}",
            self.n
        );
        LaurentPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.swap(i - 1, i);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Applies a permutation given by its 1-based one-line images; exponent
    /// vectors transform by [`act_on_exponent`].
    pub fn permute_vars(&self, images: &[usize]) -> LaurentPoly {
        assert_eq!(images.len(), self.n, "permutation size mismatch");
        LaurentPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (act_on_exponent(e, images), c.clone()))
                .collect(),
        }
    }

    /// Applies [`club`] to every exponent.
    pub fn club(&self) -> LaurentPoly {
        LaurentPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (club(e), c.clone()))
                .collect(),
        }
    }

    /// Common weight of all exponents, or `None` when inhomogeneous.
    /// The zero polynomial reports weight 0.
    pub fn homogeneous_weight(&self) -> Option<i64> {
        let mut w = None;
        for exp in self.terms.keys() {
            let t = weight(exp);
            match w {
                None => w = Some(t),
                Some(prev) if prev != t => return None,
                _ => {}
            }
        }
        Some(w.unwrap_or(0))
    }

    /// Terms maximal in the [`compare_order`] partial order.
    pub fn leading_terms(&self) -> Result<Vec<(Exponent, QRat)>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let exps: Vec<&Exponent> = self.terms.keys().collect();
        let mut out = Vec::new();
        'outer: for e in &exps {
            for f in &exps {
                if f != e && compare_order(e, f) == Some(Ordering::Less) {
                    continue 'outer;
                }
            }
            out.push(((*e).clone(), self.terms[*e].clone()));
        }
        Ok(out)
    }

    /// The largest exponent in right-to-left lexicographic order.
    pub fn max_exponent_r2l(&self) -> Option<&Exponent> {
        self.terms
            .keys()
            .max_by(|a, b| r2l_lex_cmp(a, b))
    }

    /// Evaluates every coefficient at q = q0, keeping the result as a
    /// polynomial with constant coefficients. Errors if any coefficient has
    /// a pole there (canonical form makes a vanishing denominator a genuine
    /// pole).
    pub fn eval_q(&self, q0: &BigRational) -> Result<LaurentPoly, PolyError> {
        let mut out = LaurentPoly::zero(self.n);
        for (exp, c) in &self.terms {
            let v = c
                .eval(q0)
                .map_err(|_| PolyError::Pole { exp: exp.clone() })?;
            out.add_term(exp, &QRat::from_rational(&v));
        }
        Ok(out)
    }

    fn fmt_exp(exp: &[i64], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if exp.iter().all(|&e| (0..=9).contains(&e)) {
            write!(f, "x^{{")?;
            for e in exp {
                write!(f, "{e}")?;
            }
            write!(f, "}}")
        } else {
            write!(f, "x^{{(")?;
            for (k, e) in exp.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, ")}}")
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms_desc()
            .map(|(exp, c)| {
                serde_json::json!({
                    "exp": exp,
                    "coeff": c.to_json(),
                })
            })
            .collect();
        serde_json::json!({ "n": self.n, "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<LaurentPoly, PolyError> {
        let n = v
            .get("n")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| PolyError::Parse("missing \"n\"".into()))? as usize;
        let terms = v
            .get("terms")
            .and_then(|x| x.as_array())
            .ok_or_else(|| PolyError::Parse("missing \"terms\"".into()))?;
        let mut out = LaurentPoly::zero(n);
        for t in terms {
            let exp: Exponent = t
                .get("exp")
                .and_then(|x| x.as_array())
                .ok_or_else(|| PolyError::Parse("term missing \"exp\"".into()))?
                .iter()
                .map(|e| {
                    e.as_i64()
                        .ok_or_else(|| PolyError::Parse(format!("bad exponent entry {e}")))
                })
                .collect::<Result<_, _>>()?;
            if exp.len() != n {
                return Err(PolyError::Parse(format!(
                    "exponent {exp:?} has length {} but n = {n}",
                    exp.len()
                )));
            }
            let coeff = QRat::from_json(
                t.get("coeff")
                    .ok_or_else(|| PolyError::Parse("term missing \"coeff\"".into()))?,
            )
            .map_err(|e| PolyError::Parse(e.to_string()))?;
            out.add_term(&exp, &coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, c) in self.terms_desc() {
            // Pull an overall sign out of the numerator's lowest-order
            // coefficient so terms join with " + " / " - "; coefficients are
            // displayed in ascending powers of q, so this keeps the shown
            // coefficient from starting with a minus.
            let neg = c
                .numer()
                .coeffs()
                .iter()
                .find(|l| !num_traits::Zero::is_zero(*l))
                .is_some_and(|l| l < &num_bigint::BigInt::from(0));
            let shown = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if shown.is_one() {
                LaurentPoly::fmt_exp(exp, f)?;
            } else {
                let composite = !shown.is_polynomial()
                    || shown
                        .numer()
                        .coeffs()
                        .iter()
                        .filter(|c| !num_traits::Zero::is_zero(*c))
                        .count()
                        > 1;
                if composite {
                    write!(f, "({shown})·")?;
                } else {
                    write!(f, "{shown}·")?;
                }
                LaurentPoly::fmt_exp(exp, f)?;
            }
        }
        Ok(())
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$inner(rhs).expect("variable count mismatch")
            }
        }
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$inner(&rhs).expect("variable count mismatch")
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qr(s: &str) -> QRat {
        s.parse().unwrap()
    }

    fn mono(n: usize, exp: &[i64]) -> LaurentPoly {
        LaurentPoly::monomial(n, exp, QRat::one())
    }

    fn random_poly(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> LaurentPoly {
        let nterms = rng.gen_range(1..=4);
        let mut p = LaurentPoly::zero(n);
        for _ in 0..nterms {
            let exp: Exponent = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
            let c = QRat::from_int(rng.gen_range(-3..=3));
            p.add_term(&exp, &c);
        }
        p
    }

    #[test]
    fn zero_terms_are_dropped() {
        let mut p = mono(2, &[1, 0]);
        p.add_term(&[1, 0], &qr("-1"));
        assert!(p.is_zero());
        let q = LaurentPoly::monomial(2, &[3, 3], QRat::zero());
        assert!(q.is_zero());
    }

    #[test]
    fn product_example() {
        let x = LaurentPoly::var(2, 1);
        let y = LaurentPoly::var(2, 2);
        let lhs = (&x + &y) * (&x - &y);
        let expect = mono(2, &[2, 0]) - mono(2, &[0, 2]);
        assert_eq!(lhs, expect);
    }

    #[test]
    fn mismatch_is_an_error() {
        let p = mono(2, &[1, 0]);
        let q = mono(3, &[1, 0, 0]);
        assert_eq!(
            p.try_add(&q),
            Err(PolyError::VariableMismatch { left: 2, right: 3 })
        );
        assert!(p.try_mul(&q).is_err());
    }

    #[test]
    fn club_is_an_involution() {
        assert_eq!(club(&[1, 0, 3]), vec![-3, 0, -1]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let p = random_poly(&mut rng, 3, -4, 4);
            assert_eq!(p.club().club(), p);
        }
    }

    #[test]
    fn permutation_action_is_staged() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..60 {
            let n = 4;
            let mut sigma: Vec<usize> = (1..=n).collect();
            let mut tau: Vec<usize> = (1..=n).collect();
            for i in (1..n).rev() {
                sigma.swap(i, rng.gen_range(0..=i));
                tau.swap(i, rng.gen_range(0..=i));
            }
            // composed(j) = sigma(tau(j))
            let composed: Vec<usize> = (0..n).map(|j| sigma[tau[j] - 1]).collect();
            let v: Exponent = (0..n as i64).map(|k| 10 - 3 * k).collect();
            assert_eq!(
                act_on_exponent(&v, &composed),
                act_on_exponent(&act_on_exponent(&v, &sigma), &tau)
            );
        }
    }

    #[test]
    fn compare_order_examples() {
        assert_eq!(
            compare_order(&[3, 0, 0], &[1, 1, 1]),
            Some(Ordering::Less)
        );
        assert_eq!(
            compare_order(&[1, 1, 1], &[0, 1, 2]),
            Some(Ordering::Less)
        );
        assert_eq!(compare_order(&[2, 0, 1], &[1, 2, 0]), None);
        assert_eq!(
            compare_order(&[0, 1, 2], &[0, 1, 2]),
            Some(Ordering::Equal)
        );
        assert_eq!(
            compare_order(&[0, 2, 0], &[2, 0, 0]),
            Some(Ordering::Greater)
        );
    }

    #[test]
    fn r2l_lex_refines_the_partial_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..500 {
            let n = rng.gen_range(2..=5);
            let u: Exponent = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            let v: Exponent = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            if compare_order(&u, &v) == Some(Ordering::Less) {
                assert_eq!(r2l_lex_cmp(&u, &v), Ordering::Less, "{u:?} vs {v:?}");
            }
        }
        // The rightmost difference decides: position 2 compares 1 against 2.
        assert_eq!(r2l_lex_cmp(&[5, 1, 0], &[0, 2, 0]), Ordering::Less);
    }

    #[test]
    fn leading_terms_examples() {
        let p = mono(3, &[2, 0, 0]) + mono(3, &[0, 2, 0]);
        let lt = p.leading_terms().unwrap();
        assert_eq!(lt.len(), 1);
        assert_eq!(lt[0].0, vec![0, 2, 0]);

        let p = mono(3, &[2, 0, 1]) + mono(3, &[1, 2, 0]);
        let mut exps: Vec<Exponent> =
            p.leading_terms().unwrap().into_iter().map(|t| t.0).collect();
        exps.sort();
        assert_eq!(exps, vec![vec![1, 2, 0], vec![2, 0, 1]]);

        assert_eq!(
            LaurentPoly::zero(3).leading_terms(),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn n_stat_example() {
        assert_eq!(n_stat(&[-2, 3, 2]), 7);
        assert_eq!(n_stat(&[0, 0, 0]), 0);
    }

    #[test]
    fn display_examples() {
        let p = mono(3, &[2, 1, 0]) + mono(3, &[1, 1, 1]).scale(&qr("1-q"));
        assert_eq!(p.to_string(), "x^{210} + (1 - q)·x^{111}");
        let m = LaurentPoly::monomial(3, &[-3, 0, -1], qr("-1"));
        assert_eq!(m.to_string(), "-x^{(-3,0,-1)}");
        let s = LaurentPoly::monomial(2, &[1, 0], qr("q^2"))
            + LaurentPoly::monomial(2, &[0, 1], qr("-q/(1+q)"));
        assert_eq!(s.to_string(), "q^2·x^{10} - (q/(1 + q))·x^{01}");
    }

    #[test]
    fn eval_q_examples() {
        let p = mono(2, &[1, 0]).scale(&qr("1/(1-q)"));
        let at0 = p.eval_q(&BigRational::from_integer(BigInt::from(0))).unwrap();
        assert_eq!(at0, mono(2, &[1, 0]));
        assert_eq!(
            p.eval_q(&BigRational::from_integer(BigInt::from(1))),
            Err(PolyError::Pole { exp: vec![1, 0] })
        );
    }

    #[test]
    fn homogeneous_weight_examples() {
        let p = mono(3, &[2, 1, 0]) + mono(3, &[1, 1, 1]);
        assert_eq!(p.homogeneous_weight(), Some(3));
        let q = mono(3, &[2, 1, 0]) + mono(3, &[1, 1, 1]) + mono(3, &[0, 0, 1]);
        assert_eq!(q.homogeneous_weight(), None);
        assert_eq!(LaurentPoly::zero(3).homogeneous_weight(), Some(0));
    }

    #[test]
    fn json_round_trip() {
        let p = mono(3, &[2, 1, 0]).scale(&qr("q^3/(1+q)")) + mono(3, &[-1, 0, 4]);
        let j = p.to_json();
        assert_eq!(LaurentPoly::from_json(&j).unwrap(), p);
    }
}
