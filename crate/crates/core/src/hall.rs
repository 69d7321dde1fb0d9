//! Hall-Littlewood symmetric polynomials and the straightening calculus for
//! Q indexed by arbitrary integer vectors.
//!
//! P_lambda is produced by applying the maximal plain Yang-Baxter element to
//! the dominant monomial and dividing by the stabilizer factor d_lambda(q);
//! Q_lambda is the standard scalar multiple. For an arbitrary index
//! u ∈ Z^n, [`straighten_q`] rewrites Q_u into the partition-indexed basis
//! with the three-term relation
//!
//! `Q_{…,a,b,…} = −Q_{…,b−1,a+1,…} + q Q_{…,b,a,…} + q Q_{…,a+1,b−1,…}`
//!
//! applied at an ascent a < b, the collapsed special case
//! `Q_{…,a,a+1,…} = q Q_{…,a+1,a,…}`, and the vanishing rule for decreasing
//! indices ending in a negative entry.
//!
//! [`p_of`] predicts the top term of the straightened expansion: the maximal
//! partition below u in the suffix-sum partial order, computed both by a
//! tail-first recursion and by a direct greedy construction
//! ([`max_partition_below`]); the two must agree everywhere.

use crate::demazure::yang_baxter_word;
use crate::hecke::YbVariant;
use crate::perm::Permutation;
use crate::poly::{compare_order, LaurentPoly};
use crate::qrat::{d_lambda, QRat};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Mutex, OnceLock};

/// Errors from Hall-Littlewood operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HallError {
    /// Input expected to be a partition is not weakly decreasing nonnegative.
    NotAPartition(Vec<i64>),
    /// A partition has more parts than the ambient number of variables.
    PartitionTooLong { len: usize, n: usize },
    /// The zero expansion has no top term.
    ZeroExpansion,
    /// Several maximal partitions; the top term is not unique.
    AmbiguousTopTerm,
    /// A coefficient is not a polynomial in q.
    NonPolynomialCoefficient,
    /// The straightening rewrite budget ran out (indicates a bug: the
    /// rewriting system provably terminates).
    FuelExhausted,
    /// Failure while parsing a JSON representation.
    Parse(String),
}

impl fmt::Display for HallError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HallError::NotAPartition(v) => write!(f, "{v:?} is not a partition"),
            HallError::PartitionTooLong { len, n } => {
                write!(f, "partition has {len} parts but only {n} variables")
            }
            HallError::ZeroExpansion => write!(f, "zero expansion"),
            HallError::AmbiguousTopTerm => write!(f, "top term is not unique"),
            HallError::NonPolynomialCoefficient => {
                write!(f, "coefficient is not a polynomial in q")
            }
            HallError::FuelExhausted => write!(f, "straightening fuel exhausted"),
            HallError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for HallError {}

/// A partition: weakly decreasing positive parts, trailing zeros suppressed.
///
/// The derived order is lexicographic on parts, which sorts equal-weight
/// partitions from dominant down, e.g. (3) > (2,1) > (1,1,1).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<i64>,
}

impl Partition {
    /// Validates weak decrease and nonnegativity; strips trailing zeros.
    pub fn new(parts: &[i64]) -> Result<Partition, HallError> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(HallError::NotAPartition(parts.to_vec()));
            }
        }
        if parts.iter().any(|&p| p < 0) {
            return Err(HallError::NotAPartition(parts.to_vec()));
        }
        let mut parts = parts.to_vec();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// The parts padded with zeros to length n.
    pub fn padded(&self, n: usize) -> Result<Vec<i64>, HallError> {
        if self.len() > n {
            return Err(HallError::PartitionTooLong { len: self.len(), n });
        }
        let mut v = self.parts.clone();
        v.resize(n, 0);
        Ok(v)
    }

    /// Multiplicity of each positive part value, largest value first.
    pub fn multiplicities(&self) -> Vec<(i64, usize)> {
        let mut out: Vec<(i64, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((value, count)) if *value == p => *count += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// A finite linear combination of Q_lambda over partitions.
///
/// Invariant: no stored coefficient is zero. Coefficients produced by
/// straightening are always polynomials in q (the rules never divide).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HLExpansion {
    terms: BTreeMap<Partition, QRat>,
}

impl HLExpansion {
    pub fn zero() -> HLExpansion {
        HLExpansion {
            terms: BTreeMap::new(),
        }
    }

    pub fn single(lambda: Partition, coeff: QRat) -> HLExpansion {
        let mut e = HLExpansion::zero();
        e.add_term(&lambda, &coeff);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending partition order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &QRat)> {
        self.terms.iter()
    }

    /// Terms in the display order: dominant partitions first.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Partition, &QRat)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, lambda: &Partition) -> QRat {
        self.terms.get(lambda).cloned().unwrap_or_else(QRat::zero)
    }

    pub fn add_term(&mut self, lambda: &Partition, c: &QRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(lambda) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(lambda);
                }
            }
            None => {
                self.terms.insert(lambda.clone(), c.clone());
            }
        }
    }

    pub fn scale(&self, c: &QRat) -> HLExpansion {
        if c.is_zero() {
            return HLExpansion::zero();
        }
        HLExpansion {
            terms: self
                .terms
                .iter()
                .map(|(l, a)| (l.clone(), a * c))
                .collect(),
        }
    }

    /// The partitions maximal in the suffix-sum partial order (padded to a
    /// common length for comparison), with their full coefficients.
    pub fn leading_terms(&self) -> Result<Vec<(Partition, QRat)>, HallError> {
        if self.is_zero() {
            return Err(HallError::ZeroExpansion);
        }
        let n = self.terms.keys().map(|l| l.len()).max().unwrap();
        let padded: Vec<(Vec<i64>, &Partition)> = self
            .terms
            .keys()
            .map(|l| (l.padded(n).unwrap(), l))
            .collect();
        let mut out = Vec::new();
        'outer: for (v, lambda) in &padded {
            for (w, _) in &padded {
                if v != w && compare_order(v, w) == Some(Ordering::Less) {
                    continue 'outer;
                }
            }
            out.push(((*lambda).clone(), self.terms[*lambda].clone()));
        }
        Ok(out)
    }

    /// The unique maximal partition together with its coefficient truncated
    /// to the highest power of q. The partition order decides first; the
    /// q-degree truncation only trims that one coefficient.
    pub fn top_term(&self) -> Result<(Partition, QRat), HallError> {
        let leading = self.leading_terms()?;
        if leading.len() != 1 {
            return Err(HallError::AmbiguousTopTerm);
        }
        let (lambda, coeff) = leading.into_iter().next().unwrap();
        let (c, deg) = coeff
            .leading_q_term()
            .ok_or(HallError::NonPolynomialCoefficient)?;
        Ok((
            lambda,
            QRat::from_poly(crate::qrat::ZPoly::monomial(c, deg)),
        ))
    }

    /// `{"terms": [{"partition": [3], "coeff": {…}}, …]}`, dominant
    /// partitions first.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms_desc()
            .map(|(l, c)| {
                serde_json::json!({
                    "partition": l.parts(),
                    "coeff": c.to_json(),
                })
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<HLExpansion, HallError> {
        let terms = v
            .get("terms")
            .and_then(|x| x.as_array())
            .ok_or_else(|| HallError::Parse("missing \"terms\"".into()))?;
        let mut out = HLExpansion::zero();
        for t in terms {
            let parts: Vec<i64> = t
                .get("partition")
                .and_then(|x| x.as_array())
                .ok_or_else(|| HallError::Parse("term missing \"partition\"".into()))?
                .iter()
                .map(|e| {
                    e.as_i64()
                        .ok_or_else(|| HallError::Parse(format!("bad part {e}")))
                })
                .collect::<Result<_, _>>()?;
            let lambda = Partition::new(&parts)?;
            let coeff = QRat::from_json(
                t.get("coeff")
                    .ok_or_else(|| HallError::Parse("term missing \"coeff\"".into()))?,
            )
            .map_err(|e| HallError::Parse(e.to_string()))?;
            out.add_term(&lambda, &coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for HLExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (lambda, c) in self.terms_desc() {
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
                write!(f, "Q{lambda}")?;
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
                    write!(f, "({shown})·Q{lambda}")?;
                } else {
                    write!(f, "{shown}·Q{lambda}")?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &HLExpansion {
    type Output = HLExpansion;
    fn add(self, rhs: &HLExpansion) -> HLExpansion {
        let mut out = self.clone();
        for (l, c) in &rhs.terms {
            out.add_term(l, c);
        }
        out
    }
}

impl Sub for &HLExpansion {
    type Output = HLExpansion;
    fn sub(self, rhs: &HLExpansion) -> HLExpansion {
        let mut out = self.clone();
        for (l, c) in &rhs.terms {
            out.add_term(l, &(-c));
        }
        out
    }
}

impl Neg for &HLExpansion {
    type Output = HLExpansion;
    fn neg(self) -> HLExpansion {
        HLExpansion {
            terms: self.terms.iter().map(|(l, c)| (l.clone(), -c)).collect(),
        }
    }
}

/// The scalar relating Q to P: ∏ over positive part values with
/// multiplicity m of (1−q)(1−q²)⋯(1−q^m).
pub fn b_lambda(lambda: &Partition) -> QRat {
    let mut acc = QRat::one();
    for (_, m) in lambda.multiplicities() {
        for j in 1..=m {
            let factor = QRat::one() - QRat::q_pow(j);
            acc = acc * factor;
        }
    }
    acc
}

/// The Hall-Littlewood polynomial P_lambda in n variables: the maximal plain
/// Yang-Baxter element applied to x^lambda, divided by d_lambda(q).
pub fn hl_p(lambda: &Partition, n: usize) -> Result<LaurentPoly, HallError> {
    let exp = lambda.padded(n)?;
    let word = yang_baxter_word(&Permutation::longest(n), YbVariant::Plain);
    let image = word.apply(&LaurentPoly::monomial(n, &exp, QRat::one()));
    let d = d_lambda(lambda.parts(), n).expect("validated partition");
    Ok(image.scale(&d.recip().expect("d_lambda is nonzero")))
}

/// Q_lambda = b_lambda(q) · P_lambda.
pub fn hl_q(lambda: &Partition, n: usize) -> Result<LaurentPoly, HallError> {
    Ok(hl_p(lambda, n)?.scale(&b_lambda(lambda)))
}

/// Straightening of Q_u for an arbitrary integer index, rewriting at the
/// rightmost ascent until every index is a partition. The result is the
/// expansion of Q_u over Q_lambda; empty means Q_u = 0.
///
/// Termination: a rewrite at positions (i, i+1) with values a < b replaces
/// the pair by values inside [a, b], never touches positions right of i+1,
/// and strictly lowers the value at position i+1 (to a+1, a, or b−1, all
/// < b). Entries therefore stay inside the initial min/max bounds, the
/// reachable index set is finite, and each rewrite strictly decreases the
/// right-to-left lexicographic rank, so the system terminates from any
/// ascent choice. The fuel budget is a safety net, not a tuning knob.
pub fn straighten_q(u: &[i64]) -> Result<HLExpansion, HallError> {
    straighten_q_with_fuel(u, DEFAULT_FUEL)
}

pub const DEFAULT_FUEL: u64 = 1_000_000;

pub fn straighten_q_with_fuel(u: &[i64], fuel: u64) -> Result<HLExpansion, HallError> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<i64>, HLExpansion>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    // Cache entries are only inserted once complete, so a poisoned lock
    // still guards a consistent map.
    let mut guard = cache
        .lock()
        .unwrap_or_else(std::sync::PoisonError::into_inner);
    let mut fuel = fuel;
    straighten_impl(u, &mut guard, &mut fuel, &mut |ascents| {
        *ascents.last().unwrap()
    })
}

fn straighten_impl(
    u: &[i64],
    cache: &mut HashMap<Vec<i64>, HLExpansion>,
    fuel: &mut u64,
    pick: &mut dyn FnMut(&[usize]) -> usize,
) -> Result<HLExpansion, HallError> {
    if let Some(hit) = cache.get(u) {
        return Ok(hit.clone());
    }
    // Vanishing: once the last entry is negative it stays negative under
    // every rewrite (an ascent at the last pair has a < b < 0 and produces
    // last entries a+1 ≤ b, a, b−1, all negative), and a decreasing index
    // with negative last entry is zero by the vanishing rule.
    let result = if u.last().is_some_and(|&x| x < 0) {
        HLExpansion::zero()
    } else {
        let ascents: Vec<usize> = (0..u.len().saturating_sub(1))
            .filter(|&i| u[i] < u[i + 1])
            .collect();
        if ascents.is_empty() {
            let lambda = Partition::new(u).expect("decreasing with last entry >= 0");
            HLExpansion::single(lambda, QRat::one())
        } else {
            if *fuel == 0 {
                return Err(HallError::FuelExhausted);
            }
            *fuel -= 1;
            let i = pick(&ascents);
            debug_assert!(u[i] < u[i + 1]);
            let (a, b) = (u[i], u[i + 1]);
            let q = QRat::q();
            if b == a + 1 {
                // The general rule's first child is u itself; combining terms
                // collapses it to Q_u = q Q_{…,a+1,a,…}.
                let mut swapped = u.to_vec();
                swapped.swap(i, i + 1);
                straighten_impl(&swapped, cache, fuel, pick)?.scale(&q)
            } else {
                let mut c1 = u.to_vec();
                c1[i] = b - 1;
                c1[i + 1] = a + 1;
                let mut c2 = u.to_vec();
                c2[i] = b;
                c2[i + 1] = a;
                let mut c3 = u.to_vec();
                c3[i] = a + 1;
                c3[i + 1] = b - 1;
                let e1 = straighten_impl(&c1, cache, fuel, pick)?;
                let e2 = straighten_impl(&c2, cache, fuel, pick)?;
                let e3 = straighten_impl(&c3, cache, fuel, pick)?;
                &(&e2 + &e3).scale(&q) - &e1
            }
        }
    };
    cache.insert(u.to_vec(), result.clone());
    Ok(result)
}

/// Straightening with a caller-chosen ascent strategy and a private cache;
/// used to check that the final expansion does not depend on the rewrite
/// positions.
#[cfg(test)]
fn straighten_q_with_strategy(
    u: &[i64],
    pick: &mut dyn FnMut(&[usize]) -> usize,
) -> Result<HLExpansion, HallError> {
    let mut cache = HashMap::new();
    let mut fuel = DEFAULT_FUEL;
    straighten_impl(u, &mut cache, &mut fuel, pick)
}

/// True when every suffix sum of u is nonnegative (u ≥ [0,…,0] in the
/// suffix-sum order).
pub fn is_above_zero(u: &[i64]) -> bool {
    let mut suffix = 0i64;
    for &x in u.iter().rev() {
        suffix += x;
        if suffix < 0 {
            return false;
        }
    }
    true
}

/// The maximal partition below u: among partitions v of weight |u| with at
/// most n parts and v ≤ u in the suffix-sum order, the unique maximum.
/// `None` when u has a negative suffix sum (no partition lies below u).
///
/// Equivalently (same weight), v ≤ u says every prefix sum of v is at least
/// the corresponding prefix sum of u, and larger in the order means smaller
/// prefix sums; the feasible prefix-sum profiles are closed under pointwise
/// minimum, so the greedy choice of the smallest feasible part at each
/// position finds the maximum.
pub fn max_partition_below(u: &[i64]) -> Option<Partition> {
    if !is_above_zero(u) {
        return None;
    }
    let n = u.len();
    let w: i64 = u.iter().sum();
    // prefix[k] = u_1 + … + u_k
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0i64);
    for &x in u {
        prefix.push(prefix.last().unwrap() + x);
    }
    let mut parts = Vec::with_capacity(n);
    let mut p = 0i64; // prefix sum of chosen parts
    let mut prev = i64::MAX;
    for k in 1..=n {
        let m = (n - k) as i64; // positions remaining after this one
        let t_hi = prev.min(w - p);
        // Feasible completions cap future prefix sums at p + t + min(j·t, rest).
        let feasible = |t: i64| -> bool {
            if p + t < prefix[k] {
                return false;
            }
            let rest = w - p - t;
            for j in 1..=m {
                if p + t + (j * t).min(rest) < prefix[k + j as usize] {
                    return false;
                }
            }
            true
        };
        // Lower bounds: nonnegative, prefix feasibility, and room for the
        // remaining m parts (each at most t) to absorb the leftover weight.
        let mut t = (prefix[k] - p).max((w - p + m) / (m + 1)).max(0);
        while t <= t_hi && !feasible(t) {
            t += 1;
        }
        debug_assert!(t <= t_hi, "greedy got stuck at position {k} of {u:?}");
        parts.push(t);
        p += t;
        prev = t;
    }
    debug_assert_eq!(p, w);
    Some(Partition::new(&parts).expect("greedy builds a partition"))
}

/// The top-term predictor: `None` encodes −∞ (exactly when u has a negative
/// suffix sum, which forces Q_u = 0). Otherwise the recursion first
/// straightens the tail into a partition — replacing u_2..u_n by the padded
/// parts of its own predictor — and then takes the maximal partition below
/// the resulting vector.
pub fn p_of(u: &[i64]) -> Option<Partition> {
    if !is_above_zero(u) {
        return None;
    }
    if u.is_empty() {
        return Some(Partition::empty());
    }
    let tail = &u[1..];
    let tail_decreasing = tail.windows(2).all(|w| w[0] >= w[1]);
    if tail_decreasing && *u.last().unwrap() >= 0 {
        max_partition_below(u)
    } else {
        let tail_p = p_of(tail).expect("suffix sums of the tail are suffix sums of u");
        let mut reduced = Vec::with_capacity(u.len());
        reduced.push(u[0]);
        reduced.extend(tail_p.padded(tail.len()).expect("predictor fits"));
        p_of(&reduced)
    }
}

/// The constant Q_u(0): zero unless |u| = 0 and u has no negative suffix
/// sum, in which case it is the coefficient of the empty partition in the
/// straightened expansion (always a polynomial in q).
pub fn q_at_zero(u: &[i64]) -> Result<QRat, HallError> {
    if u.iter().sum::<i64>() != 0 || !is_above_zero(u) {
        return Ok(QRat::zero());
    }
    Ok(straighten_q(u)?.coeff(&Partition::empty()))
}
