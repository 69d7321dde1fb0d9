//! The two q-Key families U_v and Û_v, their q = 0 specializations (Key
//! polynomials K_v and K̂_v), expansion of polynomials over each family, and
//! transition matrices between families.
//!
//! For a weight v ∈ N^n with dominant reordering λ:
//!
//! * `U_v = (x^λ / d_λ(q)) · Y_{ζ(v)}` with ζ(v) the longest permutation
//!   sending λ to v,
//! * `Û_v = x^λ · Ŷ_{η(v)}` with η(v) the shortest one,
//! * `K_v` / `K̂_v` walk the same reduced word with π_i / π̂_i.
//!
//! Using the coset-extremal representatives ζ and η (rather than arbitrary
//! permutations with λσ = v) is what makes the assignment v ↦ U_v
//! well-defined when λ has a nontrivial stabilizer.
//!
//! Every family is unitriangular against monomials in right-to-left
//! lexicographic order — the leading term of U_v, Û_v, K_v, K̂_v is x^v with
//! coefficient 1 — which drives [`expand_in_family`] by greedy elimination.

use crate::demazure::yang_baxter_word;
use crate::hecke::YbVariant;
use crate::perm::{decreasing_rearrangement, eta, zeta};
use crate::poly::{r2l_lex_cmp, Exponent, LaurentPoly, PolyError};
use crate::qrat::{d_lambda, QRat};
use num_rational::BigRational;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// Errors from q-Key operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QKeyError {
    /// q-Key polynomials are indexed by weights in N^n.
    NegativeComponent(Vec<i64>),
    /// Expansion requires a homogeneous input of the stated degree.
    NotHomogeneous { expected: i64 },
    /// The eliminated leading exponent has no family element to match it
    /// (negative component, or a non-increasing index for the P family).
    NotInSpan(Vec<i64>),
    /// Unknown family name.
    UnknownFamily(String),
}

impl fmt::Display for QKeyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QKeyError::NegativeComponent(v) => {
                write!(f, "weight {v:?} has a negative component")
            }
            QKeyError::NotHomogeneous { expected } => {
                write!(f, "input is not homogeneous of degree {expected}")
            }
            QKeyError::NotInSpan(u) => {
                write!(f, "no family element with leading exponent {u:?}")
            }
            QKeyError::UnknownFamily(s) => write!(f, "unknown family \"{s}\""),
        }
    }
}

impl std::error::Error for QKeyError {}

/// The polynomial families this module can expand against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    U,
    Uhat,
    K,
    Khat,
    Monomial,
    HlP,
}

impl FamilyId {
    pub fn name(self) -> &'static str {
        match self {
            FamilyId::U => "U",
            FamilyId::Uhat => "Uhat",
            FamilyId::K => "K",
            FamilyId::Khat => "Khat",
            FamilyId::Monomial => "M",
            FamilyId::HlP => "P",
        }
    }

    pub fn from_name(s: &str) -> Result<FamilyId, QKeyError> {
        match s {
            "U" => Ok(FamilyId::U),
            "Uhat" => Ok(FamilyId::Uhat),
            "K" => Ok(FamilyId::K),
            "Khat" => Ok(FamilyId::Khat),
            "M" => Ok(FamilyId::Monomial),
            "P" => Ok(FamilyId::HlP),
            other => Err(QKeyError::UnknownFamily(other.to_string())),
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

fn check_weight(v: &[i64]) -> Result<(), QKeyError> {
    if v.iter().any(|&x| x < 0) {
        return Err(QKeyError::NegativeComponent(v.to_vec()));
    }
    Ok(())
}

/// U_v = (x^λ / d_λ(q)) · Y_{ζ(v)}, computed as an operator word on the
/// normalized dominant monomial.
pub fn u_poly(v: &[i64]) -> Result<LaurentPoly, QKeyError> {
    family_poly(FamilyId::U, v)
}

/// Û_v = x^λ · Ŷ_{η(v)}.
pub fn uhat_poly(v: &[i64]) -> Result<LaurentPoly, QKeyError> {
    family_poly(FamilyId::Uhat, v)
}

/// The Key polynomial K_v (plain, via π_i) or K̂_v (hat, via π̂_i): the
/// dominant monomial pushed along a reduced word of η(v).
pub fn key_poly(v: &[i64], variant: YbVariant) -> LaurentPoly {
    assert!(
        v.iter().all(|&x| x >= 0),
        "Key polynomials are indexed by N^n, got {v:?}"
    );
    let family = match variant {
        YbVariant::Plain => FamilyId::K,
        YbVariant::Hat => FamilyId::Khat,
    };
    family_poly(family, v).expect("nonnegative weight")
}

fn compute_family_poly(family: FamilyId, v: &[i64]) -> Result<LaurentPoly, QKeyError> {
    check_weight(v)?;
    let n = v.len();
    let lambda = decreasing_rearrangement(v);
    let dominant = LaurentPoly::monomial(n, &lambda, QRat::one());
    Ok(match family {
        FamilyId::U => {
            let d = d_lambda(&lambda, n).expect("decreasing nonnegative");
            let seed = dominant.scale(&d.recip().expect("d_lambda is nonzero"));
            yang_baxter_word(&zeta(v), YbVariant::Plain).apply(&seed)
        }
        FamilyId::Uhat => yang_baxter_word(&eta(v), YbVariant::Hat).apply(&dominant),
        FamilyId::K | FamilyId::Khat => {
            let mut p = dominant;
            for i in eta(v).reduced_word() {
                p = match family {
                    FamilyId::K => p.pi(i),
                    _ => p.pihat(i),
                };
            }
            p
        }
        FamilyId::Monomial => LaurentPoly::monomial(n, v, QRat::one()),
        FamilyId::HlP => {
            // Indexed here by the weakly increasing arrangement — the r2l-lex
            // leading exponent of a symmetric polynomial — to line up with
            // the elimination in expand_in_family.
            if v.windows(2).any(|w| w[0] > w[1]) {
                return Err(QKeyError::NotInSpan(v.to_vec()));
            }
            let lambda = crate::hall::Partition::new(&decreasing_rearrangement(v))
                .expect("rearranged weight");
            crate::hall::hl_p(&lambda, n).expect("at most n parts")
        }
    })
}

/// The family element with leading term x^v, from the per-(family, v) cache.
pub fn family_poly(family: FamilyId, v: &[i64]) -> Result<LaurentPoly, QKeyError> {
    static CACHE: OnceLock<Mutex<HashMap<(FamilyId, Vec<i64>), LaurentPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (family, v.to_vec());
    if let Some(hit) = cache
        .lock()
        .unwrap_or_else(std::sync::PoisonError::into_inner)
        .get(&key)
    {
        return Ok(hit.clone());
    }
    let computed = compute_family_poly(family, v)?;
    cache
        .lock()
        .unwrap_or_else(std::sync::PoisonError::into_inner)
        .insert(key, computed.clone());
    Ok(computed)
}

/// f with q evaluated at a rational number (e.g. 0 to reach the Key
/// specialization). Errors when some coefficient has a pole there.
pub fn specialize_q(f: &LaurentPoly, q0: &BigRational) -> Result<LaurentPoly, PolyError> {
    f.eval_q(q0)
}

/// Expands a homogeneous polynomial over a family by greedy elimination of
/// the right-to-left lexicographically largest exponent: every family
/// element has leading coefficient 1 there, so each step strictly lowers
/// the remaining leading exponent and the loop terminates.
pub fn expand_in_family(
    f: &LaurentPoly,
    target: FamilyId,
    degree: i64,
) -> Result<BTreeMap<Exponent, QRat>, QKeyError> {
    let mut out = BTreeMap::new();
    if f.is_zero() {
        return Ok(out);
    }
    if f.homogeneous_weight() != Some(degree) {
        return Err(QKeyError::NotHomogeneous { expected: degree });
    }
    let mut g = f.clone();
    while !g.is_zero() {
        let u = g.max_exponent_r2l().expect("nonzero").clone();
        if u.iter().any(|&x| x < 0) {
            return Err(QKeyError::NotInSpan(u));
        }
        let c = g.coeff(&u);
        let elt = family_poly(target, &u).map_err(|e| match e {
            QKeyError::NegativeComponent(v) => QKeyError::NotInSpan(v),
            other => other,
        })?;
        debug_assert_eq!(elt.coeff(&u), QRat::one(), "family leading coefficient");
        g = g - elt.scale(&c);
        debug_assert!(
            g.max_exponent_r2l()
                .is_none_or(|w| r2l_lex_cmp(w, &u) == Ordering::Less),
            "elimination must strictly descend"
        );
        out.insert(u, c);
    }
    Ok(out)
}

/// All weights of the given degree in n variables, in descending
/// lexicographic order (e.g. 300, 210, 201, 120, 111, 102, 030, 021, 012,
/// 003 for n = 3, degree 3).
pub fn weights_of_degree(n: usize, degree: i64) -> Vec<Exponent> {
    assert!(degree >= 0, "degree must be nonnegative");
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn walk(out: &mut Vec<Exponent>, current: &mut Vec<i64>, n: usize, rest: i64) {
        if current.len() == n - 1 {
            current.push(rest);
            out.push(current.clone());
            current.pop();
            return;
        }
        // Descending first entry produces descending lexicographic output.
        for t in (0..=rest).rev() {
            current.push(t);
            walk(out, current, n, rest - t);
            current.pop();
        }
    }
    walk(&mut out, &mut current, n, degree);
    out
}

/// The matrix whose column c is the expansion of from-family member
/// `weights[c]` over the to-family, rows and columns both indexed by
/// [`weights_of_degree`] order.
pub fn transition_matrix(
    from: FamilyId,
    to: FamilyId,
    n: usize,
    degree: i64,
) -> Result<Vec<Vec<QRat>>, QKeyError> {
    let weights = weights_of_degree(n, degree);
    let mut matrix = vec![vec![QRat::zero(); weights.len()]; weights.len()];
    for (c, w) in weights.iter().enumerate() {
        let expansion = expand_in_family(&family_poly(from, w)?, to, degree)?;
        for (r, row_w) in weights.iter().enumerate() {
            if let Some(coeff) = expansion.get(row_w) {
                matrix[r][c] = coeff.clone();
            }
        }
    }
    Ok(matrix)
}
