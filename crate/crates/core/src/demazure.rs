//! Divided differences and the operator realization of the Hecke algebra on
//! Laurent polynomials.
//!
//! All operators act on the right: `f.partial(i)` is f∂_i. The fundamental
//! one is the divided difference f∂_i = (f − f^{s_i})/(x_i − x_{i+1}),
//! computed monomial by monomial as a signed geometric strip, which is exact
//! for negative exponents too. The derived operators are
//!
//! * π_i: multiply by x_i, then ∂_i (isobaric divided difference);
//! * π̂_i: ∂_i, then multiply by x_{i+1} (equals π_i − 1);
//! * □_i: multiply by (x_i − q x_{i+1}), then ∂_i;
//! * ∇_i: ∂_i, then multiply by (x_{i+1} − q x_i) (equals □_i − (1+q));
//! * T_i = □_i − 1, a faithful copy of the Hecke generator.
//!
//! [`OpFactor`] packages "operator + scalar" factors, and [`OpWord`] their
//! products; [`yang_baxter_factor`] produces the shifted factors that realize
//! the Yang-Baxter basis elements on polynomials.

use crate::hecke::{HeckeElt, YbVariant};
use crate::perm::Permutation;
use crate::poly::LaurentPoly;
use crate::qrat::{q_int, QRat};
use std::fmt;

/// Errors from building operator factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpError {
    /// Yang-Baxter factors need a positive spectral gap.
    InvalidGap(i64),
    /// Failure while parsing a JSON representation.
    Parse(String),
}

impl fmt::Display for OpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpError::InvalidGap(k) => write!(f, "spectral gap {k} is not positive"),
            OpError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for OpError {}

impl LaurentPoly {
    /// The divided difference f∂_i = (f − f^{s_i})/(x_i − x_{i+1}).
    ///
    /// On a monomial with exponents (a, b) at positions (i, i+1) the quotient
    /// is the geometric strip between the two exponents:
    /// a > b gives +Σ_{k=b}^{a−1} x_i^{a+b−1−k} x_{i+1}^k, a < b the negated
    /// mirror, a = b gives 0.
    pub fn partial(&self, i: usize) -> LaurentPoly {
        let n = self.nvars();
        assert!((1..n).contains(&i), "operator index {i} out of 1..{n}");
        let mut out = LaurentPoly::zero(n);
        for (exp, c) in self.terms() {
            let a = exp[i - 1];
            let b = exp[i];
            if a == b {
                continue;
            }
            let neg_c = -c;
            let (lo, hi, coeff) = if a > b { (b, a, c) } else { (a, b, &neg_c) };
            let mut e = exp.clone();
            for k in lo..hi {
                e[i - 1] = a + b - 1 - k;
                e[i] = k;
                out.add_term(&e, coeff);
            }
        }
        out
    }

    /// fπ_i = (x_i f)∂_i.
    pub fn pi(&self, i: usize) -> LaurentPoly {
        let mut shift = vec![0; self.nvars()];
        shift[i - 1] = 1;
        self.mul_monomial(&shift, &QRat::one()).partial(i)
    }

    /// fπ̂_i = (f∂_i)·x_{i+1} = fπ_i − f.
    pub fn pihat(&self, i: usize) -> LaurentPoly {
        let mut shift = vec![0; self.nvars()];
        shift[i] = 1;
        self.partial(i).mul_monomial(&shift, &QRat::one())
    }

    /// f□_i = (f·(x_i − q x_{i+1}))∂_i.
    pub fn box_op(&self, i: usize) -> LaurentPoly {
        let n = self.nvars();
        let mut ei = vec![0; n];
        ei[i - 1] = 1;
        let mut ei1 = vec![0; n];
        ei1[i] = 1;
        let shifted = self.mul_monomial(&ei, &QRat::one())
            - self.mul_monomial(&ei1, &QRat::q());
        shifted.partial(i)
    }

    /// f∇_i = (f∂_i)·(x_{i+1} − q x_i).
    pub fn nabla(&self, i: usize) -> LaurentPoly {
        let n = self.nvars();
        let mut ei = vec![0; n];
        ei[i - 1] = 1;
        let mut ei1 = vec![0; n];
        ei1[i] = 1;
        let d = self.partial(i);
        d.mul_monomial(&ei1, &QRat::one()) - d.mul_monomial(&ei, &QRat::q())
    }

    /// fT_i = f□_i − f.
    pub fn t_op(&self, i: usize) -> LaurentPoly {
        self.box_op(i) - self.clone()
    }

    /// f∂_ω along a reduced word of the longest element.
    pub fn partial_omega(&self) -> LaurentPoly {
        let mut f = self.clone();
        for i in Permutation::longest(self.nvars()).reduced_word() {
            f = f.partial(i);
        }
        f
    }

    /// Applies a Hecke-algebra element through the faithful action:
    /// Σ_σ c_σ (f·T_{i_1}·T_{i_2}⋯) along a reduced word of each σ.
    pub fn apply_hecke_elt(&self, h: &HeckeElt) -> LaurentPoly {
        assert_eq!(self.nvars(), h.n(), "variable count mismatch");
        let mut out = LaurentPoly::zero(self.nvars());
        for (sigma, c) in h.terms() {
            let mut f = self.clone();
            for i in sigma.reduced_word() {
                f = f.t_op(i);
            }
            out = out + f.scale(c);
        }
        out
    }
}

/// The operator component of a factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpKind {
    Partial,
    Pi,
    PiHat,
    T,
    Box,
    Nabla,
}

impl OpKind {
    pub fn name(self) -> &'static str {
        match self {
            OpKind::Partial => "partial",
            OpKind::Pi => "pi",
            OpKind::PiHat => "pihat",
            OpKind::T => "t",
            OpKind::Box => "box",
            OpKind::Nabla => "nabla",
        }
    }

    pub fn from_name(name: &str) -> Option<OpKind> {
        Some(match name {
            "partial" => OpKind::Partial,
            "pi" => OpKind::Pi,
            "pihat" => OpKind::PiHat,
            "t" => OpKind::T,
            "box" => OpKind::Box,
            "nabla" => OpKind::Nabla,
            _ => return None,
        })
    }
}

/// A shifted operator factor `Op_i + shift · Id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpFactor {
    pub kind: OpKind,
    pub index: usize,
    pub shift: QRat,
}

impl OpFactor {
    pub fn plain(kind: OpKind, index: usize) -> OpFactor {
        OpFactor {
            kind,
            index,
            shift: QRat::zero(),
        }
    }

    pub fn apply(&self, f: &LaurentPoly) -> LaurentPoly {
        let base = match self.kind {
            OpKind::Partial => f.partial(self.index),
            OpKind::Pi => f.pi(self.index),
            OpKind::PiHat => f.pihat(self.index),
            OpKind::T => f.t_op(self.index),
            OpKind::Box => f.box_op(self.index),
            OpKind::Nabla => f.nabla(self.index),
        };
        if self.shift.is_zero() {
            base
        } else {
            base + f.scale(&self.shift)
        }
    }
}

/// A product of shifted factors, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OpWord(pub Vec<OpFactor>);

impl OpWord {
    pub fn apply(&self, f: &LaurentPoly) -> LaurentPoly {
        let mut g = f.clone();
        for factor in &self.0 {
            g = factor.apply(&g);
        }
        g
    }

    /// `[{"kind": "box", "i": 1, "shift": {…}}, …]`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.0
                .iter()
                .map(|f| {
                    serde_json::json!({
                        "kind": f.kind.name(),
                        "i": f.index,
                        "shift": f.shift.to_json(),
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<OpWord, OpError> {
        let arr = v
            .as_array()
            .ok_or_else(|| OpError::Parse(format!("expected array, got {v}")))?;
        let mut factors = Vec::with_capacity(arr.len());
        for item in arr {
            let kind = item
                .get("kind")
                .and_then(|k| k.as_str())
                .and_then(OpKind::from_name)
                .ok_or_else(|| OpError::Parse(format!("bad \"kind\" in {item}")))?;
            let index = item
                .get("i")
                .and_then(|i| i.as_u64())
                .ok_or_else(|| OpError::Parse(format!("bad \"i\" in {item}")))?
                as usize;
            let shift = match item.get("shift") {
                None => QRat::zero(),
                Some(s) => {
                    QRat::from_json(s).map_err(|e| OpError::Parse(e.to_string()))?
                }
            };
            factors.push(OpFactor { kind, index, shift });
        }
        Ok(OpWord(factors))
    }
}

/// The shifted factor realizing one Yang-Baxter recursion step on
/// polynomials, for spectral gap k ≥ 1:
///
/// * plain: T_i + 1/[k]_q = □_i − q[k−1]_q/[k]_q;
/// * hat:   T_i − q^k/[k]_q = ∇_i + q[k−1]_q/[k]_q.
pub fn yang_baxter_factor(variant: YbVariant, i: usize, k: i64) -> Result<OpFactor, OpError> {
    if k < 1 {
        return Err(OpError::InvalidGap(k));
    }
    let ratio = QRat::q() * q_int(k - 1).unwrap() / q_int(k).unwrap();
    Ok(match variant {
        YbVariant::Plain => OpFactor {
            kind: OpKind::Box,
            index: i,
            shift: -ratio,
        },
        YbVariant::Hat => OpFactor {
            kind: OpKind::Nabla,
            index: i,
            shift: ratio,
        },
    })
}

/// The factor word realizing Y_sigma (or the hat variant) on polynomials:
/// walk the identity along a reduced word of sigma, emitting the
/// [`yang_baxter_factor`] for each step's spectral gap.
pub fn yang_baxter_word(sigma: &Permutation, variant: YbVariant) -> OpWord {
    let mut tau = Permutation::identity(sigma.n());
    let mut factors = Vec::with_capacity(sigma.length());
    for i in sigma.reduced_word() {
        let k = tau.image(i + 1) as i64 - tau.image(i) as i64;
        factors.push(yang_baxter_factor(variant, i, k).expect("ascent gives positive gap"));
        tau = tau.mul_s(i);
    }
    debug_assert_eq!(&tau, sigma);
    OpWord(factors)
}

/// The R-matrix factor T_i + 1/[k]_q for an arbitrary nonzero integer gap k,
/// with the q-integer extended by [m]_q = (1 − q^m)/(1 − q) for m < 0.
/// These are the factors the Yang-Baxter equation is stated for.
pub fn r_factor(i: usize, k: i64) -> OpFactor {
    assert!(k != 0, "R factor needs a nonzero gap");
    let inv = if k > 0 {
        QRat::one() / q_int(k).unwrap()
    } else {
        // [k] = −q^k [−k], so 1/[k] = −q^{−k}/[−k].
        -(QRat::q_pow((-k) as usize) / q_int(-k).unwrap())
    };
    OpFactor {
        kind: OpKind::T,
        index: i,
        shift: inv,
    }
}

/// ∏_{i<j} (x_i − q x_j), the dominant-monomial factor of the plain maximal
/// factorization.
pub fn dominant_factor(n: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::one(n);
    for i in 1..=n {
        for j in i + 1..=n {
            let term = LaurentPoly::var(n, i) - LaurentPoly::var(n, j).scale(&QRat::q());
            acc = acc * term;
        }
    }
    acc
}

/// ∏_{i<j} (x_j − q x_i), the mirrored factor of the hat maximal
/// factorization.
pub fn dominant_factor_hat(n: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::one(n);
    for i in 1..=n {
        for j in i + 1..=n {
            let term = LaurentPoly::var(n, j) - LaurentPoly::var(n, i).scale(&QRat::q());
            acc = acc * term;
        }
    }
    acc
}
