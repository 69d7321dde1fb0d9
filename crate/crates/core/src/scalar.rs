//! Constant-term scalar products.
//!
//! The q-deformed product `( , )_q` pairs Laurent polynomials through the
//! constant term of f g^♣ Θ, where g^♣ substitutes x_i -> 1/x_{n+1-i} and Θ
//! is the kernel ∏_{i<j} (1 - x_i/x_j)/(1 - q x_i/x_j).  Two independent
//! evaluation routes are provided:
//!
//! * [`scalar_q`] is exact: every monomial pair reduces to a constant-term
//!   coefficient of a straightened Hall-Littlewood expansion, so no infinite
//!   series is ever touched.
//! * [`ct_oracle`] expands each kernel factor 1/(1 - q x_i/x_j) as a
//!   geometric series truncated at a chosen q-degree and multiplies out.  It
//!   shares no code with the exact route and serves as a cross-check.
//!
//! On top of the product sit batch verifiers: Gram matrices for the pairing
//! between the two q-Key families ([`verify_duality`]), the pairing of one
//! family against dominant monomials ([`verify_monomial_duality`]),
//! adjointness of the divided-difference operators ([`verify_adjoint_ops`]),
//! and the Cauchy-kernel expansion over the key bases ([`verify_cauchy`]).

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::hall::{q_at_zero, Partition};
use crate::hecke::YbVariant;
use crate::perm::orbit;
use crate::poly::{Exponent, LaurentPoly};
use crate::qkey::{key_poly, u_poly, uhat_poly, weights_of_degree};
use crate::qrat::QRat;

/// The exponent vector read backwards: the action of the longest permutation
/// on a weight.
fn reversed(v: &[i64]) -> Exponent {
    v.iter().rev().copied().collect()
}

/// `(x^u, x^v)_q`, computed exactly.
///
/// Pairing against a monomial shifts the exponent: `(x^u, x^v)_q` equals
/// `(x^{u - rev(v)}, 1)_q`, and the pairing of a single monomial with 1 is
/// the constant term of its straightened Hall-Littlewood expansion.  The
/// value is always a polynomial in q.
///
/// Panics when the two exponent vectors have different lengths, or on
/// straightening fuel exhaustion (which indicates a bug: the inputs reachable
/// from here terminate well within the default budget).
pub fn scalar_monomials(u: &[i64], v: &[i64]) -> QRat {
    assert_eq!(u.len(), v.len(), "exponent lengths differ");
    let diff: Exponent = u.iter().zip(v.iter().rev()).map(|(a, b)| a - b).collect();
    q_at_zero(&diff).expect("straightening fuel exhausted")
}

/// The scalar product `(f, g)_q`, extended bilinearly from monomial pairs.
///
/// Exact: routes every monomial pair through [`scalar_monomials`].  The form
/// is symmetric, and monomial pairs of unequal total degree pair to zero.
///
/// Panics when f and g have different variable counts.
pub fn scalar_q(f: &LaurentPoly, g: &LaurentPoly) -> QRat {
    assert_eq!(f.nvars(), g.nvars(), "operand variable counts differ");
    let mut acc = QRat::zero();
    for (u, cu) in f.terms() {
        for (v, dv) in g.terms() {
            let s = scalar_monomials(u, v);
            if !s.is_zero() {
                acc += &(&(cu * dv) * &s);
            }
        }
    }
    acc
}

/// The undeformed product `(f, g)`: the value of `(f, g)_q` at q = 0.
///
/// Always pole-free when the coefficients of f and g are themselves regular
/// at q = 0, since each monomial pairing is a q-polynomial.
pub fn scalar_0(f: &LaurentPoly, g: &LaurentPoly) -> QRat {
    let s = scalar_q(f, g);
    let v = s
        .eval(&BigRational::zero())
        .expect("scalar product has a pole at q = 0");
    QRat::from_rational(&v)
}

/// Truncates a q-rational that is regular at q = 0 to its power-series part
/// of degree <= qcap.
fn truncate_q(c: &QRat, qcap: usize) -> QRat {
    let coeffs = c
        .taylor(qcap)
        .expect("constant-term coefficient has a pole at q = 0");
    let mut out = QRat::zero();
    for (k, ck) in coeffs.iter().enumerate() {
        if !ck.is_zero() {
            out += &(&QRat::from_rational(ck) * &QRat::q_pow(k));
        }
    }
    out
}

/// Truncated-series oracle for `(f, g)_q`, correct modulo q^{qcap+1}.
///
/// Evaluates the constant term of f g^♣ Θ directly: each kernel factor
/// 1/(1 - q x_i/x_j) becomes the geometric series Σ_k q^k (x_i/x_j)^k
/// truncated at k <= qcap (higher indices carry q-degree beyond the cap and
/// cannot affect the result), the product is expanded, and the coefficient
/// of the zero exponent is reduced modulo q^{qcap+1}.
///
/// Shares no code with [`scalar_q`]; the two agree modulo q^{qcap+1}.
pub fn ct_oracle(f: &LaurentPoly, g: &LaurentPoly, qcap: usize) -> QRat {
    assert_eq!(f.nvars(), g.nvars(), "operand variable counts differ");
    let n = f.nvars();
    let mut h = f * &g.club();
    for i in 0..n {
        for j in i + 1..n {
            let mut step = vec![0i64; n];
            step[i] = 1;
            step[j] = -1;
            let mut numer = LaurentPoly::one(n);
            numer.add_term(&step, &-QRat::one());
            let mut series = LaurentPoly::zero(n);
            for k in 0..=qcap {
                let e: Exponent = step.iter().map(|s| s * k as i64).collect();
                series.add_term(&e, &QRat::q_pow(k));
            }
            h = &(&h * &numer) * &series;
        }
    }
    truncate_q(&h.coeff(&vec![0; n]), qcap)
}

/// Runs [`ct_oracle`] at increasing caps until two consecutive caps agree,
/// and returns the stabilized value.
///
/// The initial cap is the largest combined ℓ¹ norm over monomial pairs of f
/// and g, which bounds the geometric-series indices a single pair can use;
/// the confirmation step guards composite inputs.
pub fn ct_oracle_auto(f: &LaurentPoly, g: &LaurentPoly) -> QRat {
    let l1_max = |p: &LaurentPoly| {
        p.terms()
            .map(|(e, _)| e.iter().map(|x| x.unsigned_abs() as usize).sum::<usize>())
            .max()
            .unwrap_or(0)
    };
    let mut cap = (l1_max(f) + l1_max(g)).max(1);
    let mut prev = ct_oracle(f, g, cap);
    loop {
        cap += 1;
        let next = ct_oracle(f, g, cap);
        if next == prev {
            return next;
        }
        prev = next;
    }
}

/// Outcome of a Gram-matrix verification: the row and column index sets, the
/// matrix of pairings, and whether it matched the expected shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarReport {
    /// Weight defining the orbit under test, padded to n entries.
    pub lambda: Exponent,
    pub n: usize,
    /// Row indices: weights v whose polynomial forms the left argument.
    pub left: Vec<Exponent>,
    /// Column indices: weights u indexing the right argument.
    pub right: Vec<Exponent>,
    /// `gram[r][c]` pairs the r-th left index against the c-th right index.
    pub gram: Vec<Vec<QRat>>,
    pub pass: bool,
}

impl ScalarReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "lambda": self.lambda,
            "n": self.n,
            "gram": self
                .gram
                .iter()
                .map(|row| row.iter().map(QRat::to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "pass": self.pass,
        })
    }
}

/// Gram matrix of `(U_v, Û_{rev(u)})_q` over v, u in the orbit of λ.
///
/// The two q-Key families are adjoint bases: the matrix must be the
/// identity, and `pass` records whether it is.  Rows and columns follow the
/// descending lexicographic orbit order.
///
/// Panics when λ has more than n parts.
pub fn verify_duality(lambda: &Partition, n: usize) -> ScalarReport {
    let padded = lambda
        .padded(n)
        .expect("partition has more parts than variables");
    let orb = orbit(&padded);
    let lefts: Vec<LaurentPoly> = orb
        .iter()
        .map(|v| u_poly(v).expect("orbit weights are nonnegative"))
        .collect();
    let rights: Vec<LaurentPoly> = orb
        .iter()
        .map(|u| uhat_poly(&reversed(u)).expect("orbit weights are nonnegative"))
        .collect();
    let mut pass = true;
    let gram: Vec<Vec<QRat>> = lefts
        .iter()
        .enumerate()
        .map(|(r, fv)| {
            rights
                .iter()
                .enumerate()
                .map(|(c, gu)| {
                    let s = scalar_q(fv, gu);
                    let expected = if r == c { QRat::one() } else { QRat::zero() };
                    if s != expected {
                        pass = false;
                    }
                    s
                })
                .collect()
        })
        .collect();
    ScalarReport {
        lambda: padded,
        n,
        left: orb.clone(),
        right: orb,
        gram,
        pass,
    }
}

/// Row vector of `(U_v, x^λ)_q` over v in the orbit of λ.
///
/// Pairing against a dominant monomial must pick out exactly the reversed
/// weight: the row is the indicator of v = rev(λ), and `pass` records
/// whether it is.
///
/// Panics when λ has more than n parts.
pub fn verify_monomial_duality(lambda: &Partition, n: usize) -> ScalarReport {
    let padded = lambda
        .padded(n)
        .expect("partition has more parts than variables");
    let orb = orbit(&padded);
    let mono = LaurentPoly::monomial(n, &padded, QRat::one());
    let target = reversed(&padded);
    let mut pass = true;
    let row: Vec<QRat> = orb
        .iter()
        .map(|v| {
            let s = scalar_q(
                &u_poly(v).expect("orbit weights are nonnegative"),
                &mono,
            );
            let expected = if *v == target { QRat::one() } else { QRat::zero() };
            if s != expected {
                pass = false;
            }
            s
        })
        .collect();
    ScalarReport {
        lambda: padded.clone(),
        n,
        left: vec![padded],
        right: orb,
        gram: vec![row],
        pass,
    }
}

/// A random Laurent polynomial: a handful of terms with exponents drawn from
/// [-degree, degree] and small nonzero integer coefficients.
fn random_laurent(rng: &mut ChaCha8Rng, n: usize, degree: i64) -> LaurentPoly {
    let mut out = LaurentPoly::zero(n);
    for _ in 0..3 {
        let exp: Exponent = (0..n).map(|_| rng.gen_range(-degree..=degree)).collect();
        let mut c = rng.gen_range(-3i64..3);
        if c >= 0 {
            c += 1;
        }
        out.add_term(&exp, &QRat::from_int(c));
    }
    out
}

/// Property-tests the adjunction between mirrored divided-difference
/// operators: `(f □_i, g)_q = (f, g □_{n-i})_q` and likewise for ∇, on
/// `trials` random Laurent pairs with exponents in [-degree, degree].
///
/// Panics when n < 2.
pub fn verify_adjoint_ops(n: usize, trials: usize, degree: i64, seed: u64) -> bool {
    assert!(n >= 2, "adjointness needs at least two variables");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let f = random_laurent(&mut rng, n, degree);
        let g = random_laurent(&mut rng, n, degree);
        for i in 1..n {
            if scalar_q(&f.box_op(i), &g) != scalar_q(&f, &g.box_op(n - i)) {
                return false;
            }
            if scalar_q(&f.nabla(i), &g) != scalar_q(&f, &g.nabla(n - i)) {
                return false;
            }
        }
    }
    true
}

/// Re-indexes an n-variable polynomial into `total` variables, placing its
/// variables at positions offset+1 .. offset+n.
fn embed(f: &LaurentPoly, total: usize, offset: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero(total);
    for (e, c) in f.terms() {
        let mut ee = vec![0i64; total];
        ee[offset..offset + e.len()].copy_from_slice(e);
        out.add_term(&ee, c);
    }
    out
}

/// Drops every monomial whose total degree in the first n variables exceeds
/// the cap.
fn truncate_x_degree(p: &LaurentPoly, n: usize, cap: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero(p.nvars());
    for (e, c) in p.terms() {
        if e[..n].iter().sum::<i64>() <= cap as i64 {
            out.add_term(e, c);
        }
    }
    out
}

/// Checks the Cauchy expansion of the kernel ∏_{i+j<=n+1} 1/(1 - x_i y_j)
/// over the two key families: the sum Σ_u K_u(x) K̂_{rev(u)}(y) over weights
/// u with |u| <= degree_cap must match the kernel truncated at total degree
/// degree_cap in x (equivalently in y, as both sides are bigraded with equal
/// x- and y-degrees).
pub fn verify_cauchy(n: usize, degree_cap: usize) -> bool {
    let nn = 2 * n;
    let mut lhs = LaurentPoly::zero(nn);
    for d in 0..=degree_cap {
        for u in weights_of_degree(n, d as i64) {
            let kx = key_poly(&u, YbVariant::Plain);
            let ky = key_poly(&reversed(&u), YbVariant::Hat);
            lhs = &lhs + &(&embed(&kx, nn, 0) * &embed(&ky, nn, n));
        }
    }
    let mut rhs = LaurentPoly::one(nn);
    for i in 1..=n {
        for j in 1..=(n + 1 - i) {
            let mut series = LaurentPoly::zero(nn);
            for k in 0..=degree_cap {
                let mut e = vec![0i64; nn];
                e[i - 1] = k as i64;
                e[n + j - 1] = k as i64;
                series.add_term(&e, &QRat::one());
            }
            rhs = truncate_x_degree(&(&rhs * &series), n, degree_cap);
        }
    }
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hall::is_above_zero;
    use crate::poly::n_stat;
    use crate::qkey::{family_poly, FamilyId};

    fn qr(s: &str) -> QRat {
        s.parse().unwrap()
    }

    fn mono(exp: &[i64]) -> LaurentPoly {
        LaurentPoly::monomial(exp.len(), exp, QRat::one())
    }

    fn partition(parts: &[i64]) -> Partition {
        Partition::new(parts).unwrap()
    }

    #[test]
    fn monomial_pairing_golden_value() {
        let want = qr("q^2(1-q)(1-q^2)");
        assert_eq!(scalar_monomials(&[1, 0, 3], &[0, 1, 3]), want);
        // The form is symmetric even though the reduced exponents differ:
        // (1,0,3)-(3,1,0) vs (0,1,3)-(3,0,1).
        assert_eq!(scalar_monomials(&[0, 1, 3], &[1, 0, 3]), want);
        assert_eq!(scalar_q(&mono(&[1, 0, 3]), &mono(&[0, 1, 3])), want);
        assert_eq!(scalar_monomials(&[0, 0], &[0, 0]), QRat::one());
        assert_eq!(
            scalar_q(&LaurentPoly::one(3), &LaurentPoly::one(3)),
            QRat::one()
        );
        // Unequal total degree pairs to zero.
        assert_eq!(scalar_monomials(&[2, 0, 0], &[1, 0, 0]), QRat::zero());
    }

    #[test]
    fn pairing_with_one_matches_constant_term_of_expansion() {
        // (x^u, 1)_q is nonzero exactly when |u| = 0 and every suffix sum is
        // >= 0, and then equals the empty-shape coefficient after
        // straightening.  Cross-checked against the series oracle with cap
        // 𝔫(sorted u) + 2, which exceeds the value's q-degree.
        let one = LaurentPoly::one(3);
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                let c = -(a + b);
                if c.abs() > 2 {
                    continue;
                }
                let u = [a, b, c];
                let s = scalar_monomials(&u, &[0, 0, 0]);
                assert_eq!(!s.is_zero(), is_above_zero(&u), "u = {u:?}");
                let mut asc = u.to_vec();
                asc.sort_unstable();
                let cap = (n_stat(&asc) + 2).max(2) as usize;
                let ct = ct_oracle(&mono(&u), &one, cap);
                assert!(s.congruent_mod_q_pow(&ct, cap), "u = {u:?}");
            }
        }
        // Nonzero weight always pairs to zero against 1.
        assert_eq!(scalar_monomials(&[1, 0, 0], &[0, 0, 0]), QRat::zero());
    }

    #[test]
    fn scalar_q_is_bilinear_and_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let f = random_laurent(&mut rng, 3, 2);
            let g = random_laurent(&mut rng, 3, 2);
            let h = random_laurent(&mut rng, 3, 2);
            assert_eq!(scalar_q(&f, &g), scalar_q(&g, &f));
            assert_eq!(
                scalar_q(&(&f + &h), &g),
                &scalar_q(&f, &g) + &scalar_q(&h, &g)
            );
        }
    }

    #[test]
    fn ct_oracle_small_values() {
        // n = 2: CT(x2/x1 (1 - x1/x2) Σ q^k (x1/x2)^k) = q - 1.
        assert_eq!(ct_oracle(&mono(&[-1, 1]), &LaurentPoly::one(2), 3), qr("q-1"));
        for cap in [0, 3, 5] {
            assert_eq!(
                ct_oracle(&LaurentPoly::one(2), &LaurentPoly::one(2), cap),
                QRat::one()
            );
            assert_eq!(
                ct_oracle(&LaurentPoly::one(3), &LaurentPoly::one(3), cap),
                QRat::one()
            );
        }
        // Degree 5 value, so cap 6 recovers it exactly.
        assert_eq!(
            ct_oracle(&mono(&[1, 0, 3]), &mono(&[0, 1, 3]), 6),
            qr("q^2(1-q)(1-q^2)")
        );
    }

    #[test]
    fn ct_oracle_agrees_with_exact_on_random_monomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [2usize, 3] {
            for _ in 0..40 {
                let u: Exponent = (0..n).map(|_| rng.gen_range(-2..=3)).collect();
                let v: Exponent = (0..n).map(|_| rng.gen_range(-2..=3)).collect();
                let exact = scalar_monomials(&u, &v);
                let ct = ct_oracle(&mono(&u), &mono(&v), 6);
                assert!(
                    exact.congruent_mod_q_pow(&ct, 6),
                    "u = {u:?}, v = {v:?}, exact = {exact}, ct = {ct}"
                );
            }
        }
    }

    #[test]
    fn ct_oracle_auto_stabilizes_to_exact_value() {
        assert_eq!(
            ct_oracle_auto(&mono(&[1, 0, 3]), &mono(&[0, 1, 3])),
            qr("q^2(1-q)(1-q^2)")
        );
        assert_eq!(
            ct_oracle_auto(&mono(&[-1, 1]), &LaurentPoly::one(2)),
            qr("q-1")
        );
    }

    #[test]
    fn u_family_pairs_against_hatted_family() {
        let u210 = family_poly(FamilyId::U, &[2, 1, 0]).unwrap();
        let u120 = family_poly(FamilyId::U, &[1, 2, 0]).unwrap();
        let uhat012 = family_poly(FamilyId::Uhat, &[0, 1, 2]).unwrap();
        // (U_v, Û_{rev(u)})_q = δ_{v,u}: rev((0,1,2)) indexes u = (2,1,0).
        assert_eq!(scalar_q(&u210, &uhat012), QRat::one());
        assert_eq!(scalar_q(&u120, &uhat012), QRat::zero());
    }

    #[test]
    fn duality_reports_identity_gram() {
        let r = verify_duality(&partition(&[2, 1, 0]), 3);
        assert!(r.pass);
        assert_eq!(r.left.len(), 6);
        assert_eq!(r.gram.len(), 6);
        for (i, row) in r.gram.iter().enumerate() {
            assert_eq!(row.len(), 6);
            for (j, s) in row.iter().enumerate() {
                let expected = if i == j { QRat::one() } else { QRat::zero() };
                assert_eq!(*s, expected);
            }
        }

        // Nontrivial stabilizer.
        let r = verify_duality(&partition(&[2]), 3);
        assert!(r.pass);
        assert_eq!(r.gram.len(), 3);

        // Singleton orbit in two variables.
        let r = verify_duality(&Partition::empty(), 2);
        assert!(r.pass);
        assert_eq!(r.gram, vec![vec![QRat::one()]]);
    }

    #[test]
    fn monomial_duality_picks_out_reversed_weight() {
        let r = verify_monomial_duality(&partition(&[2, 1]), 3);
        assert!(r.pass);
        assert_eq!(r.gram.len(), 1);
        // Orbit in descending lex order; (0,1,2) is last.
        assert_eq!(r.right.last().unwrap(), &vec![0, 1, 2]);
        for (v, s) in r.right.iter().zip(&r.gram[0]) {
            let expected = if *v == vec![0, 1, 2] {
                QRat::one()
            } else {
                QRat::zero()
            };
            assert_eq!(*s, expected, "v = {v:?}");
        }

        let r = verify_monomial_duality(&partition(&[1, 1, 1]), 3);
        assert!(r.pass);
        assert_eq!(r.gram, vec![vec![QRat::one()]]);

        let r = verify_monomial_duality(&partition(&[2]), 3);
        assert!(r.pass);
        for (v, s) in r.right.iter().zip(&r.gram[0]) {
            assert_eq!(!s.is_zero(), *v == vec![0, 0, 2], "v = {v:?}");
        }
    }

    #[test]
    fn undeformed_product_values() {
        assert_eq!(
            scalar_0(&mono(&[1, 0, 3]), &mono(&[0, 1, 3])),
            QRat::zero()
        );
        assert_eq!(
            scalar_0(&LaurentPoly::one(2), &LaurentPoly::one(2)),
            QRat::one()
        );
        // At q = 0 the two key families are dual: (K_v, K̂_{rev(u)}) = δ.
        for d in 0..=3i64 {
            let weights = weights_of_degree(3, d);
            for v in &weights {
                for u in &weights {
                    let kv = key_poly(v, YbVariant::Plain);
                    let khat = key_poly(&reversed(u), YbVariant::Hat);
                    let expected = if v == u { QRat::one() } else { QRat::zero() };
                    assert_eq!(scalar_0(&kv, &khat), expected, "v = {v:?}, u = {u:?}");
                }
            }
        }
    }

    #[test]
    fn divided_difference_adjunction() {
        // Single-pair instance by hand: (x^{10} □_1, x^{01})_q = (x^{10}, x^{01} □_1)_q.
        let f = mono(&[1, 0]);
        let g = mono(&[0, 1]);
        assert_eq!(scalar_q(&f.box_op(1), &g), scalar_q(&f, &g.box_op(1)));
        // ∇ kills symmetric input, so both sides vanish.
        let sym = &mono(&[1, 0]) + &mono(&[0, 1]);
        assert!(sym.nabla(1).is_zero());
        assert_eq!(scalar_q(&sym.nabla(1), &g), QRat::zero());

        assert!(verify_adjoint_ops(2, 15, 2, 42));
        assert!(verify_adjoint_ops(3, 10, 2, 43));
    }

    #[test]
    fn dominant_pairing_forces_reversal() {
        // For dominant u and λ with rearrangements v and μ: if both
        // (x^v, x^λ)_q and (x^u, x^μ)_q are nonzero, then u = λ, v = rev(λ),
        // and μ = rev(u).  Exhaustive over weight <= 3 in three variables.
        let dominants: Vec<Exponent> = (0..=3i64)
            .flat_map(|d| {
                weights_of_degree(3, d)
                    .into_iter()
                    .filter(|w| w.windows(2).all(|p| p[0] >= p[1]))
            })
            .collect();
        let mut hits = 0usize;
        for lam in &dominants {
            for u in &dominants {
                for v in orbit(u) {
                    for mu in orbit(lam) {
                        let a = scalar_monomials(&v, lam);
                        let b = scalar_monomials(u, &mu);
                        if !a.is_zero() && !b.is_zero() {
                            hits += 1;
                            assert_eq!(u, lam);
                            assert_eq!(v, reversed(lam));
                            assert_eq!(mu, reversed(u));
                        }
                    }
                }
            }
        }
        // Each dominant weight contributes its own witness triple.
        assert_eq!(hits, dominants.len());
    }

    #[test]
    fn cauchy_kernel_expands_over_key_bases() {
        assert!(verify_cauchy(1, 5));
        assert!(verify_cauchy(2, 3));
        assert!(verify_cauchy(3, 2));
    }

    #[test]
    fn report_serializes_to_json() {
        let r = verify_duality(&partition(&[2]), 3);
        let j = r.to_json();
        assert_eq!(j["lambda"], serde_json::json!([2, 0, 0]));
        assert_eq!(j["n"], serde_json::json!(3));
        assert_eq!(j["pass"], serde_json::json!(true));
        assert_eq!(j["gram"][0][0], QRat::one().to_json());
        assert_eq!(j["gram"].as_array().unwrap().len(), 3);
    }
}
