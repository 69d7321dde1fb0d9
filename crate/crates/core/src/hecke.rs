//! The Hecke algebra H_n(q) in the T-basis, with the anti-automorphism phi,
//! the T_omega-coefficient bilinear form, and both Yang-Baxter bases at the
//! spectral parameters (1, q, ..., q^{n-1}).
//!
//! Generators obey (T_i + 1)(T_i - q) = 0 together with the braid relations,
//! so right multiplication by T_i on a basis element T_sigma is
//! T_{sigma s_i} when the length rises and q T_{sigma s_i} + (q-1) T_sigma
//! otherwise. Products reduce to iterated generator multiplications along
//! reduced words.
//!
//! The plain Yang-Baxter element grows by factors (T_i + 1/[k]_q) and the hat
//! variant by (T_i - q^k/[k]_q), where k is the positive difference
//! sigma_{i+1} - sigma_i read off the shorter permutation. Both families are
//! memoized globally; the recursion is reduced-word independent.

use crate::perm::{all_permutations, Permutation};
use crate::qrat::{q_int, QRat};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

/// Which Yang-Baxter family to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum YbVariant {
    Plain,
    Hat,
}

/// Element of H_n(q) expanded over the T_sigma basis.
///
/// Invariant: no stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElt {
    n: usize,
    terms: BTreeMap<Permutation, QRat>,
}

impl HeckeElt {
    pub fn zero(n: usize) -> Self {
        HeckeElt {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The identity T_id.
    pub fn one(n: usize) -> Self {
        HeckeElt::basis(Permutation::identity(n))
    }

    /// A single basis element T_sigma.
    pub fn basis(sigma: Permutation) -> Self {
        let n = sigma.n();
        let mut terms = BTreeMap::new();
        terms.insert(sigma, QRat::one());
        HeckeElt { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of one-line words.
    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &QRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, sigma: &Permutation) -> QRat {
        self.terms.get(sigma).cloned().unwrap_or_else(QRat::zero)
    }

    pub fn add_term(&mut self, sigma: &Permutation, c: &QRat) {
        assert_eq!(sigma.n(), self.n, "permutation size mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(sigma) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(sigma);
                }
            }
            None => {
                self.terms.insert(sigma.clone(), c.clone());
            }
        }
    }

    pub fn scale(&self, c: &QRat) -> HeckeElt {
        if c.is_zero() {
            return HeckeElt::zero(self.n);
        }
        HeckeElt {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(s, a)| (s.clone(), a * c))
                .collect(),
        }
    }

    /// Right multiplication by the generator T_i.
    pub fn mul_t(&self, i: usize) -> HeckeElt {
        assert!(
            (1..self.n).contains(&i),
            "generator index {i} out of 1..{}",
            self.n
        );
        let mut out = HeckeElt::zero(self.n);
        let q = QRat::q();
        let q_minus_1 = &q - &QRat::one();
        for (sigma, c) in &self.terms {
            let swapped = sigma.mul_s(i);
            if sigma.image(i) < sigma.image(i + 1) {
                out.add_term(&swapped, c);
            } else {
                out.add_term(&swapped, &(c * &q));
                out.add_term(sigma, &(c * &q_minus_1));
            }
        }
        out
    }

    /// Right multiplication by T_{i_1} T_{i_2} ... in word order.
    pub fn mul_word(&self, word: &[usize]) -> HeckeElt {
        let mut h = self.clone();
        for &i in word {
            h = h.mul_t(i);
        }
        h
    }

    fn mul_elt(&self, other: &HeckeElt) -> HeckeElt {
        assert_eq!(self.n, other.n, "algebra size mismatch");
        let mut out = HeckeElt::zero(self.n);
        for (tau, d) in &other.terms {
            let partial = self.mul_word(&tau.reduced_word()).scale(d);
            for (sigma, c) in &partial.terms {
                out.add_term(sigma, c);
            }
        }
        out
    }

    /// The anti-automorphism sending T_sigma to T_{sigma^{-1}}, fixing
    /// coefficients.
    pub fn phi(&self) -> HeckeElt {
        HeckeElt {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (s.inverse(), c.clone()))
                .collect(),
        }
    }

    /// The coefficient of T_omega in `self * phi(other)`.
    pub fn bilinear(&self, other: &HeckeElt) -> QRat {
        assert_eq!(self.n, other.n, "algebra size mismatch");
        self.mul_elt(&other.phi())
            .coeff(&Permutation::longest(self.n))
    }
}

impl fmt::Display for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (sigma, c) in &self.terms {
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
                write!(f, "T[{sigma}]")?;
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
                    write!(f, "({shown})·T[{sigma}]")?;
                } else {
                    write!(f, "{shown}·T[{sigma}]")?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &HeckeElt {
    type Output = HeckeElt;
    fn add(self, rhs: &HeckeElt) -> HeckeElt {
        assert_eq!(self.n, rhs.n, "algebra size mismatch");
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(s, c);
        }
        out
    }
}

impl Sub for &HeckeElt {
    type Output = HeckeElt;
    fn sub(self, rhs: &HeckeElt) -> HeckeElt {
        assert_eq!(self.n, rhs.n, "algebra size mismatch");
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(s, &(-c));
        }
        out
    }
}

impl Mul for &HeckeElt {
    type Output = HeckeElt;
    fn mul(self, rhs: &HeckeElt) -> HeckeElt {
        self.mul_elt(rhs)
    }
}

impl Neg for &HeckeElt {
    type Output = HeckeElt;
    fn neg(self) -> HeckeElt {
        HeckeElt {
            n: self.n,
            terms: self.terms.iter().map(|(s, c)| (s.clone(), -c)).collect(),
        }
    }
}

type YbKey = (Vec<usize>, YbVariant);

fn yb_cache() -> &'static Mutex<HashMap<YbKey, HeckeElt>> {
    static CACHE: OnceLock<Mutex<HashMap<YbKey, HeckeElt>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The Yang-Baxter basis element for sigma, built recursively from the
/// identity: if sigma covers tau via a right s_i (positions i, i+1 of tau
/// ascend), then with k = tau_{i+1} - tau_i,
///
/// * plain: `Y_sigma = Y_tau * (T_i + 1/[k]_q)`;
/// * hat:   `Yhat_sigma = Yhat_tau * (T_i - q^k/[k]_q)`.
///
/// The result does not depend on the chosen descent, so the value is cached.
pub fn yang_baxter(sigma: &Permutation, variant: YbVariant) -> HeckeElt {
    let key = (sigma.images().to_vec(), variant);
    if let Some(hit) = yb_cache().lock().unwrap().get(&key) {
        return hit.clone();
    }
    let value = match sigma.descents().first().copied() {
        None => HeckeElt::one(sigma.n()),
        Some(i) => {
            let tau = sigma.mul_s(i);
            let k = tau.image(i + 1) as i64 - tau.image(i) as i64;
            debug_assert!(k > 0);
            let shift = yb_shift(variant, k);
            let prev = yang_baxter(&tau, variant);
            &prev.mul_t(i) + &prev.scale(&shift)
        }
    };
    yb_cache()
        .lock()
        .unwrap()
        .insert(key, value.clone());
    value
}

/// The scalar added to T_i at a step of spectral gap k: 1/[k]_q for the
/// plain family, -q^k/[k]_q for the hat family.
pub fn yb_shift(variant: YbVariant, k: i64) -> QRat {
    assert!(k > 0, "spectral gap must be positive, got {k}");
    let qk = q_int(k).expect("positive k");
    match variant {
        YbVariant::Plain => QRat::one() / qk,
        YbVariant::Hat => -(QRat::q_pow(k as usize) / qk),
    }
}

/// Column c, row r is the coefficient of T_{sigma_r} in Y_{sigma_c}, both
/// orderings lexicographic on one-line words.
pub fn yb_transition_matrix(n: usize, variant: YbVariant) -> Vec<Vec<QRat>> {
    let perms = all_permutations(n);
    let columns: Vec<HeckeElt> = perms.iter().map(|s| yang_baxter(s, variant)).collect();
    perms
        .iter()
        .map(|row| columns.iter().map(|y| y.coeff(row)).collect())
        .collect()
}

/// Checks over all of S_n that `bilinear(Y_sigma, Yhat_nu)` is 1 when sigma
/// is omega∘nu (every image complemented to n+1-image) and 0 otherwise.
pub fn verify_yb_duality(n: usize) -> bool {
    let omega = Permutation::longest(n);
    for sigma in all_permutations(n) {
        let y = yang_baxter(&sigma, YbVariant::Plain);
        for nu in all_permutations(n) {
            let yhat = yang_baxter(&nu, YbVariant::Hat);
            let expected = if omega.compose(&nu) == sigma {
                QRat::one()
            } else {
                QRat::zero()
            };
            if y.bilinear(&yhat) != expected {
                return false;
            }
        }
    }
    true
}

impl HeckeElt {
    /// `{"n": …, "terms": [{"perm": […], "coeff": {…}}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(s, c)| {
                serde_json::json!({
                    "perm": s.images(),
                    "coeff": c.to_json(),
                })
            })
            .collect();
        serde_json::json!({ "n": self.n, "terms": terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qr(s: &str) -> QRat {
        s.parse().unwrap()
    }

    fn p(images: &[usize]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    fn t(images: &[usize]) -> HeckeElt {
        HeckeElt::basis(p(images))
    }

    fn random_elt(rng: &mut ChaCha8Rng, n: usize) -> HeckeElt {
        let perms = all_permutations(n);
        let mut h = HeckeElt::zero(n);
        for _ in 0..rng.gen_range(1..=3) {
            let s = &perms[rng.gen_range(0..perms.len())];
            h.add_term(s, &QRat::from_int(rng.gen_range(-3..=3)));
        }
        h
    }

    #[test]
    fn generator_multiplication() {
        assert_eq!(HeckeElt::one(2).mul_t(1), t(&[2, 1]));
        let expect = &t(&[1, 2]).scale(&qr("q")) + &t(&[2, 1]).scale(&qr("q-1"));
        assert_eq!(t(&[2, 1]).mul_t(1), expect);
        // (T1 + 1)(T1 - q) = 0
        let f = &t(&[2, 1]) + &HeckeElt::one(2);
        let g = &t(&[2, 1]) - &HeckeElt::one(2).scale(&qr("q"));
        assert!((&f * &g).is_zero());
    }

    #[test]
    fn braid_relation() {
        let one = HeckeElt::one(3);
        assert_eq!(one.mul_word(&[1, 2, 1]), one.mul_word(&[2, 1, 2]));
        // and on a random element
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let h = random_elt(&mut rng, 3);
            assert_eq!(h.mul_word(&[1, 2, 1]), h.mul_word(&[2, 1, 2]));
        }
    }

    #[test]
    fn product_of_basis_elements_adds_lengths() {
        let a = p(&[2, 1, 3]);
        let b = p(&[1, 3, 2]);
        let ab = a.compose(&b);
        assert_eq!(a.length() + b.length(), ab.length());
        assert_eq!(&t(&[2, 1, 3]) * &t(&[1, 3, 2]), HeckeElt::basis(ab));
    }

    #[test]
    fn associativity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..15 {
            let a = random_elt(&mut rng, 3);
            let b = random_elt(&mut rng, 3);
            let c = random_elt(&mut rng, 3);
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }
    }

    #[test]
    fn phi_is_an_anti_automorphism() {
        assert_eq!(t(&[2, 3, 1]).phi(), t(&[3, 1, 2]));
        assert_eq!(
            HeckeElt::basis(Permutation::longest(3)).phi(),
            HeckeElt::basis(Permutation::longest(3))
        );
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..15 {
            let a = random_elt(&mut rng, 3);
            let b = random_elt(&mut rng, 3);
            assert_eq!(a.phi().phi(), a);
            assert_eq!((&a * &b).phi(), &b.phi() * &a.phi());
        }
    }

    #[test]
    fn bilinear_examples() {
        assert_eq!(
            HeckeElt::one(3).bilinear(&HeckeElt::basis(Permutation::longest(3))),
            QRat::one()
        );
        // n=2: <Y_{s1}, Yhat_id> = 1
        let y = yang_baxter(&p(&[2, 1]), YbVariant::Plain);
        let yhat_id = yang_baxter(&p(&[1, 2]), YbVariant::Hat);
        assert_eq!(y.bilinear(&yhat_id), QRat::one());
    }

    #[test]
    fn yang_baxter_small_values() {
        // n=2
        let y = yang_baxter(&p(&[2, 1]), YbVariant::Plain);
        assert_eq!(y, &t(&[2, 1]) + &HeckeElt::one(2));
        let yhat = yang_baxter(&p(&[2, 1]), YbVariant::Hat);
        assert_eq!(yhat, &t(&[2, 1]) - &HeckeElt::one(2).scale(&qr("q")));
        // n=3, column 312 of the transition matrix
        let y = yang_baxter(&p(&[3, 1, 2]), YbVariant::Plain);
        let expect = &(&t(&[3, 1, 2]) + &t(&[2, 1, 3]))
            + &(&t(&[1, 2, 3]) + &t(&[1, 3, 2])).scale(&qr("1/(q+1)"));
        assert_eq!(y, expect);
    }

    #[test]
    fn yang_baxter_word_independent() {
        // Rebuild along the alternative reduced word and compare.
        for sigma in all_permutations(4) {
            let expected = yang_baxter(&sigma, YbVariant::Plain);
            for variant in [YbVariant::Plain, YbVariant::Hat] {
                let mut h = HeckeElt::one(4);
                let mut tau = Permutation::identity(4);
                for &i in &sigma.reduced_word_alt() {
                    let k = tau.image(i + 1) as i64 - tau.image(i) as i64;
                    assert!(k > 0);
                    let shifted = &h.mul_t(i) + &h.scale(&yb_shift(variant, k));
                    h = shifted;
                    tau = tau.mul_s(i);
                }
                assert_eq!(tau, sigma);
                if variant == YbVariant::Plain {
                    assert_eq!(h, expected);
                } else {
                    assert_eq!(h, yang_baxter(&sigma, YbVariant::Hat));
                }
            }
        }
    }

    #[test]
    fn transition_matrix_n2() {
        let m = yb_transition_matrix(2, YbVariant::Plain);
        assert_eq!(
            m,
            vec![
                vec![QRat::one(), QRat::one()],
                vec![QRat::zero(), QRat::one()]
            ]
        );
    }

    #[test]
    fn duality_small() {
        assert!(verify_yb_duality(2));
        assert!(verify_yb_duality(3));
    }

    #[test]
    fn display_example() {
        let y = yang_baxter(&p(&[2, 1]), YbVariant::Hat);
        assert_eq!(y.to_string(), "-q·T[12] + T[21]");
    }
}
