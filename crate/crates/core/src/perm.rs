//! Permutations in one-line notation, reduced words, and the coset
//! representatives attached to a rearrangement of a partition.
//!
//! Conventions, fixed once and used everywhere:
//! * images are 1-based, `sigma.images()[j-1]` is sigma(j);
//! * composition is `compose(sigma, tau)(j) = sigma(tau(j))`;
//! * right multiplication by the adjacent transposition s_i swaps positions
//!   i and i+1 of the one-line word;
//! * a vector transforms by `act(v, sigma)_j = v_{sigma(j)}`, so
//!   `act(v, sigma*tau) = act(act(v, sigma), tau)`.
//!
//! For a vector v with decreasing rearrangement lambda, [`eta`] is the
//! shortest permutation with `act(lambda, eta) = v` and [`zeta`] the longest;
//! they differ by the longest element of the stabilizer of lambda.

use crate::poly::{act_on_exponent, r2l_lex_cmp, Exponent};
use std::fmt;

/// Errors from building permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PermError {
    /// The vector is not a bijective one-line word on 1..=n.
    InvalidOneLine(Vec<usize>),
    /// A word letter is outside 1..n.
    InvalidLetter { letter: usize, n: usize },
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::InvalidOneLine(v) => write!(f, "{v:?} is not a one-line permutation"),
            PermError::InvalidLetter { letter, n } => {
                write!(f, "letter {letter} outside 1..{n}")
            }
        }
    }
}

impl std::error::Error for PermError {}

/// A permutation of 1..=n in one-line notation.
///
/// The derived order is lexicographic on images, which is the order used for
/// matrix row and column labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn from_images(images: Vec<usize>) -> Result<Permutation, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x < 1 || x > n || seen[x - 1] {
                return Err(PermError::InvalidOneLine(images));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The adjacent transposition s_i (1-based, i < n).
    pub fn s(n: usize, i: usize) -> Permutation {
        assert!((1..n).contains(&i), "transposition index {i} out of 1..{n}");
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// The longest element: n, n-1, ..., 1.
    pub fn longest(n: usize) -> Permutation {
        Permutation {
            images: (1..=n).rev().collect(),
        }
    }

    /// Walks the identity along a word of adjacent transpositions by right
    /// multiplication.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Permutation, PermError> {
        let mut p = Permutation::identity(n);
        for &i in word {
            if !(1..n).contains(&i) {
                return Err(PermError::InvalidLetter { letter: i, n });
            }
            p.images.swap(i - 1, i);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| x == k + 1)
    }

    /// sigma(j), 1-based.
    pub fn image(&self, j: usize) -> usize {
        self.images[j - 1]
    }

    /// `compose(sigma, tau)(j) = sigma(tau(j))`.
    pub fn compose(&self, tau: &Permutation) -> Permutation {
        assert_eq!(self.n(), tau.n(), "permutation size mismatch");
        Permutation {
            images: tau.images.iter().map(|&j| self.images[j - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (j, &x) in self.images.iter().enumerate() {
            images[x - 1] = j + 1;
        }
        Permutation { images }
    }

    /// Right multiplication by s_i: swaps positions i, i+1 of the one-line
    /// word. Increases length exactly when sigma_i < sigma_{i+1}.
    pub fn mul_s(&self, i: usize) -> Permutation {
        assert!(
            (1..self.n()).contains(&i),
            "transposition index {i} out of 1..{}",
            self.n()
        );
        let mut images = self.images.clone();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let mut count = 0;
        for a in 0..self.images.len() {
            for b in a + 1..self.images.len() {
                if self.images[a] > self.images[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Positions i with sigma_i > sigma_{i+1}.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.n())
            .filter(|&i| self.images[i - 1] > self.images[i])
            .collect()
    }

    /// `act(v, sigma)_j = v_{sigma(j)}`.
    pub fn act(&self, v: &[i64]) -> Exponent {
        act_on_exponent(v, &self.images)
    }

    /// Reduced word by repeatedly removing the leftmost descent; the result
    /// multiplies left to right starting from the identity.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut p = self.clone();
        let mut word = Vec::with_capacity(p.length());
        loop {
            let Some(&i) = p.descents().first() else {
                break;
            };
            p = p.mul_s(i);
            word.push(i);
        }
        word.reverse();
        word
    }

    /// Reduced word built from rightmost descents; generally different from
    /// [`Permutation::reduced_word`] but multiplies out to the same element.
    pub fn reduced_word_alt(&self) -> Vec<usize> {
        let mut p = self.clone();
        let mut word = Vec::with_capacity(p.length());
        loop {
            let Some(&i) = p.descents().last() else {
                break;
            };
            p = p.mul_s(i);
            word.push(i);
        }
        word.reverse();
        word
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for x in &self.images {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            write!(f, "(")?;
            for (k, x) in self.images.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")
        }
    }
}

/// All permutations of 1..=n in lexicographic order on images.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut images: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Permutation {
            images: images.clone(),
        });
        // next permutation in lex order
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| images[i] < images[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| images[j] > images[i]).unwrap();
        images.swap(i, j);
        images[i + 1..].reverse();
    }
    out
}

/// The decreasing rearrangement of v.
pub fn decreasing_rearrangement(v: &[i64]) -> Exponent {
    let mut lambda = v.to_vec();
    lambda.sort_unstable_by(|a, b| b.cmp(a));
    lambda
}

/// The shortest permutation eta with `act(lambda, eta) = v`, where lambda is
/// the decreasing rearrangement of v: scanning v left to right, each value
/// takes the smallest unused lambda-index holding that value.
pub fn eta(v: &[i64]) -> Permutation {
    let lambda = decreasing_rearrangement(v);
    let mut used = vec![false; v.len()];
    let mut images = Vec::with_capacity(v.len());
    for &x in v {
        let idx = lambda
            .iter()
            .enumerate()
            .position(|(k, &l)| l == x && !used[k])
            .expect("value occurs in its own rearrangement");
        used[idx] = true;
        images.push(idx + 1);
    }
    Permutation { images }
}

/// The longest element of the stabilizer of the decreasing rearrangement of
/// v: indices reverse within each block of equal values.
pub fn w0_stabilizer(v: &[i64]) -> Permutation {
    let lambda = decreasing_rearrangement(v);
    let n = lambda.len();
    let mut images = vec![0; n];
    let mut start = 0;
    while start < n {
        let mut end = start;
        while end + 1 < n && lambda[end + 1] == lambda[start] {
            end += 1;
        }
        for k in start..=end {
            images[k] = end + start + 1 - k; // reverse start..=end, 1-based
        }
        start = end + 1;
    }
    Permutation { images }
}

/// The longest permutation zeta with `act(lambda, zeta) = v`.
pub fn zeta(v: &[i64]) -> Permutation {
    w0_stabilizer(v).compose(&eta(v))
}

/// All distinct rearrangements of v, in descending left-to-right
/// lexicographic order.
pub fn orbit(v: &[i64]) -> Vec<Exponent> {
    let mut current = v.to_vec();
    current.sort_unstable_by(|a, b| b.cmp(a));
    let n = current.len();
    let mut out = Vec::new();
    loop {
        out.push(current.clone());
        // next strictly smaller rearrangement in lex order
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] > current[i + 1])
        else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] < current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

/// All distinct rearrangements ordered by [`r2l_lex_cmp`], largest first.
pub fn orbit_r2l_desc(v: &[i64]) -> Vec<Exponent> {
    let mut o = orbit(v);
    o.sort_by(|a, b| r2l_lex_cmp(b, a));
    o
}
