//! Exact big-integer arithmetic: binomials, Catalan numbers, generalized
//! Catalan numbers and truncated convolution powers of the Catalan sequence.

use std::fmt;
use std::ops::Index;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Arbitrary-precision nonnegative integer.
pub type Natural = BigUint;

/// A finite, 0-indexed sequence of naturals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntSeq(Vec<Natural>);

impl IntSeq {
    pub fn new(terms: Vec<Natural>) -> Self {
        IntSeq(terms)
    }

    pub fn zeros(len: usize) -> Self {
        IntSeq(vec![Natural::zero(); len])
    }

    pub fn from_u64s(terms: &[u64]) -> Self {
        terms.iter().map(|&t| Natural::from(t)).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> &[Natural] {
        &self.0
    }

    pub fn into_terms(self) -> Vec<Natural> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Natural> {
        self.0.iter()
    }

    pub fn get(&self, index: usize) -> Option<&Natural> {
        self.0.get(index)
    }

    /// Keeps the first `len` terms, padding with zeros if the sequence is shorter.
    pub fn resized(mut self, len: usize) -> Self {
        self.0.resize(len, Natural::zero());
        self
    }

    /// True when `needle` occurs as a contiguous run of terms.
    pub fn contains_run(&self, needle: &[Natural]) -> bool {
        needle.is_empty() || self.0.windows(needle.len()).any(|w| w == needle)
    }
}

impl Index<usize> for IntSeq {
    type Output = Natural;

    fn index(&self, index: usize) -> &Natural {
        &self.0[index]
    }
}

impl FromIterator<Natural> for IntSeq {
    fn from_iter<I: IntoIterator<Item = Natural>>(iter: I) -> Self {
        IntSeq(iter.into_iter().collect())
    }
}

impl From<Vec<Natural>> for IntSeq {
    fn from(terms: Vec<Natural>) -> Self {
        IntSeq(terms)
    }
}

impl<'a> IntoIterator for &'a IntSeq {
    type Item = &'a Natural;
    type IntoIter = std::slice::Iter<'a, Natural>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Comma-separated decimal terms without spaces, e.g. `1,1,2,5`.
impl fmt::Display for IntSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> Natural {
    if k < 0 || k as u64 > n {
        return Natural::zero();
    }
    let k = (k as u64).min(n - k as u64);
    // Each partial product is C(n-k+i, i), so every division is exact.
    let mut acc = Natural::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// The Catalan number `C(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> Natural {
    // C(2n,n) - C(2n,n-1) avoids a division.
    binomial(2 * n, n as i64) - binomial(2 * n, n as i64 - 1)
}

/// Generalized Catalan number `(k+1)/(2n+k+1) * C(2n+k+1, n)` for `k >= 0`;
/// for `k = -1` it is 1 at `n = 0` and 0 otherwise.
pub fn gen_catalan(n: u64, k: i64) -> Result<Natural> {
    match k {
        -1 => Ok(if n == 0 {
            Natural::one()
        } else {
            Natural::zero()
        }),
        k if k < -1 => Err(Error::domain(format!(
            "generalized Catalan index k = {k} is below -1"
        ))),
        k => {
            let k = k as u64;
            let top = 2 * n + k + 1;
            let numerator = binomial(top, n as i64) * (k + 1);
            exact_div(numerator, &Natural::from(top))
        }
    }
}

/// Divides, failing with an integrity error on a nonzero remainder.
pub(crate) fn exact_div(numerator: Natural, denominator: &Natural) -> Result<Natural> {
    let quotient = &numerator / denominator;
    if &quotient * denominator != numerator {
        return Err(Error::InexactDivision {
            numerator: numerator.to_string(),
            denominator: denominator.to_string(),
        });
    }
    Ok(quotient)
}

/// The first `len` Catalan numbers.
pub fn catalan_prefix(len: usize) -> IntSeq {
    (0..len as u64).map(catalan).collect()
}

/// Discrete convolution of `a` and `b`, truncated to `len` terms.
pub fn convolve(a: &IntSeq, b: &IntSeq, len: usize) -> IntSeq {
    (0..len)
        .map(|n| {
            (0..=n)
                .filter_map(|i| Some(a.get(i)? * b.get(n - i)?))
                .sum::<Natural>()
        })
        .collect()
}

/// First `len` coefficients of the `(k+1)`-st convolution power of the Catalan
/// sequence; `k = 0` is the Catalan sequence itself.
pub fn catalan_power_convolution(k: u64, len: usize) -> IntSeq {
    let base = catalan_prefix(len);
    let mut acc = base.clone();
    for _ in 0..k {
        acc = convolve(&acc, &base, len);
    }
    acc
}
