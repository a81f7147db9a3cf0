//! The Catalan transform `b_n = sum_k k/(2n-k) * C(2n-k, n-k) * a_k`, computed
//! either directly or with the summation order reversed, where it becomes
//! `b_n = sum_k C_k^(n-1-k) * a_{n-k}` in terms of generalized Catalan numbers.

use std::str::FromStr;

use num_traits::{One, Zero};

use crate::exactnum::{binomial, catalan, exact_div, gen_catalan};
use crate::{Error, IntSeq, Natural, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TransformMode {
    #[default]
    Direct,
    Reversed,
}

impl FromStr for TransformMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(TransformMode::Direct),
            "reversed" => Ok(TransformMode::Reversed),
            other => Err(Error::InvalidInput(format!(
                "unknown transform mode `{other}`"
            ))),
        }
    }
}

/// Coefficient of `a_k` in `b_n`. It is 1 at `n = k = 0`, and 0 for `k = 0 < n`
/// or `k > n`.
pub fn ct_coefficient(n: u64, k: u64) -> Result<Natural> {
    if k > n {
        return Ok(Natural::zero());
    }
    if k == 0 {
        return Ok(if n == 0 {
            Natural::one()
        } else {
            Natural::zero()
        });
    }
    let top = 2 * n - k;
    exact_div(binomial(top, (n - k) as i64) * k, &Natural::from(top))
}

/// Transforms a finite prefix; the output has the same length as the input.
pub fn catalan_transform(a: &IntSeq, mode: TransformMode) -> Result<IntSeq> {
    (0..a.len() as u64)
        .map(|n| match mode {
            TransformMode::Direct => direct_term(a, n),
            TransformMode::Reversed => reversed_term(a, n),
        })
        .collect()
}

fn direct_term(a: &IntSeq, n: u64) -> Result<Natural> {
    let mut acc = Natural::zero();
    for k in 0..=n {
        let ak = &a[k as usize];
        if !ak.is_zero() {
            acc += ct_coefficient(n, k)? * ak;
        }
    }
    Ok(acc)
}

fn reversed_term(a: &IntSeq, n: u64) -> Result<Natural> {
    let mut acc = Natural::zero();
    for k in 0..=n {
        let a_term = &a[(n - k) as usize];
        if !a_term.is_zero() {
            acc += gen_catalan(k, n as i64 - 1 - k as i64)? * a_term;
        }
    }
    Ok(acc)
}

/// `k` zeros followed by `C_0, C_1, ...`, cut to `len` terms.
pub fn shifted_catalan(k: usize, len: usize) -> IntSeq {
    (0..len)
        .map(|i| {
            if i < k {
                Natural::zero()
            } else {
                catalan((i - k) as u64)
            }
        })
        .collect()
}
