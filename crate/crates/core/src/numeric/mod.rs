//! Exact integer support: the [`Natural`] type, gcd, square roots,
//! factorization and bounded divisor enumeration.

mod divisors;
mod factor;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};

pub use divisors::{divisors_below, ParityRule};
pub(crate) use divisors::{products_below, ExponentChoice};
pub use factor::{factorize, is_probable_prime, FactorBudget, Factorization};

/// Unbounded non-negative integer. Every leg, Δ, k and hypotenuse is one of these.
pub type Natural = BigUint;

/// Greatest common divisor of a nonempty list with at least one nonzero entry.
pub fn gcd_all<'a, I>(values: I) -> Result<Natural>
where
    I: IntoIterator<Item = &'a Natural>,
{
    let mut seen = false;
    let mut acc = Natural::zero();
    for v in values {
        seen = true;
        acc = acc.gcd(v);
    }
    if !seen {
        return Err(Error::domain("gcd of an empty list"));
    }
    if acc.is_zero() {
        return Err(Error::domain("gcd of all-zero values"));
    }
    Ok(acc)
}

/// Exact square root of `n` if `n` is a perfect square.
pub fn is_perfect_square(n: &Natural) -> Option<Natural> {
    let root = n.sqrt();
    (&root * &root == *n).then_some(root)
}

/// Smallest `bound` such that `x < bound ⇔ x² < n`, i.e. `⌈√n⌉`.
pub fn sqrt_bound(n: &Natural) -> Natural {
    let root = n.sqrt();
    if &root * &root == *n {
        root
    } else {
        root + 1u32
    }
}

/// 2-adic valuation; `None` for zero.
pub fn two_adic(n: &Natural) -> Option<u64> {
    n.trailing_zeros()
}

/// All `x` in `1..=max_x` for which `base + x²` is a perfect square, with the root.
///
/// Walks the root upward alongside `x` instead of taking square roots, so the
/// scan is linear in `max_x` with exact integer comparisons only. Returns `None`
/// when the squares do not fit in 128 bits.
pub fn square_completions_scan(base: u64, max_x: u64) -> Option<Vec<(u64, u64)>> {
    let base = base as u128;
    let max_x128 = max_x as u128;
    let top = base.checked_add(max_x128.checked_mul(max_x128)?)?;
    // root can reach √top ≤ 2^64, whose square must still fit.
    if top > u128::MAX / 4 {
        return None;
    }
    let mut out = Vec::new();
    let mut root: u128 = base.isqrt();
    for x in 1..=max_x128 {
        let target = base + x * x;
        while root * root < target {
            root += 1;
        }
        if root * root == target {
            out.push((x as u64, root as u64));
        }
    }
    Some(out)
}
