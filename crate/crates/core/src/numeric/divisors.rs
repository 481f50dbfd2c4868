use num_traits::One;

use super::{Factorization, Natural};

/// Which divisors of `N` survive besides the bound.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ParityRule {
    #[default]
    Any,
    /// Keep `d` only when `d ≡ N/d (mod 2)`, i.e. `2d | N − d²`.
    MatchCofactor,
}

/// Allowed exponents of one prime, ascending.
#[derive(Clone, Debug)]
pub(crate) struct ExponentChoice {
    pub prime: Natural,
    pub exponents: Vec<u32>,
}

impl ExponentChoice {
    pub fn new(prime: Natural, exponents: Vec<u32>) -> Self {
        debug_assert!(exponents.windows(2).all(|w| w[0] < w[1]));
        ExponentChoice { prime, exponents }
    }
}

/// Every product `∏ p^e` over the choices that is strictly below `bound`, ascending.
///
/// Exponents are tried in increasing order, so a branch stops as soon as the
/// running product reaches the bound.
pub(crate) fn products_below(choices: &[ExponentChoice], bound: &Natural) -> Vec<Natural> {
    fn walk(choices: &[ExponentChoice], current: Natural, bound: &Natural, out: &mut Vec<Natural>) {
        let Some((head, tail)) = choices.split_first() else {
            if current < *bound {
                out.push(current);
            }
            return;
        };
        let mut last_exp = 0;
        let mut value = current;
        for &e in &head.exponents {
            value *= head.prime.pow(e - last_exp);
            last_exp = e;
            if value >= *bound {
                break;
            }
            walk(tail, value.clone(), bound, out);
        }
    }

    let mut out = Vec::new();
    walk(choices, Natural::one(), bound, &mut out);
    out.sort_unstable();
    out
}

/// Ascending divisors `d` of `f.value()` with `d < bound`, filtered by `parity`.
pub fn divisors_below(f: &Factorization, bound: &Natural, parity: ParityRule) -> Vec<Natural> {
    let two = Natural::from(2u32);
    let choices: Vec<ExponentChoice> = f
        .factors()
        .iter()
        .map(|(p, e)| {
            let exponents = if parity == ParityRule::MatchCofactor && *p == two {
                (1..*e).collect()
            } else {
                (0..=*e).collect()
            };
            ExponentChoice::new(p.clone(), exponents)
        })
        .collect();
    products_below(&choices, bound)
}
