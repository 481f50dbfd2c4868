//! Completing legs `a_1..a_{n−2}` into Pythagorean n-tuples.
//!
//! With `k = Σ aᵢ²` and `a_n = a_{n−1} + Δ`, the missing leg is
//! `a_{n−1} = (k − Δ²) / 2Δ`. Quadruples are the two-leg case.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{DeltaViolation, Error, Result};
use crate::numeric::{
    divisors_below, factorize, gcd_all, products_below, sqrt_bound, square_completions_scan,
    ExponentChoice, FactorBudget, Factorization, Natural, ParityRule,
};
use crate::{ClassFilter, Classification};

/// Largest `k` accepted by [`oracle_completions`] unless the caller raises it.
pub const DEFAULT_ORACLE_CAP: u64 = 4_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TupleSolution {
    /// The given legs, in input order.
    pub legs: Vec<Natural>,
    /// Sum of squares of `legs`.
    pub k: Natural,
    /// The computed leg `a_{n−1}`.
    pub completion: Natural,
    /// `a_n`.
    pub hypotenuse: Natural,
    pub delta: Natural,
    pub classification: Classification,
}

impl TupleSolution {
    fn classified(legs: &[Natural], k: Natural, completion: Natural, hypotenuse: Natural) -> Self {
        let gcd =
            gcd_all(legs.iter().chain([&completion, &hypotenuse])).expect("legs are positive");
        TupleSolution {
            legs: legs.to_vec(),
            delta: &hypotenuse - &completion,
            k,
            completion,
            hypotenuse,
            classification: Classification::from_gcd(&gcd),
        }
    }

    /// Recomputes `Σ legs² + completion² = hypotenuse²` from the legs.
    pub fn holds(&self) -> bool {
        let k: Natural = self.legs.iter().map(|l| l * l).sum();
        k + &self.completion * &self.completion == &self.hypotenuse * &self.hypotenuse
    }

    /// All n entries: legs, completion, hypotenuse.
    pub fn entries(&self) -> Vec<Natural> {
        let mut v = self.legs.clone();
        v.push(self.completion.clone());
        v.push(self.hypotenuse.clone());
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Infeasibility {
    /// `k ≡ 2 (mod 4)`: Δ would have to be even, but then `2Δ ∤ k − Δ²`.
    KCongruentTwoModFour,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub k: Natural,
    pub odd_leg_count: usize,
    pub feasible: bool,
    pub reason: Option<Infeasibility>,
}

/// Exact `Σ legs²`; every leg must be positive.
pub fn sum_of_squares(legs: &[Natural]) -> Result<Natural> {
    if legs.is_empty() {
        return Err(Error::domain("at least one leg is required"));
    }
    if legs.iter().any(Zero::is_zero) {
        return Err(Error::domain("legs must be positive"));
    }
    Ok(legs.iter().map(|l| l * l).sum())
}

/// Whether any completion can exist. Infeasible exactly when `k ≡ 2 (mod 4)`,
/// which happens when the number of odd legs is `≡ 2 (mod 4)`.
pub fn feasibility(legs: &[Natural]) -> Result<FeasibilityReport> {
    let k = sum_of_squares(legs)?;
    let odd_leg_count = legs.iter().filter(|l| l.is_odd()).count();
    let feasible = (&k % 4u32) != Natural::from(2u32);
    Ok(FeasibilityReport {
        k,
        odd_leg_count,
        feasible,
        reason: (!feasible).then_some(Infeasibility::KCongruentTwoModFour),
    })
}

/// Admissible Δ for the legs, ascending: `Δ | k`, `Δ² < k`, `Δ ≡ k/Δ (mod 2)`.
/// Empty for infeasible legs.
pub fn valid_deltas_for(legs: &[Natural], budget: FactorBudget) -> Result<Vec<Natural>> {
    let report = feasibility(legs)?;
    if !report.feasible {
        return Ok(Vec::new());
    }
    let f = factorize(&report.k, budget)?;
    Ok(valid_deltas_from_k(&f))
}

fn valid_deltas_from_k(k: &Factorization) -> Vec<Natural> {
    divisors_below(k, &sqrt_bound(k.value()), ParityRule::MatchCofactor)
}

/// The completion for `delta`, or the reason `delta` is inadmissible.
pub fn complete_tuple(legs: &[Natural], delta: &Natural) -> Result<TupleSolution> {
    let k = sum_of_squares(legs)?;
    if delta.is_zero() {
        return Err(Error::invalid_delta(delta, DeltaViolation::Zero));
    }
    if delta * delta >= k {
        return Err(Error::invalid_delta(delta, DeltaViolation::TooLarge));
    }
    let (cofactor, rem) = k.div_rem(delta);
    if !rem.is_zero() {
        return Err(Error::invalid_delta(delta, DeltaViolation::NotDivisor));
    }
    if cofactor.is_even() != delta.is_even() {
        return Err(Error::invalid_delta(delta, DeltaViolation::ParityMismatch));
    }
    let completion = (cofactor - delta) >> 1u32;
    let hypotenuse = &completion + delta;
    Ok(TupleSolution::classified(legs, k, completion, hypotenuse))
}

/// One solution per admissible Δ, ascending, filtered by class.
pub fn all_completions(
    legs: &[Natural],
    filter: ClassFilter,
    budget: FactorBudget,
) -> Result<Vec<TupleSolution>> {
    let deltas = valid_deltas_for(legs, budget)?;
    let mut out = Vec::with_capacity(deltas.len());
    for delta in &deltas {
        let s = complete_tuple(legs, delta)?;
        if filter.admits(s.classification) {
            out.push(s);
        }
    }
    Ok(out)
}

/// Δ values giving primitive completions, from the factorization of `k` and
/// the common divisor of the legs alone.
///
/// Write `k = 2^w · ∏ pᵢ^mᵢ · ∏ qⱼ^sⱼ` where the odd `pᵢ` divide every leg and
/// the `qⱼ` do not. Then `Δ = 2^r · ∏ pᵢ^rᵢ · ∏ qⱼ^tⱼ` with `rᵢ ∈ {0, mᵢ}`,
/// `tⱼ ∈ 0..=sⱼ`, `Δ² < k`, and
///
/// - `w = 0`: `r = 0`;
/// - `w = 1`: nothing (infeasible);
/// - every leg even: `r ∈ {1, w − 1}` when `w ≥ 3`, nothing when `w = 2`;
/// - some leg odd, `w ≥ 2`: any `r ∈ 1..w`.
pub fn predict_primitive_deltas_tuple(
    legs: &[Natural],
    budget: FactorBudget,
) -> Result<BTreeSet<Natural>> {
    let k = sum_of_squares(legs)?;
    let common = gcd_all(legs)?;
    let f = factorize(&k, budget)?;
    Ok(primitive_deltas_from_k(&f, &common).into_iter().collect())
}

pub(crate) fn primitive_deltas_from_k(k: &Factorization, common: &Natural) -> Vec<Natural> {
    let w = k.two_exponent();
    let two_exponents: Vec<u32> = match w {
        0 => vec![0],
        1 => vec![],
        2 if common.is_even() => vec![],
        _ if common.is_even() => vec![1, w - 1],
        _ => (1..w).collect(),
    };
    let mut choices = vec![ExponentChoice::new(Natural::from(2u32), two_exponents)];
    choices.extend(k.odd_factors().iter().map(|(p, e)| {
        let exponents = if (common % p).is_zero() {
            vec![0, *e]
        } else {
            (0..=*e).collect()
        };
        ExponentChoice::new(p.clone(), exponents)
    }));
    products_below(&choices, &sqrt_bound(k.value()))
}

/// Brute-force completions: scans every `x < k/2` for a square `k + x²`.
///
/// Shares no logic with the Δ enumeration. Refuses `k` above `cap`.
pub fn oracle_completions(legs: &[Natural], cap: u64) -> Result<Vec<TupleSolution>> {
    let k = sum_of_squares(legs)?;
    let refuse = || Error::OracleCapExceeded {
        value: k.clone(),
        cap: Natural::from(cap),
    };
    let small = k.to_u64().filter(|&v| v <= cap).ok_or_else(refuse)?;
    let hits = square_completions_scan(small, small.saturating_sub(1) / 2).ok_or_else(refuse)?;
    Ok(hits
        .into_iter()
        .map(|(x, root)| {
            TupleSolution::classified(legs, k.clone(), Natural::from(x), Natural::from(root))
        })
        .collect())
}
