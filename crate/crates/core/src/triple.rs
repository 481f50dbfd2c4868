//! Pythagorean triples `(a, b, c)` with a prescribed leg `a`.
//!
//! Writing `c = b + Δ` turns `a² + b² = c²` into `a² = Δ(2b + Δ)`, so
//! `b = (a² − Δ²) / 2Δ`. A triple exists for exactly those Δ that divide `a²`,
//! stay below `a`, and share parity with `a²/Δ`.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{DeltaViolation, Error, Result};
use crate::numeric::{
    divisors_below, factorize, gcd_all, products_below, square_completions_scan, ExponentChoice,
    FactorBudget, Factorization, Natural, ParityRule,
};
use crate::{ClassFilter, Classification};

/// Largest leg accepted by [`oracle_triples`] unless the caller raises it.
pub const DEFAULT_ORACLE_CAP: u64 = 2000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triple {
    /// The given leg.
    pub a: Natural,
    /// The computed leg.
    pub b: Natural,
    pub c: Natural,
    /// `c − b`.
    pub delta: Natural,
    pub classification: Classification,
}

impl Triple {
    fn classified(a: Natural, b: Natural, c: Natural) -> Triple {
        let gcd = gcd_all([&a, &b, &c]).expect("legs are positive");
        let delta = &c - &b;
        Triple {
            classification: Classification::from_gcd(&gcd),
            a,
            b,
            c,
            delta,
        }
    }

    /// Recomputes `a² + b² = c²`.
    pub fn holds(&self) -> bool {
        &self.a * &self.a + &self.b * &self.b == &self.c * &self.c
    }
}

/// Counts predicted from the factorization of a leg, without computing any triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleForecast {
    pub leg: Natural,
    pub total: u64,
    pub primitive: u64,
    pub non_primitive: u64,
    pub primitive_deltas: BTreeSet<Natural>,
}

fn require_positive(a: &Natural) -> Result<()> {
    if a.is_zero() {
        return Err(Error::domain("leg must be positive"));
    }
    Ok(())
}

/// All admissible Δ for leg `a`, ascending.
pub fn valid_deltas(a: &Natural, budget: FactorBudget) -> Result<Vec<Natural>> {
    require_positive(a)?;
    let f = factorize(a, budget)?;
    Ok(valid_deltas_from(&f))
}

/// [`valid_deltas`] for a leg whose factorization is already known.
pub fn valid_deltas_from(leg: &Factorization) -> Vec<Natural> {
    divisors_below(&leg.squared(), leg.value(), ParityRule::MatchCofactor)
}

/// The triple with leg `a` and gap `delta`, or the reason `delta` is inadmissible.
pub fn triple_from_delta(a: &Natural, delta: &Natural) -> Result<Triple> {
    require_positive(a)?;
    if delta.is_zero() {
        return Err(Error::invalid_delta(delta, DeltaViolation::Zero));
    }
    if delta >= a {
        return Err(Error::invalid_delta(delta, DeltaViolation::TooLarge));
    }
    let square = a * a;
    let (cofactor, rem) = square.div_rem(delta);
    if !rem.is_zero() {
        return Err(Error::invalid_delta(delta, DeltaViolation::NotDivisor));
    }
    if cofactor.is_even() != delta.is_even() {
        return Err(Error::invalid_delta(delta, DeltaViolation::ParityMismatch));
    }
    let b = (cofactor - delta) >> 1u32;
    let c = &b + delta;
    Ok(Triple::classified(a.clone(), b, c))
}

/// Every triple with leg `a` whose class passes `filter`, ascending by Δ.
pub fn all_triples(a: &Natural, filter: ClassFilter, budget: FactorBudget) -> Result<Vec<Triple>> {
    let deltas = valid_deltas(a, budget)?;
    let mut out = Vec::with_capacity(deltas.len());
    for delta in &deltas {
        let t = triple_from_delta(a, delta)?;
        if filter.admits(t.classification) {
            out.push(t);
        }
    }
    Ok(out)
}

/// Δ values that give primitive triples, read off the factorization of `a`.
///
/// With `a = 2^m · ∏ pᵢ^sᵢ`, a primitive Δ is `2^r · ∏ pᵢ^tᵢ` with `tᵢ ∈ {0, 2sᵢ}`
/// and `r = 0` for odd `a`, no choice for `a ≡ 2 (mod 4)`, and `r ∈ {1, 2m − 1}`
/// otherwise; Δ must still be below `a`.
pub fn predict_primitive_deltas(a: &Natural, budget: FactorBudget) -> Result<BTreeSet<Natural>> {
    require_positive(a)?;
    let f = factorize(a, budget)?;
    Ok(primitive_deltas_from(&f).into_iter().collect())
}

/// [`predict_primitive_deltas`] from a known factorization; ascending.
pub fn primitive_deltas_from(leg: &Factorization) -> Vec<Natural> {
    let m = leg.two_exponent();
    let two_exponents = match m {
        0 => vec![0],
        1 => vec![],
        _ => vec![1, 2 * m - 1],
    };
    let mut choices = vec![ExponentChoice::new(Natural::from(2u32), two_exponents)];
    choices.extend(
        leg.odd_factors()
            .iter()
            .map(|(p, s)| ExponentChoice::new(p.clone(), vec![0, 2 * s])),
    );
    products_below(&choices, leg.value())
}

/// Number of admissible Δ for a leg, by the divisor-count formula.
///
/// Odd `a`: `(τ(a²) − 1)/2`. Even `a = 2^m·u`: `((2m − 1)·τ(u²) − 1)/2`.
pub fn valid_delta_count(leg: &Factorization) -> Natural {
    let m = leg.two_exponent();
    let odd_tau: Natural = leg
        .odd_factors()
        .iter()
        .map(|(_, s)| Natural::from(2 * s + 1))
        .product();
    let pairs = if m == 0 {
        odd_tau
    } else {
        odd_tau * (2 * m - 1)
    };
    (pairs - 1u32) >> 1u32
}

/// Total, primitive and non-primitive counts for leg `a`. Only Δ values are
/// derived; no `b` or `c` is computed.
pub fn forecast_counts(a: &Natural, budget: FactorBudget) -> Result<TripleForecast> {
    require_positive(a)?;
    let f = factorize(a, budget)?;
    let total = valid_delta_count(&f)
        .to_u64()
        .ok_or_else(|| Error::domain("triple count does not fit in 64 bits"))?;
    let primitive_deltas: BTreeSet<Natural> = primitive_deltas_from(&f).into_iter().collect();
    let primitive = primitive_deltas.len() as u64;
    Ok(TripleForecast {
        leg: a.clone(),
        total,
        primitive,
        non_primitive: total - primitive,
        primitive_deltas,
    })
}

/// Euclid's triple `(m² − n², 2mn, m² + n²)` for `m > n ≥ 1`.
pub fn euclid_generate(m: u64, n: u64) -> Result<Triple> {
    if n < 1 || m <= n {
        return Err(Error::domain(format!("need m > n >= 1, got m={m}, n={n}")));
    }
    let (m, n) = (Natural::from(m), Natural::from(n));
    let a = &m * &m - &n * &n;
    let b = Natural::from(2u32) * &m * &n;
    let c = &m * &m + &n * &n;
    Ok(Triple::classified(a, b, c))
}

/// Brute-force triples for leg `a`: scans every `b < a²/2` for a square `a² + b²`.
///
/// Shares no logic with the Δ enumeration. Refuses legs above `cap`.
pub fn oracle_triples(a: &Natural, cap: u64) -> Result<Vec<Triple>> {
    require_positive(a)?;
    let small = a
        .to_u64()
        .filter(|&v| v <= cap)
        .ok_or_else(|| Error::OracleCapExceeded {
            value: a.clone(),
            cap: Natural::from(cap),
        })?;
    let square = u64::try_from(u128::from(small) * u128::from(small)).map_err(|_| {
        Error::OracleCapExceeded {
            value: a.clone(),
            cap: Natural::from(cap),
        }
    })?;
    let hits = square_completions_scan(square, square.saturating_sub(1) / 2).ok_or_else(|| {
        Error::OracleCapExceeded {
            value: a.clone(),
            cap: Natural::from(cap),
        }
    })?;
    Ok(hits
        .into_iter()
        .map(|(b, c)| Triple::classified(a.clone(), Natural::from(b), Natural::from(c)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Natural {
        Natural::from(v)
    }

    fn nums(v: &[u64]) -> Vec<Natural> {
        v.iter().copied().map(Natural::from).collect()
    }

    fn set(v: &[u64]) -> BTreeSet<Natural> {
        v.iter().copied().map(Natural::from).collect()
    }

    fn budget() -> FactorBudget {
        FactorBudget::default()
    }

    #[test]
    fn valid_delta_examples() {
        assert_eq!(
            valid_deltas(&n(60), budget()).unwrap(),
            nums(&[2, 4, 6, 8, 10, 12, 18, 20, 24, 30, 36, 40, 50])
        );
        assert!(valid_deltas(&n(1), budget()).unwrap().is_empty());
        assert!(valid_deltas(&n(2), budget()).unwrap().is_empty());
        assert_eq!(valid_deltas(&n(15), budget()).unwrap(), nums(&[1, 3, 5, 9]));
    }

    #[test]
    fn triples_from_worked_deltas() {
        let t = triple_from_delta(&n(792), &n(2)).unwrap();
        assert_eq!((t.b.clone(), t.c.clone()), (n(156815), n(156817)));
        assert_eq!(t.classification, Classification::Primitive);

        let t = triple_from_delta(&n(60), &n(20)).unwrap();
        assert_eq!((t.b.clone(), t.c.clone()), (n(80), n(100)));
        assert_eq!(t.classification, Classification::NonPrimitive);

        let t = triple_from_delta(&n(3), &n(1)).unwrap();
        assert_eq!((t.b.clone(), t.c.clone()), (n(4), n(5)));
        assert!(t.classification.is_primitive());

        let t = triple_from_delta(&n(32), &n(8)).unwrap();
        assert_eq!(
            (t.b.clone(), t.c.clone(), t.delta.clone()),
            (n(60), n(68), n(8))
        );
        assert_eq!(t.classification, Classification::NonPrimitive);
    }

    #[test]
    fn invalid_deltas_name_the_broken_condition() {
        let violation = |a: u64, d: u64| match triple_from_delta(&n(a), &n(d)) {
            Err(Error::InvalidDelta { violation, .. }) => violation,
            other => panic!("expected InvalidDelta, got {other:?}"),
        };
        assert_eq!(violation(60, 0), DeltaViolation::Zero);
        assert_eq!(violation(60, 60), DeltaViolation::TooLarge);
        assert_eq!(violation(792, 2592), DeltaViolation::TooLarge);
        assert_eq!(violation(60, 7), DeltaViolation::NotDivisor);
        assert_eq!(violation(60, 9), DeltaViolation::ParityMismatch);
        assert!(matches!(
            triple_from_delta(&n(0), &n(1)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn filtered_enumerations() {
        let prim = all_triples(&n(60), ClassFilter::PrimitiveOnly, budget()).unwrap();
        let deltas: Vec<_> = prim.iter().map(|t| t.delta.clone()).collect();
        assert_eq!(deltas, nums(&[2, 8, 18, 50]));

        let prim = all_triples(&n(99), ClassFilter::PrimitiveOnly, budget()).unwrap();
        let rows: Vec<_> = prim
            .iter()
            .map(|t| (t.delta.clone(), t.b.clone(), t.c.clone()))
            .collect();
        assert_eq!(rows, vec![(n(1), n(4900), n(4901)), (n(81), n(20), n(101))]);

        assert!(all_triples(&n(2), ClassFilter::All, budget())
            .unwrap()
            .is_empty());
        assert_eq!(
            all_triples(&n(60), ClassFilter::NonPrimitiveOnly, budget())
                .unwrap()
                .len(),
            9
        );
    }

    #[test]
    fn predictor_examples() {
        let p = |a| predict_primitive_deltas(&n(a), budget()).unwrap();
        assert_eq!(p(32), set(&[2]));
        assert_eq!(p(792), set(&[2, 32, 162, 242]));
        assert_eq!(p(6), set(&[]));
        assert_eq!(p(99), set(&[1, 81]));
        assert_eq!(p(1), set(&[]));
    }

    #[test]
    fn forecasts() {
        let f = forecast_counts(&n(60), budget()).unwrap();
        assert_eq!((f.total, f.primitive, f.non_primitive), (13, 4, 9));
        assert_eq!(forecast_counts(&n(792), budget()).unwrap().primitive, 4);
        let f = forecast_counts(&n(15), budget()).unwrap();
        assert_eq!((f.total, f.primitive), (4, 2));
        assert_eq!(forecast_counts(&n(1), budget()).unwrap().total, 0);
        assert_eq!(forecast_counts(&n(2), budget()).unwrap().total, 0);
    }

    #[test]
    fn euclid_examples() {
        let t = euclid_generate(2, 1).unwrap();
        assert_eq!((t.a, t.b, t.c), (n(3), n(4), n(5)));
        let t = euclid_generate(3, 2).unwrap();
        assert_eq!((t.a, t.b, t.c), (n(5), n(12), n(13)));
        assert!(t.classification.is_primitive());
        assert!(euclid_generate(2, 2).is_err());
        assert!(euclid_generate(3, 0).is_err());
    }

    #[test]
    fn oracle_examples() {
        let rows: Vec<_> = oracle_triples(&n(15), DEFAULT_ORACLE_CAP)
            .unwrap()
            .into_iter()
            .map(|t| (t.b, t.c))
            .collect();
        assert_eq!(
            rows,
            vec![
                (n(8), n(17)),
                (n(20), n(25)),
                (n(36), n(39)),
                (n(112), n(113))
            ]
        );
        assert!(oracle_triples(&n(2), DEFAULT_ORACLE_CAP)
            .unwrap()
            .is_empty());
        assert!(oracle_triples(&n(1), DEFAULT_ORACLE_CAP)
            .unwrap()
            .is_empty());
        assert_eq!(
            oracle_triples(&n(60), DEFAULT_ORACLE_CAP).unwrap().len(),
            13
        );
        assert!(matches!(
            oracle_triples(&n(2001), DEFAULT_ORACLE_CAP),
            Err(Error::OracleCapExceeded { .. })
        ));
    }
}
