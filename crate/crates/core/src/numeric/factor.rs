//! Prime factorization: trial division, Miller–Rabin, then Brent's variant of
//! Pollard rho. Cofactors that fit in 64 bits take a fixed-width path; larger
//! ones use `BigUint` arithmetic.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::Natural;
use crate::error::{Error, Result};

const TRIAL_LIMIT: u32 = 1000;
const RHO_BATCH: u64 = 128;
const MR_BASES: [u64; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Limit on the number of rho iterations spent on a single factorization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorBudget {
    iterations: u64,
}

impl FactorBudget {
    pub const DEFAULT_ITERATIONS: u64 = 2_000_000;

    pub fn new(iterations: u64) -> Self {
        FactorBudget { iterations }
    }

    pub fn unlimited() -> Self {
        FactorBudget {
            iterations: u64::MAX,
        }
    }

    pub fn iterations(self) -> u64 {
        self.iterations
    }
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget::new(Self::DEFAULT_ITERATIONS)
    }
}

struct Effort<'a> {
    used: u64,
    limit: u64,
    target: &'a Natural,
}

impl Effort<'_> {
    fn spend(&mut self, steps: u64) -> Result<()> {
        self.used = self.used.saturating_add(steps);
        if self.used > self.limit {
            return Err(Error::BudgetExceeded {
                value: self.target.clone(),
                limit: self.limit,
            });
        }
        Ok(())
    }
}

/// Complete prime factorization of a positive integer.
///
/// Primes are strictly increasing and every exponent is at least one. The
/// factorization of 1 is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    factors: Vec<(Natural, u32)>,
    value: Natural,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization {
            factors: Vec::new(),
            value: Natural::one(),
        }
    }

    /// Builds a factorization from `(prime, exponent)` pairs, checking every invariant.
    pub fn from_factors(factors: Vec<(Natural, u32)>) -> Result<Self> {
        let mut value = Natural::one();
        for (i, (p, e)) in factors.iter().enumerate() {
            if *e == 0 {
                return Err(Error::domain(format!("zero exponent for {p}")));
            }
            if i > 0 && factors[i - 1].0 >= *p {
                return Err(Error::domain("primes must be strictly increasing"));
            }
            if !is_probable_prime(p) {
                return Err(Error::domain(format!("{p} is not prime")));
            }
            value *= p.pow(*e);
        }
        Ok(Factorization { factors, value })
    }

    pub fn value(&self) -> &Natural {
        &self.value
    }

    pub fn factors(&self) -> &[(Natural, u32)] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent_of(&self, prime: &Natural) -> u32 {
        self.factors
            .binary_search_by(|(p, _)| p.cmp(prime))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// Exponent of 2.
    pub fn two_exponent(&self) -> u32 {
        match self.factors.first() {
            Some((p, e)) if *p == Natural::from(2u32) => *e,
            _ => 0,
        }
    }

    /// The odd prime powers, ascending.
    pub fn odd_factors(&self) -> &[(Natural, u32)] {
        let skip = usize::from(self.two_exponent() > 0);
        &self.factors[skip..]
    }

    /// Factorization of `value²`, without refactoring.
    pub fn squared(&self) -> Self {
        Factorization {
            factors: self
                .factors
                .iter()
                .map(|(p, e)| (p.clone(), e * 2))
                .collect(),
            value: &self.value * &self.value,
        }
    }

    /// τ(value), the number of divisors.
    pub fn divisor_count(&self) -> Natural {
        self.factors
            .iter()
            .map(|(_, e)| Natural::from(*e) + 1u32)
            .product()
    }
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i < n {
            if sieve[i] {
                for j in (i * i..n).step_by(i) {
                    sieve[j] = false;
                }
            }
            i += 1;
        }
        (0..n as u32).filter(|&i| sieve[i as usize]).collect()
    })
}

/// Factorizes `n ≥ 1` completely, or fails with [`Error::BudgetExceeded`].
pub fn factorize(n: &Natural, budget: FactorBudget) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::domain("cannot factorize 0"));
    }
    let mut primes: BTreeMap<Natural, u32> = BTreeMap::new();
    let mut rest = n.clone();
    for &p in small_primes() {
        let pp = u64::from(p) * u64::from(p);
        if Natural::from(pp) > rest {
            break;
        }
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            primes.insert(Natural::from(p), e);
        }
    }

    let mut effort = Effort {
        used: 0,
        limit: budget.iterations,
        target: n,
    };
    let mut pending = vec![rest];
    while let Some(m) = pending.pop() {
        if m.is_one() {
            continue;
        }
        if is_trial_prime(&m) || is_probable_prime(&m) {
            *primes.entry(m).or_insert(0) += 1;
            continue;
        }
        if let Some((root, k)) = perfect_power(&m) {
            pending.extend(std::iter::repeat_n(root, k as usize));
            continue;
        }
        let d = split(&m, &mut effort)?;
        let other = &m / &d;
        pending.push(d);
        pending.push(other);
    }

    Ok(Factorization {
        factors: primes.into_iter().collect(),
        value: n.clone(),
    })
}

// Any cofactor left after trial division below TRIAL_LIMIT and smaller than
// TRIAL_LIMIT² has no factor below its square root.
fn is_trial_prime(m: &Natural) -> bool {
    let limit = u64::from(TRIAL_LIMIT) * u64::from(TRIAL_LIMIT);
    match m.to_u64() {
        Some(v) => v > 1 && v < limit,
        None => false,
    }
}

// Smallest-root representation m = root^k with k ≥ 2, if any. Only called on
// cofactors free of primes below TRIAL_LIMIT, so k ≤ log_TRIAL_LIMIT(m).
fn perfect_power(m: &Natural) -> Option<(Natural, u32)> {
    let max_k = (m.bits() / u64::from(TRIAL_LIMIT.ilog2())) as u32;
    (2..=max_k.max(2)).rev().find_map(|k| {
        let root = m.nth_root(k);
        (root.pow(k) == *m).then_some((root, k))
    })
}

fn split(m: &Natural, effort: &mut Effort<'_>) -> Result<Natural> {
    match m.to_u64() {
        Some(v) => rho_u64(v, effort).map(Natural::from),
        None => rho_big(m, effort),
    }
}

/// Strong probable-prime test with fixed bases; deterministic below 3.3·10²⁴.
pub fn is_probable_prime(n: &Natural) -> bool {
    match n.to_u64() {
        Some(v) => is_prime_u64(v),
        None => is_sprp_big(n),
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES[..12] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES[..12] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn is_sprp_big(n: &Natural) -> bool {
    if n.is_even() {
        return false;
    }
    let one = Natural::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &a in &MR_BASES {
        let a = Natural::from(a);
        if (n % &a).is_zero() {
            return *n == a;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

// Brent's cycle detection with batched gcds. Returns a proper divisor of n.
fn rho_u64(n: u64, effort: &mut Effort<'_>) -> Result<u64> {
    if n.is_multiple_of(2) {
        return Ok(2);
    }
    for c in 1u64.. {
        let step = |x: u64| ((x as u128 * x as u128 + c as u128) % n as u128) as u64;
        let mut y: u64 = 2;
        let mut x = y;
        let mut ys = y;
        let mut q: u64 = 1;
        let mut g: u64 = 1;
        let mut r: u64 = 1;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y);
            }
            effort.spend(r)?;
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let batch = RHO_BATCH.min(r - k);
                for _ in 0..batch {
                    y = step(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                effort.spend(batch)?;
                g = q.gcd(&n);
                k += batch;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = step(ys);
                effort.spend(1)?;
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Ok(g);
        }
    }
    unreachable!("rho constant space exhausted")
}

fn rho_big(n: &Natural, effort: &mut Effort<'_>) -> Result<Natural> {
    if n.is_even() {
        return Ok(Natural::from(2u32));
    }
    let one = Natural::one();
    for c in 1u32.. {
        let step = |x: &Natural| (x * x + c) % n;
        let mut y = Natural::from(2u32);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = one.clone();
        let mut g = one.clone();
        let mut r: u64 = 1;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            effort.spend(r)?;
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let batch = RHO_BATCH.min(r - k);
                for _ in 0..batch {
                    y = step(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                effort.spend(batch)?;
                g = q.gcd(n);
                k += batch;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = step(&ys);
                effort.spend(1)?;
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return Ok(g);
        }
    }
    unreachable!("rho constant space exhausted")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Natural {
        Natural::from(v)
    }

    fn pairs(f: &Factorization) -> Vec<(u64, u32)> {
        f.factors()
            .iter()
            .map(|(p, e)| (p.to_u64().unwrap(), *e))
            .collect()
    }

    #[test]
    fn worked_factorizations() {
        let b = FactorBudget::default();
        assert_eq!(
            pairs(&factorize(&n(792), b).unwrap()),
            vec![(2, 3), (3, 2), (11, 1)]
        );
        assert!(factorize(&n(1), b).unwrap().is_unit());
        assert_eq!(
            pairs(&factorize(&n(12096), b).unwrap()),
            vec![(2, 6), (3, 3), (7, 1)]
        );
        assert_eq!(
            pairs(&factorize(&n(62325), b).unwrap()),
            vec![(3, 2), (5, 2), (277, 1)]
        );
    }

    #[test]
    fn zero_is_a_domain_error() {
        assert!(matches!(
            factorize(&n(0), FactorBudget::default()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn splits_large_semiprimes() {
        let p: u64 = 4_294_967_291; // largest prime below 2^32
        let q: u64 = 4_294_967_279;
        let f = factorize(&(n(p) * n(q)), FactorBudget::default()).unwrap();
        assert_eq!(pairs(&f), vec![(q, 1), (p, 1)]);

        let big_p = Natural::from(1_000_000_007u64);
        let big_q = Natural::from(998_244_353u64);
        let r = Natural::from(18_446_744_073_709_551_557u64); // prime near 2^64
        let value = &big_p * &big_q * &r;
        let f = factorize(&value, FactorBudget::default()).unwrap();
        assert_eq!(f.factors().len(), 3);
        assert_eq!(f.value(), &value);
    }

    #[test]
    fn powers_of_large_primes() {
        let p = n(1_000_003);
        let f = factorize(&(&p * &p * &p * &p), FactorBudget::default()).unwrap();
        assert_eq!(f.factors(), &[(p, 4)]);
        let q = n(18_446_744_073_709_551_557);
        let f = factorize(&q.pow(3u32), FactorBudget::new(0)).unwrap();
        assert_eq!(f.factors(), &[(q.clone(), 3)]);
        let f = factorize(
            &(q.pow(6u32) * n(1_000_003).pow(2u32)),
            FactorBudget::default(),
        )
        .unwrap();
        assert_eq!(f.factors(), &[(n(1_000_003), 2), (q, 6)]);
    }

    #[test]
    fn budget_is_enforced() {
        let p: u64 = 4_294_967_291;
        let q: u64 = 4_294_967_279;
        let err = factorize(&(n(p) * n(q)), FactorBudget::new(10)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { limit: 10, .. }));
    }

    #[test]
    fn prime_checks() {
        assert!(is_probable_prime(&n(2)));
        assert!(!is_probable_prime(&n(1)));
        assert!(!is_probable_prime(&n(3_215_031_751))); // strong pseudoprime to 2,3,5,7
        assert!(is_probable_prime(&n(18_446_744_073_709_551_557)));
        let m127 = (Natural::one() << 127u32) - 1u32;
        assert!(is_probable_prime(&m127));
        assert!(!is_probable_prime(&(&m127 * 3u32)));
    }

    #[test]
    fn from_factors_validates() {
        assert!(Factorization::from_factors(vec![(n(3), 1), (n(2), 1)]).is_err());
        assert!(Factorization::from_factors(vec![(n(4), 1)]).is_err());
        assert!(Factorization::from_factors(vec![(n(2), 0)]).is_err());
        let f = Factorization::from_factors(vec![(n(2), 3), (n(3), 2), (n(11), 1)]).unwrap();
        assert_eq!(f.value(), &n(792));
        assert_eq!(f.squared().value(), &n(792 * 792));
        assert_eq!(f.divisor_count(), n(24));
        assert_eq!(f.two_exponent(), 3);
        assert_eq!(f.odd_factors().len(), 2);
        assert_eq!(f.exponent_of(&n(3)), 2);
        assert_eq!(f.exponent_of(&n(5)), 0);
    }
}
