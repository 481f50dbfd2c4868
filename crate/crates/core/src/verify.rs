//! Differential sweeps: Δ enumeration against brute force, predictors against
//! gcd ground truth, Euclid's formula against both legs, and the divisor-count
//! formula against enumeration.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::corpus;
use crate::error::{Error, Result};
use crate::numeric::{factorize, gcd_all, FactorBudget, Natural};
use crate::par::{self, Execution};
use crate::triple::{self, Triple};
use crate::tuple::{self, TupleSolution};
use crate::{ClassFilter, Classification};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    TriplesOracle,
    TuplesOracle,
    Predictor,
    EuclidCoverage,
    Counts,
}

impl VerifyMode {
    pub fn name(self) -> &'static str {
        match self {
            VerifyMode::TriplesOracle => "triples-oracle",
            VerifyMode::TuplesOracle => "tuples-oracle",
            VerifyMode::Predictor => "predictor",
            VerifyMode::EuclidCoverage => "euclid-coverage",
            VerifyMode::Counts => "counts",
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyBounds {
    /// Legs `1..=max_leg` for the triple sweeps.
    pub max_leg: u64,
    /// Euclid pairs with `m ≤ max_m`.
    pub max_m: u64,
    /// `(15, 36, 39)` is checked absent from Euclid output for `m ≤ gap_max_m`.
    pub gap_max_m: u64,
    /// Size of the random leg-list corpus.
    pub cases: usize,
    /// Largest `k` in the random corpus.
    pub max_k: u64,
    pub corpus_seed: u64,
    pub budget: FactorBudget,
    pub exec: Execution,
}

impl VerifyBounds {
    /// Defaults sized for each mode.
    pub fn for_mode(mode: VerifyMode) -> Self {
        let max_leg = match mode {
            VerifyMode::TriplesOracle => 300,
            _ => 2000,
        };
        VerifyBounds {
            max_leg,
            max_m: 50,
            gap_max_m: 200,
            cases: corpus::DEFAULT_CASES,
            max_k: corpus::DEFAULT_MAX_K,
            corpus_seed: corpus::CORPUS_SEED,
            budget: FactorBudget::default(),
            exec: Execution::default(),
        }
    }

    fn leg_sets(&self) -> Vec<Vec<Natural>> {
        let mut sets = corpus::reference_leg_sets();
        sets.extend(corpus::random_leg_sets(
            self.cases,
            self.max_k,
            self.corpus_seed,
        ));
        sets
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub input: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub mode: VerifyMode,
    /// Number of inputs examined.
    pub checked: u64,
    pub discrepancies: Vec<Discrepancy>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

pub fn run(mode: VerifyMode, bounds: &VerifyBounds) -> Result<VerifyReport> {
    let (checked, discrepancies) = match mode {
        VerifyMode::TriplesOracle => triples_oracle(bounds)?,
        VerifyMode::TuplesOracle => tuples_oracle(bounds)?,
        VerifyMode::Predictor => predictor(bounds)?,
        VerifyMode::EuclidCoverage => euclid_coverage(bounds)?,
        VerifyMode::Counts => counts(bounds)?,
    };
    Ok(VerifyReport {
        mode,
        checked,
        discrepancies,
    })
}

type Sweep = Result<(u64, Vec<Discrepancy>)>;

fn flatten(results: Vec<Result<Vec<Discrepancy>>>) -> Result<Vec<Discrepancy>> {
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

fn show(values: &[Natural]) -> String {
    let parts: Vec<String> = values.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn show_set(values: &BTreeSet<Natural>) -> String {
    show(&values.iter().cloned().collect::<Vec<_>>())
}

fn triple_key(t: &Triple) -> (Natural, Natural, Classification) {
    (t.b.clone(), t.c.clone(), t.classification)
}

fn triples_oracle(bounds: &VerifyBounds) -> Sweep {
    let cap = triple::DEFAULT_ORACLE_CAP;
    if bounds.max_leg > cap {
        return Err(Error::OracleCapExceeded {
            value: Natural::from(bounds.max_leg),
            cap: Natural::from(cap),
        });
    }
    let results = par::map_range(bounds.exec, 1, bounds.max_leg, |a| {
        let leg = Natural::from(a);
        let fast = triple::all_triples(&leg, ClassFilter::All, bounds.budget)?;
        let slow = triple::oracle_triples(&leg, cap)?;
        let mut out = Vec::new();
        for t in fast.iter().filter(|t| !t.holds()) {
            out.push(Discrepancy {
                input: format!("a={a}"),
                detail: format!("({}, {}, {}) does not satisfy a²+b²=c²", t.a, t.b, t.c),
            });
        }
        let fast: BTreeSet<_> = fast.iter().map(triple_key).collect();
        let slow: BTreeSet<_> = slow.iter().map(triple_key).collect();
        for (b, c, _) in fast.difference(&slow) {
            out.push(Discrepancy {
                input: format!("a={a}"),
                detail: format!("delta method emitted ({a}, {b}, {c}) not found by the scan"),
            });
        }
        for (b, c, _) in slow.difference(&fast) {
            out.push(Discrepancy {
                input: format!("a={a}"),
                detail: format!("scan found ({a}, {b}, {c}) missing from the delta method"),
            });
        }
        Ok(out)
    });
    Ok((bounds.max_leg, flatten(results)?))
}

fn tuple_key(s: &TupleSolution) -> (Natural, Natural, Classification) {
    (s.completion.clone(), s.hypotenuse.clone(), s.classification)
}

fn tuples_oracle(bounds: &VerifyBounds) -> Sweep {
    let cap = tuple::DEFAULT_ORACLE_CAP;
    if bounds.max_k > cap {
        return Err(Error::OracleCapExceeded {
            value: Natural::from(bounds.max_k),
            cap: Natural::from(cap),
        });
    }
    let sets = bounds.leg_sets();
    let results = par::map(bounds.exec, &sets, |legs| {
        let input = format!("legs={}", show(legs));
        let report = tuple::feasibility(legs)?;
        let fast = tuple::all_completions(legs, ClassFilter::All, bounds.budget)?;
        let slow = tuple::oracle_completions(legs, cap)?;
        let mut out = Vec::new();
        for s in fast.iter().filter(|s| !s.holds()) {
            out.push(Discrepancy {
                input: input.clone(),
                detail: format!(
                    "completion {} / {} does not balance",
                    s.completion, s.hypotenuse
                ),
            });
        }
        if !report.feasible && !slow.is_empty() {
            out.push(Discrepancy {
                input: input.clone(),
                detail: format!(
                    "k={} reported infeasible but the scan found solutions",
                    report.k
                ),
            });
        }
        let fast: BTreeSet<_> = fast.iter().map(tuple_key).collect();
        let slow: BTreeSet<_> = slow.iter().map(tuple_key).collect();
        for (c, d, _) in fast.difference(&slow) {
            out.push(Discrepancy {
                input: input.clone(),
                detail: format!("delta method emitted ({c}, {d}) not found by the scan"),
            });
        }
        for (c, d, _) in slow.difference(&fast) {
            out.push(Discrepancy {
                input: input.clone(),
                detail: format!("scan found ({c}, {d}) missing from the delta method"),
            });
        }
        Ok(out)
    });
    Ok((sets.len() as u64, flatten(results)?))
}

fn predictor(bounds: &VerifyBounds) -> Sweep {
    let legs_results = par::map_range(bounds.exec, 1, bounds.max_leg, |a| {
        let leg = Natural::from(a);
        let predicted = triple::predict_primitive_deltas(&leg, bounds.budget)?;
        let truth: BTreeSet<Natural> = triple::all_triples(&leg, ClassFilter::All, bounds.budget)?
            .into_iter()
            .filter(|t| gcd_all([&t.a, &t.b, &t.c]).is_ok_and(|g| g == Natural::from(1u32)))
            .map(|t| t.delta)
            .collect();
        let as_tuple = tuple::predict_primitive_deltas_tuple(&[leg], bounds.budget)?;
        let mut out = Vec::new();
        if predicted != truth {
            out.push(Discrepancy {
                input: format!("a={a}"),
                detail: format!(
                    "triple predictor {} vs gcd truth {}",
                    show_set(&predicted),
                    show_set(&truth)
                ),
            });
        }
        if predicted != as_tuple {
            out.push(Discrepancy {
                input: format!("a={a}"),
                detail: format!(
                    "triple predictor {} vs tuple predictor {}",
                    show_set(&predicted),
                    show_set(&as_tuple)
                ),
            });
        }
        Ok(out)
    });
    let sets = bounds.leg_sets();
    let tuple_results = par::map(bounds.exec, &sets, |legs| {
        let predicted = tuple::predict_primitive_deltas_tuple(legs, bounds.budget)?;
        let truth: BTreeSet<Natural> =
            tuple::all_completions(legs, ClassFilter::All, bounds.budget)?
                .into_iter()
                .filter(|s| gcd_all(&s.entries()).is_ok_and(|g| g == Natural::from(1u32)))
                .map(|s| s.delta)
                .collect();
        Ok(if predicted == truth {
            Vec::new()
        } else {
            vec![Discrepancy {
                input: format!("legs={}", show(legs)),
                detail: format!(
                    "tuple predictor {} vs gcd truth {}",
                    show_set(&predicted),
                    show_set(&truth)
                ),
            }]
        })
    });
    let mut out = flatten(legs_results)?;
    out.extend(flatten(tuple_results)?);
    Ok((bounds.max_leg + sets.len() as u64, out))
}

fn has_leg_pair(triples: &[Triple], b: &Natural, c: &Natural) -> bool {
    triples.iter().any(|t| t.b == *b && t.c == *c)
}

fn euclid_coverage(bounds: &VerifyBounds) -> Sweep {
    let pairs: Vec<(u64, u64)> = (2..=bounds.max_m)
        .flat_map(|m| (1..m).map(move |n| (m, n)))
        .filter(|&(m, n)| m.gcd(&n) == 1 && (m + n) % 2 == 1)
        .collect();
    let results = par::map(bounds.exec, &pairs, |&(m, n)| {
        let t = triple::euclid_generate(m, n)?;
        let mut out = Vec::new();
        let by_a = triple::all_triples(&t.a, ClassFilter::All, bounds.budget)?;
        if !has_leg_pair(&by_a, &t.b, &t.c) {
            out.push(Discrepancy {
                input: format!("m={m},n={n}"),
                detail: format!("({}, {}, {}) missing for leg {}", t.a, t.b, t.c, t.a),
            });
        }
        let by_b = triple::all_triples(&t.b, ClassFilter::All, bounds.budget)?;
        if !has_leg_pair(&by_b, &t.a, &t.c) {
            out.push(Discrepancy {
                input: format!("m={m},n={n}"),
                detail: format!("({}, {}, {}) missing for leg {}", t.b, t.a, t.c, t.b),
            });
        }
        if !t.classification.is_primitive() {
            out.push(Discrepancy {
                input: format!("m={m},n={n}"),
                detail: "coprime opposite-parity pair gave a non-primitive triple".into(),
            });
        }
        Ok(out)
    });
    let mut out = flatten(results)?;

    // (15, 36, 39) comes from the delta method but never from Euclid's formula.
    let gap = [
        Natural::from(15u32),
        Natural::from(36u32),
        Natural::from(39u32),
    ];
    let by_15 = triple::all_triples(&gap[0], ClassFilter::All, bounds.budget)?;
    if !has_leg_pair(&by_15, &gap[1], &gap[2]) {
        out.push(Discrepancy {
            input: "a=15".into(),
            detail: "(15, 36, 39) not produced by the delta method".into(),
        });
    }
    let mut gap_checked = 0u64;
    for m in 2..=bounds.gap_max_m {
        for n in 1..m {
            gap_checked += 1;
            let t = triple::euclid_generate(m, n)?;
            let hit = t.c == gap[2]
                && ((t.a == gap[0] && t.b == gap[1]) || (t.a == gap[1] && t.b == gap[0]));
            if hit {
                out.push(Discrepancy {
                    input: format!("m={m},n={n}"),
                    detail: "Euclid's formula produced (15, 36, 39)".into(),
                });
            }
        }
    }
    Ok((pairs.len() as u64 + gap_checked, out))
}

fn counts(bounds: &VerifyBounds) -> Sweep {
    let results = par::map_range(bounds.exec, 1, bounds.max_leg, |a| {
        let leg = Natural::from(a);
        let f = factorize(&leg, bounds.budget)?;
        let enumerated = triple::all_triples(&leg, ClassFilter::All, bounds.budget)?;
        let forecast = triple::forecast_counts(&leg, bounds.budget)?;
        let formula = triple::valid_delta_count(&f);
        let primitive = enumerated
            .iter()
            .filter(|t| t.classification.is_primitive())
            .count() as u64;
        let mut out = Vec::new();
        let mut flag = |detail: String| {
            out.push(Discrepancy {
                input: format!("a={a}"),
                detail,
            })
        };
        if formula != Natural::from(enumerated.len()) {
            flag(format!(
                "formula {formula} vs {} enumerated",
                enumerated.len()
            ));
        }
        if forecast.total != enumerated.len() as u64 {
            flag(format!(
                "forecast total {} vs {} enumerated",
                forecast.total,
                enumerated.len()
            ));
        }
        if forecast.primitive != primitive {
            flag(format!(
                "forecast primitive {} vs {primitive} by gcd",
                forecast.primitive
            ));
        }
        if forecast.primitive + forecast.non_primitive != forecast.total {
            flag("forecast parts do not sum to the total".into());
        }
        Ok(out)
    });
    Ok((bounds.max_leg, flatten(results)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(mode: VerifyMode) -> VerifyBounds {
        let mut b = VerifyBounds::for_mode(mode);
        b.max_leg = 120;
        b.max_m = 12;
        b.gap_max_m = 40;
        b.cases = 60;
        b.max_k = 20_000;
        b
    }

    #[test]
    fn every_mode_is_clean_on_small_bounds() {
        for mode in [
            VerifyMode::TriplesOracle,
            VerifyMode::TuplesOracle,
            VerifyMode::Predictor,
            VerifyMode::EuclidCoverage,
            VerifyMode::Counts,
        ] {
            let report = run(mode, &small(mode)).unwrap();
            assert!(
                report.passed(),
                "{}: {:?}",
                mode.name(),
                report.discrepancies
            );
            assert!(report.checked > 0);
        }
    }

    #[test]
    fn sequential_and_parallel_reports_match() {
        let mut b = small(VerifyMode::Predictor);
        b.exec = Execution::Sequential;
        let seq = run(VerifyMode::Predictor, &b).unwrap();
        b.exec = Execution::Parallel;
        let par = run(VerifyMode::Predictor, &b).unwrap();
        assert_eq!(seq, par);
    }
}
