//! Growing tuples from a single seed.
//!
//! Starting from `a_1`, each extension forms a triple on the running
//! hypotenuse `h`: `(h, x, h')` with `h² + x² = h'²`. Appending `x` keeps
//! `a_1² + … + a_{n−1}² = h'²`. Every admissible Δ on `h` opens a branch.

use num_integer::Integer;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::numeric::{gcd_all, FactorBudget, Natural};
use crate::par::{self, Execution};
use crate::triple::{self, triple_from_delta};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    legs: Vec<Natural>,
    hypotenuse: Natural,
    deltas: Vec<Natural>,
}

impl Chain {
    /// The depth-0 chain: one leg, which is also its own hypotenuse.
    pub fn seed(seed: Natural) -> Self {
        Chain {
            legs: vec![seed.clone()],
            hypotenuse: seed,
            deltas: Vec::new(),
        }
    }

    pub fn legs(&self) -> &[Natural] {
        &self.legs
    }

    pub fn hypotenuse(&self) -> &Natural {
        &self.hypotenuse
    }

    pub fn deltas(&self) -> &[Natural] {
        &self.deltas
    }

    /// Number of extensions performed.
    pub fn depth(&self) -> usize {
        self.deltas.len()
    }

    /// Appends the leg of the triple on the current hypotenuse with gap `delta`.
    pub fn extend(&self, delta: &Natural) -> Result<Chain> {
        let t = triple_from_delta(&self.hypotenuse, delta)?;
        let mut legs = self.legs.clone();
        legs.push(t.b);
        let mut deltas = self.deltas.clone();
        deltas.push(delta.clone());
        Ok(Chain {
            legs,
            hypotenuse: t.c,
            deltas,
        })
    }

    /// Recomputes `Σ legs² = hypotenuse²`.
    pub fn holds(&self) -> bool {
        let sum: Natural = self.legs.iter().map(|l| l * l).sum();
        sum == &self.hypotenuse * &self.hypotenuse
    }

    /// The triples `(hᵢ, legᵢ₊₁, hᵢ₊₁)` formed at each extension, in order.
    pub fn steps(&self) -> Vec<[Natural; 3]> {
        let mut h = self.legs[0].clone();
        self.legs[1..]
            .iter()
            .zip(&self.deltas)
            .map(|(leg, delta)| {
                let next = leg + delta;
                let step = [h.clone(), leg.clone(), next.clone()];
                h = next;
                step
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchClass {
    PrimitiveBranch,
    NonPrimitiveBranch,
}

/// A branch is primitive when every triple formed along it is primitive.
/// A depth-0 chain has no triples and counts as primitive.
pub fn classify_chain(chain: &Chain) -> BranchClass {
    let all_primitive = chain
        .steps()
        .iter()
        .all(|s| gcd_all(s).map(|g| g.is_one()).unwrap_or(false));
    if all_primitive {
        BranchClass::PrimitiveBranch
    } else {
        BranchClass::NonPrimitiveBranch
    }
}

/// Which Δ values a node expands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainMode {
    /// Every admissible Δ.
    AllBranches,
    /// Only Δ whose triple is primitive.
    PrimitiveTriplesOnly,
    /// Δ = 1 on odd hypotenuses and Δ = 2 on even ones; never factorizes.
    MinDelta,
    /// A single path with the given Δ at each level.
    FixedDeltaList(Vec<Natural>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStrategy {
    pub mode: ChainMode,
    /// Cap on live branches per level; the surplus is dropped and flagged.
    pub max_branches: usize,
    /// A branch stops before producing a hypotenuse above this.
    pub max_magnitude: Natural,
}

impl ChainStrategy {
    pub const DEFAULT_MAX_BRANCHES: usize = 4096;

    pub fn new(mode: ChainMode) -> Self {
        ChainStrategy {
            mode,
            max_branches: Self::DEFAULT_MAX_BRANCHES,
            max_magnitude: Self::default_max_magnitude(),
        }
    }

    /// 10^100.
    pub fn default_max_magnitude() -> Natural {
        Natural::from(10u32).pow(100u32)
    }
}

/// Why a branch stopped short of the requested depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainStop {
    /// The next hypotenuse would have passed `max_magnitude`.
    MagnitudeExceeded { next: Natural },
    /// The mode admits no Δ on the current hypotenuse.
    NoDelta,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainOutcome {
    pub chain: Chain,
    pub stop: Option<ChainStop>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSet {
    /// Sorted by the Δ sequence, i.e. depth-first with Δ ascending at each level.
    pub outcomes: Vec<ChainOutcome>,
    /// Some level had more than `max_branches` children.
    pub truncated: bool,
    /// Children dropped because their hypotenuse passed `max_magnitude`.
    pub magnitude_pruned: usize,
}

fn deltas_for(
    chain: &Chain,
    mode: &ChainMode,
    level: usize,
    budget: FactorBudget,
) -> Result<Vec<Natural>> {
    let h = chain.hypotenuse();
    match mode {
        ChainMode::AllBranches => triple::valid_deltas(h, budget),
        ChainMode::PrimitiveTriplesOnly => Ok(triple::predict_primitive_deltas(h, budget)?
            .into_iter()
            .collect()),
        ChainMode::MinDelta => Ok(vec![Natural::from(if h.is_odd() { 1u32 } else { 2 })]),
        ChainMode::FixedDeltaList(list) => Ok(vec![list[level].clone()]),
    }
}

enum Expansion {
    Children { kept: Vec<Chain>, pruned: usize },
    Stopped(ChainStop),
}

fn expand(
    chain: &Chain,
    strategy: &ChainStrategy,
    level: usize,
    budget: FactorBudget,
) -> Result<Expansion> {
    let deltas = deltas_for(chain, &strategy.mode, level, budget)?;
    if deltas.is_empty() {
        return Ok(Expansion::Stopped(ChainStop::NoDelta));
    }
    let mut kept = Vec::with_capacity(deltas.len());
    let mut smallest_over: Option<Natural> = None;
    for delta in &deltas {
        let child = chain.extend(delta)?;
        if *child.hypotenuse() > strategy.max_magnitude {
            if smallest_over
                .as_ref()
                .is_none_or(|s| child.hypotenuse() < s)
            {
                smallest_over = Some(child.hypotenuse().clone());
            }
            continue;
        }
        kept.push(child);
    }
    let pruned = deltas.len() - kept.len();
    match smallest_over {
        Some(next) if kept.is_empty() => {
            Ok(Expansion::Stopped(ChainStop::MagnitudeExceeded { next }))
        }
        _ => Ok(Expansion::Children { kept, pruned }),
    }
}

/// Expands the Δ tree from `seed` down to `depth` levels.
///
/// Children whose hypotenuse would pass the magnitude limit are dropped and
/// counted; a branch left with no children at all is returned early with a
/// [`ChainStop`], as is a branch that admits no Δ. When a level has
/// more than `max_branches` children the excess (in Δ order) is dropped and
/// the set is flagged truncated.
pub fn build_chains(
    seed: &Natural,
    depth: usize,
    strategy: &ChainStrategy,
    budget: FactorBudget,
    exec: Execution,
) -> Result<ChainSet> {
    if *seed < Natural::from(3u32) {
        return Err(Error::domain("chain seed must be at least 3"));
    }
    if depth == 0 {
        return Err(Error::domain("chain depth must be at least 1"));
    }
    if strategy.max_branches == 0 {
        return Err(Error::domain("max_branches must be at least 1"));
    }
    if let ChainMode::FixedDeltaList(list) = &strategy.mode {
        if list.len() < depth {
            return Err(Error::domain(format!(
                "fixed delta list has {} entries, depth {depth} requested",
                list.len()
            )));
        }
    }
    if *seed > strategy.max_magnitude {
        return Err(Error::MagnitudeExceeded {
            value: seed.clone(),
            limit: strategy.max_magnitude.clone(),
        });
    }

    let mut frontier = vec![Chain::seed(seed.clone())];
    let mut finished = Vec::new();
    let mut truncated = false;
    let mut magnitude_pruned = 0;
    for level in 0..depth {
        let expansions = par::try_map(exec, &frontier, |c| expand(c, strategy, level, budget))?;
        let mut next = Vec::new();
        for (chain, expansion) in frontier.into_iter().zip(expansions) {
            match expansion {
                Expansion::Children { kept, pruned } => {
                    magnitude_pruned += pruned;
                    next.extend(kept);
                }
                Expansion::Stopped(stop) => finished.push(ChainOutcome {
                    chain,
                    stop: Some(stop),
                }),
            }
        }
        if next.len() > strategy.max_branches {
            next.truncate(strategy.max_branches);
            truncated = true;
        }
        frontier = next;
    }
    finished.extend(
        frontier
            .into_iter()
            .map(|chain| ChainOutcome { chain, stop: None }),
    );
    finished.sort_by(|x, y| x.chain.deltas.cmp(&y.chain.deltas));
    Ok(ChainSet {
        outcomes: finished,
        truncated,
        magnitude_pruned,
    })
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

    #[test]
    fn first_worked_branch() {
        let c = Chain::seed(n(15)).extend(&n(3)).unwrap();
        assert_eq!(c.legs(), nums(&[15, 36]).as_slice());
        assert_eq!(c.hypotenuse(), &n(39));
        let c = c.extend(&n(1)).unwrap().extend(&n(1)).unwrap();
        assert_eq!(c.legs(), nums(&[15, 36, 760, 289560]).as_slice());
        assert_eq!(c.hypotenuse(), &n(289561));
        assert!(c.holds());
        assert_eq!(c.depth(), 3);
        assert_eq!(classify_chain(&c), BranchClass::NonPrimitiveBranch);
    }

    #[test]
    fn third_worked_branch() {
        let mut c = Chain::seed(n(15));
        for d in [9, 1, 29, 1] {
            c = c.extend(&n(d)).unwrap();
        }
        assert_eq!(c.legs(), nums(&[15, 8, 144, 348, 71064]).as_slice());
        assert_eq!(c.hypotenuse(), &n(71065));
        assert!(c.holds());
    }

    #[test]
    fn min_delta_from_three() {
        let strategy = ChainStrategy::new(ChainMode::MinDelta);
        let set = build_chains(
            &n(3),
            2,
            &strategy,
            FactorBudget::default(),
            Execution::Sequential,
        )
        .unwrap();
        assert_eq!(set.outcomes.len(), 1);
        let c = &set.outcomes[0].chain;
        assert_eq!(c.legs(), nums(&[3, 4, 12]).as_slice());
        assert_eq!(c.hypotenuse(), &n(13));
        assert_eq!(classify_chain(c), BranchClass::PrimitiveBranch);
    }

    #[test]
    fn single_branch_from_three() {
        let strategy = ChainStrategy::new(ChainMode::AllBranches);
        let set = build_chains(
            &n(3),
            1,
            &strategy,
            FactorBudget::default(),
            Execution::Parallel,
        )
        .unwrap();
        assert_eq!(set.outcomes.len(), 1);
        assert_eq!(set.outcomes[0].chain.legs(), nums(&[3, 4]).as_slice());
        assert_eq!(
            classify_chain(&set.outcomes[0].chain),
            BranchClass::PrimitiveBranch
        );
        assert!(!set.truncated);
    }

    #[test]
    fn rejects_bad_requests() {
        let s = ChainStrategy::new(ChainMode::AllBranches);
        let b = FactorBudget::default();
        assert!(build_chains(&n(2), 1, &s, b, Execution::Sequential).is_err());
        assert!(build_chains(&n(3), 0, &s, b, Execution::Sequential).is_err());
        let mut zero = s.clone();
        zero.max_branches = 0;
        assert!(build_chains(&n(3), 1, &zero, b, Execution::Sequential).is_err());
        let short = ChainStrategy::new(ChainMode::FixedDeltaList(nums(&[1])));
        assert!(build_chains(&n(3), 2, &short, b, Execution::Sequential).is_err());
        let bad = ChainStrategy::new(ChainMode::FixedDeltaList(nums(&[2])));
        assert!(matches!(
            build_chains(&n(3), 1, &bad, b, Execution::Sequential),
            Err(Error::InvalidDelta { .. })
        ));
    }

    #[test]
    fn truncation_and_magnitude_limits() {
        let mut s = ChainStrategy::new(ChainMode::AllBranches);
        s.max_branches = 2;
        let set = build_chains(
            &n(15),
            1,
            &s,
            FactorBudget::default(),
            Execution::Sequential,
        )
        .unwrap();
        assert!(set.truncated);
        assert_eq!(set.outcomes.len(), 2);

        let mut s = ChainStrategy::new(ChainMode::MinDelta);
        s.max_magnitude = n(1000);
        let set =
            build_chains(&n(3), 5, &s, FactorBudget::default(), Execution::Sequential).unwrap();
        let o = &set.outcomes[0];
        // 3 → 5 → 13 → 85; the next hypotenuse 3613 is over the limit
        assert_eq!(o.chain.hypotenuse(), &n(85));
        assert_eq!(o.stop, Some(ChainStop::MagnitudeExceeded { next: n(3613) }));
    }

    #[test]
    fn primitive_mode_dead_ends() {
        // 6 → (6, 8, 10); 10 ≡ 2 (mod 4) has no primitive triple
        let s = ChainStrategy::new(ChainMode::FixedDeltaList(nums(&[2])));
        let set =
            build_chains(&n(6), 1, &s, FactorBudget::default(), Execution::Sequential).unwrap();
        assert_eq!(set.outcomes[0].chain.hypotenuse(), &n(10));

        let s = ChainStrategy::new(ChainMode::PrimitiveTriplesOnly);
        let set =
            build_chains(&n(6), 1, &s, FactorBudget::default(), Execution::Sequential).unwrap();
        assert_eq!(set.outcomes.len(), 1);
        assert_eq!(set.outcomes[0].stop, Some(ChainStop::NoDelta));
        assert_eq!(set.outcomes[0].chain.depth(), 0);
    }
}
