use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::One;

use super::strategy::{enumerate_strategies, Side, Strategy};
use super::{bob_view, run, Observation, Sdfst};
use crate::channel::InteractiveChannel;
use crate::error::{Error, Result};
use crate::exact::log2_biguint;

/// The exact fixed-horizon leakage found by playing every strategy pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceLeakage {
    /// The largest number of distinct observations a single Bob strategy admits.
    pub count: usize,
    pub bob: Strategy,
    pub observations: BTreeSet<Observation>,
}

impl BruteForceLeakage {
    pub fn bits(&self) -> f64 {
        log2_biguint(&self.count.into())
    }
}

/// Observations of length `k` that Bob may see against some Alice strategy while
/// he follows `bob`, restricted to accepted runs.
fn observations_for(t: &Sdfst, alice: &[Strategy], bob: &Strategy, k: usize) -> Result<BTreeSet<Observation>> {
    let mut seen = BTreeSet::new();
    for a in alice {
        let trace = run(t, a, bob, k)?;
        if t.accepts(&trace) {
            seen.insert(bob_view(&trace));
        }
    }
    Ok(seen)
}

/// Maximum over Bob strategies of the number of distinct length-`k` observations
/// consistent with some Alice strategy. Ties keep the first Bob strategy in
/// canonical order.
pub fn leakage_bruteforce(t: &Sdfst, k: usize, strategy_cap: usize) -> Result<BruteForceLeakage> {
    let alice = enumerate_strategies(t, Side::Alice, k, strategy_cap)?;
    let bob = enumerate_strategies(t, Side::Bob, k, strategy_cap)?;
    let mut best: Option<BruteForceLeakage> = None;
    for b in bob {
        let observations = observations_for(t, &alice, &b, k)?;
        if best.as_ref().is_none_or(|cur| observations.len() > cur.count) {
            best = Some(BruteForceLeakage {
                count: observations.len(),
                bob: b,
                observations,
            });
        }
    }
    best.ok_or(Error::InvalidTransducer("no Bob strategies".into()))
}

/// The 0/1 interactive channel from strategy pairs to length-`k` observations,
/// together with the strategies and observations indexing it.
#[derive(Debug, Clone)]
pub struct InducedChannel {
    pub channel: InteractiveChannel,
    pub alice: Vec<Strategy>,
    pub bob: Vec<Strategy>,
    pub observations: Vec<Observation>,
}

/// Requires every state to be accepting so that each strategy pair yields exactly
/// one observation. The outputs are all of `(Σ_B × Γ_B)^k` in lexicographic order.
pub fn induced_channel(t: &Sdfst, k: usize, strategy_cap: usize) -> Result<InducedChannel> {
    if !t.all_accepting() {
        return Err(Error::NotAllAccepting);
    }
    let letters = t.bob_in().len() * t.bob_out().len();
    let outputs = u32::try_from(k)
        .ok()
        .and_then(|k| letters.checked_pow(k))
        .filter(|&n| n <= strategy_cap.saturating_mul(strategy_cap))
        .ok_or(Error::BudgetExceeded {
            what: "observation space",
            limit: strategy_cap.saturating_mul(strategy_cap),
        })?;
    let alice = enumerate_strategies(t, Side::Alice, k, strategy_cap)?;
    let bob = enumerate_strategies(t, Side::Bob, k, strategy_cap)?;
    let observations: Vec<Observation> = (0..outputs)
        .map(|mut code| {
            let mut obs = vec![(0, 0); k];
            for slot in obs.iter_mut().rev() {
                let l = code % letters;
                code /= letters;
                *slot = (l / t.bob_out().len(), l % t.bob_out().len());
            }
            obs
        })
        .collect();
    let index_of = |obs: &Observation| {
        obs.iter()
            .fold(0usize, |acc, &(i, o)| acc * letters + i * t.bob_out().len() + o)
    };
    let mut rows = Vec::with_capacity(alice.len() * bob.len());
    for a in &alice {
        for b in &bob {
            let trace = run(t, a, b, k)?;
            rows.push(vec![(index_of(&bob_view(&trace)), BigRational::one())]);
        }
    }
    let channel = InteractiveChannel::from_sparse(
        alice.iter().map(|s| s.describe(t)).collect(),
        bob.iter().map(|s| s.describe(t)).collect(),
        observations.iter().map(|o| t.describe_observation(o)).collect(),
        rows,
    )?;
    Ok(InducedChannel {
        channel,
        alice,
        bob,
        observations,
    })
}

/// Whether `observations` can all be seen under one Bob strategy: each lies in the
/// Bob projection of the language, and no two first differ at a Bob input letter.
pub fn realizable_observation_set(observations: &[Observation], t: &Sdfst) -> bool {
    if !observations.iter().all(|o| t.in_bob_projection(o)) {
        return false;
    }
    for (i, u) in observations.iter().enumerate() {
        for v in &observations[i + 1..] {
            if let Some((x, y)) = u.iter().zip(v).find(|(x, y)| x != y) {
                if x.0 != y.0 {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{deterministic_interactive_capacity, interactive_capacity_pure_bob};
    use crate::corpus;

    #[test]
    fn relay_leaks_one_bit_per_step() {
        let t = corpus::relay();
        for k in 1..=3 {
            let l = leakage_bruteforce(&t, k, 4096).unwrap();
            assert_eq!(l.count, 1 << k);
            assert_eq!(l.bits(), k as f64);
            assert!(realizable_observation_set(&l.observations.iter().cloned().collect::<Vec<_>>(), &t));
        }
    }

    #[test]
    fn relay_induced_channel_reveals_alice_letter() {
        let t = corpus::relay();
        let ind = induced_channel(&t, 1, 4096).unwrap();
        assert!(ind.channel.is_deterministic());
        for (xa, a) in ind.alice.iter().enumerate() {
            let letter = a.choose(&[]).unwrap();
            for xb in 0..ind.bob.len() {
                let row = ind.channel.row(xa, xb);
                assert_eq!(row.len(), 1);
                let obs = &ind.observations[row[0].0];
                // Alice's letter comes back to Bob primed, same index
                assert_eq!(obs[0].1, letter);
            }
        }
        let (count, _) = deterministic_interactive_capacity(&ind.channel).unwrap();
        assert_eq!(count, 2);
    }

    #[test]
    fn induced_channel_agrees_with_bruteforce_on_interrupt() {
        let t = corpus::interrupt();
        for k in 1..=3 {
            let ind = induced_channel(&t, k, 4096).unwrap();
            let (count, cap) = deterministic_interactive_capacity(&ind.channel).unwrap();
            assert_eq!(cap.ratio, interactive_capacity_pure_bob(&ind.channel).ratio);
            assert_eq!(count, leakage_bruteforce(&t, k, 4096).unwrap().count);
        }
    }

    #[test]
    fn induced_channel_needs_total_acceptance() {
        let mut d = corpus::interrupt().to_description();
        d.accepting = vec![0];
        let t = d.validate().unwrap();
        assert_eq!(induced_channel(&t, 1, 100).unwrap_err(), Error::NotAllAccepting);
    }

    #[test]
    fn first_difference_on_bob_input_is_unrealizable() {
        let t = corpus::relay();
        // (a,a') vs (b,a'): Bob played different letters at the first step
        assert!(!realizable_observation_set(&[vec![(0, 0)], vec![(1, 0)]], &t));
        assert!(realizable_observation_set(&[vec![(0, 0)], vec![(0, 1)]], &t));
        assert!(realizable_observation_set(&[vec![(1, 1)]], &t));
    }
}
