//! Seeded generators of small random instances for cross-checking.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::{ChannelMatrix, Distribution, GainFunction, InteractiveChannel, JointDistribution};
use crate::exact::Q;
use crate::nfa::OrderedNfa;
use crate::transducer::{Sdfst, TransducerDescription, Transition};
use crate::width::LetterPoset;

/// A portable, seed-stable generator.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Non-negative integer weights normalised to sum to one; at least one weight is positive.
pub fn random_simplex_point<R: Rng>(rng: &mut R, n: usize, max_weight: u32) -> Vec<Q> {
    let mut w: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_weight)).collect();
    if w.iter().all(|&x| x == 0) {
        let i = rng.gen_range(0..n);
        w[i] = 1;
    }
    let total: u32 = w.iter().sum();
    w.iter()
        .map(|&x| BigRational::new(BigInt::from(x), BigInt::from(total)))
        .collect()
}

pub fn random_distribution<R: Rng>(rng: &mut R, n: usize) -> Distribution {
    Distribution::new(labels("x", n), random_simplex_point(rng, n, 9)).expect("normalised")
}

pub fn random_channel<R: Rng>(rng: &mut R, inputs: usize, outputs: usize) -> ChannelMatrix {
    let rows = (0..inputs).map(|_| random_simplex_point(rng, outputs, 9)).collect();
    ChannelMatrix::new(labels("x", inputs), labels("y", outputs), rows).expect("stochastic")
}

pub fn random_joint<R: Rng>(rng: &mut R, xs: usize, ys: usize) -> JointDistribution {
    let flat = random_simplex_point(rng, xs * ys, 9);
    let mass = flat.chunks(ys).map(|c| c.to_vec()).collect();
    JointDistribution::new(labels("x", xs), labels("y", ys), mass).expect("normalised")
}

pub fn random_gain<R: Rng>(rng: &mut R, guesses: usize, secrets: usize) -> GainFunction {
    let gain = (0..guesses)
        .map(|_| {
            (0..secrets)
                .map(|_| BigRational::new(BigInt::from(rng.gen_range(0..=4u32)), BigInt::from(4)))
                .collect()
        })
        .collect();
    GainFunction::new(labels("w", guesses), labels("x", secrets), gain).expect("gains in [0, 1]")
}

/// Dense random interactive channel; with `deterministic` every row is a point mass.
pub fn random_interactive<R: Rng>(
    rng: &mut R,
    alice: usize,
    bob: usize,
    outputs: usize,
    deterministic: bool,
) -> InteractiveChannel {
    let rows = (0..alice)
        .map(|_| {
            (0..bob)
                .map(|_| {
                    if deterministic {
                        let y = rng.gen_range(0..outputs);
                        (0..outputs).map(|i| Q::from_integer(BigInt::from((i == y) as u8))).collect()
                    } else {
                        random_simplex_point(rng, outputs, 9)
                    }
                })
                .collect()
        })
        .collect();
    InteractiveChannel::from_dense(labels("a", alice), labels("b", bob), labels("y", outputs), rows)
        .expect("stochastic")
}

/// A random transducer with between 1 and `max_states` states and the given
/// alphabet sizes. Each state is accepting with probability 3/4.
pub fn random_sdfst<R: Rng>(rng: &mut R, max_states: usize, alphabet: usize) -> Sdfst {
    let nq = rng.gen_range(1..=max_states);
    let mut transitions = Vec::new();
    for q in 0..nq {
        for a in 0..alphabet {
            for b in 0..alphabet {
                transitions.push(Transition {
                    from: q,
                    alice_in: a,
                    bob_in: b,
                    to: rng.gen_range(0..nq),
                    output: Some((rng.gen_range(0..alphabet), rng.gen_range(0..alphabet))),
                });
            }
        }
    }
    TransducerDescription {
        states: labels("q", nq),
        initial: 0,
        accepting: (0..nq).filter(|_| rng.gen_bool(0.75)).collect(),
        alice_in: labels("a", alphabet),
        bob_in: labels("i", alphabet),
        alice_out: labels("c", alphabet),
        bob_out: labels("o", alphabet),
        transitions,
    }
    .validate()
    .expect("random transducer is total")
}

/// A random strict order: a hidden linear arrangement plus random forward
/// generators, closed transitively.
pub fn random_poset<R: Rng>(rng: &mut R, letters: usize) -> LetterPoset {
    let mut perm: Vec<usize> = (0..letters).collect();
    perm.shuffle(rng);
    let density = rng.gen_range(0.0..1.0);
    let mut pairs = Vec::new();
    for i in 0..letters {
        for j in i + 1..letters {
            if rng.gen_bool(density) {
                pairs.push((perm[i], perm[j]));
            }
        }
    }
    LetterPoset::from_generators(labels("l", letters), &pairs).expect("forward generators are acyclic")
}

/// A random automaton with up to `max_states` states and `max_letters` letters
/// under a random order.
pub fn random_nfa<R: Rng>(rng: &mut R, max_states: usize, max_letters: usize) -> OrderedNfa {
    let nq = rng.gen_range(1..=max_states);
    let nl = rng.gen_range(1..=max_letters);
    let poset = random_poset(rng, nl);
    let density = rng.gen_range(0.2..0.7);
    let mut transitions = Vec::new();
    for q in 0..nq {
        for x in 0..nl {
            for t in 0..nq {
                if rng.gen_bool(density) {
                    transitions.push((q, x, t));
                }
            }
        }
    }
    let mut initial: Vec<usize> = (0..nq).filter(|_| rng.gen_bool(0.3)).collect();
    if initial.is_empty() {
        initial.push(0);
    }
    let accepting = (0..nq).filter(|_| rng.gen_bool(0.5)).collect();
    OrderedNfa::with_poset(labels("s", nq), initial, accepting, poset, 0, &transitions).expect("valid by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_seed_stable() {
        let a = random_nfa(&mut rng(7), 4, 4);
        let b = random_nfa(&mut rng(7), 4, 4);
        assert_eq!(a, b);
        let t = random_sdfst(&mut rng(3), 3, 2);
        assert_eq!(t, random_sdfst(&mut rng(3), 3, 2));
        t.validate().unwrap();
    }

    #[test]
    fn simplex_points_sum_to_one() {
        let mut r = rng(1);
        for n in 1..6 {
            let p = random_simplex_point(&mut r, n, 3);
            assert_eq!(p.iter().sum::<Q>(), Q::from_integer(1.into()));
        }
    }
}
