//! Min-entropy leakage, capacity, g-leakage and Dalenius leakage over finite channels,
//! plus interactive channels in which both parties choose an input.
//!
//! All probabilities are exact rationals. Every measure is available as an exact
//! "ratio" (the multiplicative gain in guessing probability) and as bits, which is
//! just `log2` of that ratio taken at the very end.

mod format;

pub use format::{parse_channel_file, ChannelFile};

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{check_sums_to_one, check_unit_interval, log2_rational, q_int, Q};

fn check_distinct(labels: &[String], what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::LabelMismatch(format!("duplicate {what} label `{l}`")));
        }
    }
    Ok(())
}

fn max_q<'a>(values: impl IntoIterator<Item = &'a Q>) -> Q {
    values
        .into_iter()
        .fold(Q::zero(), |acc, v| if v > &acc { v.clone() } else { acc })
}

/// A finite probability distribution over labelled outcomes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    labels: Vec<String>,
    mass: Vec<Q>,
}

impl Distribution {
    pub fn new(labels: Vec<String>, mass: Vec<Q>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptySupport);
        }
        if labels.len() != mass.len() {
            return Err(Error::LabelMismatch(format!(
                "{} labels but {} masses",
                labels.len(),
                mass.len()
            )));
        }
        check_distinct(&labels, "outcome")?;
        check_sums_to_one(&mass, || "distribution".to_string())?;
        Ok(Distribution { labels, mass })
    }

    pub fn uniform(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptySupport);
        }
        let n = labels.len();
        let each = Q::one() / q_int(n);
        Distribution::new(labels, vec![each; n])
    }

    /// All mass on `labels[index]`.
    pub fn point(labels: Vec<String>, index: usize) -> Result<Self> {
        let mass = (0..labels.len())
            .map(|i| if i == index { Q::one() } else { Q::zero() })
            .collect();
        Distribution::new(labels, mass)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mass(&self) -> &[Q] {
        &self.mass
    }

    pub fn mass_of(&self, label: &str) -> Option<&Q> {
        self.labels.iter().position(|l| l == label).map(|i| &self.mass[i])
    }

    /// Masses re-ordered to follow `labels`; the two label sets must coincide.
    fn aligned_to(&self, labels: &[String]) -> Result<Vec<Q>> {
        if labels.len() != self.labels.len() {
            return Err(Error::LabelMismatch(format!(
                "prior has {} outcomes, channel has {} inputs",
                self.labels.len(),
                labels.len()
            )));
        }
        labels
            .iter()
            .map(|l| {
                self.mass_of(l)
                    .cloned()
                    .ok_or_else(|| Error::LabelMismatch(format!("prior has no outcome `{l}`")))
            })
            .collect()
    }
}

/// A stochastic matrix `p(y | x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelMatrix {
    inputs: Vec<String>,
    outputs: Vec<String>,
    rows: Vec<Vec<Q>>,
}

impl ChannelMatrix {
    pub fn new(inputs: Vec<String>, outputs: Vec<String>, rows: Vec<Vec<Q>>) -> Result<Self> {
        check_distinct(&inputs, "input")?;
        check_distinct(&outputs, "output")?;
        if rows.len() != inputs.len() {
            return Err(Error::LabelMismatch(format!(
                "{} rows for {} inputs",
                rows.len(),
                inputs.len()
            )));
        }
        for (x, row) in rows.iter().enumerate() {
            if row.len() != outputs.len() {
                return Err(Error::LabelMismatch(format!(
                    "row `{}` has {} entries for {} outputs",
                    inputs[x],
                    row.len(),
                    outputs.len()
                )));
            }
            for (y, p) in row.iter().enumerate() {
                check_unit_interval(p, || format!("p({} | {})", outputs[y], inputs[x]))?;
            }
            check_sums_to_one(row, || format!("row `{}`", inputs[x]))?;
        }
        Ok(ChannelMatrix {
            inputs,
            outputs,
            rows,
        })
    }

    /// The perfect channel on `n` inputs labelled `0..n`.
    pub fn identity(n: usize) -> Self {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let rows = (0..n)
            .map(|x| (0..n).map(|y| if x == y { Q::one() } else { Q::zero() }).collect())
            .collect();
        ChannelMatrix::new(labels.clone(), labels, rows).expect("identity is stochastic")
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn entry(&self, x: usize, y: usize) -> &Q {
        &self.rows[x][y]
    }

    fn column_max(&self, y: usize) -> Q {
        max_q(self.rows.iter().map(|r| &r[y]))
    }
}

/// A joint distribution of two finite random variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointDistribution {
    xs: Vec<String>,
    ys: Vec<String>,
    mass: Vec<Vec<Q>>,
}

impl JointDistribution {
    pub fn new(xs: Vec<String>, ys: Vec<String>, mass: Vec<Vec<Q>>) -> Result<Self> {
        check_distinct(&xs, "x")?;
        check_distinct(&ys, "y")?;
        if xs.is_empty() || ys.is_empty() {
            return Err(Error::EmptySupport);
        }
        if mass.len() != xs.len() || mass.iter().any(|r| r.len() != ys.len()) {
            return Err(Error::LabelMismatch("joint mass table has the wrong shape".into()));
        }
        check_sums_to_one(mass.iter().flatten(), || "joint distribution".to_string())?;
        Ok(JointDistribution { xs, ys, mass })
    }

    /// The joint law of an input drawn from `prior` and sent through `channel`.
    pub fn from_channel(prior: &Distribution, channel: &ChannelMatrix) -> Result<Self> {
        let p = prior.aligned_to(&channel.inputs)?;
        let mass = channel
            .rows
            .iter()
            .zip(&p)
            .map(|(row, px)| row.iter().map(|c| c * px).collect())
            .collect();
        JointDistribution::new(channel.inputs.clone(), channel.outputs.clone(), mass)
    }

    pub fn xs(&self) -> &[String] {
        &self.xs
    }

    pub fn ys(&self) -> &[String] {
        &self.ys
    }

    pub fn mass(&self) -> &[Vec<Q>] {
        &self.mass
    }

    pub fn marginal_x(&self) -> Distribution {
        let mass = self.mass.iter().map(|r| r.iter().sum()).collect();
        Distribution {
            labels: self.xs.clone(),
            mass,
        }
    }

    pub fn marginal_y(&self) -> Distribution {
        let mass = (0..self.ys.len())
            .map(|y| self.mass.iter().map(|r| &r[y]).sum())
            .collect();
        Distribution {
            labels: self.ys.clone(),
            mass,
        }
    }

    /// The prior on X and a channel compatible with the joint. Rows for inputs of
    /// zero mass are undetermined by the joint; they are filled uniformly.
    pub fn induced_pair(&self) -> (Distribution, ChannelMatrix) {
        let prior = self.marginal_x();
        let uniform = Q::one() / q_int(self.ys.len());
        let rows = self
            .mass
            .iter()
            .zip(prior.mass())
            .map(|(row, px)| {
                if px.is_zero() {
                    vec![uniform.clone(); row.len()]
                } else {
                    row.iter().map(|m| m / px).collect()
                }
            })
            .collect();
        let channel = ChannelMatrix {
            inputs: self.xs.clone(),
            outputs: self.ys.clone(),
            rows,
        };
        (prior, channel)
    }

    /// The outputs of positive marginal mass.
    pub fn supported_outputs(&self) -> Vec<usize> {
        let py = self.marginal_y();
        (0..self.ys.len())
            .filter(|&y| !py.mass[y].is_zero())
            .collect()
    }
}

/// Scores `gain(w, x)` in `[0, 1]` for guessing `w` when the secret is `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GainFunction {
    guesses: Vec<String>,
    secrets: Vec<String>,
    gain: Vec<Vec<Q>>,
}

impl GainFunction {
    pub fn new(guesses: Vec<String>, secrets: Vec<String>, gain: Vec<Vec<Q>>) -> Result<Self> {
        check_distinct(&guesses, "guess")?;
        check_distinct(&secrets, "secret")?;
        if gain.len() != guesses.len() || gain.iter().any(|r| r.len() != secrets.len()) {
            return Err(Error::LabelMismatch("gain table has the wrong shape".into()));
        }
        for (w, row) in gain.iter().enumerate() {
            for (x, g) in row.iter().enumerate() {
                check_unit_interval(g, || format!("g({}, {})", guesses[w], secrets[x]))?;
            }
        }
        Ok(GainFunction {
            guesses,
            secrets,
            gain,
        })
    }

    /// Guess the secret exactly: `g(w, x) = [w = x]`.
    pub fn identity(secrets: Vec<String>) -> Self {
        let n = secrets.len();
        let gain = (0..n)
            .map(|w| (0..n).map(|x| if w == x { Q::one() } else { Q::zero() }).collect())
            .collect();
        GainFunction::new(secrets.clone(), secrets, gain).expect("identity gain is valid")
    }

    pub fn guesses(&self) -> &[String] {
        &self.guesses
    }

    pub fn gain(&self) -> &[Vec<Q>] {
        &self.gain
    }
}

/// `Σ_y max_x p(x) p(y|x) / max_x p(x)`.
pub fn min_entropy_leakage_ratio(prior: &Distribution, channel: &ChannelMatrix) -> Result<Q> {
    let p = prior.aligned_to(&channel.inputs)?;
    let prior_vulnerability = max_q(&p);
    let mut posterior = Q::zero();
    for y in 0..channel.outputs.len() {
        let best = max_q(
            channel
                .rows
                .iter()
                .zip(&p)
                .map(|(row, px)| row[y].clone() * px)
                .collect::<Vec<_>>()
                .iter(),
        );
        posterior += best;
    }
    Ok(posterior / prior_vulnerability)
}

pub fn min_entropy_leakage(prior: &Distribution, channel: &ChannelMatrix) -> Result<f64> {
    min_entropy_leakage_ratio(prior, channel).map(|r| log2_rational(&r))
}

/// `Σ_y max_x p(y|x)`: the multiplicative capacity over all priors.
pub fn min_entropy_capacity_ratio(channel: &ChannelMatrix) -> Q {
    (0..channel.outputs.len()).map(|y| channel.column_max(y)).sum()
}

pub fn min_entropy_capacity(channel: &ChannelMatrix) -> f64 {
    log2_rational(&min_entropy_capacity_ratio(channel))
}

/// Ratio of expected posterior g-vulnerability to prior g-vulnerability.
pub fn g_leakage_ratio(prior: &Distribution, channel: &ChannelMatrix, g: &GainFunction) -> Result<Q> {
    if g.secrets != channel.inputs {
        return Err(Error::LabelMismatch(
            "gain function secrets differ from channel inputs".into(),
        ));
    }
    let p = prior.aligned_to(&channel.inputs)?;
    let prior_vulnerability = max_q(
        g.gain
            .iter()
            .map(|row| row.iter().zip(&p).map(|(gw, px)| gw * px).sum::<Q>())
            .collect::<Vec<_>>()
            .iter(),
    );
    if prior_vulnerability.is_zero() {
        return Err(Error::ZeroVulnerability);
    }
    let mut posterior = Q::zero();
    for y in 0..channel.outputs.len() {
        let best = max_q(
            g.gain
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&p)
                        .zip(&channel.rows)
                        .map(|((gw, px), crow)| gw * px * &crow[y])
                        .sum::<Q>()
                })
                .collect::<Vec<_>>()
                .iter(),
        );
        posterior += best;
    }
    Ok(posterior / prior_vulnerability)
}

pub fn g_leakage(prior: &Distribution, channel: &ChannelMatrix, g: &GainFunction) -> Result<f64> {
    g_leakage_ratio(prior, channel, g).map(|r| log2_rational(&r))
}

/// `Σ_{y : p(y) > 0} max_{x : p(x) > 0} p(y|x)`.
pub fn dalenius_leakage_ratio(joint: &JointDistribution) -> Q {
    let px = joint.marginal_x();
    let mut total = Q::zero();
    for y in joint.supported_outputs() {
        let best = max_q(
            joint
                .mass
                .iter()
                .zip(px.mass())
                .filter(|(_, m)| !m.is_zero())
                .map(|(row, m)| &row[y] / m)
                .collect::<Vec<_>>()
                .iter(),
        );
        total += best;
    }
    total
}

/// Worst-case min-entropy leakage about any secret `Z` with `Z -> X -> Y` Markov.
pub fn dalenius_leakage(joint: &JointDistribution) -> f64 {
    log2_rational(&dalenius_leakage_ratio(joint))
}

/// The secret `Z_n` on `{0, .., 2^n - 1}` obtained by cutting the cumulative prior of
/// `X` into dyadic intervals, paired with `Y`. Its min-entropy leakage about `Y`
/// increases towards the Dalenius leakage of `(X, Y)` as `n` grows.
pub fn dyadic_secret(joint: &JointDistribution, n: u32) -> JointDistribution {
    let (prior, channel) = joint.induced_pair();
    let cells = 1usize << n;
    let width = BigRational::new(BigInt::one(), BigInt::from(cells));
    let mut cumulative = Vec::with_capacity(prior.mass.len() + 1);
    let mut acc = Q::zero();
    cumulative.push(acc.clone());
    for m in &prior.mass {
        acc += m;
        cumulative.push(acc.clone());
    }
    let ys = joint.ys.len();
    let mut mass = vec![vec![Q::zero(); ys]; cells];
    for (z, row) in mass.iter_mut().enumerate() {
        let lo = &width * q_int(z);
        let hi = &width * q_int(z + 1);
        for x in 0..prior.mass.len() {
            let a = if cumulative[x] > lo { cumulative[x].clone() } else { lo.clone() };
            let b = if cumulative[x + 1] < hi { cumulative[x + 1].clone() } else { hi.clone() };
            if a < b {
                let overlap = b - a;
                for (cell, c) in row.iter_mut().zip(&channel.rows[x]) {
                    *cell += &overlap * c;
                }
            }
        }
    }
    JointDistribution {
        xs: (0..cells).map(|z| z.to_string()).collect(),
        ys: joint.ys.clone(),
        mass,
    }
}

/// A channel `p(y | x_A, x_B)` where Alice and Bob each choose an input.
///
/// Rows are stored sparsely: only positive entries, sorted by output index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteractiveChannel {
    alice_inputs: Vec<String>,
    bob_inputs: Vec<String>,
    outputs: Vec<String>,
    rows: Vec<Vec<(usize, Q)>>,
    deterministic: bool,
}

impl InteractiveChannel {
    /// `rows[xa * |bob_inputs| + xb]` lists the nonzero `(y, p)` entries of that row.
    pub fn from_sparse(
        alice_inputs: Vec<String>,
        bob_inputs: Vec<String>,
        outputs: Vec<String>,
        mut rows: Vec<Vec<(usize, Q)>>,
    ) -> Result<Self> {
        check_distinct(&alice_inputs, "alice input")?;
        check_distinct(&bob_inputs, "bob input")?;
        check_distinct(&outputs, "output")?;
        if rows.len() != alice_inputs.len() * bob_inputs.len() {
            return Err(Error::LabelMismatch(format!(
                "{} rows for {}x{} input pairs",
                rows.len(),
                alice_inputs.len(),
                bob_inputs.len()
            )));
        }
        let mut deterministic = true;
        for (i, row) in rows.iter_mut().enumerate() {
            let (xa, xb) = (i / bob_inputs.len(), i % bob_inputs.len());
            row.retain(|(_, p)| !p.is_zero());
            row.sort_by_key(|(y, _)| *y);
            if row.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::LabelMismatch(format!(
                    "row ({}, {}) repeats an output",
                    alice_inputs[xa], bob_inputs[xb]
                )));
            }
            for (y, p) in row.iter() {
                if *y >= outputs.len() {
                    return Err(Error::LabelMismatch(format!("output index {y} out of range")));
                }
                check_unit_interval(p, || {
                    format!("p({} | {}, {})", outputs[*y], alice_inputs[xa], bob_inputs[xb])
                })?;
                deterministic &= p.is_one();
            }
            check_sums_to_one(row.iter().map(|(_, p)| p), || {
                format!("row ({}, {})", alice_inputs[xa], bob_inputs[xb])
            })?;
        }
        Ok(InteractiveChannel {
            alice_inputs,
            bob_inputs,
            outputs,
            rows,
            deterministic,
        })
    }

    /// Builds from a dense table `entries[xa][xb][y]`.
    pub fn from_dense(
        alice_inputs: Vec<String>,
        bob_inputs: Vec<String>,
        outputs: Vec<String>,
        entries: Vec<Vec<Vec<Q>>>,
    ) -> Result<Self> {
        if entries.len() != alice_inputs.len()
            || entries.iter().any(|r| r.len() != bob_inputs.len())
            || entries.iter().flatten().any(|r| r.len() != outputs.len())
        {
            return Err(Error::LabelMismatch("interactive table has the wrong shape".into()));
        }
        let rows = entries
            .into_iter()
            .flatten()
            .map(|row| row.into_iter().enumerate().collect())
            .collect();
        InteractiveChannel::from_sparse(alice_inputs, bob_inputs, outputs, rows)
    }

    pub fn alice_inputs(&self) -> &[String] {
        &self.alice_inputs
    }

    pub fn bob_inputs(&self) -> &[String] {
        &self.bob_inputs
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    pub fn row(&self, xa: usize, xb: usize) -> &[(usize, Q)] {
        &self.rows[xa * self.bob_inputs.len() + xb]
    }

    /// The ordinary channel from Alice's input to the output once Bob plays `xb`.
    pub fn slice(&self, xb: usize) -> ChannelMatrix {
        let rows = (0..self.alice_inputs.len())
            .map(|xa| {
                let mut dense = vec![Q::zero(); self.outputs.len()];
                for (y, p) in self.row(xa, xb) {
                    dense[*y] = p.clone();
                }
                dense
            })
            .collect();
        ChannelMatrix {
            inputs: self.alice_inputs.clone(),
            outputs: self.outputs.clone(),
            rows,
        }
    }

    /// `Σ_y max_{xa} w(xa) p(y | xa, xb)` for nonnegative weights `w`.
    fn weighted_column_max_sum(&self, xb: usize, weights: &[Q]) -> Q {
        let mut best = vec![Q::zero(); self.outputs.len()];
        for (xa, w) in weights.iter().enumerate() {
            for (y, p) in self.row(xa, xb) {
                let v = w * p;
                if v > best[*y] {
                    best[*y] = v;
                }
            }
        }
        best.into_iter().sum()
    }
}

/// `E_{x_B} 2^{L(X_A, Y | X_B = x_B)}` with independent priors.
pub fn interactive_leakage_ratio(
    alice_prior: &Distribution,
    bob_prior: &Distribution,
    channel: &InteractiveChannel,
) -> Result<Q> {
    let pa = alice_prior.aligned_to(&channel.alice_inputs)?;
    let pb = bob_prior.aligned_to(&channel.bob_inputs)?;
    let alice_vulnerability = max_q(&pa);
    let mut expected = Q::zero();
    for (xb, weight) in pb.iter().enumerate() {
        if weight.is_zero() {
            continue;
        }
        expected += weight * channel.weighted_column_max_sum(xb, &pa) / &alice_vulnerability;
    }
    Ok(expected)
}

pub fn interactive_leakage(
    alice_prior: &Distribution,
    bob_prior: &Distribution,
    channel: &InteractiveChannel,
) -> Result<f64> {
    interactive_leakage_ratio(alice_prior, bob_prior, channel).map(|r| log2_rational(&r))
}

/// Capacity of an interactive channel together with the Bob input attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BobCapacity {
    pub ratio: Q,
    pub witness: usize,
}

impl BobCapacity {
    pub fn bits(&self) -> f64 {
        log2_rational(&self.ratio)
    }
}

/// The capacity as a maximum over pure Bob inputs of the slice capacities.
/// Ties go to the first Bob input in declaration order.
pub fn interactive_capacity_pure_bob(channel: &InteractiveChannel) -> BobCapacity {
    let ones = vec![Q::one(); channel.alice_inputs.len()];
    let mut best: Option<BobCapacity> = None;
    for xb in 0..channel.bob_inputs.len() {
        let ratio = channel.weighted_column_max_sum(xb, &ones);
        if best.as_ref().is_none_or(|b| ratio > b.ratio) {
            best = Some(BobCapacity { ratio, witness: xb });
        }
    }
    best.unwrap_or(BobCapacity {
        ratio: Q::zero(),
        witness: 0,
    })
}

/// Counting form of the capacity for 0/1 channels: the most distinct outputs any
/// single Bob input lets Alice produce.
pub fn deterministic_interactive_capacity(channel: &InteractiveChannel) -> Result<(usize, BobCapacity)> {
    if !channel.deterministic {
        return Err(Error::NotDeterministic);
    }
    let mut best = (0usize, 0usize);
    for xb in 0..channel.bob_inputs.len() {
        let mut seen = vec![false; channel.outputs.len()];
        for xa in 0..channel.alice_inputs.len() {
            for (y, _) in channel.row(xa, xb) {
                seen[*y] = true;
            }
        }
        let count = seen.iter().filter(|s| **s).count();
        if count > best.0 || xb == 0 {
            best = (count, xb);
        }
    }
    Ok((
        best.0,
        BobCapacity {
            ratio: q_int(best.0),
            witness: best.1,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn perfect_channel_leaks_one_bit() {
        let prior = Distribution::uniform(vec!["0".into(), "1".into()]).unwrap();
        let ch = ChannelMatrix::identity(2);
        assert_eq!(min_entropy_leakage(&prior, &ch).unwrap(), 1.0);
    }

    #[test]
    fn independent_output_leaks_nothing() {
        let prior = Distribution::uniform(vec!["0".into(), "1".into()]).unwrap();
        let half = q(1, 2);
        let ch = ChannelMatrix::new(
            vec!["0".into(), "1".into()],
            vec!["a".into(), "b".into()],
            vec![vec![half.clone(), half.clone()], vec![half.clone(), half]],
        )
        .unwrap();
        assert_eq!(min_entropy_leakage(&prior, &ch).unwrap(), 0.0);
        assert_eq!(min_entropy_capacity(&ch), 0.0);
    }

    #[test]
    fn rejects_mismatched_prior() {
        let prior = Distribution::uniform(vec!["a".into(), "b".into()]).unwrap();
        let ch = ChannelMatrix::identity(2);
        assert!(matches!(min_entropy_leakage(&prior, &ch), Err(Error::LabelMismatch(_))));
        assert!(matches!(Distribution::uniform(vec![]), Err(Error::EmptySupport)));
    }

    #[test]
    fn rejects_non_stochastic_rows() {
        let err = ChannelMatrix::new(
            labels(1),
            labels(2),
            vec![vec![q(1, 2), q(1, 3)]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotStochastic(_)));
        let err = ChannelMatrix::new(labels(1), labels(2), vec![vec![q(3, 2), q(-1, 2)]]).unwrap_err();
        assert!(matches!(err, Error::NotStochastic(_)));
    }

    #[test]
    fn identity_capacity_is_log_n() {
        for n in 1..6 {
            let c = min_entropy_capacity(&ChannelMatrix::identity(n));
            assert!((c - (n as f64).log2()).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_gain_leaks_nothing() {
        let prior = Distribution::new(labels(3), vec![q(1, 2), q(1, 3), q(1, 6)]).unwrap();
        let ch = ChannelMatrix::new(
            labels(3),
            labels(2),
            vec![vec![q(1, 1), q(0, 1)], vec![q(1, 4), q(3, 4)], vec![q(0, 1), q(1, 1)]],
        )
        .unwrap();
        let g = GainFunction::new(vec!["w".into()], labels(3), vec![vec![q(1, 1); 3]]).unwrap();
        assert_eq!(g_leakage(&prior, &ch, &g).unwrap(), 0.0);
        let id = GainFunction::identity(labels(3));
        assert_eq!(
            g_leakage_ratio(&prior, &ch, &id).unwrap(),
            min_entropy_leakage_ratio(&prior, &ch).unwrap()
        );
    }

    #[test]
    fn zero_gain_is_an_error() {
        let prior = Distribution::uniform(labels(2)).unwrap();
        let ch = ChannelMatrix::new(labels(2), labels(1), vec![vec![q(1, 1)], vec![q(1, 1)]]).unwrap();
        let g = GainFunction::new(vec!["w".into()], labels(2), vec![vec![q(0, 1), q(0, 1)]]).unwrap();
        assert_eq!(g_leakage(&prior, &ch, &g), Err(Error::ZeroVulnerability));
    }

    #[test]
    fn dalenius_of_independent_and_identity_couplings() {
        let quarter = q(1, 4);
        let indep = JointDistribution::new(labels(2), labels(2), vec![vec![quarter.clone(); 2]; 2]).unwrap();
        assert_eq!(dalenius_leakage(&indep), 0.0);
        let n = 5;
        let mass = (0..n)
            .map(|x| (0..n).map(|y| if x == y { q(1, n as i64) } else { q(0, 1) }).collect())
            .collect();
        let diag = JointDistribution::new(labels(n), labels(n), mass).unwrap();
        assert!((dalenius_leakage(&diag) - (n as f64).log2()).abs() < 1e-12);
    }

    #[test]
    fn dalenius_ignores_unsupported_outputs() {
        // y1 never occurs; an incompatible channel row could put mass there
        let joint = JointDistribution::new(
            labels(2),
            labels(2),
            vec![vec![q(1, 2), q(0, 1)], vec![q(1, 2), q(0, 1)]],
        )
        .unwrap();
        assert_eq!(joint.supported_outputs(), vec![0]);
        assert_eq!(dalenius_leakage_ratio(&joint), q(1, 1));
    }

    #[test]
    fn dyadic_secret_preserves_output_marginal() {
        let joint = JointDistribution::new(
            labels(2),
            labels(2),
            vec![vec![q(1, 3), q(0, 1)], vec![q(1, 6), q(1, 2)]],
        )
        .unwrap();
        for n in 1..5 {
            let z = dyadic_secret(&joint, n);
            assert_eq!(z.marginal_y(), joint.marginal_y());
            assert!(z.marginal_x().mass().iter().all(|m| *m == q(1, 1 << n)));
        }
    }

    fn two_slice_channel() -> InteractiveChannel {
        // slice b1: identity on two Alice inputs; slice b2: constant output
        let one = q(1, 1);
        let zero = q(0, 1);
        let entries = vec![
            vec![vec![one.clone(), zero.clone()], vec![one.clone(), zero.clone()]],
            vec![vec![zero.clone(), one.clone()], vec![one.clone(), zero.clone()]],
        ];
        InteractiveChannel::from_dense(
            vec!["a0".into(), "a1".into()],
            vec!["b1".into(), "b2".into()],
            vec!["y0".into(), "y1".into()],
            entries,
        )
        .unwrap()
    }

    #[test]
    fn pure_bob_picks_dominant_slice() {
        let ch = two_slice_channel();
        assert!(ch.is_deterministic());
        let cap = interactive_capacity_pure_bob(&ch);
        assert_eq!(cap.bits(), 1.0);
        assert_eq!(cap.witness, 0);
        let (count, det) = deterministic_interactive_capacity(&ch).unwrap();
        assert_eq!(count, 2);
        assert_eq!(det.witness, 0);
    }

    #[test]
    fn point_bob_prior_matches_slice_leakage() {
        let ch = two_slice_channel();
        let alice = Distribution::new(ch.alice_inputs().to_vec(), vec![q(2, 3), q(1, 3)]).unwrap();
        for xb in 0..2 {
            let bob = Distribution::point(ch.bob_inputs().to_vec(), xb).unwrap();
            assert_eq!(
                interactive_leakage_ratio(&alice, &bob, &ch).unwrap(),
                min_entropy_leakage_ratio(&alice, &ch.slice(xb)).unwrap()
            );
        }
    }

    #[test]
    fn probabilistic_channel_is_not_deterministic() {
        let half = q(1, 2);
        let ch = InteractiveChannel::from_dense(
            vec!["a".into()],
            vec!["b".into()],
            vec!["y0".into(), "y1".into()],
            vec![vec![vec![half.clone(), half]]],
        )
        .unwrap();
        assert!(!ch.is_deterministic());
        assert_eq!(deterministic_interactive_capacity(&ch), Err(Error::NotDeterministic));
    }
}
