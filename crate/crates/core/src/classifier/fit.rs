use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::exact::log2_biguint;

/// Running maximum of the width sequence, so that empty odd levels of observer
/// automata do not break the doubling ratios.
pub fn envelope(widths: &[BigUint]) -> Vec<BigUint> {
    let mut best = BigUint::default();
    widths
        .iter()
        .map(|w| {
            if *w > best {
                best = w.clone();
            }
            best.clone()
        })
        .collect()
}

/// Outcome of comparing a claimed order `k` against measured widths: over the
/// last three doublings `n -> 2n` up to `n_max`, the envelope must satisfy
/// `E(n) 2^(k-1) <= E(2n) <= E(n) 2^(k+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub order: usize,
    pub n_max: usize,
    /// `(n, E(n))` at `n_max/8, n_max/4, n_max/2, n_max`.
    pub points: Vec<(usize, BigUint)>,
    /// `E(2n)/E(n)` for each doubling; NaN when `E(n)` is zero.
    pub ratios: Vec<f64>,
    pub passed: bool,
}

impl FitReport {
    pub fn summary(&self) -> String {
        let pts: Vec<String> = self.points.iter().map(|(n, w)| format!("E({n})={w}")).collect();
        let ratios: Vec<String> = self.ratios.iter().map(|r| format!("{r:.3}")).collect();
        format!(
            "{} with doubling ratios {} against 2^{} (band x0.5..x2)",
            pts.join(", "),
            ratios.join(", "),
            self.order
        )
    }
}

/// `widths[n]` must be the width at length `n`, for `n` from 0 to at least 8.
pub fn fit_check(widths: &[BigUint], k: usize) -> FitReport {
    let env = envelope(widths);
    let n_max = (widths.len().saturating_sub(1) / 8) * 8;
    let points: Vec<(usize, BigUint)> = if n_max == 0 {
        Vec::new()
    } else {
        [n_max / 8, n_max / 4, n_max / 2, n_max].iter().map(|&n| (n, env[n].clone())).collect()
    };
    let mut passed = points.len() == 4;
    let mut ratios = Vec::new();
    for pair in points.windows(2) {
        let (lo, hi) = (&pair[0].1, &pair[1].1);
        // 2 E(2n) >= E(n) 2^k and 2 E(2n) <= E(n) 2^(k+2)
        let twice = hi * 2u8;
        passed &= twice >= lo << k && twice <= lo << (k + 2);
        ratios.push(match lo.to_f64() {
            Some(l) if l > 0.0 => 2f64.powf(log2_biguint(hi) - log2_biguint(lo)),
            _ => f64::NAN,
        });
    }
    FitReport {
        order: k,
        n_max,
        points,
        ratios,
        passed,
    }
}
