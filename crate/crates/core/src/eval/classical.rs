//! Classical multiple zeta (star) values and alternating Euler sums in `f64`.
//!
//! A single streaming pass over `k = 1..=K` keeps one compensated running
//! sum per depth layer, so memory is `O(depth)` and time `O(K · depth)`.

use crate::error::{Error, Result};
use crate::eval::series::{SeriesConfig, Truncation};
use crate::index::SignedString;

/// Neumaier's variant of Kahan summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for Neumaier {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Neumaier::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalValue {
    pub value: f64,
    /// Heuristic size of the neglected tail; not a rigorous bound.
    pub tail_estimate: Option<f64>,
    pub cutoff: u64,
}

/// `K^{1-|s1|} (ln K)^{d-1} / (|s1|-1)` for unsigned `s1`, one power of `K`
/// smaller for barred `s1`.
pub fn heuristic_tail(s: &SignedString, cutoff: u64) -> f64 {
    let e = s.entries();
    if e.is_empty() {
        return 0.0;
    }
    let k = cutoff as f64;
    let w = f64::from(e[0].magnitude());
    let logs = k.ln().max(1.0).powi(e.len() as i32 - 1);
    if e[0].is_barred() {
        k.powf(-w) * logs
    } else {
        k.powf(1.0 - w) * logs / (w - 1.0)
    }
}

fn check_convergent(s: &SignedString, star: bool) -> Result<()> {
    let e = s.entries();
    let Some(first) = e.first() else {
        return Ok(());
    };
    if let Some(z) = e.iter().find(|x| x.magnitude() == 0) {
        return Err(Error::DivergentSeries(z.to_string()));
    }
    let ok = if star {
        first.magnitude() >= 2
    } else {
        first.magnitude() >= 2 || first.is_barred()
    };
    if ok {
        Ok(())
    } else {
        Err(Error::DivergentSeries(first.to_string()))
    }
}

/// `ζ(s)` or `ζ*(s)` summed over outer index `k1 <= K`.
pub fn classical_zeta(s: &SignedString, cfg: &SeriesConfig, star: bool) -> Result<ClassicalValue> {
    check_convergent(s, star)?;
    let cutoff = match cfg.truncation {
        Truncation::Fixed(k) => k,
        Truncation::Epsilon(_) => {
            return Err(Error::Unsupported(
                "classical sums need a fixed cutoff K; no rigorous tail bound exists".into(),
            ))
        }
    };
    let e = s.entries();
    let m = e.len();
    let tail_estimate = cfg.tail_estimate.then(|| heuristic_tail(s, cutoff));
    if m == 0 {
        return Ok(ClassicalValue {
            value: 1.0,
            tail_estimate,
            cutoff,
        });
    }
    let weights: Vec<i32> = e.iter().map(|x| x.magnitude() as i32).collect();
    let mut acc = vec![Neumaier::default(); m];
    let mut inner = vec![0.0f64; m + 1];
    inner[m] = 1.0;
    for k in 1..=cutoff {
        let kf = k as f64;
        let odd = k % 2 == 1;
        let step = |j: usize, acc: &mut [Neumaier], inner: &[f64]| {
            let mut f = kf.powi(-weights[j]);
            if odd && e[j].is_barred() {
                f = -f;
            }
            acc[j].add(f * inner[j + 1]);
        };
        if star {
            for j in (0..m).rev() {
                step(j, &mut acc, &inner);
                inner[j] = acc[j].value();
            }
        } else {
            for j in 0..m {
                step(j, &mut acc, &inner);
            }
            for j in 0..m {
                inner[j] = acc[j].value();
            }
        }
    }
    Ok(ClassicalValue {
        value: acc[0].value(),
        tail_estimate,
        cutoff,
    })
}
