//! Unbiased random walks on trees and mean first-passage times.
//!
//! [`fpt_exact`] solves the first-passage system `F(u) = 1 + Σ_{v~u} F(v)/deg(u)`
//! exactly by eliminating leaves towards the target. [`mfpt`] averages it over
//! ordered pairs and sets it beside the Wiener-index expressions `2S/|V|`
//! (which it always equals) and `S/|V|` (which is always half of it).

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{serde_ratio, to_ratio, ExactInt, ExactRatio};
use crate::tree::{wiener_oracle, Tree, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkConfig {
    pub rng_seed: u64,
    pub trials: u64,
    /// Per-trial step cap; `None` means `100·n²`.
    pub max_steps: Option<u64>,
}

impl WalkConfig {
    pub fn new(rng_seed: u64, trials: u64) -> WalkConfig {
        WalkConfig {
            rng_seed,
            trials,
            max_steps: None,
        }
    }

    fn step_cap(&self, n: usize) -> u64 {
        self.max_steps.unwrap_or(100 * (n as u64) * (n as u64))
    }
}

/// Moves to a uniformly chosen neighbour of `u`.
pub fn walk_step<R: Rng + ?Sized>(t: &Tree, u: VertexId, rng: &mut R) -> Result<VertexId> {
    if u >= t.len() {
        return Err(Error::BadVertexId { id: u, n: t.len() });
    }
    let nbrs = t.neighbors(u);
    if nbrs.is_empty() {
        return Err(Error::IsolatedVertex);
    }
    Ok(nbrs[rng.gen_range(0..nbrs.len())] as VertexId)
}

/// Expected hitting time of `target` from every vertex.
pub fn fpt_exact(t: &Tree, target: VertexId) -> Result<Vec<ExactRatio>> {
    let n = t.len();
    if target >= n {
        return Err(Error::BadVertexId { id: target, n });
    }
    if n < 2 {
        return Err(Error::IsolatedVertex);
    }
    // BFS order from the target; parent pointers orient the tree.
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    parent[target] = target;
    order.push(target);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &v in t.neighbors(u) {
            let v = v as usize;
            if parent[v] == usize::MAX {
                parent[v] = u;
                order.push(v);
            }
        }
    }
    // Leaves upward: F(u) = a_u + b_u F(parent(u)).
    let mut a = vec![ExactRatio::zero(); n];
    let mut b = vec![ExactRatio::zero(); n];
    let mut sum_a = vec![ExactRatio::zero(); n];
    let mut sum_b = vec![ExactRatio::zero(); n];
    for &u in order.iter().skip(1).rev() {
        let d = ExactRatio::from_integer(BigInt::from(t.degree(u)));
        let denom = ExactRatio::one() - &sum_b[u] / &d;
        if denom.is_zero() {
            return Err(Error::SolveFailure(format!("singular elimination at vertex {u}")));
        }
        a[u] = (ExactRatio::one() + &sum_a[u] / &d) / &denom;
        b[u] = d.recip() / denom;
        let p = parent[u];
        let (au, bu) = (a[u].clone(), b[u].clone());
        sum_a[p] += au;
        sum_b[p] += bu;
    }
    // Root downward.
    let mut f = vec![ExactRatio::zero(); n];
    for &u in order.iter().skip(1) {
        f[u] = &a[u] + &b[u] * &f[parent[u]];
    }
    Ok(f)
}

/// `Σ_{u ≠ v} F(u → v)` over ordered pairs.
pub fn ordered_fpt_total(t: &Tree) -> Result<ExactRatio> {
    let parts: Result<Vec<ExactRatio>> = (0..t.len())
        .into_par_iter()
        .map(|v| fpt_exact(t, v).map(|row| row.into_iter().sum::<ExactRatio>()))
        .collect();
    Ok(parts?.into_iter().sum())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub trials: u64,
    /// Trials that hit the target within the step cap.
    pub completed: u64,
    /// Trials stopped at the step cap; excluded from the mean.
    pub truncated: u64,
    pub mean: f64,
    pub std_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MfptReport {
    pub vertices: usize,
    #[serde(with = "serde_ratio")]
    pub wiener: ExactRatio,
    /// Average of exact first-passage times over ordered pairs.
    #[serde(with = "serde_ratio")]
    pub exact: ExactRatio,
    #[serde(with = "serde_ratio")]
    pub from_wiener_2s_over_v: ExactRatio,
    /// The `S / |V|` expression sometimes quoted for the same quantity.
    #[serde(with = "serde_ratio")]
    pub lemma_s_over_v: ExactRatio,
    /// `exact / lemma_s_over_v`; 2 on every tree.
    #[serde(with = "serde_ratio")]
    pub exact_over_lemma: ExactRatio,
    pub mc: Option<McEstimate>,
}

/// Largest tree on which [`mfpt`] runs the exact solver; above it the exact
/// value is taken from `2S/|V|`.
pub const EXACT_SOLVE_CAP: usize = 2000;

pub fn mfpt(t: &Tree, mc: Option<&WalkConfig>) -> Result<MfptReport> {
    let n = t.len();
    if n < 2 {
        return Err(Error::IsolatedVertex);
    }
    let s = wiener_oracle(t);
    let nn = ExactRatio::from_integer(BigInt::from(n));
    let from_wiener = ExactRatio::from_integer(BigInt::from(2) * &s) / &nn;
    let lemma = to_ratio(&s) / &nn;
    let exact = if n <= EXACT_SOLVE_CAP {
        ordered_fpt_total(t)? / ExactRatio::from_integer(BigInt::from(n * (n - 1)))
    } else {
        from_wiener.clone()
    };
    let mc = mc.map(|cfg| mc_mfpt(t, cfg)).transpose()?;
    Ok(MfptReport {
        vertices: n,
        wiener: to_ratio(&s),
        exact_over_lemma: &exact / &lemma,
        exact,
        from_wiener_2s_over_v: from_wiener,
        lemma_s_over_v: lemma,
        mc,
    })
}

/// Monte-Carlo MFPT over uniformly drawn ordered pairs. Trial `i` uses its
/// own ChaCha stream, so the estimate does not depend on scheduling.
pub fn mc_mfpt(t: &Tree, cfg: &WalkConfig) -> Result<McEstimate> {
    let n = t.len();
    if n < 2 {
        return Err(Error::IsolatedVertex);
    }
    if cfg.trials < 1 {
        return Err(Error::BadParam("at least one trial is required".into()));
    }
    let cap = cfg.step_cap(n);
    let run = |trial: u64| -> Option<u64> {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
        rng.set_stream(trial);
        let source = rng.gen_range(0..n);
        let mut target = rng.gen_range(0..n - 1);
        if target >= source {
            target += 1;
        }
        let mut u = source;
        let mut steps = 0;
        while u != target {
            if steps == cap {
                return None;
            }
            let nbrs = t.neighbors(u);
            u = nbrs[rng.gen_range(0..nbrs.len())] as usize;
            steps += 1;
        }
        Some(steps)
    };
    // (completed, Σx, Σx²) in exact integers
    let (done, sum, sq) = (0..cfg.trials)
        .into_par_iter()
        .map(|i| match run(i) {
            Some(x) => (1u64, BigInt::from(x), BigInt::from(x) * x),
            None => (0, BigInt::zero(), BigInt::zero()),
        })
        .reduce(
            || (0, BigInt::zero(), BigInt::zero()),
            |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2),
        );
    let (mean, std_error) = if done == 0 {
        (f64::NAN, f64::NAN)
    } else {
        let k = BigInt::from(done);
        let mean = ExactRatio::new(sum.clone(), k.clone());
        // sample variance (Σx² - (Σx)²/k) / (k - 1)
        let var = if done > 1 {
            (ExactRatio::from_integer(sq) - ExactRatio::new(&sum * &sum, k.clone()))
                / ExactRatio::from_integer(k - 1)
        } else {
            ExactRatio::zero()
        };
        let var = var.to_f64().unwrap_or(f64::NAN);
        (mean.to_f64().unwrap_or(f64::NAN), (var / done as f64).sqrt())
    };
    Ok(McEstimate {
        trials: cfg.trials,
        completed: done,
        truncated: cfg.trials - done,
        mean,
        std_error,
    })
}

/// `2 S / |V|` straight from a Wiener index.
pub fn mfpt_from_wiener(s: &ExactInt, n: &ExactInt) -> ExactRatio {
    ExactRatio::new(BigInt::from(2) * s, n.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, ratio};
    use crate::growth::{grow, Family, ModelSpec};

    #[test]
    fn hitting_times_on_small_trees() {
        let p2 = Tree::single_edge();
        assert_eq!(fpt_exact(&p2, 1).unwrap(), vec![ratio(1), ratio(0)]);
        let p3 = Tree::path(3).unwrap();
        assert_eq!(fpt_exact(&p3, 2).unwrap(), vec![ratio(4), ratio(3), ratio(0)]);
        assert!(matches!(
            fpt_exact(&Tree::single_vertex(), 0),
            Err(Error::IsolatedVertex)
        ));
        assert!(matches!(fpt_exact(&p3, 3), Err(Error::BadVertexId { .. })));
    }

    #[test]
    fn commute_identity_on_a_caterpillar() {
        let t = Tree::from_edges(7, &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 5), (5, 6)]).unwrap();
        let n = t.len();
        for u in 0..n {
            let fu = fpt_exact(&t, u).unwrap();
            let du = t.bfs_distances(u).unwrap();
            for (v, fuv) in fu.iter().enumerate() {
                let fv = fpt_exact(&t, v).unwrap();
                assert_eq!(&fv[u] + fuv, ratio(2 * (n as i64 - 1) * du.dist[v] as i64));
            }
        }
    }

    #[test]
    fn mfpt_reports() {
        let r = mfpt(&Tree::single_edge(), None).unwrap();
        assert_eq!(
            (r.exact.clone(), r.lemma_s_over_v.clone()),
            (ratio(1), frac(1, 2))
        );
        let r = mfpt(&Tree::path(3).unwrap(), None).unwrap();
        assert_eq!(r.exact, frac(8, 3));
        assert_eq!(r.lemma_s_over_v, frac(4, 3));
        assert_eq!(r.exact_over_lemma, ratio(2));
        let r = mfpt(&Tree::star(3).unwrap(), None).unwrap();
        assert_eq!(r.exact, frac(9, 2));
        let t2 = grow(&ModelSpec::standard(Family::TGraph, 2)).unwrap();
        assert_eq!(mfpt(&t2, None).unwrap().exact, frac(117, 5));
    }

    #[test]
    fn walk_step_frequencies() {
        let p3 = Tree::path(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let draws = 100_000;
        let zeros = (0..draws)
            .filter(|_| walk_step(&p3, 1, &mut rng).unwrap() == 0)
            .count();
        let sigma = (draws as f64 * 0.25).sqrt();
        assert!((zeros as f64 - draws as f64 / 2.0).abs() < 3.0 * sigma);
        assert_eq!(walk_step(&p3, 0, &mut rng).unwrap(), 1);
        assert!(matches!(
            walk_step(&Tree::single_vertex(), 0, &mut rng),
            Err(Error::IsolatedVertex)
        ));
    }

    #[test]
    fn mc_is_reproducible_and_exact_on_p2() {
        let cfg = WalkConfig::new(7, 2000);
        let p2 = Tree::single_edge();
        let e = mc_mfpt(&p2, &cfg).unwrap();
        assert_eq!((e.mean, e.std_error, e.truncated), (1.0, 0.0, 0));
        let t = Tree::path(6).unwrap();
        assert_eq!(mc_mfpt(&t, &cfg).unwrap(), mc_mfpt(&t, &cfg).unwrap());
    }

    #[test]
    fn truncation_is_reported() {
        let cfg = WalkConfig {
            rng_seed: 1,
            trials: 500,
            max_steps: Some(2),
        };
        let e = mc_mfpt(&Tree::path(8).unwrap(), &cfg).unwrap();
        assert!(e.truncated > 0);
        assert_eq!(e.completed + e.truncated, 500);
    }
}
