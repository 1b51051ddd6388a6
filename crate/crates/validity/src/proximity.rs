//! Inter-cluster proximity: counts, across a grid of membership levels, how
//! many points two clusters share above each level, weighted per point by how
//! vague that point's assignment is. Averaging the pairwise proximities over
//! all ordered cluster pairs yields the validity score `v_proposed`
//! (lower is better).

use crate::core::{FuzzyCluster, MembershipMatrix};
use crate::error::{Error, Result};

/// Absolute slack used when comparing a grid level against a membership
/// value. Keeps the level-by-level sum and the floor-based closed form in
/// exact agreement when memberships land on grid boundaries.
pub const BOUNDARY_SLACK: f64 = 1e-9;

/// The discrete set of membership levels {h, 2h, ..., T*h} with T*h <= 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuGrid {
    step: f64,
    level_count: usize,
}

impl Default for MuGrid {
    fn default() -> Self {
        MuGrid::new(0.01).expect("default grid step is valid")
    }
}

impl MuGrid {
    pub fn new(step: f64) -> Result<Self> {
        if !step.is_finite() || step <= 0.0 || step > 1.0 {
            return Err(Error::Config(format!(
                "grid step must lie in (0, 1], got {step}"
            )));
        }
        // Largest k with k*step <= 1, computed against the same predicate the
        // level iterator uses so the two can never disagree.
        let mut t = (1.0 / step).floor() as i64;
        while t > 0 && (t as f64) * step > 1.0 {
            t -= 1;
        }
        while ((t + 1) as f64) * step <= 1.0 {
            t += 1;
        }
        Ok(MuGrid {
            step,
            level_count: t.max(0) as usize,
        })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Number of levels in the grid.
    pub fn level_count(&self) -> usize {
        self.level_count
    }

    /// The levels h, 2h, ..., in increasing order.
    pub fn levels(&self) -> impl Iterator<Item = f64> + '_ {
        (1..=self.level_count).map(move |k| k as f64 * self.step)
    }

    /// How many grid levels lie at or below `bound` (with boundary slack).
    /// This is the closed-form counterpart of testing every level against
    /// `bound`; both use the identical comparison, so the counts agree
    /// exactly.
    pub fn levels_within(&self, bound: f64) -> usize {
        if bound <= 0.0 {
            return 0;
        }
        let h = self.step;
        let limit = bound + BOUNDARY_SLACK;
        let mut k = ((limit / h).floor()).max(0.0) as i64;
        while k > 0 && (k as f64) * h > limit {
            k -= 1;
        }
        while ((k + 1) as f64) * h <= limit {
            k += 1;
        }
        (k.max(0) as usize).min(self.level_count)
    }
}

/// How the per-point vagueness weight is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMode {
    /// Second-largest membership over largest: 1 at maximal vagueness,
    /// small for crisply assigned points.
    Ratio,
    /// Constant 1 for every point (unweighted ablation).
    ConstantOne,
}

/// Vagueness-weight configuration. `vague_floor` and `crisp_ceiling`
/// document the target bands the weight is designed around: a point with
/// top membership at most `vague_floor` counts as vague (weight near 1),
/// one with top membership at least `crisp_ceiling` counts as crisply
/// assigned (weight near 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightConfig {
    mode: WeightMode,
    vague_floor: f64,
    crisp_ceiling: f64,
}

impl Default for WeightConfig {
    fn default() -> Self {
        WeightConfig {
            mode: WeightMode::Ratio,
            vague_floor: 0.5,
            crisp_ceiling: 0.8,
        }
    }
}

impl WeightConfig {
    pub fn new(mode: WeightMode, vague_floor: f64, crisp_ceiling: f64) -> Result<Self> {
        if !vague_floor.is_finite()
            || !crisp_ceiling.is_finite()
            || vague_floor <= 0.0
            || vague_floor > crisp_ceiling
            || crisp_ceiling > 1.0
        {
            return Err(Error::Config(format!(
                "weight bands must satisfy 0 < vague_floor <= crisp_ceiling <= 1, \
                 got ({vague_floor}, {crisp_ceiling})"
            )));
        }
        Ok(WeightConfig {
            mode,
            vague_floor,
            crisp_ceiling,
        })
    }

    pub fn mode(&self) -> WeightMode {
        self.mode
    }

    pub fn vague_floor(&self) -> f64 {
        self.vague_floor
    }

    pub fn crisp_ceiling(&self) -> f64 {
        self.crisp_ceiling
    }
}

/// Indicator that both clusters hold point `x_index` at level `mu` or above:
/// 1.0 if mu <= min of the two memberships (inclusive, with boundary slack),
/// else 0.0.
pub fn delta(x_index: usize, mu: f64, fp: &FuzzyCluster<'_>, fq: &FuzzyCluster<'_>) -> f64 {
    debug_assert!(
        std::ptr::eq(fp.matrix(), fq.matrix()),
        "clusters must come from the same matrix"
    );
    let shared = fp.membership(x_index).min(fq.membership(x_index));
    if mu <= shared + BOUNDARY_SLACK {
        1.0
    } else {
        0.0
    }
}

/// Vagueness weight of one point from its full membership column.
pub fn omega(column: &[f64], cfg: &WeightConfig) -> f64 {
    match cfg.mode() {
        WeightMode::ConstantOne => 1.0,
        WeightMode::Ratio => {
            let mut top = f64::NEG_INFINITY;
            let mut second = f64::NEG_INFINITY;
            for &mu in column {
                if mu > top {
                    second = top;
                    top = mu;
                } else if mu > second {
                    second = mu;
                }
            }
            second / top
        }
    }
}

/// Per-point vagueness weights for a whole matrix.
pub fn omega_values(u: &MembershipMatrix, cfg: &WeightConfig) -> Vec<f64> {
    (0..u.n()).map(|j| omega(&u.column(j), cfg)).collect()
}

/// Proximity at a single membership level: sum_j delta(x_j) * omega(x_j).
pub fn f_mu(mu: f64, fp: &FuzzyCluster<'_>, fq: &FuzzyCluster<'_>, w: &[f64]) -> f64 {
    debug_assert_eq!(w.len(), fp.len());
    let mut total = 0.0;
    for (j, weight) in w.iter().enumerate() {
        total += delta(j, mu, fp, fq) * weight;
    }
    total
}

fn pair_proximity_with(
    fp: &FuzzyCluster<'_>,
    fq: &FuzzyCluster<'_>,
    grid: &MuGrid,
    w: &[f64],
) -> f64 {
    let mut total = 0.0;
    for (j, weight) in w.iter().enumerate() {
        let shared = fp.membership(j).min(fq.membership(j));
        total += grid.levels_within(shared) as f64 * weight;
    }
    total
}

/// Total proximity of two clusters: the grid-level sum of `f_mu`, computed
/// through the equivalent per-point closed form
/// sum_j (number of levels at or below min membership) * omega_j.
pub fn pair_proximity(
    fp: &FuzzyCluster<'_>,
    fq: &FuzzyCluster<'_>,
    grid: &MuGrid,
    cfg: &WeightConfig,
) -> f64 {
    let w = omega_values(fp.matrix(), cfg);
    pair_proximity_with(fp, fq, grid, &w)
}

/// The proximity validity score: the sum of pair proximities over all
/// ordered cluster pairs p != q, divided by the number of unordered pairs
/// (so the score is twice the mean pairwise proximity). Lower is better;
/// zero exactly when no point is shared at any grid level.
pub fn v_proposed(u: &MembershipMatrix, grid: &MuGrid, cfg: &WeightConfig) -> f64 {
    let c = u.c();
    let w = omega_values(u, cfg);
    let mut total = 0.0;
    for p in 0..c {
        for q in 0..c {
            if p != q {
                total += pair_proximity_with(&u.cluster(p), &u.cluster(q), grid, &w);
            }
        }
    }
    let pairs = (c * (c - 1) / 2) as f64;
    total / pairs
}
