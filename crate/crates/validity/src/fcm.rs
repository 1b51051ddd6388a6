//! Fuzzy c-means solver: alternating membership/centroid optimization with
//! seeded random restarts, returning the restart with the lowest final
//! objective value.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::core::{
    check_shapes, sqdist_unchecked, Centroids, DataSet, FcmConfig, MembershipMatrix,
};
use crate::error::{Error, Result};

/// A converged fuzzy partition plus solver metadata.
#[derive(Debug, Clone)]
pub struct FcmResult {
    pub u: MembershipMatrix,
    pub v: Centroids,
    /// Objective value J_m after initialization and after every update step,
    /// ending with the value for the final refreshed centroids.
    pub jm_trace: Vec<f64>,
    /// Number of alternating iterations performed.
    pub iterations: usize,
    /// Which restart produced this result.
    pub restart_index: usize,
    /// The RNG seed that restart used.
    pub seed_used: u64,
}

/// Picks `c` distinct data points uniformly without replacement as the
/// initial centroids, deterministically for a given seed.
pub fn init_centroids(data: &DataSet, c: usize, seed: u64) -> Result<Centroids> {
    if c < 2 || c > data.n() {
        return Err(Error::InvalidRequest(format!(
            "cluster count {c} must be in [2, {}]",
            data.n()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = rand::seq::index::sample(&mut rng, data.n(), c);
    let v = picks
        .iter()
        .map(|j| data.point(j).to_vec())
        .collect::<Vec<_>>();
    Centroids::new(v)
}

/// Membership update: mu_ij = [ sum_k (d_ij^2 / d_kj^2)^(1/(m-1)) ]^-1,
/// computed via inverse-power weights. A point sitting exactly on one
/// centroid gets membership 1 there; if several centroids coincide with it,
/// the mass is split equally among them.
#[allow(clippy::needless_range_loop)] // subscripts mirror the update formula
pub fn update_memberships(data: &DataSet, v: &Centroids, m: f64) -> Result<MembershipMatrix> {
    if v.d() != data.d() {
        return Err(Error::Dimension {
            expected: data.d(),
            actual: v.d(),
        });
    }
    let c = v.c();
    let n = data.n();
    if c < 2 {
        return Err(Error::InvalidRequest(
            "membership update needs at least 2 centroids".into(),
        ));
    }
    let p = 1.0 / (m - 1.0);
    let mut rows = vec![vec![0.0; n]; c];
    let mut weights = vec![0.0; c];
    for j in 0..n {
        let x = data.point(j);
        let mut zero_count = 0usize;
        for i in 0..c {
            let d2 = sqdist_unchecked(x, v.get(i));
            if d2 == 0.0 {
                zero_count += 1;
            }
            weights[i] = d2;
        }
        if zero_count > 0 {
            let share = 1.0 / zero_count as f64;
            for i in 0..c {
                rows[i][j] = if weights[i] == 0.0 { share } else { 0.0 };
            }
            continue;
        }
        for w in weights.iter_mut() {
            *w = w.powf(-p);
        }
        // Inverse powers of near-zero distances can overflow; such points are
        // effectively on a centroid, so treat the overflowing entries like
        // coinciding ones.
        let inf_count = weights.iter().filter(|w| w.is_infinite()).count();
        if inf_count > 0 {
            let share = 1.0 / inf_count as f64;
            for i in 0..c {
                rows[i][j] = if weights[i].is_infinite() { share } else { 0.0 };
            }
            continue;
        }
        let total: f64 = weights.iter().sum();
        for i in 0..c {
            rows[i][j] = weights[i] / total;
        }
    }
    MembershipMatrix::new(rows)
}

/// Centroid update: v_i = sum_j mu_ij^m x_j / sum_j mu_ij^m.
pub fn update_centroids(data: &DataSet, u: &MembershipMatrix, m: f64) -> Result<Centroids> {
    if u.n() != data.n() {
        return Err(Error::Dimension {
            expected: data.n(),
            actual: u.n(),
        });
    }
    let c = u.c();
    let d = data.d();
    let mut v = vec![vec![0.0; d]; c];
    for (i, center) in v.iter_mut().enumerate() {
        let mut mass = 0.0;
        for j in 0..data.n() {
            let w = u.get(i, j).powf(m);
            mass += w;
            for (acc, x) in center.iter_mut().zip(data.point(j)) {
                *acc += w * x;
            }
        }
        if mass == 0.0 {
            return Err(Error::DegenerateCluster { cluster: i });
        }
        for acc in center.iter_mut() {
            *acc /= mass;
        }
    }
    Centroids::new(v)
}

/// The FCM objective J_m = sum_i sum_j mu_ij^m ||x_j - v_i||^2.
pub fn objective(data: &DataSet, u: &MembershipMatrix, v: &Centroids, m: f64) -> Result<f64> {
    check_shapes(data, u, v)?;
    let mut total = 0.0;
    for i in 0..u.c() {
        let center = v.get(i);
        for j in 0..data.n() {
            total += u.get(i, j).powf(m) * sqdist_unchecked(data.point(j), center);
        }
    }
    Ok(total)
}

struct SingleRun {
    u: MembershipMatrix,
    v: Centroids,
    trace: Vec<f64>,
    iterations: usize,
}

fn run_single(data: &DataSet, c: usize, cfg: &FcmConfig, seed: u64) -> Result<SingleRun> {
    let mut v = init_centroids(data, c, seed)?;
    let mut u = update_memberships(data, &v, cfg.m)?;
    let mut trace = vec![objective(data, &u, &v, cfg.m)?];
    let mut iterations = 0;
    for it in 1..=cfg.max_iter {
        v = update_centroids(data, &u, cfg.m)?;
        let u_next = update_memberships(data, &v, cfg.m)?;
        trace.push(objective(data, &u_next, &v, cfg.m)?);
        let diff = u_next.max_abs_diff(&u);
        u = u_next;
        iterations = it;
        if diff < cfg.epsilon {
            break;
        }
    }
    // Refresh centroids so (u, v) are mutually consistent; the objective can
    // only improve, keeping the trace nonincreasing.
    v = update_centroids(data, &u, cfg.m)?;
    trace.push(objective(data, &u, &v, cfg.m)?);
    Ok(SingleRun {
        u,
        v,
        trace,
        iterations,
    })
}

/// Runs FCM with `cfg.restarts` seeded restarts (seeds `cfg.seed + r`) and
/// returns the restart with the lowest final J_m; ties keep the earliest
/// restart. Fails only if every restart fails.
pub fn run(data: &DataSet, c: usize, cfg: &FcmConfig) -> Result<FcmResult> {
    cfg.validate()?;
    if c < 2 || c > data.n() {
        return Err(Error::InvalidRequest(format!(
            "cluster count {c} must be in [2, {}]",
            data.n()
        )));
    }
    let mut best: Option<(SingleRun, usize, u64)> = None;
    for r in 0..cfg.restarts {
        let seed = cfg.seed.wrapping_add(r as u64);
        let single = match run_single(data, c, cfg, seed) {
            Ok(s) => s,
            Err(Error::DegenerateCluster { .. }) => continue,
            Err(e) => return Err(e),
        };
        let final_j = *single.trace.last().expect("trace is never empty");
        let better = match &best {
            None => true,
            Some((incumbent, _, _)) => {
                final_j < *incumbent.trace.last().expect("trace is never empty")
            }
        };
        if better {
            best = Some((single, r, seed));
        }
    }
    match best {
        Some((single, restart_index, seed_used)) => Ok(FcmResult {
            u: single.u,
            v: single.v,
            jm_trace: single.trace,
            iterations: single.iterations,
            restart_index,
            seed_used,
        }),
        None => Err(Error::AllRestartsFailed { c }),
    }
}
