//! Seven established cluster-validity indexes, each a pure function of
//! (data, memberships, centroids). Scores based on centroid separation fail
//! with `IdenticalCentroids` when two centroids coincide; the sweep harness
//! renders those as +inf and excludes them from selection.

use crate::core::{check_shapes, sqdist_unchecked, Centroids, DataSet, MembershipMatrix};
use crate::error::{Error, Result};

/// Configuration for the partition-entropy index: the logarithm base.
#[derive(Debug, Clone, PartialEq)]
pub struct PeConfig {
    log_base: f64,
}

impl Default for PeConfig {
    fn default() -> Self {
        PeConfig {
            log_base: std::f64::consts::E,
        }
    }
}

impl PeConfig {
    pub fn new(log_base: f64) -> Result<Self> {
        if !log_base.is_finite() || log_base <= 1.0 {
            return Err(Error::Config(format!(
                "entropy log base must be finite and > 1, got {log_base}"
            )));
        }
        Ok(PeConfig { log_base })
    }

    pub fn log_base(&self) -> f64 {
        self.log_base
    }
}

/// Weighting factor for the scatter term of `v_cwb`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CwbParams {
    alpha: f64,
}

impl CwbParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::Config(format!(
                "cwb alpha must be finite and >= 0, got {alpha}"
            )));
        }
        Ok(CwbParams { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Weighting factor for the variance term of `v_bcrit`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BcritParams {
    alpha: f64,
}

impl Default for BcritParams {
    fn default() -> Self {
        BcritParams { alpha: 1.0 }
    }
}

impl BcritParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::Config(format!(
                "bcrit alpha must be finite and >= 0, got {alpha}"
            )));
        }
        Ok(BcritParams { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Minimum squared distance over distinct centroid pairs.
fn min_separation_sq(v: &Centroids) -> f64 {
    let c = v.c();
    let mut best = f64::INFINITY;
    for i in 0..c {
        for k in (i + 1)..c {
            let d2 = sqdist_unchecked(v.get(i), v.get(k));
            if d2 < best {
                best = d2;
            }
        }
    }
    best
}

/// Membership-squared compactness: sum_i sum_j mu_ij^2 ||x_j - v_i||^2.
fn compactness(data: &DataSet, u: &MembershipMatrix, v: &Centroids) -> f64 {
    let mut total = 0.0;
    for i in 0..u.c() {
        let center = v.get(i);
        for j in 0..data.n() {
            let mu = u.get(i, j);
            total += mu * mu * sqdist_unchecked(data.point(j), center);
        }
    }
    total
}

/// Component-wise fuzzy variance of each cluster:
/// sigma(v_i)_q = (1/n) sum_j mu_ij (x_jq - v_iq)^2.
fn fuzzy_variances(data: &DataSet, u: &MembershipMatrix, v: &Centroids) -> Vec<Vec<f64>> {
    let n = data.n();
    let d = data.d();
    let mut out = vec![vec![0.0; d]; u.c()];
    for (i, var) in out.iter_mut().enumerate() {
        let center = v.get(i);
        for j in 0..n {
            let mu = u.get(i, j);
            let x = data.point(j);
            for q in 0..d {
                let t = x[q] - center[q];
                var[q] += mu * t * t;
            }
        }
        for q in var.iter_mut() {
            *q /= n as f64;
        }
    }
    out
}

/// Component-wise variance of the data about its mean (1/n normalization).
fn total_variance(data: &DataSet) -> Vec<f64> {
    let n = data.n();
    let d = data.d();
    let mut mean = vec![0.0; d];
    for j in 0..n {
        for (m, x) in mean.iter_mut().zip(data.point(j)) {
            *m += x;
        }
    }
    for m in mean.iter_mut() {
        *m /= n as f64;
    }
    let mut var = vec![0.0; d];
    for j in 0..n {
        let x = data.point(j);
        for q in 0..d {
            let t = x[q] - mean[q];
            var[q] += t * t;
        }
    }
    for v in var.iter_mut() {
        *v /= n as f64;
    }
    var
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Partition coefficient: (1/n) sum_ij mu_ij^2; higher is better, range
/// [1/c, 1] with 1 exactly on crisp partitions.
pub fn v_pc(u: &MembershipMatrix) -> f64 {
    let mut total = 0.0;
    for i in 0..u.c() {
        for j in 0..u.n() {
            let mu = u.get(i, j);
            total += mu * mu;
        }
    }
    total / u.n() as f64
}

/// Partition entropy: -(1/n) sum_ij mu_ij log_a(mu_ij) with 0 log 0 = 0;
/// lower is better, range [0, log_a c] with 0 exactly on crisp partitions.
pub fn v_pe(u: &MembershipMatrix, cfg: &PeConfig) -> f64 {
    let ln_base = cfg.log_base().ln();
    let mut total = 0.0;
    for i in 0..u.c() {
        for j in 0..u.n() {
            let mu = u.get(i, j);
            if mu > 0.0 {
                total += mu * mu.ln() / ln_base;
            }
        }
    }
    -total / u.n() as f64
}

/// Compactness over minimum separation:
/// [sum_ij mu_ij^2 ||x_j - v_i||^2] / [n * min_{i != k} ||v_i - v_k||^2].
pub fn v_xb(data: &DataSet, u: &MembershipMatrix, v: &Centroids) -> Result<f64> {
    check_shapes(data, u, v)?;
    let sep = min_separation_sq(v);
    if sep == 0.0 {
        return Err(Error::IdenticalCentroids);
    }
    Ok(compactness(data, u, v) / (data.n() as f64 * sep))
}

/// Signed compactness-minus-spread score:
/// sum_ij mu_ij^2 (||x_j - v_i||^2 - ||v_i - vbar||^2) with vbar the
/// unweighted centroid mean; may be negative.
pub fn v_fs(data: &DataSet, u: &MembershipMatrix, v: &Centroids) -> Result<f64> {
    check_shapes(data, u, v)?;
    let vbar = v.mean();
    let mut total = 0.0;
    for i in 0..u.c() {
        let center = v.get(i);
        let spread = sqdist_unchecked(center, &vbar);
        for j in 0..data.n() {
            let mu = u.get(i, j);
            total += mu * mu * (sqdist_unchecked(data.point(j), center) - spread);
        }
    }
    Ok(total)
}

/// Compactness plus a centroid-spread penalty over minimum separation:
/// [sum_ij mu_ij^2 ||x_j - v_i||^2 + (1/c) sum_i ||v_i - vbar||^2]
/// / min_{i != k} ||v_i - v_k||^2.
pub fn v_k(data: &DataSet, u: &MembershipMatrix, v: &Centroids) -> Result<f64> {
    check_shapes(data, u, v)?;
    let sep = min_separation_sq(v);
    if sep == 0.0 {
        return Err(Error::IdenticalCentroids);
    }
    let vbar = v.mean();
    let penalty: f64 = v
        .iter()
        .map(|center| sqdist_unchecked(center, &vbar))
        .sum::<f64>()
        / v.c() as f64;
    Ok((compactness(data, u, v) + penalty) / sep)
}

/// The separation part of `v_cwb`:
/// (D_max / D_min) * sum_k (sum_z ||v_k - v_z||)^-1 over plain Euclidean
/// centroid distances. Exposed so callers can self-scale the alpha weight
/// from a reference partition.
pub fn cwb_separation(v: &Centroids) -> Result<f64> {
    let c = v.c();
    let mut d_max = 0.0f64;
    let mut d_min = f64::INFINITY;
    for i in 0..c {
        for k in (i + 1)..c {
            let d = sqdist_unchecked(v.get(i), v.get(k)).sqrt();
            d_max = d_max.max(d);
            d_min = d_min.min(d);
        }
    }
    if d_min == 0.0 {
        return Err(Error::IdenticalCentroids);
    }
    let mut sum = 0.0;
    for k in 0..c {
        let row: f64 = (0..c)
            .map(|z| sqdist_unchecked(v.get(k), v.get(z)).sqrt())
            .sum();
        sum += 1.0 / row;
    }
    Ok((d_max / d_min) * sum)
}

/// Scatter-plus-separation index:
/// alpha * [sum_i ||sigma(v_i)||] / [c * ||sigma(X)||] + cwb_separation(v),
/// with sigma the membership-weighted component-wise variances.
pub fn v_cwb(
    data: &DataSet,
    u: &MembershipMatrix,
    v: &Centroids,
    params: &CwbParams,
) -> Result<f64> {
    check_shapes(data, u, v)?;
    let sep = cwb_separation(v)?;
    let cluster_norms: f64 = fuzzy_variances(data, u, v)
        .iter()
        .map(|var| norm(var))
        .sum();
    let data_norm = norm(&total_variance(data));
    let scatter = cluster_norms / (v.c() as f64 * data_norm);
    Ok(params.alpha() * scatter + sep)
}

/// Distance-ratio-plus-variance index:
/// D_max/D_min over plain centroid distances, plus
/// alpha * (1/c) * [sum over clusters and dimensions of fuzzy variance]
/// / [total variance summed over dimensions].
pub fn v_bcrit(
    data: &DataSet,
    u: &MembershipMatrix,
    v: &Centroids,
    params: &BcritParams,
) -> Result<f64> {
    check_shapes(data, u, v)?;
    let c = v.c();
    let mut d_max = 0.0f64;
    let mut d_min = f64::INFINITY;
    for i in 0..c {
        for k in (i + 1)..c {
            let d = sqdist_unchecked(v.get(i), v.get(k)).sqrt();
            d_max = d_max.max(d);
            d_min = d_min.min(d);
        }
    }
    if d_min == 0.0 {
        return Err(Error::IdenticalCentroids);
    }
    let cluster_var: f64 = fuzzy_variances(data, u, v)
        .iter()
        .map(|var| var.iter().sum::<f64>())
        .sum();
    let total_var: f64 = total_variance(data).iter().sum();
    Ok(d_max / d_min + params.alpha() * cluster_var / (c as f64 * total_var))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::column_normalize;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn data_1d(values: &[f64]) -> DataSet {
        DataSet::new("test", values.iter().map(|v| vec![*v]).collect()).unwrap()
    }

    fn crisp_two(n_per: usize) -> MembershipMatrix {
        let mut a = vec![1.0; n_per];
        a.extend(vec![0.0; n_per]);
        let mut b = vec![0.0; n_per];
        b.extend(vec![1.0; n_per]);
        MembershipMatrix::new(vec![a, b]).unwrap()
    }

    #[test]
    fn pc_hand_values() {
        assert_eq!(v_pc(&crisp_two(2)), 1.0);

        let uniform = MembershipMatrix::new(vec![vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        assert_eq!(v_pc(&uniform), 0.5);

        let u = MembershipMatrix::new(vec![vec![0.6, 0.3, 0.5], vec![0.4, 0.7, 0.5]]).unwrap();
        assert_relative_eq!(v_pc(&u), 1.60 / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn pe_hand_values() {
        let e = PeConfig::default();
        assert_eq!(v_pe(&crisp_two(2), &e), 0.0);

        let uniform = MembershipMatrix::new(vec![vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        assert_relative_eq!(
            v_pe(&uniform, &e),
            std::f64::consts::LN_2,
            max_relative = 1e-12
        );

        let u = MembershipMatrix::new(vec![vec![0.9], vec![0.1]]).unwrap();
        assert_relative_eq!(v_pe(&u, &e), 0.3250829733914482, max_relative = 1e-12);

        // Changing the base rescales the entropy.
        let base2 = PeConfig::new(2.0).unwrap();
        assert_relative_eq!(
            v_pe(&u, &base2),
            0.3250829733914482 / std::f64::consts::LN_2,
            max_relative = 1e-12
        );
    }

    #[test]
    fn pe_config_rejects_bad_base() {
        assert!(PeConfig::new(1.0).is_err());
        assert!(PeConfig::new(0.5).is_err());
        assert!(PeConfig::new(f64::NAN).is_err());
    }

    #[test]
    fn xb_hand_values() {
        // Every point on its centroid, crisp: zero numerator.
        let data = data_1d(&[0.0, 0.0, 4.0, 4.0]);
        let v = Centroids::new(vec![vec![0.0], vec![4.0]]).unwrap();
        assert_eq!(v_xb(&data, &crisp_two(2), &v).unwrap(), 0.0);

        // Points {0, 1}, centroids {0, 1}, all memberships 0.5 -> 0.25.
        let data = data_1d(&[0.0, 1.0]);
        let v = Centroids::new(vec![vec![0.0], vec![1.0]]).unwrap();
        let half = MembershipMatrix::new(vec![vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        assert_eq!(v_xb(&data, &half, &v).unwrap(), 0.25);
    }

    #[test]
    fn xb_and_k_fail_on_identical_centroids() {
        let data = data_1d(&[0.0, 1.0]);
        let v = Centroids::new(vec![vec![0.5], vec![0.5]]).unwrap();
        let half = MembershipMatrix::new(vec![vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        assert!(matches!(
            v_xb(&data, &half, &v),
            Err(Error::IdenticalCentroids)
        ));
        assert!(matches!(
            v_k(&data, &half, &v),
            Err(Error::IdenticalCentroids)
        ));
        assert!(matches!(
            v_cwb(&data, &half, &v, &CwbParams::new(1.0).unwrap()),
            Err(Error::IdenticalCentroids)
        ));
        assert!(matches!(
            v_bcrit(&data, &half, &v, &BcritParams::default()),
            Err(Error::IdenticalCentroids)
        ));
    }

    #[test]
    fn xb_and_k_are_scale_invariant_under_power_of_two_scaling() {
        let data = data_1d(&[0.0, 0.7, 2.9, 4.0]);
        let scaled = data_1d(&[0.0, 1.4, 5.8, 8.0]);
        let u = column_normalize(&[
            vec![0.9, 0.6, 0.2, 0.1],
            vec![0.1, 0.4, 0.8, 0.9],
        ])
        .unwrap();
        let v = Centroids::new(vec![vec![0.4], vec![3.5]]).unwrap();
        let v_scaled = Centroids::new(vec![vec![0.8], vec![7.0]]).unwrap();
        assert_eq!(
            v_xb(&data, &u, &v).unwrap(),
            v_xb(&scaled, &u, &v_scaled).unwrap()
        );
        assert_eq!(
            v_k(&data, &u, &v).unwrap(),
            v_k(&scaled, &u, &v_scaled).unwrap()
        );
    }

    #[test]
    fn fs_hand_value() {
        // Points {0, 2}, centroids {0, 2}, crisp: vbar = 1, score -2.
        let data = data_1d(&[0.0, 2.0]);
        let v = Centroids::new(vec![vec![0.0], vec![2.0]]).unwrap();
        let crisp = MembershipMatrix::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(v_fs(&data, &crisp, &v).unwrap(), -2.0);
    }

    #[test]
    fn k_hand_value_and_positivity() {
        let data = data_1d(&[0.0, 2.0]);
        let v = Centroids::new(vec![vec![0.0], vec![2.0]]).unwrap();
        let crisp = MembershipMatrix::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(v_k(&data, &crisp, &v).unwrap(), 0.25);

        let fuzzy = MembershipMatrix::new(vec![vec![0.7, 0.2], vec![0.3, 0.8]]).unwrap();
        assert!(v_k(&data, &fuzzy, &v).unwrap() > 0.0);
    }

    #[test]
    fn cwb_hand_values() {
        // Two zero-spread blobs: scatter term vanishes, so the score is the
        // pure separation term 2/D regardless of alpha.
        let data = data_1d(&[0.0, 0.0, 4.0, 4.0]);
        let v = Centroids::new(vec![vec![0.0], vec![4.0]]).unwrap();
        let u = crisp_two(2);
        let d = 4.0;
        assert_eq!(
            v_cwb(&data, &u, &v, &CwbParams::new(0.0).unwrap()).unwrap(),
            2.0 / d
        );
        assert_eq!(
            v_cwb(&data, &u, &v, &CwbParams::new(7.0).unwrap()).unwrap(),
            2.0 / d
        );

        // Spread-out blobs: hand-computed scatter 0.05 per unit alpha plus
        // separation 2/3; doubling alpha strictly increases the score.
        let data = data_1d(&[0.0, 1.0, 3.0, 4.0]);
        let v = Centroids::new(vec![vec![0.5], vec![3.5]]).unwrap();
        let one = v_cwb(&data, &u, &v, &CwbParams::new(1.0).unwrap()).unwrap();
        let two = v_cwb(&data, &u, &v, &CwbParams::new(2.0).unwrap()).unwrap();
        assert_relative_eq!(one, 0.05 + 2.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(two, 0.10 + 2.0 / 3.0, max_relative = 1e-12);
        assert!(two > one);
    }

    #[test]
    fn bcrit_hand_values() {
        // c = 2 with alpha = 0: the distance ratio term is exactly 1.
        let data = data_1d(&[0.0, 1.0, 3.0, 4.0]);
        let v = Centroids::new(vec![vec![0.5], vec![3.5]]).unwrap();
        let u = crisp_two(2);
        assert_eq!(
            v_bcrit(&data, &u, &v, &BcritParams::new(0.0).unwrap()).unwrap(),
            1.0
        );
        // Default alpha = 1: hand-computed variance term 0.05.
        assert_relative_eq!(
            v_bcrit(&data, &u, &v, &BcritParams::default()).unwrap(),
            1.05,
            max_relative = 1e-12
        );
    }

    #[test]
    fn bcrit_ratio_is_one_for_equilateral_centroids() {
        let data = DataSet::new(
            "tri",
            vec![
                vec![0.0, 0.0],
                vec![1.0, 0.0],
                vec![0.5, 3f64.sqrt() / 2.0],
            ],
        )
        .unwrap();
        let v = Centroids::new(data.points().to_vec()).unwrap();
        let u = MembershipMatrix::new(vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap();
        let score = v_bcrit(&data, &u, &v, &BcritParams::new(0.0).unwrap()).unwrap();
        assert_relative_eq!(score, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn indexes_are_pure() {
        let data = data_1d(&[0.0, 0.7, 2.9, 4.0]);
        let u = column_normalize(&[
            vec![0.9, 0.6, 0.2, 0.1],
            vec![0.1, 0.4, 0.8, 0.9],
        ])
        .unwrap();
        let v = Centroids::new(vec![vec![0.4], vec![3.5]]).unwrap();
        assert_eq!(v_pc(&u).to_bits(), v_pc(&u).to_bits());
        assert_eq!(
            v_xb(&data, &u, &v).unwrap().to_bits(),
            v_xb(&data, &u, &v).unwrap().to_bits()
        );
        assert_eq!(
            v_bcrit(&data, &u, &v, &BcritParams::default())
                .unwrap()
                .to_bits(),
            v_bcrit(&data, &u, &v, &BcritParams::default())
                .unwrap()
                .to_bits()
        );
    }

    fn random_membership_strategy(
        c: usize,
        n: usize,
    ) -> impl Strategy<Value = MembershipMatrix> {
        proptest::collection::vec(
            proptest::collection::vec(1e-3f64..1.0, n),
            c,
        )
        .prop_map(move |rows| column_normalize(&rows).unwrap())
    }

    proptest! {
        #[test]
        fn pc_and_pe_respect_bounds(u in (2usize..5, 2usize..9).prop_flat_map(|(c, n)| {
            random_membership_strategy(c, n)
        })) {
            let pc = v_pc(&u);
            let c = u.c() as f64;
            prop_assert!(pc >= 1.0 / c - 1e-12);
            prop_assert!(pc <= 1.0 + 1e-12);
            let pe = v_pe(&u, &PeConfig::default());
            prop_assert!(pe >= 0.0);
            prop_assert!(pe <= c.ln() + 1e-12);
        }

        #[test]
        fn crisp_iff_extremes(n in 2usize..8, crisp_rows in proptest::collection::vec(0usize..3, 2..8)) {
            prop_assume!(crisp_rows.len() >= 2);
            let c = 3usize;
            // Build a crisp matrix from random assignments.
            let n = n.max(crisp_rows.len());
            let assignments: Vec<usize> = (0..n).map(|j| crisp_rows[j % crisp_rows.len()]).collect();
            let mut rows = vec![vec![0.0; n]; c];
            for (j, &a) in assignments.iter().enumerate() {
                rows[a][j] = 1.0;
            }
            let crisp = MembershipMatrix::new(rows).unwrap();
            prop_assert_eq!(v_pc(&crisp), 1.0);
            prop_assert_eq!(v_pe(&crisp, &PeConfig::default()), 0.0);
        }

        #[test]
        fn fuzzy_matrices_stay_inside_extremes(u in (2usize..4, 2usize..6).prop_flat_map(|(c, n)| {
            random_membership_strategy(c, n)
        })) {
            // Strictly fuzzy inputs (normalized positive entries) never reach
            // the crisp extremes.
            let has_fuzzy_entry = (0..u.c()).any(|i| (0..u.n()).any(|j| {
                let mu = u.get(i, j);
                mu > 1e-6 && mu < 1.0 - 1e-6
            }));
            prop_assume!(has_fuzzy_entry);
            prop_assert!(v_pc(&u) < 1.0);
            prop_assert!(v_pe(&u, &PeConfig::default()) > 0.0);
        }
    }
}
