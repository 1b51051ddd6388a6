//! Domain types shared by every other module. All structural invariants are
//! enforced at construction so downstream code can assume well-formed values.

use crate::error::{Error, Result};

/// Column-sum tolerance for a valid membership matrix.
pub const COLUMN_SUM_TOL: f64 = 1e-9;
/// Entries may drift this far outside [0, 1] before being clamped.
pub const ENTRY_DRIFT_TOL: f64 = 1e-12;

/// An unlabeled set of `n` points in `d`-dimensional real space.
#[derive(Debug, Clone, PartialEq)]
pub struct DataSet {
    name: String,
    points: Vec<Vec<f64>>,
    d: usize,
}

impl DataSet {
    /// Builds a data set, requiring n >= 2, d >= 1, uniform width, and
    /// finite components throughout.
    pub fn new(name: impl Into<String>, points: Vec<Vec<f64>>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::TooFewPoints {
                found: points.len(),
            });
        }
        let d = points[0].len();
        if d == 0 {
            return Err(Error::InvalidRequest(
                "points must have at least one coordinate".into(),
            ));
        }
        for (j, p) in points.iter().enumerate() {
            if p.len() != d {
                return Err(Error::Dimension {
                    expected: d,
                    actual: p.len(),
                });
            }
            if let Some(q) = p.iter().position(|v| !v.is_finite()) {
                return Err(Error::InvalidRequest(format!(
                    "point {j} has a non-finite coordinate at position {q}"
                )));
            }
        }
        Ok(DataSet {
            name: name.into(),
            points,
            d,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn point(&self, j: usize) -> &[f64] {
        &self.points[j]
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }
}

/// The c x n pattern matrix U = [mu_ij]; rows are clusters, columns are
/// points, and every column sums to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipMatrix {
    mu: Vec<f64>, // row-major c x n
    c: usize,
    n: usize,
}

impl MembershipMatrix {
    /// Validates and adopts a full matrix given as `c` rows of length `n`.
    /// Entries may carry floating-point drift up to 1e-12 outside [0, 1];
    /// they are clamped back. Column sums must be 1 within 1e-9.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let c = rows.len();
        if c < 2 {
            return Err(Error::Config(format!(
                "membership matrix needs at least 2 clusters, got {c}"
            )));
        }
        let n = rows[0].len();
        if n == 0 {
            return Err(Error::Config("membership matrix has no columns".into()));
        }
        for row in &rows {
            if row.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    actual: row.len(),
                });
            }
        }
        let mut mu = Vec::with_capacity(c * n);
        for row in &rows {
            for &v in row {
                if !v.is_finite() || !(-ENTRY_DRIFT_TOL..=1.0 + ENTRY_DRIFT_TOL).contains(&v) {
                    return Err(Error::Config(format!(
                        "membership value {v} outside [0, 1] beyond drift tolerance"
                    )));
                }
                mu.push(v.clamp(0.0, 1.0));
            }
        }
        for j in 0..n {
            let sum: f64 = (0..c).map(|i| mu[i * n + j]).sum();
            if (sum - 1.0).abs() > COLUMN_SUM_TOL {
                return Err(Error::Config(format!(
                    "column {j} sums to {sum}, expected 1 within {COLUMN_SUM_TOL}"
                )));
            }
        }
        Ok(MembershipMatrix { mu, c, n })
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.mu[i * self.n + j]
    }

    #[cfg(test)]
    pub(crate) fn set(&mut self, i: usize, j: usize, value: f64) {
        self.mu[i * self.n + j] = value;
    }

    /// Borrowed view of row `i` as a discrete fuzzy set over the points.
    pub fn cluster(&self, i: usize) -> FuzzyCluster<'_> {
        assert!(i < self.c, "cluster index {i} out of range");
        FuzzyCluster { matrix: self, row: i }
    }

    /// Copies column `j` (the memberships of one point across clusters).
    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.c).map(|i| self.get(i, j)).collect()
    }

    /// Largest absolute entry-wise difference against another matrix of the
    /// same shape.
    pub fn max_abs_diff(&self, other: &MembershipMatrix) -> f64 {
        assert_eq!(self.c, other.c);
        assert_eq!(self.n, other.n);
        self.mu
            .iter()
            .zip(other.mu.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// A read-only view of one row of a `MembershipMatrix`, addressed as the
/// fuzzy set mu_F(x_j) over j = 1..n. No data is copied, so the view always
/// agrees with the backing matrix.
#[derive(Debug, Clone, Copy)]
pub struct FuzzyCluster<'a> {
    matrix: &'a MembershipMatrix,
    row: usize,
}

impl<'a> FuzzyCluster<'a> {
    pub fn membership(&self, j: usize) -> f64 {
        self.matrix.get(self.row, j)
    }

    pub fn len(&self) -> usize {
        self.matrix.n()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn row_index(&self) -> usize {
        self.row
    }

    pub fn matrix(&self) -> &'a MembershipMatrix {
        self.matrix
    }
}

/// The vector V = (v_1 .. v_c) of cluster centers.
#[derive(Debug, Clone, PartialEq)]
pub struct Centroids {
    v: Vec<Vec<f64>>,
    d: usize,
}

impl Centroids {
    pub fn new(v: Vec<Vec<f64>>) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::Config("centroid list is empty".into()));
        }
        let d = v[0].len();
        if d == 0 {
            return Err(Error::Config(
                "centroids must have at least one coordinate".into(),
            ));
        }
        for (i, center) in v.iter().enumerate() {
            if center.len() != d {
                return Err(Error::Dimension {
                    expected: d,
                    actual: center.len(),
                });
            }
            if center.iter().any(|x| !x.is_finite()) {
                return Err(Error::Config(format!(
                    "centroid {i} has a non-finite component"
                )));
            }
        }
        Ok(Centroids { v, d })
    }

    pub fn c(&self) -> usize {
        self.v.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize) -> &[f64] {
        &self.v[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.v.iter().map(|v| v.as_slice())
    }

    /// Unweighted mean of the centroids (the v-bar used by several indexes).
    pub fn mean(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.d];
        for center in &self.v {
            for (o, x) in out.iter_mut().zip(center) {
                *o += x;
            }
        }
        let c = self.v.len() as f64;
        for o in &mut out {
            *o /= c;
        }
        out
    }
}

/// Solver configuration: fuzzifier, convergence threshold, iteration cap,
/// restart count, and base RNG seed.
#[derive(Debug, Clone, PartialEq)]
pub struct FcmConfig {
    pub m: f64,
    pub epsilon: f64,
    pub max_iter: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for FcmConfig {
    fn default() -> Self {
        FcmConfig {
            m: 2.0,
            epsilon: 1e-3,
            max_iter: 300,
            restarts: 10,
            seed: 42,
        }
    }
}

impl FcmConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.m.is_finite() || self.m <= 1.0 {
            return Err(Error::Config(format!(
                "fuzzifier m must be finite and > 1, got {}",
                self.m
            )));
        }
        if !self.epsilon.is_finite() || self.epsilon <= 0.0 {
            return Err(Error::Config(format!(
                "epsilon must be finite and > 0, got {}",
                self.epsilon
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::Config("max_iter must be at least 1".into()));
        }
        if self.restarts == 0 {
            return Err(Error::Config("restarts must be at least 1".into()));
        }
        Ok(())
    }
}

/// Verifies that a (data, memberships, centroids) triple is shape-consistent.
pub(crate) fn check_shapes(
    data: &DataSet,
    u: &MembershipMatrix,
    v: &Centroids,
) -> Result<()> {
    if u.n() != data.n() {
        return Err(Error::Dimension {
            expected: data.n(),
            actual: u.n(),
        });
    }
    if v.c() != u.c() {
        return Err(Error::Dimension {
            expected: u.c(),
            actual: v.c(),
        });
    }
    if v.d() != data.d() {
        return Err(Error::Dimension {
            expected: data.d(),
            actual: v.d(),
        });
    }
    Ok(())
}

/// Squared Euclidean distance between two vectors of equal dimension.
pub fn squared_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Dimension {
            expected: a.len(),
            actual: b.len(),
        });
    }
    Ok(sqdist_unchecked(a, b))
}

/// Same as `squared_distance` but assumes equal dimensions (hot path).
pub(crate) fn sqdist_unchecked(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| {
            let t = x - y;
            t * t
        })
        .sum()
}

/// Divides every column of a nonnegative c x n grid by its sum, producing a
/// valid `MembershipMatrix`. Fails on any column with zero sum.
pub fn column_normalize(raw: &[Vec<f64>]) -> Result<MembershipMatrix> {
    let c = raw.len();
    if c < 2 {
        return Err(Error::Config(format!(
            "normalization needs at least 2 rows, got {c}"
        )));
    }
    let n = raw[0].len();
    for row in raw {
        if row.len() != n {
            return Err(Error::Dimension {
                expected: n,
                actual: row.len(),
            });
        }
        if let Some(v) = row.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::Config(format!(
                "normalization input must be finite and nonnegative, got {v}"
            )));
        }
    }
    let mut rows = vec![vec![0.0; n]; c];
    for j in 0..n {
        let sum: f64 = raw.iter().map(|row| row[j]).sum();
        if sum <= 0.0 {
            return Err(Error::ZeroSumColumn { column: j });
        }
        for i in 0..c {
            rows[i][j] = raw[i][j] / sum;
        }
    }
    MembershipMatrix::new(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn squared_distance_matches_hand_values() {
        assert_eq!(squared_distance(&[0.0, 0.0], &[0.0, 0.0]).unwrap(), 0.0);
        assert_eq!(squared_distance(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 25.0);
        assert_eq!(
            squared_distance(&[1.0, 2.0, 3.0], &[4.0, 6.0, 3.0]).unwrap(),
            25.0
        );
    }

    #[test]
    fn squared_distance_rejects_mismatched_dimensions() {
        assert!(matches!(
            squared_distance(&[0.0], &[0.0, 1.0]),
            Err(Error::Dimension {
                expected: 1,
                actual: 2
            })
        ));
    }

    #[test]
    fn column_normalize_hand_cases() {
        let m = column_normalize(&[vec![2.0], vec![2.0]]).unwrap();
        assert_eq!(m.column(0), vec![0.5, 0.5]);

        let m = column_normalize(&[vec![1.0], vec![3.0]]).unwrap();
        assert_eq!(m.column(0), vec![0.25, 0.75]);

        let m = column_normalize(&[vec![0.2], vec![0.3], vec![0.5]]).unwrap();
        assert_eq!(m.column(0), vec![0.2, 0.3, 0.5]);
    }

    #[test]
    fn column_normalize_rejects_zero_sum() {
        let err = column_normalize(&[vec![0.0, 1.0], vec![0.0, 1.0]]).unwrap_err();
        assert!(matches!(err, Error::ZeroSumColumn { column: 0 }));
    }

    #[test]
    fn membership_matrix_validates_columns() {
        assert!(MembershipMatrix::new(vec![vec![0.6, 0.3], vec![0.4, 0.7]]).is_ok());
        // Column sum off by far more than tolerance.
        assert!(MembershipMatrix::new(vec![vec![0.6, 0.3], vec![0.5, 0.7]]).is_err());
        // One row only.
        assert!(MembershipMatrix::new(vec![vec![1.0]]).is_err());
    }

    #[test]
    fn membership_matrix_clamps_tiny_drift() {
        let m = MembershipMatrix::new(vec![vec![1.0 + 5e-13], vec![-5e-13]]).unwrap();
        assert_eq!(m.get(0, 0), 1.0);
        assert_eq!(m.get(1, 0), 0.0);
        // Beyond the drift tolerance is rejected.
        assert!(MembershipMatrix::new(vec![vec![1.0 + 1e-9], vec![-1e-9]]).is_err());
    }

    #[test]
    fn fuzzy_cluster_views_track_backing_matrix() {
        let mut m = MembershipMatrix::new(vec![vec![0.6, 0.3], vec![0.4, 0.7]]).unwrap();
        assert_eq!(m.cluster(0).membership(1), 0.3);
        m.set(0, 1, 0.25);
        m.set(1, 1, 0.75);
        let view = m.cluster(0);
        assert_eq!(view.membership(1), 0.25);
        assert_eq!(view.len(), 2);
        assert_eq!(view.row_index(), 0);
    }

    #[test]
    fn dataset_validation() {
        assert!(matches!(
            DataSet::new("x", vec![vec![0.0]]),
            Err(Error::TooFewPoints { found: 1 })
        ));
        assert!(DataSet::new("x", vec![vec![0.0], vec![1.0, 2.0]]).is_err());
        assert!(DataSet::new("x", vec![vec![f64::NAN], vec![1.0]]).is_err());
        assert!(DataSet::new("x", vec![vec![], vec![]]).is_err());
        let d = DataSet::new("x", vec![vec![0.0, 1.0], vec![2.0, 3.0]]).unwrap();
        assert_eq!(d.n(), 2);
        assert_eq!(d.d(), 2);
        assert_eq!(d.point(1), &[2.0, 3.0]);
    }

    #[test]
    fn fcm_config_defaults_and_validation() {
        let cfg = FcmConfig::default();
        assert_eq!(cfg.m, 2.0);
        assert_eq!(cfg.epsilon, 1e-3);
        assert_eq!(cfg.max_iter, 300);
        assert_eq!(cfg.restarts, 10);
        assert!(cfg.validate().is_ok());

        assert!(FcmConfig { m: 1.0, ..cfg.clone() }.validate().is_err());
        assert!(FcmConfig { epsilon: 0.0, ..cfg.clone() }.validate().is_err());
        assert!(FcmConfig { restarts: 0, ..cfg.clone() }.validate().is_err());
        assert!(FcmConfig { max_iter: 0, ..cfg }.validate().is_err());
    }

    #[test]
    fn centroid_mean_is_unweighted() {
        let v = Centroids::new(vec![vec![0.0, 0.0], vec![4.0, 2.0]]).unwrap();
        assert_eq!(v.mean(), vec![2.0, 1.0]);
    }

    proptest! {
        // Any normalization output must construct a valid matrix.
        #[test]
        fn normalized_columns_always_construct(
            (c, cols) in (2usize..6).prop_flat_map(|c| {
                (
                    proptest::strategy::Just(c),
                    proptest::collection::vec(
                        proptest::collection::vec(0.001f64..10.0, c),
                        1..8,
                    ),
                )
            })
        ) {
            // Transpose point-major input into rows.
            let n = cols.len();
            let mut rows = vec![vec![0.0; n]; c];
            for (j, col) in cols.iter().enumerate() {
                for (i, v) in col.iter().enumerate() {
                    rows[i][j] = *v;
                }
            }
            let m = column_normalize(&rows).unwrap();
            prop_assert_eq!(m.c(), c);
            prop_assert_eq!(m.n(), n);
            for j in 0..n {
                let sum: f64 = m.column(j).iter().sum();
                prop_assert!((sum - 1.0).abs() <= COLUMN_SUM_TOL);
            }
        }
    }
}
