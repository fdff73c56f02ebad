use serde::{Deserialize, Serialize};

/// Cut-off rule for numerical rank decisions.
///
/// A singular value counts toward the rank when it exceeds
/// `max(relative * sigma_max, absolute)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankPolicy {
    pub relative: f64,
    pub absolute: f64,
}

impl Default for RankPolicy {
    fn default() -> Self {
        RankPolicy {
            relative: 1e-9,
            absolute: 1e-12,
        }
    }
}

impl RankPolicy {
    pub fn with_relative(relative: f64) -> Self {
        RankPolicy {
            relative,
            ..Default::default()
        }
    }

    pub fn threshold(&self, sigma_max: f64) -> f64 {
        (self.relative * sigma_max).max(self.absolute)
    }
}

/// Audit record for a single rank decision.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankInfo {
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
    pub sigma_max: f64,
    pub threshold: f64,
    /// Smallest singular value kept, if any.
    pub kept_min: Option<f64>,
    /// Largest singular value discarded, if any.
    pub dropped_max: Option<f64>,
    /// `kept_min / dropped_max`; infinite when either side is missing or the
    /// discarded value is exactly zero. Exact ranks always report infinity.
    #[serde(with = "crate::util::serde_f64_inf")]
    pub gap: f64,
    pub exact: bool,
}

/// Gaps below this factor make a rank decision ambiguous.
pub const AMBIGUOUS_GAP: f64 = 10.0;

impl RankInfo {
    pub fn exact(rank: usize, rows: usize, cols: usize) -> Self {
        RankInfo {
            rank,
            rows,
            cols,
            sigma_max: f64::NAN,
            threshold: 0.0,
            kept_min: None,
            dropped_max: None,
            gap: f64::INFINITY,
            exact: true,
        }
    }

    /// Build from singular values sorted in decreasing order.
    pub fn from_singular_values(sv: &[f64], rows: usize, cols: usize, policy: &RankPolicy) -> Self {
        let sigma_max = sv.first().copied().unwrap_or(0.0);
        let threshold = policy.threshold(sigma_max);
        let rank = sv.iter().take_while(|&&s| s > threshold).count();
        let kept_min = if rank > 0 { Some(sv[rank - 1]) } else { None };
        let dropped_max = sv.get(rank).copied();
        let gap = match (kept_min, dropped_max) {
            (Some(k), Some(d)) if d > 0.0 => k / d,
            _ => f64::INFINITY,
        };
        RankInfo {
            rank,
            rows,
            cols,
            sigma_max,
            threshold,
            kept_min,
            dropped_max,
            gap,
            exact: false,
        }
    }

    pub fn is_ambiguous(&self) -> bool {
        self.gap < AMBIGUOUS_GAP
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gap_and_threshold() {
        let p = RankPolicy::default();
        let info = RankInfo::from_singular_values(&[4.0, 2.0, 1e-14], 3, 3, &p);
        assert_eq!(info.rank, 2);
        assert!((info.gap - 2e14).abs() / 2e14 < 1e-12);
        assert!(!info.is_ambiguous());

        let zero = RankInfo::from_singular_values(&[0.0, 0.0], 2, 2, &p);
        assert_eq!(zero.rank, 0);
        assert_eq!(zero.threshold, 1e-12);
        assert!(zero.gap.is_infinite());
    }

    #[test]
    fn ambiguous_cut() {
        let p = RankPolicy::with_relative(1e-3);
        let info = RankInfo::from_singular_values(&[1.0, 5e-3, 9e-4], 3, 3, &p);
        assert_eq!(info.rank, 2);
        assert!(info.is_ambiguous());
    }
}
