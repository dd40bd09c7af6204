//! Treewidth thresholds above which each pattern family is guaranteed as a
//! minor, together with the intermediate thresholds the arguments pass
//! through. Logarithms are binary.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Wheel,
    DoubleWheel,
    Pw2,
    Yurt,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Wheel, Family::DoubleWheel, Family::Pw2, Family::Yurt];

    pub fn name(self) -> &'static str {
        match self {
            Family::Wheel => "wheel",
            Family::DoubleWheel => "double_wheel",
            Family::Pw2 => "pw2",
            Family::Yurt => "yurt",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("unknown family {0:?}; expected wheel, double_wheel, pw2 or yurt")]
    UnknownFamily(String),
    #[error("parameter must be at least 1, got {0}")]
    NonPositive(u64),
}

impl FromStr for Family {
    type Err = BoundError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "wheel" => Ok(Family::Wheel),
            "double_wheel" | "double-wheel" | "dwheel" => Ok(Family::DoubleWheel),
            "pw2" => Ok(Family::Pw2),
            "yurt" => Ok(Family::Yurt),
            other => Err(BoundError::UnknownFamily(other.to_string())),
        }
    }
}

/// `ceil(36k - 5/2) = 36k - 2`.
pub fn wheel_bound(k: u64) -> i128 {
    36 * k as i128 - 2
}

/// `ceil(12 (8k log(8k) + 2)^2 - 4)`. Exact when `8k` is a power of two;
/// otherwise computed in floating point and rounded up.
pub fn double_wheel_bound(k: u64) -> i128 {
    let m = 8 * k as i128;
    if m.count_ones() == 1 {
        let log = m.trailing_zeros() as i128;
        let inner = m * log + 2;
        12 * inner * inner - 4
    } else {
        let m = m as f64;
        let inner = m * m.log2() + 2.0;
        (12.0 * inner * inner - 4.0).ceil() as i128
    }
}

/// `3h(h - 4) + 8` for a pattern on `h` vertices of pathwidth at most 2.
pub fn pw2_bound(h: u64) -> i128 {
    let h = h as i128;
    3 * h * (h - 4) + 8
}

/// `6k^4 - 24k^3 + 48k^2 - 48k + 23`.
pub fn yurt_bound(k: u64) -> i128 {
    let k = k as i128;
    6 * k.pow(4) - 24 * k.pow(3) + 48 * k * k - 48 * k + 23
}

pub fn bound(family: Family, k: u64) -> Result<i128, BoundError> {
    if k == 0 {
        return Err(BoundError::NonPositive(k));
    }
    Ok(match family {
        Family::Wheel => wheel_bound(k),
        Family::DoubleWheel => double_wheel_bound(k),
        Family::Pw2 => pw2_bound(k),
        Family::Yurt => yurt_bound(k),
    })
}

/// Treewidth forcing a member of `Lambda(T)` for a tree on `n` vertices.
pub fn lambda_threshold(n: u64) -> i128 {
    3 * n as i128 - 1
}

/// Treewidth forcing `xi(k)`: `3k(k - 2) - 1`.
pub fn xi_threshold(k: u64) -> i128 {
    let k = k as i128;
    3 * k * (k - 2) - 1
}

/// Treewidth forcing a double wheel of order `(2^(h/2) - 2)/(2h - 3)`.
pub fn double_wheel_lemma_threshold(h: u32) -> i128 {
    6 * (1i128 << h) - 4
}

/// Treewidth forcing a double wheel of order `(sqrt(l) - 2)/(2 log l - 5)`.
pub fn double_wheel_corollary_threshold(l: u64) -> i128 {
    12 * l as i128 - 4
}

/// Order guaranteed by the double-wheel lemma for a binary tree of height
/// `h`: `(2^(h/2) - 2) / (2h - 3)`.
pub fn double_wheel_lemma_order(h: u32) -> f64 {
    (2f64.powf(h as f64 / 2.0) - 2.0) / (2.0 * h as f64 - 3.0)
}

/// Number of comb teeth used for the yurt of order `k`:
/// `k^4 - 4k^3 + 8k^2 - 8k + 4 = (k^2 - 2k + 2)^2`.
pub fn yurt_comb_teeth(k: u64) -> u64 {
    let k = k as i128;
    (k.pow(4) - 4 * k.pow(3) + 8 * k * k - 8 * k + 4) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        assert_eq!(bound(Family::Wheel, 10), Ok(358));
        assert_eq!(bound(Family::Yurt, 2), Ok(23));
        assert_eq!(bound(Family::DoubleWheel, 1), Ok(8108));
        assert_eq!(bound(Family::Pw2, 10), Ok(188));
        assert_eq!(bound(Family::Wheel, 0), Err(BoundError::NonPositive(0)));
        assert!("hexagon".parse::<Family>().is_err());
    }

    /// Each formula recomputed independently in floating point.
    #[test]
    fn formulas_match_direct_arithmetic() {
        for k in 1..=60u64 {
            let kf = k as f64;
            assert_eq!(wheel_bound(k), (36.0 * kf - 2.5).ceil() as i128);
            let y = 6.0 * kf.powi(4) - 24.0 * kf.powi(3) + 48.0 * kf.powi(2) - 48.0 * kf + 23.0;
            assert_eq!(yurt_bound(k), y as i128);
            assert_eq!(pw2_bound(k), (3.0 * kf * (kf - 4.0) + 8.0) as i128);
            let m = 8.0 * kf;
            let d = 12.0 * (m * m.log2() + 2.0).powi(2) - 4.0;
            assert!((double_wheel_bound(k) as f64 - d).abs() <= 1.0, "k = {k}");
        }
        // powers of two take the exact path
        assert_eq!(double_wheel_bound(2), 12 * (16 * 4 + 2) * (16 * 4 + 2) - 4);
        assert_eq!(double_wheel_bound(4), 12 * (32 * 5 + 2) * (32 * 5 + 2) - 4);
    }

    #[test]
    fn bounds_agree_with_the_thresholds_they_come_from() {
        for h in 1..=40u64 {
            // a pathwidth-2 pattern on h vertices sits in xi(h - 1)
            assert_eq!(pw2_bound(h), xi_threshold(h - 1));
        }
        for k in 1..=30u64 {
            // comb with l teeth has 2l vertices
            assert_eq!(yurt_bound(k), lambda_threshold(2 * yurt_comb_teeth(k)));
            let e = k * k + 2 - 2 * k;
            assert_eq!(yurt_comb_teeth(k), e * e);
        }
        // binary tree of height h has 2^(h+1) - 1 vertices
        for h in 1..=40u32 {
            assert!(double_wheel_lemma_threshold(h) >= lambda_threshold((1u64 << (h + 1)) - 1));
        }
    }

    #[test]
    fn wheel_threshold_reaches_the_tree_path_separation() {
        // with h = ceil(log 4k), 36k - 5/2 >= (3/2)(3 * 2^h - 1) - 1
        for k in 1..=5000u64 {
            let h = 64 - (4 * k - 1).leading_zeros();
            let need = 1.5 * (3.0 * (1u64 << h) as f64 - 1.0) - 1.0;
            assert!(36.0 * k as f64 - 2.5 >= need, "k = {k}");
        }
    }
}
