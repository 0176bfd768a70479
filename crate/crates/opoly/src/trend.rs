//! Reports for quantities that should approach a known constant along a
//! sequence of parameters (degrees or masses). Only the direction of travel
//! is judged; no absolute tolerance is applied at finite parameters.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendPoint {
    /// Parameter value (a degree or a mass).
    pub at: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendReport {
    pub label: String,
    pub target: f64,
    pub points: Vec<TrendPoint>,
    /// `|value - target|` never grows along the sequence (up to rounding).
    pub toward_target: bool,
}

impl TrendReport {
    pub fn new(label: impl Into<String>, target: f64, points: Vec<TrendPoint>) -> Self {
        let dist: Vec<f64> = points.iter().map(|p| (p.value - target).abs()).collect();
        let slack = 1e-12 * (1.0 + target.abs());
        let toward_target = points.iter().all(|p| p.value.is_finite())
            && dist.windows(2).all(|w| w[1] <= w[0] + slack);
        TrendReport {
            label: label.into(),
            target,
            points,
            toward_target,
        }
    }

    /// Distance of the last point from the target.
    pub fn final_gap(&self) -> f64 {
        self.points
            .last()
            .map_or(f64::INFINITY, |p| (p.value - self.target).abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[f64]) -> Vec<TrendPoint> {
        v.iter()
            .enumerate()
            .map(|(i, &value)| TrendPoint { at: i as f64, value })
            .collect()
    }

    #[test]
    fn detects_direction() {
        assert!(TrendReport::new("down", 1.0, pts(&[1.5, 0.8, 1.1, 1.01])).toward_target);
        assert!(!TrendReport::new("away", 1.0, pts(&[1.1, 1.2])).toward_target);
        assert!(!TrendReport::new("nan", 1.0, pts(&[1.1, f64::NAN])).toward_target);
    }
}
