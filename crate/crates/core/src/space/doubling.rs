use super::ModelSpace;
use crate::error::{Error, Result};

/// Measured doubling and reverse-doubling constants over a radius window.
#[derive(Clone, Debug, PartialEq)]
pub struct DoublingProfile {
    pub c0: f64,
    pub d: f64,
    pub c2: f64,
    pub dstar: f64,
    pub radius_range: (f64, f64),
    /// Radii scanned for the reverse-doubling constant.
    pub radii: Vec<f64>,
    /// Some radius in the window had `2r` beyond the diameter and was dropped.
    pub truncated: bool,
}

/// Exhaustive scan of `|B(x,2r)| / |B(x,r)|` over every point and every
/// distinct distance value `r` in `radius_range`.
///
/// Radii with `2r` above the diameter still count towards `c0` but are
/// dropped from the reverse-doubling scan (both balls would be the whole
/// space there) and the profile is flagged as truncated.
pub fn measure_doubling(space: &ModelSpace, radius_range: (f64, f64)) -> Result<DoublingProfile> {
    let (lo, hi) = radius_range;
    let diam = space.diameter();
    if !(lo > 0.0) || !(hi >= lo) || lo > diam {
        return Err(Error::InvalidArgument(format!("degenerate radius range [{lo}, {hi}]")));
    }
    let in_window: Vec<f64> = space
        .distinct_distances()
        .into_iter()
        .filter(|r| *r >= lo && *r <= hi)
        .collect();
    if in_window.is_empty() {
        return Err(Error::InvalidArgument(format!("no distance values in [{lo}, {hi}]")));
    }
    let radii: Vec<f64> = in_window.iter().copied().filter(|r| 2.0 * r <= diam).collect();
    let truncated = radii.len() < in_window.len();
    let mut c0 = 1.0_f64;
    let mut c2 = f64::INFINITY;
    for x in 0..space.n() {
        for &r in &in_window {
            let ratio = space.ball_volume(x, 2.0 * r) / space.ball_volume(x, r);
            c0 = c0.max(ratio);
            if 2.0 * r <= diam {
                c2 = c2.min(ratio);
            }
        }
    }
    if radii.is_empty() {
        // Every radius was truncated: only the trivial bounds survive.
        c2 = 1.0;
    }
    Ok(DoublingProfile {
        c0,
        d: c0.log2(),
        c2,
        dstar: c2.log2(),
        radius_range,
        radii,
        truncated,
    })
}

impl DoublingProfile {
    /// Profile over the full scale range of the model.
    pub fn full(space: &ModelSpace) -> Result<Self> {
        measure_doubling(space, (space.min_positive_distance(), space.diameter()))
    }
}
