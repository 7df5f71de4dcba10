//! DensePose-UV correspondence and the naive garment-to-person flow.
//!
//! Garment pixels are indexed per body part on a uniform UV grid. Each
//! person pixel then looks up the garment pixel of the same part with the
//! closest `(u, v)`, producing a backward flow from person space into the
//! garment image. Parts are matched independently; there is no cross-part
//! matching.

mod fill;
mod index;

use serde::{Deserialize, Serialize};

pub use self::fill::fill_holes;
pub use self::index::{UvEntry, UvIndex, UvMatch};

use crate::error::{Error, Result};
use crate::par;
use crate::raster::{BinaryMask, FlowField, IuvMap};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CorrespondenceConfig {
    /// UV grid cell size.
    pub epsilon: f64,
    /// Largest accepted UV distance for a match.
    pub tau: f64,
    /// Propagate the nearest valid flow into unmatched person pixels.
    pub fill_holes: bool,
}

impl Default for CorrespondenceConfig {
    fn default() -> Self {
        Self {
            epsilon: 1.0 / 64.0,
            tau: 0.05,
            fill_holes: true,
        }
    }
}

impl CorrespondenceConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be in (0, 1], got {}",
                self.epsilon
            )));
        }
        if self.tau.is_nan() || self.tau < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "tau must be non-negative, got {}",
                self.tau
            )));
        }
        Ok(())
    }
}

/// Bookkeeping for one naive-flow computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FlowStats {
    /// Garment pixels in the index.
    pub indexed: usize,
    /// Person pixels that found a match within `tau`.
    pub matched: usize,
    /// Person pixels assigned by hole filling.
    pub filled: usize,
    /// Set when the garment had nothing to index; the flow is then all-invalid.
    pub empty_index: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NaiveFlow {
    pub flow: FlowField,
    pub stats: FlowStats,
}

/// Looks up every non-background person pixel in `index`.
///
/// The returned field targets `person` and samples a `source`-sized raster.
pub fn match_person(
    index: &UvIndex,
    person: &IuvMap,
    source: (usize, usize),
    tau: f64,
) -> FlowField {
    let (w, h) = person.dims();
    let rows = par::map_range(h, |y| {
        (0..w)
            .map(|x| {
                let part = person.part(x, y);
                if part == 0 {
                    return None;
                }
                let [u, v] = person.uv_at(x, y);
                index
                    .query_nearest(part, f64::from(u), f64::from(v), tau)
                    .map(|m| [m.x as f64, m.y as f64])
            })
            .collect::<Vec<_>>()
    });
    FlowField::from_parts(w, h, source, rows.into_iter().flatten().collect())
}

/// Naive flow from the garment's DensePose into the person's pose.
pub fn naive_flow(
    garment: &IuvMap,
    person: &IuvMap,
    config: &CorrespondenceConfig,
) -> Result<NaiveFlow> {
    naive_flow_masked(garment, None, person, config)
}

/// [`naive_flow`] with the garment index restricted to `garment_region`.
pub fn naive_flow_masked(
    garment: &IuvMap,
    garment_region: Option<&BinaryMask>,
    person: &IuvMap,
    config: &CorrespondenceConfig,
) -> Result<NaiveFlow> {
    config.validate()?;
    let index = UvIndex::build(garment, garment_region, config.epsilon)?;
    let source = garment.dims();
    let (w, h) = person.dims();
    if index.is_empty() {
        return Ok(NaiveFlow {
            flow: FlowField::from_parts(w, h, source, vec![None; w * h]),
            stats: FlowStats {
                empty_index: true,
                ..FlowStats::default()
            },
        });
    }

    let matched_flow = match_person(&index, person, source, config.tau);
    let matched = matched_flow.valid_count();
    let flow = if config.fill_holes && matched > 0 {
        fill_holes(&matched_flow, &person.foreground())?
    } else {
        matched_flow
    };
    let filled = flow.valid_count() - matched;
    Ok(NaiveFlow {
        flow,
        stats: FlowStats {
            indexed: index.len(),
            matched,
            filled,
            empty_index: false,
        },
    })
}
