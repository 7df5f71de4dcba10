//! Benchmark curation: annotation filtering, person-box geometry, crops,
//! manifests and unpaired test tuples.

mod filter;
mod manifest;
mod record;
mod tuples;

pub use self::filter::{
    apply_crop, stage1, stage1_filter, stage2_geometry, CropSpec, RejectReason, TARGET_HEIGHT,
    TARGET_WIDTH,
};
pub use self::manifest::{
    build_manifest, parse_manifest, render_manifest, ManifestEntry, MANIFEST_HEADER,
};
pub use self::record::{parse_records, BBox, CurationRecord, Occlusion, Source, Viewpoint, Zoom};
pub use self::tuples::{make_test_tuples, parse_tuples, render_tuples, Category, TestTuple};

use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    Keep(CropSpec),
    Reject(RejectReason),
}

impl Decision {
    pub fn is_keep(&self) -> bool {
        matches!(self, Decision::Keep(_))
    }
}

/// Both stages for one record.
pub fn decide(record: &CurationRecord) -> Decision {
    match stage1(record).and_then(|()| stage2_geometry(record)) {
        Ok(spec) => Decision::Keep(spec),
        Err(reason) => Decision::Reject(reason),
    }
}

/// [`decide`] over a batch, in input order.
pub fn curate(records: &[CurationRecord]) -> Vec<Decision> {
    par::map_range(records.len(), |i| decide(&records[i]))
}
