use super::filter::{CropSpec, RejectReason, TARGET_HEIGHT, TARGET_WIDTH};
use super::record::CurationRecord;
use super::Decision;
use crate::{Error, Result};

pub const MANIFEST_HEADER: &str = "id\tdecision\treason\tcrop\tmanual\tattributes";

/// One manifest row. `manual` and `attributes` are filled in by hand after
/// export and are `None` (`-`) when written by [`build_manifest`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestEntry {
    pub id: String,
    pub decision: Decision,
    pub manual: Option<String>,
    pub attributes: Option<String>,
}

/// Tab-separated manifest, one row per record in input order.
/// Crops are written as `x,y,w,h`; the output size is always 320x512.
pub fn build_manifest(records: &[CurationRecord], decisions: &[Decision]) -> Result<String> {
    if records.len() != decisions.len() {
        return Err(Error::InvalidParameter(format!(
            "{} records but {} decisions",
            records.len(),
            decisions.len()
        )));
    }
    let entries: Vec<ManifestEntry> = records
        .iter()
        .zip(decisions)
        .map(|(r, d)| ManifestEntry {
            id: r.id.clone(),
            decision: *d,
            manual: None,
            attributes: None,
        })
        .collect();
    Ok(render_manifest(&entries))
}

pub fn render_manifest(entries: &[ManifestEntry]) -> String {
    let mut out = String::new();
    if entries.is_empty() {
        return out;
    }
    out.push_str(MANIFEST_HEADER);
    out.push('\n');
    for e in entries {
        let (decision, reason, crop) = match e.decision {
            Decision::Keep(c) => (
                "keep",
                "-".to_string(),
                format!("{},{},{},{}", c.x, c.y, c.w, c.h),
            ),
            Decision::Reject(r) => ("reject", r.code().to_string(), "-".to_string()),
        };
        let opt = |v: &Option<String>| v.clone().unwrap_or_else(|| "-".into());
        out.push_str(&format!(
            "{}\t{decision}\t{reason}\t{crop}\t{}\t{}\n",
            e.id,
            opt(&e.manual),
            opt(&e.attributes)
        ));
    }
    out
}

pub fn parse_manifest(text: &str) -> Result<Vec<ManifestEntry>> {
    let mut lines = text.lines().filter(|l| !l.is_empty());
    match lines.next() {
        None => return Ok(Vec::new()),
        Some(MANIFEST_HEADER) => {}
        Some(other) => {
            return Err(Error::Format(format!(
                "unexpected manifest header {other:?}"
            )))
        }
    }
    lines.map(parse_row).collect()
}

fn parse_row(line: &str) -> Result<ManifestEntry> {
    let bad = |why: &str| Error::Format(format!("manifest row {line:?}: {why}"));
    let fields: Vec<&str> = line.split('\t').collect();
    let [id, decision, reason, crop, manual, attributes] = fields.as_slice() else {
        return Err(bad("expected 6 tab-separated fields"));
    };
    let decision = match (*decision, *reason, *crop) {
        ("keep", "-", crop) => {
            let n: Vec<u32> = crop
                .split(',')
                .map(|t| t.parse().map_err(|_| bad("bad crop")))
                .collect::<Result<_>>()?;
            let [x, y, w, h] = n.as_slice() else {
                return Err(bad("crop needs 4 numbers"));
            };
            let spec = CropSpec::new(*x, *y, *w, *h);
            debug_assert_eq!(
                (spec.target_width, spec.target_height),
                (TARGET_WIDTH, TARGET_HEIGHT)
            );
            Decision::Keep(spec)
        }
        ("reject", reason, "-") => Decision::Reject(reason.parse::<RejectReason>()?),
        _ => return Err(bad("inconsistent decision, reason and crop")),
    };
    let opt = |v: &str| (v != "-").then(|| v.to_string());
    Ok(ManifestEntry {
        id: id.to_string(),
        decision,
        manual: opt(manual),
        attributes: opt(attributes),
    })
}
