//! Non-neural core of a DensePose-guided virtual try-on pipeline.
//!
//! * [`raster`]: image, IUV, parse, mask and flow containers with their file formats.
//! * [`correspondence`]: per-part UV indexing and the naive garment-to-person flow.
//! * [`warp`] and [`affine`]: backward warping, affine flows and flow composition.
//! * [`perturb`]: cosine and affine perturbations, free-form masks and training-pair synthesis.
//! * [`metrics`]: flow smoothness, reconstruction and perceptual losses, SSIM.
//! * [`composite`]: erosion-band compositing, face pasting and inpaint-job export.
//! * [`curation`]: benchmark filtering rules, crop geometry, manifests and test tuples.
//! * [`synthetic`]: procedural textured figures with DensePose and parse maps.

pub mod affine;
pub mod composite;
pub mod correspondence;
pub mod curation;
mod error;
mod kv;
pub mod metrics;
mod par;
pub mod perturb;
pub mod raster;
pub mod synthetic;
pub mod warp;

pub use crate::error::{Error, Result};
