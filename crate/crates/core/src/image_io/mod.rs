//! Image decoding and dataset manifests.

mod luma;
mod manifest;

pub use luma::{load_image, ImageError, LumaImage};
pub use manifest::{parse_manifest, DatasetManifest, DatasetRecord, ManifestError, ManifestFormat};
