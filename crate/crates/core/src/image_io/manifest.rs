use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// Subdirectory names used by TID-style dataset layouts.
const DISTORTED_SUBDIR: &str = "distorted_images";
const REFERENCE_SUBDIR: &str = "reference_images";
const IMAGE_EXTENSIONS: [&str; 2] = ["bmp", "png"];

#[derive(Debug, thiserror::Error)]
pub enum ManifestError {
    #[error("cannot read manifest {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Malformed { line: u64, message: String },
    #[error("line {line}: mos {mos} outside [0, {max}]")]
    MosOutOfRange { line: u64, mos: f64, max: f64 },
    #[error("line {line}: duplicate distorted id `{id}`")]
    DuplicateId { line: u64, id: String },
    #[error("mos scale maximum must be positive and finite, got {0}")]
    InvalidScale(f64),
    #[error("unknown manifest format `{0}` (expected tid-mos-names or generic-csv)")]
    UnknownFormat(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ManifestFormat {
    /// `<mos> <distorted_filename>` per line, as shipped with TID2008/TID2013.
    TidMosNames,
    /// CSV with header `reference_id,distorted_id,mos[,distortion_tag]`.
    GenericCsv,
}

impl FromStr for ManifestFormat {
    type Err = ManifestError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tid-mos-names" => Ok(Self::TidMosNames),
            "generic-csv" => Ok(Self::GenericCsv),
            other => Err(ManifestError::UnknownFormat(other.to_string())),
        }
    }
}

impl fmt::Display for ManifestFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::TidMosNames => "tid-mos-names",
            Self::GenericCsv => "generic-csv",
        })
    }
}

/// One distorted image with its subjective score.
#[derive(Clone, Debug, PartialEq)]
pub struct DatasetRecord {
    pub reference_id: String,
    pub distorted_id: String,
    pub mos: f64,
    pub mos_scale_max: f64,
    pub distortion_tag: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DatasetManifest {
    pub records: Vec<DatasetRecord>,
    pub root_path: PathBuf,
    pub mos_scale_max: f64,
}

/// Splits a TID-style filename such as `i03_08_1.bmp` into the reference id
/// (`i03`) and the remaining distortion tag (`08_1`).
pub(crate) fn split_tid_name(file_name: &str) -> (String, Option<String>) {
    let stem = match file_name.rsplit_once('.') {
        Some((stem, _)) if !stem.is_empty() => stem,
        _ => file_name,
    };
    match stem.split_once('_') {
        Some((reference, rest)) if !reference.is_empty() => (
            reference.to_string(),
            (!rest.is_empty()).then(|| rest.to_string()),
        ),
        _ => (stem.to_string(), None),
    }
}

fn check_scale(mos_scale_max: f64) -> Result<(), ManifestError> {
    if mos_scale_max.is_finite() && mos_scale_max > 0.0 {
        Ok(())
    } else {
        Err(ManifestError::InvalidScale(mos_scale_max))
    }
}

struct Builder {
    records: Vec<DatasetRecord>,
    seen: HashSet<String>,
    mos_scale_max: f64,
}

impl Builder {
    fn push(
        &mut self,
        line: u64,
        reference_id: String,
        distorted_id: String,
        mos_text: &str,
        distortion_tag: Option<String>,
    ) -> Result<(), ManifestError> {
        let malformed = |message: String| ManifestError::Malformed { line, message };
        if reference_id.is_empty() || distorted_id.is_empty() {
            return Err(malformed("empty image id".into()));
        }
        let mos: f64 = mos_text
            .parse()
            .map_err(|_| malformed(format!("cannot parse mos `{mos_text}`")))?;
        if !(0.0..=self.mos_scale_max).contains(&mos) {
            return Err(ManifestError::MosOutOfRange {
                line,
                mos,
                max: self.mos_scale_max,
            });
        }
        if !self.seen.insert(distorted_id.clone()) {
            return Err(ManifestError::DuplicateId {
                line,
                id: distorted_id,
            });
        }
        self.records.push(DatasetRecord {
            reference_id,
            distorted_id,
            mos,
            mos_scale_max: self.mos_scale_max,
            distortion_tag,
        });
        Ok(())
    }
}

/// Parses a manifest file. The manifest's directory becomes the image root.
pub fn parse_manifest(
    path: impl AsRef<Path>,
    format: ManifestFormat,
    mos_scale_max: f64,
) -> Result<DatasetManifest, ManifestError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ManifestError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let root = path.parent().map(Path::to_path_buf).unwrap_or_default();
    DatasetManifest::parse_str(&text, format, mos_scale_max, root)
}

impl DatasetManifest {
    pub fn parse_str(
        text: &str,
        format: ManifestFormat,
        mos_scale_max: f64,
        root_path: impl Into<PathBuf>,
    ) -> Result<Self, ManifestError> {
        check_scale(mos_scale_max)?;
        let mut builder = Builder {
            records: Vec::new(),
            seen: HashSet::new(),
            mos_scale_max,
        };
        match format {
            ManifestFormat::TidMosNames => parse_tid(text, &mut builder)?,
            ManifestFormat::GenericCsv => parse_csv(text, &mut builder)?,
        }
        Ok(Self {
            records: builder.records,
            root_path: root_path.into(),
            mos_scale_max,
        })
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn with_root(mut self, root: impl Into<PathBuf>) -> Self {
        self.root_path = root.into();
        self
    }

    pub fn get(&self, distorted_id: &str) -> Option<&DatasetRecord> {
        self.records.iter().find(|r| r.distorted_id == distorted_id)
    }

    /// Serializes to the given format. Parsing the output with the same
    /// format and scale yields an identical manifest.
    pub fn serialize(&self, format: ManifestFormat) -> String {
        match format {
            ManifestFormat::TidMosNames => self
                .records
                .iter()
                .map(|r| format!("{} {}\n", r.mos, r.distorted_id))
                .collect(),
            ManifestFormat::GenericCsv => {
                let mut out = String::from("reference_id,distorted_id,mos,distortion_tag\n");
                let mut w = csv::WriterBuilder::new()
                    .has_headers(false)
                    .from_writer(Vec::new());
                for r in &self.records {
                    w.write_record([
                        r.reference_id.as_str(),
                        r.distorted_id.as_str(),
                        &r.mos.to_string(),
                        r.distortion_tag.as_deref().unwrap_or(""),
                    ])
                    .expect("in-memory csv write");
                }
                let body = w.into_inner().expect("in-memory csv flush");
                out.push_str(&String::from_utf8(body).expect("csv output is utf-8"));
                out
            }
        }
    }

    /// Locates the distorted image file for a record under the root path.
    pub fn distorted_path(&self, record: &DatasetRecord) -> Option<PathBuf> {
        resolve_image(&self.root_path, DISTORTED_SUBDIR, &record.distorted_id)
    }

    /// Locates the pristine reference image for a record. Matching is
    /// case-insensitive and accepts either a full filename or a bare stem
    /// (`i01` finds `I01.BMP`).
    pub fn reference_path(&self, record: &DatasetRecord) -> Option<PathBuf> {
        resolve_image(&self.root_path, REFERENCE_SUBDIR, &record.reference_id)
    }
}

fn parse_tid(text: &str, builder: &mut Builder) -> Result<(), ManifestError> {
    for (idx, raw) in text.lines().enumerate() {
        let line = idx as u64 + 1;
        let content = raw.trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let (Some(mos), Some(name), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(ManifestError::Malformed {
                line,
                message: format!("expected `<mos> <filename>`, got `{content}`"),
            });
        };
        let (reference_id, tag) = split_tid_name(name);
        builder.push(line, reference_id, name.to_string(), mos, tag)?;
    }
    Ok(())
}

fn parse_csv(text: &str, builder: &mut Builder) -> Result<(), ManifestError> {
    if text.trim().is_empty() {
        return Ok(());
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| ManifestError::Malformed {
            line: 1,
            message: e.to_string(),
        })?
        .clone();
    let columns: Vec<&str> = header.iter().collect();
    let has_tag = match columns.as_slice() {
        ["reference_id", "distorted_id", "mos"] => false,
        ["reference_id", "distorted_id", "mos", "distortion_tag"] => true,
        _ => {
            return Err(ManifestError::Malformed {
                line: 1,
                message: format!(
                    "expected header `reference_id,distorted_id,mos[,distortion_tag]`, got `{}`",
                    columns.join(",")
                ),
            })
        }
    };
    for row in reader.records() {
        let row = row.map_err(|e| ManifestError::Malformed {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = row.position().map_or(0, |p| p.line());
        if row.iter().all(str::is_empty) {
            continue;
        }
        let expected = if has_tag { 3..=4 } else { 3..=3 };
        if !expected.contains(&row.len()) {
            return Err(ManifestError::Malformed {
                line,
                message: format!("expected {} fields, got {}", columns.len(), row.len()),
            });
        }
        let tag = row.get(3).filter(|t| !t.is_empty()).map(str::to_string);
        builder.push(line, row[0].to_string(), row[1].to_string(), &row[2], tag)?;
    }
    Ok(())
}

fn resolve_image(root: &Path, subdir: &str, name: &str) -> Option<PathBuf> {
    let dirs = [root.to_path_buf(), root.join(subdir)];
    for dir in &dirs {
        let direct = dir.join(name);
        if direct.is_file() {
            return Some(direct);
        }
    }
    for dir in &dirs {
        let Ok(entries) = std::fs::read_dir(dir) else {
            continue;
        };
        let mut matches: Vec<PathBuf> = entries
            .filter_map(Result::ok)
            .map(|e| e.path())
            .filter(|p| p.is_file() && file_matches(p, name))
            .collect();
        matches.sort();
        if let Some(found) = matches.into_iter().next() {
            return Some(found);
        }
    }
    None
}

fn file_matches(path: &Path, name: &str) -> bool {
    let Some(file_name) = path.file_name().and_then(|f| f.to_str()) else {
        return false;
    };
    if file_name.eq_ignore_ascii_case(name) {
        return true;
    }
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or_default();
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .unwrap_or_default();
    stem.eq_ignore_ascii_case(name) && IMAGE_EXTENSIONS.iter().any(|x| ext.eq_ignore_ascii_case(x))
}
