//! Built-in example diagrams and link specifications.
//!
//! A small corpus of signed PD codes and JSON link specs ships embedded in
//! the library so the command-line tool and the examples work without any
//! setup. Setting the environment variable named by [`CORPUS_DIR_ENV`]
//! points lookups at a directory instead: a name resolves to `<dir>/<name>`
//! when that file exists, falling back to the embedded copy otherwise.

use crate::link::FramedLink;
use crate::pd::{parse_pd, Diagram};
use std::path::Path;
use thiserror::Error;

/// Environment variable holding a replacement corpus directory.
pub const CORPUS_DIR_ENV: &str = "SURGERY_CORPUS_DIR";

const FILES: &[(&str, &str)] = &[
    ("bad-triple.json", include_str!("../corpus/bad-triple.json")),
    ("borromean.json", include_str!("../corpus/borromean.json")),
    ("borromean.pd", include_str!("../corpus/borromean.pd")),
    ("chain3.json", include_str!("../corpus/chain3.json")),
    ("chain3.pd", include_str!("../corpus/chain3.pd")),
    ("hopf.json", include_str!("../corpus/hopf.json")),
    ("hopf_neg.pd", include_str!("../corpus/hopf_neg.pd")),
    ("hopf_pos.pd", include_str!("../corpus/hopf_pos.pd")),
    ("unknot.json", include_str!("../corpus/unknot.json")),
];

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("`{0}` is neither a readable file nor a built-in corpus entry")]
    NotFound(String),
    #[error("cannot read `{path}`: {detail}")]
    Unreadable { path: String, detail: String },
    #[error("cannot parse `{name}`: {detail}")]
    Unparsable { name: String, detail: String },
}

/// Names of the built-in corpus entries, sorted.
pub fn names() -> Vec<&'static str> {
    FILES.iter().map(|(name, _)| *name).collect()
}

/// Loads a corpus entry by name, honoring the directory override.
pub fn load(name: &str) -> Result<String, CorpusError> {
    if let Ok(dir) = std::env::var(CORPUS_DIR_ENV) {
        let path = Path::new(&dir).join(name);
        if path.is_file() {
            return std::fs::read_to_string(&path).map_err(|e| CorpusError::Unreadable {
                path: path.display().to_string(),
                detail: e.to_string(),
            });
        }
    }
    FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| (*text).to_string())
        .ok_or_else(|| CorpusError::NotFound(name.to_string()))
}

/// Resolves a link-spec argument: an existing file path wins, otherwise the
/// name is looked up in the corpus. Returns the text together with the name
/// it resolved under.
pub fn resolve(spec: &str) -> Result<(String, String), CorpusError> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CorpusError::Unreadable {
            path: spec.to_string(),
            detail: e.to_string(),
        })?;
        return Ok((spec.to_string(), text));
    }
    load(spec).map(|text| (spec.to_string(), text))
}

/// Loads and parses a JSON link spec from the corpus.
pub fn load_link(name: &str) -> Result<FramedLink, CorpusError> {
    let text = load(name)?;
    FramedLink::from_json_str(&text).map_err(|e| CorpusError::Unparsable {
        name: name.to_string(),
        detail: e.to_string(),
    })
}

/// Loads and parses a signed PD code from the corpus.
pub fn load_diagram(name: &str) -> Result<Diagram, CorpusError> {
    let text = load(name)?;
    parse_pd(&text).map_err(|e| CorpusError::Unparsable {
        name: name.to_string(),
        detail: e.to_string(),
    })
}
