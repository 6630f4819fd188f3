//! JSON file formats: models, projection maps and exploration windows.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use proper_core::{ModelError, RawModel, RelationalStructure, StateMap, Window};
use serde::{Deserialize, Serialize};

/// Errors reading or writing files.
#[derive(Debug, thiserror::Error)]
pub enum IoError {
    /// Filesystem failure.
    #[error("{path}: {source}")]
    Fs {
        /// Offending path.
        path: PathBuf,
        /// Underlying error.
        source: std::io::Error,
    },
    /// Malformed JSON or a schema violation.
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    /// Well-formed JSON describing an invalid model or map.
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Fs { path: path.into(), source })
}

fn write(path: &Path, text: &str) -> Result<(), IoError> {
    fs::write(path, text).map_err(|source| IoError::Fs { path: path.into(), source })
}

fn to_text<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("plain data serializes");
    text.push('\n');
    text
}

/// Parses and validates a model document.
pub fn parse_model(text: &str) -> Result<RelationalStructure, IoError> {
    let raw: RawModel = serde_json::from_str(text)?;
    Ok(RelationalStructure::from_raw(&raw)?)
}

/// Canonical JSON text of a model, newline-terminated.
pub fn model_to_json(model: &RelationalStructure) -> String {
    to_text(&model.to_raw())
}

/// Reads a model file.
pub fn load_model(path: impl AsRef<Path>) -> Result<RelationalStructure, IoError> {
    parse_model(&read(path.as_ref())?)
}

/// Writes a model file.
pub fn save_model(model: &RelationalStructure, path: impl AsRef<Path>) -> Result<(), IoError> {
    write(path.as_ref(), &model_to_json(model))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapFile {
    map: BTreeMap<String, String>,
}

/// Parses a `{"map": {...}}` document against its two models.
pub fn parse_map(text: &str, source: &RelationalStructure, target: &RelationalStructure) -> Result<StateMap, IoError> {
    let file: MapFile = serde_json::from_str(text)?;
    Ok(StateMap::from_names(source, target, &file.map)?)
}

/// JSON text of a state map.
pub fn map_to_json(map: &StateMap, source: &RelationalStructure, target: &RelationalStructure) -> String {
    to_text(&MapFile { map: map.to_names(source, target) })
}

/// Reads a map file.
pub fn load_map(
    path: impl AsRef<Path>,
    source: &RelationalStructure,
    target: &RelationalStructure,
) -> Result<StateMap, IoError> {
    parse_map(&read(path.as_ref())?, source, target)
}

/// Writes a map file.
pub fn save_map(
    map: &StateMap,
    source: &RelationalStructure,
    target: &RelationalStructure,
    path: impl AsRef<Path>,
) -> Result<(), IoError> {
    write(path.as_ref(), &map_to_json(map, source, target))
}

/// On-disk form of an exploration window.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowFile {
    /// Label of the start state.
    pub start: String,
    /// Exploration radius.
    pub radius: usize,
    /// Labels of frontier states, whose successors were not explored.
    pub frontier: Vec<String>,
    /// The induced finite model.
    pub model: RawModel,
}

/// JSON text of a window.
pub fn window_to_json<S>(window: &Window<S>) -> String {
    let m = &window.model;
    to_text(&WindowFile {
        start: m.state_name(0).into(),
        radius: window.radius,
        frontier: window.frontier().map(|ix| m.state_name(ix).to_string()).collect(),
        model: m.to_raw(),
    })
}
