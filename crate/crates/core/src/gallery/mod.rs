//! Deterministic generators for the complexes used in tests, benches and the CLI.
//!
//! Every generator records named vertex sets, paths and wall chains under the
//! `sets`, `paths` and `chains` keys of the complex metadata.

mod flats;
mod generators;

pub use flats::{CounterexampleReport, CounterexampleRow, TreeOfFlats};
pub use generators::{gen_grid, gen_path, gen_product, gen_staircase, gen_tree, gen_tripod, standard_gallery};

use serde_json::{Map, Value};

use crate::complex::{CubeComplex, Vertex, VertexSet, Wall};
use crate::error::{Error, Result};

fn names_value<'a>(names: impl IntoIterator<Item = &'a str>) -> Value {
    Value::Array(names.into_iter().map(|s| Value::String(s.to_string())).collect())
}

fn meta_list(complex: &CubeComplex, section: &str, key: &str) -> Result<Vec<String>> {
    let entry = complex
        .meta()
        .get(section)
        .and_then(|s| s.get(key))
        .ok_or_else(|| Error::InvalidParameter(format!("complex has no {section} entry named `{key}`")))?;
    let list = entry
        .as_array()
        .ok_or_else(|| Error::InvalidParameter(format!("{section}.{key} is not a list")))?;
    list.iter()
        .map(|v| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::InvalidParameter(format!("{section}.{key} holds a non-string")))
        })
        .collect()
}

fn insert_meta(meta: &mut Map<String, Value>, section: &str, key: &str, value: Value) {
    let entry = meta.entry(section.to_string()).or_insert_with(|| Value::Object(Map::new()));
    if let Value::Object(map) = entry {
        map.insert(key.to_string(), value);
    }
}

impl CubeComplex {
    /// A vertex set stored under `meta.sets`.
    pub fn named_set(&self, key: &str) -> Result<VertexSet> {
        self.vertex_set_from_names(&meta_list(self, "sets", key)?)
    }

    /// A vertex sequence stored under `meta.paths`.
    pub fn named_path(&self, key: &str) -> Result<Vec<Vertex>> {
        meta_list(self, "paths", key)?.iter().map(|n| self.vertex(n)).collect()
    }

    /// A wall sequence stored under `meta.chains`.
    pub fn named_chain(&self, key: &str) -> Result<Vec<Wall>> {
        meta_list(self, "chains", key)?.iter().map(|n| self.wall(n)).collect()
    }

    /// Names of the entries in one metadata section.
    pub fn meta_keys(&self, section: &str) -> Vec<String> {
        self.meta()
            .get(section)
            .and_then(Value::as_object)
            .map(|m| m.keys().cloned().collect())
            .unwrap_or_default()
    }
}
