//! JSON serialization of complexes.
//!
//! The writer is hand-rolled so that output is byte-stable: one vertex or edge per
//! line, keys in a fixed order, `meta` in insertion order.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use super::{CubeComplex, ValidationOptions};
use crate::error::Result;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    vertices: Vec<String>,
    edges: Vec<(String, String, String)>,
    basepoint: String,
    #[serde(default)]
    meta: Map<String, Value>,
}

impl CubeComplex {
    /// Parses and validates a complex in the JSON edge-list format.
    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json_str_with(s, &ValidationOptions::default())
    }

    pub fn from_json_str_with(s: &str, options: &ValidationOptions) -> Result<Self> {
        let file: ComplexFile = serde_json::from_str(s)?;
        let complex = Self::from_edge_list_with(&file.vertices, file.edges.iter().map(|(u, v, w)| (u, v, w)), &file.basepoint, options)?;
        Ok(complex.with_meta(file.meta))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json_string(&self) -> String {
        let q = |s: &str| serde_json::to_string(s).expect("strings serialize");
        let mut out = String::from("{\n  \"vertices\": [");
        for (i, name) in self.vertex_names().iter().enumerate() {
            out.push_str(if i == 0 { "\n    " } else { ",\n    " });
            out.push_str(&q(name));
        }
        out.push_str(if self.vertex_count() == 0 { "],\n" } else { "\n  ],\n" });
        out.push_str("  \"edges\": [");
        for (i, e) in self.edges().iter().enumerate() {
            out.push_str(if i == 0 { "\n    " } else { ",\n    " });
            let _ = write!(
                out,
                "[{}, {}, {}]",
                q(self.vertex_name(e.u)),
                q(self.vertex_name(e.v)),
                q(self.wall_name(e.wall))
            );
        }
        out.push_str(if self.edge_count() == 0 { "],\n" } else { "\n  ],\n" });
        let _ = writeln!(out, "  \"basepoint\": {},", q(self.vertex_name(self.basepoint())));
        let meta = serde_json::to_string(self.meta()).expect("json values serialize");
        let _ = writeln!(out, "  \"meta\": {meta}");
        out.push_str("}\n");
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json_string())?;
        Ok(())
    }

    /// SHA-256 of the canonical JSON form, hex encoded.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_json_string().as_bytes()))
    }
}
