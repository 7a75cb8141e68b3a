use std::fs;
use std::path::Path;

use anyhow::{bail, Context};
use cubex_core::morse::SublinearFunction;
use cubex_core::{CubeComplex, Vertex, VertexSet, Wall};
use serde_json::Value;

pub fn load(path: &Path) -> anyhow::Result<CubeComplex> {
    CubeComplex::load(path).with_context(|| format!("loading {}", path.display()))
}

/// Parses `one`, `log:p`, `pow:s` or `table:FILE` and validates the result.
pub fn kappa(spec: &str) -> anyhow::Result<SublinearFunction> {
    let kappa = match spec.strip_prefix("table:") {
        Some(file) => {
            let text = fs::read_to_string(file).with_context(|| format!("reading gauge table {file}"))?;
            SublinearFunction::table_from_str(&text)?
        }
        None => spec.parse::<SublinearFunction>()?,
    };
    kappa.require_valid()?;
    Ok(kappa)
}

/// Strings from a JSON array, or from the `key` array of a JSON object.
fn string_list(value: &Value, key: &str) -> anyhow::Result<Vec<String>> {
    let list = match value {
        Value::Array(items) => items,
        Value::Object(map) => match map.get(key) {
            Some(Value::Array(items)) => items,
            _ => bail!("expected a `{key}` array"),
        },
        _ => bail!("expected a JSON array of names"),
    };
    list.iter()
        .map(|v| v.as_str().map(str::to_string).context("names must be strings"))
        .collect()
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// A vertex set stored as a JSON list of names (or `{"vertices": [...]}`).
pub fn vertex_file(complex: &CubeComplex, path: &Path) -> anyhow::Result<VertexSet> {
    let names = string_list(&read_json(path)?, "vertices")?;
    Ok(complex.vertex_set_from_names(&names)?)
}

/// A wall chain: a metadata chain name, or a JSON file listing wall names
/// (or `{"walls": [...]}`).
pub fn wall_chain(complex: &CubeComplex, spec: &str) -> anyhow::Result<Vec<Wall>> {
    if complex.meta_keys("chains").iter().any(|k| k == spec) {
        return Ok(complex.named_chain(spec)?);
    }
    let path = Path::new(spec);
    if !path.exists() {
        bail!("`{spec}` is neither a chain of the complex nor a file");
    }
    let names = string_list(&read_json(path)?, "walls")?;
    names.iter().map(|n| complex.wall(n).map_err(Into::into)).collect()
}

/// A named path, or failing that a named set, from the complex metadata.
pub enum Named {
    Path(Vec<Vertex>),
    Set(VertexSet),
}

pub fn named(complex: &CubeComplex, name: &str) -> anyhow::Result<Named> {
    if complex.meta_keys("paths").iter().any(|k| k == name) {
        return Ok(Named::Path(complex.named_path(name)?));
    }
    if complex.meta_keys("sets").iter().any(|k| k == name) {
        return Ok(Named::Set(complex.named_set(name)?));
    }
    bail!("the complex has no path or set named `{name}`")
}

pub fn names(complex: &CubeComplex, vertices: impl IntoIterator<Item = Vertex>) -> Vec<String> {
    vertices.into_iter().map(|v| complex.vertex_name(v).to_string()).collect()
}

pub fn wall_names(complex: &CubeComplex, walls: impl IntoIterator<Item = Wall>) -> Vec<String> {
    walls.into_iter().map(|w| complex.wall_name(w).to_string()).collect()
}
