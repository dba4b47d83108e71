//! Resolving systems from catalog names, files and per-run overrides.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use steiner_veblen::catalog;
use steiner_veblen::format::parse_any;
use steiner_veblen::SteinerTripleSystem;

/// Catalog lookups with selected entries replaced by files.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    overrides: BTreeMap<String, SteinerTripleSystem>,
}

impl Catalog {
    /// Parses `NAME=PATH` overrides. A file that does not validate is an
    /// error here, before any work starts.
    pub fn with_overrides(specs: &[String]) -> Result<Self> {
        let mut overrides = BTreeMap::new();
        for spec in specs {
            let Some((name, path)) = spec.split_once('=') else {
                bail!("override `{spec}` is not of the form NAME=PATH");
            };
            catalog::get(name).with_context(|| format!("override for `{name}`"))?;
            let sts = read_file(Path::new(path))
                .with_context(|| format!("override for `{name}` from {path}"))?;
            overrides.insert(name.to_string(), sts);
        }
        Ok(Catalog { overrides })
    }

    pub fn system(&self, name: &str) -> Result<SteinerTripleSystem> {
        if let Some(s) = self.overrides.get(name) {
            return Ok(s.clone());
        }
        Ok(catalog::get(name)?.system)
    }

    /// A catalog name, else a path. Returns the name used to look up
    /// published automorphism generators (empty for files).
    pub fn resolve(&self, source: &str) -> Result<(String, SteinerTripleSystem)> {
        if catalog::get(source).is_ok() {
            return Ok((source.to_string(), self.system(source)?));
        }
        let path = Path::new(source);
        if path.exists() {
            return Ok((String::new(), read_file(path)?));
        }
        bail!("`{source}` is neither a catalog name nor a readable file (see `catalog list`)")
    }
}

pub fn read_file(path: &Path) -> Result<SteinerTripleSystem> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_any(&text).with_context(|| format!("parsing {}", path.display()))
}
