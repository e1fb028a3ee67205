//! The fixture corpus shipped in `fixtures/` and its manifest.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::matroid::FlatSet;
use crate::parse::{parse_problem, ProblemFile};
use crate::pfd::{parse_document, PfdDocument};

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub fixture: Vec<FixtureEntry>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureEntry {
    pub name: String,
    pub problem: String,
    pub source: String,
    pub oracle: Option<String>,
    /// Number of denominator forms.
    pub forms: Option<usize>,
    /// 1-based forms removed by the reduction.
    pub removed: Option<Vec<usize>>,
    #[serde(default)]
    pub valid_documents: Vec<String>,
    #[serde(default)]
    pub checks: Vec<CheckExpectation>,
    pub pfd: Option<PfdExpectation>,
    pub flats: Option<FlatExpectation>,
    #[serde(default)]
    pub decompositions: Vec<DecompositionExpectation>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckExpectation {
    pub degree: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PfdExpectation {
    pub degree: usize,
    pub terms: Option<usize>,
    pub constant_numerators: Option<bool>,
    pub method: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlatExpectation {
    pub min_size: usize,
    /// Count the flat of all forms too.
    #[serde(default)]
    pub with_top: bool,
    /// `[size, count]` pairs.
    pub census: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionExpectation {
    pub d: usize,
    /// `[exponent, count]`, highest exponent first.
    pub census: Option<Vec<[usize; 2]>>,
    pub components: Option<Vec<ComponentSpec>>,
    /// Components left after greedy pruning.
    pub minimal: Option<Vec<ComponentSpec>>,
    #[serde(default)]
    pub verify: bool,
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub flat: Vec<usize>,
    pub exponent: u32,
}

impl ComponentSpec {
    pub fn flat_set(&self) -> Result<FlatSet> {
        if self.flat.contains(&0) {
            return Err(Error::Problem("flat indices start at 1".into()));
        }
        Ok(FlatSet(self.flat.iter().map(|i| i - 1).collect()))
    }
}

impl FixtureEntry {
    pub fn load_problem(&self) -> Result<ProblemFile> {
        parse_problem(&read(&self.problem)?)
    }

    pub fn load_documents(&self) -> Result<Vec<(String, PfdDocument)>> {
        self.valid_documents.iter().map(|d| Ok((d.clone(), parse_document(&read(d)?)?))).collect()
    }
}

fn read(name: &str) -> Result<String> {
    let path = fixture_dir().join(name);
    std::fs::read_to_string(&path).map_err(|e| Error::Problem(format!("{}: {e}", path.display())))
}

pub fn load_manifest() -> Result<Manifest> {
    toml::from_str(&read("manifest.toml")?).map_err(|e| Error::Problem(format!("manifest.toml: {e}")))
}

/// The manifest entry called `name`.
pub fn fixture(name: &str) -> Result<FixtureEntry> {
    load_manifest()?
        .fixture
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::Problem(format!("no fixture named `{name}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_covers_every_file() {
        let m = load_manifest().unwrap();
        let mut named: Vec<String> = m
            .fixture
            .iter()
            .flat_map(|f| std::iter::once(f.problem.clone()).chain(f.valid_documents.iter().cloned()))
            .collect();
        named.sort();
        let mut on_disk: Vec<String> = std::fs::read_dir(fixture_dir())
            .unwrap()
            .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
            .filter(|n| n != "manifest.toml")
            .collect();
        on_disk.sort();
        assert_eq!(named, on_disk);
        assert!(m.fixture.iter().all(|f| !f.source.is_empty()));
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(fixture("intro").unwrap().problem, "intro.problem");
        assert!(fixture("nope").is_err());
    }
}
