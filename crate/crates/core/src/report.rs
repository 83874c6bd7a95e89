//! Enumeration and search reports, and their on-disk directory layout.
//!
//! A report directory holds `report.json` (parameters, counts, completeness,
//! node counts, and the class file names) and one facet-list file per
//! canonical class, `class_000.cplx`, `class_001.cplx`, ...

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::canon::CanonicalForm;
use crate::error::Result;
use crate::io::{format_facet_list, parse_facet_list};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    /// `"complexes"`, `"weak-pm"` or `"complementary"`.
    pub kind: String,
    pub parameters: BTreeMap<String, u64>,
    /// Canonical representatives, sorted and pairwise non-isomorphic.
    pub classes: Vec<CanonicalForm>,
    /// Labelled objects visited before isomorph rejection. Depends on the
    /// generator's symmetry breaking, so never compare it to class counts.
    pub labeled_count: u64,
    /// False when a node budget cut the search short.
    pub complete: bool,
    pub nodes: u64,
    pub elapsed_ms: u64,
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    version: u32,
    kind: String,
    parameters: BTreeMap<String, u64>,
    class_count: usize,
    labeled_count: u64,
    complete: bool,
    nodes: u64,
    elapsed_ms: u64,
    class_files: Vec<String>,
}

impl EnumerationReport {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Summary without facet lists.
    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&self.json()).expect("plain data")
    }

    fn json(&self) -> ReportJson {
        ReportJson {
            version: 1,
            kind: self.kind.clone(),
            parameters: self.parameters.clone(),
            class_count: self.classes.len(),
            labeled_count: self.labeled_count,
            complete: self.complete,
            nodes: self.nodes,
            elapsed_ms: self.elapsed_ms,
            class_files: (0..self.classes.len()).map(class_file).collect(),
        }
    }

    pub fn write_dir(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("report.json"), self.summary_json())?;
        for (i, c) in self.classes.iter().enumerate() {
            let header = vec![format!("{} class {i}", self.kind)];
            std::fs::write(dir.join(class_file(i)), format_facet_list(&c.to_complex(), &header))?;
        }
        Ok(())
    }

    pub fn read_dir(dir: &Path) -> Result<EnumerationReport> {
        let json: ReportJson = serde_json::from_str(&std::fs::read_to_string(dir.join("report.json"))?)?;
        let classes = json
            .class_files
            .iter()
            .map(|f| {
                let k = parse_facet_list(&std::fs::read_to_string(dir.join(f))?)?;
                Ok(crate::canon::canonical_form(&k))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EnumerationReport {
            kind: json.kind,
            parameters: json.parameters,
            classes,
            labeled_count: json.labeled_count,
            complete: json.complete,
            nodes: json.nodes,
            elapsed_ms: json.elapsed_ms,
        })
    }
}

fn class_file(i: usize) -> String {
    format!("class_{i:03}.cplx")
}
