//! Tables of cohomology dimensions.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::forms::{AmbientSpace, Degree};

/// `h^i(X, E(k))` for a range of twists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub space: AmbientSpace,
    /// (twist, i) -> dimension
    entries: BTreeMap<(Degree, usize), usize>,
}

#[derive(Serialize)]
struct Row {
    i: usize,
    k: String,
    dim: usize,
}

impl CohomologyTable {
    pub fn new(space: AmbientSpace) -> CohomologyTable {
        CohomologyTable {
            space,
            entries: BTreeMap::new(),
        }
    }

    pub fn insert_row(&mut self, k: Degree, dims: &[usize]) {
        for (i, &d) in dims.iter().enumerate() {
            self.entries.insert((k, i), d);
        }
    }

    pub fn get(&self, i: usize, k: Degree) -> Option<usize> {
        self.entries.get(&(k, i)).copied()
    }

    pub fn twists(&self) -> Vec<Degree> {
        let mut ks: Vec<Degree> = self.entries.keys().map(|(k, _)| *k).collect();
        ks.dedup();
        ks
    }

    /// Row of dimensions `h^0..h^dim` at twist `k`.
    pub fn row(&self, k: Degree) -> Vec<usize> {
        (0..=self.space.dim()).map(|i| self.get(i, k).unwrap_or(0)).collect()
    }

    /// Long CSV layout `i,k,dim`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,k,dim\n");
        for ((k, i), d) in &self.entries {
            out.push_str(&format!("{i},{k},{d}\n"));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Row> = self
            .entries
            .iter()
            .map(|((k, i), d)| Row {
                i: *i,
                k: k.to_string(),
                dim: *d,
            })
            .collect();
        serde_json::json!({ "space": self.space.name(), "entries": rows })
    }
}
