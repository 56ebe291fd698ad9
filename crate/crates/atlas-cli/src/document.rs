use std::fmt::Write as _;

use atlas_core::complex::CensusRow;
use serde::{Deserialize, Serialize};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Census of one group, optionally with per-component reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtlasDocument {
    pub tool_version: String,
    pub group: String,
    pub order: usize,
    pub triangles: usize,
    pub total_components: u64,
    pub census: Vec<CensusRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reports: Option<serde_json::Value>,
}

impl AtlasDocument {
    pub fn new(group: String, order: usize, triangles: usize, census: Vec<CensusRow>) -> Self {
        AtlasDocument {
            tool_version: TOOL_VERSION.to_owned(),
            group,
            order,
            triangles,
            total_components: census.iter().map(|r| r.count).sum(),
            census,
            reports: None,
        }
    }

    /// Rows sorted canonically and counts summing to the total.
    pub fn is_consistent(&self) -> bool {
        self.census.windows(2).all(|w| w[0].key() < w[1].key())
            && self.census.iter().map(|r| r.count).sum::<u64>() == self.total_components
    }

    pub fn distinct_genera(&self) -> usize {
        let mut g: Vec<u32> = self.census.iter().map(|r| r.genus).collect();
        g.dedup();
        g.len()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} (order {}): {} components, {} triangles, {} distinct genera",
            self.group,
            self.order,
            self.total_components,
            self.triangles,
            self.distinct_genera()
        );
        let _ = writeln!(out, "{:>5} {:>6} {:<12} {:>8} {:>7} {:>6}", "genus", "faces", "symbol", "vertices", "edges", "count");
        for r in &self.census {
            let _ = writeln!(
                out,
                "{:>5} {:>6} {:<12} {:>8} {:>7} {:>6}",
                r.genus,
                r.faces,
                r.symbol(),
                r.vertices,
                r.edges,
                r.count
            );
        }
        out
    }
}
