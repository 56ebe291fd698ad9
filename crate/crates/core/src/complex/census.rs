use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ComponentInvariants;

/// One line of a census: a component type and how often it occurs.
///
/// Field order is the canonical sort order and the CSV column order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CensusRow {
    pub genus: u32,
    pub faces: u32,
    pub n: u32,
    pub lambda1: u32,
    pub lambda2: u32,
    pub vertices: u32,
    pub edges: u32,
    pub count: u64,
}

impl CensusRow {
    pub fn symbol(&self) -> String {
        format_symbol(self.n, self.lambda1, self.lambda2)
    }

    pub fn key(&self) -> (u32, u32, u32, u32, u32, u32, u32) {
        (self.genus, self.faces, self.n, self.lambda1, self.lambda2, self.vertices, self.edges)
    }
}

/// `{n,λ}` when the valencies agree, else `{n,λ1-λ2}` with `λ1 <= λ2`.
pub fn format_symbol(n: u32, lambda1: u32, lambda2: u32) -> String {
    let (a, b) = (lambda1.min(lambda2), lambda1.max(lambda2));
    if a == b {
        format!("{{{n},{a}}}")
    } else {
        format!("{{{n},{a}-{b}}}")
    }
}

/// Groups components by genus, faces, symbol, vertices and edges.
pub fn census(invariants: &[ComponentInvariants]) -> Vec<CensusRow> {
    let mut counts: BTreeMap<_, u64> = BTreeMap::new();
    for inv in invariants {
        *counts.entry(inv.type_key()).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|((genus, faces, n, lambda1, lambda2, vertices, edges), count)| CensusRow {
            genus,
            faces,
            n,
            lambda1,
            lambda2,
            vertices,
            edges,
            count,
        })
        .collect()
}
