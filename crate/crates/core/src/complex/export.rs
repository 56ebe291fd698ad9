//! Self-contained JSON description of a single component.

use serde::{Deserialize, Serialize};

use super::{adjacent, corner_step, face_step, Complex, Side};
use crate::error::{ensure, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportTriangle {
    pub x: u32,
    pub y: u32,
    pub x_name: String,
    pub y_name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportInvariants {
    pub genus: u32,
    pub n: u32,
    pub lambda: Vec<u32>,
    #[serde(rename = "F")]
    pub faces: u32,
    #[serde(rename = "V")]
    pub vertices: u32,
    #[serde(rename = "E")]
    pub edges: u32,
}

/// Triangles are referred to by their position in `triangles`. Adjacency
/// maps give, for each triangle, its neighbour across that side. Faces list
/// triangles in rotation order; vertices list their full star as
/// `[triangle, corner]` pairs with corner 0 = `(x,1)`, 1 = `(y,1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportDocument {
    pub group: String,
    pub component_id: usize,
    pub triangles: Vec<ExportTriangle>,
    pub rim: Vec<u32>,
    pub spoke_x: Vec<u32>,
    pub spoke_y: Vec<u32>,
    pub faces: Vec<Vec<u32>>,
    pub vertices: Vec<Vec<[u32; 2]>>,
    pub invariants: ExportInvariants,
}

impl ExportDocument {
    pub fn build(complex: &Complex<'_>, k: usize) -> Result<Self> {
        let group = complex.group();
        let comp = complex.component(k);
        let inv = complex.compute_invariants(k)?;
        let local = |t| complex.local_index(t).expect("neighbour in component") as u32;
        let tris: Vec<_> = comp.triangles.iter().map(|&id| complex.triangle(id)).collect();

        let side_map = |side| tris.iter().map(|&t| local(adjacent(group, t, side))).collect::<Vec<u32>>();
        let (rim, spoke_x, spoke_y) = (side_map(Side::Rim), side_map(Side::SpokeX), side_map(Side::SpokeY));

        let mut seen = vec![false; tris.len()];
        let mut faces = Vec::new();
        for (i, &t0) in tris.iter().enumerate() {
            if seen[i] {
                continue;
            }
            let mut face = Vec::new();
            let mut t = t0;
            loop {
                let j = local(t);
                seen[j as usize] = true;
                face.push(j);
                t = face_step(group, t);
                if t == t0 {
                    break;
                }
            }
            faces.push(face);
        }

        seen.fill(false);
        let mut vertices = Vec::new();
        for (i, &t0) in tris.iter().enumerate() {
            if seen[i] {
                continue;
            }
            let mut star = Vec::new();
            let mut t = t0;
            loop {
                let j = local(t);
                seen[j as usize] = true;
                star.push([j, 0]);
                star.push([local(adjacent(group, t, Side::SpokeX)), 1]);
                t = corner_step(group, t);
                if t == t0 {
                    break;
                }
            }
            vertices.push(star);
        }

        Ok(ExportDocument {
            group: group.label().to_owned(),
            component_id: k,
            triangles: tris
                .iter()
                .map(|t| ExportTriangle {
                    x: t.x,
                    y: t.y,
                    x_name: group.name(t.x).to_owned(),
                    y_name: group.name(t.y).to_owned(),
                })
                .collect(),
            rim,
            spoke_x,
            spoke_y,
            faces,
            vertices,
            invariants: ExportInvariants {
                genus: inv.genus,
                n: inv.face_size,
                lambda: if inv.equivar { vec![inv.lambda1] } else { vec![inv.lambda1, inv.lambda2] },
                faces: inv.faces,
                vertices: inv.vertices,
                edges: inv.edges,
            },
        })
    }

    /// Recomputes the invariants from the adjacency maps alone: faces are
    /// cycles of `spoke_y`, vertices are cycles of `rim ∘ spoke_x`.
    pub fn recompute_invariants(&self) -> Result<ExportInvariants> {
        let len = self.triangles.len();
        ensure!(
            self.rim.len() == len && self.spoke_x.len() == len && self.spoke_y.len() == len,
            "adjacency maps do not cover all {len} triangles"
        );
        ensure!(self.rim.iter().chain(&self.spoke_x).chain(&self.spoke_y).all(|&t| (t as usize) < len), "adjacency target out of range");
        let cycles = |step: &dyn Fn(usize) -> usize| -> Vec<u32> {
            let mut seen = vec![false; len];
            let mut lengths = Vec::new();
            for start in 0..len {
                if seen[start] {
                    continue;
                }
                let mut t = start;
                let mut l = 0;
                while !seen[t] {
                    seen[t] = true;
                    l += 1;
                    t = step(t);
                }
                lengths.push(l);
            }
            lengths
        };
        let faces = cycles(&|t| self.spoke_y[t] as usize);
        let valencies = cycles(&|t| self.rim[self.spoke_x[t] as usize] as usize);
        let n = faces[0];
        ensure!(faces.iter().all(|&f| f == n), "unequal face sizes");
        ensure!(len.is_multiple_of(2), "odd triangle count");
        let (f, v, e) = (faces.len() as i64, valencies.len() as i64, (len / 2) as i64);
        let chi = v - e + f;
        ensure!(chi <= 2 && chi % 2 == 0, "non-integral genus");
        let mut lambda = valencies.clone();
        lambda.sort_unstable();
        lambda.dedup();
        Ok(ExportInvariants {
            genus: ((2 - chi) / 2) as u32,
            n,
            lambda,
            faces: f as u32,
            vertices: v as u32,
            edges: e as u32,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_named_group, BuildOptions};

    #[test]
    fn s3_sphere_document() {
        let g = build_named_group(&"S3".parse().unwrap(), BuildOptions::default()).unwrap();
        let c = Complex::build(&g).unwrap();
        let k = (0..2).find(|&k| c.component(k).len() == 6).unwrap();
        let doc = ExportDocument::build(&c, k).unwrap();
        assert_eq!(doc.triangles.len(), 6);
        assert_eq!(doc.faces.len(), 2);
        assert_eq!(doc.vertices.len(), 3);
        assert_eq!(doc.invariants.lambda, vec![2]);
        let text = serde_json::to_string(&doc).unwrap();
        let back: ExportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.recompute_invariants().unwrap(), doc.invariants);
    }
}
