use serde::{Deserialize, Serialize};

use super::{corner_step, face_step, Complex, Side};
use crate::error::{ensure, Result};

/// Face and vertex orbits of one component, indexed by local triangle.
#[derive(Clone, Debug)]
pub struct ComponentStructure {
    /// Face (type-2 vertex star) containing each triangle.
    pub face_of: Vec<u32>,
    pub face_sizes: Vec<u32>,
    /// Type-1 vertex at the first corner `(x,1)` of each triangle.
    pub vertex_of: Vec<u32>,
    /// Valency of each type-1 vertex (half its triangle star).
    pub valencies: Vec<u32>,
}

impl ComponentStructure {
    pub(super) fn compute(complex: &Complex<'_>, k: usize) -> Result<Self> {
        let group = complex.group();
        let comp = complex.component(k);
        let len = comp.len();
        let local = |t| complex.local_index(t).expect("adjacent triangle in component");

        let mut face_of = vec![u32::MAX; len];
        let mut face_sizes = Vec::new();
        let mut vertex_of = vec![u32::MAX; len];
        let mut valencies = Vec::new();
        for (i, &id) in comp.triangles.iter().enumerate() {
            let start = complex.triangle(id);
            if face_of[i] == u32::MAX {
                let f = face_sizes.len() as u32;
                let mut size = 0;
                let mut t = start;
                loop {
                    let j = local(t);
                    ensure!(face_of[j] == u32::MAX, "component {k}: face orbit through {t:?} is not a cycle");
                    face_of[j] = f;
                    size += 1;
                    t = face_step(group, t);
                    if t == start {
                        break;
                    }
                }
                face_sizes.push(size);
            }
            if vertex_of[i] == u32::MAX {
                let v = valencies.len() as u32;
                let mut size = 0;
                let mut t = start;
                loop {
                    let j = local(t);
                    ensure!(vertex_of[j] == u32::MAX, "component {k}: vertex orbit through {t:?} is not a cycle");
                    vertex_of[j] = v;
                    size += 1;
                    t = corner_step(group, t);
                    if t == start {
                        break;
                    }
                }
                valencies.push(size);
            }
        }
        Ok(ComponentStructure {
            face_of,
            face_sizes,
            vertex_of,
            valencies,
        })
    }

    /// Vertex at the second corner `(y,1)` of the local triangle `i`: the
    /// first corner of its rim neighbour.
    pub fn second_vertex(&self, complex: &Complex<'_>, k: usize, i: usize) -> u32 {
        let t = complex.triangle(complex.component(k).triangles[i]);
        let rim = super::adjacent(complex.group(), t, Side::Rim);
        self.vertex_of[complex.local_index(rim).expect("rim neighbour in component")]
    }
}

/// Genus, cell structure and symmetry type of one component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComponentInvariants {
    pub genus: u32,
    /// Face size `n`.
    pub face_size: u32,
    /// Smaller valency value.
    pub lambda1: u32,
    /// Larger valency value (equal to `lambda1` when only one occurs).
    pub lambda2: u32,
    pub faces: u32,
    /// Type-1 vertices.
    pub vertices: u32,
    /// Rim edges.
    pub edges: u32,
    pub triangles: u32,
    /// Valency at `(x,1)` of the reference triangle `T(x,y)`.
    pub valency_x: u32,
    /// Valency at `(y,1)` of the reference triangle.
    pub valency_y: u32,
    /// Orbits of type-1 vertices under conjugation (1 or 2).
    pub vertex_orbits: u8,
    /// Single valency value.
    pub equivar: bool,
}

impl ComponentInvariants {
    pub fn from_structure(complex: &Complex<'_>, k: usize, s: &ComponentStructure) -> Result<Self> {
        let group = complex.group();
        let triangles = complex.component(k).len() as u32;
        let reference = complex.reference(k);

        let face_size = s.face_sizes[0];
        ensure!(
            s.face_sizes.iter().all(|&f| f == face_size),
            "component {k}: unequal face sizes {:?}",
            {
                let mut v = s.face_sizes.clone();
                v.sort_unstable();
                v.dedup();
                v
            }
        );
        let mut distinct = s.valencies.clone();
        distinct.sort_unstable();
        distinct.dedup();
        ensure!(distinct.len() <= 2, "component {k}: more than two valencies {distinct:?}");
        let (lambda1, lambda2) = (distinct[0], *distinct.last().unwrap());

        ensure!(triangles.is_multiple_of(2), "component {k}: odd triangle count {triangles}");
        let edges = triangles / 2;
        let faces = s.face_sizes.len() as u32;
        let vertices = s.valencies.len() as u32;
        ensure!(face_size * faces == triangles, "component {k}: nF = {} != {triangles}", face_size * faces);
        let valency_sum: u32 = s.valencies.iter().sum();
        ensure!(valency_sum == 2 * edges, "component {k}: valency sum {valency_sum} != 2E = {}", 2 * edges);

        let chi = vertices as i64 - edges as i64 + faces as i64;
        ensure!(chi <= 2 && chi % 2 == 0, "component {k}: Euler characteristic {chi} gives no integral genus >= 0");
        let genus = ((2 - chi) / 2) as u32;

        let valency_x = s.valencies[s.vertex_of[0] as usize];
        let valency_y = s.valencies[s.second_vertex(complex, k, 0) as usize];
        // 2 - 2g = E (1/λx + 1/λy + 2/n - 1), cleared of denominators.
        let (lx, ly, n, e) = (valency_x as i64, valency_y as i64, face_size as i64, edges as i64);
        ensure!(
            chi * lx * ly * n == e * (ly * n + lx * n + 2 * lx * ly - lx * ly * n),
            "component {k}: genus formula disagrees (chi {chi}, λx {lx}, λy {ly}, n {n}, E {e})"
        );

        let (x, y) = (reference.x, reference.y);
        let flip = (0..group.order() as u32).any(|g| group.conj(g, x) == y && group.conj(g, y) == x);
        Ok(ComponentInvariants {
            genus,
            face_size,
            lambda1,
            lambda2,
            faces,
            vertices,
            edges,
            triangles,
            valency_x,
            valency_y,
            vertex_orbits: if flip { 1 } else { 2 },
            equivar: lambda1 == lambda2,
        })
    }

    /// `{n,λ}` or `{n,λ1-λ2}`.
    pub fn symbol(&self) -> String {
        super::format_symbol(self.face_size, self.lambda1, self.lambda2)
    }

    /// Census grouping key: genus, faces, n, λ1, λ2, vertices, edges.
    pub fn type_key(&self) -> (u32, u32, u32, u32, u32, u32, u32) {
        (self.genus, self.faces, self.face_size, self.lambda1, self.lambda2, self.vertices, self.edges)
    }
}

#[cfg(test)]
mod tests {
    use crate::complex::Complex;
    use crate::group::{build_named_group, BuildOptions, GroupTable};

    fn group(spec: &str) -> GroupTable {
        build_named_group(&spec.parse().unwrap(), BuildOptions::default()).unwrap()
    }

    #[test]
    fn s3_components_match_table() {
        let g = group("S3");
        let c = Complex::build(&g).unwrap();
        let mut inv = c.all_invariants().unwrap();
        inv.sort_by_key(|i| i.faces);
        let small = inv[0];
        assert_eq!(
            (small.genus, small.face_size, small.lambda1, small.lambda2, small.faces, small.vertices, small.edges),
            (0, 3, 2, 2, 2, 3, 3)
        );
        assert_eq!(small.symbol(), "{3,2}");
        let big = inv[1];
        assert_eq!(
            (big.genus, big.face_size, big.lambda1, big.lambda2, big.faces, big.vertices, big.edges),
            (0, 4, 2, 3, 3, 5, 6)
        );
        assert_eq!(big.symbol(), "{4,2-3}");
    }

    #[test]
    fn extraspecial_three_components_are_tori() {
        let g = group("ES(3)");
        let c = Complex::build(&g).unwrap();
        for inv in c.all_invariants().unwrap() {
            assert_eq!(
                (inv.genus, inv.face_size, inv.lambda1, inv.lambda2, inv.edges, inv.faces),
                (1, 6, 3, 3, 9, 3)
            );
            assert_eq!(inv.vertex_orbits, 2);
        }
    }

    #[test]
    fn transposition_sphere_is_vertex_transitive() {
        let g = group("S3");
        let c = Complex::build(&g).unwrap();
        let inv = c.all_invariants().unwrap();
        let small = inv.iter().find(|i| i.faces == 2).unwrap();
        assert_eq!(small.vertex_orbits, 1);
        let big = inv.iter().find(|i| i.faces == 3).unwrap();
        assert_eq!(big.vertex_orbits, 2);
    }
}
