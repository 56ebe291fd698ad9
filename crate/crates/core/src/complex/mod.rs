//! The resolved triangle complex of a group and its surface components.
//!
//! Triangles are ordered noncommuting pairs `T(x, y)` with corners `(x,1)`,
//! `(y,1)` and `(xy,2)`. Each edge lies on exactly two triangles:
//!
//! * rim `[(x,1),(y,1)]` is shared with `T(y, x)`,
//! * spoke `[(y,1),(xy,2)]` is shared with `T(y, y⁻¹xy)`,
//! * spoke `[(x,1),(xy,2)]` is shared with `T(xyx⁻¹, x)`.
//!
//! Components are the classes of the equivalence generated by these moves.

mod census;
mod export;
mod invariants;
mod union_find;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{AtlasError, Result};
use crate::group::GroupTable;

pub use census::{census, format_symbol, CensusRow};
pub use export::{ExportDocument, ExportInvariants, ExportTriangle};
pub use invariants::{ComponentInvariants, ComponentStructure};
pub use union_find::UnionFind;

pub const NO_COMPONENT: u32 = u32::MAX;

/// The ordered pair `(x, y)`; its dense id is `x·|G| + y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triangle {
    pub x: u32,
    pub y: u32,
}

impl Triangle {
    pub fn new(x: u32, y: u32) -> Self {
        Triangle { x, y }
    }

    #[inline]
    pub fn id(self, order: usize) -> u32 {
        self.x * order as u32 + self.y
    }

    #[inline]
    pub fn from_id(id: u32, order: usize) -> Self {
        Triangle {
            x: id / order as u32,
            y: id % order as u32,
        }
    }

    /// The face-center corner `xy`.
    pub fn corner(self, group: &GroupTable) -> u32 {
        group.mul(self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `[(x,1),(y,1)]`
    Rim,
    /// `[(y,1),(xy,2)]`
    SpokeY,
    /// `[(x,1),(xy,2)]`
    SpokeX,
}

/// The triangle across `side` from `t`.
#[inline]
pub fn adjacent(group: &GroupTable, t: Triangle, side: Side) -> Triangle {
    let Triangle { x, y } = t;
    match side {
        Side::Rim => Triangle::new(y, x),
        Side::SpokeY => Triangle::new(y, group.conj(group.inv(y), x)),
        Side::SpokeX => Triangle::new(group.conj(x, y), x),
    }
}

/// One step around a face center: `T(x, y) ↦ T(y, y⁻¹xy)`.
#[inline]
pub fn face_step(group: &GroupTable, t: Triangle) -> Triangle {
    adjacent(group, t, Side::SpokeY)
}

/// One step around the first corner: `T(x, y) ↦ T(x, xyx⁻¹)`, i.e. a spoke
/// crossing followed by a rim crossing.
#[inline]
pub fn corner_step(group: &GroupTable, t: Triangle) -> Triangle {
    Triangle::new(t.x, group.conj(t.x, t.y))
}

/// Every noncommuting ordered pair.
pub fn enumerate_triangles(group: &GroupTable) -> Vec<Triangle> {
    let n = group.order() as u32;
    (0..n)
        .flat_map(|x| (0..n).map(move |y| Triangle::new(x, y)))
        .filter(|t| !group.commutes(t.x, t.y))
        .collect()
}

/// `Σ_x |C(x)|`, computed from conjugacy classes: each class of size `k`
/// contributes `k · |G|/k = |G|`, so this is `|G| · (number of classes)`.
pub fn commuting_pair_count(group: &GroupTable) -> usize {
    group.order() * group.conjugacy_classes().len()
}

/// The decomposition of all triangles of a group into surface components.
pub struct Complex<'g> {
    group: &'g GroupTable,
    component_of: Vec<u32>,
    local_index: Vec<u32>,
    offsets: Vec<usize>,
    members: Vec<u32>,
}

/// A borrowed view of one component.
#[derive(Clone, Copy)]
pub struct SurfaceComponent<'a> {
    pub id: usize,
    /// Dense triangle ids, ascending.
    pub triangles: &'a [u32],
}

impl SurfaceComponent<'_> {
    /// The least-id triangle.
    pub fn reference_id(&self) -> u32 {
        self.triangles[0]
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }
}

impl<'g> Complex<'g> {
    /// Union-find over all triangles (rim and spoke moves), then a single
    /// labelling pass so components are numbered by least triangle id.
    pub fn build(group: &'g GroupTable) -> Result<Self> {
        if !group.is_dense() {
            return Err(AtlasError::CapExceeded {
                what: "table",
                limit: group.order().saturating_sub(1),
                actual: group.order(),
            });
        }
        let n = group.order();
        let pairs = n * n;
        let mut uf = UnionFind::new(pairs);
        let mut is_triangle = vec![false; pairs];
        for x in 0..n as u32 {
            for y in 0..n as u32 {
                if group.commutes(x, y) {
                    continue;
                }
                let t = Triangle::new(x, y);
                let id = t.id(n);
                is_triangle[id as usize] = true;
                uf.union(id, adjacent(group, t, Side::Rim).id(n));
                uf.union(id, adjacent(group, t, Side::SpokeY).id(n));
            }
        }

        let mut label_of_root = vec![NO_COMPONENT; pairs];
        let mut component_of = vec![NO_COMPONENT; pairs];
        let mut sizes: Vec<usize> = Vec::new();
        for id in 0..pairs as u32 {
            if !is_triangle[id as usize] {
                continue;
            }
            let root = uf.find(id) as usize;
            if label_of_root[root] == NO_COMPONENT {
                label_of_root[root] = sizes.len() as u32;
                sizes.push(0);
            }
            let c = label_of_root[root];
            component_of[id as usize] = c;
            sizes[c as usize] += 1;
        }
        drop(uf);
        drop(label_of_root);

        let mut offsets = Vec::with_capacity(sizes.len() + 1);
        offsets.push(0);
        for s in &sizes {
            offsets.push(offsets.last().unwrap() + s);
        }
        let mut fill = offsets.clone();
        let mut members = vec![0u32; *offsets.last().unwrap()];
        let mut local_index = vec![NO_COMPONENT; pairs];
        for id in 0..pairs as u32 {
            let c = component_of[id as usize];
            if c == NO_COMPONENT {
                continue;
            }
            let slot = fill[c as usize];
            members[slot] = id;
            local_index[id as usize] = (slot - offsets[c as usize]) as u32;
            fill[c as usize] += 1;
        }
        Ok(Complex {
            group,
            component_of,
            local_index,
            offsets,
            members,
        })
    }

    pub fn group(&self) -> &'g GroupTable {
        self.group
    }

    pub fn component_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn triangle_count(&self) -> usize {
        self.members.len()
    }

    /// True for abelian groups.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn component(&self, k: usize) -> SurfaceComponent<'_> {
        SurfaceComponent {
            id: k,
            triangles: &self.members[self.offsets[k]..self.offsets[k + 1]],
        }
    }

    pub fn components(&self) -> impl Iterator<Item = SurfaceComponent<'_>> + '_ {
        (0..self.component_count()).map(move |k| self.component(k))
    }

    /// Component containing the pair, or `None` if the pair commutes.
    #[inline]
    pub fn component_of(&self, t: Triangle) -> Option<usize> {
        match self.component_of[t.id(self.group.order()) as usize] {
            NO_COMPONENT => None,
            c => Some(c as usize),
        }
    }

    /// Position of `t` inside its component's triangle list.
    #[inline]
    pub fn local_index(&self, t: Triangle) -> Option<usize> {
        match self.local_index[t.id(self.group.order()) as usize] {
            NO_COMPONENT => None,
            i => Some(i as usize),
        }
    }

    #[inline]
    pub fn triangle(&self, id: u32) -> Triangle {
        Triangle::from_id(id, self.group.order())
    }

    pub fn reference(&self, k: usize) -> Triangle {
        self.triangle(self.component(k).reference_id())
    }

    pub fn structure(&self, k: usize) -> Result<ComponentStructure> {
        ComponentStructure::compute(self, k)
    }

    pub fn compute_invariants(&self, k: usize) -> Result<ComponentInvariants> {
        ComponentInvariants::from_structure(self, k, &self.structure(k)?)
    }

    /// Invariants of every component, computed in parallel on the current
    /// rayon pool; output order follows component ids.
    pub fn all_invariants(&self) -> Result<Vec<ComponentInvariants>> {
        (0..self.component_count())
            .into_par_iter()
            .map(|k| self.compute_invariants(k))
            .collect()
    }

    /// Each triangle carries the boundary cycle `(x,1) → (y,1) → (xy,2)`;
    /// the component is coherently oriented when every directed edge occurs
    /// exactly once and its reverse occurs too.
    pub fn orientation_check(&self, k: usize) -> bool {
        let n = self.group.order() as u64;
        let vertex_count = 2 * n;
        let key = |from: u64, to: u64| from * vertex_count + to;
        let mut directed = Vec::with_capacity(3 * self.component(k).len());
        for &id in self.component(k).triangles {
            let t = self.triangle(id);
            let (a, b, c) = (t.x as u64, t.y as u64, n + t.corner(self.group) as u64);
            directed.push(key(a, b));
            directed.push(key(b, c));
            directed.push(key(c, a));
        }
        directed.sort_unstable();
        if directed.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        directed.iter().all(|&e| {
            let (from, to) = (e / vertex_count, e % vertex_count);
            directed.binary_search(&key(to, from)).is_ok()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_named_group, BuildOptions};

    fn group(spec: &str) -> GroupTable {
        build_named_group(&spec.parse().unwrap(), BuildOptions::default()).unwrap()
    }

    #[test]
    fn abelian_group_has_no_triangles() {
        let g = group("perm:(1 2 3 4 5)");
        assert!(enumerate_triangles(&g).is_empty());
        let c = Complex::build(&g).unwrap();
        assert!(c.is_empty());
        assert_eq!(c.component_count(), 0);
    }

    #[test]
    fn s3_triangle_count_matches_centralizer_sum() {
        let g = group("S3");
        let brute: usize = (0..6).map(|x| g.centralizer(x).len()).sum();
        assert_eq!(brute, 18);
        assert_eq!(enumerate_triangles(&g).len(), 36 - brute);
        assert_eq!(commuting_pair_count(&g), brute);
    }

    #[test]
    fn s3_spoke_walk_around_face() {
        let g = group("S3");
        let a = g.parse_element("(1 2)").unwrap();
        let b = g.parse_element("(2 3)").unwrap();
        let c = g.parse_element("(1 3)").unwrap();
        let t = Triangle::new(a, b);
        assert_eq!(g.name(t.corner(&g)), "(1 3 2)");
        let t1 = adjacent(&g, t, Side::SpokeY);
        assert_eq!(t1, Triangle::new(b, c));
        let t2 = adjacent(&g, t1, Side::SpokeY);
        assert_eq!(t2, Triangle::new(c, a));
        assert_eq!(adjacent(&g, t2, Side::SpokeY), t);
    }

    #[test]
    fn adjacency_is_involutive() {
        let g = group("S4");
        for t in enumerate_triangles(&g) {
            assert_eq!(adjacent(&g, adjacent(&g, t, Side::Rim), Side::Rim), t);
            assert_eq!(adjacent(&g, adjacent(&g, t, Side::SpokeY), Side::SpokeX), t);
            assert_eq!(adjacent(&g, adjacent(&g, t, Side::SpokeX), Side::SpokeY), t);
            for side in [Side::Rim, Side::SpokeX, Side::SpokeY] {
                let u = adjacent(&g, t, side);
                assert!(!g.commutes(u.x, u.y));
                assert_ne!(u, t);
            }
        }
    }

    #[test]
    fn dihedral_face_around_rotation_has_n_triangles() {
        let g = group("D8");
        let tau = g.parse_element("(1 2 3 4)").unwrap();
        let sigma = g.parse_element("(1 4)(2 3)").unwrap();
        // sigma · y = tau  =>  y = sigma⁻¹ tau
        let start = Triangle::new(sigma, g.mul(g.inv(sigma), tau));
        assert_eq!(start.corner(&g), tau);
        let mut t = face_step(&g, start);
        let mut len = 1;
        while t != start {
            assert_eq!(t.corner(&g), tau);
            t = face_step(&g, t);
            len += 1;
        }
        assert_eq!(len, 4);
    }

    #[test]
    fn s3_components() {
        let g = group("S3");
        let c = Complex::build(&g).unwrap();
        assert_eq!(c.component_count(), 2);
        let mut sizes: Vec<usize> = c.components().map(|s| s.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![6, 12]);
        for k in 0..2 {
            assert!(c.orientation_check(k));
            let s = c.component(k);
            assert!(s.triangles.windows(2).all(|w| w[0] < w[1]));
        }
        assert!(c.component(0).reference_id() < c.component(1).reference_id());
    }

    #[test]
    fn components_partition_triangles() {
        let g = group("SL2(3)");
        let c = Complex::build(&g).unwrap();
        assert_eq!(c.triangle_count(), 24 * 24 - commuting_pair_count(&g));
        let mut seen = 0;
        for s in c.components() {
            for &id in s.triangles {
                let t = c.triangle(id);
                assert_eq!(c.component_of(t), Some(s.id));
                assert_eq!(s.triangles[c.local_index(t).unwrap()], id);
                for side in [Side::Rim, Side::SpokeX, Side::SpokeY] {
                    assert_eq!(c.component_of(adjacent(&g, t, side)), Some(s.id));
                }
            }
            seen += s.len();
        }
        assert_eq!(seen, c.triangle_count());
    }

    #[test]
    fn sparse_groups_are_refused() {
        let g = build_named_group(&"S4".parse().unwrap(), BuildOptions { table_cap: 5, ..Default::default() }).unwrap();
        assert!(matches!(Complex::build(&g), Err(AtlasError::CapExceeded { .. })));
    }
}
