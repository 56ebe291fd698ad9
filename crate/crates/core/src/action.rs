//! Symmetry of components under conjugation and under automorphisms.
//!
//! A map `φ` of the group acts on triangles by `φ·T(a, b) = T(φa, φb)` and
//! commutes with every adjacency move, so it permutes components. For a
//! component `S` with reference triangle `T(x, y)`, the maps sending `S` to
//! itself form the stabilizer `G_S`; those fixing `x` and `y` act trivially
//! on `S`, and the quotient `Q` acts freely on the triangles of `S`. Every
//! element of `Q` is therefore determined by the image of the reference
//! triangle.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{face_step, Complex, ComponentInvariants, ComponentStructure, Triangle};
use crate::error::{ensure, AtlasError, Result};
use crate::group::{Automorphism, GroupTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionKind {
    Conjugation,
    Automorphism,
}

/// A finite family of element maps acting on the group.
pub trait ElementAction: Sync {
    fn kind(&self) -> ActionKind;
    fn len(&self) -> usize;
    fn apply(&self, i: usize, a: u32) -> u32;
    /// Index of the conjugation map `a ↦ g a g⁻¹`, if present.
    fn inner_index(&self, g: u32) -> Option<usize>;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn apply_triangle(&self, i: usize, t: Triangle) -> Triangle {
        Triangle::new(self.apply(i, t.x), self.apply(i, t.y))
    }
}

/// Conjugation by every group element; map `i` is conjugation by element `i`.
pub struct Conjugation<'g>(pub &'g GroupTable);

impl ElementAction for Conjugation<'_> {
    fn kind(&self) -> ActionKind {
        ActionKind::Conjugation
    }

    fn len(&self) -> usize {
        self.0.order()
    }

    fn apply(&self, i: usize, a: u32) -> u32 {
        self.0.conj(i as u32, a)
    }

    fn inner_index(&self, g: u32) -> Option<usize> {
        Some(g as usize)
    }
}

/// A full automorphism group, sorted as returned by
/// [`automorphism_group`](crate::group::automorphism_group).
pub struct AutomorphismAction<'a> {
    group: &'a GroupTable,
    auts: &'a [Automorphism],
}

impl<'a> AutomorphismAction<'a> {
    pub fn new(group: &'a GroupTable, auts: &'a [Automorphism]) -> Result<Self> {
        ensure!(auts.windows(2).all(|w| w[0] < w[1]), "automorphisms must be sorted and distinct");
        Ok(AutomorphismAction { group, auts })
    }
}

impl ElementAction for AutomorphismAction<'_> {
    fn kind(&self) -> ActionKind {
        ActionKind::Automorphism
    }

    fn len(&self) -> usize {
        self.auts.len()
    }

    fn apply(&self, i: usize, a: u32) -> u32 {
        self.auts[i].apply(a)
    }

    fn inner_index(&self, g: u32) -> Option<usize> {
        self.auts.binary_search(&Automorphism::inner(self.group, g)).ok()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HurwitzCheck {
    /// `84(g − 1)`.
    pub bound: u64,
    pub ok: bool,
    pub equality: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ActionReport {
    pub component: usize,
    pub kind: ActionKind,
    pub symbol: String,
    pub invariants: ComponentInvariants,
    /// `|G_S|`.
    pub stabilizer_order: u64,
    /// Maps fixing `x` and `y`.
    pub kernel_order: u64,
    pub q_order: u64,
    /// Orbits of type-1 vertices under `Q`.
    pub vertex_orbits: u8,
    pub edge_flip: bool,
    pub q_x: u32,
    pub q_y: u32,
    pub q_e: u32,
    pub q_f: u32,
    /// Ramification indices over the three branch points of `S/Q`.
    pub branch: [u32; 3],
    pub quotient_genus: i64,
    pub hurwitz: Option<HurwitzCheck>,
    pub two_generated: bool,
    /// Size of the orbit of `S` among all components.
    pub orbit_size: usize,
}

/// Solves `2 − 2g = |Q|(2 − 2ḡ) − Σ (|Q| − |Q|/e)` for `ḡ`.
pub fn riemann_hurwitz(genus: u32, q_order: u64, branch: &[u32]) -> Result<i64> {
    ensure!(q_order > 0, "empty group");
    ensure!(branch.iter().all(|&e| e > 0 && q_order.is_multiple_of(e as u64)), "branch indices {branch:?} do not divide |Q| = {q_order}");
    let q = Ratio::from_integer(q_order as i64);
    let correction: Ratio<i64> = branch.iter().map(|&e| q - q / Ratio::from_integer(e as i64)).sum();
    let chi = Ratio::from_integer(2 - 2 * genus as i64);
    // 2 − 2ḡ = (χ + correction) / |Q|
    let two_minus = (chi + correction) / q;
    let g_bar = (Ratio::from_integer(2) - two_minus) / Ratio::from_integer(2);
    ensure!(
        g_bar.is_integer(),
        "quotient genus {g_bar} is not integral (g {genus}, |Q| {q_order}, branch {branch:?})"
    );
    Ok(g_bar.to_integer())
}

/// `84(g − 1)` check for `g ≥ 2`.
pub fn hurwitz_check(genus: u32, q_order: u64) -> Option<HurwitzCheck> {
    (genus >= 2).then(|| {
        let bound = 84 * (genus as u64 - 1);
        HurwitzCheck {
            bound,
            ok: q_order <= bound,
            equality: q_order == bound,
        }
    })
}

/// For simple `G` with `k` components of the same type as `S` and
/// `k! < |G|`, the symmetry group of `S` is all of `G`. `None` when the
/// hypothesis fails.
pub fn simple_group_shortcut(group: &GroupTable, k: usize) -> Option<u64> {
    if !group.is_simple() {
        return None;
    }
    let order = group.order() as u64;
    let mut factorial: u64 = 1;
    for i in 2..=k as u64 {
        factorial = factorial.saturating_mul(i);
        if factorial >= order {
            return None;
        }
    }
    Some(order)
}

pub fn conjugation_report(complex: &Complex<'_>, k: usize) -> Result<ActionReport> {
    let structure = complex.structure(k)?;
    let inv = ComponentInvariants::from_structure(complex, k, &structure)?;
    action_report(complex, &Conjugation(complex.group()), k, &structure, &inv)
}

pub fn automorphism_report(complex: &Complex<'_>, auts: &[Automorphism], k: usize) -> Result<ActionReport> {
    let action = AutomorphismAction::new(complex.group(), auts)?;
    let structure = complex.structure(k)?;
    let inv = ComponentInvariants::from_structure(complex, k, &structure)?;
    action_report(complex, &action, k, &structure, &inv)
}

/// Reports for every component, in parallel, ordered by component id.
pub fn all_reports(complex: &Complex<'_>, action: &dyn ElementAction) -> Result<Vec<ActionReport>> {
    let invariants = complex.all_invariants()?;
    (0..complex.component_count())
        .into_par_iter()
        .map(|k| {
            let structure = complex.structure(k)?;
            let report = action_report(complex, action, k, &structure, &invariants[k])?;
            check_orbit_invariants(complex, action, k, &invariants)?;
            Ok(report)
        })
        .collect()
}

/// Every component in the orbit of `k` has the same invariants.
fn check_orbit_invariants(
    complex: &Complex<'_>,
    action: &dyn ElementAction,
    k: usize,
    invariants: &[ComponentInvariants],
) -> Result<()> {
    let reference = complex.reference(k);
    for i in 0..action.len() {
        let c = complex
            .component_of(action.apply_triangle(i, reference))
            .ok_or_else(|| AtlasError::Violation("map sends a triangle to a commuting pair".into()))?;
        ensure!(
            invariants[c].type_key() == invariants[k].type_key(),
            "component {k} {} is mapped to component {c} {}",
            invariants[k].symbol(),
            invariants[c].symbol()
        );
    }
    Ok(())
}

fn action_report(
    complex: &Complex<'_>,
    action: &dyn ElementAction,
    k: usize,
    structure: &ComponentStructure,
    inv: &ComponentInvariants,
) -> Result<ActionReport> {
    let group = complex.group();
    let comp = complex.component(k);
    let len = comp.len();
    let reference = complex.reference(k);
    let local = |t: Triangle| complex.local_index(t).expect("triangle of component");
    let ctx = || format!("{:?} action on component {k} {}", action.kind(), inv.symbol());

    // Stabilizer, kernel, and one representative map per element of Q,
    // indexed by the local index of the image of the reference triangle.
    let mut stabilizer = 0u64;
    let mut kernel = 0u64;
    let mut rep_of_image = vec![usize::MAX; len];
    let mut orbit = HashSet::new();
    for i in 0..action.len() {
        let image = action.apply_triangle(i, reference);
        match complex.component_of(image) {
            None => return Err(AtlasError::Violation(format!("{}: map {i} sends the reference to a commuting pair", ctx()))),
            Some(c) if c == k => {
                stabilizer += 1;
                if image == reference {
                    kernel += 1;
                }
                let j = local(image);
                if rep_of_image[j] == usize::MAX {
                    rep_of_image[j] = i;
                }
            }
            Some(c) => {
                orbit.insert(c);
            }
        }
    }
    let reps: Vec<(usize, usize)> = rep_of_image.iter().enumerate().filter(|(_, &r)| r != usize::MAX).map(|(j, &r)| (j, r)).collect();
    let q_order = reps.len() as u64;
    ensure!(
        stabilizer == kernel * q_order,
        "{}: |G_S| = {stabilizer} is not |kernel| {kernel} times |Q| {q_order}",
        ctx()
    );

    // Faithfulness: distinct elements of Q induce distinct permutations.
    let mut perms = HashSet::with_capacity(reps.len());
    for &(_, i) in &reps {
        let perm: Vec<u32> = comp
            .triangles
            .iter()
            .map(|&id| local(action.apply_triangle(i, complex.triangle(id))) as u32)
            .collect();
        perms.insert(perm);
    }
    ensure!(perms.len() as u64 == q_order, "{}: Q does not act faithfully", ctx());

    let ref_local = local(reference);
    let rim_local = local(Triangle::new(reference.y, reference.x));
    let v_x = structure.vertex_of[ref_local];
    let v_y = structure.vertex_of[rim_local];
    let face = structure.face_of[ref_local];
    let edge_flip = rep_of_image[rim_local] != usize::MAX;

    let mut q_x = 0;
    let mut q_y = 0;
    let mut q_f = 0;
    let mut orbit_x = HashSet::new();
    let mut orbit_y = HashSet::new();
    for &(j, _) in &reps {
        let image = complex.triangle(comp.triangles[j]);
        let first = structure.vertex_of[j];
        let second = structure.vertex_of[local(Triangle::new(image.y, image.x))];
        q_x += (first == v_x) as u32;
        q_y += (second == v_y) as u32;
        q_f += (structure.face_of[j] == face) as u32;
        orbit_x.insert(first);
        orbit_y.insert(second);
    }
    let q_e = 1 + edge_flip as u32;
    let vertex_orbits: u8 = if orbit_x == orbit_y { 1 } else { 2 };
    ensure!(
        vertex_orbits == 1 || orbit_x.is_disjoint(&orbit_y),
        "{}: vertex orbits of x and y overlap without coinciding",
        ctx()
    );
    ensure!(
        orbit_x.union(&orbit_y).count() == structure.valencies.len(),
        "{}: Q is not transitive on edges",
        ctx()
    );

    let val_x = structure.valencies[v_x as usize];
    let val_y = structure.valencies[v_y as usize];
    ensure!(q_x == val_x && q_y == val_y, "{}: |Q_x|, |Q_y| = {q_x}, {q_y} but valencies {val_x}, {val_y}", ctx());
    // The rotation about (x,1) is conjugation by x; its order in Q is the
    // length of its orbit through the reference triangle.
    for (g, expected) in [(reference.x, q_x), (reference.y, q_y)] {
        let i = action
            .inner_index(g)
            .ok_or_else(|| AtlasError::Violation(format!("{}: conjugation by {} missing", ctx(), group.name(g))))?;
        let mut t = action.apply_triangle(i, reference);
        let mut order = 1;
        while t != reference {
            t = action.apply_triangle(i, t);
            order += 1;
        }
        ensure!(order == expected, "{}: rotation by {} has order {order}, stabilizer has {expected}", ctx(), group.name(g));
    }
    let n = inv.face_size;
    let rotates_one_step = rep_of_image[local(face_step(group, reference))] != usize::MAX;
    let expected_f = if rotates_one_step { n } else { n / 2 };
    ensure!(
        q_f == expected_f && (q_f == n || 2 * q_f == n),
        "{}: |Q_F| = {q_f}, expected {expected_f} (n = {n})",
        ctx()
    );

    let edges = inv.edges as u64;
    if vertex_orbits == 2 {
        ensure!(!edge_flip && q_order == edges, "{}: two vertex orbits but |Q| = {q_order}, E = {edges}", ctx());
    } else {
        ensure!(edge_flip && q_order == 2 * edges, "{}: one vertex orbit but |Q| = {q_order}, 2E = {}", ctx(), 2 * edges);
    }
    if action.kind() == ActionKind::Conjugation {
        ensure!(
            vertex_orbits == inv.vertex_orbits,
            "{}: {vertex_orbits} vertex orbits, edge-flip criterion gives {}",
            ctx(),
            inv.vertex_orbits
        );
    }

    let branch = if vertex_orbits == 2 { [q_x, q_y, q_f] } else { [q_x, q_e, q_f] };
    let expected_branch = if vertex_orbits == 2 { [val_x, val_y, n / 2] } else { [val_x, 2, n] };
    ensure!(branch == expected_branch, "{}: branch data {branch:?}, expected {expected_branch:?}", ctx());
    let quotient_genus = riemann_hurwitz(inv.genus, q_order, &branch)?;
    ensure!(quotient_genus == 0, "{}: quotient genus {quotient_genus}", ctx());
    let hurwitz = hurwitz_check(inv.genus, q_order);
    ensure!(hurwitz.is_none_or(|h| h.ok), "{}: |Q| = {q_order} exceeds the Hurwitz bound", ctx());

    let two_generated = two_generated(complex, action, reference, &reps, q_order);
    ensure!(two_generated, "{}: no generating pair found", ctx());

    Ok(ActionReport {
        component: k,
        kind: action.kind(),
        symbol: inv.symbol(),
        invariants: *inv,
        stabilizer_order: stabilizer,
        kernel_order: kernel,
        q_order,
        vertex_orbits,
        edge_flip,
        q_x,
        q_y,
        q_e,
        q_f,
        branch,
        quotient_genus,
        hurwitz,
        two_generated,
        orbit_size: orbit.len() + 1,
    })
}

/// Size of the orbit of the reference triangle under the maps `a` and `b`;
/// since `Q` acts freely this is the order of the subgroup they generate.
fn generated_order(complex: &Complex<'_>, action: &dyn ElementAction, reference: Triangle, a: usize, b: usize) -> u64 {
    let mut seen = HashSet::new();
    seen.insert(reference);
    let mut stack = vec![reference];
    while let Some(t) = stack.pop() {
        for g in [a, b] {
            let u = action.apply_triangle(g, t);
            if seen.insert(u) {
                stack.push(u);
            }
        }
    }
    debug_assert!(seen.iter().all(|&t| complex.component_of(t).is_some()));
    seen.len() as u64
}

/// Tries the rotations about the reference vertices first, then pairs of
/// representatives.
fn two_generated(
    complex: &Complex<'_>,
    action: &dyn ElementAction,
    reference: Triangle,
    reps: &[(usize, usize)],
    q_order: u64,
) -> bool {
    let rx = action.inner_index(reference.x);
    let ry = action.inner_index(reference.y);
    if let (Some(a), Some(b)) = (rx, ry) {
        if generated_order(complex, action, reference, a, b) == q_order {
            return true;
        }
    }
    let firsts: Vec<usize> = rx.into_iter().chain(ry).chain(reps.iter().map(|&(_, i)| i)).collect();
    for &a in &firsts {
        for &(_, b) in reps {
            if generated_order(complex, action, reference, a, b) == q_order {
                return true;
            }
        }
    }
    false
}

/// One line of the per-type summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionSummaryRow {
    pub genus: u32,
    pub faces: u32,
    pub symbol: String,
    pub vertices: u32,
    pub edges: u32,
    pub count: usize,
    pub q_order: u64,
    pub vertex_orbits: u8,
    pub quotient_genus: i64,
    /// `84(g − 1) − |Q|` for `g ≥ 2`.
    pub hurwitz_margin: Option<i64>,
    pub hurwitz_equality: bool,
}

/// Groups reports by component type and symmetry data.
pub fn summarize(reports: &[ActionReport]) -> Vec<ActionSummaryRow> {
    let mut rows: BTreeMap<_, ActionSummaryRow> = BTreeMap::new();
    for r in reports {
        let i = &r.invariants;
        let key = (i.type_key(), r.q_order, r.vertex_orbits);
        rows.entry(key)
            .or_insert_with(|| ActionSummaryRow {
                genus: i.genus,
                faces: i.faces,
                symbol: r.symbol.clone(),
                vertices: i.vertices,
                edges: i.edges,
                count: 0,
                q_order: r.q_order,
                vertex_orbits: r.vertex_orbits,
                quotient_genus: r.quotient_genus,
                hurwitz_margin: r.hurwitz.map(|h| h.bound as i64 - r.q_order as i64),
                hurwitz_equality: r.hurwitz.is_some_and(|h| h.equality),
            })
            .count += 1;
    }
    rows.into_values().collect()
}

pub fn render_summary(label: &str, kind: ActionKind, rows: &[ActionSummaryRow]) -> String {
    let mut out = String::new();
    let q = "|Q|";
    let what = match kind {
        ActionKind::Conjugation => "conjugation action (|Q| is the inner symmetry group)",
        ActionKind::Automorphism => "automorphism action",
    };
    let _ = writeln!(out, "{label} {what}");
    let _ = writeln!(
        out,
        "{:>5} {:>6} {:<12} {:>6} {:>6} {:>6} {:>8} {:>7} {:>4} {:>10}",
        "genus", "faces", "symbol", "V", "E", "count", q, "orbits", "gbar", "hurwitz"
    );
    for r in rows {
        let margin = match (r.hurwitz_margin, r.hurwitz_equality) {
            (Some(_), true) => "equality".to_owned(),
            (Some(m), false) => m.to_string(),
            (None, _) => "-".to_owned(),
        };
        let _ = writeln!(
            out,
            "{:>5} {:>6} {:<12} {:>6} {:>6} {:>6} {:>8} {:>7} {:>4} {:>10}",
            r.genus, r.faces, r.symbol, r.vertices, r.edges, r.count, r.q_order, r.vertex_orbits, r.quotient_genus, margin
        );
    }
    out
}
