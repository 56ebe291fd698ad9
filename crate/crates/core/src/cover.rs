//! Lifting components along a group extension `1 → N → Γ → G → 1`.
//!
//! Projection `π: Γ → G` maps triangles of `Γ` to triangles of `G` (or to
//! commuting pairs) and commutes with every adjacency move, so each
//! component of `Γ` either lies over a single component of `G` or over no
//! component at all. For a base component `S` with reference triangle
//! `T(x, y)` the `|N|²` lifted pairs `T(x̂n₁, ŷn₂)` are distributed over the
//! components lying over `S`; the count landing in a lift is its
//! multiplicity `m`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{face_step, Complex, ComponentInvariants, ComponentStructure, Triangle};
use crate::error::{ensure, AtlasError, Result};
use crate::group::{GroupTable, Homomorphism};

#[derive(Clone, Copy, Debug, Default)]
pub struct CoverOptions {
    /// Pick lift representatives at random from each coset (seeded) instead
    /// of taking the least-index member.
    pub lift_seed: Option<u64>,
}

/// Branching indices over the face center, the x-vertex and the y-vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Ramification {
    pub ell: u32,
    pub ell_x: u32,
    pub ell_y: u32,
}

impl std::fmt::Display for Ramification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.ell, self.ell_x, self.ell_y)
    }
}

/// Central element reached by walking once around a base face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Monodromy {
    pub element: u32,
    pub name: String,
    pub order: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftRecord {
    /// Component id in the complex of `Γ`.
    pub component: usize,
    pub symbol: String,
    pub invariants: ComponentInvariants,
    pub m: u32,
    pub ramification: Ramification,
    /// Faces of the lift over each base face, `m/ℓ`.
    pub faces_per_base_face: u32,
    pub monodromy: Option<Monodromy>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BaseRecord {
    pub component: usize,
    /// Names of `x` and `y` in the reference triangle.
    pub reference: [String; 2],
    /// Names of the chosen lifts `x̂`, `ŷ`.
    pub lifted_reference: [String; 2],
    pub symbol: String,
    pub invariants: ComponentInvariants,
    /// Lifts ordered by component id.
    pub lifts: Vec<LiftRecord>,
    /// Central extensions over a vertex-transitive base: number of groupings
    /// recovered by clustering lifts with equal data.
    pub groupings: Option<u32>,
}

impl BaseRecord {
    pub fn multiplicity_sum(&self) -> u64 {
        self.lifts.iter().map(|l| l.m as u64).sum()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub group: String,
    pub order: usize,
    pub base_group: String,
    pub base_order: usize,
    pub kernel: Vec<String>,
    pub central: bool,
    pub kernel_exponent: u32,
    pub total_components: usize,
    pub bases: Vec<BaseRecord>,
    /// Components of `Γ` whose pairs project to commuting pairs.
    pub unbased: Vec<usize>,
}

/// Diagram line order: larger m first, then ramification, symbol, faces, genus.
type DiagramKey = (std::cmp::Reverse<u32>, Ramification, String, u32, u32);

/// Analyzes the extension of `gamma` by the normal subgroup `kernel`.
pub fn analyze_cover(gamma: &GroupTable, kernel: &[u32], opts: CoverOptions) -> Result<CoverReport> {
    Analysis::run(gamma, kernel, false, opts)
}

/// As [`analyze_cover`], for a central subgroup, with the additional checks
/// on lift groupings, ramification dividing the exponent, and monodromy.
pub fn analyze_central_cover(gamma: &GroupTable, center: &[u32], opts: CoverOptions) -> Result<CoverReport> {
    if !gamma.is_subgroup(center) {
        return Err(AtlasError::NotSubgroup);
    }
    if !center.iter().all(|&c| (0..gamma.order() as u32).all(|g| gamma.commutes(c, g))) {
        return Err(AtlasError::NotCentral);
    }
    Analysis::run(gamma, center, true, opts)
}

/// Walks `steps` face rotations from `t` and returns the central `c` with
/// landing triangle `T(xc, yc⁻¹)`.
pub fn monodromy(gamma: &GroupTable, center: &[u32], t: Triangle, steps: usize) -> Result<Monodromy> {
    let mut u = t;
    for _ in 0..steps {
        u = face_step(gamma, u);
    }
    let c = gamma.mul(gamma.inv(t.x), u.x);
    ensure!(
        center.contains(&c),
        "monodromy from T({}, {}) after {steps} steps lands at T({}, {}); {} is not central",
        gamma.name(t.x),
        gamma.name(t.y),
        gamma.name(u.x),
        gamma.name(u.y),
        gamma.name(c)
    );
    ensure!(
        u.y == gamma.mul(t.y, gamma.inv(c)),
        "monodromy landing T({}, {}) is not of the form T(xc, yc⁻¹)",
        gamma.name(u.x),
        gamma.name(u.y)
    );
    Ok(Monodromy {
        element: c,
        name: gamma.name(c).to_owned(),
        order: gamma.element_order(c),
    })
}

struct Side<'a> {
    complex: Complex<'a>,
    structures: Vec<ComponentStructure>,
    invariants: Vec<ComponentInvariants>,
}

impl<'a> Side<'a> {
    fn new(group: &'a GroupTable) -> Result<Self> {
        let complex = Complex::build(group)?;
        let structures = (0..complex.component_count())
            .into_par_iter()
            .map(|k| complex.structure(k))
            .collect::<Result<Vec<_>>>()?;
        let invariants = structures
            .par_iter()
            .enumerate()
            .map(|(k, s)| ComponentInvariants::from_structure(&complex, k, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Side {
            complex,
            structures,
            invariants,
        })
    }

    fn valency_first(&self, t: Triangle) -> u32 {
        let k = self.complex.component_of(t).expect("triangle");
        let s = &self.structures[k];
        s.valencies[s.vertex_of[self.complex.local_index(t).unwrap()] as usize]
    }

    fn valency_second(&self, t: Triangle) -> u32 {
        self.valency_first(Triangle::new(t.y, t.x))
    }
}

struct Analysis<'a> {
    gamma: &'a GroupTable,
    base: &'a GroupTable,
    pi: &'a Homomorphism,
    kernel: &'a [u32],
    central: bool,
    exponent: u32,
    top: Side<'a>,
    bottom: Side<'a>,
}

impl<'a> Analysis<'a> {
    fn run(gamma: &GroupTable, kernel: &[u32], central: bool, opts: CoverOptions) -> Result<CoverReport> {
        let mut kernel = kernel.to_vec();
        kernel.sort_unstable();
        kernel.dedup();
        let (base, pi) = gamma.quotient(&kernel)?;
        pi.verify(gamma, &base)?;
        ensure!(pi.kernel() == kernel, "projection kernel differs from the given subgroup");
        let analysis = Analysis {
            gamma,
            base: &base,
            pi: &pi,
            kernel: &kernel,
            central,
            exponent: gamma.exponent(&kernel),
            top: Side::new(gamma)?,
            bottom: Side::new(&base)?,
        };
        analysis.report(opts)
    }

    fn report(&self, opts: CoverOptions) -> Result<CoverReport> {
        let reps = self.pi.least_preimages(self.base.order());
        let bases = (0..self.bottom.complex.component_count())
            .into_par_iter()
            .map(|k| {
                let s = self.base_reference(k);
                let (mut xh, mut yh) = (reps[s.x as usize].unwrap(), reps[s.y as usize].unwrap());
                if let Some(seed) = opts.lift_seed {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                    xh = self.gamma.mul(xh, self.kernel[rng.gen_range(0..self.kernel.len())]);
                    yh = self.gamma.mul(yh, self.kernel[rng.gen_range(0..self.kernel.len())]);
                }
                self.analyze_base(k, xh, yh)
            })
            .collect::<Result<Vec<_>>>()?;
        let unbased = self.check_partition(&bases)?;
        Ok(CoverReport {
            group: self.gamma.label().to_owned(),
            order: self.gamma.order(),
            base_group: self.base.label().to_owned(),
            base_order: self.base.order(),
            kernel: self.kernel.iter().map(|&n| self.gamma.name(n).to_owned()).collect(),
            central: self.central,
            kernel_exponent: self.exponent,
            total_components: self.top.complex.component_count(),
            bases,
            unbased,
        })
    }

    fn project(&self, t: Triangle) -> Triangle {
        Triangle::new(self.pi.apply(t.x), self.pi.apply(t.y))
    }

    /// The least-id triangle of the base component, replaced by its rim
    /// neighbour when the base has two vertex orbits and the second corner
    /// has the larger valency, so the x-vertex is the more valent one.
    fn base_reference(&self, k: usize) -> Triangle {
        let s = self.bottom.complex.reference(k);
        let inv = &self.bottom.invariants[k];
        if inv.vertex_orbits == 2 && inv.valency_x < inv.valency_y {
            Triangle::new(s.y, s.x)
        } else {
            s
        }
    }

    fn analyze_base(&self, k: usize, xh: u32, yh: u32) -> Result<BaseRecord> {
        let (gamma, base) = (self.gamma, self.base);
        let s = self.base_reference(k);
        let inv_s = self.bottom.invariants[k];
        let (lam_x, lam_y) = (self.bottom.valency_first(s), self.bottom.valency_second(s));
        ensure!(
            self.project(Triangle::new(xh, yh)) == s,
            "lifts {}, {} do not project to the reference pair",
            gamma.name(xh),
            gamma.name(yh)
        );

        // lift component -> (m, first lifted triangle, ramification)
        let mut lifts: BTreeMap<usize, (u32, Triangle, Ramification)> = BTreeMap::new();
        for &n1 in self.kernel {
            for &n2 in self.kernel {
                let t = Triangle::new(gamma.mul(xh, n1), gamma.mul(yh, n2));
                let c = self.top.complex.component_of(t).ok_or_else(|| {
                    AtlasError::Violation(format!(
                        "lifted pair ({}, {}) commutes although its image ({}, {}) does not",
                        gamma.name(t.x),
                        gamma.name(t.y),
                        base.name(s.x),
                        base.name(s.y)
                    ))
                })?;
                let inv_t = &self.top.invariants[c];
                let (vx, vy) = (self.top.valency_first(t), self.top.valency_second(t));
                ensure!(
                    inv_t.face_size.is_multiple_of(inv_s.face_size) && vx % lam_x == 0 && vy % lam_y == 0,
                    "base {k}: lift {c} has (n, λx, λy) = ({}, {vx}, {vy}) not a multiple of ({}, {lam_x}, {lam_y})",
                    inv_t.face_size,
                    inv_s.face_size
                );
                let mut r = Ramification {
                    ell: inv_t.face_size / inv_s.face_size,
                    ell_x: vx / lam_x,
                    ell_y: vy / lam_y,
                };
                // Over a vertex-transitive base the two corners of a lifted
                // edge are interchangeable; different lifted edges of one
                // lift may see them in either order.
                if inv_s.vertex_orbits == 1 && r.ell_x > r.ell_y {
                    std::mem::swap(&mut r.ell_x, &mut r.ell_y);
                }
                let entry = lifts.entry(c).or_insert((0, t, r));
                entry.0 += 1;
                ensure!(
                    entry.2 == r,
                    "base {k}: lift {c} has ramification {} at one lifted edge and {r} at another",
                    entry.2
                );
            }
        }

        let classes = self.vertex_classes(k, s)?;
        let mut records = Vec::with_capacity(lifts.len());
        for (&c, &(m, t, r)) in &lifts {
            let inv_t = self.top.invariants[c];
            let ctx = || format!("base {k} {} -> lift {c} {} {r} m={m}", inv_s.symbol(), inv_t.symbol());
            ensure!(m % r.ell == 0 && m % r.ell_x == 0 && m % r.ell_y == 0, "{}: ramification does not divide m", ctx());
            let mut law = vec![lam_x * r.ell_x, lam_y * r.ell_y];
            law.sort_unstable();
            law.dedup();
            let mut valencies = vec![inv_t.lambda1, inv_t.lambda2];
            valencies.dedup();
            ensure!(
                inv_t.face_size == inv_s.face_size * r.ell && law == valencies,
                "{}: lifting law gives n {} and valencies {law:?}",
                ctx(),
                inv_s.face_size * r.ell
            );
            ensure!(inv_t.edges == m * inv_s.edges, "{}: E' = {} != mE = {}", ctx(), inv_t.edges, m * inv_s.edges);
            ensure!(
                inv_t.faces * r.ell == m * inv_s.faces,
                "{}: F' = {} != (m/ℓ)F = {}",
                ctx(),
                inv_t.faces,
                m / r.ell * inv_s.faces
            );
            self.check_vertex_relations(k, c, m, r, &classes).map_err(|e| AtlasError::Violation(format!("{}: {e}", ctx())))?;
            let monodromy = if self.central {
                ensure!(
                    self.exponent.is_multiple_of(r.ell) && self.exponent.is_multiple_of(r.ell_x) && self.exponent.is_multiple_of(r.ell_y),
                    "{}: ramification does not divide exp(C) = {}",
                    ctx(),
                    self.exponent
                );
                let mono = monodromy(gamma, self.kernel, t, inv_s.face_size as usize)?;
                ensure!(mono.order == r.ell, "{}: monodromy {} has order {} != ℓ", ctx(), mono.name, mono.order);
                Some(mono)
            } else {
                None
            };
            records.push(LiftRecord {
                component: c,
                symbol: inv_t.symbol(),
                invariants: inv_t,
                m,
                ramification: r,
                faces_per_base_face: m / r.ell,
                monodromy,
            });
        }
        let total: u64 = records.iter().map(|l| l.m as u64).sum();
        let n = self.kernel.len() as u64;
        ensure!(total == n * n, "base {k}: Σm = {total} != |N|² = {}", n * n);

        let groupings = if self.central { self.check_central_groupings(k, &records)? } else { None };
        Ok(BaseRecord {
            component: k,
            reference: [base.name(s.x).to_owned(), base.name(s.y).to_owned()],
            lifted_reference: [gamma.name(xh).to_owned(), gamma.name(yh).to_owned()],
            symbol: inv_s.symbol(),
            invariants: inv_s,
            lifts: records,
            groupings,
        })
    }

    /// Class of each base vertex: 0 for all vertices when the base is
    /// vertex-transitive; otherwise the rim graph is 2-colored starting from
    /// the x-vertex of `s`.
    fn vertex_classes(&self, k: usize, s: Triangle) -> Result<Vec<u8>> {
        let complex = &self.bottom.complex;
        let st = &self.bottom.structures[k];
        let count = st.valencies.len();
        if self.bottom.invariants[k].vertex_orbits == 1 {
            return Ok(vec![0; count]);
        }
        let mut neighbours = vec![Vec::new(); count];
        for i in 0..complex.component(k).len() {
            let (a, b) = (st.vertex_of[i], st.second_vertex(complex, k, i));
            neighbours[a as usize].push(b);
        }
        let mut color = vec![u8::MAX; count];
        let start = st.vertex_of[complex.local_index(s).unwrap()];
        color[start as usize] = 0;
        let mut queue = vec![start];
        while let Some(v) = queue.pop() {
            for &w in &neighbours[v as usize] {
                match color[w as usize] {
                    u8::MAX => {
                        color[w as usize] = 1 - color[v as usize];
                        queue.push(w);
                    }
                    cw => ensure!(cw != color[v as usize], "base {k}: rim graph is not bipartite"),
                }
            }
        }
        ensure!(color.iter().all(|&c| c != u8::MAX), "base {k}: rim graph is disconnected");
        Ok(color)
    }

    /// Over each class of base vertices, `Σ val'(w)/val(πw) = m·V_class`.
    /// With two classes the indices are constant on each class, giving
    /// `V'_x = (m/ℓx)V_x` and `V'_y = (m/ℓy)V_y`; over a vertex-transitive
    /// base `V' = (m/ℓx)V` when `ℓx = ℓy`.
    fn check_vertex_relations(&self, k: usize, c: usize, m: u32, r: Ramification, classes: &[u8]) -> Result<()> {
        let (bottom, top) = (&self.bottom, &self.top);
        let st_s = &bottom.structures[k];
        let st_t = &top.structures[c];
        let comp = top.complex.component(c);
        let mut seen = vec![false; st_t.valencies.len()];
        let mut ratio_sum = [0u64; 2];
        let mut lifted = [0u64; 2];
        let mut index_range = [(u32::MAX, 0u32); 2];
        for (i, &id) in comp.triangles.iter().enumerate() {
            let w = st_t.vertex_of[i] as usize;
            if seen[w] {
                continue;
            }
            seen[w] = true;
            let p = self.project(top.complex.triangle(id));
            ensure!(bottom.complex.component_of(p) == Some(k), "triangle projects outside the base component");
            let v = st_s.vertex_of[bottom.complex.local_index(p).unwrap()] as usize;
            let (val_t, val_s) = (st_t.valencies[w], st_s.valencies[v]);
            ensure!(val_t % val_s == 0, "vertex valency {val_t} over base valency {val_s}");
            let class = classes[v] as usize;
            let idx = val_t / val_s;
            ratio_sum[class] += idx as u64;
            lifted[class] += 1;
            index_range[class] = (index_range[class].0.min(idx), index_range[class].1.max(idx));
        }
        let mut base_count = [0u64; 2];
        for &cl in classes {
            base_count[cl as usize] += 1;
        }
        for cl in 0..2 {
            ensure!(
                ratio_sum[cl] == m as u64 * base_count[cl],
                "vertex class {cl}: Σ indices {} != m·V = {}",
                ratio_sum[cl],
                m as u64 * base_count[cl]
            );
        }
        if self.bottom.invariants[k].vertex_orbits == 2 {
            for (cl, ell) in [(0, r.ell_x), (1, r.ell_y)] {
                ensure!(
                    index_range[cl] == (ell, ell),
                    "vertex class {cl}: indices range over {:?}, expected constant {ell}",
                    index_range[cl]
                );
                ensure!(
                    lifted[cl] * ell as u64 == m as u64 * base_count[cl],
                    "V' = {} != (m/ℓ)V = {}",
                    lifted[cl],
                    m as u64 / ell as u64 * base_count[cl]
                );
            }
        } else if r.ell_x == r.ell_y {
            ensure!(
                lifted[0] * r.ell_x as u64 == m as u64 * base_count[0],
                "V' = {} != (m/ℓx)V = {}",
                lifted[0],
                m as u64 / r.ell_x as u64 * base_count[0]
            );
        }
        Ok(())
    }

    fn check_central_groupings(&self, k: usize, lifts: &[LiftRecord]) -> Result<Option<u32>> {
        let order = self.kernel.len() as u32;
        let key = |l: &LiftRecord| (l.invariants.type_key(), l.ramification, l.m);
        if self.bottom.invariants[k].vertex_orbits == 2 {
            let first = key(&lifts[0]);
            ensure!(
                lifts.iter().all(|l| key(l) == first),
                "base {k}: lifts over a base with two vertex orbits differ in type"
            );
            ensure!(
                lifts[0].m * lifts.len() as u32 == order * order,
                "base {k}: m·k = {} != |C|² = {}",
                lifts[0].m * lifts.len() as u32,
                order * order
            );
            return Ok(None);
        }
        let mut clusters: BTreeMap<_, u32> = BTreeMap::new();
        for l in lifts {
            *clusters.entry(key(l)).or_default() += 1;
        }
        let mut groupings = 0;
        for ((_, r, m), count) in clusters {
            ensure!(
                (m * count) % order == 0,
                "base {k}: cluster {r} m={m} ×{count} is not a union of groupings with m·k = |C| = {order}"
            );
            groupings += m * count / order;
        }
        ensure!(groupings == order, "base {k}: {groupings} groupings != |C| = {order}");
        Ok(Some(groupings))
    }

    /// Every component of `Γ` lies over exactly one base component (and is
    /// listed there) or projects to commuting pairs.
    fn check_partition(&self, bases: &[BaseRecord]) -> Result<Vec<usize>> {
        let total = self.top.complex.component_count();
        let mut owner = vec![usize::MAX; total];
        for b in bases {
            for l in &b.lifts {
                ensure!(
                    owner[l.component] == usize::MAX,
                    "component {} lifts both base {} and base {}",
                    l.component,
                    owner[l.component],
                    b.component
                );
                owner[l.component] = b.component;
            }
        }
        let mut unbased = Vec::new();
        for (c, &o) in owner.iter().enumerate() {
            let p = self.project(self.top.complex.reference(c));
            match self.bottom.complex.component_of(p) {
                None => unbased.push(c),
                Some(k) => ensure!(o == k, "component {c} lies over base {k} but is not among its lifts"),
            }
        }
        Ok(unbased)
    }
}

impl CoverReport {
    /// Arrow diagram: lifts on the left, grouped by identical data, base on
    /// the right.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "cover {} (order {}) -> {} (order {}), kernel of order {}{}",
            self.group,
            self.order,
            self.base_group,
            self.base_order,
            self.kernel.len(),
            if self.central { format!(", central, exponent {}", self.kernel_exponent) } else { String::new() }
        );
        for b in &self.bases {
            let inv = &b.invariants;
            let _ = writeln!(out);
            let _ = writeln!(
                out,
                "base #{} T({}, {}) {} F={} V={} E={} g={}",
                b.component, b.reference[0], b.reference[1], b.symbol, inv.faces, inv.vertices, inv.edges, inv.genus
            );
            let mut groups: BTreeMap<DiagramKey, (u32, Option<String>)> = BTreeMap::new();
            for l in &b.lifts {
                let key = (std::cmp::Reverse(l.m), l.ramification, l.symbol.clone(), l.invariants.faces, l.invariants.genus);
                let e = groups.entry(key).or_insert((0, l.monodromy.as_ref().map(|m| m.name.clone())));
                e.0 += 1;
            }
            let lines: Vec<String> = groups
                .iter()
                .map(|((m, r, symbol, faces, genus), (count, _))| {
                    let times = if *count > 1 { format!(" x{count}") } else { String::new() };
                    format!("{symbol} F={faces} g={genus}{times}  --{r} m={}-->", m.0)
                })
                .collect();
            let width = lines.iter().map(|l| l.chars().count()).max().unwrap_or(0);
            for (i, line) in lines.iter().enumerate() {
                let pad = width - line.chars().count();
                if i == 0 {
                    let _ = writeln!(out, "  {line}{}  {} F={}", " ".repeat(pad), b.symbol, inv.faces);
                } else {
                    let _ = writeln!(out, "  {line}");
                }
            }
            let _ = writeln!(out, "  sum m = {} = |N|^2", b.multiplicity_sum());
            if let Some(g) = b.groupings {
                let _ = writeln!(out, "  groupings = {g}");
            }
            let monos: Vec<String> = b
                .lifts
                .iter()
                .filter_map(|l| l.monodromy.as_ref().filter(|m| m.order > 1).map(|m| format!("#{} {} (order {})", l.component, m.name, m.order)))
                .collect();
            if !monos.is_empty() {
                let _ = writeln!(out, "  monodromy: {}", monos.join(", "));
            }
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{} components over {} base components, {} over commuting pairs",
            self.total_components,
            self.bases.len(),
            self.unbased.len()
        );
        out
    }

    /// Per base component, the sorted multiset of `(m, ℓ, ℓx, ℓy)`.
    pub fn lift_data(&self) -> Vec<Vec<(u32, Ramification)>> {
        self.bases
            .iter()
            .map(|b| {
                let mut v: Vec<_> = b.lifts.iter().map(|l| (l.m, l.ramification)).collect();
                v.sort();
                v
            })
            .collect()
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
    fn trivial_extension_is_one_to_one() {
        let g = group("S4");
        let report = analyze_cover(&g, &[0], CoverOptions::default()).unwrap();
        assert_eq!(report.bases.len(), report.total_components);
        for b in &report.bases {
            assert_eq!(b.lifts.len(), 1);
            let l = &b.lifts[0];
            assert_eq!((l.m, l.ramification), (1, Ramification { ell: 1, ell_x: 1, ell_y: 1 }));
            assert_eq!(l.invariants.type_key(), b.invariants.type_key());
        }
        assert!(report.unbased.is_empty());
    }

    #[test]
    fn non_normal_kernel_is_rejected() {
        let g = group("S4");
        let t = g.parse_element("(1 2)").unwrap();
        assert!(matches!(analyze_cover(&g, &[0, t], CoverOptions::default()), Err(AtlasError::NotNormal)));
        assert!(matches!(analyze_central_cover(&g, &[0, t], CoverOptions::default()), Err(AtlasError::NotCentral)));
    }

    #[test]
    fn heisenberg_monodromy_generates_center() {
        let g = group("ES(3)");
        let center = g.center();
        assert_eq!(center.len(), 3);
        let x = g.parse_element("[[1,1,0],[0,1,0],[0,0,1]]").unwrap();
        let y = g.parse_element("[[1,0,0],[0,1,1],[0,0,1]]").unwrap();
        // The abelian quotient has no faces; a base face of size 2 corresponds
        // to the commuting images of x and y.
        let mono = monodromy(&g, &center, Triangle::new(x, y), 2).unwrap();
        assert_eq!(mono.order, 3);
        assert_eq!(g.subgroup_closure(&[mono.element]), center);
    }
}
