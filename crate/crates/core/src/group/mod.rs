//! Finite group arithmetic over dense element indices.
//!
//! A [`GroupTable`] numbers its elements `0..order` with the identity at 0.
//! Up to `table_cap` elements the full Cayley table is stored (2-byte
//! entries); above it, products are computed from the concrete element
//! representation and looked up by hashing.

mod aut;
pub mod element;
mod family;

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{ensure, AtlasError, Result};
use element::{Code, Kind};

pub use aut::{automorphism_group, greedy_generating_sequence};
pub use family::{build_named_group, GroupFamily};

pub const DEFAULT_TABLE_CAP: usize = 10_000;
pub const DEFAULT_ELEMENT_CAP: usize = 50_000;
pub const DEFAULT_AUT_CAP: usize = 1_000;
/// Orders up to this bound get exhaustive axiom checks; larger ones are sampled.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 1_000;

/// Dense tables store 2-byte indices.
const MAX_DENSE: usize = u16::MAX as usize + 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    /// Largest order for which the full multiplication table is stored.
    pub table_cap: usize,
    /// Largest order the breadth-first closure may reach.
    pub element_cap: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            table_cap: DEFAULT_TABLE_CAP,
            element_cap: DEFAULT_ELEMENT_CAP,
        }
    }
}

impl BuildOptions {
    /// Defaults, with `ATLAS_TABLE_CAP` overriding the table cap when set.
    pub fn from_env() -> Result<Self> {
        let mut opts = BuildOptions::default();
        if let Ok(v) = std::env::var("ATLAS_TABLE_CAP") {
            opts.table_cap = v
                .trim()
                .parse()
                .map_err(|_| AtlasError::Parse(format!("ATLAS_TABLE_CAP=`{v}` is not a number")))?;
        }
        Ok(opts)
    }
}

#[derive(Clone, Debug)]
enum Backing {
    Elements {
        kind: Kind,
        codes: Vec<Code>,
        lookup: HashMap<Code, u32>,
    },
    /// Only the table is known (quotients).
    Abstract,
}

/// A finite group with indexed elements; identity is index 0.
#[derive(Clone, Debug)]
pub struct GroupTable {
    label: String,
    order: usize,
    table: Option<Vec<u16>>,
    inv: Vec<u32>,
    names: Vec<String>,
    backing: Backing,
}

impl GroupTable {
    /// Breadth-first closure of `gens`: identity first, then products
    /// `element · generator` in generator order, in discovery order.
    pub fn generate(label: impl Into<String>, kind: Kind, gens: &[Code], opts: BuildOptions) -> Result<Self> {
        let identity = kind.identity();
        let mut codes = vec![identity];
        let mut lookup = HashMap::new();
        lookup.insert(identity, 0u32);
        let mut head = 0;
        while head < codes.len() {
            let cur = codes[head];
            head += 1;
            for g in gens {
                let next = kind.compose(&cur, g);
                if let std::collections::hash_map::Entry::Vacant(e) = lookup.entry(next) {
                    if codes.len() >= opts.element_cap {
                        return Err(AtlasError::CapExceeded {
                            what: "element",
                            limit: opts.element_cap,
                            actual: codes.len() + 1,
                        });
                    }
                    e.insert(codes.len() as u32);
                    codes.push(next);
                }
            }
        }
        let order = codes.len();
        let names = codes.iter().map(|c| kind.name(c)).collect();
        let table = if order <= opts.table_cap.min(MAX_DENSE) {
            let mut t = Vec::with_capacity(order * order);
            for a in &codes {
                for b in &codes {
                    t.push(lookup[&kind.compose(a, b)] as u16);
                }
            }
            Some(t)
        } else {
            None
        };
        let mut group = GroupTable {
            label: label.into(),
            order,
            table,
            inv: Vec::new(),
            names,
            backing: Backing::Elements { kind, codes, lookup },
        };
        group.inv = group.compute_inverses();
        Ok(group)
    }

    /// Builds a group from an explicit dense table. Used for quotients.
    pub(crate) fn from_table(label: String, order: usize, table: Vec<u16>, names: Vec<String>) -> Self {
        let mut group = GroupTable {
            label,
            order,
            table: Some(table),
            inv: Vec::new(),
            names,
            backing: Backing::Abstract,
        };
        group.inv = group.compute_inverses();
        group
    }

    fn compute_inverses(&self) -> Vec<u32> {
        match &self.table {
            Some(t) => (0..self.order)
                .map(|a| {
                    let row = &t[a * self.order..(a + 1) * self.order];
                    row.iter().position(|&v| v == 0).expect("row contains identity") as u32
                })
                .collect(),
            None => (0..self.order as u32)
                .map(|a| {
                    let mut prev = 0;
                    let mut cur = a;
                    while cur != 0 {
                        prev = cur;
                        cur = self.mul(cur, a);
                    }
                    // a^(k-1) where a^k = 1
                    prev
                })
                .collect(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_dense(&self) -> bool {
        self.table.is_some()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: u32) -> &str {
        &self.names[a as usize]
    }

    pub fn kind(&self) -> Option<Kind> {
        match &self.backing {
            Backing::Elements { kind, .. } => Some(*kind),
            Backing::Abstract => None,
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.order + b as usize] as u32,
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        match &self.backing {
            Backing::Elements { kind, codes, lookup } => {
                lookup[&kind.compose(&codes[a as usize], &codes[b as usize])]
            }
            Backing::Abstract => unreachable!("abstract groups always carry a table"),
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `g a g⁻¹`.
    #[inline]
    pub fn conj(&self, g: u32, a: u32) -> u32 {
        self.mul(self.mul(g, a), self.inv(g))
    }

    #[inline]
    pub fn commutes(&self, a: u32, b: u32) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Looks an element up by its display name, or (permutation groups) by
    /// parsing cycle notation.
    pub fn parse_element(&self, text: &str) -> Result<u32> {
        let text = text.trim();
        if let Some(i) = self.names.iter().position(|n| n == text) {
            return Ok(i as u32);
        }
        if let Backing::Elements {
            kind: Kind::Permutation { degree },
            lookup,
            ..
        } = &self.backing
        {
            let (code, max_point) = element::parse_cycles(text)?;
            if max_point > *degree as usize {
                return Err(AtlasError::Parse(format!(
                    "`{text}` moves points beyond degree {degree}"
                )));
            }
            return lookup
                .get(&code)
                .copied()
                .ok_or_else(|| AtlasError::Parse(format!("`{text}` is not an element of {}", self.label)));
        }
        Err(AtlasError::Parse(format!("no element named `{text}` in {}", self.label)))
    }

    pub fn element_order(&self, x: u32) -> u32 {
        let mut k = 1;
        let mut cur = x;
        while cur != 0 {
            cur = self.mul(cur, x);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders in `set`.
    pub fn exponent(&self, set: &[u32]) -> u32 {
        set.iter()
            .map(|&x| self.element_order(x))
            .fold(1, |acc, o| acc / gcd(acc, o) * o)
    }

    /// Smallest subgroup containing `gens`, as a sorted index list.
    pub fn subgroup_closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut members = vec![0u32];
        let mut head = 0;
        while head < members.len() {
            let cur = members[head];
            head += 1;
            for &g in gens {
                let next = self.mul(cur, g);
                if !seen[next as usize] {
                    seen[next as usize] = true;
                    members.push(next);
                }
            }
        }
        members.sort_unstable();
        members
    }

    pub fn is_subgroup(&self, set: &[u32]) -> bool {
        if set.is_empty() {
            return false;
        }
        let mut member = vec![false; self.order];
        for &a in set {
            member[a as usize] = true;
        }
        member[0]
            && set.iter().all(|&a| {
                member[self.inv(a) as usize] && set.iter().all(|&b| member[self.mul(a, b) as usize])
            })
    }

    pub fn is_normal(&self, set: &[u32]) -> bool {
        let mut member = vec![false; self.order];
        for &a in set {
            member[a as usize] = true;
        }
        (0..self.order as u32).all(|g| set.iter().all(|&n| member[self.conj(g, n) as usize]))
    }

    pub fn centralizer(&self, x: u32) -> Vec<u32> {
        (0..self.order as u32).filter(|&g| self.commutes(g, x)).collect()
    }

    pub fn center(&self) -> Vec<u32> {
        (0..self.order as u32)
            .filter(|&z| (0..self.order as u32).all(|g| self.commutes(g, z)))
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as u32).all(|a| (0..a).all(|b| self.commutes(a, b)))
    }

    /// Conjugacy classes, each sorted, ordered by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let mut class_of = vec![u32::MAX; self.order];
        let mut classes = Vec::new();
        for a in 0..self.order as u32 {
            if class_of[a as usize] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mut class = Vec::new();
            for g in 0..self.order as u32 {
                let c = self.conj(g, a);
                if class_of[c as usize] == u32::MAX {
                    class_of[c as usize] = id;
                    class.push(c);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// Nonabelian and without proper nontrivial normal subgroups.
    pub fn is_simple(&self) -> bool {
        if self.order == 1 || self.is_abelian() {
            return false;
        }
        self.conjugacy_classes()
            .iter()
            .skip(1)
            .all(|class| self.subgroup_closure(class).len() == self.order)
    }

    /// The quotient by a normal subgroup together with the projection.
    ///
    /// Cosets are numbered by their least member, so the identity coset is 0
    /// and every coset's representative is its least-index element.
    pub fn quotient(&self, normal: &[u32]) -> Result<(GroupTable, Homomorphism)> {
        if !self.is_subgroup(normal) {
            return Err(AtlasError::NotSubgroup);
        }
        if !self.is_normal(normal) {
            return Err(AtlasError::NotNormal);
        }
        let mut image = vec![u32::MAX; self.order];
        let mut reps = Vec::new();
        for a in 0..self.order as u32 {
            if image[a as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(a);
            for &n in normal {
                image[self.mul(a, n) as usize] = id;
            }
        }
        let q = reps.len();
        if q > MAX_DENSE {
            return Err(AtlasError::CapExceeded {
                what: "table",
                limit: MAX_DENSE,
                actual: q,
            });
        }
        let mut table = Vec::with_capacity(q * q);
        for &a in &reps {
            for &b in &reps {
                table.push(image[self.mul(a, b) as usize] as u16);
            }
        }
        let names = if normal.len() == 1 {
            reps.iter().map(|&r| self.names[r as usize].clone()).collect()
        } else {
            reps.iter().map(|&r| format!("{}N", self.names[r as usize])).collect()
        };
        let label = format!("{}/N{}", self.label, normal.len());
        let quotient = GroupTable::from_table(label, q, table, names);
        Ok((quotient, Homomorphism { image }))
    }

    /// Checks associativity, identity and inverses: exhaustively up to
    /// [`EXHAUSTIVE_AXIOM_LIMIT`], otherwise on a fixed pseudo-random sample.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order as u32;
        let mut names: Vec<&String> = self.names.iter().collect();
        names.sort();
        names.dedup();
        ensure!(names.len() == self.order, "{}: element names are not distinct", self.label);
        for a in 0..n {
            ensure!(self.mul(0, a) == a && self.mul(a, 0) == a, "{}: 0 is not an identity for {a}", self.label);
            let ia = self.inv(a);
            ensure!(self.mul(a, ia) == 0 && self.mul(ia, a) == 0, "{}: bad inverse of {a}", self.label);
        }
        let assoc = |a: u32, b: u32, c: u32| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if self.order <= EXHAUSTIVE_AXIOM_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        ensure!(assoc(a, b, c), "{}: ({a}{b}){c} != {a}({b}{c})", self.label);
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..200_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                ensure!(assoc(a, b, c), "{}: ({a}{b}){c} != {a}({b}{c})", self.label);
            }
        }
        Ok(())
    }
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// A map of element indices; `image[a]` is the image of source element `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    pub image: Vec<u32>,
}

impl Homomorphism {
    #[inline]
    pub fn apply(&self, a: u32) -> u32 {
        self.image[a as usize]
    }

    /// Exhaustive homomorphism check.
    pub fn verify(&self, source: &GroupTable, target: &GroupTable) -> Result<()> {
        ensure!(self.image.len() == source.order(), "image length {} != |source| {}", self.image.len(), source.order());
        ensure!(self.image[0] == 0, "identity maps to {}", self.image[0]);
        let n = source.order() as u32;
        for a in 0..n {
            ensure!((self.apply(a) as usize) < target.order(), "image of {a} out of range");
            for b in 0..n {
                let lhs = self.apply(source.mul(a, b));
                let rhs = target.mul(self.apply(a), self.apply(b));
                ensure!(lhs == rhs, "f({a}*{b}) = {lhs} but f({a})f({b}) = {rhs}");
            }
        }
        Ok(())
    }

    pub fn kernel(&self) -> Vec<u32> {
        (0..self.image.len() as u32).filter(|&a| self.apply(a) == 0).collect()
    }

    pub fn is_surjective(&self, target_order: usize) -> bool {
        let mut hit = vec![false; target_order];
        for &v in &self.image {
            hit[v as usize] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Least-index preimage of every target element (`None` when not hit).
    pub fn least_preimages(&self, target_order: usize) -> Vec<Option<u32>> {
        let mut out = vec![None; target_order];
        for (a, &v) in self.image.iter().enumerate() {
            if out[v as usize].is_none() {
                out[v as usize] = Some(a as u32);
            }
        }
        out
    }
}

/// A bijective endomorphism, stored as its image permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism(pub Vec<u32>);

impl Automorphism {
    pub fn identity(order: usize) -> Self {
        Automorphism((0..order as u32).collect())
    }

    /// Conjugation `a ↦ g a g⁻¹`.
    pub fn inner(group: &GroupTable, g: u32) -> Self {
        Automorphism((0..group.order() as u32).map(|a| group.conj(g, a)).collect())
    }

    #[inline]
    pub fn apply(&self, a: u32) -> u32 {
        self.0[a as usize]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism(other.0.iter().map(|&a| self.0[a as usize]).collect())
    }

    pub fn inverse(&self) -> Automorphism {
        let mut out = vec![0; self.0.len()];
        for (a, &b) in self.0.iter().enumerate() {
            out[b as usize] = a as u32;
        }
        Automorphism(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(a, &b)| a as u32 == b)
    }

    pub fn verify(&self, group: &GroupTable) -> Result<()> {
        let mut hit = vec![false; group.order()];
        for &b in &self.0 {
            ensure!(!hit[b as usize], "automorphism image is not a permutation");
            hit[b as usize] = true;
        }
        Homomorphism { image: self.0.clone() }.verify(group, group)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(spec: &str) -> GroupTable {
        build_named_group(&spec.parse().unwrap(), BuildOptions::default()).unwrap()
    }

    #[test]
    fn closure_of_nothing_is_trivial() {
        assert_eq!(group("S3").subgroup_closure(&[]), vec![0]);
    }

    #[test]
    fn klein_four_in_s4() {
        let g = group("S4");
        let a = g.parse_element("(1 2)(3 4)").unwrap();
        let b = g.parse_element("(1 3)(2 4)").unwrap();
        let klein = g.subgroup_closure(&[a, b]);
        let mut names: Vec<&str> = klein.iter().map(|&k| g.name(k)).collect();
        names.sort();
        assert_eq!(names, vec!["()", "(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"]);
        assert!(g.is_normal(&klein));
    }

    #[test]
    fn center_of_sl2_3_is_plus_minus_identity() {
        let g = group("SL2(3)");
        let center = g.center();
        let mut names: Vec<&str> = center.iter().map(|&k| g.name(k)).collect();
        names.sort();
        assert_eq!(names, vec!["[[1,0],[0,1]]", "[[2,0],[0,2]]"]);
        assert_eq!(g.exponent(&center), 2);
        let minus = g.parse_element("[[2,0],[0,2]]").unwrap();
        assert_eq!(g.subgroup_closure(&[minus]), center);
    }

    #[test]
    fn center_of_s3_is_trivial() {
        assert_eq!(group("S3").center(), vec![0]);
    }

    #[test]
    fn centralizer_of_quaternion_unit() {
        let g = group("Q8");
        let i = g.parse_element("i").unwrap();
        // Exhaustive scan: elements commuting with i.
        let brute: Vec<u32> = (0..8).filter(|&h| g.mul(h, i) == g.mul(i, h)).collect();
        let c = g.centralizer(i);
        assert_eq!(c, brute);
        assert_eq!(c.len(), 4);
        assert_eq!(c, g.subgroup_closure(&[i]));
    }

    #[test]
    fn extraspecial_three_is_heisenberg() {
        let g = group("ES(3)");
        assert_eq!(g.order(), 27);
        let all: Vec<u32> = (0..27).collect();
        assert_eq!(g.exponent(&all), 3);
        assert_eq!(g.center().len(), 3);
    }

    #[test]
    fn quotient_by_trivial_is_isomorphic_copy() {
        let g = group("S3");
        let (q, pi) = g.quotient(&[0]).unwrap();
        assert_eq!(q.order(), 6);
        pi.verify(&g, &q).unwrap();
        assert_eq!(pi.image, (0..6).collect::<Vec<u32>>());
    }

    #[test]
    fn s4_mod_klein_is_s3_sized() {
        let g = group("S4");
        let a = g.parse_element("(1 2)(3 4)").unwrap();
        let b = g.parse_element("(1 3)(2 4)").unwrap();
        let klein = g.subgroup_closure(&[a, b]);
        let (q, pi) = g.quotient(&klein).unwrap();
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());
        assert_eq!(pi.kernel(), klein);
        assert!(pi.is_surjective(6));
        pi.verify(&g, &q).unwrap();
        q.check_axioms().unwrap();
    }

    #[test]
    fn sl2_3_mod_center_is_order_twelve() {
        let g = group("SL2(3)");
        let (q, _) = g.quotient(&g.center()).unwrap();
        assert_eq!(q.order(), 12);
        // A4 has class sizes 1, 3, 4, 4.
        let mut sizes: Vec<usize> = q.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 4, 4]);
    }

    #[test]
    fn quotient_rejects_bad_subsets() {
        let g = group("S4");
        let t = g.parse_element("(1 2)").unwrap();
        assert!(matches!(g.quotient(&[0, t]), Err(AtlasError::NotNormal)));
        assert!(matches!(g.quotient(&[t]), Err(AtlasError::NotSubgroup)));
    }

    #[test]
    fn simplicity() {
        assert!(group("A5").is_simple());
        assert!(group("PSL2(7)").is_simple());
        assert!(!group("S4").is_simple());
        assert!(!group("SL2(5)").is_simple());
    }

    #[test]
    fn sparse_backend_agrees_with_dense() {
        let dense = group("S5");
        let sparse = build_named_group(
            &"S5".parse().unwrap(),
            BuildOptions { table_cap: 10, ..BuildOptions::default() },
        )
        .unwrap();
        assert!(!sparse.is_dense());
        for a in 0..120 {
            assert_eq!(dense.inv(a), sparse.inv(a));
            for b in 0..120 {
                assert_eq!(dense.mul(a, b), sparse.mul(a, b));
            }
        }
    }
}
