//! Automorphism search by backtracking over generator images.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Automorphism, GroupTable};
use crate::error::{ensure, AtlasError, Result};

/// Full closure checks are run on all pairs up to this many automorphisms;
/// above it a fixed sample of pairs is checked.
const EXHAUSTIVE_CLOSURE_LIMIT: usize = 2048;

/// Greedy short generating sequence: repeatedly add the element whose
/// addition enlarges the generated subgroup the most (ties by least index).
pub fn greedy_generating_sequence(group: &GroupTable) -> Vec<u32> {
    let mut gens = Vec::new();
    let mut closure = vec![0u32];
    while closure.len() < group.order() {
        let mut member = vec![false; group.order()];
        for &c in &closure {
            member[c as usize] = true;
        }
        let mut best: Option<(usize, u32, Vec<u32>)> = None;
        let mut trial = gens.clone();
        trial.push(0);
        for x in 0..group.order() as u32 {
            if member[x as usize] {
                continue;
            }
            *trial.last_mut().unwrap() = x;
            let c = group.subgroup_closure(&trial);
            if best.as_ref().is_none_or(|(size, _, _)| c.len() > *size) {
                let full = c.len() == group.order();
                best = Some((c.len(), x, c));
                if full {
                    break;
                }
            }
        }
        let (_, x, c) = best.expect("proper subgroup has a non-member");
        gens.push(x);
        closure = c;
    }
    gens
}

/// Extends `gens[i] ↦ images[i]` along the Cayley graph of `⟨gens⟩`.
///
/// Every Cayley-graph edge `a → a·g` is checked against
/// `f(a) → f(a)·f(g)`, so success means the map is a well-defined injective
/// homomorphism on the generated subgroup.
fn extend(group: &GroupTable, gens: &[u32], images: &[u32], map: &mut [u32], used: &mut [bool]) -> bool {
    map.fill(u32::MAX);
    used.fill(false);
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let a = queue[head];
        head += 1;
        let fa = map[a as usize];
        for (&g, &fg) in gens.iter().zip(images) {
            let b = group.mul(a, g);
            let fb = group.mul(fa, fg);
            match map[b as usize] {
                u32::MAX => {
                    if used[fb as usize] {
                        return false;
                    }
                    map[b as usize] = fb;
                    used[fb as usize] = true;
                    queue.push(b);
                }
                existing if existing != fb => return false,
                _ => {}
            }
        }
    }
    true
}

/// All automorphisms of `group`, sorted by image vector (identity first).
///
/// Generator images are restricted to elements of equal order and equal
/// conjugacy-class size, and each partial assignment is checked on the
/// subgroup generated so far before descending.
pub fn automorphism_group(group: &GroupTable, aut_cap: usize) -> Result<Vec<Automorphism>> {
    if group.order() > aut_cap {
        return Err(AtlasError::CapExceeded {
            what: "automorphism search",
            limit: aut_cap,
            actual: group.order(),
        });
    }
    let n = group.order();
    let gens = greedy_generating_sequence(group);
    let mut class_size = vec![0usize; n];
    for class in group.conjugacy_classes() {
        for &c in &class {
            class_size[c as usize] = class.len();
        }
    }
    let orders: Vec<u32> = (0..n as u32).map(|a| group.element_order(a)).collect();
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&g| {
            (0..n as u32)
                .filter(|&c| orders[c as usize] == orders[g as usize] && class_size[c as usize] == class_size[g as usize])
                .collect()
        })
        .collect();

    let mut found = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    let mut map = vec![u32::MAX; n];
    let mut used = vec![false; n];
    search(group, &gens, &candidates, &mut images, &mut map, &mut used, &mut found);
    found.sort();
    verify_group(group, &gens, &found)?;
    Ok(found)
}

fn search(
    group: &GroupTable,
    gens: &[u32],
    candidates: &[Vec<u32>],
    images: &mut Vec<u32>,
    map: &mut [u32],
    used: &mut [bool],
    found: &mut Vec<Automorphism>,
) {
    let level = images.len();
    if level == gens.len() {
        found.push(Automorphism(map.to_vec()));
        return;
    }
    for &c in &candidates[level] {
        images.push(c);
        if extend(group, &gens[..=level], images, map, used) {
            if level + 1 == gens.len() {
                found.push(Automorphism(map.to_vec()));
            } else {
                search(group, gens, candidates, images, map, used, found);
            }
        }
        images.pop();
    }
}

/// Identity present, every inner automorphism present, closed under inverses
/// and composition.
fn verify_group(group: &GroupTable, gens: &[u32], auts: &[Automorphism]) -> Result<()> {
    let key = |a: &Automorphism| gens.iter().map(|&g| a.apply(g)).collect::<Vec<u32>>();
    let index: HashMap<Vec<u32>, usize> = auts.iter().enumerate().map(|(i, a)| (key(a), i)).collect();
    ensure!(index.len() == auts.len(), "duplicate automorphisms found");
    ensure!(auts.first().is_some_and(Automorphism::is_identity), "identity automorphism missing");
    for g in 0..group.order() as u32 {
        let inner = Automorphism::inner(group, g);
        ensure!(index.contains_key(&key(&inner)), "inner automorphism by {} missing", group.name(g));
    }
    for a in auts {
        ensure!(index.contains_key(&key(&a.inverse())), "automorphism group not closed under inverses");
    }
    let composed_key = |a: &Automorphism, b: &Automorphism| gens.iter().map(|&g| a.apply(b.apply(g))).collect::<Vec<u32>>();
    if auts.len() <= EXHAUSTIVE_CLOSURE_LIMIT {
        for a in auts {
            for b in auts {
                ensure!(index.contains_key(&composed_key(a, b)), "automorphism group not closed under composition");
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0xa07);
        for _ in 0..200_000 {
            let a = &auts[rng.gen_range(0..auts.len())];
            let b = &auts[rng.gen_range(0..auts.len())];
            ensure!(index.contains_key(&composed_key(a, b)), "automorphism group not closed under composition");
        }
    }
    Ok(())
}
