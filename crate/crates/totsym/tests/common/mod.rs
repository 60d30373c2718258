//! Independent oracles for the integration suites.
//!
//! Everything here works directly on permutation arithmetic, bypassing the
//! search machinery (pair-type pruning, stabilizer images, memoization) and
//! the presentation-based isomorphism test that the suites check.

// Each test binary uses its own subset of the oracles.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use itertools::Itertools;
use totsym::perm::enumerate_sym;
use totsym::{FiniteGroup, Permutation};

/// Definition-direct total symmetry: for every permutation of the tuple
/// there must be a group element realizing it by conjugation.
pub fn is_tss_by_definition(group: &FiniteGroup, members: &[usize]) -> bool {
    let k = members.len();
    let perms: Vec<&Permutation> = members.iter().map(|&id| group.perm(id)).collect();
    for sigma in enumerate_sym(k).expect("small k") {
        let mut realized = false;
        'candidates: for g in group.elements() {
            for (i, y) in perms.iter().enumerate() {
                if &g.conjugate(y) != perms[sigma.apply(i)] {
                    continue 'candidates;
                }
            }
            realized = true;
            break;
        }
        if !realized {
            return false;
        }
    }
    true
}

/// Unpruned enumeration: every k-subset of every conjugacy class, checked
/// by [`is_tss_by_definition`]. Returns sorted id sets.
pub fn brute_force_tss_sets(group: &FiniteGroup, k: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for class in group.conjugacy_classes() {
        if class.len() < k {
            continue;
        }
        for subset in class.member_ids.iter().copied().combinations(k) {
            if is_tss_by_definition(group, &subset) {
                out.insert(subset);
            }
        }
    }
    out
}

// Greedy generating sequence, closure computed on raw permutations.
fn generating_perms(group: &FiniteGroup) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut closure = close_perms(group.degree(), &gens);
    for id in 1..group.order() {
        if closure.len() == group.order() {
            break;
        }
        let candidate = group.perm(id).clone();
        if !closure.contains(&candidate) {
            gens.push(candidate);
            closure = close_perms(group.degree(), &gens);
        }
    }
    gens
}

fn close_perms(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = vec![Permutation::identity(degree)];
    seen.insert(Permutation::identity(degree));
    let mut head = 0;
    while head < queue.len() {
        let current = queue[head].clone();
        head += 1;
        for g in gens {
            let next = current.compose(g);
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    seen
}

/// Generic isomorphism decision by backtracking over generator images with
/// matching element orders, verifying the induced map by word closure.
pub fn isomorphic_bruteforce(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    if g.order() != h.order() {
        return false;
    }
    let gens = generating_perms(g);
    if gens.is_empty() {
        return true; // both trivial
    }
    let candidate_lists: Vec<Vec<&Permutation>> = gens
        .iter()
        .map(|gen| {
            let order = gen.order();
            h.elements().iter().filter(|x| x.order() == order).collect()
        })
        .collect();
    let mut assignment: Vec<&Permutation> = Vec::new();
    assign(g, &gens, &candidate_lists, &mut assignment)
}

fn assign<'h>(
    g: &FiniteGroup,
    gens: &[Permutation],
    candidates: &[Vec<&'h Permutation>],
    assignment: &mut Vec<&'h Permutation>,
) -> bool {
    if assignment.len() == gens.len() {
        return extends_to_isomorphism(g, gens, assignment);
    }
    for &candidate in &candidates[assignment.len()] {
        assignment.push(candidate);
        if assign(g, gens, candidates, assignment) {
            assignment.pop();
            return true;
        }
        assignment.pop();
    }
    false
}

// Word-closure extension: map the identity to the identity and push images
// along right multiplication by generators, checking consistency on every
// edge; a consistent total bijection is an isomorphism.
fn extends_to_isomorphism(
    g: &FiniteGroup,
    gens: &[Permutation],
    images: &[&Permutation],
) -> bool {
    let mut map: HashMap<Permutation, Permutation> = HashMap::new();
    let e_g = Permutation::identity(g.degree());
    let e_h = Permutation::identity(images[0].degree());
    map.insert(e_g.clone(), e_h);
    let mut queue = vec![e_g];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head].clone();
        head += 1;
        let fx = map[&x].clone();
        for (gen, img) in gens.iter().zip(images) {
            let y = x.compose(gen);
            let fy = fx.compose(img);
            match map.get(&y) {
                Some(existing) => {
                    if existing != &fy {
                        return false;
                    }
                }
                None => {
                    map.insert(y.clone(), fy);
                    queue.push(y);
                }
            }
        }
    }
    if map.len() != g.order() {
        return false;
    }
    let image_set: HashSet<&Permutation> = map.values().collect();
    image_set.len() == g.order()
}
