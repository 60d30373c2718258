//! Built-in group constructions and the test catalog.
//!
//! The catalog is a deterministic list of named groups realized as
//! permutation groups: cyclic, dihedral, symmetric, alternating, the
//! quaternion group, and pairwise direct products of these that fit the
//! order budget. It is a library of constructions, not a database of all
//! groups of each order; entries are deduplicated by label only, so e.g.
//! `D3` and `S3` both appear even though they are isomorphic.

use crate::group::FiniteGroup;
use crate::perm::Permutation;

fn perm(text: &str, degree: usize) -> Permutation {
    Permutation::parse(text, degree).expect("builtin generator")
}

/// Cyclic group `C_m` as the rotation of `m` points (`C_1` is trivial).
pub fn cyclic(m: usize) -> FiniteGroup {
    assert!(m >= 1);
    let gens = if m == 1 {
        vec![]
    } else {
        let cycle: Vec<String> = (1..=m).map(|i| i.to_string()).collect();
        vec![perm(&format!("({})", cycle.join(" ")), m)]
    };
    FiniteGroup::from_generators(m.max(1), &gens, format!("C{m}")).expect("cyclic")
}

/// Dihedral group `D_m` of order `2m` on the vertices of an m-gon, `m ≥ 3`.
pub fn dihedral(m: usize) -> FiniteGroup {
    assert!(m >= 3);
    let cycle: Vec<String> = (1..=m).map(|i| i.to_string()).collect();
    let rotation = perm(&format!("({})", cycle.join(" ")), m);
    // Reflection fixing vertex 1 (0-based vertex 0): q ↦ -q (mod m).
    let mut images = vec![0u32; m];
    for (q, slot) in images.iter_mut().enumerate() {
        *slot = ((m - q) % m) as u32;
    }
    let reflection = Permutation::from_images(images).expect("reflection");
    FiniteGroup::from_generators(m, &[rotation, reflection], format!("D{m}")).expect("dihedral")
}

/// Symmetric group `S_m` on `m` points, `m ≥ 1`.
pub fn symmetric(m: usize) -> FiniteGroup {
    assert!(m >= 1);
    let gens = match m {
        1 => vec![],
        2 => vec![perm("(1 2)", 2)],
        _ => {
            let cycle: Vec<String> = (1..=m).map(|i| i.to_string()).collect();
            vec![perm("(1 2)", m), perm(&format!("({})", cycle.join(" ")), m)]
        }
    };
    FiniteGroup::from_generators(m.max(1), &gens, format!("S{m}")).expect("symmetric")
}

/// Alternating group `A_m` on `m` points, `m ≥ 3`.
pub fn alternating(m: usize) -> FiniteGroup {
    assert!(m >= 3);
    let gens = if m == 3 {
        vec![perm("(1 2 3)", 3)]
    } else if m % 2 == 1 {
        let cycle: Vec<String> = (1..=m).map(|i| i.to_string()).collect();
        vec![perm("(1 2 3)", m), perm(&format!("({})", cycle.join(" ")), m)]
    } else {
        let cycle: Vec<String> = (2..=m).map(|i| i.to_string()).collect();
        vec![perm("(1 2 3)", m), perm(&format!("({})", cycle.join(" ")), m)]
    };
    FiniteGroup::from_generators(m, &gens, format!("A{m}")).expect("alternating")
}

/// The quaternion group `Q_8` in its regular representation on the eight
/// elements `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion8() -> FiniteGroup {
    // Left multiplication by i and by j on the ordering above.
    let i = Permutation::from_images(vec![2, 3, 1, 0, 6, 7, 5, 4]).expect("q8 i");
    let j = Permutation::from_images(vec![4, 5, 7, 6, 1, 0, 2, 3]).expect("q8 j");
    FiniteGroup::from_generators(8, &[i, j], "Q8").expect("quaternion")
}

/// Direct product on the disjoint union of the point sets
/// (degree = sum of degrees).
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let degree = a.degree() + b.degree();
    let mut gens = Vec::new();
    for g in gen_perms(a) {
        let mut images: Vec<u32> = g.images().to_vec();
        images.extend((a.degree()..degree).map(|p| p as u32));
        gens.push(Permutation::from_images(images).expect("product gen"));
    }
    for g in gen_perms(b) {
        let mut images: Vec<u32> = (0..a.degree() as u32).collect();
        images.extend(g.images().iter().map(|&p| p + a.degree() as u32));
        gens.push(Permutation::from_images(images).expect("product gen"));
    }
    let label = format!("{}x{}", a.label(), b.label());
    let product = FiniteGroup::from_generators(degree, &gens, label).expect("product");
    assert_eq!(product.order(), a.order() * b.order());
    product
}

// A small generating set: enough to rebuild the group on a shifted point
// set. Greedy: add elements until the closure is everything.
fn gen_perms(g: &FiniteGroup) -> Vec<Permutation> {
    let mut gen_ids: Vec<usize> = Vec::new();
    let mut reached = 1;
    for x in 1..g.order() {
        if reached == g.order() {
            break;
        }
        gen_ids.push(x);
        let now = g.generated_by(&gen_ids);
        if now == reached {
            gen_ids.pop();
        } else {
            reached = now;
        }
    }
    gen_ids.iter().map(|&x| g.perm(x).clone()).collect()
}

/// The deterministic built-in catalog of all groups of order ≤ `max_order`:
/// base families (cyclic, dihedral, symmetric, alternating, quaternion) in
/// ascending parameter order, then pairwise direct products of nontrivial
/// base entries. Labels are stable across runs.
pub fn catalog_groups(max_order: usize) -> Vec<FiniteGroup> {
    let mut base: Vec<FiniteGroup> = Vec::new();
    for m in 1..=max_order {
        base.push(cyclic(m));
    }
    for m in 3.. {
        if 2 * m > max_order {
            break;
        }
        base.push(dihedral(m));
    }
    for m in 3.. {
        if factorial(m) > max_order {
            break;
        }
        base.push(symmetric(m));
    }
    for m in 3.. {
        if factorial(m) / 2 > max_order {
            break;
        }
        base.push(alternating(m));
    }
    if max_order >= 8 {
        base.push(quaternion8());
    }

    let mut out: Vec<FiniteGroup> = Vec::new();
    let factors: Vec<usize> = (0..base.len()).filter(|&i| base[i].order() > 1).collect();
    for (pos, &i) in factors.iter().enumerate() {
        for &j in &factors[pos..] {
            if base[i].order() * base[j].order() <= max_order {
                out.push(direct_product(&base[i], &base[j]));
            }
        }
    }
    let mut all = base;
    all.append(&mut out);
    all
}

fn factorial(m: usize) -> usize {
    (2..=m).product::<usize>().max(1)
}
