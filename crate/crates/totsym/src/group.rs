//! Finite permutation groups with exact composition tables.
//!
//! A [`FiniteGroup`] is built from generators by breadth-first closure.
//! Elements are indexed in lexicographic image-table order, so id 0 is
//! always the identity and every enumeration is deterministic. All queries
//! are read-only; a constructed group can be shared freely across threads.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use rayon::prelude::*;
use thiserror::Error;

use crate::perm::{ParseError, Permutation};

/// Default cap on the order of a closed group.
pub const ORDER_CAP_DEFAULT: usize = 100_000;

/// Orders up to this get a dense composition table; larger groups fall back
/// to composing image tables and an index lookup. 6000 keeps S_7 (order
/// 5040) on the fast path at ~50 MB.
const MUL_TABLE_CAP: usize = 6000;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("generator degree {got} does not match declared degree {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("group closure exceeded the cap of {cap} elements")]
    OrderCapExceeded { cap: usize },
    #[error("element id {id} out of range for a group of order {order}")]
    InvalidElementId { id: usize, order: usize },
    #[error("subset must be nonempty")]
    EmptySubset,
}

/// Errors from reading a generator file (degree on line 1, one generator in
/// cycle notation per following line).
#[derive(Debug, Error)]
pub enum GroupFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line 1 must be the degree, got {got:?}")]
    BadDegree { got: String },
    #[error("line {line}: {source}")]
    BadGenerator { line: usize, source: ParseError },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// One conjugacy class: ids of its members, sorted ascending. The
/// representative is the minimal id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative_id: usize,
    pub member_ids: Vec<usize>,
}

impl ConjugacyClass {
    pub fn len(&self) -> usize {
        self.member_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.member_ids.is_empty()
    }
}

/// The conjugation orbit of a subset together with its setwise stabilizer.
/// `|orbit| * |stabilizer_ids|` always equals the group order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetOrbitRecord {
    pub base_set: Vec<usize>,
    pub orbit: Vec<Vec<usize>>,
    pub stabilizer_ids: Vec<usize>,
}

/// Witness generators for an isomorphism with a symmetric group: an element
/// acting as a transposition and one acting as an m-cycle under the standard
/// two-generator presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymWitness {
    pub transposition: usize,
    pub m_cycle: usize,
}

/// A finite permutation group with its composition and inverse tables,
/// conjugacy class decomposition, and a stable label.
pub struct FiniteGroup {
    label: String,
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    gen_ids: Vec<usize>,
    mul: Option<Vec<u16>>,
    inv: Vec<u32>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<u32>,
    // conj_witness[x] conjugates the class representative to x.
    conj_witness: Vec<u32>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("degree", &self.degree)
            .field("order", &self.elements.len())
            .finish()
    }
}

impl FiniteGroup {
    /// Closes `gens` under composition and inverse on `degree` points.
    /// An empty generator list yields the trivial group.
    pub fn from_generators(
        degree: usize,
        gens: &[Permutation],
        label: impl Into<String>,
    ) -> Result<Self, GroupError> {
        Self::from_generators_capped(degree, gens, label, ORDER_CAP_DEFAULT)
    }

    /// [`FiniteGroup::from_generators`] with an explicit order cap.
    pub fn from_generators_capped(
        degree: usize,
        gens: &[Permutation],
        label: impl Into<String>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }

        // Breadth-first closure from the identity.
        let identity = Permutation::identity(degree);
        let mut seen: HashMap<Permutation, ()> = HashMap::new();
        seen.insert(identity.clone(), ());
        let mut queue = vec![identity];
        let mut head = 0;
        while head < queue.len() {
            let current = queue[head].clone();
            head += 1;
            for g in gens {
                let next = current.compose(g);
                if !seen.contains_key(&next) {
                    if queue.len() + 1 > cap {
                        return Err(GroupError::OrderCapExceeded { cap });
                    }
                    seen.insert(next.clone(), ());
                    queue.push(next);
                }
            }
        }

        let mut elements = queue;
        elements.sort_unstable();
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        debug_assert!(elements[0].is_identity());

        let n = elements.len();
        let mul = if n <= MUL_TABLE_CAP {
            let mut table = vec![0u16; n * n];
            table
                .par_chunks_mut(n)
                .enumerate()
                .for_each(|(a, row)| {
                    for (b, slot) in row.iter_mut().enumerate() {
                        let prod = elements[a].compose(&elements[b]);
                        *slot = index[&prod] as u16;
                    }
                });
            Some(table)
        } else {
            None
        };

        let inv: Vec<u32> = elements.iter().map(|p| index[&p.inverse()]).collect();
        let gen_ids: Vec<usize> = gens.iter().map(|g| index[g] as usize).collect();

        let mut group = FiniteGroup {
            label: label.into(),
            degree,
            elements,
            index,
            gen_ids,
            mul,
            inv,
            classes: Vec::new(),
            class_of: Vec::new(),
            conj_witness: Vec::new(),
        };
        group.compute_classes();
        Ok(group)
    }

    /// Reads a group from a generator file: degree on line 1, one generator
    /// in cycle notation per following line (blank lines ignored). The label
    /// is the file stem.
    pub fn from_file(path: &Path) -> Result<Self, GroupFileError> {
        let text = std::fs::read_to_string(path).map_err(|source| GroupFileError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "group".to_string());
        let mut lines = text.lines().enumerate();
        let degree: usize = loop {
            match lines.next() {
                Some((_, line)) if line.trim().is_empty() => continue,
                Some((_, line)) => {
                    break line.trim().parse().map_err(|_| GroupFileError::BadDegree {
                        got: line.trim().to_string(),
                    })?
                }
                None => return Err(GroupFileError::BadDegree { got: String::new() }),
            }
        };
        let mut gens = Vec::new();
        for (lineno, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let perm = Permutation::parse(line, degree)
                .map_err(|source| GroupFileError::BadGenerator {
                    line: lineno + 1,
                    source,
                })?;
            gens.push(perm);
        }
        Ok(Self::from_generators(degree, &gens, label)?)
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![u32::MAX; n];
        let mut witness = vec![0u32; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let class_idx = classes.len() as u32;
            class_of[start] = class_idx;
            witness[start] = 0;
            let mut members = vec![start];
            let mut head = 0;
            while head < members.len() {
                let x = members[head];
                head += 1;
                for &g in &self.gen_ids {
                    let y = self.conj_ids(g, x);
                    if class_of[y] == u32::MAX {
                        class_of[y] = class_idx;
                        witness[y] = self.prod(g, witness[x] as usize) as u32;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjugacyClass {
                representative_id: start,
                member_ids: members,
            });
        }
        self.classes = classes;
        self.class_of = class_of;
        self.conj_witness = witness;
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity_id(&self) -> usize {
        0
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn perm(&self, id: usize) -> &Permutation {
        &self.elements[id]
    }

    pub fn id_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    /// Ids of the generators the group was closed from. Every element is a
    /// product of these.
    pub fn generator_ids(&self) -> &[usize] {
        &self.gen_ids
    }

    /// Parses `text` in cycle notation at the group's degree and resolves it
    /// to an element id.
    pub fn id_of_str(&self, text: &str) -> Result<Option<usize>, ParseError> {
        Ok(self.id_of(&Permutation::parse(text, self.degree)?))
    }

    fn check_id(&self, id: usize) -> Result<(), GroupError> {
        if id >= self.order() {
            return Err(GroupError::InvalidElementId {
                id,
                order: self.order(),
            });
        }
        Ok(())
    }

    /// Product `a · b` by element id (right factor applied first).
    #[inline]
    pub fn prod(&self, a: usize, b: usize) -> usize {
        match &self.mul {
            Some(table) => table[a * self.elements.len() + b] as usize,
            None => {
                let p = self.elements[a].compose(&self.elements[b]);
                self.index[&p] as usize
            }
        }
    }

    #[inline]
    pub fn inv_of(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g · x · g⁻¹` by element id.
    #[inline]
    pub fn conj_ids(&self, g: usize, x: usize) -> usize {
        self.prod(self.prod(g, x), self.inv_of(g))
    }

    pub fn pow_id(&self, x: usize, e: usize) -> usize {
        let mut acc = 0;
        let mut base = x;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.prod(base, acc);
            }
            base = self.prod(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, id: usize) -> usize {
        self.elements[id].order()
    }

    /// The conjugacy classes, sorted by representative id. They partition
    /// the group.
    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_index_of(&self, id: usize) -> usize {
        self.class_of[id] as usize
    }

    /// Some `w` with `w · rep · w⁻¹ = x`, where `rep` is the representative
    /// of x's class.
    pub fn witness_from_rep(&self, x: usize) -> usize {
        self.conj_witness[x] as usize
    }

    /// All `g` with `g Y g⁻¹ = Y` as a set, by full scan. Sorted; always a
    /// subgroup.
    pub fn setwise_conj_stabilizer(&self, ids: &[usize]) -> Result<Vec<usize>, GroupError> {
        if ids.is_empty() {
            return Err(GroupError::EmptySubset);
        }
        for &id in ids {
            self.check_id(id)?;
        }
        let mut member = vec![false; self.order()];
        for &id in ids {
            member[id] = true;
        }
        let mut out = Vec::new();
        'scan: for g in 0..self.order() {
            for &y in ids {
                if !member[self.conj_ids(g, y)] {
                    continue 'scan;
                }
            }
            out.push(g);
        }
        Ok(out)
    }

    /// The full conjugation orbit of a subset, with its stabilizer. Orbit
    /// entries and the orbit list itself are sorted.
    pub fn subset_orbit(&self, ids: &[usize]) -> Result<SubsetOrbitRecord, GroupError> {
        if ids.is_empty() {
            return Err(GroupError::EmptySubset);
        }
        for &id in ids {
            self.check_id(id)?;
        }
        let mut base: Vec<usize> = ids.to_vec();
        base.sort_unstable();
        let mut orbit: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
        let mut stabilizer = Vec::new();
        for g in 0..self.order() {
            let mut image: Vec<usize> = base.iter().map(|&y| self.conj_ids(g, y)).collect();
            image.sort_unstable();
            if image == base {
                stabilizer.push(g);
            }
            orbit.insert(image);
        }
        Ok(SubsetOrbitRecord {
            base_set: base,
            orbit: orbit.into_iter().collect(),
            stabilizer_ids: stabilizer,
        })
    }

    /// All elements commuting with `x`. Sorted; always a subgroup.
    pub fn centralizer(&self, x: usize) -> Result<Vec<usize>, GroupError> {
        self.check_id(x)?;
        Ok((0..self.order())
            .filter(|&g| self.prod(g, x) == self.prod(x, g))
            .collect())
    }

    /// Decides `G ≅ S_m` by searching for a pair `(t, c)` that satisfies the
    /// standard two-generator presentation of `S_m`
    ///
    /// ```text
    /// t² = cᵐ = (t·c)^(m-1) = e,   (t · cⁱ t c⁻ⁱ)² = e  for 2 ≤ i ≤ m/2
    /// ```
    ///
    /// and generates all of `G`. Candidates are pruned by element order
    /// (`t` of order 2, `c` of order `m`); anything of the wrong order
    /// cannot satisfy the presentation exactly and generate. Returns the
    /// first witness pair in id order, or `None`.
    pub fn is_isomorphic_to_sym(&self, m: usize) -> Option<SymWitness> {
        let target = factorial(m)?;
        if self.order() != target {
            return None;
        }
        if m <= 1 {
            return Some(SymWitness {
                transposition: 0,
                m_cycle: 0,
            });
        }
        let t_candidates: Vec<usize> = (0..self.order())
            .filter(|&x| self.element_order(x) == 2)
            .collect();
        let c_candidates: Vec<usize> = (0..self.order())
            .filter(|&x| self.element_order(x) == m)
            .collect();
        for &t in &t_candidates {
            for &c in &c_candidates {
                if !self.sym_relations_hold(t, c, m) {
                    continue;
                }
                if self.generated_by(&[t, c]) == self.order() {
                    return Some(SymWitness {
                        transposition: t,
                        m_cycle: c,
                    });
                }
            }
        }
        None
    }

    fn sym_relations_hold(&self, t: usize, c: usize, m: usize) -> bool {
        let e = self.identity_id();
        if self.prod(t, t) != e || self.pow_id(c, m) != e {
            return false;
        }
        if self.pow_id(self.prod(t, c), m - 1) != e {
            return false;
        }
        let c_inv = self.inv_of(c);
        for i in 2..=m / 2 {
            let ci = self.pow_id(c, i);
            let ci_inv = self.pow_id(c_inv, i);
            let w = self.prod(t, self.prod(ci, self.prod(t, ci_inv)));
            if self.prod(w, w) != e {
                return false;
            }
        }
        true
    }

    /// Order of the subgroup generated by the given element ids.
    pub fn generated_by(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.order()];
        seen[self.identity_id()] = true;
        let mut queue = vec![self.identity_id()];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = self.prod(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        queue.len()
    }
}

fn factorial(m: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for i in 2..=m {
        acc = acc.checked_mul(i)?;
    }
    Some(acc)
}
