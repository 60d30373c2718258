//! Total-symmetry verification with witness certificates.
//!
//! A subset `Y = {y_1, …, y_k}` of a group is totally symmetric if every
//! permutation of `Y` is realized by conjugation, equivalently if the
//! setwise stabilizer of `Y` surjects onto the symmetric group of `Y`. The
//! same notion makes sense for any finite group action; [`FiniteAction`]
//! carries that generalization, and [`check_collapse`] verifies the
//! collision-implies-collapse dichotomy for equivariant maps.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::group::FiniteGroup;
use crate::perm::{adjacent_transposition, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TssError {
    #[error("candidate members must be pairwise distinct (id {id} repeated)")]
    DuplicateMember { id: usize },
    #[error("element id {id} out of range for a group of order {order}")]
    InvalidElementId { id: usize, order: usize },
    #[error("candidate set must be nonempty")]
    Empty,
}

/// An ordered tuple of distinct group elements under test for total
/// symmetry.
pub struct CandidateSet<'g> {
    group: &'g FiniteGroup,
    member_ids: Vec<usize>,
}

/// The subgroup of `S_k` realized on a tuple, with one witnessing group
/// element per realized permutation.
pub struct RealizedImage {
    /// Realized permutations of tuple positions, sorted canonically.
    pub image: Vec<Permutation>,
    /// For each realized permutation, a group element inducing it.
    pub witnesses: HashMap<Permutation, usize>,
}

/// Witnesses for the adjacent transpositions of a verified totally
/// symmetric tuple. Adjacent transpositions generate the full symmetric
/// group, so any permutation's witness can be rebuilt by composition
/// ([`TssCertificate::witness_for`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TssCertificate {
    pub member_ids: Vec<usize>,
    /// `adjacent_witnesses[i]` conjugates `y_i ↔ y_{i+1}` and fixes the rest.
    pub adjacent_witnesses: Vec<usize>,
    /// Order of the realized permutation group; equals `k!` exactly when
    /// the tuple is totally symmetric.
    pub realized_group_order: usize,
}

impl TssCertificate {
    /// Re-checks the certificate by direct conjugation: witness `i` must
    /// swap members `i` and `i+1` and fix every other member.
    pub fn validate(&self, group: &FiniteGroup) -> bool {
        let k = self.member_ids.len();
        if self.adjacent_witnesses.len() + 1 != k.max(1) {
            return false;
        }
        match factorial_at_most(k, group.order()) {
            Some(f) => {
                if f != self.realized_group_order {
                    return false;
                }
            }
            None => return false,
        }
        for (i, &w) in self.adjacent_witnesses.iter().enumerate() {
            for (j, &y) in self.member_ids.iter().enumerate() {
                let image = group.conj_ids(w, y);
                let expect = if j == i {
                    self.member_ids[i + 1]
                } else if j == i + 1 {
                    self.member_ids[i]
                } else {
                    y
                };
                if image != expect {
                    return false;
                }
            }
        }
        true
    }

    /// A group element realizing an arbitrary permutation `sigma` of the
    /// tuple, composed on demand from the adjacent witnesses.
    pub fn witness_for(&self, group: &FiniteGroup, sigma: &Permutation) -> usize {
        assert_eq!(sigma.degree(), self.member_ids.len());
        let mut acc = group.identity_id();
        for &i in &sigma.adjacent_factorization() {
            acc = group.prod(acc, self.adjacent_witnesses[i]);
        }
        acc
    }
}

impl<'g> CandidateSet<'g> {
    pub fn new(group: &'g FiniteGroup, member_ids: Vec<usize>) -> Result<Self, TssError> {
        if member_ids.is_empty() {
            return Err(TssError::Empty);
        }
        let mut seen = HashSet::new();
        for &id in &member_ids {
            if id >= group.order() {
                return Err(TssError::InvalidElementId {
                    id,
                    order: group.order(),
                });
            }
            if !seen.insert(id) {
                return Err(TssError::DuplicateMember { id });
            }
        }
        Ok(CandidateSet { group, member_ids })
    }

    /// Convenience constructor from cycle-notation strings.
    pub fn parse(group: &'g FiniteGroup, texts: &[&str]) -> Result<Self, String> {
        let mut ids = Vec::new();
        for text in texts {
            let id = group
                .id_of_str(text)
                .map_err(|e| format!("{text:?}: {e}"))?
                .ok_or_else(|| format!("{text:?} is not an element of {}", group.label()))?;
            ids.push(id);
        }
        Self::new(group, ids).map_err(|e| e.to_string())
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn member_ids(&self) -> &[usize] {
        &self.member_ids
    }

    /// Scans the setwise stabilizer and collects the induced permutations
    /// of the tuple, closing under composition so each one carries a
    /// witness. Early-exits once the image reaches order `k!`.
    pub fn realized_permutations(&self) -> RealizedImage {
        let group = self.group;
        realized_image(
            group.order(),
            &self.member_ids,
            |g, y| group.conj_ids(g, y),
            |a, b| group.prod(a, b),
        )
    }

    /// `Some(certificate)` iff every permutation of the tuple is realized.
    pub fn is_totally_symmetric(&self) -> Option<TssCertificate> {
        let k = self.member_ids.len();
        let realized = self.realized_permutations();
        if !image_is_full(realized.image.len(), k, self.group.order()) {
            return None;
        }
        let adjacent_witnesses = (0..k.saturating_sub(1))
            .map(|i| realized.witnesses[&adjacent_transposition(k, i)])
            .collect();
        Some(TssCertificate {
            member_ids: self.member_ids.clone(),
            adjacent_witnesses,
            realized_group_order: realized.image.len(),
        })
    }

    /// The first permutation of the tuple, in lexicographic generation
    /// order, that no group element realizes. `None` iff totally symmetric.
    pub fn first_unrealized_permutation(&self) -> Option<Permutation> {
        let realized = self.realized_permutations();
        let k = self.member_ids.len();
        if image_is_full(realized.image.len(), k, self.group.order()) {
            return None;
        }
        let have: HashSet<&Permutation> = realized.image.iter().collect();
        let mut current = Permutation::identity(k);
        loop {
            if !have.contains(&current) {
                return Some(current);
            }
            current = next_perm(&current)?;
        }
    }

    /// True iff all members pairwise commute.
    pub fn is_commuting(&self) -> bool {
        for (i, &a) in self.member_ids.iter().enumerate() {
            for &b in &self.member_ids[i + 1..] {
                if self.group.prod(a, b) != self.group.prod(b, a) {
                    return false;
                }
            }
        }
        true
    }
}

fn next_perm(p: &Permutation) -> Option<Permutation> {
    let mut images: Vec<u32> = p.images().to_vec();
    let n = images.len();
    if n < 2 {
        return None;
    }
    let mut i = n - 1;
    while i > 0 && images[i - 1] >= images[i] {
        i -= 1;
    }
    if i == 0 {
        return None;
    }
    let mut j = n - 1;
    while images[j] <= images[i - 1] {
        j -= 1;
    }
    images.swap(i - 1, j);
    images[i..].reverse();
    Permutation::from_images(images).ok()
}

/// `k!` as long as it stays within `bound`; `None` means "larger than
/// bound", which already rules out a full image.
fn factorial_at_most(k: usize, bound: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for i in 2..=k {
        acc = acc.checked_mul(i)?;
        if acc > bound {
            return None;
        }
    }
    Some(acc)
}

fn image_is_full(image_len: usize, k: usize, group_order: usize) -> bool {
    factorial_at_most(k, group_order) == Some(image_len)
}

// Shared engine behind the group and action variants. `apply(g, v)` moves
// a tuple entry, `mul` is the group product for composing witnesses: if g
// induces π and h induces ρ then g·h induces π∘ρ.
fn realized_image<F, M>(group_order: usize, tuple: &[usize], apply: F, mul: M) -> RealizedImage
where
    F: Fn(usize, usize) -> usize,
    M: Fn(usize, usize) -> usize,
{
    let k = tuple.len();
    let full = factorial_at_most(k, group_order);
    let slot_of: HashMap<usize, usize> = tuple.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut witnesses: HashMap<Permutation, usize> = HashMap::new();
    witnesses.insert(Permutation::identity(k), 0);

    'scan: for g in 0..group_order {
        if Some(witnesses.len()) == full {
            break;
        }
        let mut images = vec![0u32; k];
        for (i, &y) in tuple.iter().enumerate() {
            match slot_of.get(&apply(g, y)) {
                Some(&j) => images[i] = j as u32,
                None => continue 'scan,
            }
        }
        let induced = Permutation::from_images(images)
            .expect("a stabilizing element permutes the tuple bijectively");
        if witnesses.contains_key(&induced) {
            continue;
        }
        let mut queue = vec![(induced, g)];
        while let Some((pi, w)) = queue.pop() {
            if witnesses.contains_key(&pi) {
                continue;
            }
            witnesses.insert(pi.clone(), w);
            let snapshot: Vec<(Permutation, usize)> =
                witnesses.iter().map(|(p, &u)| (p.clone(), u)).collect();
            for (rho, u) in snapshot {
                queue.push((pi.compose(&rho), mul(w, u)));
                queue.push((rho.compose(&pi), mul(u, w)));
            }
        }
    }

    let mut image: Vec<Permutation> = witnesses.keys().cloned().collect();
    image.sort_unstable();
    RealizedImage { image, witnesses }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("act({element}, {point}) = {image} is out of range")]
    ImageOutOfRange {
        element: usize,
        point: usize,
        image: usize,
    },
    #[error("identity axiom violated at point {point}")]
    IdentityAxiom { point: usize },
    #[error("compatibility axiom violated: act({g}, act({h}, {point})) != act({g}·{h}, {point})")]
    CompatibilityAxiom { g: usize, h: usize, point: usize },
    #[error("point {point} out of range (action has {count} points)")]
    PointOutOfRange { point: usize, count: usize },
    #[error("point {point} repeated in the tuple")]
    DuplicatePoint { point: usize },
    #[error("tuple must be nonempty")]
    Empty,
}

/// A finite G-set: a group acting on a labeled finite point set through a
/// dense table.
pub struct FiniteAction<'g, L> {
    group: &'g FiniteGroup,
    labels: Vec<L>,
    table: Vec<u32>,
}

impl<'g, L: Clone> FiniteAction<'g, L> {
    /// Builds the action table from `act` and verifies the action axioms:
    /// the identity row is trivial and `act(g, act(h, p)) = act(gh, p)`.
    /// Compatibility is checked for every generator against every element,
    /// which extends to all products by induction.
    pub fn new<A>(group: &'g FiniteGroup, labels: Vec<L>, act: A) -> Result<Self, ActionError>
    where
        A: Fn(usize, usize) -> usize,
    {
        let npoints = labels.len();
        let mut table = vec![0u32; group.order() * npoints];
        for g in 0..group.order() {
            for p in 0..npoints {
                let image = act(g, p);
                if image >= npoints {
                    return Err(ActionError::ImageOutOfRange {
                        element: g,
                        point: p,
                        image,
                    });
                }
                table[g * npoints + p] = image as u32;
            }
        }
        let action = FiniteAction {
            group,
            labels,
            table,
        };
        action.verify_axioms()?;
        Ok(action)
    }

    fn verify_axioms(&self) -> Result<(), ActionError> {
        let e = self.group.identity_id();
        for p in 0..self.point_count() {
            if self.act(e, p) != p {
                return Err(ActionError::IdentityAxiom { point: p });
            }
        }
        for &g in self.group.generator_ids() {
            for h in 0..self.group.order() {
                let gh = self.group.prod(g, h);
                for p in 0..self.point_count() {
                    if self.act(g, self.act(h, p)) != self.act(gh, p) {
                        return Err(ActionError::CompatibilityAxiom { g, h, point: p });
                    }
                }
            }
        }
        Ok(())
    }

    /// The conjugation action of a group on its own elements. Point `i` is
    /// the element with id `i`.
    pub fn conjugation(group: &'g FiniteGroup) -> FiniteAction<'g, usize> {
        let labels: Vec<usize> = (0..group.order()).collect();
        let npoints = labels.len();
        let mut table = vec![0u32; npoints * npoints];
        for g in 0..npoints {
            for x in 0..npoints {
                table[g * npoints + x] = group.conj_ids(g, x) as u32;
            }
        }
        FiniteAction {
            group,
            labels,
            table,
        }
    }

    /// The natural action of a permutation group on its `1..degree` points
    /// (labels are 1-based).
    pub fn natural(group: &'g FiniteGroup) -> FiniteAction<'g, usize> {
        let labels: Vec<usize> = (1..=group.degree()).collect();
        let npoints = labels.len();
        let mut table = vec![0u32; group.order() * npoints];
        for g in 0..group.order() {
            for p in 0..npoints {
                table[g * npoints + p] = group.perm(g).apply(p) as u32;
            }
        }
        FiniteAction {
            group,
            labels,
            table,
        }
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn point_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, point: usize) -> &L {
        &self.labels[point]
    }

    #[inline]
    pub fn act(&self, g: usize, point: usize) -> usize {
        self.table[g * self.labels.len() + point] as usize
    }

    fn check_tuple(&self, points: &[usize]) -> Result<(), ActionError> {
        if points.is_empty() {
            return Err(ActionError::Empty);
        }
        let mut seen = HashSet::new();
        for &p in points {
            if p >= self.point_count() {
                return Err(ActionError::PointOutOfRange {
                    point: p,
                    count: self.point_count(),
                });
            }
            if !seen.insert(p) {
                return Err(ActionError::DuplicatePoint { point: p });
            }
        }
        Ok(())
    }

    /// Realized permutations of a point tuple under this action.
    pub fn realized_permutations(&self, points: &[usize]) -> Result<RealizedImage, ActionError> {
        self.check_tuple(points)?;
        Ok(realized_image(
            self.group.order(),
            points,
            |g, p| self.act(g, p),
            |a, b| self.group.prod(a, b),
        ))
    }

    /// True iff every permutation of the point tuple is realized by some
    /// group element.
    pub fn is_totally_symmetric(&self, points: &[usize]) -> Result<bool, ActionError> {
        let realized = self.realized_permutations(points)?;
        Ok(image_is_full(
            realized.image.len(),
            points.len(),
            self.group.order(),
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CollapseError {
    #[error("source and target actions must share the acting group")]
    DifferentGroups,
    #[error("map must assign every source point (got {got}, need {need})")]
    WrongMapLength { got: usize, need: usize },
    #[error("map image {image} out of range for the target action")]
    MapImageOutOfRange { image: usize },
    #[error("the input tuple is not totally symmetric in the source action")]
    InputNotTotallySymmetric,
    #[error("map is not equivariant: f(act({g}, {point})) != act({g}, f({point}))")]
    NotEquivariant { g: usize, point: usize },
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("dichotomy violated: |f(Y)| = {image_size} for |Y| = {input_size}")]
    DichotomyViolation { image_size: usize, input_size: usize },
    #[error("f(Y) has full size {size} but is not totally symmetric in the target")]
    ImageNotTotallySymmetric { size: usize },
}

/// Which branch of the collapse dichotomy occurred.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CollapseOutcome {
    /// `|f(Y)| = 1`; the single image point.
    Collapsed { image_point: usize },
    /// `|f(Y)| = |Y|` and the image is totally symmetric; distinct image
    /// points in tuple order.
    Faithful { image_points: Vec<usize> },
}

/// Verifies the collision-implies-collapse dichotomy for a candidate
/// equivariant map `f` (given as a point-index table from `a` to `b`) on a
/// totally symmetric tuple `y`: equivariance is checked exhaustively first,
/// then `|f(Y)| ∈ {1, |Y|}` and total symmetry of a full-size image.
pub fn check_collapse<L: Clone, M: Clone>(
    a: &FiniteAction<'_, L>,
    b: &FiniteAction<'_, M>,
    f: &[usize],
    y: &[usize],
) -> Result<CollapseOutcome, CollapseError> {
    if !std::ptr::eq(a.group, b.group) {
        return Err(CollapseError::DifferentGroups);
    }
    if f.len() != a.point_count() {
        return Err(CollapseError::WrongMapLength {
            got: f.len(),
            need: a.point_count(),
        });
    }
    for &image in f {
        if image >= b.point_count() {
            return Err(CollapseError::MapImageOutOfRange { image });
        }
    }
    a.check_tuple(y)?;
    if !a.is_totally_symmetric(y)? {
        return Err(CollapseError::InputNotTotallySymmetric);
    }
    for g in 0..a.group.order() {
        for p in 0..a.point_count() {
            if f[a.act(g, p)] != b.act(g, f[p]) {
                return Err(CollapseError::NotEquivariant { g, point: p });
            }
        }
    }

    let image_points: Vec<usize> = y.iter().map(|&p| f[p]).collect();
    let distinct: HashSet<usize> = image_points.iter().copied().collect();
    if distinct.len() == 1 {
        return Ok(CollapseOutcome::Collapsed {
            image_point: image_points[0],
        });
    }
    if distinct.len() != y.len() {
        return Err(CollapseError::DichotomyViolation {
            image_size: distinct.len(),
            input_size: y.len(),
        });
    }
    if !b.is_totally_symmetric(&image_points)? {
        return Err(CollapseError::ImageNotTotallySymmetric {
            size: image_points.len(),
        });
    }
    Ok(CollapseOutcome::Faithful { image_points })
}
