//! Permutations of `{1..n}` stored as dense image tables.
//!
//! Composition is right-to-left throughout the crate: `compose(p, q)` applies
//! `q` first, so the result maps `i` to `p(q(i))`. Points are 1-based in all
//! text I/O and 0-based internally.

use std::fmt;

use thiserror::Error;

/// Largest `n` for which [`enumerate_sym`] will materialize `S_n` by default
/// (8! = 40 320 elements).
pub const SYM_ENUM_CAP: usize = 8;

/// Errors from parsing cycle notation or an image array.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("point {point} repeated at byte {at}")]
    RepeatedPoint { point: usize, at: usize },
    #[error("point {point} out of range 1..={degree} at byte {at}")]
    PointOutOfRange { point: usize, degree: usize, at: usize },
    #[error("malformed permutation at byte {at}: {reason}")]
    Malformed { at: usize, reason: String },
    #[error("image array has length {got}, expected degree {degree}")]
    WrongLength { got: usize, degree: usize },
    #[error("image array is not a bijection of 1..={degree}")]
    NotBijective { degree: usize },
}

/// A permutation of the points `{1..n}`.
///
/// `images[i]` is the (0-based) image of point `i`. The derived ordering is
/// lexicographic on the image table, which is the canonical element order
/// used for every deterministic enumeration in the crate; the identity is
/// always minimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    /// The identity on `n` points.
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    /// Builds a permutation from a 0-based image table, validating that it
    /// is a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self, ParseError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if (im as usize) >= n || seen[im as usize] {
                return Err(ParseError::NotBijective { degree: n });
            }
            seen[im as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation (`"(1 2)(3 4)"`, `"e"` or `"()"` for the
    /// identity) or a 1-based image array (`"[2,1,4,3]"`).
    pub fn parse(text: &str, degree: usize) -> Result<Self, ParseError> {
        let trimmed = text.trim();
        if trimmed.starts_with('[') {
            return Self::parse_image_array(trimmed, degree);
        }
        Self::parse_cycles(trimmed, degree)
    }

    fn parse_image_array(text: &str, degree: usize) -> Result<Self, ParseError> {
        let inner = text
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| ParseError::Malformed {
                at: text.len(),
                reason: "unterminated image array".into(),
            })?;
        let mut images = Vec::with_capacity(degree);
        for part in inner.split(',') {
            let part = part.trim();
            let v: usize = part.parse().map_err(|_| ParseError::Malformed {
                at: 0,
                reason: format!("bad image entry {part:?}"),
            })?;
            if v < 1 || v > degree {
                return Err(ParseError::PointOutOfRange {
                    point: v,
                    degree,
                    at: 0,
                });
            }
            images.push((v - 1) as u32);
        }
        if images.len() != degree {
            return Err(ParseError::WrongLength {
                got: images.len(),
                degree,
            });
        }
        Self::from_images(images)
    }

    fn parse_cycles(text: &str, degree: usize) -> Result<Self, ParseError> {
        if text == "e" || text == "()" {
            return Ok(Self::identity(degree));
        }
        if text.is_empty() {
            return Err(ParseError::Malformed {
                at: 0,
                reason: "empty input".into(),
            });
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            match bytes[i] {
                b' ' | b'\t' => i += 1,
                b'(' => {
                    let open = i;
                    i += 1;
                    let mut cycle: Vec<usize> = Vec::new();
                    loop {
                        while i < bytes.len() && (bytes[i] == b' ' || bytes[i] == b',') {
                            i += 1;
                        }
                        if i >= bytes.len() {
                            return Err(ParseError::Malformed {
                                at: open,
                                reason: "unclosed cycle".into(),
                            });
                        }
                        if bytes[i] == b')' {
                            i += 1;
                            break;
                        }
                        let start = i;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        if start == i {
                            return Err(ParseError::Malformed {
                                at: i,
                                reason: format!("unexpected character {:?}", bytes[i] as char),
                            });
                        }
                        let point: usize = text[start..i].parse().map_err(|_| {
                            ParseError::Malformed {
                                at: start,
                                reason: "point does not fit".into(),
                            }
                        })?;
                        if point < 1 || point > degree {
                            return Err(ParseError::PointOutOfRange {
                                point,
                                degree,
                                at: start,
                            });
                        }
                        if used[point - 1] {
                            return Err(ParseError::RepeatedPoint { point, at: start });
                        }
                        used[point - 1] = true;
                        cycle.push(point - 1);
                    }
                    // Each cycle point maps to its successor.
                    if cycle.len() >= 2 {
                        for w in 0..cycle.len() {
                            images[cycle[w]] = cycle[(w + 1) % cycle.len()] as u32;
                        }
                    }
                }
                other => {
                    return Err(ParseError::Malformed {
                        at: i,
                        reason: format!("unexpected character {:?}", other as char),
                    });
                }
            }
        }
        Ok(Permutation { images })
    }

    /// Number of points acted on.
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of a 0-based point.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// The raw 0-based image table.
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| im as usize == i)
    }

    /// `self ∘ other`: applies `other` first.
    ///
    /// Panics if the degrees differ; mixed-degree data is rejected when a
    /// group is built, so this is a programming error by then.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            other.degree(),
            "compose: degree mismatch ({} vs {})",
            self.degree(),
            other.degree()
        );
        let images = other.images.iter().map(|&q| self.images[q as usize]).collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `self · x · self⁻¹`. Preserves cycle type.
    pub fn conjugate(&self, x: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            x.degree(),
            "conjugate: degree mismatch ({} vs {})",
            self.degree(),
            x.degree()
        );
        // g x g⁻¹ sends g(i) to g(x(i)): relabel x's points through g.
        let mut images = vec![0u32; self.degree()];
        for i in 0..self.degree() {
            images[self.apply(i)] = self.apply(x.apply(i)) as u32;
        }
        Permutation { images }
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let mut base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = base.compose(&acc);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Nontrivial cycles, each rotated to start at its minimal point, sorted
    /// by that point. 0-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut parts: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType {
            parts,
            degree: self.degree(),
        }
    }

    /// Multiplicative order: lcm of the cycle lengths.
    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1usize, |acc, c| lcm(acc, c.len()))
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Writes `self` as a product of adjacent transpositions: the returned
    /// indices `v` satisfy `s_{v[0]} ∘ s_{v[1]} ∘ … ∘ s_{v[last]} = self`,
    /// where `s_i` swaps points `i` and `i+1` (0-based).
    pub fn adjacent_factorization(&self) -> Vec<usize> {
        let mut work: Vec<u32> = self.images.clone();
        let mut swaps = Vec::new();
        // Bubble sort; each recorded swap right-multiplies by s_i, so the
        // factorization is the swap sequence reversed.
        loop {
            let mut swapped = false;
            for i in 0..work.len().saturating_sub(1) {
                if work[i] > work[i + 1] {
                    work.swap(i, i + 1);
                    swaps.push(i);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        swaps.reverse();
        swaps
    }
}

/// The adjacent transposition `(i+1, i+2)` in 1-based terms: swaps 0-based
/// points `i` and `i+1` of `{0..n-1}`.
pub fn adjacent_transposition(n: usize, i: usize) -> Permutation {
    assert!(i + 1 < n);
    let mut images: Vec<u32> = (0..n as u32).collect();
    images.swap(i, i + 1);
    Permutation { images }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Permutation {
    /// Disjoint cycle notation with 1-based points; the identity prints as
    /// `e`. Round-trips through [`Permutation::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "e");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Multiset of nontrivial cycle lengths, sorted descending. Fixed points are
/// omitted, so the identity has an empty part list. Invariant under
/// conjugation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    parts: Vec<usize>,
    degree: usize,
}

impl CycleType {
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Error from [`enumerate_sym`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("S_{n} exceeds the enumeration cap of {cap}")]
pub struct EnumCapExceeded {
    pub n: usize,
    pub cap: usize,
}

/// All of `S_n` in lexicographic image-table order (so the identity comes
/// first), with the default cap of [`SYM_ENUM_CAP`].
pub fn enumerate_sym(n: usize) -> Result<Vec<Permutation>, EnumCapExceeded> {
    enumerate_sym_capped(n, SYM_ENUM_CAP)
}

/// [`enumerate_sym`] with an explicit cap.
pub fn enumerate_sym_capped(n: usize, cap: usize) -> Result<Vec<Permutation>, EnumCapExceeded> {
    if n > cap {
        return Err(EnumCapExceeded { n, cap });
    }
    let mut current: Vec<u32> = (0..n as u32).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation {
            images: current.clone(),
        });
        if !next_lex(&mut current) {
            break;
        }
    }
    Ok(out)
}

/// Advances to the lexicographically next arrangement; false once exhausted.
fn next_lex(a: &mut [u32]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse(text, degree).unwrap()
    }

    fn one_based(perm: &Permutation) -> Vec<usize> {
        perm.images().iter().map(|&i| i as usize + 1).collect()
    }

    #[test]
    fn parse_transposition() {
        assert_eq!(one_based(&p("(1 2)", 4)), vec![2, 1, 3, 4]);
    }

    #[test]
    fn parse_disjoint_product() {
        assert_eq!(one_based(&p("(1 2)(3 4)", 4)), vec![2, 1, 4, 3]);
    }

    #[test]
    fn parse_four_cycle() {
        assert_eq!(one_based(&p("(1 2 3 4)", 4)), vec![2, 3, 4, 1]);
    }

    #[test]
    fn parse_identity_spellings() {
        assert_eq!(p("e", 3), Permutation::identity(3));
        assert_eq!(p("()", 3), Permutation::identity(3));
    }

    #[test]
    fn parse_image_array() {
        assert_eq!(p("[2,1,4,3]", 4), p("(1 2)(3 4)", 4));
    }

    #[test]
    fn parse_rejects_repeated_point() {
        assert!(matches!(
            Permutation::parse("(1 2)(2 3)", 4),
            Err(ParseError::RepeatedPoint { point: 2, .. })
        ));
    }

    #[test]
    fn parse_rejects_point_out_of_range() {
        assert!(matches!(
            Permutation::parse("(1 5)", 4),
            Err(ParseError::PointOutOfRange { point: 5, .. })
        ));
    }

    #[test]
    fn parse_rejects_malformed() {
        assert!(Permutation::parse("(1 2", 4).is_err());
        assert!(Permutation::parse("1 2)", 4).is_err());
        assert!(Permutation::parse("(1 2))", 4).is_err());
    }

    // Oracle for the composition convention: evaluate p(q(i)) point by point.
    fn compose_oracle(p: &Permutation, q: &Permutation) -> Vec<usize> {
        (0..p.degree()).map(|i| p.apply(q.apply(i))).collect()
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let a = p("(1 2)", 3);
        let b = p("(2 3)", 3);
        let ab = a.compose(&b);
        let expect: Vec<usize> = compose_oracle(&a, &b);
        assert_eq!(
            ab.images().iter().map(|&i| i as usize).collect::<Vec<_>>(),
            expect
        );
        assert_eq!(ab, p("(1 2 3)", 3));
    }

    #[test]
    fn compose_identity_and_inverse_laws() {
        let x = p("(1 3 4)(2 5)", 5);
        assert_eq!(x.compose(&Permutation::identity(5)), x);
        assert_eq!(x.compose(&x.inverse()), Permutation::identity(5));
    }

    #[test]
    #[should_panic(expected = "degree mismatch")]
    fn compose_rejects_mixed_degrees() {
        let _ = p("(1 2)", 3).compose(&p("(1 2)", 4));
    }

    // Conjugation oracle: relabel the points of x through g and rebuild.
    fn conjugate_oracle(g: &Permutation, x: &Permutation) -> Permutation {
        let mut images = vec![0u32; g.degree()];
        for i in 0..g.degree() {
            images[g.apply(i)] = g.apply(x.apply(i)) as u32;
        }
        Permutation::from_images(images).unwrap()
    }

    #[test]
    fn conjugate_relabels_points() {
        let g = p("(2 3)", 4);
        let x = p("(1 2)(3 4)", 4);
        assert_eq!(g.conjugate(&x), conjugate_oracle(&g, &x));
        assert_eq!(g.conjugate(&x), p("(1 3)(2 4)", 4));

        let g2 = p("(1 3)", 4);
        assert_eq!(g2.conjugate(&x), conjugate_oracle(&g2, &x));
        assert_eq!(g2.conjugate(&x), p("(1 4)(2 3)", 4));
    }

    #[test]
    fn conjugate_by_identity_is_noop() {
        let x = p("(1 2 3)", 5);
        assert_eq!(Permutation::identity(5).conjugate(&x), x);
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(p("(1 2)(3 4)", 4).cycle_type().parts(), &[2, 2]);
        assert_eq!(p("e", 5).cycle_type().parts(), &[] as &[usize]);
        assert_eq!(p("(1 2 3)(4 5)", 5).cycle_type().parts(), &[3, 2]);
    }

    #[test]
    fn cycle_type_preserved_by_conjugation() {
        let sym = enumerate_sym(4).unwrap();
        let x = p("(1 2 3)", 4);
        for g in &sym {
            assert_eq!(g.conjugate(&x).cycle_type(), x.cycle_type());
        }
    }

    #[test]
    fn enumerate_sym_counts_and_order() {
        assert_eq!(enumerate_sym(3).unwrap().len(), 6);
        let s4 = enumerate_sym(4).unwrap();
        assert_eq!(s4.len(), 24);
        assert_eq!(s4[0], Permutation::identity(4));
        assert!(s4.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(enumerate_sym(6).unwrap().len(), 720);
    }

    #[test]
    fn enumerate_sym_respects_cap() {
        assert!(enumerate_sym(9).is_err());
        assert!(enumerate_sym_capped(4, 3).is_err());
    }

    #[test]
    fn display_round_trips_s5() {
        for perm in enumerate_sym(5).unwrap() {
            let text = perm.to_string();
            assert_eq!(Permutation::parse(&text, 5).unwrap(), perm);
        }
    }

    #[test]
    fn order_and_sign() {
        assert_eq!(p("(1 2 3)(4 5)", 5).order(), 6);
        assert_eq!(p("(1 2 3 4)", 4).sign(), -1);
        assert_eq!(p("(1 2 3)", 4).sign(), 1);
        assert_eq!(p("e", 4).order(), 1);
    }

    #[test]
    fn pow_matches_repeated_composition() {
        let c = p("(1 2 3 4 5)", 5);
        assert_eq!(c.pow(0), Permutation::identity(5));
        assert_eq!(c.pow(3), c.compose(&c).compose(&c));
        assert_eq!(c.pow(-1), c.inverse());
        assert_eq!(c.pow(5), Permutation::identity(5));
    }

    #[test]
    fn adjacent_factorization_recomposes() {
        for perm in enumerate_sym(5).unwrap() {
            let factors = perm.adjacent_factorization();
            let mut acc = Permutation::identity(5);
            for &i in factors.iter().rev() {
                acc = adjacent_transposition(5, i).compose(&acc);
            }
            assert_eq!(acc, perm, "factorization of {perm}");
        }
    }
}
