//! Ordered ground sets, element sets and signed subsets.
//!
//! Elements are identified with their position `0..n` in the linear order of
//! the ground set, so that element sets are bit masks and `min` is a
//! trailing-zero count. Labels only matter for input and output.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not, Sub};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_ELEMENTS: usize = 64;

/// Position of an element in the linear order of its ground set.
pub type Element = usize;

/// A subset of an ordered ground set, stored as a bit mask.
///
/// The derived order is the order of the masks, i.e. binary counting order,
/// which is the enumeration order used for `2^E` throughout the crate.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: Element) -> Self {
        ElementSet(1u64 << e)
    }

    pub fn contains(self, e: Element) -> bool {
        e < MAX_ELEMENTS && self.0 >> e & 1 == 1
    }

    pub fn with(self, e: Element) -> Self {
        ElementSet(self.0 | 1u64 << e)
    }

    pub fn without(self, e: Element) -> Self {
        ElementSet(self.0 & !(1u64 << e))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: ElementSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest element in the ground order.
    pub fn min(self) -> Option<Element> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as Element)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// All subsets of `self`, in increasing binary order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    /// Renumbers the elements of `self ∩ keep` so that the elements of `keep`
    /// become `0..|keep|` in order. Used to pass to a minor.
    pub fn compress(self, keep: ElementSet) -> ElementSet {
        let mut out = 0u64;
        for (i, e) in keep.iter().enumerate() {
            if self.contains(e) {
                out |= 1 << i;
            }
        }
        ElementSet(out)
    }

    /// Applies `perm`, sending element `e` to `perm[e]`.
    pub fn permute(self, perm: &[Element]) -> ElementSet {
        self.iter().map(|e| perm[e]).collect()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl BitOr for ElementSet {
    type Output = ElementSet;
    fn bitor(self, rhs: Self) -> Self {
        ElementSet(self.0 | rhs.0)
    }
}

impl BitAnd for ElementSet {
    type Output = ElementSet;
    fn bitand(self, rhs: Self) -> Self {
        ElementSet(self.0 & rhs.0)
    }
}

impl BitXor for ElementSet {
    type Output = ElementSet;
    fn bitxor(self, rhs: Self) -> Self {
        ElementSet(self.0 ^ rhs.0)
    }
}

impl Sub for ElementSet {
    type Output = ElementSet;
    fn sub(self, rhs: Self) -> Self {
        ElementSet(self.0 & !rhs.0)
    }
}

impl Not for ElementSet {
    type Output = ElementSet;
    fn not(self) -> Self {
        ElementSet(!self.0)
    }
}

impl FromIterator<Element> for ElementSet {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        iter.into_iter().fold(ElementSet::EMPTY, ElementSet::with)
    }
}

impl IntoIterator for ElementSet {
    type Item = Element;
    type IntoIter = Elements;
    fn into_iter(self) -> Elements {
        self.iter()
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as Element;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some((cur.wrapping_sub(self.mask)) & self.mask)
        };
        Some(ElementSet(cur))
    }
}

/// A pair of disjoint element sets: the positive and the negative part.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SignedSubset {
    pos: ElementSet,
    neg: ElementSet,
}

impl SignedSubset {
    pub fn new(pos: ElementSet, neg: ElementSet) -> Result<Self> {
        if !pos.is_disjoint(neg) {
            return Err(Error::OverlappingSigns);
        }
        Ok(SignedSubset { pos, neg })
    }

    pub fn positive(set: ElementSet) -> Self {
        SignedSubset {
            pos: set,
            neg: ElementSet::EMPTY,
        }
    }

    pub fn pos(self) -> ElementSet {
        self.pos
    }

    pub fn neg(self) -> ElementSet {
        self.neg
    }

    pub fn support(self) -> ElementSet {
        self.pos | self.neg
    }

    pub fn is_empty(self) -> bool {
        self.support().is_empty()
    }

    pub fn min(self) -> Option<Element> {
        self.support().min()
    }

    pub fn negate(self) -> Self {
        SignedSubset {
            pos: self.neg,
            neg: self.pos,
        }
    }

    /// Sign flip on `a`.
    pub fn reorient(self, a: ElementSet) -> Self {
        SignedSubset {
            pos: (self.pos - a) | (self.neg & a),
            neg: (self.neg - a) | (self.pos & a),
        }
    }

    /// True iff every element of the support is positive.
    pub fn is_positive(self) -> bool {
        self.neg.is_empty()
    }

    /// True iff the reorientation of `self` on `a` is positive.
    pub fn is_positive_after(self, a: ElementSet) -> bool {
        self.support() & a == self.neg
    }

    /// Composition `self ∘ other`: the sign of `self` where defined, else the
    /// sign of `other`.
    pub fn compose(self, other: SignedSubset) -> SignedSubset {
        let rest = other.support() - self.support();
        SignedSubset {
            pos: self.pos | (other.pos & rest),
            neg: self.neg | (other.neg & rest),
        }
    }

    /// Elements carrying opposite signs in `self` and `other`.
    pub fn separation(self, other: SignedSubset) -> ElementSet {
        (self.pos & other.neg) | (self.neg & other.pos)
    }

    pub fn is_conformal(self, other: SignedSubset) -> bool {
        self.separation(other).is_empty()
    }

    /// Disjoint supports, or at least one agreement and one disagreement.
    pub fn is_orthogonal(self, other: SignedSubset) -> bool {
        let agree = (self.pos & other.pos) | (self.neg & other.neg);
        let disagree = self.separation(other);
        (agree.is_empty() && disagree.is_empty()) || (!agree.is_empty() && !disagree.is_empty())
    }

    pub fn compress(self, keep: ElementSet) -> Self {
        SignedSubset {
            pos: self.pos.compress(keep),
            neg: self.neg.compress(keep),
        }
    }

    pub fn permute(self, perm: &[Element]) -> Self {
        SignedSubset {
            pos: self.pos.permute(perm),
            neg: self.neg.permute(perm),
        }
    }
}

// Sorted by support first; within a ± pair the member that is positive on
// its smallest element comes first.
impl Ord for SignedSubset {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.support(), self.neg).cmp(&(other.support(), other.neg))
    }
}

impl PartialOrd for SignedSubset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SignedSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.support().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}{}", e, if self.pos.contains(e) { '+' } else { '-' })?;
        }
        write!(f, "}}")
    }
}

/// A finite linearly ordered set of labelled elements.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_ELEMENTS {
            return Err(Error::GroundTooLarge(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: Element) -> &str {
        &self.labels[e]
    }

    pub fn full(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn index_of(&self, label: &str) -> Result<Element> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: impl IntoIterator<Item = S>) -> Result<ElementSet> {
        labels
            .into_iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect()
    }

    pub fn signed_of<S: AsRef<str>>(
        &self,
        pos: impl IntoIterator<Item = S>,
        neg: impl IntoIterator<Item = S>,
    ) -> Result<SignedSubset> {
        SignedSubset::new(self.set_of(pos)?, self.set_of(neg)?)
    }

    /// Labels of `set` in increasing order.
    pub fn labels_of(&self, set: ElementSet) -> Vec<String> {
        set.iter().map(|e| self.labels[e].clone()).collect()
    }

    pub fn fmt_set(&self, set: ElementSet) -> String {
        format!("{{{}}}", self.labels_of(set).join(","))
    }

    pub fn fmt_signed(&self, x: SignedSubset) -> String {
        let parts: Vec<String> = x
            .support()
            .iter()
            .map(|e| format!("{}{}", self.labels[e], if x.pos().contains(e) { '+' } else { '-' }))
            .collect();
        format!("{{{}}}", parts.join(","))
    }

    /// The ground set restricted to `keep`, order preserved.
    pub fn restrict(&self, keep: ElementSet) -> GroundSet {
        GroundSet {
            labels: self.labels_of(keep),
        }
    }

    /// Checks that `set` lies inside this ground set.
    pub fn check(&self, set: ElementSet) -> Result<()> {
        if set.is_subset(self.full()) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn compose(&self, x: SignedSubset, y: SignedSubset) -> Result<SignedSubset> {
        self.check(x.support() | y.support())?;
        Ok(x.compose(y))
    }

    pub fn is_conformal(&self, x: SignedSubset, y: SignedSubset) -> Result<bool> {
        self.check(x.support() | y.support())?;
        Ok(x.is_conformal(y))
    }

    pub fn is_orthogonal(&self, x: SignedSubset, y: SignedSubset) -> Result<bool> {
        self.check(x.support() | y.support())?;
        Ok(x.is_orthogonal(y))
    }

    /// The same labels reordered as `order`. Returns the new ground set and
    /// the permutation taking old positions to new ones.
    pub fn reorder<S: AsRef<str>>(&self, order: &[S]) -> Result<(GroundSet, Vec<Element>)> {
        if order.len() != self.len() {
            return Err(Error::DimensionMismatch(format!(
                "element order lists {} labels, ground set has {}",
                order.len(),
                self.len()
            )));
        }
        let new = GroundSet::new(order.iter().map(|s| s.as_ref().to_string()))?;
        let perm = self
            .labels
            .iter()
            .map(|l| new.index_of(l))
            .collect::<Result<Vec<_>>>()?;
        Ok((new, perm))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn abc() -> GroundSet {
        GroundSet::new(["a", "b", "c"]).unwrap()
    }

    fn s(g: &GroundSet, pos: &[&str], neg: &[&str]) -> SignedSubset {
        g.signed_of(pos.iter().copied(), neg.iter().copied()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let g = abc();
        assert_eq!(
            g.compose(s(&g, &["a"], &[]), s(&g, &["b"], &["a"])).unwrap(),
            s(&g, &["a", "b"], &[])
        );
        assert_eq!(
            g.compose(s(&g, &[], &[]), s(&g, &[], &["b"])).unwrap(),
            s(&g, &[], &["b"])
        );
        assert_eq!(
            g.compose(s(&g, &["a", "b"], &[]), s(&g, &["c"], &[])).unwrap(),
            s(&g, &["a", "b", "c"], &[])
        );
    }

    #[test]
    fn conformal_examples() {
        let g = abc();
        assert!(g.is_conformal(s(&g, &["a", "b"], &[]), s(&g, &["b"], &["c"])).unwrap());
        assert!(!g.is_conformal(s(&g, &["a"], &[]), s(&g, &[], &["a"])).unwrap());
        assert!(g.is_conformal(s(&g, &["a"], &["b"]), s(&g, &[], &[])).unwrap());
    }

    #[test]
    fn orthogonal_examples() {
        let g = abc();
        assert!(g
            .is_orthogonal(s(&g, &["a", "b", "c"], &[]), s(&g, &["a"], &["b"]))
            .unwrap());
        assert!(!g.is_orthogonal(s(&g, &["a"], &[]), s(&g, &["a"], &[])).unwrap());
        assert!(g.is_orthogonal(s(&g, &["a"], &[]), s(&g, &[], &["b"])).unwrap());
    }

    #[test]
    fn ambient_mismatch() {
        let g = abc();
        let outside = SignedSubset::positive(ElementSet::singleton(5));
        assert_eq!(
            g.compose(outside, SignedSubset::default()),
            Err(Error::AmbientMismatch)
        );
        assert_eq!(
            g.is_orthogonal(SignedSubset::default(), outside),
            Err(Error::AmbientMismatch)
        );
    }

    #[test]
    fn overlapping_signs_rejected() {
        let g = abc();
        assert_eq!(g.signed_of(["a"], ["a"]), Err(Error::OverlappingSigns));
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert_eq!(
            GroundSet::new(["a", "b", "a"]),
            Err(Error::DuplicateLabel("a".into()))
        );
    }

    #[test]
    fn subsets_enumerates_in_binary_order() {
        let mask = ElementSet::from_bits(0b1010);
        let got: Vec<u64> = mask.subsets().map(ElementSet::bits).collect();
        assert_eq!(got, vec![0, 0b10, 0b1000, 0b1010]);
        assert_eq!(ElementSet::EMPTY.subsets().count(), 1);
        assert_eq!(ElementSet::full(5).subsets().count(), 32);
    }

    #[test]
    fn compress_renumbers() {
        let keep = ElementSet::from_bits(0b10110);
        let set = ElementSet::from_bits(0b10011);
        assert_eq!(set.compress(keep), ElementSet::from_bits(0b101));
    }

    fn signed(n: u32) -> impl Strategy<Value = SignedSubset> {
        (0u64..(1 << n), 0u64..(1 << n)).prop_map(|(p, q)| {
            SignedSubset::new(ElementSet::from_bits(p & !q), ElementSet::from_bits(q)).unwrap()
        })
    }

    proptest! {
        #[test]
        fn compose_associative_idempotent(x in signed(6), y in signed(6), z in signed(6)) {
            prop_assert_eq!(x.compose(y).compose(z), x.compose(y.compose(z)));
            prop_assert_eq!(x.compose(x), x);
            let xy = x.compose(y);
            prop_assert_eq!(xy.support(), x.support() | y.support());
            prop_assert!(x.support().is_subset(xy.support()));
        }

        #[test]
        fn relations_symmetric(x in signed(6), y in signed(6)) {
            prop_assert_eq!(x.is_conformal(y), y.is_conformal(x));
            prop_assert_eq!(x.is_orthogonal(y), y.is_orthogonal(x));
        }

        #[test]
        fn reorient_involution(x in signed(6), a in 0u64..64) {
            let a = ElementSet::from_bits(a);
            prop_assert_eq!(x.reorient(a).reorient(a), x);
            prop_assert_eq!(x.reorient(a).is_positive(), x.is_positive_after(a));
        }
    }
}
