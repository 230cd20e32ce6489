//! Internal and external activities of arbitrary subsets, the `P`/`Q` sets,
//! and the partition of `2^E` into boolean intervals indexed by the subsets
//! that are independent in `M` and spanning in `N`.
//!
//! All functions expect `A ⊆ E`; callers holding labels go through
//! [`GroundSet::set_of`](crate::GroundSet::set_of) first.

use crate::error::{Error, Result};
use crate::ground::ElementSet;
use crate::matroid::{Matroid, MatroidPerspective};

fn minima_of<'a>(family: &'a [ElementSet], keep: impl Fn(ElementSet) -> bool + 'a) -> ElementSet {
    family
        .iter()
        .filter(|c| keep(**c))
        .filter_map(|c| ElementSet::min(*c))
        .collect()
}

/// `Int_M(A)`: elements `e ∈ A` that are the minimum of a cocircuit contained
/// in `(E \ A) ∪ {e}`.
pub fn int_act(m: &Matroid, a: ElementSet) -> ElementSet {
    debug_assert!(a.is_subset(m.ground().full()));
    let outside = m.ground().full() - a;
    minima_of(m.cocircuits(), |d| (d - outside).len() == 1) & a
}

/// `Ext_M(A)`: elements `e ∉ A` that are the minimum of a circuit contained in
/// `A ∪ {e}`.
pub fn ext_act(m: &Matroid, a: ElementSet) -> ElementSet {
    debug_assert!(a.is_subset(m.ground().full()));
    minima_of(m.circuits(), |c| (c - a).len() == 1) - a
}

/// `P_M(A)`: minima of cocircuits contained in `E \ A`.
pub fn p_set(m: &Matroid, a: ElementSet) -> ElementSet {
    let p = minima_of(m.cocircuits(), |d| d.is_disjoint(a));
    debug_assert_eq!(p.len(), m.rank() - m.rank_of(a), "|P_M(A)| = r(M) - r_M(A)");
    p
}

/// `Q_M(A)`: minima of circuits contained in `A`.
pub fn q_set(m: &Matroid, a: ElementSet) -> ElementSet {
    let q = minima_of(m.circuits(), |c| c.is_subset(a));
    debug_assert_eq!(q.len(), a.len() - m.rank_of(a), "|Q_M(A)| = |A| - r_M(A)");
    q
}

/// `r(M) - r(N) - (r_M(A) - r_N(A))`, the exponent of `z`.
pub fn rcd(p: &MatroidPerspective, a: ElementSet) -> usize {
    let (m, n) = (p.m(), p.n());
    (m.rank() + n.rank_of(a))
        .checked_sub(n.rank() + m.rank_of(a))
        .expect("rank differences grow along a perspective")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DawsonInterval {
    pub base: ElementSet,
    /// `Int_N(B)`
    pub int_set: ElementSet,
    /// `Ext_M(B)`
    pub ext_set: ElementSet,
    pub lower: ElementSet,
    pub upper: ElementSet,
    pub rcd: usize,
}

impl DawsonInterval {
    pub fn contains(&self, a: ElementSet) -> bool {
        self.lower.is_subset(a) && a.is_subset(self.upper)
    }

    pub fn len(&self) -> usize {
        1 << (self.upper - self.lower).len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn members(&self) -> impl Iterator<Item = ElementSet> + '_ {
        (self.upper - self.lower).subsets().map(move |s| self.lower | s)
    }
}

/// One interval per `B` independent in `M` and spanning in `N`, in increasing
/// binary order of `B`. Disjointness and covering of `2^E` are checked.
pub fn dawson_partition(p: &MatroidPerspective) -> Result<Vec<DawsonInterval>> {
    let (m, n) = (p.m(), p.n());
    let full = p.ground().full();
    let intervals: Vec<DawsonInterval> = full
        .subsets()
        .filter(|&b| m.is_independent(b) && n.is_spanning(b))
        .map(|base| {
            let int_set = int_act(n, base);
            let ext_set = ext_act(m, base);
            DawsonInterval {
                base,
                int_set,
                ext_set,
                lower: base - int_set,
                upper: base | ext_set,
                rcd: rcd(p, base),
            }
        })
        .collect();
    if intervals.is_empty() {
        return Err(Error::Inconsistent("no subset is independent in M and spanning in N".into()));
    }
    let mut seen = vec![false; 1usize << p.len()];
    for iv in &intervals {
        for a in iv.members() {
            let slot = &mut seen[a.bits() as usize];
            if *slot {
                return Err(Error::Inconsistent(format!(
                    "{} lies in two intervals",
                    p.ground().fmt_set(a)
                )));
            }
            *slot = true;
        }
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::Inconsistent(format!(
            "{} lies in no interval",
            p.ground().fmt_set(ElementSet::from_bits(missing as u64))
        )));
    }
    Ok(intervals)
}

/// Position of a subset inside its interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Location {
    pub base: ElementSet,
    /// `Int_N(B) \ A`, equal to `P_N(A)`.
    pub p_coord: ElementSet,
    /// `Ext_M(B) ∩ A`, equal to `Q_M(A)`.
    pub q_coord: ElementSet,
}

/// Finds the interval of `partition` containing `A` and checks the four
/// relations between the activities of `A` and of its base.
pub fn locate_interval(p: &MatroidPerspective, partition: &[DawsonInterval], a: ElementSet) -> Result<Location> {
    let iv = partition
        .iter()
        .find(|iv| iv.contains(a))
        .ok_or_else(|| Error::Inconsistent(format!("{} lies in no interval", p.ground().fmt_set(a))))?;
    let (m, n) = (p.m(), p.n());
    let loc = Location {
        base: iv.base,
        p_coord: iv.int_set - a,
        q_coord: iv.ext_set & a,
    };
    let relations = [
        ("Int_N(A) = Int_N(B) ∩ A", int_act(n, a) == iv.int_set & a),
        ("P_N(A) = Int_N(B) \\ A", p_set(n, a) == loc.p_coord),
        ("Ext_M(A) = Ext_M(B) \\ A", ext_act(m, a) == iv.ext_set - a),
        ("Q_M(A) = Ext_M(B) ∩ A", q_set(m, a) == loc.q_coord),
    ];
    if let Some((name, _)) = relations.iter().find(|(_, ok)| !ok) {
        return Err(Error::Inconsistent(format!(
            "{name} fails for A = {}",
            p.ground().fmt_set(a)
        )));
    }
    Ok(loc)
}
