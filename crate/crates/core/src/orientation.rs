//! Orientation activities of oriented matroid perspectives: active and
//! dual-active elements, the active filtration and partition, the refined
//! activity parameters of a reorientation, and activity classes.
//!
//! A reorientation `-_A M → -_A N` is identified with the subset `A`; all
//! functions below take the reference perspective and `A` rather than
//! materializing the reoriented matroids.

use crate::error::{Error, Result};
use crate::ground::{Element, ElementSet};
use crate::guard::SizeGuard;
use crate::oriented::{OMPerspective, OrientedMatroid};

/// Active elements `O(M)` (minima of positive circuits) and dual-active
/// elements `O*(M)` (minima of positive cocircuits).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Activities {
    pub active: ElementSet,
    pub dual_active: ElementSet,
}

fn minima(supports: impl Iterator<Item = ElementSet>) -> ElementSet {
    supports.filter_map(ElementSet::min).collect()
}

pub fn activities(m: &OrientedMatroid) -> Activities {
    Activities {
        active: minima(m.positive_circuits_after(ElementSet::EMPTY)),
        dual_active: minima(m.positive_cocircuits_after(ElementSet::EMPTY)),
    }
}

/// `V(M; e)`: union of the positive circuits of `M` whose smallest element is
/// at least `e`.
pub fn vector_closure(m: &OrientedMatroid, e: Element) -> ElementSet {
    vector_closure_after(m, ElementSet::EMPTY, e)
}

/// `V(-_A M; e)`.
pub fn vector_closure_after(m: &OrientedMatroid, a: ElementSet, e: Element) -> ElementSet {
    m.positive_circuits_after(a)
        .filter(|c| ElementSet::min(*c).is_some_and(|x| x >= e))
        .fold(ElementSet::EMPTY, |acc, c| acc | c)
}

/// `O(-_A M)`.
pub fn active_after(p: &OMPerspective, a: ElementSet) -> ElementSet {
    minima(p.m().positive_circuits_after(a))
}

/// `O*(-_A N)`.
pub fn dual_active_after(p: &OMPerspective, a: ElementSet) -> ElementSet {
    minima(p.n().positive_cocircuits_after(a))
}

/// The nested sets `∅ = G_ε ⊂ … ⊂ G_0 ⊆ H_0 ⊂ … ⊂ H_ι = E`.
///
/// `g` lists `O(M)` increasingly and `g_sets[k]` is `G_k` for `k = 0..=ε`;
/// `h` lists `O*(N)` and `h_sets[k]` is `H_k` for `k = 0..=ι`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActiveFiltration {
    pub g: Vec<Element>,
    pub h: Vec<Element>,
    pub g_sets: Vec<ElementSet>,
    pub h_sets: Vec<ElementSet>,
}

impl ActiveFiltration {
    pub fn epsilon(&self) -> usize {
        self.g.len()
    }

    pub fn iota(&self) -> usize {
        self.h.len()
    }

    pub fn g0(&self) -> ElementSet {
        self.g_sets[0]
    }

    pub fn h0(&self) -> ElementSet {
        self.h_sets[0]
    }

    pub fn partition(&self) -> ActivePartition {
        let cyclic = self.g_sets.windows(2).map(|w| w[0] - w[1]).collect();
        let acyclic = self.h_sets.windows(2).map(|w| w[1] - w[0]).collect();
        ActivePartition {
            cyclic,
            hybrid: self.h0() - self.g0(),
            acyclic,
            g0: self.g0(),
            h0: self.h0(),
        }
    }
}

/// Cyclic parts (inside `G_0`, ordered by their minima `g_1 < … < g_ε`), the
/// hybrid part `H_0 \ G_0`, and acyclic parts (outside `H_0`, ordered by
/// `h_1 < … < h_ι`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActivePartition {
    pub cyclic: Vec<ElementSet>,
    pub hybrid: ElementSet,
    pub acyclic: Vec<ElementSet>,
    pub g0: ElementSet,
    pub h0: ElementSet,
}

impl ActivePartition {
    /// Cyclic then acyclic parts: the parts an activity class may flip.
    pub fn flippable(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.cyclic.iter().chain(self.acyclic.iter()).copied()
    }

    pub fn epsilon(&self) -> usize {
        self.cyclic.len()
    }

    pub fn iota(&self) -> usize {
        self.acyclic.len()
    }
}

fn build_filtration(
    full: ElementSet,
    positive_circuits: Vec<ElementSet>,
    positive_cocircuits: Vec<ElementSet>,
) -> ActiveFiltration {
    let union_from = |family: &[ElementSet], start: Element| {
        family
            .iter()
            .filter(|c| ElementSet::min(**c).is_some_and(|m| m >= start))
            .fold(ElementSet::EMPTY, |acc, c| acc | *c)
    };
    let g: Vec<Element> = minima(positive_circuits.iter().copied()).iter().collect();
    let h: Vec<Element> = minima(positive_cocircuits.iter().copied()).iter().collect();
    let mut g_sets: Vec<ElementSet> = g.iter().map(|&gk| union_from(&positive_circuits, gk)).collect();
    g_sets.push(ElementSet::EMPTY);
    let mut h_sets: Vec<ElementSet> = h
        .iter()
        .map(|&hk| full - union_from(&positive_cocircuits, hk))
        .collect();
    h_sets.push(full);
    ActiveFiltration { g, h, g_sets, h_sets }
}

/// Active filtration of `-_A M → -_A N`.
pub fn filtration_at(p: &OMPerspective, a: ElementSet) -> Result<ActiveFiltration> {
    p.ground().check(a)?;
    Ok(build_filtration(
        p.ground().full(),
        p.m().positive_circuits_after(a).collect(),
        p.n().positive_cocircuits_after(a).collect(),
    ))
}

pub fn active_filtration(p: &OMPerspective) -> ActiveFiltration {
    filtration_at(p, ElementSet::EMPTY).expect("empty set lies in every ground set")
}

/// Active partition of `-_A M → -_A N`.
pub fn partition_at(p: &OMPerspective, a: ElementSet) -> Result<ActivePartition> {
    Ok(filtration_at(p, a)?.partition())
}

pub fn active_partition(p: &OMPerspective) -> ActivePartition {
    active_filtration(p).partition()
}

/// The four refined activity parameters of `A` with respect to `M → N`:
/// `O*(-_A N)` and `O(-_A M)`, each split into the part outside `A` and the
/// part inside `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Theta {
    /// `Θ*_N(A) = O*(-_A N) \ A`
    pub dual_active: ElementSet,
    /// `Θ̄*_N(A) = O*(-_A N) ∩ A`
    pub dual_active_reoriented: ElementSet,
    /// `Θ_M(A) = O(-_A M) \ A`
    pub active: ElementSet,
    /// `Θ̄_M(A) = O(-_A M) ∩ A`
    pub active_reoriented: ElementSet,
}

impl Theta {
    /// Active-fixed and dual-active-fixed.
    pub fn is_fixed(&self) -> bool {
        self.active_reoriented.is_empty() && self.dual_active_reoriented.is_empty()
    }
}

pub fn theta(p: &OMPerspective, a: ElementSet) -> Result<Theta> {
    p.ground().check(a)?;
    let o_star = dual_active_after(p, a);
    let o = active_after(p, a);
    Ok(Theta {
        dual_active: o_star - a,
        dual_active_reoriented: o_star & a,
        active: o - a,
        active_reoriented: o & a,
    })
}

/// Members of the activity class of `A`: `A` symmetric-differenced with every
/// union of cyclic and acyclic parts of the active partition of the
/// `A`-reorientation. The hybrid part is never flipped. Sorted.
pub fn activity_class(p: &OMPerspective, a: ElementSet) -> Result<Vec<ElementSet>> {
    let part = partition_at(p, a)?;
    Ok(class_members(a, &part))
}

fn class_members(a: ElementSet, part: &ActivePartition) -> Vec<ElementSet> {
    let parts: Vec<ElementSet> = part.flippable().collect();
    let mut members: Vec<ElementSet> = ElementSet::full(parts.len())
        .subsets()
        .map(|pick| pick.iter().fold(a, |acc, i| acc ^ parts[i]))
        .collect();
    members.sort_unstable();
    members
}

/// The unique member of the class of `A` that is active-fixed and
/// dual-active-fixed.
pub fn canonical_representative(p: &OMPerspective, a: ElementSet) -> Result<ElementSet> {
    let members = activity_class(p, a)?;
    canonical_among(p, &members)
}

fn canonical_among(p: &OMPerspective, members: &[ElementSet]) -> Result<ElementSet> {
    let mut fixed = Vec::new();
    for &m in members {
        if theta(p, m)?.is_fixed() {
            fixed.push(m);
        }
    }
    match fixed.as_slice() {
        [one] => Ok(*one),
        _ => Err(Error::Inconsistent(format!(
            "activity class {} has {} active-fixed and dual-active-fixed members",
            p.ground().fmt_set(members[0]),
            fixed.len()
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActivityClass {
    pub representative: ElementSet,
    pub members: Vec<ElementSet>,
    /// `|O*(-_A N)|` for any member `A`.
    pub iota: usize,
    /// `|O(-_A M)|` for any member `A`.
    pub epsilon: usize,
}

/// Partitions `2^E` into activity classes. Subsets are visited in increasing
/// binary order and each unseen subset contributes its whole class.
pub fn classify_reorientations(p: &OMPerspective, guard: SizeGuard) -> Result<Vec<ActivityClass>> {
    guard.check_enumeration(p.len())?;
    let full = p.ground().full();
    let mut seen = vec![false; 1usize << p.len()];
    let mut classes = Vec::new();
    for a in full.subsets() {
        if seen[a.bits() as usize] {
            continue;
        }
        let part = partition_at(p, a)?;
        let members = class_members(a, &part);
        for m in &members {
            let slot = &mut seen[m.bits() as usize];
            if *slot {
                return Err(Error::Inconsistent(format!(
                    "reorientation {} lies in two activity classes",
                    p.ground().fmt_set(*m)
                )));
            }
            *slot = true;
        }
        classes.push(ActivityClass {
            representative: canonical_among(p, &members)?,
            members,
            iota: part.iota(),
            epsilon: part.epsilon(),
        });
    }
    Ok(classes)
}
