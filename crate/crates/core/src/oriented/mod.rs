//! Oriented matroids given by signed circuits and cocircuits.

mod digraph;
mod matrix;

pub use digraph::{Arc, Digraph};

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ground::{ElementSet, GroundSet, SignedSubset};
use crate::matroid::{is_matroid_perspective, Matroid, MatroidPerspective, PerspectiveCheck};

#[derive(Clone)]
pub struct OrientedMatroid {
    ground: GroundSet,
    circuits: Vec<SignedSubset>,
    cocircuits: Vec<SignedSubset>,
    underlying: Matroid,
}

impl PartialEq for OrientedMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground
            && self.circuits == other.circuits
            && self.cocircuits == other.cocircuits
    }
}

impl Eq for OrientedMatroid {}

impl fmt::Debug for OrientedMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |xs: &[SignedSubset]| -> Vec<String> {
            xs.iter().map(|x| self.ground.fmt_signed(*x)).collect()
        };
        f.debug_struct("OrientedMatroid")
            .field("elements", &self.ground.labels())
            .field("circuits", &show(&self.circuits))
            .field("cocircuits", &show(&self.cocircuits))
            .finish()
    }
}

/// Closes under negation, sorts, and checks that each support carries a
/// single ± pair.
fn close_signed(ground: &GroundSet, family: impl IntoIterator<Item = SignedSubset>) -> Result<Vec<SignedSubset>> {
    let mut by_support: BTreeMap<ElementSet, SignedSubset> = BTreeMap::new();
    for x in family {
        ground.check(x.support())?;
        // representative positive on the smallest element
        let rep = match x.min() {
            Some(m) if x.neg().contains(m) => x.negate(),
            _ => x,
        };
        match by_support.get(&x.support()) {
            Some(prev) if *prev != rep => {
                return Err(Error::SameSupport(ground.fmt_set(x.support())));
            }
            _ => {
                by_support.insert(x.support(), rep);
            }
        }
    }
    let mut out: Vec<SignedSubset> = by_support
        .values()
        .flat_map(|x| [*x, x.negate()])
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Minimal non-empty supports among the restrictions of `family` to `keep`,
/// renumbered onto `keep`.
fn minimal_restrictions(family: &[SignedSubset], keep: ElementSet) -> Vec<SignedSubset> {
    let restricted: Vec<SignedSubset> = family
        .iter()
        .map(|x| x.compress(keep))
        .filter(|x| !x.is_empty())
        .collect();
    let mut out: Vec<SignedSubset> = restricted
        .iter()
        .filter(|x| {
            !restricted
                .iter()
                .any(|y| y.support() != x.support() && y.support().is_subset(x.support()))
        })
        .copied()
        .collect();
    out.sort();
    out.dedup();
    out
}

impl OrientedMatroid {
    /// Assembles an oriented matroid from both signed families and checks the
    /// structural invariants: circuit axioms on the supports, cocircuit
    /// supports equal to the dual circuits, and orthogonality.
    pub fn from_parts(
        ground: GroundSet,
        circuits: impl IntoIterator<Item = SignedSubset>,
        cocircuits: impl IntoIterator<Item = SignedSubset>,
    ) -> Result<Self> {
        let circuits = close_signed(&ground, circuits)?;
        let cocircuits = close_signed(&ground, cocircuits)?;
        let underlying = Matroid::from_circuits(ground.clone(), supports(&circuits))?;
        if supports(&cocircuits) != underlying.cocircuits() {
            return Err(Error::Inconsistent(
                "cocircuit supports are not the circuits of the dual matroid".into(),
            ));
        }
        let om = OrientedMatroid {
            ground,
            circuits,
            cocircuits,
            underlying,
        };
        if let Some((c, d)) = om.orthogonality_violation() {
            return Err(Error::Inconsistent(format!(
                "circuit {} is not orthogonal to cocircuit {}",
                om.ground.fmt_signed(c),
                om.ground.fmt_signed(d)
            )));
        }
        Ok(om)
    }

    /// Builds an oriented matroid from its signed circuits (one member of each
    /// ± pair suffices). Cocircuit signs are recovered as the unique sign
    /// patterns on the dual circuits that are orthogonal to every circuit.
    pub fn from_circuits(ground: GroundSet, circuits: impl IntoIterator<Item = SignedSubset>) -> Result<Self> {
        let circuits = close_signed(&ground, circuits)?;
        let underlying = Matroid::from_circuits(ground.clone(), supports(&circuits))?;
        let mut cocircuits = Vec::new();
        for &d in underlying.cocircuits() {
            let first = d.min().expect("cocircuits are non-empty");
            let rest = d.without(first);
            let found: Vec<SignedSubset> = rest
                .subsets()
                .map(|neg| SignedSubset::new(d - neg, neg).expect("disjoint by construction"))
                .filter(|x| circuits.iter().all(|c| c.is_orthogonal(*x)))
                .collect();
            if found.len() != 1 {
                return Err(Error::OrthogonalityCompletion(ground.fmt_set(d), found.len()));
            }
            cocircuits.push(found[0]);
            cocircuits.push(found[0].negate());
        }
        cocircuits.sort();
        Ok(OrientedMatroid {
            ground,
            circuits,
            cocircuits,
            underlying,
        })
    }

    pub fn from_digraph(graph: &Digraph) -> Result<Self> {
        digraph::oriented_matroid(graph)
    }

    pub fn from_matrix<T: crate::Field, S: Into<String>>(
        columns: &crate::Matrix<T>,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        matrix::oriented_matroid(columns, labels)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    /// Signed circuits, closed under negation, sorted.
    pub fn circuits(&self) -> &[SignedSubset] {
        &self.circuits
    }

    /// Signed cocircuits, closed under negation, sorted.
    pub fn cocircuits(&self) -> &[SignedSubset] {
        &self.cocircuits
    }

    pub fn underlying(&self) -> &Matroid {
        &self.underlying
    }

    pub fn rank(&self) -> usize {
        self.underlying.rank()
    }

    pub fn orthogonality_violation(&self) -> Option<(SignedSubset, SignedSubset)> {
        self.circuits.iter().find_map(|&c| {
            self.cocircuits
                .iter()
                .find(|d| !c.is_orthogonal(**d))
                .map(|&d| (c, d))
        })
    }

    /// `-_A M`: signs flipped on `a`.
    pub fn reorient(&self, a: ElementSet) -> Result<Self> {
        self.ground.check(a)?;
        let flip = |xs: &[SignedSubset]| {
            let mut out: Vec<SignedSubset> = xs.iter().map(|x| x.reorient(a)).collect();
            out.sort();
            out
        };
        Ok(OrientedMatroid {
            ground: self.ground.clone(),
            circuits: flip(&self.circuits),
            cocircuits: flip(&self.cocircuits),
            underlying: self.underlying.clone(),
        })
    }

    /// Circuits and cocircuits exchanged.
    pub fn dual(&self) -> Self {
        OrientedMatroid {
            ground: self.ground.clone(),
            circuits: self.cocircuits.clone(),
            cocircuits: self.circuits.clone(),
            underlying: self.underlying.dual(),
        }
    }

    /// Supports of the circuits that become positive after reorienting `a`.
    pub fn positive_circuits_after(&self, a: ElementSet) -> impl Iterator<Item = ElementSet> + '_ {
        positive_after(&self.circuits, a)
    }

    /// Supports of the cocircuits that become positive after reorienting `a`.
    pub fn positive_cocircuits_after(&self, a: ElementSet) -> impl Iterator<Item = ElementSet> + '_ {
        positive_after(&self.cocircuits, a)
    }

    pub fn positive_circuits(&self) -> Vec<SignedSubset> {
        self.circuits.iter().copied().filter(|c| c.is_positive()).collect()
    }

    pub fn positive_cocircuits(&self) -> Vec<SignedSubset> {
        self.cocircuits.iter().copied().filter(|c| c.is_positive()).collect()
    }

    /// No positive circuit.
    pub fn is_acyclic(&self) -> bool {
        !self.circuits.iter().any(|c| c.is_positive())
    }

    /// No positive cocircuit.
    pub fn is_totally_cyclic(&self) -> bool {
        !self.cocircuits.iter().any(|c| c.is_positive())
    }

    /// `M \ F` on `E - F`.
    pub fn delete(&self, f: ElementSet) -> Result<Self> {
        self.ground.check(f)?;
        let keep = self.ground.full() - f;
        let circuits = self
            .circuits
            .iter()
            .filter(|c| c.support().is_disjoint(f))
            .map(|c| c.compress(keep));
        let cocircuits = minimal_restrictions(&self.cocircuits, keep);
        OrientedMatroid::from_parts(self.ground.restrict(keep), circuits, cocircuits)
    }

    /// `M / F` on `E - F`.
    pub fn contract(&self, f: ElementSet) -> Result<Self> {
        self.ground.check(f)?;
        let keep = self.ground.full() - f;
        let circuits = minimal_restrictions(&self.circuits, keep);
        let cocircuits = self
            .cocircuits
            .iter()
            .filter(|d| d.support().is_disjoint(f))
            .map(|d| d.compress(keep));
        OrientedMatroid::from_parts(self.ground.restrict(keep), circuits, cocircuits)
    }

    /// The same oriented matroid with its elements listed in another order.
    pub fn with_order<S: AsRef<str>>(&self, order: &[S]) -> Result<Self> {
        let (ground, perm) = self.ground.reorder(order)?;
        let relabel = |xs: &[SignedSubset]| {
            let mut out: Vec<SignedSubset> = xs.iter().map(|x| x.permute(&perm)).collect();
            // keep the representative convention: positive on the minimum
            out.sort();
            out
        };
        Ok(OrientedMatroid {
            circuits: relabel(&self.circuits),
            cocircuits: relabel(&self.cocircuits),
            underlying: self.underlying.with_order(order)?,
            ground,
        })
    }
}

fn supports(xs: &[SignedSubset]) -> Vec<ElementSet> {
    let mut out: Vec<ElementSet> = xs.iter().map(|x| x.support()).collect();
    out.dedup();
    out
}

fn positive_after(xs: &[SignedSubset], a: ElementSet) -> impl Iterator<Item = ElementSet> + '_ {
    xs.iter()
        .filter(move |x| x.is_positive_after(a))
        .map(|x| x.support())
}

/// Tests whether `m → n` is an oriented matroid perspective: no circuit of
/// `m` meets a cocircuit of `n` in a non-empty conformal intersection. When
/// the test passes, the underlying matroids are checked to form a matroid
/// perspective as well.
pub fn is_om_perspective(
    m: &OrientedMatroid,
    n: &OrientedMatroid,
) -> Result<PerspectiveCheck<SignedSubset>> {
    if m.ground() != n.ground() {
        return Err(Error::AmbientMismatch);
    }
    let witness = m.circuits().iter().find_map(|&c| {
        n.cocircuits()
            .iter()
            .find(|&&d| !(c.support() & d.support()).is_empty() && c.is_conformal(d))
            .map(|&d| (c, d))
    });
    if witness.is_none() && !is_matroid_perspective(m.underlying(), n.underlying())?.holds() {
        return Err(Error::Inconsistent(
            "oriented perspective whose underlying matroids are not a perspective".into(),
        ));
    }
    Ok(PerspectiveCheck { witness })
}

/// A validated oriented matroid perspective `m → n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OMPerspective {
    m: OrientedMatroid,
    n: OrientedMatroid,
    underlying: MatroidPerspective,
}

impl OMPerspective {
    pub fn new(m: OrientedMatroid, n: OrientedMatroid) -> Result<Self> {
        let check = is_om_perspective(&m, &n)?;
        if let Some((c, d)) = check.witness {
            return Err(Error::NotAPerspective {
                circuit: m.ground().fmt_signed(c),
                cocircuit: m.ground().fmt_signed(d),
            });
        }
        let underlying = MatroidPerspective::new(m.underlying().clone(), n.underlying().clone())?;
        Ok(OMPerspective { m, n, underlying })
    }

    /// `m → m`.
    pub fn identity(m: OrientedMatroid) -> Self {
        let underlying = MatroidPerspective::identity(m.underlying().clone());
        OMPerspective {
            n: m.clone(),
            m,
            underlying,
        }
    }

    /// `(L \ F, L / F)`.
    pub fn minor(l: &OrientedMatroid, f: ElementSet) -> Result<Self> {
        OMPerspective::new(l.delete(f)?, l.contract(f)?)
    }

    pub fn m(&self) -> &OrientedMatroid {
        &self.m
    }

    pub fn n(&self) -> &OrientedMatroid {
        &self.n
    }

    pub fn ground(&self) -> &GroundSet {
        self.m.ground()
    }

    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    pub fn underlying(&self) -> &MatroidPerspective {
        &self.underlying
    }

    /// `n* → m*`.
    pub fn dual(&self) -> Result<Self> {
        OMPerspective::new(self.n.dual(), self.m.dual())
    }

    /// `-_A m → -_A n`.
    pub fn reorient(&self, a: ElementSet) -> Result<Self> {
        Ok(OMPerspective {
            m: self.m.reorient(a)?,
            n: self.n.reorient(a)?,
            underlying: self.underlying.clone(),
        })
    }

    pub fn with_order<S: AsRef<str>>(&self, order: &[S]) -> Result<Self> {
        OMPerspective::new(self.m.with_order(order)?, self.n.with_order(order)?)
    }
}
