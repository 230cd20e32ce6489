//! Matroids given by their bases, and matroid perspectives.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::ground::{ElementSet, GroundSet};

/// Ground sets up to this size get a full rank table; larger ones fall back
/// to scanning the basis list.
const RANK_TABLE_LIMIT: usize = 22;

#[derive(Clone)]
pub struct Matroid {
    ground: GroundSet,
    bases: Vec<ElementSet>,
    rank: usize,
    rank_table: OnceLock<Vec<u8>>,
    circuits: OnceLock<Vec<ElementSet>>,
    cocircuits: OnceLock<Vec<ElementSet>>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("elements", &self.ground.labels())
            .field(
                "bases",
                &self
                    .bases
                    .iter()
                    .map(|b| self.ground.fmt_set(*b))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl Matroid {
    /// Builds a matroid from its bases, checking the basis exchange axiom.
    pub fn from_bases(ground: GroundSet, bases: impl IntoIterator<Item = ElementSet>) -> Result<Self> {
        let mut bases: Vec<ElementSet> = bases.into_iter().collect();
        bases.sort_unstable();
        bases.dedup();
        let Some(first) = bases.first() else {
            return Err(Error::InvalidMatroid("no bases".into()));
        };
        let rank = first.len();
        for b in &bases {
            ground.check(*b)?;
            if b.len() != rank {
                return Err(Error::InvalidMatroid(format!(
                    "bases {} and {} have different sizes",
                    ground.fmt_set(*first),
                    ground.fmt_set(*b)
                )));
            }
        }
        let lookup: HashSet<ElementSet> = bases.iter().copied().collect();
        for &b1 in &bases {
            for &b2 in &bases {
                for e in (b1 - b2).iter() {
                    let ok = (b2 - b1).iter().any(|f| lookup.contains(&b1.without(e).with(f)));
                    if !ok {
                        return Err(Error::InvalidMatroid(format!(
                            "exchange fails for {} -{} against {}",
                            ground.fmt_set(b1),
                            ground.label(e),
                            ground.fmt_set(b2)
                        )));
                    }
                }
            }
        }
        Ok(Self::from_valid_bases(ground, bases, rank))
    }

    fn from_valid_bases(ground: GroundSet, bases: Vec<ElementSet>, rank: usize) -> Self {
        Matroid {
            ground,
            bases,
            rank,
            rank_table: OnceLock::new(),
            circuits: OnceLock::new(),
            cocircuits: OnceLock::new(),
        }
    }

    /// Builds a matroid from its circuits after checking the circuit axioms
    /// (non-empty, incomparable, elimination).
    pub fn from_circuits(ground: GroundSet, circuits: impl IntoIterator<Item = ElementSet>) -> Result<Self> {
        let mut circuits: Vec<ElementSet> = circuits.into_iter().collect();
        circuits.sort_unstable();
        circuits.dedup();
        for &c in &circuits {
            ground.check(c)?;
            if c.is_empty() {
                return Err(Error::CircuitAxiom("empty circuit".into()));
            }
        }
        for &c1 in &circuits {
            for &c2 in &circuits {
                if c1 != c2 && c1.is_subset(c2) {
                    return Err(Error::CircuitAxiom(format!(
                        "{} is contained in {}",
                        ground.fmt_set(c1),
                        ground.fmt_set(c2)
                    )));
                }
                if c1 < c2 {
                    for e in (c1 & c2).iter() {
                        let target = (c1 | c2).without(e);
                        if !circuits.iter().any(|c3| c3.is_subset(target)) {
                            return Err(Error::CircuitAxiom(format!(
                                "no circuit inside ({} ∪ {}) - {}",
                                ground.fmt_set(c1),
                                ground.fmt_set(c2),
                                ground.label(e)
                            )));
                        }
                    }
                }
            }
        }
        let full = ground.full();
        let independent: Vec<ElementSet> = full
            .subsets()
            .filter(|s| !circuits.iter().any(|c| c.is_subset(*s)))
            .collect();
        let rank = independent.iter().map(|s| s.len()).max().unwrap_or(0);
        let bases: Vec<ElementSet> = independent.into_iter().filter(|s| s.len() == rank).collect();
        let m = Self::from_bases(ground, bases)?;
        if m.circuits() != circuits.as_slice() {
            return Err(Error::CircuitAxiom(
                "circuit family does not match the circuits of the matroid it generates".into(),
            ));
        }
        Ok(m)
    }

    /// Every subset independent.
    pub fn free(ground: GroundSet) -> Self {
        let full = ground.full();
        let r = full.len();
        Self::from_valid_bases(ground, vec![full], r)
    }

    /// Uniform matroid of rank `r`.
    pub fn uniform(ground: GroundSet, r: usize) -> Result<Self> {
        if r > ground.len() {
            return Err(Error::InvalidMatroid(format!(
                "rank {r} exceeds {} elements",
                ground.len()
            )));
        }
        let bases: Vec<ElementSet> = ground.full().subsets().filter(|s| s.len() == r).collect();
        Ok(Self::from_valid_bases(ground, bases, r))
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

    pub fn bases(&self) -> &[ElementSet] {
        &self.bases
    }

    /// Rank of the matroid.
    pub fn rank(&self) -> usize {
        self.rank
    }

    fn table(&self) -> Option<&[u8]> {
        if self.len() > RANK_TABLE_LIMIT {
            return None;
        }
        Some(self.rank_table.get_or_init(|| {
            let n = self.len();
            let size = 1usize << n;
            let mut indep = vec![false; size];
            for b in &self.bases {
                indep[b.bits() as usize] = true;
            }
            for s in (0..size).rev() {
                if !indep[s] {
                    indep[s] = (0..n).any(|e| s >> e & 1 == 0 && indep[s | 1 << e]);
                }
            }
            let mut rank = vec![0u8; size];
            for s in 1..size {
                rank[s] = if indep[s] {
                    s.count_ones() as u8
                } else {
                    (0..n)
                        .filter(|e| s >> e & 1 == 1)
                        .map(|e| rank[s & !(1 << e)])
                        .max()
                        .unwrap_or(0)
                };
            }
            rank
        }))
    }

    /// Rank of a subset: the largest intersection with a basis.
    pub fn rank_of(&self, a: ElementSet) -> usize {
        match self.table() {
            Some(t) => t[a.bits() as usize] as usize,
            None => self.bases.iter().map(|b| (*b & a).len()).max().unwrap_or(0),
        }
    }

    pub fn checked_rank_of(&self, a: ElementSet) -> Result<usize> {
        self.ground.check(a)?;
        Ok(self.rank_of(a))
    }

    pub fn is_independent(&self, a: ElementSet) -> bool {
        self.rank_of(a) == a.len()
    }

    pub fn is_spanning(&self, a: ElementSet) -> bool {
        self.rank_of(a) == self.rank
    }

    pub fn is_basis(&self, a: ElementSet) -> bool {
        self.bases.binary_search(&a).is_ok()
    }

    /// Bases are the complements of the bases of `self`.
    pub fn dual(&self) -> Matroid {
        let full = self.ground.full();
        let mut bases: Vec<ElementSet> = self.bases.iter().map(|b| full - *b).collect();
        bases.sort_unstable();
        Self::from_valid_bases(self.ground.clone(), bases, self.len() - self.rank)
    }

    /// Minimal dependent sets, in increasing binary order.
    pub fn circuits(&self) -> &[ElementSet] {
        self.circuits.get_or_init(|| {
            self.ground
                .full()
                .subsets()
                .filter(|s| {
                    !self.is_independent(*s)
                        && s.iter().all(|e| self.is_independent(s.without(e)))
                })
                .collect()
        })
    }

    /// Circuits of the dual.
    pub fn cocircuits(&self) -> &[ElementSet] {
        self.cocircuits
            .get_or_init(|| self.dual().circuits().to_vec())
    }

    pub fn loops(&self) -> ElementSet {
        self.circuits()
            .iter()
            .filter(|c| c.len() == 1)
            .fold(ElementSet::EMPTY, |acc, c| acc | *c)
    }

    /// `self \ f`, on the ground set `E - f`.
    pub fn delete(&self, f: ElementSet) -> Result<Matroid> {
        self.ground.check(f)?;
        let keep = self.ground.full() - f;
        let r = self.rank_of(keep);
        let bases = self
            .bases
            .iter()
            .filter(|b| (**b - f).len() == r)
            .map(|b| b.compress(keep));
        Self::minor_from(self.ground.restrict(keep), bases, r)
    }

    /// `self / f`, on the ground set `E - f`.
    pub fn contract(&self, f: ElementSet) -> Result<Matroid> {
        self.ground.check(f)?;
        let keep = self.ground.full() - f;
        let rf = self.rank_of(f);
        let bases = self
            .bases
            .iter()
            .filter(|b| (**b & f).len() == rf)
            .map(|b| b.compress(keep));
        Self::minor_from(self.ground.restrict(keep), bases, self.rank - rf)
    }

    fn minor_from(
        ground: GroundSet,
        bases: impl Iterator<Item = ElementSet>,
        rank: usize,
    ) -> Result<Matroid> {
        let mut bases: Vec<ElementSet> = bases.collect();
        bases.sort_unstable();
        bases.dedup();
        Ok(Self::from_valid_bases(ground, bases, rank))
    }

    /// The same matroid with its elements listed in a different order.
    pub fn with_order<S: AsRef<str>>(&self, order: &[S]) -> Result<Matroid> {
        let (ground, perm) = self.ground.reorder(order)?;
        let mut bases: Vec<ElementSet> = self.bases.iter().map(|b| b.permute(&perm)).collect();
        bases.sort_unstable();
        Ok(Self::from_valid_bases(ground, bases, self.rank))
    }
}

/// Outcome of a perspective test: either it holds, or a circuit and a
/// cocircuit witnessing the failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PerspectiveCheck<W> {
    pub witness: Option<(W, W)>,
}

impl<W> PerspectiveCheck<W> {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Tests whether `m → n` is a matroid perspective. Both the rank inequality
/// and the circuit/cocircuit criterion are evaluated; a disagreement between
/// them is reported as an error.
pub fn is_matroid_perspective(m: &Matroid, n: &Matroid) -> Result<PerspectiveCheck<ElementSet>> {
    if m.ground() != n.ground() {
        return Err(Error::AmbientMismatch);
    }
    // The rank inequality for all Y ⊆ X telescopes to single-element steps.
    let full = m.ground().full();
    let rank_ok = full.subsets().all(|y| {
        (full - y).iter().all(|e| {
            let x = y.with(e);
            n.rank_of(x) + m.rank_of(y) <= m.rank_of(x) + n.rank_of(y)
        })
    });
    let witness = m.circuits().iter().find_map(|&c| {
        n.cocircuits()
            .iter()
            .find(|&&d| (c & d).len() == 1)
            .map(|&d| (c, d))
    });
    if rank_ok != witness.is_none() {
        return Err(Error::Inconsistent(format!(
            "rank criterion says {rank_ok}, circuit/cocircuit criterion disagrees"
        )));
    }
    Ok(PerspectiveCheck { witness })
}

/// A validated matroid perspective `m → n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidPerspective {
    m: Matroid,
    n: Matroid,
}

impl MatroidPerspective {
    pub fn new(m: Matroid, n: Matroid) -> Result<Self> {
        let check = is_matroid_perspective(&m, &n)?;
        if let Some((c, d)) = check.witness {
            return Err(Error::NotAPerspective {
                circuit: m.ground().fmt_set(c),
                cocircuit: m.ground().fmt_set(d),
            });
        }
        Ok(MatroidPerspective { m, n })
    }

    /// `m → m`.
    pub fn identity(m: Matroid) -> Self {
        MatroidPerspective { n: m.clone(), m }
    }

    pub fn m(&self) -> &Matroid {
        &self.m
    }

    pub fn n(&self) -> &Matroid {
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

    /// `n* → m*`.
    pub fn dual(&self) -> Result<MatroidPerspective> {
        MatroidPerspective::new(self.n.dual(), self.m.dual())
    }
}

/// `(L \ F, L / F)` on `E = ground(L) - F`.
pub fn minor_perspective(l: &Matroid, f: ElementSet) -> Result<MatroidPerspective> {
    MatroidPerspective::new(l.delete(f)?, l.contract(f)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(labels: &[&str]) -> GroundSet {
        GroundSet::new(labels.iter().copied()).unwrap()
    }

    fn triangle() -> Matroid {
        Matroid::uniform(g(&["a", "b", "c"]), 2).unwrap()
    }

    // Underlying matroid of the quotient digraph: a ∥ b, c a loop.
    fn persp1_n() -> Matroid {
        let gr = g(&["a", "b", "c"]);
        let bases = [gr.set_of(["a"]).unwrap(), gr.set_of(["b"]).unwrap()];
        Matroid::from_bases(gr, bases).unwrap()
    }

    /// Rank straight from the definition.
    fn brute_rank(m: &Matroid, a: ElementSet) -> usize {
        m.bases().iter().map(|b| (*b & a).len()).max().unwrap()
    }

    #[test]
    fn rank_examples() {
        let t = triangle();
        assert_eq!(t.rank_of(t.ground().full()), brute_rank(&t, t.ground().full()));
        assert_eq!(t.rank_of(t.ground().full()), 2);
        assert_eq!(t.rank_of(ElementSet::EMPTY), 0);
        let n = persp1_n();
        assert_eq!(n.rank_of(n.ground().set_of(["c"]).unwrap()), 0);
    }

    #[test]
    fn rank_table_matches_bases() {
        for m in [triangle(), persp1_n(), triangle().dual()] {
            for a in m.ground().full().subsets() {
                assert_eq!(m.rank_of(a), brute_rank(&m, a));
            }
        }
    }

    #[test]
    fn dual_examples() {
        let coloop = Matroid::free(g(&["e"]));
        let dual = coloop.dual();
        assert_eq!(dual.bases(), &[ElementSet::EMPTY]);
        assert_eq!(triangle().dual(), Matroid::uniform(g(&["a", "b", "c"]), 1).unwrap());
        assert_eq!(triangle().dual().dual(), triangle());
        assert_eq!(persp1_n().dual().dual(), persp1_n());
    }

    #[test]
    fn dual_rank_formula() {
        for m in [triangle(), persp1_n()] {
            let d = m.dual();
            let full = m.ground().full();
            for a in full.subsets() {
                assert_eq!(d.rank_of(a) + m.rank(), a.len() + m.rank_of(full - a));
            }
        }
    }

    #[test]
    fn circuit_examples() {
        let t = triangle();
        assert_eq!(t.circuits(), &[t.ground().full()]);
        assert!(Matroid::free(g(&["a", "b"])).circuits().is_empty());
        let n = persp1_n();
        let gr = n.ground().clone();
        let mut expect = vec![gr.set_of(["c"]).unwrap(), gr.set_of(["a", "b"]).unwrap()];
        expect.sort();
        assert_eq!(n.circuits(), expect.as_slice());
        assert_eq!(n.cocircuits(), &[gr.set_of(["a", "b"]).unwrap()]);
    }

    #[test]
    fn invalid_bases_rejected() {
        let gr = g(&["a", "b", "c", "d"]);
        let bad = [gr.set_of(["a", "b"]).unwrap(), gr.set_of(["c", "d"]).unwrap()];
        assert!(matches!(
            Matroid::from_bases(gr.clone(), bad),
            Err(Error::InvalidMatroid(_))
        ));
        let uneven = [gr.set_of(["a", "b"]).unwrap(), gr.set_of(["c"]).unwrap()];
        assert!(Matroid::from_bases(gr.clone(), uneven).is_err());
        assert!(Matroid::from_bases(gr, []).is_err());
    }

    #[test]
    fn from_circuits_roundtrip() {
        let n = persp1_n();
        let back = Matroid::from_circuits(n.ground().clone(), n.circuits().to_vec()).unwrap();
        assert_eq!(back, n);
        let gr = g(&["a", "b", "c"]);
        let nested = [gr.set_of(["a"]).unwrap(), gr.set_of(["a", "b"]).unwrap()];
        assert!(matches!(
            Matroid::from_circuits(gr.clone(), nested),
            Err(Error::CircuitAxiom(_))
        ));
        // {a,b} and {b,c} without a circuit in {a,c}
        let no_elim = [gr.set_of(["a", "b"]).unwrap(), gr.set_of(["b", "c"]).unwrap()];
        assert!(matches!(
            Matroid::from_circuits(gr, no_elim),
            Err(Error::CircuitAxiom(_))
        ));
    }

    #[test]
    fn perspective_examples() {
        let t = triangle();
        assert!(is_matroid_perspective(&t, &t).unwrap().holds());
        assert!(is_matroid_perspective(&t, &persp1_n()).unwrap().holds());
        // brute force over all Y ⊆ X for PERSP1
        let n = persp1_n();
        let full = t.ground().full();
        for x in full.subsets() {
            for y in x.subsets() {
                assert!(n.rank_of(x) + t.rank_of(y) <= t.rank_of(x) + n.rank_of(y));
            }
        }
        let u1 = Matroid::uniform(g(&["a", "b", "c"]), 1).unwrap();
        let check = is_matroid_perspective(&u1, &t).unwrap();
        let (c, d) = check.witness.unwrap();
        assert!(u1.circuits().contains(&c));
        assert!(t.cocircuits().contains(&d));
        assert_eq!((c & d).len(), 1);
        assert!(matches!(
            MatroidPerspective::new(u1, t),
            Err(Error::NotAPerspective { .. })
        ));
    }

    #[test]
    fn perspective_ground_mismatch() {
        let a = triangle();
        let b = Matroid::uniform(g(&["a", "b", "d"]), 2).unwrap();
        assert_eq!(is_matroid_perspective(&a, &b), Err(Error::AmbientMismatch));
    }

    #[test]
    fn perspective_dual_symmetry() {
        let pairs = [(triangle(), persp1_n()), (triangle(), triangle())];
        for (m, n) in pairs {
            let p = MatroidPerspective::new(m.clone(), n.clone()).unwrap();
            let d = p.dual().unwrap();
            assert_eq!(d.m(), &n.dual());
            assert_eq!(d.n(), &m.dual());
        }
        let u1 = Matroid::uniform(g(&["a", "b", "c"]), 1).unwrap();
        let fwd = is_matroid_perspective(&u1, &triangle()).unwrap().holds();
        let back = is_matroid_perspective(&triangle().dual(), &u1.dual()).unwrap().holds();
        assert_eq!(fwd, back);
    }

    #[test]
    fn minor_examples() {
        // triangle on a,b,c plus f parallel to c
        let gr = g(&["a", "b", "c", "f"]);
        let bases: Vec<ElementSet> = gr
            .full()
            .subsets()
            .filter(|s| s.len() == 2 && *s != gr.set_of(["c", "f"]).unwrap())
            .collect();
        let l = Matroid::from_bases(gr.clone(), bases).unwrap();
        let p = minor_perspective(&l, gr.set_of(["f"]).unwrap()).unwrap();
        assert_eq!(p.m(), &triangle());
        assert_eq!(p.n(), &persp1_n());

        let p0 = minor_perspective(&l, ElementSet::EMPTY).unwrap();
        assert_eq!(p0.m(), &l);
        assert_eq!(p0.n(), &l);

        let free = Matroid::free(g(&["a", "b"]));
        let pf = minor_perspective(&free, free.ground().set_of(["b"]).unwrap()).unwrap();
        assert_eq!(pf.m(), &Matroid::free(g(&["a"])));
        assert_eq!(pf.n(), &Matroid::free(g(&["a"])));

        assert_eq!(
            minor_perspective(&free, ElementSet::singleton(7)).unwrap_err(),
            Error::AmbientMismatch
        );
    }
}
