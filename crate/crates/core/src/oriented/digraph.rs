//! Graphic oriented matroids of directed multigraphs.

use crate::error::{Error, Result};
use crate::ground::{ElementSet, GroundSet, SignedSubset};
use crate::matroid::Matroid;

use super::OrientedMatroid;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub tail: String,
    pub head: String,
    pub label: String,
}

impl Arc {
    pub fn new(tail: impl Into<String>, head: impl Into<String>, label: impl Into<String>) -> Self {
        Arc {
            tail: tail.into(),
            head: head.into(),
            label: label.into(),
        }
    }
}

/// A directed multigraph whose arcs are the ground set, in arc order.
/// Vertex order fixes the cocircuit sign convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    vertices: Vec<String>,
    arcs: Vec<Arc>,
}

impl Digraph {
    pub fn new(vertices: Vec<String>, arcs: Vec<Arc>) -> Result<Self> {
        if arcs.is_empty() {
            return Err(Error::EmptyArcList);
        }
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::Parse(format!("duplicate vertex `{v}`")));
            }
        }
        for (i, a) in arcs.iter().enumerate() {
            if arcs[..i].iter().any(|b| b.label == a.label) {
                return Err(Error::DuplicateLabel(a.label.clone()));
            }
            for end in [&a.tail, &a.head] {
                if !vertices.contains(end) {
                    return Err(Error::Parse(format!("arc `{}` uses unknown vertex `{end}`", a.label)));
                }
            }
        }
        Ok(Digraph { vertices, arcs })
    }

    /// Vertices are taken in order of first appearance.
    pub fn from_arcs(arcs: Vec<Arc>) -> Result<Self> {
        let mut vertices: Vec<String> = Vec::new();
        for a in &arcs {
            for end in [&a.tail, &a.head] {
                if !vertices.contains(end) {
                    vertices.push(end.clone());
                }
            }
        }
        Digraph::new(vertices, arcs)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    fn ends(&self) -> Vec<(usize, usize)> {
        let idx = |v: &String| self.vertices.iter().position(|w| w == v).expect("validated");
        self.arcs.iter().map(|a| (idx(&a.tail), idx(&a.head))).collect()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

fn is_forest(ends: &[(usize, usize)], vertices: usize, set: ElementSet) -> bool {
    let mut uf = UnionFind::new(vertices);
    set.iter().all(|e| uf.union(ends[e].0, ends[e].1))
}

/// Vertices reachable from `start` along arcs in `set`, ignoring direction.
fn reachable(ends: &[(usize, usize)], vertices: usize, set: ElementSet, start: usize) -> Vec<bool> {
    let mut seen = vec![false; vertices];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for e in set.iter() {
            let (t, h) = ends[e];
            for (a, b) in [(t, h), (h, t)] {
                if a == v && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    seen
}

/// Signs of a cycle, walked starting forward along its smallest arc.
fn cycle_signs(ends: &[(usize, usize)], cycle: ElementSet) -> SignedSubset {
    let first = cycle.min().expect("non-empty cycle");
    let mut pos = ElementSet::singleton(first);
    let mut neg = ElementSet::EMPTY;
    let mut left = cycle.without(first);
    let mut at = ends[first].1;
    while let Some(e) = left.iter().find(|&e| ends[e].0 == at || ends[e].1 == at) {
        left = left.without(e);
        if ends[e].0 == at {
            pos = pos.with(e);
            at = ends[e].1;
        } else {
            neg = neg.with(e);
            at = ends[e].0;
        }
    }
    debug_assert!(left.is_empty());
    SignedSubset::new(pos, neg).expect("disjoint")
}

/// Signs of a minimal cut: `+` on arcs leaving the side that contains the
/// smallest vertex of the component the cut splits.
fn cut_signs(ends: &[(usize, usize)], vertices: usize, all: ElementSet, cut: ElementSet) -> SignedSubset {
    let touched = ends[cut.min().expect("non-empty cut")].0;
    let component = reachable(ends, vertices, all, touched);
    let root = component.iter().position(|&b| b).expect("touched vertex is in its component");
    let side = reachable(ends, vertices, all - cut, root);
    let mut pos = ElementSet::EMPTY;
    let mut neg = ElementSet::EMPTY;
    for e in cut.iter() {
        let (t, h) = ends[e];
        match (side[t], side[h]) {
            (true, false) => pos = pos.with(e),
            (false, true) => neg = neg.with(e),
            _ => unreachable!("a minimal cut separates its arc ends"),
        }
    }
    SignedSubset::new(pos, neg).expect("disjoint")
}

pub(super) fn oriented_matroid(graph: &Digraph) -> Result<OrientedMatroid> {
    let ground = GroundSet::new(graph.arcs.iter().map(|a| a.label.clone()))?;
    let ends = graph.ends();
    let nv = graph.vertices.len();
    let all = ground.full();
    let forests: Vec<ElementSet> = all.subsets().filter(|s| is_forest(&ends, nv, *s)).collect();
    let rank = forests.iter().map(|s| s.len()).max().unwrap_or(0);
    let bases = forests.into_iter().filter(|s| s.len() == rank);
    let matroid = Matroid::from_bases(ground.clone(), bases)?;
    let circuits: Vec<SignedSubset> = matroid.circuits().iter().map(|&c| cycle_signs(&ends, c)).collect();
    let cocircuits: Vec<SignedSubset> = matroid
        .cocircuits()
        .iter()
        .map(|&d| cut_signs(&ends, nv, all, d))
        .collect();
    OrientedMatroid::from_parts(ground, circuits, cocircuits)
}
