//! Named instances and the seeded random minor-generated perspectives used by
//! the tests, the acceptance suite and `omact verify --corpus`.
//!
//! | name          | instance                                                        |
//! |---------------|-----------------------------------------------------------------|
//! | `COLOOP1`     | one arc `u→v`                                                   |
//! | `LOOP1`       | one loop at `u`                                                 |
//! | `CYC3`        | directed triangle `a=u→v, b=v→w, c=w→u`                          |
//! | `N1`          | `a=uw→v, b=v→uw`, loop `c` (CYC3 with `u,w` identified)          |
//! | `PERSP1`      | `CYC3 → N1`                                                     |
//! | `PERSP1-DUAL` | `N1* → CYC3*`                                                   |
//! | `K4`          | complete graph on `1..4`, arcs `i→j` for `i<j`, lexicographic    |
//! | `EMPTY`       | empty ground set                                                |

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::ground::{ElementSet, GroundSet};
use crate::oriented::{Arc, Digraph, OMPerspective, OrientedMatroid};

/// Random digraphs have at most this many vertices.
pub const MAX_RANDOM_VERTICES: usize = 5;
/// Random digraphs have at most this many arcs.
pub const MAX_RANDOM_ARCS: usize = 8;
/// Default number of random perspectives.
pub const DEFAULT_RANDOM_COUNT: usize = 50;

#[derive(Clone, Debug)]
pub struct NamedPerspective {
    pub name: String,
    pub perspective: OMPerspective,
}

fn graph(arcs: &[(&str, &str, &str)]) -> OrientedMatroid {
    let arcs = arcs.iter().map(|(t, h, l)| Arc::new(*t, *h, *l)).collect();
    OrientedMatroid::from_digraph(&Digraph::from_arcs(arcs).expect("valid corpus digraph"))
        .expect("valid corpus oriented matroid")
}

pub fn coloop1() -> OrientedMatroid {
    graph(&[("u", "v", "e")])
}

pub fn loop1() -> OrientedMatroid {
    graph(&[("u", "u", "e")])
}

pub fn cyc3() -> OrientedMatroid {
    graph(&[("u", "v", "a"), ("v", "w", "b"), ("w", "u", "c")])
}

pub fn n1() -> OrientedMatroid {
    graph(&[("uw", "v", "a"), ("v", "uw", "b"), ("uw", "uw", "c")])
}

pub fn k4() -> OrientedMatroid {
    graph(&[
        ("1", "2", "12"),
        ("1", "3", "13"),
        ("1", "4", "14"),
        ("2", "3", "23"),
        ("2", "4", "24"),
        ("3", "4", "34"),
    ])
}

pub fn empty() -> OrientedMatroid {
    let ground = GroundSet::new(Vec::<String>::new()).expect("empty ground set");
    OrientedMatroid::from_parts(ground, [], []).expect("empty oriented matroid")
}

pub fn persp1() -> OMPerspective {
    OMPerspective::new(cyc3(), n1()).expect("PERSP1 is a perspective")
}

/// Oriented matroid by name, ignoring case.
pub fn oriented(name: &str) -> Option<OrientedMatroid> {
    Some(match name.to_ascii_uppercase().as_str() {
        "COLOOP1" => coloop1(),
        "LOOP1" => loop1(),
        "CYC3" => cyc3(),
        "N1" => n1(),
        "K4" => k4(),
        "EMPTY" => empty(),
        _ => return None,
    })
}

/// Perspective by name; a bare oriented matroid name gives `M → M`.
pub fn perspective(name: &str) -> Option<OMPerspective> {
    match name.to_ascii_uppercase().as_str() {
        "PERSP1" => Some(persp1()),
        "PERSP1-DUAL" => persp1().dual().ok(),
        _ => oriented(name).map(OMPerspective::identity),
    }
}

pub const BUILTIN_NAMES: [&str; 7] = ["EMPTY", "COLOOP1", "LOOP1", "CYC3", "PERSP1", "PERSP1-DUAL", "K4"];

pub fn builtin() -> Vec<NamedPerspective> {
    BUILTIN_NAMES
        .iter()
        .map(|n| NamedPerspective {
            name: n.to_string(),
            perspective: perspective(n).expect("builtin name"),
        })
        .collect()
}

/// A random digraph together with a set of arcs to contract.
#[derive(Clone, Debug)]
pub struct RandomMinor {
    pub graph: Digraph,
    pub contracted: ElementSet,
}

impl RandomMinor {
    pub fn sample<R: Rng>(rng: &mut R) -> Self {
        let nv = rng.gen_range(1..=MAX_RANDOM_VERTICES);
        let na = rng.gen_range(1..=MAX_RANDOM_ARCS);
        let arcs: Vec<Arc> = (0..na)
            .map(|i| {
                let t = rng.gen_range(0..nv);
                let h = rng.gen_range(0..nv);
                Arc::new(format!("v{t}"), format!("v{h}"), format!("e{i}"))
            })
            .collect();
        let vertices = (0..nv).map(|v| format!("v{v}")).collect();
        let graph = Digraph::new(vertices, arcs).expect("generated digraph is valid");
        let all = ElementSet::full(na);
        let contracted = loop {
            let f: ElementSet = (0..na).filter(|_| rng.gen_bool(1.0 / 3.0)).collect();
            if f != all {
                break f;
            }
        };
        RandomMinor { graph, contracted }
    }

    pub fn perspective(&self) -> Result<OMPerspective> {
        let l = OrientedMatroid::from_digraph(&self.graph)?;
        OMPerspective::minor(&l, self.contracted)
    }
}

pub fn random_minors(seed: u64, count: usize) -> Vec<NamedPerspective> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let sample = RandomMinor::sample(&mut rng);
            NamedPerspective {
                name: format!("random-{seed}-{i}"),
                perspective: sample.perspective().expect("minors form perspectives"),
            }
        })
        .collect()
}

/// Built-in instances followed by `count` random ones.
pub fn corpus(seed: u64, count: usize) -> Vec<NamedPerspective> {
    let mut out = builtin();
    out.extend(random_minors(seed, count));
    out
}
