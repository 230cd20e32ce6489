//! File formats and instance loading.
//!
//! | kind       | format                                                        |
//! |------------|---------------------------------------------------------------|
//! | `digraph`  | text, one arc per line: `tail head label`; `#` starts a comment |
//! | `om`       | `{"elements":[..],"circuits":[{"pos":[..],"neg":[..]},..]}`    |
//! | `matroid`  | `{"elements":[..],"bases":[[..],..]}`                          |
//! | `matrix`   | `{"labels":[..],"rows":[[..],..]}`, entries integers, `"p/q"` or decimals |
//! | `corpus`   | a built-in name, or `random-SEED-INDEX`                        |
//!
//! An instance is written `KIND:PATH`. Without a prefix, a built-in name is
//! taken from the corpus, a `.json` file is recognised by its keys, and any
//! other file is read as a digraph.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::corpus;
use crate::error::{Error, Result};
use crate::ground::{ElementSet, GroundSet, SignedSubset};
use crate::matroid::{minor_perspective, Matroid, MatroidPerspective};
use crate::orientation::{ActivePartition, ActivityClass};
use crate::oriented::{Arc, Digraph, OMPerspective, OrientedMatroid};
use crate::scalar::parse_rational;
use crate::subsets::DawsonInterval;
use crate::{Rational, RationalMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedJson {
    pub pos: Vec<String>,
    pub neg: Vec<String>,
}

impl SignedJson {
    pub fn new(g: &GroundSet, x: SignedSubset) -> Self {
        SignedJson {
            pos: g.labels_of(x.pos()),
            neg: g.labels_of(x.neg()),
        }
    }

    pub fn resolve(&self, g: &GroundSet) -> Result<SignedSubset> {
        g.signed_of(&self.pos, &self.neg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidJson {
    pub elements: Vec<String>,
    pub bases: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientedJson {
    pub elements: Vec<String>,
    pub circuits: Vec<SignedJson>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
pub struct MatrixJson {
    pub labels: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn matroid_to_json(m: &Matroid) -> MatroidJson {
    let g = m.ground();
    MatroidJson {
        elements: g.labels().to_vec(),
        bases: m.bases().iter().map(|&b| g.labels_of(b)).collect(),
    }
}

pub fn matroid_from_json(j: &MatroidJson) -> Result<Matroid> {
    let ground = GroundSet::new(j.elements.iter().cloned())?;
    let bases = j
        .bases
        .iter()
        .map(|b| ground.set_of(b))
        .collect::<Result<Vec<_>>>()?;
    Matroid::from_bases(ground, bases)
}

/// One circuit per `±` pair, the one positive on its smallest element.
pub fn oriented_to_json(m: &OrientedMatroid) -> OrientedJson {
    let g = m.ground();
    OrientedJson {
        elements: g.labels().to_vec(),
        circuits: m
            .circuits()
            .iter()
            .filter(|c| c.support().min().is_some_and(|e| c.pos().contains(e)))
            .map(|&c| SignedJson::new(g, c))
            .collect(),
    }
}

pub fn oriented_from_json(j: &OrientedJson) -> Result<OrientedMatroid> {
    let ground = GroundSet::new(j.elements.iter().cloned())?;
    let circuits = j
        .circuits
        .iter()
        .map(|c| c.resolve(&ground))
        .collect::<Result<Vec<_>>>()?;
    OrientedMatroid::from_circuits(ground, circuits)
}

fn entry(v: &Value) -> Result<Rational> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => other.to_string(),
    };
    parse_rational(&text).ok_or(Error::NonRational(text))
}

pub fn matrix_from_json(j: &MatrixJson) -> Result<OrientedMatroid> {
    let rows = j
        .rows
        .iter()
        .map(|r| r.iter().map(entry).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let matrix = RationalMatrix::from_rows(rows, j.labels.len())?;
    OrientedMatroid::from_matrix(&matrix, j.labels.iter().cloned())
}

/// Reads `tail head label` lines. Blank lines and `#` comments are skipped.
pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let mut arcs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [tail, head, label] = fields.as_slice() else {
            return Err(Error::Parse(format!(
                "line {}: expected `tail head label`, found `{line}`",
                i + 1
            )));
        };
        arcs.push(Arc::new(*tail, *head, *label));
    }
    Digraph::from_arcs(arcs)
}

pub fn format_digraph(g: &Digraph) -> String {
    g.arcs()
        .iter()
        .map(|a| format!("{} {} {}\n", a.tail, a.head, a.label))
        .collect()
}

/// A loaded instance: a single (oriented) matroid, or a whole perspective
/// from the corpus.
#[derive(Clone, Debug)]
pub enum Instance {
    Oriented(OrientedMatroid),
    Unoriented(Matroid),
    Perspective(OMPerspective),
}

impl Instance {
    pub fn ground(&self) -> &GroundSet {
        match self {
            Instance::Oriented(m) => m.ground(),
            Instance::Unoriented(m) => m.ground(),
            Instance::Perspective(p) => p.ground(),
        }
    }

    pub fn with_order<S: AsRef<str>>(&self, order: &[S]) -> Result<Instance> {
        Ok(match self {
            Instance::Oriented(m) => Instance::Oriented(m.with_order(order)?),
            Instance::Unoriented(m) => Instance::Unoriented(m.with_order(order)?),
            Instance::Perspective(p) => Instance::Perspective(p.with_order(order)?),
        })
    }
}

/// A perspective, oriented when every input was.
#[derive(Clone, Debug)]
pub enum Perspective {
    Oriented(OMPerspective),
    Unoriented(MatroidPerspective),
}

impl Perspective {
    pub fn ground(&self) -> &GroundSet {
        match self {
            Perspective::Oriented(p) => p.ground(),
            Perspective::Unoriented(p) => p.ground(),
        }
    }

    pub fn underlying(&self) -> &MatroidPerspective {
        match self {
            Perspective::Oriented(p) => p.underlying(),
            Perspective::Unoriented(p) => p,
        }
    }

    pub fn oriented(&self) -> Result<&OMPerspective> {
        match self {
            Perspective::Oriented(p) => Ok(p),
            Perspective::Unoriented(_) => Err(Error::Unsupported(
                "this computation needs oriented input (digraph, matrix, om or corpus)".into(),
            )),
        }
    }
}

fn corpus_instance(name: &str) -> Result<Instance> {
    if let Some(rest) = name.strip_prefix("random-") {
        let parsed = rest
            .split_once('-')
            .and_then(|(s, i)| Some((s.parse::<u64>().ok()?, i.parse::<usize>().ok()?)));
        let (seed, index) = parsed.ok_or_else(|| Error::Parse(format!("bad random corpus name `{name}`")))?;
        let mut all = corpus::random_minors(seed, index + 1);
        return Ok(Instance::Perspective(all.swap_remove(index).perspective));
    }
    if let Some(m) = corpus::oriented(name) {
        return Ok(Instance::Oriented(m));
    }
    corpus::perspective(name)
        .map(Instance::Perspective)
        .ok_or_else(|| Error::Parse(format!("unknown corpus instance `{name}`")))
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn json_instance(text: &str) -> Result<Instance> {
    let v: Value = serde_json::from_str(text).map_err(json_error)?;
    let has = |k: &str| v.get(k).is_some();
    if has("circuits") {
        let j: OrientedJson = serde_json::from_value(v).map_err(json_error)?;
        Ok(Instance::Oriented(oriented_from_json(&j)?))
    } else if has("bases") {
        let j: MatroidJson = serde_json::from_value(v).map_err(json_error)?;
        Ok(Instance::Unoriented(matroid_from_json(&j)?))
    } else if has("rows") {
        let j: MatrixJson = serde_json::from_value(v).map_err(json_error)?;
        Ok(Instance::Oriented(matrix_from_json(&j)?))
    } else {
        Err(Error::Parse("JSON instance needs `circuits`, `bases` or `rows`".into()))
    }
}

/// Loads `KIND:PATH`, a corpus name, or a file path.
pub fn load_instance(spec: &str) -> Result<Instance> {
    if let Some((kind, rest)) = spec.split_once(':') {
        match kind {
            "digraph" => return Ok(Instance::Oriented(OrientedMatroid::from_digraph(&parse_digraph(&read(rest)?)?)?)),
            "om" => {
                let j: OrientedJson = serde_json::from_str(&read(rest)?).map_err(json_error)?;
                return Ok(Instance::Oriented(oriented_from_json(&j)?));
            }
            "matroid" => {
                let j: MatroidJson = serde_json::from_str(&read(rest)?).map_err(json_error)?;
                return Ok(Instance::Unoriented(matroid_from_json(&j)?));
            }
            "matrix" => {
                let j: MatrixJson = serde_json::from_str(&read(rest)?).map_err(json_error)?;
                return Ok(Instance::Oriented(matrix_from_json(&j)?));
            }
            "corpus" => return corpus_instance(rest),
            _ => {}
        }
    }
    if !Path::new(spec).exists() {
        return corpus_instance(spec);
    }
    let text = read(spec)?;
    if spec.ends_with(".json") {
        json_instance(&text)
    } else {
        Ok(Instance::Oriented(OrientedMatroid::from_digraph(&parse_digraph(&text)?)?))
    }
}

/// Splits a comma-separated label list; the empty string is the empty set.
pub fn parse_labels(text: &str) -> Vec<String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

/// Builds the perspective `first → second`, `first → first`, or, with
/// `contract`, the minor perspective `first \ F → first / F`.
pub fn assemble(first: Instance, second: Option<Instance>, contract: Option<&[String]>) -> Result<Perspective> {
    match (first, second, contract) {
        (Instance::Perspective(_), Some(_), _) | (Instance::Perspective(_), _, Some(_)) => Err(Error::Parse(
            "a perspective instance takes neither a second instance nor --contract".into(),
        )),
        (_, Some(_), Some(_)) => Err(Error::Parse("--contract applies to a single instance".into())),
        (Instance::Perspective(p), None, None) => Ok(Perspective::Oriented(p)),
        (Instance::Oriented(l), None, Some(f)) => {
            let f = l.ground().set_of(f)?;
            Ok(Perspective::Oriented(OMPerspective::minor(&l, f)?))
        }
        (Instance::Unoriented(l), None, Some(f)) => {
            let f = l.ground().set_of(f)?;
            Ok(Perspective::Unoriented(minor_perspective(&l, f)?))
        }
        (Instance::Oriented(m), None, None) => Ok(Perspective::Oriented(OMPerspective::identity(m))),
        (Instance::Unoriented(m), None, None) => Ok(Perspective::Unoriented(MatroidPerspective::identity(m))),
        (Instance::Oriented(m), Some(Instance::Oriented(n)), None) => {
            Ok(Perspective::Oriented(OMPerspective::new(m, n)?))
        }
        (m, Some(n), None) => {
            let under = |i: Instance| match i {
                Instance::Oriented(m) => m.underlying().clone(),
                Instance::Unoriented(m) => m,
                Instance::Perspective(_) => unreachable!("perspectives rejected above"),
            };
            if matches!(n, Instance::Perspective(_)) {
                return Err(Error::Parse("a perspective cannot be the second instance".into()));
            }
            Ok(Perspective::Unoriented(MatroidPerspective::new(under(m), under(n))?))
        }
    }
}

/// Labels of a set, in ground order.
pub fn labels(g: &GroundSet, s: ElementSet) -> Vec<String> {
    g.labels_of(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionJson {
    pub cyclic: Vec<Vec<String>>,
    pub hybrid: Vec<String>,
    pub acyclic: Vec<Vec<String>>,
}

impl PartitionJson {
    pub fn new(g: &GroundSet, p: &ActivePartition) -> Self {
        PartitionJson {
            cyclic: p.cyclic.iter().map(|&s| labels(g, s)).collect(),
            hybrid: labels(g, p.hybrid),
            acyclic: p.acyclic.iter().map(|&s| labels(g, s)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassJson {
    pub representative: Vec<String>,
    pub members: Vec<Vec<String>>,
    pub iota: usize,
    pub epsilon: usize,
}

impl ClassJson {
    pub fn new(g: &GroundSet, c: &ActivityClass) -> Self {
        ClassJson {
            representative: labels(g, c.representative),
            members: c.members.iter().map(|&s| labels(g, s)).collect(),
            iota: c.iota,
            epsilon: c.epsilon,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalJson {
    pub base: Vec<String>,
    pub lower: Vec<String>,
    pub upper: Vec<String>,
    pub rcd: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DawsonJson {
    pub intervals: Vec<IntervalJson>,
}

impl DawsonJson {
    pub fn new(g: &GroundSet, intervals: &[DawsonInterval]) -> Self {
        DawsonJson {
            intervals: intervals
                .iter()
                .map(|iv| IntervalJson {
                    base: labels(g, iv.base),
                    lower: labels(g, iv.lower),
                    upper: labels(g, iv.upper),
                    rcd: iv.rcd,
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_json_round_trip() {
        let g = GroundSet::new(["a", "b", "c"]).unwrap();
        let x = g.signed_of(["a"], ["c"]).unwrap();
        let j = SignedJson::new(&g, x);
        assert_eq!(serde_json::to_string(&j).unwrap(), r#"{"pos":["a"],"neg":["c"]}"#);
        assert_eq!(j.resolve(&g).unwrap(), x);
        let bad = SignedJson {
            pos: vec!["a".into()],
            neg: vec!["a".into()],
        };
        assert_eq!(bad.resolve(&g).unwrap_err(), Error::OverlappingSigns);
    }

    #[test]
    fn oriented_json_round_trip() {
        for name in ["CYC3", "K4", "LOOP1", "COLOOP1", "N1"] {
            let m = corpus::oriented(name).unwrap();
            let j = oriented_to_json(&m);
            let text = serde_json::to_string(&j).unwrap();
            let back = oriented_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back, m, "{name}");
        }
    }

    #[test]
    fn matroid_json_round_trip() {
        let m = corpus::k4().underlying().clone();
        let back = matroid_from_json(&matroid_to_json(&m)).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn matrix_json() {
        let j: MatrixJson =
            serde_json::from_str(r#"{"labels":["a","b","c"],"rows":[[1,0,"-1"],[0,"1/1",-1.0]]}"#).unwrap();
        assert_eq!(matrix_from_json(&j).unwrap(), corpus::cyc3());
        let bad: MatrixJson = serde_json::from_str(r#"{"labels":["a"],"rows":[["x"]]}"#).unwrap();
        assert_eq!(matrix_from_json(&bad).unwrap_err(), Error::NonRational("x".into()));
        let sci: MatrixJson = serde_json::from_str(r#"{"labels":["a"],"rows":[["1e3"]]}"#).unwrap();
        assert!(matches!(matrix_from_json(&sci), Err(Error::NonRational(_))));
        let ragged: MatrixJson = serde_json::from_str(r#"{"labels":["a","b"],"rows":[[1]]}"#).unwrap();
        assert!(matches!(matrix_from_json(&ragged), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn digraph_text() {
        let g = parse_digraph("# triangle\nu v a\nv w b\n\nw u c  # closing arc\n").unwrap();
        assert_eq!(OrientedMatroid::from_digraph(&g).unwrap(), corpus::cyc3());
        assert_eq!(parse_digraph(&format_digraph(&g)).unwrap(), g);
        assert!(matches!(parse_digraph("u v"), Err(Error::Parse(_))));
        assert_eq!(parse_digraph("# nothing\n").unwrap_err(), Error::EmptyArcList);
        assert_eq!(
            parse_digraph("u v a\nv u a\n").unwrap_err(),
            Error::DuplicateLabel("a".into())
        );
    }

    #[test]
    fn corpus_names() {
        assert!(matches!(load_instance("CYC3").unwrap(), Instance::Oriented(_)));
        assert!(matches!(load_instance("corpus:PERSP1").unwrap(), Instance::Perspective(_)));
        let r = load_instance("random-5-2").unwrap();
        let Instance::Perspective(p) = r else { panic!() };
        assert_eq!(p.m(), corpus::random_minors(5, 3)[2].perspective.m());
        assert!(matches!(load_instance("NOPE"), Err(Error::Parse(_))));
    }

    #[test]
    fn assembling_perspectives() {
        let cyc = Instance::Oriented(corpus::cyc3());
        let n1 = Instance::Oriented(corpus::n1());
        let p = assemble(cyc.clone(), Some(n1.clone()), None).unwrap();
        assert_eq!(p.oriented().unwrap().n(), &corpus::n1());
        assert!(matches!(
            assemble(n1.clone(), Some(cyc.clone()), None),
            Err(Error::NotAPerspective { .. })
        ));
        let mixed = assemble(cyc.clone(), Some(Instance::Unoriented(corpus::n1().underlying().clone())), None).unwrap();
        assert!(matches!(mixed.oriented(), Err(Error::Unsupported(_))));
        let loop1 = Instance::Oriented(corpus::loop1());
        assert_eq!(assemble(cyc, Some(loop1), None).unwrap_err(), Error::AmbientMismatch);
    }

    #[test]
    fn minors_and_orders() {
        let g = corpus::cyc3().ground().clone();
        let graph = Instance::Oriented(corpus::cyc3());
        let p = assemble(graph.clone(), None, Some(&["c".to_string()])).unwrap();
        assert_eq!(p.ground().labels(), &g.labels()[..2]);
        let reordered = graph.with_order(&["c", "b", "a"]).unwrap();
        assert_eq!(reordered.ground().labels(), ["c", "b", "a"]);
        assert!(graph.with_order(&["a", "b"]).is_err());
    }

    #[test]
    fn output_shapes() {
        let p = corpus::persp1();
        let g = p.ground();
        let part = crate::orientation::partition_at(&p, g.set_of(["a"]).unwrap()).unwrap();
        assert_eq!(
            serde_json::to_string(&PartitionJson::new(g, &part)).unwrap(),
            r#"{"cyclic":[],"hybrid":["c"],"acyclic":[["a","b"]]}"#
        );
        let iv = crate::subsets::dawson_partition(p.underlying()).unwrap();
        let text = serde_json::to_string(&DawsonJson::new(g, &iv[..1])).unwrap();
        assert_eq!(text, r#"{"intervals":[{"base":["a"],"lower":[],"upper":["a"],"rcd":1}]}"#);
    }
}
