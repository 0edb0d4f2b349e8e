//! Text formats for ideals, graphs, complexes and colourings.
//!
//! All records are JSON. Vertex and variable indices are one-based externally
//! and zero-based internally.
//!
//! ```text
//! ideal      {"vars": ["x1","x2","x3"], "gens": [[0,1,0], [1,0,1]]}
//!            {"vars": ["x1","x2","x3"], "gens": ["x2", "x1*x3"]}
//! graph      {"n": 3, "edges": [[1,2], [2,3]]}
//! complex    {"vertices": 3, "facets": [[1,2], [2,3]]}
//!            {"vertices": 3, "facets": [], "void": true}
//! colouring  {"blocks": [["x1"], ["x2","x3"]]}
//! ```

use num_rational::BigRational;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::complex::SimplicialComplex;
use crate::constructions::Colouring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::monomial::{minimal_generators, Monomial, MonomialIdeal};

/// Exponents above this are rejected at parse time, keeping every product of
/// exponents with desk-scale powers far from `u64` overflow.
pub const MAX_INPUT_EXPONENT: u64 = u32::MAX as u64;

pub(crate) fn one_based<S: Serializer>(v: &usize, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(*v as u64 + 1)
}

pub(crate) fn one_based_vec<S: Serializer>(v: &[usize], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&(*x as u64 + 1))?;
    }
    seq.end()
}

pub fn fraction_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub(crate) fn fraction_strings<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for q in v {
        seq.serialize_element(&fraction_string(q))?;
    }
    seq.end()
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.exponents().serialize(s)
    }
}

impl Serialize for MonomialIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IdealRecord::from(self).serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorEntry {
    Exponents(Vec<u64>),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealRecord {
    pub vars: Vec<String>,
    pub gens: Vec<GeneratorEntry>,
}

impl From<&MonomialIdeal> for IdealRecord {
    fn from(i: &MonomialIdeal) -> Self {
        IdealRecord {
            vars: i.vars().to_vec(),
            gens: i
                .gens()
                .iter()
                .map(|g| GeneratorEntry::Exponents(g.exponents().to_vec()))
                .collect(),
        }
    }
}

/// Parses a product such as `x1^2*x3` (or `1`) over the given variable names.
pub fn parse_monomial(text: &str, vars: &[String]) -> Result<Monomial> {
    let mut e = vec![0u64; vars.len()];
    let text = text.trim();
    if text == "1" {
        return Ok(Monomial::new(e));
    }
    for factor in text.split('*') {
        let factor = factor.trim();
        let (name, exp) = match factor.split_once('^') {
            Some((n, x)) => (
                n.trim(),
                x.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
            ),
            None => (factor, 1),
        };
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
        e[idx] = e[idx]
            .checked_add(exp)
            .filter(|&x| x <= MAX_INPUT_EXPONENT)
            .ok_or_else(|| Error::Parse(format!("exponent too large in `{factor}`")))?;
    }
    Ok(Monomial::new(e))
}

/// A parsed object plus the non-fatal diagnostics produced while validating it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<String>,
}

impl IdealRecord {
    pub fn to_ideal(&self) -> Result<Parsed<MonomialIdeal>> {
        let n = self.vars.len();
        let mut names = self.vars.clone();
        names.sort();
        names.dedup();
        if names.len() != n {
            return Err(Error::Parse("duplicate variable names".into()));
        }
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let m = match g {
                GeneratorEntry::Exponents(e) => {
                    if e.len() != n {
                        return Err(Error::DimensionMismatch {
                            expected: n,
                            found: e.len(),
                        });
                    }
                    if e.iter().any(|&x| x > MAX_INPUT_EXPONENT) {
                        return Err(Error::Parse("exponent too large".into()));
                    }
                    Monomial::new(e.clone())
                }
                GeneratorEntry::Text(t) => parse_monomial(t, &self.vars)?,
            };
            gens.push(m);
        }
        let raw = gens.len();
        let minimal = minimal_generators(gens);
        let mut warnings = vec![];
        if minimal.len() != raw {
            warnings.push(format!(
                "generator list is not a minimal antichain: {raw} entries reduced to {}",
                minimal.len()
            ));
        }
        Ok(Parsed {
            value: MonomialIdeal::new(self.vars.clone(), minimal)?,
            warnings,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphRecord {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphRecord {
    fn from(g: &Graph) -> Self {
        GraphRecord {
            n: g.n(),
            edges: g.edges().into_iter().map(|(a, b)| [a + 1, b + 1]).collect(),
        }
    }
}

impl GraphRecord {
    pub fn to_graph(&self) -> Result<Parsed<Graph>> {
        let mut edges = Vec::with_capacity(self.edges.len());
        for &[a, b] in &self.edges {
            if a == 0 || b == 0 {
                return Err(Error::InvalidGraph("vertices are numbered from 1".into()));
            }
            edges.push((a - 1, b - 1));
        }
        let g = Graph::new(self.n, &edges)?;
        let mut warnings = vec![];
        if g.edge_count() != edges.len() {
            warnings.push(format!("{} repeated edges merged", edges.len() - g.edge_count()));
        }
        Ok(Parsed { value: g, warnings })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexRecord {
    pub vertices: usize,
    pub facets: Vec<Vec<usize>>,
    #[serde(default, rename = "void", skip_serializing_if = "std::ops::Not::not")]
    pub is_void: bool,
}

impl From<&SimplicialComplex> for ComplexRecord {
    fn from(c: &SimplicialComplex) -> Self {
        ComplexRecord {
            vertices: c.label_count(),
            facets: c
                .facet_lists()
                .into_iter()
                .map(|f| f.into_iter().map(|v| v + 1).collect())
                .collect(),
            is_void: c.is_void(),
        }
    }
}

impl ComplexRecord {
    pub fn to_complex(&self) -> Result<Parsed<SimplicialComplex>> {
        if self.is_void {
            if !self.facets.is_empty() {
                return Err(Error::InvalidComplex("void complex cannot list facets".into()));
            }
            return Ok(Parsed {
                value: SimplicialComplex::void(self.vertices),
                warnings: vec![],
            });
        }
        if self.facets.is_empty() {
            return Err(Error::InvalidComplex(
                "empty facet list: use [[]] for {∅} or \"void\": true for the void complex".into(),
            ));
        }
        let mut faces = Vec::with_capacity(self.facets.len());
        for f in &self.facets {
            if f.contains(&0) {
                return Err(Error::InvalidComplex("vertices are numbered from 1".into()));
            }
            faces.push(f.iter().map(|v| v - 1).collect::<Vec<_>>());
        }
        let c = SimplicialComplex::new(self.vertices, &faces)?;
        let mut warnings = vec![];
        if c.facets().len() != faces.len() {
            warnings.push(format!(
                "facet list is not an antichain: {} entries reduced to {}",
                faces.len(),
                c.facets().len()
            ));
        }
        Ok(Parsed { value: c, warnings })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColouringRecord {
    pub blocks: Vec<Vec<String>>,
}

impl ColouringRecord {
    pub fn from_colouring(chi: &Colouring, vars: &[String]) -> Self {
        ColouringRecord {
            blocks: chi
                .blocks()
                .iter()
                .map(|b| b.iter().map(|&i| vars[i].clone()).collect())
                .collect(),
        }
    }

    /// Resolves variable names against `vars` and validates the partition.
    pub fn to_colouring(&self, vars: &[String]) -> Result<Colouring> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|name| {
                        vars.iter()
                            .position(|v| v == name)
                            .ok_or_else(|| Error::InvalidColouring(format!("unknown variable `{name}`")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Colouring::new(vars.len(), blocks)
    }
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_ideal(text: &str) -> Result<Parsed<MonomialIdeal>> {
    from_json::<IdealRecord>(text)?.to_ideal()
}

pub fn parse_graph(text: &str) -> Result<Parsed<Graph>> {
    from_json::<GraphRecord>(text)?.to_graph()
}

pub fn parse_complex(text: &str) -> Result<Parsed<SimplicialComplex>> {
    from_json::<ComplexRecord>(text)?.to_complex()
}

pub fn parse_colouring(text: &str, vars: &[String]) -> Result<Colouring> {
    from_json::<ColouringRecord>(text)?.to_colouring(vars)
}

pub fn ideal_to_json(i: &MonomialIdeal) -> String {
    serde_json::to_string(&IdealRecord::from(i)).expect("serializable")
}

pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphRecord::from(g)).expect("serializable")
}

pub fn complex_to_json(c: &SimplicialComplex) -> String {
    serde_json::to_string(&ComplexRecord::from(c)).expect("serializable")
}

pub fn colouring_to_json(chi: &Colouring, vars: &[String]) -> String {
    serde_json::to_string(&ColouringRecord::from_colouring(chi, vars)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ideal_record() {
        let p = parse_ideal(r#"{"vars":["x1","x2","x3"],"gens":[[0,1,0],[1,0,1]]}"#).unwrap();
        assert_eq!(p.value.display(), "(x2, x1*x3)");
        assert!(p.warnings.is_empty());
    }

    #[test]
    fn parses_compact_generators() {
        let p = parse_ideal(r#"{"vars":["x1","x2","x3"],"gens":["x1^2*x3","x2"]}"#).unwrap();
        assert_eq!(p.value.display(), "(x2, x1^2*x3)");
        assert!(parse_ideal(r#"{"vars":["x1"],"gens":["x9"]}"#).is_err());
        assert!(parse_ideal(r#"{"vars":["x1"],"gens":["x1^z"]}"#).is_err());
    }

    #[test]
    fn non_antichain_input_is_minimalized_with_warning() {
        let p = parse_ideal(r#"{"vars":["x1"],"gens":[[1],[2]]}"#).unwrap();
        assert_eq!(p.value.display(), "(x1)");
        assert_eq!(p.warnings.len(), 1);
    }

    #[test]
    fn ideal_dimension_mismatch() {
        assert_eq!(
            parse_ideal(r#"{"vars":["x1","x2"],"gens":[[1]]}"#).unwrap_err(),
            Error::DimensionMismatch { expected: 2, found: 1 }
        );
        assert!(parse_ideal(r#"{"vars":["x1"],"gens":[[1]],"extra":1}"#).is_err());
        assert!(parse_ideal(r#"{"vars":["x1","x1"],"gens":[]}"#).is_err());
    }

    #[test]
    fn parses_graph_record() {
        let g = parse_graph(r#"{"n":3,"edges":[[1,2],[2,3]]}"#).unwrap().value;
        assert_eq!(g, Graph::path(3));
        assert!(parse_graph(r#"{"n":3,"edges":[[0,2]]}"#).is_err());
        assert!(parse_graph(r#"{"n":3,"edges":[[2,2]]}"#).is_err());
        let dup = parse_graph(r#"{"n":2,"edges":[[1,2],[2,1]]}"#).unwrap();
        assert_eq!(dup.warnings.len(), 1);
    }

    #[test]
    fn parses_complex_records() {
        let c = parse_complex(r#"{"vertices":3,"facets":[[1,2],[2,3]]}"#).unwrap().value;
        assert_eq!(c.facet_lists(), vec![vec![0, 1], vec![1, 2]]);
        let v = parse_complex(r#"{"vertices":2,"facets":[],"void":true}"#).unwrap().value;
        assert!(v.is_void());
        let e = parse_complex(r#"{"vertices":2,"facets":[[]]}"#).unwrap().value;
        assert_eq!(e, SimplicialComplex::empty_face(2));
        assert!(parse_complex(r#"{"vertices":2,"facets":[]}"#).is_err());
        assert!(parse_complex(r#"{"vertices":2,"facets":[[3]]}"#).is_err());
        let p = parse_complex(r#"{"vertices":3,"facets":[[1,2],[1]]}"#).unwrap();
        assert_eq!(p.warnings.len(), 1);
    }

    #[test]
    fn parses_colourings() {
        let vars: Vec<String> = ["x1", "x2", "x3"].iter().map(|s| s.to_string()).collect();
        let chi = parse_colouring(r#"{"blocks":[["x1"],["x3","x2"]]}"#, &vars).unwrap();
        assert_eq!(chi.blocks(), &[vec![0], vec![1, 2]]);
        assert!(parse_colouring(r#"{"blocks":[["x1"],["x2"]]}"#, &vars).is_err());
        assert!(parse_colouring(r#"{"blocks":[["x1","x4"],["x2","x3"]]}"#, &vars).is_err());
    }

    #[test]
    fn fractions_render_as_p_over_q() {
        let q = BigRational::new(3.into(), 6.into());
        assert_eq!(fraction_string(&q), "1/2");
        assert_eq!(fraction_string(&BigRational::from_integer(2.into())), "2/1");
    }
}
