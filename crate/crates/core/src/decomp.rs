//! Vertex decomposability of complexes and vertex splittability of ideals,
//! with witness trees and independent replay verifiers.
//!
//! Both searches are exhaustive with memoization on the exact facet set
//! (resp. generator set). Candidates are tried in ascending index order and
//! the first success is kept, so witnesses are deterministic.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::certificate::Decision;
use crate::complex::{mask_to_vec, maximal_sets, SimplicialComplex};
use crate::io::{one_based, one_based_vec};
use crate::monomial::{Monomial, MonomialIdeal};

/// Witness that a complex is vertex decomposable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SheddingTree {
    Void,
    Simplex,
    Shed {
        #[serde(serialize_with = "one_based")]
        vertex: usize,
        deletion: Box<SheddingTree>,
        link: Box<SheddingTree>,
    },
}

impl SheddingTree {
    pub fn size(&self) -> usize {
        match self {
            SheddingTree::Shed { deletion, link, .. } => 1 + deletion.size() + link.size(),
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum SheddingFailure {
    /// `face` is a facet of the deletion but not of the complex.
    NotShedding {
        #[serde(serialize_with = "one_based_vec")]
        face: Vec<usize>,
    },
    DeletionNotDecomposable,
    LinkNotDecomposable,
}

/// Why each vertex failed; empty only for the root of a non-decomposable
/// complex with no vertices, which cannot happen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecomposabilityFailure {
    pub attempts: Vec<VertexAttempt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexAttempt {
    #[serde(serialize_with = "one_based")]
    pub vertex: usize,
    pub failure: SheddingFailure,
}

pub type DecomposabilityDecision = Decision<SheddingTree, DecomposabilityFailure>;

/// Memoized vertex decomposability search over facet bitmasks.
#[derive(Default)]
pub struct SheddingSearch {
    memo: HashMap<Vec<u64>, bool>,
}

/// For a vertex `v` of the complex: `Some(F \ v)` for a facet `F ∋ v` whose
/// restriction is a facet of the deletion, `None` if `v` is a shedding vertex.
fn shedding_obstruction(facets: &[u64], v: usize) -> Option<u64> {
    let bit = 1u64 << v;
    facets
        .iter()
        .filter(|&&f| f & bit != 0)
        .map(|&f| f & !bit)
        .find(|&rest| !facets.iter().any(|&g| g & bit == 0 && rest & !g == 0))
}

fn link_facets(facets: &[u64], v: usize) -> Vec<u64> {
    let bit = 1u64 << v;
    let mut out: Vec<u64> = facets.iter().filter(|&&f| f & bit != 0).map(|&f| f & !bit).collect();
    out.sort_unstable();
    out
}

fn deletion_facets(facets: &[u64], v: usize) -> Vec<u64> {
    maximal_sets(facets.iter().map(|&f| f & !(1u64 << v)).collect())
}

impl SheddingSearch {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_decomposable(&mut self, facets: &[u64]) -> bool {
        if facets.len() <= 1 {
            return true;
        }
        if let Some(&v) = self.memo.get(facets) {
            return v;
        }
        let vertices = facets.iter().fold(0, |a, f| a | f);
        let result = mask_to_vec(vertices).into_iter().any(|v| {
            shedding_obstruction(facets, v).is_none()
                && self.is_decomposable(&deletion_facets(facets, v))
                && self.is_decomposable(&link_facets(facets, v))
        });
        self.memo.insert(facets.to_vec(), result);
        result
    }

    fn tree(&mut self, facets: &[u64]) -> SheddingTree {
        match facets.len() {
            0 => return SheddingTree::Void,
            1 => return SheddingTree::Simplex,
            _ => {}
        }
        let vertices = facets.iter().fold(0, |a, f| a | f);
        for v in mask_to_vec(vertices) {
            if shedding_obstruction(facets, v).is_some() {
                continue;
            }
            let del = deletion_facets(facets, v);
            let lk = link_facets(facets, v);
            if self.is_decomposable(&del) && self.is_decomposable(&lk) {
                return SheddingTree::Shed {
                    vertex: v,
                    deletion: Box::new(self.tree(&del)),
                    link: Box::new(self.tree(&lk)),
                };
            }
        }
        unreachable!("tree requested for a non-decomposable complex")
    }

    pub fn decide(&mut self, delta: &SimplicialComplex) -> DecomposabilityDecision {
        let facets = delta.facets();
        if self.is_decomposable(facets) {
            return Decision::Holds(self.tree(facets));
        }
        let vertices = delta.vertex_mask();
        let attempts = mask_to_vec(vertices)
            .into_iter()
            .map(|v| {
                let failure = if let Some(face) = shedding_obstruction(facets, v) {
                    SheddingFailure::NotShedding {
                        face: mask_to_vec(face),
                    }
                } else if !self.is_decomposable(&deletion_facets(facets, v)) {
                    SheddingFailure::DeletionNotDecomposable
                } else {
                    SheddingFailure::LinkNotDecomposable
                };
                VertexAttempt { vertex: v, failure }
            })
            .collect();
        Decision::Fails(DecomposabilityFailure { attempts })
    }
}

/// Decides vertex decomposability. The void complex, `{∅}` and every simplex
/// are base cases.
pub fn is_vertex_decomposable(delta: &SimplicialComplex) -> DecomposabilityDecision {
    SheddingSearch::new().decide(delta)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("leaf `{0}` does not match the complex or ideal at this node")]
    LeafMismatch(&'static str),
    #[error("vertex {0} is not a vertex at this node")]
    NotAVertex(usize),
    #[error("vertex {0} is not a shedding vertex")]
    NotShedding(usize),
    #[error("variable {0} occurs in a child ideal of its own splitting")]
    VariableInChild(usize),
    #[error("second ideal not contained in the first at variable {0}")]
    NotContained(usize),
    #[error("generator sets are not a disjoint union at variable {0}")]
    NotDisjoint(usize),
    #[error("rebuilt ideal differs from the input")]
    IdealMismatch,
}

/// Replays a shedding tree against `delta` using explicit link and deletion.
pub fn verify_shedding_tree(delta: &SimplicialComplex, tree: &SheddingTree) -> Result<(), ReplayError> {
    match tree {
        SheddingTree::Void if delta.is_void() => Ok(()),
        SheddingTree::Void => Err(ReplayError::LeafMismatch("void")),
        SheddingTree::Simplex if delta.is_simplex() => Ok(()),
        SheddingTree::Simplex => Err(ReplayError::LeafMismatch("simplex")),
        SheddingTree::Shed {
            vertex,
            deletion,
            link,
        } => {
            if (delta.vertex_mask() >> vertex) & 1 == 0 {
                return Err(ReplayError::NotAVertex(vertex + 1));
            }
            let (lk, del) = delta
                .link_and_deletion(*vertex)
                .map_err(|_| ReplayError::NotAVertex(vertex + 1))?;
            if del.facets().iter().any(|f| !delta.facets().contains(f)) {
                return Err(ReplayError::NotShedding(vertex + 1));
            }
            verify_shedding_tree(&del, deletion)?;
            verify_shedding_tree(&lk, link)
        }
    }
}

/// Witness that an ideal is vertex splittable: `Split` stands for
/// `I = x_var * I_1 + I_2` with `with_var` describing `I_1` and `without_var` `I_2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SplittingTree {
    Zero,
    Unit,
    Split {
        #[serde(serialize_with = "one_based")]
        var: usize,
        with_var: Box<SplittingTree>,
        without_var: Box<SplittingTree>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum SplitFailure {
    /// A generator of `I_2` lies outside `I_1` (one-based support).
    NotContained {
        #[serde(serialize_with = "one_based_vec")]
        generator: Vec<usize>,
    },
    FirstNotSplittable,
    SecondNotSplittable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SplittabilityFailure {
    /// Vertex splittable ideals are squarefree.
    NotSquarefree,
    /// Too many variables for the bitmask search.
    TooManyVariables,
    Exhausted { attempts: Vec<VariableAttempt> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VariableAttempt {
    #[serde(serialize_with = "one_based")]
    pub var: usize,
    pub failure: SplitFailure,
}

pub type SplittabilityDecision = Decision<SplittingTree, SplittabilityFailure>;

/// The forced split of a squarefree generator set at variable `i`:
/// `(G(I_1), G(I_2))` with `I_1` from the generators divisible by `x_i`.
fn split_at(gens: &[u64], i: usize) -> (Vec<u64>, Vec<u64>) {
    let bit = 1u64 << i;
    let mut with: Vec<u64> = gens.iter().filter(|&&g| g & bit != 0).map(|&g| g & !bit).collect();
    let without: Vec<u64> = gens.iter().filter(|&&g| g & bit == 0).copied().collect();
    with.sort_unstable();
    (with, without)
}

fn uncovered(first: &[u64], second: &[u64]) -> Option<u64> {
    second.iter().copied().find(|&g| !first.iter().any(|&h| h & !g == 0))
}

#[derive(Default)]
pub struct SplittingSearch {
    memo: HashMap<Vec<u64>, bool>,
}

impl SplittingSearch {
    pub fn new() -> Self {
        Self::default()
    }

    /// `gens` must be a sorted antichain of support masks.
    pub fn is_splittable(&mut self, gens: &[u64]) -> bool {
        if gens.is_empty() || gens == [0] {
            return true;
        }
        if let Some(&v) = self.memo.get(gens) {
            return v;
        }
        let support = gens.iter().fold(0, |a, g| a | g);
        let result = mask_to_vec(support).into_iter().any(|i| {
            let (with, without) = split_at(gens, i);
            uncovered(&with, &without).is_none() && self.is_splittable(&with) && self.is_splittable(&without)
        });
        self.memo.insert(gens.to_vec(), result);
        result
    }

    fn tree(&mut self, gens: &[u64]) -> SplittingTree {
        if gens.is_empty() {
            return SplittingTree::Zero;
        }
        if gens == [0] {
            return SplittingTree::Unit;
        }
        let support = gens.iter().fold(0, |a, g| a | g);
        for i in mask_to_vec(support) {
            let (with, without) = split_at(gens, i);
            if uncovered(&with, &without).is_none() && self.is_splittable(&with) && self.is_splittable(&without) {
                return SplittingTree::Split {
                    var: i,
                    with_var: Box::new(self.tree(&with)),
                    without_var: Box::new(self.tree(&without)),
                };
            }
        }
        unreachable!("tree requested for a non-splittable ideal")
    }

    pub fn decide(&mut self, ideal: &MonomialIdeal) -> SplittabilityDecision {
        if !ideal.is_squarefree() {
            return Decision::Fails(SplittabilityFailure::NotSquarefree);
        }
        if ideal.nvars() > 64 {
            return Decision::Fails(SplittabilityFailure::TooManyVariables);
        }
        let mut gens = ideal.support_masks();
        gens.sort_unstable();
        if self.is_splittable(&gens) {
            return Decision::Holds(self.tree(&gens));
        }
        let support = gens.iter().fold(0, |a, g| a | g);
        let attempts = mask_to_vec(support)
            .into_iter()
            .map(|i| {
                let (with, without) = split_at(&gens, i);
                let failure = if let Some(g) = uncovered(&with, &without) {
                    SplitFailure::NotContained {
                        generator: mask_to_vec(g),
                    }
                } else if !self.is_splittable(&with) {
                    SplitFailure::FirstNotSplittable
                } else {
                    SplitFailure::SecondNotSplittable
                };
                VariableAttempt { var: i, failure }
            })
            .collect();
        Decision::Fails(SplittabilityFailure::Exhausted { attempts })
    }
}

/// Decides vertex splittability; the zero and unit ideals are base cases.
pub fn is_vertex_splittable(ideal: &MonomialIdeal) -> SplittabilityDecision {
    SplittingSearch::new().decide(ideal)
}

/// Rebuilds the ideal described by a splitting tree bottom-up, checking every
/// splitting condition on the way, and compares it with `ideal`.
pub fn verify_splitting_tree(ideal: &MonomialIdeal, tree: &SplittingTree) -> Result<(), ReplayError> {
    let rebuilt = rebuild(ideal.vars().to_vec(), tree)?;
    if &rebuilt != ideal {
        return Err(ReplayError::IdealMismatch);
    }
    Ok(())
}

fn rebuild(vars: Vec<String>, tree: &SplittingTree) -> Result<MonomialIdeal, ReplayError> {
    match tree {
        SplittingTree::Zero => Ok(MonomialIdeal::zero(vars)),
        SplittingTree::Unit => Ok(MonomialIdeal::unit(vars)),
        SplittingTree::Split {
            var,
            with_var,
            without_var,
        } => {
            let first = rebuild(vars.clone(), with_var)?;
            let second = rebuild(vars.clone(), without_var)?;
            let n = vars.len();
            if *var >= n {
                return Err(ReplayError::VariableInChild(var + 1));
            }
            let uses_var = |i: &MonomialIdeal| i.gens().iter().any(|g| g.exponents()[*var] > 0);
            if uses_var(&first) || uses_var(&second) {
                return Err(ReplayError::VariableInChild(var + 1));
            }
            if !second.is_subset_of(&first) {
                return Err(ReplayError::NotContained(var + 1));
            }
            let scaled = first.scale(&Monomial::var(n, *var)).expect("same ring");
            let sum = scaled.sum(&second).expect("same ring");
            let disjoint_union = sum.ngens() == scaled.ngens() + second.ngens()
                && scaled.gens().iter().all(|g| sum.gens().contains(g))
                && second.gens().iter().all(|g| sum.gens().contains(g));
            if !disjoint_union {
                return Err(ReplayError::NotDisjoint(var + 1));
            }
            Ok(sum)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::default_vars;

    fn cx(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        let f: Vec<Vec<usize>> = facets.iter().map(|f| f.iter().map(|v| v - 1).collect()).collect();
        SimplicialComplex::new(n, &f).unwrap()
    }

    fn sq(n: usize, gens: &[&[usize]]) -> MonomialIdeal {
        MonomialIdeal::from_masks(
            default_vars(n),
            gens.iter().map(|g| g.iter().fold(0u64, |m, v| m | 1 << (v - 1))),
        )
    }

    #[test]
    fn simplices_are_leaves() {
        for d in [SimplicialComplex::simplex(3), SimplicialComplex::empty_face(3)] {
            assert_eq!(is_vertex_decomposable(&d), Decision::Holds(SheddingTree::Simplex));
        }
        assert_eq!(
            is_vertex_decomposable(&SimplicialComplex::void(2)),
            Decision::Holds(SheddingTree::Void)
        );
    }

    #[test]
    fn path_complex_sheds_first_vertex() {
        let d = cx(3, &[&[1, 2], &[2, 3]]);
        let dec = is_vertex_decomposable(&d);
        let tree = dec.witness().unwrap();
        assert_eq!(
            tree,
            &SheddingTree::Shed {
                vertex: 0,
                deletion: Box::new(SheddingTree::Simplex),
                link: Box::new(SheddingTree::Simplex),
            }
        );
        verify_shedding_tree(&d, tree).unwrap();
    }

    #[test]
    fn two_disjoint_edges_are_not_decomposable() {
        let d = cx(4, &[&[1, 2], &[3, 4]]);
        let dec = is_vertex_decomposable(&d);
        let fail = dec.failure().unwrap();
        assert_eq!(fail.attempts.len(), 4);
        assert_eq!(
            fail.attempts[0],
            VertexAttempt {
                vertex: 0,
                failure: SheddingFailure::NotShedding { face: vec![1] }
            }
        );
        assert!(fail
            .attempts
            .iter()
            .all(|a| matches!(a.failure, SheddingFailure::NotShedding { .. })));
    }

    #[test]
    fn bogus_shedding_tree_is_rejected() {
        let d = cx(4, &[&[1, 2], &[3, 4]]);
        let tree = SheddingTree::Shed {
            vertex: 0,
            deletion: Box::new(SheddingTree::Simplex),
            link: Box::new(SheddingTree::Simplex),
        };
        assert_eq!(verify_shedding_tree(&d, &tree), Err(ReplayError::NotShedding(1)));
        assert!(verify_shedding_tree(&d, &SheddingTree::Simplex).is_err());
    }

    #[test]
    fn splittable_examples() {
        let i = sq(3, &[&[1], &[3]]);
        let dec = is_vertex_splittable(&i);
        assert_eq!(
            dec.witness().unwrap(),
            &SplittingTree::Split {
                var: 0,
                with_var: Box::new(SplittingTree::Unit),
                without_var: Box::new(SplittingTree::Split {
                    var: 2,
                    with_var: Box::new(SplittingTree::Unit),
                    without_var: Box::new(SplittingTree::Zero),
                }),
            }
        );
        verify_splitting_tree(&i, dec.witness().unwrap()).unwrap();

        let zero = MonomialIdeal::zero(default_vars(3));
        assert_eq!(is_vertex_splittable(&zero), Decision::Holds(SplittingTree::Zero));
        let unit = MonomialIdeal::unit(default_vars(3));
        assert_eq!(is_vertex_splittable(&unit), Decision::Holds(SplittingTree::Unit));
    }

    #[test]
    fn disjoint_products_are_not_splittable() {
        let i = sq(4, &[&[1, 2], &[3, 4]]);
        let dec = is_vertex_splittable(&i);
        match dec.failure().unwrap() {
            SplittabilityFailure::Exhausted { attempts } => {
                assert_eq!(attempts.len(), 4);
                assert!(attempts
                    .iter()
                    .all(|a| matches!(a.failure, SplitFailure::NotContained { .. })));
            }
            other => panic!("unexpected failure {other:?}"),
        }
    }

    #[test]
    fn non_squarefree_is_not_splittable() {
        let i = MonomialIdeal::with_default_vars(2, vec![vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(
            is_vertex_splittable(&i),
            Decision::Fails(SplittabilityFailure::NotSquarefree)
        );
    }

    #[test]
    fn bogus_splitting_tree_is_rejected() {
        let i = sq(4, &[&[1, 2], &[3, 4]]);
        let tree = SplittingTree::Split {
            var: 0,
            with_var: Box::new(SplittingTree::Split {
                var: 1,
                with_var: Box::new(SplittingTree::Unit),
                without_var: Box::new(SplittingTree::Zero),
            }),
            without_var: Box::new(SplittingTree::Split {
                var: 2,
                with_var: Box::new(SplittingTree::Split {
                    var: 3,
                    with_var: Box::new(SplittingTree::Unit),
                    without_var: Box::new(SplittingTree::Zero),
                }),
                without_var: Box::new(SplittingTree::Zero),
            }),
        };
        assert_eq!(verify_splitting_tree(&i, &tree), Err(ReplayError::NotContained(1)));
        let wrong = sq(3, &[&[1], &[3]]);
        let t = is_vertex_splittable(&wrong).witness().cloned().unwrap();
        assert_eq!(verify_splitting_tree(&sq(3, &[&[1], &[2]]), &t), Err(ReplayError::IdealMismatch));
    }

    #[test]
    fn path_dual_is_splittable() {
        let d = cx(3, &[&[1, 2], &[2, 3]]);
        let dual = d.dual_facet_ideal();
        assert_eq!(dual, sq(3, &[&[1], &[3]]));
        assert!(is_vertex_splittable(&dual).holds());
    }
}
