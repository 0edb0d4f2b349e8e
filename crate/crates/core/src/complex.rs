//! Simplicial complexes on a labelled ground set, the Stanley–Reisner
//! correspondence and Alexander duality.
//!
//! Faces are bitmasks over vertex labels `0..n` (so `n <= 64`). The ground set
//! is tracked separately because links and deletions live on a smaller vertex
//! set than the complex they came from. The void complex (no faces at all) and
//! the complex `{∅}` are distinct values.

use crate::error::{Error, Result};
use crate::monomial::{default_vars, MonomialIdeal};

pub const MAX_VERTICES: usize = 64;

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn mask_to_vec(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| (mask >> i) & 1 == 1).collect()
}

/// Keeps the inclusion-maximal masks, sorted ascending.
pub(crate) fn maximal_sets(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_unstable_by_key(|s| std::cmp::Reverse(s.count_ones()));
    sets.dedup();
    let mut kept: Vec<u64> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|&k| s & !k == 0) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimplicialComplex {
    n: usize,
    ground: u64,
    facets: Vec<u64>,
}

impl SimplicialComplex {
    /// Complex on vertex labels `0..n` generated by `faces` (zero-based);
    /// non-maximal faces are dropped. An empty face list yields the void complex.
    pub fn new(n: usize, faces: &[Vec<usize>]) -> Result<Self> {
        check_size(n)?;
        let mut masks = Vec::with_capacity(faces.len());
        for f in faces {
            let mut m = 0u64;
            for &v in f {
                if v >= n {
                    return Err(Error::InvalidComplex(format!(
                        "vertex {} outside ground set of size {n}",
                        v + 1
                    )));
                }
                m |= 1 << v;
            }
            masks.push(m);
        }
        Self::from_masks(n, masks)
    }

    pub fn from_masks(n: usize, faces: impl IntoIterator<Item = u64>) -> Result<Self> {
        check_size(n)?;
        let ground = full_mask(n);
        let faces: Vec<u64> = faces.into_iter().collect();
        if faces.iter().any(|f| f & !ground != 0) {
            return Err(Error::InvalidComplex("face outside ground set".into()));
        }
        Ok(SimplicialComplex {
            n,
            ground,
            facets: maximal_sets(faces),
        })
    }

    pub fn void(n: usize) -> Self {
        SimplicialComplex {
            n,
            ground: full_mask(n),
            facets: vec![],
        }
    }

    /// The complex `{∅}`.
    pub fn empty_face(n: usize) -> Self {
        SimplicialComplex {
            n,
            ground: full_mask(n),
            facets: vec![0],
        }
    }

    pub fn simplex(n: usize) -> Self {
        SimplicialComplex {
            n,
            ground: full_mask(n),
            facets: vec![full_mask(n)],
        }
    }

    /// Number of vertex labels; the ground set is a subset of `0..n`.
    pub fn label_count(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> u64 {
        self.ground
    }

    pub fn ground_vertices(&self) -> Vec<usize> {
        mask_to_vec(self.ground)
    }

    pub fn facets(&self) -> &[u64] {
        &self.facets
    }

    pub fn facet_lists(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&f| mask_to_vec(f)).collect()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1
    }

    /// Vertices `v` with `{v}` a face.
    pub fn vertex_mask(&self) -> u64 {
        self.facets.iter().fold(0, |a, f| a | f)
    }

    pub fn is_face(&self, face: u64) -> bool {
        self.facets.iter().any(|&f| face & !f == 0)
    }

    /// Dimension, `None` for the void complex.
    pub fn dimension(&self) -> Option<i64> {
        self.facets.iter().map(|f| f.count_ones() as i64 - 1).max()
    }

    /// All faces, smallest first (exponential; intended for tests and small inputs).
    pub fn faces(&self) -> Vec<u64> {
        let mut out: Vec<u64> = Vec::new();
        for &f in &self.facets {
            let mut sub = f;
            loop {
                out.push(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn is_pure(&self) -> Result<bool> {
        let first = self.facets.first().ok_or(Error::VoidComplex)?;
        Ok(self.facets.iter().all(|f| f.count_ones() == first.count_ones()))
    }

    /// `(lk(v), del(v))`, both on the ground set with `v` removed.
    pub fn link_and_deletion(&self, v: usize) -> Result<(SimplicialComplex, SimplicialComplex)> {
        if self.is_void() {
            return Err(Error::VoidComplex);
        }
        if v >= self.n || (self.ground >> v) & 1 == 0 {
            return Err(Error::NotAVertex(v + 1));
        }
        let bit = 1u64 << v;
        let ground = self.ground & !bit;
        let link = self
            .facets
            .iter()
            .filter(|&&f| f & bit != 0)
            .map(|&f| f & !bit)
            .collect();
        let deletion = self.facets.iter().map(|&f| f & !bit).collect();
        Ok((
            SimplicialComplex {
                n: self.n,
                ground,
                facets: maximal_sets(link),
            },
            SimplicialComplex {
                n: self.n,
                ground,
                facets: maximal_sets(deletion),
            },
        ))
    }

    /// Stanley–Reisner ideal: generated by the minimal non-faces.
    pub fn stanley_reisner_ideal(&self) -> Result<MonomialIdeal> {
        self.stanley_reisner_ideal_with(default_vars(self.n))
    }

    pub fn stanley_reisner_ideal_with(&self, vars: Vec<String>) -> Result<MonomialIdeal> {
        if self.is_void() {
            return Err(Error::VoidComplex);
        }
        check_vars(self.n, &vars)?;
        // I_Δ is the intersection of the primes generated by facet complements.
        let mut acc = MonomialIdeal::unit(vars.clone());
        for &f in &self.facets {
            acc = acc
                .intersect(&MonomialIdeal::prime(vars.clone(), self.ground & !f))
                .expect("same ring");
        }
        Ok(acc)
    }

    /// `I_{Δ^∨}`: generated by the complements (in the ground set) of the facets.
    pub fn dual_facet_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::from_masks(
            default_vars(self.n),
            self.facets.iter().map(|&f| self.ground & !f),
        )
    }

    pub fn dual_facet_ideal_with(&self, vars: Vec<String>) -> Result<MonomialIdeal> {
        check_vars(self.n, &vars)?;
        Ok(MonomialIdeal::from_masks(
            vars,
            self.facets.iter().map(|&f| self.ground & !f),
        ))
    }

    /// Compact rendering with one-based labels, e.g. `<12, 23>`.
    pub fn display(&self) -> String {
        if self.is_void() {
            return "void".into();
        }
        let parts: Vec<String> = self
            .facets
            .iter()
            .map(|&f| {
                if f == 0 {
                    "∅".to_string()
                } else {
                    let vs: Vec<String> = mask_to_vec(f).iter().map(|v| (v + 1).to_string()).collect();
                    vs.join(if self.n > 9 { "," } else { "" })
                }
            })
            .collect();
        format!("<{}>", parts.join(", "))
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::TooManyVariables {
            found: n,
            limit: MAX_VERTICES,
        });
    }
    Ok(())
}

fn check_vars(n: usize, vars: &[String]) -> Result<()> {
    if vars.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: vars.len(),
        });
    }
    Ok(())
}

fn squarefree_masks(i: &MonomialIdeal) -> Result<Vec<u64>> {
    if !i.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    check_size(i.nvars())?;
    Ok(i.support_masks())
}

/// The Stanley–Reisner complex of a squarefree ideal: faces are the supports of
/// squarefree monomials outside `I`. The unit ideal yields the void complex.
pub fn complex_of_ideal(i: &MonomialIdeal) -> Result<SimplicialComplex> {
    squarefree_masks(i)?;
    let n = i.nvars();
    let covers = alexander_dual(i)?;
    SimplicialComplex::from_masks(n, covers.support_masks().into_iter().map(|c| full_mask(n) & !c))
}

/// Alexander dual of a squarefree ideal: the intersection of the primes
/// `(x_j : j in supp u)` over the generators `u`, whose generators are the minimal
/// transversals of the generator supports.
pub fn alexander_dual(i: &MonomialIdeal) -> Result<MonomialIdeal> {
    let masks = squarefree_masks(i)?;
    let vars = i.vars().to_vec();
    let mut acc = MonomialIdeal::unit(vars.clone());
    for m in masks {
        acc = acc.intersect(&MonomialIdeal::prime(vars.clone(), m))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn stanley_reisner_examples() {
        assert_eq!(cx(3, &[&[1, 2], &[2, 3]]).stanley_reisner_ideal().unwrap(), sq(3, &[&[1, 3]]));
        assert!(SimplicialComplex::simplex(4).stanley_reisner_ideal().unwrap().is_zero());
        assert_eq!(
            SimplicialComplex::empty_face(2).stanley_reisner_ideal().unwrap(),
            sq(2, &[&[1], &[2]])
        );
        assert_eq!(
            SimplicialComplex::void(2).stanley_reisner_ideal().unwrap_err(),
            Error::VoidComplex
        );
    }

    #[test]
    fn complex_of_ideal_examples() {
        assert_eq!(complex_of_ideal(&sq(3, &[&[1, 3]])).unwrap(), cx(3, &[&[1, 2], &[2, 3]]));
        assert_eq!(
            complex_of_ideal(&MonomialIdeal::zero(default_vars(3))).unwrap(),
            SimplicialComplex::simplex(3)
        );
        assert_eq!(
            complex_of_ideal(&sq(3, &[&[1], &[2], &[3]])).unwrap(),
            SimplicialComplex::empty_face(3)
        );
        let bad = MonomialIdeal::with_default_vars(2, vec![vec![2, 0]]).unwrap();
        assert_eq!(complex_of_ideal(&bad).unwrap_err(), Error::NotSquarefree);
    }

    #[test]
    fn alexander_dual_examples() {
        assert_eq!(alexander_dual(&sq(3, &[&[1, 3]])).unwrap(), sq(3, &[&[1], &[3]]));
        let triangle = sq(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(alexander_dual(&triangle).unwrap(), triangle);
        assert_eq!(alexander_dual(&sq(4, &[&[1], &[2], &[3], &[4]])).unwrap(), sq(4, &[&[1, 2, 3, 4]]));
    }

    #[test]
    fn alexander_dual_matches_facet_complements() {
        let i = sq(4, &[&[1, 2], &[2, 3, 4]]);
        let delta = complex_of_ideal(&i).unwrap();
        assert_eq!(delta.dual_facet_ideal(), alexander_dual(&i).unwrap());
    }

    #[test]
    fn link_and_deletion_examples() {
        let d = cx(3, &[&[1, 2], &[2, 3]]);
        let (lk, del) = d.link_and_deletion(1).unwrap();
        assert_eq!(lk.facet_lists(), vec![vec![0], vec![2]]);
        assert_eq!(del.facet_lists(), vec![vec![0], vec![2]]);
        assert_eq!(lk.ground_vertices(), vec![0, 2]);

        let (lk, del) = SimplicialComplex::simplex(2).link_and_deletion(0).unwrap();
        assert_eq!(lk.facet_lists(), vec![vec![1]]);
        assert_eq!(del.facet_lists(), vec![vec![1]]);

        let d = cx(4, &[&[1, 2], &[3, 4]]);
        let (lk, del) = d.link_and_deletion(0).unwrap();
        assert_eq!(lk.facet_lists(), vec![vec![1]]);
        assert_eq!(del.facet_lists(), vec![vec![1], vec![2, 3]]);

        assert_eq!(d.link_and_deletion(7).unwrap_err(), Error::NotAVertex(8));
        assert_eq!(
            SimplicialComplex::void(2).link_and_deletion(0).unwrap_err(),
            Error::VoidComplex
        );
    }

    #[test]
    fn purity() {
        assert!(cx(3, &[&[1, 2], &[2, 3]]).is_pure().unwrap());
        assert!(!cx(3, &[&[1, 2], &[3]]).is_pure().unwrap());
        assert!(SimplicialComplex::empty_face(3).is_pure().unwrap());
        assert!(SimplicialComplex::void(3).is_pure().is_err());
    }

    #[test]
    fn faces_of_path() {
        let d = cx(3, &[&[1, 2], &[2, 3]]);
        assert_eq!(d.faces(), vec![0b000, 0b001, 0b010, 0b011, 0b100, 0b110]);
        assert!(d.is_face(0b010));
        assert!(!d.is_face(0b101));
    }
}
