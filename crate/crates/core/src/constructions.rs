//! Ideal constructions: weakly polymatroidal and polymatroidal tests, the
//! ideal `L(I)` of an Artinian monomial ideal, colourings and the coloured
//! ideal `I_χ` with its complex `Δ_χ`.

use serde::Serialize;

use crate::certificate::Decision;
use crate::complex::{full_mask, SimplicialComplex};
use crate::error::{Error, Result};
use crate::io::one_based_vec;
use crate::monomial::{Monomial, MonomialIdeal};

/// Subset sweeps over `2^n` supports are capped at this many variables.
pub const MAX_SWEEP_VARS: usize = 20;
/// Exhaustive search over variable orders is capped at this many variables.
pub const MAX_ORDER_SEARCH_VARS: usize = 8;

/// An ideal with a variable order: `order[p]` is the variable playing `x_{p+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedIdeal {
    ideal: MonomialIdeal,
    order: Vec<usize>,
}

impl OrderedIdeal {
    pub fn new(ideal: MonomialIdeal, order: Vec<usize>) -> Result<Self> {
        let n = ideal.nvars();
        let mut seen = vec![false; n];
        if order.len() != n {
            return Err(Error::InvalidOrder(format!("expected {n} entries, found {}", order.len())));
        }
        for &v in &order {
            if v >= n || seen[v] {
                return Err(Error::InvalidOrder(format!("not a permutation of 1..{n}")));
            }
            seen[v] = true;
        }
        Ok(OrderedIdeal { ideal, order })
    }

    pub fn natural(ideal: MonomialIdeal) -> Self {
        let order = (0..ideal.nvars()).collect();
        OrderedIdeal { ideal, order }
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }
}

/// A pair `(u, v)` of generators and the position `i` (one-based in the
/// order) where the weak exchange fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeakExchangeViolation {
    pub u: Monomial,
    pub v: Monomial,
    /// Variable playing `x_i` at the first position where `u` and `v` differ.
    #[serde(rename = "var")]
    pub variable: usize,
    pub position: usize,
}

pub type WeakPolymatroidalDecision = Decision<(), WeakExchangeViolation>;

/// Weakly polymatroidal test under the given order: whenever
/// `a_1 = b_1, ..., a_{i-1} = b_{i-1}` and `a_i < b_i` for `u = x^a, v = x^b`
/// in `G(I)`, some `j > i` must have `x_i (u / x_j) ∈ G(I)`.
pub fn is_weakly_polymatroidal(oi: &OrderedIdeal) -> WeakPolymatroidalDecision {
    let gens = oi.ideal.gens();
    let order = &oi.order;
    for u in gens {
        let a = u.exponents();
        for v in gens {
            let b = v.exponents();
            let Some(pos) = order.iter().position(|&x| a[x] != b[x]) else {
                continue;
            };
            let xi = order[pos];
            if a[xi] > b[xi] {
                continue;
            }
            let exchanged = order[pos + 1..].iter().any(|&xj| {
                if a[xj] == 0 {
                    return false;
                }
                let mut w = a.to_vec();
                w[xi] += 1;
                w[xj] -= 1;
                gens.binary_search(&Monomial::new(w)).is_ok()
            });
            if !exchanged {
                return Decision::Fails(WeakExchangeViolation {
                    u: u.clone(),
                    v: v.clone(),
                    variable: xi,
                    position: pos + 1,
                });
            }
        }
    }
    Decision::Holds(())
}

/// Searches all `n!` orders (Heap's algorithm) for one making the ideal
/// weakly polymatroidal.
pub fn find_weakly_polymatroidal_order(ideal: &MonomialIdeal) -> Result<Option<Vec<usize>>> {
    let n = ideal.nvars();
    if n > MAX_ORDER_SEARCH_VARS {
        return Err(Error::TooManyVariables {
            found: n,
            limit: MAX_ORDER_SEARCH_VARS,
        });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut counters = vec![0usize; n];
    let test = |p: &[usize]| {
        is_weakly_polymatroidal(&OrderedIdeal {
            ideal: ideal.clone(),
            order: p.to_vec(),
        })
        .holds()
    };
    if test(&perm) {
        return Ok(Some(perm));
    }
    let mut i = 0;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            if test(&perm) {
                return Ok(Some(perm));
            }
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PolymatroidalFailure {
    NotEquigenerated,
    Exchange { u: Monomial, v: Monomial, var: usize },
}

pub type PolymatroidalDecision = Decision<(), PolymatroidalFailure>;

/// Polymatroidal test via the symmetric exchange property: `I` is equigenerated
/// and for `u, v ∈ G(I)` with `deg_i u > deg_i v` there is `j` with
/// `deg_j u < deg_j v` and `x_j u / x_i ∈ G(I)`.
pub fn is_polymatroidal(ideal: &MonomialIdeal) -> PolymatroidalDecision {
    if ideal.generated_degree().is_none() && !ideal.is_zero() {
        return Decision::Fails(PolymatroidalFailure::NotEquigenerated);
    }
    let gens = ideal.gens();
    let n = ideal.nvars();
    for u in gens {
        let a = u.exponents();
        for v in gens {
            let b = v.exponents();
            for i in (0..n).filter(|&i| a[i] > b[i]) {
                let ok = (0..n).filter(|&j| a[j] < b[j]).any(|j| {
                    let mut w = a.to_vec();
                    w[i] -= 1;
                    w[j] += 1;
                    gens.binary_search(&Monomial::new(w)).is_ok()
                });
                if !ok {
                    return Decision::Fails(PolymatroidalFailure::Exchange {
                        u: u.clone(),
                        v: v.clone(),
                        var: i,
                    });
                }
            }
        }
    }
    Decision::Holds(())
}

/// Smallest pure power `c_i` with `x_i^{c_i} ∈ G(I)`, per variable.
fn pure_powers(ideal: &MonomialIdeal) -> Result<Vec<u64>> {
    (0..ideal.nvars())
        .map(|i| {
            ideal
                .gens()
                .iter()
                .filter(|g| g.support() == [i])
                .map(|g| g.exponents()[i])
                .min()
                .ok_or_else(|| Error::NotArtinian(ideal.vars()[i].clone()))
        })
        .collect()
}

/// `L(I)` for an Artinian ideal: one generator `x_{1,a_1+1} ... x_{n,a_n+1}` per
/// standard monomial `x^a ∉ I`, over the variables `x_{i,j}`, `j <= c_i`.
pub fn build_l(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    let c = pure_powers(ideal)?;
    let mut offset = Vec::with_capacity(c.len());
    let mut vars = Vec::new();
    for (i, &ci) in c.iter().enumerate() {
        offset.push(vars.len());
        for j in 1..=ci {
            vars.push(format!("{}_{}", ideal.vars()[i], j));
        }
    }
    let total = vars.len();
    let mut gens = Vec::new();
    let mut a = vec![0u64; c.len()];
    // odometer over the box a_i < c_i
    loop {
        let m = Monomial::new(a.clone());
        if !ideal.contains(&m) {
            let mut e = vec![0u64; total];
            for (i, &ai) in a.iter().enumerate() {
                e[offset[i] + ai as usize] = 1;
            }
            gens.push(Monomial::new(e));
        }
        let mut p = a.len();
        loop {
            if p == 0 {
                return MonomialIdeal::new(vars, gens);
            }
            p -= 1;
            a[p] += 1;
            if a[p] < c[p] {
                break;
            }
            a[p] = 0;
        }
    }
}

/// A partition of the variables into colour classes `V_1, ..., V_s`, stored as
/// zero-based variable indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Colouring {
    blocks: Vec<Vec<usize>>,
}

impl Colouring {
    /// Validates that the blocks partition `0..n` into nonempty pieces.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidColouring("empty block".into()));
            }
            for &v in b {
                if v >= n {
                    return Err(Error::InvalidColouring(format!("variable index {} out of range", v + 1)));
                }
                if seen[v] {
                    return Err(Error::InvalidColouring(format!("variable {} in two blocks", v + 1)));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidColouring(format!("variable {} not covered", v + 1)));
        }
        let mut blocks = blocks;
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        Ok(Colouring { blocks })
    }

    /// `V_i = {x_i}` for every variable.
    pub fn singletons(n: usize) -> Self {
        Colouring {
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    fn masks(&self) -> Vec<u64> {
        self.blocks.iter().map(|b| b.iter().fold(0, |m, &v| m | 1 << v)).collect()
    }
}

/// All squarefree monomials of `I`, as support masks in ascending order.
pub fn squarefree_members(ideal: &MonomialIdeal) -> Result<Vec<u64>> {
    let n = ideal.nvars();
    if n > MAX_SWEEP_VARS {
        return Err(Error::TooManyVariables {
            found: n,
            limit: MAX_SWEEP_VARS,
        });
    }
    let gens: Vec<u64> = ideal
        .gens()
        .iter()
        .filter(|g| g.is_squarefree())
        .map(Monomial::support_mask)
        .collect();
    Ok((0..1u64 << n).filter(|&s| gens.iter().any(|&g| g & !s == 0)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColouringViolation {
    #[serde(serialize_with = "one_based_vec")]
    pub block: Vec<usize>,
    /// Support of the squarefree monomial `u_j`.
    #[serde(serialize_with = "one_based_vec")]
    pub monomial: Vec<usize>,
}

pub type ColouringDecision = Decision<(), ColouringViolation>;

fn check_squarefree_proper(ideal: &MonomialIdeal) -> Result<()> {
    if !ideal.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    if ideal.is_zero() || ideal.is_unit() {
        return Err(Error::ZeroOrUnit);
    }
    Ok(())
}

/// Checks `|V_i \ supp(u)| <= 1` for every block and every squarefree `u ∈ I`.
pub fn check_colouring(ideal: &MonomialIdeal, chi: &Colouring) -> Result<ColouringDecision> {
    check_squarefree_proper(ideal)?;
    let n = ideal.nvars();
    Colouring::new(n, chi.blocks.clone())?;
    for u in squarefree_members(ideal)? {
        for (block, mask) in chi.blocks.iter().zip(chi.masks()) {
            if (mask & !u).count_ones() > 1 {
                return Ok(Decision::Fails(ColouringViolation {
                    block: block.clone(),
                    monomial: crate::complex::mask_to_vec(u),
                }));
            }
        }
    }
    Ok(Decision::Holds(()))
}

fn require_valid(ideal: &MonomialIdeal, chi: &Colouring) -> Result<Vec<u64>> {
    if let Decision::Fails(v) = check_colouring(ideal, chi)? {
        let names = |idx: &[usize]| -> String {
            idx.iter().map(|&i| ideal.vars()[i].clone()).collect::<Vec<_>>().join(",")
        };
        return Err(Error::InvalidColouring(format!(
            "block {{{}}} misses more than one variable of the monomial with support {{{}}}",
            names(&v.block),
            names(&v.monomial)
        )));
    }
    squarefree_members(ideal)
}

fn chi_vars(ideal: &MonomialIdeal, s: usize) -> Vec<String> {
    let mut vars = ideal.vars().to_vec();
    vars.extend((1..=s).map(|j| format!("y{j}")));
    vars
}

/// `I_χ = (u w_u : u ∈ SMon(I))` with `w_u = Π_{V_j ⊄ supp u} y_j`, in the ring
/// with variables `x_1..x_n, y_1..y_s`.
pub fn build_i_chi(ideal: &MonomialIdeal, chi: &Colouring) -> Result<MonomialIdeal> {
    let members = require_valid(ideal, chi)?;
    let n = ideal.nvars();
    let blocks = chi.masks();
    let vars = chi_vars(ideal, blocks.len());
    let gens = members
        .into_iter()
        .map(|u| {
            let mut mask = u;
            for (j, &b) in blocks.iter().enumerate() {
                if b & !u != 0 {
                    mask |= 1 << (n + j);
                }
            }
            mask
        })
        .collect::<Vec<_>>();
    Ok(MonomialIdeal::from_masks(vars, gens))
}

/// `Δ_χ`, generated by `F ∪ {y_j : V_j ∩ F = ∅}` for the faces `F = X \ supp(u)`,
/// `u ∈ SMon(I)`, on the vertex labels `x_1..x_n, y_1..y_s`.
pub fn build_delta_chi(ideal: &MonomialIdeal, chi: &Colouring) -> Result<SimplicialComplex> {
    let members = require_valid(ideal, chi)?;
    let n = ideal.nvars();
    let blocks = chi.masks();
    let x = full_mask(n);
    let faces = members.into_iter().map(|u| {
        let f = x & !u;
        let mut face = f;
        for (j, &b) in blocks.iter().enumerate() {
            if b & f == 0 {
                face |= 1 << (n + j);
            }
        }
        face
    });
    SimplicialComplex::from_masks(n + blocks.len(), faces)
}

/// Variable names for the ring of `I_χ` (and the vertex labels of `Δ_χ`).
pub fn i_chi_vars(ideal: &MonomialIdeal, chi: &Colouring) -> Vec<String> {
    chi_vars(ideal, chi.len())
}
