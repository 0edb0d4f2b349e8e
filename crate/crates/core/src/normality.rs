//! Integral closures of powers, normality, associated primes of powers and
//! the persistence properties.
//!
//! A monomial `x^b` lies in the integral closure of `I^k` iff `b` lies in
//! `k * conv(G(I)) + R^n_{>=0}`, i.e. iff there are rationals `λ_i >= 0` with
//! `Σ λ_i = k` and `Σ λ_i a_i <= b`. That linear system is decided exactly by
//! [`crate::lp::find_feasible`]; the certificate is the vector `λ`.
//!
//! Closure generators are searched in the box `0 <= b_j <= k * max_i a_ij`:
//! lowering a coordinate above that bound keeps `b` in the closure, so every
//! minimal generator lies inside it.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::Decision;
use crate::error::{Error, Result};
use crate::io::{fraction_strings, one_based_vec};
use crate::linalg::rational_rank;
use crate::lp::find_feasible;
use crate::monomial::{Monomial, MonomialIdeal};

pub const DEFAULT_BOX_LIMIT: u128 = 10_000_000;
pub const DEFAULT_SMAX: u64 = 6;

/// Coefficients `λ_i` (one per minimal generator) proving closure membership.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lambda(#[serde(serialize_with = "fraction_strings")] pub Vec<BigRational>);

impl Lambda {
    /// Least common denominator of the coefficients.
    pub fn denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.0.iter().fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()))
    }
}

/// `b` is outside the closure: the linear system has no nonnegative solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoConvexCombination;

pub type ClosureDecision = Decision<Lambda, NoConvexCombination>;

fn require_proper(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_zero() || ideal.is_unit() {
        return Err(Error::ZeroOrUnit);
    }
    Ok(())
}

fn check_point(ideal: &MonomialIdeal, b: &Monomial) -> Result<()> {
    if b.len() != ideal.nvars() {
        return Err(Error::DimensionMismatch {
            expected: ideal.nvars(),
            found: b.len(),
        });
    }
    Ok(())
}

fn int(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Decides whether `x^b` lies in the integral closure of `I^k` by exact
/// phase-one simplex on `Σ λ_i a_i + s = b, Σ λ_i = k, λ, s >= 0`.
pub fn closure_membership(ideal: &MonomialIdeal, k: u32, b: &Monomial) -> Result<ClosureDecision> {
    require_proper(ideal)?;
    check_point(ideal, b)?;
    Ok(closure_lp(ideal.gens(), k, b))
}

fn closure_lp(gens: &[Monomial], k: u32, b: &Monomial) -> ClosureDecision {
    let n = b.len();
    let m = gens.len();
    let zero = BigRational::zero();
    let one = int(1);
    let mut rows = Vec::with_capacity(n + 1);
    let mut rhs = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut row = Vec::with_capacity(m + n);
        row.extend(gens.iter().map(|g| int(g.exponents()[j])));
        row.extend((0..n).map(|s| if s == j { one.clone() } else { zero.clone() }));
        rows.push(row);
        rhs.push(int(b.exponents()[j]));
    }
    let mut total = vec![one; m];
    total.resize(m + n, zero);
    rows.push(total);
    rhs.push(int(u64::from(k)));
    match find_feasible(&rows, &rhs) {
        Some(mut x) => {
            x.truncate(m);
            Decision::Holds(Lambda(x))
        }
        None => Decision::Fails(NoConvexCombination),
    }
}

/// Independent check of a closure certificate.
pub fn verify_lambda(ideal: &MonomialIdeal, k: u32, b: &Monomial, lambda: &Lambda) -> bool {
    if lambda.0.len() != ideal.ngens() || b.len() != ideal.nvars() {
        return false;
    }
    if lambda.0.iter().any(|l| l.is_negative()) {
        return false;
    }
    let sum: BigRational = lambda.0.iter().sum();
    if sum != int(u64::from(k)) {
        return false;
    }
    (0..ideal.nvars()).all(|j| {
        let lhs: BigRational = lambda
            .0
            .iter()
            .zip(ideal.gens())
            .map(|(l, g)| l * int(g.exponents()[j]))
            .sum();
        lhs <= int(b.exponents()[j])
    })
}

/// `x^b ∈ I^m`, decided by a depth-first search over generator multiplicities
/// without materializing `I^m`.
pub fn in_power(ideal: &MonomialIdeal, m: u64, b: &Monomial) -> bool {
    let gens = ideal.gens();
    if m == 0 {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    // smallest generator degree among gens[i..]
    let mut suffix_min = vec![u64::MAX; gens.len() + 1];
    for i in (0..gens.len()).rev() {
        suffix_min[i] = suffix_min[i + 1].min(gens[i].degree());
    }
    let mut dead = HashSet::new();
    power_dfs(gens, &suffix_min, 0, m, b.exponents().to_vec(), &mut dead)
}

fn power_dfs(
    gens: &[Monomial],
    suffix_min: &[u64],
    idx: usize,
    remaining: u64,
    budget: Vec<u64>,
    dead: &mut HashSet<(usize, u64, Vec<u64>)>,
) -> bool {
    if remaining == 0 {
        return true;
    }
    if idx == gens.len() {
        return false;
    }
    let total: u64 = budget.iter().sum();
    if total < remaining.saturating_mul(suffix_min[idx]) {
        return false;
    }
    let key = (idx, remaining, budget);
    if dead.contains(&key) {
        return false;
    }
    let (_, _, budget) = &key;
    let g = gens[idx].exponents();
    let most = g
        .iter()
        .zip(budget)
        .filter(|(&a, _)| a > 0)
        .map(|(&a, &r)| r / a)
        .min()
        .unwrap_or(remaining)
        .min(remaining);
    for c in (0..=most).rev() {
        let next: Vec<u64> = budget.iter().zip(g).map(|(&r, &a)| r - c * a).collect();
        if power_dfs(gens, suffix_min, idx + 1, remaining - c, next, dead) {
            return true;
        }
    }
    dead.insert(key);
    false
}

/// Oracle for closure membership: `Some(s)` for the least `s <= s_max` with
/// `x^{s b} ∈ I^{s k}`. `None` is inconclusive.
pub fn closure_membership_oracle(ideal: &MonomialIdeal, k: u32, b: &Monomial, s_max: u64) -> Result<Option<u64>> {
    check_point(ideal, b)?;
    Ok((1..=s_max).find(|&s| in_power(ideal, s * u64::from(k), &b.pow(s))))
}

/// Upper corner of the search box, `factor * max_i a_ij` per coordinate.
fn box_bounds(ideal: &MonomialIdeal, factor: u64) -> Vec<u64> {
    ideal
        .max_exponents()
        .into_iter()
        .map(|e| e.checked_mul(factor).expect("exponent overflow"))
        .collect()
}

fn box_size(bounds: &[u64], limit: u128) -> Result<usize> {
    let mut size: u128 = 1;
    for &b in bounds {
        size = size.saturating_mul(u128::from(b) + 1);
    }
    if size > limit {
        return Err(Error::ResourceLimit { needed: size, limit });
    }
    Ok(size as usize)
}

/// The point with mixed-radix index `idx` (first coordinate varies slowest).
fn box_point(bounds: &[u64], mut idx: usize) -> Monomial {
    let mut e = vec![0u64; bounds.len()];
    for j in (0..bounds.len()).rev() {
        let radix = bounds[j] as usize + 1;
        e[j] = (idx % radix) as u64;
        idx /= radix;
    }
    Monomial::new(e)
}

/// Minimal generators of the integral closure of `I^k`.
pub fn integral_closure_power(ideal: &MonomialIdeal, k: u32, box_limit: u128) -> Result<MonomialIdeal> {
    Ok(closure_with_power(ideal, k, box_limit)?.0)
}

fn strides(bounds: &[u64]) -> Vec<usize> {
    let mut st = vec![1usize; bounds.len()];
    for j in (0..bounds.len().saturating_sub(1)).rev() {
        st[j] = st[j + 1] * (bounds[j + 1] as usize + 1);
    }
    st
}

/// Membership in `power` for every box point, indexed like [`box_point`].
fn membership_table(power: &MonomialIdeal, bounds: &[u64], size: usize) -> Vec<bool> {
    let st = strides(bounds);
    let mut table = vec![false; size];
    for g in power.gens() {
        let e = g.exponents();
        if e.iter().zip(bounds).all(|(a, b)| a <= b) {
            table[e.iter().zip(&st).map(|(&a, &s)| a as usize * s).sum::<usize>()] = true;
        }
    }
    // b ∈ I iff b is a generator or b - e_j ∈ I for some j
    for idx in 0..size {
        if table[idx] {
            continue;
        }
        let mut rest = idx;
        for j in 0..bounds.len() {
            let c = rest / st[j];
            rest %= st[j];
            if c > 0 && table[idx - st[j]] {
                table[idx] = true;
                break;
            }
        }
    }
    table
}

/// `(closure(I^k), I^k)`.
fn closure_with_power(ideal: &MonomialIdeal, k: u32, box_limit: u128) -> Result<(MonomialIdeal, MonomialIdeal)> {
    require_proper(ideal)?;
    let bounds = box_bounds(ideal, u64::from(k));
    let size = box_size(&bounds, box_limit)?;
    let power = ideal.power(k);
    let table = membership_table(&power, &bounds, size);
    let min_degree = ideal.gens().iter().map(Monomial::degree).min().unwrap_or(0) * u64::from(k);
    let extra: Vec<Monomial> = (0..size)
        .into_par_iter()
        .filter_map(|idx| {
            if table[idx] {
                return None;
            }
            let b = box_point(&bounds, idx);
            // Σλ_i deg(a_i) <= deg(b) is necessary for membership.
            if b.degree() < min_degree {
                return None;
            }
            closure_lp(ideal.gens(), k, &b).holds().then_some(b)
        })
        .collect();
    let mut gens = power.gens().to_vec();
    gens.extend(extra);
    let closure = MonomialIdeal::new(ideal.vars().to_vec(), gens)?;
    Ok((closure, power))
}

/// Whether `closure(I^k) = I^k`. Only the box points outside `I^k` that are
/// maximal among such points need the LP: the closure is an up-set, so any
/// extra element lies below one of them.
fn closure_is_power(ideal: &MonomialIdeal, k: u32, box_limit: u128) -> Result<bool> {
    require_proper(ideal)?;
    let bounds = box_bounds(ideal, u64::from(k));
    let size = box_size(&bounds, box_limit)?;
    let power = ideal.power(k);
    let table = membership_table(&power, &bounds, size);
    let st = strides(&bounds);
    let extra = (0..size).into_par_iter().any(|idx| {
        if table[idx] {
            return false;
        }
        let b = box_point(&bounds, idx);
        let maximal = (0..bounds.len()).all(|j| b.exponents()[j] == bounds[j] || table[idx + st[j]]);
        maximal && closure_lp(ideal.gens(), k, &b).holds()
    });
    Ok(!extra)
}

/// A monomial in the closure of `I^k` but not in `I^k`, with its certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalityWitness {
    pub k: u32,
    pub monomial: Monomial,
    pub lambda: Lambda,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalityReport {
    pub max_power: u32,
    /// `None` when `closure(I^k) = I^k` for every `k <= max_power`.
    pub failure: Option<NormalityWitness>,
}

impl NormalityReport {
    pub fn is_normal(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `closure(I^k) = I^k` for `k = 1..=max_power`. The witness for a
/// failure is the least new closure generator by degree, then lexicographically.
pub fn is_normal_up_to(ideal: &MonomialIdeal, max_power: u32, box_limit: u128) -> Result<NormalityReport> {
    if ideal.is_zero() || ideal.is_unit() {
        return Ok(NormalityReport {
            max_power,
            failure: None,
        });
    }
    for k in 1..=max_power {
        if closure_is_power(ideal, k, box_limit)? {
            continue;
        }
        let (closure, power) = closure_with_power(ideal, k, box_limit)?;
        let mut new: Vec<&Monomial> = closure.gens().iter().filter(|g| !power.contains(g)).collect();
        new.sort_by_key(|g| (g.degree(), (*g).clone()));
        if let Some(b) = new.first() {
            let lambda = match closure_lp(ideal.gens(), k, b) {
                Decision::Holds(l) => l,
                Decision::Fails(_) => unreachable!("closure generator without certificate"),
            };
            return Ok(NormalityReport {
                max_power,
                failure: Some(NormalityWitness {
                    k,
                    monomial: (*b).clone(),
                    lambda,
                }),
            });
        }
    }
    Ok(NormalityReport {
        max_power,
        failure: None,
    })
}

/// Replays a failure witness: the certificate checks and `x^b ∉ I^k`.
pub fn verify_normality_witness(ideal: &MonomialIdeal, w: &NormalityWitness) -> bool {
    verify_lambda(ideal, w.k, &w.monomial, &w.lambda) && !ideal.power(w.k).contains(&w.monomial)
}

/// An associated prime `(x_i : i ∈ vars)` of `S/I^k` with a monomial `m`
/// satisfying `(I^k : m) = (x_i : i ∈ vars)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssPrime {
    #[serde(serialize_with = "one_based_vec")]
    pub vars: Vec<usize>,
    pub witness: Monomial,
}

impl AssPrime {
    pub fn mask(&self) -> u64 {
        self.vars.iter().fold(0, |m, &v| m | 1 << v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssSet {
    pub k: u32,
    pub primes: Vec<AssPrime>,
}

impl AssSet {
    pub fn masks(&self) -> Vec<u64> {
        self.primes.iter().map(AssPrime::mask).collect()
    }
}

/// Associated primes of `S/I^k`, found by exhaustive search for colon
/// witnesses in the box `m_j <= box_factor * max_i a_ij`. The conventional
/// factor is `k + 1`.
pub fn associated_primes(ideal: &MonomialIdeal, k: u32, box_factor: u64, box_limit: u128) -> Result<AssSet> {
    if ideal.nvars() > 64 {
        return Err(Error::TooManyVariables {
            found: ideal.nvars(),
            limit: 64,
        });
    }
    if ideal.is_zero() || ideal.is_unit() {
        return Ok(AssSet { k, primes: vec![] });
    }
    let bounds = box_bounds(ideal, box_factor);
    let size = box_size(&bounds, box_limit)?;
    let power = ideal.power(k);
    let table = membership_table(&power, &bounds, size);
    let st = strides(&bounds);
    let found: Vec<(u64, usize)> = (0..size)
        .into_par_iter()
        .filter_map(|idx| {
            if table[idx] {
                return None;
            }
            // (I^k : m) = (x_j : j ∈ P) iff P = {j : x_j m ∈ I^k} and no
            // monomial in the other variables carries m into I^k. A coordinate
            // at the box bound already exceeds every generator of I^k.
            let m = box_point(&bounds, idx);
            let e = m.exponents();
            let mut p = 0u64;
            let mut saturated = idx;
            for j in 0..bounds.len() {
                if e[j] < bounds[j] && table[idx + st[j]] {
                    p |= 1 << j;
                } else {
                    saturated += (bounds[j] - e[j]) as usize * st[j];
                }
            }
            (p != 0 && !table[saturated]).then_some((p, idx))
        })
        .collect();
    let mut first: BTreeMap<u64, usize> = BTreeMap::new();
    for (mask, idx) in found {
        first.entry(mask).and_modify(|i| *i = (*i).min(idx)).or_insert(idx);
    }
    let primes = first
        .into_iter()
        .map(|(mask, idx)| AssPrime {
            vars: crate::complex::mask_to_vec(mask),
            witness: box_point(&bounds, idx),
        })
        .collect();
    Ok(AssSet { k, primes })
}

/// Replays every witness of an [`AssSet`] through a monomial colon.
pub fn verify_ass_set(ideal: &MonomialIdeal, ass: &AssSet) -> bool {
    let power = ideal.power(ass.k);
    ass.primes.iter().all(|p| {
        power
            .colon_monomial(&p.witness)
            .is_ok_and(|c| c == MonomialIdeal::prime(ideal.vars().to_vec(), p.mask()))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PersistenceFailure {
    pub k: u32,
    /// A prime of `Ass(I^k)` missing from `Ass(I^{k+1})`.
    pub lost: AssPrime,
}

pub type PersistenceDecision = Decision<Vec<AssSet>, PersistenceFailure>;

/// Checks `Ass(I^k) ⊆ Ass(I^{k+1})` for `k = 1..max_power-1`.
pub fn persistence_check(ideal: &MonomialIdeal, max_power: u32, box_limit: u128) -> Result<PersistenceDecision> {
    let mut sets: Vec<AssSet> = Vec::new();
    for k in 1..=max_power {
        let current = associated_primes(ideal, k, u64::from(k) + 1, box_limit)?;
        if let Some(prev) = sets.last() {
            let now = current.masks();
            if let Some(p) = prev.primes.iter().find(|p| !now.contains(&p.mask())) {
                return Ok(Decision::Fails(PersistenceFailure {
                    k: k - 1,
                    lost: p.clone(),
                }));
            }
        }
        sets.push(current);
    }
    Ok(Decision::Holds(sets))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongPersistenceFailure {
    pub k: u32,
    /// A minimal generator of `(I^{k+1} : I)` outside `I^k`.
    pub witness: Monomial,
}

pub type StrongPersistenceDecision = Decision<u32, StrongPersistenceFailure>;

/// Checks `(I^{k+1} : I) = I^k` for `k = 1..=max_power`.
pub fn strong_persistence_check(ideal: &MonomialIdeal, max_power: u32) -> Result<StrongPersistenceDecision> {
    let mut current = ideal.clone();
    for k in 1..=max_power {
        let next = current.product(ideal)?;
        let colon = next.colon(ideal)?;
        if colon != current {
            let witness = colon
                .gens()
                .iter()
                .find(|g| !current.contains(g))
                .cloned()
                .expect("I^k is always contained in (I^{k+1} : I)");
            return Ok(Decision::Fails(StrongPersistenceFailure { k, witness }));
        }
        current = next;
    }
    Ok(Decision::Holds(max_power))
}

/// Analytic spread of an equigenerated monomial ideal: the rank of its
/// exponent matrix over the rationals.
pub fn analytic_spread(ideal: &MonomialIdeal) -> Result<usize> {
    if ideal.is_zero() {
        return Ok(0);
    }
    if ideal.generated_degree().is_none() {
        return Err(Error::NotEquigenerated);
    }
    let rows: Vec<Vec<i64>> = ideal
        .gens()
        .iter()
        .map(|g| {
            g.exponents()
                .iter()
                .map(|&e| i64::try_from(e).map_err(|_| Error::Parse("exponent too large".into())))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<_>>()?;
    Ok(rational_rank(&rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::default_vars;

    fn ideal(n: usize, gens: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::with_default_vars(n, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    fn m(e: &[u64]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    fn two_triangles() -> MonomialIdeal {
        ideal(
            6,
            &[
                &[1, 1, 0, 0, 0, 0],
                &[1, 0, 1, 0, 0, 0],
                &[0, 1, 1, 0, 0, 0],
                &[0, 0, 0, 1, 1, 0],
                &[0, 0, 0, 1, 0, 1],
                &[0, 0, 0, 0, 1, 1],
            ],
        )
    }

    #[test]
    fn closure_of_two_triangles_cube() {
        let i = two_triangles();
        let b = m(&[1; 6]);
        let dec = closure_membership(&i, 3, &b).unwrap();
        let lambda = dec.witness().unwrap();
        assert_eq!(lambda.0, vec![half(); 6]);
        assert!(verify_lambda(&i, 3, &b, lambda));
        assert_eq!(closure_membership_oracle(&i, 3, &b, 2).unwrap(), Some(2));
        assert_eq!(closure_membership_oracle(&i, 3, &b, 1).unwrap(), None);
    }

    #[test]
    fn generators_are_in_closure_of_first_power() {
        let i = ideal(3, &[&[0, 1, 0], &[1, 0, 1]]);
        for g in i.gens() {
            assert!(closure_membership(&i, 1, g).unwrap().holds());
            assert_eq!(closure_membership_oracle(&i, 1, g, 1).unwrap(), Some(1));
        }
    }

    #[test]
    fn x1x2_is_not_in_closure_of_square() {
        let i = ideal(3, &[&[0, 1, 0], &[1, 0, 1]]);
        let b = m(&[1, 1, 0]);
        assert!(!closure_membership(&i, 2, &b).unwrap().holds());
        assert_eq!(closure_membership_oracle(&i, 2, &b, 6).unwrap(), None);
    }

    #[test]
    fn classic_x1x2_example() {
        let i = ideal(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(closure_membership_oracle(&i, 1, &m(&[1, 1]), 2).unwrap(), Some(2));
        assert_eq!(
            integral_closure_power(&i, 1, DEFAULT_BOX_LIMIT).unwrap(),
            ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])
        );
    }

    #[test]
    fn closure_errors() {
        let zero = MonomialIdeal::zero(default_vars(2));
        assert_eq!(closure_membership(&zero, 1, &m(&[1, 1])).unwrap_err(), Error::ZeroOrUnit);
        let unit = MonomialIdeal::unit(default_vars(2));
        assert_eq!(integral_closure_power(&unit, 1, 10).unwrap_err(), Error::ZeroOrUnit);
        let i = ideal(2, &[&[3, 0], &[0, 3]]);
        assert!(matches!(
            integral_closure_power(&i, 4, 100).unwrap_err(),
            Error::ResourceLimit { needed: 169, limit: 100 }
        ));
    }

    #[test]
    fn squarefree_and_maximal_ideal_closures() {
        let i = ideal(3, &[&[0, 1, 0], &[1, 0, 1]]);
        assert_eq!(integral_closure_power(&i, 1, DEFAULT_BOX_LIMIT).unwrap(), i);
        let max = ideal(2, &[&[1, 0], &[0, 1]]);
        for k in 1..=4 {
            assert_eq!(integral_closure_power(&max, k, DEFAULT_BOX_LIMIT).unwrap(), max.power(k));
        }
    }

    #[test]
    fn in_power_matches_materialized_power() {
        let i = ideal(3, &[&[1, 1, 0], &[0, 2, 1], &[1, 0, 1]]);
        for k in 0..4u32 {
            let p = i.power(k);
            for idx in 0..(7 * 7 * 7) {
                let b = box_point(&[6, 6, 6], idx);
                assert_eq!(in_power(&i, u64::from(k), &b), p.contains(&b), "k={k} b={b:?}");
            }
        }
    }

    #[test]
    fn normality_failures() {
        let i = ideal(2, &[&[2, 0], &[0, 2]]);
        let r = is_normal_up_to(&i, 1, DEFAULT_BOX_LIMIT).unwrap();
        let w = r.failure.as_ref().unwrap();
        assert_eq!((w.k, &w.monomial), (1, &m(&[1, 1])));
        assert!(verify_normality_witness(&i, w));

        let tt = two_triangles();
        let r = is_normal_up_to(&tt, 3, DEFAULT_BOX_LIMIT).unwrap();
        let w = r.failure.as_ref().unwrap();
        assert_eq!(w.k, 3);
        assert_eq!(w.monomial, m(&[1; 6]));
        assert_eq!(w.lambda.0, vec![half(); 6]);
        assert!(verify_normality_witness(&tt, w));
    }

    #[test]
    fn cover_ideal_of_path_is_normal() {
        let i = ideal(3, &[&[0, 1, 0], &[1, 0, 1]]);
        assert!(is_normal_up_to(&i, 4, DEFAULT_BOX_LIMIT).unwrap().is_normal());
    }

    #[test]
    fn associated_prime_examples() {
        let principal = ideal(2, &[&[1, 1]]);
        let ass = associated_primes(&principal, 1, 2, DEFAULT_BOX_LIMIT).unwrap();
        assert_eq!(ass.masks(), vec![0b01, 0b10]);
        assert!(verify_ass_set(&principal, &ass));

        let i = ideal(3, &[&[0, 1, 0], &[1, 0, 1]]);
        let ass = associated_primes(&i, 1, 2, DEFAULT_BOX_LIMIT).unwrap();
        assert_eq!(ass.masks(), vec![0b011, 0b110]);
        assert_eq!(ass.primes[0].witness, m(&[0, 0, 1]));
        assert_eq!(ass.primes[1].witness, m(&[1, 0, 0]));
        assert!(verify_ass_set(&i, &ass));

        let x1 = ideal(1, &[&[1]]);
        let ass = associated_primes(&x1, 2, 3, DEFAULT_BOX_LIMIT).unwrap();
        assert_eq!(ass.masks(), vec![0b1]);
        assert_eq!(ass.primes[0].witness, m(&[1]));
    }

    #[test]
    fn embedded_prime_appears_in_square_of_triangle() {
        // Ass(S/I^2) of the triangle edge ideal gains the maximal ideal
        let tri = ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let one = associated_primes(&tri, 1, 2, DEFAULT_BOX_LIMIT).unwrap();
        assert_eq!(one.masks(), vec![0b011, 0b101, 0b110]);
        let two = associated_primes(&tri, 2, 3, DEFAULT_BOX_LIMIT).unwrap();
        assert_eq!(two.masks(), vec![0b011, 0b101, 0b110, 0b111]);
        assert!(verify_ass_set(&tri, &two));
    }

    #[test]
    fn persistence_examples() {
        let i = ideal(3, &[&[0, 1, 0], &[1, 0, 1]]);
        assert!(persistence_check(&i, 3, DEFAULT_BOX_LIMIT).unwrap().holds());
        let principal = ideal(3, &[&[1, 1, 1]]);
        assert!(persistence_check(&principal, 3, DEFAULT_BOX_LIMIT).unwrap().holds());
        let tri_cover = ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        assert!(persistence_check(&tri_cover, 3, DEFAULT_BOX_LIMIT).unwrap().holds());
    }

    #[test]
    fn strong_persistence_examples() {
        let i = ideal(3, &[&[0, 1, 0], &[1, 0, 1]]);
        assert_eq!(strong_persistence_check(&i, 2).unwrap(), Decision::Holds(2));
        let x1 = ideal(1, &[&[1]]);
        assert!(strong_persistence_check(&x1, 3).unwrap().holds());
        // compared against a brute-force colon
        let j = ideal(2, &[&[2, 0], &[0, 2]]);
        let colon = j.power(2).colon(&j).unwrap();
        assert_eq!(strong_persistence_check(&j, 1).unwrap().holds(), colon == j);
    }

    #[test]
    fn strong_persistence_failure_is_reported() {
        // (x1^4, x1^3 x2, x1 x2^3, x2^4): x1^2 x2^2 lies in (I^2 : I) but not in I
        let i = ideal(2, &[&[4, 0], &[3, 1], &[1, 3], &[0, 4]]);
        let dec = strong_persistence_check(&i, 1).unwrap();
        let f = dec.failure().unwrap();
        assert_eq!((f.k, &f.witness), (1, &m(&[2, 2])));
    }

    #[test]
    fn analytic_spreads() {
        let tri = ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(analytic_spread(&tri).unwrap(), 3);
        let path = ideal(3, &[&[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(analytic_spread(&path).unwrap(), 2);
        assert_eq!(3 - analytic_spread(&path).unwrap(), 1);
        let max = ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(analytic_spread(&max).unwrap(), 3);
        let mixed = ideal(2, &[&[1, 0], &[0, 2]]);
        assert_eq!(analytic_spread(&mixed).unwrap_err(), Error::NotEquigenerated);
    }
}
