//! Monomials as exponent vectors and monomial ideals as divisibility antichains.
//!
//! A [`MonomialIdeal`] always stores its minimal generating set `G(I)`, sorted
//! lexicographically, so two ideals in the same ring are equal exactly when
//! their generator lists are equal. The zero ideal has no generators and the
//! unit ideal has the single generator `1` (the all-zero exponent vector).

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Exponent vector of a monomial `x_1^{a_1} ... x_n^{a_n}`.
///
/// Arithmetic is checked: an overflowing exponent panics instead of wrapping.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u64>);

impl Monomial {
    pub fn new(exponents: Vec<u64>) -> Self {
        Monomial(exponents)
    }

    /// The constant monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// The variable `x_i` (zero-based).
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    /// Squarefree monomial `x_S` for a bitmask `S` over `n` variables.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Monomial((0..n).map(|i| (mask >> i) & 1).collect())
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn into_exponents(self) -> Vec<u64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0
            .iter()
            .try_fold(0u64, |acc, &e| acc.checked_add(e))
            .expect("exponent overflow")
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// `true` iff `self` divides `other` (componentwise `<=`).
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.len(), other.len());
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// `self^s`, i.e. the exponent vector scaled by `s`.
    pub fn pow(&self, s: u64) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|a| a.checked_mul(s).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// `self / gcd(self, m)`: the generator of the principal colon `(self) : m`.
    pub fn colon(&self, m: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&m.0).map(|(a, b)| a.saturating_sub(*b)).collect())
    }

    /// Indices of the variables dividing the monomial.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Support as a bitmask; requires at most 64 variables.
    pub fn support_mask(&self) -> u64 {
        debug_assert!(self.len() <= 64);
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1 << i))
    }

    /// Renders the monomial with the given variable names, e.g. `x1^2*x3`.
    pub fn display_with(&self, vars: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.0
            .iter()
            .zip(vars)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Default variable names `x1, ..., xn`.
pub fn default_vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Reduces a generator list to its divisibility antichain, sorted lexicographically.
pub fn minimal_generators(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| match a.degree().cmp(&b.degree()) {
        Ordering::Equal => a.cmp(b),
        o => o,
    });
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort();
    kept
}

/// A monomial ideal stored by its minimal generators over a named set of variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    vars: Vec<String>,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, minimalizing them.
    pub fn new(vars: Vec<String>, gens: Vec<Monomial>) -> Result<Self> {
        let n = vars.len();
        if let Some(bad) = gens.iter().find(|g| g.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Ok(Self::from_raw(vars, gens))
    }

    /// Like [`MonomialIdeal::new`] with variables `x1..xn`.
    pub fn with_default_vars(n: usize, gens: Vec<Vec<u64>>) -> Result<Self> {
        Self::new(default_vars(n), gens.into_iter().map(Monomial::new).collect())
    }

    pub(crate) fn from_raw(vars: Vec<String>, gens: Vec<Monomial>) -> Self {
        MonomialIdeal {
            vars,
            gens: minimal_generators(gens),
        }
    }

    /// Squarefree ideal from support bitmasks.
    pub fn from_masks(vars: Vec<String>, masks: impl IntoIterator<Item = u64>) -> Self {
        let n = vars.len();
        let gens = masks.into_iter().map(|m| Monomial::from_mask(n, m)).collect();
        Self::from_raw(vars, gens)
    }

    pub fn zero(vars: Vec<String>) -> Self {
        MonomialIdeal { vars, gens: vec![] }
    }

    pub fn unit(vars: Vec<String>) -> Self {
        let n = vars.len();
        MonomialIdeal {
            vars,
            gens: vec![Monomial::one(n)],
        }
    }

    /// The prime `(x_i : i in A)` for a variable bitmask `A`.
    pub fn prime(vars: Vec<String>, mask: u64) -> Self {
        let n = vars.len();
        let gens = (0..n)
            .filter(|i| (mask >> i) & 1 == 1)
            .map(|i| Monomial::var(n, i))
            .collect();
        Self::from_raw(vars, gens)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// `Some(d)` when every minimal generator has total degree `d`.
    pub fn generated_degree(&self) -> Option<u64> {
        let d = self.gens.first()?.degree();
        self.gens.iter().all(|g| g.degree() == d).then_some(d)
    }

    /// Largest exponent of each variable over `G(I)`.
    pub fn max_exponents(&self) -> Vec<u64> {
        let mut out = vec![0; self.nvars()];
        for g in &self.gens {
            for (o, &e) in out.iter_mut().zip(g.exponents()) {
                *o = (*o).max(e);
            }
        }
        out
    }

    /// Generator supports as bitmasks (at most 64 variables).
    pub fn support_masks(&self) -> Vec<u64> {
        self.gens.iter().map(Monomial::support_mask).collect()
    }

    /// Same generators over a different list of variable names.
    pub fn renamed(&self, vars: Vec<String>) -> Result<Self> {
        if vars.len() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: vars.len(),
            });
        }
        Ok(MonomialIdeal {
            vars,
            gens: self.gens.clone(),
        })
    }

    fn check_ambient(&self, other: &MonomialIdeal) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    fn check_dim(&self, m: &Monomial) -> Result<()> {
        if m.len() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: m.len(),
            });
        }
        Ok(())
    }

    /// `true` iff some minimal generator divides `m`.
    pub fn contains(&self, m: &Monomial) -> bool {
        debug_assert_eq!(m.len(), self.nvars());
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Checked variant of [`MonomialIdeal::contains`].
    pub fn try_contains(&self, m: &Monomial) -> Result<bool> {
        self.check_dim(m)?;
        Ok(self.contains(m))
    }

    /// `I ⊆ J`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ambient(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(Self::from_raw(self.vars.clone(), gens))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ambient(other)?;
        let mut gens = Vec::with_capacity(self.ngens() * other.ngens());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        Ok(Self::from_raw(self.vars.clone(), gens))
    }

    /// `I^k` by iterated products, minimalizing after every step. `k = 0` gives the unit ideal.
    pub fn power(&self, k: u32) -> MonomialIdeal {
        let mut acc = Self::unit(self.vars.clone());
        for _ in 0..k {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    /// `m * I`.
    pub fn scale(&self, m: &Monomial) -> Result<MonomialIdeal> {
        self.check_dim(m)?;
        let gens = self.gens.iter().map(|g| g.mul(m)).collect();
        Ok(Self::from_raw(self.vars.clone(), gens))
    }

    /// `(I : m)`, generated by `u / gcd(u, m)` for `u` in `G(I)`.
    pub fn colon_monomial(&self, m: &Monomial) -> Result<MonomialIdeal> {
        self.check_dim(m)?;
        let gens = self.gens.iter().map(|g| g.colon(m)).collect();
        Ok(Self::from_raw(self.vars.clone(), gens))
    }

    /// `(I : J)`, the intersection of `(I : g)` over `g` in `G(J)`.
    pub fn colon(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ambient(other)?;
        let mut gens = other.gens.iter();
        let first = gens.next().ok_or(Error::ColonByZero)?;
        let mut acc = self.colon_monomial(first)?;
        for g in gens {
            acc = acc.intersect(&self.colon_monomial(g)?)?;
        }
        Ok(acc)
    }

    /// `I ∩ J`, generated by the pairwise lcms of the generators.
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ambient(other)?;
        let mut gens = Vec::with_capacity(self.ngens() * other.ngens());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        Ok(Self::from_raw(self.vars.clone(), gens))
    }

    /// Polarization. Variable `x_i` with largest exponent `c` over `G(I)` becomes
    /// `x_i_1, ..., x_i_c`, and `x_i^a` becomes `x_i_1 ... x_i_a`.
    pub fn polarize(&self) -> Polarization {
        if self.is_zero() || self.is_unit() {
            return Polarization {
                ideal: self.clone(),
                table: vec![],
            };
        }
        let maxes = self.max_exponents();
        let mut table = Vec::new();
        let mut offset = Vec::with_capacity(self.nvars());
        for (i, &c) in maxes.iter().enumerate() {
            offset.push(table.len());
            for j in 1..=c {
                table.push((i, j as usize));
            }
        }
        let vars = table
            .iter()
            .map(|&(i, j)| format!("{}_{}", self.vars[i], j))
            .collect();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut e = vec![0u64; table.len()];
                for (i, &a) in g.exponents().iter().enumerate() {
                    for j in 0..a as usize {
                        e[offset[i] + j] = 1;
                    }
                }
                Monomial::new(e)
            })
            .collect();
        Polarization {
            ideal: Self::from_raw(vars, gens),
            table,
        }
    }

    /// Renders the ideal as `(x1*x2, x3^2)`.
    pub fn display(&self) -> String {
        let parts: Vec<String> = self.gens.iter().map(|g| g.display_with(&self.vars)).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

/// A polarized ideal together with its variable table: polarized variable `k`
/// stands for `x_{i,j}` where `table[k] = (i, j)` (zero-based `i`, one-based `j`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polarization {
    pub ideal: MonomialIdeal,
    pub table: Vec<(usize, usize)>,
}
