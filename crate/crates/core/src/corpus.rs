//! Deterministic test corpora: complexes, chordal and cochordal graphs,
//! weakly polymatroidal ideals, coloured ideals and closure queries.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{maximal_sets, SimplicialComplex};
use crate::constructions::{check_colouring, is_weakly_polymatroidal, Colouring, OrderedIdeal};
use crate::graph::Graph;
use crate::monomial::{default_vars, Monomial, MonomialIdeal};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CorpusConfig {
    pub seed: u64,
    /// Every complex on at most this many labels is enumerated.
    pub exhaustive_complex_n: usize,
    pub complex_max_n: usize,
    pub random_complexes: usize,
    /// Every chordal graph on at most this many vertices is enumerated.
    pub exhaustive_chordal_n: usize,
    pub chordal_max_n: usize,
    pub random_chordal: usize,
    pub cochordal_max_n: usize,
    pub wpm_ideals: usize,
    pub colouring_pairs: usize,
    pub colouring_max_n: usize,
    pub closure_queries: usize,
    pub max_power: u32,
    pub normality_power: u32,
    pub persistence_sample: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            seed: 0x5eed,
            exhaustive_complex_n: 4,
            complex_max_n: 6,
            random_complexes: 400,
            exhaustive_chordal_n: 5,
            chordal_max_n: 8,
            random_chordal: 120,
            cochordal_max_n: 7,
            wpm_ideals: 60,
            colouring_pairs: 120,
            colouring_max_n: 5,
            closure_queries: 10_000,
            max_power: 3,
            normality_power: 4,
            persistence_sample: 60,
        }
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn random_mask(rng: &mut ChaCha8Rng, n: usize) -> u64 {
    loop {
        let m = rng.gen::<u64>() & ((1u64 << n) - 1);
        if m != 0 {
            return m;
        }
    }
}

/// All antichains of subsets of `{0..n-1}`, as facet masks.
fn antichains(n: usize) -> Vec<Vec<u64>> {
    let subsets = 1usize << n;
    let mut out = Vec::new();
    for family in 0u64..(1u64 << subsets) {
        let members: Vec<u64> = (0..subsets as u64).filter(|s| family >> s & 1 == 1).collect();
        let antichain = members
            .iter()
            .all(|&a| members.iter().all(|&b| a == b || a & b != a));
        if antichain {
            out.push(members);
        }
    }
    out
}

/// Every complex on `1..=exhaustive_complex_n` labels, then random complexes
/// on up to `complex_max_n` labels.
pub fn complexes(cfg: &CorpusConfig) -> Vec<(String, SimplicialComplex)> {
    let mut out = Vec::new();
    for n in 1..=cfg.exhaustive_complex_n {
        for (i, facets) in antichains(n).into_iter().enumerate() {
            let c = SimplicialComplex::from_masks(n, facets).expect("antichain");
            out.push((format!("complex/e{n}/{i:05}"), c));
        }
    }
    let lo = (cfg.exhaustive_complex_n + 1).min(cfg.complex_max_n);
    let mut r = rng(cfg.seed, 1);
    for i in 0..cfg.random_complexes {
        let n = r.gen_range(lo..=cfg.complex_max_n);
        let count = r.gen_range(1..=10);
        let faces: Vec<u64> = (0..count).map(|_| random_mask(&mut r, n)).collect();
        let c = SimplicialComplex::from_masks(n, maximal_sets(faces)).expect("masks fit");
        out.push((format!("complex/r{n}/{i:05}"), c));
    }
    out
}

/// All labelled graphs on `n` vertices, in edge-bitset order.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |bits| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::new(n, &edges).expect("valid edges")
    })
}

/// A chordal graph grown by attaching each new vertex to a subset of an
/// earlier clique, then relabelled at random.
fn random_chordal(r: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut cliques: Vec<u64> = vec![0];
    let mut edges = Vec::new();
    for v in 0..n {
        let base = *cliques.choose(r).expect("nonempty");
        let attach = base & r.gen::<u64>();
        for u in 0..v {
            if attach >> u & 1 == 1 {
                edges.push((u, v));
            }
        }
        cliques.push(attach | 1 << v);
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(r);
    let relabelled: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    Graph::new(n, &relabelled).expect("valid edges")
}

pub fn chordal_graphs(cfg: &CorpusConfig) -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 1..=cfg.exhaustive_chordal_n {
        for (i, g) in all_graphs(n).enumerate() {
            if g.is_chordal() {
                out.push((format!("chordal/e{n}/{i:06}"), g));
            }
        }
    }
    let lo = (cfg.exhaustive_chordal_n + 1).min(cfg.chordal_max_n);
    let mut r = rng(cfg.seed, 2);
    for i in 0..cfg.random_chordal {
        let n = r.gen_range(lo..=cfg.chordal_max_n);
        out.push((format!("chordal/r{n}/{i:05}"), random_chordal(&mut r, n)));
    }
    out
}

/// Cochordal graphs on `n` vertices with exactly one non-trivial component.
pub fn cochordal_graphs(n: usize) -> impl Iterator<Item = Graph> {
    all_graphs(n).filter(|g| g.nontrivial_components().len() == 1 && g.is_cochordal())
}

fn random_squarefree(r: &mut ChaCha8Rng, n: usize, max_gens: usize) -> MonomialIdeal {
    let count = r.gen_range(1..=max_gens);
    let masks: Vec<u64> = (0..count).map(|_| random_mask(r, n)).collect();
    MonomialIdeal::from_masks(default_vars(n), masks)
}

/// `(x_F : |F| = d)`, polymatroidal and hence weakly polymatroidal.
pub fn squarefree_veronese(n: usize, d: u32) -> MonomialIdeal {
    let masks = (1u64..1 << n).filter(|m| m.count_ones() == d);
    MonomialIdeal::from_masks(default_vars(n), masks)
}

/// Squarefree ideals that are weakly polymatroidal in the natural order.
pub fn wpm_ideals(cfg: &CorpusConfig) -> Vec<(String, MonomialIdeal)> {
    let mut out: Vec<(String, MonomialIdeal)> = Vec::new();
    for n in 2..=5usize {
        for d in 1..=n as u32 {
            out.push((format!("wpm/veronese/{n}-{d}"), squarefree_veronese(n, d)));
        }
    }
    let mut r = rng(cfg.seed, 3);
    let mut i = 0;
    while out.len() < cfg.wpm_ideals {
        let n = r.gen_range(3..=5);
        let ideal = random_squarefree(&mut r, n, 5);
        i += 1;
        if ideal.is_unit() || out.iter().any(|(_, o)| *o == ideal) {
            continue;
        }
        if is_weakly_polymatroidal(&OrderedIdeal::natural(ideal.clone())).holds() {
            out.push((format!("wpm/r{n}/{i:05}"), ideal));
        }
    }
    out
}

fn random_partition(r: &mut ChaCha8Rng, n: usize) -> Vec<Vec<usize>> {
    let mut vars: Vec<usize> = (0..n).collect();
    vars.shuffle(r);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for v in vars {
        if blocks.is_empty() || r.gen_bool(0.6) {
            blocks.push(vec![v]);
        } else {
            let at = r.gen_range(0..blocks.len());
            blocks[at].push(v);
        }
    }
    for b in blocks.iter_mut() {
        b.sort_unstable();
    }
    blocks.sort();
    blocks
}

/// Squarefree ideals with a valid colouring.
pub fn colouring_pairs(cfg: &CorpusConfig) -> Vec<(String, MonomialIdeal, Colouring)> {
    let mut out = Vec::new();
    let mut r = rng(cfg.seed, 4);
    let mut i = 0;
    while out.len() < cfg.colouring_pairs {
        i += 1;
        let n = r.gen_range(2..=cfg.colouring_max_n);
        let ideal = random_squarefree(&mut r, n, 4);
        if ideal.is_unit() {
            continue;
        }
        let chi = Colouring::new(n, random_partition(&mut r, n)).expect("partition");
        if check_colouring(&ideal, &chi).is_ok_and(|d| d.holds()) {
            out.push((format!("colouring/r{n}/{i:05}"), ideal, chi));
        }
    }
    out
}

/// Random ideal with exponents up to `max_exp`.
pub fn random_ideal(r: &mut impl Rng, n: usize, max_gens: usize, max_exp: u64) -> MonomialIdeal {
    let count = r.gen_range(1..=max_gens);
    let gens: Vec<Monomial> = (0..count)
        .map(|_| loop {
            let e: Vec<u64> = (0..n).map(|_| r.gen_range(0..=max_exp)).collect();
            if e.iter().any(|&x| x > 0) {
                break Monomial::new(e);
            }
        })
        .collect();
    MonomialIdeal::new(default_vars(n), gens).expect("dimensions agree")
}

#[derive(Debug, Clone)]
pub struct ClosureQuery {
    pub id: String,
    pub ideal: usize,
    pub k: u32,
    pub point: Monomial,
}

/// Random non-squarefree ideals added to the closure-query pool.
pub fn closure_ideal_pool(cfg: &CorpusConfig, squarefree: &[MonomialIdeal]) -> Vec<MonomialIdeal> {
    let mut pool: Vec<MonomialIdeal> = squarefree
        .iter()
        .filter(|i| !i.is_zero() && !i.is_unit())
        .cloned()
        .collect();
    let mut r = rng(cfg.seed, 5);
    for _ in 0..40 {
        let n = r.gen_range(2..=4);
        pool.push(random_ideal(&mut r, n, 4, 3));
    }
    pool
}

/// Queries `(ideal, k, b)`: half uniform in the closure box, half near the
/// boundary of `k * conv(G(I))`.
pub fn closure_queries(cfg: &CorpusConfig, pool: &[MonomialIdeal], max_k: u32) -> Vec<ClosureQuery> {
    let mut r = rng(cfg.seed, 6);
    (0..cfg.closure_queries)
        .map(|q| {
            let which = r.gen_range(0..pool.len());
            let ideal = &pool[which];
            let k = r.gen_range(1..=max_k);
            let n = ideal.nvars();
            let maxes = ideal.max_exponents();
            let point = if q % 2 == 0 {
                maxes.iter().map(|&m| r.gen_range(0..=m * u64::from(k))).collect()
            } else {
                // a rational point of k * conv(G(I)), rounded and nudged
                let d = r.gen_range(1..=3u64);
                let mut acc = vec![0u64; n];
                for _ in 0..d * u64::from(k) {
                    let g = ideal.gens().choose(&mut r).expect("proper ideal");
                    for (a, e) in acc.iter_mut().zip(g.exponents()) {
                        *a += e;
                    }
                }
                let mut e: Vec<u64> = acc.iter().map(|&a| if r.gen_bool(0.5) { a / d } else { a.div_ceil(d) }).collect();
                let j = r.gen_range(0..n);
                match r.gen_range(0..3) {
                    0 => e[j] = e[j].saturating_sub(1),
                    1 => e[j] += 1,
                    _ => {}
                }
                e
            };
            ClosureQuery {
                id: format!("closure/{q:05}"),
                ideal: which,
                k,
                point: Monomial::new(point),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedekind_counts() {
        // antichains in the subset lattice, including the void and {∅}
        let counts: Vec<usize> = (1..=4).map(|n| antichains(n).len()).collect();
        assert_eq!(counts, vec![3, 6, 20, 168]);
    }

    #[test]
    fn graph_enumeration_counts() {
        assert_eq!(all_graphs(4).count(), 64);
        // labelled chordal graphs on 4 vertices: 64 minus the three 4-cycles
        assert_eq!(all_graphs(4).filter(Graph::is_chordal).count(), 61);
    }

    #[test]
    fn random_chordal_graphs_are_chordal() {
        let mut r = rng(7, 0);
        for n in 1..=9 {
            for _ in 0..20 {
                assert!(random_chordal(&mut r, n).is_chordal());
            }
        }
    }

    #[test]
    fn corpora_are_deterministic() {
        let cfg = CorpusConfig {
            random_complexes: 20,
            random_chordal: 10,
            wpm_ideals: 25,
            colouring_pairs: 10,
            closure_queries: 50,
            ..CorpusConfig::default()
        };
        assert_eq!(complexes(&cfg), complexes(&cfg));
        assert_eq!(wpm_ideals(&cfg), wpm_ideals(&cfg));
        let a: Vec<_> = colouring_pairs(&cfg).into_iter().map(|(id, i, _)| (id, i)).collect();
        let b: Vec<_> = colouring_pairs(&cfg).into_iter().map(|(id, i, _)| (id, i)).collect();
        assert_eq!(a, b);
        let pool = closure_ideal_pool(&cfg, &[]);
        let q1: Vec<_> = closure_queries(&cfg, &pool, 4).into_iter().map(|q| q.point).collect();
        let q2: Vec<_> = closure_queries(&cfg, &pool, 4).into_iter().map(|q| q.point).collect();
        assert_eq!(q1, q2);
    }
}
