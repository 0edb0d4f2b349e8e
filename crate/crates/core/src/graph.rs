//! Finite simple graphs and their ideal-theoretic views.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::certificate::Decision;
use crate::complex::{full_mask, mask_to_vec, SimplicialComplex};
use crate::error::{Error, Result};
use crate::io::one_based_vec;
use crate::linalg::rational_rank;
use crate::monomial::{default_vars, MonomialIdeal};

pub const MAX_GRAPH_VERTICES: usize = 64;

/// Simple graph on vertices `0..n` (one-based in every external format).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Builds a graph from zero-based edges. Loops are rejected, repeated edges collapse.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_GRAPH_VERTICES {
            return Err(Error::TooManyVariables {
                found: n,
                limit: MAX_GRAPH_VERTICES,
            });
        }
        let mut adj = vec![0u64; n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!("edge {{{}, {}}} outside 1..{n}", a + 1, b + 1)));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", a + 1)));
            }
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Ok(Graph { n, adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![0; n] }
    }

    pub fn complete(n: usize) -> Self {
        let all = full_mask(n);
        Graph {
            n,
            adj: (0..n).map(|v| all & !(1 << v)).collect(),
        }
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::new(n, &edges).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        Graph::new(n, &edges).expect("valid cycle")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbours(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        (self.adj[a] >> b) & 1 == 1
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = vec![];
        for a in 0..self.n {
            for b in mask_to_vec(self.adj[a]) {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Graph {
        let all = full_mask(self.n);
        Graph {
            n: self.n,
            adj: (0..self.n).map(|v| all & !self.adj[v] & !(1 << v)).collect(),
        }
    }

    pub fn isolated_count(&self) -> usize {
        self.adj.iter().filter(|&&a| a == 0).count()
    }

    fn is_clique(&self, set: u64) -> bool {
        mask_to_vec(set).into_iter().all(|v| set & !(1 << v) & !self.adj[v] == 0)
    }

    pub fn is_independent(&self, set: u64) -> bool {
        mask_to_vec(set).into_iter().all(|v| self.adj[v] & set == 0)
    }

    /// Connected components with at least one edge, as vertex masks.
    pub fn nontrivial_components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = vec![];
        for s in 0..self.n {
            if seen >> s & 1 == 1 || self.adj[s] == 0 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = 1u64 << s;
            while frontier != 0 {
                let next = mask_to_vec(frontier).into_iter().fold(0, |a, v| a | self.adj[v]) & !comp;
                comp |= next;
                frontier = next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Proper 2-colouring when one exists.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut colour = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for w in mask_to_vec(self.adj[v]) {
                    if colour[w] == u8::MAX {
                        colour[w] = 1 - colour[v];
                        queue.push_back(w);
                    } else if colour[w] == colour[v] {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Maximal independent sets (Bron–Kerbosch with pivoting on the complement), sorted.
    pub fn maximal_independent_sets(&self) -> Vec<u64> {
        let comp = self.complement();
        let mut out = vec![];
        bron_kerbosch(&comp.adj, 0, full_mask(self.n), 0, &mut out);
        out.sort_unstable();
        out
    }

    pub fn edge_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::from_masks(
            default_vars(self.n),
            self.edges().into_iter().map(|(a, b)| (1u64 << a) | (1u64 << b)),
        )
    }

    /// Cover ideal `J(G)`: generated by the minimal vertex covers.
    pub fn cover_ideal(&self) -> MonomialIdeal {
        let all = full_mask(self.n);
        MonomialIdeal::from_masks(
            default_vars(self.n),
            self.maximal_independent_sets().into_iter().map(|s| all & !s),
        )
    }

    pub fn independence_complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_masks(self.n, self.maximal_independent_sets()).expect("n <= 64")
    }

    /// Exact matching number by exhaustive recursion, memoized on the set of
    /// still-available vertices.
    pub fn matching_number(&self) -> usize {
        let mut memo = HashMap::new();
        self.matching_rec(full_mask(self.n), &mut memo)
    }

    fn matching_rec(&self, avail: u64, memo: &mut HashMap<u64, usize>) -> usize {
        let Some(v) = mask_to_vec(avail).into_iter().find(|&v| self.adj[v] & avail != 0) else {
            return 0;
        };
        if let Some(&m) = memo.get(&avail) {
            return m;
        }
        let rest = avail & !(1 << v);
        let mut best = self.matching_rec(rest, memo);
        for w in mask_to_vec(self.adj[v] & rest) {
            best = best.max(1 + self.matching_rec(rest & !(1 << w), memo));
        }
        memo.insert(avail, best);
        best
    }

    /// Rows of the vertex-edge incidence matrix (one row per edge).
    pub fn incidence_rows(&self) -> Vec<Vec<i64>> {
        self.edges()
            .into_iter()
            .map(|(a, b)| {
                let mut r = vec![0i64; self.n];
                r[a] = 1;
                r[b] = 1;
                r
            })
            .collect()
    }

    pub fn incidence_rank(&self) -> usize {
        rational_rank(&self.incidence_rows())
    }

    /// Chordality by repeated elimination of simplicial vertices. A failure
    /// carries an induced cycle of length at least 4.
    pub fn chordality(&self) -> Decision<EliminationOrder, InducedCycle> {
        let mut remaining = full_mask(self.n);
        let mut order = Vec::with_capacity(self.n);
        while remaining != 0 {
            let simplicial = mask_to_vec(remaining)
                .into_iter()
                .find(|&v| self.is_clique(self.adj[v] & remaining));
            match simplicial {
                Some(v) => {
                    order.push(v);
                    remaining &= !(1 << v);
                }
                None => {
                    let cycle = self.find_hole().expect("a graph without a simplicial vertex has a hole");
                    return Decision::Fails(InducedCycle { cycle });
                }
            }
        }
        Decision::Holds(EliminationOrder { order })
    }

    pub fn is_chordal(&self) -> bool {
        self.chordality().holds()
    }

    pub fn is_cochordal(&self) -> bool {
        self.complement().is_chordal()
    }

    /// An induced cycle of length >= 4: for a vertex `v` with non-adjacent
    /// neighbours `a, b`, a shortest `a`-`b` path avoiding the rest of `N[v]`
    /// closes a chordless cycle through `v`.
    pub fn find_hole(&self) -> Option<Vec<usize>> {
        for v in 0..self.n {
            let nb = mask_to_vec(self.adj[v]);
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    if self.has_edge(a, b) {
                        continue;
                    }
                    let allowed = full_mask(self.n) & !(self.adj[v] | 1 << v) | (1 << a) | (1 << b);
                    if let Some(path) = self.shortest_path(a, b, allowed) {
                        let mut cycle = vec![v];
                        cycle.extend(path);
                        return Some(cycle);
                    }
                }
            }
        }
        None
    }

    fn shortest_path(&self, from: usize, to: usize, allowed: u64) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.n];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for w in mask_to_vec(self.adj[v] & allowed) {
                // the direct edge a-b is excluded by construction
                if prev[w] == usize::MAX {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    pub fn profile(&self) -> GraphProfile {
        let bipartite = self.is_bipartite();
        let isolated = self.isolated_count();
        let one_component = self.nontrivial_components().len() == 1;
        let predicted_rank = one_component.then(|| {
            if bipartite {
                self.n - isolated - 1
            } else {
                self.n - isolated
            }
        });
        GraphProfile {
            n: self.n,
            edges: self.edge_count(),
            bipartite,
            isolated_count: isolated,
            matching_number: self.matching_number(),
            chordal: self.is_chordal(),
            cochordal: self.is_cochordal(),
            predicted_rank,
            incidence_rank: self.incidence_rank(),
        }
    }
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = mask_to_vec(p | x)
        .into_iter()
        .max_by_key(|&u| (adj[u] & p).count_ones())
        .expect("p nonempty");
    for v in mask_to_vec(p & !adj[pivot]) {
        bron_kerbosch(adj, r | 1 << v, p & adj[v], x & adj[v], out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

/// Perfect elimination ordering: each vertex's later neighbours form a clique.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EliminationOrder {
    #[serde(serialize_with = "one_based_vec")]
    pub order: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedCycle {
    #[serde(serialize_with = "one_based_vec")]
    pub cycle: Vec<usize>,
}

impl EliminationOrder {
    pub fn verify(&self, g: &Graph) -> bool {
        let mut sorted = self.order.clone();
        sorted.sort_unstable();
        if sorted != (0..g.n()).collect::<Vec<_>>() {
            return false;
        }
        let mut later = full_mask(g.n());
        self.order.iter().all(|&v| {
            later &= !(1 << v);
            g.is_clique(g.neighbours(v) & later)
        })
    }
}

impl InducedCycle {
    /// Checks the cycle is induced, simple and of length at least 4.
    pub fn verify(&self, g: &Graph) -> bool {
        let k = self.cycle.len();
        if k < 4 {
            return false;
        }
        let mut seen = self.cycle.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != k || seen.iter().any(|&v| v >= g.n()) {
            return false;
        }
        (0..k).all(|i| {
            (0..k).filter(|&j| j != i).all(|j| {
                let consecutive = (i + 1) % k == j || (j + 1) % k == i;
                g.has_edge(self.cycle[i], self.cycle[j]) == consecutive
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphProfile {
    pub n: usize,
    pub edges: usize,
    pub bipartite: bool,
    pub isolated_count: usize,
    pub matching_number: usize,
    pub chordal: bool,
    pub cochordal: bool,
    /// `n - s - 1` (bipartite) or `n - s`; only when exactly one component has edges.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted_rank: Option<usize>,
    pub incidence_rank: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        let e: Vec<_> = edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
        Graph::new(n, &e).unwrap()
    }

    fn sq(n: usize, gens: &[&[usize]]) -> MonomialIdeal {
        MonomialIdeal::from_masks(
            default_vars(n),
            gens.iter().map(|g| g.iter().fold(0u64, |m, v| m | 1 << (v - 1))),
        )
    }

    fn two_triangles() -> Graph {
        g(6, &[(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)])
    }

    #[test]
    fn rejects_loops_and_out_of_range() {
        assert!(Graph::new(2, &[(0, 0)]).is_err());
        assert!(Graph::new(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn cover_ideals() {
        assert_eq!(Graph::path(3).cover_ideal(), sq(3, &[&[2], &[1, 3]]));
        assert_eq!(Graph::complete(3).cover_ideal(), sq(3, &[&[1, 2], &[1, 3], &[2, 3]]));
        assert!(Graph::empty(3).cover_ideal().is_unit());
    }

    #[test]
    fn edge_ideals() {
        assert_eq!(Graph::path(3).edge_ideal(), sq(3, &[&[1, 2], &[2, 3]]));
        assert_eq!(Graph::path(2).edge_ideal(), sq(2, &[&[1, 2]]));
        assert!(Graph::empty(3).edge_ideal().is_zero());
    }

    #[test]
    fn independence_complexes() {
        assert_eq!(Graph::path(3).independence_complex().facet_lists(), vec![vec![1], vec![0, 2]]);
        assert_eq!(
            Graph::complete(3).independence_complex().facet_lists(),
            vec![vec![0], vec![1], vec![2]]
        );
        assert_eq!(Graph::empty(3).independence_complex(), SimplicialComplex::simplex(3));
    }

    #[test]
    fn maximal_independent_sets_match_brute_force() {
        let graph = g(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1), (1, 4)]);
        let mut brute: Vec<u64> = (0..1u64 << 6)
            .filter(|&s| graph.is_independent(s))
            .filter(|&s| (0..6).all(|v| s >> v & 1 == 1 || !graph.is_independent(s | 1 << v)))
            .collect();
        brute.sort_unstable();
        assert_eq!(graph.maximal_independent_sets(), brute);
    }

    #[test]
    fn chordality() {
        let c4 = Graph::cycle(4);
        let dec = c4.chordality();
        let hole = dec.failure().unwrap();
        assert_eq!(hole.cycle.len(), 4);
        assert!(hole.verify(&c4));

        let k5 = Graph::complete(5);
        assert!(k5.chordality().witness().unwrap().verify(&k5));

        let p3 = Graph::path(3);
        assert!(p3.is_chordal());
        assert_eq!(p3.complement(), g(3, &[(1, 3)]));
        assert!(p3.is_cochordal());

        let c6 = Graph::cycle(6);
        let hole = c6.chordality();
        assert_eq!(hole.failure().unwrap().cycle.len(), 6);
        assert!(hole.failure().unwrap().verify(&c6));
    }

    #[test]
    fn matching_numbers() {
        assert_eq!(Graph::path(3).matching_number(), 1);
        assert_eq!(Graph::path(4).matching_number(), 2);
        assert_eq!(two_triangles().matching_number(), 2);
        assert_eq!(Graph::empty(4).matching_number(), 0);
        assert_eq!(Graph::complete(7).matching_number(), 3);
    }

    #[test]
    fn profiles() {
        let t = Graph::complete(3).profile();
        assert!(!t.bipartite);
        assert_eq!((t.isolated_count, t.predicted_rank, t.incidence_rank), (0, Some(3), 3));

        let p = Graph::path(3).profile();
        assert!(p.bipartite);
        assert_eq!((p.predicted_rank, p.incidence_rank), (Some(2), 2));

        let e = g(3, &[(1, 2)]).profile();
        assert_eq!((e.isolated_count, e.predicted_rank, e.incidence_rank), (1, Some(1), 1));

        let tt = two_triangles().profile();
        assert_eq!(tt.predicted_rank, None);
    }
}
