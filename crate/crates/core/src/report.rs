//! Verification suites over the corpora and the line-delimited report format.
//!
//! Every suite maps a list of inputs to [`CaseRecord`]s. A record states the
//! expected and the observed outcome; the run passes when they agree on every
//! case. Records are sorted by id before they are written, so reports do not
//! depend on scheduling.

use std::io::Write;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::complex::SimplicialComplex;
use crate::constructions::{build_delta_chi, build_i_chi, check_colouring, is_weakly_polymatroidal, Colouring, OrderedIdeal};
use crate::corpus::{self, ClosureQuery, CorpusConfig};
use crate::decomp::{is_vertex_decomposable, is_vertex_splittable, verify_shedding_tree, verify_splitting_tree};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::IdealRecord;
use crate::monomial::{Monomial, MonomialIdeal};
use crate::normality::{
    analytic_spread, associated_primes, closure_membership, closure_membership_oracle, is_normal_up_to,
    persistence_check, strong_persistence_check, verify_ass_set, verify_lambda, verify_normality_witness,
    DEFAULT_BOX_LIMIT, DEFAULT_SMAX,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    /// Input or internal error other than a resource cap.
    Error,
    /// A search box or enumeration exceeded its configured cap.
    Resource,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseRecord {
    pub id: String,
    pub suite: String,
    pub expected: Outcome,
    pub outcome: Outcome,
    pub detail: Value,
}

impl CaseRecord {
    pub fn is_expected(&self) -> bool {
        self.expected == self.outcome
    }
}

fn record(id: impl Into<String>, suite: &str, expected: Outcome, result: Result<(bool, Value)>) -> CaseRecord {
    let (outcome, detail) = match result {
        Ok((true, d)) => (Outcome::Pass, d),
        Ok((false, d)) => (Outcome::Fail, d),
        Err(e @ Error::ResourceLimit { .. }) => (Outcome::Resource, json!({ "error": e.to_string() })),
        Err(e) => (Outcome::Error, json!({ "error": e.to_string() })),
    };
    CaseRecord {
        id: id.into(),
        suite: suite.to_string(),
        expected,
        outcome,
        detail,
    }
}

fn pass_case(id: impl Into<String>, suite: &str, result: Result<(bool, Value)>) -> CaseRecord {
    record(id, suite, Outcome::Pass, result)
}

/// Vertex decomposability of `Δ` against vertex splittability of `I_{Δ^∨}`,
/// with both trees replayed.
pub fn duality_suite(complexes: &[(String, SimplicialComplex)]) -> Vec<CaseRecord> {
    complexes
        .par_iter()
        .map(|(id, delta)| {
            let ideal = delta.dual_facet_ideal();
            let vd = is_vertex_decomposable(delta);
            let vs = is_vertex_splittable(&ideal);
            let vd_replay = vd.witness().is_none_or(|t| verify_shedding_tree(delta, t).is_ok());
            let vs_replay = vs.witness().is_none_or(|t| verify_splitting_tree(&ideal, t).is_ok());
            let ok = vd.holds() == vs.holds() && vd_replay && vs_replay;
            pass_case(
                id.clone(),
                "duality",
                Ok((ok, json!({ "facets": delta.display(), "vd": vd.holds(), "vsplit": vs.holds(), "replayed": vd_replay && vs_replay }))),
            )
        })
        .collect()
}

/// The vertex decomposable, non-void members of a complex corpus.
pub fn decomposable(complexes: &[(String, SimplicialComplex)]) -> Vec<(String, SimplicialComplex)> {
    complexes
        .par_iter()
        .filter(|(_, d)| !d.is_void() && is_vertex_decomposable(d).holds())
        .cloned()
        .collect()
}

fn normal_detail(ideal: &MonomialIdeal, max_power: u32) -> Result<(bool, Value)> {
    let report = is_normal_up_to(ideal, max_power, DEFAULT_BOX_LIMIT)?;
    match &report.failure {
        None => Ok((true, json!({ "max_power": max_power }))),
        Some(w) => Ok((
            false,
            json!({ "max_power": max_power, "witness": w, "replayed": verify_normality_witness(ideal, w) }),
        )),
    }
}

/// `closure(I^k) = I^k` for `k <= max_power` on `I_{Δ^∨}`.
pub fn normality_suite(vd: &[(String, SimplicialComplex)], max_power: u32) -> Vec<CaseRecord> {
    vd.par_iter()
        .map(|(id, delta)| pass_case(format!("{id}/normal"), "normality", normal_detail(&delta.dual_facet_ideal(), max_power)))
        .collect()
}

/// `(I^{k+1} : I) = I^k` for `k <= max_power`.
pub fn strong_persistence_suite(vd: &[(String, SimplicialComplex)], max_power: u32) -> Vec<CaseRecord> {
    vd.par_iter()
        .map(|(id, delta)| {
            let ideal = delta.dual_facet_ideal();
            let result = strong_persistence_check(&ideal, max_power)
                .map(|d| (d.holds(), serde_json::to_value(&d).expect("serializable")));
            pass_case(format!("{id}/strong-persistence"), "strong-persistence", result)
        })
        .collect()
}

/// Every `step`-th member, starting with the first.
pub fn subsample<T: Clone>(items: &[T], count: usize) -> Vec<T> {
    if items.is_empty() || count == 0 {
        return vec![];
    }
    let step = (items.len() / count).max(1);
    items.iter().step_by(step).take(count).cloned().collect()
}

/// `Ass(I^k) ⊆ Ass(I^{k+1})` for `k < max_power`, with every colon witness replayed.
pub fn persistence_suite(vd: &[(String, SimplicialComplex)], max_power: u32) -> Vec<CaseRecord> {
    vd.par_iter()
        .map(|(id, delta)| {
            let ideal = delta.dual_facet_ideal();
            let result = persistence_check(&ideal, max_power, DEFAULT_BOX_LIMIT).map(|d| {
                let replayed = d.witness().is_none_or(|sets| sets.iter().all(|s| verify_ass_set(&ideal, s)));
                let sizes: Vec<usize> = d.witness().map_or(vec![], |sets| sets.iter().map(|s| s.primes.len()).collect());
                (
                    d.holds() && replayed,
                    json!({ "ass_sizes": sizes, "replayed": replayed, "failure": d.failure() }),
                )
            });
            pass_case(format!("{id}/persistence"), "persistence", result)
        })
        .collect()
}

/// Weakly polymatroidal squarefree ideals are vertex splittable and normal.
pub fn wpm_suite(ideals: &[(String, MonomialIdeal)], max_power: u32) -> Vec<CaseRecord> {
    ideals
        .par_iter()
        .map(|(id, ideal)| {
            let result = (|| {
                let wpm = is_weakly_polymatroidal(&OrderedIdeal::natural(ideal.clone())).holds();
                let vs = is_vertex_splittable(ideal);
                let replay = vs.witness().is_none_or(|t| verify_splitting_tree(ideal, t).is_ok());
                let (normal, nd) = normal_detail(ideal, max_power)?;
                Ok((
                    wpm && vs.holds() && replay && normal,
                    json!({ "ideal": ideal.to_string(), "wpm": wpm, "vsplit": vs.holds(), "normal": nd }),
                ))
            })();
            pass_case(id.clone(), "wpm", result)
        })
        .collect()
}

/// Chordal graphs: the independence complex is vertex decomposable and the
/// cover ideal is normal.
pub fn chordal_suite(graphs: &[(String, Graph)], max_power: u32) -> Vec<CaseRecord> {
    graphs
        .par_iter()
        .map(|(id, g)| {
            let result = (|| {
                let complex = g.independence_complex();
                let vd = is_vertex_decomposable(&complex);
                let replay = vd.witness().is_none_or(|t| verify_shedding_tree(&complex, t).is_ok());
                let cover = g.cover_ideal();
                let (normal, nd) = normal_detail(&cover, max_power)?;
                Ok((
                    g.is_chordal() && vd.holds() && replay && normal,
                    json!({ "edges": g.edge_count(), "vd": vd.holds(), "normal": nd }),
                ))
            })();
            pass_case(id.clone(), "chordal", result)
        })
        .collect()
}

/// `I_χ` is generated in degree `n`, vertex splittable and equal to `I_{Δ_χ^∨}`.
pub fn colouring_suite(pairs: &[(String, MonomialIdeal, Colouring)]) -> Vec<CaseRecord> {
    pairs
        .par_iter()
        .map(|(id, ideal, chi)| {
            let result = (|| {
                let valid = check_colouring(ideal, chi)?.holds();
                let i_chi = build_i_chi(ideal, chi)?;
                let delta = build_delta_chi(ideal, chi)?;
                let dual = delta.dual_facet_ideal_with(i_chi.vars().to_vec())?;
                let degree_n = i_chi.generated_degree() == Some(ideal.nvars() as u64);
                let vs = is_vertex_splittable(&i_chi);
                let replay = vs.witness().is_none_or(|t| verify_splitting_tree(&i_chi, t).is_ok());
                Ok((
                    valid && degree_n && vs.holds() && replay && dual == i_chi,
                    json!({
                        "ideal": ideal.to_string(),
                        "i_chi": i_chi.to_string(),
                        "degree_n": degree_n,
                        "vsplit": vs.holds(),
                        "dual_matches": dual == i_chi,
                    }),
                ))
            })();
            pass_case(id.clone(), "colouring", result)
        })
        .collect()
}

/// Counts for the cochordal rank check on one vertex count.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CochordalTally {
    pub n: usize,
    pub graphs: usize,
    pub bipartite: usize,
    pub mismatches: Vec<String>,
}

/// For every labelled cochordal graph on `n` vertices with one non-trivial
/// component: incidence rank `n - s - 1` (bipartite) or `n - s`, and
/// `n - ℓ(I(G)) = s + 1` or `s`, with `s` the number of isolated vertices.
pub fn cochordal_tally(n: usize) -> CochordalTally {
    let graphs: Vec<Graph> = corpus::cochordal_graphs(n).collect();
    let results: Vec<(bool, Option<String>)> = graphs
        .par_iter()
        .map(|g| {
            let s = g.isolated_count();
            let bip = g.is_bipartite();
            let rank = g.incidence_rank();
            let spread = analytic_spread(&g.edge_ideal()).expect("edge ideals are equigenerated");
            let (want_rank, want_gap) = if bip { (n - s - 1, s + 1) } else { (n - s, s) };
            let ok = rank == want_rank && n - spread == want_gap;
            (bip, (!ok).then(|| format!("{:?} rank {rank} spread {spread}", g.edges())))
        })
        .collect();
    CochordalTally {
        n,
        graphs: graphs.len(),
        bipartite: results.iter().filter(|r| r.0).count(),
        mismatches: results.into_iter().filter_map(|r| r.1).collect(),
    }
}

pub fn cochordal_suite(max_n: usize) -> Vec<CaseRecord> {
    (2..=max_n)
        .map(|n| {
            let t = cochordal_tally(n);
            pass_case(
                format!("cochordal/n{n}"),
                "cochordal",
                Ok((t.mismatches.is_empty(), serde_json::to_value(&t).expect("serializable"))),
            )
        })
        .collect()
}

/// Agreement of the LP decision with the power-membership oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Concordance {
    pub exact: bool,
    /// Least `s` with `x^{sb} ∈ I^{sk}`, if found.
    pub oracle: Option<u64>,
    /// Set when the oracle needed `s` beyond `s_max`; taken from the
    /// certificate's denominator.
    pub escalated: Option<u64>,
    pub certificate_ok: bool,
}

impl Concordance {
    /// Exact false while the oracle found a power is a hard failure; exact
    /// true must be confirmed by the oracle, possibly after escalation.
    pub fn agrees(&self) -> bool {
        if self.exact {
            self.certificate_ok && (self.oracle.is_some() || self.escalated.is_some())
        } else {
            self.oracle.is_none()
        }
    }
}

pub fn concordance(ideal: &MonomialIdeal, k: u32, b: &Monomial, s_max: u64) -> Result<Concordance> {
    let exact = closure_membership(ideal, k, b)?;
    let oracle = closure_membership_oracle(ideal, k, b, s_max)?;
    let (certificate_ok, escalated) = match exact.witness() {
        Some(lambda) => {
            let ok = verify_lambda(ideal, k, b, lambda);
            let escalated = if oracle.is_none() {
                lambda
                    .denominator()
                    .to_u64()
                    .filter(|&d| closure_membership_oracle(ideal, k, b, d).ok().flatten().is_some())
            } else {
                None
            };
            (ok, escalated)
        }
        None => (true, None),
    };
    Ok(Concordance {
        exact: exact.holds(),
        oracle,
        escalated,
        certificate_ok,
    })
}

pub fn closure_suite(pool: &[MonomialIdeal], queries: &[ClosureQuery], s_max: u64) -> Vec<CaseRecord> {
    queries
        .par_iter()
        .map(|q| {
            let ideal = &pool[q.ideal];
            let result = concordance(ideal, q.k, &q.point, s_max).map(|c| {
                (
                    c.agrees(),
                    json!({ "ideal": ideal.to_string(), "k": q.k, "point": q.point, "result": c }),
                )
            });
            pass_case(q.id.clone(), "closure", result)
        })
        .collect()
}

/// A labelled expected failure of normality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NegativeControl {
    pub id: String,
    pub ideal: IdealRecord,
    pub max_power: u32,
    /// Expected witness as an exponent vector, if pinned.
    #[serde(default)]
    pub witness: Option<Vec<u64>>,
    #[serde(default)]
    pub k: Option<u32>,
}

pub fn default_negative_controls() -> Vec<NegativeControl> {
    let squares = MonomialIdeal::with_default_vars(2, vec![vec![2, 0], vec![0, 2]]).expect("valid");
    let triangles = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).expect("valid");
    vec![
        NegativeControl {
            id: "control/squares".into(),
            ideal: IdealRecord::from(&squares),
            max_power: 1,
            witness: Some(vec![1, 1]),
            k: Some(1),
        },
        NegativeControl {
            id: "control/two-triangles".into(),
            ideal: IdealRecord::from(&triangles.edge_ideal()),
            max_power: 3,
            witness: Some(vec![1; 6]),
            k: Some(3),
        },
    ]
}

/// Controls are expected to fail normality with a replaying witness that
/// matches the pinned one.
pub fn negative_control_suite(controls: &[NegativeControl]) -> Vec<CaseRecord> {
    controls
        .iter()
        .map(|c| {
            let result = (|| {
                let ideal = c.ideal.to_ideal()?.value;
                let report = is_normal_up_to(&ideal, c.max_power, DEFAULT_BOX_LIMIT)?;
                let Some(w) = &report.failure else {
                    return Ok((true, json!({ "normal": true })));
                };
                let replayed = verify_normality_witness(&ideal, w);
                let matches = c.witness.as_ref().is_none_or(|e| w.monomial.exponents() == e.as_slice())
                    && c.k.is_none_or(|k| w.k == k);
                if !(replayed && matches) {
                    return Err(Error::InvalidOrder(format!(
                        "control witness {:?} at k={} (replayed {replayed})",
                        w.monomial.exponents(),
                        w.k
                    )));
                }
                Ok((false, json!({ "witness": w, "replayed": replayed })))
            })();
            record(c.id.clone(), "negative-control", Outcome::Fail, result)
        })
        .collect()
}

/// The coloured ideal example: the listed squarefree members are those of
/// `(x1x2, x2x3x4, x1x3x4)`, and `I_χ` under the singleton colouring must equal
/// the listed generators exactly.
pub fn example_i_chi_suite() -> Vec<CaseRecord> {
    let ideal = MonomialIdeal::with_default_vars(4, vec![vec![1, 1, 0, 0], vec![0, 1, 1, 1], vec![1, 0, 1, 1]])
        .expect("valid");
    let result = (|| {
        let chi = Colouring::singletons(4);
        let got = build_i_chi(&ideal, &chi)?;
        let want = example_i_chi_generators();
        let names: Vec<String> = got.gens().iter().map(|g| g.display_with(got.vars())).collect();
        Ok((got.gens() == want.as_slice(), json!({ "generators": names })))
    })();
    vec![pass_case("example/i-chi", "example", result)]
}

/// The six listed generators of `I_χ` in `x1..x4, y1..y4`, canonically sorted.
pub fn example_i_chi_generators() -> Vec<Monomial> {
    let mut gens: Vec<Monomial> = [
        [1, 1, 0, 0, 0, 0, 1, 1],
        [1, 1, 1, 0, 0, 0, 0, 1],
        [1, 1, 0, 1, 0, 0, 1, 0],
        [0, 1, 1, 1, 1, 0, 0, 0],
        [1, 0, 1, 1, 0, 1, 0, 0],
        [1, 1, 1, 1, 0, 0, 0, 0],
    ]
    .iter()
    .map(|e| Monomial::new(e.to_vec()))
    .collect();
    gens.sort();
    gens
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub record: &'static str,
    pub version: &'static str,
    pub input_digest: String,
    pub cases: usize,
    pub passed: usize,
    pub expected_failures: usize,
    pub unexpected: usize,
    pub resource: usize,
    pub unexpected_ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub cases: Vec<CaseRecord>,
    pub input_digest: String,
}

impl Report {
    pub fn new(mut cases: Vec<CaseRecord>, input_digest: String) -> Self {
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        Report { cases, input_digest }
    }

    pub fn summary(&self) -> Summary {
        let unexpected: Vec<&CaseRecord> = self.cases.iter().filter(|c| !c.is_expected()).collect();
        Summary {
            record: "summary",
            version: VERSION,
            input_digest: self.input_digest.clone(),
            cases: self.cases.len(),
            passed: self.cases.iter().filter(|c| c.outcome == Outcome::Pass).count(),
            expected_failures: self
                .cases
                .iter()
                .filter(|c| c.expected == Outcome::Fail && c.is_expected())
                .count(),
            unexpected: unexpected.len(),
            resource: self.cases.iter().filter(|c| c.outcome == Outcome::Resource).count(),
            unexpected_ids: unexpected.iter().map(|c| c.id.clone()).collect(),
        }
    }

    /// 0 when every case matched its expectation; 3 when the only surprises
    /// are resource caps; 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        let bad: Vec<&CaseRecord> = self.cases.iter().filter(|c| !c.is_expected()).collect();
        if bad.is_empty() {
            0
        } else if bad.iter().all(|c| c.outcome == Outcome::Resource) {
            3
        } else {
            1
        }
    }

    pub fn write_jsonl(&self, mut out: impl Write) -> std::io::Result<()> {
        for c in &self.cases {
            serde_json::to_writer(&mut out, c)?;
            writeln!(out)?;
        }
        serde_json::to_writer(&mut out, &self.summary())?;
        writeln!(out)
    }
}

pub fn digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    hex::encode(h.finalize())
}

/// Every suite over the configured corpora.
pub fn run_verify_corpus(cfg: &CorpusConfig, controls: &[NegativeControl]) -> Report {
    let complexes = corpus::complexes(cfg);
    let vd = decomposable(&complexes);
    let mut cases = duality_suite(&complexes);
    cases.extend(normality_suite(&vd, cfg.normality_power));
    cases.extend(strong_persistence_suite(&vd, cfg.max_power));
    cases.extend(persistence_suite(&subsample(&vd, cfg.persistence_sample), cfg.max_power));
    cases.extend(wpm_suite(&corpus::wpm_ideals(cfg), cfg.max_power));
    cases.extend(chordal_suite(&corpus::chordal_graphs(cfg), cfg.max_power));
    cases.extend(colouring_suite(&corpus::colouring_pairs(cfg)));
    cases.extend(cochordal_suite(cfg.cochordal_max_n));
    let duals: Vec<MonomialIdeal> = vd.iter().map(|(_, d)| d.dual_facet_ideal()).collect();
    let mut pool = corpus::closure_ideal_pool(cfg, &duals);
    for c in controls {
        if let Ok(p) = c.ideal.to_ideal() {
            pool.push(p.value);
        }
    }
    let queries = corpus::closure_queries(cfg, &pool, 4);
    cases.extend(closure_suite(&pool, &queries, DEFAULT_SMAX));
    cases.extend(negative_control_suite(controls));
    cases.extend(example_i_chi_suite());
    let cfg_json = serde_json::to_vec(cfg).expect("serializable");
    let controls_json = serde_json::to_vec(controls).expect("serializable");
    Report::new(cases, digest(&[&cfg_json, &controls_json]))
}

/// Associated primes of `S/I^k` as a record with replay status.
pub fn ass_record(ideal: &MonomialIdeal, k: u32) -> Result<Value> {
    let ass = associated_primes(ideal, k, u64::from(k) + 1, DEFAULT_BOX_LIMIT)?;
    Ok(json!({ "ass": ass, "replayed": verify_ass_set(ideal, &ass) }))
}
