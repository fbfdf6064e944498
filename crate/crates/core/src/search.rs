//! Exact maximum-family search.
//!
//! Pairwise problems are maximum-clique problems on the compatibility graph
//! of the candidate members and are solved by bitset branch and bound with
//! greedy-colouring bounds. t-wise problems use backtracking over the
//! candidate list with incrementally maintained intersection masks.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::bounds::{applicable_bounds, BoundQuery, BoundReport, TheoremId, Universe};
use crate::exactnum::{binom, qbinom, NumError, Natural};
use crate::qspace::{
    contains, enumerate_subspaces, intersection_dim, is_l_intersecting_subspaces, is_sperner,
    SpaceError, Subspace, SubspaceFamily,
};
use crate::setfamily::{
    find_t_wise_violation, for_each_combination, for_each_k_subset,
    intersection_size, is_sperner_sets, shrink_to_intersection, IntersectionSpec, LSet, Mode,
    Subset, SubsetFamily,
};

pub const DEFAULT_CANDIDATE_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("t-wise search is only available for set universes")]
    TWiseSubspaces,
    #[error("t-wise search needs t >= 3 here; use the pairwise search for t = 2")]
    NotTWise,
    #[error("pairwise search called on a {0}-wise problem")]
    NotPairwise(usize),
    #[error("ground set of size {0} exceeds 64")]
    GroundTooLarge(u32),
    #[error("{count} candidates exceed the cap of {cap}")]
    TooManyCandidates { count: Natural, cap: usize },
    #[error("restricted candidates do not match the universe")]
    CandidateUniverse,
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Candidate members, i.e. the vertices of the compatibility graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Candidates {
    Sets(Vec<Subset>),
    Subspaces(Vec<Subspace>),
}

impl Candidates {
    pub fn len(&self) -> usize {
        match self {
            Candidates::Sets(v) => v.len(),
            Candidates::Subspaces(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn size_of(&self, i: usize) -> u32 {
        match self {
            Candidates::Sets(v) => v[i].len(),
            Candidates::Subspaces(v) => v[i].dim(),
        }
    }
}

/// The family found by a search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Sets(SubsetFamily),
    Subspaces(SubspaceFamily),
}

impl Witness {
    pub fn len(&self) -> usize {
        match self {
            Witness::Sets(f) => f.len(),
            Witness::Subspaces(f) => f.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_text(&self) -> String {
        match self {
            Witness::Sets(f) => f.to_text(),
            Witness::Subspaces(f) => f.to_text(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchProblem {
    pub universe: Universe,
    pub spec: IntersectionSpec,
    /// Forbid containment between members.
    pub sperner: bool,
    /// Maximum number of candidates; `None` means [`DEFAULT_CANDIDATE_CAP`].
    pub candidate_cap: Option<usize>,
    pub time_budget: Option<Duration>,
    /// Worker threads for the pairwise search; 1 keeps the witness
    /// deterministic.
    pub threads: usize,
    /// Restrict the first branching vertex to one representative per size.
    /// Ignored when `restrict_to` is set.
    pub symmetry_breaking: bool,
    /// Search only among these members (still filtered by the size rule).
    pub restrict_to: Option<Candidates>,
}

impl SearchProblem {
    pub fn new(universe: Universe, spec: IntersectionSpec) -> Self {
        SearchProblem {
            universe,
            spec,
            sperner: false,
            candidate_cap: None,
            time_budget: None,
            threads: 1,
            symmetry_breaking: false,
            restrict_to: None,
        }
    }

    pub fn with_sperner(mut self, sperner: bool) -> Self {
        self.sperner = sperner;
        self
    }

    pub fn with_time_budget(mut self, budget: Option<Duration>) -> Self {
        self.time_budget = budget;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn with_symmetry_breaking(mut self, on: bool) -> Self {
        self.symmetry_breaking = on;
        self
    }

    pub fn with_candidate_cap(mut self, cap: usize) -> Self {
        self.candidate_cap = Some(cap);
        self
    }

    pub fn restricted_to(mut self, candidates: Candidates) -> Self {
        self.restrict_to = Some(candidates);
        self
    }

    pub fn bound_query(&self) -> BoundQuery {
        BoundQuery::new(self.universe, self.spec.clone(), self.sperner)
    }

    fn is_pairwise(&self) -> bool {
        self.spec.mode() == Mode::Pairwise || self.spec.t() == 2
    }

    fn cap(&self) -> usize {
        self.candidate_cap.unwrap_or(DEFAULT_CANDIDATE_CAP)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    /// Size of the best family found; the true maximum when `completed`.
    pub optimum: usize,
    pub witness: Witness,
    pub nodes_explored: u64,
    /// False when the time budget ran out first.
    pub completed: bool,
    pub bound_reports: Vec<BoundReport>,
}

/// All members of the universe passing the size rule, in canonical order
/// (size, then lexicographic for sets; dimension, then basis for subspaces).
pub fn build_candidates(p: &SearchProblem) -> Result<Candidates, SearchError> {
    let sizes = p.bound_query().admitted_sizes();
    if let Some(restrict) = &p.restrict_to {
        return restricted_candidates(p, restrict);
    }
    match p.universe {
        Universe::Sets { n } => {
            if n > 64 {
                return Err(SearchError::GroundTooLarge(n));
            }
            let count: Natural = sizes.iter().map(|&k| binom(n as u64, k as i64)).sum();
            check_cap(count, p.cap())?;
            let mut out = Vec::new();
            for &k in &sizes {
                for_each_k_subset(n, k, |s| out.push(s));
            }
            Ok(Candidates::Sets(out))
        }
        Universe::Subspaces { n, q } => {
            let mut count = Natural::from(0u32);
            for &k in &sizes {
                count += qbinom(n as u64, k as i64, q as u64)?;
            }
            check_cap(count, p.cap())?;
            let mut out = Vec::new();
            for &k in &sizes {
                out.extend(enumerate_subspaces(n, q, Some(k))?.members().iter().cloned());
            }
            Ok(Candidates::Subspaces(out))
        }
    }
}

fn check_cap(count: Natural, cap: usize) -> Result<(), SearchError> {
    if count > Natural::from(cap) {
        return Err(SearchError::TooManyCandidates { count, cap });
    }
    Ok(())
}

fn restricted_candidates(p: &SearchProblem, restrict: &Candidates) -> Result<Candidates, SearchError> {
    let cap = p.cap();
    let out = match (p.universe, restrict) {
        (Universe::Sets { n }, Candidates::Sets(v)) => {
            if n > 64 {
                return Err(SearchError::GroundTooLarge(n));
            }
            if v.iter().any(|s| s.mask() & !Subset::full(n).mask() != 0) {
                return Err(SearchError::CandidateUniverse);
            }
            let mut v: Vec<Subset> = v.iter().copied().filter(|s| p.spec.admits_size(s.len())).collect();
            v.sort_by(Subset::canonical_cmp);
            v.dedup();
            Candidates::Sets(v)
        }
        (Universe::Subspaces { n, q }, Candidates::Subspaces(v)) => {
            if v.iter().any(|s| s.n() != n || s.q() != q) {
                return Err(SearchError::CandidateUniverse);
            }
            let mut v: Vec<Subspace> = v.iter().filter(|s| p.spec.admits_size(s.dim())).cloned().collect();
            v.sort_by(|a, b| (a.dim(), a.basis()).cmp(&(b.dim(), b.basis())));
            v.dedup();
            Candidates::Subspaces(v)
        }
        _ => return Err(SearchError::CandidateUniverse),
    };
    check_cap(Natural::from(out.len()), cap)?;
    Ok(out)
}

/// Pairwise compatibility: intersection size in `L`, plus incomparability
/// when Sperner is requested.
fn compatibility(cands: &Candidates, l: &LSet, sperner: bool) -> Vec<Vec<bool>> {
    let m = cands.len();
    let mut adj = vec![vec![false; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let ok = match cands {
                Candidates::Sets(v) => {
                    l.contains(intersection_size(v[i], v[j]))
                        && !(sperner && (v[i].is_subset_of(v[j]) || v[j].is_subset_of(v[i])))
                }
                Candidates::Subspaces(v) => {
                    l.contains(intersection_dim(&v[i], &v[j]).expect("one ambient space"))
                        && !(sperner
                            && (contains(&v[i], &v[j]).expect("one ambient space")
                                || contains(&v[j], &v[i]).expect("one ambient space")))
                }
            };
            adj[i][j] = ok;
            adj[j][i] = ok;
        }
    }
    adj
}

fn witness_from(p: &SearchProblem, cands: &Candidates, mut picked: Vec<usize>) -> Witness {
    picked.sort_unstable();
    match (p.universe, cands) {
        (Universe::Sets { n }, Candidates::Sets(v)) => Witness::Sets(
            SubsetFamily::new(n, picked.iter().map(|&i| v[i]).collect()).expect("distinct candidates"),
        ),
        (Universe::Subspaces { n, q }, Candidates::Subspaces(v)) => Witness::Subspaces(
            SubspaceFamily::new(n, q, picked.iter().map(|&i| v[i].clone()).collect())
                .expect("distinct candidates"),
        ),
        _ => unreachable!("candidates are built from the universe"),
    }
}

/// First candidate of each size. The constraints depend only on sizes, and
/// the relabeling group acts transitively on members of one size, so some
/// optimal family contains one of these.
fn orbit_representatives(cands: &Candidates) -> Vec<usize> {
    (0..cands.len())
        .filter(|&i| i == 0 || cands.size_of(i) != cands.size_of(i - 1))
        .collect()
}

struct Shared {
    best: AtomicUsize,
    aborted: AtomicBool,
    deadline: Option<Instant>,
}

impl Shared {
    fn new(budget: Option<Duration>) -> Self {
        Shared {
            best: AtomicUsize::new(0),
            aborted: AtomicBool::new(false),
            deadline: budget.map(|b| Instant::now() + b),
        }
    }

    fn poll(&self, nodes: u64) -> bool {
        if nodes % 256 == 1 && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.aborted.store(true, Ordering::Relaxed);
        }
        self.aborted.load(Ordering::Relaxed)
    }
}

type Bits = Vec<u64>;

fn bit_set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn bit_clear(b: &mut Bits, i: usize) {
    b[i / 64] &= !(1 << (i % 64));
}

fn bits_iter(b: &Bits) -> impl Iterator<Item = usize> + '_ {
    b.iter().enumerate().flat_map(|(w, &word)| {
        let mut word = word;
        std::iter::from_fn(move || {
            (word != 0).then(|| {
                let i = word.trailing_zeros() as usize;
                word &= word - 1;
                w * 64 + i
            })
        })
    })
}

fn bits_and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn bits_empty(b: &Bits) -> bool {
    b.iter().all(|&w| w == 0)
}

fn bits_count(b: &Bits) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

/// Compatibility graph with vertices renumbered by descending degree.
struct Graph {
    /// Graph vertex -> candidate index.
    order: Vec<usize>,
    adj: Vec<Bits>,
    words: usize,
}

impl Graph {
    fn new(compat: &[Vec<bool>]) -> Self {
        let m = compat.len();
        let degree: Vec<usize> = compat.iter().map(|r| r.iter().filter(|&&b| b).count()).collect();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(degree[i]), i));
        let words = m.div_ceil(64).max(1);
        let mut adj = vec![vec![0u64; words]; m];
        for (a, &ca) in order.iter().enumerate() {
            for (b, &cb) in order.iter().enumerate() {
                if compat[ca][cb] {
                    bit_set(&mut adj[a], b);
                }
            }
        }
        Graph { order, adj, words }
    }

    /// Greedy sequential colouring of `p`: vertices listed by colour class
    /// with the running colour count as an upper bound on any clique among
    /// the vertices up to that position.
    fn colour_sort(&self, p: &Bits) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = p.clone();
        let mut order = Vec::new();
        let mut colours = Vec::new();
        let mut colour = 0;
        while !bits_empty(&uncoloured) {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = { let first = bits_iter(&q).next(); first } {
                bit_clear(&mut uncoloured, v);
                bit_clear(&mut q, v);
                for (qw, aw) in q.iter_mut().zip(&self.adj[v]) {
                    *qw &= !aw;
                }
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }
}

struct CliqueWorker<'a> {
    graph: &'a Graph,
    shared: &'a Shared,
    nodes: u64,
    best: Vec<usize>,
}

impl CliqueWorker<'_> {
    fn offer(&mut self, clique: &[usize]) {
        let prev = self.shared.best.fetch_max(clique.len(), Ordering::Relaxed);
        if prev < clique.len() {
            self.best = clique.to_vec();
        }
    }

    fn expand(&mut self, clique: &mut Vec<usize>, p: &Bits) {
        self.nodes += 1;
        if self.shared.poll(self.nodes) {
            return;
        }
        let (order, colours) = self.graph.colour_sort(p);
        let mut p = p.clone();
        for i in (0..order.len()).rev() {
            if clique.len() + colours[i] <= self.shared.best.load(Ordering::Relaxed) {
                return;
            }
            let v = order[i];
            clique.push(v);
            let next = bits_and(&p, &self.graph.adj[v]);
            if bits_empty(&next) {
                self.offer(clique);
            } else {
                self.expand(clique, &next);
            }
            clique.pop();
            bit_clear(&mut p, v);
            if self.shared.aborted.load(Ordering::Relaxed) {
                return;
            }
        }
    }

    /// Best clique containing `root` inside `p ∪ {root}`.
    fn branch(&mut self, root: usize, p: &Bits, bound: usize) {
        if bound <= self.shared.best.load(Ordering::Relaxed) {
            return;
        }
        let mut clique = vec![root];
        if bits_empty(p) {
            self.nodes += 1;
            self.offer(&clique);
        } else {
            self.expand(&mut clique, p);
        }
    }
}

/// Exact maximum family under a pairwise constraint (maximum clique).
///
/// With one thread the witness is deterministic; with several, the optimum
/// is still exact but the witness may vary between runs.
pub fn max_pairwise_family(p: &SearchProblem) -> Result<SearchResult, SearchError> {
    if !p.is_pairwise() {
        return Err(SearchError::NotPairwise(p.spec.t()));
    }
    let bound_reports = applicable_bounds(&p.bound_query())?;
    let cands = build_candidates(p)?;
    let shared = Shared::new(p.time_budget);
    if cands.is_empty() {
        return Ok(SearchResult {
            optimum: 0,
            witness: witness_from(p, &cands, Vec::new()),
            nodes_explored: 0,
            completed: true,
            bound_reports,
        });
    }
    let graph = Graph::new(&compatibility(&cands, p.spec.l(), p.sperner));
    let m = graph.order.len();

    // Root branches: (vertex, allowed neighbours, upper bound).
    let mut roots: Vec<(usize, Bits, usize)> = Vec::new();
    if p.symmetry_breaking && p.restrict_to.is_none() {
        let position: Vec<usize> = {
            let mut pos = vec![0; m];
            for (g, &c) in graph.order.iter().enumerate() {
                pos[c] = g;
            }
            pos
        };
        let mut excluded = vec![0u64; graph.words];
        for rep in orbit_representatives(&cands) {
            let g = position[rep];
            let mut allowed = graph.adj[g].clone();
            for (a, e) in allowed.iter_mut().zip(&excluded) {
                *a &= !e;
            }
            let bound = 1 + bits_count(&allowed);
            roots.push((g, allowed, bound));
            bit_set(&mut excluded, g);
        }
    } else {
        let mut all = vec![0u64; graph.words];
        (0..m).for_each(|v| bit_set(&mut all, v));
        let (order, colours) = graph.colour_sort(&all);
        let mut before = vec![0u64; graph.words];
        let mut prefix = Vec::with_capacity(m);
        for &v in &order {
            prefix.push(before.clone());
            bit_set(&mut before, v);
        }
        for i in (0..order.len()).rev() {
            let v = order[i];
            roots.push((v, bits_and(&prefix[i], &graph.adj[v]), colours[i]));
        }
    }

    let run = |(root, allowed, bound): &(usize, Bits, usize)| {
        let mut w = CliqueWorker { graph: &graph, shared: &shared, nodes: 0, best: Vec::new() };
        if !shared.aborted.load(Ordering::Relaxed) {
            w.branch(*root, allowed, *bound);
        }
        (w.nodes, w.best)
    };
    let outcomes: Vec<(u64, Vec<usize>)> = if p.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(p.threads)
            .build()
            .expect("thread pool");
        pool.install(|| roots.par_iter().map(run).collect())
    } else {
        roots.iter().map(run).collect()
    };

    let nodes_explored = outcomes.iter().map(|o| o.0).sum();
    let best = outcomes
        .into_iter()
        .map(|o| o.1)
        .fold(Vec::new(), |acc, c| if c.len() > acc.len() { c } else { acc });
    let picked: Vec<usize> = best.iter().map(|&g| graph.order[g]).collect();
    Ok(SearchResult {
        optimum: picked.len(),
        witness: witness_from(p, &cands, picked),
        nodes_explored,
        completed: !shared.aborted.load(Ordering::Relaxed),
        bound_reports,
    })
}

struct TWiseWorker<'a> {
    cands: &'a [Subset],
    l: &'a LSet,
    t: usize,
    sperner: bool,
    shared: &'a Shared,
    nodes: u64,
    best: Vec<usize>,
    chosen: Vec<usize>,
    /// `levels[j]` holds the common intersections of every `j`-subset of the
    /// chosen members, `1 <= j <= t - 1`.
    levels: Vec<Vec<u64>>,
}

impl TWiseWorker<'_> {
    fn push(&mut self, v: usize) -> Vec<usize> {
        let saved: Vec<usize> = self.levels.iter().map(Vec::len).collect();
        let mask = self.cands[v].mask();
        for j in (2..self.t).rev() {
            let (lower, upper) = self.levels.split_at_mut(j);
            upper[0].extend(lower[j - 1][..saved[j - 1]].iter().map(|m| m & mask));
        }
        self.levels[1].push(mask);
        self.chosen.push(v);
        saved
    }

    fn pop(&mut self, saved: &[usize]) {
        for (level, &len) in self.levels.iter_mut().zip(saved) {
            level.truncate(len);
        }
        self.chosen.pop();
    }

    fn extend(&mut self, pool: &[usize]) {
        self.nodes += 1;
        if self.shared.poll(self.nodes) {
            return;
        }
        if self.chosen.len() > self.shared.best.load(Ordering::Relaxed) {
            self.shared.best.store(self.chosen.len(), Ordering::Relaxed);
            self.best = self.chosen.clone();
        }
        for (i, &v) in pool.iter().enumerate() {
            if self.chosen.len() + pool.len() - i <= self.shared.best.load(Ordering::Relaxed) {
                return;
            }
            let saved = self.push(v);
            let next = self.survivors(v, &pool[i + 1..], saved[self.t - 1]);
            self.extend(&next);
            self.pop(&saved);
            if self.shared.aborted.load(Ordering::Relaxed) {
                return;
            }
        }
    }

    /// Members of `rest` that stay feasible after `v` joined: checked only
    /// against the new `(t-1)`-intersections, which all involve `v`.
    fn survivors(&self, v: usize, rest: &[usize], fresh_from: usize) -> Vec<usize> {
        let fresh = &self.levels[self.t - 1][fresh_from..];
        let a = self.cands[v];
        rest.iter()
            .copied()
            .filter(|&u| {
                let b = self.cands[u];
                fresh.iter().all(|m| self.l.contains((m & b.mask()).count_ones()))
                    && !(self.sperner && (a.is_subset_of(b) || b.is_subset_of(a)))
            })
            .collect()
    }
}

/// Exact maximum t-wise L-intersecting family of sets, by backtracking.
/// Runs single-threaded.
pub fn max_twise_family(p: &SearchProblem) -> Result<SearchResult, SearchError> {
    if !matches!(p.universe, Universe::Sets { .. }) {
        return Err(SearchError::TWiseSubspaces);
    }
    if p.spec.mode() != Mode::TWise {
        return Err(SearchError::NotTWise);
    }
    let bound_reports = applicable_bounds(&p.bound_query())?;
    let cands = build_candidates(p)?;
    let Candidates::Sets(sets) = &cands else { unreachable!("set universe") };
    let shared = Shared::new(p.time_budget);
    let t = p.spec.t();
    let mut w = TWiseWorker {
        cands: sets,
        l: p.spec.l(),
        t,
        sperner: p.sperner,
        shared: &shared,
        nodes: 0,
        best: Vec::new(),
        chosen: Vec::new(),
        levels: vec![Vec::new(); t],
    };
    let all: Vec<usize> = (0..sets.len()).collect();
    if p.symmetry_breaking && p.restrict_to.is_none() {
        let reps = orbit_representatives(&cands);
        for (j, &rep) in reps.iter().enumerate() {
            let pool: Vec<usize> = all.iter().copied().filter(|u| *u != rep && !reps[..j].contains(u)).collect();
            let saved = w.push(rep);
            let next = w.survivors(rep, &pool, saved[t - 1]);
            w.extend(&next);
            w.pop(&saved);
        }
    } else {
        w.extend(&all);
    }
    let best = std::mem::take(&mut w.best);
    Ok(SearchResult {
        optimum: best.len(),
        witness: witness_from(p, &cands, best),
        nodes_explored: w.nodes,
        completed: !shared.aborted.load(Ordering::Relaxed),
        bound_reports,
    })
}

/// Dispatches to the pairwise or t-wise search.
pub fn solve(p: &SearchProblem) -> Result<SearchResult, SearchError> {
    if p.is_pairwise() {
        max_pairwise_family(p)
    } else {
        max_twise_family(p)
    }
}

/// Re-checks a witness against every constraint of the problem.
pub fn witness_satisfies(p: &SearchProblem, witness: &Witness) -> bool {
    match witness {
        Witness::Sets(f) => {
            matches!(p.universe, Universe::Sets { n } if n == f.ground())
                && p.spec.is_satisfied_by(f)
                && (!p.sperner || is_sperner_sets(f))
        }
        Witness::Subspaces(f) => {
            matches!(p.universe, Universe::Subspaces { n, q } if n == f.n() && q == f.q())
                && p.is_pairwise()
                && f.members().iter().all(|m| p.spec.admits_size(m.dim()))
                && is_l_intersecting_subspaces(f, p.spec.l())
                && (!p.sperner || is_sperner(f))
        }
    }
}

/// Search outcome confronted with the bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conformance {
    pub optimum: usize,
    pub completed: bool,
    /// Bounds whose hypotheses hold but which the found family exceeds.
    pub violations: Vec<TheoremId>,
    /// Bounds whose hypotheses hold and which the found family attains.
    pub tight: Vec<TheoremId>,
}

impl Conformance {
    pub fn conforms(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares the best family found with every bound whose hypotheses hold.
/// Incomplete searches are checked too: their witness is still a valid
/// family, so exceeding a bound would be just as contradictory.
pub fn verify_bounds(result: &SearchResult) -> Conformance {
    let met = result.bound_reports.iter().filter(|b| b.hypotheses_met);
    let size = Natural::from(result.optimum);
    Conformance {
        optimum: result.optimum,
        completed: result.completed,
        violations: met.clone().filter(|b| !b.admits(result.optimum)).map(|b| b.theorem).collect(),
        tight: met.filter(|b| b.value == size).map(|b| b.theorem).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("members {0:?} have a common intersection whose size is outside L")]
    NotTWise(Vec<usize>),
    #[error("member {index} has size {size}, which lies in L")]
    SizeInL { index: usize, size: u32 },
    #[error("t must be at least 2, got {0}")]
    BadT(usize),
}

/// Per-condition outcome of [`twise_partition`]. Indices refer to positions
/// in the returned `b`/`c` families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionReport {
    /// Number of seed members (`min(k + 1, m)`).
    pub seed_len: usize,
    /// `|B| + |F| = |A|` and the two are disjoint.
    pub partition_total: bool,
    /// The seed's common intersection equals that of all of `A`.
    pub seed_realizes_intersection: bool,
    /// `C_i ⊆ B_i` and `|C_i|` outside `L` for every `i`.
    pub containment_ok: bool,
    /// `F` is `(t-1)`-wise L-intersecting.
    pub rest_ok: bool,
    /// Pairs `(i, j)`, `i != j`, with `|B_i ∩ C_j|` outside `L`.
    pub cross_violations: Vec<(usize, usize)>,
}

impl PartitionReport {
    pub fn all_green(&self) -> bool {
        self.partition_total
            && self.seed_realizes_intersection
            && self.containment_ok
            && self.rest_ok
            && self.cross_violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub b: SubsetFamily,
    /// Paired with `b` by position; may repeat sets.
    pub c: Vec<Subset>,
    pub f: SubsetFamily,
    pub report: PartitionReport,
}

/// Splits a t-wise L-intersecting family with sizes outside `L` into a
/// paired part `(B, C)` and a `(t-1)`-wise L-intersecting rest `F`.
///
/// The first `k + 1` members (`k` the largest size) are reordered so that
/// they realize the common intersection of the whole family, and seed `B`
/// and `C`. Then, while some `t-1` not-yet-placed members have a common
/// intersection of size outside `L`, the first of them (lexicographically
/// first tuple) joins `B` and that intersection joins `C`. Every condition
/// is re-checked in the report rather than assumed.
pub fn twise_partition(a: &SubsetFamily, l: &LSet, t: usize) -> Result<Partition, PartitionError> {
    if t < 2 {
        return Err(PartitionError::BadT(t));
    }
    if let Some(tuple) = find_t_wise_violation(a, l, t) {
        return Err(PartitionError::NotTWise(tuple));
    }
    if let Some(index) = a.members().iter().position(|m| l.contains(m.len())) {
        return Err(PartitionError::SizeInL { index, size: a.members()[index].len() });
    }
    let n = a.ground();
    let members = a.members();
    let k = a.max_size() as usize;
    let seed_len = (k + 1).min(members.len());

    // Seed: a shortest realizing prefix, padded in original order.
    let mut order = shrink_to_intersection(members, a.common_intersection());
    for i in 0..members.len() {
        if order.len() >= seed_len {
            break;
        }
        if !order.contains(&i) {
            order.push(i);
        }
    }
    let mut b: Vec<Subset> = order.iter().map(|&i| members[i]).collect();
    let mut c = b.clone();
    let mut rest: Vec<Subset> = (0..members.len())
        .filter(|i| !order.contains(i))
        .map(|i| members[i])
        .collect();

    loop {
        let mut found = None;
        for_each_combination(rest.len(), t - 1, |idx| {
            let meet = idx.iter().fold(Subset::full(n), |acc, &i| acc.intersection(rest[i]));
            if l.contains(meet.len()) {
                return true;
            }
            found = Some((idx[0], meet));
            false
        });
        let Some((first, meet)) = found else { break };
        b.push(rest.remove(first));
        c.push(meet);
    }

    let fam = |v: Vec<Subset>| SubsetFamily::new(n, v).expect("members of A");
    let b_fam = fam(b.clone());
    let f_fam = fam(rest.clone());
    let seed = a.select(&order[..seed_len.min(order.len())]);
    let cross_violations = (0..b.len())
        .flat_map(|i| (0..c.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && !l.contains(intersection_size(b[i], c[j])))
        .collect();
    let report = PartitionReport {
        seed_len,
        partition_total: b.len() + rest.len() == members.len()
            && b.iter().chain(&rest).all(|s| members.contains(s))
            && b.iter().all(|s| !rest.contains(s)),
        seed_realizes_intersection: seed.common_intersection() == a.common_intersection(),
        containment_ok: b
            .iter()
            .zip(&c)
            .all(|(bi, ci)| ci.is_subset_of(*bi) && !l.contains(ci.len())),
        rest_ok: t == 2 || find_t_wise_violation(&f_fam, l, t - 1).is_none(),
        cross_violations,
    };
    Ok(Partition {
        b: b_fam,
        c,
        f: f_fam,
        report,
    })
}
