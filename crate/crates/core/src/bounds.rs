//! Closed-form upper bounds on L-intersecting families, each evaluated
//! exactly and paired with a check of the hypotheses under which it is a
//! theorem.
//!
//! A bound is always evaluated, even when its hypotheses fail; the
//! `hypotheses_met` flag records whether the value is actually guaranteed.
//! Thresholds that involve a logarithm are compared as exact integer powers.

use std::fmt;

use num_traits::{One, Zero};

use crate::exactnum::{binom, binom_sum, power, qbinom, qbinom_sum, Natural, NumError};
use crate::setfamily::{IntersectionSpec, LSet, Mode};

/// Which theorem a bound comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    /// Uniform intersecting families: `C(n-1, k-1)` for `n >= 2k`.
    ErdosKoRado,
    /// Uniform L-intersecting families: `C(n, s)`.
    RayChaudhuriWilson,
    /// L-intersecting families: `sum_{i<=s} C(n, i)`.
    FranklWilson,
    /// Sizes in K with every `k_i > s - r`: `sum_{i=s-r+1}^{s} C(n, i)`.
    AlonBabaiSuzuki,
    /// t-wise families: `(t-1) sum_{i<=s} C(n, i)`.
    GrolmuszSudakov,
    /// t-wise families with sizes in K: `(t-1) sum_{i=s-r+1}^{s} C(n, i)`.
    GrolmuszSudakovK,
    /// L of positive integers: `sum_{i<=s} C(n-1, i)`.
    SnevilyPositive,
    /// `L = {0..s-1}` and every size at least `s`: `C(n, s)`.
    SnevilyPrefix,
    /// Sizes outside L and `n` above the large-n threshold: `C(n, s)`.
    SnevilyLargeN,
    /// t-wise, sizes outside L, `n` above the threshold: `(t-1) C(n, s)`.
    TWiseLargeN,
    /// `n` above the threshold: `sum_{i<=s} C(n - l_1, i)`.
    LiuZhangXiao,
    /// Cross-intersecting pairs with `A_i ⊆ B_i`, `|A_i| ∉ L`:
    /// `sum_{i<=s} C(n-1, i)`.
    CrossIntersecting,
    /// Uniform intersecting subspaces: `[n-1, k-1]_q` for `n >= 2k`.
    DezaFrankl,
    /// Uniform L-intersecting subspaces: `[n, s]_q`.
    FranklGraham,
    /// L-intersecting subspaces: `sum_{i<=s} [n, i]_q`.
    Lefmann,
    /// Subspaces with dimensions in K, `k_i > s - r`.
    AlonBabaiSuzukiQ,
    /// Positive L, `n` above the q-threshold: `|V| < [n, s]_q`.
    QSnevilyPositive,
    /// Sperner, `n` above the q-threshold: `|V| <= [n, s]_q`.
    QSnevilySperner,
    /// Sperner families: `[n, floor(n/2)]_q`.
    QSperner,
    /// Sperner, dimensions at most `s`, `n >= 2s+1`: `[n, s]_q`.
    QSpernerLowDim,
}

impl TheoremId {
    /// Stable identifier used in machine-readable output.
    pub fn id(self) -> &'static str {
        match self {
            TheoremId::ErdosKoRado => "ekr",
            TheoremId::RayChaudhuriWilson => "ray_chaudhuri_wilson",
            TheoremId::FranklWilson => "frankl_wilson",
            TheoremId::AlonBabaiSuzuki => "alon_babai_suzuki",
            TheoremId::GrolmuszSudakov => "grolmusz_sudakov",
            TheoremId::GrolmuszSudakovK => "grolmusz_sudakov_k",
            TheoremId::SnevilyPositive => "snevily_positive",
            TheoremId::SnevilyPrefix => "snevily_prefix",
            TheoremId::SnevilyLargeN => "snevily_large_n",
            TheoremId::TWiseLargeN => "twise_large_n",
            TheoremId::LiuZhangXiao => "liu_zhang_xiao",
            TheoremId::CrossIntersecting => "cross_intersecting",
            TheoremId::DezaFrankl => "deza_frankl",
            TheoremId::FranklGraham => "frankl_graham",
            TheoremId::Lefmann => "lefmann",
            TheoremId::AlonBabaiSuzukiQ => "alon_babai_suzuki_q",
            TheoremId::QSnevilyPositive => "q_snevily_positive",
            TheoremId::QSnevilySperner => "q_snevily_sperner",
            TheoremId::QSperner => "q_sperner",
            TheoremId::QSpernerLowDim => "q_sperner_low_dim",
        }
    }

    /// Whether the bound is a strict inequality (`|F| < value`).
    pub fn strict(self) -> bool {
        matches!(self, TheoremId::QSnevilyPositive)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub theorem: TheoremId,
    pub value: Natural,
    pub hypotheses_met: bool,
    pub notes: Vec<String>,
}

impl BoundReport {
    fn new(theorem: TheoremId, value: Natural) -> Self {
        BoundReport { theorem, value, hypotheses_met: true, notes: Vec::new() }
    }

    /// Records a hypothesis; a failing one clears `hypotheses_met`.
    fn require(mut self, ok: bool, note: impl Into<String>) -> Self {
        if !ok {
            self.hypotheses_met = false;
            self.notes.push(note.into());
        }
        self
    }

    pub fn strict(&self) -> bool {
        self.theorem.strict()
    }

    /// Whether a family of size `size` respects the bound.
    pub fn admits(&self, size: usize) -> bool {
        let size = Natural::from(size);
        if self.strict() {
            size < self.value
        } else {
            size <= self.value
        }
    }
}

fn nat(v: u64) -> Natural {
    Natural::from(v)
}

fn lower_index(s: u32, r: u32) -> i64 {
    s as i64 - r as i64 + 1
}

pub fn ekr_bound(n: u32, k: u32) -> BoundReport {
    BoundReport::new(TheoremId::ErdosKoRado, binom(n.saturating_sub(1) as u64, k as i64 - 1))
        .require(n >= 2 * k, format!("needs n >= 2k, n={n} k={k}"))
}

/// `uniform` is the common member size, if the family is known to be uniform.
/// The bound also needs every element of L below that size: with
/// `L = {0, 1, 2}` and `k = 2` all six 2-subsets of `[4]` qualify.
pub fn ray_chaudhuri_wilson_bound(n: u32, s: u32, l_max: u32, uniform: Option<u32>) -> BoundReport {
    BoundReport::new(TheoremId::RayChaudhuriWilson, binom(n as u64, s as i64))
        .require(uniform.is_some(), "needs a uniform family")
        .require(uniform.is_none_or(|k| l_max < k), "needs every element of L below the member size")
}

pub fn frankl_wilson_bound(n: u32, s: u32) -> BoundReport {
    BoundReport::new(TheoremId::FranklWilson, binom_sum(n as u64, 0, s as i64))
}

/// `k` is the set of allowed sizes (its length is `r`).
pub fn alon_babai_suzuki_bound(n: u32, s: u32, k: &[u32]) -> BoundReport {
    let r = k.len() as u32;
    let lo = lower_index(s, r);
    BoundReport::new(TheoremId::AlonBabaiSuzuki, binom_sum(n as u64, lo, s as i64)).require(
        k.iter().all(|&ki| ki as i64 > s as i64 - r as i64),
        format!("needs every k_i > s - r = {}", s as i64 - r as i64),
    )
}

pub fn grolmusz_sudakov_bound(n: u32, s: u32, t: usize, k: Option<&[u32]>) -> BoundReport {
    let t1 = nat(t as u64 - 1);
    match k {
        None => BoundReport::new(TheoremId::GrolmuszSudakov, t1 * binom_sum(n as u64, 0, s as i64)),
        Some(k) => {
            let r = k.len() as u32;
            BoundReport::new(
                TheoremId::GrolmuszSudakovK,
                t1 * binom_sum(n as u64, lower_index(s, r), s as i64),
            )
            .require(
                k.iter().all(|&ki| ki as i64 > s as i64 - r as i64),
                format!("needs every k_i > s - r = {}", s as i64 - r as i64),
            )
        }
    }
}

/// `l_min` is `min L` when known.
pub fn snevily_positive_bound(n: u32, s: u32, l_min: Option<u32>) -> BoundReport {
    let report = BoundReport::new(
        TheoremId::SnevilyPositive,
        binom_sum(n.saturating_sub(1) as u64, 0, s as i64),
    );
    match l_min {
        Some(l1) => report.require(l1 >= 1, "needs every element of L positive"),
        None => report,
    }
}

/// `L = {0, ..., s-1}` with all sizes at least `s`.
pub fn snevily_prefix_bound(n: u32, l: &LSet, min_size: u32) -> BoundReport {
    let s = l.s();
    BoundReport::new(TheoremId::SnevilyPrefix, binom(n as u64, s as i64))
        .require(l.is_prefix(), format!("needs L = {{0..{}}}, got {l}", s - 1))
        .require(min_size >= s, format!("needs every size >= s = {s}"))
}

/// Large-n threshold `C(k^2, l1 + 1) * s + l1`.
pub fn large_n_threshold(k: u32, s: u32, l1: u32) -> Natural {
    binom(k as u64 * k as u64, l1 as i64 + 1) * s + l1
}

fn threshold_note(n: u32, threshold: &Natural) -> String {
    format!("needs n >= C(k^2, l1+1) s + l1 = {threshold}, n={n}")
}

/// Sizes outside `L`; `k` is the largest member size.
pub fn snevily_large_n_bound(n: u32, s: u32, l1: u32, k: u32, sizes_outside_l: bool) -> BoundReport {
    let threshold = large_n_threshold(k, s, l1);
    BoundReport::new(TheoremId::SnevilyLargeN, binom(n as u64, s as i64))
        .require(sizes_outside_l, "needs every size outside L")
        .require(nat(n as u64) >= threshold, threshold_note(n, &threshold))
}

pub fn twise_large_n_bound(
    n: u32,
    s: u32,
    t: usize,
    l1: u32,
    k: u32,
    sizes_outside_l: bool,
) -> BoundReport {
    let threshold = large_n_threshold(k, s, l1);
    BoundReport::new(TheoremId::TWiseLargeN, nat(t as u64 - 1) * binom(n as u64, s as i64))
        .require(sizes_outside_l, "needs every size outside L")
        .require(nat(n as u64) >= threshold, threshold_note(n, &threshold))
}

pub fn liu_zhang_xiao_bound(n: u32, s: u32, l1: u32, k: u32) -> BoundReport {
    let threshold = large_n_threshold(k, s, l1);
    BoundReport::new(
        TheoremId::LiuZhangXiao,
        binom_sum(n.saturating_sub(l1) as u64, 0, s as i64),
    )
    .require(nat(n as u64) >= threshold, threshold_note(n, &threshold))
}

/// `conditions_hold` covers cross-intersection sizes in L, `A_i ⊆ B_i` and
/// `|A_i| ∉ L`.
pub fn cross_intersecting_bound(n: u32, s: u32, conditions_hold: bool) -> BoundReport {
    BoundReport::new(
        TheoremId::CrossIntersecting,
        binom_sum(n.saturating_sub(1) as u64, 0, s as i64),
    )
    .require(conditions_hold, "needs sizes outside L (and cross conditions)")
}

/// Outcome of a numeric lemma check: whether the inequality holds at these
/// parameters and whether the parameters are in the lemma's range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaCheck {
    pub holds: bool,
    pub hypothesis_met: bool,
}

/// `sum_{i<=s} C(n-2, i) <= C(n, s)`; the hypothesis is `n >= s^2`.
/// For `n < 2` the left side is taken as zero.
pub fn binomial_tail_check(n: u32, s: u32) -> LemmaCheck {
    let lhs = if n >= 2 { binom_sum(n as u64 - 2, 0, s as i64) } else { Natural::zero() };
    LemmaCheck {
        holds: lhs <= binom(n as u64, s as i64),
        hypothesis_met: n as u64 >= s as u64 * s as u64,
    }
}

/// `sum_{i<=s} [n-1, i]_q < [n, s]_q`; the hypothesis is `s >= 1`, `q >= 2`,
/// `n >= 2s + 1`.
pub fn q_tail_check(n: u32, s: u32, q: u64) -> Result<LemmaCheck, NumError> {
    let lhs = if n >= 1 { qbinom_sum(n as u64 - 1, 0, s as i64, q)? } else { Natural::zero() };
    Ok(LemmaCheck {
        holds: lhs < qbinom(n as u64, s as i64, q)?,
        hypothesis_met: s >= 1 && n > 2 * s,
    })
}

pub fn deza_frankl_bound(n: u32, k: u32, q: u64) -> Result<BoundReport, NumError> {
    Ok(BoundReport::new(
        TheoremId::DezaFrankl,
        qbinom(n.saturating_sub(1) as u64, k as i64 - 1, q)?,
    )
    .require(n >= 2 * k, format!("needs n >= 2k, n={n} k={k}")))
}

/// Same extra condition as [`ray_chaudhuri_wilson_bound`], on dimensions.
pub fn frankl_graham_bound(n: u32, s: u32, q: u64, l_max: u32, uniform: Option<u32>) -> Result<BoundReport, NumError> {
    Ok(BoundReport::new(TheoremId::FranklGraham, qbinom(n as u64, s as i64, q)?)
        .require(uniform.is_some(), "needs a uniform family")
        .require(uniform.is_none_or(|k| l_max < k), "needs every element of L below the member dimension"))
}

pub fn lefmann_bound(n: u32, s: u32, q: u64) -> Result<BoundReport, NumError> {
    Ok(BoundReport::new(TheoremId::Lefmann, qbinom_sum(n as u64, 0, s as i64, q)?))
}

pub fn alon_babai_suzuki_q_bound(n: u32, s: u32, k: &[u32], q: u64) -> Result<BoundReport, NumError> {
    let r = k.len() as u32;
    Ok(BoundReport::new(
        TheoremId::AlonBabaiSuzukiQ,
        qbinom_sum(n as u64, lower_index(s, r), s as i64, q)?,
    )
    .require(
        k.iter().all(|&ki| ki as i64 > s as i64 - r as i64),
        format!("needs every k_i > s - r = {}", s as i64 - r as i64),
    ))
}

/// Exact form of `n >= max(log_q((q^s - 1) [k^2, l1+1]_q + 1) + l1, 2s + 1)`:
/// `q^(n - l1) >= (q^s - 1) [k^2, l1+1]_q + 1` and `n >= 2s + 1`.
pub fn q_threshold_met(n: u32, s: u32, l1: u32, k: u32, q: u64) -> Result<bool, NumError> {
    let target = (power(q, s as u64) - Natural::one())
        * qbinom(k as u64 * k as u64, l1 as i64 + 1, q)?
        + Natural::one();
    let log_part = n >= l1 && power(q, (n - l1) as u64) >= target;
    Ok(log_part && n > 2 * s)
}

/// Strict bound for positive `L`; `k` is the largest dimension.
pub fn q_snevily_positive_bound(n: u32, s: u32, l1: u32, k: u32, q: u64) -> Result<BoundReport, NumError> {
    Ok(BoundReport::new(TheoremId::QSnevilyPositive, qbinom(n as u64, s as i64, q)?)
        .require(l1 >= 1, "needs every element of L positive")
        .require(q_threshold_met(n, s, l1, k, q)?, "n below the q-threshold"))
}

pub fn q_snevily_sperner_bound(
    n: u32,
    s: u32,
    l1: u32,
    k: u32,
    q: u64,
    sperner: bool,
) -> Result<BoundReport, NumError> {
    Ok(BoundReport::new(TheoremId::QSnevilySperner, qbinom(n as u64, s as i64, q)?)
        .require(sperner, "needs a Sperner family")
        .require(q_threshold_met(n, s, l1, k, q)?, "n below the q-threshold"))
}

pub fn q_sperner_bound(n: u32, q: u64, sperner: bool) -> Result<BoundReport, NumError> {
    Ok(BoundReport::new(TheoremId::QSperner, qbinom(n as u64, (n / 2) as i64, q)?)
        .require(sperner, "needs a Sperner family"))
}

/// Sperner family with every dimension at most `s`; `max_dim` is the largest.
pub fn q_sperner_low_dim_bound(
    n: u32,
    s: u32,
    q: u64,
    max_dim: u32,
    sperner: bool,
) -> Result<BoundReport, NumError> {
    Ok(BoundReport::new(TheoremId::QSpernerLowDim, qbinom(n as u64, s as i64, q)?)
        .require(sperner, "needs a Sperner family")
        .require(max_dim <= s, format!("needs every dimension <= s = {s}"))
        .require(n > 2 * s, format!("needs n >= 2s + 1 = {}", 2 * s + 1)))
}

/// The ambient object a family lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Universe {
    /// Subsets of `[n]`.
    Sets { n: u32 },
    /// Subspaces of `GF(q)^n`.
    Subspaces { n: u32, q: u32 },
}

impl Universe {
    pub fn n(self) -> u32 {
        match self {
            Universe::Sets { n } | Universe::Subspaces { n, .. } => n,
        }
    }
}

/// Everything needed to decide which bounds apply to a maximization problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundQuery {
    pub universe: Universe,
    pub spec: IntersectionSpec,
    /// Sperner (antichain) constraint requested on top of the spec.
    pub sperner: bool,
}

impl BoundQuery {
    pub fn new(universe: Universe, spec: IntersectionSpec, sperner: bool) -> Self {
        BoundQuery { universe, spec, sperner }
    }

    /// Sizes (or dimensions) a member may take.
    pub fn admitted_sizes(&self) -> Vec<u32> {
        (0..=self.universe.n()).filter(|&k| self.spec.admits_size(k)).collect()
    }
}

/// Evaluates every bound whose hypothesis shape matches the query, sorted by
/// value (ties keep theorem order).
pub fn applicable_bounds(query: &BoundQuery) -> Result<Vec<BoundReport>, NumError> {
    let spec = &query.spec;
    let l = spec.l();
    let s = l.s();
    let l1 = l.min();
    let sizes = query.admitted_sizes();
    let k_max = sizes.last().copied().unwrap_or(0);
    let k_min = sizes.first().copied().unwrap_or(0);
    let outside_l = spec.forces_sizes_outside_l();
    let uniform = spec.uniform_size();
    let pairwise = spec.mode() == Mode::Pairwise || spec.t() == 2;
    let mut out = Vec::new();

    match query.universe {
        Universe::Sets { n } => {
            if pairwise {
                out.push(frankl_wilson_bound(n, s));
                out.push(ray_chaudhuri_wilson_bound(n, s, l.max(), uniform));
                if let Some(k) = uniform {
                    if l1 >= 1 {
                        out.push(ekr_bound(n, k));
                    }
                }
                if let Some(k) = spec.enforced_k() {
                    out.push(alon_babai_suzuki_bound(n, s, k));
                }
                out.push(snevily_positive_bound(n, s, Some(l1)));
                if spec.size_rule() != crate::setfamily::SizeRule::None {
                    out.push(snevily_prefix_bound(n, l, k_min));
                }
                out.push(snevily_large_n_bound(n, s, l1, k_max, outside_l));
                out.push(liu_zhang_xiao_bound(n, s, l1, k_max));
                out.push(cross_intersecting_bound(n, s, outside_l));
            }
            if spec.mode() == Mode::TWise {
                let t = spec.t();
                out.push(grolmusz_sudakov_bound(n, s, t, None));
                if let Some(k) = spec.enforced_k() {
                    out.push(grolmusz_sudakov_bound(n, s, t, Some(k)));
                }
                out.push(twise_large_n_bound(n, s, t, l1, k_max, outside_l));
            }
        }
        Universe::Subspaces { n, q } => {
            if spec.mode() == Mode::TWise && spec.t() != 2 {
                return Ok(out);
            }
            let q = q as u64;
            let sperner = query.sperner || outside_l;
            out.push(lefmann_bound(n, s, q)?);
            out.push(frankl_graham_bound(n, s, q, l.max(), uniform)?);
            if let Some(k) = uniform {
                if l1 >= 1 {
                    out.push(deza_frankl_bound(n, k, q)?);
                }
            }
            if let Some(k) = spec.enforced_k() {
                out.push(alon_babai_suzuki_q_bound(n, s, k, q)?);
            }
            out.push(q_snevily_positive_bound(n, s, l1, k_max, q)?);
            out.push(q_snevily_sperner_bound(n, s, l1, k_max, q, sperner)?);
            out.push(q_sperner_bound(n, q, sperner)?);
            out.push(q_sperner_low_dim_bound(n, s, q, k_max, sperner)?);
        }
    }
    out.sort_by(|a, b| a.value.cmp(&b.value));
    Ok(out)
}
