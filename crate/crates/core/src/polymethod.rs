//! The multilinear polynomial method made concrete.
//!
//! For a family `A` and a partner family `B` the polynomials
//! `f_A(x) = prod_i (v_A · x - l_i)` and `g_R(x) = (1 - x_n) prod_{j in R, j != n} x_j`
//! are expanded into multilinear form, their evaluation pattern on the
//! characteristic vectors of `B` is checked, and their linear independence is
//! certified by exact Gaussian elimination over the rationals.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactnum::{binom_sum, Natural, Rational};
use crate::setfamily::{for_each_k_subset, intersection_size, LSet, Subset, SubsetFamily};

/// A polynomial in `x_1..x_n` where every variable has exponent at most one.
/// Monomials are keyed by the subset of variables they contain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearPoly {
    n: u32,
    terms: BTreeMap<Subset, Rational>,
}

impl MultilinearPoly {
    pub fn zero(n: u32) -> Self {
        MultilinearPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: u32, c: Rational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Subset::EMPTY, c);
        p
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, merging
    /// repeats and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Subset, Rational)>>(n: u32, terms: I) -> Self {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Subset, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Nonzero terms in canonical monomial order (size, then lexicographic).
    pub fn terms(&self) -> Vec<(Subset, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c)).collect();
        v.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        v
    }

    pub fn coefficient(&self, m: Subset) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest monomial size; 0 for constants and the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    /// Product reduced with `x_j^2 = x_j`.
    pub fn mul(&self, other: &MultilinearPoly) -> MultilinearPoly {
        let mut out = MultilinearPoly::zero(self.n.max(other.n));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.union(*mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> MultilinearPoly {
        MultilinearPoly::from_terms(self.n, self.terms.iter().map(|(m, v)| (*m, v * c)))
    }

    /// Value at the characteristic vector of `b`: the sum of coefficients of
    /// monomials contained in `b`.
    pub fn evaluate(&self, b: Subset) -> Rational {
        self.terms
            .iter()
            .filter(|(m, _)| m.is_subset_of(b))
            .map(|(_, c)| c.clone())
            .sum()
    }

    /// One line per polynomial: `coef * {i,j} + ...`, or `0`.
    pub fn to_text(&self) -> String {
        let terms = self.terms();
        if terms.is_empty() {
            return "0".to_string();
        }
        terms
            .iter()
            .map(|(m, c)| format!("{c} * {m:?}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// 0/1 vector of length `n` marking the elements of `a`.
pub fn char_vector(a: Subset, n: u32) -> Vec<u8> {
    (1..=n).map(|j| a.contains(j) as u8).collect()
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Multilinear reduction of `prod_{l in L} (sum_{j in a} x_j - l)`.
pub fn intersection_poly(a: Subset, l: &LSet, n: u32) -> MultilinearPoly {
    let mut p = MultilinearPoly::constant(n, Rational::one());
    for &li in l.values() {
        let factor = MultilinearPoly::from_terms(
            n,
            a.elements()
                .map(|j| (Subset::from_elements([j]), Rational::one()))
                .chain(std::iter::once((Subset::EMPTY, int(-(li as i64))))),
        );
        p = p.mul(&factor);
    }
    p
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("R = {r:?} does not contain n = {n}")]
    MissingLastVariable { r: Subset, n: u32 },
}

/// `(1 - x_n) prod_{j in R, j != n} x_j`, for `R` containing `n`.
pub fn g_poly(r: Subset, n: u32) -> Result<MultilinearPoly, PolyError> {
    if n == 0 || !r.contains(n) {
        return Err(PolyError::MissingLastVariable { r, n });
    }
    let rest = r.difference(Subset::from_elements([n]));
    Ok(MultilinearPoly::from_terms(n, [(rest, int(1)), (r, int(-1))]))
}

/// Result of an exact rank computation on a list of polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceCertificate {
    pub poly_count: usize,
    /// Dimension of the multilinear polynomials of degree at most `s`,
    /// `sum_{i<=s} C(n, i)`, with `s` the largest degree present.
    pub ambient_dimension: Natural,
    pub rank: usize,
    pub independent: bool,
    pub pivot_monomials: Vec<Subset>,
}

/// Rank of the coefficient matrix (rows = polynomials, columns = monomials in
/// canonical order) by fraction-exact forward elimination.
pub fn independence_certificate(polys: &[MultilinearPoly]) -> IndependenceCertificate {
    let n = polys.first().map_or(0, |p| p.n);
    let s = polys.iter().map(|p| p.degree()).max().unwrap_or(0);
    let mut columns: Vec<Subset> = polys.iter().flat_map(|p| p.terms.keys().copied()).collect();
    columns.sort_by(Subset::canonical_cmp);
    columns.dedup();

    let mut rows: Vec<Vec<Rational>> = polys
        .iter()
        .map(|p| columns.iter().map(|m| p.coefficient(*m)).collect())
        .collect();

    let mut pivots = Vec::new();
    let mut next_row = 0;
    for (col, monomial) in columns.iter().enumerate() {
        let Some(found) = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, found);
        let pivot_row = rows[next_row].clone();
        let inv = pivot_row[col].recip();
        for row in rows.iter_mut().skip(next_row + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] * &inv;
            for (c, pv) in pivot_row.iter().enumerate().skip(col) {
                if !pv.is_zero() {
                    row[c] -= &factor * pv;
                }
            }
        }
        pivots.push(*monomial);
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }

    let rank = pivots.len();
    IndependenceCertificate {
        poly_count: polys.len(),
        ambient_dimension: binom_sum(n as u64, 0, s as i64),
        rank,
        independent: rank == polys.len(),
        pivot_monomials: pivots,
    }
}

/// A hypothesis of the cross-intersecting setting that fails, with 0-based
/// member indices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrossHypothesisError {
    #[error("families have different sizes ({a} vs {b})")]
    LengthMismatch { a: usize, b: usize },
    #[error("families live on different ground sets ({a} vs {b})")]
    GroundMismatch { a: u32, b: u32 },
    #[error("|A_{i} ∩ B_{j}| = {size} is not in L")]
    CrossNotInL { i: usize, j: usize, size: u32 },
    #[error("A_{0} is not contained in B_{0}")]
    NotContained(usize),
    #[error("|A_{index}| = {size} is in L")]
    SizeInL { index: usize, size: u32 },
}

/// Everything established about one cross-intersecting pair `(A, B)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCertificate {
    pub n: u32,
    pub l: LSet,
    /// `m = |A|`.
    pub m: usize,
    /// `|Q|`: subsets of `[n]` containing `n` of size at most `s`.
    pub q_count: usize,
    /// `f_{A_1..A_m}` followed by `g_R` for every `R` in `Q`.
    pub polys: Vec<MultilinearPoly>,
    pub labels: Vec<String>,
    /// `f_{A_j}(v_{B_i}) = 0` for `i != j` and nonzero for `i = j`.
    pub evaluation_pattern_ok: bool,
    pub certificate: IndependenceCertificate,
    /// `sum_{i<=s} C(n, i)`.
    pub full_dimension: Natural,
    /// `m + |Q| <= sum_{i<=s} C(n, i)`.
    pub dimension_ok: bool,
    /// `sum_{i<=s} C(n-1, i)`.
    pub m_bound: Natural,
    /// `m <= sum_{i<=s} C(n-1, i)`.
    pub m_bound_ok: bool,
}

impl CrossCertificate {
    pub fn all_ok(&self) -> bool {
        self.evaluation_pattern_ok && self.certificate.independent && self.dimension_ok && self.m_bound_ok
    }

    /// Text form listing every polynomial, the pivots, the rank and the
    /// verdict; [`replay_certificate`] re-verifies it from scratch.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "independence-certificate n={} L={}", self.n, self.l);
        let _ = writeln!(out, "m: {}", self.m);
        let _ = writeln!(out, "Q: {}", self.q_count);
        for (label, p) in self.labels.iter().zip(&self.polys) {
            let _ = writeln!(out, "poly {label} = {}", p.to_text());
        }
        let pivots: Vec<String> =
            self.certificate.pivot_monomials.iter().map(|m| format!("{m:?}")).collect();
        let _ = writeln!(out, "pivots: {}", pivots.join(" "));
        let _ = writeln!(out, "rank: {}", self.certificate.rank);
        let _ = writeln!(out, "ambient: {}", self.certificate.ambient_dimension);
        let _ = writeln!(out, "evaluation-pattern: {}", if self.evaluation_pattern_ok { "ok" } else { "FAILED" });
        let _ = writeln!(
            out,
            "verdict: {}",
            if self.certificate.independent { "independent" } else { "dependent" }
        );
        out
    }
}

/// Certifies the polynomial-method bound for `(A, B)`:
/// (i) `|A_i ∩ B_j| ∈ L` for `i != j`, (ii) `A_i ⊆ B_i` and `|A_i| ∉ L`.
/// Passing `b = a` gives the single-family setting.
pub fn certify_cross_intersecting(
    a: &SubsetFamily,
    b: &SubsetFamily,
    l: &LSet,
) -> Result<CrossCertificate, CrossHypothesisError> {
    if a.len() != b.len() {
        return Err(CrossHypothesisError::LengthMismatch { a: a.len(), b: b.len() });
    }
    if a.ground() != b.ground() {
        return Err(CrossHypothesisError::GroundMismatch { a: a.ground(), b: b.ground() });
    }
    let (am, bm) = (a.members(), b.members());
    for (i, (&ai, &bi)) in am.iter().zip(bm).enumerate() {
        if !ai.is_subset_of(bi) {
            return Err(CrossHypothesisError::NotContained(i));
        }
        if l.contains(ai.len()) {
            return Err(CrossHypothesisError::SizeInL { index: i, size: ai.len() });
        }
    }
    for (i, &ai) in am.iter().enumerate() {
        for (j, &bj) in bm.iter().enumerate() {
            let size = intersection_size(ai, bj);
            if i != j && !l.contains(size) {
                return Err(CrossHypothesisError::CrossNotInL { i, j, size });
            }
        }
    }

    let n = a.ground();
    let s = l.s();
    let mut polys: Vec<MultilinearPoly> = am.iter().map(|&ai| intersection_poly(ai, l, n)).collect();
    let mut labels: Vec<String> = (1..=am.len()).map(|i| format!("f_{i}")).collect();

    let evaluation_pattern_ok = polys.iter().enumerate().all(|(j, f)| {
        bm.iter()
            .enumerate()
            .all(|(i, &bi)| f.evaluate(bi).is_zero() == (i != j))
    });

    let mut q_count = 0;
    if n >= 1 {
        for size in 0..s {
            for_each_k_subset(n - 1, size, |rest| {
                let r = rest.with(n);
                polys.push(g_poly(r, n).expect("R contains n"));
                labels.push(format!("g_{r:?}"));
                q_count += 1;
            });
        }
    }

    let certificate = independence_certificate(&polys);
    let full_dimension = binom_sum(n as u64, 0, s as i64);
    let m_bound = binom_sum(n.saturating_sub(1) as u64, 0, s as i64);
    Ok(CrossCertificate {
        n,
        l: l.clone(),
        m: am.len(),
        q_count,
        dimension_ok: Natural::from(polys.len()) <= full_dimension,
        m_bound_ok: Natural::from(am.len()) <= m_bound,
        polys,
        labels,
        evaluation_pattern_ok,
        certificate,
        full_dimension,
        m_bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("certificate claims {field} = {claimed}, recomputation gives {actual}")]
    Mismatch { field: &'static str, claimed: String, actual: String },
}

fn parse_monomial(tok: &str, line: usize) -> Result<Subset, ReplayError> {
    let err = || ReplayError::Syntax { line, message: format!("bad monomial `{tok}`") };
    let inner = tok.strip_prefix('{').and_then(|t| t.strip_suffix('}')).ok_or_else(err)?;
    if inner.is_empty() {
        return Ok(Subset::EMPTY);
    }
    let mut elems = Vec::new();
    for e in inner.split(',') {
        let v: u32 = e.trim().parse().map_err(|_| err())?;
        if !(1..=64).contains(&v) {
            return Err(err());
        }
        elems.push(v);
    }
    Ok(Subset::from_elements(elems))
}

fn parse_poly(n: u32, body: &str, line: usize) -> Result<MultilinearPoly, ReplayError> {
    if body.trim() == "0" {
        return Ok(MultilinearPoly::zero(n));
    }
    let mut terms = Vec::new();
    for term in body.split(" + ") {
        let (coef, mono) = term.split_once(" * ").ok_or_else(|| ReplayError::Syntax {
            line,
            message: format!("bad term `{term}`"),
        })?;
        let c: Rational = coef.trim().parse().map_err(|_| ReplayError::Syntax {
            line,
            message: format!("bad coefficient `{coef}`"),
        })?;
        terms.push((parse_monomial(mono.trim(), line)?, c));
    }
    Ok(MultilinearPoly::from_terms(n, terms))
}

/// Summary of a successful replay.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replay {
    pub poly_count: usize,
    pub rank: usize,
    pub independent: bool,
}

/// Re-derives rank, pivots, ambient dimension and verdict from the polynomial
/// terms listed in a certificate and checks them against the claimed values.
pub fn replay_certificate(text: &str) -> Result<Replay, ReplayError> {
    let mut n = None;
    let mut polys = Vec::new();
    let mut claims: BTreeMap<&str, String> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() {
            continue;
        }
        if let Some(rest) = l.strip_prefix("independence-certificate ") {
            let tok = rest.split_whitespace().next().unwrap_or("");
            n = Some(crate::setfamily::header_field(tok, "n", line).map_err(|e| ReplayError::Syntax {
                line,
                message: e.to_string(),
            })?);
        } else if let Some(rest) = l.strip_prefix("poly ") {
            let n = n.ok_or(ReplayError::Syntax { line, message: "poly before header".into() })?;
            let (_, body) = rest.split_once(" = ").ok_or_else(|| ReplayError::Syntax {
                line,
                message: "expected `poly <label> = <terms>`".into(),
            })?;
            polys.push(parse_poly(n, body, line)?);
        } else if let Some((key, value)) = l.split_once(": ") {
            claims.insert(
                match key {
                    "pivots" => "pivots",
                    "rank" => "rank",
                    "ambient" => "ambient",
                    "verdict" => "verdict",
                    _ => continue,
                },
                value.trim().to_string(),
            );
        } else if l == "pivots:" {
            claims.insert("pivots", String::new());
        }
    }
    if n.is_none() {
        return Err(ReplayError::Syntax { line: 1, message: "missing header".into() });
    }
    let cert = independence_certificate(&polys);
    let pivots: Vec<String> = cert.pivot_monomials.iter().map(|m| format!("{m:?}")).collect();
    let actual = [
        ("pivots", pivots.join(" ")),
        ("rank", cert.rank.to_string()),
        ("ambient", cert.ambient_dimension.to_string()),
        ("verdict", if cert.independent { "independent" } else { "dependent" }.to_string()),
    ];
    for (field, value) in actual {
        let claimed = claims.get(field).cloned().ok_or(ReplayError::Syntax {
            line: text.lines().count(),
            message: format!("missing `{field}:` line"),
        })?;
        if claimed != value {
            return Err(ReplayError::Mismatch { field, claimed, actual: value });
        }
    }
    Ok(Replay { poly_count: polys.len(), rank: cert.rank, independent: cert.independent })
}
