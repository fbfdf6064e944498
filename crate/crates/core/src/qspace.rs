//! Subspaces of `GF(q)^n` for prime `q`, identified by their reduced row
//! echelon basis.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use thiserror::Error;

use crate::exactnum::{qbinom, ratio, Natural, Rational};
use crate::setfamily::{for_each_combination, header_field, LSet, ParseError};

/// Default cap on the ambient space size `q^n` for enumeration.
pub const DEFAULT_MAX_VECTORS: u64 = 1 << 20;
/// Cap on the number of subspaces a single enumeration may produce.
pub const MAX_ENUMERATED: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("q = {0} is not a prime")]
    NotPrime(u32),
    #[error("GF({q})^{n} is too large to enumerate ({reason})")]
    TooLarge { n: u32, q: u32, reason: &'static str },
    #[error("subspaces live in different ambient spaces: GF({q1})^{n1} vs GF({q2})^{n2}")]
    Mismatch { n1: u32, q1: u32, n2: u32, q2: u32 },
    #[error("basis row has length {got}, expected {n}")]
    RowLength { got: usize, n: u32 },
    #[error("entry {0} is not reduced modulo q")]
    Entry(u32),
    #[error("family members {first} and {second} are the same subspace")]
    Duplicate { first: usize, second: usize },
    #[error("family is not Sperner: member {0} is contained in member {1}")]
    NotSperner(usize, usize),
}

pub fn is_prime(q: u32) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

fn inv_mod(a: u32, q: u32) -> u32 {
    // Fermat: a^(q-2) mod q.
    let (mut base, mut exp, mut acc) = (a as u64 % q as u64, q as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q as u64;
        }
        base = base * base % q as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Reduced row echelon form over GF(q), zero rows dropped.
pub fn rref(mut rows: Vec<Vec<u32>>, q: u32) -> Vec<Vec<u32>> {
    let width = rows.first().map_or(0, |r| r.len());
    let qq = q as u64;
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = inv_mod(rows[rank][col], q) as u64;
        for v in rows[rank].iter_mut() {
            *v = (*v as u64 * inv % qq) as u32;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let f = row[col] as u64;
            for (v, pv) in row.iter_mut().zip(&pivot) {
                *v = ((*v as u64 + (qq - f) * *pv as u64) % qq) as u32;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows
}

/// Rank of a list of vectors over GF(q).
pub fn rank_mod(rows: Vec<Vec<u32>>, q: u32) -> usize {
    rref(rows, q).len()
}

/// A subspace of `GF(q)^n` stored as its unique RREF basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: u32,
    q: u32,
    basis: Vec<Vec<u32>>,
}

impl Subspace {
    /// Span of the given rows. `q` must be prime.
    pub fn span(n: u32, q: u32, rows: Vec<Vec<u32>>) -> Result<Self, SpaceError> {
        if !is_prime(q) {
            return Err(SpaceError::NotPrime(q));
        }
        for r in &rows {
            if r.len() != n as usize {
                return Err(SpaceError::RowLength { got: r.len(), n });
            }
            if let Some(&bad) = r.iter().find(|&&v| v >= q) {
                return Err(SpaceError::Entry(bad));
            }
        }
        Ok(Subspace { n, q, basis: rref(rows, q) })
    }

    pub fn zero(n: u32, q: u32) -> Result<Self, SpaceError> {
        Self::span(n, q, Vec::new())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn dim(&self) -> u32 {
        self.basis.len() as u32
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    fn same_space(&self, other: &Subspace) -> Result<(), SpaceError> {
        if self.n != other.n || self.q != other.q {
            return Err(SpaceError::Mismatch { n1: self.n, q1: self.q, n2: other.n, q2: other.q });
        }
        Ok(())
    }

    /// All `q^dim` vectors of the subspace, as digit vectors.
    pub fn vectors(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0u32; self.n as usize]];
        for row in &self.basis {
            let mut next = Vec::with_capacity(out.len() * self.q as usize);
            for v in &out {
                for c in 0..self.q {
                    next.push(
                        v.iter()
                            .zip(row)
                            .map(|(a, b)| (a + c * b) % self.q)
                            .collect(),
                    );
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, r) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            for v in r {
                write!(f, "{v}")?;
            }
        }
        write!(f, ">")
    }
}

/// `dim(U ∩ V) = dim U + dim V - dim(U + V)`.
pub fn intersection_dim(u: &Subspace, v: &Subspace) -> Result<u32, SpaceError> {
    u.same_space(v)?;
    let stacked: Vec<Vec<u32>> = u.basis.iter().chain(&v.basis).cloned().collect();
    Ok(u.dim() + v.dim() - rank_mod(stacked, u.q) as u32)
}

/// Whether `v ⊆ u`.
pub fn contains(u: &Subspace, v: &Subspace) -> Result<bool, SpaceError> {
    u.same_space(v)?;
    if v.dim() > u.dim() {
        return Ok(false);
    }
    let stacked: Vec<Vec<u32>> = u.basis.iter().chain(&v.basis).cloned().collect();
    Ok(rank_mod(stacked, u.q) as u32 == u.dim())
}

/// Enumerates subspaces of `GF(q)^n` directly in RREF: choose pivot columns,
/// then fill the free entries. Order: dimension ascending, then
/// lexicographic on the basis entries.
pub fn enumerate_subspaces(n: u32, q: u32, dim: Option<u32>) -> Result<SubspaceFamily, SpaceError> {
    enumerate_subspaces_capped(n, q, dim, DEFAULT_MAX_VECTORS)
}

pub fn enumerate_subspaces_capped(
    n: u32,
    q: u32,
    dim: Option<u32>,
    max_vectors: u64,
) -> Result<SubspaceFamily, SpaceError> {
    if !is_prime(q) {
        return Err(SpaceError::NotPrime(q));
    }
    let vectors = (q as u64).checked_pow(n);
    if vectors.is_none_or(|v| v > max_vectors) {
        return Err(SpaceError::TooLarge { n, q, reason: "q^n above the cap" });
    }
    let dims: Vec<u32> = match dim {
        Some(d) if d > n => Vec::new(),
        Some(d) => vec![d],
        None => (0..=n).collect(),
    };
    let expected: Natural = dims
        .iter()
        .map(|&d| qbinom(n as u64, d as i64, q as u64).expect("q is prime"))
        .sum();
    if expected > Natural::from(MAX_ENUMERATED) {
        return Err(SpaceError::TooLarge { n, q, reason: "too many subspaces" });
    }

    let mut members = Vec::new();
    for d in dims {
        let mut level = Vec::new();
        for_each_combination(n as usize, d as usize, |pivots| {
            // Free positions: (row, col) with col after the row's pivot and
            // not itself a pivot column.
            let free: Vec<(usize, usize)> = (0..d as usize)
                .flat_map(|r| {
                    ((pivots[r] + 1)..n as usize)
                        .filter(|c| !pivots.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            let mut digits = vec![0u32; free.len()];
            loop {
                let mut basis = vec![vec![0u32; n as usize]; d as usize];
                for (r, &p) in pivots.iter().enumerate() {
                    basis[r][p] = 1;
                }
                for (&(r, c), &v) in free.iter().zip(&digits) {
                    basis[r][c] = v;
                }
                level.push(Subspace { n, q, basis });
                // Odometer increment over the free entries.
                let mut i = 0;
                while i < digits.len() {
                    digits[i] += 1;
                    if digits[i] < q {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
                if i == digits.len() {
                    break;
                }
            }
            true
        });
        level.sort_by(|a, b| a.basis.cmp(&b.basis));
        members.extend(level);
    }
    Ok(SubspaceFamily { n, q, members })
}

/// A list of distinct subspaces of one ambient `GF(q)^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceFamily {
    n: u32,
    q: u32,
    members: Vec<Subspace>,
}

impl SubspaceFamily {
    pub fn new(n: u32, q: u32, members: Vec<Subspace>) -> Result<Self, SpaceError> {
        if !is_prime(q) {
            return Err(SpaceError::NotPrime(q));
        }
        for m in &members {
            if m.n != n || m.q != q {
                return Err(SpaceError::Mismatch { n1: n, q1: q, n2: m.n, q2: m.q });
            }
        }
        let mut seen = std::collections::HashMap::new();
        for (i, m) in members.iter().enumerate() {
            if let Some(&first) = seen.get(m) {
                return Err(SpaceError::Duplicate { first, second: i });
            }
            seen.insert(m.clone(), i);
        }
        Ok(SubspaceFamily { n, q, members })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn max_dim(&self) -> u32 {
        self.members.iter().map(|m| m.dim()).max().unwrap_or(0)
    }

    /// Renders the `subspace-family` text format. Requires `q <= 10` so each
    /// entry is a single digit.
    pub fn to_text(&self) -> String {
        let mut out = format!("subspace-family n={} q={}\n", self.n, self.q);
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            if m.basis.is_empty() {
                out.push_str("-\n");
            }
            for row in &m.basis {
                for v in row {
                    out.push(char::from_digit(*v, 10).expect("q <= 10"));
                }
                out.push('\n');
            }
        }
        out
    }
}

impl FromStr for SubspaceFamily {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let syntax = |line: usize, message: String| ParseError::Syntax { line, message };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).peekable();
        while lines.peek().is_some_and(|(_, l)| l.is_empty()) {
            lines.next();
        }
        let (hline, header) = lines
            .next()
            .ok_or_else(|| syntax(1, "missing `subspace-family n=<n> q=<q>` header".into()))?;
        let tokens: Vec<&str> = header.split_whitespace().collect();
        if tokens.len() != 3 || tokens[0] != "subspace-family" {
            return Err(syntax(hline, "expected header `subspace-family n=<n> q=<q>`".into()));
        }
        let n = header_field(tokens[1], "n", hline)?;
        let q = header_field(tokens[2], "q", hline)?;
        if !is_prime(q) || q > 10 {
            return Err(syntax(hline, format!("q = {q} must be a prime below 10")));
        }
        let mut blocks: Vec<(usize, Vec<Vec<u32>>, bool)> = Vec::new();
        let mut current: Option<(usize, Vec<Vec<u32>>, bool)> = None;
        for (lineno, line) in lines {
            if line.is_empty() {
                if let Some(b) = current.take() {
                    blocks.push(b);
                }
                continue;
            }
            let block = current.get_or_insert_with(|| (lineno, Vec::new(), false));
            if line == "-" {
                if !block.1.is_empty() || block.2 {
                    return Err(syntax(lineno, "`-` must be the only line of its block".into()));
                }
                block.2 = true;
                continue;
            }
            if block.2 {
                return Err(syntax(lineno, "`-` must be the only line of its block".into()));
            }
            if line.chars().count() != n as usize {
                return Err(syntax(lineno, format!("row `{line}` should have {n} digits")));
            }
            let mut row = Vec::with_capacity(n as usize);
            for ch in line.chars() {
                let d = ch
                    .to_digit(10)
                    .filter(|&d| d < q)
                    .ok_or_else(|| syntax(lineno, format!("`{ch}` is not a digit below {q}")))?;
                row.push(d);
            }
            block.1.push(row);
        }
        if let Some(b) = current.take() {
            blocks.push(b);
        }
        let mut members = Vec::with_capacity(blocks.len());
        for (lineno, rows, _) in blocks {
            let width = rows.len();
            let s = Subspace::span(n, q, rows).map_err(|e| syntax(lineno, e.to_string()))?;
            if (s.dim() as usize) < width {
                return Err(syntax(lineno, "basis rows are linearly dependent".into()));
            }
            members.push(s);
        }
        SubspaceFamily::new(n, q, members).map_err(|e| syntax(hline, e.to_string()))
    }
}

/// First pair of members whose intersection dimension is outside `L`.
pub fn find_l_violation_subspaces(family: &SubspaceFamily, l: &LSet) -> Option<(usize, usize)> {
    let m = &family.members;
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            let d = intersection_dim(&m[i], &m[j]).expect("same ambient space");
            if !l.contains(d) {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_l_intersecting_subspaces(family: &SubspaceFamily, l: &LSet) -> bool {
    find_l_violation_subspaces(family, l).is_none()
}

/// First pair `(i, j)` with member `i` contained in member `j`.
pub fn find_sperner_violation_subspaces(family: &SubspaceFamily) -> Option<(usize, usize)> {
    let m = &family.members;
    for i in 0..m.len() {
        for j in 0..m.len() {
            if i != j && contains(&m[j], &m[i]).expect("same ambient space") {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_sperner(family: &SubspaceFamily) -> bool {
    find_sperner_violation_subspaces(family).is_none()
}

/// Every member's dimension lies outside `L`.
pub fn dims_outside_l(family: &SubspaceFamily, l: &LSet) -> bool {
    family.members.iter().all(|m| !l.contains(m.dim()))
}

/// `sum_k |F_k| / [n, k]_q` for a Sperner family.
pub fn lym_sum(family: &SubspaceFamily) -> Result<Rational, SpaceError> {
    if let Some((i, j)) = find_sperner_violation_subspaces(family) {
        return Err(SpaceError::NotSperner(i, j));
    }
    let mut counts = vec![0u64; family.n as usize + 1];
    for m in &family.members {
        counts[m.dim() as usize] += 1;
    }
    let mut total = Rational::zero();
    for (k, &c) in counts.iter().enumerate() {
        if c > 0 {
            let denom = qbinom(family.n as u64, k as i64, family.q as u64).expect("q is prime");
            total += ratio(&Natural::from(c), &denom);
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSpernerReport {
    pub size: usize,
    /// `[n, floor(n/2)]_q`.
    pub bound: Natural,
    pub within_bound: bool,
    /// With `s` the largest dimension and `s <= floor(n/2)`: whether
    /// `|F| = [n, s]_q`, and if so, whether `F` is exactly the full level `s`.
    /// `None` when `s > floor(n/2)`.
    pub equality_case: Option<EqualityCase>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EqualityCase {
    pub attains: bool,
    pub is_full_level: bool,
}

impl QSpernerReport {
    pub fn holds(&self) -> bool {
        self.within_bound && self.equality_case.is_none_or(|e| !e.attains || e.is_full_level)
    }
}

/// Size check of a Sperner family against the middle Gaussian binomial, plus
/// the equality characterisation at the top occupied level.
pub fn q_sperner_check(family: &SubspaceFamily) -> Result<QSpernerReport, SpaceError> {
    if let Some((i, j)) = find_sperner_violation_subspaces(family) {
        return Err(SpaceError::NotSperner(i, j));
    }
    let (n, q) = (family.n as u64, family.q as u64);
    let bound = qbinom(n, (n / 2) as i64, q).expect("q is prime");
    let size = family.len();
    let s = family.max_dim();
    let equality_case = (s as u64 <= n / 2).then(|| {
        let level = qbinom(n, s as i64, q).expect("q is prime");
        let attains = Natural::from(size) == level;
        EqualityCase {
            attains,
            is_full_level: attains && family.members.iter().all(|m| m.dim() == s),
        }
    });
    Ok(QSpernerReport {
        size,
        within_bound: Natural::from(size) <= bound,
        bound,
        equality_case,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn sub(n: u32, q: u32, rows: &[&str]) -> Subspace {
        let rows = rows
            .iter()
            .map(|r| r.chars().map(|c| c.to_digit(10).unwrap()).collect())
            .collect();
        Subspace::span(n, q, rows).unwrap()
    }

    #[test]
    fn rref_is_canonical() {
        let a = sub(3, 2, &["110", "011"]);
        let b = sub(3, 2, &["101", "110"]);
        assert_eq!(a, b);
        assert_eq!(a.basis(), &[vec![1, 0, 1], vec![0, 1, 1]]);
        let c = sub(3, 3, &["210", "120"]);
        assert_eq!(c.dim(), 1);
        assert_eq!(c.basis(), &[vec![1, 2, 0]]);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_subspaces(2, 2, Some(1)).unwrap().len(), 3);
        assert_eq!(enumerate_subspaces(4, 2, Some(2)).unwrap().len(), 35);
        let zero = enumerate_subspaces(5, 3, Some(0)).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero.members()[0].dim(), 0);
        assert_eq!(enumerate_subspaces(4, 2, None).unwrap().len(), 67);
        assert_eq!(enumerate_subspaces(3, 2, Some(4)).unwrap().len(), 0);
    }

    #[test]
    fn enumeration_errors() {
        assert_eq!(enumerate_subspaces(3, 4, None), Err(SpaceError::NotPrime(4)));
        assert!(matches!(enumerate_subspaces(21, 2, None), Err(SpaceError::TooLarge { .. })));
        assert!(matches!(enumerate_subspaces(16, 2, None), Err(SpaceError::TooLarge { .. })));
    }

    #[test]
    fn enumeration_is_ordered_and_distinct() {
        let fam = enumerate_subspaces(4, 3, None).unwrap();
        let m = fam.members();
        for w in m.windows(2) {
            assert!((w[0].dim(), &w[0].basis) < (w[1].dim(), &w[1].basis));
        }
        // each listed basis is already canonical
        for s in m {
            assert_eq!(&Subspace::span(4, 3, s.basis.clone()).unwrap(), s);
        }
    }

    #[test]
    fn intersection_dims() {
        let planes = enumerate_subspaces(3, 2, Some(2)).unwrap();
        let p = planes.members();
        assert_eq!(intersection_dim(&p[0], &p[1]).unwrap(), 1);
        assert_eq!(intersection_dim(&p[2], &p[2]).unwrap(), 2);
        let z = Subspace::zero(3, 2).unwrap();
        assert_eq!(intersection_dim(&p[0], &z).unwrap(), 0);
        let other = Subspace::zero(3, 3).unwrap();
        assert!(matches!(intersection_dim(&z, &other), Err(SpaceError::Mismatch { .. })));
    }

    #[test]
    fn containment() {
        let u = sub(3, 2, &["100", "010"]);
        let z = Subspace::zero(3, 2).unwrap();
        assert!(contains(&u, &z).unwrap());
        assert!(contains(&u, &u).unwrap());
        assert!(contains(&u, &sub(3, 2, &["110"])).unwrap());
        assert!(!contains(&u, &sub(3, 2, &["001"])).unwrap());
        assert!(!contains(&u, &sub(3, 2, &["100", "001"])).unwrap());
    }

    #[test]
    fn predicates() {
        let planes = enumerate_subspaces(3, 2, Some(2)).unwrap();
        let l1 = LSet::new(vec![1]).unwrap();
        assert!(is_l_intersecting_subspaces(&planes, &l1));
        assert!(is_sperner(&planes));
        assert!(dims_outside_l(&planes, &l1));

        let chain = SubspaceFamily::new(3, 2, vec![sub(3, 2, &["100"]), sub(3, 2, &["100", "010"])]).unwrap();
        assert!(!is_sperner(&chain));
        assert_eq!(find_sperner_violation_subspaces(&chain), Some((0, 1)));

        let single = SubspaceFamily::new(3, 2, vec![sub(3, 2, &["100"])]).unwrap();
        assert!(is_l_intersecting_subspaces(&single, &l1));
        assert!(is_sperner(&single));
    }

    #[test]
    fn lym_examples() {
        let lines = enumerate_subspaces(2, 2, Some(1)).unwrap();
        assert!(lym_sum(&lines).unwrap().is_one());
        let single = SubspaceFamily::new(4, 2, vec![sub(4, 2, &["1000"])]).unwrap();
        assert_eq!(lym_sum(&single).unwrap(), ratio(&Natural::one(), &Natural::from(15u32)));
        let planes = enumerate_subspaces(4, 2, Some(2)).unwrap();
        assert!(lym_sum(&planes).unwrap().is_one());
        let chain = SubspaceFamily::new(3, 2, vec![sub(3, 2, &["100"]), sub(3, 2, &["100", "010"])]).unwrap();
        assert_eq!(lym_sum(&chain), Err(SpaceError::NotSperner(0, 1)));
    }

    #[test]
    fn q_sperner_examples() {
        let planes = enumerate_subspaces(4, 2, Some(2)).unwrap();
        let r = q_sperner_check(&planes).unwrap();
        assert!(r.holds());
        assert_eq!(r.equality_case, Some(EqualityCase { attains: true, is_full_level: true }));
        let empty = SubspaceFamily::new(3, 2, vec![]).unwrap();
        assert!(q_sperner_check(&empty).unwrap().holds());
        let lines = enumerate_subspaces(2, 2, Some(1)).unwrap();
        let r = q_sperner_check(&lines).unwrap();
        assert_eq!(r.bound, Natural::from(3u32));
        assert!(r.holds());
    }

    #[test]
    fn text_round_trip() {
        let fam = enumerate_subspaces(3, 2, Some(1)).unwrap();
        let mut members = fam.members().to_vec();
        members.push(Subspace::zero(3, 2).unwrap());
        members.push(sub(3, 2, &["100", "010"]));
        let fam = SubspaceFamily::new(3, 2, members).unwrap();
        let text = fam.to_text();
        assert!(text.starts_with("subspace-family n=3 q=2\n001\n\n010\n"));
        assert!(text.contains("\n-\n"));
        assert_eq!(text.parse::<SubspaceFamily>().unwrap(), fam);
    }

    #[test]
    fn text_errors() {
        let err = "subspace-family n=3 q=2\n10\n".parse::<SubspaceFamily>().unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }));
        let err = "subspace-family n=3 q=2\n102\n".parse::<SubspaceFamily>().unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }));
        let err = "subspace-family n=3 q=2\n100\n100\n".parse::<SubspaceFamily>().unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }));
        let err = "subspace-family n=3 q=4\n".parse::<SubspaceFamily>().unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 1, .. }));
        let err = "subspace-family n=3 q=2\n100\n\n010\n\n100\n".parse::<SubspaceFamily>().unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 1, .. }));
    }

    #[test]
    fn primes() {
        let ps: Vec<u32> = (0..30).filter(|&q| is_prime(q)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
