//! Families of subsets of `[n]` stored as 64-bit masks, the constraint
//! systems imposed on them, and the small structural lemmas used when
//! reasoning about intersecting families.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest supported ground set.
pub const MAX_GROUND: u32 = 64;

/// A subset of `[n]`; element `j` lives in bit `j - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_mask(mask: u64) -> Self {
        Subset(mask)
    }

    /// Panics if an element is outside `1..=64`.
    pub fn from_elements<I: IntoIterator<Item = u32>>(elems: I) -> Self {
        let mut mask = 0u64;
        for e in elems {
            assert!((1..=MAX_GROUND).contains(&e), "element {e} out of range");
            mask |= 1 << (e - 1);
        }
        Subset(mask)
    }

    /// The full ground set `[n]`.
    pub fn full(n: u32) -> Self {
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: u32) -> bool {
        (1..=MAX_GROUND).contains(&e) && self.0 >> (e - 1) & 1 == 1
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn with(self, e: u32) -> Subset {
        self.union(Subset::from_elements([e]))
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest element, or 0 for the empty set.
    pub fn max_element(self) -> u32 {
        64 - self.0.leading_zeros()
    }

    /// Elements in ascending order.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let e = rest.trailing_zeros() + 1;
                rest &= rest - 1;
                Some(e)
            }
        })
    }

    /// Canonical order: by size, then lexicographically on the ascending
    /// element lists.
    pub fn canonical_cmp(&self, other: &Subset) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.elements().cmp(other.elements()))
    }
}

/// `|a ∩ b|`.
pub fn intersection_size(a: Subset, b: Subset) -> u32 {
    (a.0 & b.0).count_ones()
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Subset {
    /// Space-separated elements, `-` for the empty set.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "-");
        }
        let parts: Vec<String> = self.elements().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("ground set size {0} exceeds the supported maximum of 64")]
    GroundTooLarge(u32),
    #[error("member {index} contains element {element} outside [1, {n}]")]
    OutOfRange { index: usize, element: u32, n: u32 },
    #[error("members {first} and {second} are the same subset")]
    Duplicate { first: usize, second: usize },
}

/// An ordered list of distinct subsets of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetFamily {
    n: u32,
    members: Vec<Subset>,
}

impl SubsetFamily {
    pub fn new(n: u32, members: Vec<Subset>) -> Result<Self, FamilyError> {
        if n > MAX_GROUND {
            return Err(FamilyError::GroundTooLarge(n));
        }
        let full = Subset::full(n);
        for (index, m) in members.iter().enumerate() {
            if !m.is_subset_of(full) {
                return Err(FamilyError::OutOfRange {
                    index,
                    element: m.difference(full).elements().next().unwrap_or(0),
                    n,
                });
            }
        }
        let mut seen = std::collections::HashMap::with_capacity(members.len());
        for (i, m) in members.iter().enumerate() {
            if let Some(&first) = seen.get(m) {
                return Err(FamilyError::Duplicate { first, second: i });
            }
            seen.insert(*m, i);
        }
        Ok(SubsetFamily { n, members })
    }

    /// Convenience constructor from element lists.
    pub fn from_lists(n: u32, lists: &[&[u32]]) -> Result<Self, FamilyError> {
        if n > MAX_GROUND {
            return Err(FamilyError::GroundTooLarge(n));
        }
        for (index, l) in lists.iter().enumerate() {
            if let Some(&bad) = l.iter().find(|&&e| e == 0 || e > n) {
                return Err(FamilyError::OutOfRange { index, element: bad, n });
            }
        }
        Self::new(n, lists.iter().map(|l| Subset::from_elements(l.iter().copied())).collect())
    }

    /// All `k`-subsets of `[n]` in canonical order.
    pub fn uniform(n: u32, k: u32) -> Self {
        let mut members = Vec::new();
        for_each_k_subset(n, k, |s| members.push(s));
        SubsetFamily { n, members }
    }

    pub fn ground(&self) -> u32 {
        self.n
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Subfamily at the given indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> SubsetFamily {
        SubsetFamily {
            n: self.n,
            members: indices.iter().map(|&i| self.members[i]).collect(),
        }
    }

    /// Intersection of all members; `[n]` for the empty family.
    pub fn common_intersection(&self) -> Subset {
        self.members
            .iter()
            .fold(Subset::full(self.n), |acc, m| acc.intersection(*m))
    }

    pub fn union_all(&self) -> Subset {
        self.members.iter().fold(Subset::EMPTY, |acc, m| acc.union(*m))
    }

    pub fn max_size(&self) -> u32 {
        self.members.iter().map(|m| m.len()).max().unwrap_or(0)
    }

    pub fn size_profile(&self) -> Vec<u32> {
        self.members.iter().map(|m| m.len()).collect()
    }

    /// Renders the `set-family` text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("set-family n={}\n", self.n);
        for m in &self.members {
            out.push_str(&m.to_string());
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Family(#[from] FamilyError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

/// Reads `n=<v>` style header fields.
pub(crate) fn header_field(token: &str, key: &str, line: usize) -> Result<u32, ParseError> {
    let value = token
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| syntax(line, format!("expected `{key}=<value>`, found `{token}`")))?;
    value
        .parse()
        .map_err(|_| syntax(line, format!("invalid value for {key}: `{value}`")))
}

impl FromStr for SubsetFamily {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let (hline, header) = lines
            .by_ref()
            .find(|(_, l)| !l.is_empty())
            .ok_or_else(|| syntax(1, "missing `set-family n=<n>` header"))?;
        let mut tokens = header.split_whitespace();
        if tokens.next() != Some("set-family") {
            return Err(syntax(hline, "expected header `set-family n=<n>`"));
        }
        let n = header_field(
            tokens.next().ok_or_else(|| syntax(hline, "header lacks n=<n>"))?,
            "n",
            hline,
        )?;
        if let Some(extra) = tokens.next() {
            return Err(syntax(hline, format!("unexpected header token `{extra}`")));
        }
        if n > MAX_GROUND {
            return Err(FamilyError::GroundTooLarge(n).into());
        }
        let mut members = Vec::new();
        for (lineno, line) in lines {
            if line.is_empty() {
                break;
            }
            if line == "-" {
                members.push(Subset::EMPTY);
                continue;
            }
            let mut prev = 0u32;
            let mut set = Subset::EMPTY;
            for tok in line.split_whitespace() {
                let e: u32 = tok
                    .parse()
                    .map_err(|_| syntax(lineno, format!("`{tok}` is not an element")))?;
                if e == 0 || e > n {
                    return Err(syntax(lineno, format!("element {e} outside [1, {n}]")));
                }
                if e <= prev {
                    return Err(syntax(lineno, "elements must be strictly ascending"));
                }
                prev = e;
                set = set.with(e);
            }
            members.push(set);
        }
        Ok(SubsetFamily::new(n, members)?)
    }
}

/// A strictly increasing, nonempty list of allowed intersection sizes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LSet(Vec<u32>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("L must be nonempty")]
    EmptyL,
    #[error("L must be strictly increasing")]
    LNotIncreasing,
    #[error("K must be a list of distinct positive integers")]
    BadK,
    #[error("t-wise mode needs t >= 2, got {0}")]
    BadT(usize),
    #[error("size rule `{0}` needs K")]
    MissingK(SizeRule),
    #[error("Snevily regime needs max L < min K")]
    SnevilyOrder,
}

impl LSet {
    pub fn new(values: Vec<u32>) -> Result<Self, SpecError> {
        if values.is_empty() {
            return Err(SpecError::EmptyL);
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SpecError::LNotIncreasing);
        }
        Ok(LSet(values))
    }

    /// `{0, 1, ..., s - 1}`.
    pub fn prefix(s: u32) -> Result<Self, SpecError> {
        Self::new((0..s).collect())
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// `s = |L|`.
    pub fn s(&self) -> u32 {
        self.0.len() as u32
    }

    /// Smallest element `l_1`.
    pub fn min(&self) -> u32 {
        self.0[0]
    }

    pub fn max(&self) -> u32 {
        *self.0.last().unwrap()
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn is_prefix(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v == i as u32)
    }
}

impl fmt::Display for LSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Pairwise,
    TWise,
}

/// Unary restriction on member sizes (or subspace dimensions).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SizeRule {
    None,
    InK,
    NotInL,
    /// Sizes in `K` with `max L < min K`.
    Snevily,
}

impl fmt::Display for SizeRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SizeRule::None => "none",
            SizeRule::InK => "in-K",
            SizeRule::NotInL => "not-in-L",
            SizeRule::Snevily => "snevily",
        })
    }
}

impl FromStr for SizeRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(SizeRule::None),
            "in-K" | "in-k" | "sizes-in-K" | "dims-in-K" => Ok(SizeRule::InK),
            "not-in-L" | "not-in-l" | "sizes-not-in-L" | "dims-not-in-L" => Ok(SizeRule::NotInL),
            "snevily" => Ok(SizeRule::Snevily),
            other => Err(format!("unknown size rule `{other}`")),
        }
    }
}

/// The constraint system shared by every theorem: allowed intersection sizes,
/// optional allowed member sizes, the arity `t` and the size rule.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntersectionSpec {
    l: LSet,
    k: Option<Vec<u32>>,
    t: usize,
    mode: Mode,
    size_rule: SizeRule,
}

impl IntersectionSpec {
    pub fn new(
        l: LSet,
        k: Option<Vec<u32>>,
        t: usize,
        mode: Mode,
        size_rule: SizeRule,
    ) -> Result<Self, SpecError> {
        let k = match k {
            Some(mut k) => {
                k.sort_unstable();
                if k.contains(&0) || k.windows(2).any(|w| w[0] == w[1]) {
                    return Err(SpecError::BadK);
                }
                Some(k)
            }
            None => None,
        };
        let t = match mode {
            Mode::Pairwise => 2,
            Mode::TWise if t < 2 => return Err(SpecError::BadT(t)),
            Mode::TWise => t,
        };
        if matches!(size_rule, SizeRule::InK | SizeRule::Snevily) && k.is_none() {
            return Err(SpecError::MissingK(size_rule));
        }
        if size_rule == SizeRule::Snevily && l.max() >= k.as_ref().unwrap()[0] {
            return Err(SpecError::SnevilyOrder);
        }
        Ok(IntersectionSpec { l, k, t, mode, size_rule })
    }

    /// Pairwise spec with no size rule.
    pub fn pairwise(l: LSet) -> Self {
        IntersectionSpec { l, k: None, t: 2, mode: Mode::Pairwise, size_rule: SizeRule::None }
    }

    pub fn l(&self) -> &LSet {
        &self.l
    }

    pub fn k(&self) -> Option<&[u32]> {
        self.k.as_deref()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn size_rule(&self) -> SizeRule {
        self.size_rule
    }

    /// Whether a member of the given size passes the size rule.
    pub fn admits_size(&self, size: u32) -> bool {
        match self.size_rule {
            SizeRule::None => true,
            SizeRule::NotInL => !self.l.contains(size),
            SizeRule::InK | SizeRule::Snevily => {
                self.k.as_ref().is_some_and(|k| k.binary_search(&size).is_ok())
            }
        }
    }

    /// True when the size rule alone forces every member size outside `L`.
    pub fn forces_sizes_outside_l(&self) -> bool {
        match self.size_rule {
            SizeRule::None => false,
            SizeRule::NotInL | SizeRule::Snevily => true,
            SizeRule::InK => self.k.as_ref().unwrap().iter().all(|&v| !self.l.contains(v)),
        }
    }

    /// The single permitted size, when the size rule forces uniformity.
    pub fn uniform_size(&self) -> Option<u32> {
        match (self.size_rule, self.k.as_deref()) {
            (SizeRule::InK | SizeRule::Snevily, Some([k])) => Some(*k),
            _ => None,
        }
    }

    /// `K` as enforced by the size rule (None when sizes are not restricted to K).
    pub fn enforced_k(&self) -> Option<&[u32]> {
        match self.size_rule {
            SizeRule::InK | SizeRule::Snevily => self.k.as_deref(),
            _ => None,
        }
    }

    /// Checks every constraint of the spec, including the arity.
    pub fn is_satisfied_by(&self, family: &SubsetFamily) -> bool {
        check_size_rule(family, self)
            && match self.mode {
                Mode::Pairwise => is_l_intersecting(family, &self.l),
                Mode::TWise => is_t_wise_l_intersecting(family, &self.l, self.t),
            }
    }
}

/// First pair `(i, j)`, `i < j`, whose intersection size is outside `L`.
pub fn find_l_violation(family: &SubsetFamily, l: &LSet) -> Option<(usize, usize)> {
    let m = family.members();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            if !l.contains(intersection_size(m[i], m[j])) {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_l_intersecting(family: &SubsetFamily, l: &LSet) -> bool {
    find_l_violation(family, l).is_none()
}

/// Calls `f` on every `k`-combination of `0..len` in lexicographic order until
/// it returns `false`. Returns whether the walk ran to completion.
pub(crate) fn for_each_combination(len: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > len {
        return true;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return false;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] < i + len - k) else {
            return true;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Calls `f` on each `k`-subset of `[n]` in canonical (lexicographic) order.
pub fn for_each_k_subset(n: u32, k: u32, mut f: impl FnMut(Subset)) {
    for_each_combination(n as usize, k as usize, |c| {
        f(Subset::from_elements(c.iter().map(|&i| i as u32 + 1)));
        true
    });
}

/// First `t`-tuple of member indices whose common intersection size is
/// outside `L`.
pub fn find_t_wise_violation(family: &SubsetFamily, l: &LSet, t: usize) -> Option<Vec<usize>> {
    let m = family.members();
    let mut witness = None;
    for_each_combination(m.len(), t, |c| {
        let inter = c.iter().fold(Subset::full(64), |acc, &i| acc.intersection(m[i]));
        if l.contains(inter.len()) {
            true
        } else {
            witness = Some(c.to_vec());
            false
        }
    });
    witness
}

/// Every `t` distinct members meet in a set whose size is in `L`; vacuous when
/// the family has fewer than `t` members.
pub fn is_t_wise_l_intersecting(family: &SubsetFamily, l: &LSet, t: usize) -> bool {
    find_t_wise_violation(family, l, t).is_none()
}

/// First member whose size fails the spec's size rule.
pub fn find_size_violation(family: &SubsetFamily, spec: &IntersectionSpec) -> Option<usize> {
    family.members().iter().position(|m| !spec.admits_size(m.len()))
}

pub fn check_size_rule(family: &SubsetFamily, spec: &IntersectionSpec) -> bool {
    find_size_violation(family, spec).is_none()
}

/// First pair `(i, j)` with member `i` contained in member `j`.
pub fn find_sperner_violation(family: &SubsetFamily) -> Option<(usize, usize)> {
    let m = family.members();
    for i in 0..m.len() {
        for j in 0..m.len() {
            if i != j && m[i].is_subset_of(m[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_sperner_sets(family: &SubsetFamily) -> bool {
    find_sperner_violation(family).is_none()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("the members have a common element ({0:?})")]
    NonemptyIntersection(Subset),
    #[error("the family is empty")]
    EmptyFamily,
    #[error("l1 must be positive")]
    ZeroL1,
    #[error("F is member {0} of H")]
    FInFamily(usize),
    #[error("|F ∩ H_{index}| = {size} < l1 = {l1}")]
    SmallOverlap { index: usize, size: u32, l1: u32 },
    #[error("need at least two members, got {0}")]
    TooFewMembers(usize),
    #[error("members {0} and {1} are disjoint")]
    NotIntersecting(usize, usize),
}

/// Greedily picks members whose running intersection keeps shrinking until it
/// reaches `target`, starting from the first member. Returns member indices.
pub(crate) fn shrink_to_intersection(members: &[Subset], target: Subset) -> Vec<usize> {
    let Some(&first) = members.first() else {
        return Vec::new();
    };
    let mut picked = vec![0];
    let mut running = first;
    while running != target {
        let next = members
            .iter()
            .position(|m| running.intersection(*m) != running)
            .expect("running intersection is above the global one");
        running = running.intersection(members[next]);
        picked.push(next);
    }
    picked
}

/// For a family with empty common intersection, returns a subfamily of at most
/// `k + 1` members (k the largest member size) that still has empty
/// intersection. Members are taken greedily in order.
pub fn helly_reduce(family: &SubsetFamily) -> Result<SubsetFamily, LemmaError> {
    if family.is_empty() {
        return Err(LemmaError::EmptyFamily);
    }
    let common = family.common_intersection();
    if !common.is_empty() {
        return Err(LemmaError::NonemptyIntersection(common));
    }
    let picked = shrink_to_intersection(family.members(), Subset::EMPTY);
    debug_assert!(picked.len() as u32 <= family.max_size() + 1);
    Ok(family.select(&picked))
}

/// Given `H` with empty common intersection and a set `F` meeting every member
/// of `H` in at least `l1 >= 1` elements, checks `|F ∩ ∪H| >= l1 + 1`.
pub fn core_overlap_check(h: &SubsetFamily, f: Subset, l1: u32) -> Result<bool, LemmaError> {
    if h.is_empty() {
        return Err(LemmaError::EmptyFamily);
    }
    if l1 == 0 {
        return Err(LemmaError::ZeroL1);
    }
    let common = h.common_intersection();
    if !common.is_empty() {
        return Err(LemmaError::NonemptyIntersection(common));
    }
    if let Some(i) = h.members().iter().position(|&m| m == f) {
        return Err(LemmaError::FInFamily(i));
    }
    for (index, &m) in h.members().iter().enumerate() {
        let size = intersection_size(f, m);
        if size < l1 {
            return Err(LemmaError::SmallOverlap { index, size, l1 });
        }
    }
    Ok(intersection_size(h.union_all(), f) > l1)
}

/// For a pairwise-intersecting family of `t >= 2` sets with largest size `k`,
/// checks `|∪H| <= k + (t - 1)(k - 1)`.
pub fn union_size_check(h: &SubsetFamily) -> Result<bool, LemmaError> {
    let t = h.len();
    if t < 2 {
        return Err(LemmaError::TooFewMembers(t));
    }
    let one = LSet::new((1..=64).collect()).unwrap();
    if let Some((i, j)) = find_l_violation(h, &one) {
        return Err(LemmaError::NotIntersecting(i, j));
    }
    let k = h.max_size() as u64;
    let limit = k + (t as u64 - 1) * (k - 1);
    Ok(h.union_all().len() as u64 <= limit)
}
