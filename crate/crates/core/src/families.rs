//! Sequences `u_1..u_n` of positive integers subject to the gap condition
//!
//! ```text
//! u_j - (j - i) not in [1, u_i - 1]     for all 1 <= i < j <= n
//! ```
//!
//! together with the bounded families built on it:
//!
//! | family | bounds | last entry |
//! |---|---|---|
//! | `A_n` | `u_i <= n` | free |
//! | `B_n^(k)` | `u_i <= i + k` | free |
//! | `D_n^(s)` | `u_i <= s + i` | `u_n = n + s` |
//! | `F_n^(k)` | `u_i <= n + k + 1` | `u_n > n` |
//! | `R(m, bound)` | `u_i <= bound` | free |
//!
//! The condition only quantifies over pairs inside a prefix, so every prefix
//! of a valid sequence is valid and backtracking may prune at the first
//! violated pair.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::exactnum::Natural;
use crate::{Error, Result};

/// A sequence of positive integers, 1-indexed in all public descriptions.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConstrainedSeq(Vec<u32>);

impl ConstrainedSeq {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if let Some(pos) = entries.iter().position(|&e| e == 0) {
            return Err(Error::domain(format!(
                "entry {} is 0; entries must be >= 1",
                pos + 1
            )));
        }
        Ok(ConstrainedSeq(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entry at 1-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.0[i - 1]
    }
}

/// Comma-separated entries, e.g. `1,2,3`.
impl fmt::Display for ConstrainedSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for ConstrainedSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(ConstrainedSeq::default());
        }
        let entries = s
            .split(',')
            .enumerate()
            .map(|(i, field)| {
                field.trim().parse::<u32>().map_err(|_| Error::Parse {
                    position: i + 1,
                    message: format!("`{field}` is not a positive integer"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ConstrainedSeq::new(entries)
    }
}

/// The lexicographically smallest pair `(i, j)`, 1-based, breaking the condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gap condition violated at ({}, {})", self.i, self.j)
    }
}

#[inline]
fn pair_ok(u_i: u32, u_j: u32, gap: usize) -> bool {
    // u_j - gap in [1, u_i - 1]  <=>  gap < u_j < u_i + gap
    let u_j = u_j as usize;
    !(u_j > gap && u_j < u_i as usize + gap)
}

/// Checks every pair, reporting the first violation in lexicographic order.
pub fn check_condition(u: &ConstrainedSeq) -> std::result::Result<(), Violation> {
    let e = u.entries();
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            if !pair_ok(e[i], e[j], j - i) {
                return Err(Violation { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LastEntry {
    None,
    Pinned(u32),
    StrictlyGreater(u32),
}

/// Which named family a spec was built from; used for display and CLI parsing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyName {
    A { n: usize },
    B { n: usize, k: usize },
    D { n: usize, s: usize },
    F { n: usize, k: usize },
    R { m: usize, bound: u32 },
    Custom,
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyName::A { n } => write!(f, "A:{n}"),
            FamilyName::B { n, k } => write!(f, "B:{n}:{k}"),
            FamilyName::D { n, s } => write!(f, "D:{n}:{s}"),
            FamilyName::F { n, k } => write!(f, "F:{n}:{k}"),
            FamilyName::R { m, bound } => write!(f, "R:{m}:{bound}"),
            FamilyName::Custom => f.write_str("custom"),
        }
    }
}

/// Declarative description of a family: per-index upper bounds (lower bound
/// is always 1) plus an optional constraint on the last entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    name: FamilyName,
    upper_bounds: Vec<u32>,
    last_entry: LastEntry,
}

impl FamilySpec {
    pub fn new(upper_bounds: Vec<u32>, last_entry: LastEntry) -> Result<Self> {
        Self::named(FamilyName::Custom, upper_bounds, last_entry)
    }

    fn named(name: FamilyName, upper_bounds: Vec<u32>, last_entry: LastEntry) -> Result<Self> {
        if let Some(pos) = upper_bounds.iter().position(|&b| b == 0) {
            return Err(Error::domain(format!(
                "upper bound at index {} is 0",
                pos + 1
            )));
        }
        match (upper_bounds.last(), last_entry) {
            (_, LastEntry::None) => {}
            (None, _) => {
                return Err(Error::domain(
                    "a last-entry constraint needs a nonempty family",
                ));
            }
            (Some(&b), LastEntry::Pinned(v)) if v == 0 || v > b => {
                return Err(Error::domain(format!(
                    "pinned last entry {v} outside [1, {b}]"
                )));
            }
            (Some(&b), LastEntry::StrictlyGreater(t)) if t >= b => {
                return Err(Error::domain(format!(
                    "last entry > {t} impossible under bound {b}"
                )));
            }
            _ => {}
        }
        Ok(FamilySpec {
            name,
            upper_bounds,
            last_entry,
        })
    }

    pub fn name(&self) -> FamilyName {
        self.name
    }

    pub fn length(&self) -> usize {
        self.upper_bounds.len()
    }

    pub fn upper_bounds(&self) -> &[u32] {
        &self.upper_bounds
    }

    pub fn last_entry(&self) -> LastEntry {
        self.last_entry
    }

    /// Allowed value range at 0-based index `idx`, after the last-entry rule.
    fn range(&self, idx: usize) -> (u32, u32) {
        let hi = self.upper_bounds[idx];
        if idx + 1 == self.length() {
            match self.last_entry {
                LastEntry::None => (1, hi),
                LastEntry::Pinned(v) => (v, v),
                LastEntry::StrictlyGreater(t) => (t + 1, hi),
            }
        } else {
            (1, hi)
        }
    }

    /// Bounds, last-entry rule and the gap condition.
    pub fn contains(&self, u: &ConstrainedSeq) -> bool {
        self.check_membership(u).is_ok()
    }

    /// Like [`contains`](Self::contains) but explains the first failure.
    pub fn check_membership(&self, u: &ConstrainedSeq) -> std::result::Result<(), String> {
        if u.len() != self.length() {
            return Err(format!(
                "length {} but {} expects {}",
                u.len(),
                self.name,
                self.length()
            ));
        }
        for (idx, &e) in u.entries().iter().enumerate() {
            let (lo, hi) = self.range(idx);
            if e < lo || e > hi {
                return Err(format!(
                    "entry {} = {e} outside [{lo}, {hi}] for {}",
                    idx + 1,
                    self.name
                ));
            }
        }
        check_condition(u).map_err(|v| v.to_string())
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// `A:n`, `B:n:k`, `D:n:s`, `F:n:k` or `R:m:bound`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let tag = parts.next().unwrap_or_default();
        let params = parts
            .enumerate()
            .map(|(i, p)| {
                p.parse::<usize>().map_err(|_| Error::Parse {
                    position: i + 2,
                    message: format!("`{p}` is not a nonnegative integer"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let arity = |want: usize| {
            if params.len() == want {
                Ok(())
            } else {
                Err(Error::InvalidInput(format!(
                    "family `{tag}` takes {want} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        match tag {
            "A" => arity(1).and_then(|_| spec_a(params[0])),
            "B" => arity(2).and_then(|_| spec_b(params[0], params[1])),
            "D" => arity(2).and_then(|_| spec_d(params[0], params[1])),
            "F" => arity(2).and_then(|_| spec_f(params[0], params[1])),
            "R" => arity(2).and_then(|_| {
                let bound = u32::try_from(params[1])
                    .map_err(|_| Error::domain("bound does not fit in 32 bits"))?;
                spec_r(params[0], bound)
            }),
            other => Err(Error::InvalidInput(format!("unknown family `{other}`"))),
        }
    }
}

fn to_u32(v: usize) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::domain(format!("{v} does not fit in 32 bits")))
}

/// `A_n`: functions `[1, n] -> [1, n]` satisfying the condition.
pub fn spec_a(n: usize) -> Result<FamilySpec> {
    let mut spec = spec_r(n, to_u32(n.max(1))?)?;
    spec.name = FamilyName::A { n };
    Ok(spec)
}

/// `B_n^(k)`: `1 <= v_i <= i + k`.
pub fn spec_b(n: usize, k: usize) -> Result<FamilySpec> {
    let bounds = (1..=n).map(|i| to_u32(i + k)).collect::<Result<_>>()?;
    FamilySpec::named(FamilyName::B { n, k }, bounds, LastEntry::None)
}

/// `D_n^(s)`: `u_n = n + s`. The bound `u_i <= s + i` on earlier entries is
/// implied by the condition against the last entry.
pub fn spec_d(n: usize, s: usize) -> Result<FamilySpec> {
    if n == 0 {
        return Err(Error::domain("D_n^(s) needs n >= 1"));
    }
    let bounds = (1..=n).map(|i| to_u32(s + i)).collect::<Result<_>>()?;
    FamilySpec::named(
        FamilyName::D { n, s },
        bounds,
        LastEntry::Pinned(to_u32(n + s)?),
    )
}

/// `F_n^(k)`: `1 <= u_i <= n + k + 1` and `u_n > n`.
pub fn spec_f(n: usize, k: usize) -> Result<FamilySpec> {
    let bound = to_u32(n + k + 1)?;
    let last = if n == 0 {
        LastEntry::None
    } else {
        LastEntry::StrictlyGreater(to_u32(n)?)
    };
    FamilySpec::named(FamilyName::F { n, k }, vec![bound; n], last)
}

/// `R(m, bound)`: length-`m` sequences with entries in `[1, bound]`.
pub fn spec_r(m: usize, bound: u32) -> Result<FamilySpec> {
    if bound == 0 && m > 0 {
        return Err(Error::domain("R(m, bound) needs bound >= 1"));
    }
    FamilySpec::named(FamilyName::R { m, bound }, vec![bound; m], LastEntry::None)
}

/// Depth-first search state shared by enumeration and counting.
struct Search<'a> {
    spec: &'a FamilySpec,
    prefix: Vec<u32>,
}

/// Whether `value` can extend `prefix` without breaking the condition.
fn fits(prefix: &[u32], value: u32) -> bool {
    let j = prefix.len();
    prefix
        .iter()
        .enumerate()
        .all(|(i, &u_i)| pair_ok(u_i, value, j - i))
}

impl Search<'_> {
    fn count(&mut self) -> u64 {
        let depth = self.prefix.len();
        if depth == self.spec.length() {
            return 1;
        }
        let (lo, hi) = self.spec.range(depth);
        let mut total = 0;
        for v in lo..=hi {
            if fits(&self.prefix, v) {
                self.prefix.push(v);
                total += self.count();
                self.prefix.pop();
            }
        }
        total
    }
}

/// Lexicographic stream of a family's members.
pub struct FamilyIter<'a> {
    spec: &'a FamilySpec,
    prefix: Vec<u32>,
    // Next candidate value to try at each depth.
    next_value: Vec<u32>,
    done: bool,
}

impl Iterator for FamilyIter<'_> {
    type Item = ConstrainedSeq;

    fn next(&mut self) -> Option<ConstrainedSeq> {
        let len = self.spec.length();
        while !self.done {
            let depth = self.prefix.len();
            if depth == len {
                let out = ConstrainedSeq(self.prefix.clone());
                self.backtrack();
                return Some(out);
            }
            let (_, hi) = self.spec.range(depth);
            let mut candidate = self.next_value[depth];
            while candidate <= hi && !fits(&self.prefix, candidate) {
                candidate += 1;
            }
            if candidate > hi {
                self.backtrack();
            } else {
                self.next_value[depth] = candidate + 1;
                self.prefix.push(candidate);
                if depth + 1 < len {
                    self.next_value[depth + 1] = self.spec.range(depth + 1).0;
                }
            }
        }
        None
    }
}

impl FamilyIter<'_> {
    fn backtrack(&mut self) {
        if self.prefix.pop().is_none() {
            self.done = true;
        }
    }
}

/// Every member of the family, in lexicographic order.
pub fn enumerate_family(spec: &FamilySpec) -> FamilyIter<'_> {
    let len = spec.length();
    let mut next_value = vec![1; len];
    if len > 0 {
        next_value[0] = spec.range(0).0;
    }
    FamilyIter {
        spec,
        prefix: Vec::with_capacity(len),
        next_value,
        done: false,
    }
}

/// Size of the family, by the same pruned search without materializing
/// members. The first entry's values are searched in parallel.
pub fn count_family(spec: &FamilySpec) -> Natural {
    if spec.length() == 0 {
        return Natural::from(1u8);
    }
    let (lo, hi) = spec.range(0);
    let total: u64 = (lo..=hi)
        .into_par_iter()
        .map(|first| {
            let mut search = Search {
                spec,
                prefix: vec![first],
            };
            search.count()
        })
        .sum();
    Natural::from(total)
}

/// Largest `i` with `u_i > i`, or 0.
pub fn statistic_x(u: &ConstrainedSeq) -> usize {
    u.entries()
        .iter()
        .enumerate()
        .rev()
        .find(|&(idx, &e)| e as usize > idx + 1)
        .map_or(0, |(idx, _)| idx + 1)
}

/// Splits `u` in `A_n` with `X(u) = k >= 1` into its first `k` entries, a
/// member of `F_k^(n-k-1)`, and the rest, a member of `B_(n-k)`.
pub fn split_at_x(u: &ConstrainedSeq, n: usize) -> Result<(ConstrainedSeq, ConstrainedSeq)> {
    spec_a(n)?
        .check_membership(u)
        .map_err(|why| Error::domain(format!("`{u}` is not in A_{n}: {why}")))?;
    let k = statistic_x(u);
    if k == 0 {
        return Err(Error::domain(format!(
            "X(`{u}`) = 0; such sequences are B_{n} members as a whole"
        )));
    }
    let head = ConstrainedSeq(u.entries()[..k].to_vec());
    let tail = ConstrainedSeq(u.entries()[k..].to_vec());
    certify(&spec_f(k, n - k - 1)?, &head)?;
    certify(&spec_b(n - k, 0)?, &tail)?;
    Ok((head, tail))
}

/// Inverse of [`split_at_x`].
pub fn join(head: &ConstrainedSeq, tail: &ConstrainedSeq, n: usize) -> Result<ConstrainedSeq> {
    let k = head.len();
    if k == 0 || k + tail.len() != n {
        return Err(Error::domain(format!(
            "head length {k} and tail length {} do not split n = {n} with a nonempty head",
            tail.len()
        )));
    }
    spec_f(k, n - k - 1)?
        .check_membership(head)
        .map_err(|why| Error::domain(format!("head `{head}`: {why}")))?;
    spec_b(n - k, 0)?
        .check_membership(tail)
        .map_err(|why| Error::domain(format!("tail `{tail}`: {why}")))?;
    let mut entries = head.entries().to_vec();
    entries.extend_from_slice(tail.entries());
    let joined = ConstrainedSeq(entries);
    certify(&spec_a(n)?, &joined)?;
    if statistic_x(&joined) != k {
        return Err(Error::integrity(format!("X(`{joined}`) != {k}")));
    }
    Ok(joined)
}

fn certify(spec: &FamilySpec, u: &ConstrainedSeq) -> Result<()> {
    spec.check_membership(u)
        .map_err(|why| Error::integrity(format!("`{u}` failed certification: {why}")))
}

/// A rearrangement of `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            let idx = (v as usize).wrapping_sub(1);
            if idx >= n || std::mem::replace(&mut seen[idx], true) {
                return Err(Error::domain(format!(
                    "{values:?} is not a permutation of 1..={n}"
                )));
            }
        }
        Ok(Permutation(values))
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Reverses `v` in `B_n` and subtracts 1 from every entry.
pub fn to_inversion_code(v: &ConstrainedSeq) -> Result<Vec<u32>> {
    if let Some(idx) = v
        .entries()
        .iter()
        .enumerate()
        .position(|(idx, &e)| e as usize > idx + 1)
    {
        return Err(Error::domain(format!(
            "entry {} = {} exceeds its position",
            idx + 1,
            v.entries()[idx]
        )));
    }
    Ok(v.entries().iter().rev().map(|&e| e - 1).collect())
}

/// The permutation whose entry at each position has exactly `code[i]`
/// smaller entries after it.
pub fn code_to_permutation(code: &[u32]) -> Result<Permutation> {
    let n = code.len();
    let mut remaining: Vec<u32> = (1..=n as u32).collect();
    let mut values = Vec::with_capacity(n);
    for (i, &c) in code.iter().enumerate() {
        if c as usize >= remaining.len() {
            return Err(Error::domain(format!(
                "code entry {} = {c} exceeds {}",
                i + 1,
                n - i - 1
            )));
        }
        values.push(remaining.remove(c as usize));
    }
    Ok(Permutation(values))
}

/// True iff no `i < j < k` has `p_k < p_i < p_j`, tested by stack sorting.
pub fn avoids_231(p: &Permutation) -> bool {
    let mut stack: Vec<u32> = Vec::new();
    let mut next_out = 1;
    for &v in p.values() {
        while stack.last().is_some_and(|&top| top < v) {
            if stack.pop() != Some(next_out) {
                return false;
            }
            next_out += 1;
        }
        stack.push(v);
    }
    while let Some(top) = stack.pop() {
        if top != next_out {
            return false;
        }
        next_out += 1;
    }
    true
}
