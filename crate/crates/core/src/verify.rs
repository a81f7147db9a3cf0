//! Exhaustive verification suites.
//!
//! Each suite expands into independent cells (one claim at one parameter
//! point). Cells run in parallel and the report keeps them in generation
//! order, which is sorted by parameters.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bijection::{dyck_to_seq, seq_to_dyck};
use crate::dyckpath::{enumerate_dyck, s_histogram};
use crate::exactnum::{catalan, catalan_power_convolution, catalan_prefix, gen_catalan, Natural};
use crate::families::{
    avoids_231, code_to_permutation, count_family, enumerate_family, join, spec_a, spec_b, spec_d,
    spec_f, spec_r, split_at_x, statistic_x, to_inversion_code, ConstrainedSeq, Permutation,
};
use crate::transform::{catalan_transform, shifted_catalan, TransformMode};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: String,
    pub parameters: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub max_n: usize,
    pub claims: Vec<Claim>,
    pub status: Status,
}

impl VerificationReport {
    fn new(suite: Suite, max_n: usize, claims: Vec<Claim>) -> Self {
        let status = if claims.iter().all(|c| c.status == Status::Pass) {
            Status::Pass
        } else {
            Status::Fail
        };
        VerificationReport {
            suite: suite.to_string(),
            max_n,
            claims,
            status,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| c.status == Status::Fail)
    }

    /// One line per suite plus one line per failing claim.
    pub fn summary(&self) -> String {
        let passed = self
            .claims
            .iter()
            .filter(|c| c.status == Status::Pass)
            .count();
        let mut out = format!(
            "{}: {} ({passed}/{} claims, max-n {})",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.claims.len(),
            self.max_n
        );
        for c in self.failures() {
            out.push_str(&format!(
                "\n  FAIL {} [{}]: {}",
                c.id,
                c.parameters,
                c.counterexample.as_deref().unwrap_or("")
            ));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Theorem1,
    Prop2,
    Prop4,
    Prop5,
    Theorem5,
    Theorem6,
    Identities,
    Remark,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Theorem1,
        Suite::Prop2,
        Suite::Prop4,
        Suite::Prop5,
        Suite::Theorem5,
        Suite::Theorem6,
        Suite::Identities,
        Suite::Remark,
    ];

    pub fn default_max_n(self) -> usize {
        match self {
            Suite::Theorem1 => 6,
            Suite::Prop2 => 10,
            Suite::Prop4 | Suite::Prop5 | Suite::Theorem6 | Suite::Remark => 8,
            Suite::Theorem5 => 6,
            Suite::Identities => 30,
        }
    }

    /// Largest accepted `max_n`; beyond it a run stops being desk-scale.
    pub fn cap(self) -> usize {
        match self {
            Suite::Theorem1 => 9,
            Suite::Prop2 => 14,
            Suite::Prop4 | Suite::Prop5 | Suite::Theorem6 | Suite::Remark => 10,
            Suite::Theorem5 => 8,
            Suite::Identities => 200,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Theorem1 => "theorem1",
            Suite::Prop2 => "prop2",
            Suite::Prop4 => "prop4",
            Suite::Prop5 => "prop5",
            Suite::Theorem5 => "theorem5",
            Suite::Theorem6 => "theorem6",
            Suite::Identities => "identities",
            Suite::Remark => "remark",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.to_string() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite `{s}`")))
    }
}

/// `all` or a single suite, as accepted on the command line.
pub fn parse_selection(s: &str) -> Result<Vec<Suite>> {
    if s == "all" {
        Ok(Suite::ALL.to_vec())
    } else {
        Ok(vec![s.parse()?])
    }
}

type Check = Box<dyn Fn() -> std::result::Result<(), String> + Send + Sync>;

struct Cell {
    id: String,
    parameters: String,
    check: Check,
}

fn cell(
    id: impl Into<String>,
    parameters: impl Into<String>,
    check: impl Fn() -> std::result::Result<(), String> + Send + Sync + 'static,
) -> Cell {
    Cell {
        id: id.into(),
        parameters: parameters.into(),
        check: Box::new(check),
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn expect_eq<T: PartialEq + fmt::Display>(
    what: &str,
    left: T,
    right: T,
) -> std::result::Result<(), String> {
    if left == right {
        Ok(())
    } else {
        Err(format!("{what}: {left} != {right}"))
    }
}

/// Runs one suite. `max_n` defaults per suite and may not exceed its cap.
pub fn run_suite(suite: Suite, max_n: Option<usize>) -> Result<VerificationReport> {
    let max_n = max_n.unwrap_or(suite.default_max_n());
    if max_n > suite.cap() {
        return Err(Error::InvalidInput(format!(
            "--max-n {max_n} exceeds the {suite} cap of {}",
            suite.cap()
        )));
    }
    let cells = match suite {
        Suite::Theorem1 => theorem1_cells(max_n),
        Suite::Prop2 => prop2_cells(max_n),
        Suite::Prop4 => prop4_cells(max_n),
        Suite::Prop5 => prop5_cells(max_n),
        Suite::Theorem5 => theorem5_cells(max_n),
        Suite::Theorem6 => theorem6_cells(max_n),
        Suite::Identities => identity_cells(max_n),
        Suite::Remark => remark_cells(max_n),
    };
    let claims = cells
        .into_par_iter()
        .map(|c| {
            let outcome = (c.check)();
            Claim {
                id: c.id,
                parameters: c.parameters,
                status: if outcome.is_ok() {
                    Status::Pass
                } else {
                    Status::Fail
                },
                counterexample: outcome.err(),
            }
        })
        .collect();
    Ok(VerificationReport::new(suite, max_n, claims))
}

/// Runs several suites; with more than one, `max_n` is clamped to each cap.
pub fn run_suites(suites: &[Suite], max_n: Option<usize>) -> Result<Vec<VerificationReport>> {
    suites
        .iter()
        .map(|&s| {
            let n = if suites.len() > 1 {
                max_n.map(|n| n.min(s.cap()))
            } else {
                max_n
            };
            run_suite(s, n)
        })
        .collect()
}

fn theorem1_cells(max_n: usize) -> Vec<Cell> {
    let mut cells = vec![cell(
        "theorem1.modes_agree",
        format!("n<={max_n}"),
        move || {
            let a = catalan_prefix(max_n + 1);
            let direct = catalan_transform(&a, TransformMode::Direct).map_err(err)?;
            let reversed = catalan_transform(&a, TransformMode::Reversed).map_err(err)?;
            expect_eq("direct vs reversed", direct, reversed)
        },
    )];
    cells.extend((0..=max_n).map(|n| {
        cell("theorem1.count", format!("n={n}"), move || {
            let b =
                catalan_transform(&catalan_prefix(n + 1), TransformMode::Direct).map_err(err)?;
            expect_eq(
                "b_n vs |A_n|",
                b[n].clone(),
                count_family(&spec_a(n).map_err(err)?),
            )
        })
    }));
    cells
}

fn prop2_cells(max_semilength: usize) -> Vec<Cell> {
    let mut cells = Vec::new();
    for m in 0..=max_semilength {
        for k in 0..=m {
            let n = m - k;
            cells.push(cell("prop2.bijection", format!("n={n},k={k}"), move || {
                let formula = gen_catalan(n as u64, k as i64).map_err(err)?;
                let family = spec_b(n, k).map_err(err)?;
                let members: BTreeSet<ConstrainedSeq> = enumerate_family(&family).collect();
                expect_eq(
                    "|B_n^(k)| vs C_n^(k)",
                    Natural::from(members.len()),
                    formula.clone(),
                )?;
                let mut image = BTreeSet::new();
                let mut paths = 0usize;
                for path in enumerate_dyck(m, k) {
                    paths += 1;
                    let v = dyck_to_seq(&path, k).map_err(err)?;
                    let back = seq_to_dyck(&v, k).map_err(err)?;
                    if back != path {
                        return Err(format!("round trip {path} -> {v} -> {back}"));
                    }
                    if !members.contains(&v) {
                        return Err(format!("{path} maps outside B: {v}"));
                    }
                    if !image.insert(v.clone()) {
                        return Err(format!("{v} hit twice (second preimage {path})"));
                    }
                }
                expect_eq("paths vs C_n^(k)", Natural::from(paths), formula)?;
                if let Some(missed) = members.difference(&image).next() {
                    return Err(format!("{missed} has no preimage"));
                }
                Ok(())
            }));
        }
    }
    cells
}

fn prop4_cells(max_n: usize) -> Vec<Cell> {
    let mut cells = Vec::new();
    for n in 1..=max_n {
        for s in 0..=4 {
            cells.push(cell("prop4.count", format!("n={n},s={s}"), move || {
                expect_eq(
                    "|D_n^(s)| vs C_(n-1)^(s)",
                    count_family(&spec_d(n, s).map_err(err)?),
                    gen_catalan(n as u64 - 1, s as i64).map_err(err)?,
                )
            }));
            cells.push(cell(
                "prop4.truncation",
                format!("n={n},s={s}"),
                move || {
                    let mut truncated = BTreeSet::new();
                    for u in enumerate_family(&spec_d(n, s).map_err(err)?) {
                        let head =
                            ConstrainedSeq::new(u.entries()[..n - 1].to_vec()).map_err(err)?;
                        if !truncated.insert(head) {
                            return Err(format!("two members truncate alike, e.g. {u}"));
                        }
                    }
                    let b: BTreeSet<_> =
                        enumerate_family(&spec_b(n - 1, s).map_err(err)?).collect();
                    if let Some(x) = truncated.symmetric_difference(&b).next() {
                        return Err(format!("{x} is in only one of trunc(D) and B"));
                    }
                    Ok(())
                },
            ));
        }
    }
    cells
}

fn prop5_cells(max_n: usize) -> Vec<Cell> {
    let mut cells = Vec::new();
    for n in 0..=max_n {
        for k in 0..=4 {
            cells.push(cell("prop5.count", format!("n={n},k={k}"), move || {
                expect_eq(
                    "|F_n^(k)| vs C_n^(k)",
                    count_family(&spec_f(n, k).map_err(err)?),
                    gen_catalan(n as u64, k as i64).map_err(err)?,
                )
            }));
            if n == 0 {
                continue;
            }
            cells.push(cell("prop5.partition", format!("n={n},k={k}"), move || {
                let f: Vec<ConstrainedSeq> =
                    enumerate_family(&spec_f(n, k).map_err(err)?).collect();
                for s in 1..=k + 1 {
                    let part: BTreeSet<_> = f
                        .iter()
                        .filter(|u| u.at(n) as usize == n + s)
                        .cloned()
                        .collect();
                    let d: BTreeSet<_> = enumerate_family(&spec_d(n, s).map_err(err)?).collect();
                    if let Some(x) = part.symmetric_difference(&d).next() {
                        return Err(format!("s={s}: {x} is in only one of the F part and D"));
                    }
                }
                Ok(())
            }));
        }
    }
    cells
}

fn theorem5_cells(max_n: usize) -> Vec<Cell> {
    let mut cells = Vec::new();
    for n in 1..=max_n {
        for k in 0..n {
            cells.push(cell(
                "theorem5.refinement",
                format!("n={n},k={k}"),
                move || {
                    let layer: BTreeSet<ConstrainedSeq> =
                        enumerate_family(&spec_a(n).map_err(err)?)
                            .filter(|u| statistic_x(u) == k)
                            .collect();
                    let formula = gen_catalan(k as u64, (n - 1 - k) as i64).map_err(err)?
                        * catalan((n - k) as u64);
                    expect_eq("|A_(n,k)| vs formula", Natural::from(layer.len()), formula)?;
                    if k == 0 {
                        let b: BTreeSet<_> =
                            enumerate_family(&spec_b(n, 0).map_err(err)?).collect();
                        return if b == layer {
                            Ok(())
                        } else {
                            Err("A_(n,0) != B_n".into())
                        };
                    }
                    for u in &layer {
                        let (head, tail) = split_at_x(u, n).map_err(err)?;
                        let back = join(&head, &tail, n).map_err(err)?;
                        if &back != u {
                            return Err(format!("split/join moved {u} to {back}"));
                        }
                    }
                    let heads: Vec<_> =
                        enumerate_family(&spec_f(k, n - k - 1).map_err(err)?).collect();
                    let tails: Vec<_> = enumerate_family(&spec_b(n - k, 0).map_err(err)?).collect();
                    let mut joined = BTreeSet::new();
                    for h in &heads {
                        for t in &tails {
                            let u = join(h, t, n).map_err(err)?;
                            if !joined.insert(u.clone()) {
                                return Err(format!("{u} produced twice"));
                            }
                        }
                    }
                    if joined != layer {
                        return Err("join(F x B) differs from A_(n,k)".into());
                    }
                    Ok(())
                },
            ));
        }
    }
    cells
}

fn theorem6_cells(max_n: usize) -> Vec<Cell> {
    let mut cells = Vec::new();
    for k in 0..=3usize {
        for n in 0..=max_n {
            cells.push(cell(
                "theorem6.shifted",
                format!("k={k},n={n}"),
                move || {
                    let b = catalan_transform(&shifted_catalan(k, n + 1), TransformMode::Direct)
                        .map_err(err)?;
                    let got = &b[n];
                    if n < k {
                        return if got.is_zero() {
                            Ok(())
                        } else {
                            Err(format!("b_{n} = {got}, expected 0"))
                        };
                    }
                    if n == k {
                        return if got.is_one() {
                            Ok(())
                        } else {
                            Err(format!("b_{n} = {got}, expected 1"))
                        };
                    }
                    let bound = u32::try_from(n).map_err(|e| e.to_string())?;
                    expect_eq(
                        "b_n vs |R(n-k, n)|",
                        got.clone(),
                        count_family(&spec_r(n - k, bound).map_err(err)?),
                    )
                },
            ));
        }
    }
    cells
}

fn identity_cells(max_n: usize) -> Vec<Cell> {
    let mut cells = vec![cell(
        "identities.summation",
        format!("1<=n<={max_n},k<={max_n}"),
        move || {
            for n in 1..=max_n as u64 {
                for k in 0..=max_n as i64 {
                    let lhs: Natural = (1..=k + 1)
                        .map(|s| gen_catalan(n - 1, s))
                        .sum::<Result<Natural>>()
                        .map_err(err)?;
                    let rhs = gen_catalan(n, k).map_err(err)?;
                    if lhs != rhs {
                        return Err(format!("n={n} k={k}: {lhs} != {rhs}"));
                    }
                }
            }
            Ok(())
        },
    )];
    let conv_max = max_n.min(20);
    cells.push(cell(
        "identities.convolution",
        format!("n,k<={conv_max}"),
        move || {
            for k in 0..=conv_max as u64 {
                let conv = catalan_power_convolution(k, conv_max + 1);
                for n in 0..=conv_max {
                    let g = gen_catalan(n as u64, k as i64).map_err(err)?;
                    if g != conv[n] {
                        return Err(format!("n={n} k={k}: {g} != {}", conv[n]));
                    }
                }
            }
            Ok(())
        },
    ));
    for n in 1..=max_n.min(6) {
        for k in 0..=4usize {
            cells.push(cell(
                "identities.s_histogram",
                format!("n={n},k={k}"),
                move || {
                    let hist = s_histogram(n, k).map_err(err)?;
                    let keys: Vec<usize> = hist.keys().copied().collect();
                    if keys != (1..=k + 1).collect::<Vec<_>>() {
                        return Err(format!("s values {keys:?}"));
                    }
                    for (s, count) in hist {
                        let expected =
                            gen_catalan(n as u64 - 1, (k + 2 - s) as i64).map_err(err)?;
                        if count != expected {
                            return Err(format!("s={s}: {count} != {expected}"));
                        }
                    }
                    Ok(())
                },
            ));
        }
    }
    cells
}

/// Next permutation in lexicographic order, or `false` after the last.
fn next_permutation(p: &mut [u32]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn remark_cells(max_n: usize) -> Vec<Cell> {
    (0..=max_n)
        .map(|n| {
            cell("remark.inversion_codes", format!("n={n}"), move || {
                let mut image = BTreeSet::new();
                for v in enumerate_family(&spec_b(n, 0).map_err(err)?) {
                    let p =
                        code_to_permutation(&to_inversion_code(&v).map_err(err)?).map_err(err)?;
                    if !image.insert(p.clone()) {
                        return Err(format!("{p} reached twice (from {v})"));
                    }
                }
                let mut avoiding = BTreeSet::new();
                let mut values: Vec<u32> = (1..=n as u32).collect();
                loop {
                    let p = Permutation::new(values.clone()).map_err(err)?;
                    if avoids_231(&p) {
                        avoiding.insert(p);
                    }
                    if !next_permutation(&mut values) {
                        break;
                    }
                }
                if let Some(p) = image.symmetric_difference(&avoiding).next() {
                    return Err(format!("{p} is in only one of the image and Av(231)"));
                }
                expect_eq(
                    "|Av_n(231)| vs C_n",
                    Natural::from(avoiding.len()),
                    catalan(n as u64),
                )
            })
        })
        .collect()
}
