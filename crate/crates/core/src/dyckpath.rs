//! Up/down lattice paths: Dyck paths (optionally with forced leading
//! upsteps), nonnegative paths, and the two path statistics the counting
//! arguments rely on.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::exactnum::Natural;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Up,
    Down,
}

impl Step {
    fn delta(self) -> i64 {
        match self {
            Step::Up => 1,
            Step::Down => -1,
        }
    }
}

/// A finite step sequence. Ordering is lexicographic with `Up < Down`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    steps: Vec<Step>,
}

impl Path {
    pub fn new(steps: Vec<Step>) -> Self {
        Path { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    pub fn ups(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::Up).count()
    }

    pub fn downs(&self) -> usize {
        self.len() - self.ups()
    }

    pub fn final_height(&self) -> i64 {
        self.steps.iter().map(|s| s.delta()).sum()
    }

    /// Heights after each prefix, starting with 0 for the empty prefix.
    pub fn heights(&self) -> impl Iterator<Item = i64> + '_ {
        std::iter::once(0).chain(self.steps.iter().scan(0, |h, s| {
            *h += s.delta();
            Some(*h)
        }))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.heights().all(|h| h >= 0)
    }

    pub fn is_dyck(&self) -> bool {
        self.is_nonnegative() && self.final_height() == 0
    }

    /// Semilength, meaningful for Dyck paths.
    pub fn semilength(&self) -> usize {
        self.ups()
    }

    pub fn leading_ups(&self) -> usize {
        self.steps.iter().take_while(|&&s| s == Step::Up).count()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::Up => "U",
                Step::Down => "D",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Path {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_path(s)
    }
}

/// Parses a `U`/`D` string, case-insensitively. Errors name the 1-based
/// position of the first bad character.
pub fn parse_path(text: &str) -> Result<Path> {
    text.chars()
        .enumerate()
        .map(|(i, c)| match c {
            'U' | 'u' => Ok(Step::Up),
            'D' | 'd' => Ok(Step::Down),
            other => Err(Error::Parse {
                position: i + 1,
                message: format!("unexpected character `{other}` in path"),
            }),
        })
        .collect::<Result<Vec<_>>>()
        .map(Path::new)
}

/// Semilength of the longest suffix of `prefix` that is a Dyck path on its own.
pub fn longest_balanced_suffix(prefix: &[Step]) -> usize {
    // Walking backwards, a suffix is balanced iff the running (downs - ups)
    // is back to zero and never went negative.
    let mut balance = 0i64;
    let mut best = 0usize;
    for (idx, step) in prefix.iter().rev().enumerate() {
        let len = idx + 1;
        balance -= step.delta();
        if balance < 0 {
            break;
        }
        if balance == 0 {
            best = len / 2;
        }
    }
    best
}

/// `1 +` the number of steps after the last downstep.
pub fn trailing_statistic_s(path: &Path) -> Result<usize> {
    path.steps
        .iter()
        .rposition(|&s| s == Step::Down)
        .map(|last| path.len() - last)
        .ok_or_else(|| Error::domain(format!("path `{path}` has no downstep")))
}

/// Lexicographic stream (`Up < Down`) of the paths with the given step counts
/// whose heights stay nonnegative and whose first `forced_ups` steps are up.
#[derive(Clone, Debug)]
pub struct NonnegPaths {
    ups: usize,
    downs: usize,
    forced_ups: usize,
    current: Option<Vec<Step>>,
}

impl NonnegPaths {
    fn new(ups: usize, downs: usize, forced_ups: usize) -> Self {
        let current = (ups >= downs && forced_ups <= ups).then(|| {
            let mut first = vec![Step::Up; ups];
            first.resize(ups + downs, Step::Down);
            first
        });
        NonnegPaths {
            ups,
            downs,
            forced_ups,
            current,
        }
    }

    /// Rewrites `steps` in place to its lexicographic successor.
    fn advance(&self, steps: &mut [Step]) -> bool {
        let mut height: i64 = steps.iter().map(|s| s.delta()).sum();
        let mut ups_after = 0usize;
        let mut downs_after = 0usize;
        for p in (0..steps.len()).rev() {
            let step = steps[p];
            height -= step.delta();
            match step {
                Step::Up => {
                    // Turning this Up into a Down needs a spare downstep
                    // later on and must keep the height nonnegative.
                    if p >= self.forced_ups && height >= 1 && downs_after >= 1 {
                        steps[p] = Step::Down;
                        let ups_left = ups_after + 1;
                        let downs_left = downs_after - 1;
                        for (slot, s) in steps[p + 1..].iter_mut().enumerate() {
                            *s = if slot < ups_left {
                                Step::Up
                            } else {
                                Step::Down
                            };
                        }
                        debug_assert_eq!(ups_left + downs_left, steps.len() - p - 1);
                        return true;
                    }
                    ups_after += 1;
                }
                Step::Down => downs_after += 1,
            }
        }
        false
    }
}

impl Iterator for NonnegPaths {
    type Item = Path;

    fn next(&mut self) -> Option<Path> {
        let out = self.current.clone()?;
        let mut steps = out.clone();
        self.current = self.advance(&mut steps).then_some(steps);
        debug_assert_eq!(out.len(), self.ups + self.downs);
        Some(Path::new(out))
    }
}

/// All Dyck `m`-paths whose first `min_leading_ups` steps are up.
pub fn enumerate_dyck(m: usize, min_leading_ups: usize) -> NonnegPaths {
    NonnegPaths::new(m, m, min_leading_ups)
}

/// All paths with `ups` upsteps and `downs` downsteps that never go below 0.
pub fn enumerate_nonneg(ups: usize, downs: usize) -> NonnegPaths {
    NonnegPaths::new(ups, downs, 0)
}

/// Nonnegative paths with `k + n` upsteps and `n` downsteps, grouped by the
/// trailing statistic `s`.
pub fn s_histogram(n: usize, k: usize) -> Result<BTreeMap<usize, Natural>> {
    if n == 0 {
        return Err(Error::domain(
            "s_histogram needs n >= 1 so every path has a downstep",
        ));
    }
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for path in enumerate_nonneg(k + n, n) {
        *counts.entry(trailing_statistic_s(&path)?).or_default() += 1;
    }
    Ok(counts
        .into_iter()
        .map(|(s, c)| (s, Natural::from(c)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::gen_catalan;
    use proptest::prelude::*;

    fn p(s: &str) -> Path {
        parse_path(s).unwrap()
    }

    fn strings(it: impl Iterator<Item = Path>) -> Vec<String> {
        it.map(|p| p.to_string()).collect()
    }

    /// Every `U`/`D` word of the given length that passes `keep`, in
    /// lexicographic order.
    fn brute_words(len: usize, keep: impl Fn(&Path) -> bool) -> Vec<String> {
        (0u32..1 << len)
            .map(|bits| {
                Path::new(
                    (0..len)
                        .map(|i| {
                            if bits >> (len - 1 - i) & 1 == 0 {
                                Step::Up
                            } else {
                                Step::Down
                            }
                        })
                        .collect(),
                )
            })
            .filter(|p| keep(p))
            .map(|p| p.to_string())
            .collect()
    }

    #[test]
    fn parses_paths() {
        let dyck = p("uUDd");
        assert_eq!(dyck.to_string(), "UUDD");
        assert!(dyck.is_dyck());
        assert_eq!(dyck.semilength(), 2);

        match parse_path("UDX") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("unexpected {other:?}"),
        }

        let dip = p("UDD");
        assert!(!dip.is_dyck());
        assert!(!dip.is_nonnegative());
    }

    #[test]
    fn dyck_enumeration_examples() {
        assert_eq!(strings(enumerate_dyck(2, 0)), ["UUDD", "UDUD"]);
        assert_eq!(enumerate_dyck(3, 0).count(), 5);
        assert_eq!(
            strings(enumerate_dyck(3, 2)),
            ["UUUDDD", "UUDUDD", "UUDDUD"]
        );
        assert_eq!(strings(enumerate_dyck(0, 0)), [""]);
        assert_eq!(enumerate_dyck(2, 3).count(), 0);
    }

    #[test]
    fn dyck_enumeration_matches_brute_force() {
        for m in 0..=7 {
            for k in 0..=m {
                let brute = brute_words(2 * m, |p| p.is_dyck() && p.leading_ups() >= k);
                assert_eq!(strings(enumerate_dyck(m, k)), brute, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn dyck_counts_are_generalized_catalan() {
        for m in 0..=10usize {
            for k in 0..=m {
                assert_eq!(
                    Natural::from(enumerate_dyck(m, k).count()),
                    gen_catalan((m - k) as u64, k as i64).unwrap()
                );
            }
        }
    }

    #[test]
    fn nonneg_enumeration() {
        assert_eq!(
            strings(enumerate_nonneg(3, 2)),
            ["UUUDD", "UUDUD", "UUDDU", "UDUUD", "UDUDU"]
        );
        assert_eq!(strings(enumerate_nonneg(2, 2)), ["UUDD", "UDUD"]);
        assert_eq!(enumerate_nonneg(1, 2).count(), 0);
        for ups in 0..=7 {
            for downs in 0..=ups {
                let brute = brute_words(ups + downs, |p| p.ups() == ups && p.is_nonnegative());
                assert_eq!(strings(enumerate_nonneg(ups, downs)), brute);
            }
        }
    }

    #[test]
    fn balanced_suffix_examples() {
        assert_eq!(longest_balanced_suffix(&[]), 0);
        assert_eq!(longest_balanced_suffix(p("UD").steps()), 1);
        assert_eq!(longest_balanced_suffix(p("UUD").steps()), 1);
        assert_eq!(longest_balanced_suffix(p("UDUU").steps()), 0);
        assert_eq!(longest_balanced_suffix(p("UUDUDD").steps()), 3);
        assert_eq!(longest_balanced_suffix(p("UUDUDDUD").steps()), 4);
        assert_eq!(longest_balanced_suffix(p("DUD").steps()), 1);
    }

    #[test]
    fn trailing_statistic() {
        assert_eq!(trailing_statistic_s(&p("UUUDD")).unwrap(), 1);
        assert_eq!(trailing_statistic_s(&p("UUDDU")).unwrap(), 2);
        assert!(matches!(
            trailing_statistic_s(&p("UUU")),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn histogram_examples() {
        let h = |n, k| -> Vec<(usize, u64)> {
            s_histogram(n, k)
                .unwrap()
                .into_iter()
                .map(|(s, c)| (s, u64::try_from(c).unwrap()))
                .collect()
        };
        assert_eq!(h(2, 1), [(1, 3), (2, 2)]);
        assert_eq!(h(1, 0), [(1, 1)]);
        assert_eq!(h(2, 0), [(1, 2)]);
        assert!(s_histogram(0, 3).is_err());
    }

    #[test]
    fn histogram_index_correspondence() {
        for n in 1..=6usize {
            for k in 0..=4usize {
                let hist = s_histogram(n, k).unwrap();
                assert_eq!(
                    hist.keys().copied().collect::<Vec<_>>(),
                    (1..=k + 1).collect::<Vec<_>>()
                );
                for (&s, count) in &hist {
                    let expected = gen_catalan(n as u64 - 1, (k + 2 - s) as i64).unwrap();
                    assert_eq!(count, &expected, "n={n} k={k} s={s}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn suffix_ending_in_up_is_never_balanced(word in "[UD]{0,30}") {
            let mut path = p(&word);
            path.push(Step::Up);
            prop_assert_eq!(longest_balanced_suffix(path.steps()), 0);
        }

        #[test]
        fn balanced_suffix_agrees_with_direct_search(word in "[UD]{0,24}") {
            let path = p(&word);
            let steps = path.steps();
            let direct = (0..=steps.len())
                .filter(|&start| Path::new(steps[start..].to_vec()).is_dyck())
                .map(|start| (steps.len() - start) / 2)
                .max()
                .unwrap_or(0);
            prop_assert_eq!(longest_balanced_suffix(steps), direct);
        }

        #[test]
        fn streams_strictly_increase(m in 0usize..8, k in 0usize..8) {
            let paths: Vec<Path> = enumerate_dyck(m, k.min(m)).collect();
            prop_assert!(paths.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
