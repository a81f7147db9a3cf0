//! Dyck `(k+n)`-paths whose first `k` steps are up, in bijection with
//! `B_n^(k)`.
//!
//! Forward: for the `(i+k)`-th upstep, `v_i` is one more than the semilength
//! of the longest Dyck path ending right before it. Backward: after the
//! forced upsteps, for each `v_i` append downsteps until that statistic
//! reaches `v_i - 1`, then append the next upstep; close with downsteps.

use crate::dyckpath::{longest_balanced_suffix, Path, Step};
use crate::families::{spec_b, ConstrainedSeq};
use crate::{Error, Result};

pub fn dyck_to_seq(path: &Path, k: usize) -> Result<ConstrainedSeq> {
    if !path.is_dyck() {
        return Err(Error::domain(format!("`{path}` is not a Dyck path")));
    }
    if path.leading_ups() < k {
        return Err(Error::domain(format!(
            "`{path}` starts with {} upstep(s), fewer than k = {k}",
            path.leading_ups()
        )));
    }
    let steps = path.steps();
    let entries = steps
        .iter()
        .enumerate()
        .filter(|&(_, &s)| s == Step::Up)
        .skip(k)
        .map(|(pos, _)| u32::try_from(longest_balanced_suffix(&steps[..pos]) + 1))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Error::domain("path too long"))?;
    let seq = ConstrainedSeq::new(entries)?;
    spec_b(path.semilength() - k, k)?
        .check_membership(&seq)
        .map_err(|why| Error::integrity(format!("image of `{path}` left B: {why}")))?;
    Ok(seq)
}

pub fn seq_to_dyck(v: &ConstrainedSeq, k: usize) -> Result<Path> {
    spec_b(v.len(), k)?.check_membership(v).map_err(|why| {
        Error::InvalidInput(format!("`{v}` is not in B_{}^({k}): {why}", v.len()))
    })?;

    let mut path = Path::new(vec![Step::Up; k]);
    let mut height = k as i64;
    for (idx, &entry) in v.entries().iter().enumerate() {
        let target = entry as usize - 1;
        loop {
            let current = longest_balanced_suffix(path.steps());
            if current == target {
                break;
            }
            if current > target || height == 0 {
                return Err(Error::InvalidInput(format!(
                    "cannot realise entry {} = {entry} of `{v}`",
                    idx + 1
                )));
            }
            path.push(Step::Down);
            height -= 1;
        }
        path.push(Step::Up);
        height += 1;
    }
    for _ in 0..height {
        path.push(Step::Down);
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyckpath::{enumerate_dyck, parse_path};
    use crate::families::enumerate_family;
    use std::collections::BTreeSet;

    fn cs(v: &[u32]) -> ConstrainedSeq {
        ConstrainedSeq::new(v.to_vec()).unwrap()
    }

    #[test]
    fn forward_examples() {
        let fwd = |s: &str, k| dyck_to_seq(&parse_path(s).unwrap(), k).unwrap();
        assert_eq!(fwd("UUUDDD", 0), cs(&[1, 1, 1]));
        assert_eq!(fwd("UDUDUD", 0), cs(&[1, 2, 3]));
        assert_eq!(fwd("UDUUDD", 0), cs(&[1, 2, 1]));
        assert_eq!(fwd("", 0), cs(&[]));
        assert_eq!(fwd("UUDD", 2), cs(&[]));
    }

    #[test]
    fn backward_examples() {
        let back = |v: &[u32], k| seq_to_dyck(&cs(v), k).unwrap().to_string();
        assert_eq!(back(&[1, 2, 1], 0), "UDUUDD");
        assert_eq!(back(&[1, 1, 1], 0), "UUUDDD");
        assert_eq!(back(&[1, 2, 3], 0), "UDUDUD");
        assert_eq!(back(&[], 3), "UUUDDD");
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            dyck_to_seq(&parse_path("UDD").unwrap(), 0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            dyck_to_seq(&parse_path("UDUD").unwrap(), 2),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            seq_to_dyck(&cs(&[1, 2, 2]), 0),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            seq_to_dyck(&cs(&[2]), 0),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn exhaustive_bijection_small() {
        for m in 0..=8 {
            for k in 0..=m {
                let n = m - k;
                let mut image = BTreeSet::new();
                for path in enumerate_dyck(m, k) {
                    let v = dyck_to_seq(&path, k).unwrap();
                    assert_eq!(seq_to_dyck(&v, k).unwrap(), path);
                    assert!(image.insert(v));
                }
                let family: BTreeSet<_> = enumerate_family(&spec_b(n, k).unwrap()).collect();
                assert_eq!(image, family, "n={n} k={k}");
            }
        }
    }
}
