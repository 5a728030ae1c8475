//! Kendall's tau over two score vectors, computed as (C - D) / (C + D)
//! where C and D count concordant and discordant index pairs. Pairs tied
//! in either vector are excluded from both counts, which is the only
//! reading under which the ratio stays within [-1, 1]; note this differs
//! from the usual tau-a/tau-b denominators. When every pair is tied the
//! statistic is undefined and reported as an error, distinct from zero.
//!
//! Counting uses a merge sort over the second vector (discordant pairs
//! are strict inversions after sorting by the first vector), so large
//! vectors stay O(n log n).

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TauError {
    #[error("rank vectors differ in length ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("rank vectors must hold at least two scores, got {0}")]
    TooShort(usize),
    #[error("scores must be finite numbers")]
    NonFinite,
    #[error("tau is undefined: every pair is tied")]
    AllPairsTied,
}

/// Kendall's tau of two equally long score vectors.
pub fn kendalls_tau(a: &[f64], b: &[f64]) -> Result<f64, TauError> {
    if a.len() != b.len() {
        return Err(TauError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.len() < 2 {
        return Err(TauError::TooShort(a.len()));
    }
    if a.iter().chain(b).any(|x| !x.is_finite()) {
        return Err(TauError::NonFinite);
    }

    let n = a.len() as u64;
    let total = n * (n - 1) / 2;

    // Sort index pairs by (a, b); discordant pairs are then exactly the
    // strict inversions of the b sequence.
    let mut pairs: Vec<(f64, f64)> = a.iter().copied().zip(b.iter().copied()).collect();
    pairs.sort_by(|x, y| x.partial_cmp(y).expect("finite values compare"));

    let tied_a = tied_pairs(pairs.iter().map(|p| p.0));
    let tied_ab = tied_pair_groups(&pairs);
    let mut b_sorted_by_a: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let discordant = strict_inversions(&mut b_sorted_by_a);

    let mut b_only: Vec<f64> = b.to_vec();
    b_only.sort_by(|x, y| x.partial_cmp(y).expect("finite values compare"));
    let tied_b = tied_pairs(b_only.iter().copied());

    let eligible = total - tied_a - tied_b + tied_ab;
    if eligible == 0 {
        return Err(TauError::AllPairsTied);
    }
    let concordant = eligible - discordant;
    Ok((concordant as f64 - discordant as f64) / eligible as f64)
}

/// Number of index pairs with equal values in an ascending sequence.
fn tied_pairs(values: impl Iterator<Item = f64>) -> u64 {
    let mut count = 0u64;
    let mut run = 0u64;
    let mut previous: Option<f64> = None;
    for value in values {
        if previous == Some(value) {
            run += 1;
            count += run;
        } else {
            run = 0;
        }
        previous = Some(value);
    }
    count
}

/// Number of index pairs tied in both coordinates of a sorted pair list.
fn tied_pair_groups(pairs: &[(f64, f64)]) -> u64 {
    let mut count = 0u64;
    let mut run = 0u64;
    for window in pairs.windows(2) {
        if window[0] == window[1] {
            run += 1;
            count += run;
        } else {
            run = 0;
        }
    }
    count
}

/// Counts pairs i < j with v[i] > v[j] (strictly), via merge sort.
fn strict_inversions(values: &mut [f64]) -> u64 {
    let mut buffer = vec![0.0; values.len()];
    merge_count(values, &mut buffer)
}

fn merge_count(values: &mut [f64], buffer: &mut [f64]) -> u64 {
    let n = values.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut inversions = merge_count(&mut values[..mid], &mut buffer[..mid])
        + merge_count(&mut values[mid..], &mut buffer[mid..]);
    let (left, right) = values.split_at(mid);
    let (mut i, mut j) = (0, 0);
    for slot in buffer[..n].iter_mut() {
        if i < left.len() && (j >= right.len() || left[i] <= right[j]) {
            *slot = left[i];
            i += 1;
        } else {
            // right[j] is strictly smaller than everything left in `left`
            inversions += (left.len() - i) as u64;
            *slot = right[j];
            j += 1;
        }
    }
    values.copy_from_slice(&buffer[..n]);
    inversions
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Direct pair enumeration, kept independent of the merge-based path.
    fn brute_force(a: &[f64], b: &[f64]) -> Result<f64, TauError> {
        let mut concordant = 0i64;
        let mut discordant = 0i64;
        for i in 0..a.len() {
            for j in (i + 1)..a.len() {
                let da = a[i] - a[j];
                let db = b[i] - b[j];
                if da == 0.0 || db == 0.0 {
                    continue;
                }
                if (da > 0.0) == (db > 0.0) {
                    concordant += 1;
                } else {
                    discordant += 1;
                }
            }
        }
        if concordant + discordant == 0 {
            return Err(TauError::AllPairsTied);
        }
        Ok((concordant - discordant) as f64 / (concordant + discordant) as f64)
    }

    #[test]
    fn identical_rankings_are_one() {
        assert_eq!(kendalls_tau(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]), Ok(1.0));
    }

    #[test]
    fn reversed_rankings_are_minus_one() {
        assert_eq!(kendalls_tau(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]), Ok(-1.0));
    }

    #[test]
    fn one_discordant_pair_out_of_three() {
        let tau = kendalls_tau(&[1.0, 2.0, 3.0], &[1.0, 3.0, 2.0]).unwrap();
        assert_eq!(tau, 1.0 / 3.0);
    }

    #[test]
    fn ties_are_excluded_from_both_counts() {
        // Pairs: (1,2) tied in a; (1,3) concordant; (2,3) concordant.
        let tau = kendalls_tau(&[1.0, 1.0, 2.0], &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(tau, 1.0);
    }

    #[test]
    fn all_tied_is_undefined_not_zero() {
        assert_eq!(
            kendalls_tau(&[1.0, 1.0], &[2.0, 3.0]),
            Err(TauError::AllPairsTied)
        );
        assert_eq!(
            kendalls_tau(&[1.0, 2.0], &[5.0, 5.0]),
            Err(TauError::AllPairsTied)
        );
    }

    #[test]
    fn input_contract_is_checked() {
        assert_eq!(
            kendalls_tau(&[1.0], &[1.0, 2.0]),
            Err(TauError::LengthMismatch { left: 1, right: 2 })
        );
        assert_eq!(kendalls_tau(&[1.0], &[1.0]), Err(TauError::TooShort(1)));
        assert_eq!(
            kendalls_tau(&[f64::NAN, 1.0], &[1.0, 2.0]),
            Err(TauError::NonFinite)
        );
    }

    proptest! {
        #[test]
        fn matches_brute_force_enumeration(
            scores in proptest::collection::vec((1..=5i32, 1..=5i32), 2..=12)
        ) {
            let a: Vec<f64> = scores.iter().map(|s| s.0 as f64).collect();
            let b: Vec<f64> = scores.iter().map(|s| s.1 as f64).collect();
            prop_assert_eq!(kendalls_tau(&a, &b), brute_force(&a, &b));
        }

        #[test]
        fn symmetric_in_its_arguments(
            scores in proptest::collection::vec((1..=5i32, 1..=5i32), 2..=12)
        ) {
            let a: Vec<f64> = scores.iter().map(|s| s.0 as f64).collect();
            let b: Vec<f64> = scores.iter().map(|s| s.1 as f64).collect();
            prop_assert_eq!(kendalls_tau(&a, &b), kendalls_tau(&b, &a));
        }
    }
}
