//! Erdős–Szekeres extraction: among `(k - 1)(l - 1) + 1` distinct values
//! there is an increasing run of length `k` or a decreasing run of length
//! `l`. This module finds one.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// Positions into the input whose values are strictly monotone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneWitness {
    pub indices: Vec<usize>,
    pub direction: Direction,
}

impl MonotoneWitness {
    pub fn values<T: Copy>(&self, seq: &[T]) -> Vec<T> {
        self.indices.iter().map(|&i| seq[i]).collect()
    }

    /// Whether the witness is a strictly monotone subsequence of `seq`.
    pub fn is_valid_for<T: Ord>(&self, seq: &[T]) -> bool {
        self.indices.windows(2).all(|w| w[0] < w[1])
            && self.indices.iter().all(|&i| i < seq.len())
            && self.indices.windows(2).all(|w| match self.direction {
                Direction::Increasing => seq[w[0]] < seq[w[1]],
                Direction::Decreasing => seq[w[0]] > seq[w[1]],
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EsError {
    #[error("sequence has {len} values; need (k - 1)(l - 1) + 1 = {need} for k = {k}, l = {l}")]
    TooShort { len: usize, need: usize, k: usize, l: usize },
    #[error("value at position {0} repeats an earlier value")]
    Duplicate(usize),
    #[error("run lengths must be at least 1")]
    ZeroTarget,
}

/// Finds an increasing run of exactly `k` values or a decreasing run of
/// exactly `l` values.
///
/// Inputs of at least `(k - 1)(l - 1) + 1` values always have one. Shorter
/// inputs are searched too and rejected with [`EsError::TooShort`] only when
/// neither run exists.
///
/// A quadratic longest-run table is filled left to right, each entry
/// remembering its earliest best predecessor. The first position where
/// either run reaches its target ends the witness, the increasing run
/// winning ties.
pub fn es_extract<T: Ord + Copy>(seq: &[T], k: usize, l: usize) -> Result<MonotoneWitness, EsError> {
    if k == 0 || l == 0 {
        return Err(EsError::ZeroTarget);
    }
    let need = (k - 1) * (l - 1) + 1;
    let mut sorted: Vec<(T, usize)> = seq.iter().copied().zip(0..).collect();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(EsError::Duplicate(w[0].1.max(w[1].1)));
    }
    let n = seq.len();
    let mut inc = vec![(1usize, usize::MAX); n];
    let mut dec = vec![(1usize, usize::MAX); n];
    for i in 0..n {
        for j in 0..i {
            if seq[j] < seq[i] && inc[j].0 + 1 > inc[i].0 {
                inc[i] = (inc[j].0 + 1, j);
            }
            if seq[j] > seq[i] && dec[j].0 + 1 > dec[i].0 {
                dec[i] = (dec[j].0 + 1, j);
            }
        }
        let chain = |table: &[(usize, usize)], want: usize| {
            let mut out = Vec::with_capacity(want);
            let mut cur = i;
            while out.len() < want {
                out.push(cur);
                cur = table[cur].1;
            }
            out.reverse();
            out
        };
        if inc[i].0 >= k {
            return Ok(MonotoneWitness {
                indices: chain(&inc, k),
                direction: Direction::Increasing,
            });
        }
        if dec[i].0 >= l {
            return Ok(MonotoneWitness {
                indices: chain(&dec, l),
                direction: Direction::Decreasing,
            });
        }
    }
    assert!(n < need, "a long enough sequence always has a run of the target length");
    Err(EsError::TooShort { len: n, need, k, l })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    #[test]
    fn spec_examples() {
        let seq = [3, 1, 4, 2, 5];
        let w = es_extract(&seq, 3, 3).unwrap();
        assert!(w.is_valid_for(&seq));
        assert_eq!(w.indices.len(), 3);
        assert_eq!(w.direction, Direction::Increasing);
        assert_eq!(w.values(&seq), vec![3, 4, 5]);

        // shorter than the guarantee, but the run is there
        let w = es_extract(&[5, 4, 3, 2, 1], 5, 5).unwrap();
        assert_eq!(w.direction, Direction::Decreasing);
        assert_eq!(w.indices, vec![0, 1, 2, 3, 4]);

        assert_eq!(
            es_extract(&[1, 2, 3], 4, 4),
            Err(EsError::TooShort { len: 3, need: 10, k: 4, l: 4 })
        );
        assert_eq!(es_extract(&[1, 2, 1], 2, 2), Err(EsError::Duplicate(2)));
        assert_eq!(es_extract(&[1], 0, 1), Err(EsError::ZeroTarget));
    }

    /// Subset brute force: longest increasing and decreasing subsequences.
    fn longest_runs(seq: &[i64]) -> (usize, usize) {
        let n = seq.len();
        let (mut best_inc, mut best_dec) = (0, 0);
        for mask in 1u32..(1 << n) {
            let vals: Vec<i64> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| seq[i]).collect();
            if vals.windows(2).all(|w| w[0] < w[1]) {
                best_inc = best_inc.max(vals.len());
            }
            if vals.windows(2).all(|w| w[0] > w[1]) {
                best_dec = best_dec.max(vals.len());
            }
        }
        (best_inc, best_dec)
    }

    #[test]
    fn agrees_with_brute_force_on_short_sequences() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..400 {
            let n = rng.gen_range(1..=10);
            let mut seq: Vec<i64> = (0..n as i64).map(|x| x * 3 - 7).collect();
            seq.shuffle(&mut rng);
            let (li, ld) = longest_runs(&seq);
            for k in 1..=4 {
                for l in 1..=4 {
                    match es_extract(&seq, k, l) {
                        Ok(w) => {
                            assert!(w.is_valid_for(&seq));
                            let want = if w.direction == Direction::Increasing { k } else { l };
                            assert_eq!(w.indices.len(), want);
                        }
                        Err(EsError::TooShort { .. }) => {
                            assert!(n < (k - 1) * (l - 1) + 1);
                            assert!(li < k && ld < l);
                        }
                        Err(e) => panic!("{e}"),
                    }
                    // when long enough, one of the runs must exist
                    if n >= (k - 1) * (l - 1) + 1 {
                        assert!(li >= k || ld >= l);
                    }
                }
            }
        }
    }

    #[test]
    fn prefers_the_earliest_end() {
        // increasing run of 3 ends at index 4, decreasing run of 3 ends at 2
        let seq = [5, 4, 3, 6, 7];
        let w = es_extract(&seq, 3, 3).unwrap();
        assert_eq!(w.direction, Direction::Decreasing);
        assert_eq!(w.indices, vec![0, 1, 2]);
    }
}
