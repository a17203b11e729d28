//! Exhaustive search over tensor-decomposition profiles of the restriction of
//! the 48-dimensional module to `Q3`.
//!
//! A decomposition `W = W1 (x) W2` with `Wk = mk.1 + sum a_i F_i` and every
//! nontrivial `F_i` of dimension at least 2 is summarised by
//! `(d1, d2, m1, m2, S1, S2)` with `Sk = sum a_i`. The trivial multiplicity of
//! `W` is then at most `m1 m2 + S1 S2`, which would have to reach 36.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorProfile {
    pub d1: u32,
    pub d2: u32,
    pub m1: u32,
    pub m2: u32,
    pub s1: u32,
    pub s2: u32,
}

impl TensorProfile {
    pub fn trivial_bound(&self) -> u32 {
        self.m1 * self.m2 + self.s1 * self.s2
    }

    pub fn is_valid(&self) -> bool {
        self.m1 <= 1
            && self.m2 <= 1
            && self.s1 >= 1
            && self.s2 >= 1
            && self.d1 >= self.m1 + 2 * self.s1
            && self.d2 >= self.m2 + 2 * self.s2
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorSearch {
    pub dimension: u32,
    pub threshold: u32,
    pub profiles_examined: u64,
    pub closed_form_count: u64,
    pub max_trivial_bound: u32,
    pub feasible_count: u64,
    pub first_feasible: Option<TensorProfile>,
}

impl TensorSearch {
    pub fn is_infeasible(&self) -> bool {
        self.feasible_count == 0
    }
}

fn splits(dimension: u32) -> impl Iterator<Item = (u32, u32)> {
    (2..=dimension / 2).filter(move |d| dimension % d == 0).map(move |d| (d, dimension / d))
}

/// Number of profiles the search visits: for each split the four choices of
/// `(m1, m2)` give `floor((d1-m1)/2) * floor((d2-m2)/2)` pairs, and summing
/// over `m` collapses to `(d1 - 1)(d2 - 1)`.
pub fn closed_form_profile_count(dimension: u32) -> u64 {
    splits(dimension).map(|(d1, d2)| (d1 as u64 - 1) * (d2 as u64 - 1)).sum()
}

/// Visits every profile with `d1 d2 = dimension`, `2 <= d1, d2` and reports
/// those whose trivial bound reaches `threshold`.
pub fn tensor_search(dimension: u32, threshold: u32) -> TensorSearch {
    let mut search = TensorSearch {
        dimension,
        threshold,
        profiles_examined: 0,
        closed_form_count: closed_form_profile_count(dimension),
        max_trivial_bound: 0,
        feasible_count: 0,
        first_feasible: None,
    };
    for (d1, d2) in splits(dimension) {
        for m1 in 0..=1 {
            for m2 in 0..=1 {
                for s1 in 1..=(d1 - m1) / 2 {
                    for s2 in 1..=(d2 - m2) / 2 {
                        let profile = TensorProfile { d1, d2, m1, m2, s1, s2 };
                        debug_assert!(profile.is_valid());
                        search.profiles_examined += 1;
                        let bound = profile.trivial_bound();
                        search.max_trivial_bound = search.max_trivial_bound.max(bound);
                        if bound >= threshold {
                            search.feasible_count += 1;
                            search.first_feasible.get_or_insert(profile);
                        }
                    }
                }
            }
        }
    }
    search
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_profile_reaches_36() {
        let s = tensor_search(48, 36);
        assert!(s.is_infeasible());
        assert_eq!(s.profiles_examined, s.closed_form_count);
        assert_eq!(s.max_trivial_bound, 12);
    }

    #[test]
    fn threshold_one_is_feasible() {
        let s = tensor_search(48, 1);
        assert_eq!(s.first_feasible, Some(TensorProfile { d1: 2, d2: 24, m1: 0, m2: 0, s1: 1, s2: 1 }));
        assert_eq!(s.feasible_count, s.profiles_examined);
    }

    #[test]
    fn six_by_eight_split() {
        let best = tensor_search(48, 0);
        assert!(best.max_trivial_bound <= 13);
        let max_68 = (0..=1)
            .flat_map(|m1| (0..=1).map(move |m2| (m1, m2)))
            .map(|(m1, m2)| m1 * m2 + ((6 - m1) / 2) * ((8 - m2) / 2))
            .max()
            .unwrap();
        assert_eq!(max_68, 12);
    }

    #[test]
    fn prime_dimension_has_no_splits() {
        let s = tensor_search(47, 1);
        assert_eq!((s.profiles_examined, s.closed_form_count), (0, 0));
    }
}
