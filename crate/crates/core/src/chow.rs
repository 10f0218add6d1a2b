//! Chow parameters, weak variables and canonical forms under variable
//! permutation.
//!
//! For `f` on `n` variables the Chow parameters are `m = |T_f|` and
//! `a_i = |T ∩ {x_i = 1}| + |F ∩ {x_i = 0}|`. They determine a threshold
//! function uniquely, which is what makes them usable as canonical keys.

use std::fmt;

use crate::boolfn::{BooleanFunction, Permutation, VAR_MASKS};
use crate::error::{Error, Result};
use crate::ltf;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChowParameters {
    pub m: u64,
    pub a: Vec<u64>,
}

impl ChowParameters {
    pub fn arity(&self) -> usize {
        self.a.len()
    }

    /// Indices with `a_i = 2^(n-1)`.
    pub fn weak_variables(&self) -> Vec<usize> {
        let n = self.arity();
        (0..n).filter(|&i| 2 * self.a[i] == 1 << n).collect()
    }

    pub fn degree(&self) -> usize {
        self.arity() - self.weak_variables().len()
    }

    /// Repeat counts of equal entries of the sorted `a`-vector.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut sorted = self.a.clone();
        sorted.sort_unstable_by(|x, y| y.cmp(x));
        run_lengths(&sorted)
    }
}

/// Serialized as `m;a_1,a_2,...,a_n`.
impl fmt::Display for ChowParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.m)?;
        for (i, a) in self.a.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl serde::Serialize for ChowParameters {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn run_lengths(sorted: &[u64]) -> Vec<usize> {
    let mut runs: Vec<usize> = Vec::new();
    for (k, v) in sorted.iter().enumerate() {
        if k > 0 && sorted[k - 1] == *v {
            *runs.last_mut().unwrap() += 1;
        } else {
            runs.push(1);
        }
    }
    runs
}

pub fn chow(f: &BooleanFunction) -> ChowParameters {
    let n = f.arity();
    let words = f.words();
    let full = if n < 6 {
        (1u64 << (1 << n)) - 1
    } else {
        u64::MAX
    };
    let a = (0..n)
        .map(|i| {
            if i < 6 {
                let mask = VAR_MASKS[i] & full;
                words
                    .iter()
                    .map(|&w| u64::from((w & mask).count_ones() + (!w & !mask & full).count_ones()))
                    .sum()
            } else {
                let stride = 1 << (i - 6);
                words
                    .iter()
                    .enumerate()
                    .map(|(j, &w)| {
                        if j & stride != 0 {
                            u64::from(w.count_ones())
                        } else {
                            u64::from((!w).count_ones())
                        }
                    })
                    .sum()
            }
        })
        .collect();
    ChowParameters {
        m: f.true_count(),
        a,
    }
}

pub fn weak_variables(f: &BooleanFunction) -> Vec<usize> {
    chow(f).weak_variables()
}

pub fn degree(f: &BooleanFunction) -> usize {
    chow(f).degree()
}

/// A function permuted so that its `a`-vector is nonincreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub representative: BooleanFunction,
    /// `original.permute(&sorting_permutation) == representative`.
    pub sorting_permutation: Permutation,
    pub multiplicities: Vec<usize>,
}

/// Canonical representative of the permutation orbit of a threshold function.
pub fn canonicalize(f: &BooleanFunction) -> Result<CanonicalForm> {
    if !ltf::is_threshold(f) {
        return Err(Error::NotThreshold);
    }
    Ok(canonicalize_unchecked(f))
}

/// Sorts variables by `a_i` descending, ties by original index. Only a
/// canonical form when `f` is a threshold function.
pub(crate) fn canonicalize_unchecked(f: &BooleanFunction) -> CanonicalForm {
    let params = chow(f);
    let n = f.arity();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| params.a[j].cmp(&params.a[i]).then(i.cmp(&j)));
    // Variable order[k] moves to position k.
    let sorting_permutation = Permutation::new(order.clone()).unwrap().inverse();
    let representative = f
        .permute(&sorting_permutation)
        .expect("permutation has the function's arity");
    let sorted: Vec<u64> = order.iter().map(|&i| params.a[i]).collect();
    CanonicalForm {
        representative,
        sorting_permutation,
        multiplicities: run_lengths(&sorted),
    }
}

/// Size of the orbit of a threshold function under variable permutation:
/// `n! / Π m_j!` over the multiplicities `m_j` of its Chow entries.
pub fn orbit_size(f: &BooleanFunction) -> Result<u64> {
    if !ltf::is_threshold(f) {
        return Err(Error::NotThreshold);
    }
    Ok(orbit_size_from_chow(&chow(f)))
}

pub(crate) fn orbit_size_from_chow(params: &ChowParameters) -> u64 {
    let factorial = |k: usize| (1..=k as u64).product::<u64>();
    params
        .multiplicities()
        .iter()
        .fold(factorial(params.arity()), |acc, &m| acc / factorial(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(s: &str) -> BooleanFunction {
        s.parse().unwrap()
    }

    /// Direct count from the definition, one cube point at a time.
    fn chow_by_definition(f: &BooleanFunction) -> ChowParameters {
        let n = f.arity();
        let mut a = vec![0; n];
        let mut m = 0;
        for c in 0..f.num_points() {
            let v = f.get(c);
            m += u64::from(v);
            for (i, ai) in a.iter_mut().enumerate() {
                let xi = c >> i & 1 == 1;
                if xi == v {
                    *ai += 1;
                }
            }
        }
        ChowParameters { m, a }
    }

    #[test]
    fn chow_examples() {
        assert_eq!(
            chow(&bf("0001")),
            ChowParameters {
                m: 1,
                a: vec![3, 3]
            }
        );
        assert_eq!(
            chow(&bf("00010111")),
            ChowParameters {
                m: 4,
                a: vec![6, 6, 6]
            }
        );
        assert_eq!(
            chow(&bf("0000")),
            ChowParameters {
                m: 0,
                a: vec![2, 2]
            }
        );
        assert_eq!(chow(&bf("0101")), chow_by_definition(&bf("0101")));
        assert_eq!(
            chow(&bf("0101")),
            ChowParameters {
                m: 2,
                a: vec![4, 2]
            }
        );
    }

    #[test]
    fn chow_matches_definition_on_wide_tables() {
        for n in [6, 7, 9] {
            let f = BooleanFunction::from_fn(n, |c| (c * 2654435761) % 11 < 4).unwrap();
            assert_eq!(chow(&f), chow_by_definition(&f));
        }
    }

    #[test]
    fn weak_and_degree_examples() {
        assert_eq!(weak_variables(&bf("0000")), vec![0, 1]);
        assert_eq!(degree(&bf("0000")), 0);
        assert!(weak_variables(&bf("00010111")).is_empty());
        assert_eq!(degree(&bf("00010111")), 3);
        assert_eq!(weak_variables(&bf("0101")), vec![1]);
        assert_eq!(degree(&bf("0101")), 1);
    }

    #[test]
    fn canonicalize_examples() {
        let c = canonicalize(&bf("0011")).unwrap();
        assert_eq!(c.representative, bf("0101"));
        let maj3 = bf("00010111");
        let c = canonicalize(&maj3).unwrap();
        assert_eq!(c.representative, maj3);
        assert_eq!(c.sorting_permutation, Permutation::identity(3));
        assert_eq!(c.multiplicities, vec![3]);
        assert_eq!(canonicalize(&bf("0110")), Err(Error::NotThreshold));
    }

    #[test]
    fn canonicalize_sorts_chow() {
        // x_3 ∧ (x_1 ∨ x_2): a = (5, 5, 7).
        let f = BooleanFunction::from_fn(3, |c| c & 4 != 0 && c & 3 != 0).unwrap();
        assert_eq!(chow(&f).a, vec![5, 5, 7]);
        let c = canonicalize(&f).unwrap();
        assert_eq!(chow(&c.representative).a, vec![7, 5, 5]);
        assert_eq!(f.permute(&c.sorting_permutation).unwrap(), c.representative);
        assert_eq!(c.multiplicities, vec![1, 2]);
        assert_eq!(orbit_size(&f).unwrap(), 3);
    }

    #[test]
    fn orbit_size_examples() {
        assert_eq!(orbit_size(&bf("00010111")).unwrap(), 1);
        assert_eq!(orbit_size(&bf("0001")).unwrap(), 1);
        assert_eq!(orbit_size(&bf("0101")).unwrap(), 2);
        assert_eq!(orbit_size(&bf("0110")), Err(Error::NotThreshold));
    }

    #[test]
    fn display_format() {
        assert_eq!(chow(&bf("00010111")).to_string(), "4;6,6,6");
        assert_eq!(chow(&BooleanFunction::zero(0).unwrap()).to_string(), "0;");
    }
}
