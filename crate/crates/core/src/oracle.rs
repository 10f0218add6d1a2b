//! A slow reference classifier that shares no code with the LP path.
//!
//! Threshold functions are found by sweeping integer weights in `[-B, B]^n`
//! and every threshold between consecutive values of `w·x`; the class
//! predicates are evaluated point by point. With `B = 8` the sweep finds all
//! threshold functions on up to four variables.

use std::collections::HashSet;

use crate::boolfn::BooleanFunction;

pub const DEFAULT_BOUND: i64 = 8;

pub struct Oracle {
    arity: usize,
    thresholds: HashSet<Vec<bool>>,
}

impl Oracle {
    pub fn new(arity: usize) -> Self {
        Self::with_bound(arity, DEFAULT_BOUND)
    }

    pub fn with_bound(arity: usize, bound: i64) -> Self {
        let points = 1usize << arity;
        let mut thresholds = HashSet::new();
        let mut w = vec![-bound; arity];
        loop {
            let values: Vec<i64> = (0..points)
                .map(|c| (0..arity).filter(|&i| c >> i & 1 == 1).map(|i| w[i]).sum())
                .collect();
            let mut cuts = values.clone();
            cuts.sort_unstable();
            cuts.dedup();
            cuts.push(cuts[0] - 1);
            for theta in cuts {
                thresholds.insert(values.iter().map(|&v| v > theta).collect());
            }
            // Odometer over the weight box.
            let mut i = 0;
            while i < arity && w[i] == bound {
                w[i] = -bound;
                i += 1;
            }
            if i == arity {
                break;
            }
            w[i] += 1;
        }
        Oracle { arity, thresholds }
    }

    /// Number of distinct threshold functions the sweep found.
    pub fn len(&self) -> usize {
        self.thresholds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thresholds.is_empty()
    }

    fn table(&self, f: &BooleanFunction) -> Vec<bool> {
        assert_eq!(f.arity(), self.arity, "oracle built for another arity");
        (0..f.num_points()).map(|c| f.get(c)).collect()
    }

    pub fn is_threshold(&self, f: &BooleanFunction) -> bool {
        self.thresholds.contains(&self.table(f))
    }

    pub fn is_semi_goldilocks(&self, f: &BooleanFunction) -> bool {
        let t = self.table(f);
        self.thresholds.contains(&t) && positive(&t) && small(&t)
    }

    pub fn is_goldilocks(&self, f: &BooleanFunction) -> bool {
        let t = self.table(f);
        self.thresholds.contains(&t) && positive(&t) && small(&t) && ample(&t)
    }
}

/// `x ⊆ y ⇒ t[x] ≤ t[y]` over all pairs.
fn positive(t: &[bool]) -> bool {
    (0..t.len()).all(|x| (0..t.len()).all(|y| x & y != x || !t[x] || t[y]))
}

fn small(t: &[bool]) -> bool {
    (0..t.len()).filter(|c| c.is_power_of_two()).all(|c| !t[c])
}

fn ample(t: &[bool]) -> bool {
    let full = t.len() - 1;
    (0..t.len()).all(|x| t[x] || t[full ^ x])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_all_small_threshold_functions() {
        let expected = [2, 4, 14, 104];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(Oracle::new(n).len(), e);
        }
    }

    #[test]
    fn classifies_examples() {
        let o = Oracle::new(3);
        let maj3: BooleanFunction = "00010111".parse().unwrap();
        assert!(o.is_goldilocks(&maj3));
        let o = Oracle::new(2);
        let and2: BooleanFunction = "0001".parse().unwrap();
        assert!(o.is_semi_goldilocks(&and2) && !o.is_goldilocks(&and2));
        assert!(!o.is_threshold(&"0110".parse().unwrap()));
    }
}
