//! Classification against the Goldilocks criteria, with checkable
//! certificates for every failure.
//!
//! The combinatorial tests are the authoritative ones:
//!
//! * positive: `f(x) ≤ f(y)` whenever `x ≤ y`;
//! * small: `f(ê_i) = 0` for every `i`;
//! * ample: `f(x) = 1` or `f(x̄) = 1` for every `x`.
//!
//! A function is Semi-Goldilocks when it is a positive, small threshold
//! function and Goldilocks when it is also ample.

use serde::Serialize;

use crate::boolfn::{BooleanFunction, Point};
use crate::chow::{self, ChowParameters};
use crate::ltf::{self, AsummabilityWitness, Constraints, Realization};

/// Evidence that a function misses a class. Indices are zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    /// Not a threshold function.
    NotSeparable { witness: AsummabilityWitness },
    /// `x ≤ y` but `f(x) = 1`, `f(y) = 0`.
    NotPositive { x: Point, y: Point },
    /// `f(ê_i) = 1`.
    NotSmall { index: usize },
    /// `f(x) = 0 = f(x̄)`.
    NotAmple { x: Point },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub is_ltf: bool,
    pub positive: bool,
    pub small: bool,
    pub ample: bool,
    pub semi_goldilocks: bool,
    pub goldilocks: bool,
    pub degree: usize,
    pub chow: ChowParameters,
    /// Present exactly for Semi-Goldilocks functions; ample as well when the
    /// function is Goldilocks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub realization: Option<Realization>,
    /// Present exactly when the function is not Goldilocks. The most basic
    /// failure is reported: separability, then positivity, smallness and
    /// ampleness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

pub fn classify(f: &BooleanFunction) -> ClassReport {
    let small = f.is_small();
    let positive = f.is_positive();
    let separation = ltf::find_realization(f, Constraints::NONE);
    let is_ltf = separation.is_ok();
    let ample = f.is_ample();
    let semi_goldilocks = is_ltf && positive && small;
    let goldilocks = semi_goldilocks && ample;

    let realization = semi_goldilocks.then(|| {
        let constraints = if goldilocks {
            Constraints::GOLDILOCKS
        } else {
            Constraints::SEMI_GOLDILOCKS
        };
        ltf::find_realization(f, constraints)
            .expect("Semi-Goldilocks functions have constrained realizations")
    });

    let certificate = if goldilocks {
        None
    } else if let Err(infeasible) = separation {
        Some(Certificate::NotSeparable {
            witness: infeasible
                .witness
                .expect("unconstrained systems yield witnesses"),
        })
    } else if !positive {
        positivity_witness(f).map(|(x, y)| Certificate::NotPositive { x, y })
    } else if !small {
        smallness_witness(f).map(|index| Certificate::NotSmall { index })
    } else {
        ampleness_witness(f).map(|x| Certificate::NotAmple { x })
    };

    ClassReport {
        is_ltf,
        positive,
        small,
        ample,
        semi_goldilocks,
        goldilocks,
        degree: chow::degree(f),
        chow: chow::chow(f),
        realization,
        certificate,
    }
}

/// Smallest `x`, then smallest `y ⊇ x`, with `f(x) = 1 > f(y)`.
fn positivity_witness(f: &BooleanFunction) -> Option<(Point, Point)> {
    let n = f.arity();
    f.true_points().find_map(|x| {
        (x..f.num_points())
            .find(|&y| y & x == x && !f.get(y))
            .map(|y| (point(n, x), point(n, y)))
    })
}

fn smallness_witness(f: &BooleanFunction) -> Option<usize> {
    (0..f.arity()).find(|&i| f.get(1 << i))
}

fn ampleness_witness(f: &BooleanFunction) -> Option<Point> {
    let full = f.num_points() - 1;
    f.false_points()
        .find(|&x| !f.get(full ^ x))
        .map(|x| point(f.arity(), x))
}

fn point(n: usize, code: usize) -> Point {
    Point::new(n, code).expect("code lies in the cube")
}

pub fn verify_certificate(f: &BooleanFunction, certificate: &Certificate) -> bool {
    let n = f.arity();
    match certificate {
        Certificate::NotSeparable { witness } => witness.verify(f),
        Certificate::NotPositive { x, y } => {
            x.arity() == n && y.arity() == n && x.le(y) && f.get(x.code()) && !f.get(y.code())
        }
        Certificate::NotSmall { index } => *index < n && f.get(1 << index),
        Certificate::NotAmple { x } => {
            x.arity() == n && !f.get(x.code()) && !f.get(x.negation().code())
        }
    }
}

pub fn is_semi_goldilocks(f: &BooleanFunction) -> bool {
    f.is_small() && f.is_positive() && ltf::is_threshold(f)
}

pub fn is_goldilocks(f: &BooleanFunction) -> bool {
    f.is_ample() && is_semi_goldilocks(f)
}

/// Turns a threshold question into a Semi-Goldilocks question.
///
/// Decreasing variables (`a_i < 2^(n-1)`) are negated to get `f⁺`, then every
/// coordinate whose singleton is true under `f⁺` is zeroed. The result is
/// positive and small, and is a threshold function exactly when `f` is.
///
/// Two inputs need care. If `f⁺` is not positive then `f` cannot be a
/// threshold function, and the fixed non-threshold function
/// `x_0 x_1 ∨ x_2 x_3` (on at least four variables) is returned. If `f⁺` is
/// constant true, zeroing leaves it constant true, which is not small; the
/// constant-false function is returned instead.
pub fn reduce_thres_to_sgold(f: &BooleanFunction) -> BooleanFunction {
    let n = f.arity();
    let params = chow::chow(f);
    let u = (0..n)
        .filter(|&i| 2 * params.a[i] < 1 << n)
        .fold(0usize, |m, i| m | 1 << i);
    let plus = f.u_complement(u).expect("mask within arity");
    if !plus.is_positive() {
        return non_threshold_gadget(n);
    }
    if n > 0 && plus.get(0) {
        return BooleanFunction::zero(n).expect("arity already valid");
    }
    let large = (0..n)
        .filter(|&i| plus.get(1 << i))
        .fold(0usize, |m, i| m | 1 << i);
    BooleanFunction::from_fn(n, |c| plus.get(c & !large)).expect("arity already valid")
}

/// `x_0 x_1 ∨ x_2 x_3`: positive, small and not a threshold function.
pub fn non_threshold_gadget(n: usize) -> BooleanFunction {
    BooleanFunction::from_fn(n.max(4), |c| c & 3 == 3 || c & 12 == 12)
        .expect("gadget arity within range")
}

/// `Gold(f) ∨ Gold(f^d)`.
///
/// This is not the same as Semi-Goldilocks membership: `x_0 ∧ x_1` is
/// Semi-Goldilocks while neither it nor its dual is Goldilocks. A true answer
/// does guarantee that `f` or `f^d` is Semi-Goldilocks.
pub fn reduce_sgold_to_gold(f: &BooleanFunction) -> bool {
    is_goldilocks(f) || is_goldilocks(&f.dual())
}
