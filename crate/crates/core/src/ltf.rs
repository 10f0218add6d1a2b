//! Linear threshold functions: exact realizations, asummability witnesses,
//! amplification and the correspondence with nondegenerate positive LTFs.
//!
//! A realization `(w, θ)` realizes `f` when `f(x) = 1 ⇔ w·x > θ`. Strict
//! inequalities are closed by scaling: any rational realization can be
//! rescaled so that true points clear the threshold by at least one, so the
//! solver looks for
//!
//! ```text
//! w·x ≥ θ + 1  (x ∈ T)      w·x ≤ θ  (x ∈ F)
//! w_i ≥ 1      (positive)   w_i ≤ θ  (small)   Σw ≥ 2θ + 1  (ample)
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;

use crate::boolfn::BooleanFunction;
use crate::chow;
use crate::error::{Error, Result};
use crate::lp::{self, FarkasCertificate, Feasibility, LinearSystem};

/// Side constraints a realization must satisfy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Constraints {
    pub positive: bool,
    pub small: bool,
    pub ample: bool,
}

impl Constraints {
    pub const NONE: Constraints = Constraints {
        positive: false,
        small: false,
        ample: false,
    };
    pub const SEMI_GOLDILOCKS: Constraints = Constraints {
        positive: true,
        small: true,
        ample: false,
    };
    pub const GOLDILOCKS: Constraints = Constraints {
        positive: true,
        small: true,
        ample: true,
    };
}

/// Exact weights and threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub weights: Vec<BigRational>,
    pub threshold: BigRational,
}

impl Realization {
    pub fn new(weights: Vec<BigRational>, threshold: BigRational) -> Self {
        Realization { weights, threshold }
    }

    pub fn from_integers(weights: &[i64], threshold: i64) -> Self {
        Realization {
            weights: weights.iter().map(|&w| int(w)).collect(),
            threshold: int(threshold),
        }
    }

    pub fn arity(&self) -> usize {
        self.weights.len()
    }

    /// `w·x` for every code, built up one bit at a time.
    pub fn values(&self) -> Vec<BigRational> {
        let n = self.arity();
        let mut out = Vec::with_capacity(1 << n);
        out.push(BigRational::zero());
        for c in 1..1usize << n {
            let low = c.trailing_zeros() as usize;
            let v = &out[c & (c - 1)] + &self.weights[low];
            out.push(v);
        }
        out
    }

    /// The function `x ↦ [w·x > θ]`.
    pub fn function(&self) -> Result<BooleanFunction> {
        let values = self.values();
        BooleanFunction::from_fn(self.arity(), |c| values[c] > self.threshold)
    }

    pub fn realizes(&self, f: &BooleanFunction) -> bool {
        self.arity() == f.arity()
            && self
                .values()
                .iter()
                .enumerate()
                .all(|(c, v)| (*v > self.threshold) == f.get(c))
    }

    pub fn is_positive(&self) -> bool {
        self.weights.iter().all(|w| w.is_positive())
    }

    pub fn is_small(&self) -> bool {
        self.weights.iter().all(|w| *w <= self.threshold)
    }

    pub fn is_ample(&self) -> bool {
        self.weight_sum() > &self.threshold * BigInt::from(2)
    }

    fn weight_sum(&self) -> BigRational {
        self.weights
            .iter()
            .fold(BigRational::zero(), |acc, w| acc + w)
    }
}

/// Weights and threshold as `"p/q"` strings.
impl serde::Serialize for Realization {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Realization", 2)?;
        let weights: Vec<String> = self.weights.iter().map(fraction_string).collect();
        st.serialize_field("weights", &weights)?;
        st.serialize_field("threshold", &fraction_string(&self.threshold))?;
        st.end()
    }
}

/// Always `p/q`, including integers.
pub fn fraction_string(v: &BigRational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Parses `p/q` or an integer.
pub fn parse_fraction(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let parse = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("invalid rational {text:?}")))
    };
    match text.split_once('/') {
        Some((p, q)) => {
            let q = parse(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(BigRational::new(parse(p)?, q))
        }
        None => Ok(BigRational::from_integer(parse(text)?)),
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Nonnegative integers `c_x` on the cube with `Σ_T c_x = Σ_F c_x > 0` and
/// `Σ_T c_x x = Σ_F c_x x`. Such a vector proves `f` is not a threshold
/// function.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AsummabilityWitness {
    pub counts: Vec<u64>,
}

impl AsummabilityWitness {
    pub fn verify(&self, f: &BooleanFunction) -> bool {
        let n = f.arity();
        if self.counts.len() != f.num_points() {
            return false;
        }
        let mut total = 0i128;
        let mut mass = 0i128;
        let mut sums = vec![0i128; n];
        for (c, &k) in self.counts.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let sign = if f.get(c) { 1 } else { -1 };
            let k = i128::from(k) * sign;
            total += k;
            mass += k.abs();
            for (i, s) in sums.iter_mut().enumerate() {
                if c >> i & 1 == 1 {
                    *s += k;
                }
            }
        }
        mass > 0 && total == 0 && sums.iter().all(|&s| s == 0)
    }
}

/// Why no realization exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Infeasible {
    /// Farkas multipliers over the rows of the system (cube points in code
    /// order, then side constraints).
    pub certificate: FarkasCertificate,
    /// Present for the unconstrained problem.
    pub witness: Option<AsummabilityWitness>,
}

/// The threshold system over the whole cube, one row per point in code
/// order, followed by the side-constraint rows.
pub fn threshold_system(f: &BooleanFunction, constraints: Constraints) -> LinearSystem {
    margin_system(f, constraints, 0)
}

/// As [`threshold_system`], with false points held `false_margin` below the
/// threshold.
fn margin_system(f: &BooleanFunction, constraints: Constraints, false_margin: i64) -> LinearSystem {
    let n = f.arity();
    let mut system = LinearSystem::new(n + 1);
    for c in 0..f.num_points() {
        let rhs = if f.get(c) { -1 } else { -false_margin };
        system.push(point_row(n, c, f.get(c)), rhs);
    }
    push_side_constraints(&mut system, n, constraints);
    system
}

fn point_row(n: usize, code: usize, truth: bool) -> Vec<i64> {
    let s = if truth { -1 } else { 1 };
    let mut row: Vec<i64> = (0..n).map(|i| s * (code >> i & 1) as i64).collect();
    row.push(-s);
    row
}

fn push_side_constraints(system: &mut LinearSystem, n: usize, constraints: Constraints) {
    if constraints.positive {
        for i in 0..n {
            let mut row = vec![0; n + 1];
            row[i] = -1;
            system.push(row, -1);
        }
    }
    if constraints.small {
        for i in 0..n {
            let mut row = vec![0; n + 1];
            row[i] = 1;
            row[n] = -1;
            system.push(row, 0);
        }
    }
    if constraints.ample {
        let mut row = vec![-1; n + 1];
        row[n] = 2;
        system.push(row, -1);
    }
}

/// For a positive function it is enough to separate the minimal true points
/// from the maximal false points with nonnegative weights.
fn positive_system(f: &BooleanFunction) -> LinearSystem {
    let n = f.arity();
    let mut system = LinearSystem::new(n + 1);
    for c in 0..f.num_points() {
        let truth = f.get(c);
        let extreme = if truth {
            (0..n).all(|i| c >> i & 1 == 0 || !f.get(c ^ (1 << i)))
        } else {
            (0..n).all(|i| c >> i & 1 == 1 || f.get(c | (1 << i)))
        };
        if extreme {
            system.push(point_row(n, c, truth), if truth { -1 } else { 0 });
        }
    }
    for i in 0..n {
        let mut row = vec![0; n + 1];
        row[i] = -1;
        system.push(row, 0);
    }
    system
}

fn realization_from(z: Vec<BigRational>) -> Realization {
    let mut weights = z;
    let threshold = weights.pop().expect("threshold variable");
    Realization { weights, threshold }
}

/// Searches for an exact realization of `f` meeting `constraints`.
pub fn find_realization(
    f: &BooleanFunction,
    constraints: Constraints,
) -> std::result::Result<Realization, Infeasible> {
    let system = threshold_system(f, constraints);
    match lp::solve(&system) {
        Feasibility::Feasible(z) => {
            let r = realization_from(z);
            debug_assert!(r.realizes(f));
            Ok(r)
        }
        Feasibility::Infeasible(certificate) => {
            let witness = (constraints == Constraints::NONE).then(|| AsummabilityWitness {
                counts: certificate.multipliers[..f.num_points()]
                    .iter()
                    .map(|m| lp::biguint_to_u64(m).expect("witness entries fit in u64"))
                    .collect(),
            });
            Err(Infeasible {
                certificate,
                witness,
            })
        }
    }
}

/// A realization with no point of the cube on the hyperplane `w·x = θ`, so
/// that small perturbations of it realize the same function. Exists whenever
/// [`find_realization`] succeeds: move `θ` halfway towards the largest false
/// value.
pub fn find_strict_realization(
    f: &BooleanFunction,
    constraints: Constraints,
) -> Option<Realization> {
    match lp::solve(&margin_system(f, constraints, 1)) {
        Feasibility::Feasible(z) => Some(realization_from(z)),
        Feasibility::Infeasible(_) => None,
    }
}

pub fn is_threshold(f: &BooleanFunction) -> bool {
    if f.is_positive() {
        lp::solve(&positive_system(f)).is_feasible()
    } else {
        lp::solve(&threshold_system(f, Constraints::NONE)).is_feasible()
    }
}

/// Lowers the threshold of a realization of an ample function to the largest
/// value `w·x` takes on the false set, which makes it an ample realization of
/// the same function.
pub fn amplify(r: &Realization, f: &BooleanFunction) -> Result<Realization> {
    if !f.is_ample() {
        return Err(Error::NotAmple);
    }
    if !r.realizes(f) {
        return Err(Error::InvalidRealization);
    }
    if r.is_ample() {
        return Ok(r.clone());
    }
    let values = r.values();
    let threshold = match f.false_points().map(|c| &values[c]).max() {
        Some(max) => max.clone(),
        // const1: drop below every value, which is ample since Σw ≥ min w·x.
        None => values.iter().min().expect("nonempty cube").clone() - BigRational::one(),
    };
    Ok(Realization {
        weights: r.weights.clone(),
        threshold,
    })
}

fn is_semi_goldilocks(f: &BooleanFunction) -> bool {
    f.is_positive() && f.is_small() && is_threshold(f)
}

/// Sends a Semi-Goldilocks function to a nondegenerate positive threshold
/// function: points touching a weak variable become true.
pub fn phi_nondegenerate(f: &BooleanFunction) -> Result<BooleanFunction> {
    if !is_semi_goldilocks(f) {
        return Err(Error::Class("expected a Semi-Goldilocks function".into()));
    }
    let weak = chow::weak_variables(f)
        .into_iter()
        .fold(0usize, |m, i| m | 1 << i);
    BooleanFunction::from_fn(f.arity(), |c| c & weak != 0 || f.get(c))
}

/// Inverse of [`phi_nondegenerate`]: zero out the coordinates whose singleton
/// is true.
pub fn phi_inverse(h: &BooleanFunction) -> Result<BooleanFunction> {
    if !h.is_positive() || chow::degree(h) != h.arity() || !is_threshold(h) {
        return Err(Error::Class(
            "expected a nondegenerate positive threshold function".into(),
        ));
    }
    let large = (0..h.arity())
        .filter(|&i| h.get(1 << i))
        .fold(0usize, |m, i| m | 1 << i);
    BooleanFunction::from_fn(h.arity(), |c| h.get(c & !large))
}
