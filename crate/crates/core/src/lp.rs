//! Exact feasibility for systems of linear inequalities `A z ≤ b` with free
//! variables and small integer data.
//!
//! The solver works on the Farkas dual
//!
//! ```text
//! minimize  bᵀy   subject to  Aᵀy = 0,  1ᵀy + s = 1,  y, s ≥ 0
//! ```
//!
//! which is always feasible and bounded. A negative optimum yields `y`, a
//! Farkas certificate of infeasibility. A zero optimum yields dual prices
//! that form a solution of `A z ≤ b`. The tableau therefore has one row per
//! variable of the original system rather than one per inequality, which
//! suits threshold systems (`n + 1` unknowns, `2^n` inequalities).
//!
//! Pivoting is fraction-free (Bareiss) so every entry stays an integer, and
//! Bland's rule prevents cycling. Arithmetic runs in `i128` with overflow
//! checks and restarts in arbitrary precision if a check trips.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// One inequality `coeffs · z ≤ rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearSystem {
    num_vars: usize,
    rows: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(num_vars: usize) -> Self {
        LinearSystem {
            num_vars,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, coeffs: Vec<i64>, rhs: i64) {
        assert_eq!(coeffs.len(), self.num_vars, "constraint width");
        self.rows.push(Constraint { coeffs, rhs });
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn rows(&self) -> &[Constraint] {
        &self.rows
    }

    /// Exact check of `A z ≤ b`.
    pub fn is_satisfied_by(&self, z: &[BigRational]) -> bool {
        z.len() == self.num_vars
            && self.rows.iter().all(|row| {
                let lhs = row
                    .coeffs
                    .iter()
                    .zip(z)
                    .filter(|(c, _)| **c != 0)
                    .fold(BigRational::zero(), |acc, (&c, v)| {
                        acc + v * BigInt::from(c)
                    });
                lhs <= BigRational::from_integer(BigInt::from(row.rhs))
            })
    }
}

/// Nonnegative integer multipliers `y`, one per row, with `yᵀA = 0` and
/// `yᵀb < 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub multipliers: Vec<BigUint>,
}

impl FarkasCertificate {
    pub fn verify(&self, system: &LinearSystem) -> bool {
        if self.multipliers.len() != system.rows.len() {
            return false;
        }
        let mut combination = vec![BigInt::zero(); system.num_vars];
        let mut rhs = BigInt::zero();
        for (y, row) in self.multipliers.iter().zip(&system.rows) {
            if y.is_zero() {
                continue;
            }
            let y = BigInt::from(y.clone());
            for (acc, &c) in combination.iter_mut().zip(&row.coeffs) {
                *acc += &y * c;
            }
            rhs += &y * row.rhs;
        }
        combination.iter().all(Zero::is_zero) && rhs.is_negative()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<BigRational>),
    Infeasible(FarkasCertificate),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Decides feasibility of `A z ≤ b` exactly. The returned solution or
/// certificate is verified before it is handed back.
pub fn solve(system: &LinearSystem) -> Feasibility {
    let outcome = Tableau::<i128>::new(system)
        .and_then(Tableau::run)
        .unwrap_or_else(|| {
            Tableau::<BigInt>::new(system)
                .and_then(Tableau::run)
                .expect("arbitrary-precision simplex cannot overflow")
        });
    match &outcome {
        Feasibility::Feasible(z) => assert!(
            system.is_satisfied_by(z),
            "simplex returned a point violating the system"
        ),
        Feasibility::Infeasible(cert) => {
            assert!(
                cert.verify(system),
                "simplex returned an invalid Farkas certificate"
            )
        }
    }
    outcome
}

trait Scalar: Clone {
    fn from_i64(v: i64) -> Self;
    fn signum(&self) -> i8;
    /// `(a·b − c·d) / den`, exact.
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self, den: &Self) -> Option<Self>;
    /// Compares `a·b` with `c·d`.
    fn cmp_products(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Ordering>;
    fn to_bigint(&self) -> BigInt;
}

impl Scalar for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }

    fn signum(&self) -> i8 {
        i128::signum(*self) as i8
    }

    fn cross(a: &Self, b: &Self, c: &Self, d: &Self, den: &Self) -> Option<Self> {
        let num = a.checked_mul(*b)?.checked_sub(c.checked_mul(*d)?)?;
        if num % den != 0 {
            return None;
        }
        Some(num / den)
    }

    fn cmp_products(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Ordering> {
        Some(a.checked_mul(*b)?.cmp(&c.checked_mul(*d)?))
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn signum(&self) -> i8 {
        match self.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    fn cross(a: &Self, b: &Self, c: &Self, d: &Self, den: &Self) -> Option<Self> {
        let (q, r) = (a * b - c * d).div_rem(den);
        debug_assert!(r.is_zero(), "inexact fraction-free division");
        Some(q)
    }

    fn cmp_products(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Ordering> {
        Some((a * b).cmp(&(c * d)))
    }

    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Integer tableau; the true entries are `entry / den`.
struct Tableau<S> {
    rows: Vec<Vec<S>>,
    rhs: Vec<S>,
    cost: Vec<S>,
    cost_rhs: S,
    den: S,
    basis: Vec<usize>,
    /// Number of Farkas columns `y`.
    num_y: usize,
    /// Number of variables of the primal system.
    num_vars: usize,
}

impl<S: Scalar> Tableau<S> {
    fn new(system: &LinearSystem) -> Option<Self> {
        let k = system.num_vars;
        let num_y = system.rows.len();
        let width = num_y + 1 + k;
        let zero = S::from_i64(0);
        let one = S::from_i64(1);
        let mut rows = vec![vec![zero.clone(); width]; k + 1];
        for (j, row) in system.rows.iter().enumerate() {
            for (r, &c) in row.coeffs.iter().enumerate() {
                rows[r][j] = S::from_i64(c);
            }
            rows[k][j] = one.clone();
        }
        rows[k][num_y] = one.clone();
        for (r, row) in rows.iter_mut().enumerate().take(k) {
            row[num_y + 1 + r] = one.clone();
        }
        let mut rhs = vec![zero.clone(); k + 1];
        rhs[k] = one.clone();
        let mut cost = vec![zero.clone(); width];
        for (j, row) in system.rows.iter().enumerate() {
            cost[j] = S::from_i64(row.rhs);
        }
        let mut basis: Vec<usize> = (0..k).map(|r| num_y + 1 + r).collect();
        basis.push(num_y);
        Some(Tableau {
            rows,
            rhs,
            cost,
            cost_rhs: zero,
            den: one,
            basis,
            num_y,
            num_vars: k,
        })
    }

    fn is_artificial(&self, col: usize) -> bool {
        col > self.num_y
    }

    fn run(mut self) -> Option<Feasibility> {
        let den_sign = |t: &Self| t.den.signum();
        loop {
            let ds = den_sign(&self);
            // Bland: lowest-index improving column among y and s.
            let Some(q) = (0..=self.num_y).find(|&j| self.cost[j].signum() * ds < 0) else {
                return Some(self.extract());
            };
            let p = match self.leaving_row(q)? {
                Some(p) => p,
                None => unreachable!("Farkas dual is bounded"),
            };
            self.pivot(p, q)?;
        }
    }

    /// Artificial rows with a nonzero entry leave first (their value is zero
    /// so the pivot keeps feasibility whatever the sign); otherwise the
    /// minimum ratio test with ties broken by lowest basic index.
    fn leaving_row(&self, q: usize) -> Option<Option<usize>> {
        if let Some(p) = (0..self.rows.len())
            .find(|&r| self.is_artificial(self.basis[r]) && self.rows[r][q].signum() != 0)
        {
            return Some(Some(p));
        }
        let ds = self.den.signum();
        let mut best: Option<usize> = None;
        for r in 0..self.rows.len() {
            if self.is_artificial(self.basis[r]) || self.rows[r][q].signum() * ds <= 0 {
                continue;
            }
            best = match best {
                None => Some(r),
                Some(b) => {
                    // rhs_r / t_r vs rhs_b / t_b; t_r·t_b > 0 since both
                    // have the sign of den.
                    let ord = S::cmp_products(
                        &self.rhs[r],
                        &self.rows[b][q],
                        &self.rhs[b],
                        &self.rows[r][q],
                    )?;
                    match ord {
                        Ordering::Less => Some(r),
                        Ordering::Equal if self.basis[r] < self.basis[b] => Some(r),
                        _ => Some(b),
                    }
                }
            };
        }
        Some(best)
    }

    fn pivot(&mut self, p: usize, q: usize) -> Option<()> {
        let piv = self.rows[p][q].clone();
        let den = self.den.clone();
        let pivot_row = self.rows[p].clone();
        let pivot_rhs = self.rhs[p].clone();
        for r in 0..self.rows.len() {
            if r == p {
                continue;
            }
            let factor = self.rows[r][q].clone();
            let row = &mut self.rows[r];
            for (entry, pe) in row.iter_mut().zip(&pivot_row) {
                *entry = S::cross(&piv, entry, &factor, pe, &den)?;
            }
            self.rhs[r] = S::cross(&piv, &self.rhs[r], &factor, &pivot_rhs, &den)?;
        }
        let factor = self.cost[q].clone();
        for (entry, pe) in self.cost.iter_mut().zip(&pivot_row) {
            *entry = S::cross(&piv, entry, &factor, pe, &den)?;
        }
        self.cost_rhs = S::cross(&piv, &self.cost_rhs, &factor, &pivot_rhs, &den)?;
        self.den = piv;
        self.basis[p] = q;
        Some(())
    }

    fn extract(&self) -> Feasibility {
        let den = self.den.to_bigint();
        // Optimal value is −cost_rhs / den.
        let value_sign = -self.cost_rhs.signum() * self.den.signum();
        if value_sign < 0 {
            let sign = BigInt::from(self.den.signum());
            let mut y = vec![BigInt::zero(); self.num_y];
            for (r, &b) in self.basis.iter().enumerate() {
                if b < self.num_y {
                    y[b] = self.rhs[r].to_bigint() * &sign;
                }
            }
            let g = y.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
            let multipliers = y
                .into_iter()
                .map(|v| {
                    (v / &g)
                        .to_biguint()
                        .expect("basic solution is nonnegative")
                })
                .collect();
            Feasibility::Infeasible(FarkasCertificate { multipliers })
        } else {
            // Dual prices π_r = −(reduced cost of artificial r).
            let z = (0..self.num_vars)
                .map(|r| {
                    let c = self.cost[self.num_y + 1 + r].to_bigint();
                    BigRational::new(-c, den.clone())
                })
                .collect();
            Feasibility::Feasible(z)
        }
    }
}

/// Clears a rational vector to the smallest integer multiple, returning the
/// integers and the common denominator.
pub fn common_denominator(values: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let lcm = values.iter().fold(BigInt::from(1), |l, v| l.lcm(v.denom()));
    let ints = values
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect();
    (ints, lcm)
}

/// Lossless conversion for small certificates.
pub(crate) fn biguint_to_u64(v: &BigUint) -> Option<u64> {
    v.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn system(rows: &[(&[i64], i64)]) -> LinearSystem {
        let mut s = LinearSystem::new(rows[0].0.len());
        for (c, b) in rows {
            s.push(c.to_vec(), *b);
        }
        s
    }

    #[test]
    fn trivial_feasible() {
        // z ≤ 3, −z ≤ −1.
        let s = system(&[(&[1], 3), (&[-1], -1)]);
        match solve(&s) {
            Feasibility::Feasible(z) => assert!(s.is_satisfied_by(&z)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn trivial_infeasible() {
        // z ≤ 0 and −z ≤ −1.
        let s = system(&[(&[1], 0), (&[-1], -1)]);
        match solve(&s) {
            Feasibility::Infeasible(c) => {
                assert!(c.verify(&s));
                assert_eq!(c.multipliers, vec![BigUint::from(1u8), BigUint::from(1u8)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_system_is_feasible() {
        let s = LinearSystem::new(2);
        assert!(solve(&s).is_feasible());
    }

    #[test]
    fn zero_row_with_negative_rhs() {
        let s = system(&[(&[0, 0], -1)]);
        assert!(!solve(&s).is_feasible());
    }

    #[test]
    fn degenerate_triangle() {
        // x ≥ 1, y ≥ 1, x + y ≤ 2: single point (1, 1).
        let s = system(&[(&[-1, 0], -1), (&[0, -1], -1), (&[1, 1], 2)]);
        match solve(&s) {
            Feasibility::Feasible(z) => {
                let one = BigRational::from_integer(1.into());
                assert_eq!(z, vec![one.clone(), one]);
            }
            other => panic!("{other:?}"),
        }
        let s = system(&[(&[-1, 0], -1), (&[0, -1], -1), (&[1, 1], 1)]);
        assert!(!solve(&s).is_feasible());
    }

    #[test]
    fn bigint_path_agrees() {
        let s = system(&[
            (&[1, 2, -1], 4),
            (&[-3, 1, 0], -2),
            (&[0, -1, 1], -1),
            (&[2, 0, 1], 7),
        ]);
        let small = Tableau::<i128>::new(&s).and_then(Tableau::run).unwrap();
        let big = Tableau::<BigInt>::new(&s).and_then(Tableau::run).unwrap();
        assert_eq!(small, big);
    }

    #[test]
    fn certificate_rejects_tampering() {
        let s = system(&[(&[1], 0), (&[-1], -1)]);
        let bad = FarkasCertificate {
            multipliers: vec![BigUint::from(2u8), BigUint::from(1u8)],
        };
        assert!(!bad.verify(&s));
    }

    #[test]
    fn common_denominator_clears() {
        let v = vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new(2.into(), 3.into()),
        ];
        let (ints, d) = common_denominator(&v);
        assert_eq!(d, BigInt::from(6));
        assert_eq!(ints, vec![BigInt::from(3), BigInt::from(4)]);
    }
}
