//! Weight vectors, walls and chamber counts.
//!
//! A weight vector `w ∈ (0, 1]^n` is admissible; for genus zero it must also
//! satisfy `Σ w_i > 2`. The walls are the hyperplanes `Σ_{i∈S} w_i = 1` for
//! nonempty `S`, and two admissible vectors lie in the same chamber exactly
//! when they induce the same threshold function `x ↦ [w·x > 1]`. Counting
//! chambers is therefore counting Semi-Goldilocks functions (positive genus)
//! or Goldilocks functions (genus zero).

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::boolfn::BooleanFunction;
use crate::classify;
use crate::enumerate::{self, Count, Engine, EnumerationBudget, Genus};
use crate::error::{Error, Result};
use crate::ltf::{self, Constraints, Realization};

/// An admissible weight vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    weights: Vec<BigRational>,
    genus: Genus,
}

impl WeightVector {
    pub fn new(weights: Vec<BigRational>, genus: Genus) -> Result<Self> {
        if let Some((i, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !w.is_positive() || **w > BigRational::one())
        {
            return Err(Error::Admissibility(format!(
                "weight {i} is {w}, outside (0, 1]"
            )));
        }
        if genus == Genus::Zero {
            let sum: BigRational = weights.iter().sum();
            if sum <= BigRational::from_integer(2.into()) {
                return Err(Error::Admissibility(format!(
                    "weights sum to {sum}, genus zero needs more than 2"
                )));
            }
        }
        Ok(WeightVector { weights, genus })
    }

    /// Parses comma-separated rationals such as `3/4,3/4,3/4`.
    pub fn parse(text: &str, genus: Genus) -> Result<Self> {
        let weights = if text.trim().is_empty() {
            Vec::new()
        } else {
            text.split(',')
                .map(ltf::parse_fraction)
                .collect::<Result<Vec<_>>>()?
        };
        Self::new(weights, genus)
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Subset sums `Σ_{i∈S} w_i` indexed by the bitmask of `S`.
    fn subset_sums(&self) -> Vec<BigRational> {
        Realization::new(self.weights.clone(), BigRational::one()).values()
    }

    /// Lies on some wall `Σ_{i∈S} w_i = 1`.
    pub fn on_wall(&self) -> bool {
        self.subset_sums().iter().skip(1).any(|s| s.is_one())
    }
}

/// `x ↦ [w·x > 1]`. Points on a wall go to the false side.
pub fn phi_map(w: &WeightVector) -> BooleanFunction {
    Realization::new(w.weights.clone(), BigRational::one())
        .function()
        .expect("weight count within the arity limit")
}

fn check_comparable(w: &WeightVector, v: &WeightVector) -> Result<()> {
    if w.len() != v.len() {
        return Err(Error::Admissibility(format!(
            "weight vectors of lengths {} and {}",
            w.len(),
            v.len()
        )));
    }
    if w.genus != v.genus {
        return Err(Error::Admissibility(
            "weight vectors of different genus".into(),
        ));
    }
    Ok(())
}

pub fn same_chamber(w: &WeightVector, v: &WeightVector) -> Result<bool> {
    check_comparable(w, v)?;
    Ok(phi_map(w) == phi_map(v))
}

/// Walls with `w` and `v` on opposite sides, one at or below, the other
/// strictly above. Subsets are zero-based index lists in bitmask order.
pub fn separating_walls(w: &WeightVector, v: &WeightVector) -> Result<Vec<Vec<usize>>> {
    check_comparable(w, v)?;
    let one = BigRational::one();
    let (sw, sv) = (w.subset_sums(), v.subset_sums());
    Ok((1..sw.len())
        .filter(|&s| (sw[s] > one) != (sv[s] > one))
        .map(|s| (0..w.len()).filter(|&i| s >> i & 1 == 1).collect())
        .collect())
}

/// A weight vector inside the chamber of `f`, off every wall: a realization
/// with the required side constraints and no point on its hyperplane,
/// divided through by its threshold.
pub fn chamber_representative(f: &BooleanFunction, genus: Genus) -> Result<WeightVector> {
    let (member, constraints) = match genus {
        Genus::Positive => (
            classify::is_semi_goldilocks(f),
            Constraints::SEMI_GOLDILOCKS,
        ),
        Genus::Zero => (classify::is_goldilocks(f), Constraints::GOLDILOCKS),
    };
    if !member {
        return Err(Error::Class(format!(
            "{f} is not {}",
            match genus {
                Genus::Positive => "Semi-Goldilocks",
                Genus::Zero => "Goldilocks",
            }
        )));
    }
    let r = ltf::find_strict_realization(f, constraints)
        .ok_or_else(|| Error::Class(format!("no constrained realization of {f}")))?;
    if !r.threshold.is_positive() {
        // Only the constant-true function on no variables gets here.
        return Err(Error::Class(format!(
            "{f} has no chamber: threshold is not positive"
        )));
    }
    let weights = r.weights.iter().map(|w| w / &r.threshold).collect();
    WeightVector::new(weights, genus)
}

/// One row of the chamber tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub n: usize,
    pub genus: Genus,
    pub count: u64,
    pub orbit_count: u64,
}

pub fn count_chambers(n: usize, genus: Genus, engine: Engine) -> Result<CountRow> {
    count_chambers_with(n, genus, engine, &EnumerationBudget::default())
}

pub fn count_chambers_with(
    n: usize,
    genus: Genus,
    engine: Engine,
    budget: &EnumerationBudget,
) -> Result<CountRow> {
    budget.check(engine, n)?;
    let count = match engine {
        Engine::Direct => enumerate::count_direct_with(n, genus, budget)?,
        Engine::Sd => enumerate::count_sd_with(n, genus, budget)?,
        Engine::Both => {
            let direct = enumerate::count_direct_with(n, genus, budget)?;
            let sd = enumerate::count_sd_with(n, genus, budget)?;
            if direct != sd {
                return Err(Error::EngineMismatch {
                    n,
                    direct: (direct.count, direct.orbit_count),
                    sd: (sd.count, sd.orbit_count),
                });
            }
            direct
        }
    };
    Ok(CountRow {
        n,
        genus,
        count: count.count,
        orbit_count: count.orbit_count,
    })
}

/// Reference chamber counts, as `(count, count / S_n)`.
pub fn reference_count(n: usize, genus: Genus) -> Option<Count> {
    const POSITIVE: [(u64, u64); 9] = [
        (1, 1),
        (2, 2),
        (9, 5),
        (96, 17),
        (2690, 92),
        (226360, 994),
        (64646855, 28262),
        (68339572672, 2700791),
        (281196831947304, 990331318),
    ];
    const ZERO: [(u64, u64); 9] = [
        (0, 0),
        (0, 0),
        (1, 1),
        (27, 5),
        (1087, 36),
        (105123, 448),
        (31562520, 13642),
        (33924554539, 1336943),
        (140306938682875, 493888290),
    ];
    let table = match genus {
        Genus::Positive => &POSITIVE,
        Genus::Zero => &ZERO,
    };
    let (count, orbit_count) = *table.get(n.checked_sub(1)?)?;
    Some(Count { count, orbit_count })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub n: usize,
    /// Threshold functions on `n` variables.
    #[serde(serialize_with = "decimal")]
    pub lhs: BigUint,
    /// `Σ_k C(n, k) 2^k Gold_{g+}(k)`.
    #[serde(serialize_with = "decimal")]
    pub rhs: BigUint,
    pub ok: bool,
}

fn decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Exhaustive count of threshold functions; `n ≤ 4`.
pub fn count_ltfs(n: usize) -> Result<u64> {
    if n > 4 {
        return Err(Error::Budget(format!(
            "exhaustive threshold count stops at 4 variables, asked for {n}"
        )));
    }
    Ok((0..1u64 << (1 << n))
        .into_par_iter()
        .filter(|&t| ltf::is_threshold(&BooleanFunction::from_u64(n, t).expect("n ≤ 4")))
        .count() as u64)
}

/// Checks the number of threshold functions on `n ≤ 4` variables, counted
/// by brute force, against `Σ_k C(n, k) 2^k Gold_{g+}(k)`.
pub fn ltf_identity_check(n: usize) -> Result<IdentityCheck> {
    let lhs = count_ltfs(n)?;
    ltf_identity_check_with_lhs(n, BigUint::from(lhs))
}

pub fn ltf_identity_check_with_lhs(n: usize, lhs: BigUint) -> Result<IdentityCheck> {
    let mut rhs = BigUint::zero();
    for k in 0..=n {
        let gold = count_chambers(k, Genus::Positive, Engine::Sd)?.count;
        rhs += binomial(n as u64, k as u64) * (BigUint::one() << k) * gold;
    }
    Ok(IdentityCheck {
        n,
        ok: lhs == rhs,
        lhs,
        rhs,
    })
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `2 Σ_{i=0}^{n} C(2^n - 1, i)`, the leading-order estimate for the number
/// of threshold functions.
pub fn irmatov_estimate(n: usize) -> Result<BigUint> {
    if n > 30 {
        return Err(Error::Budget(format!(
            "estimate is limited to n ≤ 30, got {n}"
        )));
    }
    let m = (1u64 << n) - 1;
    let sum = (0..=n as u64).fold(BigUint::zero(), |acc, i| acc + binomial(m, i));
    Ok(sum * 2u32)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioReport {
    pub n: usize,
    #[serde(serialize_with = "decimal")]
    pub estimate: BigUint,
    /// `Gold_0(n) / Gold_{g+}(n)`.
    #[serde(serialize_with = "fraction")]
    pub genus_ratio: Option<BigRational>,
    /// `2^n Gold_{g+}(n) / estimate`.
    #[serde(serialize_with = "fraction")]
    pub estimate_ratio: Option<BigRational>,
}

fn fraction<S: serde::Serializer>(
    v: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(&ltf::fraction_string(v)),
        None => s.serialize_none(),
    }
}

impl RatioReport {
    /// Floating-point views of the two ratios, for display only.
    pub fn approximations(&self) -> (Option<f64>, Option<f64>) {
        (
            self.genus_ratio.as_ref().and_then(ToPrimitive::to_f64),
            self.estimate_ratio.as_ref().and_then(ToPrimitive::to_f64),
        )
    }
}

/// Ratios built from the reference counts, where known.
pub fn ratio_report(n: usize) -> Result<RatioReport> {
    let estimate = irmatov_estimate(n)?;
    let pos = reference_count(n, Genus::Positive).map(|c| c.count);
    let zero = reference_count(n, Genus::Zero).map(|c| c.count);
    let genus_ratio = match (zero, pos) {
        (Some(z), Some(p)) if p > 0 => Some(BigRational::new(z.into(), p.into())),
        _ => None,
    };
    let estimate_ratio = pos.map(|p| {
        BigRational::new(
            (num_bigint::BigInt::from(p)) << n,
            num_bigint::BigInt::from(estimate.clone()),
        )
    });
    Ok(RatioReport {
        n,
        estimate,
        genus_ratio,
        estimate_ratio,
    })
}
