//! Counting Semi-Goldilocks and Goldilocks functions.
//!
//! Two engines that share nothing beyond the LP:
//!
//! * **direct** walks every monotone function, keeps the small (and ample)
//!   ones, groups them by a permutation-canonical key and runs one LP per
//!   key;
//! * **sd** walks the classes of self-dual positive threshold functions on
//!   `n + 1` variables. Every threshold function on `n` variables is, up to
//!   permutation and complementing inputs, an `i`-reduction `F_{x_i = s}` of
//!   exactly one such class, so counting small reductions counts
//!   Semi-Goldilocks functions.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::boolfn::{swap_vars_u64, BooleanFunction, VAR_MASKS};
use crate::chow::{self, ChowParameters};
use crate::error::{Error, Result};
use crate::ltf;

/// Which moduli problem is being counted: genus zero needs ampleness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Genus {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "positive")]
    Positive,
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Genus::Zero => "0",
            Genus::Positive => "positive",
        })
    }
}

impl FromStr for Genus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "0" | "zero" => Ok(Genus::Zero),
            "positive" | "pos" | "+" | "g+" => Ok(Genus::Positive),
            other => Err(Error::Parse(format!("unknown genus {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Direct,
    Sd,
    Both,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Direct => "direct",
            Engine::Sd => "sd",
            Engine::Both => "both",
        })
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "direct" => Ok(Engine::Direct),
            "sd" => Ok(Engine::Sd),
            "both" => Ok(Engine::Both),
            other => Err(Error::Parse(format!("unknown engine {other:?}"))),
        }
    }
}

/// The direct engine packs tables into a `u64`.
pub const DIRECT_LIMIT: usize = 6;
/// The representatives live on `n + 1` variables.
pub const SD_LIMIT: usize = crate::boolfn::ARITY_MAX - 1;

/// Largest `n` each engine will attempt.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub direct_cap: usize,
    pub sd_cap: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            direct_cap: DIRECT_LIMIT,
            sd_cap: 7,
        }
    }
}

impl EnumerationBudget {
    pub fn new(direct_cap: usize, sd_cap: usize) -> Result<Self> {
        if direct_cap > DIRECT_LIMIT {
            return Err(Error::Budget(format!(
                "direct cap {direct_cap} exceeds {DIRECT_LIMIT}"
            )));
        }
        if sd_cap > SD_LIMIT {
            return Err(Error::Budget(format!("sd cap {sd_cap} exceeds {SD_LIMIT}")));
        }
        Ok(EnumerationBudget { direct_cap, sd_cap })
    }

    pub fn check(&self, engine: Engine, n: usize) -> Result<()> {
        let fits = match engine {
            Engine::Direct => n <= self.direct_cap,
            Engine::Sd => n <= self.sd_cap,
            Engine::Both => n <= self.direct_cap && n <= self.sd_cap,
        };
        if fits {
            Ok(())
        } else {
            Err(Error::Budget(format!(
                "n = {n} is beyond the {engine} engine's cap"
            )))
        }
    }
}

/// A count and the number of permutation orbits it splits into.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Count {
    pub count: u64,
    pub orbit_count: u64,
}

impl std::ops::Add for Count {
    type Output = Count;

    fn add(self, rhs: Count) -> Count {
        Count {
            count: self.count + rhs.count,
            orbit_count: self.orbit_count + rhs.orbit_count,
        }
    }
}

fn full_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

/// Packed tables of every monotone function on `n ≤ 6` variables, sorted.
///
/// Level `k` is built from pairs `f_0 ≤ f_1` of level `k - 1`; `f_0` is the
/// slice where the new, most significant variable is zero.
pub fn monotone_tables(n: usize) -> Result<Vec<u64>> {
    if n > DIRECT_LIMIT {
        return Err(Error::Budget(format!(
            "monotone enumeration stops at {DIRECT_LIMIT} variables"
        )));
    }
    let mut level = vec![0u64, 1];
    for k in 1..=n {
        let half = 1u32 << (k - 1);
        let prev = &level;
        let mut next: Vec<u64> = prev
            .par_iter()
            .flat_map_iter(|&f0| {
                prev.iter()
                    .filter(move |&&f1| f0 & !f1 == 0)
                    .map(move |&f1| f0 | f1 << half)
            })
            .collect();
        next.par_sort_unstable();
        level = next;
    }
    Ok(level)
}

/// Every monotone function on `n ≤ 6` variables, each exactly once.
pub fn monotone_functions(n: usize) -> Result<impl Iterator<Item = BooleanFunction>> {
    Ok(monotone_tables(n)?
        .into_iter()
        .map(move |t| BooleanFunction::from_u64(n, t).expect("n within u64 tables")))
}

fn is_small_u64(n: usize, t: u64) -> bool {
    (0..n).all(|i| t >> (1u32 << i) & 1 == 0)
}

fn is_ample_u64(n: usize, t: u64) -> bool {
    let points = 1u32 << n;
    let reversed = t.reverse_bits() >> (64 - points);
    let full = full_mask(n);
    (t | reversed) & full == full
}

fn chow_a_u64(n: usize, t: u64) -> [u32; DIRECT_LIMIT] {
    let full = full_mask(n);
    let mut a = [0u32; DIRECT_LIMIT];
    for (i, ai) in a.iter_mut().enumerate().take(n) {
        let mask = VAR_MASKS[i] & full;
        *ai = (t & mask).count_ones() + (!t & !mask & full).count_ones();
    }
    a
}

/// Sorts the variables by decreasing `a_i`. Returns `None` when two variables
/// share a Chow entry but are not interchangeable, which never happens for a
/// threshold function.
fn canonical_key(n: usize, t: u64) -> Option<u64> {
    let mut t = t;
    let mut a = chow_a_u64(n, t);
    for p in 0..n {
        let q = (p..n).fold(p, |best, j| if a[j] > a[best] { j } else { best });
        if q != p {
            t = swap_vars_u64(t, p, q);
            a.swap(p, q);
        }
    }
    for p in 1..n {
        if a[p] == a[p - 1] && swap_vars_u64(t, p - 1, p) != t {
            return None;
        }
    }
    Some(t)
}

/// Counts Semi-Goldilocks (or, for genus zero, Goldilocks) functions on `n`
/// variables by filtering all monotone functions.
pub fn count_direct(n: usize, genus: Genus) -> Result<Count> {
    count_direct_with(n, genus, &EnumerationBudget::default())
}

pub fn count_direct_with(n: usize, genus: Genus, budget: &EnumerationBudget) -> Result<Count> {
    budget.check(Engine::Direct, n)?;
    let tables = monotone_tables(n)?;
    let classes: HashMap<u64, u64> = tables
        .par_iter()
        .filter(|&&t| is_small_u64(n, t) && (genus == Genus::Positive || is_ample_u64(n, t)))
        .filter_map(|&t| canonical_key(n, t))
        .fold(HashMap::new, |mut m, key| {
            *m.entry(key).or_insert(0u64) += 1;
            m
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let keys: Vec<(u64, u64)> = classes.into_iter().collect();
    Ok(keys
        .par_iter()
        .filter(|(key, _)| {
            ltf::is_threshold(&BooleanFunction::from_u64(n, *key).expect("n within u64 tables"))
        })
        .map(|&(_, size)| Count {
            count: size,
            orbit_count: 1,
        })
        .reduce(Count::default, |a, b| a + b))
}

/// One positive threshold function per permutation class on `n` variables,
/// in the form where variable influence decreases with the index
/// (`x_j ≽ x_k` for `j < k`).
///
/// Level `k` joins pairs `f_0 ≤ f_1` from level `k - 1` along a new last
/// variable, keeps the pairs in which that variable is the weakest and
/// checks separability with the LP.
pub fn regular_positive_ltfs(n: usize) -> Result<Vec<BooleanFunction>> {
    if n > DIRECT_LIMIT + 1 {
        return Err(Error::Budget(format!(
            "the class generator stops at {} variables",
            DIRECT_LIMIT + 1
        )));
    }
    let mut level: Vec<u64> = vec![0, 1];
    for k in 1..=n {
        let prev = &level;
        let candidates: Vec<(u64, u64)> = prev
            .par_iter()
            .flat_map_iter(|&f0| {
                prev.iter()
                    .filter(move |&&f1| f0 & !f1 == 0 && last_is_weakest(k - 1, f0, f1))
                    .map(move |&f1| (f0, f1))
            })
            .collect();
        let joined: Vec<BooleanFunction> = candidates
            .par_iter()
            .map(|&(f0, f1)| join(k - 1, f0, f1))
            .filter(ltf::is_threshold)
            .collect();
        if k == n {
            let mut out = joined;
            out.sort();
            return Ok(out);
        }
        level = joined
            .iter()
            .map(|f| f.to_u64().expect("levels below the last fit a u64"))
            .collect();
        level.sort_unstable();
    }
    Ok(level
        .into_iter()
        .map(|t| BooleanFunction::from_u64(0, t).expect("nullary table"))
        .collect())
}

/// `f_0(y ∨ ê_j) ≥ f_1(y)` for every `j` and every `y` with `y_j = 0`.
fn last_is_weakest(m: usize, f0: u64, f1: u64) -> bool {
    (0..m).all(|j| {
        let mask = VAR_MASKS[j];
        let lifted = (f0 & mask) >> (1u32 << j);
        f1 & !mask & !lifted == 0
    })
}

fn join(m: usize, f0: u64, f1: u64) -> BooleanFunction {
    let low = BooleanFunction::from_u64(m, f0).expect("slice fits a u64");
    let high = BooleanFunction::from_u64(m, f1).expect("slice fits a u64");
    BooleanFunction::from_slices(&low, &high).expect("arity within range")
}

/// A positive self-dual threshold function on `n + 1` variables whose Chow
/// `a`-vector is nonincreasing. It stands for the class of all threshold
/// functions on `n` variables obtained from it by reductions, permutations
/// and complementing inputs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SDRepresentative {
    function: BooleanFunction,
    chow: ChowParameters,
}

impl SDRepresentative {
    pub fn new(function: BooleanFunction) -> Result<Self> {
        let bad = |why: &str| Err(Error::InvalidRepresentative(why.into()));
        if function.arity() == 0 {
            return bad("needs at least one variable");
        }
        if !function.is_self_dual() {
            return bad("not self-dual");
        }
        if !function.is_positive() {
            return bad("not positive");
        }
        let chow = chow::chow(&function);
        if chow.a.windows(2).any(|w| w[0] < w[1]) {
            return bad("Chow parameters are not sorted");
        }
        if !ltf::is_threshold(&function) {
            return bad("not a threshold function");
        }
        Ok(SDRepresentative { function, chow })
    }

    pub fn function(&self) -> &BooleanFunction {
        &self.function
    }

    pub fn chow(&self) -> &ChowParameters {
        &self.chow
    }

    /// Arity of the reductions, one less than the representative's.
    pub fn n(&self) -> usize {
        self.function.arity() - 1
    }

    /// The reductions counted for `genus`, one per permutation orbit.
    ///
    /// For each distinct `a_i`: `F_{x_i=1}` if small, and `F_{x_i=0}` if small
    /// and different from it, which is when `a_i ≠ 2^n`. For genus zero only
    /// the ample member of the pair is considered; `F_{x_i=1}` has
    /// `a_i / 2` true points and is ample exactly when `a_i ≥ 2^n`.
    pub fn counted_reductions(&self, genus: Genus) -> Vec<BooleanFunction> {
        let half = 1u64 << self.n();
        let a = &self.chow.a;
        let mut out = Vec::new();
        for i in 0..a.len() {
            if i > 0 && a[i] == a[i - 1] {
                continue;
            }
            let pick = |s: bool| {
                let r = self.function.reduce(i, s).expect("index in range");
                r.is_small().then_some(r)
            };
            match genus {
                Genus::Positive => {
                    out.extend(pick(true));
                    if a[i] != half {
                        out.extend(pick(false));
                    }
                }
                Genus::Zero => out.extend(pick(a[i] >= half)),
            }
        }
        out
    }

    fn tally(&self, genus: Genus) -> Count {
        self.counted_reductions(genus)
            .iter()
            .map(|r| Count {
                count: chow::orbit_size_from_chow(&chow::chow(r)),
                orbit_count: 1,
            })
            .fold(Count::default(), |a, b| a + b)
    }
}

/// Semi-Goldilocks functions in the class of `rep`.
pub fn sgold_sd(rep: &SDRepresentative) -> u64 {
    rep.tally(Genus::Positive).count
}

/// Goldilocks functions in the class of `rep`.
pub fn gold_sd(rep: &SDRepresentative) -> u64 {
    rep.tally(Genus::Zero).count
}

/// Makes a self-dual positive threshold function out of each positive class
/// on `n` variables, sorts its variables and removes duplicates.
pub fn sd_representatives(n: usize) -> Result<Vec<SDRepresentative>> {
    sd_representatives_with(n, &EnumerationBudget::default())
}

pub fn sd_representatives_with(
    n: usize,
    budget: &EnumerationBudget,
) -> Result<Vec<SDRepresentative>> {
    budget.check(Engine::Sd, n)?;
    let classes = regular_positive_ltfs(n)?;
    let tables: BTreeSet<BooleanFunction> = classes
        .par_iter()
        .map(|h| {
            let f = h.self_dualize().expect("arity within range");
            // x_0 selects between h and its dual; those are nested, so one
            // orientation of x_0 is positive.
            let f = if f.is_increasing_in(0) {
                f
            } else {
                f.u_complement(1).expect("arity at least one")
            };
            chow::canonicalize_unchecked(&f).representative
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(tables
        .into_iter()
        .map(|f| SDRepresentative {
            chow: chow::chow(&f),
            function: f,
        })
        .collect())
}

pub fn count_sd(n: usize, genus: Genus) -> Result<Count> {
    count_sd_with(n, genus, &EnumerationBudget::default())
}

pub fn count_sd_with(n: usize, genus: Genus, budget: &EnumerationBudget) -> Result<Count> {
    let reps = sd_representatives_with(n, budget)?;
    Ok(reps
        .par_iter()
        .map(|rep| rep.tally(genus))
        .reduce(Count::default, |a, b| a + b))
}
