//! Property checks shared by the `properties` and `acceptance` targets.
//! Each runs exhaustively on up to four variables and on 10 000 seeded random
//! cases with five variables.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use goldilocks::chambers::{self, WeightVector};
use goldilocks::classify::{self, Certificate};
use goldilocks::enumerate::{monotone_functions, Genus};
use goldilocks::ltf::{self, Constraints, Realization};
use goldilocks::{chow, BooleanFunction, ChowParameters, Permutation, Point};

pub const RANDOM_CASES: usize = 10_000;

pub type Property = fn() -> Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn all_functions(n: usize) -> impl Iterator<Item = BooleanFunction> {
    (0..1u64 << (1 << n)).map(move |t| BooleanFunction::from_u64(n, t).unwrap())
}

/// Every threshold function on `n ≤ 4` variables, computed once.
pub fn ltfs(n: usize) -> &'static [BooleanFunction] {
    static CACHE: [OnceLock<Vec<BooleanFunction>>; 5] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    CACHE[n].get_or_init(|| all_functions(n).filter(ltf::is_threshold).collect())
}

pub fn random_function(rng: &mut ChaCha8Rng, n: usize) -> BooleanFunction {
    BooleanFunction::from_fn(n, |_| rng.gen()).unwrap()
}

pub fn random_realization(rng: &mut ChaCha8Rng, n: usize) -> Realization {
    let w: Vec<i64> = (0..n).map(|_| rng.gen_range(-6..=6)).collect();
    Realization::from_integers(&w, rng.gen_range(-15..=15))
}

pub fn random_ltf(rng: &mut ChaCha8Rng, n: usize) -> BooleanFunction {
    random_realization(rng, n).function().unwrap()
}

/// A positive small realization: nonnegative weights, none above `θ`.
pub fn random_sgold_realization(rng: &mut ChaCha8Rng, n: usize) -> Realization {
    let w: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=8)).collect();
    let max = *w.iter().max().unwrap_or(&0);
    let sum: i64 = w.iter().sum();
    let theta = rng.gen_range(max.max(1)..=sum.max(max.max(1)) + 1);
    Realization::from_integers(&w, theta)
}

/// Threshold functions on `n ≤ 4` variables exhaustively, plus random ones
/// on five.
fn ltf_cases(seed: u64) -> impl Iterator<Item = BooleanFunction> {
    let mut r = rng(seed);
    (0..=4)
        .flat_map(|n| ltfs(n).iter().cloned())
        .chain((0..RANDOM_CASES).map(move |_| random_ltf(&mut r, 5)))
}

fn function_cases(seed: u64) -> impl Iterator<Item = BooleanFunction> {
    let mut r = rng(seed);
    (0..=4)
        .flat_map(all_functions)
        .chain((0..RANDOM_CASES).map(move |_| random_function(&mut r, 5)))
}

pub fn dual_involution() -> Result<(), String> {
    for f in function_cases(1) {
        ensure!(f.dual().dual() == f, "dual is not an involution on {f}");
    }
    Ok(())
}

pub fn self_dualization_laws() -> Result<(), String> {
    for f in function_cases(2) {
        let sd = f.self_dualize().unwrap();
        ensure!(sd.is_self_dual(), "{f}: self-dualization is not self-dual");
        ensure!(
            sd.anti_self_dualize().unwrap() == f,
            "{f}: round trip fails"
        );
        ensure!(sd.reduce(0, false).unwrap() == f, "{f}: x_0 = 0 slice");
        ensure!(
            sd.reduce(0, true).unwrap() == f.dual(),
            "{f}: x_0 = 1 slice"
        );
    }
    Ok(())
}

/// The two reductions of a self-dual function along a variable are duals.
pub fn reduction_duality() -> Result<(), String> {
    for f in function_cases(3) {
        let sd = f.self_dualize().unwrap();
        for i in 0..sd.arity() {
            let one = sd.reduce(i, true).unwrap();
            ensure!(
                sd.reduce(i, false).unwrap() == one.dual(),
                "{sd}, variable {i}"
            );
        }
    }
    Ok(())
}

pub fn chow_dual_law() -> Result<(), String> {
    for f in ltf_cases(4) {
        let c = chow(&f);
        let d = chow(&f.dual());
        ensure!(
            d.m == (1 << f.arity()) - c.m && d.a == c.a,
            "{f}: {c} vs dual {d}"
        );
    }
    Ok(())
}

pub fn chow_complement_law() -> Result<(), String> {
    let mut r = rng(5);
    for f in ltf_cases(5) {
        let n = f.arity();
        let masks: Vec<usize> = if n <= 3 {
            (0..1 << n).collect()
        } else {
            vec![r.gen_range(0..1 << n), r.gen_range(0..1 << n)]
        };
        let c = chow(&f);
        for u in masks {
            let g = f.u_complement(u).unwrap();
            let expected: Vec<u64> = (0..n)
                .map(|i| {
                    if u >> i & 1 == 1 {
                        (1 << n) - c.a[i]
                    } else {
                        c.a[i]
                    }
                })
                .collect();
            let got = chow(&g);
            ensure!(got.a == expected, "{f} with mask {u:b}: {got}");
            ensure!(got.m == g.true_count(), "{f} with mask {u:b}: m");
        }
    }
    Ok(())
}

fn random_permutation(r: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(r);
    Permutation::new(images).unwrap()
}

/// Variable `j` of `f` becomes variable `σ(j)` of the permuted function.
pub fn chow_permutation_law() -> Result<(), String> {
    let mut r = rng(6);
    for f in ltf_cases(6) {
        let n = f.arity();
        let c = chow(&f);
        for _ in 0..3 {
            let sigma = random_permutation(&mut r, n);
            let b = chow(&f.permute(&sigma).unwrap());
            ensure!(b.m == c.m, "{f}: m changed");
            for j in 0..n {
                ensure!(b.a[sigma.image(j)] == c.a[j], "{f} under {sigma:?}");
            }
        }
    }
    Ok(())
}

pub fn chow_self_dualization_law() -> Result<(), String> {
    for f in ltf_cases(7) {
        let n = f.arity();
        let c = chow(&f);
        let mut a = vec![(2u64 << n) - 2 * c.m];
        a.extend(c.a.iter().map(|x| 2 * x));
        let expected = ChowParameters { m: 1 << n, a };
        let got = chow(&f.self_dualize().unwrap());
        ensure!(got == expected, "{f}: {got} vs {expected}");
    }
    Ok(())
}

/// For self-dual `F` every Chow entry is even, and `F_{x_i=1}` has
/// parameters `(a_i, a_j for j ≠ i)` halved.
pub fn chow_reduction_law() -> Result<(), String> {
    for f in ltf_cases(8) {
        let sd = f.self_dualize().unwrap();
        let c = chow(&sd);
        for i in 0..sd.arity() {
            let got = chow(&sd.reduce(i, true).unwrap());
            let a: Vec<u64> = (0..sd.arity())
                .filter(|&j| j != i)
                .map(|j| c.a[j] / 2)
                .collect();
            let expected = ChowParameters { m: c.a[i] / 2, a };
            ensure!(c.a.iter().all(|x| x % 2 == 0), "{sd}: odd entry");
            ensure!(got == expected, "{sd}, variable {i}: {got} vs {expected}");
        }
    }
    Ok(())
}

/// No other Boolean function shares the Chow parameters of a threshold
/// function.
pub fn chow_uniqueness() -> Result<(), String> {
    for n in 0..=4 {
        let mut seen: HashMap<ChowParameters, usize> = HashMap::new();
        for f in all_functions(n) {
            *seen.entry(chow(&f)).or_default() += 1;
        }
        for f in ltfs(n) {
            ensure!(seen[&chow(f)] == 1, "{f} shares its Chow parameters");
        }
    }
    let mut r = rng(9);
    let mut by_chow: HashMap<ChowParameters, BooleanFunction> = HashMap::new();
    for _ in 0..RANDOM_CASES {
        let f = random_ltf(&mut r, 5);
        if let Some(g) = by_chow.insert(chow(&f), f.clone()) {
            ensure!(g == f, "{f} and {g} share Chow parameters");
        }
    }
    Ok(())
}

/// On threshold functions: positive iff every `a_i ≥ 2^(n-1)`, ample iff
/// `m ≥ 2^(n-1)`.
pub fn chow_predicates() -> Result<(), String> {
    for f in ltf_cases(10) {
        let c = chow(&f);
        // Compare doubled counts so that 2^(n-1) stays exact at n = 0.
        let full = 1u64 << f.arity();
        ensure!(
            f.is_positive() == c.a.iter().all(|&a| 2 * a >= full),
            "{f}: positivity"
        );
        ensure!(f.is_ample() == (2 * c.m >= full), "{f}: ampleness");
    }
    Ok(())
}

/// A realization of a small function has every weight at most the
/// threshold.
pub fn smallness_rigidity() -> Result<(), String> {
    for n in 0..=4 {
        for f in ltfs(n).iter().filter(|f| f.is_small()) {
            let w = ltf::find_realization(f, Constraints::NONE).unwrap();
            ensure!(w.is_small(), "{f}: LP realization is not small");
        }
    }
    let mut r = rng(11);
    let mut seen = 0;
    while seen < RANDOM_CASES {
        let n = r.gen_range(1..=5);
        let w = random_realization(&mut r, n);
        let f = w.function().unwrap();
        if f.is_small() {
            seen += 1;
            ensure!(w.is_small(), "{f}: {w:?} is not small");
        }
    }
    Ok(())
}

pub fn amplification() -> Result<(), String> {
    let check = |f: &BooleanFunction, w: &Realization| -> Result<(), String> {
        let a = ltf::amplify(w, f).map_err(|e| format!("{f}: {e}"))?;
        ensure!(a.realizes(f) && a.is_ample(), "{f}: amplified {a:?}");
        ensure!(a.weights == w.weights, "{f}: weights changed");
        Ok(())
    };
    for n in 0..=4 {
        for f in ltfs(n).iter().filter(|f| f.is_ample()) {
            check(f, &ltf::find_realization(f, Constraints::NONE).unwrap())?;
        }
    }
    let mut r = rng(12);
    let mut seen = 0;
    while seen < RANDOM_CASES {
        let w = random_realization(&mut r, 5);
        let f = w.function().unwrap();
        if f.is_ample() {
            seen += 1;
            check(&f, &w)?;
        } else {
            ensure!(
                ltf::amplify(&w, &f).is_err(),
                "{f}: amplified a non-ample function"
            );
        }
    }
    Ok(())
}

/// Semi-Goldilocks functions correspond to nondegenerate positive threshold
/// functions.
pub fn phi_bijection() -> Result<(), String> {
    for n in 0..=4 {
        let sgold: Vec<&BooleanFunction> = ltfs(n)
            .iter()
            .filter(|f| f.is_positive() && f.is_small())
            .collect();
        let nondegenerate: HashSet<&BooleanFunction> = ltfs(n)
            .iter()
            .filter(|f| f.is_positive() && chow::degree(f) == n)
            .collect();
        let mut image = HashSet::new();
        for f in &sgold {
            let h = ltf::phi_nondegenerate(f).map_err(|e| format!("{f}: {e}"))?;
            ensure!(nondegenerate.contains(&h), "{f} maps to {h}");
            ensure!(ltf::phi_inverse(&h).unwrap() == **f, "{f}: round trip");
            image.insert(h);
        }
        ensure!(
            image.len() == nondegenerate.len(),
            "n = {n}: image is not onto"
        );
    }
    let mut r = rng(13);
    for _ in 0..RANDOM_CASES {
        let f = random_sgold_realization(&mut r, 5).function().unwrap();
        let h = ltf::phi_nondegenerate(&f).map_err(|e| format!("{f}: {e}"))?;
        ensure!(h.is_positive() && chow::degree(&h) == 5, "{f} maps to {h}");
        ensure!(ltf::phi_inverse(&h).unwrap() == f, "{f}: round trip");
    }
    Ok(())
}

/// Exactly `n` positive self-dual threshold functions on `n` variables are
/// not small: the dictators.
pub fn self_dual_census() -> Result<(), String> {
    for n in 1..=5 {
        let count = monotone_functions(n)
            .unwrap()
            .filter(|f| f.is_self_dual() && !f.is_small() && ltf::is_threshold(f))
            .count();
        ensure!(count == n, "n = {n}: {count}");
    }
    Ok(())
}

fn certificate_ok(f: &BooleanFunction) -> Result<(), String> {
    let r = classify::classify(f);
    match &r.certificate {
        Some(c) => ensure!(
            !r.goldilocks && classify::verify_certificate(f, c),
            "{f}: bad certificate {c:?}"
        ),
        None => ensure!(r.goldilocks, "{f}: missing certificate"),
    }
    match &r.realization {
        Some(w) => ensure!(
            r.semi_goldilocks
                && w.realizes(f)
                && w.is_positive()
                && w.is_small()
                && (!r.goldilocks || w.is_ample()),
            "{f}: bad realization"
        ),
        None => ensure!(!r.semi_goldilocks, "{f}: missing realization"),
    }
    Ok(())
}

/// Every failing class comes with a certificate that verifies (completeness),
/// and any certificate that verifies shows a real failure (soundness).
pub fn certificates() -> Result<(), String> {
    for n in 0..=4 {
        for f in all_functions(n) {
            certificate_ok(&f)?;
        }
    }
    let mut r = rng(14);
    for k in 0..RANDOM_CASES {
        let f = match k % 3 {
            0 => random_function(&mut r, 5),
            1 => random_ltf(&mut r, 5),
            _ => random_sgold_realization(&mut r, 5).function().unwrap(),
        };
        certificate_ok(&f)?;
    }
    for n in 0..=3 {
        let witnesses: Vec<Certificate> = all_functions(n)
            .filter_map(|f| classify::classify(&f).certificate)
            .filter(|c| matches!(c, Certificate::NotSeparable { .. }))
            .collect();
        for f in all_functions(n) {
            let mut candidates = witnesses.clone();
            for x in 0..1 << n {
                let px = Point::new(n, x).unwrap();
                candidates.push(Certificate::NotAmple { x: px });
                for y in 0..1 << n {
                    let y = Point::new(n, y).unwrap();
                    candidates.push(Certificate::NotPositive { x: px, y });
                }
            }
            candidates.extend((0..n).map(|index| Certificate::NotSmall { index }));
            for c in &candidates {
                if !classify::verify_certificate(&f, c) {
                    continue;
                }
                let holds = match c {
                    Certificate::NotSeparable { .. } => !ltf::is_threshold(&f),
                    Certificate::NotPositive { .. } => !f.is_positive(),
                    Certificate::NotSmall { .. } => !f.is_small(),
                    Certificate::NotAmple { .. } => !f.is_ample(),
                };
                ensure!(holds, "{f}: {c:?} verifies but the class holds");
            }
        }
    }
    Ok(())
}

pub fn threshold_reduction() -> Result<(), String> {
    let check = |f: &BooleanFunction| -> Result<(), String> {
        let g = classify::reduce_thres_to_sgold(f);
        ensure!(g.is_positive() && g.is_small(), "{f} reduces to {g}");
        ensure!(
            ltf::is_threshold(f) == classify::is_semi_goldilocks(&g),
            "{f} reduces to {g}"
        );
        Ok(())
    };
    for n in 0..=4 {
        for f in all_functions(n) {
            check(&f)?;
        }
    }
    let mut r = rng(15);
    for k in 0..RANDOM_CASES {
        let f = if k % 2 == 0 {
            random_function(&mut r, 5)
        } else {
            random_ltf(&mut r, 5)
        };
        check(&f)?;
    }
    Ok(())
}

fn random_weights(r: &mut ChaCha8Rng, n: usize, genus: Genus) -> Option<WeightVector> {
    let weights = (0..n)
        .map(|_| {
            let q: i64 = r.gen_range(1..=6);
            BigRational::new(r.gen_range(1..=q).into(), q.into())
        })
        .collect();
    WeightVector::new(weights, genus).ok()
}

/// Same chamber, no separating wall and equal functions all coincide.
pub fn chamber_well_defined() -> Result<(), String> {
    let mut r = rng(16);
    let mut seen = 0;
    let mut equal = 0;
    while seen < RANDOM_CASES {
        let n = r.gen_range(1..=5);
        let genus = if r.gen() {
            Genus::Zero
        } else {
            Genus::Positive
        };
        let (Some(w), Some(v)) = (
            random_weights(&mut r, n, genus),
            random_weights(&mut r, n, genus),
        ) else {
            continue;
        };
        seen += 1;
        let same = chambers::same_chamber(&w, &v).unwrap();
        let walls = chambers::separating_walls(&w, &v).unwrap();
        let f = chambers::phi_map(&w);
        ensure!(same == walls.is_empty(), "{w:?} {v:?}: walls {walls:?}");
        ensure!(same == (f == chambers::phi_map(&v)), "{w:?} {v:?}");
        match genus {
            Genus::Positive => ensure!(classify::is_semi_goldilocks(&f), "{w:?} gives {f}"),
            Genus::Zero => ensure!(classify::is_goldilocks(&f), "{w:?} gives {f}"),
        }
        equal += usize::from(same);
    }
    ensure!(equal > 0, "no pair landed in a common chamber");
    Ok(())
}

pub fn chamber_round_trip() -> Result<(), String> {
    let check = |f: &BooleanFunction, genus: Genus| -> Result<(), String> {
        let w = chambers::chamber_representative(f, genus).map_err(|e| format!("{f}: {e}"))?;
        ensure!(chambers::phi_map(&w) == *f, "{f}: {w:?}");
        ensure!(!w.on_wall(), "{f}: representative on a wall");
        Ok(())
    };
    for n in 0..=4 {
        for f in ltfs(n) {
            // The constant-true function on no variables is Semi-Goldilocks
            // but has no weight vector.
            if n == 0 && f.get(0) {
                continue;
            }
            if classify::is_semi_goldilocks(f) {
                check(f, Genus::Positive)?;
            }
            if classify::is_goldilocks(f) {
                check(f, Genus::Zero)?;
            }
        }
    }
    let mut r = rng(17);
    for _ in 0..RANDOM_CASES {
        let f = random_sgold_realization(&mut r, 5).function().unwrap();
        check(&f, Genus::Positive)?;
        if f.is_ample() {
            check(&f, Genus::Zero)?;
        }
    }
    Ok(())
}

pub const PROPERTIES: &[(&str, Property)] = &[
    ("dual involution", dual_involution),
    (
        "self-dualization round trip and slices",
        self_dualization_laws,
    ),
    (
        "reductions of self-dual functions are dual",
        reduction_duality,
    ),
    ("Chow parameters of the dual", chow_dual_law),
    ("Chow parameters under complementation", chow_complement_law),
    ("Chow parameters under permutation", chow_permutation_law),
    (
        "Chow parameters of the self-dualization",
        chow_self_dualization_law,
    ),
    ("Chow parameters of reductions", chow_reduction_law),
    (
        "Chow parameters identify threshold functions",
        chow_uniqueness,
    ),
    ("Chow tests for positivity and ampleness", chow_predicates),
    (
        "realizations of small functions are small",
        smallness_rigidity,
    ),
    ("amplification keeps the function", amplification),
    ("nondegenerate correspondence is a bijection", phi_bijection),
    ("n non-small positive self-dual functions", self_dual_census),
    ("certificate soundness and completeness", certificates),
    (
        "threshold to Semi-Goldilocks reduction",
        threshold_reduction,
    ),
    ("chambers match threshold functions", chamber_well_defined),
    ("chamber representative round trip", chamber_round_trip),
];
