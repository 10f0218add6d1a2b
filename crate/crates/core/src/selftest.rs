//! Exhaustive consistency checks on small arities, run by `goldilocks
//! selftest`.

use rayon::prelude::*;
use serde::Serialize;

use crate::boolfn::BooleanFunction;
use crate::chambers;
use crate::classify;
use crate::enumerate::{self, Genus};
use crate::oracle::Oracle;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, failures: usize, total: usize) -> Check {
    Check {
        name: name.into(),
        passed: failures == 0,
        detail: format!("{failures} failures in {total} cases"),
    }
}

fn all_functions(n: usize) -> impl ParallelIterator<Item = BooleanFunction> {
    (0..1u64 << (1 << n))
        .into_par_iter()
        .map(move |t| BooleanFunction::from_u64(n, t).expect("n ≤ 4"))
}

/// Classification flags agree with the brute-force oracle on every function
/// on `n` variables.
pub fn oracle_agreement(n: usize) -> Check {
    let oracle = Oracle::new(n);
    let failures = all_functions(n)
        .filter(|f| {
            let r = classify::classify(f);
            r.semi_goldilocks != oracle.is_semi_goldilocks(f)
                || r.goldilocks != oracle.is_goldilocks(f)
                || r.is_ltf != oracle.is_threshold(f)
        })
        .count();
    check(
        format!("classify matches oracle, n = {n}"),
        failures,
        1 << (1 << n),
    )
}

/// Every failing class comes with a certificate that verifies, and every
/// Semi-Goldilocks function with a realization carrying the right flags.
pub fn certificates(n: usize) -> Check {
    let failures = all_functions(n)
        .filter(|f| {
            let r = classify::classify(f);
            let cert_ok = match &r.certificate {
                Some(c) => !r.goldilocks && classify::verify_certificate(f, c),
                None => r.goldilocks,
            };
            let real_ok = match &r.realization {
                Some(w) => {
                    r.semi_goldilocks
                        && w.realizes(f)
                        && w.is_positive()
                        && w.is_small()
                        && (!r.goldilocks || w.is_ample())
                }
                None => !r.semi_goldilocks,
            };
            !(cert_ok && real_ok)
        })
        .count();
    check(
        format!("certificates and realizations, n = {n}"),
        failures,
        1 << (1 << n),
    )
}

/// `f` is a threshold function exactly when its reduction is Semi-Goldilocks.
pub fn reduction_soundness(n: usize) -> Check {
    let failures = all_functions(n)
        .filter(|f| {
            let g = classify::reduce_thres_to_sgold(f);
            crate::ltf::is_threshold(f) != classify::is_semi_goldilocks(&g)
        })
        .count();
    check(
        format!("threshold reduction, n = {n}"),
        failures,
        1 << (1 << n),
    )
}

pub fn identity(n: usize) -> Check {
    match chambers::ltf_identity_check(n) {
        Ok(c) => Check {
            name: format!("threshold count identity, n = {n}"),
            passed: c.ok,
            detail: format!("{} = {}", c.lhs, c.rhs),
        },
        Err(e) => Check {
            name: format!("threshold count identity, n = {n}"),
            passed: false,
            detail: e.to_string(),
        },
    }
}

pub fn engines(n: usize) -> Check {
    let mut bad = 0;
    for genus in [Genus::Positive, Genus::Zero] {
        let direct = enumerate::count_direct(n, genus);
        let sd = enumerate::count_sd(n, genus);
        if direct.is_err() || direct != sd {
            bad += 1;
        }
    }
    check(format!("engines agree, n = {n}"), bad, 2)
}

/// The full suite up to `max_n ≤ 4` variables.
pub fn run(max_n: usize) -> Vec<Check> {
    let max_n = max_n.min(4);
    let mut out = Vec::new();
    for n in 0..=max_n {
        out.push(oracle_agreement(n));
        out.push(certificates(n));
        out.push(reduction_soundness(n));
        out.push(identity(n));
        out.push(engines(n));
    }
    out
}
