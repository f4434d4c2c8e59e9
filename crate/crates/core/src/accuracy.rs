//! Accuracy planning: how many series terms each expansion level needs.
//!
//! Expanding a triangular system level by level composes truncated
//! parametrizations, and every composition step loses accuracy in a way
//! controlled by the degrees and by the vanishing orders of the leading
//! coefficients. This module provides the a-priori plans (degree-bound and
//! generic), the a-posteriori estimator that probes how much accuracy a
//! concrete polynomial actually needs, and a symbolic self-check of the
//! structural lemma the planning rests on.

use crate::mpoly::MPoly;
use crate::puiseux::{newton_puiseux, EngineError, SeriesPoly};
use crate::rat::{rat_int, Rational};

fn mono(nv: usize, pairs: &[(usize, u32)], c: Rational) -> MPoly<Rational> {
    let mut e = vec![0u32; nv];
    for &(v, k) in pairs {
        e[v] = k;
    }
    MPoly::monomial(nv, e, c)
}

/// Parent accuracy needed so that the polynomial produced by one
/// Newton–Puiseux step `(q, ell)` has its first `m1` coefficients right:
/// `floor((m1 + ell) / q)`, at least 1. Rows `0..=lift_accuracy(..)` of
/// the parent suffice.
pub fn lift_accuracy(m1: usize, q: u32, ell: u64) -> usize {
    assert!(m1 >= 1 && q >= 1);
    (((m1 as u64 + ell) / q as u64) as usize).max(1)
}

/// Accuracy needed to expand a polynomial whose leading coefficient
/// vanishes to order `delta`, when `tau` output terms are wanted and the
/// lower-order coefficients are in general position.
pub fn generic_accuracy(tau: usize, delta: usize) -> usize {
    tau + delta
}

/// How the per-level accuracy plan is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AccuracyMode {
    /// A-priori bound from the main degrees (always sufficient up to
    /// escalation; the default).
    DegreeBound,
    /// Degree-bound plan, refined per level with [`accuracy_estimate`].
    Iterative,
    /// Coarse uniform bound for all early levels.
    Generic,
}

/// Per-level accuracies for a triangular system with main degrees
/// `degrees[j]` and initial vanishing orders `deltas[j]` (level `j` is the
/// polynomial introducing the `j+2`-nd variable). The last level always
/// gets 1: only the constant terms of the final coordinate are needed.
pub fn chain_accuracies(degrees: &[u32], deltas: &[usize], mode: AccuracyMode) -> Vec<usize> {
    let n = degrees.len();
    assert!(n >= 1 && deltas.len() == n);
    let mut tau = vec![1usize; n];
    if n == 1 {
        return tau;
    }
    let prod = |upto: usize| -> usize {
        degrees[..upto].iter().map(|&d| d as usize).product()
    };
    tau[n - 2] = prod(n - 1) * deltas[n - 1] + 1;
    match mode {
        AccuracyMode::DegreeBound | AccuracyMode::Iterative => {
            for i in (1..n - 1).rev() {
                let theta = tau[i] + prod(i) * deltas[i];
                tau[i - 1] = theta.max(prod(i) * deltas[n - 1] + 1);
            }
        }
        AccuracyMode::Generic => {
            let p = prod(n - 1);
            let s: usize = deltas[..n - 1].iter().sum();
            for t in tau.iter_mut().take(n.saturating_sub(2)) {
                *t = p * s + 1;
            }
        }
    }
    tau
}

/// Smallest `m >= tau` such that expanding the accuracy-`m` approximation
/// of `f` to accuracy `tau` (a) raises no truncation-frontier objection
/// anywhere along the recursion and (b) gives the same parametrization
/// set as the accuracy-`m+1` approximation. Fails once `m` passes
/// `ceiling`.
pub fn accuracy_estimate(
    f: &SeriesPoly,
    tau: usize,
    ceiling: usize,
) -> Result<usize, EngineError> {
    let run = |m: usize| -> Result<Option<Vec<String>>, EngineError> {
        match newton_puiseux(&f.rows_truncated_inexact(m), tau) {
            Ok(classes) => {
                let mut keys: Vec<String> = classes
                    .iter()
                    .map(|c| {
                        format!("{} | {}", c.param.aligned_key(&c.tower, tau), c.tower.render())
                    })
                    .collect();
                keys.sort();
                Ok(Some(keys))
            }
            Err(EngineError::InsufficientAccuracy(_)) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let mut next = run(tau)?;
    for m in tau..=ceiling {
        let cur = next;
        next = run(m + 1)?;
        if let (Some(a), Some(b)) = (&cur, &next) {
            if a == b {
                return Ok(m);
            }
        }
    }
    Err(EngineError::InsufficientAccuracy(format!(
        "estimate exceeded ceiling {ceiling}"
    )))
}

/// Symbolic check of the structural lemma behind the per-level planning.
///
/// Substitute a generic truncated series `g = b_0 + b_1 X + ... +
/// b_{tau-1} X^(tau-1)` for `Y` in a generic polynomial `f = sum_i a_i(X)
/// Y^i` of degree `d` whose coefficients are generic series truncated at
/// the same order, and let `F_t` be the coefficient of `X^t`. The lemma
/// states that `F_0, ..., F_{tau-1}` is a zero-dimensional regular chain
/// in `b_0 < ... < b_{tau-1}`:
///
/// * `F_t` has main variable `b_t`;
/// * `F_0` has degree `d` in `b_0`, every later `F_t` is linear in `b_t`;
/// * `F_0 = sum_i a_{i,0} b_0^i`;
/// * `init(F_t) = sum_i i a_{i,0} b_0^(i-1)` for `t >= 1` — the same
///   (generically nonzero) initial at every level.
///
/// Returns `true` when all four hold for this `(d, tau)`.
pub fn prime_chain_check(d: u32, tau: u32) -> bool {
    let d = d as usize;
    let tau = tau as usize;
    assert!(d >= 1 && tau >= 1);
    // variable layout: X, then a_{i,j} row-major, then b_0..b_{tau-1}
    let nv = 1 + (d + 1) * tau + tau;
    let xv = 0usize;
    let av = |i: usize, j: usize| 1 + i * tau + j;
    let bv = |k: usize| 1 + (d + 1) * tau + k;

    let g: MPoly<Rational> = (0..tau).fold(MPoly::zero(nv), |acc, k| {
        acc.add(&mono(nv, &[(bv(k), 1), (xv, k as u32)], rat_int(1)))
    });
    let mut p = MPoly::zero(nv);
    let mut gpow = MPoly::constant(nv, rat_int(1));
    for i in 0..=d {
        let ai: MPoly<Rational> = (0..tau).fold(MPoly::zero(nv), |acc, j| {
            acc.add(&mono(nv, &[(av(i, j), 1), (xv, j as u32)], rat_int(1)))
        });
        p = p.add(&ai.mul(&gpow));
        gpow = gpow.mul(&g);
    }

    let f0_expected: MPoly<Rational> = (0..=d).fold(MPoly::zero(nv), |acc, i| {
        acc.add(&mono(nv, &[(av(i, 0), 1), (bv(0), i as u32)], rat_int(1)))
    });
    let init_expected: MPoly<Rational> = (1..=d).fold(MPoly::zero(nv), |acc, i| {
        acc.add(&mono(
            nv,
            &[(av(i, 0), 1), (bv(0), (i - 1) as u32)],
            rat_int(i as i64),
        ))
    });

    for t in 0..tau {
        let ft = p.coeff_of_power(xv, t as u32);
        if ft.main_var() != Some(bv(t)) {
            return false;
        }
        let want_deg = if t == 0 { d as u32 } else { 1 };
        if ft.degree(bv(t)) != Some(want_deg) {
            return false;
        }
        if t == 0 {
            if !ft.sub(&f0_expected).is_zero() {
                return false;
            }
        } else if !ft.coeff_of_power(bv(t), 1).sub(&init_expected).is_zero() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::Tower;

    fn biv(terms: &[(u32, u32, i64)]) -> SeriesPoly {
        let f = MPoly::from_terms(
            2,
            terms.iter().map(|&(x, y, c)| (vec![x, y], rat_int(c))),
        );
        SeriesPoly::from_bivariate(Tower::empty(), &f)
    }

    #[test]
    fn lift_accuracy_formula() {
        assert_eq!(lift_accuracy(2, 1, 0), 2);
        assert_eq!(lift_accuracy(1, 2, 3), 2);
        assert_eq!(lift_accuracy(3, 2, 1), 2);
    }

    #[test]
    fn generic_accuracy_formula() {
        assert_eq!(generic_accuracy(2, 1), 3);
        assert_eq!(generic_accuracy(1, 0), 1);
        assert_eq!(generic_accuracy(3, 2), 5);
    }

    #[test]
    fn chain_plan_two_levels() {
        // main degrees (2, 2), initial orders (1, 1): plan (3, 1)
        assert_eq!(
            chain_accuracies(&[2, 2], &[1, 1], AccuracyMode::DegreeBound),
            vec![3, 1]
        );
        // last initial does not vanish: second-to-last accuracy is 1
        assert_eq!(
            chain_accuracies(&[3, 2], &[2, 0], AccuracyMode::DegreeBound),
            vec![1, 1]
        );
        // single polynomial: only the final level
        assert_eq!(chain_accuracies(&[4], &[2], AccuracyMode::DegreeBound), vec![1]);
    }

    #[test]
    fn chain_plan_longer_and_generic() {
        let db = chain_accuracies(&[2, 3, 2], &[1, 1, 1], AccuracyMode::DegreeBound);
        // tau_3 = 1; tau_2 = 2*3*1 + 1 = 7; tau_1 = max(7 + 2*1, 2*1+1) = 9
        assert_eq!(db, vec![9, 7, 1]);
        let gen = chain_accuracies(&[2, 3, 2], &[1, 1, 1], AccuracyMode::Generic);
        // early levels get (2*3)(1+1) + 1 = 13
        assert_eq!(gen, vec![13, 7, 1]);
    }

    #[test]
    fn estimate_pinned_examples() {
        // Y - X at tau 1: constants decide everything
        let f = biv(&[(0, 1, 1), (1, 0, -1)]);
        assert_eq!(accuracy_estimate(&f, 1, 64).unwrap(), 1);
        // X Y^2 + Y + 1 at tau 2
        let f = biv(&[(1, 2, 1), (0, 1, 1), (0, 0, 1)]);
        assert_eq!(accuracy_estimate(&f, 2, 64).unwrap(), 2);
        // Y^2 - X^3 at tau 4
        let f = biv(&[(0, 2, 1), (3, 0, -1)]);
        assert_eq!(accuracy_estimate(&f, 4, 64).unwrap(), 4);
    }

    #[test]
    fn estimate_reports_ceiling() {
        let f = biv(&[(0, 2, 1), (3, 0, -1)]);
        match accuracy_estimate(&f, 4, 2) {
            Err(EngineError::InsufficientAccuracy(msg)) => {
                assert!(msg.contains("ceiling"));
            }
            other => panic!("expected ceiling failure, got {other:?}"),
        }
    }

    #[test]
    fn estimate_never_below_tau() {
        let f = biv(&[(0, 1, 1), (1, 0, -1)]);
        for tau in 1..4 {
            assert!(accuracy_estimate(&f, tau, 64).unwrap() >= tau);
        }
    }

    #[test]
    fn prime_chain_check_small_cases() {
        for d in 1..=3 {
            for tau in 1..=3 {
                assert!(prime_chain_check(d, tau), "failed at d={d}, tau={tau}");
            }
        }
    }
}
