//! Floating-point oracle for limit points.
//!
//! Limit points are limits of sequences inside the quasi-component, so
//! they can be estimated independently of all the exact machinery: fix
//! `X_1 = alpha + eps` for a ladder of shrinking `eps`, solve the
//! triangular system numerically level by level tracking every root,
//! discard branches that escape to infinity, and cluster what remains at
//! the smallest `eps`. The exact engine and this oracle must agree; the
//! cross-check reports any point present on one side only.

pub use num_complex::Complex64;

use num_traits::ToPrimitive;

use crate::chain::{LimitPoint, RegularChain};
use crate::mpoly::MPoly;
use crate::rat::Rational;
use crate::upoly::UniPoly;

/// A numerically estimated branch limit.
#[derive(Debug, Clone)]
pub struct NumericPoint {
    pub coords: Vec<Complex64>,
    /// The `X_1`-offset the estimate was taken at.
    pub epsilon: f64,
}

/// Branches whose coordinates pass this magnitude are treated as
/// escaping to infinity (true limits stay bounded).
const DIVERGENCE: f64 = 1e6;
/// Residual acceptance: `|p(z)| <= RESIDUAL_REL * scale` where the scale
/// is the largest coefficient magnitude times `max(1,|z|)^deg`.
const RESIDUAL_REL: f64 = 1e-8;
/// Two branch endpoints closer than this (sup norm) belong to the same
/// cluster.
const CLUSTER_RADIUS: f64 = 1e-3;
/// The default offset ladder.
pub const DEFAULT_EPSILONS: [f64; 5] = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6];

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Evaluate a rational polynomial at complex values (one per variable).
fn eval_complex(p: &MPoly<Rational>, vals: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (e, c) in p.terms() {
        let mut t = Complex64::new(to_f64(c), 0.0);
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                t *= vals[i].powu(k);
            }
        }
        acc += t;
    }
    acc
}

/// All complex roots of a univariate polynomial given by ascending
/// coefficients, via the Durand–Kerner iteration with a Newton polish.
/// `None` when the iteration fails the residual bound (non-convergence).
pub fn complex_roots(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return None;
    }
    let mut cs: Vec<Complex64> = coeffs.to_vec();
    while cs.len() > 1 && cs.last().unwrap().norm() == 0.0 {
        cs.pop();
    }
    let d = cs.len() - 1;
    if d == 0 {
        return Some(Vec::new());
    }
    // monic copy for the iteration
    let lead = *cs.last().unwrap();
    let monic: Vec<Complex64> = cs.iter().map(|c| c / lead).collect();
    let eval = |p: &[Complex64], z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in p.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    // starting points on a spiral inside the root bound
    let bound = 1.0 + monic.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| seed.powu(k as u32 + 1) * bound / seed.norm())
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if j != i {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                // coincident iterates: nudge apart
                z[i] += Complex64::new(1e-6, 1e-6);
                moved = f64::MAX;
                continue;
            }
            let delta = eval(&monic, z[i]) / den;
            z[i] -= delta;
            moved = moved.max(delta.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-14 {
            break;
        }
    }
    // Newton polish against the original polynomial
    let deriv: Vec<Complex64> = cs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let dp = eval(&deriv, *zi);
            if dp.norm() > 1e-300 {
                *zi -= eval(&cs, *zi) / dp;
            }
        }
    }
    // residual acceptance
    for &zi in &z {
        let s = scale * zi.norm().max(1.0).powi(d as i32);
        if !(eval(&cs, zi).norm() <= RESIDUAL_REL * s) {
            return None;
        }
    }
    z.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    Some(z)
}

/// Outcome of a numeric solve: the surviving clusters plus how many
/// branches the root-finder gave up on.
#[derive(Debug, Clone)]
pub struct NumericOutcome {
    pub points: Vec<NumericPoint>,
    pub failed_branches: usize,
}

/// Solve the triangular system at the fixed value `x1`, tracking every
/// root at every level. Branches beyond the divergence threshold are
/// dropped; non-convergent solves are counted.
fn solve_at(chain: &RegularChain, x1: Complex64) -> (Vec<Vec<Complex64>>, usize) {
    let nv = chain.vars().len();
    let mut states: Vec<Vec<Complex64>> = vec![vec![x1]];
    let mut failed = 0usize;
    for (i, p) in chain.polys().iter().enumerate() {
        let mv = i + 1;
        let deg = p.degree(mv).unwrap();
        let mut next = Vec::new();
        for st in &states {
            let mut vals = st.clone();
            vals.resize(nv, Complex64::new(0.0, 0.0));
            let coeffs: Vec<Complex64> = (0..=deg)
                .map(|k| eval_complex(&p.coeff_of_power(mv, k), &vals))
                .collect();
            match complex_roots(&coeffs) {
                Some(roots) => {
                    for r in roots {
                        if r.norm() > DIVERGENCE {
                            continue;
                        }
                        let mut s = st.clone();
                        s.push(r);
                        next.push(s);
                    }
                }
                None => failed += 1,
            }
        }
        states = next;
    }
    (states, failed)
}

fn sup_dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn cluster(points: Vec<Vec<Complex64>>, eps: f64) -> Vec<NumericPoint> {
    let mut groups: Vec<(Vec<Complex64>, usize)> = Vec::new();
    for p in points {
        match groups.iter_mut().find(|(c, _)| sup_dist(c, &p) <= CLUSTER_RADIUS) {
            Some((c, n)) => {
                // running mean keeps the representative centered
                for (ci, pi) in c.iter_mut().zip(&p) {
                    *ci = (*ci * *n as f64 + pi) / (*n as f64 + 1.0);
                }
                *n += 1;
            }
            None => groups.push((p, 1)),
        }
    }
    groups
        .into_iter()
        .map(|(coords, _)| NumericPoint { coords, epsilon: eps })
        .collect()
}

/// Branch endpoints near `X_1 = alpha`, estimated at one offset.
pub fn numeric_points_at_epsilon(
    chain: &RegularChain,
    alpha: Complex64,
    eps: f64,
) -> NumericOutcome {
    let (states, failed) = solve_at(chain, alpha + Complex64::new(eps, 0.0));
    NumericOutcome { points: cluster(states, eps), failed_branches: failed }
}

fn sup_norm(a: &[Complex64]) -> f64 {
    a.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Follow the branches down the offset ladder and report the clusters at
/// the final (smallest) offset.
///
/// A converging branch barely moves between consecutive rungs, while a
/// branch escaping to infinity (any power of `1/eps`) jumps by a large
/// fraction of its own magnitude — so endpoints that moved more than
/// 10% of their scale since the previous rung are discarded. The
/// absolute divergence threshold alone cannot make this call: `1/eps`
/// lands exactly at it on the default ladder.
pub fn numeric_branch_limits(
    chain: &RegularChain,
    alpha: Complex64,
    epsilons: &[f64],
) -> NumericOutcome {
    assert!(!epsilons.is_empty(), "need at least one offset");
    assert!(
        epsilons.windows(2).all(|w| w[0] > w[1] && w[1] > 0.0),
        "offsets must decrease strictly toward 0"
    );
    let mut prev: Option<Vec<Vec<Complex64>>> = None;
    let mut states = Vec::new();
    let mut failed = 0usize;
    let mut eps_final = epsilons[0];
    for &eps in epsilons {
        let (mut st, f) = solve_at(chain, alpha + Complex64::new(eps, 0.0));
        failed += f;
        if let Some(pr) = &prev {
            st.retain(|s| {
                let tol = 0.1 * (1.0 + sup_norm(s));
                pr.iter().any(|p| sup_dist(p, s) <= tol)
            });
        }
        prev = Some(st.clone());
        states = st;
        eps_final = eps;
    }
    NumericOutcome { points: cluster(states, eps_final), failed_branches: failed }
}

/// Numeric roots of the squarefree part of `h_R` — the candidate
/// `alpha` values for `--at all` cross-checks.
pub fn numeric_h_r_roots(chain: &RegularChain) -> Option<Vec<Complex64>> {
    let h = chain.h_r();
    let hu = UniPoly::from_mpoly(&h, 0)?.squarefree_part();
    if hu.degree().unwrap_or(0) == 0 {
        return Some(Vec::new());
    }
    let coeffs: Vec<Complex64> = hu
        .coeffs()
        .iter()
        .map(|c| Complex64::new(to_f64(c), 0.0))
        .collect();
    complex_roots(&coeffs)
}

/// All complex embeddings of a symbolic point: each tower modulus is
/// solved numerically and every root spawns one embedding.
pub fn embed_symbolic(z: &LimitPoint) -> Vec<Vec<Complex64>> {
    let mut embeddings: Vec<Vec<Complex64>> = vec![Vec::new()];
    for (k, m) in z.tower.moduli().iter().enumerate() {
        let mut next = Vec::new();
        for e in &embeddings {
            let deg = m.degree(k).unwrap();
            let mut vals = e.clone();
            vals.resize(m.nvars(), Complex64::new(0.0, 0.0));
            let coeffs: Vec<Complex64> = (0..=deg)
                .map(|j| eval_complex(&m.coeff_of_power(k, j), &vals))
                .collect();
            if let Some(roots) = complex_roots(&coeffs) {
                for r in roots {
                    let mut e2 = e.clone();
                    e2.push(r);
                    next.push(e2);
                }
            }
        }
        embeddings = next;
    }
    let height = z.tower.height();
    embeddings
        .iter()
        .map(|e| {
            let mut vals = e.clone();
            vals.resize(height.max(1), Complex64::new(0.0, 0.0));
            z.coords
                .iter()
                .map(|c| {
                    let p = c.poly().extend_nvars(height.max(1));
                    eval_complex(&p, &vals)
                })
                .collect()
        })
        .collect()
}

fn render_complex(c: Complex64) -> String {
    if c.im.abs() < 1e-9 {
        format!("{:.6}", c.re)
    } else {
        format!("{:.6}{}{:.6}i", c.re, if c.im < 0.0 { "-" } else { "+" }, c.im.abs())
    }
}

fn render_coords(cs: &[Complex64]) -> String {
    let body = cs.iter().map(|&c| render_complex(c)).collect::<Vec<_>>().join(", ");
    format!("({body})")
}

/// Result of matching symbolic output against the numeric oracle.
#[derive(Debug, Clone, Default)]
pub struct CrossCheckReport {
    pub matched: usize,
    pub unmatched_symbolic: Vec<String>,
    pub unmatched_numeric: Vec<String>,
}

impl CrossCheckReport {
    pub fn is_full_match(&self) -> bool {
        self.unmatched_symbolic.is_empty() && self.unmatched_numeric.is_empty()
    }

    pub fn render(&self) -> String {
        if self.is_full_match() {
            return format!("cross-check: all {} embeddings matched", self.matched);
        }
        let mut out = format!(
            "cross-check: {} matched, {} symbolic unmatched, {} numeric unmatched",
            self.matched,
            self.unmatched_symbolic.len(),
            self.unmatched_numeric.len()
        );
        for s in &self.unmatched_symbolic {
            out.push_str(&format!("\n  symbolic only: {s}"));
        }
        for s in &self.unmatched_numeric {
            out.push_str(&format!("\n  numeric only: {s}"));
        }
        out
    }
}

/// Greedy bipartite matching between the embeddings of the symbolic
/// points and the numeric clusters, within `tol` per coordinate.
pub fn cross_check(
    symbolic: &[LimitPoint],
    numeric: &[NumericPoint],
    tol: f64,
) -> CrossCheckReport {
    let mut report = CrossCheckReport::default();
    let mut used = vec![false; numeric.len()];
    for z in symbolic {
        for e in embed_symbolic(z) {
            let best = numeric
                .iter()
                .enumerate()
                .filter(|(i, _)| !used[*i])
                .map(|(i, n)| (i, sup_dist(&e, &n.coords)))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
            match best {
                Some((i, d)) if d <= tol => {
                    used[i] = true;
                    report.matched += 1;
                }
                _ => report
                    .unmatched_symbolic
                    .push(format!("{} as {}", z.render(), render_coords(&e))),
            }
        }
    }
    for (i, n) in numeric.iter().enumerate() {
        if !used[i] {
            report.unmatched_numeric.push(render_coords(&n.coords));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{limit_points, LimitConfig};
    use crate::rat::rat_int;
    use crate::tower::Tower;
    use crate::vars::VarOrder;

    fn vars(names: &[&str]) -> VarOrder {
        VarOrder::new(names.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn m(n: usize, e: &[(usize, u32)], c: i64) -> MPoly<Rational> {
        let mut exp = vec![0u32; n];
        for &(i, k) in e {
            exp[i] = k;
        }
        MPoly::monomial(n, exp, rat_int(c))
    }

    fn intro_chain() -> RegularChain {
        let r1 = m(3, &[(0, 1), (1, 2)], 1).add(&m(3, &[(1, 1)], 1)).add(&m(3, &[], 1));
        let r2 = m(3, &[(0, 2), (2, 2)], 1)
            .add(&m(3, &[(0, 1), (2, 2)], 2))
            .add(&m(3, &[(1, 1), (2, 1)], 1))
            .add(&m(3, &[(1, 1)], 1))
            .add(&m(3, &[(2, 1)], 1))
            .add(&m(3, &[], 1));
        RegularChain::new(vars(&["X1", "X2", "X3"]), vec![r1, r2])
    }

    fn hyperbola() -> RegularChain {
        let r = m(2, &[(0, 1), (1, 1)], 1).add(&m(2, &[], -1));
        RegularChain::new(vars(&["X1", "X2"]), vec![r])
    }

    #[test]
    fn roots_of_a_quadratic() {
        // z^2 - 1
        let roots = complex_roots(&[
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ])
        .unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0] + 1.0).norm() < 1e-9);
        assert!((roots[1] - 1.0).norm() < 1e-9);
    }

    #[test]
    fn intro_chain_branches_at_zero() {
        let out =
            numeric_branch_limits(&intro_chain(), Complex64::new(0.0, 0.0), &DEFAULT_EPSILONS);
        assert_eq!(out.failed_branches, 0);
        assert_eq!(out.points.len(), 2);
        let expect = [[0.0, -1.0, 1.0], [0.0, -1.0, -0.5]];
        for e in expect {
            let target: Vec<Complex64> =
                e.iter().map(|&x| Complex64::new(x, 0.0)).collect();
            assert!(
                out.points.iter().any(|p| sup_dist(&p.coords, &target) < 1e-4),
                "no cluster near {target:?}"
            );
        }
    }

    #[test]
    fn intro_chain_branches_at_minus_two() {
        let out =
            numeric_branch_limits(&intro_chain(), Complex64::new(-2.0, 0.0), &DEFAULT_EPSILONS);
        assert_eq!(out.points.len(), 2);
        let expect = [[-2.0, 1.0, -1.0], [-2.0, -0.5, -1.0]];
        for e in expect {
            let target: Vec<Complex64> =
                e.iter().map(|&x| Complex64::new(x, 0.0)).collect();
            assert!(
                out.points.iter().any(|p| sup_dist(&p.coords, &target) < 1e-4),
                "no cluster near {target:?}"
            );
        }
    }

    #[test]
    fn hyperbola_diverges() {
        let out =
            numeric_branch_limits(&hyperbola(), Complex64::new(0.0, 0.0), &DEFAULT_EPSILONS);
        assert!(out.points.is_empty());
    }

    #[test]
    fn cross_check_matches_the_exact_engine() {
        let chain = intro_chain();
        let sym = limit_points(&chain, &LimitConfig::default()).unwrap();
        let mut num = Vec::new();
        for alpha in numeric_h_r_roots(&chain).unwrap() {
            num.extend(numeric_branch_limits(&chain, alpha, &DEFAULT_EPSILONS).points);
        }
        let report = cross_check(&sym, &num, 1e-4);
        assert!(report.is_full_match(), "{}", report.render());
        assert_eq!(report.matched, 4);
    }

    #[test]
    fn perturbed_point_is_reported() {
        let chain = intro_chain();
        let mut sym = limit_points(&chain, &LimitConfig::default()).unwrap();
        // perturb one coordinate
        let t = Tower::empty();
        sym[0].coords[2] = t.rational(rat_int(7));
        let mut num = Vec::new();
        for alpha in numeric_h_r_roots(&chain).unwrap() {
            num.extend(numeric_branch_limits(&chain, alpha, &DEFAULT_EPSILONS).points);
        }
        let report = cross_check(&sym, &num, 1e-4);
        assert!(!report.is_full_match());
        assert_eq!(report.unmatched_symbolic.len(), 1);
        assert_eq!(report.unmatched_numeric.len(), 1);
    }

    #[test]
    fn cluster_distance_shrinks_down_the_ladder() {
        // distance from the nearest branch endpoint to the true limit
        // must decrease down the ladder (factor-10 noise allowance) and
        // end below the cross-check tolerance
        let chain = intro_chain();
        let target: Vec<Complex64> = [0.0, -1.0, 1.0]
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect();
        let mut dists = Vec::new();
        for &eps in &DEFAULT_EPSILONS {
            let out = numeric_points_at_epsilon(&chain, Complex64::new(0.0, 0.0), eps);
            let d = out
                .points
                .iter()
                .map(|p| sup_dist(&p.coords, &target))
                .fold(f64::MAX, f64::min);
            dists.push(d);
        }
        for w in dists.windows(2) {
            assert!(w[1] <= w[0] * 10.0, "distance grew: {dists:?}");
        }
        assert!(*dists.last().unwrap() < 1e-4, "{dists:?}");
        assert!(dists.last().unwrap() < &(dists[0] / 100.0), "{dists:?}");
    }

    #[test]
    fn embeddings_of_an_algebraic_point() {
        // point (0, z1) with z1^2 - 2 = 0: two embeddings, +-sqrt(2)
        let t = Tower::from_moduli(vec![m(1, &[(0, 2)], 1).add(&m(1, &[], -2))]);
        let z = LimitPoint {
            tower: t.clone(),
            coords: vec![t.rational(rat_int(0)), t.generator(0)],
        };
        let es = embed_symbolic(&z);
        assert_eq!(es.len(), 2);
        let r2 = 2f64.sqrt();
        assert!(es.iter().any(|e| (e[1].re - r2).abs() < 1e-9));
        assert!(es.iter().any(|e| (e[1].re + r2).abs() < 1e-9));
    }
}
