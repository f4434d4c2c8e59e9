//! Cross-cutting invariants on randomized inputs: accuracy bookkeeping,
//! expansion stability, membership of every emitted limit point, and the
//! consistency laws tying the closure tools together.

use proptest::prelude::*;

use qclim_core::accuracy::{accuracy_estimate, generic_accuracy, lift_accuracy};
use qclim_core::chain::{
    eval_at_point, limit_points, limit_points_at_zero, solve_zero_dim, verify_limit_point,
    LimitConfig, LimitPoint, RegularChain,
};
use qclim_core::closure::{chain_inclusion, point_in_quasi_component, remove_redundant};
use qclim_core::mpoly::MPoly;
use qclim_core::puiseux::{
    next_polynomial, polygon_split, segment_poly, AuditCtx, PolygonFlag, SeriesPoly,
};
use qclim_core::rat::{rat_int, Rational};
use qclim_core::tower::{roots_split, Tower};
use qclim_core::vars::VarOrder;

fn vars(names: &[&str]) -> VarOrder {
    VarOrder::new(names.iter().map(|s| s.to_string()).collect()).unwrap()
}

fn mono(n: usize, e: &[(usize, u32)], c: i64) -> MPoly<Rational> {
    let mut exp = vec![0u32; n];
    for &(i, k) in e {
        exp[i] = k;
    }
    MPoly::monomial(n, exp, rat_int(c))
}

/// Bivariate polynomial from a dense 5x4 coefficient grid (X-degree < 5,
/// Y-degree < 4).
fn grid_poly(cells: &[i64]) -> MPoly<Rational> {
    let mut p = MPoly::zero(2);
    for (idx, &c) in cells.iter().enumerate() {
        if c != 0 {
            let i = (idx / 4) as u32;
            let j = (idx % 4) as u32;
            p = p.add(&MPoly::monomial(2, vec![i, j], rat_int(c)));
        }
    }
    p
}

fn has_y_term(p: &MPoly<Rational>) -> bool {
    p.degree(1).unwrap_or(0) >= 1
}

fn class_key(tower: &Tower, key: String, mult: u64) -> String {
    format!("{key} x{mult} | {}", tower.render())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Raising every accuracy by 5 must not change the expansion set
    /// (after aligning both runs at the smaller accuracy).
    #[test]
    fn expansions_stable_under_extra_accuracy(
        cells in prop::collection::vec(-3i64..=3, 20),
        tau in 1usize..=3,
    ) {
        let f = grid_poly(&cells);
        prop_assume!(has_y_term(&f));
        let sp = SeriesPoly::from_bivariate(Tower::empty(), &f);
        let lo = qclim_core::puiseux::newton_puiseux(&sp, tau).unwrap();
        let hi = qclim_core::puiseux::newton_puiseux(&sp, tau + 5).unwrap();
        let mut klo: Vec<String> = lo
            .iter()
            .map(|c| class_key(&c.tower, c.param.aligned_key(&c.tower, tau), c.mult))
            .collect();
        let mut khi: Vec<String> = hi
            .iter()
            .map(|c| class_key(&c.tower, c.param.aligned_key(&c.tower, tau), c.mult))
            .collect();
        klo.sort();
        khi.sort();
        prop_assert_eq!(klo, khi);
    }

    /// The first `m1` coefficients of the next ladder polynomial only
    /// depend on the input through its approximation of accuracy
    /// `lift_accuracy(m1, q, ell)`.
    #[test]
    fn lift_accuracy_bounds_the_needed_rows(
        cells in prop::collection::vec(-3i64..=3, 20),
        m1 in 1usize..=3,
    ) {
        let f = grid_poly(&cells);
        prop_assume!(has_y_term(&f));
        let sp = SeriesPoly::from_bivariate(Tower::empty(), &f);
        let ctx = AuditCtx { tau: 1, a: 1, c_n: 0 };
        let polys = polygon_split(&sp, PolygonFlag::KeepNonPositive, ctx).unwrap();
        for (t, poly) in polys.cases {
            for seg in &poly.segments {
                let phi = segment_poly(&poly.f, seg);
                for (bt, class) in roots_split(&t, &phi).cases {
                    let fb = poly.f.transport(&bt);
                    let full = next_polynomial(&bt, &fb, seg.q, seg.p, seg.ell, &class.root);
                    let lift = lift_accuracy(m1, seg.q, seg.ell);
                    let approx = fb.rows_truncated_inexact(lift + 1);
                    let cut = next_polynomial(&bt, &approx, seg.q, seg.p, seg.ell, &class.root);
                    for (cf, ca) in full.coeffs().iter().zip(cut.coeffs()) {
                        for r in 0..m1 {
                            prop_assert!(ca.acc().knows(r));
                            prop_assert_eq!(cf.coeff(r), ca.coeff(r));
                        }
                    }
                }
            }
        }
    }

    /// An accuracy estimate is never below the requested alignment.
    #[test]
    fn estimate_is_at_least_tau(
        cells in prop::collection::vec(-3i64..=3, 20),
        tau in 1usize..=3,
    ) {
        let f = grid_poly(&cells);
        prop_assume!(has_y_term(&f));
        let sp = SeriesPoly::from_bivariate(Tower::empty(), &f);
        if let Ok(m) = accuracy_estimate(&sp, tau, 64) {
            prop_assert!(m >= tau);
        }
    }

    /// On generic inputs the estimate matches the closed-form generic
    /// accuracy; genericity failures are logged, never fatal.
    #[test]
    fn estimate_usually_matches_generic_accuracy(
        cells in prop::collection::vec(-3i64..=3, 20),
        tau in 1usize..=2,
    ) {
        let f = grid_poly(&cells);
        prop_assume!(has_y_term(&f));
        let sp = SeriesPoly::from_bivariate(Tower::empty(), &f);
        let d = f.degree(1).unwrap();
        let lead = f.coeff_of_power(1, d);
        let delta = (0u32..)
            .find(|&k| !lead.coeff_of_power(0, k).is_zero())
            .unwrap() as usize;
        if let Ok(m) = accuracy_estimate(&sp, tau, 64) {
            let g = generic_accuracy(tau, delta);
            if m != g {
                eprintln!(
                    "estimate {m} != generic {g} (tau={tau}, delta={delta}) for {}",
                    f.render_with(|i| ["X", "Y"][i].to_string())
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Every emitted limit point satisfies the chain and kills h_R, and
    /// never lies in the quasi-component itself.
    #[test]
    fn emitted_points_satisfy_membership(
        a_cells in prop::collection::vec(-2i64..=2, 2),
        c_cells in prop::collection::vec(-2i64..=2, 9),
        d in 1u32..=3,
    ) {
        // r = X1 * A(X1) * X2^d + sum_{k<d} c_k(X1) X2^k with A nonzero
        let mut a = MPoly::zero(2);
        for (i, &c) in a_cells.iter().enumerate() {
            if c != 0 {
                a = a.add(&mono(2, &[(0, i as u32)], c));
            }
        }
        prop_assume!(!a.is_zero());
        let mut r = mono(2, &[(0, 1), (1, d)], 1).mul(&a);
        for k in 0..d {
            for i in 0..3u32 {
                let c = c_cells[(k * 3 + i) as usize];
                if c != 0 {
                    r = r.add(&mono(2, &[(0, i), (1, k)], c));
                }
            }
        }
        prop_assume!(r.degree(1) == Some(d));
        let chain = RegularChain::new(vars(&["X1", "X2"]), vec![r]);
        prop_assume!(chain.validate().is_valid());
        let pts = limit_points(&chain, &LimitConfig::default()).unwrap();
        for z in &pts {
            prop_assert!(verify_limit_point(&chain, z), "{}", z.render());
            let w = point_in_quasi_component(z, &chain);
            prop_assert!(w.cases.iter().all(|(_, b)| !*b));
        }
    }
}

/// Tiny deterministic generator for the seeded random-chain suites.
struct Lcg(u64);

impl Lcg {
    fn next_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        lo + ((self.0 >> 33) % (hi - lo + 1) as u64) as i64
    }
}

fn random_three_var_chain(rng: &mut Lcg) -> RegularChain {
    // r1 in (X1, X2), main degree 1..=2, initial X1^e * c
    let d1 = rng.next_in(1, 2) as u32;
    let e1 = rng.next_in(0, 1) as u32;
    let mut r1 = mono(3, &[(0, e1 + 1), (1, d1)], rng.next_in(1, 2));
    for k in 0..d1 {
        for i in 0..2u32 {
            let c = rng.next_in(-2, 2);
            if c != 0 {
                r1 = r1.add(&mono(3, &[(0, i), (1, k)], c));
            }
        }
    }
    // r2 in (X1, X2, X3), main degree 1..=2, initial in Q[X1]
    let d2 = rng.next_in(1, 2) as u32;
    let e2 = rng.next_in(0, 1) as u32;
    let mut r2 = mono(3, &[(0, e2), (2, d2)], rng.next_in(1, 2));
    for k in 0..d2 {
        for i in 0..2u32 {
            for j in 0..2u32 {
                let c = rng.next_in(-1, 1);
                if c != 0 {
                    r2 = r2.add(&mono(3, &[(0, i), (1, j), (2, k)], c));
                }
            }
        }
    }
    RegularChain::new(vars(&["X1", "X2", "X3"]), vec![r1, r2])
}

fn intro_chain() -> RegularChain {
    let r1 = mono(3, &[(0, 1), (1, 2)], 1)
        .add(&mono(3, &[(1, 1)], 1))
        .add(&mono(3, &[], 1));
    let r2 = mono(3, &[(0, 2), (2, 2)], 1)
        .add(&mono(3, &[(0, 1), (2, 2)], 2))
        .add(&mono(3, &[(1, 1), (2, 1)], 1))
        .add(&mono(3, &[(1, 1)], 1))
        .add(&mono(3, &[(2, 1)], 1))
        .add(&mono(3, &[], 1));
    RegularChain::new(vars(&["X1", "X2", "X3"]), vec![r1, r2])
}

/// Project a limit point of a two-level chain to its first two
/// coordinates and check it lies in the closure of the one-level chain.
fn prefix_in_closure(z: &LimitPoint, sub: &RegularChain, sub_lim: &[LimitPoint]) -> bool {
    let prefix = LimitPoint { tower: z.tower.clone(), coords: z.coords[..2].to_vec() };
    let lim_keys: Vec<String> = sub_lim
        .iter()
        .map(|p| format!("{} | {}", p.render(), p.tower.render()))
        .collect();
    for (t, in_w) in point_in_quasi_component(&prefix, sub).cases {
        if in_w {
            continue;
        }
        let coords: Vec<_> = prefix.coords.iter().map(|c| t.transport(c)).collect();
        let (pt, pc) = t.pruned(&coords);
        let zb = LimitPoint { tower: pt.clone(), coords: pc };
        let key = format!("{} | {}", zb.render(), pt.render());
        if !lim_keys.contains(&key) {
            return false;
        }
    }
    true
}

#[test]
fn restriction_consistency_on_intro_and_random_chains() {
    let cfg = LimitConfig::default();
    let mut suite = vec![intro_chain()];
    let mut rng = Lcg(0x5eed_cafe_f00d_1234);
    while suite.len() < 11 {
        let c = random_three_var_chain(&mut rng);
        if c.validate().is_valid() {
            suite.push(c);
        }
    }
    for chain in &suite {
        let pts = match limit_points(chain, &cfg) {
            Ok(p) => p,
            Err(e) => panic!("limit points failed on {:?}: {e}", chain.polys().len()),
        };
        let sub = RegularChain::new(vars(&["X1", "X2"]), vec![restrict(chain.polys()[0].clone())]);
        let sub_lim = limit_points(&sub, &cfg).unwrap();
        for z in &pts {
            assert!(
                prefix_in_closure(z, &sub, &sub_lim),
                "prefix of {} escapes the closure of the sub-chain",
                z.render()
            );
        }
    }
}

/// Drop the unused third variable from a polynomial in (X1, X2).
fn restrict(p: MPoly<Rational>) -> MPoly<Rational> {
    let mut out = MPoly::zero(2);
    for (e, c) in p.terms() {
        assert_eq!(e[2], 0, "first-level polynomial must not involve X3");
        out = out.add(&MPoly::monomial(2, vec![e[0], e[1]], c.clone()));
    }
    out
}

#[test]
fn easy_case_agrees_with_direct_fiber_solving() {
    // h_1(0) = 0 but h_2(0) != 0 and r_1 primitive: limit points over 0
    // equal the direct solutions of the fiber X1 = 0.
    let r1 = mono(3, &[(0, 1), (1, 2)], 1)
        .add(&mono(3, &[(1, 1)], 1))
        .add(&mono(3, &[], 1));
    // r2 = (X1 + 1) X3^2 - X2
    let r2 = mono(3, &[(0, 1), (2, 2)], 1)
        .add(&mono(3, &[(2, 2)], 1))
        .add(&mono(3, &[(1, 1)], -1));
    let chain = RegularChain::new(vars(&["X1", "X2", "X3"]), vec![r1, r2]);
    let pts = limit_points_at_zero(&chain, &LimitConfig::default()).unwrap();
    // direct: X1 = 0, then X2 + 1 = 0, then X3^2 - X2 = 0
    let fiber = RegularChain::new(
        vars(&["X1", "X2", "X3"]),
        vec![
            mono(3, &[(0, 1)], 1),
            mono(3, &[(1, 1)], 1).add(&mono(3, &[], 1)),
            mono(3, &[(2, 2)], 1).add(&mono(3, &[(1, 1)], -1)),
        ],
    );
    let direct = solve_zero_dim(&fiber).unwrap();
    let a: Vec<String> = pts.iter().map(|p| p.render()).collect();
    let b: Vec<String> = direct.iter().map(|p| p.render()).collect();
    assert_eq!(a, b);
    assert!(!pts.is_empty());
}

#[test]
fn computed_set_is_strictly_inside_the_special_fiber() {
    // Over X1 = 0 the intro chain's second polynomial degenerates: at
    // X2 = -1 it vanishes identically, so the naive fiber leaves X3
    // free. The limit computation pins X3 down.
    let chain = intro_chain();
    let pts = limit_points_at_zero(&chain, &LimitConfig::default()).unwrap();
    let mut thirds: Vec<String> = pts.iter().map(|p| p.coords[2].render()).collect();
    thirds.sort();
    assert_eq!(thirds, vec!["-1/2", "1"]);
    // the fiber itself is degenerate: any X3 satisfies the system there
    let free = LimitPoint {
        tower: Tower::empty(),
        coords: [0, -1, 7]
            .iter()
            .map(|&c| Tower::empty().rational(rat_int(c)))
            .collect(),
    };
    for p in chain.polys() {
        assert!(qclim_core::mpoly::Coeff::is_zero(&eval_at_point(p, &free)));
    }
    assert!(pts.iter().all(|p| p.coords[2].render() != "7"));
}

#[test]
fn inclusion_is_reflexive_and_transitive_on_the_suite() {
    let v = vars(&["X1", "X2"]);
    let suite: Vec<RegularChain> = vec![
        RegularChain::new(v.clone(), vec![mono(2, &[(1, 1)], 1)]),
        RegularChain::new(v.clone(), vec![mono(2, &[(0, 1), (1, 1)], 1)]),
        RegularChain::new(v.clone(), vec![mono(2, &[(0, 2), (1, 1)], 1)]),
        RegularChain::new(v.clone(), vec![mono(2, &[(0, 1), (1, 1)], 1).add(&mono(2, &[], -1))]),
        RegularChain::new(v.clone(), vec![mono(2, &[(1, 1)], 1).add(&mono(2, &[(0, 1)], -1))]),
    ];
    let inc = |a: &RegularChain, b: &RegularChain| chain_inclusion(a, b, true).unwrap();
    for c in &suite {
        assert!(inc(c, c));
    }
    for a in &suite {
        for b in &suite {
            for c in &suite {
                if inc(a, b) && inc(b, c) {
                    assert!(inc(a, c), "transitivity broke");
                }
            }
        }
    }
}

#[test]
fn removing_redundancy_preserves_the_union() {
    // plant a point on the hyperbola and one off it
    let v = vars(&["X1", "X2"]);
    let hyper = RegularChain::new(
        v.clone(),
        vec![mono(2, &[(0, 1), (1, 1)], 1).add(&mono(2, &[], -1))],
    );
    let on = RegularChain::new(
        v.clone(),
        vec![
            mono(2, &[(0, 1)], 1).add(&mono(2, &[], -2)),
            mono(2, &[(1, 1)], 2).add(&mono(2, &[], -1)),
        ],
    );
    let off = RegularChain::new(
        v.clone(),
        vec![mono(2, &[(0, 1)], 1), mono(2, &[(1, 1)], 1).add(&mono(2, &[], -5))],
    );
    let input = [hyper.clone(), on.clone(), off.clone()];
    let kept = remove_redundant(&input, false, &LimitConfig::default()).unwrap();
    assert_eq!(kept.len(), 2);
    // every point of every removed component still lies in the union of
    // the kept ones (here: the planted point satisfies the hyperbola)
    for z in solve_zero_dim(&on).unwrap() {
        let w = point_in_quasi_component(&z, &hyper);
        assert!(w.cases.iter().all(|(_, b)| *b));
    }
    // and the kept components are exactly the non-redundant ones
    assert_eq!(kept[0].polys().len(), 1);
    assert_eq!(kept[1].polys().len(), 2);
    let z = &solve_zero_dim(&kept[1]).unwrap()[0];
    assert_eq!(z.render(), "(0, 5)");
}
