//! End-to-end acceptance gate. Each criterion prints one PASS/FAIL line
//! (visible with `--nocapture`) and fails the build on violation. All
//! tolerances and time budgets are pinned here.

use std::time::{Duration, Instant};

use qclim_core::accuracy::prime_chain_check;
use qclim_core::chain::{
    limit_points, puiseux_expansions, solve_zero_dim, verify_limit_point, LimitConfig, LimitPoint,
    RegularChain,
};
use qclim_core::closure::remove_redundant;
use qclim_core::elim::resultant;
use qclim_core::mpoly::{Coeff, MPoly};
use qclim_core::numeric::{cross_check, numeric_branch_limits, numeric_h_r_roots};
use qclim_core::puiseux::PuiseuxClass;
use qclim_core::rat::{rat_int, Rational};
use qclim_core::tower::{Tower, TowerElement};
use qclim_core::upoly::UniPoly;
use qclim_core::vars::VarOrder;

const BUDGET_INTRO: Duration = Duration::from_secs(5);
const BUDGET_EMPTY: Duration = Duration::from_secs(1);
const BUDGET_WALKER: Duration = Duration::from_secs(60);
const WALKER_CASES: usize = 50;
const CROSS_CHECK_TOL: f64 = 1e-4;
const EXTRA_ACCURACY: usize = 5;

fn report(n: u32, label: &str, ok: bool) {
    println!("criterion {n} ({label}): {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} ({label}) failed");
}

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

/// R = {X1 X2^2 + X2 + 1, (X1 + 2) X1 X3^2 + (X2 + 1)(X3 + 1)}.
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

fn hyperbola() -> RegularChain {
    RegularChain::new(
        vars(&["X1", "X2"]),
        vec![mono(2, &[(0, 1), (1, 1)], 1).add(&mono(2, &[], -1))],
    )
}

const INTRO_POINTS: [&str; 4] =
    ["(-2, -1/2, -1)", "(-2, 1, -1)", "(0, -1, -1/2)", "(0, -1, 1)"];

fn renders(pts: &[LimitPoint]) -> Vec<String> {
    pts.iter().map(|p| p.render()).collect()
}

#[test]
fn criterion_1_intro_example_exact() {
    let t0 = Instant::now();
    let pts = limit_points(&intro_chain(), &LimitConfig::default()).unwrap();
    let elapsed = t0.elapsed();
    let exact = renders(&pts) == INTRO_POINTS && pts.iter().all(|p| p.tower.height() == 0);
    report(1, "intro example, exact points", exact && elapsed <= BUDGET_INTRO);
}

#[test]
fn criterion_2_unbounded_branch_gives_no_limit_points() {
    let chain = RegularChain::new(
        vars(&["X1", "X2"]),
        vec![mono(2, &[(0, 1), (1, 1)], 1).add(&mono(2, &[], -1))],
    );
    let t0 = Instant::now();
    let pts = limit_points(&chain, &LimitConfig::default()).unwrap();
    report(2, "hyperbola, empty limit set", pts.is_empty() && t0.elapsed() <= BUDGET_EMPTY);
}

fn keys_at(classes: &[PuiseuxClass], tau: usize) -> Vec<String> {
    let mut k: Vec<String> =
        classes.iter().map(|c| c.param.aligned_key(&c.tower, tau)).collect();
    k.sort();
    k
}

/// Cusp at accuracy 4, node and the first intro polynomial at accuracy 2,
/// each raised by `extra` and aligned back at the base accuracy.
fn classic_expansions(extra: usize) -> [Vec<String>; 3] {
    let cusp = mono(2, &[(1, 2)], 1).add(&mono(2, &[(0, 3)], -1));
    let node = mono(2, &[(1, 2)], 1).add(&mono(2, &[(0, 2)], -1));
    let r1 = mono(2, &[(0, 1), (1, 2)], 1)
        .add(&mono(2, &[(1, 1)], 1))
        .add(&mono(2, &[], 1));
    [
        keys_at(&puiseux_expansions(&cusp, 4 + extra).unwrap(), 4),
        keys_at(&puiseux_expansions(&node, 2 + extra).unwrap(), 2),
        keys_at(&puiseux_expansions(&r1, 2 + extra).unwrap(), 2),
    ]
}

#[test]
fn criterion_3_puiseux_classics() {
    let [cusp, node, r1] = classic_expansions(0);
    let ok = cusp == ["sigma=2 g=T^3"]
        && node == ["sigma=1 g=-T", "sigma=1 g=T"]
        && r1 == ["sigma=1 g=-1 - T"];
    report(3, "cusp, node, and intro curve expansions", ok);
}

/// Tiny deterministic generator for the random suites.
struct Lcg(u64);

impl Lcg {
    fn next_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        lo + ((self.0 >> 33) % (hi - lo + 1) as u64) as i64
    }
}

/// Random bivariate polynomial of degree <= 4 in each variable, made
/// general in Y (the leading Y-coefficient does not vanish at X = 0).
fn walker_poly(rng: &mut Lcg) -> MPoly<Rational> {
    let d = rng.next_in(1, 4) as u32;
    let mut f = MPoly::zero(2);
    for k in 0..=d {
        for i in 0..=4u32 {
            let c = rng.next_in(-3, 3);
            if c != 0 {
                f = f.add(&mono(2, &[(0, i), (1, k)], c));
            }
        }
    }
    if f.coeff_of_power(1, d).coeff_of_power(0, 0).is_zero() {
        f = f.add(&mono(2, &[(1, d)], 1));
    }
    f
}

/// Norm of a tower element: the univariate polynomial over the rationals
/// whose roots are the element's values across all embeddings, computed
/// by iterated resultants against the (monic) tower moduli.
fn norm_poly(tower: &Tower, c: &TowerElement) -> UniPoly {
    if let Some(r) = c.as_rational() {
        return UniPoly::new(vec![-r, rat_int(1)]);
    }
    let h = tower.height();
    let mut r = mono(h + 1, &[(h, 1)], 1).add(&c.poly().extend_nvars(h + 1).map_coeffs(|x| -x.clone()));
    for k in (0..h).rev() {
        r = resultant(&tower.moduli()[k].extend_nvars(h + 1), &r, k);
    }
    UniPoly::from_mpoly(&r, h).expect("norm must be univariate")
}

fn constant_term(class: &PuiseuxClass) -> TowerElement {
    class
        .param
        .terms
        .first()
        .filter(|(e, _)| *e == 0)
        .map(|(_, b)| b.clone())
        .unwrap_or_else(TowerElement::zero)
}

#[test]
fn criterion_4_walker_constant_terms() {
    let t0 = Instant::now();
    let mut rng = Lcg(0x9e3779b97f4a7c15);
    let mut all_ok = true;
    for _ in 0..WALKER_CASES {
        let f = walker_poly(&mut rng);
        let classes = puiseux_expansions(&f, 2).unwrap();
        // product of the norms of the constant terms, squarefree
        let mut prod = UniPoly::one();
        for c in &classes {
            prod = prod.mul(&norm_poly(&c.tower, &constant_term(c)));
        }
        let got = prod.squarefree_part().monic();
        // distinct roots of f(0, Y)
        let d = f.degree(1).unwrap();
        let fiber = UniPoly::new(
            (0..=d)
                .map(|k| {
                    f.coeff_of_power(1, k)
                        .coeff_of_power(0, 0)
                        .terms()
                        .next()
                        .map(|(_, v)| v.clone())
                        .unwrap_or_else(|| rat_int(0))
                })
                .collect(),
        );
        let want = fiber.squarefree_part().monic();
        if got != want {
            all_ok = false;
            eprintln!(
                "constant terms disagree with the special fiber for {}",
                f.render_with(|i| ["X", "Y"][i].to_string())
            );
        }
    }
    report(4, "constant terms = special-fiber roots, 50 random curves", all_ok && t0.elapsed() <= BUDGET_WALKER);
}

#[test]
fn criterion_5_numeric_cross_check() {
    let chain = intro_chain();
    let sym = limit_points(&chain, &LimitConfig::default()).unwrap();
    let mut numeric = Vec::new();
    for alpha in numeric_h_r_roots(&chain).unwrap() {
        numeric.extend(numeric_branch_limits(&chain, alpha, &qclim_core::numeric::DEFAULT_EPSILONS).points);
    }
    let rep = cross_check(&sym, &numeric, CROSS_CHECK_TOL);
    report(5, "numeric cross-check at both fiber points", rep.is_full_match() && rep.matched == 4);
}

#[test]
fn criterion_6_accuracy_stability() {
    let over = LimitConfig { extra: EXTRA_ACCURACY, ..LimitConfig::default() };
    let intro = renders(&limit_points(&intro_chain(), &over).unwrap()) == INTRO_POINTS;
    let empty = limit_points(&hyperbola(), &over).unwrap().is_empty();
    let classics = classic_expansions(0) == classic_expansions(EXTRA_ACCURACY);
    report(6, "outputs stable under +5 accuracy", intro && empty && classics);
}

#[test]
fn criterion_7_redundancy_removal() {
    let v = vars(&["X1", "X2", "X3"]);
    // three redundant zero-dimensional components planted on the intro
    // chain: two limit points and one point of the quasi-component
    let lim1 = RegularChain::new(
        v.clone(),
        vec![
            mono(3, &[(0, 1)], 1),
            mono(3, &[(1, 1)], 1).add(&mono(3, &[], 1)),
            mono(3, &[(2, 1)], 1).add(&mono(3, &[], -1)),
        ],
    );
    let lim2 = RegularChain::new(
        v.clone(),
        vec![
            mono(3, &[(0, 1)], 1).add(&mono(3, &[], 2)),
            mono(3, &[(1, 1)], 1).add(&mono(3, &[], -1)),
            mono(3, &[(2, 1)], 1).add(&mono(3, &[], 1)),
        ],
    );
    // X1 = 1, X2^2 + X2 + 1 = 0, 3 X3^2 + (X2 + 1) X3 + (X2 + 1) = 0
    let wpoint = RegularChain::new(
        v.clone(),
        vec![
            mono(3, &[(0, 1)], 1).add(&mono(3, &[], -1)),
            mono(3, &[(1, 2)], 1).add(&mono(3, &[(1, 1)], 1)).add(&mono(3, &[], 1)),
            mono(3, &[(2, 2)], 3)
                .add(&mono(3, &[(1, 1), (2, 1)], 1))
                .add(&mono(3, &[(2, 1)], 1))
                .add(&mono(3, &[(1, 1)], 1))
                .add(&mono(3, &[], 1)),
        ],
    );
    // off the closure: r1(1, 0) = 1, so this point is kept
    let keeper = RegularChain::new(
        v.clone(),
        vec![
            mono(3, &[(0, 1)], 1).add(&mono(3, &[], -1)),
            mono(3, &[(1, 1)], 1),
            mono(3, &[(2, 1)], 1),
        ],
    );
    let input = [intro_chain(), lim1, lim2, wpoint, keeper];
    let kept = remove_redundant(&input, false, &LimitConfig::default()).unwrap();
    let ok = kept.len() == 2
        && kept[0].polys().len() == 2
        && kept[1].polys().len() == 3
        && renders(&solve_zero_dim(&kept[1]).unwrap()) == ["(1, 0, 0)"];
    report(7, "three planted redundant points removed, keeper kept", ok);
}

#[test]
fn criterion_8_prime_chain_structure() {
    let mut ok = true;
    for d in 1..=3 {
        for tau in 1..=3 {
            if !prime_chain_check(d, tau) {
                ok = false;
                eprintln!("prime-chain structure fails at d={d}, tau={tau}");
            }
        }
    }
    report(8, "prime-chain structure for all d <= 3, tau <= 3", ok);
}

#[test]
fn criterion_9_membership_gate() {
    // every limit point emitted across a sweep of chains satisfies the
    // chain equations and kills h_R
    let cfg = LimitConfig::default();
    let mut emitted = 0usize;
    let mut violations = 0usize;
    let mut gate = |chain: &RegularChain| {
        for z in limit_points(chain, &cfg).unwrap() {
            emitted += 1;
            if !verify_limit_point(chain, &z) {
                violations += 1;
                eprintln!("membership violated at {}", z.render());
            }
        }
    };
    gate(&intro_chain());
    gate(&hyperbola());
    gate(&RegularChain::new(
        vars(&["X1", "X2"]),
        vec![mono(2, &[(0, 1), (1, 2)], 1).add(&mono(2, &[(1, 1)], 1)).add(&mono(2, &[], 1))],
    ));
    let mut rng = Lcg(0xfeed_5eed_0123_4567);
    let mut tried = 0;
    while tried < 10 {
        // r = X1 * A(X1) * X2^d + lower random terms
        let d = rng.next_in(1, 3) as u32;
        let mut a = mono(2, &[], rng.next_in(1, 2));
        if rng.next_in(0, 1) == 1 {
            a = a.add(&mono(2, &[(0, 1)], rng.next_in(-2, 2)));
        }
        let mut r = mono(2, &[(0, 1), (1, d)], 1).mul(&a);
        for k in 0..d {
            for i in 0..3u32 {
                let c = rng.next_in(-2, 2);
                if c != 0 {
                    r = r.add(&mono(2, &[(0, i), (1, k)], c));
                }
            }
        }
        if r.degree(1) != Some(d) {
            continue;
        }
        let chain = RegularChain::new(vars(&["X1", "X2"]), vec![r]);
        if !chain.validate().is_valid() {
            continue;
        }
        gate(&chain);
        tried += 1;
    }
    report(9, "membership gate over the emission sweep", violations == 0 && emitted >= 4);
}
