//! Regular chains and their limit points.
//!
//! A *regular chain* here is a triangular system `r_1, ..., r_{s-1}` in
//! ordered variables `X_1 < ... < X_s`, where `r_i` introduces `X_{i+1}`
//! and its leading coefficient (the *initial* `h_i`) is univariate in
//! `X_1` — the chain is strongly normalized. The quasi-component `W(R)` is
//! the zero set of the chain minus the locus where `h_R = h_1 ... h_{s-1}`
//! vanishes.
//!
//! The closure of `W(R)` adds finitely many *limit points*, all sitting
//! over the roots of `h_R`. They are computed by expanding the system in
//! truncated Puiseux series around each root `alpha`: level by level the
//! next polynomial is specialized at the parametrizations found so far,
//! expanded with [`newton_puiseux`], and the branches composed through the
//! parameter ladder; evaluating bounded branches at `T = 0` yields the
//! limit points. Series are carried to the accuracies of a per-level plan
//! ([`chain_accuracies`]); when the expansion signals that the plan was
//! too tight, the plan is doubled and the computation rerun, up to a
//! configurable ceiling.

use crate::accuracy::{accuracy_estimate, chain_accuracies, AccuracyMode};
use crate::mpoly::{Coeff, MPoly};
use crate::puiseux::{newton_puiseux, EngineError, PuiseuxClass, SeriesPoly};
use crate::rat::{rat_int, render_rational, Rational};
use crate::series::{Acc, SeriesOrder, TruncSeries};
use crate::tower::{roots_split, SplitResult, Tower, TowerElement};
use crate::upoly::UniPoly;
use crate::vars::VarOrder;

/// Failure while computing limit points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainError {
    /// The input is not a chain this engine accepts; the strings are the
    /// individual violations.
    Invalid(Vec<String>),
    /// Accuracy escalation hit the configured ceiling.
    Accuracy(String),
    /// Structural failure that more accuracy cannot fix.
    Internal(String),
}

impl std::fmt::Display for ChainError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChainError::Invalid(v) => write!(f, "invalid chain: {}", v.join("; ")),
            ChainError::Accuracy(s) => write!(f, "accuracy ceiling reached: {s}"),
            ChainError::Internal(s) => write!(f, "internal failure: {s}"),
        }
    }
}

impl std::error::Error for ChainError {}

/// A triangular system over the rationals.
#[derive(Debug, Clone)]
pub struct RegularChain {
    vars: VarOrder,
    polys: Vec<MPoly<Rational>>,
}

/// Outcome of validation: empty means the chain is accepted.
#[derive(Debug, Clone, Default)]
pub struct ChainDiagnostics {
    pub violations: Vec<String>,
}

impl ChainDiagnostics {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl RegularChain {
    pub fn new(vars: VarOrder, polys: Vec<MPoly<Rational>>) -> Self {
        RegularChain { vars, polys }
    }

    pub fn vars(&self) -> &VarOrder {
        &self.vars
    }

    pub fn polys(&self) -> &[MPoly<Rational>] {
        &self.polys
    }

    /// Free variables: number of variables minus number of polynomials.
    pub fn dimension(&self) -> usize {
        self.vars.len() - self.polys.len()
    }

    /// Initial (leading coefficient w.r.t. the main variable) of each
    /// polynomial.
    pub fn initials(&self) -> Vec<MPoly<Rational>> {
        self.polys
            .iter()
            .map(|p| {
                let mv = p.main_var().expect("validated polynomials are non-constant");
                let d = p.degree(mv).unwrap();
                p.coeff_of_power(mv, d)
            })
            .collect()
    }

    /// Product of the initials.
    pub fn h_r(&self) -> MPoly<Rational> {
        let one = MPoly::constant(self.vars.len(), rat_int(1));
        self.initials().iter().fold(one, |acc, h| acc.mul(h))
    }

    /// Main degree of each polynomial.
    pub fn main_degrees(&self) -> Vec<u32> {
        self.polys
            .iter()
            .map(|p| {
                let mv = p.main_var().unwrap();
                p.degree(mv).unwrap()
            })
            .collect()
    }

    /// Check the one-dimensional strongly-normalized shape the limit-point
    /// engine requires: variables `X_1 < ... < X_s` with `s >= 2`,
    /// polynomial `i` introducing `X_{i+2}` (0-based `i`), every initial
    /// univariate in `X_1`.
    pub fn validate(&self) -> ChainDiagnostics {
        let mut v = Vec::new();
        let s = self.vars.len();
        if s < 2 {
            v.push("need at least two variables".to_string());
        }
        if self.polys.len() + 1 != s {
            v.push(format!(
                "expected {} polynomials for dimension one, got {}",
                s.saturating_sub(1),
                self.polys.len()
            ));
            return ChainDiagnostics { violations: v };
        }
        for (i, p) in self.polys.iter().enumerate() {
            let name = self.vars.name(i + 1);
            match p.main_var() {
                Some(mv) if mv == i + 1 => {
                    let d = p.degree(mv).unwrap();
                    let init = p.coeff_of_power(mv, d);
                    match init.main_var() {
                        None | Some(0) => {}
                        Some(w) => v.push(format!(
                            "initial of the polynomial in {} involves {}, not only {}",
                            name,
                            self.vars.name(w),
                            self.vars.name(0)
                        )),
                    }
                }
                Some(mv) => v.push(format!(
                    "polynomial {} has main variable {}, expected {}",
                    i + 1,
                    self.vars.name(mv),
                    name
                )),
                None => v.push(format!("polynomial {} is constant", i + 1)),
            }
        }
        ChainDiagnostics { violations: v }
    }

    /// Check the zero-dimensional triangular shape (one polynomial per
    /// variable, ascending main variables).
    pub fn validate_zero_dim(&self) -> ChainDiagnostics {
        let mut v = Vec::new();
        if self.polys.len() != self.vars.len() {
            v.push(format!(
                "expected {} polynomials for dimension zero, got {}",
                self.vars.len(),
                self.polys.len()
            ));
            return ChainDiagnostics { violations: v };
        }
        for (i, p) in self.polys.iter().enumerate() {
            match p.main_var() {
                Some(mv) if mv == i => {}
                None if p.degree(i) == Some(0) => {
                    v.push(format!("polynomial {} is constant", i + 1))
                }
                other => v.push(format!(
                    "polynomial {} has main variable {:?}, expected {}",
                    i + 1,
                    other.map(|w| self.vars.name(w).to_string()),
                    self.vars.name(i)
                )),
            }
        }
        ChainDiagnostics { violations: v }
    }
}

/// Substitute `X_1 -> X_1 + alpha` (exactly, over the rationals).
pub fn shift_chain(chain: &RegularChain, alpha: &Rational) -> RegularChain {
    let polys = chain
        .polys
        .iter()
        .map(|p| p.shift_var(0, alpha))
        .collect();
    RegularChain::new(chain.vars.clone(), polys)
}

/// A point of the closure: coordinates in an extension tower. The tower
/// is pruned (no degree-one moduli), so rational points have an empty
/// tower.
#[derive(Debug, Clone)]
pub struct LimitPoint {
    pub tower: Tower,
    pub coords: Vec<TowerElement>,
}

impl LimitPoint {
    /// `(c_1, ..., c_s)`, plus the defining moduli when not rational.
    pub fn render(&self) -> String {
        let coords = self
            .coords
            .iter()
            .map(|c| c.render())
            .collect::<Vec<_>>()
            .join(", ");
        if self.tower.height() == 0 {
            format!("({coords})")
        } else {
            format!("({coords}) where {} = 0", self.tower.render())
        }
    }

    fn dedup_key(&self) -> String {
        format!("{} | {}", self.render(), self.tower.render())
    }
}

/// Evaluate a rational polynomial at the point.
pub fn eval_at_point(p: &MPoly<Rational>, z: &LimitPoint) -> TowerElement {
    let pt = p.map_coeffs(|r| z.tower.rational(r.clone()));
    z.tower.transport(&pt.eval_all(&z.coords))
}

/// Membership check used across the test suite: all chain polynomials
/// vanish at `z` and so does `h_R` (limit points are non-trivial).
pub fn verify_limit_point(chain: &RegularChain, z: &LimitPoint) -> bool {
    chain.polys.iter().all(|p| Coeff::is_zero(&eval_at_point(p, z)))
        && Coeff::is_zero(&eval_at_point(&chain.h_r(), z))
}

/// How the limit-point computation handles accuracy.
#[derive(Debug, Clone, Copy)]
pub struct LimitConfig {
    pub mode: AccuracyMode,
    /// Maximum escalation factor over the initial plan (and ceiling
    /// multiplier for the iterative estimator).
    pub ceiling: usize,
    /// Extra accuracy added on top of every planned entry. The result
    /// must not depend on it; it exists to over-provision (and to test
    /// that it indeed makes no difference).
    pub extra: usize,
}

impl Default for LimitConfig {
    fn default() -> Self {
        LimitConfig { mode: AccuracyMode::DegreeBound, ceiling: 64, extra: 0 }
    }
}

/// Truncated parametrization of the variables handled so far, all in one
/// parameter `T`: `X_1 = T^(x1_exp)`, `X_{j+2} = coords[j](T)`.
#[derive(Debug, Clone)]
pub struct ParamVector {
    pub tower: Tower,
    pub x1_exp: u64,
    pub coords: Vec<TruncSeries>,
    /// Ramification ladder: the `sigma` of each level, in order.
    pub sigmas: Vec<u32>,
}

impl ParamVector {
    fn new(tower: Tower) -> Self {
        ParamVector { tower, x1_exp: 1, coords: Vec::new(), sigmas: Vec::new() }
    }

    /// Compose with one more level: substitute `T -> T^sigma` into all
    /// earlier coordinates, then append the new one.
    fn compose(&self, class: &PuiseuxClass) -> ParamVector {
        let sigma = class.param.sigma;
        let tower = class.tower.clone();
        let mut coords: Vec<TruncSeries> = self
            .coords
            .iter()
            .map(|c| c.transport(&tower).stretch(sigma as usize))
            .collect();
        coords.push(class.param.g_series(&tower));
        let mut sigmas = self.sigmas.clone();
        sigmas.push(sigma);
        ParamVector { tower, x1_exp: self.x1_exp * sigma as u64, coords, sigmas }
    }
}

/// Specialize `r` (a polynomial in `X_1, ..., X_{i+2}`) at the
/// parametrization: a polynomial in its main variable whose coefficients
/// are truncated series in `T`.
pub fn substitute_param(r: &MPoly<TowerElement>, pv: &ParamVector) -> SeriesPoly {
    let tower = &pv.tower;
    let mv = r.main_var().expect("level polynomial must involve its main variable");
    let d = r.degree(mv).unwrap() as usize;
    // cached powers of each substituted series
    let mut pow_cache: Vec<Vec<TruncSeries>> = Vec::new();
    let one = TruncSeries::constant(tower.clone(), TowerElement::one());
    for c in &pv.coords {
        pow_cache.push(vec![one.clone(), c.transport(tower)]);
    }
    let mut power = |j: usize, e: usize| -> TruncSeries {
        while pow_cache[j].len() <= e {
            let last = pow_cache[j].last().unwrap().clone();
            let next = last.mul(&pow_cache[j][1]);
            pow_cache[j].push(next);
        }
        pow_cache[j][e].clone()
    };
    let mut coeffs = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let ck = r.coeff_of_power(mv, k as u32);
        let mut sum = TruncSeries::zero(tower.clone(), Acc::Exact);
        for (e, c) in ck.terms() {
            let mut term = TruncSeries::monomial(
                tower.clone(),
                tower.transport(c),
                pv.x1_exp as usize * e[0] as usize,
            );
            for (j, &ej) in e.iter().enumerate().skip(1) {
                if ej > 0 {
                    term = term.mul(&power(j - 1, ej as usize));
                }
            }
            sum = sum.add(&term);
        }
        coeffs.push(sum);
    }
    SeriesPoly::new(tower.clone(), coeffs)
}

/// Divide the level polynomial by the largest power of `T` dividing all
/// its coefficients, deciding orders per tower branch. Signals when the
/// known accuracy cannot pin that power down.
fn make_general(f: &SeriesPoly) -> Result<SplitResult<SeriesPoly>, EngineError> {
    let mut work: Vec<(Tower, usize, SeriesPoly, Vec<SeriesOrder>)> =
        vec![(f.tower().clone(), 0, f.clone(), Vec::new())];
    let mut out = Vec::new();
    while let Some((tower, i, fb, orders)) = work.pop() {
        if i < fb.coeffs().len() {
            for (bt, o) in fb.coeffs()[i].order_split().cases {
                let mut os = orders.clone();
                os.push(o);
                work.push((bt.clone(), i + 1, fb.transport(&bt), os));
            }
            continue;
        }
        let mut delta: Option<usize> = None;
        for o in &orders {
            if let SeriesOrder::Known(j) = o {
                delta = Some(delta.map_or(*j, |d: usize| d.min(*j)));
            }
        }
        let delta = match delta {
            Some(d) => d,
            None => {
                return Err(EngineError::InsufficientAccuracy(
                    "level polynomial vanishes to its known accuracy".into(),
                ))
            }
        };
        for o in &orders {
            if let SeriesOrder::AllZero(Acc::To(m)) = o {
                if *m < delta {
                    return Err(EngineError::InsufficientAccuracy(format!(
                        "content order {delta} not separated from a coefficient \
                         known only to accuracy {m}"
                    )));
                }
            }
        }
        if delta == 0 {
            out.push((tower, fb));
        } else {
            let coeffs = fb.coeffs().iter().map(|c| c.shift_down(delta)).collect();
            let divided = SeriesPoly::new(tower.clone(), coeffs);
            out.push((tower, divided));
        }
    }
    out.sort_by(|a, b| a.0.render().cmp(&b.0.render()));
    Ok(SplitResult { cases: out })
}

/// Vanishing order of a univariate polynomial (coefficients ascending)
/// at 0, decided per tower branch.
fn vanishing_order(tower: &Tower, coeffs: &[TowerElement]) -> SplitResult<usize> {
    let mut work: Vec<(Tower, usize)> = vec![(tower.clone(), 0)];
    let mut out = Vec::new();
    while let Some((t, k)) = work.pop() {
        if k == coeffs.len() {
            // identically zero: treated as maximal order (callers reject)
            out.push((t, coeffs.len()));
            continue;
        }
        let c = t.transport(&coeffs[k]);
        for (bt, is_zero) in t.is_zero_split(&c).cases {
            if is_zero {
                work.push((bt, k + 1));
            } else {
                out.push((bt, k));
            }
        }
    }
    out.sort_by(|a, b| a.0.render().cmp(&b.0.render()));
    SplitResult { cases: out }
}

/// Initial of a tower-coefficient polynomial w.r.t. its main variable,
/// as a univariate polynomial in `X_1` (ascending coefficients).
fn initial_in_x1(p: &MPoly<TowerElement>) -> Vec<TowerElement> {
    let mv = p.main_var().unwrap();
    let init = p.coeff_of_power(mv, p.degree(mv).unwrap());
    init.as_univariate(0)
        .iter()
        .map(|c| {
            c.terms()
                .next()
                .map(|(_, v)| v.clone())
                .unwrap_or_else(TowerElement::zero)
        })
        .collect()
}

/// Accuracy plans per tower branch: the vanishing orders of the initials
/// can differ between branches of a reducible modulus.
fn plan_split(
    tower: &Tower,
    polys: &[MPoly<TowerElement>],
    degrees: &[u32],
    mode: AccuracyMode,
) -> SplitResult<Vec<usize>> {
    let mut work: Vec<(Tower, usize, Vec<usize>)> = vec![(tower.clone(), 0, Vec::new())];
    let mut out = Vec::new();
    while let Some((t, i, deltas)) = work.pop() {
        if i == polys.len() {
            out.push((t, chain_accuracies(degrees, &deltas, mode)));
            continue;
        }
        let h = initial_in_x1(&polys[i]);
        for (bt, d) in vanishing_order(&t, &h).cases {
            let mut ds = deltas.clone();
            ds.push(d);
            work.push((bt, i + 1, ds));
        }
    }
    out.sort_by(|a, b| a.0.render().cmp(&b.0.render()));
    SplitResult { cases: out }
}

/// One full pass of the level-by-level expansion under a fixed plan.
/// `polys` are the chain polynomials already shifted so that the root of
/// interest is at `X_1 = 0`.
fn at_zero_with_plan(
    base: &Tower,
    polys: &[MPoly<TowerElement>],
    plan: &[usize],
    cfg: &LimitConfig,
) -> Result<Vec<LimitPoint>, EngineError> {
    let n = polys.len();
    let mut points = Vec::new();
    let mut work: Vec<(ParamVector, usize)> = vec![(ParamVector::new(base.clone()), 0)];
    while let Some((pv, i)) = work.pop() {
        if i == n {
            // evaluate at T = 0; pruning is deferred to the callers, who
            // may still need the full tower (to add back a shift)
            let mut coords = vec![TowerElement::zero()];
            for c in &pv.coords {
                coords.push(c.constant_term());
            }
            points.push(LimitPoint { tower: pv.tower, coords });
            continue;
        }
        let poly = polys[i].map_coeffs(|c| pv.tower.transport(c));
        let f = substitute_param(&poly, &pv);
        let branches = if i == 0 {
            SplitResult::single(pv.tower.clone(), f)
        } else {
            make_general(&f)?
        };
        for (bt, fb) in branches.cases {
            if cfg.mode == AccuracyMode::Iterative {
                let available = fb
                    .coeffs()
                    .iter()
                    .filter_map(|c| c.acc().finite())
                    .min();
                if let Some(avail) = available {
                    let est = accuracy_estimate(&fb, plan[i], plan[i] * cfg.ceiling.max(1))?;
                    if est > avail {
                        return Err(EngineError::InsufficientAccuracy(format!(
                            "level {} estimate {} exceeds available accuracy {}",
                            i + 1,
                            est,
                            avail
                        )));
                    }
                }
            }
            let pv_b = ParamVector {
                tower: bt.clone(),
                x1_exp: pv.x1_exp,
                coords: pv.coords.iter().map(|c| c.transport(&bt)).collect(),
                sigmas: pv.sigmas.clone(),
            };
            for class in newton_puiseux(&fb, plan[i])? {
                work.push((pv_b.compose(&class), i + 1));
            }
        }
    }
    Ok(points)
}

/// Expansion with plan escalation: on an insufficient-accuracy signal all
/// non-final accuracies are doubled and the pass rerun, up to
/// `cfg.ceiling` times the initial plan.
fn at_zero_escalating(
    base: &Tower,
    polys: &[MPoly<TowerElement>],
    plan0: &[usize],
    cfg: &LimitConfig,
) -> Result<Vec<LimitPoint>, ChainError> {
    let n = plan0.len();
    let mut factor = 1usize;
    loop {
        let plan: Vec<usize> = plan0
            .iter()
            .enumerate()
            .map(|(i, &t)| if i + 1 == n { t + cfg.extra } else { t * factor + cfg.extra })
            .collect();
        match at_zero_with_plan(base, polys, &plan, cfg) {
            Ok(points) => return Ok(points),
            Err(EngineError::InsufficientAccuracy(msg)) => {
                factor *= 2;
                if factor > cfg.ceiling.max(1) {
                    return Err(ChainError::Accuracy(format!(
                        "escalation factor {factor} exceeds ceiling {}: {msg}",
                        cfg.ceiling
                    )));
                }
            }
            Err(EngineError::Degenerate(msg)) => return Err(ChainError::Internal(msg)),
        }
    }
}

fn prune_point(z: LimitPoint) -> LimitPoint {
    let (tower, coords) = z.tower.pruned(&z.coords);
    LimitPoint { tower, coords }
}

fn dedup_points(points: Vec<LimitPoint>) -> Vec<LimitPoint> {
    let mut points: Vec<LimitPoint> = points.into_iter().map(prune_point).collect();
    points.sort_by_key(|p| p.dedup_key());
    points.dedup_by_key(|p| p.dedup_key());
    points
}

/// Limit points of `W(R)` whose `X_1`-coordinate is 0 — the root of
/// `h_R` at the origin. Empty when `h_R(0) != 0`.
pub fn limit_points_at_zero(
    chain: &RegularChain,
    cfg: &LimitConfig,
) -> Result<Vec<LimitPoint>, ChainError> {
    let diag = chain.validate();
    if !diag.is_valid() {
        return Err(ChainError::Invalid(diag.violations));
    }
    // limit points only sit over roots of h_R
    let h0 = chain
        .h_r()
        .coeff_of_power(0, 0)
        .terms()
        .next()
        .map(|(_, c)| c.clone())
        .unwrap_or_else(|| rat_int(0));
    if !num_traits::Zero::is_zero(&h0) {
        return Ok(Vec::new());
    }
    let base = Tower::empty();
    let polys: Vec<MPoly<TowerElement>> = chain
        .polys
        .iter()
        .map(|p| p.map_coeffs(|r| base.rational(r.clone())))
        .collect();
    let degrees = chain.main_degrees();
    let mut out = Vec::new();
    for (t, plan) in plan_split(&base, &polys, &degrees, cfg.mode).cases {
        let polys_t: Vec<MPoly<TowerElement>> =
            polys.iter().map(|p| p.map_coeffs(|c| t.transport(c))).collect();
        out.extend(at_zero_escalating(&t, &polys_t, &plan, cfg)?);
    }
    Ok(dedup_points(out))
}

/// Limit points of `W(R)` over a specific rational root of `h_R`:
/// the chain is shifted so the root sits at the origin, expanded there,
/// and the first coordinate shifted back. Empty when `h_R(alpha) != 0`.
pub fn limit_points_at(
    chain: &RegularChain,
    alpha: &Rational,
    cfg: &LimitConfig,
) -> Result<Vec<LimitPoint>, ChainError> {
    let shifted = shift_chain(chain, alpha);
    let mut pts = limit_points_at_zero(&shifted, cfg)?;
    if !num_traits::Zero::is_zero(alpha) {
        let a = Tower::empty().rational(alpha.clone());
        for z in &mut pts {
            z.coords[0] = z.coords[0].add(&z.tower.transport(&a));
        }
    }
    Ok(pts)
}

/// All non-trivial limit points of `W(R)`: one expansion per root class
/// of the squarefree part of `h_R`, shifted back afterwards.
pub fn limit_points(
    chain: &RegularChain,
    cfg: &LimitConfig,
) -> Result<Vec<LimitPoint>, ChainError> {
    let diag = chain.validate();
    if !diag.is_valid() {
        return Err(ChainError::Invalid(diag.violations));
    }
    let h = chain.h_r();
    let hu = match UniPoly::from_mpoly(&h, 0) {
        Some(u) => u,
        None => {
            return Err(ChainError::Invalid(vec![
                "product of initials is not univariate in the free variable".into(),
            ]))
        }
    };
    if hu.degree().unwrap_or(0) == 0 {
        // h_R constant and nonzero: W(R) is already closed
        return Ok(Vec::new());
    }
    let base = Tower::empty();
    let h_elems: Vec<TowerElement> = hu
        .squarefree_part()
        .coeffs()
        .iter()
        .map(|c| base.rational(c.clone()))
        .collect();
    let mut out = Vec::new();
    for (t_alpha, class) in roots_split(&base, &h_elems).cases {
        let alpha = class.root;
        // shift the chain so this root sits at the origin
        let shifted: Vec<MPoly<TowerElement>> = chain
            .polys
            .iter()
            .map(|p| {
                p.map_coeffs(|r| t_alpha.rational(r.clone()))
                    .shift_var(0, &alpha)
            })
            .collect();
        let degrees = chain.main_degrees();
        for (t, plan) in plan_split(&t_alpha, &shifted, &degrees, cfg.mode).cases {
            let polys_t: Vec<MPoly<TowerElement>> =
                shifted.iter().map(|p| p.map_coeffs(|c| t.transport(c))).collect();
            for mut z in at_zero_escalating(&t, &polys_t, &plan, cfg)? {
                // shift back: the point's tower extends the one alpha
                // lives in, so the first coordinate becomes alpha itself
                coords_set_first(&mut z, &alpha);
                out.push(z);
            }
        }
    }
    Ok(dedup_points(out))
}

/// Replace the first coordinate `0` of a point computed on the shifted
/// chain with `alpha` transported into the point's (unpruned) tower.
fn coords_set_first(z: &mut LimitPoint, alpha: &TowerElement) {
    let alpha_t = z.tower.transport(alpha);
    z.coords[0] = z.coords[0].add(&alpha_t);
}

/// Solve a zero-dimensional triangular system by successive root
/// adjunction. Every solution class is returned as a point.
pub fn solve_zero_dim(chain: &RegularChain) -> Result<Vec<LimitPoint>, ChainError> {
    let diag = chain.validate_zero_dim();
    if !diag.is_valid() {
        return Err(ChainError::Invalid(diag.violations));
    }
    let mut states: Vec<(Tower, Vec<TowerElement>)> = vec![(Tower::empty(), Vec::new())];
    for p in &chain.polys {
        let mut next = Vec::new();
        for (t, coords) in states {
            let pt = p.map_coeffs(|r| t.rational(r.clone()));
            // substitute the known coordinates, leaving the main variable
            let mv = pt.main_var().unwrap();
            let mut uni: Vec<TowerElement> = Vec::new();
            for k in 0..=pt.degree(mv).unwrap() {
                let c = pt.coeff_of_power(mv, k);
                let mut vals = coords.clone();
                vals.resize(pt.nvars(), TowerElement::zero());
                uni.push(t.transport(&c.eval_all(&vals)));
            }
            for (bt, class) in roots_split(&t, &uni).cases {
                let mut cs: Vec<TowerElement> =
                    coords.iter().map(|c| bt.transport(c)).collect();
                cs.push(class.root);
                next.push((bt, cs));
            }
        }
        states = next;
    }
    Ok(dedup_points(
        states
            .into_iter()
            .map(|(tower, coords)| LimitPoint { tower, coords })
            .collect(),
    ))
}

/// Expansion classes of an exact bivariate polynomial (first variable the
/// parameter, second the unknown) — the direct interface to the series
/// engine.
pub fn puiseux_expansions(
    f: &MPoly<Rational>,
    tau: usize,
) -> Result<Vec<PuiseuxClass>, ChainError> {
    if f.is_zero() {
        return Err(ChainError::Invalid(vec!["zero polynomial".into()]));
    }
    let sp = SeriesPoly::from_bivariate(Tower::empty(), f);
    newton_puiseux(&sp, tau).map_err(|e| match e {
        EngineError::InsufficientAccuracy(m) => ChainError::Accuracy(m),
        EngineError::Degenerate(m) => ChainError::Internal(m),
    })
}

/// Render a rational as its decimal-free exact form (re-exported for
/// display call sites).
pub fn render_coord(r: &Rational) -> String {
    render_rational(r)
}
