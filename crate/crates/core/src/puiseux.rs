//! Finite-accuracy Newton–Puiseux expansion.
//!
//! Given a polynomial `f(T, Y)` whose coefficients are truncated series in
//! `T` over an extension tower, this module enumerates the Puiseux
//! expansions `Y(T)` of `f = 0` that stay bounded as `T -> 0`, each to a
//! requested accuracy `tau`. A branch is reported as a *parametrization*
//! `(T^sigma, g(T))`: substituting `T^sigma` for the original parameter
//! makes the fractional exponents integral.
//!
//! The expansion works on the Newton polygon of `f`: the lower convex hull
//! of the points `(i, ord a_i)`. Each hull edge of admissible slope yields
//! a *segment polynomial* `phi` whose roots are the possible leading
//! coefficients; substituting a root and rescaling produces the next-level
//! polynomial, and the recursion bottoms out when the requested accuracy
//! is reached or a branch terminates exactly.
//!
//! Coefficients may be known only up to an accuracy. The polygon
//! construction *audits* every column whose order is undecided: using the
//! support function of the known points it checks that no hidden
//! coefficient could alter any polygon feature that is still relevant at
//! accuracy `tau`. If one could, [`EngineError::InsufficientAccuracy`] is
//! raised and the caller is expected to restart with more terms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::mpoly::{Coeff, MPoly};
use crate::rat::Rational;
use crate::series::{Acc, SeriesOrder, TruncSeries};
use crate::tower::{qth_root_split, roots_split, SplitResult, Tower, TowerElement};

/// Polynomial in `Y` with truncated-series coefficients.
#[derive(Debug, Clone)]
pub struct SeriesPoly {
    tower: Tower,
    /// `coeffs[i]` is the coefficient of `Y^i`; trailing coefficients that
    /// are exactly zero are trimmed.
    coeffs: Vec<TruncSeries>,
}

impl SeriesPoly {
    pub fn new(tower: Tower, mut coeffs: Vec<TruncSeries>) -> Self {
        while matches!(coeffs.last(), Some(c) if c.acc().is_exact() && c.is_known_zero()) {
            coeffs.pop();
        }
        let coeffs = coeffs.into_iter().map(|c| c.transport(&tower)).collect();
        SeriesPoly { tower, coeffs }
    }

    /// Exact bivariate input `f(X, Y)` with `X` = variable 0, `Y` = 1.
    pub fn from_bivariate(tower: Tower, f: &MPoly<Rational>) -> Self {
        assert!(f.nvars() == 2);
        let d = f.degree(1).map_or(0, |d| d as usize);
        let mut coeffs = Vec::with_capacity(d + 1);
        for i in 0..=d {
            let ci = f.coeff_of_power(1, i as u32);
            let dx = ci.degree(0).map_or(0, |d| d as usize);
            let mut c = vec![TowerElement::zero(); dx + 1];
            for (e, v) in ci.terms() {
                c[e[0] as usize] = tower.rational(v.clone());
            }
            coeffs.push(TruncSeries::new(tower.clone(), c, Acc::Exact));
        }
        SeriesPoly::new(tower, coeffs)
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn coeffs(&self) -> &[TruncSeries] {
        &self.coeffs
    }

    /// Nominal degree in `Y` (trailing exact zeros already trimmed);
    /// `None` when the polynomial is exactly zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn transport(&self, tower: &Tower) -> SeriesPoly {
        SeriesPoly {
            tower: tower.clone(),
            coeffs: self.coeffs.iter().map(|c| c.transport(tower)).collect(),
        }
    }

    /// Truncate every coefficient strictly below row `m` and mark the
    /// result exact: "what if these were all the terms".
    pub fn rows_truncated_exact(&self, m: usize) -> SeriesPoly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                TruncSeries::new(self.tower.clone(), c.truncated(m).coeffs().to_vec(), Acc::Exact)
            })
            .collect();
        SeriesPoly::new(self.tower.clone(), coeffs)
    }

    /// The approximation of accuracy `m`: rows below `m` kept, everything
    /// else declared unknown. Used by accuracy estimation to emulate how
    /// the polynomial would arrive from a truncated pipeline.
    pub fn rows_truncated_inexact(&self, m: usize) -> SeriesPoly {
        let coeffs = self.coeffs.iter().map(|c| c.truncated(m)).collect();
        SeriesPoly::new(self.tower.clone(), coeffs)
    }
}

/// One step of an expansion ladder: `Y = X^(p/q) (beta + next)` after the
/// substitution `X -> X^q`.
#[derive(Debug, Clone)]
pub struct CTerm {
    pub q: u32,
    pub p: u32,
    pub beta: TowerElement,
}

/// A parametrization `(T^sigma, g(T))` with `g = sum beta_i T^(delta_i)`.
#[derive(Debug, Clone)]
pub struct PuiseuxParam {
    pub sigma: u32,
    /// Sparse terms of `g`, exponents strictly increasing.
    pub terms: Vec<(usize, TowerElement)>,
    pub acc: Acc,
}

impl PuiseuxParam {
    /// `g` as a dense series over `tower`.
    pub fn g_series(&self, tower: &Tower) -> TruncSeries {
        let len = self.terms.last().map_or(0, |(d, _)| d + 1);
        let mut c = vec![TowerElement::zero(); len];
        for (d, b) in &self.terms {
            c[*d] = b.clone();
        }
        TruncSeries::new(tower.clone(), c, self.acc)
    }

    /// Canonical text of the pair, e.g. `(T^2, T^3 + O(T^4))`.
    pub fn render(&self, tower: &Tower) -> String {
        let x = if self.sigma == 1 {
            "T".to_string()
        } else {
            format!("T^{}", self.sigma)
        };
        format!("({}, {})", x, self.g_series(tower).render("T"))
    }

    /// Key for comparing outputs after truncation alignment: the pair
    /// `(sigma, g mod T^tau)` in canonical text.
    pub fn aligned_key(&self, tower: &Tower, tau: usize) -> String {
        let g = self.g_series(tower).truncated(tau);
        // drop the O() marker: alignment compares known prefixes
        let exact = TruncSeries::new(tower.clone(), g.coeffs().to_vec(), Acc::Exact);
        format!("sigma={} g={}", self.sigma, exact.render("T"))
    }
}

/// One expansion class: a parametrization over a tower branch, with the
/// number of plain expansions it accounts for (`mult * sigma` conjugates).
#[derive(Debug, Clone)]
pub struct PuiseuxClass {
    pub tower: Tower,
    pub param: PuiseuxParam,
    /// Product of the degrees of the segment-root classes along the path.
    pub mult: u64,
}

impl PuiseuxClass {
    /// Number of classical Puiseux expansions this class represents.
    pub fn expansion_count(&self) -> u64 {
        self.mult * self.param.sigma as u64
    }
}

/// Expansion failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    /// The known coefficients cannot pin down a polygon feature that is
    /// relevant at the requested accuracy.
    InsufficientAccuracy(String),
    /// Structurally invalid input (e.g. an identically zero polynomial).
    Degenerate(String),
}

impl std::fmt::Display for EngineError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EngineError::InsufficientAccuracy(s) => {
                write!(f, "insufficient series accuracy: {s}")
            }
            EngineError::Degenerate(s) => write!(f, "degenerate expansion input: {s}"),
        }
    }
}

impl std::error::Error for EngineError {}

/// Which hull slopes participate at this level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolygonFlag {
    /// First level: slopes `<= 0` (bounded branches, constant terms allowed).
    KeepNonPositive,
    /// Deeper levels: slopes `< 0` (strictly positive order continuations).
    KeepNegative,
}

/// A kept polygon edge: slope `-p/q` (coprime), support value `ell`
/// (`q*j + p*i = ell` on the edge), and the known carrier columns on it.
#[derive(Debug, Clone)]
pub struct Segment {
    pub q: u32,
    pub p: u32,
    pub ell: u64,
    /// Columns `i` with known order `j` satisfying `q*j + p*i = ell`,
    /// ascending; the first is the left endpoint `i0`.
    pub cols: Vec<(u32, u64)>,
}

/// What the constant column tells us on this branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroCase {
    /// `a_0` has a known nonzero coefficient: `Y = 0` does not continue.
    None,
    /// `a_0` is exactly zero: the current partial expansion is an exact root.
    ExactRoot,
    /// `a_0` vanishes to its accuracy and the audit proved any hidden tail
    /// irrelevant below `tau`: emit the partial expansion truncated at `tau`.
    TruncatedRoot,
}

/// Polygon of one tower branch.
#[derive(Debug, Clone)]
pub struct Polygon {
    pub f: SeriesPoly,
    pub segments: Vec<Segment>,
    pub zero: ZeroCase,
}

/// Ladder bookkeeping for the audit: with `pi = (q_i, p_i)_i` applied so
/// far, `a = prod q_i` and `c_n` is the accumulated exponent numerator;
/// a hidden feature of slope `s` only matters when `(c_n + s)/a < tau`.
#[derive(Debug, Clone, Copy)]
pub struct AuditCtx {
    pub tau: usize,
    pub a: u64,
    pub c_n: u64,
}

impl AuditCtx {
    /// Largest slope that can still influence output below accuracy `tau`.
    fn slope_cap(&self) -> i128 {
        let s = self.a as i128 * self.tau as i128 - self.c_n as i128;
        s.max(1)
    }
}

/// Decide each coefficient's order, then build the Newton polygon per
/// branch, auditing undecided columns against the support function of the
/// known points.
pub fn polygon_split(
    f: &SeriesPoly,
    flag: PolygonFlag,
    ctx: AuditCtx,
) -> Result<SplitResult<Polygon>, EngineError> {
    if f.coeffs.is_empty() {
        return Err(EngineError::Degenerate("identically zero polynomial".into()));
    }
    // Resolve coefficient orders branch by branch.
    let mut work: Vec<(Tower, usize, SeriesPoly, Vec<SeriesOrder>)> =
        vec![(f.tower.clone(), 0, f.clone(), Vec::new())];
    let mut resolved: Vec<(Tower, SeriesPoly, Vec<SeriesOrder>)> = Vec::new();
    while let Some((tower, i, fb, mut orders)) = work.pop() {
        if i == fb.coeffs.len() {
            resolved.push((tower, fb, orders));
            continue;
        }
        let splits = fb.coeffs[i].order_split();
        if splits.cases.len() == 1 {
            let (bt, o) = splits.cases.into_iter().next().unwrap();
            orders.push(o);
            work.push((bt, i + 1, fb, orders));
        } else {
            for (bt, o) in splits.cases {
                let mut os = orders.clone();
                os.push(o);
                work.push((bt.clone(), i + 1, fb.transport(&bt), os));
            }
        }
    }
    resolved.sort_by(|a, b| a.0.render().cmp(&b.0.render()));

    let mut out: Vec<(Tower, Polygon)> = Vec::new();
    for (tower, fb, orders) in resolved {
        let poly = build_polygon(fb, &orders, flag, ctx)?;
        out.push((tower, poly));
    }
    Ok(SplitResult { cases: out })
}

fn build_polygon(
    f: SeriesPoly,
    orders: &[SeriesOrder],
    flag: PolygonFlag,
    ctx: AuditCtx,
) -> Result<Polygon, EngineError> {
    let mut known: Vec<(u32, u64)> = Vec::new(); // (column, order)
    let mut unknown: Vec<(u32, u64)> = Vec::new(); // (column, accuracy bound)
    for (i, o) in orders.iter().enumerate() {
        match o {
            SeriesOrder::Known(j) => known.push((i as u32, *j as u64)),
            SeriesOrder::AllZero(Acc::Exact) => {}
            SeriesOrder::AllZero(Acc::To(m)) => unknown.push((i as u32, *m as u64)),
        }
    }
    if known.is_empty() {
        if unknown.is_empty() {
            return Err(EngineError::Degenerate("identically zero polynomial".into()));
        }
        return Err(EngineError::InsufficientAccuracy(
            "no coefficient order is determined".into(),
        ));
    }

    // Lower hull of the known points (columns ascending already).
    let hull = lower_hull(&known);

    // Audit every undecided column against the support function of the
    // known points, over the slope range that is still output-relevant.
    let cap = ctx.slope_cap();
    for &(k, m_k) in &unknown {
        audit_column(k, m_k, &hull, flag, cap).map_err(EngineError::InsufficientAccuracy)?;
    }

    // Keep admissible edges and collect their carrier columns.
    let mut segments = Vec::new();
    for w in hull.windows(2) {
        let (i1, j1) = w[0];
        let (i2, j2) = w[1];
        if j2 > j1 {
            break; // slopes only increase; positive from here on
        }
        if j2 == j1 && flag == PolygonFlag::KeepNegative {
            continue;
        }
        let di = (i2 - i1) as u64;
        let dj = j1 - j2;
        let g = di.gcd(&dj);
        let q = (di / g) as u32;
        let p = (dj / g) as u32;
        let ell = q as u64 * j1 + p as u64 * i1 as u64;
        let cols = known
            .iter()
            .copied()
            .filter(|&(i, j)| {
                i >= i1 && i <= i2 && q as u64 * j + p as u64 * i as u64 == ell
            })
            .collect();
        segments.push(Segment { q, p, ell, cols });
    }

    // Constant-column analysis.
    let zero = match orders.first() {
        Some(SeriesOrder::AllZero(Acc::Exact)) => ZeroCase::ExactRoot,
        Some(SeriesOrder::AllZero(Acc::To(_))) => ZeroCase::TruncatedRoot,
        _ => ZeroCase::None,
    };

    Ok(Polygon { f, segments, zero })
}

/// Lower convex hull of points with strictly increasing x. Returns the
/// hull vertices left to right.
fn lower_hull(pts: &[(u32, u64)]) -> Vec<(u32, u64)> {
    let mut hull: Vec<(u32, u64)> = Vec::new();
    for &p in pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // keep b only if it turns left (strictly below the chord a-p)
            let cross = (b.0 as i128 - a.0 as i128) * (p.1 as i128 - a.1 as i128)
                - (b.1 as i128 - a.1 as i128) * (p.0 as i128 - a.0 as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Check that a column whose order is only bounded below by `m_k` cannot
/// change any output-relevant polygon feature. The hidden point `(k, j)`
/// with `j >= m_k` matters for slope `s = p/q` iff it ties or beats the
/// known support `min_i (q*j_i + p*i)`; ties at the slope cap (or at slope
/// zero when zero slopes are not kept) are harmless because the feature
/// they would change is already beyond the accuracy horizon.
fn audit_column(
    k: u32,
    m_k: u64,
    hull: &[(u32, u64)],
    flag: PolygonFlag,
    cap: i128,
) -> Result<(), String> {
    // F(p, q) = min_i (q*j_i + p*i) - (q*m_k + p*k), scaled by q > 0.
    let f_val = |p: i128, q: i128| -> i128 {
        let support = hull
            .iter()
            .map(|&(i, j)| q * j as i128 + p * i as i128)
            .min()
            .unwrap();
        support - (q * m_k as i128 + p * k as i128)
    };
    let fail = |p: i128, q: i128| -> Result<(), String> {
        Err(format!(
            "column {k} is zero only to accuracy {m_k}, which cannot rule out \
             a polygon point at slope {p}/{q}"
        ))
    };
    // slope 0
    let f0 = f_val(0, 1);
    if f0 > 0 || (f0 == 0 && flag == PolygonFlag::KeepNonPositive) {
        return fail(0, 1);
    }
    // slope cap: strict violation only (a tie sits exactly on the horizon)
    if f_val(cap, 1) > 0 {
        return fail(cap, 1);
    }
    // hull edge slopes strictly between 0 and the cap
    for w in hull.windows(2) {
        let (i1, j1) = w[0];
        let (i2, j2) = w[1];
        if j2 >= j1 {
            continue; // slope <= 0 in support terms
        }
        let p = (j1 - j2) as i128;
        let q = (i2 - i1) as i128;
        if p * 1 <= 0 || p >= cap * q {
            continue; // covered by the endpoint checks
        }
        if f_val(p, q) >= 0 {
            return fail(p, q);
        }
    }
    Ok(())
}

/// The segment polynomial `phi(Z)`: coefficients are the series
/// coefficients sitting on the edge, `phi = sum a_{i, j} Z^((i - i0)/q)`.
pub fn segment_poly(f: &SeriesPoly, seg: &Segment) -> Vec<TowerElement> {
    let i0 = seg.cols[0].0;
    let deg = ((seg.cols.last().unwrap().0 - i0) / seg.q) as usize;
    let mut phi = vec![TowerElement::zero(); deg + 1];
    for &(i, j) in &seg.cols {
        let e = ((i - i0) / seg.q) as usize;
        phi[e] = f.coeffs[i as usize].coeff(j as usize);
    }
    phi
}

fn binom(n: usize, k: usize) -> Rational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..k.min(n - k) {
        num *= BigInt::from(n - t);
        den *= BigInt::from(t + 1);
    }
    Rational::new(num, den)
}

fn elem_pow(b: &TowerElement, n: u32) -> TowerElement {
    let mut out = TowerElement::one();
    for _ in 0..n {
        out = out.mul(b);
    }
    out
}

/// The next-level polynomial after choosing edge `(q, p, ell)` and leading
/// coefficient `beta`:
/// `f**(T, Y) = T^(-ell) * f(T^q, T^p (beta + Y))`, i.e.
/// `b_k(T) = T^(-ell) * sum_{i >= k} C(i, k) beta^(i-k) a_i(T^q) T^(p i)`.
pub fn next_polynomial(
    tower: &Tower,
    f: &SeriesPoly,
    q: u32,
    p: u32,
    ell: u64,
    beta: &TowerElement,
) -> SeriesPoly {
    let d = f.coeffs.len() - 1;
    let mut out = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mut sum = TruncSeries::zero(tower.clone(), Acc::Exact);
        for i in k..=d {
            let a = f.coeffs[i].transport(tower);
            let factor = elem_pow(beta, (i - k) as u32)
                .mul(&TowerElement::from_rational(&binom(i, k)));
            let term = a
                .stretch(q as usize)
                .shift_up(p as usize * i)
                .scale(&factor);
            sum = sum.add(&term);
        }
        // The support property of the chosen edge guarantees divisibility;
        // the audit extends it over undecided columns.
        out.push(sum.shift_down(ell as usize));
    }
    SeriesPoly::new(tower.clone(), out)
}

/// Combine ladder terms into a parametrization `(T^sigma, g(T))`.
///
/// With `a = prod q_i` and `c_i = sum_{j <= i} p_j prod_{k > j} q_k`, let
/// `G = gcd(a, c_1, ..., c_N)`: then `sigma = a / G` and `g` has the terms
/// `beta_i T^(c_i / G)`. The exponents are strictly increasing. An empty
/// ladder gives `(T, 0)`.
pub fn construct_parametrization(pi: &[CTerm], acc: Acc) -> PuiseuxParam {
    if pi.is_empty() {
        return PuiseuxParam { sigma: 1, terms: Vec::new(), acc };
    }
    let a: u64 = pi.iter().map(|t| t.q as u64).product();
    // c_i with suffix products of the q's
    let mut local = Vec::with_capacity(pi.len());
    let mut c: u64 = 0;
    for t in pi {
        c = c * t.q as u64 + t.p as u64;
        local.push(c);
    }
    let mut suffix: u64 = 1;
    let mut cs = vec![0u64; pi.len()];
    for i in (0..pi.len()).rev() {
        cs[i] = local[i] * suffix;
        suffix *= pi[i].q as u64;
    }
    let mut g = a;
    for &ci in &cs {
        g = g.gcd(&ci);
    }
    let sigma = (a / g) as u32;
    let mut terms: Vec<(usize, TowerElement)> = Vec::with_capacity(pi.len());
    for (t, &ci) in pi.iter().zip(&cs) {
        let d = (ci / g) as usize;
        debug_assert!(terms.last().map_or(true, |(prev, _)| d > *prev));
        if !Coeff::is_zero(&t.beta) {
            terms.push((d, t.beta.clone()));
        }
    }
    PuiseuxParam { sigma, terms, acc }
}

/// Ladder state `(a, c_N)` used by audits and the accuracy horizon.
fn ladder_state(pi: &[CTerm]) -> (u64, u64) {
    let mut a = 1u64;
    let mut c = 0u64;
    for t in pi {
        a *= t.q as u64;
        c = c * t.q as u64 + t.p as u64;
    }
    (a, c)
}

/// Exponent `delta_N` of the most recent ladder term after gcd reduction;
/// the stopping rule `delta_N + 1 >= tau` compares in these units.
fn last_delta(pi: &[CTerm]) -> Option<usize> {
    if pi.is_empty() {
        return None;
    }
    let mut local = Vec::with_capacity(pi.len());
    let mut c = 0u64;
    for t in pi {
        c = c * t.q as u64 + t.p as u64;
        local.push(c);
    }
    let mut g: u64 = pi.iter().map(|t| t.q as u64).product();
    let mut suffix = 1u64;
    for i in (0..pi.len()).rev() {
        g = g.gcd(&(local[i] * suffix));
        suffix *= pi[i].q as u64;
    }
    Some((local[pi.len() - 1] / g) as usize)
}

/// Maximum expansion depth guard (the theory guarantees termination; this
/// catches programming errors instead of hanging).
const MAX_DEPTH: usize = 4096;

/// All bounded Puiseux expansion classes of `f` to accuracy `tau >= 1`.
pub fn newton_puiseux(f: &SeriesPoly, tau: usize) -> Result<Vec<PuiseuxClass>, EngineError> {
    assert!(tau >= 1, "accuracy must be at least 1");
    struct Node {
        tower: Tower,
        pi: Vec<CTerm>,
        f: SeriesPoly,
        mult: u64,
        depth: usize,
    }
    if f.coeffs.is_empty() {
        return Err(EngineError::Degenerate("identically zero polynomial".into()));
    }
    if f.coeffs.len() == 1 {
        // No Y at all: no expansions (constant nonzero) — callers with a
        // genuinely zero constant have a degenerate system.
        return Ok(Vec::new());
    }
    let mut out: Vec<PuiseuxClass> = Vec::new();
    let mut work = vec![Node {
        tower: f.tower.clone(),
        pi: Vec::new(),
        f: f.clone(),
        mult: 1,
        depth: 0,
    }];
    while let Some(node) = work.pop() {
        if node.depth > MAX_DEPTH {
            return Err(EngineError::Degenerate("expansion depth exceeded".into()));
        }
        // Accuracy reached: emit without further expansion.
        if let Some(dn) = last_delta(&node.pi) {
            if dn + 1 >= tau {
                let param = construct_parametrization(&node.pi, Acc::To(dn + 1));
                out.push(PuiseuxClass { tower: node.tower, param, mult: node.mult });
                continue;
            }
        }
        let (a, c_n) = ladder_state(&node.pi);
        let flag = if node.depth == 0 {
            PolygonFlag::KeepNonPositive
        } else {
            PolygonFlag::KeepNegative
        };
        let ctx = AuditCtx { tau, a, c_n };
        let branches = polygon_split(&node.f, flag, ctx)?;
        for (bt, poly) in branches.cases {
            match poly.zero {
                ZeroCase::ExactRoot => {
                    let param = construct_parametrization(&node.pi, Acc::Exact);
                    let param = transport_param(param, &bt);
                    out.push(PuiseuxClass {
                        tower: bt.clone(),
                        param,
                        mult: node.mult,
                    });
                }
                ZeroCase::TruncatedRoot => {
                    let param = construct_parametrization(&node.pi, Acc::To(tau));
                    let param = transport_param(param, &bt);
                    out.push(PuiseuxClass {
                        tower: bt.clone(),
                        param,
                        mult: node.mult,
                    });
                }
                ZeroCase::None => {}
            }
            for seg in &poly.segments {
                let phi = segment_poly(&poly.f, seg);
                for (rt, root_class) in roots_split(&bt, &phi).cases {
                    for (qt, beta) in qth_root_split(&rt, &root_class.root, seg.q).cases {
                        let mut pi = node.pi.clone();
                        pi.push(CTerm { q: seg.q, p: seg.p, beta: beta.clone() });
                        let mult = node.mult * root_class.class_size as u64;
                        let dn = last_delta(&pi).unwrap();
                        if dn + 1 >= tau {
                            let param = construct_parametrization(&pi, Acc::To(dn + 1));
                            let param = transport_param(param, &qt);
                            out.push(PuiseuxClass { tower: qt.clone(), param, mult });
                        } else {
                            let fq = poly.f.transport(&qt);
                            let next =
                                next_polynomial(&qt, &fq, seg.q, seg.p, seg.ell, &beta);
                            work.push(Node {
                                tower: qt.clone(),
                                pi,
                                f: next,
                                mult,
                                depth: node.depth + 1,
                            });
                        }
                    }
                }
            }
        }
    }
    out.sort_by_key(|c| (c.param.render(&c.tower), c.tower.render()));
    Ok(out)
}

fn transport_param(param: PuiseuxParam, tower: &Tower) -> PuiseuxParam {
    PuiseuxParam {
        sigma: param.sigma,
        terms: param
            .terms
            .into_iter()
            .map(|(d, b)| (d, tower.transport(&b)))
            .collect(),
        acc: param.acc,
    }
}
