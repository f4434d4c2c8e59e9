//! Towers of simple algebraic extensions with dynamic evaluation.
//!
//! Algebraic numbers are represented the D5 way: a [`Tower`] is a list of
//! *moduli* `m_1(z1), m_2(z1, z2), ...`, each monic and square-free in its
//! top variable, and a [`TowerElement`] is a polynomial in the `z`
//! variables reduced modulo the moduli. The moduli need not be
//! irreducible: the quotient ring may be a product of fields. Decisions
//! that depend on which factor a computation lives in — "is this element
//! zero?", "invert this element" — are answered by a [`SplitResult`]: a
//! list of refined towers covering all cases, each with a decisive answer.
//!
//! Splits happen lazily, driven by gcds with the moduli: when a zero-test
//! meets a proper factor `g` of a modulus `m`, the tower splits into one
//! branch with modulus `g` (where the element vanishes) and one with
//! `m / g` (where it is invertible — square-freeness makes the two factors
//! coprime, so the dichotomy is exact). All arithmetic is deterministic;
//! branches are reported in a fixed order.

use std::sync::Arc;

use num_traits::Signed;

use crate::mpoly::{Coeff, MPoly};
use crate::rat::{rat_int, Rational};
use crate::upoly::UniPoly;

/// Name of the `k`-th tower variable (0-based index, 1-based display).
pub fn zname(k: usize) -> String {
    format!("z{}", k + 1)
}

/// Pad or shrink the variable count; shrinking requires the dropped
/// variables to be unused.
fn resize_nvars(p: &MPoly<Rational>, n: usize) -> MPoly<Rational> {
    if n >= p.nvars() {
        return p.extend_nvars(n);
    }
    let mut out = MPoly::zero(n);
    for (e, c) in p.terms() {
        assert!(e.iter().skip(n).all(|&k| k == 0), "variable out of range");
        out.add_term(e.iter().take(n).cloned().collect(), c.clone());
    }
    out
}

/// A tower of simple algebraic extensions of the rationals.
///
/// `moduli[k]` is a polynomial in variables `z1..z(k+1)` (so `nvars ==
/// k+1`), monic and square-free in `z(k+1)`, with coefficients reduced
/// modulo the lower moduli. Degree-1 moduli may appear transiently after
/// splits; they pin a variable to a value and are harmless (and can be
/// pruned from final output, see [`Tower::pruned`]).
#[derive(Debug, Clone)]
pub struct Tower(Arc<Vec<MPoly<Rational>>>);

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Tower {}

impl Tower {
    /// The trivial tower: plain rationals.
    pub fn empty() -> Tower {
        Tower(Arc::new(Vec::new()))
    }

    /// Build from moduli, re-reducing each one modulo the levels below it.
    /// Panics if a modulus is not monic in its top variable.
    pub fn from_moduli(moduli: Vec<MPoly<Rational>>) -> Tower {
        let mut t = Tower::empty();
        for m in moduli {
            t = t.adjoin_raw(m);
        }
        t
    }

    /// Adjoin one modulus on top (reduced modulo `self`). The polynomial
    /// must be monic in variable index `self.height()`.
    fn adjoin_raw(&self, m: MPoly<Rational>) -> Tower {
        let k = self.height();
        let m = resize_nvars(&m, k + 1);
        let d = m.degree(k).expect("tower modulus must involve its variable");
        assert!(d >= 1, "tower modulus must have positive degree");
        // Reduce the coefficients modulo the lower levels, keeping the top
        // variable's coefficients intact (they only involve lower vars).
        let mut red = MPoly::zero(k + 1);
        for (j, c) in m.as_univariate(k).into_iter().enumerate() {
            let c = self.reduce(c);
            let mut e = vec![0u32; k + 1];
            e[k] = j as u32;
            red = red.add(&c.extend_nvars(k + 1).mul_monomial(&e));
        }
        let top = red.coeff_of_power(k, d);
        assert!(
            top.num_terms() == 1 && top.eval_all(&vec![rat_int(0); k + 1]) == rat_int(1),
            "tower modulus must be monic in its top variable"
        );
        let mut v: Vec<MPoly<Rational>> = (*self.0).clone();
        v.push(red);
        Tower(Arc::new(v))
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    pub fn moduli(&self) -> &[MPoly<Rational>] {
        &self.0
    }

    /// Product of the top-variable degrees of all moduli: the dimension of
    /// the quotient ring over the rationals.
    pub fn degree(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, m)| m.degree(k).unwrap_or(0) as u64)
            .product()
    }

    /// True when `other` is a prefix of `self`.
    pub fn extends(&self, other: &Tower) -> bool {
        other.height() <= self.height()
            && other
                .0
                .iter()
                .zip(self.0.iter())
                .all(|(a, b)| a == b)
    }

    /// Normal form of `p` modulo the moduli (top level downward).
    pub fn reduce(&self, p: MPoly<Rational>) -> MPoly<Rational> {
        let h = self.height();
        let mut p = p.extend_nvars(h.max(p.nvars()));
        for k in (0..h).rev() {
            let m = &self.0[k];
            let dm = m.degree(k).unwrap();
            if dm == 0 {
                continue;
            }
            while let Some(dp) = p.degree(k) {
                if dp < dm {
                    break;
                }
                // p -= lead * z_k^(dp-dm) * m  (m monic in z_k)
                let lead = p.coeff_of_power(k, dp);
                let mut shift = vec![0u32; p.nvars()];
                shift[k] = dp - dm;
                p = p.sub(&lead.mul(&m.extend_nvars(p.nvars())).mul_monomial(&shift));
            }
        }
        p
    }

    /// Wrap a polynomial as a reduced element of this tower.
    pub fn elem(&self, p: MPoly<Rational>) -> TowerElement {
        let p = self.reduce(p.extend_nvars(self.height()));
        TowerElement { tower: self.clone(), poly: p }
    }

    /// The rational constant `r` as an element.
    pub fn rational(&self, r: Rational) -> TowerElement {
        TowerElement {
            tower: self.clone(),
            poly: MPoly::constant(self.height(), r),
        }
    }

    /// The generator `z(k+1)` as an element.
    pub fn generator(&self, k: usize) -> TowerElement {
        assert!(k < self.height());
        self.elem(MPoly::var(self.height(), k))
    }

    /// Re-interpret an element of a coarser (prefix) or equal-height tower
    /// in this tower, re-reducing its representative.
    pub fn transport(&self, e: &TowerElement) -> TowerElement {
        self.elem(e.poly.clone())
    }

    /// Decisive zero test: each branch answers "identically zero here"
    /// (`true`) or "invertible here" (`false`).
    pub fn is_zero_split(&self, e: &TowerElement) -> SplitResult<bool> {
        self.invert_split(e).map(|_, inv| inv.is_none())
    }

    /// Decisive inversion: each branch carries `Some(1/e)` or `None` when
    /// `e` is identically zero there.
    pub fn invert_split(&self, e: &TowerElement) -> SplitResult<Option<TowerElement>> {
        debug_assert!(self.extends(&e.tower) || *self == e.tower);
        let e = self.transport(e);
        invert_at(self, self.height(), &e)
    }

    /// Canonical text form of the moduli, lowest level first.
    pub fn render(&self) -> String {
        self.0
            .iter()
            .map(|m| m.render_with(zname))
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// Eliminate degree-1 levels: a modulus `z_k - c` pins `z_k := c`, so
    /// substitute it away and re-index the variables above. Returns the
    /// pruned tower together with the images of `elems`.
    pub fn pruned(&self, elems: &[TowerElement]) -> (Tower, Vec<TowerElement>) {
        let h = self.height();
        // Values for pinned variables, as polynomials over the *original*
        // variable set, substituted bottom-up.
        let mut keep: Vec<usize> = Vec::new();
        let mut subst: Vec<Option<MPoly<Rational>>> = vec![None; h];
        let mut new_moduli: Vec<MPoly<Rational>> = Vec::new();
        for k in 0..h {
            let mut m = self.0[k].extend_nvars(h);
            for j in 0..k {
                if let Some(v) = &subst[j] {
                    m = m.substitute(j, v);
                }
            }
            let d = m.degree(k).unwrap();
            if d == 1 {
                // m = z_k + c  =>  z_k := -c
                let c = m.coeff_of_power(k, 0);
                subst[k] = Some(c.neg());
            } else {
                keep.push(k);
                new_moduli.push(m);
            }
        }
        // Re-index kept variables to 0..keep.len().
        let remap: Vec<Option<usize>> = {
            let mut r = vec![None; h];
            for (new, &old) in keep.iter().enumerate() {
                r[old] = Some(new);
            }
            r
        };
        let reindex = |p: &MPoly<Rational>| -> MPoly<Rational> {
            let mut out = MPoly::zero(keep.len());
            for (e, c) in p.terms() {
                let mut e2 = vec![0u32; keep.len()];
                for (v, &k) in e.iter().enumerate() {
                    if k > 0 {
                        let nv = remap[v].expect("pinned variable survived substitution");
                        e2[nv] = k;
                    }
                }
                out.add_term(e2, c.clone());
            }
            out
        };
        let tower = Tower::from_moduli(new_moduli.iter().map(&reindex).collect());
        let elems = elems
            .iter()
            .map(|e| {
                let mut p = e.poly.extend_nvars(h);
                for j in 0..h {
                    if let Some(v) = &subst[j] {
                        p = p.substitute(j, v);
                    }
                }
                tower.elem(reindex(&p))
            })
            .collect();
        (tower, elems)
    }
}

/// An element of the quotient ring described by a [`Tower`]: a reduced
/// polynomial in the tower variables.
#[derive(Debug, Clone)]
pub struct TowerElement {
    tower: Tower,
    poly: MPoly<Rational>,
}

impl TowerElement {
    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn poly(&self) -> &MPoly<Rational> {
        &self.poly
    }

    /// The element as a rational, when its normal form is constant.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.poly.is_zero() {
            return Some(rat_int(0));
        }
        if self.poly.num_terms() == 1 {
            let (e, c) = self.poly.terms().next().unwrap();
            if e.iter().all(|&k| k == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Canonical text form.
    pub fn render(&self) -> String {
        self.poly.render_with(zname)
    }
}

impl PartialEq for TowerElement {
    fn eq(&self, other: &Self) -> bool {
        // Padding-insensitive comparison: exponent vectors compare equal
        // modulo trailing zeros (a rational constant embeds in any tower).
        let mut a: Vec<(&[u32], &Rational)> =
            self.poly.terms().map(|(e, c)| (trim(e), c)).collect();
        let mut b: Vec<(&[u32], &Rational)> =
            other.poly.terms().map(|(e, c)| (trim(e), c)).collect();
        a.sort_by(|x, y| x.0.cmp(y.0));
        b.sort_by(|x, y| x.0.cmp(y.0));
        a == b
    }
}

fn trim(e: &[u32]) -> &[u32] {
    let n = e.iter().rposition(|&k| k > 0).map_or(0, |i| i + 1);
    &e[..n]
}

impl Coeff for TowerElement {
    fn zero() -> Self {
        Tower::empty().rational(rat_int(0))
    }
    fn one() -> Self {
        Tower::empty().rational(rat_int(1))
    }
    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
    fn is_one(&self) -> bool {
        self.as_rational() == Some(rat_int(1))
    }
    fn add(&self, other: &Self) -> Self {
        let t = unify(&self.tower, &other.tower);
        let p = self.poly.extend_nvars(t.height()).add(&other.poly.extend_nvars(t.height()));
        // Sums of reduced forms stay reduced.
        TowerElement { tower: t, poly: p }
    }
    fn sub(&self, other: &Self) -> Self {
        let t = unify(&self.tower, &other.tower);
        let p = self.poly.extend_nvars(t.height()).sub(&other.poly.extend_nvars(t.height()));
        TowerElement { tower: t, poly: p }
    }
    fn mul(&self, other: &Self) -> Self {
        let t = unify(&self.tower, &other.tower);
        let p = self.poly.extend_nvars(t.height()).mul(&other.poly.extend_nvars(t.height()));
        t.elem(p)
    }
    fn neg(&self) -> Self {
        TowerElement { tower: self.tower.clone(), poly: self.poly.neg() }
    }
    fn from_rational(r: &Rational) -> Self {
        Tower::empty().rational(r.clone())
    }
    fn render(&self) -> String {
        self.render()
    }
    fn render_negated(&self) -> Option<String> {
        if self.poly.num_terms() == 1 {
            let (_, c) = self.poly.terms().next().unwrap();
            if c.is_negative() {
                return Some(self.poly.neg().render_with(zname));
            }
        }
        None
    }
    fn is_atom(&self) -> bool {
        self.poly.num_terms() == 1
    }
}

/// Pick the taller of two compatible towers.
fn unify(a: &Tower, b: &Tower) -> Tower {
    if a.height() >= b.height() {
        debug_assert!(a.extends(b), "tower mismatch: {} vs {}", a.render(), b.render());
        a.clone()
    } else {
        debug_assert!(b.extends(a), "tower mismatch: {} vs {}", a.render(), b.render());
        b.clone()
    }
}

/// Outcome of a case split: refined towers covering all components, each
/// paired with a decisive value.
#[derive(Debug, Clone)]
pub struct SplitResult<A> {
    pub cases: Vec<(Tower, A)>,
}

impl<A> SplitResult<A> {
    pub fn single(tower: Tower, value: A) -> Self {
        SplitResult { cases: vec![(tower, value)] }
    }

    pub fn map<B>(self, mut f: impl FnMut(&Tower, A) -> B) -> SplitResult<B> {
        SplitResult {
            cases: self.cases.into_iter().map(|(t, a)| {
                let b = f(&t, a);
                (t, b)
            }).collect(),
        }
    }

    pub fn and_then<B>(self, mut f: impl FnMut(Tower, A) -> SplitResult<B>) -> SplitResult<B> {
        let mut cases = Vec::new();
        for (t, a) in self.cases {
            cases.extend(f(t, a).cases);
        }
        SplitResult { cases }
    }
}

// ---------------------------------------------------------------------------
// Internal engine: dense univariate polynomials over a tower prefix.
// ---------------------------------------------------------------------------

/// Dense univariate polynomial with tower-element coefficients (ascending
/// degree; trailing coefficients may be syntactic zeros between passes).
type ZP = Vec<TowerElement>;

fn zp_trim(p: &mut ZP) {
    while matches!(p.last(), Some(c) if Coeff::is_zero(c)) {
        p.pop();
    }
}

fn zp_scale(p: &ZP, k: &TowerElement) -> ZP {
    p.iter().map(|c| c.mul(k)).collect()
}

fn zp_sub(a: &ZP, b: &ZP) -> ZP {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    let zero = TowerElement::zero();
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        out.push(x.sub(y));
    }
    let mut out = out;
    zp_trim(&mut out);
    out
}

/// `a mod b` with `b` monic; also returns the quotient.
fn zp_divrem_monic(a: &ZP, b: &ZP) -> (ZP, ZP) {
    let db = b.len() - 1;
    debug_assert!(b.last().unwrap().is_one(), "divisor must be monic");
    let mut r = a.clone();
    zp_trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![TowerElement::zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap().clone();
        if !Coeff::is_zero(&c) {
            q[k] = c.clone();
            for (i, bc) in b.iter().enumerate() {
                let v = r[k + i].sub(&c.mul(bc));
                r[k + i] = v;
            }
        }
        r.pop();
        zp_trim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    zp_trim(&mut r);
    (q, r)
}

fn zp_derivative(p: &ZP) -> ZP {
    let mut out: ZP = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.mul(&TowerElement::from_rational(&Rational::from_integer(i.into()))))
        .collect();
    zp_trim(&mut out);
    out
}

fn zp_transport(t: &Tower, p: &ZP) -> ZP {
    p.iter().map(|c| t.transport(c)).collect()
}

/// Invert `e` in the ring generated by the first `level` tower variables.
/// `e` must only involve variables `< level`.
fn invert_at(tower: &Tower, level: usize, e: &TowerElement) -> SplitResult<Option<TowerElement>> {
    if e.poly.is_zero() {
        return SplitResult::single(tower.clone(), None);
    }
    let j = match e.poly.main_var() {
        None => {
            let r = e.as_rational().unwrap();
            return SplitResult::single(tower.clone(), Some(tower.rational(r.recip())));
        }
        Some(j) => j,
    };
    debug_assert!(j < level, "element escapes its coefficient level");
    // View e as univariate in z_j over the prefix ring; gcd with modulus j.
    let a = coeffs_in(tower, &e.poly, j);
    let m = coeffs_in(tower, &tower.0[j].extend_nvars(tower.height()), j);
    half_ext_gcd(tower, j, &a, &m).and_then(|t, (g, u)| {
        if g.len() == 1 {
            // Unit gcd: u * e ≡ 1 (mod m_j), so u assembles to the inverse.
            let inv = assemble(&t, &u, j);
            return SplitResult::single(t.clone(), Some(inv));
        }
        if g.len() == m.len() && zp_transport(&t, &m).iter().zip(&g).all(|(x, y)| x == y) {
            // gcd is the whole modulus: e vanishes identically here.
            return SplitResult::single(t.clone(), None);
        }
        // Proper factor: split level j into (g) and (m_j / g).
        let (tg, th) = split_level(&t, j, &g);
        let mut out = SplitResult::single(tg, None);
        // On the cofactor branch e is invertible (square-freeness makes the
        // factors coprime); recompute the inverse there.
        let e_h = th.transport(e);
        out.cases.extend(invert_at(&th, level, &e_h).cases);
        out
    })
}

/// Dense coefficients of `p` with respect to variable `j`, each wrapped as
/// a (full-height) element. The coefficients involve variables `< j` only
/// whenever `p` is reduced.
fn coeffs_in(tower: &Tower, p: &MPoly<Rational>, j: usize) -> ZP {
    p.as_univariate(j)
        .into_iter()
        .map(|c| TowerElement { tower: tower.clone(), poly: c })
        .collect()
}

/// Reassemble a ZP in variable `j` into a single element.
fn assemble(tower: &Tower, p: &ZP, j: usize) -> TowerElement {
    let h = tower.height();
    let mut acc = MPoly::zero(h);
    for (k, c) in p.iter().enumerate() {
        let mut e = vec![0u32; h];
        e[j] = k as u32;
        acc = acc.add(&c.poly.extend_nvars(h).mul_monomial(&e));
    }
    tower.elem(acc)
}

/// Replace modulus `j` by the monic factor `g`, yielding the `g` branch and
/// the cofactor branch; later moduli are re-reduced.
fn split_level(tower: &Tower, j: usize, g: &ZP) -> (Tower, Tower) {
    let m = coeffs_in(tower, &tower.0[j].extend_nvars(tower.height()), j);
    let (h, rem) = zp_divrem_monic(&m, g);
    debug_assert!(rem.is_empty(), "split factor must divide the modulus");
    let rebuild = |f: &ZP| -> Tower {
        let mut moduli: Vec<MPoly<Rational>> = Vec::with_capacity(tower.height());
        for k in 0..j {
            moduli.push(tower.0[k].clone());
        }
        // Assemble f as the new level-j modulus over the prefix.
        let mut mj = MPoly::zero(j + 1);
        for (k, c) in f.iter().enumerate() {
            let mut e = vec![0u32; j + 1];
            e[j] = k as u32;
            // Coefficients of f only involve vars < j; truncate padding.
            let mut cp = MPoly::zero(j + 1);
            for (ce, cc) in c.poly.terms() {
                debug_assert!(ce.iter().skip(j).all(|&x| x == 0));
                cp.add_term(ce.iter().take(j + 1).cloned().collect(), cc.clone());
            }
            mj = mj.add(&cp.mul_monomial(&e));
        }
        moduli.push(mj);
        let mut t = Tower::from_moduli(moduli);
        for k in j + 1..tower.height() {
            t = t.adjoin_raw(tower.0[k].clone());
        }
        t
    };
    (rebuild(g), rebuild(&h))
}

/// Half-extended gcd of `a` and `b` (dense, coefficients limited to tower
/// variables `< level`): per branch, a monic `g = gcd(a, b)` and `u` with
/// `u*a ≡ g (mod b)`.
fn half_ext_gcd(
    tower: &Tower,
    level: usize,
    a: &ZP,
    b: &ZP,
) -> SplitResult<(ZP, ZP)> {
    struct State {
        r0: ZP,
        u0: ZP,
        r1: ZP,
        u1: ZP,
    }
    let one = TowerElement::one();
    let mut work: Vec<(Tower, State)> = vec![(
        tower.clone(),
        State { r0: b.clone(), u0: Vec::new(), r1: a.clone(), u1: vec![one] },
    )];
    let mut done: Vec<(Tower, (ZP, ZP))> = Vec::new();
    while let Some((t, mut st)) = work.pop() {
        zp_trim(&mut st.r1);
        // Normalize r1: drop semantically-zero leads, make the lead monic.
        match st.r1.last() {
            None => {
                // gcd reached: r0 (monic by the loop invariant; initially b
                // is a monic modulus or handled below).
                let g = st.r1; // empty
                debug_assert!(g.is_empty());
                let mut r0 = st.r0;
                zp_trim(&mut r0);
                debug_assert!(!r0.is_empty(), "gcd(0,0) not expected here");
                debug_assert!(r0.last().unwrap().is_one(), "gcd lost monicity");
                done.push((t, (r0, st.u0)));
                continue;
            }
            Some(lead) => {
                let lead = lead.clone();
                for (bt, inv) in invert_at(&t, level, &lead).cases {
                    let tr = |p: &ZP| zp_transport(&bt, p);
                    match inv {
                        None => {
                            // lead vanishes identically: drop it and retry.
                            let mut r1 = tr(&st.r1);
                            r1.pop();
                            work.push((
                                bt.clone(),
                                State { r0: tr(&st.r0), u0: tr(&st.u0), r1, u1: tr(&st.u1) },
                            ));
                        }
                        Some(inv) => {
                            // Scale monic, divide, rotate.
                            let r1 = zp_scale(&tr(&st.r1), &inv);
                            let u1 = zp_scale(&tr(&st.u1), &inv);
                            let r0 = tr(&st.r0);
                            let u0 = tr(&st.u0);
                            let (q, r) = zp_divrem_monic(&r0, &r1);
                            let qu1: ZP = {
                                // u0 - q*u1
                                let mut prod: ZP = Vec::new();
                                for (i, qc) in q.iter().enumerate() {
                                    for (k, uc) in u1.iter().enumerate() {
                                        let idx = i + k;
                                        if prod.len() <= idx {
                                            prod.resize(idx + 1, TowerElement::zero());
                                        }
                                        prod[idx] = prod[idx].add(&qc.mul(uc));
                                    }
                                }
                                zp_sub(&u0, &prod)
                            };
                            work.push((
                                bt.clone(),
                                State { r0: r1, u0: u1, r1: r, u1: qu1 },
                            ));
                        }
                    }
                }
            }
        }
    }
    // Deterministic order: the worklist is LIFO; restore insertion order by
    // sorting on the render of the towers' moduli (stable, canonical).
    done.sort_by(|a, b| a.0.render().cmp(&b.0.render()));
    SplitResult { cases: done }
}

// ---------------------------------------------------------------------------
// Roots of univariate polynomials over a tower.
// ---------------------------------------------------------------------------

/// One root class of a polynomial over a tower branch.
#[derive(Debug, Clone)]
pub struct RootClass {
    /// The root itself (an existing element, or a fresh top generator).
    pub root: TowerElement,
    /// Degree of the modulus factor the root represents (1 for element
    /// roots): the number of conjugate roots this class stands for.
    pub class_size: u32,
}

/// All roots of the dense polynomial `p` over `tower`, as one case per
/// root class. The polynomial is made square-free first, so multiple roots
/// are reported once. Branches where `p` degenerates to a nonzero constant
/// contribute no cases. Panics if `p` is the zero polynomial.
pub fn roots_split(tower: &Tower, p: &[TowerElement]) -> SplitResult<RootClass> {
    assert!(p.iter().any(|c| !Coeff::is_zero(c)), "roots of the zero polynomial");
    let p: ZP = p.to_vec();
    let dp = zp_derivative(&p);
    let sf = if dp.is_empty() {
        // constant: no roots (degree-0 after trim handled below)
        SplitResult::single(tower.clone(), p.clone())
    } else {
        zp_gcd(tower, &p, &dp).and_then(|t, g| {
            let pt = zp_transport(&t, &p);
            let (q, rem) = zp_divrem_monic(&pt, &g);
            debug_assert!(rem.is_empty(), "gcd must divide the polynomial");
            SplitResult::single(t, q)
        })
    };
    sf.and_then(|t, s| roots_of_squarefree(&t, &s))
}

/// Monic gcd over the full tower (all levels available for inversion).
fn zp_gcd(tower: &Tower, a: &ZP, b: &ZP) -> SplitResult<ZP> {
    // half_ext_gcd wants a monic second argument only for cosmetics; it
    // normalizes everything itself. Feed (a, b) directly.
    // Ensure the "modulus" side is the one with larger syntactic degree to
    // keep the first division sensible.
    let mut x = a.clone();
    let mut y = b.clone();
    zp_trim(&mut x);
    zp_trim(&mut y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    // Make the larger side monic first so half_ext_gcd's invariant (r0
    // monic when r1 runs out) holds on all branches.
    normalize_monic(tower, &x).and_then(|t, xm| {
        let yb = zp_transport(&t, &y);
        half_ext_gcd(&t, t.height(), &yb, &xm).map(|_, (g, _)| g)
    })
}

/// Strip zero leads and scale monic (splitting as needed). The polynomial
/// must not be semantically zero on any branch.
fn normalize_monic(tower: &Tower, p: &ZP) -> SplitResult<ZP> {
    let mut p = p.clone();
    zp_trim(&mut p);
    let lead = p.last().expect("normalize_monic on zero polynomial").clone();
    invert_at(tower, tower.height(), &lead).and_then(|t, inv| match inv {
        None => {
            let mut q = zp_transport(&t, &p);
            q.pop();
            zp_trim(&mut q);
            normalize_monic(&t, &q)
        }
        Some(inv) => SplitResult::single(t.clone(), zp_scale(&zp_transport(&t, &p), &inv)),
    })
}

fn roots_of_squarefree(tower: &Tower, s: &ZP) -> SplitResult<RootClass> {
    // Normalize once more (transport may have changed leads is impossible,
    // but degenerate constants can reach here).
    let mut s = s.clone();
    zp_trim(&mut s);
    if s.len() <= 1 {
        return SplitResult { cases: Vec::new() };
    }
    normalize_monic(tower, &s).and_then(|t, sm| {
        if sm.len() <= 1 {
            return SplitResult { cases: Vec::new() };
        }
        // Rational fast path: all coefficients rational constants.
        let rats: Option<Vec<Rational>> = sm.iter().map(|c| c.as_rational()).collect();
        if let Some(rc) = rats {
            let u = UniPoly::new(rc);
            let (roots, residual) = u.rational_roots();
            let mut out: Vec<(Tower, RootClass)> = roots
                .into_iter()
                .map(|r| {
                    (t.clone(), RootClass { root: t.rational(r), class_size: 1 })
                })
                .collect();
            match residual.degree() {
                None | Some(0) => {}
                Some(1) => unreachable!("degree-1 residual would have a rational root"),
                Some(d) => {
                    let k = t.height();
                    let m = residual.to_mpoly(k + 1, k);
                    let t2 = t.adjoin_raw(m);
                    out.push((
                        t2.clone(),
                        RootClass { root: t2.generator(k), class_size: d as u32 },
                    ));
                }
            }
            return SplitResult { cases: out };
        }
        // Algebraic coefficients: a linear factor gives an element root;
        // otherwise adjoin the whole square-free polynomial as one class.
        if sm.len() == 2 {
            let root = sm[0].neg();
            return SplitResult::single(t.clone(), RootClass { root, class_size: 1 });
        }
        let k = t.height();
        let h = k + 1;
        let mut m = MPoly::zero(h);
        for (i, c) in sm.iter().enumerate() {
            let mut e = vec![0u32; h];
            e[k] = i as u32;
            m = m.add(&c.poly.extend_nvars(h).mul_monomial(&e));
        }
        let t2 = t.adjoin_raw(m);
        let d = (sm.len() - 1) as u32;
        SplitResult::single(t2.clone(), RootClass { root: t2.generator(k), class_size: d })
    })
}

/// One representative `q`-th root of `xi` per branch.
///
/// Conjugate choices of the root differ by a reparametrization of the
/// series parameter (a root of unity), so only one representative is kept:
/// a rational root when one exists (the positive one preferred), otherwise
/// a fresh generator with modulus `U^q - xi`. `xi` must be invertible on
/// the branch (guaranteed for roots of segment polynomials).
pub fn qth_root_split(tower: &Tower, xi: &TowerElement, q: u32) -> SplitResult<TowerElement> {
    debug_assert!(q >= 1);
    if q == 1 {
        return SplitResult::single(tower.clone(), xi.clone());
    }
    if let Some(r) = xi.as_rational() {
        // roots of U^q - r
        let mut c = vec![rat_int(0); q as usize + 1];
        c[0] = -r;
        c[q as usize] = rat_int(1);
        let (roots, _) = UniPoly::new(c).rational_roots();
        if let Some(best) = roots.last() {
            // ascending order: the last is the positive candidate if any
            return SplitResult::single(tower.clone(), tower.rational(best.clone()));
        }
    }
    let k = tower.height();
    let h = k + 1;
    let mut m = MPoly::zero(h);
    let mut e = vec![0u32; h];
    e[k] = q;
    m.add_term(e, rat_int(1));
    m = m.sub(&xi.poly.extend_nvars(h));
    let t2 = tower.adjoin_raw(m);
    SplitResult::single(t2.clone(), t2.generator(k))
}
