//! Elimination arithmetic on multivariate polynomials: pseudo-division,
//! resultants, contents, primitive parts, exact division and gcd.
//!
//! The resultant is computed as the determinant of the Sylvester matrix by
//! fraction-free (Bareiss) elimination, which needs only exact division in
//! the coefficient ring; the gcd used for contents is a primitive
//! pseudo-remainder sequence. Pseudo-division is *lazy*: the multiplier
//! `init(g)^k` uses the smallest `k` that makes the division work, and `k`
//! is reported to the caller.

use num_traits::Signed;

use crate::mpoly::MPoly;
use crate::rat::{rat_content_gcd, Rational};
use crate::upoly::UniPoly;

/// Lazy pseudo-remainder of `f` by `g` with respect to `var`.
///
/// Returns `(r, k)` with `init(g)^k * f ≡ r  (mod g)` and
/// `deg_var(r) < deg_var(g)`, where `k` counts the reduction steps actually
/// performed (so `k` is minimal for this reduction strategy, at most
/// `deg_var(f) - deg_var(g) + 1`). If `g` has degree 0 in `var` the answer
/// is `(0, 1)`: a polynomial free of `var` pseudo-divides everything.
/// Panics if `g` is zero.
pub fn prem(f: &MPoly<Rational>, g: &MPoly<Rational>, var: usize) -> (MPoly<Rational>, u32) {
    assert!(!g.is_zero(), "pseudo-division by zero");
    let dg = g.degree(var).unwrap();
    if dg == 0 {
        return (MPoly::zero(f.nvars()), 1);
    }
    let hg = g.leading_coeff(var);
    let mut r = f.clone();
    let mut k = 0u32;
    while let Some(dr) = r.degree(var) {
        if dr < dg {
            break;
        }
        let lr = r.leading_coeff(var);
        let mut shift = vec![0u32; f.nvars()];
        shift[var] = dr - dg;
        // r := init(g)*r - lead(r)*X^(dr-dg)*g  — kills the degree-dr term.
        r = r.mul(&hg).sub(&g.mul(&lr).mul_monomial(&shift));
        k += 1;
        debug_assert!(r.degree(var).map_or(true, |d| d < dr));
    }
    (r, k)
}

/// Exact division: `num / den`, panicking if `den` does not divide `num`.
///
/// Leading-term elimination in the internal monomial order; when the
/// division is exact this computes the quotient term by term.
pub fn div_exact(num: &MPoly<Rational>, den: &MPoly<Rational>) -> MPoly<Rational> {
    assert!(!den.is_zero(), "exact division by zero");
    assert_eq!(num.nvars(), den.nvars());
    let n = num.nvars();
    let (de, dc) = leading_term(den);
    let mut r = num.clone();
    let mut q = MPoly::zero(n);
    while !r.is_zero() {
        let (re, rc) = leading_term(&r);
        let e: Vec<u32> = re
            .iter()
            .zip(de.iter())
            .map(|(a, b)| a.checked_sub(*b).expect("inexact polynomial division"))
            .collect();
        let c = &rc / &dc;
        let t = MPoly::monomial(n, e, c);
        q = q.add(&t);
        r = r.sub(&t.mul(den));
    }
    q
}

/// Lex-greatest term of a nonzero polynomial.
fn leading_term(p: &MPoly<Rational>) -> (Vec<u32>, Rational) {
    let (e, c) = p.terms().last().expect("empty polynomial has no leading term");
    (e.clone(), c.clone())
}

/// Resultant of `f` and `g` with respect to `var`, as a polynomial in the
/// remaining variables.
///
/// Computed as `det` of the Sylvester matrix via Bareiss fraction-free
/// elimination. Conventions: if either polynomial is zero the resultant is
/// zero; if both are free of `var` it is one; if exactly one is free of
/// `var`, `res(c, g) = c^{deg g}` (and symmetrically).
pub fn resultant(f: &MPoly<Rational>, g: &MPoly<Rational>, var: usize) -> MPoly<Rational> {
    let n = f.nvars();
    assert_eq!(n, g.nvars());
    if f.is_zero() || g.is_zero() {
        return MPoly::zero(n);
    }
    let m = f.degree(var).unwrap() as usize;
    let k = g.degree(var).unwrap() as usize;
    if m == 0 && k == 0 {
        return MPoly::one(n);
    }
    if m == 0 {
        return f.pow(k as u32);
    }
    if k == 0 {
        return g.pow(m as u32);
    }
    let fc = f.as_univariate(var); // ascending
    let gc = g.as_univariate(var);
    let size = m + k;
    let zero = MPoly::zero(n);
    let mut s = vec![vec![zero.clone(); size]; size];
    // k rows of f's coefficients, descending, shifted right.
    for (i, row) in s.iter_mut().enumerate().take(k) {
        for j in 0..=m {
            row[i + j] = fc[m - j].clone();
        }
    }
    // m rows of g's coefficients.
    for i in 0..m {
        for j in 0..=k {
            s[k + i][i + j] = gc[k - j].clone();
        }
    }
    bareiss_det(s)
}

/// Determinant by fraction-free Gaussian elimination with row pivoting.
fn bareiss_det(mut s: Vec<Vec<MPoly<Rational>>>) -> MPoly<Rational> {
    let n = s.len();
    if n == 0 {
        return MPoly::one(0);
    }
    let nv = s[0][0].nvars();
    let mut sign = false;
    let mut prev = MPoly::one(nv);
    for k in 0..n - 1 {
        if s[k][k].is_zero() {
            match (k + 1..n).find(|&i| !s[i][k].is_zero()) {
                Some(i) => {
                    s.swap(k, i);
                    sign = !sign;
                }
                None => return MPoly::zero(nv),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = s[k][k].mul(&s[i][j]).sub(&s[i][k].mul(&s[k][j]));
                s[i][j] = div_exact(&t, &prev);
            }
            s[i][k] = MPoly::zero(nv);
        }
        prev = s[k][k].clone();
    }
    let det = s[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

/// Content of `p` with respect to `var`: the gcd (in the integer-content
/// sense, see [`mpoly_gcd`]) of the coefficients of `p` viewed as a
/// univariate polynomial in `var`.
pub fn content(p: &MPoly<Rational>, var: usize) -> MPoly<Rational> {
    let mut g = MPoly::zero(p.nvars());
    for c in p.as_univariate(var) {
        if !c.is_zero() {
            g = mpoly_gcd(&g, &c);
        }
    }
    g
}

/// `p` divided by its content with respect to `var`.
///
/// The content includes the rational content, so e.g. the primitive part of
/// `2*X2 + 4` in `X2` is `X2 + 2`.
pub fn primitive_part(p: &MPoly<Rational>, var: usize) -> MPoly<Rational> {
    if p.is_zero() {
        return p.clone();
    }
    let c = content(p, var);
    div_exact(p, &c)
}

/// Gcd of multivariate polynomials over the rationals, in the
/// integer-content sense: rational contents contribute their integer gcd,
/// so `gcd(2, 4*X+6) = 2`. The result's leading rational coefficient (in
/// the internal term order) is positive. `gcd(0, 0) = 0`.
pub fn mpoly_gcd(a: &MPoly<Rational>, b: &MPoly<Rational>) -> MPoly<Rational> {
    let n = a.nvars();
    assert_eq!(n, b.nvars());
    if a.is_zero() {
        return positive_lead(b.clone());
    }
    if b.is_zero() {
        return positive_lead(a.clone());
    }
    let ca = a.rational_content();
    let cb = b.rational_content();
    let c = rat_content_gcd(&ca, &cb);
    let pa = a.scale(&ca.recip());
    let pb = b.scale(&cb.recip());
    let g = gcd_primitive(&pa, &pb);
    positive_lead(g.scale(&c))
}

/// Gcd of two primitive (integer-coefficient, coprime-content) polynomials,
/// by primitive PRS on the largest main variable.
fn gcd_primitive(a: &MPoly<Rational>, b: &MPoly<Rational>) -> MPoly<Rational> {
    let n = a.nvars();
    match (a.main_var(), b.main_var()) {
        (None, _) | (_, None) => MPoly::one(n), // a primitive constant is ±1
        (Some(va), Some(vb)) => {
            let v = va.max(vb);
            if va != vb {
                // The gcd cannot involve v; it divides the v-wise content of
                // whichever side does involve v.
                let (flat, tall) = if va < vb { (a, b) } else { (b, a) };
                return mpoly_gcd(flat, &content(tall, v));
            }
            let cont = mpoly_gcd(&content(a, v), &content(b, v));
            let mut f = primitive_part(a, v);
            let mut g = primitive_part(b, v);
            if f.degree(v) < g.degree(v) {
                std::mem::swap(&mut f, &mut g);
            }
            while !g.is_zero() {
                let (r, _) = prem(&f, &g, v);
                f = g;
                g = if r.is_zero() {
                    r
                } else {
                    let rc = r.rational_content();
                    primitive_part(&r.scale(&rc.recip()), v)
                };
            }
            let gv = if f.main_var() == Some(v) {
                primitive_part(&f, v)
            } else {
                // degenerated to a constant: coprime in v
                MPoly::one(n)
            };
            cont.mul(&gv)
        }
    }
}

fn positive_lead(p: MPoly<Rational>) -> MPoly<Rational> {
    match p.terms().last() {
        Some((_, c)) if c.is_negative() => p.neg(),
        _ => p,
    }
}

/// Square-free part of a polynomial that involves only `var`, via Yun's
/// algorithm on the univariate view. Returns `None` if another variable
/// occurs.
pub fn squarefree_part_uni(p: &MPoly<Rational>, var: usize) -> Option<MPoly<Rational>> {
    let u = UniPoly::from_mpoly(p, var)?;
    Some(u.squarefree_part().to_mpoly(p.nvars(), var))
}
