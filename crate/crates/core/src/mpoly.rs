//! Sparse multivariate polynomials over an exact coefficient ring.
//!
//! [`MPoly`] is a map from exponent vectors to nonzero coefficients. It is
//! generic over [`Coeff`] so the same arithmetic serves both polynomials
//! over the rationals and polynomials whose coefficients live in an
//! algebraic extension tower. The representation keeps two invariants: no
//! stored coefficient is zero (syntactically, i.e. in normal form), and
//! every exponent vector has length `nvars`.
//!
//! Variables are identified by index; index order is ascending algebraic
//! order (see [`crate::vars::VarOrder`]). The *main variable* of a
//! polynomial is the largest index that occurs with positive exponent.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::rat::{rat_content_gcd, render_rational, Rational};

/// Exact coefficient ring: clonable, with decidable syntactic zero.
///
/// `is_zero` must recognize the normal form of zero; for quotient-ring
/// coefficients this is "reduced representative is the zero polynomial",
/// which is exact zero in the quotient, not a semantic zero-divisor test.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Embed a rational constant.
    fn from_rational(r: &Rational) -> Self;
    /// Canonical text form.
    fn render(&self) -> String;
    /// `Some(s)` when the coefficient is `-a` for an atomic positive text
    /// `a`; lets renderers print `... - a` instead of `... + -a`.
    fn render_negated(&self) -> Option<String> {
        None
    }
    /// True when the text form is a single product of atoms, safe to splice
    /// into `c*X` without parentheses.
    fn is_atom(&self) -> bool;
}

impl Coeff for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn is_zero(&self) -> bool {
        <Rational as Zero>::is_zero(self)
    }
    fn is_one(&self) -> bool {
        <Rational as One>::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn render(&self) -> String {
        render_rational(self)
    }
    fn render_negated(&self) -> Option<String> {
        if self.is_negative() {
            Some(render_rational(&-self))
        } else {
            None
        }
    }
    fn is_atom(&self) -> bool {
        true
    }
}

/// Sparse polynomial in `nvars` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly<C: Coeff> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Coeff> MPoly<C> {
    /// The zero polynomial.
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    /// A constant polynomial.
    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// The constant `1`.
    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    /// The variable with index `var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable index {var} out of range for {nvars} vars");
        let mut e = vec![0u32; nvars];
        e[var] = 1;
        let mut p = MPoly::zero(nvars);
        p.terms.insert(e, C::one());
        p
    }

    /// A single term `c * X^e`. Zero coefficients are dropped.
    pub fn monomial(nvars: usize, e: Vec<u32>, c: C) -> Self {
        assert_eq!(e.len(), nvars);
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    /// Build from `(exponents, coefficient)` pairs, summing duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Self {
        let mut p = MPoly::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterate terms in ascending internal (lex) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    /// Add `c * X^e` in place.
    pub fn add_term(&mut self, e: Vec<u32>, c: C) {
        assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// The same polynomial viewed in a ring with `nvars` extended to `n`
    /// (new variables do not occur).
    pub fn extend_nvars(&self, n: usize) -> Self {
        assert!(n >= self.nvars);
        if n == self.nvars {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2.resize(n, 0);
                (e2, c.clone())
            })
            .collect();
        MPoly { nvars: n, terms }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect();
        MPoly { nvars: self.nvars, terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.mul(cb));
            }
        }
        out
    }

    /// Multiply by a scalar.
    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, k)| (e.clone(), k.mul(c)))
            .filter(|(_, k)| !k.is_zero())
            .collect();
        MPoly { nvars: self.nvars, terms }
    }

    /// Multiply by the monomial `X^e`.
    pub fn mul_monomial(&self, e: &[u32]) -> Self {
        assert_eq!(e.len(), self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| {
                let t2: Vec<u32> = t.iter().zip(e).map(|(a, b)| a + b).collect();
                (t2, c.clone())
            })
            .collect();
        MPoly { nvars: self.nvars, terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = MPoly::one(self.nvars);
        let mut base = self.clone();
        let mut n = n;
        loop {
            if n & 1 == 1 {
                out = out.mul(&base);
            }
            n >>= 1;
            if n == 0 {
                return out;
            }
            base = base.mul(&base);
        }
    }

    /// Degree in variable `var`; `None` for the zero polynomial.
    pub fn degree(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Largest variable index occurring with positive exponent.
    pub fn main_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|e| e.iter().rposition(|&x| x > 0))
            .max()
    }

    /// Coefficient of `var^k`, as a polynomial in the remaining variables
    /// (same `nvars`, `var` occurs with exponent zero).
    pub fn coeff_of_power(&self, var: usize, k: u32) -> Self {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == k {
                let mut e2 = e.clone();
                e2[var] = 0;
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    /// Dense coefficient list with respect to `var`: index `k` holds the
    /// coefficient of `var^k`. Empty for the zero polynomial.
    pub fn as_univariate(&self, var: usize) -> Vec<Self> {
        let Some(d) = self.degree(var) else {
            return Vec::new();
        };
        let mut out = vec![MPoly::zero(self.nvars); d as usize + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut e2 = e.clone();
            e2[var] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    /// Inverse of [`MPoly::as_univariate`].
    pub fn from_univariate(nvars: usize, var: usize, coeffs: &[Self]) -> Self {
        let mut out = MPoly::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            assert_eq!(c.nvars, nvars);
            for (e, v) in &c.terms {
                debug_assert_eq!(e[var], 0);
                let mut e2 = e.clone();
                e2[var] = k as u32;
                out.add_term(e2, v.clone());
            }
        }
        out
    }

    /// Leading coefficient with respect to `var` (the initial when `var` is
    /// the main variable). Zero polynomial yields zero.
    pub fn leading_coeff(&self, var: usize) -> Self {
        match self.degree(var) {
            None => MPoly::zero(self.nvars),
            Some(d) => self.coeff_of_power(var, d),
        }
    }

    /// Substitute `value` for variable `var` (Horner scheme).
    pub fn substitute(&self, var: usize, value: &Self) -> Self {
        assert_eq!(self.nvars, value.nvars);
        let coeffs = self.as_univariate(var);
        let mut out = MPoly::zero(self.nvars);
        for c in coeffs.into_iter().rev() {
            out = out.mul(value).add(&c);
        }
        out
    }

    /// Substitute `var -> var + c`.
    pub fn shift_var(&self, var: usize, c: &C) -> Self {
        let x_plus_c = MPoly::var(self.nvars, var).add(&MPoly::constant(self.nvars, c.clone()));
        self.substitute(var, &x_plus_c)
    }

    /// Evaluate at a full point.
    pub fn eval_all(&self, vals: &[C]) -> C {
        assert_eq!(vals.len(), self.nvars);
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in vals.iter().zip(e.iter()) {
                for _ in 0..k {
                    t = t.mul(v);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Map coefficients into another ring, dropping terms that map to zero.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Canonical text form with variable names supplied by `name_of`.
    /// Terms are ordered with the highest variable most significant,
    /// descending, so univariate polynomials print leading term first.
    pub fn render_with(&self, name_of: impl Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Vec<u32>, &C)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            // Compare exponents from the highest variable down, descending.
            a.0.iter().rev().cmp(b.0.iter().rev()).reverse()
        });
        let mut out = String::new();
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    if k == 1 {
                        name_of(v)
                    } else {
                        format!("{}^{}", name_of(v), k)
                    }
                })
                .collect();
            let var_part = vars.join("*");
            // Pick the sign and the absolute text of the coefficient.
            let (neg, mag) = match c.render_negated() {
                Some(m) => (true, m),
                None => (false, c.render()),
            };
            let body = if var_part.is_empty() {
                wrap_if_compound(&mag, c.is_atom() || neg)
            } else if mag == "1" {
                var_part
            } else {
                format!("{}*{}", wrap_if_compound(&mag, c.is_atom() || neg), var_part)
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
                out.push_str(&body);
            } else if neg {
                out.push_str(" - ");
                out.push_str(&body);
            } else {
                out.push_str(" + ");
                out.push_str(&body);
            }
        }
        out
    }
}

fn wrap_if_compound(s: &str, atom: bool) -> String {
    if atom {
        s.to_string()
    } else {
        format!("({s})")
    }
}

impl MPoly<Rational> {
    /// Integer-style content: the positive rational `g` such that
    /// `self / g` has coprime integer coefficients. Zero for the zero
    /// polynomial.
    pub fn rational_content(&self) -> Rational {
        let mut g = <Rational as Zero>::zero();
        for (_, c) in &self.terms {
            g = rat_content_gcd(&g, c);
        }
        g
    }
}
