//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored ascending by degree with a nonzero trailing
//! entry (the zero polynomial is the empty vector). This module supplies
//! the exact field-arithmetic operations the rest of the crate needs on one
//! variable: division, monic gcd, Yun square-free part, and rational root
//! extraction via the rational root theorem.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::mpoly::MPoly;
use crate::rat::Rational;

/// Dense univariate polynomial over `Rational`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    c: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly { c: vec![Rational::one()] }
    }

    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn new(c: Vec<Rational>) -> Self {
        let mut p = UniPoly { c };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.c.last(), Some(x) if x.is_zero()) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.c.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        let mut c = vec![Rational::zero(); n];
        for (i, x) in self.c.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in other.c.iter().enumerate() {
            c[i] += x;
        }
        UniPoly::new(c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        let mut c = vec![Rational::zero(); n];
        for (i, x) in self.c.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in other.c.iter().enumerate() {
            c[i] -= x;
        }
        UniPoly::new(c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![Rational::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::new(c)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        UniPoly::new(self.c.iter().map(|x| x * k).collect())
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    /// Panics if `d` is zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.c[dd].clone();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let f = r.last().unwrap() / &lead;
            if !f.is_zero() {
                q[k] = f.clone();
                for (i, dc) in d.c.iter().enumerate() {
                    let v = &r[k + i] - &f * dc;
                    r[k + i] = v;
                }
            }
            r.pop();
            while matches!(r.last(), Some(x) if x.is_zero()) && r.len() > dd {
                r.pop();
            }
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    /// Monic scalar multiple (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor (Euclid over the rationals).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return UniPoly::zero();
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, x)| x * Rational::from_integer(BigInt::from(i)))
            .collect();
        UniPoly::new(c)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Square-free part via Yun's algorithm: the monic product of the
    /// distinct irreducible factors of `self`.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            // Constants (including zero) have square-free part 1 by
            // convention, except zero which stays zero.
            return if self.is_zero() { UniPoly::zero() } else { UniPoly::one() };
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        if a0.degree() == Some(0) {
            return f;
        }
        // Yun: accumulate one copy of each distinct factor.
        let (mut b, _) = f.divrem(&a0);
        let (mut c, _) = df.divrem(&a0);
        let mut out = UniPoly::one();
        loop {
            let d = c.sub(&b.derivative());
            if d.is_zero() {
                out = out.mul(&b);
                break;
            }
            let a = b.gcd(&d);
            out = out.mul(&a);
            let (nb, _) = b.divrem(&a);
            let (nc, _) = d.divrem(&a);
            b = nb;
            c = nc;
            if b.degree() == Some(0) {
                break;
            }
        }
        out.monic()
    }

    /// All rational roots (with multiplicity stripped: each root once) and
    /// the monic cofactor left after dividing out `(X - r)` for each root to
    /// its full multiplicity.
    ///
    /// Uses the rational root theorem on the integer-cleared polynomial.
    /// Root candidates enumerate divisors of the trailing and leading
    /// integer coefficients; divisor enumeration is exact (the integers in
    /// scope here stay small).
    pub fn rational_roots(&self) -> (Vec<Rational>, UniPoly) {
        let Some(deg) = self.degree() else {
            return (Vec::new(), UniPoly::zero());
        };
        if deg == 0 {
            return (Vec::new(), UniPoly::one());
        }
        // Divide out X^k first: 0 is a root iff the constant term vanishes.
        let mut f = self.monic();
        let mut roots = Vec::new();
        let ord = f.c.iter().take_while(|x| x.is_zero()).count();
        if ord > 0 {
            roots.push(Rational::zero());
            f = UniPoly::new(f.c[ord..].to_vec());
        }
        if f.degree() == Some(0) {
            return (roots, UniPoly::one());
        }
        // Clear denominators to integers.
        let mut den = BigInt::one();
        for c in &f.c {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = f.c.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let a0 = ints[0].clone();
        let an = ints[ints.len() - 1].clone();
        let mut found: Vec<Rational> = Vec::new();
        for p in divisors(&a0.abs()) {
            for q in divisors(&an.abs()) {
                if p.gcd(&q) != BigInt::one() {
                    continue;
                }
                for sign in [1i32, -1] {
                    let cand = Rational::new(&p * BigInt::from(sign), q.clone());
                    if f.eval(&cand).is_zero() {
                        found.push(cand);
                    }
                }
            }
        }
        found.sort();
        found.dedup();
        for r in found {
            let lin = UniPoly::new(vec![-&r, Rational::one()]);
            loop {
                let (q, rem) = f.divrem(&lin);
                if rem.is_zero() {
                    f = q;
                } else {
                    break;
                }
            }
            roots.push(r);
        }
        roots.sort();
        (roots, f.monic())
    }

    /// View as a polynomial in variable `var` of an `nvars`-variable ring.
    pub fn to_mpoly(&self, nvars: usize, var: usize) -> MPoly<Rational> {
        let mut p = MPoly::zero(nvars);
        for (k, c) in self.c.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0u32; nvars];
                e[var] = k as u32;
                p.add_term(e, c.clone());
            }
        }
        p
    }

    /// Extract a univariate polynomial from an `MPoly` that only involves
    /// variable `var`. Returns `None` if any other variable occurs.
    pub fn from_mpoly(p: &MPoly<Rational>, var: usize) -> Option<UniPoly> {
        let mut c = vec![Rational::zero(); p.degree(var).map_or(0, |d| d as usize + 1)];
        for (e, coeff) in p.terms() {
            for (v, &k) in e.iter().enumerate() {
                if v != var && k > 0 {
                    return None;
                }
            }
            c[e[var] as usize] = coeff.clone();
        }
        Some(UniPoly::new(c))
    }
}

/// Positive divisors of `|n|`; `[1]` for `n = 0` would be wrong, so zero
/// yields just `[1]` as a guard (callers never pass zero: trailing
/// coefficients are nonzero after stripping `X^k`).
fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let mut k = 0;
            while (&n % &d).is_zero() {
                n /= &d;
                k += 1;
            }
            primes.push((d.clone(), k));
        }
        d += 1;
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, k) in primes {
        let prev = out.clone();
        let mut pp = BigInt::one();
        for _ in 0..k {
            pp = &pp * &p;
            out.extend(prev.iter().map(|d| d * &pp));
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| rat_int(x)).collect())
    }

    #[test]
    fn divrem_and_gcd() {
        // (X^2 - 1) = (X + 1)(X - 1)
        let f = up(&[-1, 0, 1]);
        let d = up(&[1, 1]);
        let (q, r) = f.divrem(&d);
        assert!(r.is_zero());
        assert_eq!(q, up(&[-1, 1]));
        assert_eq!(f.gcd(&d), d.monic());
        // gcd of coprime polys is 1
        assert_eq!(up(&[1, 1]).gcd(&up(&[-1, 1])), UniPoly::one());
    }

    #[test]
    fn squarefree_part_examples() {
        // X^3 + X^2 = X^2 (X + 1): square-free part X^2 + X
        let f = up(&[0, 0, 1, 1]);
        assert_eq!(f.squarefree_part(), up(&[0, 1, 1]));
        // (X - 1)^3: square-free part X - 1
        let g = up(&[-1, 1]).mul(&up(&[-1, 1])).mul(&up(&[-1, 1]));
        assert_eq!(g.squarefree_part(), up(&[-1, 1]));
        // already square-free stays put (made monic)
        let h = up(&[-2, 0, 2]);
        assert_eq!(h.squarefree_part(), up(&[-1, 0, 1]));
    }

    #[test]
    fn rational_roots_with_residual() {
        // 2X^3 - X^2 - 2X + 1 = (X-1)(X+1)(2X-1): roots -1, 1/2, 1
        let f = up(&[1, -2, -1, 2]);
        let (roots, rest) = f.rational_roots();
        assert_eq!(roots, vec![rat_int(-1), rat(1, 2), rat_int(1)]);
        assert_eq!(rest, UniPoly::one());
        // X^2 - 2 has no rational roots; residual is itself (monic)
        let g = up(&[-2, 0, 1]);
        let (roots, rest) = g.rational_roots();
        assert!(roots.is_empty());
        assert_eq!(rest, up(&[-2, 0, 1]));
        // X^3 (X^2 - 3): root 0, residual X^2 - 3
        let h = UniPoly::new(vec![
            rat_int(0),
            rat_int(0),
            rat_int(0),
            rat_int(-3),
            rat_int(0),
            rat_int(1),
        ]);
        let (roots, rest) = h.rational_roots();
        assert_eq!(roots, vec![rat_int(0)]);
        assert_eq!(rest, up(&[-3, 0, 1]));
    }

    #[test]
    fn mpoly_roundtrip() {
        let f = up(&[1, 0, -4]);
        let m = f.to_mpoly(3, 1);
        assert_eq!(UniPoly::from_mpoly(&m, 1), Some(f));
        // reject genuinely multivariate input
        let bad = MPoly::from_terms(2, vec![(vec![1, 1], rat_int(1))]);
        assert_eq!(UniPoly::from_mpoly(&bad, 0), None);
    }
}
