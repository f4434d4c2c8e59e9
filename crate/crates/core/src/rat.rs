//! Exact rational scalars and their text form.
//!
//! All arithmetic in this crate bottoms out in [`Rational`], an
//! arbitrary-precision fraction. The text form accepted and produced here is
//! the one used everywhere in the crate's input and output: an optional
//! sign, a decimal integer, and an optional `/denominator` part, e.g. `5`,
//! `-7/2`. Floating-point literals are deliberately rejected.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// The rational `n`.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The rational `n / d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `a` or `a/b` with optional leading sign. Returns `None` for
/// anything else (in particular decimal points and exponents).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = parse_int(num)?;
    let den: BigInt = match den {
        Some(d) => parse_int(d)?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

fn parse_int(s: &str) -> Option<BigInt> {
    if s.is_empty() {
        return None;
    }
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Canonical text form: `a` for integers, `a/b` otherwise, with the sign on
/// the numerator.
pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `gcd` of two rationals in the integer-content sense:
/// `gcd(a/b, c/d) = gcd(a·d, c·b) / (b·d)` reduced, always non-negative.
///
/// This is the notion of content used when making polynomials primitive: the
/// quotients of both inputs by the result are integers with no common factor.
pub fn rat_content_gcd(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let num = num_integer::Integer::gcd(
        &(a.numer() * b.denom()),
        &(b.numer() * a.denom()),
    );
    Rational::new(num, a.denom() * b.denom()).abs()
}
