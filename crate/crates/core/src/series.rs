//! Truncated univariate power series with explicit accuracy.
//!
//! A [`TruncSeries`] is a polynomial in one parameter `T` whose
//! coefficients live in an algebraic extension [`Tower`], together with an
//! [`Acc`]uracy: either the series is known *exactly* (it is a
//! polynomial), or its coefficients are known strictly below some index
//! `m` and nothing is known from `T^m` on. Every arithmetic operation
//! propagates accuracy pessimistically, so a coefficient reported as known
//! really is determined by the known parts of the inputs.
//!
//! Deciding the *order* of a series (the index of its first nonzero
//! coefficient) asks whether coefficients are zero, which over a product
//! of fields may split the tower; [`TruncSeries::order_split`] returns the
//! decisive branches.

use crate::mpoly::Coeff;
use crate::tower::{SplitResult, Tower, TowerElement};

/// Accuracy of a series: exact, or known strictly below an index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Acc {
    /// The series is a polynomial: all coefficients known.
    Exact,
    /// Coefficients of `T^i` are known for `i < m` only.
    To(usize),
}

impl Acc {
    pub fn min(self, other: Acc) -> Acc {
        match (self, other) {
            (Acc::Exact, x) | (x, Acc::Exact) => x,
            (Acc::To(a), Acc::To(b)) => Acc::To(a.min(b)),
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Acc::Exact)
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Acc::Exact => None,
            Acc::To(m) => Some(m),
        }
    }

    /// Does index `i` fall in the known range?
    pub fn knows(self, i: usize) -> bool {
        match self {
            Acc::Exact => true,
            Acc::To(m) => i < m,
        }
    }

    fn add(self, k: usize) -> Acc {
        match self {
            Acc::Exact => Acc::Exact,
            Acc::To(m) => Acc::To(m + k),
        }
    }

    fn sub(self, k: usize) -> Acc {
        match self {
            Acc::Exact => Acc::Exact,
            Acc::To(m) => Acc::To(m.saturating_sub(k)),
        }
    }

    fn stretch(self, q: usize) -> Acc {
        match self {
            Acc::Exact => Acc::Exact,
            Acc::To(m) => Acc::To(m * q),
        }
    }
}

/// Order of a series as decided on one tower branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesOrder {
    /// First nonzero coefficient sits at this index.
    Known(usize),
    /// Every known coefficient vanishes; the payload says how far that
    /// knowledge extends (`Acc::Exact` means the series is exactly zero).
    AllZero(Acc),
}

/// Truncated power series over a tower.
#[derive(Debug, Clone)]
pub struct TruncSeries {
    tower: Tower,
    /// Ascending coefficients, trailing syntactic zeros trimmed; length
    /// never exceeds a finite accuracy bound.
    coeffs: Vec<TowerElement>,
    acc: Acc,
}

impl TruncSeries {
    pub fn new(tower: Tower, mut coeffs: Vec<TowerElement>, acc: Acc) -> Self {
        if let Acc::To(m) = acc {
            coeffs.truncate(m);
        }
        let coeffs = coeffs.into_iter().map(|c| tower.transport(&c)).collect();
        let mut s = TruncSeries { tower, coeffs, acc };
        s.trim();
        s
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if Coeff::is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn zero(tower: Tower, acc: Acc) -> Self {
        TruncSeries { tower, coeffs: Vec::new(), acc }
    }

    /// The exact constant series.
    pub fn constant(tower: Tower, c: TowerElement) -> Self {
        TruncSeries::new(tower, vec![c], Acc::Exact)
    }

    /// The exact monomial `c * T^k`.
    pub fn monomial(tower: Tower, c: TowerElement, k: usize) -> Self {
        let mut coeffs = vec![TowerElement::zero(); k];
        coeffs.push(c);
        TruncSeries::new(tower, coeffs, Acc::Exact)
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn acc(&self) -> Acc {
        self.acc
    }

    pub fn coeffs(&self) -> &[TowerElement] {
        &self.coeffs
    }

    /// Coefficient of `T^i`. Panics if `i` is beyond the known range.
    pub fn coeff(&self, i: usize) -> TowerElement {
        assert!(self.acc.knows(i), "coefficient {i} beyond accuracy");
        self.coeffs.get(i).cloned().unwrap_or_else(TowerElement::zero)
    }

    /// Constant term; requires the constant coefficient to be known.
    pub fn constant_term(&self) -> TowerElement {
        self.coeff(0)
    }

    /// All known coefficients are (syntactic) zeros.
    pub fn is_known_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the first syntactically nonzero known coefficient. This is
    /// a lower bound for the true order on every branch; `None` when all
    /// known coefficients vanish.
    pub fn syntactic_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !Coeff::is_zero(c))
    }

    /// Lower bound on the order usable in accuracy arithmetic: the
    /// syntactic order, or the accuracy bound when all known coefficients
    /// vanish (`usize::MAX` for the exact zero series).
    fn order_lower_bound(&self) -> usize {
        match self.syntactic_order() {
            Some(k) => k,
            None => self.acc.finite().unwrap_or(usize::MAX),
        }
    }

    /// Move every coefficient into (a refinement or extension of) `tower`.
    pub fn transport(&self, tower: &Tower) -> TruncSeries {
        TruncSeries::new(tower.clone(), self.coeffs.clone(), self.acc)
    }

    pub fn add(&self, other: &Self) -> Self {
        let acc = self.acc.min(other.acc);
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = TowerElement::zero();
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).unwrap_or(&zero);
            let b = other.coeffs.get(i).unwrap_or(&zero);
            coeffs.push(a.add(b));
        }
        TruncSeries::new(pick_tower(self, other), coeffs, acc)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            tower: self.tower.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
            acc: self.acc,
        }
    }

    pub fn scale(&self, k: &TowerElement) -> Self {
        TruncSeries::new(
            self.tower.clone(),
            self.coeffs.iter().map(|c| c.mul(k)).collect(),
            self.acc,
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        // The exact zero annihilates regardless of the other accuracy.
        if (self.acc.is_exact() && self.is_known_zero())
            || (other.acc.is_exact() && other.is_known_zero())
        {
            return TruncSeries::zero(pick_tower(self, other), Acc::Exact);
        }
        // Unknown tails surface at (accuracy of one side) + (order lower
        // bound of the other).
        let acc = match (self.acc.finite(), other.acc.finite()) {
            (None, None) => Acc::Exact,
            _ => {
                let via_a = self
                    .acc
                    .finite()
                    .map(|m| m.saturating_add(other.order_lower_bound()));
                let via_b = other
                    .acc
                    .finite()
                    .map(|m| m.saturating_add(self.order_lower_bound()));
                let m = match (via_a, via_b) {
                    (Some(x), Some(y)) => x.min(y),
                    (Some(x), None) => x,
                    (None, Some(y)) => y,
                    (None, None) => unreachable!(),
                };
                Acc::To(m)
            }
        };
        let full = if self.coeffs.is_empty() || other.coeffs.is_empty() {
            0
        } else {
            self.coeffs.len() + other.coeffs.len() - 1
        };
        let n = match acc {
            Acc::Exact => full,
            Acc::To(m) => full.min(m),
        };
        let mut coeffs = vec![TowerElement::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Coeff::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= coeffs.len() {
                    break;
                }
                coeffs[k] = coeffs[k].add(&a.mul(b));
            }
        }
        TruncSeries::new(pick_tower(self, other), coeffs, acc)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = TruncSeries::constant(self.tower.clone(), TowerElement::one());
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

    /// Substitute `T -> T^q`.
    pub fn stretch(&self, q: usize) -> Self {
        assert!(q >= 1);
        let mut coeffs = vec![TowerElement::zero(); self.coeffs.len() * q];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !Coeff::is_zero(c) {
                coeffs[i * q] = c.clone();
            }
        }
        TruncSeries::new(self.tower.clone(), coeffs, self.acc.stretch(q))
    }

    /// Multiply by `T^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![TowerElement::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncSeries::new(self.tower.clone(), coeffs, self.acc.add(k))
    }

    /// Divide by `T^k`; every known coefficient below `k` must vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        assert!(
            self.coeffs.iter().take(k).all(|c| Coeff::is_zero(c)),
            "series not divisible by T^{k}"
        );
        let coeffs = self.coeffs.iter().skip(k).cloned().collect();
        TruncSeries::new(self.tower.clone(), coeffs, self.acc.sub(k))
    }

    /// Forget everything from `T^m` on.
    pub fn truncated(&self, m: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(m);
        TruncSeries::new(self.tower.clone(), coeffs, self.acc.min(Acc::To(m)))
    }

    /// Decide the order of the series on each branch of the tower.
    pub fn order_split(&self) -> SplitResult<SeriesOrder> {
        let mut work: Vec<(Tower, usize, TruncSeries)> =
            vec![(self.tower.clone(), 0, self.clone())];
        let mut out: Vec<(Tower, SeriesOrder)> = Vec::new();
        while let Some((tower, from, s)) = work.pop() {
            // Skip syntactic zeros without consulting the tower.
            let next = (from..s.coeffs.len()).find(|&i| !Coeff::is_zero(&s.coeffs[i]));
            match next {
                None => out.push((tower, SeriesOrder::AllZero(s.acc))),
                Some(i) => {
                    for (bt, zero) in tower.is_zero_split(&s.coeffs[i]).cases {
                        if zero {
                            work.push((bt.clone(), i + 1, s.transport(&bt)));
                        } else {
                            out.push((bt, SeriesOrder::Known(i)));
                        }
                    }
                }
            }
        }
        out.sort_by(|a, b| a.0.render().cmp(&b.0.render()).then_with(|| order_key(&a.1).cmp(&order_key(&b.1))));
        SplitResult { cases: out }
    }

    /// Canonical text form, low powers first, `O(T^m)` tail marker when
    /// inexact.
    pub fn render(&self, param: &str) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if Coeff::is_zero(c) {
                continue;
            }
            let (neg, mag) = match c.render_negated() {
                Some(m) => (true, m),
                None => (false, c.render()),
            };
            let mag = if c.is_atom() || neg { mag } else { format!("({mag})") };
            let body = match i {
                0 => mag,
                1 if mag == "1" => param.to_string(),
                1 => format!("{mag}*{param}"),
                _ if mag == "1" => format!("{param}^{i}"),
                _ => format!("{mag}*{param}^{i}"),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
                out.push_str(&body);
            } else {
                out.push_str(if neg { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        if let Acc::To(m) = self.acc {
            out.push_str(&format!(" + O({param}^{m})"));
        }
        out
    }
}

fn order_key(o: &SeriesOrder) -> usize {
    match o {
        SeriesOrder::Known(i) => *i,
        SeriesOrder::AllZero(_) => usize::MAX,
    }
}

fn pick_tower(a: &TruncSeries, b: &TruncSeries) -> Tower {
    if a.tower.height() >= b.tower.height() {
        a.tower.clone()
    } else {
        b.tower.clone()
    }
}
