use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::{Coeff, ExactDiv};

/// Exponent vector of a Laurent monomial.
///
/// Stored densely with trailing zeros trimmed, so the representation is
/// canonical for any number of variables. Ordering is lexicographic with
/// implicit zero padding.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Exponent(Vec<i64>);

impl Exponent {
    pub fn zero() -> Self {
        Exponent(Vec::new())
    }

    pub fn new(mut v: Vec<i64>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Exponent(v)
    }

    /// Exponent of the single variable `var` raised to `power`.
    pub fn var(var: usize, power: i64) -> Self {
        let mut v = vec![0; var + 1];
        v[var] = power;
        Exponent::new(v)
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Number of stored components; every index at or beyond this is zero.
    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Dense copy padded with zeros to length `n` (which must cover the support).
    pub fn to_dense(&self, n: usize) -> Vec<i64> {
        assert!(self.0.len() <= n, "exponent has more variables than {n}");
        let mut v = self.0.clone();
        v.resize(n, 0);
        v
    }

    fn zip_with(&self, other: &Exponent, f: impl Fn(i64, i64) -> i64) -> Exponent {
        let n = self.0.len().max(other.0.len());
        Exponent::new((0..n).map(|i| f(self.get(i), other.get(i))).collect())
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        self.zip_with(other, |a, b| a.checked_add(b).expect("exponent overflow"))
    }

    pub fn sub(&self, other: &Exponent) -> Exponent {
        self.zip_with(other, |a, b| a.checked_sub(b).expect("exponent overflow"))
    }

    pub fn neg(&self) -> Exponent {
        Exponent(self.0.iter().map(|a| -a).collect())
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            match self.get(i).cmp(&other.get(i)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate Laurent polynomial with exact integer coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by lexicographically ordered
/// exponents; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<C> {
    terms: BTreeMap<Exponent, C>,
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn constant(c: C) -> Self {
        Self::monomial(Exponent::zero(), c)
    }

    pub fn monomial(e: Exponent, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// The variable `t_{var}` (zero based) to the first power.
    pub fn var(var: usize) -> Self {
        Self::monomial(Exponent::var(var, 1), C::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponent, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exponent, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.add_c(&c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exponent) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    /// Lexicographically least term.
    pub fn min_term(&self) -> Option<(&Exponent, &C)> {
        self.terms.iter().next()
    }

    /// Lexicographically greatest term.
    pub fn max_term(&self) -> Option<(&Exponent, &C)> {
        self.terms.iter().next_back()
    }

    /// Largest number of variables any term refers to.
    pub fn support_len(&self) -> usize {
        self.terms.keys().map(Exponent::support_len).max().unwrap_or(0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Multiply by the monomial `c * t^e`.
    pub fn mul_monomial(&self, e: &Exponent, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (k.add(e), v.mul_c(c))).collect(),
        }
    }

    /// Apply an additive map to every exponent, collecting like terms.
    pub fn map_exponents(&self, f: impl Fn(&Exponent) -> Exponent) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (f(e), c.clone())))
    }

    /// Per-variable (min, max) degree over the first `n` variables.
    fn degree_box(&self, n: usize) -> Vec<(i64, i64)> {
        (0..n)
            .map(|i| {
                let it = self.terms.keys().map(|e| e.get(i));
                let lo = it.clone().min().unwrap_or(0);
                let hi = it.max().unwrap_or(0);
                (lo, hi)
            })
            .collect()
    }

    /// Formatted with variable names `name(i)` for variable `i`, terms in
    /// descending graded-lex order, e.g. `-t2^3 + t2^2 - t2 - t3 + 1`.
    pub fn display_with(&self, name: impl Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| b.cmp(a)));
        let mut out = String::new();
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = (0..e.support_len())
                .filter(|&v| e.get(v) != 0)
                .map(|v| match e.get(v) {
                    1 => name(v),
                    p => format!("{}^{}", name(v), p),
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl<C: Coeff> Zero for LaurentPoly<C> {
    fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coeff> One for LaurentPoly<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Coeff> Add<&LaurentPoly<C>> for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub<&LaurentPoly<C>> for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coeff> Mul<&LaurentPoly<C>> for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.add(e2), c1.mul_c(c2));
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr<LaurentPoly<C>> for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $m(self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
                (&self).$m(&rhs)
            }
        }
        impl<C: Coeff> $tr<&LaurentPoly<C>> for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $m(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coeff> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -&self
    }
}

impl<C: Coeff> ExactDiv for LaurentPoly<C> {
    /// Multivariate exact division by repeated leading-term cancellation.
    ///
    /// Degrees in each variable are additive over the Laurent ring, so the
    /// quotient lives in a finite degree box; a candidate term outside it
    /// proves that the division is not exact.
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        let (d_lead_e, d_lead_c) = rhs.max_term()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.support_len().max(rhs.support_len());
        let num_box = self.degree_box(n);
        let den_box = rhs.degree_box(n);
        let q_box: Vec<(i64, i64)> =
            num_box.iter().zip(&den_box).map(|(a, b)| (a.0 - b.0, a.1 - b.1)).collect();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((e, c)) = rem.max_term() {
            let qe = e.sub(d_lead_e);
            if (0..n).any(|i| qe.get(i) < q_box[i].0 || qe.get(i) > q_box[i].1) {
                return None;
            }
            let qc = c.exact_div_c(d_lead_c)?;
            rem = &rem - &rhs.mul_monomial(&qe, &qc);
            quot.add_term(qe, qc);
        }
        Some(quot)
    }
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(|i| format!("t{}", i + 1)))
    }
}

impl<C: Coeff> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = LaurentPoly<i64>;

    fn t(i: usize) -> P {
        P::var(i)
    }

    #[test]
    fn exponent_order_is_lex_with_padding() {
        assert!(Exponent::new(vec![1]) > Exponent::new(vec![0, 5]));
        assert!(Exponent::new(vec![0, -1]) < Exponent::zero());
        assert_eq!(Exponent::new(vec![2, 0, 0]), Exponent::new(vec![2]));
    }

    #[test]
    fn add_negation_cancels() {
        let p = &(&t(0) * &t(1)) - &P::constant(3);
        assert!((&p + &(-&p)).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let a = &t(0) - &P::one();
        let b = &t(0) + &P::one();
        let expect = &(&t(0) * &t(0)) - &P::one();
        assert_eq!(&a * &b, expect);
    }

    #[test]
    fn monomial_product_adds_exponents() {
        let a = P::monomial(Exponent::new(vec![1, -2]), 3);
        let b = P::monomial(Exponent::new(vec![0, 5, 1]), -2);
        assert_eq!(&a * &b, P::monomial(Exponent::new(vec![1, 3, 1]), -6));
    }

    #[test]
    fn display_graded_lex() {
        let t2 = t(1);
        let t3 = t(2);
        let p = &(&(&(&(-&(&(&t2 * &t2) * &t2)) + &(&t2 * &t2)) - &t2) - &t3) + &P::one();
        assert_eq!(p.to_string(), "-t2^3 + t2^2 - t2 - t3 + 1");
        assert_eq!(P::zero().to_string(), "0");
        let q = P::monomial(Exponent::new(vec![-1, 2]), 3);
        assert_eq!(q.to_string(), "3*t1^-1*t2^2");
    }

    #[test]
    fn exact_division_laurent() {
        let a = &t(0) - &P::one();
        let b = &(&t(1) * &t(1)) + &P::monomial(Exponent::new(vec![-1]), 2);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&a), Some(b.clone()));
        assert_eq!(prod.exact_div(&b), Some(a.clone()));
        assert_eq!(b.exact_div(&a), None);
        assert_eq!(P::zero().exact_div(&a), Some(P::zero()));
        assert_eq!(a.exact_div(&P::zero()), None);
    }
}
