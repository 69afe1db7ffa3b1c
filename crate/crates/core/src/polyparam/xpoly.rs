//! Polynomials in the `x` variables with coefficients in a [`Coefficient`] ring.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::polyparam::param::{ParamPoly, ParamSpace};
use crate::rational::Rational;

pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(q: Rational) -> Self;
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self.add_ref(o)
    }
    fn sub(&self, o: &Self) -> Self {
        self.sub_ref(o)
    }
    fn mul(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn from_rational(q: Rational) -> Self {
        q
    }
}

impl Coefficient for ParamPoly {
    fn zero() -> Self {
        ParamPoly::zero()
    }
    fn one() -> Self {
        ParamPoly::one()
    }
    fn is_zero(&self) -> bool {
        ParamPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        ParamPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        ParamPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        ParamPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        ParamPoly::neg(self)
    }
    fn from_rational(q: Rational) -> Self {
        ParamPoly::constant(q)
    }
}

/// Sparse map monomial -> nonzero coefficient, iterated in ascending Lex order.
#[derive(Clone, PartialEq)]
pub struct XPoly<C: Coefficient> {
    terms: BTreeMap<Monomial, C>,
}

pub type QPoly = XPoly<Rational>;
pub type PPoly = XPoly<ParamPoly>;

impl<C: Coefficient> Default for XPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> XPoly<C> {
    pub fn zero() -> Self {
        XPoly { terms: BTreeMap::new() }
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl DoubleEndedIterator<Item = (Monomial, C)> {
        self.terms.into_iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &C> {
        self.terms.values()
    }

    pub fn remove(&mut self, m: &Monomial) -> Option<C> {
        self.terms.remove(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), c.neg());
        }
        p
    }

    pub fn neg(&self) -> Self {
        XPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut p = Self::zero();
        for (m, a) in &self.terms {
            p.add_term(m.clone(), a.mul(c));
        }
        p
    }

    pub fn mono_mul(&self, x: &Monomial) -> Self {
        XPoly { terms: self.terms.iter().map(|(m, c)| (m.mul(x), c.clone())).collect() }
    }

    /// Multiplies by `x0^k`.
    pub fn x0_shift(&self, k: u32) -> Self {
        if k == 0 {
            return self.clone();
        }
        XPoly { terms: self.terms.iter().map(|(m, c)| (m.mul_var(0, k), c.clone())).collect() }
    }

    /// Common degree of all terms, `Ok(None)` for zero.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let Some(d) = it.next() else { return Ok(None) };
        if it.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    pub fn lex_greatest(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> XPoly<D> {
        XPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub(crate) fn from_map_unchecked(terms: BTreeMap<Monomial, C>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        XPoly { terms }
    }
}

impl XPoly<ParamPoly> {
    pub fn display<'a>(&'a self, space: &'a ParamSpace) -> XPolyDisplay<'a> {
        XPolyDisplay { poly: self, space }
    }

    pub fn eval(&self, values: &[Rational]) -> QPoly {
        self.map_coefficients(|c| c.eval(values))
    }
}

pub struct XPolyDisplay<'a> {
    poly: &'a PPoly,
    space: &'a ParamSpace,
}

impl fmt::Display for XPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})*{}", c.display(self.space), m)?;
        }
        Ok(())
    }
}

fn write_rational_term(f: &mut fmt::Formatter<'_>, first: bool, c: &Rational, m: &Monomial) -> fmt::Result {
    let neg = c.is_negative();
    let abs = if neg { c.neg_ref() } else { c.clone() };
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    if m.is_one() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{m}")
    } else {
        write!(f, "{abs}*{m}")
    }
}

impl fmt::Display for XPoly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            write_rational_term(f, k == 0, c, m)?;
        }
        Ok(())
    }
}

impl fmt::Display for XPoly<ParamPoly> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*{m}")?;
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for XPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().rev()).finish()
    }
}

/// `(H', H'')` with `H = H' + x0^t H''` and no term of `H'` divisible by `x0^t`.
pub fn x0_split<C: Coefficient>(h: &XPoly<C>, t: u32) -> (XPoly<C>, XPoly<C>) {
    let mut low = BTreeMap::new();
    let mut high = BTreeMap::new();
    for (m, c) in &h.terms {
        let e = m.exponent(0);
        if e >= t {
            high.insert(m.with_exponent(0, e - t), c.clone());
        } else {
            low.insert(m.clone(), c.clone());
        }
    }
    (XPoly::from_map_unchecked(low), XPoly::from_map_unchecked(high))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_monomial, parse_poly};
    use proptest::prelude::*;

    fn p(s: &str) -> QPoly {
        parse_poly(s, Some(3)).unwrap()
    }

    #[test]
    fn basic_ops() {
        assert!(p("x1^3").sub(&p("x1^3")).is_zero());
        let x0 = parse_monomial("x0", Some(3)).unwrap();
        assert_eq!(p("x2*x1 - 2*x0^2").mono_mul(&x0), p("x2*x1*x0 - 2*x0^3"));
        assert!(p("x2 + x1").scale(&Rational::zero()).is_zero());
        assert_eq!(p("x2 - 3/2*x1 + 2").to_string(), "x2 - 3/2*x1 + 2");
        assert!(p("x2 + x1^2").homogeneous_degree().is_err());
    }

    #[test]
    fn split_examples() {
        let (a, b) = x0_split(&p("x1^2*x0^3 + x2*x1"), 2);
        assert_eq!((a, b), (p("x2*x1"), p("x1^2*x0")));
        let h = p("x1^2*x0^3 + x2*x1");
        assert_eq!(x0_split(&h, 0), (QPoly::zero(), h.clone()));
        assert_eq!(x0_split(&QPoly::zero(), 3), (QPoly::zero(), QPoly::zero()));
    }

    fn qpoly() -> impl Strategy<Value = QPoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -4i64..5), 0..6).prop_map(|ts| {
            QPoly::from_terms(ts.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), Rational::from_integer(c))))
        })
    }

    proptest! {
        #[test]
        fn exact_arithmetic((a, b) in (qpoly(), qpoly())) {
            prop_assert_eq!(a.add(&b).sub(&b), a.clone());
            prop_assert!(a.coefficients().all(|c| !c.is_zero()));
        }

        #[test]
        fn split_reassembles((a, t) in (qpoly(), 0u32..4)) {
            let (lo, hi) = x0_split(&a, t);
            prop_assert_eq!(lo.add(&hi.x0_shift(t)), a);
            prop_assert!(lo.support().all(|m| m.exponent(0) < t));
        }
    }
}
