//! Parameter indeterminates `C[head, tail]` and polynomials in them.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use smallvec::SmallVec;

use crate::monomial::Monomial;
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Parameter {
    pub head: Monomial,
    pub tail: Monomial,
}

impl Parameter {
    pub fn new(head: Monomial, tail: Monomial) -> Self {
        Parameter { head, tail }
    }

    /// Head degree desc, head Lex desc, tail Lex desc.
    pub fn canonical_cmp(&self, other: &Parameter) -> Ordering {
        other
            .head
            .degree()
            .cmp(&self.head.degree())
            .then_with(|| other.head.cmp(&self.head))
            .then_with(|| other.tail.cmp(&self.tail))
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C[{}, {}]", self.head, self.tail)
    }
}

impl fmt::Debug for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An ordered list of parameters; a parameter's position is its variable index.
#[derive(Clone, Debug, Default)]
pub struct ParamSpace {
    params: Vec<Parameter>,
    index: HashMap<Parameter, u32>,
}

impl ParamSpace {
    /// Sorts canonically and drops duplicates.
    pub fn new(mut params: Vec<Parameter>) -> Self {
        params.sort_by(Parameter::canonical_cmp);
        params.dedup();
        let index = params.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        ParamSpace { params, index }
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    pub fn params(&self) -> &[Parameter] {
        &self.params
    }

    pub fn get(&self, i: u32) -> &Parameter {
        &self.params[i as usize]
    }

    pub fn index_of(&self, p: &Parameter) -> Option<u32> {
        self.index.get(p).copied()
    }
}

/// Power product of parameters: `(index, exponent)` pairs by ascending index.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PMon(SmallVec<[(u32, u32); 4]>);

impl PMon {
    pub fn one() -> Self {
        PMon(SmallVec::new())
    }

    pub fn var(i: u32) -> Self {
        let mut v = SmallVec::new();
        v.push((i, 1));
        PMon(v)
    }

    pub fn from_pairs(mut pairs: Vec<(u32, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_unstable();
        let mut out: SmallVec<[(u32, u32); 4]> = SmallVec::new();
        for (i, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 += e,
                _ => out.push((i, e)),
            }
        }
        PMon(out)
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &PMon) -> PMon {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        PMon(out)
    }

    pub fn mul_var(&self, v: u32) -> PMon {
        let mut out = self.0.clone();
        match out.binary_search_by_key(&v, |&(i, _)| i) {
            Ok(pos) => out[pos].1 += 1,
            Err(pos) => out.insert(pos, (v, 1)),
        }
        PMon(out)
    }

    /// Graded order; within a degree, a smaller parameter index counts as
    /// the larger variable.
    pub fn grlex_cmp(&self, other: &PMon) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(other.0.iter()) {
                if a.0 != b.0 {
                    return if a.0 < b.0 { Ordering::Greater } else { Ordering::Less };
                }
                if a.1 != b.1 {
                    return a.1.cmp(&b.1);
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

/// Sparse polynomial in parameters; terms sorted by descending [`PMon::grlex_cmp`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: Vec<(PMon, Rational)>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly { terms: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ParamPoly { terms: vec![(PMon::one(), c)] }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn var(i: u32) -> Self {
        ParamPoly { terms: vec![(PMon::var(i), Rational::one())] }
    }

    pub fn from_terms(terms: Vec<(PMon, Rational)>) -> Self {
        let mut map: HashMap<PMon, Rational> = HashMap::new();
        for (m, c) in terms {
            let e = map.entry(m).or_insert_with(Rational::zero);
            *e = e.add_ref(&c);
        }
        Self::from_map(map)
    }

    fn from_map(map: HashMap<PMon, Rational>) -> Self {
        let mut terms: Vec<(PMon, Rational)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.grlex_cmp(&a.0));
        ParamPoly { terms }
    }

    pub fn terms(&self) -> &[(PMon, Rational)] {
        &self.terms
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

    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn leading(&self) -> Option<&(PMon, Rational)> {
        self.terms.first()
    }

    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    fn merge(&self, other: &ParamPoly, sign: bool) -> ParamPoly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let lift = |c: &Rational| if sign { c.clone() } else { c.neg_ref() };
        while i < a.len() && j < b.len() {
            match a[i].0.grlex_cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), lift(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if sign { a[i].1.add_ref(&b[j].1) } else { a[i].1.sub_ref(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), lift(c))));
        ParamPoly { terms: out }
    }

    pub fn add(&self, other: &ParamPoly) -> ParamPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        self.merge(other, true)
    }

    pub fn sub(&self, other: &ParamPoly) -> ParamPoly {
        if other.is_zero() {
            return self.clone();
        }
        self.merge(other, false)
    }

    pub fn neg(&self) -> ParamPoly {
        ParamPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect() }
    }

    pub fn scale(&self, c: &Rational) -> ParamPoly {
        if c.is_zero() {
            return Self::zero();
        }
        ParamPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul_ref(c))).collect() }
    }

    /// Multiplication by a term preserves the order of the terms.
    pub fn mul_term(&self, m: &PMon, c: &Rational) -> ParamPoly {
        if c.is_zero() {
            return Self::zero();
        }
        ParamPoly { terms: self.terms.iter().map(|(a, b)| (a.mul(m), b.mul_ref(c))).collect() }
    }

    pub fn mul(&self, other: &ParamPoly) -> ParamPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut map: HashMap<PMon, Rational> = HashMap::with_capacity(self.len() * other.len());
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = map.entry(a.mul(b)).or_insert_with(Rational::zero);
                *e = e.add_ref(&x.mul_ref(y));
            }
        }
        Self::from_map(map)
    }

    pub fn eval(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(i, e) in m.pairs() {
                t = t.mul_ref(&values[i as usize].pow(e));
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Substitutes each parameter `i` by `subst(i)` (or keeps it when `None`).
    pub fn substitute(&self, subst: &dyn Fn(u32) -> Option<ParamPoly>) -> ParamPoly {
        let mut acc = ParamPoly::zero();
        let mut cache: HashMap<u32, Option<ParamPoly>> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = ParamPoly::constant(c.clone());
            for &(i, e) in m.pairs() {
                let s = cache.entry(i).or_insert_with(|| subst(i)).clone();
                let base = s.unwrap_or_else(|| ParamPoly::var(i));
                for _ in 0..e {
                    t = t.mul(&base);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Renames parameters through `map`; parameters mapped to `None` are set to zero.
    pub fn rename(&self, map: &dyn Fn(u32) -> Option<u32>) -> ParamPoly {
        let mut terms = Vec::with_capacity(self.terms.len());
        'outer: for (m, c) in &self.terms {
            let mut pairs = Vec::with_capacity(m.pairs().len());
            for &(i, e) in m.pairs() {
                match map(i) {
                    Some(j) => pairs.push((j, e)),
                    None => continue 'outer,
                }
            }
            terms.push((PMon::from_pairs(pairs), c.clone()));
        }
        Self::from_terms(terms)
    }

    /// Homogeneous degree-1 component.
    pub fn linear_part(&self) -> Vec<(u32, Rational)> {
        self.terms.iter().filter(|(m, _)| m.degree() == 1).map(|(m, c)| (m.pairs()[0].0, c.clone())).collect()
    }

    pub fn variables(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.terms.iter().flat_map(|(m, _)| m.pairs().iter().map(|&(i, _)| i)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> ParamPoly {
        match self.terms.first() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip().expect("nonzero")),
            _ => self.clone(),
        }
    }

    /// Term-by-term comparison: monomials by grlex, then coefficients.
    pub fn canonical_cmp(&self, other: &ParamPoly) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            let o = b.0.grlex_cmp(&a.0).then_with(|| a.1.cmp(&b.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }

    pub fn display<'a>(&'a self, space: &'a ParamSpace) -> ParamPolyDisplay<'a> {
        ParamPolyDisplay { poly: self, space: Some(space) }
    }
}

pub struct ParamPolyDisplay<'a> {
    poly: &'a ParamPoly,
    space: Option<&'a ParamSpace>,
}

impl fmt::Display for ParamPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg_ref() } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                parts.push(abs.to_string());
            }
            for &(i, e) in m.pairs() {
                let name = match self.space {
                    Some(s) => s.get(i).to_string(),
                    None => format!("c{i}"),
                };
                parts.push(if e > 1 { format!("{name}^{e}") } else { name });
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        ParamPolyDisplay { poly: self, space: None }.fmt(f)
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn grlex_order() {
        let a = PMon::var(0);
        let b = PMon::var(1);
        assert_eq!(a.grlex_cmp(&b), Ordering::Greater);
        assert_eq!(PMon::from_pairs(vec![(1, 2)]).grlex_cmp(&a), Ordering::Greater);
        assert_eq!(
            PMon::from_pairs(vec![(0, 1), (2, 1)]).grlex_cmp(&PMon::from_pairs(vec![(1, 2)])),
            Ordering::Greater
        );
        assert_eq!(PMon::one().grlex_cmp(&a), Ordering::Less);
    }

    #[test]
    fn arithmetic_and_display() {
        let x = ParamPoly::var(0);
        let y = ParamPoly::var(1);
        let p = x.add(&y).mul(&x.sub(&y));
        assert_eq!(p.to_string(), "c0^2 - c1^2");
        assert_eq!(p.sub(&p), ParamPoly::zero());
        assert_eq!(p.scale(&Rational::zero()), ParamPoly::zero());
        let r = ParamPoly::constant(q(2)).sub(&x.scale(&q(3)));
        assert_eq!(r.to_string(), "-3*c0 + 2");
        assert_eq!(r.monic().to_string(), "c0 - 2/3");
        assert_eq!(r.eval(&[q(1), q(0)]), q(-1));
    }

    #[test]
    fn substitution_and_rename() {
        let x = ParamPoly::var(0);
        let y = ParamPoly::var(1);
        let p = x.mul(&y).add(&y);
        let s = p.substitute(&|i| (i == 0).then(|| y.add(&ParamPoly::one())));
        assert_eq!(s, y.mul(&y).add(&y.scale(&q(2))));
        let r = p.rename(&|i| (i == 1).then_some(5));
        assert_eq!(r, ParamPoly::var(5));
    }

    fn poly() -> impl Strategy<Value = ParamPoly> {
        prop::collection::vec((prop::collection::vec((0u32..4, 0u32..3), 0..3), -5i64..6), 0..6)
            .prop_map(|ts| ParamPoly::from_terms(ts.into_iter().map(|(m, c)| (PMon::from_pairs(m), q(c))).collect()))
    }

    proptest! {
        #[test]
        fn ring_laws((a, b, c) in (poly(), poly(), poly())) {
            prop_assert_eq!(a.add(&b).sub(&b), a.clone());
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.terms().windows(2).all(|w| w[0].0.grlex_cmp(&w[1].0) == Ordering::Greater));
            let v = [q(2), q(-1), q(3), q(1)];
            prop_assert_eq!(a.mul(&b).eval(&v), a.eval(&v).mul_ref(&b.eval(&v)));
        }
    }
}
