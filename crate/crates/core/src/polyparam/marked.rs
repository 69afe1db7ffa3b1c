//! Marked polynomials `f = head - tail` and marked sets over a monomial ideal.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::borel::StronglyStableIdeal;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::polyparam::param::{ParamPoly, ParamSpace, Parameter};
use crate::polyparam::xpoly::{Coefficient, XPoly};
use crate::rational::Rational;

#[derive(Clone, PartialEq)]
pub struct MarkedPoly<C: Coefficient> {
    pub head: Monomial,
    pub tail: XPoly<C>,
}

impl<C: Coefficient> MarkedPoly<C> {
    pub fn new(head: Monomial, tail: XPoly<C>) -> Self {
        MarkedPoly { head, tail }
    }

    pub fn monomial(head: Monomial) -> Self {
        MarkedPoly { head, tail: XPoly::zero() }
    }

    /// `head - tail` as a polynomial.
    pub fn to_poly(&self) -> XPoly<C> {
        let mut p = self.tail.neg();
        p.add_term(self.head.clone(), C::one());
        p
    }
}

impl<C: Coefficient> fmt::Debug for MarkedPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {:?}", self.head, self.tail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetKind {
    /// Heads are exactly `B_J`.
    Full,
    /// Heads are exactly `sB_J`.
    Superminimal,
}

#[derive(Clone)]
pub struct MarkedSet<C: Coefficient> {
    ideal: StronglyStableIdeal,
    kind: SetKind,
    polys: Vec<MarkedPoly<C>>,
    index: HashMap<Monomial, usize>,
}

impl<C: Coefficient> MarkedSet<C> {
    /// Validates heads and tails. Heads missing from `polys` get a zero tail.
    pub fn new(ideal: StronglyStableIdeal, kind: SetKind, polys: Vec<MarkedPoly<C>>) -> Result<Self> {
        let heads: Vec<Monomial> = match kind {
            SetKind::Full => ideal.basis().to_vec(),
            SetKind::Superminimal => ideal.superminimal_generators(),
        };
        let mut given: HashMap<Monomial, MarkedPoly<C>> = HashMap::new();
        for p in polys {
            if !heads.contains(&p.head) {
                return Err(Error::InvalidMarkedSet(format!("{} is not an admissible head", p.head)));
            }
            let d = p.head.degree();
            for m in p.tail.support() {
                if m.num_vars() != ideal.num_vars() || m.degree() != d {
                    return Err(Error::InvalidMarkedSet(format!(
                        "tail monomial {m} of {} has the wrong degree",
                        p.head
                    )));
                }
                if ideal.contains(m) {
                    return Err(Error::InvalidMarkedSet(format!("tail monomial {m} of {} lies in the ideal", p.head)));
                }
            }
            if given.insert(p.head.clone(), p).is_some() {
                return Err(Error::InvalidMarkedSet("repeated head".into()));
            }
        }
        let polys: Vec<MarkedPoly<C>> =
            heads.into_iter().map(|h| given.remove(&h).unwrap_or_else(|| MarkedPoly::monomial(h))).collect();
        Ok(Self::assemble(ideal, kind, polys))
    }

    fn assemble(ideal: StronglyStableIdeal, kind: SetKind, polys: Vec<MarkedPoly<C>>) -> Self {
        let index = polys.iter().enumerate().map(|(i, p)| (p.head.clone(), i)).collect();
        MarkedSet { ideal, kind, polys, index }
    }

    /// The set with all tails zero.
    pub fn monomial_set(ideal: StronglyStableIdeal, kind: SetKind) -> Self {
        Self::new(ideal, kind, Vec::new()).expect("no tails to validate")
    }

    pub fn ideal(&self) -> &StronglyStableIdeal {
        &self.ideal
    }

    pub fn kind(&self) -> SetKind {
        self.kind
    }

    /// In canonical head order.
    pub fn polys(&self) -> &[MarkedPoly<C>] {
        &self.polys
    }

    pub fn get(&self, head: &Monomial) -> Option<&MarkedPoly<C>> {
        self.index.get(head).map(|&i| &self.polys[i])
    }

    pub fn heads(&self) -> impl Iterator<Item = &Monomial> {
        self.polys.iter().map(|p| &p.head)
    }

    /// Restriction to the superminimal heads.
    pub fn superminimal_subset(&self) -> MarkedSet<C> {
        if self.kind == SetKind::Superminimal {
            return self.clone();
        }
        let sb = self.ideal.superminimal_generators();
        let polys = self.polys.iter().filter(|p| sb.contains(&p.head)).cloned().collect();
        Self::assemble(self.ideal.clone(), SetKind::Superminimal, polys)
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> MarkedSet<D> {
        let polys = self.polys.iter().map(|p| MarkedPoly::new(p.head.clone(), p.tail.map_coefficients(&f))).collect();
        MarkedSet::assemble(self.ideal.clone(), self.kind, polys)
    }

    /// Replaces tails without re-validation; callers guarantee admissibility.
    pub(crate) fn from_parts(ideal: StronglyStableIdeal, kind: SetKind, polys: Vec<MarkedPoly<C>>) -> Self {
        Self::assemble(ideal, kind, polys)
    }
}

impl<C: Coefficient> fmt::Debug for MarkedSet<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.polys.iter()).finish()
    }
}

/// A marked set over parameters together with its parameter space.
#[derive(Clone, Debug)]
pub struct GenericSet {
    pub set: MarkedSet<ParamPoly>,
    pub space: Arc<ParamSpace>,
}

fn generic_tails(ideal: &StronglyStableIdeal, heads: &[Monomial]) -> (Vec<Parameter>, Vec<(Monomial, Vec<Monomial>)>) {
    let mut params = Vec::new();
    let mut shapes = Vec::new();
    let mut cache: HashMap<u32, Vec<Monomial>> = HashMap::new();
    for h in heads {
        let n = cache.entry(h.degree()).or_insert_with(|| ideal.complement(h.degree())).clone();
        params.extend(n.iter().map(|t| Parameter::new(h.clone(), t.clone())));
        shapes.push((h.clone(), n));
    }
    (params, shapes)
}

fn build_generic(ideal: &StronglyStableIdeal, kind: SetKind, heads: &[Monomial]) -> GenericSet {
    let (params, shapes) = generic_tails(ideal, heads);
    let space = Arc::new(ParamSpace::new(params));
    let polys = shapes
        .into_iter()
        .map(|(h, n)| {
            let tail = XPoly::from_terms(n.into_iter().map(|t| {
                let i = space.index_of(&Parameter::new(h.clone(), t.clone())).expect("registered");
                (t, ParamPoly::var(i))
            }));
            MarkedPoly::new(h, tail)
        })
        .collect();
    GenericSet { set: MarkedSet::from_parts(ideal.clone(), kind, polys), space }
}

/// One parameter `C[alpha, gamma]` per head `alpha` and tail `gamma` in `N(J)_{|alpha|}`.
pub fn generic_marked_set(ideal: &StronglyStableIdeal) -> GenericSet {
    build_generic(ideal, SetKind::Full, ideal.basis())
}

pub fn generic_superminimal_set(ideal: &StronglyStableIdeal) -> Result<GenericSet> {
    if ideal.is_m_truncation().is_none() {
        return Err(Error::NotTruncation);
    }
    Ok(build_generic(ideal, SetKind::Superminimal, &ideal.superminimal_generators()))
}

impl GenericSet {
    pub fn num_params(&self) -> usize {
        self.space.len()
    }

    /// Evaluates at a point given by parameter index.
    pub fn specialize_values(&self, values: &[Rational]) -> MarkedSet<Rational> {
        assert_eq!(values.len(), self.space.len(), "point has the wrong dimension");
        self.set.map_coefficients(|c| c.eval(values))
    }

    pub fn specialize(&self, assignment: &HashMap<Parameter, Rational>) -> Result<MarkedSet<Rational>> {
        let values = self
            .space
            .params()
            .iter()
            .map(|p| assignment.get(p).cloned().ok_or_else(|| Error::MissingParameter(p.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.specialize_values(&values))
    }

    /// Coordinates of a rational marked set with the same heads.
    pub fn coordinates_of(&self, g: &MarkedSet<Rational>) -> Result<Vec<Rational>> {
        let mut values = vec![Rational::zero(); self.space.len()];
        for p in g.polys() {
            for (m, c) in p.tail.terms() {
                let par = Parameter::new(p.head.clone(), m.clone());
                let i =
                    self.space.index_of(&par).ok_or_else(|| Error::InvalidMarkedSet(format!("no parameter {par}")))?;
                values[i as usize] = c.clone();
            }
        }
        Ok(values)
    }
}
