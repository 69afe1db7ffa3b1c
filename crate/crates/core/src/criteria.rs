//! S-polynomials, structured pair families and marked-basis decision procedures.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::monomial::{canonical_cmp, Monomial};
use crate::polyparam::{Coefficient, MarkedPoly, MarkedSet, SetKind, XPoly};
use crate::reduction::{default_max_steps, SmOptions, SmReducer, VReducer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairTag {
    AllPairs,
    Ek,
    L1,
    L2,
}

impl fmt::Display for PairTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairTag::AllPairs => "all",
            PairTag::Ek => "EK",
            PairTag::L1 => "L1",
            PairTag::L2 => "L2",
        })
    }
}

/// `S = mult_first * f_first - mult_second * f_second`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    pub tag: PairTag,
    pub first: Monomial,
    pub second: Monomial,
    pub mult_first: Monomial,
    pub mult_second: Monomial,
}

impl CriticalPair {
    fn lcm_pair(tag: PairTag, a: &Monomial, b: &Monomial) -> Self {
        let l = a.lcm(b);
        CriticalPair {
            tag,
            first: a.clone(),
            second: b.clone(),
            mult_first: l.div(a).expect("lcm"),
            mult_second: l.div(b).expect("lcm"),
        }
    }

    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        canonical_cmp(&self.first, &other.first)
            .then_with(|| canonical_cmp(&self.second, &other.second))
            .then_with(|| self.tag.cmp(&other.tag))
    }

    /// S-polynomial from the polynomials of `set` with these heads.
    pub fn s_polynomial<C: Coefficient>(&self, set: &MarkedSet<C>) -> XPoly<C> {
        let f = set.get(&self.first).expect("pair head in set").to_poly();
        let g = set.get(&self.second).expect("pair head in set").to_poly();
        f.mono_mul(&self.mult_first).sub(&g.mono_mul(&self.mult_second))
    }
}

impl fmt::Display for CriticalPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}, {})", self.tag, self.first, self.second)
    }
}

/// `x^g f - x^g' g` with `x^g head(f) = x^g' head(g) = lcm`.
pub fn s_polynomial<C: Coefficient>(f: &MarkedPoly<C>, g: &MarkedPoly<C>) -> Result<XPoly<C>> {
    if f.head == g.head {
        return Err(Error::EqualHeads(f.head.to_string()));
    }
    let l = f.head.lcm(&g.head);
    let a = f.to_poly().mono_mul(&l.div(&f.head).expect("lcm"));
    let b = g.to_poly().mono_mul(&l.div(&g.head).expect("lcm"));
    Ok(a.sub(&b))
}

fn sort_pairs(mut pairs: Vec<CriticalPair>) -> Vec<CriticalPair> {
    pairs.sort_by(CriticalPair::canonical_cmp);
    pairs
}

/// Every unordered pair of distinct heads.
pub fn all_pairs<C: Coefficient>(set: &MarkedSet<C>) -> Vec<CriticalPair> {
    let heads: Vec<&Monomial> = set.heads().collect();
    let mut out = Vec::new();
    for (i, a) in heads.iter().enumerate() {
        for b in &heads[i + 1..] {
            out.push(CriticalPair::lcm_pair(PairTag::AllPairs, a, b));
        }
    }
    sort_pairs(out)
}

/// One pair per head `alpha` and variable `x_j > min(alpha)`, partner from `x_j alpha = beta * eta`.
pub fn ek_pairs<C: Coefficient>(set: &MarkedSet<C>) -> Vec<CriticalPair> {
    let ideal = set.ideal();
    let n = ideal.num_vars();
    let mut out = Vec::new();
    for a in ideal.basis() {
        let lo = a.min_var().expect("nonconstant generator");
        for j in lo + 1..n {
            let xa = a.mul_var(j, 1);
            let d = ideal.star_decompose(&xa).expect("x_j alpha lies in J");
            out.push(CriticalPair {
                tag: PairTag::Ek,
                first: a.clone(),
                second: d.generator,
                mult_first: Monomial::var(n, j),
                mult_second: d.cofactor,
            });
        }
    }
    sort_pairs(out)
}

/// Pairs of superminimal polynomials from `x_i alpha_ = alpha_' * eta` in the saturation.
pub fn l1_pairs<C: Coefficient>(set: &MarkedSet<C>) -> Vec<CriticalPair> {
    let ideal = set.ideal();
    let sat = ideal.saturation();
    let sb = ideal.superminimal_generators();
    let lift_of = |g: &Monomial| sb.iter().find(|b| b.dehomogenize() == *g).expect("superminimal head").clone();
    let n = ideal.num_vars();
    let mut out = Vec::new();
    for a in &sb {
        let under = a.dehomogenize();
        let lo = under.min_var().expect("nonconstant generator");
        for i in lo + 1..n {
            let d = sat.star_decompose(&under.mul_var(i, 1)).expect("in saturation");
            out.push(CriticalPair::lcm_pair(PairTag::L1, a, &lift_of(&d.generator)));
        }
    }
    sort_pairs(out)
}

/// Pairs of degree-`m` heads with `x_i alpha' = x0 alpha`, `x_i` the least positive-index variable of `alpha`.
pub fn l2_pairs<C: Coefficient>(set: &MarkedSet<C>) -> Vec<CriticalPair> {
    let ideal = set.ideal();
    let m = ideal.initial_degree();
    let mut out = Vec::new();
    for a in ideal.basis().iter().filter(|b| b.degree() == m) {
        let Some(i) = (1..ideal.num_vars()).find(|&i| a.exponent(i) > 0) else { continue };
        let partner = a.mul_var(0, 1).div(&Monomial::var(ideal.num_vars(), i)).expect("x_i divides");
        if ideal.basis().contains(&partner) {
            out.push(CriticalPair::lcm_pair(PairTag::L2, a, &partner));
        }
    }
    sort_pairs(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VMode {
    Ek,
    AllPairs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmMode {
    L1L2,
    Ek,
    AllPairs,
}

#[derive(Clone, Debug)]
pub struct PairFailure<C: Coefficient> {
    pub pair: CriticalPair,
    pub residual: XPoly<C>,
}

#[derive(Clone, Debug)]
pub struct Verdict<C: Coefficient> {
    pub is_basis: bool,
    pub pairs_checked: usize,
    /// Failing pairs in canonical order; only the first unless all were requested.
    pub failures: Vec<PairFailure<C>>,
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub collect_all: bool,
    pub max_steps: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { collect_all: false, max_steps: default_max_steps() }
    }
}

fn evaluate<C, F>(pairs: Vec<CriticalPair>, opts: &CheckOptions, residual: F) -> Result<Verdict<C>>
where
    C: Coefficient,
    F: Fn(&CriticalPair) -> Result<XPoly<C>> + Sync,
{
    let check = |p: &CriticalPair| -> Result<Option<PairFailure<C>>> {
        let r = residual(p)?;
        Ok((!r.is_zero()).then(|| PairFailure { pair: p.clone(), residual: r }))
    };
    let failures: Vec<PairFailure<C>> = if opts.collect_all {
        let all: Vec<Result<Option<PairFailure<C>>>> = pairs.par_iter().map(check).collect();
        all.into_iter().filter_map(|r| r.transpose()).collect::<Result<_>>()?
    } else {
        match pairs.par_iter().map(check).find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        }) {
            Some(r) => vec![r?.expect("failure")],
            None => Vec::new(),
        }
    };
    Ok(Verdict { is_basis: failures.is_empty(), pairs_checked: pairs.len(), failures })
}

/// Every EK (or every) S-polynomial must `V`-reduce to zero.
pub fn check_marked_basis_v<C: Coefficient>(g: &MarkedSet<C>, mode: VMode, opts: &CheckOptions) -> Result<Verdict<C>> {
    let reducer = VReducer::new(g)?;
    let pairs = match mode {
        VMode::Ek => ek_pairs(g),
        VMode::AllPairs => all_pairs(g),
    };
    evaluate(pairs, opts, |p| reducer.reduce(&p.s_polynomial(g), opts.max_steps))
}

/// Every S-polynomial of the chosen family must superminimally reduce to zero
/// after lifting. Requires `J` to be an `m`-truncation.
pub fn check_marked_basis_sm<C: Coefficient>(
    g: &MarkedSet<C>,
    mode: SmMode,
    opts: &CheckOptions,
) -> Result<Verdict<C>> {
    if g.ideal().is_m_truncation().is_none() {
        return Err(Error::NotTruncation);
    }
    if g.kind() != SetKind::Full {
        return Err(Error::InvalidMarkedSet("the criterion needs a full marked set".into()));
    }
    let sg = g.superminimal_subset();
    let reducer = SmReducer::new(&sg)?;
    let pairs = match mode {
        SmMode::L1L2 => sort_pairs(l1_pairs(g).into_iter().chain(l2_pairs(g)).collect()),
        SmMode::Ek => ek_pairs(g),
        SmMode::AllPairs => all_pairs(g),
    };
    let sm = SmOptions { max_steps: opts.max_steps, ..SmOptions::default() };
    evaluate(pairs, opts, |p| Ok(reducer.reduce(&p.s_polynomial(g), &sm)?.reduced))
}
