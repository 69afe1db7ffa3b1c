//! `V`-reduction to `J`-reduced forms and superminimal reduction with `x0`-lifting.

use std::collections::{BTreeMap, HashMap};

use crate::borel::StronglyStableIdeal;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::polyparam::{Coefficient, MarkedPoly, MarkedSet, SetKind, XPoly};

pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;
pub const MAX_STEPS_ENV: &str = "MARKED_MAX_STEPS";

/// Step budget from `MARKED_MAX_STEPS`, else [`DEFAULT_MAX_STEPS`].
pub fn default_max_steps() -> u64 {
    std::env::var(MAX_STEPS_ENV).ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_MAX_STEPS)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    LexGreatest,
    LexLeast,
}

#[derive(Clone, Debug)]
pub struct SmOptions {
    pub strategy: Strategy,
    /// Extra power of `x0` applied before reducing; counted in the reported `t`.
    pub initial_lift: u32,
    pub max_steps: u64,
    pub trace: bool,
}

impl Default for SmOptions {
    fn default() -> Self {
        SmOptions { strategy: Strategy::LexGreatest, initial_lift: 0, max_steps: default_max_steps(), trace: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    /// The monomial eliminated, after any lift of this step.
    pub replaced: Monomial,
    pub head: Monomial,
    pub cofactor: Monomial,
    /// Power of `x0` applied to the whole work polynomial at this step.
    pub lift: u32,
}

#[derive(Clone, Debug)]
pub struct SmReductionResult<C: Coefficient> {
    pub t: u32,
    pub reduced: XPoly<C>,
    pub steps: u64,
    pub trace: Option<Vec<TraceEntry>>,
}

pub fn is_strongly_reduced<C: Coefficient>(h: &XPoly<C>, sat: &StronglyStableIdeal) -> bool {
    h.support().all(|m| !sat.contains(m))
}

/// Work polynomial split into terms inside and outside the reducing ideal.
struct Work<'i, C: Coefficient> {
    ideal: &'i StronglyStableIdeal,
    active: BTreeMap<Monomial, C>,
    inert: BTreeMap<Monomial, C>,
}

fn add_into<C: Coefficient>(map: &mut BTreeMap<Monomial, C>, m: Monomial, c: C) {
    use std::collections::btree_map::Entry;
    match map.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get().add(&c);
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl<'i, C: Coefficient> Work<'i, C> {
    fn new(ideal: &'i StronglyStableIdeal, h: &XPoly<C>, lift: u32) -> Self {
        let mut w = Work { ideal, active: BTreeMap::new(), inert: BTreeMap::new() };
        for (m, c) in h.terms() {
            w.insert(m.mul_var(0, lift), c.clone());
        }
        w
    }

    fn insert(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        if self.ideal.contains(&m) {
            add_into(&mut self.active, m, c);
        } else {
            add_into(&mut self.inert, m, c);
        }
    }

    fn pop(&mut self, strategy: Strategy) -> Option<(Monomial, C)> {
        match strategy {
            Strategy::LexGreatest => self.active.pop_last(),
            Strategy::LexLeast => self.active.pop_first(),
        }
    }

    fn lift(&mut self, k: u32) {
        let shift = |map: &mut BTreeMap<Monomial, C>| {
            *map = std::mem::take(map).into_iter().map(|(m, c)| (m.mul_var(0, k), c)).collect();
        };
        shift(&mut self.active);
        shift(&mut self.inert);
    }

    fn subtract_multiple(&mut self, c: &C, cofactor: &Monomial, f: &MarkedPoly<C>) {
        for (m, a) in f.tail.terms() {
            self.insert(m.mul(cofactor), c.mul(a));
        }
    }

    fn into_reduced(self) -> XPoly<C> {
        XPoly::from_map_unchecked(self.inert)
    }
}

/// Superminimal reducer over a fixed marked set.
pub struct SmReducer<'a, C: Coefficient> {
    sat: StronglyStableIdeal,
    by_sat_generator: HashMap<Monomial, &'a MarkedPoly<C>>,
}

/// One superminimal reduction step.
#[derive(Clone, Debug)]
pub struct SmStep<C: Coefficient> {
    /// `x0^lift * h` with the chosen monomial replaced.
    pub result: XPoly<C>,
    pub lift: u32,
    pub entry: TraceEntry,
}

impl<'a, C: Coefficient> SmReducer<'a, C> {
    /// Uses the polynomials of `set` whose heads are superminimal.
    pub fn new(set: &'a MarkedSet<C>) -> Result<Self> {
        let ideal = set.ideal();
        let sat = ideal.saturation();
        let mut by_sat_generator = HashMap::new();
        for p in set.polys() {
            let d = p.head.dehomogenize();
            if sat.basis().contains(&d) {
                by_sat_generator.insert(d, p);
            }
        }
        if let Some(g) = sat.basis().iter().find(|g| !by_sat_generator.contains_key(*g)) {
            return Err(Error::Internal(format!("no superminimal polynomial with saturated head {g}")));
        }
        Ok(SmReducer { sat, by_sat_generator })
    }

    pub fn saturation(&self) -> &StronglyStableIdeal {
        &self.sat
    }

    /// Returns the head polynomial, the lift needed and the cofactor after lifting.
    fn plan(&self, gamma: &Monomial) -> Result<(&'a MarkedPoly<C>, u32, Monomial)> {
        let d = self.sat.star_decompose(gamma)?;
        let f = *self
            .by_sat_generator
            .get(&d.generator)
            .ok_or_else(|| Error::Internal(format!("{} is not a superminimal head", d.generator)))?;
        let need = f.head.exponent(0);
        let deficit = need.saturating_sub(gamma.exponent(0));
        let cofactor = gamma.mul_var(0, deficit).div(&f.head).expect("head divides lifted monomial");
        Ok((f, deficit, cofactor))
    }

    fn run(
        &self,
        work: &mut Work<'_, C>,
        opts: &SmOptions,
        t: &mut u32,
        trace: &mut Option<Vec<TraceEntry>>,
    ) -> Result<u64> {
        let mut steps = 0u64;
        while let Some((gamma, c)) = work.pop(opts.strategy) {
            if steps >= opts.max_steps {
                return Err(Error::StepBudgetExhausted(opts.max_steps));
            }
            steps += 1;
            let (f, deficit, cofactor) = self.plan(&gamma)?;
            if deficit > 0 {
                work.lift(deficit);
                *t += deficit;
            }
            if let Some(tr) = trace.as_mut() {
                tr.push(TraceEntry {
                    replaced: gamma.mul_var(0, deficit),
                    head: f.head.clone(),
                    cofactor: cofactor.clone(),
                    lift: deficit,
                });
            }
            work.subtract_multiple(&c, &cofactor, f);
        }
        Ok(steps)
    }

    pub fn reduce(&self, h: &XPoly<C>, opts: &SmOptions) -> Result<SmReductionResult<C>> {
        let mut work = Work::new(&self.sat, h, opts.initial_lift);
        let mut t = opts.initial_lift;
        let mut trace = opts.trace.then(Vec::new);
        let steps = self.run(&mut work, opts, &mut t, &mut trace)?;
        Ok(SmReductionResult { t, reduced: work.into_reduced(), steps, trace })
    }

    /// One step on `h`, `None` when `h` is strongly reduced.
    pub fn step(&self, h: &XPoly<C>, strategy: Strategy) -> Result<Option<SmStep<C>>> {
        let mut work = Work::new(&self.sat, h, 0);
        let Some((gamma, c)) = work.pop(strategy) else { return Ok(None) };
        let (f, deficit, cofactor) = self.plan(&gamma)?;
        work.lift(deficit);
        work.subtract_multiple(&c, &cofactor, f);
        let active = std::mem::take(&mut work.active);
        let mut result = work.into_reduced();
        for (m, a) in active {
            result.add_term(m, a);
        }
        let entry = TraceEntry { replaced: gamma.mul_var(0, deficit), head: f.head.clone(), cofactor, lift: deficit };
        Ok(Some(SmStep { result, lift: deficit, entry }))
    }

    /// Reduces `x0^t * h` without further lifting. Monomials whose head needs
    /// more `x0` are set aside and must cancel for the attempt to succeed.
    pub fn reduce_fixed(&self, h: &XPoly<C>, t: u32, max_steps: u64) -> Result<Option<XPoly<C>>> {
        let mut work = Work::new(&self.sat, h, t);
        let mut stuck: BTreeMap<Monomial, C> = BTreeMap::new();
        let mut steps = 0u64;
        loop {
            let Some((gamma, c)) = work.pop(Strategy::LexGreatest) else { break };
            if let Some(s) = stuck.remove(&gamma) {
                let sum = s.add(&c);
                if !sum.is_zero() {
                    work.active.insert(gamma, sum);
                }
                continue;
            }
            if steps >= max_steps {
                return Err(Error::StepBudgetExhausted(max_steps));
            }
            steps += 1;
            let (f, deficit, cofactor) = self.plan(&gamma)?;
            if deficit > 0 {
                stuck.insert(gamma, c);
                continue;
            }
            // new terms landing on a stuck monomial are merged on the next pop
            for (m, a) in f.tail.terms() {
                let mm = m.mul(&cofactor);
                let ca = c.mul(a);
                if let Some(s) = stuck.remove(&mm) {
                    work.insert(mm, s);
                    work.insert(m.mul(&cofactor), ca);
                } else {
                    work.insert(mm, ca);
                }
            }
        }
        Ok(stuck.is_empty().then(|| work.into_reduced()))
    }

    /// Smallest `t' <= t` for which the deterministic fixed-lift reduction of
    /// `x0^t' * h` succeeds, with its result.
    pub fn minimal_lift(&self, h: &XPoly<C>, max_steps: u64) -> Result<(u32, XPoly<C>)> {
        let full = self.reduce(h, &SmOptions { max_steps, ..SmOptions::default() })?;
        for t in 0..full.t {
            if let Some(r) = self.reduce_fixed(h, t, max_steps)? {
                return Ok((t, r));
            }
        }
        Ok((full.t, full.reduced))
    }
}

pub fn sm_reduce<C: Coefficient>(h: &XPoly<C>, sg: &MarkedSet<C>, opts: &SmOptions) -> Result<SmReductionResult<C>> {
    SmReducer::new(sg)?.reduce(h, opts)
}

pub fn sm_step<C: Coefficient>(h: &XPoly<C>, sg: &MarkedSet<C>) -> Result<Option<SmStep<C>>> {
    SmReducer::new(sg)?.step(h, Strategy::LexGreatest)
}

/// Two results describe the same reduction when `x0^{t2} h1 = x0^{t1} h2`.
pub fn same_up_to_lift<C: Coefficient>(a: &SmReductionResult<C>, b: &SmReductionResult<C>) -> bool {
    a.reduced.x0_shift(b.t) == b.reduced.x0_shift(a.t)
}

/// `J`-reduced form of `h` modulo a full marked set.
pub fn v_reduce<C: Coefficient>(h: &XPoly<C>, g: &MarkedSet<C>, max_steps: u64) -> Result<XPoly<C>> {
    VReducer::new(g)?.reduce(h, max_steps)
}

pub struct VReducer<'a, C: Coefficient> {
    set: &'a MarkedSet<C>,
}

impl<'a, C: Coefficient> VReducer<'a, C> {
    pub fn new(set: &'a MarkedSet<C>) -> Result<Self> {
        if set.kind() != SetKind::Full {
            return Err(Error::InvalidMarkedSet("V-reduction needs a full marked set".into()));
        }
        Ok(VReducer { set })
    }

    pub fn reduce(&self, h: &XPoly<C>, max_steps: u64) -> Result<XPoly<C>> {
        h.homogeneous_degree()?;
        let ideal = self.set.ideal();
        let mut work = Work::new(ideal, h, 0);
        let mut steps = 0u64;
        while let Some((beta, c)) = work.pop(Strategy::LexGreatest) {
            if steps >= max_steps {
                return Err(Error::StepBudgetExhausted(max_steps));
            }
            steps += 1;
            let d = ideal.star_decompose(&beta)?;
            let f = self.set.get(&d.generator).expect("generator has a marked polynomial");
            work.subtract_multiple(&c, &d.cofactor, f);
        }
        Ok(work.into_reduced())
    }
}
