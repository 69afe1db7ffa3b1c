//! Equations of the marked scheme of a truncation in the reduced parameter set,
//! truncation embeddings and the embedding-dimension report.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use crate::borel::StronglyStableIdeal;
use crate::criteria::{all_pairs, ek_pairs, l1_pairs, l2_pairs, CriticalPair};
use crate::error::{Error, Result};
use crate::hilbert::hilbert_polynomial;
use crate::monomial::Monomial;
use crate::polyparam::{
    generic_marked_set, generic_superminimal_set, x0_split, GenericSet, MarkedPoly, MarkedSet, ParamPoly, ParamSpace,
    Parameter, SetKind, XPoly,
};
use crate::rational::Rational;
use crate::reduction::{default_max_steps, SmOptions, SmReducer};

/// Pair family whose S-polynomials feed the second equation set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PairFamily {
    #[default]
    L1,
    L1L2,
    Ek,
    AllPairs,
}

#[derive(Clone, Debug)]
pub struct SchemeOptions {
    pub pairs: PairFamily,
    /// Extra `x0` lift forced on every completion reduction.
    pub forced_lift: u32,
    pub max_steps: u64,
}

impl Default for SchemeOptions {
    fn default() -> Self {
        SchemeOptions { pairs: PairFamily::L1, forced_lift: 0, max_steps: default_max_steps() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchemeStats {
    pub n_params: usize,
    pub n_equations: usize,
    pub n_pairs: usize,
    /// Nonzero coefficients collected before normalization.
    pub raw_d1: usize,
    pub raw_d2: usize,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug)]
pub struct SchemeResult {
    pub ideal: StronglyStableIdeal,
    pub space: Arc<ParamSpace>,
    pub equations: Vec<ParamPoly>,
    /// Heads `B_J`; superminimal tails generic, the others completed.
    pub completed: MarkedSet<ParamPoly>,
    pub stats: SchemeStats,
}

impl SchemeResult {
    pub fn parameters(&self) -> &[Parameter] {
        self.space.params()
    }

    pub fn generic_set(&self) -> GenericSet {
        GenericSet { set: self.completed.clone(), space: self.space.clone() }
    }
}

/// Output of [`complete_generic_set`].
#[derive(Clone, Debug)]
pub struct Completion {
    pub generic: GenericSet,
    pub completed: MarkedSet<ParamPoly>,
    /// `x`-coefficients of every `H'`, unnormalized, in head order.
    pub d1: Vec<ParamPoly>,
    /// `(H', H'')` per non-superminimal head.
    pub splits: Vec<(Monomial, XPoly<ParamPoly>, XPoly<ParamPoly>)>,
}

fn check_truncation(j: &StronglyStableIdeal) -> Result<()> {
    if let Some((m, i, k)) = j.strong_stability_violation() {
        return Err(Error::NotStronglyStable { monomial: m.to_string(), i, j: k });
    }
    if j.is_m_truncation().is_none() {
        return Err(Error::NotTruncation);
    }
    Ok(())
}

pub fn complete_generic_set(j: &StronglyStableIdeal, forced_lift: u32, max_steps: u64) -> Result<Completion> {
    check_truncation(j)?;
    let generic = generic_superminimal_set(j)?;
    let reducer = SmReducer::new(&generic.set)?;
    let sb = j.superminimal_generators();
    let others: Vec<&Monomial> = j.basis().iter().filter(|b| !sb.contains(b)).collect();
    let opts = SmOptions { initial_lift: forced_lift, max_steps, ..SmOptions::default() };
    let splits = others
        .par_iter()
        .map(|a| {
            let r = reducer.reduce(&XPoly::monomial((*a).clone(), ParamPoly::one()), &opts)?;
            let (lo, hi) = x0_split(&r.reduced, r.t);
            Ok(((*a).clone(), lo, hi))
        })
        .collect::<Result<Vec<_>>>()?;
    let d1 = splits.iter().flat_map(|(_, lo, _)| lo.coefficients().cloned()).collect();
    let polys = generic
        .set
        .polys()
        .iter()
        .cloned()
        .chain(splits.iter().map(|(a, _, hi)| MarkedPoly::new(a.clone(), hi.clone())))
        .collect();
    let completed = MarkedSet::new(j.clone(), SetKind::Full, polys)?;
    Ok(Completion { generic, completed, d1, splits })
}

/// Drops zeros, scales to leading coefficient 1, removes duplicates and sorts.
pub fn normalize_equations(eqs: impl IntoIterator<Item = ParamPoly>) -> Vec<ParamPoly> {
    let mut out: Vec<ParamPoly> = eqs.into_iter().filter(|e| !e.is_zero()).map(|e| e.monic()).collect();
    out.sort_by(|a, b| a.canonical_cmp(b));
    out.dedup();
    out
}

fn pair_family(set: &MarkedSet<ParamPoly>, sg: &MarkedSet<ParamPoly>, fam: PairFamily) -> Vec<CriticalPair> {
    match fam {
        PairFamily::L1 => l1_pairs(sg),
        PairFamily::L1L2 => {
            let mut v = l1_pairs(sg);
            v.extend(l2_pairs(set));
            v.sort_by(CriticalPair::canonical_cmp);
            v
        }
        PairFamily::Ek => ek_pairs(set),
        PairFamily::AllPairs => all_pairs(set),
    }
}

fn d2_equations(c: &Completion, fam: PairFamily, max_steps: u64) -> Result<(usize, Vec<ParamPoly>)> {
    let sg = &c.generic.set;
    let reducer = SmReducer::new(sg)?;
    let pairs = pair_family(&c.completed, sg, fam);
    let opts = SmOptions { max_steps, ..SmOptions::default() };
    let residuals = pairs
        .par_iter()
        .map(|p| {
            let s = p.s_polynomial(if p.tag == crate::criteria::PairTag::L1 { sg } else { &c.completed });
            Ok(reducer.reduce(&s, &opts)?.reduced)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((pairs.len(), residuals.into_iter().flat_map(|r| r.coefficients().cloned().collect::<Vec<_>>()).collect()))
}

pub fn marked_scheme(j: &StronglyStableIdeal) -> Result<SchemeResult> {
    marked_scheme_with(j, &SchemeOptions::default())
}

pub fn marked_scheme_with(j: &StronglyStableIdeal, opts: &SchemeOptions) -> Result<SchemeResult> {
    let start = Instant::now();
    let c = complete_generic_set(j, opts.forced_lift, opts.max_steps)?;
    let (n_pairs, d2) = d2_equations(&c, opts.pairs, opts.max_steps)?;
    let stats_raw = (c.d1.len(), d2.len());
    let equations = normalize_equations(c.d1.iter().cloned().chain(d2));
    let stats = SchemeStats {
        n_params: c.generic.num_params(),
        n_equations: equations.len(),
        n_pairs,
        raw_d1: stats_raw.0,
        raw_d2: stats_raw.1,
        elapsed_ms: start.elapsed().as_millis(),
    };
    Ok(SchemeResult { ideal: j.clone(), space: c.generic.space.clone(), equations, completed: c.completed, stats })
}

/// Generators of the scheme ideal in the full parameter ring, split by origin.
#[derive(Clone, Debug)]
pub struct FullEquations {
    pub space: Arc<ParamSpace>,
    /// `C[alpha, gamma] - coeff(H''_alpha, gamma)` for non-superminimal `alpha`.
    pub b: Vec<ParamPoly>,
    pub d1: Vec<ParamPoly>,
    pub d2: Vec<ParamPoly>,
    /// Position of each reduced parameter in the full space.
    pub embedding: Vec<u32>,
}

pub fn full_equations_aj(j: &StronglyStableIdeal) -> Result<FullEquations> {
    let c = complete_generic_set(j, 0, default_max_steps())?;
    let (_, d2) = d2_equations(&c, PairFamily::L1, default_max_steps())?;
    let full = generic_marked_set(j);
    let embedding: Vec<u32> = c
        .generic
        .space
        .params()
        .iter()
        .map(|p| full.space.index_of(p).expect("reduced parameter is a full parameter"))
        .collect();
    let lift = |e: &ParamPoly| e.rename(&|i| Some(embedding[i as usize]));
    let mut b = Vec::new();
    for (a, _, hi) in &c.splits {
        for gamma in j.complement(a.degree()) {
            let idx = full.space.index_of(&Parameter::new(a.clone(), gamma.clone())).expect("full parameter");
            let phi = hi.coefficient(&gamma).map(lift).unwrap_or_else(ParamPoly::zero);
            b.push(ParamPoly::var(idx).sub(&phi));
        }
    }
    Ok(FullEquations {
        space: full.space.clone(),
        b,
        d1: c.d1.iter().map(lift).collect(),
        d2: d2.iter().map(lift).collect(),
        embedding,
    })
}

/// Rank of sparse rational rows by elimination on the leading column.
fn sparse_rank(rows: Vec<BTreeMap<u32, Rational>>) -> usize {
    let mut pivots: BTreeMap<u32, BTreeMap<u32, Rational>> = BTreeMap::new();
    for mut r in rows {
        while let Some((&col, lead)) = r.iter().next() {
            let Some(p) = pivots.get(&col) else {
                let inv = lead.recip().expect("nonzero");
                for v in r.values_mut() {
                    *v = v.mul_ref(&inv);
                }
                pivots.insert(col, r);
                break;
            };
            let f = lead.clone();
            for (k, v) in p {
                let e = r.entry(*k).or_insert_with(Rational::zero);
                *e = e.sub_ref(&f.mul_ref(v));
                if e.is_zero() {
                    r.remove(k);
                }
            }
        }
    }
    pivots.len()
}

/// Dimension of the Zariski tangent space at the origin.
pub fn tangent_dim_at_origin(result: &SchemeResult) -> usize {
    let rows = result.equations.iter().map(|e| e.linear_part().into_iter().collect()).collect();
    result.parameters().len() - sparse_rank(rows)
}

/// `J_{>= m}`, or `J` itself for negative `m`.
pub fn truncation_at(j_sat: &StronglyStableIdeal, m: i64) -> StronglyStableIdeal {
    if m <= 0 {
        j_sat.clone()
    } else {
        j_sat.truncate(m as u32)
    }
}

/// Reduced parameters of the level `m` identified with those of level `m - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationMap {
    pub identified: Vec<(Parameter, Parameter)>,
    pub extra: Vec<Parameter>,
}

fn reduced_parameters(j: &StronglyStableIdeal) -> Result<Vec<Parameter>> {
    Ok(generic_superminimal_set(j)?.space.params().to_vec())
}

pub fn phi_embedding(j_sat: &StronglyStableIdeal, m: u32) -> Result<TruncationMap> {
    let sat = j_sat.saturation();
    let lower = reduced_parameters(&truncation_at(&sat, m as i64 - 1))?;
    let upper = reduced_parameters(&truncation_at(&sat, m as i64))?;
    let mut identified = Vec::with_capacity(lower.len());
    let mut hit = vec![false; upper.len()];
    let upper_index: std::collections::HashMap<&Parameter, usize> =
        upper.iter().enumerate().map(|(i, p)| (p, i)).collect();
    for p in &lower {
        let image =
            if p.head.degree() >= m { p.clone() } else { Parameter::new(p.head.mul_var(0, 1), p.tail.mul_var(0, 1)) };
        let i = *upper_index.get(&image).ok_or_else(|| Error::Internal(format!("{p} has no image at level {m}")))?;
        hit[i] = true;
        identified.push((p.clone(), image));
    }
    let extra = upper.iter().zip(hit).filter(|(_, h)| !h).map(|(p, _)| p.clone()).collect();
    Ok(TruncationMap { identified, extra })
}

/// Whether the marked schemes of the `m-1` and `m` truncations are isomorphic.
pub fn is_truncation_isomorphism(j_sat: &StronglyStableIdeal, m: u32) -> bool {
    let sat = j_sat.saturation();
    if m == 0 || truncation_at(&sat, m as i64 - 1) == truncation_at(&sat, m as i64) {
        return true;
    }
    !sat.basis().iter().any(|b| b.degree() == m + 1 && b.exponent(1) > 0)
}

/// `rho - 1`, or `-1` when no generator involves `x1`; every level above it is isomorphic to it.
pub fn minimal_stable_level(j_sat: &StronglyStableIdeal) -> i64 {
    j_sat.saturation().rho().map_or(-1, |r| r as i64 - 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub regularity: u32,
    pub num_generators: usize,
    pub stable_level: i64,
    /// Number of generators times the Hilbert polynomial at the regularity.
    pub bound: Rational,
    pub reduced_params: usize,
}

pub fn embedding_report(j_sat: &StronglyStableIdeal) -> Result<EmbeddingReport> {
    let sat = j_sat.saturation();
    let p = hilbert_polynomial(&sat)?;
    let level = minimal_stable_level(&sat);
    let reduced_params = generic_superminimal_set(&truncation_at(&sat, level))?.num_params();
    let bound = Rational::from_integer(sat.basis().len() as i64).mul_ref(&p.eval(sat.regularity() as i64));
    if Rational::from_integer(reduced_params as i64) > bound {
        return Err(Error::Internal(format!("{reduced_params} reduced parameters exceed the bound {bound}")));
    }
    Ok(EmbeddingReport {
        regularity: sat.regularity(),
        num_generators: sat.basis().len(),
        stable_level: level,
        bound,
        reduced_params,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ideal;

    fn ideal(s: &str, n: usize) -> StronglyStableIdeal {
        parse_ideal(s, Some(n)).unwrap()
    }

    #[test]
    fn saturated_completion_is_trivial() {
        let j = ideal("x3^2, x3*x2, x2^3", 4);
        let c = complete_generic_set(&j, 0, 1000).unwrap();
        assert!(c.d1.is_empty() && c.splits.is_empty());
        assert_eq!(c.completed.polys(), c.generic.set.polys());
    }

    #[test]
    fn affine_plane_family() {
        let r = marked_scheme(&ideal("x2, x1^2", 3)).unwrap();
        assert_eq!(r.parameters().len(), 4);
        assert!(r.equations.is_empty());
        assert_eq!(tangent_dim_at_origin(&r), 4);
    }

    #[test]
    fn nonbastano_completion() {
        let j = ideal("x3, x2^2", 4).truncate(2);
        let c = complete_generic_set(&j, 0, 10_000).unwrap();
        let heads: Vec<String> = c.splits.iter().map(|(a, _, _)| a.to_string()).collect();
        assert_eq!(heads, ["x3^2", "x3*x2", "x3*x1"]);
        for s in 1..3 {
            let d = complete_generic_set(&j, s, 10_000).unwrap();
            assert_eq!(d.d1, c.d1);
            assert_eq!(d.completed.polys(), c.completed.polys());
        }
        let r = marked_scheme(&j).unwrap();
        assert_eq!(r.stats.n_pairs, 1);
        assert_eq!(r.completed.heads().count(), j.basis().len());
        assert_eq!(r.completed.superminimal_subset().polys(), c.generic.set.polys());
    }

    #[test]
    fn normalization() {
        let a = ParamPoly::var(0).scale(&Rational::from_integer(-2)).add(&ParamPoly::var(1));
        let b = ParamPoly::var(0).sub(&ParamPoly::var(1).scale(&Rational::new(1, 2).unwrap()));
        let n = normalize_equations([a, ParamPoly::zero(), b]);
        assert_eq!(n.len(), 1);
        assert!(n[0].leading().unwrap().1.is_one());
    }

    #[test]
    fn sparse_rank_examples() {
        let r = |v: &[(u32, i64)]| v.iter().map(|&(i, c)| (i, Rational::from_integer(c))).collect();
        assert_eq!(sparse_rank(vec![r(&[(0, 1), (1, 2)]), r(&[(0, 2), (1, 4)]), r(&[(2, 1)])]), 2);
        assert_eq!(sparse_rank(vec![]), 0);
    }

    #[test]
    fn truncation_maps() {
        let j4 = ideal("x3, x2^5, x2^4*x1^2", 4);
        let up = reduced_parameters(&j4.truncate(5)).unwrap();
        assert_eq!(up.len(), 64);
        let t = phi_embedding(&j4, 5).unwrap();
        assert_eq!(t.identified.len(), reduced_parameters(&j4.truncate(4)).unwrap().len());
        assert_eq!(t.identified.len() + t.extra.len(), up.len());
        assert!(t.extra.iter().all(|p| p.tail.exponent(0) == 0));
        assert!((6..10).all(|m| is_truncation_isomorphism(&j4, m)));
        assert!(!is_truncation_isomorphism(&j4, 5));
        assert_eq!(minimal_stable_level(&j4), 5);
        let j1 = ideal("x3^2, x3*x2, x2^3", 4);
        assert!((0..8).all(|m| is_truncation_isomorphism(&j1, m)));
        assert_eq!(minimal_stable_level(&j1), -1);
    }

    #[test]
    fn reports() {
        let cases = [
            ("x3^2, x3*x2, x2^3", (3, 3, -1, 36, 28)),
            ("x3^2, x3*x2, x3*x1^2, x2^4", (4, 4, 2, 64, 44)),
            ("x3, x2^5, x2^4*x1^2", (6, 3, 5, 72, 64)),
        ];
        for (s, (reg, sigma, lvl, bound, params)) in cases {
            let r = embedding_report(&ideal(s, 4)).unwrap();
            assert_eq!(
                (r.regularity, r.num_generators, r.stable_level, r.bound, r.reduced_params),
                (reg, sigma, lvl, Rational::from_integer(bound), params),
                "{s}"
            );
        }
    }

    #[test]
    fn rejects_non_truncations() {
        let j = ideal("x2, x1^2, x1*x0", 3);
        assert!(matches!(marked_scheme(&j), Err(Error::NotTruncation)));
    }
}
