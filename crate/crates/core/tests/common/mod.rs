//! Shared generators and checks for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use marked::criteria::{check_marked_basis_sm, check_marked_basis_v, CheckOptions, SmMode, VMode};
use marked::monomial::{monomials_of_degree, Monomial};
use marked::oracle::{default_window, hilbert_rank_check, translated_marked_basis};
use marked::parse::parse_ideal;
use marked::scheme::SchemeResult;
use marked::{MarkedPoly, MarkedSet, QPoly, Rational, SetKind, StronglyStableIdeal};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ideal(s: &str, nvars: usize) -> StronglyStableIdeal {
    parse_ideal(s, Some(nvars)).unwrap()
}

pub const J1: &str = "x3^2, x3*x2, x2^3";
pub const J2: &str = "x3^2, x3*x2, x3*x1^2, x2^4";
pub const J3: &str = "x3^2, x3*x2, x3*x1, x2^5, x2^4*x1";
pub const J4: &str = "x3, x2^5, x2^4*x1^2";
pub const NONBASTANO: &str = "x3, x2^2";

/// Truncations appearing in the worked examples.
pub fn worked_truncations() -> Vec<(String, StronglyStableIdeal)> {
    let mut v = Vec::new();
    for (name, s, ms) in [
        ("J1", J1, &[3u32][..]),
        ("J2", J2, &[2, 3][..]),
        ("J3", J3, &[4][..]),
        ("J4", J4, &[5][..]),
        ("nonbastano", NONBASTANO, &[2, 3][..]),
        ("(x2,x1^3)", "x2, x1^3", &[1, 2][..]),
    ] {
        let n = if s.contains("x3") { 4 } else { 3 };
        for &m in ms {
            v.push((format!("{name}>={m}"), ideal(s, n).truncate(m)));
        }
    }
    v
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    let num = rng.gen_range(-3i64..=3);
    let den = *[1i64, 1, 1, 2, 3].choose(rng).unwrap();
    Rational::new(num, den).unwrap()
}

/// Saturated strongly stable ideal from the Borel closure of a few random
/// monomials in `x1..x_{nvars-1}`, truncated at a random level.
pub fn random_truncation(rng: &mut impl Rng, nvars: usize, max_reg: u32) -> StronglyStableIdeal {
    loop {
        let mut seeds = BTreeSet::new();
        for _ in 0..rng.gen_range(1..=3) {
            let d = rng.gen_range(1..=max_reg);
            let mut e = vec![0u32; nvars];
            for _ in 0..d {
                e[rng.gen_range(1..nvars)] += 1;
            }
            seeds.insert(Monomial::from_exponents(&e));
        }
        let mut closed: BTreeSet<Monomial> = BTreeSet::new();
        let mut stack: Vec<Monomial> = seeds.into_iter().collect();
        while let Some(m) = stack.pop() {
            if !closed.insert(m.clone()) {
                continue;
            }
            for i in 0..nvars {
                for j in i + 1..nvars {
                    if m.exponent(i) > 0 {
                        stack.push(m.elementary_move_up(i, j).unwrap());
                    }
                }
            }
        }
        let gens: Vec<Monomial> = closed.into_iter().collect();
        let sat = StronglyStableIdeal::new_strongly_stable(&gens, nvars).unwrap();
        if sat.regularity() > max_reg {
            continue;
        }
        let m = rng.gen_range(sat.initial_degree()..=sat.regularity());
        return sat.truncate(m);
    }
}

pub fn random_unipotent(rng: &mut impl Rng, nvars: usize) -> Vec<Vec<Rational>> {
    (0..nvars).map(|i| (0..i).map(|_| small_rational(rng)).collect()).collect()
}

/// A marked set that is a basis by construction, or one obtained from such a
/// basis by changing a single tail coefficient, or a random set.
pub fn random_marked_set(rng: &mut impl Rng, j: &StronglyStableIdeal) -> MarkedSet<Rational> {
    let n = j.num_vars();
    let basis = translated_marked_basis(j, &random_unipotent(rng, n)).unwrap();
    match rng.gen_range(0..4) {
        0 | 1 => basis,
        2 => {
            let mut polys = basis.polys().to_vec();
            let k = rng.gen_range(0..polys.len());
            let tails = j.complement(polys[k].head.degree());
            if let Some(t) = tails.choose(rng) {
                let mut tail = polys[k].tail.clone();
                tail.add_term(t.clone(), Rational::from_integer(rng.gen_range(1..=3)));
                polys[k] = MarkedPoly::new(polys[k].head.clone(), tail);
            }
            MarkedSet::new(j.clone(), SetKind::Full, polys).unwrap()
        }
        _ => {
            let polys = j
                .basis()
                .iter()
                .map(|h| {
                    let mut tail = QPoly::zero();
                    for t in j.complement(h.degree()) {
                        if rng.gen_bool(0.3) {
                            tail.add_term(t, small_rational(rng));
                        }
                    }
                    MarkedPoly::new(h.clone(), tail)
                })
                .collect();
            MarkedSet::new(j.clone(), SetKind::Full, polys).unwrap()
        }
    }
}

/// Verdicts of V-EK, V-all, sm-L1L2, sm-EK, sm-all and the rank oracle.
pub fn all_verdicts(g: &MarkedSet<Rational>) -> [bool; 6] {
    let o = CheckOptions::default();
    [
        check_marked_basis_v(g, VMode::Ek, &o).unwrap().is_basis,
        check_marked_basis_v(g, VMode::AllPairs, &o).unwrap().is_basis,
        check_marked_basis_sm(g, SmMode::L1L2, &o).unwrap().is_basis,
        check_marked_basis_sm(g, SmMode::Ek, &o).unwrap().is_basis,
        check_marked_basis_sm(g, SmMode::AllPairs, &o).unwrap().is_basis,
        hilbert_rank_check(g, default_window(g.ideal())),
    ]
}

pub fn equations_vanish(r: &SchemeResult, values: &[Rational]) -> bool {
    r.equations.iter().all(|e| e.eval(values).is_zero())
}

pub fn v_basis(g: &MarkedSet<Rational>) -> bool {
    check_marked_basis_v(g, VMode::Ek, &CheckOptions::default()).unwrap().is_basis
}

#[derive(Debug, Default)]
pub struct SamplingReport {
    pub points: usize,
    pub on_scheme: usize,
    pub disagreements: Vec<String>,
}

/// Compares "all equations vanish" with the V-criterion on the specialized
/// completed set at: the origin, single-parameter perturbations, points
/// coming from translated bases (which must lie on the scheme and reproduce
/// the basis) and one dense random point.
pub fn sample_scheme(r: &SchemeResult, rng: &mut impl Rng, translated: usize, singles: usize) -> SamplingReport {
    let n = r.parameters().len();
    let generic = r.generic_set();
    let mut rep = SamplingReport::default();
    let check = |values: Vec<Rational>, label: String, rep: &mut SamplingReport| {
        let on = equations_vanish(r, &values);
        let basis = v_basis(&generic.specialize_values(&values));
        rep.points += 1;
        rep.on_scheme += usize::from(on);
        if on != basis {
            rep.disagreements.push(format!("{label}: equations {on}, criterion {basis}"));
        }
    };
    check(vec![Rational::zero(); n], "origin".into(), &mut rep);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    for &i in idx.iter().take(singles) {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::from_integer(rng.gen_range(1..=2));
        check(v, format!("single {}", r.parameters()[i]), &mut rep);
    }
    for k in 0..translated {
        let g = translated_marked_basis(&r.ideal, &random_unipotent(rng, r.ideal.num_vars())).unwrap();
        let values = generic.coordinates_of(&g.superminimal_subset()).unwrap();
        if !equations_vanish(r, &values) {
            rep.disagreements.push(format!("translated basis {k} violates the equations"));
        }
        if generic.specialize_values(&values).polys() != g.polys() {
            rep.disagreements.push(format!("translated basis {k} is not reproduced by the completion"));
        }
        check(values, format!("translated {k}"), &mut rep);
    }
    check((0..n).map(|_| small_rational(rng)).collect(), "dense".into(), &mut rep);
    rep
}

/// A few random terms of degree `d`.
pub fn random_poly(rng: &mut impl Rng, nvars: usize, d: u32) -> QPoly {
    let mons = monomials_of_degree(nvars, d);
    QPoly::from_terms((0..4).map(|_| (mons[rng.gen_range(0..mons.len())].clone(), small_rational(rng))))
}

pub fn monomials_up_to(nvars: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|k| monomials_of_degree(nvars, k)).collect()
}
