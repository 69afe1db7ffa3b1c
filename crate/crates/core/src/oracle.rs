//! Brute-force validators: Hilbert-function rank check, Borel order by
//! search, exhaustive `*_J` scans and marked bases from coordinate changes.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use crate::borel::StronglyStableIdeal;
use crate::error::{Error, Result};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::polyparam::{MarkedPoly, MarkedSet, QPoly, SetKind};
use crate::rational::{common_denominator, Rational};

/// Degree-`l` products `x^delta f_alpha` against the degree-`l` monomials.
#[derive(Clone, Debug)]
pub struct RankProblem {
    pub degree: u32,
    pub rows: Vec<QPoly>,
    pub columns: Vec<Monomial>,
}

impl RankProblem {
    pub fn new(g: &MarkedSet<Rational>, degree: u32) -> Self {
        let n = g.ideal().num_vars();
        let rows = g
            .polys()
            .par_iter()
            .filter(|p| p.head.degree() <= degree)
            .flat_map_iter(|p| {
                let f = p.to_poly();
                monomials_of_degree(n, degree - p.head.degree()).into_iter().map(move |d| f.mono_mul(&d))
            })
            .collect();
        RankProblem { degree, rows, columns: monomials_of_degree(n, degree) }
    }

    /// Exact rank, stopping early once it exceeds `cap`.
    pub fn rank_capped(&self, cap: usize) -> usize {
        let col: HashMap<&Monomial, usize> = self.columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut echelon = IntEchelon::default();
        for r in &self.rows {
            let den = common_denominator(r.coefficients());
            let row: BTreeMap<usize, BigInt> =
                r.terms().map(|(m, c)| (col[m], c.numer() * (&den / c.denom()))).collect();
            echelon.insert(row);
            if echelon.rank() > cap {
                break;
            }
        }
        echelon.rank()
    }

    pub fn rank(&self) -> usize {
        self.rank_capped(usize::MAX)
    }
}

/// Integer row echelon form; rows are combined without division and then
/// divided by their content.
#[derive(Default)]
struct IntEchelon {
    pivots: BTreeMap<usize, BTreeMap<usize, BigInt>>,
}

impl IntEchelon {
    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn insert(&mut self, mut row: BTreeMap<usize, BigInt>) {
        loop {
            let Some((&c, lead)) = row.iter().next() else { return };
            let Some(p) = self.pivots.get(&c) else {
                primitive(&mut row);
                self.pivots.insert(c, row);
                return;
            };
            let a = p[&c].clone();
            let b = lead.clone();
            for v in row.values_mut() {
                *v *= &a;
            }
            for (k, v) in p {
                let e = row.entry(*k).or_insert_with(BigInt::zero);
                *e -= &b * v;
                if e.is_zero() {
                    row.remove(k);
                }
            }
            primitive(&mut row);
        }
    }
}

fn primitive(row: &mut BTreeMap<usize, BigInt>) {
    let g = row.values().fold(BigInt::zero(), |g, v| g.gcd(v));
    if !g.is_zero() && g != BigInt::from(1) {
        for v in row.values_mut() {
            *v = &*v / &g;
        }
    }
}

/// Upper end of the default degree window: `reg + n + 1`.
pub fn default_window(j: &StronglyStableIdeal) -> u32 {
    j.regularity() + j.num_vars() as u32
}

/// `dim I_l = |J_l|` for every `l` from the initial degree to `l_max`.
pub fn hilbert_rank_check(g: &MarkedSet<Rational>, l_max: u32) -> bool {
    first_rank_failure(g, l_max).is_none()
}

/// Smallest degree in the window whose rank differs from `|J_l|`.
pub fn first_rank_failure(g: &MarkedSet<Rational>, l_max: u32) -> Option<(u32, usize, u64)> {
    let j = g.ideal();
    (j.initial_degree()..=l_max).find_map(|l| {
        let want = j.ideal_dimension(l);
        let got = RankProblem::new(g, l).rank_capped(want as usize);
        (got as u64 != want).then_some((l, got, want))
    })
}

/// `a <=_B b` by breadth-first search over increasing elementary moves from `a`.
pub fn borel_bfs_leq(a: &Monomial, b: &Monomial) -> bool {
    if a.num_vars() != b.num_vars() || a.degree() != b.degree() {
        return false;
    }
    let n = a.num_vars();
    let mut seen: HashSet<Monomial> = HashSet::from([a.clone()]);
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(x) = queue.pop_front() {
        if x == *b {
            return true;
        }
        for i in 0..n {
            if x.exponent(i) == 0 {
                continue;
            }
            for j in i + 1..n {
                let y = x.mul_var(j, 1).div(&Monomial::var(n, i)).expect("x_i divides");
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    false
}

/// Every monomial of degree `<= d_max` in `J` has exactly one `*_J`
/// decomposition and none outside `J`.
pub fn star_uniqueness_scan(j: &StronglyStableIdeal, d_max: u32) -> bool {
    (0..=d_max).all(|d| {
        monomials_of_degree(j.num_vars(), d).into_iter().all(|g| {
            let count = j
                .basis()
                .iter()
                .filter(|b| match g.div(b) {
                    Some(c) => c.is_one() || b.min_var().expect("nonconstant") >= c.max_var().expect("nonconstant"),
                    None => false,
                })
                .count();
            count == usize::from(j.contains(&g))
        })
    })
}

fn poly_mul(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = QPoly::zero();
    for (m, c) in a.terms() {
        for (k, d) in b.terms() {
            out.add_term(m.mul(k), c.mul_ref(d));
        }
    }
    out
}

/// The marked basis of `u(J)`, where `u` sends `x_i` to
/// `x_i + sum_{j<i} u[i][j] x_j` (entries on or above the diagonal are ignored).
/// Such ideals lie in the marked family of `J` because `u` only adds
/// Borel-smaller terms.
pub fn translated_marked_basis(j: &StronglyStableIdeal, u: &[Vec<Rational>]) -> Result<MarkedSet<Rational>> {
    let n = j.num_vars();
    if u.len() != n {
        return Err(Error::VarCountMismatch(n, u.len()));
    }
    let images: Vec<QPoly> = (0..n)
        .map(|i| {
            let mut p = QPoly::monomial(Monomial::var(n, i), Rational::one());
            for (k, c) in u[i].iter().enumerate().take(i) {
                p.add_term(Monomial::var(n, k), c.clone());
            }
            p
        })
        .collect();
    let image = |g: &Monomial| {
        (0..n).fold(QPoly::monomial(Monomial::one(n), Rational::one()), |acc, i| {
            (0..g.exponent(i)).fold(acc, |acc, _| poly_mul(&acc, &images[i]))
        })
    };
    let mut degrees: Vec<u32> = j.basis().iter().map(Monomial::degree).collect();
    degrees.dedup();
    let mut polys = Vec::new();
    for d in degrees {
        let inside: Vec<Monomial> = monomials_of_degree(n, d).into_iter().filter(|m| j.contains(m)).collect();
        // Gauss-Jordan on the columns of J_d, which form an invertible block.
        let mut rows: Vec<QPoly> = inside.iter().map(image).collect();
        for (k, piv) in inside.iter().enumerate() {
            let r = (k..rows.len())
                .find(|&r| rows[r].coefficient(piv).is_some())
                .ok_or_else(|| Error::Internal(format!("{piv} is not a leading term of the translated ideal")))?;
            rows.swap(k, r);
            let inv = rows[k].coefficient(piv).expect("pivot").recip().expect("nonzero");
            rows[k] = rows[k].scale(&inv);
            for r in 0..rows.len() {
                if r != k {
                    if let Some(c) = rows[r].coefficient(piv).cloned() {
                        rows[r] = rows[r].sub(&rows[k].scale(&c));
                    }
                }
            }
        }
        for (a, row) in inside.iter().zip(rows) {
            if j.basis().contains(a) {
                let mut tail = row.neg();
                tail.remove(&a.clone());
                polys.push(MarkedPoly::new(a.clone(), tail));
            }
        }
    }
    MarkedSet::new(j.clone(), SetKind::Full, polys)
}

/// Human-readable form of [`first_rank_failure`].
pub fn describe_rank_failure(g: &MarkedSet<Rational>, l_max: u32) -> Option<String> {
    first_rank_failure(g, l_max).map(|(l, got, want)| {
        let sign = if got as u64 > want { "exceeds" } else { "falls short of" };
        format!("degree {l}: rank {got} {sign} |J_{l}| = {want}")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_ideal, parse_marked_set};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn rank_examples() {
        let j = parse_ideal("x2, x1^2, x1*x0", Some(3)).unwrap();
        let mono = MarkedSet::<Rational>::monomial_set(j.clone(), SetKind::Full);
        assert!(hilbert_rank_check(&mono, default_window(&j)));
        let a1 = parse_marked_set("x2 = -x1", &j).unwrap();
        assert!(hilbert_rank_check(&a1, default_window(&j)));
        let nb = parse_ideal("x3, x2^2", Some(4)).unwrap().truncate(2);
        let bad = parse_marked_set("x3*x0 = -x1^2", &nb).unwrap();
        let (l, got, want) = first_rank_failure(&bad, default_window(&nb)).unwrap();
        assert_eq!(l, 3);
        assert!(got as u64 > want);
    }

    #[test]
    fn bfs_matches_closed_form() {
        for n in 1..4 {
            for d in 0..5 {
                let ms = monomials_of_degree(n, d);
                for a in &ms {
                    for b in &ms {
                        assert_eq!(borel_bfs_leq(a, b), a.borel_leq(b).unwrap() == Some(true), "{a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn star_scans() {
        for s in ["x3^2, x3*x2, x2^3", "x3^2, x3*x2, x3*x1^2, x2^4", "x3, x2^5, x2^4*x1^2"] {
            let j = parse_ideal(s, Some(4)).unwrap();
            assert!(star_uniqueness_scan(&j, j.regularity() + 2), "{s}");
            assert!(star_uniqueness_scan(&j.truncate(j.regularity()), j.regularity() + 1));
        }
    }

    #[test]
    fn translated_bases_pass() {
        let j = parse_ideal("x3, x2^2", Some(4)).unwrap().truncate(2);
        let u = vec![vec![], vec![q(2)], vec![q(-1), q(3)], vec![q(1), q(0), q(5)]];
        let g = translated_marked_basis(&j, &u).unwrap();
        assert!(g.polys().iter().any(|p| !p.tail.is_zero()));
        assert!(hilbert_rank_check(&g, default_window(&j)));
    }
}
