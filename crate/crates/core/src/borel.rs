//! Strongly stable monomial ideals and their combinatorics.

use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::{canonical_cmp, monomials_of_degree, Monomial};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StronglyStableIdeal {
    nvars: usize,
    basis: Vec<Monomial>,
    regularity: u32,
    satiety: u32,
    initial_degree: u32,
}

/// `g = generator * cofactor` with `min(generator) >= max(cofactor)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarDecomposition {
    pub generator: Monomial,
    pub cofactor: Monomial,
}

impl StronglyStableIdeal {
    /// Minimalizes and sorts; strong stability is not checked here.
    pub fn from_generators(gens: &[Monomial], nvars: usize) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if let Some(g) = gens.iter().find(|g| g.num_vars() != nvars) {
            return Err(Error::VarCountMismatch(g.num_vars(), nvars));
        }
        let mut sorted: Vec<Monomial> = gens.to_vec();
        sorted.sort_by(canonical_cmp);
        sorted.dedup();
        let mut basis: Vec<Monomial> = Vec::new();
        // degree ascending, so a divisor always comes first
        for g in sorted {
            if !basis.iter().any(|b| b.divides(&g)) {
                basis.push(g);
            }
        }
        Ok(Self::from_minimal(basis, nvars))
    }

    fn from_minimal(basis: Vec<Monomial>, nvars: usize) -> Self {
        let regularity = basis.iter().map(Monomial::degree).max().unwrap_or(0);
        let initial_degree = basis.iter().map(Monomial::degree).min().unwrap_or(0);
        let satiety = basis.iter().filter(|b| b.exponent(0) > 0).map(Monomial::degree).max().unwrap_or(0);
        StronglyStableIdeal { nvars, basis, regularity, satiety, initial_degree }
    }

    /// Like [`from_generators`](Self::from_generators) but rejects ideals that
    /// are not strongly stable.
    pub fn new_strongly_stable(gens: &[Monomial], nvars: usize) -> Result<Self> {
        let j = Self::from_generators(gens, nvars)?;
        if let Some((monomial, i, jj)) = j.strong_stability_violation() {
            return Err(Error::NotStronglyStable { monomial: monomial.to_string(), i, j: jj });
        }
        Ok(j)
    }

    pub fn num_vars(&self) -> usize {
        self.nvars
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn regularity(&self) -> u32 {
        self.regularity
    }

    /// Zero when no generator is divisible by `x0`.
    pub fn satiety(&self) -> u32 {
        self.satiety
    }

    pub fn initial_degree(&self) -> u32 {
        self.initial_degree
    }

    pub fn is_saturated(&self) -> bool {
        self.basis.iter().all(|b| b.exponent(0) == 0)
    }

    pub fn strong_stability_violation(&self) -> Option<(Monomial, usize, usize)> {
        for g in &self.basis {
            for i in 0..self.nvars {
                if g.exponent(i) == 0 {
                    continue;
                }
                for j in i + 1..self.nvars {
                    let moved = g.elementary_move_up(i, j).expect("valid move");
                    if !self.contains(&moved) {
                        return Some((g.clone(), i, j));
                    }
                }
            }
        }
        None
    }

    pub fn is_strongly_stable(&self) -> bool {
        self.strong_stability_violation().is_none()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.basis.iter().any(|b| b.divides(m))
    }

    pub fn saturation(&self) -> StronglyStableIdeal {
        let gens: Vec<Monomial> = self.basis.iter().map(Monomial::dehomogenize).collect();
        Self::from_generators(&gens, self.nvars).expect("nonempty basis")
    }

    /// Minimal basis of `self_{>= m}`.
    pub fn truncate(&self, m: u32) -> StronglyStableIdeal {
        if m <= self.initial_degree {
            return self.clone();
        }
        let mut basis: Vec<Monomial> =
            monomials_of_degree(self.nvars, m).into_iter().filter(|x| self.contains(x)).collect();
        basis.extend(self.basis.iter().filter(|b| b.degree() > m).cloned());
        basis.sort_by(canonical_cmp);
        Self::from_minimal(basis, self.nvars)
    }

    pub fn is_m_truncation(&self) -> Option<u32> {
        let m = self.initial_degree;
        (self.saturation().truncate(m) == *self).then_some(m)
    }

    /// `sB_J`: generators whose dehomogenization is a generator of the saturation.
    pub fn superminimal_generators(&self) -> Vec<Monomial> {
        let sat = self.saturation();
        self.basis.iter().filter(|b| sat.basis.contains(&b.dehomogenize())).cloned().collect()
    }

    /// Degree-`d` monomials outside the ideal, Lex descending.
    pub fn complement(&self, d: u32) -> Vec<Monomial> {
        monomials_of_degree(self.nvars, d).into_iter().filter(|x| !self.contains(x)).collect()
    }

    pub fn star_decompose(&self, g: &Monomial) -> Result<StarDecomposition> {
        let mut found: Option<StarDecomposition> = None;
        for b in &self.basis {
            let Some(cofactor) = g.div(b) else { continue };
            let ok = cofactor.is_one() || b.min_var().expect("nonconstant") >= cofactor.max_var().expect("nonconstant");
            if ok {
                let d = StarDecomposition { generator: b.clone(), cofactor };
                if !cfg!(debug_assertions) {
                    return Ok(d);
                }
                assert!(found.is_none(), "star decomposition of {g} is not unique");
                found = Some(d);
            }
        }
        found.ok_or_else(|| Error::NotInIdeal(g.to_string()))
    }

    /// Largest degree of a generator divisible by `x1`.
    pub fn rho(&self) -> Option<u32> {
        self.basis.iter().filter(|b| b.exponent(1) > 0).map(Monomial::degree).max()
    }

    /// `|J_t|` via the Eliahou-Kervaire count.
    pub fn ideal_dimension(&self, t: u32) -> u64 {
        self.basis
            .iter()
            .filter(|b| b.degree() <= t)
            .map(|b| {
                let k = b.min_var().map(|v| v as u64).unwrap_or(0);
                binomial((t - b.degree()) as u64 + k, k)
            })
            .sum()
    }

    pub fn hilbert_function(&self, t: u32) -> u64 {
        binomial(t as u64 + self.nvars as u64 - 1, self.nvars as u64 - 1) - self.ideal_dimension(t)
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

impl fmt::Display for StronglyStableIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for StronglyStableIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_ideal, parse_monomial};

    fn ideal(s: &str, n: usize) -> StronglyStableIdeal {
        parse_ideal(s, Some(n)).unwrap()
    }

    fn m(s: &str, n: usize) -> Monomial {
        parse_monomial(s, Some(n)).unwrap()
    }

    fn list(s: &str, n: usize) -> Vec<Monomial> {
        s.split(',').map(|x| m(x.trim(), n)).collect()
    }

    #[test]
    fn minimalization() {
        assert_eq!(ideal("x3, x3^2, x2^2", 4).basis(), list("x3, x2^2", 4));
        assert_eq!(ideal("x2, x1^2, x1", 3).basis(), list("x2, x1", 3));
        assert_eq!(ideal("x2^2, x2*x1, x1^2", 3).basis(), list("x2^2, x2*x1, x1^2", 3));
        assert!(matches!(StronglyStableIdeal::from_generators(&[], 3), Err(Error::EmptyGenerators)));
    }

    #[test]
    fn strong_stability() {
        assert!(ideal("x2^3, x1*x2^2, x1^2*x2, x1^5", 3).is_strongly_stable());
        let bad = ideal("x1", 3);
        assert_eq!(bad.strong_stability_violation(), Some((m("x1", 3), 1, 2)));
        assert!(ideal("x3^2, x3*x2, x3*x1, x3*x0, x2^2", 4).is_strongly_stable());
    }

    #[test]
    fn membership() {
        let j = ideal("x2, x1^2", 3);
        assert!(j.contains(&m("x2*x1^2", 3)));
        assert!(!j.contains(&m("x0*x1", 3)));
        assert!(ideal("x3, x2^2", 4).contains(&m("x2^2*x3*x0", 4)));
    }

    #[test]
    fn saturation_examples() {
        let j = ideal("x2^3,x2^2*x1,x2*x1^2,x2^2*x0,x2*x1*x0,x1^4,x1^3*x0,x1^2*x0^2", 3);
        assert_eq!(j.saturation(), ideal("x2^2, x2*x1, x1^2", 3));
        let j = ideal("x3^2,x3*x2,x3*x1,x3*x0,x2^2", 4);
        assert_eq!(j.saturation(), ideal("x3, x2^2", 4));
        let s = ideal("x3^2, x3*x2, x2^3", 4);
        assert_eq!(s.saturation(), s);
    }

    #[test]
    fn truncation_examples() {
        let s = ideal("x3, x2^2", 4);
        assert_eq!(s.truncate(2), ideal("x3^2, x3*x2, x3*x1, x3*x0, x2^2", 4));
        assert_eq!(ideal("x2, x1^2", 3).truncate(2), ideal("x1^2, x0*x2, x1*x2, x2^2", 3));
        assert_eq!(s.truncate(0), s);
        assert_eq!(s.truncate(2).is_m_truncation(), Some(2));
        assert_eq!(s.is_m_truncation(), Some(1));
        // (x3^2,x3x2,x3x1)_{>=4} + (x2^2)_{>=6}
        let a = ideal("x3^2, x3*x2, x3*x1", 4).truncate(4);
        let b = ideal("x2^2", 4).truncate(6);
        let gens: Vec<Monomial> = a.basis().iter().chain(b.basis()).cloned().collect();
        let j = StronglyStableIdeal::from_generators(&gens, 4).unwrap();
        assert!(j.is_strongly_stable());
        assert_eq!(j.is_m_truncation(), None);
    }

    #[test]
    fn truncate_then_saturate() {
        for s in ["x3^2, x3*x2, x2^3", "x3, x2^5, x2^4*x1^2", "x3^2,x3*x2,x3*x1,x2^5,x2^4*x1"] {
            let j = ideal(s, 4);
            for mm in 0..8 {
                assert_eq!(j.truncate(mm).saturation(), j);
            }
        }
    }

    #[test]
    fn superminimal_examples() {
        let j = ideal("x2^3, x2^2*x1, x2*x1^2, x1^6", 3).truncate(5);
        assert_eq!(j.superminimal_generators(), list("x2^3*x0^2, x2^2*x1*x0^2, x2*x1^2*x0^2, x1^6", 3));
        let j = ideal("x2^2, x2*x1^2, x2*x1*x0, x2*x0^2", 3);
        assert_eq!(j.superminimal_generators(), list("x2*x0^2", 3));
        let s = ideal("x3^2, x3*x2, x2^3", 4);
        assert_eq!(s.superminimal_generators(), s.basis());
    }

    #[test]
    fn complement_examples() {
        let j = ideal("x3^2, x3*x2, x3*x1, x3*x0, x2^2", 4);
        assert_eq!(j.complement(2), list("x2*x1, x2*x0, x1^2, x1*x0, x0^2", 4));
        assert_eq!(ideal("x2, x1^2", 3).complement(2), list("x1*x0, x0^2", 3));
        assert_eq!(ideal("x2^3", 4).complement(2).len(), 10);
    }

    #[test]
    fn star_examples() {
        let d = ideal("x2, x1^2", 3).star_decompose(&m("x2*x1^2", 3)).unwrap();
        assert_eq!((d.generator, d.cofactor), (m("x2", 3), m("x1^2", 3)));
        let d = ideal("x1^2, x0*x2, x1*x2, x2^2", 3).star_decompose(&m("x2*x1^2", 3)).unwrap();
        assert_eq!((d.generator, d.cofactor), (m("x2*x1", 3), m("x1", 3)));
        let d = ideal("x3^2, x2*x3, x1*x3, x2^2", 4).star_decompose(&m("x0^4*x2^4", 4)).unwrap();
        assert_eq!((d.generator, d.cofactor), (m("x2^2", 4), m("x0^4*x2^2", 4)));
        assert!(matches!(ideal("x2", 3).star_decompose(&m("x1", 3)), Err(Error::NotInIdeal(_))));
    }

    #[test]
    fn numeric_invariants() {
        assert_eq!(ideal("x3^2,x3*x2,x3*x1^2,x2^4", 4).regularity(), 4);
        assert_eq!(ideal("x3,x2^5,x2^4*x1^2", 4).regularity(), 6);
        let j = ideal("x3^2,x3*x2,x3*x1,x3*x0,x2^2", 4);
        assert_eq!((j.satiety(), j.initial_degree()), (2, 2));
        assert_eq!(ideal("x3, x2^2", 4).satiety(), 0);
        assert_eq!(ideal("x3^2,x3*x2,x3*x1^2,x2^4", 4).rho(), Some(3));
        assert_eq!(ideal("x3^2,x3*x2,x3*x1,x2^5,x2^4*x1", 4).rho(), Some(5));
        assert_eq!(ideal("x3^2,x3*x2,x2^3", 4).rho(), None);
    }

    #[test]
    fn ideal_dimension_matches_enumeration() {
        for s in ["x3^2, x3*x2, x2^3", "x3, x2^5, x2^4*x1^2", "x3^2,x3*x2,x3*x1,x3*x0,x2^2"] {
            let j = ideal(s, 4);
            for t in 0..9 {
                let count = monomials_of_degree(4, t).iter().filter(|x| j.contains(x)).count();
                assert_eq!(j.ideal_dimension(t), count as u64, "{s} t={t}");
            }
        }
    }
}
