//! Dense exponent-vector monomials in `x0 < x1 < ... < xn`.
//!
//! `Ord` on [`Monomial`] is the pure lexicographic order: `a > b` iff the last
//! nonzero entry of `a - b` is positive. Monomials with different variable
//! counts are ordered by length first so that maps stay well-defined; use
//! [`Monomial::lex_cmp`] when a mismatch should be an error.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exponent = u32;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[Exponent; 6]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars) }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[Exponent]) -> Self {
        Monomial { exps: SmallVec::from_slice(exps) }
    }

    /// `x0^k` in `nvars` variables.
    pub fn x0_pow(nvars: usize, k: Exponent) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[0] = k;
        m
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[Exponent] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> Exponent {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn check_len(&self, other: &Monomial) -> Result<()> {
        if self.num_vars() != other.num_vars() {
            return Err(Error::VarCountMismatch(self.num_vars(), other.num_vars()));
        }
        Ok(())
    }

    pub fn lex_cmp(&self, other: &Monomial) -> Result<Ordering> {
        self.check_len(other)?;
        Ok(lex_raw(&self.exps, &other.exps))
    }

    /// `Some(true)` if `self <=_B other`, `Some(false)` if `other <_B self`,
    /// `None` when incomparable or of different degree.
    pub fn borel_leq(&self, other: &Monomial) -> Result<Option<bool>> {
        self.check_len(other)?;
        if self.degree() != other.degree() {
            return Ok(None);
        }
        let (mut sa, mut sb) = (0u32, 0u32);
        let (mut le, mut ge) = (true, true);
        for i in (0..self.num_vars()).rev() {
            sa += self.exps[i];
            sb += other.exps[i];
            le &= sb >= sa;
            ge &= sa >= sb;
        }
        Ok(match (le, ge) {
            (true, _) => Some(true),
            (false, true) => Some(false),
            _ => None,
        })
    }

    /// `e+_{i,j}(m) = m / xi * xj`.
    pub fn elementary_move_up(&self, i: usize, j: usize) -> Result<Monomial> {
        if i >= j || j >= self.num_vars() || self.exps[i] == 0 {
            return Err(Error::InvalidMove { i, j, monomial: self.to_string() });
        }
        let mut m = self.clone();
        m.exps[i] -= 1;
        m.exps[j] += 1;
        Ok(m)
    }

    pub fn dehomogenize(&self) -> Monomial {
        let mut m = self.clone();
        m.exps[0] = 0;
        m
    }

    pub fn min_var(&self) -> Result<usize> {
        self.exps.iter().position(|&e| e > 0).ok_or(Error::ConstantMonomial)
    }

    pub fn max_var(&self) -> Result<usize> {
        self.exps.iter().rposition(|&e| e > 0).ok_or(Error::ConstantMonomial)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() == other.exps.len() && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.num_vars(), other.num_vars());
        let mut m = self.clone();
        for (a, b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a += b;
        }
        m
    }

    /// `self / other`, or `None` if `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut m = self.clone();
        for (a, b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a -= b;
        }
        Some(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = self.clone();
        for (a, b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).max(*b);
        }
        m
    }

    pub fn mul_var(&self, i: usize, k: Exponent) -> Monomial {
        let mut m = self.clone();
        m.exps[i] += k;
        m
    }

    pub fn with_exponent(&self, i: usize, e: Exponent) -> Monomial {
        let mut m = self.clone();
        m.exps[i] = e;
        m
    }
}

fn lex_raw(a: &[Exponent], b: &[Exponent]) -> Ordering {
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exps.len().cmp(&other.exps.len()).then_with(|| lex_raw(&self.exps, &other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree ascending, then Lex descending.
pub fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| b.cmp(a))
}

/// All monomials of degree `d` in `nvars` variables, Lex descending.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if nvars == 0 {
        return out;
    }
    let mut cur = vec![0; nvars];
    fill(nvars - 1, d, &mut cur, &mut out);
    out
}

fn fill(i: usize, rest: u32, cur: &mut Vec<Exponent>, out: &mut Vec<Monomial>) {
    if i == 0 {
        cur[0] = rest;
        out.push(Monomial::from_exponents(cur));
        return;
    }
    for e in (0..=rest).rev() {
        cur[i] = e;
        fill(i - 1, rest - e, cur, out);
    }
    cur[i] = 0;
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in (0..self.exps.len()).rev() {
            let e = self.exps[i];
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{i}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
