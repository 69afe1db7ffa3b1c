//! Hilbert polynomials and Gotzmann numbers.

use std::fmt;

use crate::borel::StronglyStableIdeal;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Polynomial in `t`, coefficients by ascending power, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertPolynomial {
    coeffs: Vec<Rational>,
}

impl HilbertPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        HilbertPolynomial { coeffs }
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![Rational::from_integer(c)])
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: i64) -> Rational {
        let t = Rational::from_integer(t);
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc.mul_ref(&t).add_ref(c))
    }

    fn sub(&self, other: &HilbertPolynomial) -> HilbertPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[Rational], i: usize| v.get(i).cloned().unwrap_or_else(Rational::zero);
        Self::new((0..n).map(|i| get(&self.coeffs, i).sub_ref(&get(&other.coeffs, i))).collect())
    }

    fn mul_linear(&self, root_shift: &Rational, scale: &Rational) -> HilbertPolynomial {
        // self * (t + root_shift) * scale
        let mut out = vec![Rational::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] = out[i + 1].add_ref(&c.mul_ref(scale));
            out[i] = out[i].add_ref(&c.mul_ref(root_shift).mul_ref(scale));
        }
        Self::new(out)
    }

    /// `binom(t + a - k, a)` as a polynomial in `t`.
    fn shifted_binomial(a: usize, k: i64) -> HilbertPolynomial {
        let mut p = Self::constant(1);
        for i in 1..=a as i64 {
            let inv = Rational::new(1, i).expect("nonzero");
            p = p.mul_linear(&Rational::from_integer(i - k), &inv);
        }
        p
    }

    /// Interpolates through `(x0 + i, values[i])`.
    pub fn interpolate(x0: i64, values: &[i64]) -> HilbertPolynomial {
        // Newton divided differences, then expand.
        let n = values.len();
        let mut dd: Vec<Rational> = values.iter().map(|&v| Rational::from_integer(v)).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let denom = Rational::from_integer(level as i64);
                dd[i] = dd[i].sub_ref(&dd[i - 1]).div_ref(&denom).expect("nonzero");
            }
        }
        let mut acc = Self::new(vec![]);
        let one = Rational::one();
        for i in (0..n).rev() {
            // acc = acc * (t - (x0 + i)) + dd[i]
            let shift = Rational::from_integer(-(x0 + i as i64));
            acc = acc.mul_linear(&shift, &one);
            let mut c = acc.coeffs.clone();
            if c.is_empty() {
                c.push(Rational::zero());
            }
            c[0] = c[0].add_ref(&dd[i]);
            acc = Self::new(c);
        }
        acc
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = if neg { c.neg_ref() } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            if k == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&var)?;
            } else if abs.is_integer() {
                write!(f, "{abs}{var}")?;
            } else {
                write!(f, "({abs}){var}")?;
            }
        }
        Ok(())
    }
}

/// Interpolates from `n + 2` values starting at the regularity and checks one more.
pub fn hilbert_polynomial(j: &StronglyStableIdeal) -> Result<HilbertPolynomial> {
    let start = j.regularity();
    let npts = j.num_vars() + 1;
    let values: Vec<i64> = (0..npts as u32).map(|i| j.hilbert_function(start + i) as i64).collect();
    let p = HilbertPolynomial::interpolate(start as i64, &values);
    let check = start + npts as u32;
    if p.eval(check as i64) != Rational::from_integer(j.hilbert_function(check) as i64) {
        return Err(Error::Internal(format!("Hilbert polynomial of {j} fails at t={check}")));
    }
    Ok(p)
}

/// Number of terms in the Gotzmann representation
/// `p(t) = sum_k binom(t + a_k - k, a_k)`, `a_0 >= a_1 >= ...`.
pub fn gotzmann_number(p: &HilbertPolynomial) -> Result<u64> {
    const CAP: u64 = 10_000_000;
    let mut rest = p.clone();
    let mut k: i64 = 0;
    while !rest.is_zero() {
        let a = rest.degree().expect("nonzero");
        if rest.coeffs[a].is_negative() || k as u64 >= CAP {
            return Err(Error::NotAdmissible(p.to_string()));
        }
        rest = rest.sub(&HilbertPolynomial::shifted_binomial(a, k));
        k += 1;
    }
    Ok(k as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ideal;

    fn hp(s: &str, n: usize) -> HilbertPolynomial {
        hilbert_polynomial(&parse_ideal(s, Some(n)).unwrap()).unwrap()
    }

    #[test]
    fn twisted_cubic_family() {
        let p = hp("x3^2, x3*x2, x2^3", 4);
        assert_eq!(p.to_string(), "4t");
        assert_eq!(gotzmann_number(&p).unwrap(), 6);
        for s in ["x3^2,x3*x2,x3*x1^2,x2^4", "x3^2,x3*x2,x3*x1,x2^5,x2^4*x1", "x3,x2^5,x2^4*x1^2"] {
            assert_eq!(hp(s, 4).to_string(), "4t", "{s}");
        }
    }

    #[test]
    fn points() {
        let p = hp("x2^3, x1*x2^2, x1^2*x2, x1^5", 3);
        assert_eq!(p, HilbertPolynomial::constant(8));
        assert_eq!(gotzmann_number(&p).unwrap(), 8);
        for mu in 1..5 {
            let s = format!("x3, x2, x1^{mu}");
            assert_eq!(hp(&s, 4), HilbertPolynomial::constant(mu));
        }
    }

    #[test]
    fn hf_equals_hp_after_regularity() {
        for s in ["x3^2, x3*x2, x2^3", "x3, x2^5, x2^4*x1^2", "x3^2,x3*x2,x3*x1,x3*x0,x2^2"] {
            let j = parse_ideal(s, Some(4)).unwrap();
            let p = hilbert_polynomial(&j).unwrap();
            for t in j.regularity()..j.regularity() + 10 {
                assert_eq!(p.eval(t as i64), Rational::from_integer(j.hilbert_function(t) as i64));
            }
        }
    }

    #[test]
    fn gotzmann_of_known_polynomials() {
        // plane conic: 2t + 1 = binom(t+1,1) + binom(t,1)
        let conic = HilbertPolynomial::new(vec![Rational::one(), Rational::from_integer(2)]);
        assert_eq!(gotzmann_number(&conic).unwrap(), 2);
        // plane curve of degree d has Gotzmann number d
        let quartic = HilbertPolynomial::new(vec![Rational::from_integer(-2), Rational::from_integer(4)]);
        assert_eq!(gotzmann_number(&quartic).unwrap(), 4);
        let bad = HilbertPolynomial::constant(-1);
        assert!(matches!(gotzmann_number(&bad), Err(Error::NotAdmissible(_))));
        assert_eq!(gotzmann_number(&HilbertPolynomial::new(vec![])).unwrap(), 0);
    }
}
