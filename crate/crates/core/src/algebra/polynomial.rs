//! Dense univariate polynomials over the rationals.
//!
//! Every polynomial handled by the crate has degree at most 16, so a dense
//! coefficient vector (index = degree) is all we need.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{format_rational, parse_rational, rat, Rational};
use crate::error::{Error, Result};

/// A polynomial with rational coefficients, lowest degree first.
///
/// The coefficient vector never has a trailing zero; the zero polynomial is
/// the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// `x - r`.
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Polynomial>) -> Self {
        factors.into_iter().fold(Self::one(), |acc, f| &acc * f)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * rat(i as i64)).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    /// `f(x) -> f(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() }).collect(),
        )
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dd = divisor.degree().ok_or_else(|| Error::Degree("division by the zero polynomial".into()))?;
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Resultant computed by the Euclidean remainder sequence.
    pub fn resultant(&self, other: &Polynomial) -> Result<Rational> {
        let (Some(_), Some(_)) = (self.degree(), other.degree()) else {
            return Err(Error::Degree("resultant of the zero polynomial".into()));
        };
        let mut f = self.clone();
        let mut g = other.clone();
        let mut acc = Rational::one();
        loop {
            let df = f.degree().unwrap();
            let dg = g.degree().unwrap();
            if dg == 0 {
                return Ok(acc * pow_rat(&g.coeffs[0], df));
            }
            let r = f.div_rem(&g)?.1;
            let Some(dr) = r.degree() else {
                return Ok(Rational::zero());
            };
            if (df * dg) % 2 == 1 {
                acc = -acc;
            }
            acc *= pow_rat(&g.coeffs[dg], df - dr);
            f = g;
            g = r;
        }
    }

    /// `(-1)^(n(n-1)/2) res(f, f') / lc(f)`; zero exactly when `f` has a
    /// repeated root.
    pub fn discriminant(&self) -> Result<Rational> {
        let n = match self.degree() {
            None => return Err(Error::Degree("discriminant of the zero polynomial".into())),
            Some(0) => return Err(Error::Degree("discriminant of a constant".into())),
            Some(n) => n,
        };
        if n == 1 {
            return Ok(Rational::one());
        }
        let res = self.resultant(&self.derivative())?;
        let lc = self.leading_coefficient().unwrap();
        let sign = if (n * (n - 1) / 2) % 2 == 1 { -1 } else { 1 };
        Ok(res * rat(sign) / lc)
    }

    /// True iff `gcd(f, f')` is constant.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::Degree("squarefree test of the zero polynomial".into()));
        }
        Ok(self.gcd(&self.derivative()).degree() == Some(0))
    }

    /// Returns `(g, k)` with `g(x) = den(x)^k * f(num(x)/den(x))` and `k = deg f`.
    pub fn substitute_rational_map(&self, num: &Polynomial, den: &Polynomial) -> Result<(Polynomial, usize)> {
        let k = self.degree().unwrap_or(0);
        Ok((self.substitute_rational_map_with_exponent(num, den, k)?, k))
    }

    /// Same as [`Self::substitute_rational_map`] with an explicit clearing
    /// exponent `k >= deg f`.
    pub fn substitute_rational_map_with_exponent(
        &self,
        num: &Polynomial,
        den: &Polynomial,
        k: usize,
    ) -> Result<Polynomial> {
        if den.is_zero() {
            return Err(Error::Degree("substitution with zero denominator".into()));
        }
        let deg = self.degree().unwrap_or(0);
        if k < deg {
            return Err(Error::Degree(format!("clearing exponent {k} below degree {deg}")));
        }
        let mut out = Polynomial::zero();
        let mut num_pow = Polynomial::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let term = &(&num_pow * &den.pow(k - i)) * &Polynomial::constant(c.clone());
                out = &out + &term;
            }
            num_pow = &num_pow * num;
        }
        Ok(out)
    }

    /// Comma-separated coefficient list, lowest degree first.
    pub fn to_coefficient_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs.iter().map(format_rational).collect::<Vec<_>>().join(",")
    }

    pub fn coefficient_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn parse(s: &str) -> Result<Polynomial> {
        let coeffs = s.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::new(coeffs))
    }
}

fn pow_rat(r: &Rational, n: usize) -> Rational {
    (0..n).fold(Rational::one(), |acc, _| acc * r)
}

impl fmt::Display for Polynomial {
    /// Human-readable, highest degree first, e.g. `x^4 - 3*x^2 + 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coef = format_rational(&abs);
            match (i, abs.is_one()) {
                (0, _) => write!(f, "{coef}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{coef}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{coef}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    /// Sylvester-matrix determinant by fraction-exact Gaussian elimination,
    /// independent of the remainder-sequence resultant.
    fn sylvester_resultant(f: &Polynomial, g: &Polynomial) -> Rational {
        let m = f.degree().unwrap();
        let n = g.degree().unwrap();
        let size = m + n;
        let mut mat = vec![vec![Rational::zero(); size]; size];
        for row in 0..n {
            for (j, c) in f.coeffs().iter().rev().enumerate() {
                mat[row][row + j] = c.clone();
            }
        }
        for row in 0..m {
            for (j, c) in g.coeffs().iter().rev().enumerate() {
                mat[n + row][row + j] = c.clone();
            }
        }
        let mut det = Rational::one();
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
                return Rational::zero();
            };
            if piv != col {
                mat.swap(piv, col);
                det = -det;
            }
            det *= &mat[col][col];
            for r in col + 1..size {
                let factor = &mat[r][col] / &mat[col][col];
                for c in col..size {
                    let v = &factor * &mat[col][c];
                    mat[r][c] -= v;
                }
            }
        }
        det
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(p(&[-1, 0, 1]).discriminant().unwrap(), rat(4));
        assert_eq!(p(&[0, 0, 1]).discriminant().unwrap(), rat(0));
        assert!(matches!(p(&[3]).discriminant(), Err(Error::Degree(_))));
        assert!(matches!(Polynomial::zero().discriminant(), Err(Error::Degree(_))));
        // b^2 - 4ac for a generic quadratic
        assert_eq!(p(&[5, 3, 2]).discriminant().unwrap(), rat(9 - 40));
        // cubic x^3 + px + q: -4p^3 - 27q^2
        assert_eq!(p(&[1, 1, 0, 1]).discriminant().unwrap(), rat(-4 - 27));
    }

    #[test]
    fn discriminant_of_family_octic_matches_gcd_oracle() {
        let f = &p(&[1, 0, 0, 0, 1]) * &p(&[1, 0, 1, 0, 1]);
        let disc = f.discriminant().unwrap();
        assert!(!disc.is_zero());
        assert_eq!(f.gcd(&f.derivative()), Polynomial::one());
        // both routes to the resultant agree
        assert_eq!(f.resultant(&f.derivative()).unwrap(), sylvester_resultant(&f, &f.derivative()));
        // monic of degree 8, so the sign is +1 and disc = res(f, f')
        assert_eq!(disc, sylvester_resultant(&f, &f.derivative()));
        assert_eq!(disc, rat(36864));
    }

    #[test]
    fn squarefree_examples() {
        assert!(p(&[-1, 0, 0, 0, 1]).is_squarefree().unwrap());
        let sq = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[2, 1]);
        assert!(!sq.is_squarefree().unwrap());
        let f = &p(&[1, 0, 0, 0, 1]) * &p(&[1, 0, 1, 0, 1]);
        assert!(f.is_squarefree().unwrap());
        assert!(Polynomial::zero().is_squarefree().is_err());
    }

    #[test]
    fn substitution_examples() {
        let f = p(&[-4, 0, 1]);
        let (g, k) = f.substitute_rational_map(&p(&[1, 0, 1]), &p(&[0, 1])).unwrap();
        assert_eq!((g, k), (p(&[1, 0, -2, 0, 1]), 2));

        let (g, k) = p(&[0, 1]).substitute_rational_map(&p(&[0, 0, 1]), &p(&[1])).unwrap();
        assert_eq!((g, k), (p(&[0, 0, 1]), 1));

        assert!(f.substitute_rational_map(&p(&[1]), &Polynomial::zero()).is_err());
    }

    #[test]
    fn substitution_recovers_family_octic() {
        // (u^2 + a - 2)(u^2 + b - 2) at u = x + 1/x, cleared by x^4
        for (a, b) in [(0, 1), (3, 5), (-7, 11)] {
            let f = &p(&[a - 2, 0, 1]) * &p(&[b - 2, 0, 1]);
            let (g, k) = f.substitute_rational_map(&p(&[1, 0, 1]), &p(&[0, 1])).unwrap();
            assert_eq!(k, 4);
            let expect = &p(&[1, 0, a, 0, 1]) * &p(&[1, 0, b, 0, 1]);
            assert_eq!(g, expect);
        }
    }

    #[test]
    fn division_and_gcd() {
        let f = &p(&[-1, 1]) * &p(&[2, 0, 1]);
        let (q, r) = f.div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[2, 0, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&p(&[-2, 2])), p(&[-1, 1]));
        assert!(f.div_rem(&Polynomial::zero()).is_err());
    }

    #[test]
    fn text_format() {
        let f = Polynomial::parse("1/2,0,-3").unwrap();
        assert_eq!(f.coeffs(), &[ratio(1, 2), rat(0), rat(-3)]);
        assert_eq!(f.to_coefficient_string(), "1/2,0,-3");
        assert_eq!(f.to_string(), "-3*x^2 + 1/2");
        assert_eq!(p(&[2, -3, 0, 0, 1]).to_string(), "x^4 - 3*x + 2");
        assert!(Polynomial::parse("1,,2").is_err());
    }
}
