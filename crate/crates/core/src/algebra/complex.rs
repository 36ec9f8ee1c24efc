//! Arbitrary-precision complex numbers on top of `astro_float::BigFloat`.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::ops::{Add, Mul, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_traits::Zero;

use super::rational::Rational;
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION_BITS: usize = 256;
pub const MIN_PRECISION_BITS: usize = 64;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("allocate constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Rejects precisions below [`MIN_PRECISION_BITS`].
pub fn check_precision(bits: usize) -> Result<usize> {
    if bits < MIN_PRECISION_BITS {
        Err(Error::Precision(format!("precision_bits must be at least {MIN_PRECISION_BITS}, got {bits}")))
    } else {
        Ok(bits)
    }
}

pub fn real_from_f64(x: f64, p: usize) -> BigFloat {
    BigFloat::from_f64(x, p)
}

pub fn real_from_rational(r: &Rational, p: usize) -> BigFloat {
    with_consts(|cc| {
        let n = BigFloat::parse(&r.numer().to_string(), Radix::Dec, p + 64, RM, cc);
        let d = BigFloat::parse(&r.denom().to_string(), Radix::Dec, p + 64, RM, cc);
        n.div(&d, p, RM)
    })
}

pub fn real_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    x.to_string().parse().unwrap_or(f64::NAN)
}

pub fn real_pi(p: usize) -> BigFloat {
    with_consts(|cc| cc.pi(p, RM))
}

pub fn real_sqrt(x: &BigFloat, p: usize) -> BigFloat {
    if x.is_zero() {
        BigFloat::from_u8(0, p)
    } else {
        x.sqrt(p, RM)
    }
}

/// `2^k` at `p` bits.
pub fn real_pow2(k: i32, p: usize) -> BigFloat {
    let mut x = BigFloat::from_u8(1, p);
    x.set_exponent(k + 1);
    x
}

pub fn real_abs(x: &BigFloat) -> BigFloat {
    if x.is_negative() {
        x.neg()
    } else {
        x.clone()
    }
}

pub fn real_cmp(x: &BigFloat, y: &BigFloat) -> Ordering {
    match x.cmp(y) {
        Some(c) if c < 0 => Ordering::Less,
        Some(0) => Ordering::Equal,
        _ => Ordering::Greater,
    }
}

/// A complex number `re + i*im` carried at a fixed binary precision.
///
/// Binary operations run at the larger of the two operand precisions, so a
/// result never has fewer bits than its most precise input.
#[derive(Clone, Debug)]
pub struct ComplexApprox {
    re: BigFloat,
    im: BigFloat,
    precision_bits: usize,
}

impl ComplexApprox {
    pub fn from_parts(re: BigFloat, im: BigFloat, precision_bits: usize) -> Self {
        let p = precision_bits.max(MIN_PRECISION_BITS);
        ComplexApprox { re, im, precision_bits: p }
    }

    pub fn zero(p: usize) -> Self {
        Self::from_f64(0.0, 0.0, p)
    }

    pub fn one(p: usize) -> Self {
        Self::from_f64(1.0, 0.0, p)
    }

    pub fn i(p: usize) -> Self {
        Self::from_f64(0.0, 1.0, p)
    }

    pub fn from_f64(re: f64, im: f64, p: usize) -> Self {
        let p = p.max(MIN_PRECISION_BITS);
        Self::from_parts(real_from_f64(re, p), real_from_f64(im, p), p)
    }

    pub fn from_rational(r: &Rational, p: usize) -> Self {
        Self::from_rationals(r, &Rational::zero(), p)
    }

    pub fn from_rationals(re: &Rational, im: &Rational, p: usize) -> Self {
        let p = p.max(MIN_PRECISION_BITS);
        Self::from_parts(real_from_rational(re, p), real_from_rational(im, p), p)
    }

    pub fn from_real(re: BigFloat, p: usize) -> Self {
        let p = p.max(MIN_PRECISION_BITS);
        Self::from_parts(re, BigFloat::from_u8(0, p), p)
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    pub fn precision_bits(&self) -> usize {
        self.precision_bits
    }

    /// Same value, rounded (or extended) to `p` bits.
    pub fn with_precision(&self, p: usize) -> Self {
        let p = p.max(MIN_PRECISION_BITS);
        let mut re = self.re.clone();
        let mut im = self.im.clone();
        // set_precision only fails on allocation errors or a zero precision
        let _ = re.set_precision(p, RM);
        let _ = im.set_precision(p, RM);
        Self::from_parts(re, im, p)
    }

    pub fn re_f64(&self) -> f64 {
        real_to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        real_to_f64(&self.im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !(self.re.is_nan() || self.im.is_nan() || self.re.is_inf() || self.im.is_inf())
    }

    fn prec(&self, other: &Self) -> usize {
        self.precision_bits.max(other.precision_bits)
    }

    pub fn conj(&self) -> Self {
        Self::from_parts(self.re.clone(), self.im.neg(), self.precision_bits)
    }

    pub fn mul_i(&self) -> Self {
        Self::from_parts(self.im.neg(), self.re.clone(), self.precision_bits)
    }

    pub fn scale(&self, s: &BigFloat) -> Self {
        let p = self.precision_bits;
        Self::from_parts(self.re.mul(s, p, RM), self.im.mul(s, p, RM), p)
    }

    pub fn scale_rational(&self, s: &Rational) -> Self {
        self.scale(&real_from_rational(s, self.precision_bits))
    }

    pub fn norm_sqr(&self) -> BigFloat {
        let p = self.precision_bits;
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs(&self) -> BigFloat {
        real_sqrt(&self.norm_sqr(), self.precision_bits)
    }

    pub fn abs_f64(&self) -> f64 {
        real_to_f64(&self.abs())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.prec(other);
        let den = other.norm_sqr();
        let num = self * &other.conj();
        Ok(Self::from_parts(num.re.div(&den, p, RM), num.im.div(&den, p, RM), p))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one(self.precision_bits).checked_div(self)
    }

    /// Principal square root: nonnegative real part, ties broken towards a
    /// nonnegative imaginary part.
    pub fn sqrt(&self) -> Self {
        let p = self.precision_bits;
        if self.is_zero() {
            return Self::zero(p);
        }
        let two = BigFloat::from_u8(2, p);
        let r = self.abs();
        if !self.re.is_negative() {
            let s = real_sqrt(&r.add(&self.re, p, RM).div(&two, p, RM), p);
            let t = self.im.div(&s.mul(&two, p, RM), p, RM);
            Self::from_parts(s, t, p)
        } else {
            let mut t = real_sqrt(&r.sub(&self.re, p, RM).div(&two, p, RM), p);
            if self.im.is_negative() {
                t = t.neg();
            }
            let s = self.im.div(&t.mul(&two, p, RM), p, RM);
            Self::from_parts(s, t, p)
        }
    }

    pub fn exp(&self) -> Self {
        let p = self.precision_bits;
        with_consts(|cc| {
            let m = self.re.exp(p, RM, cc);
            let c = self.im.cos(p, RM, cc);
            let s = self.im.sin(p, RM, cc);
            Self::from_parts(m.mul(&c, p, RM), m.mul(&s, p, RM), p)
        })
    }

    pub fn pi(p: usize) -> Self {
        let p = p.max(MIN_PRECISION_BITS);
        Self::from_real(real_pi(p), p)
    }

    pub fn pow_u(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.precision_bits), |acc, _| &acc * self)
    }

    /// Decimal renderings of the real and imaginary parts.
    pub fn to_decimal_strings(&self) -> (String, String) {
        (self.re.to_string(), self.im.to_string())
    }

    /// `|self| <= 2^k`, decided at full precision.
    pub fn abs_le_pow2(&self, k: i32) -> bool {
        real_cmp(&self.abs(), &real_pow2(k, self.precision_bits)) != Ordering::Greater
    }

    /// `|self - other| <= tol`.
    pub fn close_to(&self, other: &Self, tol: f64) -> bool {
        (self - other).abs_f64() <= tol
    }
}

impl Add for &ComplexApprox {
    type Output = ComplexApprox;
    fn add(self, rhs: &ComplexApprox) -> ComplexApprox {
        let p = self.prec(rhs);
        ComplexApprox::from_parts(self.re.add(&rhs.re, p, RM), self.im.add(&rhs.im, p, RM), p)
    }
}

impl Sub for &ComplexApprox {
    type Output = ComplexApprox;
    fn sub(self, rhs: &ComplexApprox) -> ComplexApprox {
        let p = self.prec(rhs);
        ComplexApprox::from_parts(self.re.sub(&rhs.re, p, RM), self.im.sub(&rhs.im, p, RM), p)
    }
}

impl Mul for &ComplexApprox {
    type Output = ComplexApprox;
    fn mul(self, rhs: &ComplexApprox) -> ComplexApprox {
        let p = self.prec(rhs);
        let re = self.re.mul(&rhs.re, p, RM).sub(&self.im.mul(&rhs.im, p, RM), p, RM);
        let im = self.re.mul(&rhs.im, p, RM).add(&self.im.mul(&rhs.re, p, RM), p, RM);
        ComplexApprox::from_parts(re, im, p)
    }
}

impl std::ops::Neg for &ComplexApprox {
    type Output = ComplexApprox;
    fn neg(self) -> ComplexApprox {
        ComplexApprox::from_parts(BigFloat::neg(&self.re), BigFloat::neg(&self.im), self.precision_bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;

    #[test]
    fn precision_is_never_downgraded() {
        let a = ComplexApprox::from_f64(1.5, 0.0, 64);
        let b = ComplexApprox::from_f64(2.0, 1.0, 512);
        assert_eq!((&a + &b).precision_bits(), 512);
        assert_eq!((&a * &b).precision_bits(), 512);
        assert_eq!(a.checked_div(&b).unwrap().precision_bits(), 512);
        assert_eq!(ComplexApprox::zero(10).precision_bits(), 64);
        assert!(check_precision(63).is_err());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let a = ComplexApprox::one(128);
        assert_eq!(a.checked_div(&ComplexApprox::zero(128)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn sqrt_branch() {
        let p = 128;
        let m1 = ComplexApprox::from_f64(-1.0, 0.0, p);
        let s = m1.sqrt();
        assert!(s.close_to(&ComplexApprox::i(p), 1e-30));
        let z = ComplexApprox::from_f64(-3.0, -4.0, p);
        let s = z.sqrt();
        assert!(s.close_to(&ComplexApprox::from_f64(1.0, -2.0, p), 1e-30));
        assert!((&s * &s).close_to(&z, 1e-30));
    }

    #[test]
    fn exp_of_i_pi() {
        let p = 256;
        let z = ComplexApprox::pi(p).mul_i().exp();
        assert!(z.close_to(&ComplexApprox::from_f64(-1.0, 0.0, p), 1e-70));
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(real_to_f64(&real_pow2(0, 128)), 1.0);
        assert_eq!(real_to_f64(&real_pow2(-3, 128)), 0.125);
        let tiny = ComplexApprox::from_real(real_pow2(-600, 1024), 1024);
        assert!(tiny.abs_le_pow2(-600));
        assert!(!tiny.abs_le_pow2(-601));
    }

    #[test]
    fn rational_embedding() {
        let r = ratio(-22, 7);
        let z = ComplexApprox::from_rational(&r, 128);
        assert!((z.re_f64() + 22.0 / 7.0).abs() < 1e-15);
        assert_eq!(z.im_f64(), 0.0);
    }
}
