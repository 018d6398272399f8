//! Gaussian rationals `a + b·i` with `a, b ∈ ℚ`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den`; panics when `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re.is_one()
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Self::real(self.re.recip()));
        }
        let n = self.norm_sqr();
        Some(GaussianRational {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    /// Sign convention used by the printer: a value is "negative" when its real
    /// part is negative, or it is purely imaginary with negative imaginary part.
    pub fn is_negative(&self) -> bool {
        if self.re.is_zero() {
            self.im.is_negative()
        } else {
            self.re.is_negative()
        }
    }

    /// Exact `k`-th power.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

/// Exact `q`-th root of a rational, if one exists. Negative inputs only have a
/// rational root for odd `q`.
pub fn rational_root(r: &BigRational, q: u32) -> Option<BigRational> {
    if q == 0 {
        return None;
    }
    if q == 1 || r.is_zero() {
        return Some(r.clone());
    }
    let neg = r.is_negative();
    if neg && q.is_multiple_of(2) {
        return None;
    }
    let a = r.abs();
    let n = a.numer().nth_root(q);
    let d = a.denom().nth_root(q);
    if num_traits::pow(n.clone(), q as usize) != *a.numer()
        || num_traits::pow(d.clone(), q as usize) != *a.denom()
    {
        return None;
    }
    let root = BigRational::new(n, d);
    Some(if neg { -root } else { root })
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::real(BigRational::one())
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        Self::real(r)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &'a GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &'a GaussianRational) -> GaussianRational {
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        self * &inv
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &'a GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Parseable rendering: `3/2`, `-i`, `3/2*i`, `(1/2 - i)`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (&self.re, &self.im);
        if im.is_zero() {
            return fmt_rational(re, f);
        }
        let write_imag = |f: &mut fmt::Formatter<'_>, v: &BigRational| -> fmt::Result {
            if v.is_one() {
                write!(f, "i")
            } else {
                fmt_rational(v, f)?;
                write!(f, "*i")
            }
        };
        if re.is_zero() {
            if im.is_negative() {
                write!(f, "-")?;
            }
            return write_imag(f, &im.abs());
        }
        write!(f, "(")?;
        fmt_rational(re, f)?;
        write!(f, "{}", if im.is_negative() { " - " } else { " + " })?;
        write_imag(f, &im.abs())?;
        write!(f, ")")
    }
}
