use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient field of a polynomial ring: a prime field `F_p` or `Q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoefficientField {
    Prime(u64),
    Rationals,
}

/// A field element. Which variant is valid depends on the owning field;
/// mixing them is a programming error.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Mod(u64),
    Rat(BigRational),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    // deterministic Miller-Rabin witnesses for 64-bit inputs
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

impl CoefficientField {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(CoefficientField::Prime(p))
        } else {
            Err(Error::InvalidField(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientField::Prime(p) => *p,
            CoefficientField::Rationals => 0,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            CoefficientField::Prime(_) => Coeff::Mod(0),
            CoefficientField::Rationals => Coeff::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            CoefficientField::Prime(_) => Coeff::Mod(1),
            CoefficientField::Rationals => Coeff::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            CoefficientField::Prime(p) => Coeff::Mod((n as i128).rem_euclid(*p as i128) as u64),
            CoefficientField::Rationals => Coeff::Rat(BigRational::from_integer(n.into())),
        }
    }

    pub fn from_u64(&self, n: u64) -> Coeff {
        match self {
            CoefficientField::Prime(p) => Coeff::Mod(n % p),
            CoefficientField::Rationals => Coeff::Rat(BigRational::from_integer(n.into())),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match self {
            CoefficientField::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Coeff::Mod(r.to_u64().expect("residue fits in u64"))
            }
            CoefficientField::Rationals => Coeff::Rat(BigRational::from_integer(n.clone())),
        }
    }

    /// `num / den` reduced into the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Coeff> {
        match self {
            CoefficientField::Prime(_) => {
                let d = self.from_bigint(den);
                if self.is_zero(&d) {
                    return Err(Error::NonInvertibleDenominator(den.to_string()));
                }
                Ok(self.mul(&self.from_bigint(num), &self.inv(&d)?))
            }
            CoefficientField::Rationals => {
                if den.is_zero() {
                    return Err(Error::NonInvertibleDenominator(den.to_string()));
                }
                Ok(Coeff::Rat(BigRational::new(num.clone(), den.clone())))
            }
        }
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Mod(x) => *x == 0,
            Coeff::Rat(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Mod(x) => *x == 1,
            Coeff::Rat(q) => q.is_one(),
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (CoefficientField::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                let s = x + y;
                Coeff::Mod(if s >= *p { s - p } else { s })
            }
            (CoefficientField::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (CoefficientField::Prime(p), Coeff::Mod(x)) => Coeff::Mod(if *x == 0 { 0 } else { p - x }),
            (CoefficientField::Rationals, Coeff::Rat(x)) => Coeff::Rat(-x),
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (CoefficientField::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => Coeff::Mod(mul_mod(*x, *y, *p)),
            (CoefficientField::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    /// Multiplicative inverse; `a * inv(a) = 1`.
    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        match (self, a) {
            (CoefficientField::Prime(p), Coeff::Mod(x)) => {
                // extended Euclid on (x, p)
                let (mut r0, mut r1) = (*p as i128, *x as i128);
                let (mut t0, mut t1) = (0i128, 1i128);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (t0, t1) = (t1, t0 - q * t1);
                }
                debug_assert_eq!(r0, 1);
                Ok(Coeff::Mod(t0.rem_euclid(*p as i128) as u64))
            }
            (CoefficientField::Rationals, Coeff::Rat(q)) => Ok(Coeff::Rat(q.recip())),
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Coeff> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Sign used when printing: prime-field elements are shown through
    /// their symmetric representative in `(-p/2, p/2]`.
    pub fn is_negative(&self, a: &Coeff) -> bool {
        match (self, a) {
            (CoefficientField::Prime(p), Coeff::Mod(x)) => *x > p / 2 && *p > 2,
            (_, Coeff::Rat(q)) => q.is_negative(),
            _ => false,
        }
    }

    /// Decimal rendering of `|a|` under the symmetric convention.
    pub fn format_abs(&self, a: &Coeff) -> String {
        match (self, a) {
            (CoefficientField::Prime(p), Coeff::Mod(x)) => {
                if self.is_negative(a) {
                    (p - x).to_string()
                } else {
                    x.to_string()
                }
            }
            (_, Coeff::Rat(q)) => {
                let q = q.abs();
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            _ => panic!("coefficient does not belong to {self}"),
        }
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Prime(p) => write!(f, "p={p}"),
            CoefficientField::Rationals => write!(f, "rationals"),
        }
    }
}

impl std::str::FromStr for CoefficientField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "rationals" | "QQ" | "Q" | "0" | "p=0" => Ok(CoefficientField::Rationals),
            _ => {
                let digits = s.strip_prefix("p=").unwrap_or(s);
                let p: u64 = digits
                    .parse()
                    .map_err(|_| Error::InvalidField(format!("cannot parse `{s}`")))?;
                CoefficientField::prime(p)
            }
        }
    }
}
