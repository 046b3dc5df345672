//! Exact scalars: ℚ, ℚ(i), 𝔽_p and 𝔽_p[i] = 𝔽_p[x]/(x²+1).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field has no square root of -1 (request adjoin_i)")]
    NoSqrtMinusOne,
    #[error("cannot parse field spec `{0}`")]
    BadSpec(String),
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub characteristic: u64,
    pub adjoin_i: bool,
}

impl FieldSpec {
    pub const Q: FieldSpec = FieldSpec {
        characteristic: 0,
        adjoin_i: false,
    };
    pub const QI: FieldSpec = FieldSpec {
        characteristic: 0,
        adjoin_i: true,
    };

    pub fn prime(p: u64) -> Self {
        FieldSpec {
            characteristic: p,
            adjoin_i: false,
        }
    }

    pub fn prime_with_i(p: u64) -> Self {
        FieldSpec {
            characteristic: p,
            adjoin_i: true,
        }
    }

    pub fn field(&self) -> Result<Field, FieldError> {
        Field::new(*self)
    }
}

/// Accepts `q`, `q(i)`/`qi`, `p` or `p(i)` for a prime p (e.g. `3`, `5(i)`, also `f3`).
impl FromStr for FieldSpec {
    type Err = FieldError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        let (body, with_i) = match t.strip_suffix("(i)") {
            Some(b) => (b.to_string(), true),
            None => match t.strip_suffix('i') {
                Some(b) if b == "q" => (b.to_string(), true),
                _ => (t.clone(), false),
            },
        };
        if body == "q" {
            return Ok(FieldSpec {
                characteristic: 0,
                adjoin_i: with_i,
            });
        }
        let digits = body.trim_start_matches(['f', 'p']);
        let p: u64 = digits
            .parse()
            .map_err(|_| FieldError::BadSpec(s.to_string()))?;
        Ok(FieldSpec {
            characteristic: p,
            adjoin_i: with_i,
        })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.characteristic, self.adjoin_i) {
            (0, false) => write!(f, "q"),
            (0, true) => write!(f, "q(i)"),
            (p, false) => write!(f, "{p}"),
            (p, true) => write!(f, "{p}(i)"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A concrete field. `Prime` may carry a square root of −1 when p ≡ 1 (mod 4).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Gaussian,
    Prime { p: u64, i: Option<u64> },
    PrimeSquare { p: u64 },
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Field, FieldError> {
        match spec.characteristic {
            0 => Ok(if spec.adjoin_i {
                Field::Gaussian
            } else {
                Field::Rational
            }),
            2 => Err(FieldError::CharacteristicTwo),
            p if !is_prime(p) => Err(FieldError::NotPrime(p)),
            p if p % 4 == 1 => {
                let i = (2..p).find(|x| (x * x) % p == p - 1);
                Ok(Field::Prime { p, i })
            }
            p if spec.adjoin_i => Ok(Field::PrimeSquare { p }),
            p => Ok(Field::Prime { p, i: None }),
        }
    }

    pub fn q() -> Field {
        Field::Rational
    }

    pub fn fp(p: u64) -> Field {
        Field::new(FieldSpec::prime(p)).expect("odd prime")
    }

    pub fn spec(&self) -> FieldSpec {
        match *self {
            Field::Rational => FieldSpec::Q,
            Field::Gaussian => FieldSpec::QI,
            Field::Prime { p, .. } => FieldSpec::prime(p),
            Field::PrimeSquare { p } => FieldSpec::prime_with_i(p),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            Field::Rational | Field::Gaussian => 0,
            Field::Prime { p, .. } | Field::PrimeSquare { p } => p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Gaussian => Scalar::Gauss(
                BigRational::from_integer(BigInt::from(n)),
                BigRational::zero(),
            ),
            Field::Prime { p, .. } => Scalar::Mod(n.rem_euclid(p as i64) as u64, p),
            Field::PrimeSquare { p } => Scalar::Mod2(n.rem_euclid(p as i64) as u64, 0, p),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(n.clone())),
            Field::Gaussian => {
                Scalar::Gauss(BigRational::from_integer(n.clone()), BigRational::zero())
            }
            Field::Prime { p, .. } => Scalar::Mod(reduce_big(n, p), p),
            Field::PrimeSquare { p } => Scalar::Mod2(reduce_big(n, p), 0, p),
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        self.from_i64(num).mul(
            &self
                .from_i64(den)
                .inv()
                .expect("denominator vanishes in the field"),
        )
    }

    pub fn sign(&self, odd: bool) -> Scalar {
        self.from_i64(if odd { -1 } else { 1 })
    }

    /// s with s² = −1, if the field has one.
    pub fn sqrt_minus_one(&self) -> Result<Scalar, FieldError> {
        match *self {
            Field::Rational => Err(FieldError::NoSqrtMinusOne),
            Field::Gaussian => Ok(Scalar::Gauss(BigRational::zero(), BigRational::one())),
            Field::Prime { p, i: Some(x) } => Ok(Scalar::Mod(x, p)),
            Field::Prime { i: None, .. } => Err(FieldError::NoSqrtMinusOne),
            Field::PrimeSquare { p } => Ok(Scalar::Mod2(0, 1, p)),
        }
    }

    /// Binomial coefficient C(n, k) reduced into the field; zero outside 0 ≤ k ≤ n.
    pub fn binom(&self, n: u64, k: i64) -> Scalar {
        if k < 0 || k as u64 > n {
            return self.zero();
        }
        self.from_bigint(&BigInt::from(binom_big(n, k as u64)))
    }

    /// Generalized binomial C(t, x) = t(t−1)…(t−x+1)/x! for any integer t.
    pub fn gen_binom(&self, t: i64, x: u64) -> Scalar {
        self.from_bigint(&gen_binom_big(t, x))
    }

    /// Parses "5", "-3/4", "2+3i", "i".
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, FieldError> {
        let bad = || FieldError::BadScalar(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let rat = |u: &str| -> Result<Scalar, FieldError> {
            let (num, den) = match u.split_once('/') {
                Some((a, b)) => (a, b),
                None => (u, "1"),
            };
            let n: BigInt = num.parse().map_err(|_| bad())?;
            let d: BigInt = den.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            self.from_bigint(&n)
                .div(&self.from_bigint(&d))
                .ok_or_else(bad)
        };
        if let Some(body) = t.strip_suffix('i') {
            // split at the last sign that is not the leading one
            let cut = body
                .char_indices()
                .skip(1)
                .filter(|(_, c)| *c == '+' || *c == '-')
                .map(|(i, _)| i)
                .last();
            let (re, im) = match cut {
                Some(c) => (&body[..c], &body[c..]),
                None => ("0", body),
            };
            let im = match im {
                "" | "+" => "1",
                "-" => "-1",
                x => x.trim_start_matches('+'),
            };
            let i = self.sqrt_minus_one()?;
            Ok(rat(re)?.add(&rat(im)?.mul(&i)))
        } else {
            rat(&t)
        }
    }
}

fn reduce_big(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

pub fn binom_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn gen_binom_big(t: i64, x: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..x {
        num *= BigInt::from(t - j as i64);
        den *= BigInt::from(j + 1);
    }
    num / den
}

/// An exact field element. Binary operations require both operands to come from the same
/// field; ℚ ⊂ ℚ(i) and 𝔽_p ⊂ 𝔽_p[i] are promoted automatically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Gauss(BigRational, BigRational),
    Mod(u64, u64),
    Mod2(u64, u64, u64),
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Gauss(a, b) => a.is_zero() && b.is_zero(),
            Scalar::Mod(v, _) => *v == 0,
            Scalar::Mod2(a, b, _) => *a == 0 && *b == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Gauss(a, b) => a.is_one() && b.is_zero(),
            Scalar::Mod(v, _) => *v == 1,
            Scalar::Mod2(a, b, _) => *a == 1 && *b == 0,
        }
    }

    fn lift(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Gauss(r.clone(), BigRational::zero()),
            Scalar::Mod(v, p) => Scalar::Mod2(*v, 0, *p),
            other => other.clone(),
        }
    }

    fn binop(&self, o: &Scalar, op: char) -> Scalar {
        use Scalar::*;
        match (self, o) {
            (Rat(a), Rat(b)) => Rat(match op {
                '+' => a + b,
                '-' => a - b,
                _ => a * b,
            }),
            (Gauss(a, b), Gauss(c, d)) => match op {
                '+' => Gauss(a + c, b + d),
                '-' => Gauss(a - c, b - d),
                _ => Gauss(a * c - b * d, a * d + b * c),
            },
            (Mod(a, p), Mod(b, q)) => {
                assert_eq!(p, q, "scalars from different prime fields");
                Mod(
                    match op {
                        '+' => (a + b) % p,
                        '-' => (a + p - b) % p,
                        _ => mulmod(*a, *b, *p),
                    },
                    *p,
                )
            }
            (Mod2(a, b, p), Mod2(c, d, q)) => {
                assert_eq!(p, q, "scalars from different prime fields");
                let p = *p;
                match op {
                    '+' => Mod2((a + c) % p, (b + d) % p, p),
                    '-' => Mod2((a + p - c) % p, (b + p - d) % p, p),
                    _ => Mod2(
                        (mulmod(*a, *c, p) + p - mulmod(*b, *d, p)) % p,
                        (mulmod(*a, *d, p) + mulmod(*b, *c, p)) % p,
                        p,
                    ),
                }
            }
            (Rat(_), Gauss(..)) | (Mod(..), Mod2(..)) => self.lift().binop(o, op),
            (Gauss(..), Rat(_)) | (Mod2(..), Mod(..)) => self.binop(&o.lift(), op),
            _ => panic!("scalars from incompatible fields: {self:?} and {o:?}"),
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        self.binop(o, '+')
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.binop(o, '-')
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        self.binop(o, '*')
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Gauss(a, b) => Scalar::Gauss(-a, -b),
            Scalar::Mod(v, p) => Scalar::Mod((p - v) % p, *p),
            Scalar::Mod2(a, b, p) => Scalar::Mod2((p - a) % p, (p - b) % p, *p),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Gauss(a, b) => {
                let n = a * a + b * b;
                Scalar::Gauss(a / &n, -(b / &n))
            }
            Scalar::Mod(v, p) => Scalar::Mod(mod_pow(*v, p - 2, *p), *p),
            Scalar::Mod2(a, b, p) => {
                // a²+b² ≠ 0 because −1 is a non-residue
                let n = (mulmod(*a, *a, *p) + mulmod(*b, *b, *p)) % p;
                let ni = mod_pow(n, p - 2, *p);
                Scalar::Mod2(mulmod(*a, ni, *p), mulmod((p - b) % p, ni, *p), *p)
            }
        })
    }

    pub fn div(&self, o: &Scalar) -> Option<Scalar> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The multiplicative identity of the field `self` lives in.
    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Rat(_) => Scalar::Rat(BigRational::one()),
            Scalar::Gauss(..) => Scalar::Gauss(BigRational::one(), BigRational::zero()),
            Scalar::Mod(_, p) => Scalar::Mod(1, *p),
            Scalar::Mod2(_, _, p) => Scalar::Mod2(1, 0, *p),
        }
    }

    pub fn zero_like(&self) -> Scalar {
        match self {
            Scalar::Rat(_) => Scalar::Rat(BigRational::zero()),
            Scalar::Gauss(..) => Scalar::Gauss(BigRational::zero(), BigRational::zero()),
            Scalar::Mod(_, p) => Scalar::Mod(0, *p),
            Scalar::Mod2(_, _, p) => Scalar::Mod2(0, 0, *p),
        }
    }

    /// Integer value for rational-integer scalars (used for reporting small results).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rat(r) if r.is_integer() => r.to_integer().to_i64(),
            Scalar::Gauss(a, b) if b.is_zero() && a.is_integer() => a.to_integer().to_i64(),
            Scalar::Mod(v, _) => Some(*v as i64),
            Scalar::Mod2(a, 0, _) => Some(*a as i64),
            _ => None,
        }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gauss = |re: String, im: String, im_zero: bool, re_zero: bool| -> String {
            if im_zero {
                return re;
            }
            let im = match im.as_str() {
                "1" => String::new(),
                "-1" => "-".to_string(),
                s => s.to_string(),
            };
            if re_zero {
                format!("{im}i")
            } else if im.starts_with('-') {
                format!("{re}{im}i")
            } else {
                format!("{re}+{im}i")
            }
        };
        match self {
            Scalar::Rat(r) => write!(f, "{}", fmt_rat(r)),
            Scalar::Gauss(a, b) => write!(
                f,
                "{}",
                gauss(fmt_rat(a), fmt_rat(b), b.is_zero(), a.is_zero())
            ),
            Scalar::Mod(v, _) => write!(f, "{v}"),
            Scalar::Mod2(a, b, _) => write!(
                f,
                "{}",
                gauss(a.to_string(), b.to_string(), *b == 0, *a == 0)
            ),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar::add(self, o)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar::sub(self, o)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        Scalar::mul(self, o)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = Scalar::add(self, o);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = Scalar::sub(self, o);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = Scalar::mul(self, o);
    }
}

/// Free-standing helper matching the module operation `sqrt_minus_one(spec)`.
pub fn sqrt_minus_one(spec: FieldSpec) -> Result<Scalar, FieldError> {
    if spec.characteristic == 0 && !spec.adjoin_i {
        return Err(FieldError::NoSqrtMinusOne);
    }
    Field::new(spec)?.sqrt_minus_one()
}

/// `binom(n, k, spec)`.
pub fn binom(n: u64, k: i64, spec: FieldSpec) -> Result<Scalar, FieldError> {
    Ok(Field::new(spec)?.binom(n, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_minus_one_examples() {
        assert_eq!(
            sqrt_minus_one(FieldSpec::prime(5)).unwrap(),
            Scalar::Mod(2, 5)
        );
        let i3 = sqrt_minus_one(FieldSpec::prime_with_i(3)).unwrap();
        assert_eq!(
            i3.mul(&i3),
            Field::new(FieldSpec::prime_with_i(3)).unwrap().from_i64(-1)
        );
        let i = sqrt_minus_one(FieldSpec::QI).unwrap();
        assert_eq!(i.mul(&i).to_string(), "-1");
        assert_eq!(
            sqrt_minus_one(FieldSpec::Q),
            Err(FieldError::NoSqrtMinusOne)
        );
        assert_eq!(
            sqrt_minus_one(FieldSpec::prime(2)),
            Err(FieldError::CharacteristicTwo)
        );
        assert_eq!(
            sqrt_minus_one(FieldSpec::prime(7)),
            Err(FieldError::NoSqrtMinusOne)
        );
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom(4, 2, FieldSpec::Q).unwrap().to_string(), "6");
        assert!(binom(4, 2, FieldSpec::prime(3)).unwrap().is_zero());
        assert!(binom(7, 0, FieldSpec::prime(3)).unwrap().is_one());
        assert!(binom(3, 5, FieldSpec::Q).unwrap().is_zero());
        assert!(binom(3, -1, FieldSpec::Q).unwrap().is_zero());
        assert_eq!(Field::q().gen_binom(-2, 2).to_string(), "3");
    }

    #[test]
    fn display_and_parse() {
        let qi = Field::Gaussian;
        let z = qi.parse_scalar("2+3i").unwrap();
        assert_eq!(z.to_string(), "2+3i");
        assert_eq!(qi.parse_scalar("-i").unwrap().to_string(), "-i");
        assert_eq!(Field::q().parse_scalar("3/4").unwrap().to_string(), "3/4");
        assert_eq!(Field::fp(5).parse_scalar("-1").unwrap().to_string(), "4");
        let f9 = Field::new(FieldSpec::prime_with_i(3)).unwrap();
        assert_eq!(f9.parse_scalar("1-i").unwrap().to_string(), "1+2i");
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Q);
        assert_eq!("q(i)".parse::<FieldSpec>().unwrap(), FieldSpec::QI);
        assert_eq!("3".parse::<FieldSpec>().unwrap(), FieldSpec::prime(3));
        assert_eq!(
            "5(i)".parse::<FieldSpec>().unwrap(),
            FieldSpec::prime_with_i(5)
        );
        assert!(Field::new(FieldSpec::prime(9)).is_err());
    }

    #[test]
    fn inverses() {
        for f in [
            Field::q(),
            Field::Gaussian,
            Field::fp(7),
            Field::new(FieldSpec::prime_with_i(7)).unwrap(),
        ] {
            for n in 1..6 {
                let x = f.from_i64(n);
                assert!(x.mul(&x.inv().unwrap()).is_one());
            }
        }
    }
}
