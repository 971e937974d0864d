//! Elements of k = F_q(θ) in lowest terms with monic denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Scalar};
use super::poly::ThetaPoly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFrac {
    num: ThetaPoly,
    den: ThetaPoly,
}

impl RatFrac {
    pub fn new(num: ThetaPoly, den: ThetaPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = num.field().clone();
        if num.is_zero() {
            return Ok(Self::zero(&field));
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lead = d.leading();
        if lead != Scalar::ONE {
            let inv = field.inv(lead)?;
            n = n.scale(inv);
            d = d.scale(inv);
        }
        Ok(RatFrac { num: n, den: d })
    }

    pub fn from_poly(p: ThetaPoly) -> Self {
        let one = ThetaPoly::one(p.field());
        RatFrac { num: p, den: one }
    }
    pub fn zero(field: &Field) -> Self {
        Self::from_poly(ThetaPoly::zero(field))
    }
    pub fn one(field: &Field) -> Self {
        Self::from_poly(ThetaPoly::one(field))
    }
    pub fn from_scalar(field: &Field, c: Scalar) -> Self {
        Self::from_poly(ThetaPoly::constant(field, c))
    }

    pub fn num(&self) -> &ThetaPoly {
        &self.num
    }
    pub fn den(&self) -> &ThetaPoly {
        &self.den
    }
    pub fn field(&self) -> &Field {
        self.num.field()
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }
    pub fn as_poly(&self) -> Option<ThetaPoly> {
        self.is_integral().then(|| self.num.clone())
    }

    /// deg num - deg den, None for zero.
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap() as i64)
    }

    /// max(deg num, deg den), the height used for reconstruction bounds.
    pub fn height(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, c: Scalar) -> Self {
        RatFrac {
            num: self.num.scale(c),
            den: if c.is_zero() {
                ThetaPoly::one(self.field())
            } else {
                self.den.clone()
            },
        }
    }

    /// Applying θ ↦ θ^{q^n} to both parts keeps lowest terms, since it is the
    /// q^n-th power map.
    pub fn frobenius(&self, n: u32) -> Self {
        RatFrac {
            num: self.num.frobenius(n),
            den: self.den.frobenius(n),
        }
    }

    pub fn twist_checked(&self, n: i64) -> Result<Self> {
        u32::try_from(n)
            .map(|n| self.frobenius(n))
            .map_err(|_| Error::NegativeTwist(n))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        Ok(RatFrac {
            num: self.num.pow(n as u64),
            den: self.den.pow(n as u64),
        })
    }

    /// Accepts "p" or "(p)/(q)" with p, q canonical polynomial renderings.
    pub fn parse(field: &Field, s: &str) -> Result<Self> {
        let s = s.trim();
        let strip = |x: &str| {
            let x = x.trim();
            x.strip_prefix('(')
                .and_then(|y| y.strip_suffix(')'))
                .map(str::to_string)
                .unwrap_or_else(|| x.to_string())
        };
        let mut depth = 0i32;
        let mut split = None;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 => split = Some(i),
                _ => {}
            }
        }
        match split {
            Some(i) => Self::new(
                ThetaPoly::parse(field, &strip(&s[..i]))?,
                ThetaPoly::parse(field, &strip(&s[i + 1..]))?,
            ),
            None => Ok(Self::from_poly(ThetaPoly::parse(field, &strip(s))?)),
        }
    }
}

impl fmt::Display for RatFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let n = if self.num.is_compound() {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        let d = if self.den.is_compound() {
            format!("({})", self.den)
        } else {
            self.den.to_string()
        };
        write!(f, "{n}/{d}")
    }
}

impl fmt::Debug for RatFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a RatFrac> for &'a RatFrac {
    type Output = RatFrac;
    fn add(self, rhs: &'a RatFrac) -> RatFrac {
        if self.den == rhs.den {
            return RatFrac::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let g = self.den.gcd(&rhs.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = rhs.den.div_exact(&g).unwrap();
        RatFrac::new(&self.num * &b + &rhs.num * &a, &a * &rhs.den).unwrap()
    }
}

impl<'a> Sub<&'a RatFrac> for &'a RatFrac {
    type Output = RatFrac;
    fn sub(self, rhs: &'a RatFrac) -> RatFrac {
        self + &(-rhs)
    }
}

impl Neg for &RatFrac {
    type Output = RatFrac;
    fn neg(self) -> RatFrac {
        RatFrac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<'a> Mul<&'a RatFrac> for &'a RatFrac {
    type Output = RatFrac;
    fn mul(self, rhs: &'a RatFrac) -> RatFrac {
        if self.is_zero() || rhs.is_zero() {
            return RatFrac::zero(self.field());
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n = self.num.div_exact(&g1).unwrap() * rhs.num.div_exact(&g2).unwrap();
        let d = self.den.div_exact(&g2).unwrap() * rhs.den.div_exact(&g1).unwrap();
        RatFrac::new(n, d).unwrap()
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RatFrac> for RatFrac {
            type Output = RatFrac;
            fn $m(self, rhs: RatFrac) -> RatFrac { (&self).$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for RatFrac {
    type Output = RatFrac;
    fn neg(self) -> RatFrac {
        -&self
    }
}
