//! Truncated elements of k_∞ = F_q((1/θ)).
//!
//! A value is Σ_{i<prec} c_i θ^{lead−i} + O(θ^{lead−prec}). Only the stored
//! coefficients are guaranteed; everything below the window is unknown.

use std::fmt;

use super::field::{Field, Scalar};
use super::poly::ThetaPoly;
use super::ratfrac::RatFrac;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct LaurentNumber {
    field: Field,
    lead: i64,
    coeffs: Vec<Scalar>,
}

impl LaurentNumber {
    /// Builds from raw coefficients, stripping leading zeros (each one costs a
    /// coefficient of relative precision).
    pub fn new(field: &Field, lead: i64, coeffs: Vec<Scalar>) -> Self {
        let skip = coeffs.iter().take_while(|c| c.is_zero()).count();
        LaurentNumber {
            field: field.clone(),
            lead: lead - skip as i64,
            coeffs: coeffs[skip..].to_vec(),
        }
    }

    /// Zero known up to O(θ^{abs}).
    pub fn zero(field: &Field, abs: i64) -> Self {
        LaurentNumber {
            field: field.clone(),
            lead: abs,
            coeffs: Vec::new(),
        }
    }

    /// Exact polynomial truncated to `prec` coefficients.
    pub fn from_poly(p: &ThetaPoly, prec: usize) -> Self {
        match p.degree() {
            None => Self::zero(p.field(), -(prec as i64)),
            Some(d) => {
                let c = (0..prec)
                    .map(|i| if i <= d { p.coeff(d - i) } else { Scalar::ZERO })
                    .collect();
                Self::new(p.field(), d as i64, c)
            }
        }
    }

    pub fn from_ratfrac(x: &RatFrac, prec: usize) -> Result<Self> {
        let n = Self::from_poly(x.num(), prec);
        if x.is_zero() {
            return Ok(n);
        }
        Ok(n.mul(&Self::from_poly(x.den(), prec).inv()?))
    }

    pub fn one(field: &Field, prec: usize) -> Self {
        Self::from_poly(&ThetaPoly::one(field), prec)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    /// Exponent of the first stored coefficient.
    pub fn lead(&self) -> i64 {
        self.lead
    }
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }
    /// Relative precision: number of guaranteed coefficients.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }
    /// Exponent below which nothing is known.
    pub fn abs_precision(&self) -> i64 {
        self.lead - self.coeffs.len() as i64
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of θ^e, None when e lies below the window.
    pub fn coeff_at(&self, e: i64) -> Option<Scalar> {
        if e <= self.abs_precision() {
            None
        } else if e > self.lead {
            Some(Scalar::ZERO)
        } else {
            Some(self.coeffs[(self.lead - e) as usize])
        }
    }

    pub fn truncate(&self, prec: usize) -> Self {
        let mut out = self.clone();
        out.coeffs.truncate(prec);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let abs = self.abs_precision().max(other.abs_precision());
        let top = match (self.is_zero(), other.is_zero()) {
            (true, true) => return Self::zero(&self.field, abs),
            (false, true) => self.lead,
            (true, false) => other.lead,
            (false, false) => self.lead.max(other.lead),
        };
        if top <= abs {
            return Self::zero(&self.field, abs);
        }
        let f = &self.field;
        let c = (0..(top - abs))
            .map(|i| {
                let e = top - i;
                f.add(
                    self.coeff_at(e).unwrap_or(Scalar::ZERO),
                    other.coeff_at(e).unwrap_or(Scalar::ZERO),
                )
            })
            .collect();
        let out = Self::new(f, top, c);
        if out.is_zero() {
            Self::zero(f, abs)
        } else {
            out
        }
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        LaurentNumber {
            field: f.clone(),
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.field, self.abs_precision());
        }
        let f = &self.field;
        LaurentNumber {
            field: f.clone(),
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Multiplication by θ^k, exact.
    pub fn shift(&self, k: i64) -> Self {
        let mut out = self.clone();
        out.lead += k;
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Self::zero(f, self.lead + other.lead),
            (true, false) => return Self::zero(f, self.lead + other.lead),
            (false, true) => return Self::zero(f, self.lead + other.lead),
            _ => {}
        }
        let n = self.precision().min(other.precision());
        let mut c = vec![Scalar::ZERO; n];
        for i in 0..n {
            let a = self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for j in 0..n - i {
                c[i + j] = f.add(c[i + j], f.mul(a, other.coeffs[j]));
            }
        }
        Self::new(f, self.lead + other.lead, c)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let n = self.precision();
        let c0inv = f.inv(self.coeffs[0])?;
        let mut b = vec![Scalar::ZERO; n];
        b[0] = c0inv;
        for k in 1..n {
            let mut s = Scalar::ZERO;
            for i in 1..=k {
                s = f.add(s, f.mul(self.coeffs[i], b[k - i]));
            }
            b[k] = f.neg(f.mul(s, c0inv));
        }
        Ok(Self::new(f, -self.lead, b))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut base = self.clone();
        let prec = self.precision().max(1);
        let mut acc = Self::one(&self.field, prec);
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// x^{q^n}; exact spreading of coefficients, so precision grows.
    pub fn frobenius(&self, n: u32) -> Self {
        let step = (self.field.q() as usize).pow(n);
        if self.is_zero() {
            return Self::zero(&self.field, self.lead * step as i64);
        }
        let mut c = vec![Scalar::ZERO; self.coeffs.len() * step];
        for (i, &a) in self.coeffs.iter().enumerate() {
            c[i * step] = a;
        }
        Self::new(&self.field, self.lead * step as i64, c)
    }

    /// Whether self and other agree on their first n coefficients (relative
    /// to self's leading term). Errors when either side has fewer than n
    /// guaranteed coefficients in that range.
    pub fn agrees_to(&self, other: &Self, n: usize) -> Result<bool> {
        let top = if self.is_zero() { other.lead } else { self.lead };
        let bottom = top - n as i64;
        for x in [self, other] {
            if x.abs_precision() > bottom {
                return Err(Error::InsufficientPrecision {
                    needed: n,
                    have: (top - x.abs_precision()).max(0) as usize,
                });
            }
        }
        Ok((0..n as i64).all(|i| self.coeff_at(top - i) == other.coeff_at(top - i)))
    }
}

impl PartialEq for LaurentNumber {
    fn eq(&self, other: &Self) -> bool {
        self.lead == other.lead && self.coeffs == other.coeffs
    }
}

impl fmt::Display for LaurentNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fl = &self.field;
        if self.is_zero() {
            return write!(f, "O(θ^{})", self.lead);
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = if fl.render_is_compound(c) {
                format!("({})", fl.render(c))
            } else {
                fl.render(c)
            };
            parts.push(match i {
                0 => cs,
                1 => format!("{cs}/θ"),
                _ => format!("{cs}/θ^{i}"),
            });
        }
        parts.push(format!("O(1/θ^{})", self.coeffs.len()));
        write!(f, "θ^{}·({})", self.lead, parts.join(" + "))
    }
}

impl fmt::Debug for LaurentNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
