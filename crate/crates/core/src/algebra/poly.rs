//! Dense univariate polynomials over F_q, tagged by their variable.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

pub trait Variable: Copy + Default + fmt::Debug + Send + Sync + 'static {
    const SYMBOL: &'static str;
    const ALIASES: &'static [&'static str];
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Theta;
impl Variable for Theta {
    const SYMBOL: &'static str = "θ";
    const ALIASES: &'static [&'static str] = &["θ", "theta", "x"];
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct T;
impl Variable for T {
    const SYMBOL: &'static str = "t";
    const ALIASES: &'static [&'static str] = &["t"];
}

pub struct Poly<V> {
    field: Field,
    coeffs: Vec<Scalar>,
    _var: PhantomData<V>,
}

pub type ThetaPoly = Poly<Theta>;
pub type TPoly = Poly<T>;

impl<V> Clone for Poly<V> {
    fn clone(&self) -> Self {
        Poly {
            field: self.field.clone(),
            coeffs: self.coeffs.clone(),
            _var: PhantomData,
        }
    }
}

impl<V> PartialEq for Poly<V> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
            && (Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field)
    }
}
impl<V> Eq for Poly<V> {}

impl<V> Hash for Poly<V> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl<V: Variable> fmt::Debug for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[inline]
pub(crate) fn same_field(a: &Field, b: &Field) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<V: Variable> Poly<V> {
    pub fn from_coeffs(field: &Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
            _var: PhantomData,
        }
    }

    /// Ascending integer coefficients, reduced into the prime field.
    pub fn from_ints(field: &Field, ints: &[i64]) -> Self {
        Self::from_coeffs(field, ints.iter().map(|&n| field.from_int(n)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_coeffs(field, Vec::new())
    }
    pub fn one(field: &Field) -> Self {
        Self::constant(field, Scalar::ONE)
    }
    pub fn constant(field: &Field, c: Scalar) -> Self {
        Self::from_coeffs(field, vec![c])
    }
    pub fn monomial(field: &Field, c: Scalar, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero(field);
        }
        let mut v = vec![Scalar::ZERO; k + 1];
        v[k] = c;
        Self::from_coeffs(field, v)
    }
    /// The variable itself.
    pub fn var(field: &Field) -> Self {
        Self::monomial(field, Scalar::ONE, 1)
    }
    /// x^k - x^j with signs handled in the field.
    pub fn binomial(field: &Field, k: usize, j: usize) -> Self {
        &Self::monomial(field, Scalar::ONE, k) - &Self::monomial(field, Scalar::ONE, j)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }
    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).copied().unwrap_or(Scalar::ZERO)
    }
    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Scalar::ONE
    }
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }
    pub fn leading(&self) -> Scalar {
        self.coeffs.last().copied().unwrap_or(Scalar::ZERO)
    }
    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Same coefficients read in another variable.
    pub fn rename<W: Variable>(&self) -> Poly<W> {
        Poly {
            field: self.field.clone(),
            coeffs: self.coeffs.clone(),
            _var: PhantomData,
        }
    }

    pub fn scale(&self, c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        Self::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by x^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Scalar::ZERO; k];
        v.extend_from_slice(&self.coeffs);
        Self::from_coeffs(&self.field, v)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("nonzero leading");
        self.scale(inv)
    }

    pub fn eval(&self, x: Scalar) -> Scalar {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add_assign_scaled(&mut self, other: &Self, c: Scalar, shift: usize) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let f = self.field.clone();
        let need = other.coeffs.len() + shift;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, Scalar::ZERO);
        }
        for (i, &b) in other.coeffs.iter().enumerate() {
            if !b.is_zero() {
                let slot = &mut self.coeffs[i + shift];
                *slot = f.add(*slot, f.mul(b, c));
            }
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let inv = f.inv(d.leading())?;
        let mut quo = vec![Scalar::ZERO; r.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = f.mul(r[k + dd], inv);
            quo[k] = c;
            if !c.is_zero() {
                for (i, &di) in d.coeffs.iter().enumerate() {
                    r[k + i] = f.sub(r[k + i], f.mul(c, di));
                }
            }
        }
        r.truncate(dd);
        Ok((Self::from_coeffs(f, quo), Self::from_coeffs(f, r)))
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// f(x^{q^n}), which equals f^{q^n} because coefficients lie in F_q.
    pub fn frobenius(&self, n: u32) -> Self {
        if n == 0 || self.is_constant() {
            return self.clone();
        }
        let step = (self.field.q() as usize)
            .checked_pow(n)
            .expect("twist exponent overflow");
        let deg = self.coeffs.len() - 1;
        let mut v = vec![Scalar::ZERO; deg * step + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * step] = c;
        }
        Self::from_coeffs(&self.field, v)
    }

    /// Twist with an externally supplied exponent; negative values are rejected.
    pub fn twist_checked(&self, n: i64) -> Result<Self> {
        u32::try_from(n)
            .map(|n| self.frobenius(n))
            .map_err(|_| Error::NegativeTwist(n))
    }

    fn render_with(&self, sym: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut parts = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => sym.to_string(),
                _ => format!("{sym}^{k}"),
            };
            parts.push(if mono.is_empty() && f.render_is_compound(c) {
                format!("({})", f.render(c))
            } else if mono.is_empty() {
                f.render(c)
            } else if c == Scalar::ONE {
                mono
            } else if f.render_is_compound(c) {
                format!("({})*{mono}", f.render(c))
            } else {
                format!("{}*{mono}", f.render(c))
            });
        }
        parts.join(" + ")
    }

    /// Number of monomials needing parentheses when used as a factor.
    pub fn is_compound(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() > 1
            || (self.coeffs.len() == 1 && self.field.render_is_compound(self.coeffs[0]))
    }

    /// Parses the canonical rendering (and minor variants: '-' signs, ASCII
    /// variable aliases, spaces).
    pub fn parse(field: &Field, s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("{m} in '{s}'"));
        let s = s.trim();
        if s.is_empty() {
            return Err(bad("empty polynomial"));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let (mut depth, mut cur, mut neg) = (0i32, String::new(), false);
        for ch in s.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    cur.push(ch)
                }
                ')' => {
                    depth -= 1;
                    cur.push(ch)
                }
                '+' | '-' if depth == 0 => {
                    if !cur.trim().is_empty() {
                        terms.push((neg, std::mem::take(&mut cur)));
                        neg = false;
                    }
                    cur.clear();
                    if ch == '-' {
                        neg = !neg;
                    }
                }
                _ => cur.push(ch),
            }
        }
        if cur.trim().is_empty() {
            return Err(bad("dangling sign"));
        }
        terms.push((neg, cur));
        let mut acc = Self::zero(field);
        for (neg, term) in terms {
            let term = term.trim();
            let (coef_s, mono_s) = match split_top_star(term) {
                Some((c, m)) => (c.trim(), m.trim()),
                None if V::ALIASES.iter().any(|a| term.starts_with(a)) => ("1", term),
                None => (term, ""),
            };
            let coef_s = coef_s
                .strip_prefix('(')
                .and_then(|c| c.strip_suffix(')'))
                .unwrap_or(coef_s);
            let c = field.parse(coef_s)?;
            let k = if mono_s.is_empty() {
                0
            } else {
                let rest = V::ALIASES
                    .iter()
                    .find_map(|a| mono_s.strip_prefix(a))
                    .ok_or_else(|| bad("unknown variable"))?;
                if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .and_then(|k| k.parse::<usize>().ok())
                        .ok_or_else(|| bad("bad exponent"))?
                }
            };
            let c = if neg { field.neg(c) } else { c };
            acc.add_assign_scaled(&Self::one(field), c, k);
        }
        Ok(acc)
    }
}

impl<V: Variable> fmt::Display for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(V::SYMBOL))
    }
}

fn split_top_star(term: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    let mut found = None;
    for (i, ch) in term.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => found = Some(i),
            _ => {}
        }
    }
    found.map(|i| (&term[..i], &term[i + 1..]))
}

fn mul_coeffs(field: &Field, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a.len() + b.len() - 1;
    if field.e() == 1 {
        let p = field.p() as u64;
        let mut acc = vec![0u64; n];
        let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        for (i, &x) in small.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let x = x.0 as u64;
            for (slot, &y) in acc[i..].iter_mut().zip(big) {
                *slot += x * y.0 as u64;
            }
            if i % 1024 == 1023 {
                acc.iter_mut().for_each(|v| *v %= p);
            }
        }
        acc.into_iter().map(|v| Scalar((v % p) as u8)).collect()
    } else {
        let mut out = vec![Scalar::ZERO; n];
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] = field.add(out[i + j], field.mul(x, y));
                }
            }
        }
        out
    }
}

impl<'a, V: Variable> Add<&'a Poly<V>> for &'a Poly<V> {
    type Output = Poly<V>;
    fn add(self, rhs: &'a Poly<V>) -> Poly<V> {
        debug_assert!(same_field(&self.field, &rhs.field));
        let f = &self.field;
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (&self.coeffs, &rhs.coeffs)
        } else {
            (&rhs.coeffs, &self.coeffs)
        };
        let mut v = long.clone();
        for (slot, &b) in v.iter_mut().zip(short.iter()) {
            *slot = f.add(*slot, b);
        }
        Poly::from_coeffs(f, v)
    }
}

impl<'a, V: Variable> Sub<&'a Poly<V>> for &'a Poly<V> {
    type Output = Poly<V>;
    fn sub(self, rhs: &'a Poly<V>) -> Poly<V> {
        self + &(-rhs)
    }
}

impl<V: Variable> Neg for &Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        let f = &self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl<'a, V: Variable> Mul<&'a Poly<V>> for &'a Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: &'a Poly<V>) -> Poly<V> {
        debug_assert!(same_field(&self.field, &rhs.field));
        Poly::from_coeffs(&self.field, mul_coeffs(&self.field, &self.coeffs, &rhs.coeffs))
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<V: Variable> $tr<Poly<V>> for Poly<V> {
            type Output = Poly<V>;
            fn $m(self, rhs: Poly<V>) -> Poly<V> { (&self).$m(&rhs) }
        }
        impl<'a, V: Variable> $tr<&'a Poly<V>> for Poly<V> {
            type Output = Poly<V>;
            fn $m(self, rhs: &'a Poly<V>) -> Poly<V> { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<V: Variable> Neg for Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldSpec;

    #[test]
    fn render_canonical() {
        let f = FieldSpec::prime(3).unwrap();
        let p = ThetaPoly::from_ints(&f, &[0, 1, 0, 2]);
        assert_eq!(p.to_string(), "2*θ^3 + θ");
        assert_eq!(ThetaPoly::zero(&f).to_string(), "0");
        assert_eq!(TPoly::from_ints(&f, &[1, 0, 1]).to_string(), "t^2 + 1");
        let f4 = FieldSpec::of_order(4).unwrap();
        let g1 = f4.add(f4.generator(), Scalar::ONE);
        assert_eq!(ThetaPoly::monomial(&f4, g1, 2).to_string(), "(g+1)*θ^2");
    }

    #[test]
    fn parse_round_trip_and_variants() {
        let f = FieldSpec::prime(3).unwrap();
        let p = ThetaPoly::from_ints(&f, &[2, 1, 0, 2]);
        assert_eq!(ThetaPoly::parse(&f, &p.to_string()).unwrap(), p);
        assert_eq!(
            ThetaPoly::parse(&f, "theta^3 - theta").unwrap(),
            ThetaPoly::from_ints(&f, &[0, -1, 0, 1])
        );
        assert_eq!(ThetaPoly::parse(&f, "-1").unwrap(), ThetaPoly::from_ints(&f, &[2]));
        let f9 = FieldSpec::of_order(9).unwrap();
        let g = f9.generator();
        let q = &ThetaPoly::monomial(&f9, f9.add(g, Scalar::ONE), 2) + &ThetaPoly::var(&f9);
        assert_eq!(ThetaPoly::parse(&f9, &q.to_string()).unwrap(), q);
    }

    #[test]
    fn division_and_gcd() {
        let f = FieldSpec::prime(5).unwrap();
        let a = ThetaPoly::from_ints(&f, &[1, 2, 3, 4, 1]);
        let b = ThetaPoly::from_ints(&f, &[3, 0, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
        let c = ThetaPoly::from_ints(&f, &[1, 1]);
        let g = (&a * &c).gcd(&(&b * &c));
        assert_eq!(g.div_exact(&c).map(|x| x.degree()), Some(Some(0)));
        assert!(a.divrem(&ThetaPoly::zero(&f)).is_err());
    }

    #[test]
    fn frobenius_is_power() {
        let f = FieldSpec::of_order(4).unwrap();
        let a = ThetaPoly::from_coeffs(&f, vec![Scalar(2), Scalar(3), Scalar(1)]);
        assert_eq!(a.frobenius(1), a.pow(4));
        assert_eq!(a.frobenius(0), a);
        assert!(matches!(a.twist_checked(-1), Err(Error::NegativeTwist(-1))));
    }
}
