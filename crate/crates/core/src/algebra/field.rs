//! Finite fields F_q with q = p^e <= 256, backed by full operation tables.
//!
//! An element is stored as the integer whose base-p digits are its coefficients
//! in the power basis 1, g, g^2, ... where g is a root of the modulus.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub const MAX_ORDER: u32 = 256;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(pub u8);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

pub type Field = Arc<FieldSpec>;

pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[{}]", self.q, self.modulus_string())
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits q = p^e, or returns None when q is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut m, mut e) = (q, 0);
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

// Polynomials over F_p as ascending coefficient vectors, used only while
// building the tables.
fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = fp_inv(m[dm], p);
    while r.len() > dm {
        let k = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            r[k + i] = (r[k + i] + p * p - c * mi % p) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|x| a * x % p == 1).expect("nonzero in F_p")
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let e = m.len() - 1;
    for deg in 1..=e / 2 {
        let count = p.pow(deg as u32);
        for low in 0..count {
            let mut d = digits(low, p, deg);
            d.push(1);
            if fp_rem(m, &d, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits(mut n: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(n % p);
        n /= p;
    }
    out
}

/// Smallest monic irreducible of degree e over F_p, ordered by the integer
/// encoding of its lower coefficients.
pub fn default_modulus(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1];
    }
    let count = p.pow(e);
    for low in 0..count {
        let mut m = digits(low, p, e as usize);
        m.push(1);
        if m[0] != 0 && is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldSpec {
    /// Builds F_{p^e}. For e = 1 the modulus is ignored; for e <= 4 a default
    /// modulus is chosen when none is given.
    pub fn new(p: u32, e: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::InvalidField(format!("{p}^{e} exceeds {MAX_ORDER}")))?;
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            match modulus {
                Some(m) => {
                    let mut m: Vec<u32> = m.into_iter().map(|c| c % p).collect();
                    fp_trim(&mut m);
                    if m.len() != e as usize + 1 || m[e as usize] != 1 {
                        return Err(Error::InvalidField(format!(
                            "modulus must be monic of degree {e}"
                        )));
                    }
                    if !is_irreducible(&m, p) {
                        return Err(Error::InvalidField("modulus is reducible".into()));
                    }
                    m
                }
                None if e <= 4 => default_modulus(p, e),
                None => {
                    return Err(Error::InvalidField(format!(
                        "no default modulus for e = {e}; supply one"
                    )))
                }
            }
        };
        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        let enc = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &c| acc * p + c);
        let elems: Vec<Vec<u32>> = (0..q).map(|x| digits(x, p, e as usize)).collect();
        for a in 0..qs {
            for b in 0..qs {
                let s: Vec<u32> = elems[a]
                    .iter()
                    .zip(&elems[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * qs + b] = enc(&s) as u8;
                let mut prod = vec![0u32; 2 * e as usize];
                for (i, x) in elems[a].iter().enumerate() {
                    for (j, y) in elems[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = fp_rem(&prod, &modulus, p);
                r.resize(e as usize, 0);
                mul[a * qs + b] = enc(&r) as u8;
            }
        }
        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as u8;
            }
        }
        Ok(Arc::new(FieldSpec {
            p,
            e,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        }))
    }

    pub fn prime(p: u32) -> Result<Field> {
        Self::new(p, 1, None)
    }

    /// F_q for a prime power q, with the default modulus.
    pub fn of_order(q: u32) -> Result<Field> {
        let (p, e) =
            prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        Self::new(p, e, None)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn modulus_string(&self) -> String {
        if self.e == 1 {
            return "x".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            parts.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (_, false) => format!("{c}*{mono}"),
            });
        }
        parts.join(" + ")
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        Scalar(self.add[a.0 as usize * self.q as usize + b.0 as usize])
    }
    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        Scalar(self.neg[a.0 as usize])
    }
    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        Scalar(self.mul[a.0 as usize * self.q as usize + b.0 as usize])
    }
    pub fn inv(&self, a: Scalar) -> Result<Scalar> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(Scalar(self.inv[a.0 as usize]))
        }
    }
    pub fn div(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        Ok(self.mul(a, self.inv(b)?))
    }
    pub fn pow(&self, a: Scalar, mut n: u64) -> Scalar {
        let (mut base, mut acc) = (a, Scalar::ONE);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Scalar {
        Scalar(n.rem_euclid(self.p as i64) as u8)
    }

    /// The class of x modulo the field modulus (equals 1 when e = 1 would be
    /// meaningless, so the prime field returns its smallest primitive element).
    pub fn generator(&self) -> Scalar {
        if self.e > 1 {
            Scalar(self.p as u8)
        } else {
            (1..self.q)
                .map(|x| Scalar(x as u8))
                .find(|&g| (1..self.q - 1).all(|k| self.pow(g, k as u64) != Scalar::ONE))
                .unwrap_or(Scalar::ONE)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        (0..self.q).map(|x| Scalar(x as u8))
    }

    pub fn contains(&self, a: Scalar) -> bool {
        (a.0 as u32) < self.q
    }

    /// Prime field elements print as integers; extension elements as
    /// polynomials in g, the root of the modulus.
    pub fn render(&self, a: Scalar) -> String {
        if self.e == 1 {
            return a.0.to_string();
        }
        let d = digits(a.0 as u32, self.p, self.e as usize);
        let mut parts = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "g".into(),
                _ => format!("g^{i}"),
            };
            parts.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (_, false) => format!("{c}*{mono}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    /// Whether the rendering of a needs parentheses when used as a factor.
    pub fn render_is_compound(&self, a: Scalar) -> bool {
        self.render(a).contains('+')
    }

    /// Parses a rendered scalar: an integer (reduced mod p) or a polynomial in g.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad field element '{s}'"));
        if let Ok(n) = s.parse::<i64>() {
            return Ok(self.from_int(n));
        }
        if self.e == 1 {
            return Err(bad());
        }
        let mut acc = Scalar::ZERO;
        let g = self.generator();
        for term in s.split('+') {
            let term = term.trim();
            let (coef, mono) = match term.split_once('*') {
                Some((c, m)) => (c.trim().parse::<i64>().map_err(|_| bad())?, m.trim()),
                None if term.starts_with('g') => (1, term),
                None => (term.parse::<i64>().map_err(|_| bad())?, ""),
            };
            let k = match mono {
                "" => 0,
                "g" => 1,
                m => m
                    .strip_prefix("g^")
                    .and_then(|k| k.parse::<u64>().ok())
                    .ok_or_else(bad)?,
            };
            acc = self.add(acc, self.mul(self.from_int(coef), self.pow(g, k)));
        }
        Ok(acc)
    }
}

/// A field element bundled with its field, for checked arithmetic across
/// possibly different fields.
#[derive(Clone, Debug)]
pub struct Elem {
    pub field: Field,
    pub value: Scalar,
}

impl Elem {
    pub fn new(field: &Field, value: Scalar) -> Self {
        Elem {
            field: field.clone(),
            value,
        }
    }

    fn same(&self, other: &Elem) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Elem) -> Result<Elem> {
        self.same(other)?;
        Ok(Elem::new(&self.field, self.field.add(self.value, other.value)))
    }
    pub fn mul(&self, other: &Elem) -> Result<Elem> {
        self.same(other)?;
        Ok(Elem::new(&self.field, self.field.mul(self.value, other.value)))
    }
    pub fn inv(&self) -> Result<Elem> {
        Ok(Elem::new(&self.field, self.field.inv(self.value)?))
    }
    pub fn pow(&self, n: u64) -> Elem {
        Elem::new(&self.field, self.field.pow(self.value, n))
    }
}
