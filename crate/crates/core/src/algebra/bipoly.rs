//! Polynomials in t over a coefficient ring containing θ: A[t] or k[t].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Scalar};
use super::poly::{TPoly, ThetaPoly};
use super::ratfrac::RatFrac;

/// Coefficient rings for t-polynomials and twisted operators: A or k.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn field(&self) -> &Field;
    fn zero(field: &Field) -> Self;
    fn one(field: &Field) -> Self;
    fn from_theta(p: ThetaPoly) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scale(&self, c: Scalar) -> Self;
    fn times_theta(&self) -> Self;
    /// x ↦ x^{q^n}.
    fn twist(&self, n: u32) -> Self;
    /// Some(p) when the element lies in A.
    fn as_theta(&self) -> Option<ThetaPoly>;
    /// Whether the rendering needs parentheses as a factor.
    fn is_compound(&self) -> bool;

    fn theta(field: &Field) -> Self {
        Self::from_theta(ThetaPoly::var(field))
    }
    fn from_scalar(field: &Field, c: Scalar) -> Self {
        Self::from_theta(ThetaPoly::constant(field, c))
    }
}

impl Coeff for ThetaPoly {
    fn field(&self) -> &Field {
        ThetaPoly::field(self)
    }
    fn zero(field: &Field) -> Self {
        ThetaPoly::zero(field)
    }
    fn one(field: &Field) -> Self {
        ThetaPoly::one(field)
    }
    fn from_theta(p: ThetaPoly) -> Self {
        p
    }
    fn is_zero(&self) -> bool {
        ThetaPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scale(&self, c: Scalar) -> Self {
        ThetaPoly::scale(self, c)
    }
    fn times_theta(&self) -> Self {
        self.shift(1)
    }
    fn twist(&self, n: u32) -> Self {
        self.frobenius(n)
    }
    fn as_theta(&self) -> Option<ThetaPoly> {
        Some(self.clone())
    }
    fn is_compound(&self) -> bool {
        ThetaPoly::is_compound(self)
    }
}

impl Coeff for RatFrac {
    fn field(&self) -> &Field {
        RatFrac::field(self)
    }
    fn zero(field: &Field) -> Self {
        RatFrac::zero(field)
    }
    fn one(field: &Field) -> Self {
        RatFrac::one(field)
    }
    fn from_theta(p: ThetaPoly) -> Self {
        RatFrac::from_poly(p)
    }
    fn is_zero(&self) -> bool {
        RatFrac::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scale(&self, c: Scalar) -> Self {
        RatFrac::scale(self, c)
    }
    fn times_theta(&self) -> Self {
        self * &RatFrac::from_poly(ThetaPoly::var(self.field()))
    }
    fn twist(&self, n: u32) -> Self {
        self.frobenius(n)
    }
    fn as_theta(&self) -> Option<ThetaPoly> {
        self.as_poly()
    }
    fn is_compound(&self) -> bool {
        !self.is_integral() || self.num().is_compound()
    }
}

#[derive(Clone, PartialEq)]
pub struct BiPoly<C> {
    field: Field,
    coeffs: Vec<C>,
}

impl<C: Coeff> fmt::Debug for BiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Coeff> BiPoly<C> {
    pub fn from_coeffs(field: &Field, mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly {
            field: field.clone(),
            coeffs,
        }
    }
    pub fn zero(field: &Field) -> Self {
        Self::from_coeffs(field, Vec::new())
    }
    pub fn one(field: &Field) -> Self {
        Self::constant(C::one(field))
    }
    pub fn constant(c: C) -> Self {
        let field = c.field().clone();
        Self::from_coeffs(&field, vec![c])
    }
    pub fn t(field: &Field) -> Self {
        Self::from_coeffs(field, vec![C::zero(field), C::one(field)])
    }
    pub fn t_minus_theta(field: &Field) -> Self {
        Self::from_coeffs(field, vec![C::theta(field).negate(), C::one(field)])
    }
    /// Embeds a polynomial with F_q coefficients.
    pub fn from_tpoly(p: &TPoly) -> Self {
        let f = p.field();
        Self::from_coeffs(f, p.coeffs().iter().map(|&c| C::from_scalar(f, c)).collect())
    }
    /// f(θ) read with θ as a constant in t.
    pub fn from_theta_const(p: ThetaPoly) -> Self {
        Self::constant(C::from_theta(p))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }
    pub fn coeff(&self, k: usize) -> C {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| C::zero(&self.field))
    }
    pub fn deg_t(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_coeffs(&self.field, self.coeffs.iter().map(|a| a.times(c)).collect())
    }
    pub fn scale_scalar(&self, c: Scalar) -> Self {
        Self::from_coeffs(&self.field, self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    pub fn twist(&self, n: u32) -> Self {
        if n == 0 {
            return self.clone();
        }
        Self::from_coeffs(&self.field, self.coeffs.iter().map(|a| a.twist(n)).collect())
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut acc = Self::one(&self.field);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn mul_tpoly(&self, p: &TPoly) -> Self {
        if self.is_zero() || p.is_zero() {
            return Self::zero(&self.field);
        }
        let mut out = vec![C::zero(&self.field); self.coeffs.len() + p.coeffs().len() - 1];
        for (j, &c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, a) in self.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.scale(c));
            }
        }
        Self::from_coeffs(&self.field, out)
    }

    /// Exact division by a polynomial in F_q[t]; None if a remainder is left.
    pub fn div_exact_tpoly(&self, d: &TPoly) -> Option<Self> {
        let dd = d.degree()?;
        let f = &self.field;
        let lead_inv = f.inv(d.leading()).ok()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return self.is_zero().then(|| self.clone());
        }
        let mut quo = vec![C::zero(f); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = r[k + dd].scale(lead_inv);
            if !c.is_zero() {
                for (i, &di) in d.coeffs().iter().enumerate() {
                    if !di.is_zero() {
                        r[k + i] = r[k + i].minus(&c.scale(di));
                    }
                }
            }
            quo[k] = c;
        }
        r[..dd]
            .iter()
            .all(|c| c.is_zero())
            .then(|| Self::from_coeffs(f, quo))
    }

    /// One synthetic division by (t - θ): (quotient, remainder).
    fn div_t_minus_theta(coeffs: &[C], field: &Field) -> (Vec<C>, C) {
        if coeffs.is_empty() {
            return (Vec::new(), C::zero(field));
        }
        let n = coeffs.len() - 1;
        let mut quo = vec![C::zero(field); n];
        let mut carry = coeffs[n].clone();
        for k in (0..n).rev() {
            quo[k] = carry.clone();
            carry = coeffs[k].plus(&carry.times_theta());
        }
        (quo, carry)
    }

    /// f = g·(t−θ)^e + Σ_{j<e} a_j (t−θ)^j; returns (g, [a_0, …, a_{e−1}]).
    pub fn split_tm_theta(&self, e: usize) -> (Self, Vec<C>) {
        let mut cur = self.coeffs.clone();
        let mut digits = Vec::with_capacity(e);
        for _ in 0..e {
            let (q, r) = Self::div_t_minus_theta(&cur, &self.field);
            digits.push(r);
            cur = q;
        }
        (Self::from_coeffs(&self.field, cur), digits)
    }

    /// (g, γ) with f = g·(t−θ)^e + γ and deg_t γ < e.
    pub fn divrem_tm_theta(&self, e: usize) -> (Self, Self) {
        let (g, digits) = self.split_tm_theta(e);
        (g, Self::from_expansion(&self.field, &digits))
    }

    /// Coefficients a_j with f = Σ a_j (t−θ)^j.
    pub fn expand_tm_theta(&self) -> Vec<C> {
        let len = self.coeffs.len();
        self.split_tm_theta(len).1
    }

    /// Σ a_j (t−θ)^j, by Horner.
    pub fn from_expansion(field: &Field, a: &[C]) -> Self {
        let tm = Self::t_minus_theta(field);
        let mut acc = Self::zero(field);
        for c in a.iter().rev() {
            acc = &(&acc * &tm) + &Self::constant(c.clone());
        }
        acc
    }

    /// Coefficientwise conversion into another coefficient ring.
    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> BiPoly<D> {
        BiPoly::from_coeffs(&self.field, self.coeffs.iter().map(f).collect())
    }

    /// Some(f) with coefficients in A, if every coefficient is integral.
    pub fn as_integral(&self) -> Option<BiPoly<ThetaPoly>> {
        let cs: Option<Vec<ThetaPoly>> = self.coeffs.iter().map(|c| c.as_theta()).collect();
        Some(BiPoly::from_coeffs(&self.field, cs?))
    }
}

impl BiPoly<ThetaPoly> {
    pub fn deg_theta(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(|c| c.degree()).max()
    }

    /// θ-major view: entry i is the F_q[t]-coefficient of θ^i.
    pub fn theta_major(&self) -> Vec<TPoly> {
        let dt = self.deg_theta().map_or(0, |d| d + 1);
        (0..dt)
            .map(|i| {
                TPoly::from_coeffs(&self.field, self.coeffs.iter().map(|c| c.coeff(i)).collect())
            })
            .collect()
    }

    /// Substitutes θ = t, giving an element of F_q[t].
    pub fn at_theta_eq_t(&self) -> TPoly {
        let mut acc = TPoly::zero(&self.field);
        for (k, c) in self.coeffs.iter().enumerate() {
            acc = &acc + &c.rename::<super::poly::T>().shift(k);
        }
        acc
    }

    pub fn to_rational(&self) -> BiPoly<RatFrac> {
        self.map(|c| RatFrac::from_poly(c.clone()))
    }

    /// Constant-in-θ polynomials read as elements of F_q[t].
    pub fn as_tpoly(&self) -> Option<TPoly> {
        let cs: Option<Vec<Scalar>> = self
            .coeffs
            .iter()
            .map(|c| c.is_constant().then(|| c.coeff(0)))
            .collect();
        Some(TPoly::from_coeffs(&self.field, cs?))
    }
}

impl<C: Coeff> fmt::Display for BiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            let cs = c.to_string();
            parts.push(if mono.is_empty() {
                cs
            } else if cs == "1" {
                mono
            } else if c.is_compound() {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            });
        }
        f.write_str(&parts.join(" + "))
    }
}

impl<'a, C: Coeff> Add<&'a BiPoly<C>> for &'a BiPoly<C> {
    type Output = BiPoly<C>;
    fn add(self, rhs: &'a BiPoly<C>) -> BiPoly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n)
            .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        BiPoly::from_coeffs(&self.field, v)
    }
}

impl<'a, C: Coeff> Sub<&'a BiPoly<C>> for &'a BiPoly<C> {
    type Output = BiPoly<C>;
    fn sub(self, rhs: &'a BiPoly<C>) -> BiPoly<C> {
        self + &(-rhs)
    }
}

impl<C: Coeff> Neg for &BiPoly<C> {
    type Output = BiPoly<C>;
    fn neg(self) -> BiPoly<C> {
        BiPoly::from_coeffs(&self.field, self.coeffs.iter().map(|c| c.negate()).collect())
    }
}

impl<'a, C: Coeff> Mul<&'a BiPoly<C>> for &'a BiPoly<C> {
    type Output = BiPoly<C>;
    fn mul(self, rhs: &'a BiPoly<C>) -> BiPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero(&self.field);
        }
        let mut out = vec![C::zero(&self.field); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].plus(&a.times(b));
                }
            }
        }
        BiPoly::from_coeffs(&self.field, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldSpec;

    type B = BiPoly<ThetaPoly>;

    fn t_pow(f: &Field, k: usize) -> B {
        B::from_tpoly(&TPoly::monomial(f, Scalar::ONE, k))
    }

    #[test]
    fn divrem_examples() {
        let f = FieldSpec::prime(3).unwrap();
        let tm = B::t_minus_theta(&f);
        let (g, r) = (&tm * &tm).divrem_tm_theta(2);
        assert_eq!((g, r), (B::one(&f), B::zero(&f)));
        let (g, r) = B::t(&f).divrem_tm_theta(1);
        assert_eq!(g, B::one(&f));
        assert_eq!(r, B::from_theta_const(ThetaPoly::var(&f)));
        let (g, r) = t_pow(&f, 2).divrem_tm_theta(1);
        assert_eq!(g, &B::t(&f) + &B::from_theta_const(ThetaPoly::var(&f)));
        assert_eq!(r, B::from_theta_const(ThetaPoly::from_ints(&f, &[0, 0, 1])));
    }

    #[test]
    fn expand_examples() {
        let f = FieldSpec::prime(3).unwrap();
        let th = |v: &[i64]| ThetaPoly::from_ints(&f, v);
        assert_eq!(B::t(&f).expand_tm_theta(), vec![th(&[0, 1]), th(&[1])]);
        assert_eq!(B::one(&f).expand_tm_theta(), vec![th(&[1])]);
        assert_eq!(
            t_pow(&f, 2).expand_tm_theta(),
            vec![th(&[0, 0, 1]), th(&[0, 2]), th(&[1])]
        );
        let f2 = FieldSpec::prime(2).unwrap();
        let e = t_pow(&f2, 2).expand_tm_theta();
        assert!(e[1].is_zero());
    }

    #[test]
    fn twist_of_linear() {
        let f = FieldSpec::prime(2).unwrap();
        let tm = B::t_minus_theta(&f);
        let expect = B::from_coeffs(&f, vec![ThetaPoly::from_ints(&f, &[0, 0, 1]), ThetaPoly::one(&f)]);
        assert_eq!(tm.twist(1), expect);
        assert_eq!(tm.twist(0), tm);
    }

    #[test]
    fn tpoly_division_and_views() {
        let f = FieldSpec::prime(3).unwrap();
        let a = B::from_coeffs(&f, vec![ThetaPoly::from_ints(&f, &[1, 2]), ThetaPoly::from_ints(&f, &[0, 0, 1])]);
        let d = TPoly::from_ints(&f, &[2, 0, 1, 1]);
        let prod = a.mul_tpoly(&d);
        assert_eq!(prod.div_exact_tpoly(&d), Some(a.clone()));
        assert_eq!(a.theta_major().len(), 3);
        assert_eq!(
            a.at_theta_eq_t(),
            TPoly::from_ints(&f, &[1, 2, 0, 1])
        );
        assert!(a.div_exact_tpoly(&d).is_none());
    }

    #[test]
    fn rendering() {
        let f = FieldSpec::prime(3).unwrap();
        let h3 = B::from_coeffs(
            &f,
            vec![ThetaPoly::from_ints(&f, &[0, 0, 0, 2]), ThetaPoly::from_ints(&f, &[2]), ThetaPoly::zero(&f), ThetaPoly::from_ints(&f, &[2])],
        );
        assert_eq!(h3.to_string(), "2*t^3 + 2*t + 2*θ^3");
        assert_eq!(B::t_minus_theta(&f).to_string(), "t + 2*θ");
    }
}
