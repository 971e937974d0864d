//! Carlitz combinatorics: brackets, D_i, L_i, factorials, G_n, the
//! Anderson–Thakur polynomials H_n, and Bernoulli–Carlitz numbers.

use std::collections::BTreeMap;
use std::sync::RwLock;

use crate::algebra::{BiPoly, Field, RatFrac, Scalar, TPoly, ThetaPoly};
use crate::error::{Error, Result};

pub type AtPoly = BiPoly<ThetaPoly>;

/// Base-q digits of n, least significant first.
pub fn digits(n: u64, q: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n;
    while m > 0 {
        out.push(m % q);
        m /= q;
    }
    out
}

/// Append-only memo tables for one field.
pub struct Carlitz {
    field: Field,
    d: RwLock<Vec<ThetaPoly>>,
    h: RwLock<Vec<AtPoly>>,
    b: RwLock<Vec<RatFrac>>,
}

impl Carlitz {
    pub fn new(field: &Field) -> Self {
        Carlitz {
            field: field.clone(),
            d: RwLock::new(vec![ThetaPoly::one(field)]),
            h: RwLock::new(Vec::new()),
            b: RwLock::new(Vec::new()),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    /// [ℓ] = θ^{q^ℓ} − θ.
    pub fn bracket(&self, l: u32) -> ThetaPoly {
        ThetaPoly::binomial(&self.field, self.q().pow(l) as usize, 1)
    }

    /// D_i, via D_i = [i]·D_{i−1}^q.
    pub fn big_d(&self, i: usize) -> ThetaPoly {
        if let Some(v) = self.d.read().unwrap().get(i) {
            return v.clone();
        }
        let mut d = self.d.write().unwrap();
        while d.len() <= i {
            let k = d.len();
            let next = &self.bracket(k as u32) * &d[k - 1].frobenius(1);
            d.push(next);
        }
        d[i].clone()
    }

    /// L_i = ∏_{j=1}^{i} (θ − θ^{q^j}).
    pub fn big_l(&self, i: usize) -> ThetaPoly {
        let mut acc = ThetaPoly::one(&self.field);
        for j in 1..=i {
            acc = &acc * &ThetaPoly::binomial(&self.field, 1, self.q().pow(j as u32) as usize);
        }
        acc
    }

    /// Γ_m = ∏ D_i^{n_i} for the base-q digits n_i of m − 1.
    pub fn carlitz_gamma(&self, m: u64) -> ThetaPoly {
        assert!(m >= 1, "Carlitz factorial index starts at 1");
        let mut acc = ThetaPoly::one(&self.field);
        for (i, &n) in digits(m - 1, self.q()).iter().enumerate() {
            if n > 0 {
                acc = &acc * &self.big_d(i).pow(n);
            }
        }
        acc
    }

    pub fn gamma_ratio(&self, s: u64) -> RatFrac {
        RatFrac::new(self.carlitz_gamma(s + 1), self.carlitz_gamma(s)).unwrap()
    }

    /// G_n(θ) = ∏_{i=1}^{n} (t^{q^n} − θ^{q^i}).
    pub fn g_poly(&self, n: u32) -> AtPoly {
        let f = &self.field;
        let tq = AtPoly::from_tpoly(&TPoly::monomial(f, Scalar::ONE, self.q().pow(n) as usize));
        let mut acc = AtPoly::one(f);
        for i in 1..=n {
            let th = ThetaPoly::monomial(f, Scalar::ONE, self.q().pow(i) as usize);
            acc = &acc * &(&tq - &AtPoly::from_theta_const(th));
        }
        acc
    }

    fn d_at_t(&self, j: usize) -> TPoly {
        self.big_d(j).rename()
    }

    /// One step of the recurrence obtained from the generating function:
    /// H_n/Γ_{n+1}(t) = H_{n−1}/Γ_n(t) + Σ_{i≥1} G_i(θ)/D_i(t) · H_{n−q^i}/Γ_{n−q^i+1}(t).
    /// Every ratio of factorials is a product of D_j(t)^{±1}; the sum is put
    /// over a common denominator and divided out exactly.
    fn h_step(&self, n: usize, lower: &dyn Fn(usize) -> AtPoly) -> Result<AtPoly> {
        let f = &self.field;
        let q = self.q();
        if (n as u64) < q {
            return Ok(AtPoly::one(f));
        }
        let dig = |x: u64, len: usize| {
            let mut d = digits(x, q);
            d.resize(len, 0);
            d.into_iter().map(|v| v as i64).collect::<Vec<_>>()
        };
        let len = digits(n as u64, q).len() + 1;
        let dn = dig(n as u64, len);
        let mut terms: Vec<(Vec<i64>, AtPoly, usize)> = Vec::new();
        let e0: Vec<i64> = dn
            .iter()
            .zip(dig(n as u64 - 1, len))
            .map(|(a, b)| a - b)
            .collect();
        terms.push((e0, AtPoly::one(f), n - 1));
        let mut i = 1u32;
        while q.pow(i) <= n as u64 {
            let m = n - q.pow(i) as usize;
            let mut e: Vec<i64> = dn.iter().zip(dig(m as u64, len)).map(|(a, b)| a - b).collect();
            e[i as usize] -= 1;
            terms.push((e, self.g_poly(i), m));
            i += 1;
        }
        let den: Vec<i64> = (0..len)
            .map(|j| terms.iter().map(|t| (-t.0[j]).max(0)).max().unwrap_or(0))
            .collect();
        let mut l = TPoly::one(f);
        for (j, &k) in den.iter().enumerate() {
            if k > 0 {
                l = &l * &self.d_at_t(j).pow(k as u64);
            }
        }
        let mut sum = AtPoly::zero(f);
        for (e, g, m) in &terms {
            let mut mult = TPoly::one(f);
            for j in 0..len {
                let k = e[j] + den[j];
                if k > 0 {
                    mult = &mult * &self.d_at_t(j).pow(k as u64);
                }
            }
            let term = (g * &lower(*m)).mul_tpoly(&mult);
            sum = &sum + &term;
        }
        sum.div_exact_tpoly(&l)
            .ok_or_else(|| Error::NonPolynomial(format!("H_{n} has a denominator")))
    }

    /// H_n ∈ A[t].
    pub fn anderson_thakur(&self, n: usize) -> Result<AtPoly> {
        if let Some(v) = self.h.read().unwrap().get(n) {
            return Ok(v.clone());
        }
        let mut h = self.h.write().unwrap();
        while h.len() <= n {
            let k = h.len();
            let next = {
                let view: &Vec<AtPoly> = &h;
                self.h_step(k, &|m| view[m].clone())?
            };
            h.push(next);
        }
        Ok(h[n].clone())
    }

    /// Computed H_0, …, H_{k−1}.
    pub fn h_table(&self) -> Vec<AtPoly> {
        self.h.read().unwrap().clone()
    }

    /// Installs a previously saved prefix H_0..H_{k−1} after re-deriving the
    /// given indices from their predecessors. Returns false (and installs
    /// nothing) if any spot check fails.
    pub fn import_h(&self, table: Vec<AtPoly>, spot: &[usize]) -> Result<bool> {
        for &n in spot.iter().filter(|&&n| n < table.len()) {
            let again = self.h_step(n, &|m| table[m].clone())?;
            if again != table[n] {
                return Ok(false);
            }
        }
        let mut h = self.h.write().unwrap();
        if table.len() > h.len() {
            *h = table;
        }
        Ok(true)
    }

    /// b_n = BC(n)/Γ_{n+1}, the coefficients of z/exp_C(z).
    fn bc_series(&self, n: usize) -> RatFrac {
        if let Some(v) = self.b.read().unwrap().get(n) {
            return v.clone();
        }
        let mut b = self.b.write().unwrap();
        let f = &self.field;
        let q = self.q() as usize;
        while b.len() <= n {
            let k = b.len();
            if k == 0 {
                b.push(RatFrac::one(f));
                continue;
            }
            let mut acc = RatFrac::zero(f);
            let mut i = 1u32;
            while q.pow(i) - 1 <= k {
                let prev = &b[k - (q.pow(i) - 1)];
                if !prev.is_zero() {
                    let di = RatFrac::from_poly(self.big_d(i as usize));
                    acc = &acc + &prev.div(&di).unwrap();
                }
                i += 1;
            }
            b.push(-&acc);
        }
        b[n].clone()
    }

    pub fn bernoulli_carlitz(&self, n: usize) -> RatFrac {
        let b = self.bc_series(n);
        &b * &RatFrac::from_poly(self.carlitz_gamma(n as u64 + 1))
    }

    pub fn bc_denominator(&self, n: usize) -> ThetaPoly {
        self.bernoulli_carlitz(n).den().clone()
    }

    /// (Γ_{s+1}/Γ_s)·den BC(s) with θ replaced by t; must lie in F_q[t].
    pub fn depth_one_factor(&self, s: u64) -> Result<TPoly> {
        let r = &self.gamma_ratio(s) * &RatFrac::from_poly(self.bc_denominator(s as usize));
        r.as_poly()
            .map(|p| p.rename())
            .ok_or_else(|| Error::NonPolynomial(format!("depth-one factor for {s}: {r}")))
    }

    /// Coefficient table of H_n by θ-degree: H_{n} = Σ_i h_{n,i}(t) θ^i.
    pub fn h_theta_major(&self, n: usize) -> Result<Vec<TPoly>> {
        Ok(self.anderson_thakur(n)?.theta_major())
    }
}

/// Memo of Carlitz tables keyed by field.
pub struct CarlitzRegistry {
    inner: RwLock<BTreeMap<(u32, u32, Vec<u32>), std::sync::Arc<Carlitz>>>,
}

impl Default for CarlitzRegistry {
    fn default() -> Self {
        CarlitzRegistry {
            inner: RwLock::new(BTreeMap::new()),
        }
    }
}

impl CarlitzRegistry {
    pub fn get(&self, field: &Field) -> std::sync::Arc<Carlitz> {
        let key = (field.p(), field.e(), field.modulus().to_vec());
        if let Some(c) = self.inner.read().unwrap().get(&key) {
            return c.clone();
        }
        self.inner
            .write()
            .unwrap()
            .entry(key)
            .or_insert_with(|| std::sync::Arc::new(Carlitz::new(field)))
            .clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;

    fn c(q: u32) -> Carlitz {
        Carlitz::new(&FieldSpec::of_order(q).unwrap())
    }

    #[test]
    fn brackets_and_d() {
        let c3 = c(3);
        let f = c3.field().clone();
        assert_eq!(c3.bracket(1), ThetaPoly::from_ints(&f, &[0, -1, 0, 1]));
        let c2 = c(2);
        assert_eq!(c2.bracket(2).to_string(), "θ^4 + θ");
        assert!(c3.big_d(0).is_one());
        assert_eq!(c3.big_d(1), c3.bracket(1));
        let th = |k: usize| ThetaPoly::monomial(&f, Scalar::ONE, k);
        let d2 = &(&th(9) - &th(1)) * &(&th(9) - &th(3));
        assert_eq!(c3.big_d(2), d2);
        assert_eq!(c3.big_l(1), &th(1) - &th(3));
        assert_eq!(c3.big_l(2), &(&th(1) - &th(3)) * &(&th(1) - &th(9)));
    }

    #[test]
    fn factorials() {
        let c3 = c(3);
        assert!(c3.carlitz_gamma(1).is_one());
        assert!(c3.carlitz_gamma(3).is_one());
        assert_eq!(c3.carlitz_gamma(4), c3.big_d(1));
        // q−1 → q carries: Γ_{q+1}/Γ_q = D_1
        assert_eq!(c3.gamma_ratio(3).as_poly(), Some(c3.big_d(1)));
        assert!(c3.gamma_ratio(2).as_poly().unwrap().is_one());
        assert!(c3.gamma_ratio(4).as_poly().unwrap().is_one());
    }

    #[test]
    fn g_poly_shape() {
        let c3 = c(3);
        assert_eq!(c3.g_poly(0), AtPoly::one(c3.field()));
        assert_eq!(c3.g_poly(1).to_string(), "t^3 + 2*θ^3");
        assert_eq!(c3.g_poly(2).deg_t(), Some(18));
    }

    #[test]
    fn h_small_and_h3() {
        let c3 = c(3);
        for n in 0..3 {
            assert_eq!(c3.anderson_thakur(n).unwrap(), AtPoly::one(c3.field()));
        }
        let h3 = c3.anderson_thakur(3).unwrap();
        let f = c3.field();
        let e = h3.expand_tm_theta();
        assert_eq!(
            e,
            vec![
                ThetaPoly::from_ints(f, &[0, 2, 0, 1]),
                ThetaPoly::from_ints(f, &[2]),
                ThetaPoly::zero(f),
                ThetaPoly::from_ints(f, &[2]),
            ]
        );
    }

    #[test]
    fn h_theta_degree_bound() {
        for q in [2u32, 3, 4] {
            let cq = c(q);
            for n in 0..(3 * q as usize * q as usize) {
                let h = cq.anderson_thakur(n).unwrap();
                let d = h.deg_theta().unwrap();
                assert!(d as u64 * (q as u64 - 1) <= n as u64 * q as u64, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn bernoulli_carlitz_small() {
        let c3 = c(3);
        let f = c3.field().clone();
        assert_eq!(c3.bernoulli_carlitz(0), RatFrac::one(&f));
        assert!(c3.bernoulli_carlitz(1).is_zero());
        let expect = -&RatFrac::new(ThetaPoly::one(&f), c3.big_d(1)).unwrap();
        assert_eq!(c3.bernoulli_carlitz(2), expect);
        assert_eq!(c3.bc_denominator(2), c3.bracket(1));
        assert!(c3.bc_denominator(0).is_one());
        assert!(c3.bc_denominator(1).is_one());
    }

    #[test]
    fn import_spot_check() {
        let c3 = c(3);
        let mut t = Vec::new();
        for n in 0..12 {
            t.push(c3.anderson_thakur(n).unwrap());
        }
        let fresh = c(3);
        assert!(fresh.import_h(t.clone(), &[5, 11]).unwrap());
        assert_eq!(fresh.anderson_thakur(11).unwrap(), t[11]);
        let mut bad = t.clone();
        bad[9] = AtPoly::zero(c3.field());
        let other = c(3);
        assert!(!other.import_h(bad, &[9]).unwrap());
    }
}
