//! Matrices over the twisted ring k[τ] (τc = c^q τ) and their action on
//! points of G_a^d.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::algebra::{Coeff, Field, Scalar, TPoly, ThetaPoly};
use crate::error::{Error, Result};

/// Σ c_n τ^n with no zero coefficients stored.
#[derive(Clone, PartialEq, Debug)]
pub struct TwistedPoly<C> {
    terms: BTreeMap<u32, C>,
}

impl<C: Coeff> Default for TwistedPoly<C> {
    fn default() -> Self {
        TwistedPoly {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Coeff> TwistedPoly<C> {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn monomial(c: C, n: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(n, c);
        p
    }
    pub fn terms(&self) -> &BTreeMap<u32, C> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn coeff(&self, n: u32) -> Option<&C> {
        self.terms.get(&n)
    }
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, n: u32, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&n) {
            Some(slot) => {
                let s = slot.plus(&c);
                if s.is_zero() {
                    self.terms.remove(&n);
                } else {
                    *slot = s;
                }
            }
            None => {
                self.terms.insert(n, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&n, c) in &other.terms {
            out.add_term(n, c.clone());
        }
        out
    }

    /// (c τ^n)(c' τ^m) = c·c'^{q^n} τ^{n+m}.
    pub fn ore_mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&n, c) in &self.terms {
            for (&m, d) in &other.terms {
                out.add_term(n + m, c.times(&d.twist(n)));
            }
        }
        out
    }

    /// Σ c_n x^{q^n}.
    pub fn apply_to(&self, x: &C) -> C {
        let mut acc = C::zero(x.field());
        for (&n, c) in &self.terms {
            acc = acc.plus(&c.times(&x.twist(n)));
        }
        acc
    }
}

impl<C: Coeff> fmt::Display for TwistedPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for (&n, c) in self.terms.iter().rev() {
            let cs = c.to_string();
            let mono = match n {
                0 => String::new(),
                1 => "τ".to_string(),
                _ => format!("τ^{n}"),
            };
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

#[derive(Clone, PartialEq, Debug)]
pub struct PointVec<C> {
    coords: Vec<C>,
}

impl<C: Coeff> PointVec<C> {
    pub fn new(coords: Vec<C>) -> Self {
        PointVec { coords }
    }
    pub fn zero(field: &Field, d: usize) -> Self {
        PointVec {
            coords: vec![C::zero(field); d],
        }
    }
    pub fn unit(field: &Field, d: usize, i: usize) -> Self {
        let mut v = Self::zero(field, d);
        v.coords[i] = C::one(field);
        v
    }
    pub fn coords(&self) -> &[C] {
        &self.coords
    }
    pub fn dim(&self) -> usize {
        self.coords.len()
    }
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
    pub fn add(&self, other: &Self) -> Self {
        PointVec::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.plus(b))
                .collect(),
        )
    }
    pub fn sub(&self, other: &Self) -> Self {
        PointVec::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.minus(b))
                .collect(),
        )
    }
    pub fn scale(&self, c: Scalar) -> Self {
        PointVec::new(self.coords.iter().map(|a| a.scale(c)).collect())
    }
    /// Coordinates in the half-open index range.
    pub fn slice_is_zero(&self, range: std::ops::Range<usize>) -> bool {
        self.coords[range].iter().all(|c| c.is_zero())
    }
}

impl PointVec<ThetaPoly> {
    pub fn max_theta_degree(&self) -> Option<usize> {
        self.coords.iter().filter_map(|c| c.degree()).max()
    }
}

impl<C: Coeff> fmt::Display for PointVec<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})ᵀ", parts.join(", "))
    }
}

/// Square matrix over k[τ], stored by rows as sparse maps.
#[derive(Clone, PartialEq, Debug)]
pub struct TwistedMatrix<C> {
    field: Field,
    rows: Vec<BTreeMap<usize, TwistedPoly<C>>>,
}

impl<C: Coeff> TwistedMatrix<C> {
    pub fn zero(field: &Field, d: usize) -> Self {
        TwistedMatrix {
            field: field.clone(),
            rows: vec![BTreeMap::new(); d],
        }
    }
    pub fn identity(field: &Field, d: usize) -> Self {
        let mut m = Self::zero(field, d);
        for i in 0..d {
            m.add_entry(i, i, 0, C::one(field));
        }
        m
    }
    /// θI_d + N_d + E_d τ, the t-action on the d-th tensor power of Carlitz.
    pub fn carlitz_tensor_power(field: &Field, d: usize) -> Self {
        let mut m = Self::zero(field, d);
        for i in 0..d {
            m.add_entry(i, i, 0, C::theta(field));
            if i + 1 < d {
                m.add_entry(i, i + 1, 0, C::one(field));
            }
        }
        m.add_entry(d - 1, 0, 1, C::one(field));
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn add_entry(&mut self, i: usize, j: usize, n: u32, c: C) {
        let e = self.rows[i].entry(j).or_default();
        e.add_term(n, c);
        if e.is_zero() {
            self.rows[i].remove(&j);
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> TwistedPoly<C> {
        self.rows[i].get(&j).cloned().unwrap_or_default()
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, TwistedPoly<C>> {
        &self.rows[i]
    }

    /// (Mv)_i = Σ_j Σ_n c_n v_j^{q^n}.
    pub fn apply(&self, v: &PointVec<C>) -> Result<PointVec<C>> {
        if v.dim() != self.dim() {
            return Err(Error::Dimension(self.dim(), v.dim()));
        }
        let mut twists: HashMap<(usize, u32), C> = HashMap::new();
        let mut out = Vec::with_capacity(self.dim());
        for row in &self.rows {
            let mut acc = C::zero(&self.field);
            for (&j, tp) in row {
                let x = &v.coords[j];
                if x.is_zero() {
                    continue;
                }
                for (&n, c) in tp.terms() {
                    let xt = if n == 0 {
                        x.clone()
                    } else {
                        twists.entry((j, n)).or_insert_with(|| x.twist(n)).clone()
                    };
                    acc = acc.plus(&c.times(&xt));
                }
            }
            out.push(acc);
        }
        Ok(PointVec::new(out))
    }

    /// Entries with all τ-terms dropped.
    pub fn differential(&self) -> Vec<Vec<C>> {
        let d = self.dim();
        let mut m = vec![vec![C::zero(&self.field); d]; d];
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, tp) in row {
                if let Some(c) = tp.coeff(0) {
                    m[i][j] = c.clone();
                }
            }
        }
        m
    }

    pub fn render_rows(&self) -> Vec<Vec<String>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.entry(i, j).to_string()).collect())
            .collect()
    }
}

impl<C: Coeff> fmt::Display for TwistedMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.render_rows();
        let d = self.dim();
        let widths: Vec<usize> = (0..d)
            .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(1))
            .collect();
        for r in rows {
            let cells: Vec<String> = r
                .iter()
                .zip(&widths)
                .map(|(s, &w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
                .collect();
            writeln!(f, "[ {} ]", cells.join("  "))?;
        }
        Ok(())
    }
}

/// A t-module given by ρ_t; `integral` records whether entries lie in A[τ].
#[derive(Clone, Debug)]
pub struct TModule<C> {
    pub rho_t: TwistedMatrix<C>,
    pub integral: bool,
}

impl<C: Coeff> TModule<C> {
    pub fn new(rho_t: TwistedMatrix<C>) -> Self {
        let integral = rho_t
            .rows
            .iter()
            .all(|r| r.values().all(|tp| tp.terms().values().all(|c| c.as_theta().is_some())));
        TModule { rho_t, integral }
    }

    pub fn dim(&self) -> usize {
        self.rho_t.dim()
    }
    pub fn field(&self) -> &Field {
        self.rho_t.field()
    }

    pub fn apply_t(&self, v: &PointVec<C>) -> PointVec<C> {
        self.rho_t.apply(v).expect("dimension checked by caller")
    }

    /// ρ_a(v) = Σ a_i ρ_t^i(v).
    pub fn rho_poly_apply(&self, a: &TPoly, v: &PointVec<C>) -> Result<PointVec<C>> {
        if v.dim() != self.dim() {
            return Err(Error::Dimension(self.dim(), v.dim()));
        }
        let f = self.field().clone();
        let mut acc = PointVec::zero(&f, self.dim());
        if v.is_zero() {
            return Ok(acc);
        }
        let mut w = v.clone();
        let n = a.coeffs().len();
        for (i, &c) in a.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&w.scale(c));
            }
            if i + 1 < n {
                w = self.apply_t(&w);
            }
        }
        Ok(acc)
    }

    /// Applies Π f_i^{m_i} one factor at a time, stopping once the vector
    /// vanishes.
    pub fn apply_factored(&self, factors: &[(TPoly, u64)], v: &PointVec<C>) -> Result<PointVec<C>> {
        let mut w = v.clone();
        for (f, m) in factors {
            for _ in 0..*m {
                if w.is_zero() {
                    return Ok(w);
                }
                w = self.rho_poly_apply(f, &w)?;
            }
        }
        Ok(w)
    }

    /// (∂ρ_t − θI)^d = 0, checked by repeated squaring.
    pub fn nilpotent_check(&self) -> bool {
        let f = self.field().clone();
        let d = self.dim();
        let mut m = self.rho_t.differential();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = row[i].minus(&C::theta(&f));
        }
        let mut power = 1usize;
        while power < d {
            m = mat_mul(&f, &m, &m);
            power *= 2;
        }
        m.iter().all(|r| r.iter().all(|c| c.is_zero()))
    }
}

fn mat_mul<C: Coeff>(f: &Field, a: &[Vec<C>], b: &[Vec<C>]) -> Vec<Vec<C>> {
    let d = a.len();
    let mut out = vec![vec![C::zero(f); d]; d];
    for i in 0..d {
        for k in 0..d {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..d {
                if !b[k][j].is_zero() {
                    out[i][j] = out[i][j].plus(&a[i][k].times(&b[k][j]));
                }
            }
        }
    }
    out
}
