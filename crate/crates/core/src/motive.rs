//! Frobenius modules attached to (s, Q) and the σ-reduction that turns them
//! into a t-module with explicit points.
//!
//! Block ℓ (1-based) of the σ-basis is (t−θ)^{w_ℓ−1}m_ℓ, …, m_ℓ with
//! w_ℓ = s_ℓ + … + s_r. The relation used throughout is
//! σm_ℓ = (t−θ)^{w_ℓ}m_ℓ + Q_{ℓ−1}^{(−1)}(t−θ)^{w_{ℓ−1}}m_{ℓ−1};
//! rewriting it with only forward twists gives the telescoped terms below.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};

use crate::algebra::{BiPoly, Coeff, Field, RatFrac, Scalar, TPoly, ThetaPoly};
use crate::carlitz::Carlitz;
use crate::error::{Error, Result};
use crate::tmodule::{PointVec, TModule, TwistedMatrix};

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Mzv,
    Cmpl,
}

#[derive(Clone, Debug)]
pub struct MotiveSpec<C: Coeff> {
    field: Field,
    s: Vec<u32>,
    q: Vec<BiPoly<C>>,
    mode: Mode,
    weights: Vec<usize>,
    offsets: Vec<usize>,
    budget: usize,
}

/// σ^level · coeff · m_index, with index 1-based.
#[derive(Clone, Debug, PartialEq)]
pub struct Term<C: Coeff> {
    pub level: u32,
    pub coeff: BiPoly<C>,
    pub index: usize,
}

impl<C: Coeff> Term<C> {
    pub fn new(level: u32, coeff: BiPoly<C>, index: usize) -> Self {
        Term {
            level,
            coeff,
            index,
        }
    }
}

/// Ordered pairs (ℓ, j) standing for (t−θ)^j m_ℓ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaBasis {
    pairs: Vec<(usize, usize)>,
    lookup: HashMap<(usize, usize), usize>,
}

impl SigmaBasis {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
    pub fn pair(&self, i: usize) -> (usize, usize) {
        self.pairs[i]
    }
    pub fn index(&self, l: usize, j: usize) -> Option<usize> {
        self.lookup.get(&(l, j)).copied()
    }
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PhiEntry<C: Coeff> {
    Zero,
    One,
    /// (t−θ)^e.
    Power(usize),
    /// Q^{(−1)}(t−θ)^e; Q is stored untwisted.
    TwistedBelow { q: BiPoly<C>, power: usize },
}

/// Lower bidiagonal matrix of Φ (size r+1) or Φ′ (size r).
#[derive(Clone, Debug)]
pub struct PhiMatrix<C: Coeff> {
    size: usize,
    diag: Vec<PhiEntry<C>>,
    // entry (i+1, i)
    sub: Vec<PhiEntry<C>>,
    pub inverse_twisted: bool,
}

impl<C: Coeff> PhiMatrix<C> {
    pub fn size(&self) -> usize {
        self.size
    }
    pub fn entry(&self, i: usize, j: usize) -> PhiEntry<C> {
        if i == j {
            self.diag[i].clone()
        } else if i == j + 1 {
            self.sub[j].clone()
        } else {
            PhiEntry::Zero
        }
    }
    /// Exponent e with det = (t−θ)^e.
    pub fn det_power(&self) -> usize {
        self.diag
            .iter()
            .map(|e| match e {
                PhiEntry::Power(k) => *k,
                _ => 0,
            })
            .sum()
    }
}

impl<C: Coeff> MotiveSpec<C> {
    fn build(field: &Field, s: &[u32], q: Vec<BiPoly<C>>, mode: Mode) -> Result<Self> {
        if s.is_empty() || s.contains(&0) {
            return Err(Error::InvalidTuple(format!("{s:?}")));
        }
        let r = s.len();
        let mut weights = vec![0usize; r];
        let mut acc = 0usize;
        for l in (0..r).rev() {
            acc += s[l] as usize;
            weights[l] = acc;
        }
        let mut offsets = Vec::with_capacity(r);
        let mut off = 0;
        for &w in &weights {
            offsets.push(off);
            off += w;
        }
        Ok(MotiveSpec {
            field: field.clone(),
            s: s.to_vec(),
            q,
            mode,
            weights,
            offsets,
            budget: DEFAULT_BUDGET,
        })
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn s(&self) -> &[u32] {
        &self.s
    }
    pub fn depth(&self) -> usize {
        self.s.len()
    }
    pub fn mode(&self) -> Mode {
        self.mode
    }
    pub fn q_poly(&self, l: usize) -> &BiPoly<C> {
        &self.q[l - 1]
    }
    /// w_ℓ = s_ℓ + … + s_r.
    pub fn suffix_weight(&self, l: usize) -> usize {
        self.weights[l - 1]
    }
    pub fn dimension(&self) -> usize {
        self.weights.iter().sum()
    }
    /// Index range of block ℓ.
    pub fn block(&self, l: usize) -> std::ops::Range<usize> {
        self.offsets[l - 1]..self.offsets[l - 1] + self.weights[l - 1]
    }

    fn position(&self, l0: usize, j: usize) -> usize {
        self.offsets[l0] + self.weights[l0] - 1 - j
    }

    pub fn sigma_basis(&self) -> SigmaBasis {
        let mut pairs = Vec::with_capacity(self.dimension());
        for (l0, &w) in self.weights.iter().enumerate() {
            for j in (0..w).rev() {
                pairs.push((l0 + 1, j));
            }
        }
        let lookup = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        SigmaBasis { pairs, lookup }
    }

    pub fn build_phi(&self) -> PhiMatrix<C> {
        let r = self.depth();
        let mut diag: Vec<PhiEntry<C>> = self.weights.iter().map(|&w| PhiEntry::Power(w)).collect();
        diag.push(PhiEntry::One);
        let sub = (0..r)
            .map(|l0| PhiEntry::TwistedBelow {
                q: self.q[l0].clone(),
                power: self.weights[l0],
            })
            .collect();
        PhiMatrix {
            size: r + 1,
            diag,
            sub,
            inverse_twisted: true,
        }
    }

    pub fn build_phi_prime(&self) -> PhiMatrix<C> {
        let mut m = self.build_phi();
        m.size -= 1;
        m.diag.pop();
        m.sub.pop();
        m
    }

    /// g(t−θ)^{w_ℓ}m_ℓ rewritten as σg^{(1)}m_ℓ + Σ_i (−1)^i σ g^{(1)}β_1⋯β_i m_{ℓ−i}
    /// with β_i = Q_{ℓ−i}.
    pub fn telescope_expand(&self, g: &BiPoly<C>, l: usize) -> Vec<Term<C>> {
        let g1 = g.twist(1);
        let mut out = vec![Term::new(1, g1.clone(), l)];
        let mut prod = g1;
        let minus_one = self.field.neg(Scalar::ONE);
        for i in 1..l {
            prod = (&prod * &self.q[l - i - 1]).scale_scalar(minus_one);
            out.push(Term::new(1, prod.clone(), l - i));
        }
        out
    }

    /// Runs the rewrite on the seeds; returns finished contributions keyed by
    /// (basis index, τ-level). With `merge_levels` all levels collapse to 0.
    fn reduce(&self, seeds: Vec<Term<C>>, merge_levels: bool) -> Result<BTreeMap<(usize, u32), C>> {
        let mut pending: BTreeMap<(Reverse<usize>, u32), BiPoly<C>> = BTreeMap::new();
        let push = |pending: &mut BTreeMap<(Reverse<usize>, u32), BiPoly<C>>, l0: usize, lvl: u32, f: BiPoly<C>| {
            if f.is_zero() {
                return;
            }
            let lvl = if merge_levels { 0 } else { lvl };
            match pending.get_mut(&(Reverse(l0), lvl)) {
                Some(slot) => *slot = &*slot + &f,
                None => {
                    pending.insert((Reverse(l0), lvl), f);
                }
            }
        };
        for t in seeds {
            if t.index == 0 || t.index > self.depth() {
                return Err(Error::InvalidTuple(format!("term index {}", t.index)));
            }
            push(&mut pending, t.index - 1, t.level, t.coeff);
        }
        let mut out: BTreeMap<(usize, u32), C> = BTreeMap::new();
        let emit = |out: &mut BTreeMap<(usize, u32), C>, pos: usize, lvl: u32, c: C| {
            if c.is_zero() {
                return;
            }
            let e = out.entry((pos, lvl)).or_insert_with(|| C::zero(&self.field));
            *e = e.plus(&c);
        };
        let minus_one = self.field.neg(Scalar::ONE);
        let mut steps = 0usize;
        while let Some(((Reverse(l0), lvl), f)) = pending.pop_first() {
            steps += 1;
            if steps > self.budget {
                return Err(Error::Budget(self.budget));
            }
            if f.is_zero() {
                continue;
            }
            let w = self.weights[l0];
            let (g, digits) = f.split_tm_theta(w);
            for (j, c) in digits.into_iter().enumerate() {
                emit(&mut out, self.position(l0, j), lvl, c);
            }
            if g.is_zero() {
                continue;
            }
            let g1 = g.twist(1);
            let mut prod = g1.clone();
            push(&mut pending, l0, lvl + 1, g1);
            for i in 1..=l0 {
                prod = (&prod * &self.q[l0 - i]).scale_scalar(minus_one);
                push(&mut pending, l0 - i, lvl + 1, prod.clone());
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Δ(Σ σ^n f m_ℓ) ∈ E′.
    pub fn reduce_point(&self, seeds: Vec<Term<C>>) -> Result<PointVec<C>> {
        let contrib = self.reduce(seeds, true)?;
        let mut v = vec![C::zero(&self.field); self.dimension()];
        for ((pos, _), c) in contrib {
            v[pos] = v[pos].plus(&c);
        }
        Ok(PointVec::new(v))
    }

    /// ρ_t, column by column.
    pub fn reduce_operator(&self) -> Result<TwistedMatrix<C>> {
        let d = self.dimension();
        let f = &self.field;
        let mut m = TwistedMatrix::zero(f, d);
        for (l0, &w) in self.weights.iter().enumerate() {
            for j in 0..w {
                let col = self.position(l0, j);
                m.add_entry(col, col, 0, C::theta(f));
                if j + 1 < w {
                    m.add_entry(self.position(l0, j + 1), col, 0, C::one(f));
                }
            }
            let top = self.position(l0, w - 1);
            let seeds = self.telescope_expand(&BiPoly::one(f), l0 + 1);
            for ((pos, lvl), c) in self.reduce(seeds, false)? {
                m.add_entry(pos, top, lvl, c);
            }
        }
        if self.mode == Mode::Mzv {
            for i in 0..d {
                for (j, tp) in m.row(i) {
                    if tp.terms().values().any(|c| c.as_theta().is_none()) {
                        return Err(Error::NotIntegral(format!("ρ_t entry ({i}, {j}) = {tp}")));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn t_module(&self) -> Result<TModule<C>> {
        Ok(TModule::new(self.reduce_operator()?))
    }

    /// Seeds of v_s: σQ_r m_r and (−1)^i σQ_rβ_1⋯β_i m_{r−i}.
    pub fn v_seeds(&self) -> Vec<Term<C>> {
        let r = self.depth();
        let qr = self.q[r - 1].clone();
        let mut out = vec![Term::new(1, qr.clone(), r)];
        let minus_one = self.field.neg(Scalar::ONE);
        let mut prod = qr;
        for i in 1..r {
            prod = (&prod * &self.q[r - i - 1]).scale_scalar(minus_one);
            out.push(Term::new(1, prod.clone(), r - i));
        }
        out
    }

    pub fn special_point_v(&self) -> Result<PointVec<C>> {
        let v = self.reduce_point(self.v_seeds())?;
        self.check_integral(&v)?;
        Ok(v)
    }

    /// Δ(h^{(−1)}(t−θ)^w m_1) = Δ(σ h m_1).
    pub fn special_point_u(&self, h: &BiPoly<C>) -> Result<PointVec<C>> {
        let u = self.reduce_point(vec![Term::new(1, h.clone(), 1)])?;
        self.check_integral(&u)?;
        Ok(u)
    }

    fn check_integral(&self, v: &PointVec<C>) -> Result<()> {
        if self.mode == Mode::Mzv {
            if let Some(c) = v.coords().iter().find(|c| c.as_theta().is_none()) {
                return Err(Error::NotIntegral(format!("point coordinate {c}")));
            }
        }
        Ok(())
    }
}

impl MotiveSpec<ThetaPoly> {
    /// Q_i = H_{s_i − 1}.
    pub fn mzv(carlitz: &Carlitz, s: &[u32]) -> Result<Self> {
        let q = s
            .iter()
            .map(|&si| carlitz.anderson_thakur(si.max(1) as usize - 1))
            .collect::<Result<Vec<_>>>()?;
        Self::build(carlitz.field(), s, q, Mode::Mzv)
    }
}

impl MotiveSpec<RatFrac> {
    /// The MZV data carried over k, so that integrality becomes a checked
    /// property instead of a structural one.
    pub fn mzv_over_k(carlitz: &Carlitz, s: &[u32]) -> Result<Self> {
        let q = s
            .iter()
            .map(|&si| Ok(carlitz.anderson_thakur(si.max(1) as usize - 1)?.to_rational()))
            .collect::<Result<Vec<_>>>()?;
        Self::build(carlitz.field(), s, q, Mode::Mzv)
    }

    /// Q_i = u_i, constants in t.
    pub fn cmpl(field: &Field, s: &[u32], u: &[RatFrac]) -> Result<Self> {
        if u.len() != s.len() {
            return Err(Error::Dimension(s.len(), u.len()));
        }
        if let Some(i) = u.iter().position(|x| x.is_zero()) {
            return Err(Error::ZeroCoordinate(i + 1));
        }
        let q = u.iter().map(|x| BiPoly::constant(x.clone())).collect();
        Self::build(field, s, q, Mode::Cmpl)
    }
}

/// Z_n = Σ_i [h_{n,i}]_n (0,…,0,θ^i)ᵀ where H_{n−1} = Σ_i h_{n,i}(t)θ^i,
/// computed in C^{⊗n} without the reduction engine.
pub fn depth1_special_point(carlitz: &Carlitz, n: usize) -> Result<PointVec<ThetaPoly>> {
    let f = carlitz.field();
    let e = TModule::new(TwistedMatrix::<ThetaPoly>::carlitz_tensor_power(f, n));
    let mut acc = PointVec::zero(f, n);
    for (i, h) in carlitz.h_theta_major(n - 1)?.iter().enumerate() {
        if h.is_zero() {
            continue;
        }
        let mut coords = vec![ThetaPoly::zero(f); n];
        coords[n - 1] = ThetaPoly::monomial(f, Scalar::ONE, i);
        acc = acc.add(&e.rho_poly_apply(h, &PointVec::new(coords))?);
    }
    Ok(acc)
}

/// Embeds a polynomial in F_q[t] as a t-polynomial over C.
pub fn tpoly_coeff<C: Coeff>(p: &TPoly) -> BiPoly<C> {
    BiPoly::from_tpoly(p)
}
