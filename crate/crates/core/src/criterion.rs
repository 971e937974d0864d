//! Decision procedures: Eulerian tests for MZVs and CMPLs, the bounded
//! zeta-like search, and suffix consistency of verdict tables.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::{Coeff, Field, IncrementalEchelon, Insertion, RatFrac, Scalar, TPoly, ThetaPoly};
use crate::carlitz::Carlitz;
use crate::error::{Error, Result};
use crate::motive::MotiveSpec;
use crate::tmodule::{PointVec, TModule};

/// w = p^ℓ · n · (q^h − 1) with p ∤ n and h maximal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDecomp {
    pub w: u64,
    pub l: u32,
    pub n: u64,
    pub h: u32,
}

impl WeightDecomp {
    /// (t^{q^h} − t, p^ℓ).
    pub fn factor(&self, field: &Field) -> (TPoly, u64) {
        let qh = (field.q() as usize).pow(self.h);
        (TPoly::binomial(field, qh, 1), (field.p() as u64).pow(self.l))
    }
}

pub fn decompose_weight(field: &Field, w: u64) -> Result<WeightDecomp> {
    let q = field.q() as u64;
    let p = field.p() as u64;
    if w == 0 || w % (q - 1) != 0 {
        return Err(Error::Divisibility { w, qm1: q - 1 });
    }
    // greatest h, which need not be reached by consecutive steps (q=2, w=7)
    let mut h = 1u32;
    let mut k = 2u32;
    while let Some(next) = q.checked_pow(k) {
        if next - 1 > w {
            break;
        }
        if w % (next - 1) == 0 {
            h = k;
        }
        k += 1;
    }
    let mut rest = w / (q.pow(h) - 1);
    let mut l = 0;
    while rest % p == 0 {
        rest /= p;
        l += 1;
    }
    Ok(WeightDecomp { w, l, n: rest, h })
}

/// One stage of an annihilator, applied as base^exponent.
#[derive(Clone, Debug, PartialEq)]
pub struct Stage {
    /// Suffix weight this stage clears; None for the depth-one factor.
    pub weight: Option<u64>,
    pub decomp: Option<WeightDecomp>,
    pub base: TPoly,
    pub exponent: u64,
}

impl Stage {
    pub fn degree(&self) -> usize {
        self.base.degree().unwrap_or(0) * self.exponent as usize
    }
    pub fn expanded(&self) -> TPoly {
        self.base.pow(self.exponent)
    }
}

/// Stages in application order: stage i clears block r−i.
#[derive(Clone, Debug, PartialEq)]
pub struct AnnihilatorData {
    pub stages: Vec<Stage>,
}

impl AnnihilatorData {
    pub fn degree(&self) -> usize {
        self.stages.iter().map(Stage::degree).sum()
    }
    pub fn expanded(&self, field: &Field) -> TPoly {
        self.stages
            .iter()
            .fold(TPoly::one(field), |acc, s| &acc * &s.expanded())
    }
    pub fn factors(&self) -> Vec<(TPoly, u64)> {
        self.stages
            .iter()
            .map(|s| (s.base.clone(), s.exponent))
            .collect()
    }
    pub fn depth_one(&self) -> Option<&TPoly> {
        self.stages
            .first()
            .filter(|s| s.weight.is_none())
            .map(|s| &s.base)
    }
}

fn weight_stage(field: &Field, w: u64, strict: bool) -> Result<Stage> {
    match decompose_weight(field, w) {
        Ok(d) => {
            let (base, exponent) = d.factor(field);
            Ok(Stage {
                weight: Some(w),
                decomp: Some(d),
                base,
                exponent,
            })
        }
        Err(e) if strict => Err(e),
        // no torsion factor exists for this block
        Err(_) => Ok(Stage {
            weight: Some(w),
            decomp: None,
            base: TPoly::one(field),
            exponent: 1,
        }),
    }
}

fn suffix_weights(s: &[u32]) -> Vec<u64> {
    let r = s.len();
    (1..r)
        .map(|i| s[r - 1 - i..].iter().map(|&x| x as u64).sum())
        .collect()
}

fn check_divisible(field: &Field, s: &[u32]) -> Result<()> {
    let qm1 = field.q() as u64 - 1;
    match s.iter().find(|&&x| x as u64 % qm1 != 0) {
        Some(&x) => Err(Error::Divisibility { w: x as u64, qm1 }),
        None => Ok(()),
    }
}

/// Depth-one factor for s_r followed by (t^{q^{h_i}} − t)^{p^{ℓ_i}} for the
/// suffix weights w_1, …, w_{r−1}.
pub fn annihilator_mzv(carlitz: &Carlitz, s: &[u32]) -> Result<AnnihilatorData> {
    check_divisible(carlitz.field(), s)?;
    annihilator_mzv_unchecked(carlitz, s)
}

/// Same as [`annihilator_mzv`] but blocks with weight prime to q−1 get the
/// factor 1.
fn annihilator_mzv_unchecked(carlitz: &Carlitz, s: &[u32]) -> Result<AnnihilatorData> {
    let f = carlitz.field();
    let sr = *s.last().ok_or_else(|| Error::InvalidTuple("empty".into()))? as u64;
    let first = if sr % (f.q() as u64 - 1) == 0 {
        carlitz.depth_one_factor(sr)?
    } else {
        TPoly::one(f)
    };
    let mut stages = vec![Stage {
        weight: None,
        decomp: None,
        base: first,
        exponent: 1,
    }];
    for w in suffix_weights(s) {
        stages.push(weight_stage(f, w, false)?);
    }
    Ok(AnnihilatorData { stages })
}

/// Factors for w_0 = s_r, w_1, …, w_{r−1}; no Bernoulli–Carlitz part.
pub fn annihilator_cmpl(field: &Field, s: &[u32]) -> Result<AnnihilatorData> {
    check_divisible(field, s)?;
    let sr = *s.last().ok_or_else(|| Error::InvalidTuple("empty".into()))? as u64;
    let mut stages = vec![weight_stage(field, sr, true)?];
    for w in suffix_weights(s) {
        stages.push(weight_stage(field, w, true)?);
    }
    Ok(AnnihilatorData { stages })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub precheck: bool,
    pub primitive_reduction: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            precheck: true,
            primitive_reduction: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub q: u32,
    pub modulus: String,
    pub tuple: Vec<u32>,
    pub tested_tuple: Vec<u32>,
    pub weight: u64,
    pub depth: usize,
    pub eulerian: bool,
    pub precheck: Option<String>,
    pub annihilator_degree: usize,
    pub residual_zero: bool,
    pub elapsed_ms: u64,
    /// CMPL only: the point lies outside the region where convergence
    /// hypotheses were verified.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub conditional: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<String>>,
    /// Whether block r−i was zero after stage i, for the stages that ran.
    #[serde(skip)]
    pub stages_cleared: Vec<bool>,
}

impl Verdict {
    fn new(field: &Field, s: &[u32], tested: &[u32]) -> Self {
        Verdict {
            q: field.q(),
            modulus: field.modulus_string(),
            tuple: s.to_vec(),
            tested_tuple: tested.to_vec(),
            weight: s.iter().map(|&x| x as u64).sum(),
            depth: s.len(),
            eulerian: false,
            precheck: None,
            annihilator_degree: 0,
            residual_zero: false,
            elapsed_ms: 0,
            conditional: false,
            u: None,
            stages_cleared: Vec::new(),
        }
    }
}

fn validate(s: &[u32]) -> Result<()> {
    if s.is_empty() || s.contains(&0) {
        return Err(Error::InvalidTuple(format!("{s:?}")));
    }
    Ok(())
}

/// Divides out p while p divides every entry.
pub fn primitive_reduce(p: u32, s: &[u32]) -> Vec<u32> {
    let mut t = s.to_vec();
    while t.iter().all(|&x| x % p == 0) {
        t.iter_mut().for_each(|x| *x /= p);
    }
    t
}

fn precheck_reason(field: &Field, s: &[u32]) -> Option<String> {
    let qm1 = field.q() - 1;
    s.iter()
        .enumerate()
        .find(|(_, &x)| x % qm1 != 0)
        .map(|(i, &x)| format!("s_{} = {x} is not divisible by q-1 = {qm1}", i + 1))
}

/// Applies the stages in order. Stops as soon as the vector vanishes, or when
/// a stage leaves its block nonzero: in that case the suffix starting there is
/// not Eulerian, hence neither is s.
fn run_stages<C: Coeff>(
    motive: &MotiveSpec<C>,
    tm: &TModule<C>,
    ann: &AnnihilatorData,
    v: &PointVec<C>,
    early_exit: bool,
) -> Result<(PointVec<C>, Vec<bool>)> {
    let r = motive.depth();
    let mut x = v.clone();
    let mut cleared = Vec::new();
    for (i, st) in ann.stages.iter().enumerate() {
        if x.is_zero() {
            break;
        }
        x = tm.rho_poly_apply(&st.expanded(), &x)?;
        // stage i clears block r−i
        let ok = i >= r || x.slice_is_zero(motive.block(r - i));
        cleared.push(ok);
        if !ok && early_exit {
            break;
        }
    }
    Ok((x, cleared))
}

pub fn is_eulerian(carlitz: &Carlitz, s: &[u32], opts: CheckOptions) -> Result<Verdict> {
    let start = Instant::now();
    validate(s)?;
    let f = carlitz.field();
    let tested = if opts.primitive_reduction {
        primitive_reduce(f.p(), s)
    } else {
        s.to_vec()
    };
    let mut verdict = Verdict::new(f, s, &tested);
    if opts.precheck {
        if let Some(reason) = precheck_reason(f, &tested) {
            verdict.precheck = Some(reason);
            verdict.elapsed_ms = start.elapsed().as_millis() as u64;
            return Ok(verdict);
        }
    }
    let ann = annihilator_mzv_unchecked(carlitz, &tested)?;
    let motive = MotiveSpec::mzv(carlitz, &tested)?;
    let tm = motive.t_module()?;
    let v = motive.special_point_v()?;
    let (res, cleared) = run_stages(&motive, &tm, &ann, &v, true)?;
    verdict.annihilator_degree = ann.degree();
    verdict.residual_zero = res.is_zero();
    verdict.eulerian = verdict.residual_zero;
    verdict.stages_cleared = cleared;
    verdict.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(verdict)
}

/// deg u_i < s_i·q/(q−1) for every i.
pub fn in_small_domain(field: &Field, s: &[u32], u: &[RatFrac]) -> bool {
    let q = field.q() as i64;
    s.iter()
        .zip(u)
        .all(|(&si, ui)| ui.degree().map_or(true, |d| d * (q - 1) < si as i64 * q))
}

pub fn is_cmpl_eulerian(field: &Field, s: &[u32], u: &[RatFrac]) -> Result<Verdict> {
    let start = Instant::now();
    validate(s)?;
    let ann = annihilator_cmpl(field, s)?;
    let motive = MotiveSpec::cmpl(field, s, u)?;
    let tm = motive.t_module()?;
    let v = motive.special_point_v()?;
    let (res, cleared) = run_stages(&motive, &tm, &ann, &v, false)?;
    let mut verdict = Verdict::new(field, s, s);
    verdict.annihilator_degree = ann.degree();
    verdict.residual_zero = res.is_zero();
    verdict.eulerian = verdict.residual_zero;
    verdict.conditional = !in_small_domain(field, s, u);
    verdict.u = Some(u.iter().map(|x| x.to_string()).collect());
    verdict.stages_cleared = cleared;
    verdict.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(verdict)
}

/// Heuristic witness bound q^{⌈log_q w⌉+1}.
pub fn default_zeta_like_bound(q: u32, w: u64) -> usize {
    let q = q as u64;
    let mut k = 0u32;
    while q.pow(k) < w {
        k += 1;
    }
    q.pow(k + 1) as usize
}

#[derive(Clone, Debug, PartialEq)]
pub enum ZetaLikeOutcome {
    /// ρ_a(v) + ρ_b(u) = 0, checked by re-application.
    ZetaLike { a: TPoly, b: TPoly },
    NoneUpToBound,
    /// (q−1) | w: zeta-like is the same as Eulerian.
    ReducedToEulerian(Box<Verdict>),
    /// A zeta-like value forces its first suffix to be Eulerian.
    SuffixNotEulerian(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZetaLikeVerdict {
    pub q: u32,
    pub tuple: Vec<u32>,
    pub bound: usize,
    pub outcome: ZetaLikeOutcome,
    /// F_q-dimension of the flattened search space at termination.
    pub search_dimension: usize,
    pub elapsed_ms: u64,
}

impl ZetaLikeVerdict {
    pub fn is_zeta_like(&self) -> Option<bool> {
        match &self.outcome {
            ZetaLikeOutcome::ZetaLike { .. } => Some(true),
            ZetaLikeOutcome::ReducedToEulerian(v) => Some(v.eulerian),
            ZetaLikeOutcome::SuffixNotEulerian(_) => Some(false),
            ZetaLikeOutcome::NoneUpToBound => None,
        }
    }
    pub fn outcome_name(&self) -> &'static str {
        match self.outcome {
            ZetaLikeOutcome::ZetaLike { .. } => "zeta-like",
            ZetaLikeOutcome::NoneUpToBound => "none-up-to-bound",
            ZetaLikeOutcome::ReducedToEulerian(_) => "reduced-to-eulerian",
            ZetaLikeOutcome::SuffixNotEulerian(_) => "suffix-not-eulerian",
        }
    }
}

/// Coordinates over the θ-monomial basis: index = k·d + i for θ^k in slot i.
pub fn flatten(v: &PointVec<ThetaPoly>) -> Vec<Scalar> {
    let d = v.dim();
    let deg = v.max_theta_degree().unwrap_or(0);
    let mut out = vec![Scalar::ZERO; d * (deg + 1)];
    for (i, c) in v.coords().iter().enumerate() {
        for (k, &x) in c.coeffs().iter().enumerate() {
            out[k * d + i] = x;
        }
    }
    out
}

/// Searches for (a, b) ≠ 0 with deg a, deg b ≤ bound (after the suffix
/// annihilator is factored out of a) and ρ_a(v_s) + ρ_b(u_s) = 0.
///
/// Any relation a·v + b·u = 0 forces a into the annihilator of the suffix
/// point, so multiplying through shows a relation exists with a divisible by
/// the suffix annihilator whenever one exists at all.
pub fn is_zeta_like(carlitz: &Carlitz, s: &[u32], bound: usize) -> Result<ZetaLikeVerdict> {
    let start = Instant::now();
    validate(s)?;
    if s.len() < 2 {
        return Err(Error::InvalidTuple("zeta-like search needs depth >= 2".into()));
    }
    let f = carlitz.field();
    let w: u64 = s.iter().map(|&x| x as u64).sum();
    let mut out = ZetaLikeVerdict {
        q: f.q(),
        tuple: s.to_vec(),
        bound,
        outcome: ZetaLikeOutcome::NoneUpToBound,
        search_dimension: 0,
        elapsed_ms: 0,
    };
    let done = |mut out: ZetaLikeVerdict| {
        out.elapsed_ms = start.elapsed().as_millis() as u64;
        Ok(out)
    };
    if w % (f.q() as u64 - 1) == 0 {
        let v = is_eulerian(carlitz, s, CheckOptions::default())?;
        out.outcome = ZetaLikeOutcome::ReducedToEulerian(Box::new(v));
        return done(out);
    }
    let suffix = &s[1..];
    if !is_eulerian(carlitz, suffix, CheckOptions::default())?.eulerian {
        out.outcome = ZetaLikeOutcome::SuffixNotEulerian(suffix.to_vec());
        return done(out);
    }
    let motive = MotiveSpec::mzv(carlitz, s)?;
    let tm = motive.t_module()?;
    let v = motive.special_point_v()?;
    let u = motive.special_point_u(&carlitz.anderson_thakur(w as usize - 1)?)?;
    let bs = annihilator_mzv(carlitz, suffix)?.expanded(f);
    let x0 = tm.rho_poly_apply(&bs, &v)?;
    let rest = motive.block(2).start..motive.dimension();
    if !x0.slice_is_zero(rest) {
        return Err(Error::Assertion(
            "suffix annihilator left the first block nonzero".into(),
        ));
    }
    let mut ech = IncrementalEchelon::new(f);
    let (mut x, mut y) = (x0, u.clone());
    for i in 0..=bound {
        for (slot, vec) in [(0usize, &x), (1, &y)] {
            let _ = slot;
            if let Insertion::Dependent(comb) = ech.insert(flatten(vec)) {
                let alpha = TPoly::from_coeffs(f, comb.iter().step_by(2).copied().collect());
                let beta = TPoly::from_coeffs(f, comb.iter().skip(1).step_by(2).copied().collect());
                let a = &alpha * &bs;
                let check = tm
                    .rho_poly_apply(&a, &v)?
                    .add(&tm.rho_poly_apply(&beta, &u)?);
                if !check.is_zero() || (a.is_zero() && beta.is_zero()) {
                    return Err(Error::Assertion(format!(
                        "zeta-like witness for {s:?} failed re-application"
                    )));
                }
                out.search_dimension = ech.rank();
                out.outcome = ZetaLikeOutcome::ZetaLike { a, b: beta };
                return done(out);
            }
        }
        if i < bound {
            x = tm.apply_t(&x);
            y = tm.apply_t(&y);
        }
    }
    out.search_dimension = ech.rank();
    done(out)
}

/// Minimal monic a with ρ_a(v) = 0 and deg a ≤ max_degree, found as the first
/// F_q-linear dependency among v, ρ_t(v), ρ_{t²}(v), ….
pub fn torsion_search(tm: &TModule<ThetaPoly>, v: &PointVec<ThetaPoly>, max_degree: usize) -> Option<TPoly> {
    let f = tm.field().clone();
    if v.is_zero() {
        return Some(TPoly::one(&f));
    }
    let mut ech = IncrementalEchelon::new(&f);
    let mut x = v.clone();
    for i in 0..=max_degree {
        if let Insertion::Dependent(comb) = ech.insert(flatten(&x)) {
            return Some(TPoly::from_coeffs(&f, comb).monic());
        }
        if i < max_degree {
            x = tm.apply_t(&x);
        }
    }
    None
}

/// Tuples marked Eulerian that have a proper suffix marked non-Eulerian.
pub fn check_suffix_consistency(verdicts: &BTreeMap<Vec<u32>, bool>) -> Result<Vec<Vec<u32>>> {
    let mut bad = Vec::new();
    for (s, &e) in verdicts {
        for k in 1..s.len() {
            let suf = &s[k..];
            let se = *verdicts
                .get(suf)
                .ok_or_else(|| Error::MissingSuffix(suf.to_vec()))?;
            if e && !se {
                bad.push(s.clone());
                break;
            }
        }
    }
    Ok(bad)
}
