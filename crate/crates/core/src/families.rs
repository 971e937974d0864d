//! The conjectured list of primitive Eulerian tuples of depth ≥ 2 and its
//! comparison with computed verdicts. Everything here is CONJECTURAL: the list
//! is believed complete, not proven so.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::eu_tuple;
use crate::sweep::{enumerate, is_primitive, Range};

pub const CONJECTURAL: &str = "CONJECTURAL";

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilyTag {
    Canonical { r: usize, l: u32 },
    Extra { l: u32 },
    /// (q−1, (q−1)²).
    ExceptionalQm1,
    /// q = 2: index 0, 1, 2 for (1,1), (1,3), (3,5).
    ExceptionalQ2 { index: u8 },
    /// q = 2, depth > 2: (1, s) for s predicted of depth r−1.
    OnePrefix { inner: Box<FamilyTag> },
}

impl FamilyTag {
    pub fn tuple(&self, q: u32) -> Vec<u32> {
        match self {
            FamilyTag::Canonical { r, l } => eu_canonical(q, *r, *l),
            FamilyTag::Extra { l } => extra_family(q, *l).to_vec(),
            FamilyTag::ExceptionalQm1 => vec![q - 1, (q - 1) * (q - 1)],
            FamilyTag::ExceptionalQ2 { index } => [[1, 1], [1, 3], [3, 5]][*index as usize].to_vec(),
            FamilyTag::OnePrefix { inner } => {
                let mut t = vec![1];
                t.extend(inner.tuple(q));
                t
            }
        }
    }

    /// Short name; one-prefixed tuples are split by total weight 2^{r−1} or 2^r.
    pub fn kind(&self, q: u32) -> String {
        match self {
            FamilyTag::Canonical { r, l } => format!("canonical(r={r}, l={l})"),
            FamilyTag::Extra { l } => format!("extra(l={l})"),
            FamilyTag::ExceptionalQm1 => "exceptional-(q-1,(q-1)^2)".into(),
            FamilyTag::ExceptionalQ2 { .. } => "exceptional-q2".into(),
            FamilyTag::OnePrefix { .. } => {
                let t = self.tuple(q);
                let w: u32 = t.iter().sum();
                if w == 1 << (t.len() - 1) {
                    "exceptional-weight-2^(r-1)".into()
                } else {
                    "exceptional-weight-2^r".into()
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyTuple {
    pub tuple: Vec<u32>,
    pub tag: FamilyTag,
    pub kind: String,
    pub weight: u32,
    pub depth: usize,
}

impl FamilyTuple {
    fn new(q: u32, tag: FamilyTag) -> Self {
        let tuple = tag.tuple(q);
        FamilyTuple {
            weight: tuple.iter().sum(),
            depth: tuple.len(),
            kind: tag.kind(q),
            tuple,
            tag,
        }
    }
}

impl fmt::Display for FamilyTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tuple.iter().map(|x| x.to_string()).collect();
        write!(f, "({})  weight {}  {}", parts.join(", "), self.weight, self.kind)
    }
}

/// Eu_r(ℓ) = (q^ℓ−1, q^ℓ·Eu_{r−1}), Eu_1(ℓ) = (q^ℓ−1).
pub fn eu_canonical(q: u32, r: usize, l: u32) -> Vec<u32> {
    eu_tuple(q, r, l)
}

/// (q^ℓ(q−1), q^{ℓ+2} − 1 − q^ℓ(q−1)).
pub fn extra_family(q: u32, l: u32) -> [u32; 2] {
    let a = q.pow(l) * (q - 1);
    [a, q.pow(l + 2) - 1 - a]
}

fn pow_le(q: u32, e: u32, bound: u32) -> bool {
    q.checked_pow(e).is_some_and(|x| x - 1 <= bound)
}

/// Predicted primitive Eulerian tuples with depth in 2..=rmax and weight ≤ wmax,
/// ordered by weight, depth, tuple.
pub fn predicted_eulerian(q: u32, wmax: u32, rmax: usize) -> Vec<FamilyTuple> {
    let mut out: Vec<FamilyTuple> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut add = |ft: FamilyTuple, out: &mut Vec<FamilyTuple>| {
        if ft.weight <= wmax && ft.depth <= rmax && seen.insert(ft.tuple.clone()) {
            out.push(ft);
        }
    };
    for r in 2..=rmax {
        let mut l = 1u32;
        while pow_le(q, r as u32 + l - 1, wmax) {
            add(FamilyTuple::new(q, FamilyTag::Canonical { r, l }), &mut out);
            l += 1;
        }
    }
    if rmax >= 2 {
        let mut l = 1u32;
        while pow_le(q, l + 2, wmax) {
            add(FamilyTuple::new(q, FamilyTag::Extra { l }), &mut out);
            l += 1;
        }
        if q == 2 {
            for index in 0..3 {
                add(FamilyTuple::new(q, FamilyTag::ExceptionalQ2 { index }), &mut out);
            }
        }
        add(FamilyTuple::new(q, FamilyTag::ExceptionalQm1), &mut out);
    }
    if q == 2 {
        for r in 3..=rmax {
            let inner: Vec<FamilyTag> = out
                .iter()
                .filter(|f| f.depth == r - 1 && (f.weight + 1 == 1 << r || f.weight + 1 == 1 << (r - 1)))
                .map(|f| f.tag.clone())
                .collect();
            for tag in inner {
                add(
                    FamilyTuple::new(q, FamilyTag::OnePrefix { inner: Box::new(tag) }),
                    &mut out,
                );
            }
        }
    }
    out.sort_by(|a, b| (a.weight, a.depth, &a.tuple).cmp(&(b.weight, b.depth, &b.tuple)));
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub status: &'static str,
    pub matches: Vec<Vec<u32>>,
    /// Computed Eulerian but not predicted.
    pub false_positives: Vec<Vec<u32>>,
    /// Predicted but computed non-Eulerian.
    pub false_negatives: Vec<Vec<u32>>,
}

impl ComparisonReport {
    pub fn agrees(&self) -> bool {
        self.false_positives.is_empty() && self.false_negatives.is_empty()
    }
}

/// Compares the predicted list with computed verdicts over the primitive
/// tuples of depth ≥ 2 in the range. Every such tuple must be present.
pub fn compare_sweep(
    q: u32,
    p: u32,
    wmax: u32,
    rmax: usize,
    computed: &BTreeMap<Vec<u32>, bool>,
) -> Result<ComparisonReport> {
    let range = Range::new(q, p, wmax, rmax).primitive().min_depth(2);
    let predicted: BTreeSet<Vec<u32>> = predicted_eulerian(q, wmax, rmax)
        .into_iter()
        .map(|f| f.tuple)
        .collect();
    let mut report = ComparisonReport {
        status: CONJECTURAL,
        ..Default::default()
    };
    for s in enumerate(&range) {
        let &e = computed.get(&s).ok_or_else(|| Error::CoverageGap(s.clone()))?;
        match (e, predicted.contains(&s)) {
            (true, true) => report.matches.push(s),
            (true, false) => report.false_positives.push(s),
            (false, true) => report.false_negatives.push(s),
            (false, false) => {}
        }
    }
    debug_assert!(predicted.iter().all(|s| is_primitive(p, s)));
    Ok(report)
}
