//! Tuple enumeration and parallel verdict runs over a range.

use rayon::prelude::*;

use crate::carlitz::Carlitz;
use crate::criterion::{is_eulerian, CheckOptions, Verdict};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Range {
    pub q: u32,
    pub p: u32,
    pub wmax: u32,
    pub rmax: usize,
    pub min_depth: usize,
    /// Keep only tuples whose entries are all divisible by q−1.
    pub divisible_only: bool,
    pub primitive_only: bool,
}

impl Range {
    /// The usual sweep: entries divisible by q−1 (a no-op for q = 2).
    pub fn new(q: u32, p: u32, wmax: u32, rmax: usize) -> Self {
        Range {
            q,
            p,
            wmax,
            rmax,
            min_depth: 1,
            divisible_only: true,
            primitive_only: false,
        }
    }

    pub fn primitive(mut self) -> Self {
        self.primitive_only = true;
        self
    }

    pub fn min_depth(mut self, d: usize) -> Self {
        self.min_depth = d;
        self
    }
}

pub fn is_primitive(p: u32, s: &[u32]) -> bool {
    s.iter().any(|&x| x % p != 0)
}

/// Compositions of n into exactly r positive parts, lexicographic.
pub fn compositions(n: u32, r: usize) -> Vec<Vec<u32>> {
    fn go(n: u32, r: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if r == 1 {
            if n >= 1 {
                prefix.push(n);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for first in 1..n.saturating_sub(r as u32 - 2) {
            prefix.push(first);
            go(n - first, r - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if r >= 1 && n as usize >= r {
        go(n, r, &mut Vec::new(), &mut out);
    }
    out
}

/// Tuples ordered by weight, then depth, then lexicographically.
pub fn enumerate(range: &Range) -> Vec<Vec<u32>> {
    let step = if range.divisible_only { range.q - 1 } else { 1 };
    let mut out = Vec::new();
    for w in (step..=range.wmax).step_by(step as usize) {
        for r in range.min_depth.max(1)..=range.rmax {
            for c in compositions(w / step, r) {
                let s: Vec<u32> = c.into_iter().map(|x| x * step).collect();
                if !range.primitive_only || is_primitive(range.p, &s) {
                    out.push(s);
                }
            }
        }
    }
    out
}

/// Verdicts in input order, computed on `jobs` threads (0 = rayon default).
pub fn run(carlitz: &Carlitz, tuples: &[Vec<u32>], opts: CheckOptions, jobs: usize) -> Result<Vec<Verdict>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Assertion(format!("thread pool: {e}")))?;
    pool.install(|| {
        tuples
            .par_iter()
            .map(|s| is_eulerian(carlitz, s, opts))
            .collect()
    })
}
