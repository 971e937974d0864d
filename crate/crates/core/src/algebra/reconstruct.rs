//! Recovering an element of k from a truncated expansion in 1/θ.

use super::field::Scalar;
use super::laurent::LaurentNumber;
use super::linalg::solve;
use super::poly::ThetaPoly;
use super::ratfrac::RatFrac;
use crate::error::{Error, Result};

/// Finds p/q with deg p, deg q <= bound agreeing with x on its whole window.
///
/// Scans denominator degrees upward; for each one the denominator is the
/// solution of the linear conditions that q·x has no terms in θ^{-1}, θ^{-2},
/// … down to the window edge. With precision >= 2·bound + 2 an answer is
/// unique when it exists.
pub fn rational_reconstruct(x: &LaurentNumber, bound: usize) -> Result<Option<RatFrac>> {
    let n = x.precision();
    let field = x.field().clone();
    if x.is_zero() {
        return Ok(Some(RatFrac::zero(&field)));
    }
    if n < 2 * bound + 2 {
        return Err(Error::InsufficientPrecision {
            needed: 2 * bound + 2,
            have: n,
        });
    }
    let v = x.lead();
    let abs = x.abs_precision();
    let coef = |e: i64| x.coeff_at(e).unwrap_or(Scalar::ZERO);
    for b in 0..=bound {
        let a = v + b as i64;
        if a < 0 {
            continue;
        }
        if a as usize > bound {
            break;
        }
        // exponents of q·x that are fully determined: e > abs + b
        let lowest = abs + b as i64 + 1;
        let rows: Vec<i64> = (lowest..0).collect();
        let mut mat = Vec::with_capacity(rows.len());
        let mut rhs = Vec::with_capacity(rows.len());
        for &e in &rows {
            mat.push((0..b).map(|k| coef(e - k as i64)).collect::<Vec<_>>());
            rhs.push(field.neg(coef(e - b as i64)));
        }
        let Some(mut qc) = solve(&field, &mat, &rhs, b) else {
            continue;
        };
        qc.push(Scalar::ONE);
        let q = ThetaPoly::from_coeffs(&field, qc);
        let pc: Vec<Scalar> = (0..=a)
            .map(|e| {
                (0..=b).fold(Scalar::ZERO, |acc, k| {
                    field.add(acc, field.mul(q.coeff(k), coef(e - k as i64)))
                })
            })
            .collect();
        let p = ThetaPoly::from_coeffs(&field, pc);
        let cand = RatFrac::new(p, q)?;
        if cand.height() > bound {
            continue;
        }
        let back = LaurentNumber::from_ratfrac(&cand, n)?;
        if back.agrees_to(x, n).unwrap_or(false) {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}
