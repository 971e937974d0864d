//! Linear algebra over F_q: solving, nullspaces, and an incremental echelon
//! form that reports the first linear dependency in a stream of vectors.

use super::field::{Field, Scalar};

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(field: &Field, m: &mut [Vec<Scalar>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(pr) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = field.inv(m[row][col]).unwrap();
        for x in m[row].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let c = other[col];
                for (x, &y) in other.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(c, y));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Some solution x of A x = b, if one exists.
pub fn solve(field: &Field, a: &[Vec<Scalar>], b: &[Scalar], ncols: usize) -> Option<Vec<Scalar>> {
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.resize(ncols, Scalar::ZERO);
            r.push(rhs);
            r
        })
        .collect();
    let pivots = rref(field, &mut m, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Scalar::ZERO; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][ncols];
    }
    Some(x)
}

/// Basis of {x : A x = 0}.
pub fn nullspace(field: &Field, a: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .map(|row| {
            let mut r = row.clone();
            r.resize(ncols, Scalar::ZERO);
            r
        })
        .collect();
    let pivots = rref(field, &mut m, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![Scalar::ZERO; ncols];
        x[free] = Scalar::ONE;
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = field.neg(m[r][free]);
        }
        basis.push(x);
    }
    basis
}

/// Echelon basis grown one vector at a time. Vectors may have different
/// lengths; missing entries are zero. The pivot of a stored vector is its
/// highest nonzero index.
pub struct IncrementalEchelon {
    field: Field,
    // (pivot, vector, combination over inserted vectors), sorted by pivot
    basis: Vec<(usize, Vec<Scalar>, Vec<Scalar>)>,
    inserted: usize,
}

pub enum Insertion {
    Independent,
    /// Coefficients r_0..r_k with Σ r_i v_i = 0 and r_k = 1 for the new vector.
    Dependent(Vec<Scalar>),
}

impl IncrementalEchelon {
    pub fn new(field: &Field) -> Self {
        IncrementalEchelon {
            field: field.clone(),
            basis: Vec::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn insert(&mut self, mut v: Vec<Scalar>) -> Insertion {
        let f = self.field.clone();
        let k = self.inserted;
        self.inserted += 1;
        let mut comb = vec![Scalar::ZERO; k + 1];
        comb[k] = Scalar::ONE;
        for (p, b, bc) in self.basis.iter().rev() {
            let Some(&x) = v.get(*p) else { continue };
            if x.is_zero() {
                continue;
            }
            let c = f.div(x, b[*p]).unwrap();
            if v.len() < b.len() {
                v.resize(b.len(), Scalar::ZERO);
            }
            for (vi, &bi) in v.iter_mut().zip(b.iter()) {
                *vi = f.sub(*vi, f.mul(c, bi));
            }
            for (ci, &bi) in comb.iter_mut().zip(bc.iter()) {
                *ci = f.sub(*ci, f.mul(c, bi));
            }
        }
        match v.iter().rposition(|x| !x.is_zero()) {
            None => Insertion::Dependent(comb),
            Some(p) => {
                v.truncate(p + 1);
                let pos = self.basis.partition_point(|(q, _, _)| *q < p);
                self.basis.insert(pos, (p, v, comb));
                Insertion::Independent
            }
        }
    }
}
