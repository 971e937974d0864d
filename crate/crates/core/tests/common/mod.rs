#![allow(dead_code)]

use eulerian::algebra::{Field, FieldSpec, ThetaPoly};
use eulerian::carlitz::Carlitz;
use eulerian::tmodule::{PointVec, TwistedMatrix};

pub fn carlitz(q: u32) -> Carlitz {
    Carlitz::new(&FieldSpec::of_order(q).unwrap())
}

/// Block-diagonal θ + N with extra entries (row, col, τ-power, θ-coefficients).
pub fn banded(f: &Field, blocks: &[usize], extra: &[(usize, usize, u32, &[i64])]) -> TwistedMatrix<ThetaPoly> {
    let d = blocks.iter().sum();
    let mut m = TwistedMatrix::zero(f, d);
    let mut off = 0;
    for &w in blocks {
        for i in off..off + w {
            m.add_entry(i, i, 0, ThetaPoly::var(f));
            if i + 1 < off + w {
                m.add_entry(i, i + 1, 0, ThetaPoly::one(f));
            }
        }
        off += w;
    }
    for &(i, j, n, c) in extra {
        m.add_entry(i, j, n, ThetaPoly::from_ints(f, c));
    }
    m
}

pub fn point(f: &Field, coords: &[&[i64]]) -> PointVec<ThetaPoly> {
    PointVec::new(coords.iter().map(|c| ThetaPoly::from_ints(f, c)).collect())
}

pub struct Golden {
    pub q: u32,
    pub s: Vec<u32>,
    pub rho: TwistedMatrix<ThetaPoly>,
    pub v: PointVec<ThetaPoly>,
}

/// The four printed t-modules with their special points.
pub fn goldens() -> Vec<Golden> {
    let f3 = FieldSpec::of_order(3).unwrap();
    let f2 = FieldSpec::of_order(2).unwrap();
    let tt: &[i64] = &[0, 1, 1];
    vec![
        Golden {
            q: 3,
            s: vec![2, 4],
            rho: banded(&f3, &[6, 4], &[(5, 0, 1, &[1]), (5, 6, 1, &[2]), (9, 6, 1, &[1])]),
            v: point(&f3, &[&[], &[], &[1], &[], &[1], &[0, 1, 0, 2], &[2], &[], &[2], &[0, 2, 0, 1]]),
        },
        Golden {
            q: 2,
            s: vec![1, 2, 4],
            rho: banded(
                &f2,
                &[7, 6, 4],
                &[
                    (6, 0, 1, &[1]),
                    (6, 7, 1, &[1]),
                    (6, 13, 1, &[1]),
                    (12, 7, 1, &[1]),
                    (12, 13, 1, &[1]),
                    (16, 13, 1, &[1]),
                ],
            ),
            v: point(
                &f2,
                &[&[], &[], &[], &[], &[1], &[1], tt, &[], &[], &[], &[1], &[1], tt, &[], &[1], &[1], tt],
            ),
        },
        Golden {
            q: 3,
            s: vec![4, 2],
            rho: banded(
                &f3,
                &[6, 2],
                &[
                    (2, 6, 1, &[1]),
                    (4, 6, 1, &[1]),
                    (5, 0, 1, &[1]),
                    (5, 6, 1, &[0, 1, 0, 2]),
                    (7, 6, 1, &[1]),
                ],
            ),
            v: point(&f3, &[&[], &[], &[1], &[], &[1], &[0, 1, 0, 2], &[], &[1]]),
        },
        Golden {
            q: 3,
            s: vec![2, 2, 2],
            rho: banded(
                &f3,
                &[6, 4, 2],
                &[
                    (5, 0, 1, &[1]),
                    (5, 6, 1, &[2]),
                    (5, 10, 1, &[1]),
                    (9, 6, 1, &[1]),
                    (9, 10, 1, &[2]),
                    (11, 10, 1, &[1]),
                ],
            ),
            v: point(&f3, &[&[], &[], &[], &[], &[], &[1], &[], &[], &[], &[2], &[], &[1]]),
        },
    ]
}
pub mod props;
