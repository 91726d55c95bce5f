//! Smith normal form of arbitrary-precision integer matrices, organized for
//! the large sparse relation matrices arising from Reidemeister-Schreier:
//! a unit-pivot sweep first, then textbook reduction on the small residue.
//!
//! Column operations are mirrored onto caller-supplied shadow vectors, which
//! afterwards read off images in the cokernel's coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Sparse integer matrix given by rows.
#[derive(Clone, Debug, Default)]
pub struct IntMatrix {
    pub ncols: usize,
    pub rows: Vec<BTreeMap<u32, BigInt>>,
}

impl IntMatrix {
    pub fn new(ncols: usize) -> Self {
        IntMatrix {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = IntMatrix::new(ncols);
        for r in rows {
            let mut row = BTreeMap::new();
            for (j, &x) in r.iter().enumerate() {
                if x != 0 {
                    row.insert(j as u32, BigInt::from(x));
                }
            }
            m.rows.push(row);
        }
        m
    }

    pub fn push_row(&mut self, dense: &[i64]) {
        let mut row = BTreeMap::new();
        for (j, &x) in dense.iter().enumerate() {
            if x != 0 {
                row.insert(j as u32, BigInt::from(x));
            }
        }
        self.rows.push(row);
    }
}

/// Outcome of a Smith normal form computation on the row space.
#[derive(Clone, Debug)]
pub struct SnfOutcome {
    /// nonzero invariant factors d1 | d2 | ... (positive)
    pub invariants: Vec<BigInt>,
    /// rank of the matrix
    pub rank: usize,
    /// free rank of the cokernel Z^ncols / rowspace
    pub free_rank: usize,
    /// columns that remained pivot-free, in ascending order; the cokernel's
    /// free part is read off shadow vectors at these coordinates
    pub free_columns: Vec<u32>,
}

impl SnfOutcome {
    /// The cokernel as a readable string, e.g. "Z^2" or "Z/2 + Z/6 + Z^1".
    pub fn cokernel_string(&self) -> String {
        let torsion: Vec<String> = self
            .invariants
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| format!("Z/{}", d))
            .collect();
        let mut parts = torsion;
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Compute invariant factors of the row space of `m`, applying every column
/// operation to the `shadows` as well (each shadow is a dense length-ncols
/// vector standing for an extra row whose cokernel image is wanted).
pub fn smith_normal_form(m: &IntMatrix, shadows: &mut [Vec<BigInt>]) -> SnfOutcome {
    let ncols = m.ncols;
    for s in shadows.iter() {
        assert_eq!(s.len(), ncols);
    }
    let mut rows: Vec<BTreeMap<u32, BigInt>> =
        m.rows.iter().filter(|r| !r.is_empty()).cloned().collect();
    // col -> set of row indices with a nonzero entry
    let mut colmap: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for (&j, _) in r.iter() {
            colmap[j as usize].insert(i);
        }
    }
    let mut pivot_cols: BTreeSet<u32> = BTreeSet::new();
    let mut dead_rows: Vec<bool> = vec![false; rows.len()];
    let mut unit_pivots = 0usize;

    // helper closures are awkward with the borrow checker; use macros
    macro_rules! row_addmul {
        // rows[$dst] += $k * rows[$src]
        ($dst:expr, $src:expr, $k:expr) => {{
            let src_items: Vec<(u32, BigInt)> =
                rows[$src].iter().map(|(j, v)| (*j, v.clone())).collect();
            for (j, v) in src_items {
                let add = &v * $k;
                let e = rows[$dst].entry(j).or_insert_with(BigInt::zero);
                *e += add;
                if e.is_zero() {
                    rows[$dst].remove(&j);
                    colmap[j as usize].remove(&$dst);
                } else {
                    colmap[j as usize].insert($dst);
                }
            }
        }};
    }

    // Phase 1: repeatedly pick a +-1 pivot, clear its column with row ops,
    // clear its row with column ops (cheap because the column is clear).
    loop {
        let mut pivot: Option<(usize, u32)> = None;
        let mut best_len = usize::MAX;
        for (i, r) in rows.iter().enumerate() {
            if dead_rows[i] || r.is_empty() {
                continue;
            }
            if r.len() >= best_len {
                continue;
            }
            for (&j, v) in r.iter() {
                if v.is_one() || (-v).is_one() {
                    pivot = Some((i, j));
                    best_len = r.len();
                    break;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        let pval = rows[pi][&pj].clone(); // +-1
        // clear column pj in all other rows
        let users: Vec<usize> = colmap[pj as usize]
            .iter()
            .copied()
            .filter(|&i| i != pi && !dead_rows[i])
            .collect();
        for i in users {
            let k = -(&rows[i][&pj] / &pval);
            row_addmul!(i, pi, &k);
            debug_assert!(!rows[i].contains_key(&pj));
        }
        // clear row pi with column ops: col j' -= (e_j'/pval) * col pj.
        // only row pi has a nonzero in col pj, so this touches row pi alone;
        // shadows must mirror the operation.
        let entries: Vec<(u32, BigInt)> = rows[pi]
            .iter()
            .filter(|(j, _)| **j != pj)
            .map(|(j, v)| (*j, v.clone()))
            .collect();
        for (j, v) in entries {
            let k = -(&v / &pval);
            // col_j += k * col_pj (restricted: only row pi has col pj)
            rows[pi].remove(&j);
            colmap[j as usize].remove(&pi);
            for s in shadows.iter_mut() {
                let add = &s[pj as usize] * &k;
                s[j as usize] += add;
            }
        }
        dead_rows[pi] = true; // fully reduced pivot row
        pivot_cols.insert(pj);
        unit_pivots += 1;
    }

    // Phase 2: gather the residual block (rows not dead, columns not pivot)
    let live_rows: Vec<usize> = (0..rows.len())
        .filter(|&i| !dead_rows[i] && !rows[i].is_empty())
        .collect();
    let mut residual_cols: BTreeSet<u32> = BTreeSet::new();
    for &i in &live_rows {
        for (&j, _) in rows[i].iter() {
            debug_assert!(!pivot_cols.contains(&j));
            residual_cols.insert(j);
        }
    }
    let rcols: Vec<u32> = residual_cols.iter().copied().collect();
    let rindex: BTreeMap<u32, usize> = rcols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let mut dense: Vec<Vec<BigInt>> = live_rows
        .iter()
        .map(|&i| {
            let mut v = vec![BigInt::zero(); rcols.len()];
            for (&j, val) in rows[i].iter() {
                v[rindex[&j]] = val.clone();
            }
            v
        })
        .collect();

    // textbook SNF on the dense residual, mirroring column ops on shadows
    let mut residual_invariants: Vec<BigInt> = Vec::new();
    let nr = dense.len();
    let nc = rcols.len();
    let mut top = 0usize;
    let mut used_cols: Vec<usize> = Vec::new();
    while top < nr && used_cols.len() < nc {
        // find the nonzero entry of least absolute value in the working block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in dense.iter().enumerate().skip(top) {
            for (jj, v) in row.iter().enumerate() {
                if used_cols.contains(&jj) || v.is_zero() {
                    continue;
                }
                if best
                    .map(|(bi, bj)| v.abs() < dense[bi][bj].abs())
                    .unwrap_or(true)
                {
                    best = Some((i, jj));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        dense.swap(top, bi);
        let mut stable = false;
        while !stable {
            stable = true;
            // clear column bj below/above with row ops
            for i in 0..nr {
                if i == top || dense[i][bj].is_zero() {
                    continue;
                }
                let q = div_round(&dense[i][bj], &dense[top][bj]);
                if !q.is_zero() {
                    for jj in 0..nc {
                        let sub = &dense[top][jj] * &q;
                        dense[i][jj] -= sub;
                    }
                }
                if !dense[i][bj].is_zero() {
                    // remainder smaller than pivot: swap and restart
                    dense.swap(top, i);
                    stable = false;
                }
            }
            // clear row top with column ops
            for jj in 0..nc {
                if jj == bj || used_cols.contains(&jj) || dense[top][jj].is_zero() {
                    continue;
                }
                let q = div_round(&dense[top][jj], &dense[top][bj]);
                if !q.is_zero() {
                    for row in dense.iter_mut() {
                        let sub = &row[bj] * &q;
                        row[jj] -= sub;
                    }
                    for s in shadows.iter_mut() {
                        let sub = &s[rcols[bj] as usize] * &q;
                        let col = rcols[jj] as usize;
                        s[col] -= sub;
                    }
                }
                if !dense[top][jj].is_zero() {
                    // swap columns jj and bj (mirror on shadows)
                    for row in dense.iter_mut() {
                        row.swap(bj, jj);
                    }
                    for s in shadows.iter_mut() {
                        s.swap(rcols[bj] as usize, rcols[jj] as usize);
                    }
                    stable = false;
                }
            }
        }
        residual_invariants.push(dense[top][bj].abs());
        used_cols.push(bj);
        pivot_cols.insert(rcols[bj]);
        top += 1;
    }

    // divisibility chain on the residual invariants (the unit pivots divide
    // everything already): standard pairwise gcd/lcm fix
    let k = residual_invariants.len();
    for i in 0..k {
        for j in (i + 1)..k {
            let a = residual_invariants[i].clone();
            let b = residual_invariants[j].clone();
            if (&b % &a).is_zero() {
                continue;
            }
            let g = a.gcd(&b);
            let l = &a * &b / &g;
            residual_invariants[i] = g;
            residual_invariants[j] = l;
        }
    }
    residual_invariants.sort();

    let mut invariants = vec![BigInt::one(); unit_pivots];
    invariants.extend(residual_invariants);
    let rank = invariants.len();
    let free_columns: Vec<u32> = (0..ncols as u32)
        .filter(|j| !pivot_cols.contains(j))
        .collect();
    SnfOutcome {
        invariants,
        rank,
        free_rank: ncols - rank,
        free_columns,
    }
}

/// Division rounded to the nearest integer, so the remainder after a
/// reduction step has at most half the pivot's absolute value.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    use num_bigint::Sign;
    let (q, r) = a.div_rem(b);
    if (&r + &r).abs() > b.abs() {
        let s = if (r.sign() == Sign::Minus) ^ (b.sign() == Sign::Minus) {
            -1
        } else {
            1
        };
        q + s
    } else {
        q
    }
}

/// Read a shadow's image in the free part of the cokernel.
pub fn free_image(outcome: &SnfOutcome, shadow: &[BigInt]) -> Vec<BigInt> {
    outcome
        .free_columns
        .iter()
        .map(|&j| shadow[j as usize].clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf_plain(rows: &[Vec<i64>], ncols: usize) -> SnfOutcome {
        let mut m = IntMatrix::new(ncols);
        for r in rows {
            m.push_row(r);
        }
        smith_normal_form(&m, &mut [])
    }

    #[test]
    fn zero_matrix_is_free() {
        let out = snf_plain(&[vec![0, 0], vec![0, 0]], 2);
        assert_eq!(out.rank, 0);
        assert_eq!(out.free_rank, 2);
        assert_eq!(out.cokernel_string(), "Z^2");
    }

    #[test]
    fn already_diagonal() {
        let out = snf_plain(&[vec![2, 0], vec![0, 6]], 2);
        assert_eq!(out.rank, 2);
        assert_eq!(out.free_rank, 0);
        let inv: Vec<i64> = out
            .invariants
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect();
        assert_eq!(inv, vec![2, 6]);
    }

    #[test]
    fn divisibility_fix() {
        // diag(4, 6) has SNF diag(2, 12)
        let out = snf_plain(&[vec![4, 0], vec![0, 6]], 2);
        let inv: Vec<i64> = out
            .invariants
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect();
        assert_eq!(inv, vec![2, 12]);
    }

    #[test]
    fn mixed_with_unit_pivots() {
        // [[1, 2, 3], [0, 2, 2]] over Z^3: cokernel Z/2 + Z
        let out = snf_plain(&[vec![1, 2, 3], vec![0, 2, 2]], 3);
        assert_eq!(out.rank, 2);
        assert_eq!(out.free_rank, 1);
        assert_eq!(out.cokernel_string(), "Z/2 + Z^1");
    }

    #[test]
    fn shadows_track_cokernel_coordinates() {
        // rowspace <(2, 0)> in Z^2: cokernel Z/2 + Z; shadow (1, 1)
        let mut m = IntMatrix::new(2);
        m.push_row(&[2, 0]);
        let mut shadows = vec![vec![BigInt::from(1), BigInt::from(1)]];
        let out = smith_normal_form(&m, &mut shadows);
        assert_eq!(out.free_rank, 1);
        let img = free_image(&out, &shadows[0]);
        assert_eq!(img, vec![BigInt::from(1)]);
    }

    #[test]
    fn invariants_stable_under_unimodular_fuzz() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        let base = vec![vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]];
        let reference = snf_plain(&base, 3)
            .invariants
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect::<Vec<_>>();
        for _ in 0..100 {
            let mut m = base.clone();
            // random row/col operations with +-1 multipliers
            for _ in 0..6 {
                let i = rng.random_range(0..3);
                let j = rng.random_range(0..3);
                if i != j {
                    if rng.random_bool(0.5) {
                        for c in 0..3 {
                            let v = m[j][c];
                            m[i][c] += v;
                        }
                    } else {
                        for row in m.iter_mut() {
                            let v = row[j];
                            row[i] += v;
                        }
                    }
                }
            }
            let inv = snf_plain(&m, 3)
                .invariants
                .iter()
                .map(|d| i64::try_from(d).unwrap())
                .collect::<Vec<_>>();
            assert_eq!(inv, reference);
        }
    }
}
