use crate::error::{Error, Result};
use crate::modalg::free::Matrix;
use crate::poly::Polynomial;
use crate::ring::QuotientRing;

/// Largest minor size examined by [`rank_over_fractions`].
pub const MINOR_CUTOFF: usize = 6;

fn determinant(ring: &QuotientRing, m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    match n {
        0 => ring.base().one(),
        1 => m[0][0].clone(),
        2 => ring.sub(&ring.mul(&m[0][0], &m[1][1]), &ring.mul(&m[0][1], &m[1][0])),
        _ => {
            let base = ring.base();
            let mut acc = Polynomial::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let term = ring.mul(&m[0][j], &determinant(ring, &minor));
                acc = if j % 2 == 0 {
                    base.add(&acc, &term)
                } else {
                    base.sub(&acc, &term)
                };
            }
            ring.reduce(&acc)
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Some `k × k` minor of `a` is nonzero in `R`.
pub fn has_nonzero_minor(ring: &QuotientRing, a: &Matrix, k: usize) -> bool {
    for rows in subsets(a.nrows(), k) {
        for cols in subsets(a.ncols(), k) {
            let m: Vec<Vec<Polynomial>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| a.get(i, j).clone()).collect())
                .collect();
            if !determinant(ring, &m).is_zero() {
                return true;
            }
        }
    }
    false
}

/// Rank of `a` over the fraction field of the domain `R`: the largest size of
/// a minor that does not vanish in `R`.
pub fn rank_over_fractions(ring: &QuotientRing, a: &Matrix) -> Result<usize> {
    if !ring.is_domain() {
        return Err(Error::RequiresDomain);
    }
    let max = a.nrows().min(a.ncols());
    let top = max.min(MINOR_CUTOFF);
    for k in (1..=top).rev() {
        if has_nonzero_minor(ring, a, k) {
            if k == MINOR_CUTOFF && max > MINOR_CUTOFF {
                return Err(Error::MinorCutoff(MINOR_CUTOFF));
            }
            return Ok(k);
        }
    }
    Ok(0)
}
