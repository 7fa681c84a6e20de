use serde::Serialize;

use super::diagram::{canonical_diagram, phantom_check, ExtensionDiagram};
use crate::closure::{ClosureOracle, Verdict};
use crate::error::{Error, Result};
use crate::modalg::{lift, FpModule, FreeElem, Matrix};
use crate::poly::Polynomial;

/// How to build a second, non-canonical presentation of the same extension.
#[derive(Clone, Debug, Default)]
pub struct Redundancy {
    /// Extra free generators `e'_j` of `F`, mapping to these elements of `M`
    /// (given in the free cover of `M`).
    pub extra_generators: Vec<FreeElem>,
    /// Redundant columns of `ν`: coefficient vectors of length `s + 1`
    /// combining the columns of `[A | a]`.
    pub redundant_columns: Vec<FreeElem>,
    /// Shift of the lift on the original generators: `e_i ↦ e_i + κ_i α(1)`.
    /// Empty means no shift.
    pub shift: Vec<Polynomial>,
    /// Shift on the extra generators: `e'_j ↦ w_j + λ_j α(1)`.
    pub extra_shift: Vec<Polynomial>,
}

fn padded(v: &[Polynomial], n: usize) -> Vec<Polynomial> {
    let mut out = v.to_vec();
    out.resize(n, Polynomial::zero());
    out
}

/// The diagram with `F' = R^t ⊕ R^m`, columns `[A | redundant | (-w_j, e'_j) | (a, 0)]`
/// and `ν̃'` computed from the shifted lift.
pub fn padded_diagram(m: &FpModule, a: &FreeElem, r: &Redundancy) -> Result<ExtensionDiagram> {
    let ring = m.ring();
    // Validates injectivity of α.
    canonical_diagram(m, a)?;
    let t = m.rank();
    let k = r.extra_generators.len();
    let a_cols = {
        let mut c = vec![a.clone()];
        c.extend(m.presentation().columns());
        c
    };
    let base_cols = {
        let mut c = m.presentation().columns();
        c.push(a.clone());
        c
    };
    let zeros = FreeElem::zero(k);
    let mut cols: Vec<FreeElem> = m.presentation().columns().iter().map(|c| c.concat(&zeros)).collect();
    for combo in &r.redundant_columns {
        if combo.rank() != base_cols.len() {
            return Err(Error::RankMismatch {
                expected: base_cols.len(),
                found: combo.rank(),
            });
        }
        let mut acc = FreeElem::zero(t);
        for (c, col) in combo.coords().iter().zip(&base_cols) {
            acc = acc.add(ring, &col.scale(ring, c))?;
        }
        cols.push(acc.concat(&zeros));
    }
    for (j, w) in r.extra_generators.iter().enumerate() {
        if w.rank() != t {
            return Err(Error::RankMismatch {
                expected: t,
                found: w.rank(),
            });
        }
        cols.push(w.neg(ring).concat(&FreeElem::basis(ring, k, j)));
    }
    cols.push(a.concat(&zeros));

    let kappa = padded(&r.shift, t);
    let lambda = padded(&r.extra_shift, k);
    let mut tilde = Vec::with_capacity(cols.len());
    for g in &cols {
        let (gf, ge) = (g.slice(0..t), g.slice(t..t + k));
        // Image of g in M under the unshifted lift.
        let mut image = gf.clone();
        for (c, w) in ge.coords().iter().zip(&r.extra_generators) {
            image = image.add(ring, &w.scale(ring, c))?;
        }
        let coeffs = lift(ring, &image, &a_cols)?
            .ok_or_else(|| Error::Certificate("padded column does not map into the image of alpha".into()))?;
        let mut value = coeffs[0].clone();
        for (c, x) in gf.coords().iter().zip(&kappa) {
            value = ring.add(&value, &ring.mul(c, x));
        }
        for (c, x) in ge.coords().iter().zip(&lambda) {
            value = ring.add(&value, &ring.mul(c, x));
        }
        tilde.push(value);
    }
    let nu = Matrix::from_columns(t + k, &cols)?;
    // M on F' through the unshifted map: A and the (-w_j, e'_j) columns.
    let s = m.presentation().ncols();
    let mut cover_cols: Vec<FreeElem> = cols[..s].to_vec();
    let extra_start = cols.len() - 1 - k;
    cover_cols.extend(cols[extra_start..cols.len() - 1].iter().cloned());
    let cover = FpModule::new(ring, Matrix::from_columns(t + k, &cover_cols)?)?;
    let alpha = a.concat(&zeros);
    ExtensionDiagram::from_parts(cover, alpha, nu, FreeElem::new(ring, tilde))
}

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceReport {
    pub canonical: Verdict,
    pub padded: Verdict,
    /// Never "in" against "not in".
    pub consistent: bool,
}

pub fn presentation_independence_test(
    m: &FpModule,
    a: &FreeElem,
    oracle: &dyn ClosureOracle,
    redundancy: &Redundancy,
) -> Result<IndependenceReport> {
    let canonical = phantom_check(&canonical_diagram(m, a)?, oracle)?;
    let padded = phantom_check(&padded_diagram(m, a, redundancy)?, oracle)?;
    Ok(IndependenceReport {
        consistent: !canonical.contradicts(&padded),
        canonical,
        padded,
    })
}
