use serde::Serialize;

use super::diagram::{canonical_diagram, phantom_check, ExtensionDiagram};
use crate::closure::{ClosureOracle, Verdict};
use crate::error::{Error, Result};
use crate::modalg::{lift, syzygies, FpModule, FreeElem, FreeSubmodule, Matrix, ModuleMap};
use crate::poly::Polynomial;
use crate::ring::{is_partial_sop, QuotientRing, SopCertificate};

/// A relation `x_1 u_1 + ... + x_{k+1} u_{k+1} = 0` in `M`.
///
/// `x_1, ..., x_k` must be a certified partial system of parameters (the
/// whole sequence when `k = 0`). Whether the full sequence `x_1, ..., x_{k+1}`
/// is one as well is recorded in `sequence_certificate` but not required.
#[derive(Clone, Debug)]
pub struct SopRelation {
    params: Vec<Polynomial>,
    coefficients: Vec<FreeElem>,
    prefix_certificate: Option<SopCertificate>,
    sequence_certificate: Option<SopCertificate>,
}

fn certify(ring: &QuotientRing, params: &[Polynomial]) -> Result<(Option<SopCertificate>, SopCertificate)> {
    if params.is_empty() {
        return Err(Error::Invalid("empty parameter sequence".into()));
    }
    let full = is_partial_sop(ring, params)?;
    let k = params.len() - 1;
    if k == 0 {
        if !full.is_partial_sop {
            return Err(Error::Certificate(format!("not a parameter ({})", full.note)));
        }
        return Ok((None, full));
    }
    let prefix = is_partial_sop(ring, &params[..k])?;
    if !prefix.is_partial_sop {
        return Err(Error::Certificate(format!(
            "x_1..x_k is not a partial system of parameters ({})",
            prefix.note
        )));
    }
    Ok((Some(prefix), full))
}

impl SopRelation {
    /// Builds and verifies the relation against `m`.
    pub fn new(m: &FpModule, params: Vec<Polynomial>, coefficients: Vec<FreeElem>) -> Result<Self> {
        let (prefix, full) = certify(m.ring(), &params)?;
        let rel = Self {
            params,
            coefficients,
            prefix_certificate: prefix,
            sequence_certificate: Some(full),
        };
        rel.verify(m)?;
        Ok(rel)
    }

    /// No certificates are checked; [`SopRelation::verify`] must be called
    /// before relying on it.
    pub fn unverified(params: Vec<Polynomial>, coefficients: Vec<FreeElem>) -> Self {
        Self {
            params,
            coefficients,
            prefix_certificate: None,
            sequence_certificate: None,
        }
    }

    pub fn params(&self) -> &[Polynomial] {
        &self.params
    }

    pub fn coefficients(&self) -> &[FreeElem] {
        &self.coefficients
    }

    /// `k`, one less than the number of parameters.
    pub fn k(&self) -> usize {
        self.params.len().saturating_sub(1)
    }

    pub fn sequence_certificate(&self) -> Option<&SopCertificate> {
        self.sequence_certificate.as_ref()
    }

    pub fn prefix_certificate(&self) -> Option<&SopCertificate> {
        self.prefix_certificate.as_ref()
    }

    /// Zero certificate: `Σ x_i u_i` reduces to 0 modulo the relations of `m`.
    pub fn verify(&self, m: &FpModule) -> Result<()> {
        let ring = m.ring();
        if self.params.len() != self.coefficients.len() {
            return Err(Error::Invalid(format!(
                "{} parameters but {} coefficients",
                self.params.len(),
                self.coefficients.len()
            )));
        }
        certify(ring, &self.params)?;
        let mut sum = FreeElem::zero(m.rank());
        for (x, u) in self.params.iter().zip(&self.coefficients) {
            sum = sum.add(ring, &u.scale(ring, x))?;
        }
        let nf = m.normal_form(&sum)?;
        if !nf.is_zero() {
            return Err(Error::Certificate(format!(
                "zero-certificate: sum of x_i u_i is {} in M, not 0",
                nf.display(ring)
            )));
        }
        Ok(())
    }

    pub fn display(&self, ring: &QuotientRing) -> String {
        let parts: Vec<String> = self
            .params
            .iter()
            .zip(&self.coefficients)
            .map(|(x, u)| format!("({})*{}", ring.display(x), u.display(ring)))
            .collect();
        parts.join(" + ")
    }
}

/// Generators of the kernel of `M^{k+1} → M`, `(u_i) ↦ Σ x_i u_i`, skipping
/// those whose coefficients all vanish in `M`.
pub fn sop_relation_kernel(m: &FpModule, params: &[Polynomial]) -> Result<Vec<SopRelation>> {
    let ring = m.ring();
    certify(ring, params)?;
    let t = m.rank();
    let mut vectors = Vec::new();
    for x in params {
        for j in 0..t {
            vectors.push(FreeElem::basis(ring, t, j).scale(ring, x));
        }
    }
    vectors.extend(m.presentation().columns());
    let mut out = Vec::new();
    for s in syzygies(ring, &vectors)? {
        let coeffs: Vec<FreeElem> = (0..params.len())
            .map(|i| s.slice(i * t..(i + 1) * t))
            .collect();
        let mut trivial = true;
        for u in &coeffs {
            if !m.is_zero_elem(u)? {
                trivial = false;
                break;
            }
        }
        if !trivial {
            out.push(SopRelation::new(m, params.to_vec(), coeffs)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct ModificationResult {
    /// `M' = (M ⊕ R^k) / R(u_{k+1}, x_1, ..., x_k)`.
    pub module: FpModule,
    /// `α'(1) = (α(1), 0)`.
    pub alpha: FreeElem,
    /// `M → M'`, `u ↦ (u, 0)`.
    pub inclusion: ModuleMap,
    /// `R → M'`.
    pub alpha_map: ModuleMap,
    /// Canonical diagram of `α'`; building it certifies that `α'` is injective.
    pub diagram: ExtensionDiagram,
}

fn check_diagram(m: &FpModule, d: &ExtensionDiagram) -> Result<()> {
    if d.module().presentation() != m.presentation() {
        return Err(Error::Invalid("diagram does not belong to this module".into()));
    }
    Ok(())
}

/// The module modification of `M` along `relation`.
pub fn modify(m: &FpModule, d: &ExtensionDiagram, relation: &SopRelation) -> Result<ModificationResult> {
    if relation.k() == 0 {
        return Err(Error::RelationTooShort);
    }
    check_diagram(m, d)?;
    relation.verify(m)?;
    let ring = m.ring();
    let (t, k) = (m.rank(), relation.k());
    let a = m.presentation();
    let padded = a.block_diag(&Matrix::zero(k, 0));
    let mut w = relation.coefficients()[k].clone().into_coords();
    w.extend(relation.params()[..k].iter().cloned());
    let w = FreeElem::new(ring, w);
    let presentation = padded.hconcat(&Matrix::from_columns(t + k, &[w])?)?;
    let module = FpModule::new(ring, presentation)?;
    let alpha = d.alpha().concat(&FreeElem::zero(k));
    let mut inc_cols = Vec::with_capacity(t);
    for j in 0..t {
        inc_cols.push(FreeElem::basis(ring, t + k, j));
    }
    let inclusion = ModuleMap::new(m, &module, Matrix::from_columns(t + k, &inc_cols)?)?;
    let alpha_map = ModuleMap::new(
        &FpModule::free(ring, 1),
        &module,
        Matrix::from_columns(t + k, std::slice::from_ref(&alpha))?,
    )?;
    let diagram = canonical_diagram(&module, &alpha)?;
    Ok(ModificationResult {
        module,
        alpha,
        inclusion,
        alpha_map,
        diagram,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub identity: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SopCertificateReport {
    pub identities: Vec<IdentityCheck>,
    /// `g*`, the element of `G` whose evaluation is `ψ`.
    pub g_star: Vec<String>,
    /// Verdict for `ν̃ ∈ (H + I y)^cl`.
    pub verdict: Verdict,
    /// Phantom verdict of the base diagram.
    pub base_verdict: Verdict,
    /// False only if the base is "in" and the certificate verdict is "not in".
    pub consistent: bool,
}

/// Builds the presentation of `Q` with a highlighted generator `f* ↦ u_{k+1}`:
/// `ν_h = [[A, a, -u_{k+1}], [0, 0, 1]]`, `ν̃_h = (0, ..., 0, 1, 0)`, with `H`
/// spanned by the first `t` rows and `y` the last row. The functional
/// `ψ(h) = h(g*)` for `g* = (b, 0, x_{k+1})`, `A b = Σ x_i u_i`, must satisfy
/// `ψ(H) ⊆ I`, `ψ(y) = x_{k+1}` and `ψ(ν̃_h) ∈ I` with `I = (x_1..x_k)`.
pub fn sop_certificate_verify(
    m: &FpModule,
    d: &ExtensionDiagram,
    relation: &SopRelation,
    oracle: &dyn ClosureOracle,
) -> Result<SopCertificateReport> {
    check_diagram(m, d)?;
    relation.verify(m)?;
    if relation.k() == 0 {
        return Err(Error::RelationTooShort);
    }
    let ring = m.ring();
    let (t, k) = (m.rank(), relation.k());
    let s = m.presentation().ncols();
    let us = relation.coefficients();
    let xs = relation.params();
    let ideal_i: Vec<Polynomial> = xs[..k].to_vec();

    let mut top = m.presentation().hconcat(&Matrix::from_columns(t, &[d.alpha().clone()])?)?;
    top = top.hconcat(&Matrix::from_columns(t, &[us[k].neg(ring)])?)?;
    let mut rows = top.rows();
    let y = FreeElem::basis(ring, s + 2, s + 1);
    rows.push(y.clone());
    let nu_h = Matrix::from_rows(s + 2, &rows)?;
    let nu_tilde = FreeElem::basis(ring, s + 2, s);

    // A b = Σ_{i ≤ k+1} x_i u_i.
    let mut total = FreeElem::zero(t);
    for (x, u) in xs.iter().zip(us) {
        total = total.add(ring, &u.scale(ring, x))?;
    }
    let b = lift(ring, &total, &m.presentation().columns())?
        .ok_or_else(|| Error::Certificate("relation sum is not in the relations of M".into()))?;
    let mut g = b;
    g.push(Polynomial::zero());
    g.push(xs[k].clone());
    let g_star = FreeElem::new(ring, g);

    let mut identities = Vec::new();
    let mut push = |identity: &'static str, holds: bool| -> Result<()> {
        identities.push(IdentityCheck { identity, holds });
        if holds {
            Ok(())
        } else {
            Err(Error::Certificate(format!("identity {identity} fails")))
        }
    };

    // ν_h(g*) = (Σ_{i ≤ k} x_i u_i, x_{k+1}).
    let image = nu_h.mul_vec(ring, &g_star)?;
    let mut expected = FreeElem::zero(t);
    for (x, u) in xs[..k].iter().zip(us) {
        expected = expected.add(ring, &u.scale(ring, x))?;
    }
    let expected = expected.concat(&FreeElem::new(ring, vec![xs[k].clone()]));
    push("nu(g*) = sum_{i<=k} x_i u_i + x_{k+1} f*", image == expected)?;

    let psi_h = (0..t).all(|j| {
        let v = rows[j].dot(ring, &g_star).expect("ranks agree");
        ring.ideal_contains(&v, &ideal_i)
    });
    push("psi(H) in I", psi_h)?;
    let psi_y = ring.sub(&y.dot(ring, &g_star)?, &xs[k]);
    push("psi(y) = x_{k+1} mod I", ring.ideal_contains(&psi_y, &ideal_i))?;
    let psi_nu = nu_tilde.dot(ring, &g_star)?;
    push("psi(nu~) in I", ring.ideal_contains(&psi_nu, &ideal_i))?;

    let mut gens: Vec<FreeElem> = rows[..t].to_vec();
    for x in &ideal_i {
        gens.push(y.scale(ring, x));
    }
    let verdict = oracle.member(&nu_tilde, &FreeSubmodule::new(ring, s + 2, gens)?)?;
    let base_verdict = phantom_check(d, oracle)?;
    Ok(SopCertificateReport {
        identities,
        g_star: g_star.coords().iter().map(|c| ring.display(c)).collect(),
        consistent: !(base_verdict.is_positive() && verdict.is_not_in()),
        verdict,
        base_verdict,
    })
}
