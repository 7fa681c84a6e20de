use serde::Serialize;

use crate::closure::{CheckStatus, ClosureOracle, Verdict};
use crate::error::{Error, Result};
use crate::modalg::{colon_into, lift, FpModule, FreeElem, FreeSubmodule, Matrix, ModuleMap};
use crate::ring::QuotientRing;

/// The data of an extension `0 → R → M → Q → 0` with a free presentation
/// `G → F → Q → 0`, `F` mapping to `M`: the matrix `ν: G → F`, the induced
/// functional `ν̃ ∈ G^∨`, and `Im ν^∨ ⊆ G^∨` spanned by the rows of `ν`.
#[derive(Clone, Debug)]
pub struct ExtensionDiagram {
    module: FpModule,
    alpha: FreeElem,
    nu: Matrix,
    nu_tilde: FreeElem,
    dual_image: FreeSubmodule,
}

impl ExtensionDiagram {
    pub(crate) fn from_parts(module: FpModule, alpha: FreeElem, nu: Matrix, nu_tilde: FreeElem) -> Result<Self> {
        let dual_image = FreeSubmodule::new(module.ring(), nu.ncols(), nu.rows())?;
        Ok(Self {
            module,
            alpha,
            nu,
            nu_tilde,
            dual_image,
        })
    }

    pub fn ring(&self) -> &QuotientRing {
        self.module.ring()
    }

    /// `M`, presented on the free module `F` of the diagram.
    pub fn module(&self) -> &FpModule {
        &self.module
    }

    /// `α(1)` in coordinates of `F`.
    pub fn alpha(&self) -> &FreeElem {
        &self.alpha
    }

    pub fn nu(&self) -> &Matrix {
        &self.nu
    }

    pub fn nu_tilde(&self) -> &FreeElem {
        &self.nu_tilde
    }

    pub fn dual_image(&self) -> &FreeSubmodule {
        &self.dual_image
    }

    /// `Q = coker ν`.
    pub fn cokernel(&self) -> Result<FpModule> {
        FpModule::new(self.ring(), self.nu.clone())
    }
}

/// The diagram with `F` the free cover of `M`, `ν = [A | a]` and
/// `ν̃ = (0, ..., 0, 1)`.
pub fn canonical_diagram(m: &FpModule, a: &FreeElem) -> Result<ExtensionDiagram> {
    let ring = m.ring();
    if a.rank() != m.rank() {
        return Err(Error::RankMismatch {
            expected: m.rank(),
            found: a.rank(),
        });
    }
    if let Some(g) = colon_into(ring, m.relations(), a)?.first() {
        return Err(Error::AlphaNotInjective(ring.display(g)));
    }
    let a_col = Matrix::from_columns(m.rank(), std::slice::from_ref(a))?;
    let nu = m.presentation().hconcat(&a_col)?;
    let s = m.presentation().ncols();
    let nu_tilde = FreeElem::basis(ring, s + 1, s);
    // ν̃ is the coordinate functional of the α column, which is a itself.
    if nu.column(s) != *a {
        return Err(Error::Certificate("last column of nu is not alpha(1)".into()));
    }
    ExtensionDiagram::from_parts(m.clone(), a.clone(), nu, nu_tilde)
}

/// Closure verdict for `ν̃ ∈ (Im ν^∨)^cl` inside `G^∨`.
pub fn phantom_check(d: &ExtensionDiagram, oracle: &dyn ClosureOracle) -> Result<Verdict> {
    oracle.member(&d.nu_tilde, &d.dual_image)
}

/// When `ν̃ ∈ Im ν^∨` on the nose, a functional `ρ` on `F` with `ρ ν = ν̃`.
/// For the canonical diagram `ρ` kills the relations and sends `α(1)` to 1,
/// so it is a retraction of `α`.
pub fn splitting(d: &ExtensionDiagram) -> Result<Option<FreeElem>> {
    let ring = d.ring();
    let Some(coeffs) = lift(ring, &d.nu_tilde, &d.nu.rows())? else {
        return Ok(None);
    };
    let rho = FreeElem::new(ring, coeffs);
    for j in 0..d.nu.ncols() {
        let value = rho.dot(ring, &d.nu.column(j))?;
        if !ring.is_zero(&ring.sub(&value, d.nu_tilde.get(j))) {
            return Err(Error::Certificate(format!("retraction fails on column {j}")));
        }
    }
    Ok(Some(rho))
}

/// `α(1) ∉ 𝔪M`, i.e. `a ∉ Im A + 𝔪 R^t`.
pub fn alpha_avoids_mm(d: &ExtensionDiagram) -> Result<bool> {
    let ring = d.ring();
    let t = d.module.rank();
    let mut extra = Vec::new();
    for x in ring.base().vars() {
        for j in 0..t {
            extra.push(FreeElem::basis(ring, t, j).scale(ring, &x));
        }
    }
    Ok(!d.module.lifted_submodule(&extra)?.contains(&d.alpha)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorReport {
    pub composite: Verdict,
    pub alpha1: Verdict,
    pub status: CheckStatus,
}

/// If `θ ∘ α_1` is phantom then so is `α_1`. Only a proved "in" for the
/// composite can flag a "not in" for `α_1`.
pub fn factor_phantom_check(
    alpha1: &ExtensionDiagram,
    theta: &ModuleMap,
    oracle: &dyn ClosureOracle,
) -> Result<FactorReport> {
    if theta.source().presentation() != alpha1.module.presentation() {
        return Err(Error::Invalid("theta must start at the module of alpha_1".into()));
    }
    let composite_diagram = canonical_diagram(theta.target(), &theta.apply(&alpha1.alpha)?)?;
    let composite = phantom_check(&composite_diagram, oracle)?;
    let a1 = phantom_check(alpha1, oracle)?;
    let status = if composite.is_proved_in() {
        if a1.is_not_in() {
            CheckStatus::Violation
        } else if a1.is_unknown() {
            CheckStatus::Undetermined
        } else {
            CheckStatus::Holds
        }
    } else if composite.is_positive() && !a1.is_not_in() {
        CheckStatus::Holds
    } else if composite.is_not_in() {
        CheckStatus::Vacuous
    } else {
        CheckStatus::Undetermined
    };
    Ok(FactorReport {
        composite,
        alpha1: a1,
        status,
    })
}
