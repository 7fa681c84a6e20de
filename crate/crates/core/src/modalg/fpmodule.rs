use std::fmt;

use crate::error::{Error, Result};
use crate::modalg::free::{FreeElem, FreeSubmodule, Matrix};
use crate::modalg::syzygy::kernel_of_matrix;
use crate::poly::Polynomial;
use crate::ring::QuotientRing;

/// A finitely presented module `coker(A)` with `A` a `t × s` matrix whose
/// columns generate the relations inside `R^t`.
#[derive(Clone)]
pub struct FpModule {
    ring: QuotientRing,
    presentation: Matrix,
    relations: FreeSubmodule,
}

impl fmt::Debug for FpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FpModule")
            .field("rank", &self.rank())
            .field("presentation", &self.presentation)
            .finish()
    }
}

impl FpModule {
    pub fn new(ring: &QuotientRing, presentation: Matrix) -> Result<Self> {
        let relations = FreeSubmodule::new(ring, presentation.nrows(), presentation.columns())?;
        Ok(Self {
            ring: ring.clone(),
            presentation,
            relations,
        })
    }

    /// `R^t`.
    pub fn free(ring: &QuotientRing, t: usize) -> Self {
        Self::new(ring, Matrix::zero(t, 0)).expect("empty presentation")
    }

    /// `R/(gens)`.
    pub fn cyclic(ring: &QuotientRing, gens: &[Polynomial]) -> Result<Self> {
        Self::new(ring, Matrix::new(ring, 1, gens.len(), gens.to_vec())?)
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    /// Number of generators `t` of the free cover.
    pub fn rank(&self) -> usize {
        self.presentation.nrows()
    }

    pub fn presentation(&self) -> &Matrix {
        &self.presentation
    }

    pub fn relations(&self) -> &FreeSubmodule {
        &self.relations
    }

    /// `u = 0` in the module.
    pub fn is_zero_elem(&self, u: &FreeElem) -> Result<bool> {
        self.relations.contains(u)
    }

    pub fn elems_equal(&self, u: &FreeElem, v: &FreeElem) -> Result<bool> {
        self.is_zero_elem(&u.sub(&self.ring, v)?)
    }

    /// Canonical representative of the class of `u`.
    pub fn normal_form(&self, u: &FreeElem) -> Result<FreeElem> {
        self.relations.reduce(u)
    }

    /// The preimage of the submodule generated by `gens` in the free cover:
    /// `span(gens) + relations`.
    pub fn lifted_submodule(&self, gens: &[FreeElem]) -> Result<FreeSubmodule> {
        self.relations.extend(gens)
    }

    /// `M / span(gens)` presented as `coker [A | gens]`.
    pub fn quotient(&self, gens: &[FreeElem]) -> Result<FpModule> {
        let extra = Matrix::from_columns(self.rank(), gens)?;
        FpModule::new(&self.ring, self.presentation.hconcat(&extra)?)
    }

    pub fn is_free_presentation(&self) -> bool {
        self.relations.is_zero()
    }
}

/// A homomorphism of finitely presented modules given by a matrix between the
/// free covers (`target.rank() × source.rank()`). Construction checks that
/// every source relation lands in the target relations.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: FpModule,
    target: FpModule,
    matrix: Matrix,
}

impl ModuleMap {
    pub fn new(source: &FpModule, target: &FpModule, matrix: Matrix) -> Result<Self> {
        if source.ring != target.ring {
            return Err(Error::RingMismatch);
        }
        if matrix.nrows() != target.rank() || matrix.ncols() != source.rank() {
            return Err(Error::Invalid(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                target.rank(),
                source.rank()
            )));
        }
        for (j, col) in source.presentation.columns().iter().enumerate() {
            let image = matrix.mul_vec(&source.ring, col)?;
            if !target.is_zero_elem(&image)? {
                return Err(Error::Certificate(format!(
                    "relation column {j} maps to {} which is nonzero in the target",
                    image.display(&source.ring)
                )));
            }
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    pub fn identity(m: &FpModule) -> Self {
        Self {
            source: m.clone(),
            target: m.clone(),
            matrix: Matrix::identity(&m.ring, m.rank()),
        }
    }

    pub fn zero(source: &FpModule, target: &FpModule) -> Self {
        Self {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zero(target.rank(), source.rank()),
        }
    }

    pub fn source(&self) -> &FpModule {
        &self.source
    }

    pub fn target(&self) -> &FpModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, u: &FreeElem) -> Result<FreeElem> {
        self.matrix.mul_vec(&self.source.ring, u)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ModuleMap) -> Result<ModuleMap> {
        let m = self.matrix.mul(&self.source.ring, &inner.matrix)?;
        ModuleMap::new(&inner.source, &self.target, m)
    }

    /// Image of a list of elements.
    pub fn apply_all(&self, us: &[FreeElem]) -> Result<Vec<FreeElem>> {
        us.iter().map(|u| self.apply(u)).collect()
    }

    /// Equality as homomorphisms: every generator maps to the same class.
    pub fn equals(&self, other: &ModuleMap) -> Result<bool> {
        for j in 0..self.source.rank() {
            let d = self.matrix.column(j).sub(&self.source.ring, &other.matrix.column(j))?;
            if !self.target.is_zero_elem(&d)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `M1 ⊕ M2` with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: FpModule,
    pub inclusions: [ModuleMap; 2],
    pub projections: [ModuleMap; 2],
}

pub fn direct_sum(m1: &FpModule, m2: &FpModule) -> Result<DirectSum> {
    if m1.ring != m2.ring {
        return Err(Error::RingMismatch);
    }
    let ring = &m1.ring;
    let module = FpModule::new(ring, m1.presentation.block_diag(&m2.presentation))?;
    let (t1, t2) = (m1.rank(), m2.rank());
    let id1 = Matrix::identity(ring, t1);
    let id2 = Matrix::identity(ring, t2);
    let inc1 = id1.transpose().block_diag(&Matrix::zero(t2, 0));
    let inc2 = Matrix::zero(t1, 0).block_diag(&id2);
    let proj1 = Matrix::from_rows(t1 + t2, &inc1.columns())?;
    let proj2 = Matrix::from_rows(t1 + t2, &inc2.columns())?;
    Ok(DirectSum {
        inclusions: [
            ModuleMap::new(m1, &module, inc1)?,
            ModuleMap::new(m2, &module, inc2)?,
        ],
        projections: [
            ModuleMap::new(&module, m1, proj1)?,
            ModuleMap::new(&module, m2, proj2)?,
        ],
        module,
    })
}

/// `Hom(M, R)` as the functionals on `R^t` that vanish on every relation:
/// the kernel of the transposed presentation matrix.
pub fn hom_into_ring(m: &FpModule) -> Result<FreeSubmodule> {
    kernel_of_matrix(&m.ring, &m.presentation.transpose())
}
