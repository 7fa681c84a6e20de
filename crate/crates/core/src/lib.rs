//! Computer-algebra kernel for closure operations over F_p-algebras:
//! Gröbner bases, finitely presented modules, Frobenius and tight closure
//! oracles, phantom extensions, module modifications and solidity.

pub mod closure;
pub mod error;
pub mod expr;
pub mod field;
pub mod frobenius;
pub mod gb;
pub mod ideal;
pub mod modalg;
pub mod monomial;
pub mod phantom;
pub mod poly;
pub mod ring;
pub mod solidity;

pub use closure::{ClosureOracle, Oracle, Verdict};
pub use error::{Error, Result};
pub use field::{FpScalar, PrimeField};
pub use modalg::{FpModule, FreeElem, FreeSubmodule, Matrix, ModuleMap};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{PolyRing, Polynomial};
pub use ring::{is_partial_sop, PartialSop, QuotientRing, SopCertificate};
