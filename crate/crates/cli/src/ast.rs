//! Session syntax tree. `Display` prints the canonical surface syntax, which
//! parses back to the same tree.

use std::fmt;

use closure_core::expr::Expr;
use closure_core::MonomialOrder;

use crate::lexer::Pos;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Session {
    pub stmts: Vec<Stmt>,
}

impl Session {
    /// Statements without positions, for structural comparison.
    pub fn kinds(&self) -> Vec<&StmtKind> {
        self.stmts.iter().map(|s| &s.kind).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stmt {
    pub pos: Pos,
    pub kind: StmtKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDecl {
    pub name: String,
    pub p: u64,
    pub vars: Vec<String>,
    pub order: Option<MonomialOrder>,
    pub ideal: Vec<Expr>,
    pub domain: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    Ring(RingDecl),
    Ideal { name: String, gens: Vec<Expr> },
    Module { name: String, module: ModExpr },
    Element { name: String, vec: VecExpr },
    Map { name: String, source: ModExpr, target: ModExpr, matrix: Vec<Vec<Expr>> },
    Oracle { name: String, oracle: OracleExpr },
    Check(Check),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModExpr {
    Named(String),
    /// Rows of the presentation matrix.
    Coker(Vec<Vec<Expr>>),
    Free(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VecExpr {
    /// A declared element, or `e<i>` for the i-th basis vector (1-based).
    Named(String),
    Literal(Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubExpr {
    /// A declared ideal, as a submodule of `R^1`.
    Named(String),
    Span(Vec<VecExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleExpr {
    Triv,
    Fc { emax: u64 },
    Tc { c: Expr, testelt: bool, emax: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomSource {
    Preset,
    Random(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Member { u: VecExpr, sub: SubExpr, within: Option<ModExpr> },
    Phantom { module: ModExpr, via: VecExpr },
    Modify { module: ModExpr, via: VecExpr, along: Vec<Expr>, relation: Option<Vec<VecExpr>> },
    Sop { module: ModExpr, via: VecExpr, along: Vec<Expr>, relation: Vec<VecExpr> },
    Solid { module: ModExpr },
    Axioms(AxiomSource),
    Dim { params: Vec<Expr> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub kind: CheckKind,
    pub oracle: String,
    pub expect: Option<String>,
}

fn list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

fn paren_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    f.write_str("(")?;
    list(f, items)?;
    f.write_str(")")
}

fn matrix(f: &mut fmt::Formatter<'_>, rows: &[Vec<Expr>]) -> fmt::Result {
    f.write_str("(")?;
    for (i, row) in rows.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        paren_list(f, row)?;
    }
    f.write_str(")")
}

impl fmt::Display for ModExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModExpr::Named(n) => f.write_str(n),
            ModExpr::Coker(rows) => {
                f.write_str("coker")?;
                matrix(f, rows)
            }
            ModExpr::Free(n) => write!(f, "free({n})"),
        }
    }
}

impl fmt::Display for VecExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VecExpr::Named(n) => f.write_str(n),
            VecExpr::Literal(c) => paren_list(f, c),
        }
    }
}

impl fmt::Display for SubExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubExpr::Named(n) => f.write_str(n),
            SubExpr::Span(v) => {
                f.write_str("span")?;
                paren_list(f, v)
            }
        }
    }
}

impl fmt::Display for OracleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleExpr::Triv => f.write_str("triv"),
            OracleExpr::Fc { emax } => write!(f, "fc(emax = {emax})"),
            OracleExpr::Tc { c, testelt, emax } => {
                write!(f, "tc(c = {c}")?;
                if *testelt {
                    f.write_str(", testelt")?;
                }
                write!(f, ", emax = {emax})")
            }
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckKind::Member { u, sub, within } => {
                write!(f, "member {u} in {sub}")?;
                if let Some(m) = within {
                    write!(f, " within {m}")?;
                }
                Ok(())
            }
            CheckKind::Phantom { module, via } => write!(f, "phantom {module} via {via}"),
            CheckKind::Modify { module, via, along, relation } => {
                write!(f, "modify {module} via {via} along ")?;
                paren_list(f, along)?;
                if let Some(r) = relation {
                    f.write_str(" relation ")?;
                    paren_list(f, r)?;
                }
                Ok(())
            }
            CheckKind::Sop { module, via, along, relation } => {
                write!(f, "sop {module} via {via} along ")?;
                paren_list(f, along)?;
                f.write_str(" relation ")?;
                paren_list(f, relation)
            }
            CheckKind::Solid { module } => write!(f, "solid {module}"),
            CheckKind::Axioms(AxiomSource::Preset) => f.write_str("axioms preset"),
            CheckKind::Axioms(AxiomSource::Random(n)) => write!(f, "axioms random {n}"),
            CheckKind::Dim { params } => {
                f.write_str("dim")?;
                if !params.is_empty() {
                    f.write_str(" ")?;
                    paren_list(f, params)?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "check {} with {}", self.kind, self.oracle)?;
        if let Some(e) = &self.expect {
            write!(f, " expect {e}")?;
        }
        Ok(())
    }
}

impl fmt::Display for StmtKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StmtKind::Ring(r) => {
                write!(f, "ring {} = poly({}; ", r.name, r.p)?;
                list(f, &r.vars)?;
                if let Some(o) = r.order {
                    write!(f, "; {}", o.name())?;
                }
                f.write_str(")")?;
                if !r.ideal.is_empty() {
                    f.write_str(" / ideal")?;
                    paren_list(f, &r.ideal)?;
                }
                if r.domain {
                    f.write_str(" domain")?;
                }
                Ok(())
            }
            StmtKind::Ideal { name, gens } => {
                write!(f, "ideal {name} = ")?;
                paren_list(f, gens)
            }
            StmtKind::Module { name, module } => write!(f, "module {name} = {module}"),
            StmtKind::Element { name, vec } => write!(f, "element {name} = {vec}"),
            StmtKind::Map { name, source, target, matrix: m } => {
                write!(f, "map {name} : {source} -> {target} = ")?;
                matrix(f, m)
            }
            StmtKind::Oracle { name, oracle } => write!(f, "oracle {name} = {oracle}"),
            StmtKind::Check(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{}", s.kind)?;
        }
        Ok(())
    }
}
