use closure_core::expr::Expr;
use closure_core::MonomialOrder;

use crate::ast::*;
use crate::lexer::{tokenize, Pos, Tok, Token};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {message}")]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
    /// Tokens that would have been accepted, empty for lexical errors.
    pub expected: Vec<String>,
}

pub fn parse(src: &str) -> Result<Session, ParseError> {
    let tokens = tokenize(src).map_err(|e| ParseError {
        pos: e.pos,
        message: e.message,
        expected: Vec::new(),
    })?;
    let mut p = Parser { tokens, i: 0 };
    let mut stmts = Vec::new();
    while p.peek() != &Tok::Eof {
        stmts.push(p.stmt()?);
    }
    Ok(Session { stmts })
}

const VERDICTS: [&str; 7] = ["in", "in_to_bound", "not_in", "unknown", "consistent", "violation", "error"];

struct Parser {
    tokens: Vec<Token>,
    i: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.i].tok
    }

    fn pos(&self) -> Pos {
        self.tokens[self.i].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.i].clone();
        if t.tok != Tok::Eof {
            self.i += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> PResult<T> {
        let expected: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
        Err(ParseError {
            pos: self.pos(),
            message: format!("expected {}, found {}", expected.join(" or "), self.peek()),
            expected,
        })
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(t) if *t == s)
    }

    fn is_kw(&self, k: &str) -> bool {
        matches!(self.peek(), Tok::Ident(t) if t == k)
    }

    fn sym(&mut self, s: &str) -> PResult<()> {
        if self.is_sym(s) {
            self.bump();
            Ok(())
        } else {
            self.fail(&[&format!("`{s}`")])
        }
    }

    fn kw(&mut self, k: &str) -> PResult<()> {
        if self.is_kw(k) {
            self.bump();
            Ok(())
        } else {
            self.fail(&[&format!("`{k}`")])
        }
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn eat_kw(&mut self, k: &str) -> bool {
        if self.is_kw(k) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn name(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.fail(&["name"]),
        }
    }

    fn int(&mut self) -> PResult<u64> {
        match *self.peek() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.fail(&["integer"]),
        }
    }

    fn stmt(&mut self) -> PResult<Stmt> {
        let pos = self.pos();
        let kind = match self.peek() {
            Tok::Ident(k) => match k.as_str() {
                "ring" => self.ring()?,
                "ideal" => {
                    self.bump();
                    let name = self.name()?;
                    self.sym("=")?;
                    StmtKind::Ideal { name, gens: self.poly_list()? }
                }
                "module" => {
                    self.bump();
                    let name = self.name()?;
                    self.sym("=")?;
                    StmtKind::Module { name, module: self.mod_expr()? }
                }
                "element" => {
                    self.bump();
                    let name = self.name()?;
                    self.sym("=")?;
                    StmtKind::Element { name, vec: self.vec_expr()? }
                }
                "map" => {
                    self.bump();
                    let name = self.name()?;
                    self.sym(":")?;
                    let source = self.mod_expr()?;
                    self.sym("->")?;
                    let target = self.mod_expr()?;
                    self.sym("=")?;
                    StmtKind::Map { name, source, target, matrix: self.matrix()? }
                }
                "oracle" => {
                    self.bump();
                    let name = self.name()?;
                    self.sym("=")?;
                    StmtKind::Oracle { name, oracle: self.oracle()? }
                }
                "check" => StmtKind::Check(self.check()?),
                _ => return self.fail(&STMT_KWS),
            },
            _ => return self.fail(&STMT_KWS),
        };
        Ok(Stmt { pos, kind })
    }

    fn ring(&mut self) -> PResult<StmtKind> {
        self.kw("ring")?;
        let name = self.name()?;
        self.sym("=")?;
        self.kw("poly")?;
        self.sym("(")?;
        let p = self.int()?;
        self.sym(";")?;
        let mut vars = vec![self.name()?];
        while self.eat_sym(",") {
            vars.push(self.name()?);
        }
        let mut order = None;
        if self.eat_sym(";") {
            order = Some(if self.eat_kw("grevlex") {
                MonomialOrder::Grevlex
            } else if self.eat_kw("lex") {
                MonomialOrder::Lex
            } else {
                return self.fail(&["`grevlex`", "`lex`"]);
            });
        }
        self.sym(")")?;
        let mut ideal = Vec::new();
        if self.eat_sym("/") {
            self.kw("ideal")?;
            ideal = self.poly_list()?;
        }
        let domain = self.eat_kw("domain");
        Ok(StmtKind::Ring(RingDecl { name, p, vars, order, ideal, domain }))
    }

    fn oracle(&mut self) -> PResult<OracleExpr> {
        if self.eat_kw("triv") {
            return Ok(OracleExpr::Triv);
        }
        if self.eat_kw("fc") {
            self.sym("(")?;
            let emax = self.emax()?;
            self.sym(")")?;
            return Ok(OracleExpr::Fc { emax });
        }
        if self.eat_kw("tc") {
            self.sym("(")?;
            self.kw("c")?;
            self.sym("=")?;
            let c = self.poly()?;
            self.sym(",")?;
            let testelt = self.eat_kw("testelt");
            if testelt {
                self.sym(",")?;
            }
            let emax = self.emax()?;
            self.sym(")")?;
            return Ok(OracleExpr::Tc { c, testelt, emax });
        }
        self.fail(&["`triv`", "`fc`", "`tc`"])
    }

    fn emax(&mut self) -> PResult<u64> {
        self.kw("emax")?;
        self.sym("=")?;
        self.int()
    }

    fn check(&mut self) -> PResult<Check> {
        self.kw("check")?;
        let kind = match self.peek() {
            Tok::Ident(k) => match k.as_str() {
                "member" => {
                    self.bump();
                    let u = self.vec_expr()?;
                    self.kw("in")?;
                    let sub = self.sub_expr()?;
                    let within = if self.eat_kw("within") { Some(self.mod_expr()?) } else { None };
                    CheckKind::Member { u, sub, within }
                }
                "phantom" => {
                    self.bump();
                    let module = self.mod_expr()?;
                    self.kw("via")?;
                    CheckKind::Phantom { module, via: self.vec_expr()? }
                }
                "modify" => {
                    self.bump();
                    let module = self.mod_expr()?;
                    self.kw("via")?;
                    let via = self.vec_expr()?;
                    self.kw("along")?;
                    let along = self.poly_list()?;
                    let relation = if self.eat_kw("relation") { Some(self.vec_list()?) } else { None };
                    CheckKind::Modify { module, via, along, relation }
                }
                "sop" => {
                    self.bump();
                    let module = self.mod_expr()?;
                    self.kw("via")?;
                    let via = self.vec_expr()?;
                    self.kw("along")?;
                    let along = self.poly_list()?;
                    self.kw("relation")?;
                    CheckKind::Sop { module, via, along, relation: self.vec_list()? }
                }
                "solid" => {
                    self.bump();
                    CheckKind::Solid { module: self.mod_expr()? }
                }
                "axioms" => {
                    self.bump();
                    if self.eat_kw("preset") {
                        CheckKind::Axioms(AxiomSource::Preset)
                    } else if self.eat_kw("random") {
                        CheckKind::Axioms(AxiomSource::Random(self.int()?))
                    } else {
                        return self.fail(&["`preset`", "`random`"]);
                    }
                }
                "dim" => {
                    self.bump();
                    let params = if self.is_sym("(") { self.poly_list()? } else { Vec::new() };
                    CheckKind::Dim { params }
                }
                _ => return self.fail(&CHECK_KWS),
            },
            _ => return self.fail(&CHECK_KWS),
        };
        self.kw("with")?;
        let oracle = self.name()?;
        let expect = if self.eat_kw("expect") {
            match self.peek().clone() {
                Tok::Ident(v) if VERDICTS.contains(&v.as_str()) => {
                    self.bump();
                    Some(v)
                }
                _ => return self.fail(&VERDICTS.map(|v| v)),
            }
        } else {
            None
        };
        Ok(Check { kind, oracle, expect })
    }

    fn mod_expr(&mut self) -> PResult<ModExpr> {
        if self.eat_kw("coker") {
            return Ok(ModExpr::Coker(self.matrix()?));
        }
        if self.eat_kw("free") {
            self.sym("(")?;
            let n = self.int()?;
            self.sym(")")?;
            return Ok(ModExpr::Free(n));
        }
        match self.peek() {
            Tok::Ident(_) => Ok(ModExpr::Named(self.name()?)),
            _ => self.fail(&["`coker`", "`free`", "module name"]),
        }
    }

    fn sub_expr(&mut self) -> PResult<SubExpr> {
        if self.eat_kw("span") {
            return Ok(SubExpr::Span(self.vec_list()?));
        }
        match self.peek() {
            Tok::Ident(_) => Ok(SubExpr::Named(self.name()?)),
            _ => self.fail(&["`span`", "ideal name"]),
        }
    }

    fn vec_expr(&mut self) -> PResult<VecExpr> {
        match self.peek() {
            Tok::Ident(_) => Ok(VecExpr::Named(self.name()?)),
            Tok::Sym("(") => Ok(VecExpr::Literal(self.poly_list()?)),
            _ => self.fail(&["`(`", "element name"]),
        }
    }

    fn vec_list(&mut self) -> PResult<Vec<VecExpr>> {
        self.sym("(")?;
        let mut out = vec![self.vec_expr()?];
        while self.eat_sym(",") {
            out.push(self.vec_expr()?);
        }
        self.close_list()?;
        Ok(out)
    }

    fn close_list(&mut self) -> PResult<()> {
        if self.eat_sym(")") {
            Ok(())
        } else {
            self.fail(&["`,`", "`)`"])
        }
    }

    fn matrix(&mut self) -> PResult<Vec<Vec<Expr>>> {
        self.sym("(")?;
        let mut rows = vec![self.poly_list()?];
        while self.eat_sym(",") {
            rows.push(self.poly_list()?);
        }
        self.close_list()?;
        Ok(rows)
    }

    fn poly_list(&mut self) -> PResult<Vec<Expr>> {
        self.sym("(")?;
        let mut out = vec![self.poly()?];
        while self.eat_sym(",") {
            out.push(self.poly()?);
        }
        self.close_list()?;
        Ok(out)
    }

    fn poly(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_sym("+") {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_sym("-") {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        while self.eat_sym("*") {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.eat_sym("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat_sym("^") {
            return Ok(Expr::Pow(Box::new(base), self.int()?));
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Ident(v) => {
                self.bump();
                Ok(Expr::Var(v))
            }
            Tok::Sym("(") => {
                self.bump();
                let e = self.poly()?;
                self.sym(")")?;
                Ok(e)
            }
            _ => self.fail(&["integer", "variable", "`(`"]),
        }
    }
}

const STMT_KWS: [&str; 7] = ["`ring`", "`ideal`", "`module`", "`element`", "`map`", "`oracle`", "`check`"];
const CHECK_KWS: [&str; 7] = ["`member`", "`phantom`", "`modify`", "`sop`", "`solid`", "`axioms`", "`dim`"];
