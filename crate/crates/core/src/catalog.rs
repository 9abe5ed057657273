//! Classification data: which links and spatial graphs have finite
//! N-quandles, as declarative rows with parameter predicates.
//!
//! The built-in catalog lives in `data/catalog.json`; its schema is
//! documented in `data/CATALOG.md`. Predicates and size formulas are small
//! expressions evaluated over exact rationals.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Diagram, DiagramKind, NLabeling};

pub type Rational = Ratio<i128>;
pub type Params = BTreeMap<String, Rational>;

const BUILTIN: &str = include_str!("../data/catalog.json");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("family `{family}` takes parameters [{expected}], got [{got}]")]
    ParamArity { family: String, expected: String, got: String },
    #[error("parameters violate the domain of `{family}`: {domain}")]
    Domain { family: String, domain: String },
    #[error("family `{family}` has {expected} strands, labeling has {got}")]
    LabelingLength { family: String, expected: usize, got: usize },
    #[error("cannot parse parameter list `{0}`")]
    BadParams(String),
    #[error("expression error in `{expr}`: {message}")]
    Expr { expr: String, message: String },
    #[error("catalog document: {0}")]
    Document(String),
    #[error("vertex admissibility applies to graphs only")]
    NotAGraph,
}

fn expr_err(expr: &str, message: impl Into<String>) -> CatalogError {
    CatalogError::Expr { expr: expr.to_string(), message: message.into() }
}

// ---------------------------------------------------------------------------
// expressions

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Rem,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
}

#[derive(Debug, Clone, PartialEq)]
enum Expr {
    Num(Rational),
    Bool(bool),
    Var(String),
    Neg(Box<Expr>),
    Not(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    In(Box<Expr>, Vec<Expr>),
    Gcd(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Value {
    Num(Rational),
    Bool(bool),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(i128),
    Ident(String),
    Sym(&'static str),
}

fn tokenize(src: &str) -> Result<Vec<Tok>, CatalogError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(text.parse().map_err(|_| expr_err(src, "number too large"))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else {
            let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
            let sym = ["==", "!=", "<=", ">="].into_iter().find(|s| *s == two);
            if let Some(s) = sym {
                out.push(Tok::Sym(s));
                i += 2;
            } else {
                let s = ["+", "-", "*", "/", "%", "<", ">", "(", ")", "{", "}", ","]
                    .into_iter()
                    .find(|s| s.starts_with(c))
                    .ok_or_else(|| expr_err(src, format!("unexpected character `{c}`")))?;
                out.push(Tok::Sym(s));
                i += 1;
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(t)) if *t == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(t)) if t == w) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), CatalogError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(expr_err(self.src, format!("expected `{s}`")))
        }
    }

    fn or(&mut self) -> Result<Expr, CatalogError> {
        let mut e = self.and()?;
        while self.eat_word("or") {
            e = Expr::Bin(BinOp::Or, Box::new(e), Box::new(self.and()?));
        }
        Ok(e)
    }

    fn and(&mut self) -> Result<Expr, CatalogError> {
        let mut e = self.not()?;
        while self.eat_word("and") {
            e = Expr::Bin(BinOp::And, Box::new(e), Box::new(self.not()?));
        }
        Ok(e)
    }

    fn not(&mut self) -> Result<Expr, CatalogError> {
        if self.eat_word("not") {
            return Ok(Expr::Not(Box::new(self.not()?)));
        }
        self.cmp()
    }

    fn cmp(&mut self) -> Result<Expr, CatalogError> {
        let lhs = self.sum()?;
        let ops = [("==", BinOp::Eq), ("!=", BinOp::Ne), ("<=", BinOp::Le), (">=", BinOp::Ge), ("<", BinOp::Lt), (">", BinOp::Gt)];
        for (s, op) in ops {
            if self.eat_sym(s) {
                return Ok(Expr::Bin(op, Box::new(lhs), Box::new(self.sum()?)));
            }
        }
        if self.eat_word("in") {
            self.expect_sym("{")?;
            let mut set = vec![self.sum()?];
            while self.eat_sym(",") {
                set.push(self.sum()?);
            }
            self.expect_sym("}")?;
            return Ok(Expr::In(Box::new(lhs), set));
        }
        Ok(lhs)
    }

    fn sum(&mut self) -> Result<Expr, CatalogError> {
        let mut e = self.prod()?;
        loop {
            if self.eat_sym("+") {
                e = Expr::Bin(BinOp::Add, Box::new(e), Box::new(self.prod()?));
            } else if self.eat_sym("-") {
                e = Expr::Bin(BinOp::Sub, Box::new(e), Box::new(self.prod()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn prod(&mut self) -> Result<Expr, CatalogError> {
        let mut e = self.unary()?;
        loop {
            let op = if self.eat_sym("*") {
                BinOp::Mul
            } else if self.eat_sym("/") {
                BinOp::Div
            } else if self.eat_sym("%") {
                BinOp::Rem
            } else {
                return Ok(e);
            };
            e = Expr::Bin(op, Box::new(e), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Expr, CatalogError> {
        if self.eat_sym("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, CatalogError> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Expr::Num(Rational::from_integer(v)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "true" => Ok(Expr::Bool(true)),
                    "false" => Ok(Expr::Bool(false)),
                    "gcd" => {
                        self.expect_sym("(")?;
                        let a = self.sum()?;
                        self.expect_sym(",")?;
                        let b = self.sum()?;
                        self.expect_sym(")")?;
                        Ok(Expr::Gcd(Box::new(a), Box::new(b)))
                    }
                    "and" | "or" | "not" | "in" => Err(expr_err(self.src, format!("unexpected `{name}`"))),
                    _ => Ok(Expr::Var(name)),
                }
            }
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let e = self.or()?;
                self.expect_sym(")")?;
                Ok(e)
            }
            _ => Err(expr_err(self.src, "unexpected end of expression")),
        }
    }
}

/// A parsed predicate or formula, keeping its source for messages.
#[derive(Debug, Clone, PartialEq)]
pub struct Expression {
    source: String,
    ast: Expr,
}

impl Expression {
    pub fn parse(src: &str) -> Result<Expression, CatalogError> {
        let mut p = Parser { src, toks: tokenize(src)?, pos: 0 };
        let ast = p.or()?;
        if p.pos != p.toks.len() {
            return Err(expr_err(src, "trailing input"));
        }
        Ok(Expression { source: src.to_string(), ast })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    fn variables(&self) -> HashSet<String> {
        fn walk(e: &Expr, out: &mut HashSet<String>) {
            match e {
                Expr::Var(v) => {
                    out.insert(v.clone());
                }
                Expr::Neg(a) | Expr::Not(a) => walk(a, out),
                Expr::Bin(_, a, b) | Expr::Gcd(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Expr::In(a, set) => {
                    walk(a, out);
                    set.iter().for_each(|s| walk(s, out));
                }
                Expr::Num(_) | Expr::Bool(_) => {}
            }
        }
        let mut out = HashSet::new();
        walk(&self.ast, &mut out);
        out
    }

    fn eval(&self, env: &HashMap<String, Rational>) -> Result<Value, CatalogError> {
        eval(&self.ast, env).map_err(|m| expr_err(&self.source, m))
    }

    pub fn eval_bool(&self, env: &HashMap<String, Rational>) -> Result<bool, CatalogError> {
        match self.eval(env)? {
            Value::Bool(b) => Ok(b),
            Value::Num(_) => Err(expr_err(&self.source, "expected a condition, got a number")),
        }
    }

    pub fn eval_num(&self, env: &HashMap<String, Rational>) -> Result<Rational, CatalogError> {
        match self.eval(env)? {
            Value::Num(v) => Ok(v),
            Value::Bool(_) => Err(expr_err(&self.source, "expected a number, got a condition")),
        }
    }
}

fn eval(e: &Expr, env: &HashMap<String, Rational>) -> Result<Value, String> {
    let num = |e: &Expr| match eval(e, env)? {
        Value::Num(v) => Ok(v),
        Value::Bool(_) => Err("arithmetic on a condition".to_string()),
    };
    let boolean = |e: &Expr| match eval(e, env)? {
        Value::Bool(b) => Ok(b),
        Value::Num(_) => Err("logic on a number".to_string()),
    };
    let int = |v: Rational| if v.is_integer() { Ok(v.to_integer()) } else { Err(format!("{v} is not an integer")) };
    Ok(match e {
        Expr::Num(v) => Value::Num(*v),
        Expr::Bool(b) => Value::Bool(*b),
        Expr::Var(name) => Value::Num(*env.get(name).ok_or_else(|| format!("unbound variable `{name}`"))?),
        Expr::Neg(a) => Value::Num(-num(a)?),
        Expr::Not(a) => Value::Bool(!boolean(a)?),
        Expr::Gcd(a, b) => Value::Num(Rational::from_integer(int(num(a)?)?.gcd(&int(num(b)?)?))),
        Expr::In(a, set) => {
            let v = num(a)?;
            let mut found = false;
            for s in set {
                found |= num(s)? == v;
            }
            Value::Bool(found)
        }
        Expr::Bin(op, a, b) => match op {
            BinOp::And => Value::Bool(boolean(a)? && boolean(b)?),
            BinOp::Or => Value::Bool(boolean(a)? || boolean(b)?),
            _ => {
                let (x, y) = (num(a)?, num(b)?);
                match op {
                    BinOp::Add => Value::Num(x.checked_add(&y).ok_or("overflow")?),
                    BinOp::Sub => Value::Num(x.checked_sub(&y).ok_or("overflow")?),
                    BinOp::Mul => Value::Num(x.checked_mul(&y).ok_or("overflow")?),
                    BinOp::Div => {
                        if y == Rational::from_integer(0) {
                            return Err("division by zero".into());
                        }
                        Value::Num(x.checked_div(&y).ok_or("overflow")?)
                    }
                    BinOp::Rem => {
                        let (xi, yi) = (int(x)?, int(y)?);
                        if yi == 0 {
                            return Err("remainder by zero".into());
                        }
                        Value::Num(Rational::from_integer(xi.mod_floor(&yi.abs())))
                    }
                    BinOp::Eq => Value::Bool(x == y),
                    BinOp::Ne => Value::Bool(x != y),
                    BinOp::Lt => Value::Bool(x < y),
                    BinOp::Le => Value::Bool(x <= y),
                    BinOp::Gt => Value::Bool(x > y),
                    BinOp::Ge => Value::Bool(x >= y),
                    BinOp::And | BinOp::Or => unreachable!(),
                }
            }
        },
    })
}

// ---------------------------------------------------------------------------
// document

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum PatternItemDoc {
    Literal(u32),
    Var(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum LabelsDoc {
    Uniform(String),
    Pattern(Vec<PatternItemDoc>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RowDoc {
    labels: LabelsDoc,
    #[serde(rename = "where")]
    condition: String,
    #[serde(default)]
    any_order: bool,
    #[serde(default)]
    via: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct SizeDoc {
    #[serde(rename = "where")]
    condition: String,
    group: String,
    components: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum StrandsDoc {
    Fixed(usize),
    Formula(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum CompleteDoc {
    Flag(bool),
    Scope(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyDoc {
    id: String,
    name: String,
    source: String,
    kind: DiagramKind,
    #[serde(default)]
    strands: Option<StrandsDoc>,
    #[serde(default)]
    params: Vec<String>,
    #[serde(default)]
    domain: Option<String>,
    #[serde(default)]
    complete: Option<CompleteDoc>,
    #[serde(default)]
    symmetry: Option<String>,
    #[serde(default)]
    vertices: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    struts: Vec<[String; 2]>,
    #[serde(default)]
    diagram: Option<String>,
    #[serde(default)]
    unverified: bool,
    rows: Vec<RowDoc>,
    #[serde(default)]
    sizes: Vec<SizeDoc>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogDoc {
    version: u32,
    families: Vec<FamilyDoc>,
}

// ---------------------------------------------------------------------------
// model

/// Which labelings a family's rows exhaust: outside them the link is known
/// to have an infinite N-quandle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Completeness {
    None,
    All,
    Uniform,
    NonUniform,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PatternItem {
    Literal(u32),
    Var(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum LabelPattern {
    /// Every label equals the named variable.
    Uniform(String),
    Positional(Vec<PatternItem>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub labels: LabelPattern,
    pub condition: Expression,
    /// The pattern matches in any strand order.
    pub any_order: bool,
    /// Another family this row is inherited from, when the same link
    /// appears under both names.
    pub via: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SizeFormula {
    pub condition: Expression,
    pub group: Expression,
    pub components: Vec<Expression>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Family {
    pub id: String,
    pub name: String,
    pub source: String,
    pub kind: DiagramKind,
    strands: Option<Expression>,
    pub params: Vec<String>,
    domain: Option<Expression>,
    pub completeness: Completeness,
    /// Label permutations under which the family is symmetric; the identity
    /// comes first.
    symmetries: Vec<Vec<usize>>,
    /// Edge indices at each vertex, when the graph structure is known.
    pub vertices: Option<Vec<Vec<usize>>>,
    struts: Vec<[Expression; 2]>,
    pub diagram: Option<String>,
    pub unverified: bool,
    pub rows: Vec<Row>,
    pub sizes: Vec<SizeFormula>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Finite,
    Infinite,
    NotApplicable,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinitenessVerdict {
    pub family: String,
    pub verdict: Verdict,
    pub justification: String,
    /// Index of the matching row, for `Finite`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub row: Option<usize>,
    /// The parameters put a strut into a rational tangle, so the object is a
    /// spatial graph rather than a link.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub strut_graph: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeRecord {
    pub group_order: u64,
    /// Component sizes in strand order.
    pub components: Vec<u64>,
    pub total: u64,
}

fn parse_expr(src: &str, family: &str) -> Result<Expression, CatalogError> {
    Expression::parse(src).map_err(|e| CatalogError::Document(format!("family `{family}`: {e}")))
}

fn check_vars(e: &Expression, known: &HashSet<String>, family: &str) -> Result<(), CatalogError> {
    let mut unknown: Vec<String> = e.variables().difference(known).cloned().collect();
    unknown.sort();
    if unknown.is_empty() {
        Ok(())
    } else {
        Err(CatalogError::Document(format!(
            "family `{family}`: `{}` uses undeclared {}",
            e.source(),
            unknown.join(", ")
        )))
    }
}

/// Edge permutations `σ` carrying the vertex incidence multiset to itself.
fn graph_automorphisms(vertices: &[Vec<usize>], n_edges: usize) -> Vec<Vec<usize>> {
    let canon = |vs: &[Vec<usize>]| {
        let mut sets: Vec<Vec<usize>> = vs.iter().map(|v| {
            let mut v = v.clone();
            v.sort_unstable();
            v
        }).collect();
        sets.sort();
        sets
    };
    let target = canon(vertices);
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n_edges).collect();
    permutations(&mut perm, 0, &mut |p| {
        let image: Vec<Vec<usize>> = vertices.iter().map(|v| v.iter().map(|&e| p[e]).collect()).collect();
        if canon(&image) == target {
            out.push(p.to_vec());
        }
    });
    out.sort();
    out
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| out.push(p.to_vec()));
    out.sort();
    out
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

impl Family {
    fn from_doc(doc: FamilyDoc) -> Result<Family, CatalogError> {
        let id = doc.id.clone();
        let params: HashSet<String> = doc.params.iter().cloned().collect();
        if params.len() != doc.params.len() {
            return Err(CatalogError::Document(format!("family `{id}`: duplicate parameter")));
        }
        let strands = match &doc.strands {
            None => None,
            Some(StrandsDoc::Fixed(k)) => Some(Expression::parse(&k.to_string())?),
            Some(StrandsDoc::Formula(s)) => Some(parse_expr(s, &id)?),
        };
        if let Some(s) = &strands {
            check_vars(s, &params, &id)?;
        }
        let domain = doc.domain.as_deref().map(|d| parse_expr(d, &id)).transpose()?;
        if let Some(d) = &domain {
            check_vars(d, &params, &id)?;
        }
        let completeness = match &doc.complete {
            None | Some(CompleteDoc::Flag(false)) => Completeness::None,
            Some(CompleteDoc::Flag(true)) => Completeness::All,
            Some(CompleteDoc::Scope(s)) if s == "uniform" => Completeness::Uniform,
            Some(CompleteDoc::Scope(s)) if s == "non-uniform" => Completeness::NonUniform,
            Some(CompleteDoc::Scope(s)) => {
                return Err(CatalogError::Document(format!("family `{id}`: unknown completeness `{s}`")))
            }
        };
        if doc.kind == DiagramKind::Graph && completeness != Completeness::None {
            return Err(CatalogError::Document(format!("family `{id}`: graph families cannot be complete")));
        }
        let mut rows = Vec::new();
        let mut row_vars = HashSet::new();
        for r in &doc.rows {
            let mut known = params.clone();
            let labels = match &r.labels {
                LabelsDoc::Uniform(v) => {
                    known.insert(v.clone());
                    LabelPattern::Uniform(v.clone())
                }
                LabelsDoc::Pattern(items) => {
                    if let Some(StrandsDoc::Fixed(k)) = doc.strands {
                        if items.len() != k {
                            return Err(CatalogError::Document(format!(
                                "family `{id}`: pattern of length {} for {k} strands",
                                items.len()
                            )));
                        }
                    }
                    LabelPattern::Positional(
                        items
                            .iter()
                            .map(|i| match i {
                                PatternItemDoc::Literal(v) => PatternItem::Literal(*v),
                                PatternItemDoc::Var(v) => {
                                    known.insert(v.clone());
                                    PatternItem::Var(v.clone())
                                }
                            })
                            .collect(),
                    )
                }
            };
            let condition = parse_expr(&r.condition, &id)?;
            check_vars(&condition, &known, &id)?;
            row_vars.extend(known);
            rows.push(Row { labels, condition, any_order: r.any_order, via: r.via.clone() });
        }
        let mut sizes = Vec::new();
        for s in &doc.sizes {
            let f = SizeFormula {
                condition: parse_expr(&s.condition, &id)?,
                group: parse_expr(&s.group, &id)?,
                components: s.components.iter().map(|c| parse_expr(c, &id)).collect::<Result<_, _>>()?,
            };
            for e in std::iter::once(&f.condition).chain([&f.group]).chain(&f.components) {
                check_vars(e, &row_vars, &id)?;
            }
            sizes.push(f);
        }
        let fixed_strands = match doc.strands {
            Some(StrandsDoc::Fixed(k)) => Some(k),
            _ => None,
        };
        let symmetries = match doc.symmetry.as_deref() {
            None => fixed_strands.map(|k| vec![(0..k).collect()]).unwrap_or_default(),
            Some("all") => {
                let k = fixed_strands.ok_or_else(|| {
                    CatalogError::Document(format!("family `{id}`: symmetry needs a fixed strand count"))
                })?;
                all_permutations(k)
            }
            Some("graph") => {
                let (k, vs) = fixed_strands.zip(doc.vertices.as_ref()).ok_or_else(|| {
                    CatalogError::Document(format!("family `{id}`: graph symmetry needs strands and vertices"))
                })?;
                graph_automorphisms(vs, k)
            }
            Some(other) => return Err(CatalogError::Document(format!("family `{id}`: unknown symmetry `{other}`"))),
        };
        if let (Some(vs), Some(k)) = (&doc.vertices, fixed_strands) {
            let mut count = vec![0; k];
            for v in vs {
                for &e in v {
                    if e >= k {
                        return Err(CatalogError::Document(format!("family `{id}`: vertex names edge {e}")));
                    }
                    count[e] += 1;
                }
            }
            if count.iter().any(|&c| c != 2) {
                return Err(CatalogError::Document(format!("family `{id}`: every edge needs two ends")));
            }
        }
        let struts = doc
            .struts
            .iter()
            .map(|[p, q]| {
                let (p, q) = (parse_expr(p, &id)?, parse_expr(q, &id)?);
                check_vars(&p, &params, &id)?;
                check_vars(&q, &params, &id)?;
                Ok([p, q])
            })
            .collect::<Result<Vec<_>, CatalogError>>()?;
        Ok(Family {
            id: doc.id,
            name: doc.name,
            source: doc.source,
            kind: doc.kind,
            strands,
            params: doc.params,
            domain,
            completeness,
            symmetries,
            vertices: doc.vertices,
            struts,
            diagram: doc.diagram,
            unverified: doc.unverified,
            rows,
            sizes,
        })
    }

    fn env(&self, params: &Params) -> Result<HashMap<String, Rational>, CatalogError> {
        let mut given: Vec<&String> = params.keys().collect();
        given.sort();
        let mut expected: Vec<&String> = self.params.iter().collect();
        expected.sort();
        if given != expected {
            return Err(CatalogError::ParamArity {
                family: self.id.clone(),
                expected: self.params.join(","),
                got: params.keys().cloned().collect::<Vec<_>>().join(","),
            });
        }
        let env: HashMap<String, Rational> = params.iter().map(|(k, v)| (k.clone(), *v)).collect();
        if let Some(d) = &self.domain {
            let ok = d.eval_bool(&env).unwrap_or(false);
            if !ok {
                return Err(CatalogError::Domain { family: self.id.clone(), domain: d.source().to_string() });
            }
        }
        Ok(env)
    }

    fn strand_count(&self, env: &HashMap<String, Rational>) -> Result<Option<usize>, CatalogError> {
        let Some(s) = &self.strands else { return Ok(None) };
        let v = s.eval_num(env)?;
        if !v.is_integer() || v < Rational::from_integer(1) {
            return Err(expr_err(s.source(), format!("strand count {v} is not a positive integer")));
        }
        Ok(Some(v.to_integer() as usize))
    }

    /// Binds the pattern against `labels`; variables already in `env` must
    /// agree with the label.
    fn bind(&self, row: &Row, labels: &[u32], env: &HashMap<String, Rational>) -> Option<HashMap<String, Rational>> {
        let mut env = env.clone();
        let bind = |name: &str, v: u32, env: &mut HashMap<String, Rational>| {
            let v = Rational::from_integer(v as i128);
            match env.get(name) {
                Some(&old) => old == v,
                None => {
                    env.insert(name.to_string(), v);
                    true
                }
            }
        };
        match &row.labels {
            LabelPattern::Uniform(var) => {
                if !labels.iter().all(|&l| bind(var, l, &mut env)) {
                    return None;
                }
            }
            LabelPattern::Positional(items) => {
                if items.len() != labels.len() {
                    return None;
                }
                for (item, &l) in items.iter().zip(labels) {
                    let ok = match item {
                        PatternItem::Literal(v) => *v == l,
                        PatternItem::Var(name) => bind(name, l, &mut env),
                    };
                    if !ok {
                        return None;
                    }
                }
            }
        }
        Some(env)
    }

    /// First `(row, permutation, bindings)` matching the labels. The
    /// permutation `p` maps pattern position `j` to strand `p[j]`.
    fn find_row(
        &self,
        labels: &[u32],
        env: &HashMap<String, Rational>,
    ) -> Result<Option<(usize, Vec<usize>, HashMap<String, Rational>)>, CatalogError> {
        let identity: Vec<usize> = (0..labels.len()).collect();
        let perms: Vec<Vec<usize>> = if self.symmetries.first().map(Vec::len) == Some(labels.len()) {
            self.symmetries.clone()
        } else {
            vec![identity]
        };
        for p in &perms {
            let permuted: Vec<u32> = p.iter().map(|&i| labels[i]).collect();
            for (ri, row) in self.rows.iter().enumerate() {
                if let Some(bound) = self.bind(row, &permuted, env) {
                    if row.condition.eval_bool(&bound)? {
                        return Ok(Some((ri, p.clone(), bound)));
                    }
                }
            }
        }
        if self.rows.iter().any(|r| r.any_order) {
            for p in all_permutations(labels.len()) {
                let permuted: Vec<u32> = p.iter().map(|&i| labels[i]).collect();
                for (ri, row) in self.rows.iter().enumerate().filter(|(_, r)| r.any_order) {
                    if let Some(bound) = self.bind(row, &permuted, env) {
                        if row.condition.eval_bool(&bound)? {
                            return Ok(Some((ri, p, bound)));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    fn has_strut(&self, env: &HashMap<String, Rational>) -> Result<bool, CatalogError> {
        for [p, q] in &self.struts {
            let (p, q) = (p.eval_num(env)?, q.eval_num(env)?);
            if p.is_integer() && q.is_integer() && p.to_integer().gcd(&q.to_integer()) > 1 {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Whether a multiset of three labels can meet at an orbifold vertex:
/// `(2,2,k)` with `k ≥ 2`, `(2,3,3)`, `(2,3,4)` or `(2,3,5)`.
pub fn labels_admissible(labels: &[u32]) -> bool {
    if labels.len() != 3 {
        return false;
    }
    let mut l = labels.to_vec();
    l.sort_unstable();
    matches!(l.as_slice(), [2, 2, k] if *k >= 2) || matches!(l.as_slice(), [2, 3, 3] | [2, 3, 4] | [2, 3, 5])
}

/// Every vertex is trivalent with an admissible label multiset.
pub fn vertex_admissible(d: &Diagram, n: &NLabeling) -> Result<bool, CatalogError> {
    if d.kind != DiagramKind::Graph {
        return Err(CatalogError::NotAGraph);
    }
    d.check_labeling(n).map_err(|e| CatalogError::Document(e.to_string()))?;
    Ok(d.vertices.iter().all(|v| {
        let labels: Vec<u32> = v.incident.iter().map(|(arc, _)| n.get(d.strand_of(*arc))).collect();
        labels_admissible(&labels)
    }))
}

#[derive(Debug, Clone)]
pub struct Catalog {
    pub version: u32,
    families: Vec<Family>,
}

impl Catalog {
    pub fn from_json(text: &str) -> Result<Catalog, CatalogError> {
        let doc: CatalogDoc = serde_json::from_str(text).map_err(|e| CatalogError::Document(e.to_string()))?;
        let mut seen = HashSet::new();
        let mut families = Vec::with_capacity(doc.families.len());
        for f in doc.families {
            if !seen.insert(f.id.clone()) {
                return Err(CatalogError::Document(format!("duplicate family `{}`", f.id)));
            }
            families.push(Family::from_doc(f)?);
        }
        Ok(Catalog { version: doc.version, families })
    }

    /// The catalog shipped with the crate.
    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::from_json(BUILTIN).expect("built-in catalog is valid"))
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn family(&self, id: &str) -> Result<&Family, CatalogError> {
        self.families.iter().find(|f| f.id == id).ok_or_else(|| CatalogError::UnknownFamily(id.to_string()))
    }

    pub fn lookup(&self, id: &str, params: &Params, n: &NLabeling) -> Result<FinitenessVerdict, CatalogError> {
        let family = self.family(id)?;
        let env = family.env(params)?;
        let labels = n.values();
        if let Some(k) = family.strand_count(&env)? {
            if k != labels.len() {
                return Err(CatalogError::LabelingLength { family: id.to_string(), expected: k, got: labels.len() });
            }
        }
        let verdict = |v: Verdict, why: String| FinitenessVerdict {
            family: id.to_string(),
            verdict: v,
            justification: why,
            row: None,
            strut_graph: false,
            notes: Vec::new(),
        };
        if labels.iter().any(|&l| l < 2) {
            return Ok(verdict(Verdict::NotApplicable, "labels below 2 are outside the classification".into()));
        }
        if let Some(vs) = &family.vertices {
            let ok = vs.iter().all(|v| labels_admissible(&v.iter().map(|&e| labels[e]).collect::<Vec<_>>()));
            if !ok {
                return Ok(verdict(
                    Verdict::Unknown,
                    "vertex labels are not those of an orbifold singular locus".into(),
                ));
            }
        }
        if let Some((ri, _, _)) = family.find_row(labels, &env)? {
            let mut v = verdict(Verdict::Finite, format!("{} ({}), row {}", family.name, family.source, ri + 1));
            if let Some(other) = &family.rows[ri].via {
                v.justification.push_str(&format!(", the same link as a member of {other}"));
            }
            v.row = Some(ri);
            v.strut_graph = family.has_strut(&env)?;
            if v.strut_graph {
                v.notes.push("a rational tangle contains a strut: the object is a spatial graph".into());
            }
            if family.unverified {
                v.notes.push("row read from an under-specified source entry".into());
            }
            return Ok(v);
        }
        let uniform = labels.windows(2).all(|w| w[0] == w[1]);
        let complete = family.kind == DiagramKind::Link
            && match family.completeness {
                Completeness::All => true,
                Completeness::Uniform => uniform,
                Completeness::NonUniform => !uniform,
                Completeness::None => false,
            };
        Ok(if complete {
            verdict(Verdict::Infinite, format!("no row of {} matches and the link list is complete", family.name))
        } else {
            verdict(Verdict::Unknown, format!("no row of {} matches", family.name))
        })
    }

    /// Known sizes `|π₁^N|`, `|Q_N^i|` and `|Q_N|`, or `None`.
    pub fn expected_sizes(&self, id: &str, params: &Params, n: &NLabeling) -> Result<Option<SizeRecord>, CatalogError> {
        let family = self.family(id)?;
        let env = family.env(params)?;
        let Some((_, perm, bound)) = family.find_row(n.values(), &env)? else { return Ok(None) };
        for s in &family.sizes {
            if !s.condition.eval_bool(&bound)? {
                continue;
            }
            let as_count = |e: &Expression| -> Result<u64, CatalogError> {
                let v = e.eval_num(&bound)?;
                if !v.is_integer() || v < Rational::from_integer(0) {
                    return Err(expr_err(e.source(), format!("size {v} is not a natural number")));
                }
                u64::try_from(v.to_integer()).map_err(|_| expr_err(e.source(), "size overflow"))
            };
            let group_order = as_count(&s.group)?;
            let mut components = vec![0u64; n.len()];
            for (j, c) in s.components.iter().enumerate() {
                components[perm[j]] = as_count(c)?;
            }
            let total = components.iter().sum();
            return Ok(Some(SizeRecord { group_order, components, total }));
        }
        Ok(None)
    }
}

/// Parses `k=1,m=2,p=-3/2` into named rationals.
pub fn parse_params(text: &str) -> Result<Params, CatalogError> {
    let mut out = Params::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part.split_once('=').ok_or_else(|| CatalogError::BadParams(text.to_string()))?;
        let value: Rational = value.trim().parse().map_err(|_| CatalogError::BadParams(text.to_string()))?;
        if out.insert(name.trim().to_string(), value).is_some() {
            return Err(CatalogError::BadParams(text.to_string()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(&str, i128)]) -> HashMap<String, Rational> {
        pairs.iter().map(|(k, v)| (k.to_string(), Rational::from_integer(*v))).collect()
    }

    #[test]
    fn expressions() {
        let e = Expression::parse("k + p1/q + p2/q != 0 and n == 2").unwrap();
        assert!(e.eval_bool(&env(&[("k", 1), ("p1", 1), ("p2", 1), ("q", 2), ("n", 2)])).unwrap());
        assert!(!e.eval_bool(&env(&[("k", -1), ("p1", 1), ("p2", 1), ("q", 2), ("n", 2)])).unwrap());
        let e = Expression::parse("n in {3, 4, 5}").unwrap();
        assert!(e.eval_bool(&env(&[("n", 4)])).unwrap());
        assert!(!e.eval_bool(&env(&[("n", 6)])).unwrap());
        let e = Expression::parse("-7 % 2").unwrap();
        assert_eq!(e.eval_num(&env(&[])).unwrap(), Rational::from_integer(1));
        let e = Expression::parse("gcd(6, 4) * (2 - 3)").unwrap();
        assert_eq!(e.eval_num(&env(&[])).unwrap(), Rational::from_integer(-2));
        assert!(Expression::parse("1/0").unwrap().eval_num(&env(&[])).is_err());
        assert!(Expression::parse("n +").is_err());
        assert!(Expression::parse("n ==").is_err());
        assert!(Expression::parse("(n").is_err());
        assert!(Expression::parse("n $ 2").is_err());
        assert!(Expression::parse("not n > 2 or true").unwrap().eval_bool(&env(&[("n", 3)])).unwrap());
    }

    #[test]
    fn builtin_loads() {
        let c = Catalog::builtin();
        assert!(c.families().len() >= 30);
        for f in c.families() {
            assert!(!f.rows.is_empty(), "{}", f.id);
        }
    }

    #[test]
    fn symmetry_groups() {
        let c = Catalog::builtin();
        assert_eq!(c.family("theta3").unwrap().symmetries.len(), 6);
        assert_eq!(c.family("planar-K4").unwrap().symmetries.len(), 24);
        assert_eq!(c.family("T_3,3").unwrap().symmetries.len(), 6);
        assert_eq!(c.family("knotted-K4").unwrap().symmetries.len(), 1);
        assert_eq!(c.family("planar-K4").unwrap().symmetries[0], vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn bad_documents() {
        let bad = [
            r#"{"version":1,"families":[{"id":"x","name":"x","source":"s","kind":"link","rows":[{"labels":{"uniform":"n"},"where":"m > 1"}]}]}"#,
            r#"{"version":1,"families":[{"id":"x","name":"x","source":"s","kind":"graph","complete":true,"rows":[]}]}"#,
            r#"{"version":1,"families":[{"id":"x","name":"x","source":"s","kind":"link","strands":2,"rows":[{"labels":{"pattern":[2]},"where":"true"}]}]}"#,
            r#"{"version":1,"families":[{"id":"x","name":"x","source":"s","kind":"link","bogus":1,"rows":[]}]}"#,
        ];
        for doc in bad {
            assert!(matches!(Catalog::from_json(doc), Err(CatalogError::Document(_))), "{doc}");
        }
    }

    #[test]
    fn params_parse() {
        let p = parse_params("k=1, p1=-3/2").unwrap();
        assert_eq!(p["p1"], Rational::new(-3, 2));
        assert!(parse_params("k").is_err());
        assert!(parse_params("k=1,k=2").is_err());
        assert!(parse_params("").unwrap().is_empty());
    }

    #[test]
    fn admissible_multisets() {
        assert!(labels_admissible(&[2, 2, 5]));
        assert!(labels_admissible(&[5, 2, 3]));
        assert!(labels_admissible(&[2, 2, 2]));
        assert!(!labels_admissible(&[3, 3, 3]));
        assert!(!labels_admissible(&[2, 3, 6]));
        assert!(!labels_admissible(&[2, 2]));
        assert!(!labels_admissible(&[2, 2, 2, 2]));
    }
}
