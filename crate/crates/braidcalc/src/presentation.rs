//! Quadratic-linear-constant algebra presentations, the scalar expression
//! parser and the JSON algebra-file format.
//!
//! A relation is stored as "LHS = 0" with explicit quadratic, linear and
//! constant parts, so quadratic + linear + constant = 0 holds in the algebra.
//! The induced bracket therefore maps a quadratic part to minus the linear
//! part, and the constant map to minus the constant.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{echelonize, Subspace, Tensor, Word};
use crate::scalar::{Rational, Scalar};

/// One defining relation: quadratic + linear + constant = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub quadratic: Tensor,
    pub linear: Tensor,
    pub constant: Scalar,
}

impl Relation {
    pub fn new(quadratic: Tensor, linear: Tensor, constant: Scalar) -> Relation {
        Relation {
            quadratic,
            linear,
            constant,
        }
    }

    pub fn quadratic_only(quadratic: Tensor) -> Relation {
        Relation {
            quadratic,
            linear: Tensor::zero(),
            constant: Scalar::zero(),
        }
    }

    /// The relation as a single mixed-degree tensor (constant on the empty
    /// word).
    pub fn full_tensor(&self) -> Tensor {
        let mut t = self.quadratic.add(&self.linear);
        t.add_term(Word::empty(), self.constant.clone());
        t
    }
}

/// Generators plus quadratic-linear-constant relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    pub name: String,
    pub symbol: Option<String>,
    pub parameters: BTreeMap<String, Scalar>,
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
}

impl AlgebraPresentation {
    pub fn new(
        name: impl Into<String>,
        symbol: Option<String>,
        generators: Vec<String>,
        relations: Vec<Relation>,
    ) -> Result<AlgebraPresentation> {
        let p = AlgebraPresentation {
            name: name.into(),
            symbol,
            parameters: BTreeMap::new(),
            generators,
            relations,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Variable name used when printing coefficients.
    pub fn symbol_or_default(&self) -> &str {
        self.symbol.as_deref().unwrap_or("q")
    }

    pub fn generator_index(&self, name: &str) -> Result<i32> {
        self.generators
            .iter()
            .position(|g| g == name)
            .map(|i| i as i32)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    fn validate(&self) -> Result<()> {
        let n = self.generators.len() as i32;
        {
            let mut seen = std::collections::BTreeSet::new();
            for g in &self.generators {
                if !seen.insert(g) {
                    return Err(Error::Schema(format!("duplicate generator `{}`", g)));
                }
            }
        }
        for (idx, r) in self.relations.iter().enumerate() {
            if r.quadratic.is_zero() {
                return Err(Error::Schema(format!(
                    "relation {} has zero quadratic part",
                    idx
                )));
            }
            if r.quadratic.degree() != Some(2) {
                return Err(Error::Schema(format!(
                    "relation {} quadratic part is not homogeneous of degree 2",
                    idx
                )));
            }
            if !r.linear.is_zero() && r.linear.degree() != Some(1) {
                return Err(Error::Schema(format!(
                    "relation {} linear part is not homogeneous of degree 1",
                    idx
                )));
            }
            for (w, _) in r.quadratic.iter().chain(r.linear.iter()) {
                if w.0.iter().any(|&l| l < 0 || l >= n) {
                    return Err(Error::Schema(format!(
                        "relation {} references an undeclared generator index",
                        idx
                    )));
                }
            }
        }
        // declared relations must be independent in their quadratic parts
        let quads: Vec<Tensor> = self.relations.iter().map(|r| r.quadratic.clone()).collect();
        let span = echelonize(&quads, 2)?;
        if span.dim() != self.relations.len() {
            return Err(Error::Schema(format!(
                "relations are dependent: {} independent quadratic parts out of {}",
                span.dim(),
                self.relations.len()
            )));
        }
        Ok(())
    }

    /// Echelonized span of the quadratic parts.
    pub fn quadratic_subspace(&self) -> Subspace {
        let quads: Vec<Tensor> = self.relations.iter().map(|r| r.quadratic.clone()).collect();
        echelonize(&quads, 2).expect("validated homogeneous parts")
    }

    /// Specializes the symbolic variable to a rational value.
    pub fn eval_at(&self, point: &Rational) -> Result<AlgebraPresentation> {
        let mut relations = Vec::with_capacity(self.relations.len());
        for r in &self.relations {
            relations.push(Relation {
                quadratic: r.quadratic.eval_at(point)?,
                linear: r.linear.eval_at(point)?,
                constant: Scalar::from_rat(r.constant.eval_at(point)?),
            });
        }
        let mut out = self.clone();
        out.relations = relations;
        out.symbol = None;
        // a specialization may kill a quadratic part; re-check
        out.validate()?;
        Ok(out)
    }
}

// ---- Scalar expression parser ----

/// Abstract syntax tree for coefficient expressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarExpr {
    Literal(Rational),
    Ident(String),
    Neg(Box<ScalarExpr>),
    Add(Box<ScalarExpr>, Box<ScalarExpr>),
    Sub(Box<ScalarExpr>, Box<ScalarExpr>),
    Mul(Box<ScalarExpr>, Box<ScalarExpr>),
    Div(Box<ScalarExpr>, Box<ScalarExpr>),
    Pow(Box<ScalarExpr>, i64),
}

impl ScalarExpr {
    /// Parses the expression grammar; structured errors with byte positions.
    pub fn parse(text: &str) -> Result<ScalarExpr> {
        let mut p = ExprParser::new(text);
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < p.bytes.len() {
            return Err(Error::Parse {
                pos: p.pos,
                msg: format!("unexpected `{}`", p.rest_snippet()),
            });
        }
        Ok(e)
    }

    /// Evaluates against an environment of bound names.
    pub fn eval(&self, env: &BTreeMap<String, Scalar>) -> Result<Scalar> {
        Ok(match self {
            ScalarExpr::Literal(r) => Scalar::from_rat(r.clone()),
            ScalarExpr::Ident(name) => env
                .get(name)
                .cloned()
                .ok_or_else(|| Error::UnboundIdentifier(name.clone()))?,
            ScalarExpr::Neg(e) => e.eval(env)?.neg(),
            ScalarExpr::Add(a, b) => a.eval(env)?.add(&b.eval(env)?),
            ScalarExpr::Sub(a, b) => a.eval(env)?.sub(&b.eval(env)?),
            ScalarExpr::Mul(a, b) => a.eval(env)?.mul(&b.eval(env)?),
            ScalarExpr::Div(a, b) => a.eval(env)?.div(&b.eval(env)?)?,
            ScalarExpr::Pow(e, k) => e.eval(env)?.pow(*k)?,
        })
    }
}

/// Parses and evaluates a coefficient expression in one step.
pub fn parse_scalar_expr(text: &str, env: &BTreeMap<String, Scalar>) -> Result<Scalar> {
    ScalarExpr::parse(text)?.eval(env)
}

struct ExprParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn new(text: &'a str) -> ExprParser<'a> {
        ExprParser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn rest_snippet(&self) -> String {
        let rest = &self.bytes[self.pos.min(self.bytes.len())..];
        String::from_utf8_lossy(&rest[..rest.len().min(8)]).to_string()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<ScalarExpr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = ScalarExpr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = ScalarExpr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ScalarExpr> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = ScalarExpr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    acc = ScalarExpr::Div(Box::new(acc), Box::new(self.factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ScalarExpr> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.signed_integer()?;
            return Ok(ScalarExpr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<ScalarExpr> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(ScalarExpr::Neg(Box::new(self.factor()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::Parse {
                        pos: self.pos,
                        msg: "expected `)`".to_string(),
                    });
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                Ok(ScalarExpr::Literal(Rational::from(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric()
                        || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos])
                    .expect("ascii identifier")
                    .to_string();
                Ok(ScalarExpr::Ident(name))
            }
            _ => Err(Error::Parse {
                pos: self.pos,
                msg: format!("expected a value, found `{}`", self.rest_snippet()),
            }),
        }
    }

    fn digits(&mut self) -> Result<num::BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse {
                pos: self.pos,
                msg: "expected digits".to_string(),
            });
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("digits");
        s.parse::<num::BigInt>().map_err(|e| Error::Parse {
            pos: start,
            msg: e.to_string(),
        })
    }

    fn signed_integer(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let n = self.digits()?;
        let v: i64 = n.try_into().map_err(|_| Error::Parse {
            pos: self.pos,
            msg: "exponent too large".to_string(),
        })?;
        Ok(if neg { -v } else { v })
    }
}

// ---- JSON algebra-file format ----

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileAlgebra {
    name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    symbol: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    parameters: BTreeMap<String, String>,
    generators: Vec<String>,
    relations: Vec<FileRelation>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRelation {
    quadratic: Vec<FileTerm>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    linear: Vec<FileTerm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    constant: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileTerm {
    word: Vec<String>,
    coeff: String,
}

/// Parses and validates an algebra file. Parameters are specialized during
/// parsing; only the declared symbolic variable survives into coefficients.
pub fn parse_algebra_file(bytes: &[u8]) -> Result<AlgebraPresentation> {
    let file: FileAlgebra =
        serde_json::from_slice(bytes).map_err(|e| Error::Schema(e.to_string()))?;

    let mut env: BTreeMap<String, Scalar> = BTreeMap::new();
    if let Some(sym) = &file.symbol {
        env.insert(sym.clone(), Scalar::z());
    }
    // parameters may reference the symbol and each other in any order;
    // resolve by fixpoint iteration, erroring on cycles
    let mut pending: BTreeMap<String, String> = file.parameters.clone();
    while !pending.is_empty() {
        let mut progressed = false;
        let names: Vec<String> = pending.keys().cloned().collect();
        for name in names {
            let text = pending[&name].clone();
            match parse_scalar_expr(&text, &env) {
                Ok(v) => {
                    env.insert(name.clone(), v);
                    pending.remove(&name);
                    progressed = true;
                }
                Err(Error::UnboundIdentifier(_)) => {}
                Err(e) => return Err(e),
            }
        }
        if !progressed {
            return Err(Error::Schema(format!(
                "unresolvable parameters: {}",
                pending.keys().cloned().collect::<Vec<_>>().join(", ")
            )));
        }
    }

    let gen_index = |name: &str| -> Result<i32> {
        file.generators
            .iter()
            .position(|g| g == name)
            .map(|i| i as i32)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    };

    let mut relations = Vec::with_capacity(file.relations.len());
    for fr in &file.relations {
        let mut quadratic = Tensor::zero();
        for t in &fr.quadratic {
            if t.word.len() != 2 {
                return Err(Error::Schema(format!(
                    "quadratic term has word length {}",
                    t.word.len()
                )));
            }
            let w = Word(vec![gen_index(&t.word[0])?, gen_index(&t.word[1])?]);
            quadratic.add_term(w, parse_scalar_expr(&t.coeff, &env)?);
        }
        let mut linear = Tensor::zero();
        for t in &fr.linear {
            if t.word.len() != 1 {
                return Err(Error::Schema(format!(
                    "linear term has word length {}",
                    t.word.len()
                )));
            }
            let w = Word(vec![gen_index(&t.word[0])?]);
            linear.add_term(w, parse_scalar_expr(&t.coeff, &env)?);
        }
        let constant = match &fr.constant {
            Some(c) => parse_scalar_expr(c, &env)?,
            None => Scalar::zero(),
        };
        relations.push(Relation {
            quadratic,
            linear,
            constant,
        });
    }

    let mut parameters = BTreeMap::new();
    for name in file.parameters.keys() {
        parameters.insert(name.clone(), env[name].clone());
    }

    let p = AlgebraPresentation {
        name: file.name,
        symbol: file.symbol,
        parameters,
        generators: file.generators,
        relations,
    };
    p.validate()?;
    Ok(p)
}

/// Canonical JSON serialization: equal presentations produce byte-identical
/// output.
pub fn serialize_algebra(p: &AlgebraPresentation) -> String {
    let var = p.symbol_or_default();
    let term_list = |t: &Tensor| -> Vec<FileTerm> {
        t.iter()
            .map(|(w, c)| FileTerm {
                word: w
                    .0
                    .iter()
                    .map(|&i| p.generators[i as usize].clone())
                    .collect(),
                coeff: c.display_with(var),
            })
            .collect()
    };
    let file = FileAlgebra {
        name: p.name.clone(),
        symbol: p.symbol.clone(),
        parameters: p
            .parameters
            .iter()
            .map(|(k, v)| (k.clone(), v.display_with(var)))
            .collect(),
        generators: p.generators.clone(),
        relations: p
            .relations
            .iter()
            .map(|r| FileRelation {
                quadratic: term_list(&r.quadratic),
                linear: term_list(&r.linear),
                constant: if r.constant.is_zero() {
                    None
                } else {
                    Some(r.constant.display_with(var))
                },
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("serializable presentation");
    out.push('\n');
    out
}
