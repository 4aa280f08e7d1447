//! Expression trees for sequence identities.
//!
//! An expression denotes a function of one integer variable `n`, built from
//! integer constants, sequence terms at affine indices (`F[2*n+1]`,
//! `U[n-3; 1/2, -3/5]`), the sign sequence `S[idx] = (-1)^idx`, sums,
//! differences, products, powers, rational scalings, and prefix summations
//! `sum(i, body)` meaning `body(0) + body(1) + ... + body(n)`.
//!
//! Summations must not nest, their bound variable cannot be `n`, and inside
//! a summation body every non-constant index must use the bound variable.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::scalar::{rat_display, rat_pow, Rat};
use crate::seq::{LucasParams, SeqKind};
use num_traits::{One, Signed, Zero};

/// The variable an index ranges over.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IndexVar {
    /// The ambient variable of the identity.
    N,
    /// A summation variable, by name.
    Sum(String),
}

/// An index of the form `coeff * var + offset`. `coeff == 0` encodes a
/// constant index; the variable is ignored in that case.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineIndex {
    pub coeff: i64,
    pub var: IndexVar,
    pub offset: i64,
}

impl AffineIndex {
    pub fn new(coeff: i64, var: IndexVar, offset: i64) -> Self {
        AffineIndex { coeff, var, offset }
    }

    /// `n + offset`
    pub fn n(offset: i64) -> Self {
        Self::new(1, IndexVar::N, offset)
    }

    /// `coeff*n + offset`
    pub fn scaled_n(coeff: i64, offset: i64) -> Self {
        Self::new(coeff, IndexVar::N, offset)
    }

    pub fn constant(value: i64) -> Self {
        Self::new(0, IndexVar::N, value)
    }

    pub fn is_constant(&self) -> bool {
        self.coeff == 0
    }

    pub fn eval(&self, n: i64, bound: Option<(&str, i64)>) -> Result<i64, Error> {
        if self.coeff == 0 {
            return Ok(self.offset);
        }
        let v = match &self.var {
            IndexVar::N => n,
            IndexVar::Sum(name) => match bound {
                Some((b, val)) if b == name => val,
                _ => {
                    return Err(Error::Precondition(format!(
                        "unbound index variable {name}"
                    )))
                }
            },
        };
        self.coeff
            .checked_mul(v)
            .and_then(|t| t.checked_add(self.offset))
            .ok_or_else(|| Error::Precondition("index overflow".into()))
    }

    fn var_name(&self) -> &str {
        match &self.var {
            IndexVar::N => "n",
            IndexVar::Sum(name) => name,
        }
    }
}

impl std::fmt::Display for AffineIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeff == 0 {
            return write!(f, "{}", self.offset);
        }
        match self.coeff {
            1 => {}
            -1 => write!(f, "-")?,
            c => write!(f, "{c}*")?,
        }
        write!(f, "{}", self.var_name())?;
        if self.offset > 0 {
            write!(f, "+{}", self.offset)?;
        } else if self.offset < 0 {
            write!(f, "-{}", -self.offset)?;
        }
        Ok(())
    }
}

/// An identity side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Const(Rat),
    Seq { kind: SeqKind, index: AffineIndex },
    /// `(-1)^index`
    SignPow { index: AffineIndex },
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Scale(Rat, Box<Expr>),
    Sum { var: String, body: Box<Expr> },
}

impl Expr {
    pub fn int(v: i64) -> Expr {
        Expr::Const(crate::scalar::rat(v))
    }

    pub fn fib(index: AffineIndex) -> Expr {
        Expr::Seq {
            kind: SeqKind::Fib,
            index,
        }
    }

    pub fn lucas(index: AffineIndex) -> Expr {
        Expr::Seq {
            kind: SeqKind::Lucas,
            index,
        }
    }

    pub fn signpow(index: AffineIndex) -> Expr {
        Expr::SignPow { index }
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn pow(self, k: u32) -> Expr {
        Expr::Pow(Box::new(self), k)
    }

    pub fn sum(var: &str, body: Expr) -> Expr {
        Expr::Sum {
            var: var.to_string(),
            body: Box::new(body),
        }
    }

    /// Evaluate at `n`. Summations run `0..=n` (empty for negative `n`).
    pub fn eval(&self, n: i64) -> Result<Rat, Error> {
        self.eval_inner(n, None)
    }

    fn eval_inner(&self, n: i64, bound: Option<(&str, i64)>) -> Result<Rat, Error> {
        match self {
            Expr::Const(c) => Ok(c.clone()),
            Expr::Seq { kind, index } => Ok(kind.eval(index.eval(n, bound)?)),
            Expr::SignPow { index } => {
                let e = index.eval(n, bound)?;
                Ok(if e.rem_euclid(2) == 0 {
                    Rat::one()
                } else {
                    -Rat::one()
                })
            }
            Expr::Add(a, b) => Ok(a.eval_inner(n, bound)? + b.eval_inner(n, bound)?),
            Expr::Sub(a, b) => Ok(a.eval_inner(n, bound)? - b.eval_inner(n, bound)?),
            Expr::Mul(a, b) => Ok(a.eval_inner(n, bound)? * b.eval_inner(n, bound)?),
            Expr::Pow(e, k) => Ok(rat_pow(&e.eval_inner(n, bound)?, *k as i64)),
            Expr::Scale(c, e) => Ok(c * e.eval_inner(n, bound)?),
            Expr::Sum { var, body } => {
                let mut acc = Rat::zero();
                for i in 0..=n {
                    acc += body.eval_inner(n, Some((var.as_str(), i)))?;
                }
                Ok(acc)
            }
        }
    }

    pub fn contains_sum(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::Seq { .. } | Expr::SignPow { .. } => false,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.contains_sum() || b.contains_sum()
            }
            Expr::Pow(e, _) | Expr::Scale(_, e) => e.contains_sum(),
            Expr::Sum { .. } => true,
        }
    }

    /// Structural sanity for programmatically built trees; parsed trees
    /// satisfy this by construction.
    pub fn validate(&self) -> Result<(), Error> {
        self.validate_inner(None)
    }

    fn validate_index(index: &AffineIndex, sum_var: Option<&str>) -> Result<(), Error> {
        if index.coeff == 0 {
            return Ok(());
        }
        match (&index.var, sum_var) {
            (IndexVar::N, None) => Ok(()),
            (IndexVar::N, Some(v)) => Err(Error::Precondition(format!(
                "index uses n inside sum over {v}"
            ))),
            (IndexVar::Sum(name), Some(v)) if name == v => Ok(()),
            (IndexVar::Sum(name), _) => Err(Error::Precondition(format!(
                "unbound index variable {name}"
            ))),
        }
    }

    fn validate_inner(&self, sum_var: Option<&str>) -> Result<(), Error> {
        match self {
            Expr::Const(_) => Ok(()),
            Expr::Seq { index, .. } | Expr::SignPow { index } => {
                Self::validate_index(index, sum_var)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.validate_inner(sum_var)?;
                b.validate_inner(sum_var)
            }
            Expr::Pow(e, _) => e.validate_inner(sum_var),
            Expr::Scale(c, e) => {
                if c.is_zero() {
                    return Err(Error::Precondition("zero scale factor".into()));
                }
                e.validate_inner(sum_var)
            }
            Expr::Sum { var, body } => {
                if sum_var.is_some() {
                    return Err(Error::Precondition("nested summation".into()));
                }
                if var == "n" {
                    return Err(Error::Precondition(
                        "summation variable shadows n".into(),
                    ));
                }
                body.validate_inner(Some(var))
            }
        }
    }

    fn collect_params(&self, out: &mut BTreeSet<LucasParams>) {
        match self {
            Expr::Const(_) | Expr::SignPow { .. } => {}
            Expr::Seq { kind, .. } => {
                out.insert(kind.params());
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_params(out);
                b.collect_params(out);
            }
            Expr::Pow(e, _) | Expr::Scale(_, e) => e.collect_params(out),
            Expr::Sum { body, .. } => body.collect_params(out),
        }
    }

    /// Expand into a sorted list of monomials with like terms combined.
    /// Fails on summations, which have no finite monomial expansion.
    pub fn normalize(&self) -> Result<Vec<Monomial>, Error> {
        let mut monos = self.monomials()?;
        monos.sort_by(|a, b| (&a.factors, &a.sign).cmp(&(&b.factors, &b.sign)));
        let mut out: Vec<Monomial> = Vec::new();
        for m in monos {
            match out.last_mut() {
                Some(last) if last.factors == m.factors && last.sign == m.sign => {
                    last.coeff += m.coeff;
                }
                _ => out.push(m),
            }
        }
        out.retain(|m| !m.coeff.is_zero());
        Ok(out)
    }

    fn monomials(&self) -> Result<Vec<Monomial>, Error> {
        match self {
            Expr::Const(c) => Ok(if c.is_zero() {
                vec![]
            } else {
                vec![Monomial {
                    coeff: c.clone(),
                    factors: vec![],
                    sign: None,
                }]
            }),
            Expr::Seq { kind, index } => Ok(vec![Monomial {
                coeff: Rat::one(),
                factors: vec![(kind.clone(), index.clone())],
                sign: None,
            }]),
            Expr::SignPow { index } => Ok(vec![Monomial {
                coeff: Rat::one(),
                factors: vec![],
                sign: Monomial::reduce_sign(index),
            }]),
            Expr::Add(a, b) => {
                let mut m = a.monomials()?;
                m.extend(b.monomials()?);
                Ok(m)
            }
            Expr::Sub(a, b) => {
                let mut m = a.monomials()?;
                m.extend(b.monomials()?.into_iter().map(|mut t| {
                    t.coeff = -t.coeff;
                    t
                }));
                Ok(m)
            }
            Expr::Mul(a, b) => Ok(Monomial::product(&a.monomials()?, &b.monomials()?)),
            Expr::Pow(e, k) => {
                let base = e.monomials()?;
                let mut acc = vec![Monomial {
                    coeff: Rat::one(),
                    factors: vec![],
                    sign: None,
                }];
                for _ in 0..*k {
                    acc = Monomial::product(&acc, &base);
                }
                Ok(acc)
            }
            Expr::Scale(c, e) => Ok(e
                .monomials()?
                .into_iter()
                .map(|mut m| {
                    m.coeff *= c;
                    m
                })
                .collect()),
            Expr::Sum { .. } => Err(Error::Unsupported(
                "summations have no monomial expansion".into(),
            )),
        }
    }

    fn level(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 0,
            Expr::Mul(..) => 1,
            Expr::Pow(..) => 2,
            Expr::Scale(c, _) => {
                if c.numer().is_one() {
                    2
                } else {
                    1
                }
            }
            Expr::Const(c) => {
                if c.is_integer() && !c.is_negative() {
                    3
                } else if c.is_negative() {
                    0
                } else {
                    2
                }
            }
            _ => 3,
        }
    }

    fn fmt_prec(&self, f: &mut std::fmt::Formatter<'_>, min: u8) -> std::fmt::Result {
        if self.level() < min {
            write!(f, "(")?;
            self.fmt_prec(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Const(c) => write!(f, "{}", rat_display(c)),
            Expr::Seq { kind, index } => match kind {
                SeqKind::Fib => write!(f, "F[{index}]"),
                SeqKind::Lucas => write!(f, "L[{index}]"),
                SeqKind::U(p) => write!(
                    f,
                    "U[{index}; {}, {}]",
                    rat_display(p.p()),
                    rat_display(p.q())
                ),
                SeqKind::W(p) => write!(
                    f,
                    "W[{index}; {}, {}]",
                    rat_display(p.p()),
                    rat_display(p.q())
                ),
            },
            Expr::SignPow { index } => write!(f, "S[{index}]"),
            Expr::Add(a, b) => {
                a.fmt_prec(f, 0)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 1)
            }
            Expr::Sub(a, b) => {
                a.fmt_prec(f, 0)?;
                write!(f, " - ")?;
                b.fmt_prec(f, 1)
            }
            Expr::Mul(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, "*")?;
                b.fmt_prec(f, 2)
            }
            Expr::Pow(e, k) => {
                e.fmt_prec(f, 3)?;
                write!(f, "^{k}")
            }
            Expr::Scale(c, e) => {
                if c.numer().is_one() {
                    e.fmt_prec(f, 2)?;
                    write!(f, "/{}", c.denom())
                } else {
                    write!(f, "{}*", rat_display(c))?;
                    e.fmt_prec(f, 2)
                }
            }
            Expr::Sum { var, body } => {
                write!(f, "sum({var}, ")?;
                body.fmt_prec(f, 0)?;
                write!(f, ")")
            }
        }
    }
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// One term of an expanded expression: a rational coefficient, a sorted bag
/// of sequence factors, and an optional residual sign index with
/// coefficient and offset reduced mod 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Rat,
    pub factors: Vec<(SeqKind, AffineIndex)>,
    pub sign: Option<AffineIndex>,
}

impl Monomial {
    fn reduce_sign(index: &AffineIndex) -> Option<AffineIndex> {
        let coeff = index.coeff.rem_euclid(2);
        let offset = index.offset.rem_euclid(2);
        if coeff == 0 && offset == 0 {
            None
        } else {
            Some(AffineIndex::new(coeff, index.var.clone(), offset))
        }
    }

    fn combine_signs(a: &Option<AffineIndex>, b: &Option<AffineIndex>) -> Option<AffineIndex> {
        match (a, b) {
            (None, s) | (s, None) => s.clone(),
            (Some(x), Some(y)) => Self::reduce_sign(&AffineIndex::new(
                x.coeff + y.coeff,
                x.var.clone(),
                x.offset + y.offset,
            )),
        }
    }

    fn product(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for x in a {
            for y in b {
                let mut factors = x.factors.clone();
                factors.extend(y.factors.iter().cloned());
                factors.sort();
                out.push(Monomial {
                    coeff: &x.coeff * &y.coeff,
                    factors,
                    sign: Self::combine_signs(&x.sign, &y.sign),
                });
            }
        }
        out
    }
}

/// The single recurrence parameter pair an identity lives over. Mixing
/// parameters in one identity is not supported; an identity with no
/// sequence terms at all defaults to the Fibonacci pair.
pub fn params_context(lhs: &Expr, rhs: &Expr) -> Result<LucasParams, Error> {
    let mut set = BTreeSet::new();
    lhs.collect_params(&mut set);
    rhs.collect_params(&mut set);
    let mut iter = set.into_iter();
    match (iter.next(), iter.next()) {
        (None, _) => Ok(LucasParams::fibonacci()),
        (Some(p), None) => Ok(p),
        (Some(a), Some(b)) => Err(Error::Unsupported(format!(
            "mixed recurrence parameters {a} and {b}"
        ))),
    }
}
