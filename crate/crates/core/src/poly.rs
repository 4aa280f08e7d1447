//! Dense rational polynomials, quadratic-field elements, and constant
//! recurrences.
//!
//! `QuadElem` represents `a + b*sqrt(d)` with exact rational `a`, `b`, `d`.
//! When `d` is a perfect rational square (zero included) the radical part is
//! folded into `a` on construction, so an element is rational exactly when
//! `b == 0`, and equality is plain field-by-field comparison. Nothing is ever
//! materialised as a floating-point number, so negative `d` (complex
//! embeddings) costs nothing extra.

use crate::error::Error;
use crate::scalar::{rat, rat_display, rat_sqrt_exact, Rat};
use num_traits::{One, Signed, Zero};

// ---- Poly ----

/// Dense polynomial over the rationals, coefficients ascending by degree.
/// The zero polynomial is the empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::new(vec![Rat::one()])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Coefficient of `x^k` (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation over the rationals.
    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation over the quadratic field.
    pub fn eval_quad(&self, x: &QuadElem) -> QuadElem {
        let mut acc = QuadElem::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &QuadElem::from_rat(c.clone());
        }
        acc
    }

    /// The polynomial `p(-x)`.
    pub fn compose_neg_x(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                write!(f, "{}", rat_display(&mag))?;
            }
            if k > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "x")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

// ---- QuadElem ----

/// `a + b*sqrt(d)` with exact rational parts. Canonical form: if `d` is a
/// perfect rational square the radical is folded away and `d` is reset to 0,
/// so `b != 0` implies `d` is a genuine non-square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadElem {
    a: Rat,
    b: Rat,
    d: Rat,
}

impl QuadElem {
    pub fn new(mut a: Rat, mut b: Rat, mut d: Rat) -> Self {
        if !b.is_zero() {
            if let Some(s) = rat_sqrt_exact(&d) {
                a += &b * s;
                b = Rat::zero();
            }
        }
        if b.is_zero() {
            d = Rat::zero();
        }
        QuadElem { a, b, d }
    }

    pub fn from_rat(a: Rat) -> Self {
        QuadElem {
            a,
            b: Rat::zero(),
            d: Rat::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    pub fn radical_part(&self) -> &Rat {
        &self.b
    }

    pub fn radicand(&self) -> &Rat {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rat(&self) -> Option<Rat> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn conjugate(&self) -> QuadElem {
        QuadElem {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    /// The shared radicand of two operands; panics on genuinely mixed
    /// radicals, which would be a bug in the caller.
    fn join_radicand(&self, other: &QuadElem) -> Rat {
        if self.b.is_zero() {
            other.d.clone()
        } else if other.b.is_zero() {
            self.d.clone()
        } else {
            assert_eq!(self.d, other.d, "mixed radicands {} and {}", self.d, other.d);
            self.d.clone()
        }
    }

    pub fn inverse(&self) -> QuadElem {
        assert!(!self.is_zero(), "inverse of zero");
        // (a + b sqrt(d))^-1 = (a - b sqrt(d)) / (a^2 - b^2 d)
        let norm = &self.a * &self.a - &self.b * &self.b * &self.d;
        assert!(!norm.is_zero(), "zero norm for nonzero element");
        QuadElem::new(&self.a / &norm, -&self.b / &norm, self.d.clone())
    }

    /// Integer power, inverting for negative exponents.
    pub fn pow(&self, exp: i64) -> QuadElem {
        if exp == 0 {
            return QuadElem::one();
        }
        let mut acc = QuadElem::one();
        let mut sq = self.clone();
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        if exp < 0 {
            acc.inverse()
        } else {
            acc
        }
    }

    pub fn scale(&self, c: &Rat) -> QuadElem {
        QuadElem::new(&self.a * c, &self.b * c, self.d.clone())
    }
}

impl std::ops::Add for &QuadElem {
    type Output = QuadElem;
    fn add(self, rhs: &QuadElem) -> QuadElem {
        let d = self.join_radicand(rhs);
        QuadElem::new(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl std::ops::Sub for &QuadElem {
    type Output = QuadElem;
    fn sub(self, rhs: &QuadElem) -> QuadElem {
        let d = self.join_radicand(rhs);
        QuadElem::new(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
}

impl std::ops::Mul for &QuadElem {
    type Output = QuadElem;
    fn mul(self, rhs: &QuadElem) -> QuadElem {
        let d = self.join_radicand(rhs);
        let a = &self.a * &rhs.a + &self.b * &rhs.b * &d;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadElem::new(a, b, d)
    }
}

impl std::ops::Div for &QuadElem {
    type Output = QuadElem;
    fn div(self, rhs: &QuadElem) -> QuadElem {
        self * &rhs.inverse()
    }
}

impl std::ops::Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem {
            a: -&self.a,
            b: -&self.b,
            d: self.d.clone(),
        }
    }
}

impl std::fmt::Display for QuadElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", rat_display(&self.a));
        }
        if !self.a.is_zero() {
            write!(f, "{} ", rat_display(&self.a))?;
            if self.b.is_negative() {
                write!(f, "- ")?;
            } else {
                write!(f, "+ ")?;
            }
            let mag = self.b.abs();
            if !mag.is_one() {
                write!(f, "{}*", rat_display(&mag))?;
            }
        } else if !self.b.is_one() {
            if self.b == rat(-1) {
                write!(f, "-")?;
            } else {
                write!(f, "{}*", rat_display(&self.b))?;
            }
        }
        write!(f, "sqrt({})", rat_display(&self.d))
    }
}

// ---- QuadPoly ----

/// Polynomial with `QuadElem` coefficients, used while expanding products of
/// linear factors whose roots live in the quadratic field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadPoly {
    coeffs: Vec<QuadElem>,
}

impl QuadPoly {
    pub fn one() -> Self {
        QuadPoly {
            coeffs: vec![QuadElem::one()],
        }
    }

    pub fn from_poly(p: &Poly) -> Self {
        QuadPoly {
            coeffs: p
                .coeffs()
                .iter()
                .map(|c| QuadElem::from_rat(c.clone()))
                .collect(),
        }
    }

    pub fn coeffs(&self) -> &[QuadElem] {
        &self.coeffs
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Multiply by the linear factor `(x - root)`.
    pub fn mul_linear(&self, root: &QuadElem) -> QuadPoly {
        let n = self.coeffs.len();
        let mut out = vec![QuadElem::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] = &out[i + 1] + c;
            out[i] = &out[i] - &(root * c);
        }
        let mut p = QuadPoly { coeffs: out };
        p.trim();
        p
    }

    /// Synthetic division by `(x - v)`: returns the quotient and remainder.
    pub fn div_linear(&self, v: &QuadElem) -> (QuadPoly, QuadElem) {
        if self.coeffs.is_empty() {
            return (QuadPoly { coeffs: vec![] }, QuadElem::zero());
        }
        let n = self.coeffs.len();
        let mut quot = vec![QuadElem::zero(); n - 1];
        let mut carry = QuadElem::zero();
        for k in (0..n).rev() {
            let cur = &self.coeffs[k] + &(&carry * v);
            if k == 0 {
                return (QuadPoly { coeffs: quot }, cur);
            }
            quot[k - 1] = cur.clone();
            carry = cur;
        }
        unreachable!()
    }

    /// Multiplicity of `v` as a root (zero when not a root).
    pub fn root_multiplicity(&self, v: &QuadElem) -> usize {
        let mut mult = 0;
        let mut cur = self.clone();
        cur.trim();
        while !cur.coeffs.is_empty() {
            let (q, r) = cur.div_linear(v);
            if !r.is_zero() {
                break;
            }
            mult += 1;
            cur = q;
            cur.trim();
        }
        mult
    }

    /// Collapse to a rational polynomial; errors if any radical part
    /// survived, which means an upstream computation is inconsistent.
    pub fn into_poly(self) -> Result<Poly, Error> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (k, c) in self.coeffs.iter().enumerate() {
            match c.to_rat() {
                Some(r) => out.push(r),
                None => {
                    return Err(Error::InternalInconsistency(format!(
                        "radical part failed to cancel in coefficient of x^{k}: {c}"
                    )))
                }
            }
        }
        Ok(Poly::new(out))
    }
}

// ---- RecurrenceSpec ----

/// Coefficients `c_1 .. c_k` of `x(m) = c_1 x(m-1) + ... + c_k x(m-k)`.
/// The order is `k`; the trailing coefficient must be nonzero so the
/// recurrence runs backwards as well as forwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceSpec {
    coeffs: Vec<Rat>,
}

impl RecurrenceSpec {
    pub fn new(coeffs: Vec<Rat>) -> Result<Self, Error> {
        if coeffs.is_empty() {
            return Err(Error::Precondition("recurrence of order zero".into()));
        }
        if coeffs.last().unwrap().is_zero() {
            return Err(Error::Precondition(
                "trailing recurrence coefficient must be nonzero".into(),
            ));
        }
        Ok(RecurrenceSpec { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self, Error> {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Recurrence from a monic characteristic polynomial: the coefficient of
    /// `x^{k-r}` in the polynomial is `-c_r`.
    pub fn from_monic_char_poly(p: &Poly) -> Result<Self, Error> {
        let deg = p
            .degree()
            .ok_or_else(|| Error::Precondition("zero characteristic polynomial".into()))?;
        if deg == 0 {
            return Err(Error::Precondition(
                "constant characteristic polynomial".into(),
            ));
        }
        if !p.is_monic() {
            return Err(Error::Precondition(
                "characteristic polynomial must be monic".into(),
            ));
        }
        let coeffs: Vec<Rat> = (1..=deg).map(|r| -p.coeff(deg - r)).collect();
        Self::new(coeffs)
    }

    /// Monic characteristic polynomial `x^k - c_1 x^{k-1} - ... - c_k`.
    pub fn char_poly(&self) -> Poly {
        let k = self.order();
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = Rat::one();
        for (r, c) in self.coeffs.iter().enumerate() {
            coeffs[k - 1 - r] = -c;
        }
        Poly::new(coeffs)
    }

    /// Extend `seeds` to `count` total terms.
    pub fn apply(&self, seeds: &[Rat], count: usize) -> Result<Vec<Rat>, Error> {
        let k = self.order();
        if seeds.len() != k {
            return Err(Error::SeedCount {
                expected: k,
                got: seeds.len(),
            });
        }
        if count < k {
            return Err(Error::Precondition(format!(
                "count {count} shorter than the {k} seeds"
            )));
        }
        let mut out = seeds.to_vec();
        for m in k..count {
            let mut acc = Rat::zero();
            for (r, c) in self.coeffs.iter().enumerate() {
                acc += c * &out[m - 1 - r];
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Does every window of `values` satisfy the recurrence?
    pub fn satisfied_by(&self, values: &[Rat]) -> bool {
        let k = self.order();
        if values.len() <= k {
            return true;
        }
        for m in k..values.len() {
            let mut acc = Rat::zero();
            for (r, c) in self.coeffs.iter().enumerate() {
                acc += c * &values[m - 1 - r];
            }
            if acc != values[m] {
                return false;
            }
        }
        true
    }
}

impl std::fmt::Display for RecurrenceSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", rat_display(c))?;
        }
        write!(f, "]")
    }
}
