//! Annihilator computation.
//!
//! Every expression the grammar admits is, as a function of `n`, a finite
//! sum of terms `poly(n) * rho^n` where each `rho` is a product of a
//! rational scalar with powers of the recurrence roots `sigma` and `tau`.
//! The finite check needs, for each side, a multiset of such `rho` with
//! multiplicities bounding the polynomial degrees: the monic polynomial
//! with those roots then annihilates the side, and two sides annihilated by
//! one polynomial of degree `N` that agree at `N` consecutive points agree
//! everywhere the recurrence reaches.
//!
//! Roots are kept in a canonical form so that equal values collide:
//! `sigma * tau = q` is divided out, so at most one of the two root powers
//! survives; if the discriminant is a perfect square both roots are
//! rational and fold into the scalar; and if some `u(k) = 0` for
//! `k <= 6` then `sigma^k = tau^k` is itself rational and powers fold
//! modulo `k`. No other collisions are possible: `sigma/tau` is a root of
//! unity only of order 1, 2, 3, 4, or 6, because it generates a field
//! extension of degree at most 2.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::identity::ast::Expr;
use crate::poly::{Poly, QuadElem, QuadPoly};
use crate::scalar::{rat, rat_pow, rat_sqrt_exact, Rat};
use crate::seq::{u_values, LucasParams};
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RootBase {
    Unit,
    Sigma,
    Tau,
}

/// `scalar * base^exp`, with `exp >= 1` unless the base is [`RootBase::Unit`]
/// (then `exp == 0`). Construction goes through [`ProverContext::assemble`],
/// which guarantees distinct canonical roots have distinct values.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalRoot {
    scalar: Rat,
    base: RootBase,
    exp: u32,
}

impl CanonicalRoot {
    pub fn unit(scalar: Rat) -> Self {
        assert!(!scalar.is_zero(), "zero is never a recurrence root here");
        CanonicalRoot {
            scalar,
            base: RootBase::Unit,
            exp: 0,
        }
    }

    pub fn unit_one() -> Self {
        Self::unit(Rat::one())
    }

    pub fn is_unit_one(&self) -> bool {
        self.base == RootBase::Unit && self.scalar.is_one()
    }

    /// Exponents of `sigma` and `tau` in this root.
    fn exps(&self) -> (i64, i64) {
        match self.base {
            RootBase::Unit => (0, 0),
            RootBase::Sigma => (self.exp as i64, 0),
            RootBase::Tau => (0, self.exp as i64),
        }
    }
}

impl std::fmt::Display for CanonicalRoot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.base {
            RootBase::Unit => write!(f, "{}", crate::scalar::rat_display(&self.scalar)),
            RootBase::Sigma | RootBase::Tau => {
                if !self.scalar.is_one() {
                    write!(f, "{}*", crate::scalar::rat_display(&self.scalar))?;
                }
                let name = if self.base == RootBase::Sigma {
                    "sigma"
                } else {
                    "tau"
                };
                write!(f, "{name}")?;
                if self.exp != 1 {
                    write!(f, "^{}", self.exp)?;
                }
                Ok(())
            }
        }
    }
}

/// Everything root arithmetic needs about one parameter pair.
pub struct ProverContext {
    params: LucasParams,
    sigma: QuadElem,
    tau: QuadElem,
    d_is_zero: bool,
    /// Both roots rational: the discriminant is a perfect square (zero
    /// included). `sigma_rat >= tau_rat`.
    rational_roots: Option<(Rat, Rat)>,
    /// Least `k` with `u(k) = 0`, when one exists; always in `1..=6`, and
    /// only possible when the discriminant is not a square.
    k0: Option<u32>,
    /// `sigma^k0 = tau^k0`, which is rational.
    sigma_k0: Option<Rat>,
}

impl ProverContext {
    pub fn new(params: &LucasParams) -> Self {
        let d = params.discriminant();
        let half = crate::scalar::ratio(1, 2);
        let sigma = QuadElem::new(params.p() * &half, half, d.clone());
        let tau = sigma.conjugate();
        let rational_roots = rat_sqrt_exact(&d).map(|s| {
            let half = crate::scalar::ratio(1, 2);
            ((params.p() + &s) * &half, (params.p() - &s) * &half)
        });
        let (k0, sigma_k0) = if rational_roots.is_some() {
            (None, None)
        } else {
            match u_values(params, 6)
                .iter()
                .enumerate()
                .skip(1)
                .find(|(_, u)| u.is_zero())
            {
                Some((k, _)) => {
                    let s0 = sigma
                        .pow(k as i64)
                        .to_rat()
                        .expect("u(k) = 0 forces sigma^k into the rationals");
                    (Some(k as u32), Some(s0))
                }
                None => (None, None),
            }
        };
        ProverContext {
            params: params.clone(),
            sigma,
            tau,
            d_is_zero: d.is_zero(),
            rational_roots,
            k0,
            sigma_k0,
        }
    }

    pub fn params(&self) -> &LucasParams {
        &self.params
    }

    pub fn sigma(&self) -> &QuadElem {
        &self.sigma
    }

    pub fn tau(&self) -> &QuadElem {
        &self.tau
    }

    pub fn discriminant_is_zero(&self) -> bool {
        self.d_is_zero
    }

    /// Canonical root with value `scalar * sigma^sexp * tau^texp`.
    pub fn assemble(&self, mut scalar: Rat, sexp: i64, texp: i64) -> CanonicalRoot {
        assert!(!scalar.is_zero());
        if let Some((sr, tr)) = &self.rational_roots {
            scalar *= rat_pow(sr, sexp) * rat_pow(tr, texp);
            return CanonicalRoot::unit(scalar);
        }
        let m = sexp.min(texp);
        if m != 0 {
            scalar *= rat_pow(self.params.q(), m);
        }
        let mut a = sexp - m;
        let mut b = texp - m;
        if let (Some(k0), Some(s0)) = (self.k0, &self.sigma_k0) {
            let k0 = k0 as i64;
            if a >= k0 {
                scalar *= rat_pow(s0, a / k0);
                a %= k0;
            }
            if b >= k0 {
                scalar *= rat_pow(s0, b / k0);
                b %= k0;
            }
            // tau^b = (q^b / sigma^k0) * sigma^(k0-b): everything lives on
            // powers of sigma, otherwise equal values could get two names
            if b > 0 {
                scalar *= rat_pow(self.params.q(), b) / s0;
                a = k0 - b;
                b = 0;
            }
        }
        if a > 0 {
            CanonicalRoot {
                scalar,
                base: RootBase::Sigma,
                exp: a as u32,
            }
        } else if b > 0 {
            CanonicalRoot {
                scalar,
                base: RootBase::Tau,
                exp: b as u32,
            }
        } else {
            CanonicalRoot::unit(scalar)
        }
    }

    pub fn value(&self, root: &CanonicalRoot) -> QuadElem {
        let base = match root.base {
            RootBase::Unit => QuadElem::one(),
            RootBase::Sigma => self.sigma.pow(root.exp as i64),
            RootBase::Tau => self.tau.pow(root.exp as i64),
        };
        base.scale(&root.scalar)
    }

    /// Image under the field automorphism swapping `sigma` and `tau`.
    pub fn conjugate_root(&self, root: &CanonicalRoot) -> CanonicalRoot {
        let (s, t) = root.exps();
        self.assemble(root.scalar.clone(), t, s)
    }

    /// Canonical root for the product of two root values.
    pub fn root_product(&self, a: &CanonicalRoot, b: &CanonicalRoot) -> CanonicalRoot {
        let (sa, ta) = a.exps();
        let (sb, tb) = b.exps();
        self.assemble(&a.scalar * &b.scalar, sa + sb, ta + tb)
    }
}

/// Multiset of canonical roots. The multiplicity of `rho` bounds (by one
/// more than) the degree of the polynomial coefficient on `rho^n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RootSet {
    mults: BTreeMap<CanonicalRoot, u32>,
}

impl RootSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit_one() -> Self {
        let mut s = Self::new();
        s.insert_max(CanonicalRoot::unit_one(), 1);
        s
    }

    pub fn insert_max(&mut self, root: CanonicalRoot, mult: u32) {
        let e = self.mults.entry(root).or_insert(0);
        *e = (*e).max(mult);
    }

    fn bump(&mut self, root: CanonicalRoot) {
        *self.mults.entry(root).or_insert(0) += 1;
    }

    pub fn union_max(mut self, other: RootSet) -> RootSet {
        for (root, mult) in other.mults {
            self.insert_max(root, mult);
        }
        self
    }

    /// Roots of a pointwise product: pairwise value products. A term
    /// `n^i rho1^n * n^j rho2^n` has coefficient degree `i + j`, so the
    /// multiplicity bound is `m1 + m2 - 1`.
    pub fn product(&self, other: &RootSet, ctx: &ProverContext) -> RootSet {
        let mut out = RootSet::new();
        for (r1, m1) in &self.mults {
            for (r2, m2) in &other.mults {
                out.insert_max(ctx.root_product(r1, r2), m1 + m2 - 1);
            }
        }
        out
    }

    pub fn close_under_conjugation(&mut self, ctx: &ProverContext) {
        let extra: Vec<_> = self
            .mults
            .iter()
            .map(|(r, m)| (ctx.conjugate_root(r), *m))
            .collect();
        for (root, mult) in extra {
            self.insert_max(root, mult);
        }
    }

    /// Total multiplicity: the order of the annihilating recurrence.
    pub fn degree(&self) -> u32 {
        self.mults.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalRoot, u32)> {
        self.mults.iter().map(|(r, m)| (r, *m))
    }

    pub fn multiplicity(&self, root: &CanonicalRoot) -> u32 {
        self.mults.get(root).copied().unwrap_or(0)
    }

    /// Monic annihilating polynomial: the product of `(x - value)^mult`.
    /// Rational whenever the set is closed under conjugation.
    pub fn char_poly(&self, ctx: &ProverContext) -> Result<Poly, Error> {
        let mut acc = QuadPoly::one();
        for (root, mult) in &self.mults {
            let v = ctx.value(root);
            for _ in 0..*mult {
                acc = acc.mul_linear(&v);
            }
        }
        acc.into_poly()
    }
}

fn sign_unit(coeff: i64) -> Rat {
    if coeff.rem_euclid(2) == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

fn annihilator_rec(e: &Expr, ctx: &ProverContext) -> Result<RootSet, Error> {
    match e {
        Expr::Const(_) => Ok(RootSet::unit_one()),
        Expr::Seq { index, .. } => {
            let a = index.coeff;
            let mut s = RootSet::new();
            if a == 0 {
                s.insert_max(CanonicalRoot::unit_one(), 1);
            } else if ctx.d_is_zero {
                // both Binet terms land on one root, with an n-linear
                // coefficient in front
                s.insert_max(ctx.assemble(rat(1), a, 0), 2);
            } else {
                s.insert_max(ctx.assemble(rat(1), a, 0), 1);
                s.insert_max(ctx.assemble(rat(1), 0, a), 1);
            }
            Ok(s)
        }
        Expr::SignPow { index } => {
            let mut s = RootSet::new();
            s.insert_max(CanonicalRoot::unit(sign_unit(index.coeff)), 1);
            Ok(s)
        }
        Expr::Add(l, r) | Expr::Sub(l, r) => {
            Ok(annihilator_rec(l, ctx)?.union_max(annihilator_rec(r, ctx)?))
        }
        Expr::Mul(l, r) => {
            Ok(annihilator_rec(l, ctx)?.product(&annihilator_rec(r, ctx)?, ctx))
        }
        Expr::Pow(e, k) => {
            if *k == 0 {
                return Ok(RootSet::unit_one());
            }
            let base = annihilator_rec(e, ctx)?;
            let mut acc = base.clone();
            for _ in 1..*k {
                acc = acc.product(&base, ctx);
            }
            Ok(acc)
        }
        Expr::Scale(_, e) => annihilator_rec(e, ctx),
        Expr::Sum { body, .. } => {
            let mut s = annihilator_rec(body, ctx)?;
            s.bump(CanonicalRoot::unit_one());
            Ok(s)
        }
    }
}

/// Conjugation-closed root multiset annihilating `e`.
pub fn annihilator(e: &Expr, ctx: &ProverContext) -> Result<RootSet, Error> {
    let mut s = annihilator_rec(e, ctx)?;
    s.close_under_conjugation(ctx);
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identity::parse::parse_expression;
    use crate::poly::RecurrenceSpec;
    use crate::scalar::ratio;

    fn fib_ctx() -> ProverContext {
        ProverContext::new(&LucasParams::fibonacci())
    }

    #[test]
    fn assemble_reduces_sigma_tau_pairs() {
        let ctx = fib_ctx();
        // sigma^3 tau^1 = q * sigma^2
        let r = ctx.assemble(rat(1), 3, 1);
        assert_eq!(r, CanonicalRoot {
            scalar: rat(-1),
            base: RootBase::Sigma,
            exp: 2,
        });
        // sigma^-2 = q^-2 tau^2
        let r = ctx.assemble(rat(1), -2, 0);
        assert_eq!(r, CanonicalRoot {
            scalar: rat(1),
            base: RootBase::Tau,
            exp: 2,
        });
        assert_eq!(ctx.value(&r), ctx.sigma().pow(-2));
        // sigma^2 tau^2 = q^2
        let r = ctx.assemble(rat(1), 2, 2);
        assert_eq!(r, CanonicalRoot::unit_one());
    }

    #[test]
    fn assemble_folds_rational_roots() {
        // (3, 2): D = 1, roots 2 and 1
        let ctx = ProverContext::new(&LucasParams::from_ints(3, 2).unwrap());
        let r = ctx.assemble(rat(1), 3, 0);
        assert_eq!(r, CanonicalRoot::unit(rat(8)));
        let r = ctx.assemble(rat(1), 0, 5);
        assert_eq!(r, CanonicalRoot::unit(rat(1)));
        // (2, 1): D = 0, double root 1
        let ctx = ProverContext::new(&LucasParams::from_ints(2, 1).unwrap());
        assert!(ctx.discriminant_is_zero());
        assert_eq!(ctx.assemble(rat(1), 4, 0), CanonicalRoot::unit_one());
    }

    #[test]
    fn assemble_folds_root_of_unity_ratio() {
        // (1, 1): u = 0, 1, 1, 0, -1, -1, 0, ... so k0 = 3, sigma^3 = -1
        let ctx = ProverContext::new(&LucasParams::from_ints(1, 1).unwrap());
        assert_eq!(ctx.k0, Some(3));
        assert_eq!(ctx.sigma_k0, Some(rat(-1)));
        let r = ctx.assemble(rat(1), 7, 0);
        assert_eq!(r, CanonicalRoot {
            scalar: rat(1),
            base: RootBase::Sigma,
            exp: 1,
        });
        assert_eq!(ctx.value(&r), ctx.sigma().pow(7));
        assert_eq!(ctx.assemble(rat(1), 6, 0), CanonicalRoot::unit_one());
        // equal values get equal names: tau = -sigma^2 = sigma^5 here
        let t = ctx.assemble(rat(1), 0, 1);
        assert_eq!(t, CanonicalRoot {
            scalar: rat(-1),
            base: RootBase::Sigma,
            exp: 2,
        });
        assert_eq!(t, ctx.assemble(rat(1), 5, 0));
        assert_eq!(ctx.value(&t), ctx.tau().pow(1));
        assert_eq!(ctx.value(&ctx.assemble(rat(1), 0, 2)), -ctx.sigma());
    }

    #[test]
    fn conjugation_swaps_and_fixes() {
        let ctx = fib_ctx();
        let r = ctx.assemble(rat(2), 3, 0);
        let c = ctx.conjugate_root(&r);
        assert_eq!(c, ctx.assemble(rat(2), 0, 3));
        assert_eq!(ctx.conjugate_root(&c), r);
        let u = CanonicalRoot::unit(rat(-7));
        assert_eq!(ctx.conjugate_root(&u), u);
    }

    #[test]
    fn fibonacci_annihilator_orders() {
        let ctx = fib_ctx();
        let cases = [
            ("F[n]", 2),
            ("F[n]^2", 3),
            ("F[n]*L[n+2]", 3),
            ("F[n]^2 + F[n+1]^2", 3),
            ("F[2*n]", 2),
            ("F[n]^2*S[n]", 3),
            ("S[n]", 1),
            ("F[n]^3", 4),
            ("sum(i, F[i]^2)", 4),
            ("F[5]", 1),
            ("F[n]*F[n]", 3),
        ];
        for (src, want) in cases {
            let e = parse_expression(src).unwrap();
            let ann = annihilator(&e, &ctx).unwrap();
            assert_eq!(ann.degree(), want, "{src}");
        }
    }

    #[test]
    fn square_annihilator_char_poly_matches_known_recurrence() {
        let ctx = fib_ctx();
        let e = parse_expression("F[n]^2").unwrap();
        let ann = annihilator(&e, &ctx).unwrap();
        let cp = ann.char_poly(&ctx).unwrap();
        assert_eq!(
            RecurrenceSpec::from_monic_char_poly(&cp).unwrap(),
            RecurrenceSpec::from_ints(&[2, 2, -1]).unwrap()
        );
    }

    #[test]
    fn annihilator_recurrence_kills_the_sequence() {
        let cases = [
            ("F[n]^2*L[n-1] - F[2*n]", LucasParams::fibonacci()),
            ("sum(i, F[8*i+4])", LucasParams::fibonacci()),
            ("U[2*n; 1/2, -3/5]^2", LucasParams::new(ratio(1, 2), ratio(-3, 5)).unwrap()),
            ("W[n; 2, 1]*U[n+1; 2, 1]", LucasParams::from_ints(2, 1).unwrap()),
            ("U[3*n+2; 1, 1]^2", LucasParams::from_ints(1, 1).unwrap()),
        ];
        for (src, params) in cases {
            let ctx = ProverContext::new(&params);
            let e = parse_expression(src).unwrap();
            let ann = annihilator(&e, &ctx).unwrap();
            let spec = RecurrenceSpec::from_monic_char_poly(&ann.char_poly(&ctx).unwrap())
                .unwrap();
            let vals: Vec<Rat> = (0..(ann.degree() as i64 + 12))
                .map(|n| e.eval(n).unwrap())
                .collect();
            assert!(spec.satisfied_by(&vals), "{src}: recurrence {spec}");
        }
    }

    #[test]
    fn zero_discriminant_needs_double_multiplicity() {
        let params = LucasParams::from_ints(2, 1).unwrap();
        let ctx = ProverContext::new(&params);
        // u(n) = n here, so u is annihilated by (x - 1)^2 and not by (x - 1)
        let e = parse_expression("U[n; 2, 1]").unwrap();
        let ann = annihilator(&e, &ctx).unwrap();
        assert_eq!(ann.degree(), 2);
        let spec = RecurrenceSpec::from_monic_char_poly(&ann.char_poly(&ctx).unwrap()).unwrap();
        let vals: Vec<Rat> = (0..12).map(|n| e.eval(n).unwrap()).collect();
        assert!(spec.satisfied_by(&vals));
    }
}
