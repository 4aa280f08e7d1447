//! Closed-form normal forms.
//!
//! Over a parameter pair with nonzero discriminant, every expression the
//! grammar admits equals a finite sum `sum_rho c_rho(n) * rho^n` with
//! canonical roots `rho` and coefficients `c_rho` that are polynomials in
//! `n` over the quadratic field. That normal form is computed here by
//! structural recursion; two expressions are equal as functions exactly
//! when their normal forms match, so this is a second, independent proof
//! route next to the finite check.
//!
//! A zero discriminant is rejected: the closed form would need the
//! confluent `n * root^n` shape for the base sequences themselves, and the
//! finite check already covers that case.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::identity::ast::Expr;
use crate::identity::roots::{CanonicalRoot, ProverContext};
use crate::poly::QuadElem;
use crate::scalar::Rat;
use num_traits::One;

/// Polynomial in `n` with quadratic-field coefficients, ascending, trimmed.
pub type NPoly = Vec<QuadElem>;

fn npoly_trim(p: &mut NPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn npoly_add_into(a: &mut NPoly, b: &[QuadElem]) {
    while a.len() < b.len() {
        a.push(QuadElem::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x = &*x + y;
    }
    npoly_trim(a);
}

fn npoly_mul(a: &[QuadElem], b: &[QuadElem]) -> NPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![QuadElem::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    npoly_trim(&mut out);
    out
}

fn npoly_eval(p: &[QuadElem], n: i64) -> QuadElem {
    let x = QuadElem::from_rat(Rat::from_integer(n.into()));
    let mut acc = QuadElem::zero();
    for c in p.iter().rev() {
        acc = &(&acc * &x) + c;
    }
    acc
}

/// Exponential polynomial: canonical root -> polynomial coefficient.
/// Zero is the empty map; entries always hold nonzero trimmed polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExpPoly {
    terms: BTreeMap<CanonicalRoot, NPoly>,
}

impl ExpPoly {
    fn zero() -> Self {
        Self::default()
    }

    fn single(root: CanonicalRoot, coeff: QuadElem) -> Self {
        let mut e = Self::zero();
        e.add_npoly(root, vec![coeff]);
        e
    }

    fn add_npoly(&mut self, root: CanonicalRoot, mut p: NPoly) {
        npoly_trim(&mut p);
        if p.is_empty() {
            return;
        }
        match self.terms.get_mut(&root) {
            Some(existing) => {
                npoly_add_into(existing, &p);
                if existing.is_empty() {
                    self.terms.remove(&root);
                }
            }
            None => {
                self.terms.insert(root, p);
            }
        }
    }

    fn add(mut self, other: ExpPoly) -> ExpPoly {
        for (root, p) in other.terms {
            self.add_npoly(root, p);
        }
        self
    }

    fn neg(mut self) -> ExpPoly {
        for p in self.terms.values_mut() {
            for c in p.iter_mut() {
                *c = -&*c;
            }
        }
        self
    }

    fn mul(&self, other: &ExpPoly, ctx: &ProverContext) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (r1, p1) in &self.terms {
            for (r2, p2) in &other.terms {
                out.add_npoly(ctx.root_product(r1, r2), npoly_mul(p1, p2));
            }
        }
        out
    }

    fn scale(mut self, c: &Rat) -> ExpPoly {
        for p in self.terms.values_mut() {
            for x in p.iter_mut() {
                *x = x.scale(c);
            }
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CanonicalRoot, &NPoly)> {
        self.terms.iter()
    }

    /// Evaluate at a point (sums restrict their callers to `n >= 0`; the
    /// normal form itself is happy with any integer).
    pub fn eval(&self, ctx: &ProverContext, n: i64) -> QuadElem {
        let mut acc = QuadElem::zero();
        for (root, p) in &self.terms {
            let v = ctx.value(root).pow(n);
            acc = &acc + &(&npoly_eval(p, n) * &v);
        }
        acc
    }
}

fn normal_form(e: &Expr, ctx: &ProverContext) -> Result<ExpPoly, Error> {
    match e {
        Expr::Const(c) => {
            let mut out = ExpPoly::zero();
            out.add_npoly(CanonicalRoot::unit_one(), vec![QuadElem::from_rat(c.clone())]);
            Ok(out)
        }
        Expr::Seq { kind, index } => {
            let a = index.coeff;
            let b = index.offset;
            let sigma_b = ctx.sigma().pow(b);
            let tau_b = ctx.tau().pow(b);
            let r_sigma = ctx.assemble(Rat::one(), a, 0);
            let r_tau = ctx.assemble(Rat::one(), 0, a);
            let mut out = ExpPoly::zero();
            if kind.is_u_like() {
                let denom = ctx.sigma() - ctx.tau();
                out.add_npoly(r_sigma, vec![&sigma_b / &denom]);
                out.add_npoly(r_tau, vec![&(-&tau_b) / &denom]);
            } else {
                out.add_npoly(r_sigma, vec![sigma_b]);
                out.add_npoly(r_tau, vec![tau_b]);
            }
            Ok(out)
        }
        Expr::SignPow { index } => {
            let root_scalar = if index.coeff.rem_euclid(2) == 0 {
                Rat::one()
            } else {
                -Rat::one()
            };
            let coeff = if index.offset.rem_euclid(2) == 0 {
                QuadElem::one()
            } else {
                -&QuadElem::one()
            };
            Ok(ExpPoly::single(CanonicalRoot::unit(root_scalar), coeff))
        }
        Expr::Add(l, r) => Ok(normal_form(l, ctx)?.add(normal_form(r, ctx)?)),
        Expr::Sub(l, r) => Ok(normal_form(l, ctx)?.add(normal_form(r, ctx)?.neg())),
        Expr::Mul(l, r) => Ok(normal_form(l, ctx)?.mul(&normal_form(r, ctx)?, ctx)),
        Expr::Pow(e, k) => {
            let mut acc = ExpPoly::single(CanonicalRoot::unit_one(), QuadElem::one());
            if *k > 0 {
                let base = normal_form(e, ctx)?;
                for _ in 0..*k {
                    acc = acc.mul(&base, ctx);
                }
            }
            Ok(acc)
        }
        Expr::Scale(c, e) => Ok(normal_form(e, ctx)?.scale(c)),
        Expr::Sum { body, .. } => {
            let inner = normal_form(body, ctx)?;
            let mut out = ExpPoly::zero();
            for (root, p) in inner.terms {
                if p.len() > 1 {
                    return Err(Error::Unsupported(
                        "summation body with a polynomial coefficient".into(),
                    ));
                }
                let c = p.into_iter().next().expect("entries are nonzero");
                if root.is_unit_one() {
                    // sum of a constant: c * (n + 1)
                    out.add_npoly(root, vec![c.clone(), c]);
                } else {
                    // geometric: c * (v^(n+1) - 1) / (v - 1)
                    let v = ctx.value(&root);
                    let w = &v - &QuadElem::one();
                    out.add_npoly(root.clone(), vec![&(&c * &v) / &w]);
                    out.add_npoly(CanonicalRoot::unit_one(), vec![&(-&c) / &w]);
                }
            }
            Ok(out)
        }
    }
}

/// Closed-form normal form of `e` over `ctx`. The context must not have a
/// zero discriminant.
pub fn binet_normal_form(e: &Expr, ctx: &ProverContext) -> Result<ExpPoly, Error> {
    if ctx.discriminant_is_zero() {
        return Err(Error::Unsupported(
            "zero discriminant: the closed-form route needs distinct roots".into(),
        ));
    }
    normal_form(e, ctx)
}

/// Prove or refute `lhs = rhs` by comparing closed forms. `Ok(true)` means
/// the two sides are the same function (on `n >= 0` when sums appear, on
/// all of `Z` otherwise).
pub fn binet_verify(lhs: &Expr, rhs: &Expr) -> Result<bool, Error> {
    lhs.validate()?;
    rhs.validate()?;
    let params = crate::identity::ast::params_context(lhs, rhs)?;
    let ctx = ProverContext::new(&params);
    let l = binet_normal_form(lhs, &ctx)?;
    let r = binet_normal_form(rhs, &ctx)?;
    Ok(l == r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identity::parse::{parse_expression, parse_identity};
    use crate::scalar::rat;
    use crate::seq::LucasParams;

    fn fib_ctx() -> ProverContext {
        ProverContext::new(&LucasParams::fibonacci())
    }

    #[test]
    fn normal_form_evaluates_back() {
        let ctx = fib_ctx();
        for src in [
            "F[2*n+1]",
            "L[n-4]^2",
            "F[n]^2*L[n+1]",
            "S[n]*F[n-2] + 3",
            "F[n+1]^2 - F[n-1]^2",
        ] {
            let e = parse_expression(src).unwrap();
            let nf = binet_normal_form(&e, &ctx).unwrap();
            for n in -6..=8 {
                let direct = e.eval(n).unwrap();
                let via = nf.eval(&ctx, n).to_rat().expect("rational value");
                assert_eq!(direct, via, "{src} at n = {n}");
            }
        }
    }

    #[test]
    fn normal_form_of_sums_evaluates_back() {
        let ctx = fib_ctx();
        for src in ["sum(i, F[i]^2)", "3*sum(i, F[8*i+4])", "sum(i, S[i]*L[i])"] {
            let e = parse_expression(src).unwrap();
            let nf = binet_normal_form(&e, &ctx).unwrap();
            for n in 0..=10 {
                let direct = e.eval(n).unwrap();
                let via = nf.eval(&ctx, n).to_rat().expect("rational value");
                assert_eq!(direct, via, "{src} at n = {n}");
            }
        }
    }

    #[test]
    fn proves_and_refutes() {
        let (l, r) = parse_identity("F[2*n] = F[n]*L[n]").unwrap();
        assert_eq!(binet_verify(&l, &r), Ok(true));
        let (l, r) = parse_identity("F[2*n+1] = F[n+1]^2 + F[n]^2").unwrap();
        assert_eq!(binet_verify(&l, &r), Ok(true));
        let (l, r) = parse_identity("sum(i, F[i]^2) = F[n]*F[n+1]").unwrap();
        assert_eq!(binet_verify(&l, &r), Ok(true));
        let (l, r) = parse_identity("F[2*n] = F[n]*L[n] + 1").unwrap();
        assert_eq!(binet_verify(&l, &r), Ok(false));
        let (l, r) = parse_identity("F[n]^2 - F[n-1]*F[n+1] = S[n]").unwrap();
        assert_eq!(binet_verify(&l, &r), Ok(false));
    }

    #[test]
    fn cancellation_collapses_to_empty_form() {
        let ctx = fib_ctx();
        let e = parse_expression("F[n]*L[n] - F[2*n]").unwrap();
        let nf = binet_normal_form(&e, &ctx).unwrap();
        assert!(nf.is_zero());
    }

    #[test]
    fn constant_index_lands_on_the_unit_root() {
        let ctx = fib_ctx();
        let e = parse_expression("F[7]").unwrap();
        let nf = binet_normal_form(&e, &ctx).unwrap();
        let terms: Vec<_> = nf.terms().collect();
        assert_eq!(terms.len(), 1);
        assert!(terms[0].0.is_unit_one());
        assert_eq!(terms[0].1, &vec![QuadElem::from_rat(rat(13))]);
    }

    #[test]
    fn zero_discriminant_is_rejected() {
        let (l, r) = parse_identity("U[n; 2, 1]^2 = U[n; 2, 1]*U[n; 2, 1]").unwrap();
        assert!(matches!(binet_verify(&l, &r), Err(Error::Unsupported(_))));
    }

    #[test]
    fn folded_roots_merge_coefficients() {
        // (1, 1) has period 6; U[3*n+2; 1, 1] = (-1)^n, a single unit root
        let params = LucasParams::from_ints(1, 1).unwrap();
        let ctx = ProverContext::new(&params);
        let e = parse_expression("U[3*n+2; 1, 1]").unwrap();
        let nf = binet_normal_form(&e, &ctx).unwrap();
        let terms: Vec<_> = nf.terms().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0, &CanonicalRoot::unit(rat(-1)));
        assert_eq!(terms[0].1, &vec![QuadElem::one()]);
        for n in 0..=8 {
            assert_eq!(nf.eval(&ctx, n).to_rat().unwrap(), e.eval(n).unwrap());
        }
    }
}
