//! Characteristic polynomials for termwise powers of second-order
//! recurrences.
//!
//! If `u` satisfies `u(r) = p*u(r-1) - q*u(r-2)` with roots `sigma`, `tau`,
//! then the n-th termwise power `u(r)^n` is annihilated by the monic
//! polynomial whose roots are `sigma^j * tau^(n-j)`, `j = 0..=n`. Two
//! independent routes compute it:
//!
//! * [`char_poly_product`] expands the product of linear factors over the
//!   quadratic field directly;
//! * [`char_poly_binomial`] writes the coefficients in closed form with
//!   generalised binomial coefficients built from `u` itself.
//!
//! The quotient form of [`gen_binomial`] breaks down when some `u(i)` in a
//! denominator vanishes (it does for `(p, q) = (1, 1)`, where `u` is
//! periodic), and the error says which one. [`char_poly_binomial`] instead
//! builds its coefficients with the division-free Pascal-style recurrence
//!
//! ```text
//! binom(n, k) = u(k+1) * binom(n-1, k) - q * u(n-k-1) * binom(n-1, k-1)
//! ```
//!
//! (a consequence of `u(m+r) = u(m+1) u(r) - q u(m) u(r-1)`), which agrees
//! with the quotient wherever the quotient is defined and extends it by
//! continuity in `(p, q)` where it is not. The product route always works.
//! Keeping both is the point: they validate each other coefficient by
//! coefficient.

use crate::error::Error;
use crate::poly::{Poly, QuadElem, QuadPoly, RecurrenceSpec};
use crate::scalar::{rat, rat_pow, Rat};
use crate::seq::{lucas, u_values, LucasParams};
use num_traits::{One, Zero};

/// Generalised binomial coefficient with respect to `u`: the product
/// `u(n) * u(n-1) * ... * u(n-k+1)` divided by `u(k) * ... * u(1)`.
///
/// Requires `0 <= k <= n`. Fails with [`Error::ZeroDivisor`] if a
/// denominator term vanishes.
pub fn gen_binomial(params: &LucasParams, n: u32, k: u32) -> Result<Rat, Error> {
    if k > n {
        return Err(Error::Precondition(format!(
            "generalised binomial needs k <= n, got k = {k}, n = {n}"
        )));
    }
    let u = u_values(params, n as usize);
    let mut acc = Rat::one();
    for i in 1..=k {
        let den = &u[i as usize];
        if den.is_zero() {
            return Err(Error::ZeroDivisor(i as i64));
        }
        acc = acc * &u[(n - k + i) as usize] / den;
    }
    Ok(acc)
}

/// Row `n` of the generalised binomial triangle, computed without any
/// division so that degenerate parameter pairs still get a value.
fn binomial_row(params: &LucasParams, n: u32) -> Vec<Rat> {
    let u = u_values(params, n as usize);
    let mut row = vec![Rat::one()];
    for m in 1..=n as usize {
        let mut next = Vec::with_capacity(m + 1);
        next.push(Rat::one());
        for k in 1..m {
            let c = &u[k + 1] * &row[k] - params.q() * &u[m - k - 1] * &row[k - 1];
            next.push(c);
        }
        next.push(Rat::one());
        row = next;
    }
    row
}

fn sigma_tau(params: &LucasParams) -> (QuadElem, QuadElem) {
    let half = rat(1) / rat(2);
    let s = QuadElem::new(params.p() * &half, half, params.discriminant());
    let t = s.conjugate();
    (s, t)
}

/// Expand `prod_{j=0}^{n} (x - sigma^j * tau^(n-j))` over the quadratic
/// field. The root multiset is closed under conjugation, so every radical
/// part cancels and the result is rational.
pub fn char_poly_product(params: &LucasParams, n: u32) -> Result<Poly, Error> {
    let (sigma, tau) = sigma_tau(params);
    // sigma_pows[j] = sigma^j, tau_pows[j] = tau^j
    let mut sigma_pows = Vec::with_capacity(n as usize + 1);
    let mut tau_pows = Vec::with_capacity(n as usize + 1);
    sigma_pows.push(QuadElem::one());
    tau_pows.push(QuadElem::one());
    for j in 1..=n as usize {
        sigma_pows.push(&sigma_pows[j - 1] * &sigma);
        tau_pows.push(&tau_pows[j - 1] * &tau);
    }
    let mut acc = QuadPoly::one();
    for j in 0..=n as usize {
        let root = &sigma_pows[j] * &tau_pows[n as usize - j];
        acc = acc.mul_linear(&root);
    }
    acc.into_poly()
}

/// Closed form for the same polynomial:
/// `sum_{i=0}^{n+1} (-1)^i q^(i(i-1)/2) binom(n+1, i)_u x^(n+1-i)`,
/// with the binomials computed division-free (see the module docs).
pub fn char_poly_binomial(params: &LucasParams, n: u32) -> Result<Poly, Error> {
    let deg = n + 1;
    let row = binomial_row(params, deg);
    let mut coeffs = vec![Rat::zero(); deg as usize + 1];
    for i in 0..=deg {
        let mut c = row[i as usize].clone();
        c *= rat_pow(params.q(), (i as i64) * (i as i64 - 1) / 2);
        if i % 2 == 1 {
            c = -c;
        }
        coeffs[(deg - i) as usize] = c;
    }
    Ok(Poly::new(coeffs))
}

/// Constant-coefficient recurrence satisfied by the m-th termwise power of
/// any sequence obeying the base recurrence: coefficients read off
/// [`char_poly_binomial`] at `n = m`. Order `m + 1`.
pub fn power_recurrence(params: &LucasParams, m: u32) -> Result<RecurrenceSpec, Error> {
    if m == 0 {
        return Err(Error::Precondition(
            "power recurrence needs m >= 1".into(),
        ));
    }
    RecurrenceSpec::from_monic_char_poly(&char_poly_binomial(params, m)?)
}

/// The order-3 recurrence for termwise squares, spelled out:
/// `x(m) = (p^2 - q) x(m-1) + (q^2 - p^2 q) x(m-2) + q^3 x(m-3)`.
pub fn square_recurrence(params: &LucasParams) -> RecurrenceSpec {
    let p2 = params.p() * params.p();
    let q = params.q();
    let coeffs = vec![&p2 - q, q * q - &p2 * q, q * q * q];
    RecurrenceSpec::new(coeffs).expect("q is nonzero, so the trailing coefficient q^3 is too")
}

/// Outcome of checking the degree-lowering factorisation of the Fibonacci
/// power polynomial `Phi_n(x)`: does
/// `Phi_n(x) = sign * (-1)^n * (x^2 - L_n x + (-1)^n) * Phi_{n-2}(-x)`
/// hold for some sign, and which one?
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct FactorizationCheck {
    pub n: u32,
    pub holds_up_to_sign: bool,
    /// `+1` or `-1` when the identity holds; `None` otherwise.
    pub sign: Option<i8>,
}

/// Check the factorisation above for the Fibonacci parameters, `n >= 2`.
pub fn factorization_check(n: u32) -> Result<FactorizationCheck, Error> {
    if n < 2 {
        return Err(Error::Precondition(
            "factorisation check needs n >= 2".into(),
        ));
    }
    let fib = LucasParams::fibonacci();
    let lhs = char_poly_product(&fib, n)?;
    let ln = Rat::from_integer(lucas(n as i64));
    let unit = if n % 2 == 0 { rat(1) } else { rat(-1) };
    let quad = Poly::new(vec![unit.clone(), -ln, rat(1)]);
    let lower = char_poly_product(&fib, n - 2)?.compose_neg_x();
    let rhs = quad.mul(&lower).scale(&unit);
    let (holds, sign) = if lhs == rhs {
        (true, Some(1))
    } else if lhs == rhs.neg() {
        (true, Some(-1))
    } else {
        (false, None)
    };
    Ok(FactorizationCheck {
        n,
        holds_up_to_sign: holds,
        sign,
    })
}
