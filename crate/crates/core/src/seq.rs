//! Fibonacci, Lucas, and general Lucas-pair sequences at any integer index.
//!
//! For parameters `(p, q)` with `q != 0` the pair of sequences
//!
//! ```text
//! u_0 = 0, u_1 = 1,  u_r = p u_{r-1} - q u_{r-2}
//! w_0 = 2, w_1 = p,  w_r = p w_{r-1} - q w_{r-2}
//! ```
//!
//! specialises at `(1, -1)` to the Fibonacci and Lucas numbers. Writing
//! `sigma`, `tau` for the roots of `x^2 - p x + q`, the closed forms are
//! `u_n = (sigma^n - tau^n) / (sigma - tau)` and `w_n = sigma^n + tau^n`.
//!
//! Negative indices are reached by running the recurrence backwards,
//! `u_{r-2} = (p u_{r-1} - u_r) / q`, which for Fibonacci and Lucas gives the
//! familiar reflections `F_{-m} = (-1)^{m+1} F_m` and `L_{-m} = (-1)^m L_m`.
//!
//! `fib`/`lucas` use binary fast doubling, so isolated large indices are
//! cheap; the general pair iterates from its seeds, and range helpers are
//! provided for sequential access.

use crate::error::Error;
use crate::scalar::{rat, Int, Rat};
use num_traits::{One, Zero};

/// `(F_m, F_{m+1})` for `m >= 0` by binary fast doubling.
fn fib_pair(m: u64) -> (Int, Int) {
    if m == 0 {
        return (Int::zero(), Int::one());
    }
    let mut a = Int::zero(); // F_k
    let mut b = Int::one(); // F_{k+1}
    let bits = 64 - m.leading_zeros() as u64;
    for i in (0..bits).rev() {
        // (F_k, F_{k+1}) -> (F_{2k}, F_{2k+1})
        let c = &a * ((&b << 1) - &a);
        let d = &a * &a + &b * &b;
        if (m >> i) & 1 == 1 {
            b = &c + &d;
            a = d;
        } else {
            a = c;
            b = d;
        }
    }
    (a, b)
}

/// Fibonacci number at any integer index.
pub fn fib(n: i64) -> Int {
    let m = n.unsigned_abs();
    let (f, _) = fib_pair(m);
    if n < 0 && m % 2 == 0 {
        -f
    } else {
        f
    }
}

/// Lucas number at any integer index.
pub fn lucas(n: i64) -> Int {
    let m = n.unsigned_abs();
    let (a, b) = fib_pair(m);
    let l = (b << 1u8) - a;
    if n < 0 && m % 2 == 1 {
        -l
    } else {
        l
    }
}

/// Parameters `(p, q)` of a Lucas pair. `q != 0` is enforced on
/// construction; the discriminant `D = p^2 - 4q` is always recomputed from
/// the fields so it can never go stale.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LucasParams {
    p: Rat,
    q: Rat,
}

impl LucasParams {
    pub fn new(p: Rat, q: Rat) -> Result<Self, Error> {
        if q.is_zero() {
            return Err(Error::DegenerateParams);
        }
        Ok(LucasParams { p, q })
    }

    pub fn from_ints(p: i64, q: i64) -> Result<Self, Error> {
        Self::new(rat(p), rat(q))
    }

    /// The Fibonacci/Lucas pair `(1, -1)`.
    pub fn fibonacci() -> Self {
        LucasParams {
            p: rat(1),
            q: rat(-1),
        }
    }

    pub fn p(&self) -> &Rat {
        &self.p
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    /// `D = p^2 - 4q`.
    pub fn discriminant(&self) -> Rat {
        &self.p * &self.p - rat(4) * &self.q
    }

    pub fn is_fibonacci(&self) -> bool {
        self.p == rat(1) && self.q == rat(-1)
    }
}

impl std::fmt::Display for LucasParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}, {})",
            crate::scalar::rat_display(&self.p),
            crate::scalar::rat_display(&self.q)
        )
    }
}

/// One forward step `(x_k, x_{k+1}) -> (x_{k+1}, x_{k+2})`.
fn step_up(params: &LucasParams, a: &Rat, b: &Rat) -> Rat {
    params.p() * b - params.q() * a
}

/// One backward step `(x_k, x_{k+1}) -> x_{k-1}`.
fn step_down(params: &LucasParams, a: &Rat, b: &Rat) -> Rat {
    (params.p() * a - b) / params.q()
}

fn lucas_seq(params: &LucasParams, n: i64, seed0: Rat, seed1: Rat) -> Rat {
    let (mut a, mut b) = (seed0, seed1);
    if n >= 0 {
        for _ in 0..n {
            let next = step_up(params, &a, &b);
            a = b;
            b = next;
        }
        a
    } else {
        for _ in 0..n.unsigned_abs() {
            let prev = step_down(params, &a, &b);
            b = a;
            a = prev;
        }
        a
    }
}

/// `u_n` for the pair `(p, q)`, any integer `n`.
pub fn lucas_u(params: &LucasParams, n: i64) -> Rat {
    lucas_seq(params, n, Rat::zero(), Rat::one())
}

/// `w_n = sigma^n + tau^n` for the pair `(p, q)`, any integer `n`.
pub fn lucas_w(params: &LucasParams, n: i64) -> Rat {
    lucas_seq(params, n, rat(2), params.p().clone())
}

/// `u_0 ..= u_max` by forward iteration.
pub fn u_values(params: &LucasParams, max: usize) -> Vec<Rat> {
    seq_values(params, max, Rat::zero(), Rat::one())
}

/// `w_0 ..= w_max` by forward iteration.
pub fn w_values(params: &LucasParams, max: usize) -> Vec<Rat> {
    seq_values(params, max, rat(2), params.p().clone())
}

fn seq_values(params: &LucasParams, max: usize, seed0: Rat, seed1: Rat) -> Vec<Rat> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(seed0);
    if max == 0 {
        return out;
    }
    out.push(seed1);
    for k in 2..=max {
        let next = step_up(params, &out[k - 2], &out[k - 1]);
        out.push(next);
    }
    out
}

/// Which sequence a term of the identity language refers to.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SeqKind {
    Fib,
    Lucas,
    U(LucasParams),
    W(LucasParams),
}

impl SeqKind {
    /// Exact value at an integer index.
    pub fn eval(&self, idx: i64) -> Rat {
        match self {
            SeqKind::Fib => Rat::from_integer(fib(idx)),
            SeqKind::Lucas => Rat::from_integer(lucas(idx)),
            SeqKind::U(p) => lucas_u(p, idx),
            SeqKind::W(p) => lucas_w(p, idx),
        }
    }

    /// The parameter pair this sequence lives over; `F`/`L` are the
    /// specialisation at `(1, -1)`.
    pub fn params(&self) -> LucasParams {
        match self {
            SeqKind::Fib | SeqKind::Lucas => LucasParams::fibonacci(),
            SeqKind::U(p) | SeqKind::W(p) => p.clone(),
        }
    }

    /// `u`-like sequences vanish at 0; `w`-like start at 2.
    pub fn is_u_like(&self) -> bool {
        matches!(self, SeqKind::Fib | SeqKind::U(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    /// Plain iterative oracle, independent of the fast-doubling path.
    fn fib_naive(n: i64) -> Int {
        let (mut a, mut b) = (Int::zero(), Int::one());
        if n >= 0 {
            for _ in 0..n {
                let next = &a + &b;
                a = b;
                b = next;
            }
        } else {
            for _ in 0..(-n) {
                let prev = &b - &a;
                b = a;
                a = prev;
            }
        }
        a
    }

    fn lucas_naive(n: i64) -> Int {
        let (mut a, mut b) = (Int::from(2), Int::one());
        if n >= 0 {
            for _ in 0..n {
                let next = &a + &b;
                a = b;
                b = next;
            }
        } else {
            for _ in 0..(-n) {
                let prev = &b - &a;
                b = a;
                a = prev;
            }
        }
        a
    }

    #[test]
    fn fib_matches_oracle_and_pinned_values() {
        for n in -60..=60 {
            assert_eq!(fib(n), fib_naive(n), "F_{n}");
        }
        assert_eq!(fib(0), Int::from(0));
        assert_eq!(fib(1), Int::from(1));
        assert_eq!(fib(12), Int::from(144));
        assert_eq!(fib(-4), Int::from(-3));
        assert_eq!(fib(20), Int::from(6765));
    }

    #[test]
    fn lucas_matches_oracle_and_pinned_values() {
        for n in -60..=60 {
            assert_eq!(lucas(n), lucas_naive(n), "L_{n}");
        }
        assert_eq!(lucas(0), Int::from(2));
        assert_eq!(lucas(4), Int::from(7));
        assert_eq!(lucas(-3), Int::from(-4));
    }

    #[test]
    fn fast_doubling_agrees_with_itself_at_large_indices() {
        // F_{2k} = F_k (2 F_{k+1} - F_k) exercised far beyond the oracle range
        let k = 4000;
        let f2k = fib(2 * k);
        let fk = fib(k);
        let fk1 = fib(k + 1);
        assert_eq!(f2k, &fk * ((&fk1 << 1) - &fk));
    }

    #[test]
    fn params_reject_zero_q() {
        assert_eq!(
            LucasParams::new(rat(3), rat(0)).unwrap_err(),
            Error::DegenerateParams
        );
        assert!(LucasParams::new(ratio(1, 2), ratio(-3, 7)).is_ok());
    }

    #[test]
    fn u_and_w_pinned_values() {
        let fibp = LucasParams::fibonacci();
        assert_eq!(lucas_u(&fibp, 10), rat(55));
        let p31 = LucasParams::from_ints(3, 1).unwrap();
        assert_eq!(lucas_u(&p31, 4), rat(21));
        let p21 = LucasParams::from_ints(2, 1).unwrap();
        assert_eq!(lucas_u(&p21, 5), rat(5));
        assert_eq!(lucas_w(&fibp, 4), rat(7));
        assert_eq!(lucas_w(&p31, 2), rat(7));
        assert_eq!(lucas_w(&p31, 3), rat(18));
    }

    #[test]
    fn fibonacci_pair_specialises_exactly() {
        let fibp = LucasParams::fibonacci();
        for n in -50..=50 {
            assert_eq!(lucas_u(&fibp, n), Rat::from_integer(fib(n)), "u_{n}");
            assert_eq!(lucas_w(&fibp, n), Rat::from_integer(lucas(n)), "w_{n}");
        }
    }

    #[test]
    fn u_from_w_by_the_linear_relation() {
        // u_r = (w_{r+1} - q w_{r-1}) / (p^2 - 4q) whenever D != 0
        let params = [
            LucasParams::fibonacci(),
            LucasParams::from_ints(3, 1).unwrap(),
            LucasParams::from_ints(-2, 3).unwrap(),
            LucasParams::new(ratio(1, 2), ratio(-3, 5)).unwrap(),
        ];
        for p in &params {
            let d = p.discriminant();
            assert!(!d.is_zero());
            for r in -20..=20 {
                let lhs = lucas_u(p, r);
                let rhs = (lucas_w(p, r + 1) - p.q() * lucas_w(p, r - 1)) / &d;
                assert_eq!(lhs, rhs, "params {p}, r = {r}");
            }
        }
    }

    #[test]
    fn w_from_u_by_the_two_linear_relations() {
        // w_r = p u_r - 2 q u_{r-1} and w_{r-1} = 2 u_r - p u_{r-1}
        let params = [
            LucasParams::fibonacci(),
            LucasParams::from_ints(3, 1).unwrap(),
            LucasParams::from_ints(2, 1).unwrap(),
            LucasParams::from_ints(-1, -2).unwrap(),
        ];
        for p in &params {
            for r in -20..=20 {
                let ur = lucas_u(p, r);
                let ur1 = lucas_u(p, r - 1);
                assert_eq!(lucas_w(p, r), p.p() * &ur - rat(2) * p.q() * &ur1);
                assert_eq!(lucas_w(p, r - 1), rat(2) * &ur - p.p() * &ur1);
            }
        }
    }

    #[test]
    fn negative_indices_rejoin_the_seeds() {
        // Running the defining recurrence forward from (x_{-k}, x_{-k+1})
        // must reproduce the seeds at 0 and 1.
        let params = [
            LucasParams::fibonacci(),
            LucasParams::from_ints(3, 1).unwrap(),
            LucasParams::new(ratio(2, 3), ratio(5, 7)).unwrap(),
        ];
        for p in &params {
            for k in 1..=12i64 {
                let (mut a, mut b) = (lucas_u(p, -k), lucas_u(p, -k + 1));
                for _ in 0..k {
                    let next = p.p() * &b - p.q() * &a;
                    a = b;
                    b = next;
                }
                assert_eq!(a, Rat::zero());
                assert_eq!(b, Rat::one());
            }
        }
    }

    #[test]
    fn range_helpers_match_single_evaluation() {
        let p = LucasParams::from_ints(3, 1).unwrap();
        let us = u_values(&p, 15);
        let ws = w_values(&p, 15);
        for n in 0..=15 {
            assert_eq!(us[n], lucas_u(&p, n as i64));
            assert_eq!(ws[n], lucas_w(&p, n as i64));
        }
    }

    #[test]
    fn seqkind_dispatch() {
        assert_eq!(SeqKind::Fib.eval(12), rat(144));
        assert_eq!(SeqKind::Lucas.eval(-3), rat(-4));
        let p = LucasParams::from_ints(3, 1).unwrap();
        assert_eq!(SeqKind::U(p.clone()).eval(4), rat(21));
        assert_eq!(SeqKind::W(p).eval(3), rat(18));
        assert!(SeqKind::Fib.params().is_fibonacci());
    }
}
