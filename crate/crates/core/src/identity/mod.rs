//! Proving and refuting sequence identities.
//!
//! The main entry point is [`verify`]: given the two sides of a candidate
//! identity, it computes a root multiset annihilating both (see
//! [`roots`]), takes its total multiplicity `N`, and compares the sides at
//! `n = 0, 1, ..., N-1`. Agreement on that window is a proof: both sides
//! satisfy the order-`N` recurrence read off the annihilator, and two
//! solutions of one recurrence that agree at `N` consecutive points are
//! equal wherever the recurrence reaches. Disagreement at some point of the
//! window is a counterexample outright. There is no third possibility, so
//! the check always decides.
//!
//! The recurrence has a nonzero trailing coefficient (no root is zero), so
//! sum-free identities proved this way hold at every integer, negative
//! indices included. Identities with prefix sums are statements about
//! `n >= 0` and are reported as such.
//!
//! [`binet::binet_verify`] is a deliberately separate second route through
//! closed forms; [`corpus`] runs both on named identity files and insists
//! they agree.

pub mod ast;
pub mod binet;
pub mod corpus;
pub mod parse;
pub mod roots;

pub use ast::{params_context, AffineIndex, Expr, IndexVar, Monomial};
pub use binet::{binet_normal_form, binet_verify, ExpPoly};
pub use corpus::{parse_corpus, run_corpus, CorpusEntry, CorpusReport, EntryResult};
pub use parse::{parse_expression, parse_identity};
pub use roots::{annihilator, CanonicalRoot, ProverContext, RootSet};

use crate::error::Error;
use crate::scalar::rat_display;
use serde::Serialize;

/// Where a proven identity is known to hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Domain {
    /// Every integer index.
    AllIntegers,
    /// Indices `n >= 0` (identities with prefix sums).
    NonNegative,
}

impl std::fmt::Display for Domain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Domain::AllIntegers => write!(f, "all integers"),
            Domain::NonNegative => write!(f, "n >= 0"),
        }
    }
}

/// Outcome of a verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// Both sides satisfy one recurrence of the given order and agree on
    /// the whole window, so they agree on the domain.
    Proven {
        order: u32,
        window: (i64, i64),
        domain: Domain,
    },
    /// The sides differ at `witness`; the values are carried along.
    Refuted {
        witness: i64,
        lhs: String,
        rhs: String,
    },
    /// The claim is outside what the prover handles (mixed parameter
    /// pairs, malformed trees, overflowing indices).
    Unsupported { reason: String },
}

impl Verdict {
    pub fn is_proven(&self) -> bool {
        matches!(self, Verdict::Proven { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted { .. })
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Proven { order, window, .. } => write!(
                f,
                "Proven (order {order}, window {}..{})",
                window.0, window.1
            ),
            Verdict::Refuted { witness, lhs, rhs } => {
                write!(f, "Refuted (witness n = {witness}: {lhs} != {rhs})")
            }
            Verdict::Unsupported { reason } => write!(f, "Unsupported: {reason}"),
        }
    }
}

fn verify_inner(lhs: &Expr, rhs: &Expr) -> Result<Verdict, Error> {
    lhs.validate()?;
    rhs.validate()?;
    let params = params_context(lhs, rhs)?;
    let ctx = ProverContext::new(&params);
    let ann = annihilator(lhs, &ctx)?.union_max(annihilator(rhs, &ctx)?);
    let order = ann.degree();
    let window = (0i64, order as i64 - 1);
    for n in window.0..=window.1 {
        let lv = lhs.eval(n)?;
        let rv = rhs.eval(n)?;
        if lv != rv {
            return Ok(Verdict::Refuted {
                witness: n,
                lhs: rat_display(&lv),
                rhs: rat_display(&rv),
            });
        }
    }
    let domain = if lhs.contains_sum() || rhs.contains_sum() {
        Domain::NonNegative
    } else {
        Domain::AllIntegers
    };
    Ok(Verdict::Proven {
        order,
        window,
        domain,
    })
}

/// Decide `lhs = rhs` by the finite check. Never panics on grammar-shaped
/// input; conditions the prover cannot handle come back as
/// [`Verdict::Unsupported`].
pub fn verify(lhs: &Expr, rhs: &Expr) -> Verdict {
    match verify_inner(lhs, rhs) {
        Ok(v) => v,
        Err(e) => Verdict::Unsupported {
            reason: e.to_string(),
        },
    }
}
