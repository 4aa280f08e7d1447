//! Closed-form guessing for strip coordinates, and the finite check that
//! turns a guess into a theorem.
//!
//! `hypothesize` fits a fixed template family over a window of values and
//! keeps every template that matches the whole window. `confirm` then
//! settles each guess: the candidate's annihilator roots are merged into
//! the generator's characteristic polynomial, the degree N of the merged
//! root multiset bounds how long the two sequences could agree without
//! being equal, and N consecutive positions decide it either way.

use crate::error::Error;
use crate::identity::{annihilator, params_context, AffineIndex, Expr, ProverContext};
use crate::poly::QuadPoly;
use crate::scalar::{Int, Rat};
use crate::trigraph::VecSeq;
use std::fmt;

/// What a hypothesis is about: one coordinate of the strip, or the
/// difference / sum of two of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Coord(usize),
    /// First coordinate minus the second.
    Diff(usize, usize),
    PairSum(usize, usize),
}

impl Target {
    /// Pull the target's values out of a generated strip.
    pub fn extract(&self, seq: &VecSeq) -> Vec<Int> {
        match *self {
            Target::Coord(j) => seq.coordinate(j),
            Target::Diff(i, j) => seq
                .terms()
                .iter()
                .map(|t| &t[i] - &t[j])
                .collect(),
            Target::PairSum(i, j) => seq
                .terms()
                .iter()
                .map(|t| &t[i] + &t[j])
                .collect(),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Target::Coord(j) => write!(f, "coordinate {j}"),
            Target::Diff(i, j) => write!(f, "coordinate {i} - coordinate {j}"),
            Target::PairSum(i, j) => write!(f, "coordinate {i} + coordinate {j}"),
        }
    }
}

/// Lifecycle of a guess.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HypothesisStatus {
    /// Matches the fitted window; not yet decided.
    Fitted,
    /// Proven equal to the target for every position.
    Confirmed { order: u32 },
    /// Differs from the target at the given position.
    Refuted { position: i64 },
}

/// A candidate closed form for a target, in the identity DSL with `n`
/// standing for the 1-based term position.
#[derive(Debug, Clone)]
pub struct Hypothesis {
    pub target: Target,
    pub candidate: Expr,
    /// Window length the candidate was fitted on.
    pub fitted_on: usize,
    pub status: HypothesisStatus,
}

/// Template family searched by [`hypothesize`]: scalar multiples of
/// `F[n+s]*F[n+t]`, `F[n+s]^2`, `L[n+s]^2` and `L[n+s]*F[n+t]`, each in a
/// plain form and with `(-1)^n` added or subtracted.
#[derive(Debug, Clone)]
pub struct TemplateLibrary {
    pub scalars: Vec<i64>,
    pub offsets: Vec<i64>,
}

impl Default for TemplateLibrary {
    fn default() -> Self {
        TemplateLibrary {
            scalars: vec![1, 2, 3, 5, 6],
            offsets: (-4..=4).collect(),
        }
    }
}

impl TemplateLibrary {
    fn bases(&self) -> Vec<Expr> {
        let mut out = Vec::new();
        let fib = |off: i64| Expr::fib(AffineIndex::n(off));
        let luc = |off: i64| Expr::lucas(AffineIndex::n(off));
        for &c in &self.scalars {
            let scaled = |e: Expr| if c == 1 { e } else { Expr::mul(Expr::int(c), e) };
            for &s in &self.offsets {
                for &t in &self.offsets {
                    if t > s {
                        out.push(scaled(Expr::mul(fib(s), fib(t))));
                    } else if t == s {
                        out.push(scaled(fib(s).pow(2)));
                    }
                }
            }
            for &s in &self.offsets {
                out.push(scaled(luc(s).pow(2)));
            }
            for &s in &self.offsets {
                for &t in &self.offsets {
                    out.push(scaled(Expr::mul(luc(s), fib(t))));
                }
            }
        }
        out
    }
}

fn matches_window(candidate: &Expr, values: &[Int]) -> bool {
    values.iter().enumerate().all(|(i, v)| {
        let pos = i as i64 + 1;
        match candidate.eval(pos) {
            Ok(got) => got == Rat::from_integer(v.clone()),
            Err(_) => false,
        }
    })
}

/// Fit the template library against a window of target values (1-based
/// positions). Every template matching the whole window comes back as a
/// `Fitted` hypothesis. Needs at least 6 values to have any bite.
pub fn hypothesize(
    values: &[Int],
    target: Target,
    library: &TemplateLibrary,
) -> Result<Vec<Hypothesis>, Error> {
    if values.len() < 6 {
        return Err(Error::WindowTooShort {
            need: 6,
            got: values.len(),
        });
    }
    let sign = || Expr::signpow(AffineIndex::n(0));
    let mut out = Vec::new();
    for base in library.bases() {
        let variants = [
            base.clone(),
            Expr::add(base.clone(), sign()),
            Expr::sub(base, sign()),
        ];
        for candidate in variants {
            if matches_window(&candidate, values) {
                out.push(Hypothesis {
                    target,
                    candidate,
                    fitted_on: values.len(),
                    status: HypothesisStatus::Fitted,
                });
            }
        }
    }
    Ok(out)
}

/// Decide a fitted hypothesis. The candidate and the strip coordinate both
/// satisfy the linear recurrence whose characteristic polynomial is the
/// generator's polynomial extended by any candidate annihilator roots it
/// is missing; with N its degree, agreement at positions 1..=N settles
/// equality everywhere the recurrence reaches.
pub fn confirm(mut h: Hypothesis, seq: &VecSeq) -> Result<Hypothesis, Error> {
    h.candidate.validate()?;
    let params = params_context(&h.candidate, &h.candidate)?;
    let ctx = ProverContext::new(&params);
    let ann = annihilator(&h.candidate, &ctx)?;
    let gen_poly = QuadPoly::from_poly(&seq.spec().char_poly());
    let mut checks = seq.spec().order() as u32;
    for (root, mult) in ann.iter() {
        let covered = gen_poly.root_multiplicity(&ctx.value(root)) as u32;
        checks += mult.saturating_sub(covered);
    }
    let needed = checks as usize;
    let extended;
    let strip = if seq.len() >= needed {
        seq
    } else {
        extended = seq.extended(needed - seq.len())?;
        &extended
    };
    let values = h.target.extract(strip);
    for (i, value) in values.iter().enumerate().take(needed) {
        let pos = i as i64 + 1;
        if h.candidate.eval(pos)? != Rat::from_integer(value.clone()) {
            h.status = HypothesisStatus::Refuted { position: pos };
            return Ok(h);
        }
    }
    h.status = HypothesisStatus::Confirmed { order: checks };
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RecurrenceSpec;
    use crate::scalar::int;
    use crate::trigraph::generate;

    fn strip_21() -> VecSeq {
        let seeds = vec![
            vec![int(1), int(0), int(0)],
            vec![int(2), int(1), int(0)],
            vec![int(2), int(2), int(1)],
        ];
        generate(&seeds, &RecurrenceSpec::from_ints(&[2, 2, -1]).unwrap(), 9).unwrap()
    }

    #[test]
    fn third_coordinate_guess() {
        let seq = strip_21();
        let values = Target::Coord(2).extract(&seq);
        assert_eq!(values[..4], [int(0), int(0), int(1), int(2)]);
        let hyps = hypothesize(&values, Target::Coord(2), &TemplateLibrary::default()).unwrap();
        let shown: Vec<String> = hyps.iter().map(|h| h.candidate.to_string()).collect();
        assert!(shown.contains(&"F[n-2]*F[n-1]".to_string()), "{shown:?}");
    }

    #[test]
    fn second_coordinate_guess() {
        let seq = strip_21();
        let values = Target::Coord(1).extract(&seq);
        let hyps = hypothesize(&values, Target::Coord(1), &TemplateLibrary::default()).unwrap();
        let shown: Vec<String> = hyps.iter().map(|h| h.candidate.to_string()).collect();
        assert!(shown.contains(&"F[n-1]*F[n]".to_string()), "{shown:?}");
    }

    #[test]
    fn difference_guess_is_a_square() {
        let seq = strip_21();
        let values = Target::Diff(0, 1).extract(&seq);
        assert_eq!(
            values,
            [1, 1, 0, 1, 1, 4, 9, 25, 64].map(int).to_vec()
        );
        let hyps = hypothesize(&values, Target::Diff(0, 1), &TemplateLibrary::default()).unwrap();
        let shown: Vec<String> = hyps.iter().map(|h| h.candidate.to_string()).collect();
        assert!(shown.contains(&"F[n-3]^2".to_string()), "{shown:?}");
    }

    #[test]
    fn short_window_is_rejected() {
        let values = vec![int(1), int(1), int(2)];
        let err = hypothesize(&values, Target::Coord(0), &TemplateLibrary::default());
        assert!(matches!(err, Err(Error::WindowTooShort { need: 6, got: 3 })));
    }

    #[test]
    fn confirm_settles_a_correct_guess_at_order_three() {
        let seq = strip_21();
        let candidate = Expr::mul(
            Expr::fib(AffineIndex::n(-1)),
            Expr::fib(AffineIndex::n(0)),
        );
        let h = Hypothesis {
            target: Target::Coord(1),
            candidate,
            fitted_on: 9,
            status: HypothesisStatus::Fitted,
        };
        let h = confirm(h, &seq).unwrap();
        assert_eq!(h.status, HypothesisStatus::Confirmed { order: 3 });
    }

    #[test]
    fn confirm_refutes_a_wrong_guess() {
        let seq = strip_21();
        let candidate = Expr::fib(AffineIndex::n(0)).pow(2);
        let h = Hypothesis {
            target: Target::Coord(1),
            candidate,
            fitted_on: 9,
            status: HypothesisStatus::Fitted,
        };
        let h = confirm(h, &seq).unwrap();
        assert_eq!(h.status, HypothesisStatus::Refuted { position: 1 });
    }

    #[test]
    fn confirm_handles_a_seed_only_strip() {
        let seeds = vec![
            vec![int(1), int(0), int(0)],
            vec![int(2), int(1), int(0)],
            vec![int(2), int(2), int(1)],
        ];
        let seq = generate(&seeds, &RecurrenceSpec::from_ints(&[2, 2, -1]).unwrap(), 3).unwrap();
        let candidate = Expr::mul(
            Expr::fib(AffineIndex::n(-2)),
            Expr::fib(AffineIndex::n(-1)),
        );
        let h = Hypothesis {
            target: Target::Coord(2),
            candidate,
            fitted_on: 3,
            status: HypothesisStatus::Fitted,
        };
        let h = confirm(h, &seq).unwrap();
        assert_eq!(h.status, HypothesisStatus::Confirmed { order: 3 });
    }

    #[test]
    fn confirm_extends_the_strip_when_it_is_short() {
        // a candidate that matches all three seed positions but not the
        // fourth, with annihilator roots the generator does not cover: the
        // check window is longer than the strip, so confirm has to extend
        // it before it can see the mismatch
        let seeds = vec![
            vec![int(1), int(0), int(0)],
            vec![int(2), int(1), int(0)],
            vec![int(2), int(2), int(1)],
        ];
        let seq = generate(&seeds, &RecurrenceSpec::from_ints(&[2, 2, -1]).unwrap(), 3).unwrap();
        let pair = Expr::mul(
            Expr::fib(AffineIndex::n(-2)),
            Expr::fib(AffineIndex::n(-1)),
        );
        let quartic = Expr::mul(
            Expr::mul(Expr::fib(AffineIndex::n(-3)), Expr::fib(AffineIndex::n(-2))),
            Expr::mul(Expr::fib(AffineIndex::n(-1)), Expr::fib(AffineIndex::n(0))),
        );
        let h = Hypothesis {
            target: Target::Coord(2),
            candidate: Expr::add(pair, quartic),
            fitted_on: 3,
            status: HypothesisStatus::Fitted,
        };
        let h = confirm(h, &seq).unwrap();
        assert_eq!(h.status, HypothesisStatus::Refuted { position: 4 });
    }

    #[test]
    fn all_confirmed_guesses_survive_a_long_extension() {
        let seq = strip_21();
        let lib = TemplateLibrary::default();
        let long = seq.extended(100).unwrap();
        for target in [Target::Coord(1), Target::Coord(2), Target::Diff(0, 1)] {
            let values = target.extract(&seq);
            for h in hypothesize(&values, target, &lib).unwrap() {
                let h = confirm(h, &seq).unwrap();
                if let HypothesisStatus::Confirmed { .. } = h.status {
                    let long_values = target.extract(&long);
                    for (i, v) in long_values.iter().enumerate() {
                        let pos = i as i64 + 1;
                        assert_eq!(
                            h.candidate.eval(pos).unwrap(),
                            Rat::from_integer(v.clone()),
                            "{} at position {pos}",
                            h.candidate
                        );
                    }
                }
            }
        }
    }
}
