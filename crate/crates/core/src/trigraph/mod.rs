//! Vector strips and the patterns their entries form.
//!
//! A strip is a sequence of integer vectors driven by a single scalar
//! linear recurrence applied coordinatewise. Strips of this kind arise as
//! counting sequences along caterpillar graphs (a path with one pendant
//! leg per node), and their entries have a habit of being Fibonacci and
//! Lucas numbers, or small products of them. This module generates strips
//! ([`generate`]), tags each entry with the most structured form it
//! matches ([`annotate`], via [`recognize`]), fits and settles closed-form
//! guesses for coordinates and coordinate combinations ([`hypothesis`]),
//! and draws the strip ([`render`]).

pub mod hypothesis;
pub mod recognize;
pub mod render;

pub use hypothesis::{
    confirm, hypothesize, Hypothesis, HypothesisStatus, Target, TemplateLibrary,
};
pub use recognize::{
    recognize_fib, recognize_lucas, recognize_product, tag_value, Family, PatternForm, PatternTag,
};
pub use render::{render_ascii, render_svg};

use crate::error::Error;
use crate::poly::RecurrenceSpec;
use crate::scalar::{int_sqrt_exact, Int, Rat};

/// A generated strip: integer vectors satisfying `spec` in every
/// coordinate, the first `spec.order()` of them given as seeds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VecSeq {
    dim: usize,
    spec: RecurrenceSpec,
    seeds: Vec<Vec<Int>>,
    terms: Vec<Vec<Int>>,
}

impl VecSeq {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn spec(&self) -> &RecurrenceSpec {
        &self.spec
    }

    pub fn seeds(&self) -> &[Vec<Int>] {
        &self.seeds
    }

    /// All terms, seeds included.
    pub fn terms(&self) -> &[Vec<Int>] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, i: usize) -> &[Int] {
        &self.terms[i]
    }

    /// The `j`-th entry of every term.
    pub fn coordinate(&self, j: usize) -> Vec<Int> {
        self.terms.iter().map(|t| t[j].clone()).collect()
    }

    /// The same strip with `extra` more terms.
    pub fn extended(&self, extra: usize) -> Result<VecSeq, Error> {
        generate(&self.seeds, &self.spec, self.terms.len() + extra)
    }
}

/// Run `spec` coordinatewise from `seeds` out to `count` terms (seeds
/// included). The seed count must equal the order, the seed vectors must
/// all have the same nonzero dimension, and every generated entry must
/// come out an integer; rational recurrence coefficients are fine as long
/// as they cancel.
pub fn generate(
    seeds: &[Vec<Int>],
    spec: &RecurrenceSpec,
    count: usize,
) -> Result<VecSeq, Error> {
    if seeds.len() != spec.order() {
        return Err(Error::SeedCount {
            expected: spec.order(),
            got: seeds.len(),
        });
    }
    let dim = seeds.first().map_or(0, Vec::len);
    if dim == 0 || seeds.iter().any(|s| s.len() != dim) {
        return Err(Error::DimensionMismatch);
    }
    let mut columns = Vec::with_capacity(dim);
    for j in 0..dim {
        let seed_col: Vec<Rat> = seeds
            .iter()
            .map(|s| Rat::from_integer(s[j].clone()))
            .collect();
        columns.push(spec.apply(&seed_col, count)?);
    }
    let mut terms = Vec::with_capacity(count);
    for m in 0..count {
        let mut row = Vec::with_capacity(dim);
        for col in &columns {
            if !col[m].is_integer() {
                return Err(Error::NonIntegerTerm(m));
            }
            row.push(col[m].to_integer());
        }
        terms.push(row);
    }
    Ok(VecSeq {
        dim,
        spec: spec.clone(),
        seeds: seeds.to_vec(),
        terms,
    })
}

/// The recurrence `x(m) = 2x(m-1) + 2x(m-2) - x(m-3)` satisfied by
/// products of adjacent Fibonacci numbers, squares of Fibonacci and Lucas
/// numbers, and the caterpillar strips built from them.
pub fn default_spec() -> RecurrenceSpec {
    RecurrenceSpec::from_ints(&[2, 2, -1]).expect("fixed nonzero coefficients")
}

/// One odd-length prefix sum of a coordinate: the first `2k + 1` entries,
/// whether the sum is a perfect square, and whether the root is a
/// Fibonacci number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowSum {
    pub k: usize,
    pub sum: Int,
    pub root: Option<Int>,
    pub fib_index: Option<i64>,
}

/// Odd-window prefix sums of one coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareScan {
    pub coordinate: usize,
    pub windows: Vec<WindowSum>,
    /// Every window sum is the square of a Fibonacci number.
    pub all_fib_squares: bool,
}

/// Termwise sums of one coordinate pair, checked against the Fibonacci
/// sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairScan {
    pub pair: (usize, usize),
    pub values: Vec<Int>,
    pub fib_indices: Vec<Option<i64>>,
    pub all_fib: bool,
}

/// Everything [`annotate`] notices about a strip.
#[derive(Debug, Clone)]
pub struct StripReport {
    /// One tag per entry, indexed `[term][coordinate]`.
    pub tags: Vec<Vec<PatternTag>>,
    /// Fitted and settled guesses for every coordinate, difference and
    /// pair sum; empty when the strip is too short to fit against.
    pub hypotheses: Vec<Hypothesis>,
    pub square_scans: Vec<SquareScan>,
    pub pair_scans: Vec<PairScan>,
}

/// Tag every entry, fit closed forms for every coordinate, coordinate
/// difference and coordinate pair sum (settling each guess with a finite
/// check), and scan for square prefix sums and Fibonacci pair sums.
pub fn annotate(
    seq: &VecSeq,
    library: &TemplateLibrary,
    max_factors: usize,
) -> Result<StripReport, Error> {
    let tags: Vec<Vec<PatternTag>> = seq
        .terms()
        .iter()
        .map(|t| t.iter().map(|v| tag_value(v, max_factors)).collect())
        .collect();

    let mut targets: Vec<Target> = (0..seq.dim()).map(Target::Coord).collect();
    for i in 0..seq.dim() {
        for j in i + 1..seq.dim() {
            targets.push(Target::Diff(i, j));
            targets.push(Target::PairSum(i, j));
        }
    }
    let mut hypotheses = Vec::new();
    if seq.len() >= 6 {
        for target in targets {
            let values = target.extract(seq);
            for h in hypothesize(&values, target, library)? {
                hypotheses.push(confirm(h, seq)?);
            }
        }
    }

    let mut square_scans = Vec::with_capacity(seq.dim());
    for j in 0..seq.dim() {
        let values = seq.coordinate(j);
        let mut windows = Vec::new();
        let mut all_fib_squares = true;
        let mut k = 0;
        while 2 * k + 1 <= values.len() {
            let sum: Int = values[..2 * k + 1].iter().sum();
            let root = int_sqrt_exact(&sum);
            let fib_index = root.as_ref().and_then(recognize_fib);
            all_fib_squares &= fib_index.is_some();
            windows.push(WindowSum {
                k,
                sum,
                root,
                fib_index,
            });
            k += 1;
        }
        square_scans.push(SquareScan {
            coordinate: j,
            windows,
            all_fib_squares,
        });
    }

    let mut pair_scans = Vec::new();
    for i in 0..seq.dim() {
        for j in i + 1..seq.dim() {
            let values: Vec<Int> = seq.terms().iter().map(|t| &t[i] + &t[j]).collect();
            let fib_indices: Vec<Option<i64>> = values.iter().map(recognize_fib).collect();
            let all_fib = fib_indices.iter().all(Option::is_some);
            pair_scans.push(PairScan {
                pair: (i, j),
                values,
                fib_indices,
                all_fib,
            });
        }
    }

    Ok(StripReport {
        tags,
        hypotheses,
        square_scans,
        pair_scans,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn rows(table: &[&[i64]]) -> Vec<Vec<Int>> {
        table
            .iter()
            .map(|r| r.iter().copied().map(int).collect())
            .collect()
    }

    fn adjacent_product_strip(count: usize) -> VecSeq {
        let seeds = rows(&[&[1, 0, 0], &[2, 1, 0], &[2, 2, 1]]);
        generate(&seeds, &default_spec(), count).unwrap()
    }

    #[test]
    fn generated_terms_start_with_the_seeds() {
        let seq = adjacent_product_strip(5);
        assert_eq!(&seq.terms()[..3], seq.seeds());
        assert_eq!(seq.len(), 5);
        assert_eq!(seq.dim(), 3);
    }

    #[test]
    fn three_coordinate_strip_matches_the_pinned_table() {
        let seq = adjacent_product_strip(9);
        let expected = rows(&[
            &[1, 0, 0],
            &[2, 1, 0],
            &[2, 2, 1],
            &[7, 6, 2],
            &[16, 15, 6],
            &[44, 40, 15],
            &[113, 104, 40],
            &[298, 273, 104],
            &[778, 714, 273],
        ]);
        assert_eq!(seq.terms(), expected);
    }

    #[test]
    fn two_coordinate_strip_matches_the_pinned_table() {
        let seeds = rows(&[&[1, 2], &[2, 1], &[1, 2]]);
        let seq = generate(&seeds, &default_spec(), 10).unwrap();
        let expected = rows(&[
            &[1, 2],
            &[2, 1],
            &[1, 2],
            &[5, 4],
            &[10, 11],
            &[29, 28],
            &[73, 74],
            &[194, 193],
            &[505, 506],
            &[1325, 1324],
        ]);
        assert_eq!(seq.terms(), expected);
    }

    #[test]
    fn four_coordinate_strip_matches_the_pinned_table() {
        let seeds = rows(&[
            &[0, 0, 0, 1],
            &[0, 0, 1, 0],
            &[0, 0, 0, 0],
            &[0, 1, 0, 0],
            &[1, 0, 0, 0],
        ]);
        let spec = RecurrenceSpec::from_ints(&[5, 15, -15, -5, 1]).unwrap();
        let seq = generate(&seeds, &spec, 9).unwrap();
        let expected = rows(&[
            &[0, 0, 0, 1],
            &[0, 0, 1, 0],
            &[0, 0, 0, 0],
            &[0, 1, 0, 0],
            &[1, 0, 0, 0],
            &[5, 15, -5, 1],
            &[40, 60, -24, 5],
            &[260, 520, -195, 40],
            &[1820, 3276, -1260, 260],
        ]);
        assert_eq!(seq.terms(), expected);
    }

    #[test]
    fn seed_count_must_match_the_order() {
        let seeds = rows(&[&[1, 0], &[2, 1]]);
        let err = generate(&seeds, &default_spec(), 9);
        assert!(matches!(
            err,
            Err(Error::SeedCount {
                expected: 3,
                got: 2
            })
        ));
    }

    #[test]
    fn ragged_seeds_are_rejected() {
        let mut seeds = rows(&[&[1, 0], &[2, 1], &[2, 2]]);
        seeds[1].push(int(9));
        let err = generate(&seeds, &default_spec(), 9);
        assert!(matches!(err, Err(Error::DimensionMismatch)));
    }

    #[test]
    fn count_shorter_than_the_seeds_is_rejected() {
        let seeds = rows(&[&[1], &[2], &[2]]);
        let err = generate(&seeds, &default_spec(), 2);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn fractional_entries_are_reported_by_position() {
        let spec = RecurrenceSpec::new(vec![ratio(1, 2)]).unwrap();
        let seeds = rows(&[&[1]]);
        let err = generate(&seeds, &spec, 3);
        assert!(matches!(err, Err(Error::NonIntegerTerm(1))));
    }

    #[test]
    fn extension_preserves_the_prefix() {
        let seq = adjacent_product_strip(6);
        let longer = seq.extended(3).unwrap();
        assert_eq!(longer.len(), 9);
        assert_eq!(&longer.terms()[..6], seq.terms());
        assert_eq!(longer.coordinate(2)[8], int(273));
    }

    #[test]
    fn annotation_tags_products_in_the_strip() {
        let report = annotate(&adjacent_product_strip(9), &TemplateLibrary::default(), 2).unwrap();
        assert_eq!(report.tags[7][1].form.to_string(), "F7*F8");
        assert_eq!(report.tags[7][2].form.to_string(), "F6*F7");
        assert!(report.tags[8][0].form.is_none());
        for row in &report.tags {
            for tag in row {
                assert!(tag.check());
            }
        }
    }

    #[test]
    fn annotation_square_scan_tracks_fibonacci_squares() {
        let report = annotate(&adjacent_product_strip(9), &TemplateLibrary::default(), 2).unwrap();
        let third = &report.square_scans[2];
        assert!(third.all_fib_squares);
        let sums: Vec<Int> = third.windows.iter().map(|w| w.sum.clone()).collect();
        assert_eq!(sums, [0, 1, 9, 64, 441].map(int).to_vec());
        let roots: Vec<Int> = third
            .windows
            .iter()
            .map(|w| w.root.clone().unwrap())
            .collect();
        assert_eq!(roots, [0, 1, 3, 8, 21].map(int).to_vec());
        assert!(!report.square_scans[0].all_fib_squares);
    }

    #[test]
    fn annotation_pair_scan_finds_the_fibonacci_sums() {
        let report = annotate(&adjacent_product_strip(9), &TemplateLibrary::default(), 2).unwrap();
        let last = report
            .pair_scans
            .iter()
            .find(|s| s.pair == (1, 2))
            .unwrap();
        assert!(last.all_fib);
        assert_eq!(
            last.values,
            [0, 1, 3, 8, 21, 55, 144, 377, 987].map(int).to_vec()
        );
        let first = report
            .pair_scans
            .iter()
            .find(|s| s.pair == (0, 1))
            .unwrap();
        assert!(!first.all_fib);
    }

    #[test]
    fn annotation_confirms_the_coordinate_guesses() {
        let report = annotate(&adjacent_product_strip(9), &TemplateLibrary::default(), 2).unwrap();
        let confirmed: Vec<(String, String)> = report
            .hypotheses
            .iter()
            .filter(|h| matches!(h.status, HypothesisStatus::Confirmed { .. }))
            .map(|h| (h.target.to_string(), h.candidate.to_string()))
            .collect();
        let has = |t: &str, c: &str| confirmed.iter().any(|(a, b)| a == t && b == c);
        assert!(has("coordinate 1", "F[n-1]*F[n]"), "{confirmed:?}");
        assert!(has("coordinate 2", "F[n-2]*F[n-1]"), "{confirmed:?}");
        assert!(
            has("coordinate 0 - coordinate 1", "F[n-3]^2"),
            "{confirmed:?}"
        );
        for h in &report.hypotheses {
            assert_ne!(h.status, HypothesisStatus::Fitted, "{}", h.candidate);
        }
    }
}
