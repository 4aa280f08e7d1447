//! Pattern recognition for strip entries: Fibonacci and Lucas membership,
//! products of sequence entries, squares, and small scaled variants.
//!
//! Index conventions, fixed once so tags are deterministic:
//!
//! * recognizers report the smallest valid index, so 1 is F(1), not F(2);
//! * product factors use indices >= 2, skipping the F(1)/F(2) duplicate;
//! * mixed products only admit factor values >= 2 and require at least one
//!   Lucas factor (all-Fibonacci factorisations are pure products).
//!
//! Negative inputs are matched against the negative halves of the
//! sequences: F(-2k) = -F(2k) and L(-m) = -L(m) for odd m are the only
//! sources of negative values, so membership there is still decidable by
//! bounded enumeration. Enumeration always stops at the first sequence
//! value exceeding the input's magnitude.

use crate::scalar::{int, int_sqrt_exact, Int};
use crate::seq::{fib, lucas};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Which sequence a mixed-product factor comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    Fib,
    Lucas,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Fib => write!(f, "F"),
            Family::Lucas => write!(f, "L"),
        }
    }
}

/// Recognised shape of an integer. Every variant except `None` can be
/// re-evaluated, and [`PatternTag`] checks that the evaluation reproduces
/// the tagged value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternForm {
    Fib(i64),
    Lucas(i64),
    /// Product of two or three Fibonacci numbers, indices ascending, >= 2.
    FibProduct(Vec<i64>),
    /// Product with at least one Lucas factor; factors sorted by value.
    MixedProduct(Vec<(Family, i64)>),
    /// A small integer multiple of a recognised inner form.
    Scaled(i64, Box<PatternForm>),
    /// A perfect square whose root is recognised.
    Square(Box<PatternForm>),
    None,
}

impl PatternForm {
    /// Evaluate the form back to an integer; `None` has no value.
    pub fn eval(&self) -> Option<Int> {
        match self {
            PatternForm::Fib(k) => Some(fib(*k)),
            PatternForm::Lucas(k) => Some(lucas(*k)),
            PatternForm::FibProduct(ids) => {
                Some(ids.iter().fold(Int::one(), |acc, k| acc * fib(*k)))
            }
            PatternForm::MixedProduct(factors) => {
                Some(factors.iter().fold(Int::one(), |acc, (fam, k)| {
                    acc * match fam {
                        Family::Fib => fib(*k),
                        Family::Lucas => lucas(*k),
                    }
                }))
            }
            PatternForm::Scaled(c, inner) => inner.eval().map(|v| v * int(*c)),
            PatternForm::Square(inner) => inner.eval().map(|v| &v * &v),
            PatternForm::None => None,
        }
    }

    pub fn is_none(&self) -> bool {
        matches!(self, PatternForm::None)
    }
}

impl fmt::Display for PatternForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternForm::Fib(k) => write!(f, "F{k}"),
            PatternForm::Lucas(k) => write!(f, "L{k}"),
            PatternForm::FibProduct(ids) => {
                for (i, k) in ids.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "F{k}")?;
                }
                Ok(())
            }
            PatternForm::MixedProduct(factors) => {
                for (i, (fam, k)) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "{fam}{k}")?;
                }
                Ok(())
            }
            PatternForm::Scaled(c, inner) => write!(f, "{c}*{inner}"),
            PatternForm::Square(inner) => write!(f, "{inner}^2"),
            PatternForm::None => write!(f, "?"),
        }
    }
}

/// A value together with its recognised form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternTag {
    pub value: Int,
    pub form: PatternForm,
}

impl PatternTag {
    /// The defining invariant: a non-`None` form evaluates back to the
    /// tagged value.
    pub fn check(&self) -> bool {
        match self.form.eval() {
            Some(v) => v == self.value,
            None => self.form.is_none(),
        }
    }
}

/// Smallest index `k` with `F(k) = v`, if any. Negative inputs match the
/// negative-index images `F(-2k) = -F(2k)`.
pub fn recognize_fib(v: &Int) -> Option<i64> {
    if v.is_zero() {
        return Some(0);
    }
    if v.is_positive() {
        let (mut a, mut b) = (Int::one(), Int::one()); // F(1), F(2)
        let mut k = 1i64;
        while &a <= v {
            if &a == v {
                return Some(k);
            }
            let next = &a + &b;
            a = std::mem::replace(&mut b, next);
            k += 1;
        }
        None
    } else {
        let target = -v;
        let (mut a, mut b) = (Int::one(), int(2)); // F(2), F(3)
        let mut k = 2i64;
        while a <= target {
            if a == target {
                return Some(-k);
            }
            // advance two indices to stay on the even ones
            let a2 = &a + &b;
            let b2 = &a + &b + &b;
            a = a2;
            b = b2;
            k += 2;
        }
        None
    }
}

/// Smallest index `k` with `L(k) = v`, if any. Negative inputs match
/// `L(-m) = -L(m)` for odd `m`; no Lucas number is zero.
pub fn recognize_lucas(v: &Int) -> Option<i64> {
    if v.is_zero() {
        return None;
    }
    if v.is_positive() {
        if *v == int(2) {
            return Some(0);
        }
        let (mut a, mut b) = (Int::one(), int(3)); // L(1), L(2)
        let mut k = 1i64;
        while &a <= v {
            if &a == v {
                return Some(k);
            }
            let next = &a + &b;
            a = std::mem::replace(&mut b, next);
            k += 1;
        }
        None
    } else {
        let target = -v;
        let (mut a, mut b) = (Int::one(), int(3)); // L(1), L(2)
        let mut k = 1i64;
        while a <= target {
            if a == target {
                return Some(-k);
            }
            let a2 = &a + &b;
            let b2 = &a + &b + &b;
            a = a2;
            b = b2;
            k += 2;
        }
        None
    }
}

/// Index `b >= 2` with `F(b) = v` for positive `v`, used for the canonical
/// product factors (1 is taken as F(2), not F(1)).
fn fib_index_min2(v: &Int) -> Option<i64> {
    if v.is_one() {
        return Some(2);
    }
    match recognize_fib(v) {
        Some(k) if k >= 2 => Some(k),
        _ => None,
    }
}

/// Factor values >= 2 available to mixed products, mapped to the ways of
/// naming them: Fibonacci indices >= 3 and Lucas indices 0 or >= 2.
fn mixed_options(bound: &Int) -> BTreeMap<Int, Vec<(Family, i64)>> {
    let mut options: BTreeMap<Int, Vec<(Family, i64)>> = BTreeMap::new();
    let mut k = 3i64;
    loop {
        let v = fib(k);
        if &v > bound {
            break;
        }
        options.entry(v).or_default().push((Family::Fib, k));
        k += 1;
    }
    if bound >= &int(2) {
        options.entry(int(2)).or_default().push((Family::Lucas, 0));
    }
    let mut k = 2i64;
    loop {
        let v = lucas(k);
        if &v > bound {
            break;
        }
        options.entry(v).or_default().push((Family::Lucas, k));
        k += 1;
    }
    options
}

fn sorted_factors(mut triples: Vec<(Int, Family, i64)>) -> Vec<(Family, i64)> {
    triples.sort();
    triples.into_iter().map(|(_, fam, k)| (fam, k)).collect()
}

/// All ways to write positive `v` as a product of `max_factors` (2 or 3)
/// sequence entries: pure Fibonacci products first (indices >= 2,
/// ascending), then mixed products with at least one Lucas factor (factor
/// values >= 2, sorted by value). Zero and negative inputs get no
/// factorisations.
pub fn recognize_product(v: &Int, max_factors: usize) -> Vec<PatternForm> {
    assert!(
        matches!(max_factors, 2 | 3),
        "product recognition handles 2 or 3 factors"
    );
    let mut out = Vec::new();
    if !v.is_positive() {
        return out;
    }

    // pure pairs F(a) * F(b), 2 <= a <= b
    let (mut fa, mut fnext) = (Int::one(), int(2)); // F(2), F(3)
    let mut a = 2i64;
    while &fa * &fa <= *v {
        if (v % &fa).is_zero() {
            let rest = v / &fa;
            if let Some(b) = fib_index_min2(&rest) {
                if b >= a {
                    out.push(PatternForm::FibProduct(vec![a, b]));
                }
            }
        }
        let next = &fa + &fnext;
        fa = std::mem::replace(&mut fnext, next);
        a += 1;
    }

    // pure triples F(a) * F(b) * F(c), 2 <= a <= b <= c
    if max_factors == 3 {
        let (mut fa, mut fanext) = (Int::one(), int(2));
        let mut a = 2i64;
        while &fa * &fa * &fa <= *v {
            if (v % &fa).is_zero() {
                let w = v / &fa;
                let (mut fb, mut fbnext) = (fa.clone(), fanext.clone());
                let mut b = a;
                while &fb * &fb <= w {
                    if (&w % &fb).is_zero() {
                        let rest = &w / &fb;
                        if let Some(c) = fib_index_min2(&rest) {
                            if c >= b {
                                out.push(PatternForm::FibProduct(vec![a, b, c]));
                            }
                        }
                    }
                    let next = &fb + &fbnext;
                    fb = std::mem::replace(&mut fbnext, next);
                    b += 1;
                }
            }
            let next = &fa + &fanext;
            fa = std::mem::replace(&mut fanext, next);
            a += 1;
        }
    }

    // mixed products over factor values >= 2
    let options = mixed_options(v);
    let mut pairs: BTreeSet<Vec<(Family, i64)>> = BTreeSet::new();
    let mut triples: BTreeSet<Vec<(Family, i64)>> = BTreeSet::new();
    for (v1, names1) in &options {
        if v1 * v1 > *v {
            break;
        }
        if !(v % v1).is_zero() {
            continue;
        }
        let v2 = v / v1;
        if let Some(names2) = options.get(&v2) {
            for n1 in names1 {
                for n2 in names2 {
                    if n1.0 == Family::Fib && n2.0 == Family::Fib {
                        continue; // pure, already listed
                    }
                    pairs.insert(sorted_factors(vec![
                        (v1.clone(), n1.0, n1.1),
                        (v2.clone(), n2.0, n2.1),
                    ]));
                }
            }
        }
    }
    if max_factors == 3 {
        for (v1, names1) in &options {
            if v1 * v1 * v1 > *v {
                break;
            }
            if !(v % v1).is_zero() {
                continue;
            }
            let w = v / v1;
            for (v2, names2) in options.range(v1.clone()..) {
                if v2 * v2 > w {
                    break;
                }
                if !(&w % v2).is_zero() {
                    continue;
                }
                let v3 = &w / v2;
                if &v3 < v2 {
                    continue;
                }
                if let Some(names3) = options.get(&v3) {
                    for n1 in names1 {
                        for n2 in names2 {
                            for n3 in names3 {
                                if n1.0 == Family::Fib
                                    && n2.0 == Family::Fib
                                    && n3.0 == Family::Fib
                                {
                                    continue;
                                }
                                triples.insert(sorted_factors(vec![
                                    (v1.clone(), n1.0, n1.1),
                                    (v2.clone(), n2.0, n2.1),
                                    (v3.clone(), n3.0, n3.1),
                                ]));
                            }
                        }
                    }
                }
            }
        }
    }
    out.extend(pairs.into_iter().map(PatternForm::MixedProduct));
    out.extend(triples.into_iter().map(PatternForm::MixedProduct));
    out
}

/// Tag a value with the most structured form it matches, trying plain
/// membership, then squares, then products, then small scaled variants
/// (scalars 2, 3, 5, 6 in that order).
pub fn tag_value(v: &Int, max_factors: usize) -> PatternTag {
    PatternTag {
        value: v.clone(),
        form: tag_form(v, max_factors),
    }
}

fn tag_form(v: &Int, max_factors: usize) -> PatternForm {
    if let Some(k) = recognize_fib(v) {
        return PatternForm::Fib(k);
    }
    if let Some(k) = recognize_lucas(v) {
        return PatternForm::Lucas(k);
    }
    if v.is_positive() {
        if let Some(root) = int_sqrt_exact(v) {
            if let Some(k) = recognize_fib(&root) {
                return PatternForm::Square(Box::new(PatternForm::Fib(k)));
            }
            if let Some(k) = recognize_lucas(&root) {
                return PatternForm::Square(Box::new(PatternForm::Lucas(k)));
            }
        }
        if let Some(form) = recognize_product(v, max_factors).into_iter().next() {
            return form;
        }
    }
    for c in [2i64, 3, 5, 6] {
        let ci = int(c);
        if (v % &ci).is_zero() {
            let inner = v / &ci;
            if let Some(k) = recognize_fib(&inner) {
                return PatternForm::Scaled(c, Box::new(PatternForm::Fib(k)));
            }
            if let Some(k) = recognize_lucas(&inner) {
                return PatternForm::Scaled(c, Box::new(PatternForm::Lucas(k)));
            }
            if inner.is_positive() {
                if let Some(root) = int_sqrt_exact(&inner) {
                    if let Some(k) = recognize_fib(&root) {
                        return PatternForm::Scaled(
                            c,
                            Box::new(PatternForm::Square(Box::new(PatternForm::Fib(k)))),
                        );
                    }
                }
            }
        }
    }
    PatternForm::None
}
