//! Named identity collections.
//!
//! A corpus file holds one identity per line as `name : lhs = rhs`, with
//! `#` comments and blank lines ignored. [`run_corpus`] pushes every entry
//! through both proof routes (and, for entries with prefix sums, a direct
//! numeric sweep of the claimed domain) and reports whether the routes
//! agree entry by entry.

use crate::error::Error;
use crate::identity::ast::Expr;
use crate::identity::binet::binet_verify;
use crate::identity::parse::parse_identity;
use crate::identity::{verify, Verdict};
use serde::Serialize;

/// The identities shipped with the crate.
pub const SHIPPED_CORPUS: &str = include_str!("../../corpus/identities.txt");

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    /// 1-based line in the source text.
    pub line: usize,
    pub lhs: Expr,
    pub rhs: Expr,
    /// The identity as written (directly reparseable).
    pub source: String,
}

/// Parse a corpus file. Names must be unique.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, Error> {
    let mut out: Vec<CorpusEntry> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let stripped = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        if stripped.trim().is_empty() {
            continue;
        }
        let Some((name, body)) = stripped.split_once(':') else {
            return Err(Error::Corpus {
                line,
                message: "expected `name : identity`".into(),
            });
        };
        let name = name.trim();
        if name.is_empty() {
            return Err(Error::Corpus {
                line,
                message: "empty entry name".into(),
            });
        }
        if out.iter().any(|e| e.name == name) {
            return Err(Error::Corpus {
                line,
                message: format!("duplicate entry name {name}"),
            });
        }
        let source = body.trim().to_string();
        let (lhs, rhs) = parse_identity(&source).map_err(|e| Error::Corpus {
            line,
            message: e.to_string(),
        })?;
        out.push(CorpusEntry {
            name: name.to_string(),
            line,
            lhs,
            rhs,
            source,
        });
    }
    Ok(out)
}

/// Outcome for one corpus entry.
#[derive(Debug, Clone, Serialize)]
pub struct EntryResult {
    pub name: String,
    pub verdict: Verdict,
    /// Closed-form route, when it applies: did it prove the identity?
    pub closed_form: Option<bool>,
    /// For entries with prefix sums: do both sides match numerically on
    /// `0..=200`?
    pub direct_check: Option<bool>,
    /// All routes that ran point the same way.
    pub routes_agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub entries: Vec<EntryResult>,
    pub all_proven: bool,
    pub all_routes_agree: bool,
}

const DIRECT_WINDOW: i64 = 200;

fn direct_check(lhs: &Expr, rhs: &Expr) -> Option<bool> {
    if !(lhs.contains_sum() || rhs.contains_sum()) {
        return None;
    }
    for n in 0..=DIRECT_WINDOW {
        match (lhs.eval(n), rhs.eval(n)) {
            (Ok(a), Ok(b)) if a == b => {}
            _ => return Some(false),
        }
    }
    Some(true)
}

/// Run every route on every entry.
pub fn run_corpus(entries: &[CorpusEntry]) -> CorpusReport {
    let mut results = Vec::with_capacity(entries.len());
    for entry in entries {
        let verdict = verify(&entry.lhs, &entry.rhs);
        let closed_form = binet_verify(&entry.lhs, &entry.rhs).ok();
        let direct = direct_check(&entry.lhs, &entry.rhs);
        let proven = verdict.is_proven();
        let routes_agree = closed_form.map_or(true, |c| c == proven)
            && direct.map_or(true, |d| d == proven);
        results.push(EntryResult {
            name: entry.name.clone(),
            verdict,
            closed_form,
            direct_check: direct,
            routes_agree,
        });
    }
    CorpusReport {
        all_proven: results.iter().all(|r| r.verdict.is_proven()),
        all_routes_agree: results.iter().all(|r| r.routes_agree),
        entries: results,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_corpus_parses() {
        let entries = parse_corpus(SHIPPED_CORPUS).unwrap();
        assert_eq!(entries.len(), 26);
        assert_eq!(entries[0].name, "c1");
        assert!(entries.iter().any(|e| e.name == "cube-split"));
    }

    #[test]
    fn corpus_sources_reparse_to_the_same_trees() {
        for entry in parse_corpus(SHIPPED_CORPUS).unwrap() {
            let printed = format!("{} = {}", entry.lhs, entry.rhs);
            let (l, r) = parse_identity(&printed).unwrap();
            assert_eq!(l, entry.lhs, "{}", entry.name);
            assert_eq!(r, entry.rhs, "{}", entry.name);
        }
    }

    #[test]
    fn bad_corpus_lines_error_with_positions() {
        let err = parse_corpus("a : F[n] = F[n]\n\nF[n] = F[n]\n").unwrap_err();
        match err {
            Error::Corpus { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_corpus("a : F[n] = F[n]\na : L[n] = L[n]\n").unwrap_err();
        match err {
            Error::Corpus { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("duplicate"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_corpus("a : F[n] + = 1\n").unwrap_err();
        match err {
            Error::Corpus { line, message } => {
                assert_eq!(line, 1);
                assert!(message.contains("parse error"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn mini_corpus_runs_all_routes() {
        let entries = parse_corpus(
            "good : F[2*n] = F[n]*L[n]\nbad : F[2*n] = F[n]*L[n] + 1\nsummy : sum(i, F[i]^2) = F[n]*F[n+1]\n",
        )
        .unwrap();
        let report = run_corpus(&entries);
        assert!(!report.all_proven);
        assert!(report.all_routes_agree);
        assert!(report.entries[0].verdict.is_proven());
        assert_eq!(report.entries[0].closed_form, Some(true));
        assert_eq!(report.entries[0].direct_check, None);
        assert!(report.entries[1].verdict.is_refuted());
        assert_eq!(report.entries[1].closed_form, Some(false));
        assert!(report.entries[2].verdict.is_proven());
        assert_eq!(report.entries[2].direct_check, Some(true));
    }
}
