//! Checks a factorization against the greedy definition of its scheme.

use super::naive::longest_previous;
use super::{check_tiling, render_pipes, Factorization, Scheme, SourceRef};
use crate::report::VerificationReport;

fn occurs_before(w: &[u8], start: usize, len: usize) -> bool {
    let pat = &w[start..start + len];
    (0..start.saturating_sub(len) + 1)
        .take_while(|&s| s + len <= start)
        .any(|s| &w[s..s + len] == pat)
}

fn ends_at_boundary(w: &[u8], start: usize, len: usize, ends: &[usize]) -> bool {
    let pat = &w[start..start + len];
    ends.iter().any(|&e| e >= len && &w[e - len..e] == pat)
}

/// Per-phrase checks: tiling, literal placement, source content, and greedy
/// maximality (no longer copy has a valid source). Only the first violation
/// of each kind is reported.
pub fn validate(f: &Factorization, w: &[u8]) -> VerificationReport {
    let subject = format!("{} n={}", f.scheme, w.len());
    let mut report = VerificationReport::new(format!("validate {subject}"));
    let dump = || {
        let pipes = render_pipes(f, w).unwrap_or_else(|e| format!("<{e}>"));
        format!("pipes: {pipes}\njson: {}", f.to_json())
    };

    if let Err(e) = check_tiling(f, w.len()) {
        report.push("tiling", &subject, "contiguous cover", e, false, dump);
        return report;
    }
    report.push("tiling", &subject, "contiguous cover", "ok", true, String::new);

    let ends: Vec<usize> = f.phrases.iter().map(|p| p.end()).collect();
    let last = f.phrases.len().saturating_sub(1);
    let mut literal = None;
    let mut source = None;
    let mut maximal = None;

    for (idx, p) in f.phrases.iter().enumerate() {
        let copy = p.copy_len();
        let remaining = w.len() - p.start;

        if literal.is_none() {
            let bad = match f.scheme {
                Scheme::Lz77 | Scheme::LzEnd => {
                    if !p.has_sentinel && idx != last {
                        Some("literal omitted before the final phrase")
                    } else if p.has_sentinel && copy == 0 && p.src != SourceRef::None {
                        Some("single-letter phrase carries a source")
                    } else {
                        None
                    }
                }
                Scheme::CFact => {
                    if p.has_sentinel != (p.len == 1 && p.src == SourceRef::None) {
                        Some("literal only allowed on fresh single letters")
                    } else {
                        None
                    }
                }
            };
            literal = bad.map(|b| format!("phrase {idx}: {b}"));
        }

        if source.is_none() {
            let bad = match (f.scheme, p.src) {
                (_, SourceRef::None) => (copy != 0).then(|| "copies without a source".to_string()),
                (Scheme::Lz77 | Scheme::CFact, SourceRef::Window(s)) => {
                    if s + copy > p.start {
                        Some(format!("window [{s}, {}) overlaps the phrase", s + copy))
                    } else if w[s..s + copy] != w[p.start..p.start + copy] {
                        Some(format!("window at {s} does not match"))
                    } else {
                        None
                    }
                }
                (Scheme::LzEnd, SourceRef::Boundary(j)) => {
                    if j >= idx {
                        Some(format!("boundary {j} is not an earlier phrase"))
                    } else if ends[j] < copy || w[ends[j] - copy..ends[j]] != w[p.start..p.start + copy] {
                        Some(format!("suffix ending at phrase {j} does not match"))
                    } else {
                        None
                    }
                }
                (scheme, src) => Some(format!("{} source in {scheme}", src.kind())),
            };
            source = bad.map(|b| format!("phrase {idx}: {b}"));
        }

        if maximal.is_none() && copy < remaining {
            let longer = match f.scheme {
                Scheme::Lz77 => occurs_before(w, p.start, copy + 1).then_some(copy + 1),
                Scheme::CFact if p.has_sentinel => occurs_before(w, p.start, 1).then_some(1),
                Scheme::CFact => occurs_before(w, p.start, copy + 1).then_some(copy + 1),
                Scheme::LzEnd => {
                    let bound = longest_previous(w, p.start).0;
                    (copy + 1..=bound).find(|&l| ends_at_boundary(w, p.start, l, &ends[..idx]))
                }
            };
            maximal = longer.map(|l| format!("phrase {idx}: a copy of {l} letters has a source"));
        }
    }

    for (name, found) in [("literal", literal), ("source", source), ("maximality", maximal)] {
        match found {
            None => report.push(name, &subject, "no violation", "ok", true, String::new),
            Some(v) => report.push(name, &subject, "no violation", v, false, dump),
        };
    }
    report
}
