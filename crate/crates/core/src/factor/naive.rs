//! Direct-scan reference engines. These follow the definitions literally
//! and are the oracle the indexed engines are checked against.

use super::{Phrase, SourceRef};

/// Longest prefix of `w[i..]` that occurs entirely inside `w[..i]`, with the
/// leftmost starting position among the longest candidates.
pub(crate) fn longest_previous(w: &[u8], i: usize) -> (usize, usize) {
    let n = w.len();
    let mut best = (0, 0);
    for j in 0..i {
        let mut l = 0;
        while i + l < n && j + l < i && w[j + l] == w[i + l] {
            l += 1;
        }
        if l > best.0 {
            best = (l, j);
        }
    }
    best
}

/// Longest prefix of `w[i..]` that is a suffix of `w[..ends[j]]` for some
/// `j`, together with the smallest such `j`.
///
/// A suffix of `w[..e]` with `e <= i` lies inside `w[..i]`, so no candidate
/// can be longer than [`longest_previous`]; lengths are tried from that
/// bound downwards and the first hit is the answer.
pub(crate) fn longest_boundary_suffix(w: &[u8], i: usize, ends: &[usize]) -> (usize, Option<usize>) {
    let bound = longest_previous(w, i).0;
    for l in (1..=bound).rev() {
        let target = &w[i..i + l];
        for (j, &e) in ends.iter().enumerate() {
            if e >= l && e <= i && &w[e - l..e] == target {
                return (l, Some(j));
            }
        }
    }
    (0, None)
}

fn copy_phrase(start: usize, copy: usize, remaining: usize, src: SourceRef) -> Phrase {
    if copy == remaining {
        Phrase {
            start,
            len: copy,
            src,
            has_sentinel: false,
        }
    } else {
        Phrase {
            start,
            len: copy + 1,
            src: if copy == 0 { SourceRef::None } else { src },
            has_sentinel: true,
        }
    }
}

pub(crate) fn lz77(w: &[u8]) -> Vec<Phrase> {
    let mut phrases = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let (l, src) = longest_previous(w, i);
        let p = copy_phrase(i, l, w.len() - i, SourceRef::Window(src));
        i += p.len;
        phrases.push(p);
    }
    phrases
}

pub(crate) fn lzend(w: &[u8]) -> Vec<Phrase> {
    let mut phrases = Vec::new();
    let mut ends: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let (l, j) = longest_boundary_suffix(w, i, &ends);
        let src = j.map_or(SourceRef::None, SourceRef::Boundary);
        let p = copy_phrase(i, l, w.len() - i, src);
        i += p.len;
        ends.push(i);
        phrases.push(p);
    }
    phrases
}

pub(crate) fn cfact(w: &[u8]) -> Vec<Phrase> {
    let mut phrases = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let (l, src) = longest_previous(w, i);
        let p = if l == 0 {
            Phrase {
                start: i,
                len: 1,
                src: SourceRef::None,
                has_sentinel: true,
            }
        } else {
            Phrase {
                start: i,
                len: l,
                src: SourceRef::Window(src),
                has_sentinel: false,
            }
        };
        i += p.len;
        phrases.push(p);
    }
    phrases
}
