//! Suffix-automaton engines. Phrase-for-phrase identical to the direct-scan
//! engines, including source tie-breaking.

use super::sam::{EndposIndex, MinTree, SuffixAutomaton, NIL};
use super::{Phrase, SourceRef};

/// Walks `w[i..]` through the automaton while the pattern still occurs
/// inside `w[..i]`. Returns the match length and its final state.
fn previous_match(sam: &SuffixAutomaton, w: &[u8], i: usize) -> (usize, u32) {
    let mut v = sam.root();
    let mut l = 0;
    while i + l < w.len() {
        let next = sam.step(v, w[i + l]);
        if next == NIL || sam.min_end(next) > i {
            break;
        }
        v = next;
        l += 1;
    }
    (l, v)
}

fn window_phrase(sam: &SuffixAutomaton, w: &[u8], i: usize) -> Phrase {
    let (l, v) = previous_match(sam, w, i);
    let remaining = w.len() - i;
    let src = SourceRef::Window(sam.min_end(v) - l);
    if l == remaining {
        Phrase {
            start: i,
            len: l,
            src,
            has_sentinel: false,
        }
    } else {
        Phrase {
            start: i,
            len: l + 1,
            src: if l == 0 { SourceRef::None } else { src },
            has_sentinel: true,
        }
    }
}

pub(crate) fn lz77(w: &[u8]) -> Vec<Phrase> {
    let sam = SuffixAutomaton::build(w);
    let mut phrases = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let p = window_phrase(&sam, w, i);
        i += p.len;
        phrases.push(p);
    }
    phrases
}

pub(crate) fn cfact(w: &[u8]) -> Vec<Phrase> {
    let sam = SuffixAutomaton::build(w);
    let mut phrases = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let (l, v) = previous_match(&sam, w, i);
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
                src: SourceRef::Window(sam.min_end(v) - l),
                has_sentinel: false,
            }
        };
        i += p.len;
        phrases.push(p);
    }
    phrases
}

pub(crate) fn lzend(w: &[u8]) -> Vec<Phrase> {
    let sam = SuffixAutomaton::build(w);
    let endpos = EndposIndex::build(&sam);
    // marked[slot(e)] = index of the phrase ending at e
    let mut marked = MinTree::new(endpos.slots());
    let mut phrases = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut v = sam.root();
        let mut l = 0;
        let mut best = (0usize, NIL);
        // Valid lengths are not prefix-closed, so keep walking for as long
        // as the pattern occurs at all inside w[..i].
        while i + l < w.len() {
            let next = sam.step(v, w[i + l]);
            if next == NIL || sam.min_end(next) > i {
                break;
            }
            v = next;
            l += 1;
            let (lo, hi) = endpos.range(v);
            let j = marked.min(lo, hi);
            if j != NIL {
                best = (l, j);
            }
        }

        let (copy, j) = best;
        let remaining = w.len() - i;
        let src = if copy == 0 {
            SourceRef::None
        } else {
            SourceRef::Boundary(j as usize)
        };
        let p = Phrase {
            start: i,
            len: if copy == remaining { copy } else { copy + 1 },
            src,
            has_sentinel: copy != remaining,
        };
        i += p.len;
        marked.set(endpos.slot(i), phrases.len() as u32);
        phrases.push(p);
    }
    phrases
}
