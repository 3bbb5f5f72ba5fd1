//! Suffix automaton over the whole input, plus the bookkeeping the indexed
//! engines need on top of it.
//!
//! Every state stores the exclusive end of the leftmost occurrence of its
//! strings (`min_end`). That is enough for non-overlapping LZ77: a pattern
//! occurs inside `w[..i]` iff `min_end <= i`.
//!
//! For LZ-End the question is whether a pattern is a suffix of `w[..e]` for
//! a marked phrase end `e`, i.e. whether `e` lies in the pattern's endpos
//! set. Endpos sets are the prefix states below a state in the suffix-link
//! tree, so an Euler tour of that tree turns them into contiguous ranges and
//! a range-minimum tree over the tour answers the query.

use std::collections::HashMap;

pub(crate) const NIL: u32 = u32::MAX;

/// Dense tables get too large for big alphabets on big inputs.
const DENSE_CELL_BUDGET: usize = 1 << 28;

enum Edges {
    Dense { sigma: usize, to: Vec<u32> },
    Sparse(HashMap<u64, u32>),
}

impl Edges {
    #[inline]
    fn get(&self, state: u32, code: u8) -> u32 {
        match self {
            Edges::Dense { sigma, to } => to[state as usize * sigma + code as usize],
            Edges::Sparse(map) => *map.get(&key(state, code)).unwrap_or(&NIL),
        }
    }

    #[inline]
    fn set(&mut self, state: u32, code: u8, target: u32) {
        match self {
            Edges::Dense { sigma, to } => to[state as usize * *sigma + code as usize] = target,
            Edges::Sparse(map) => {
                map.insert(key(state, code), target);
            }
        }
    }

    fn add_state(&mut self) {
        if let Edges::Dense { sigma, to } = self {
            to.extend(std::iter::repeat(NIL).take(*sigma));
        }
    }

    fn copy_state(&mut self, from: u32, to_state: u32, sigma: usize) {
        match self {
            Edges::Dense { sigma, to } => {
                let (src, dst) = (from as usize * *sigma, to_state as usize * *sigma);
                to.copy_within(src..src + *sigma, dst);
            }
            Edges::Sparse(map) => {
                for code in 0..sigma as u8 {
                    if let Some(&t) = map.get(&key(from, code)) {
                        map.insert(key(to_state, code), t);
                    }
                }
            }
        }
    }
}

#[inline]
fn key(state: u32, code: u8) -> u64 {
    (state as u64) << 8 | code as u64
}

pub(crate) struct SuffixAutomaton {
    code: [u8; 256],
    present: [bool; 256],
    edges: Edges,
    link: Vec<u32>,
    len: Vec<u32>,
    min_end: Vec<u32>,
    /// `prefix_state[e]` is the state whose strings include `w[..e]`.
    prefix_state: Vec<u32>,
}

impl SuffixAutomaton {
    pub(crate) fn build(text: &[u8]) -> Self {
        Self::build_with(text, false)
    }

    fn build_with(text: &[u8], force_sparse: bool) -> Self {
        assert!(text.len() < (u32::MAX / 2) as usize, "input too long for u32 state ids");

        let mut code = [0u8; 256];
        let mut seen = [false; 256];
        for &c in text {
            seen[c as usize] = true;
        }
        let mut sigma = 0usize;
        for c in 0..256 {
            if seen[c] {
                code[c] = sigma as u8;
                sigma += 1;
            }
        }
        let sigma = sigma.max(1);

        let cap = 2 * text.len() + 1;
        let edges = if !force_sparse && (sigma <= 4 || cap.saturating_mul(sigma) <= DENSE_CELL_BUDGET) {
            Edges::Dense {
                sigma,
                to: Vec::with_capacity(cap * sigma),
            }
        } else {
            Edges::Sparse(HashMap::new())
        };

        let mut sam = SuffixAutomaton {
            code,
            present: seen,
            edges,
            link: Vec::with_capacity(cap),
            len: Vec::with_capacity(cap),
            min_end: Vec::with_capacity(cap),
            prefix_state: Vec::with_capacity(text.len() + 1),
        };
        let root = sam.new_state(0, 0, NIL);
        sam.prefix_state.push(root);

        let mut last = root;
        for (p, &byte) in text.iter().enumerate() {
            let c = sam.code[byte as usize];
            let cur = sam.new_state(sam.len[last as usize] + 1, p as u32 + 1, NIL);
            sam.prefix_state.push(cur);

            let mut x = last;
            while x != NIL && sam.edges.get(x, c) == NIL {
                sam.edges.set(x, c, cur);
                x = sam.link[x as usize];
            }
            if x == NIL {
                sam.link[cur as usize] = root;
            } else {
                let q = sam.edges.get(x, c);
                if sam.len[x as usize] + 1 == sam.len[q as usize] {
                    sam.link[cur as usize] = q;
                } else {
                    let clone = sam.new_state(
                        sam.len[x as usize] + 1,
                        sam.min_end[q as usize],
                        sam.link[q as usize],
                    );
                    sam.edges.copy_state(q, clone, sigma);
                    while x != NIL && sam.edges.get(x, c) == q {
                        sam.edges.set(x, c, clone);
                        x = sam.link[x as usize];
                    }
                    sam.link[q as usize] = clone;
                    sam.link[cur as usize] = clone;
                }
            }
            last = cur;
        }
        sam
    }

    fn new_state(&mut self, len: u32, min_end: u32, link: u32) -> u32 {
        let id = self.len.len() as u32;
        self.len.push(len);
        self.min_end.push(min_end);
        self.link.push(link);
        self.edges.add_state();
        id
    }

    pub(crate) fn root(&self) -> u32 {
        0
    }

    pub(crate) fn num_states(&self) -> usize {
        self.len.len()
    }

    /// Transition on the raw byte `byte`, or `NIL`.
    #[inline]
    pub(crate) fn step(&self, state: u32, byte: u8) -> u32 {
        if !self.present[byte as usize] {
            return NIL;
        }
        self.edges.get(state, self.code[byte as usize])
    }

    #[inline]
    pub(crate) fn min_end(&self, state: u32) -> usize {
        self.min_end[state as usize] as usize
    }
}

/// Euler-tour ranges of the suffix-link tree, restricted to prefix states.
pub(crate) struct EndposIndex {
    lo: Vec<u32>,
    hi: Vec<u32>,
    /// Tour slot of the prefix state for `w[..e]`.
    slot_of_prefix: Vec<u32>,
}

impl EndposIndex {
    pub(crate) fn build(sam: &SuffixAutomaton) -> Self {
        let states = sam.num_states();

        // children of every state in CSR form
        let mut offsets = vec![0u32; states + 1];
        for &parent in &sam.link[1..] {
            offsets[parent as usize + 1] += 1;
        }
        for s in 0..states {
            offsets[s + 1] += offsets[s];
        }
        let mut fill = offsets.clone();
        let mut children = vec![0u32; states.saturating_sub(1)];
        for (s, &parent) in sam.link.iter().enumerate().skip(1) {
            children[fill[parent as usize] as usize] = s as u32;
            fill[parent as usize] += 1;
        }
        drop(fill);

        let mut prefix_len = vec![NIL; states];
        for (e, &s) in sam.prefix_state.iter().enumerate() {
            prefix_len[s as usize] = e as u32;
        }

        let mut lo = vec![0u32; states];
        let mut hi = vec![0u32; states];
        let mut slot_of_prefix = vec![0u32; sam.prefix_state.len()];
        let mut counter = 0u32;
        let mut stack: Vec<(u32, u32)> = vec![(sam.root(), offsets[0])];
        lo[0] = 0;
        if prefix_len[0] != NIL {
            slot_of_prefix[prefix_len[0] as usize] = counter;
            counter += 1;
        }
        while let Some(top) = stack.last_mut() {
            let (v, next) = *top;
            if next < offsets[v as usize + 1] {
                top.1 += 1;
                let child = children[next as usize];
                lo[child as usize] = counter;
                if prefix_len[child as usize] != NIL {
                    slot_of_prefix[prefix_len[child as usize] as usize] = counter;
                    counter += 1;
                }
                stack.push((child, offsets[child as usize]));
            } else {
                hi[v as usize] = counter;
                stack.pop();
            }
        }
        debug_assert_eq!(counter as usize, sam.prefix_state.len());

        EndposIndex {
            lo,
            hi,
            slot_of_prefix,
        }
    }

    pub(crate) fn slots(&self) -> usize {
        self.slot_of_prefix.len()
    }

    #[inline]
    pub(crate) fn range(&self, state: u32) -> (usize, usize) {
        (self.lo[state as usize] as usize, self.hi[state as usize] as usize)
    }

    #[inline]
    pub(crate) fn slot(&self, prefix_len: usize) -> usize {
        self.slot_of_prefix[prefix_len] as usize
    }
}

/// Point-assign, range-minimum tree over `u32` values.
pub(crate) struct MinTree {
    size: usize,
    data: Vec<u32>,
}

impl MinTree {
    pub(crate) fn new(n: usize) -> Self {
        let size = n.max(1).next_power_of_two();
        MinTree {
            size,
            data: vec![NIL; 2 * size],
        }
    }

    pub(crate) fn set(&mut self, pos: usize, value: u32) {
        let mut i = pos + self.size;
        self.data[i] = value;
        while i > 1 {
            i >>= 1;
            self.data[i] = self.data[2 * i].min(self.data[2 * i + 1]);
        }
    }

    /// Minimum over `[lo, hi)`; `NIL` when empty or unset.
    #[inline]
    pub(crate) fn min(&self, lo: usize, hi: usize) -> u32 {
        let (mut l, mut r) = (lo + self.size, hi + self.size);
        let mut best = NIL;
        while l < r {
            if l & 1 == 1 {
                best = best.min(self.data[l]);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                best = best.min(self.data[r]);
            }
            l >>= 1;
            r >>= 1;
        }
        best
    }
}
