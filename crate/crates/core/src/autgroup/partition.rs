//! Ordered partitions with equitable refinement.
//!
//! Cells are identified by their start position in `elems`. Every operation
//! depends only on cell positions and neighbour counts, never on vertex names,
//! so isomorphic inputs refine to corresponding cell structures and traces.

use std::collections::VecDeque;

use crate::bitset::Bitset;
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub(crate) struct Partition {
    elems: Vec<usize>,
    cell_of: Vec<usize>,
    /// Length of the cell starting at each position; zero elsewhere.
    cell_len: Vec<usize>,
    cells: usize,
    pub trace: u64,
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    // splitmix64 finaliser over the running value
    let mut z = h ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Partition {
    /// Cells are the colour classes, ordered by colour value.
    pub fn from_colors(colors: &[usize]) -> Self {
        let n = colors.len();
        let mut elems: Vec<usize> = (0..n).collect();
        elems.sort_by_key(|&v| colors[v]);
        let mut p = Partition {
            elems,
            cell_of: vec![0; n],
            cell_len: vec![0; n],
            cells: 0,
            trace: 0,
        };
        let mut s = 0;
        while s < n {
            let c = colors[p.elems[s]];
            let mut e = s;
            while e < n && colors[p.elems[e]] == c {
                e += 1;
            }
            p.set_cell(s, e - s);
            p.cells += 1;
            p.trace = mix(p.trace, (e - s) as u64);
            s = e;
        }
        p
    }

    pub fn unit(n: usize) -> Self {
        Partition::from_colors(&vec![0; n])
    }

    fn set_cell(&mut self, start: usize, len: usize) {
        self.cell_len[start] = len;
        for i in start..start + len {
            self.cell_of[self.elems[i]] = start;
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.cells == self.elems.len()
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn cell(&self, start: usize) -> &[usize] {
        &self.elems[start..start + self.cell_len[start]]
    }

    /// Same cell positions and sizes.
    pub fn same_shape(&self, other: &Partition) -> bool {
        self.cells == other.cells && self.trace == other.trace && self.cell_len == other.cell_len
    }

    /// Start of the first largest non-singleton cell.
    pub fn target_cell(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut s = 0;
        while s < self.len() {
            let len = self.cell_len[s];
            if len > 1 && best.is_none_or(|b| len > self.cell_len[b]) {
                best = Some(s);
            }
            s += len;
        }
        best
    }

    /// Split `v` off the front of its cell and refine.
    pub fn individualize(&self, v: usize, graph: &Graph) -> Partition {
        let mut p = self.clone();
        let s = p.cell_of[v];
        let len = p.cell_len[s];
        debug_assert!(len > 1);
        let pos = (s..s + len).find(|&i| p.elems[i] == v).expect("vertex in its cell");
        p.elems.swap(s, pos);
        p.set_cell(s, 1);
        p.set_cell(s + 1, len - 1);
        p.cells += 1;
        p.trace = mix(p.trace, s as u64);
        p.refine(graph, &[s]);
        p
    }

    /// Refine every cell against every cell until equitable.
    pub fn refine_all(&mut self, graph: &Graph) {
        let mut starts = Vec::new();
        let mut s = 0;
        while s < self.len() {
            starts.push(s);
            s += self.cell_len[s];
        }
        self.refine(graph, &starts);
    }

    fn refine(&mut self, graph: &Graph, splitters: &[usize]) {
        let n = self.len();
        if n == 0 {
            return;
        }
        let mut queued = vec![false; n];
        let mut queue = VecDeque::new();
        for &s in splitters {
            queued[s] = true;
            queue.push_back(s);
        }
        let mut counts = vec![0usize; n];
        while let Some(w) = queue.pop_front() {
            queued[w] = false;
            if self.is_discrete() {
                break;
            }
            let wset = Bitset::from_indices(n, self.cell(w).iter().copied());
            self.trace = mix(self.trace, w as u64 ^ 0x5555_0000);
            let mut s = 0;
            while s < n {
                let len = self.cell_len[s];
                if len == 1 {
                    let v = self.elems[s];
                    self.trace = mix(self.trace, graph.neighbors(v).intersection_count(&wset) as u64);
                    s += 1;
                    continue;
                }
                let mut uniform = true;
                let c0 = graph.neighbors(self.elems[s]).intersection_count(&wset);
                for i in s..s + len {
                    let v = self.elems[i];
                    let c = graph.neighbors(v).intersection_count(&wset);
                    counts[v] = c;
                    uniform &= c == c0;
                }
                if uniform {
                    self.trace = mix(self.trace, c0 as u64);
                    s += len;
                    continue;
                }
                self.elems[s..s + len].sort_by_key(|&v| counts[v]);
                let mut start = s;
                let mut fragments = 0;
                for i in s + 1..=s + len {
                    if i == s + len || counts[self.elems[i]] != counts[self.elems[start]] {
                        let c = counts[self.elems[start]];
                        self.set_cell(start, i - start);
                        self.trace = mix(mix(self.trace, c as u64), (i - start) as u64);
                        if !queued[start] {
                            queued[start] = true;
                            queue.push_back(start);
                        }
                        fragments += 1;
                        start = i;
                    }
                }
                self.cells += fragments - 1;
                s += len;
            }
        }
    }
}
