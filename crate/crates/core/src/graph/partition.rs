//! Ordered partitions with equitable refinement.
//!
//! Cells are contiguous ranges of `elems`, identified by their start index.
//! Refinement splits cells by neighbour counts into a splitter and orders the
//! fragments by count, so the result depends only on the cell structure and
//! never on vertex names.

use super::Graph;

#[derive(Clone, Debug)]
pub(crate) struct Partition {
    pub elems: Vec<usize>,
    pos: Vec<usize>,
    cell: Vec<usize>,
    /// exclusive end of the cell starting at each index (valid at cell starts)
    end: Vec<usize>,
    cells: usize,
}

fn mix(h: u64, x: u64) -> u64 {
    (h ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2))
        .wrapping_mul(0x2545_f491_4f6c_dd1d)
}

impl Partition {
    /// Cells are the colour classes, ordered by colour value.
    pub fn from_colors(colors: &[usize]) -> Self {
        let n = colors.len();
        let mut elems: Vec<usize> = (0..n).collect();
        elems.sort_by_key(|&v| (colors[v], v));
        let mut p = Partition {
            elems,
            pos: vec![0; n],
            cell: vec![0; n],
            end: vec![0; n],
            cells: 0,
        };
        let mut start = 0;
        for i in 0..n {
            if i + 1 == n || colors[p.elems[i + 1]] != colors[p.elems[i]] {
                for k in start..=i {
                    p.cell[p.elems[k]] = start;
                    p.pos[p.elems[k]] = k;
                }
                p.end[start] = i + 1;
                p.cells += 1;
                start = i + 1;
            }
        }
        p
    }

    pub fn unit(n: usize) -> Self {
        Self::from_colors(&vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    #[cfg(test)]
    pub fn cell_count(&self) -> usize {
        self.cells
    }

    pub fn is_discrete(&self) -> bool {
        self.cells == self.elems.len()
    }

    /// Starts of all cells in order.
    pub fn cell_starts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cells);
        let mut s = 0;
        while s < self.elems.len() {
            out.push(s);
            s = self.end[s];
        }
        out
    }

    #[cfg(test)]
    pub fn cell_of(&self, v: usize) -> usize {
        self.cell[v]
    }

    pub fn cell_members(&self, start: usize) -> &[usize] {
        &self.elems[start..self.end[start]]
    }

    /// Start of the first smallest cell with more than `min_size` elements.
    pub fn target_cell(&self, min_size: usize) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        let mut s = 0;
        while s < self.elems.len() {
            let size = self.end[s] - s;
            if size > min_size && best.map_or(true, |(_, b)| size < b) {
                best = Some((s, size));
            }
            s = self.end[s];
        }
        best.map(|(s, _)| s)
    }

    /// Moves `vs` (all in one cell, in the given order) to the front of that
    /// cell and splits them off as a new cell. Returns the new cell's start.
    pub fn individualize(&mut self, vs: &[usize]) -> usize {
        let start = self.cell[vs[0]];
        let end = self.end[start];
        debug_assert!(vs.iter().all(|&v| self.cell[v] == start));
        debug_assert!(vs.len() < end - start);
        for (k, &v) in vs.iter().enumerate() {
            let from = self.pos[v];
            let to = start + k;
            let other = self.elems[to];
            self.elems.swap(from, to);
            self.pos[other] = from;
            self.pos[v] = to;
        }
        let rest = start + vs.len();
        self.end[start] = rest;
        self.end[rest] = end;
        for k in rest..end {
            self.cell[self.elems[k]] = rest;
        }
        self.cells += 1;
        start
    }

    /// Refines to the coarsest equitable partition finer than `self`, using
    /// the given cells as initial splitters. Returns a trace hash that is
    /// invariant under relabelling of the graph.
    pub fn refine(&mut self, g: &Graph, splitters: &[usize]) -> u64 {
        let n = self.elems.len();
        let mut queued = vec![false; n];
        let mut queue = std::collections::VecDeque::new();
        for &s in splitters {
            if !queued[s] {
                queued[s] = true;
                queue.push_back(s);
            }
        }
        let mut count = vec![0usize; n];
        let mut touched_vertices: Vec<usize> = Vec::new();
        let mut touched_cells: Vec<usize> = Vec::new();
        let mut cell_marked = vec![false; n];
        let mut trace = mix(0, self.cells as u64);
        while let Some(w) = queue.pop_front() {
            queued[w] = false;
            if self.cells == n {
                break;
            }
            let w_end = self.end[w];
            for k in w..w_end {
                for &u in g.neighbors(self.elems[k]) {
                    if count[u] == 0 {
                        touched_vertices.push(u);
                    }
                    count[u] += 1;
                }
            }
            for &u in &touched_vertices {
                let c = self.cell[u];
                if !cell_marked[c] {
                    cell_marked[c] = true;
                    touched_cells.push(c);
                }
            }
            touched_cells.sort_unstable();
            trace = mix(trace, w as u64);
            for &c in &touched_cells {
                let c_end = self.end[c];
                let slice = &mut self.elems[c..c_end];
                let first = count[slice[0]];
                if slice.iter().all(|&v| count[v] == first) {
                    trace = mix(trace, (c as u64) << 20 | first as u64);
                    continue;
                }
                slice.sort_by_key(|&v| count[v]);
                let was_queued = queued[c];
                let mut frags: Vec<(usize, usize)> = Vec::new();
                let mut s = c;
                for k in c..c_end {
                    self.pos[self.elems[k]] = k;
                    if k + 1 == c_end || count[self.elems[k + 1]] != count[self.elems[k]] {
                        frags.push((s, k + 1));
                        s = k + 1;
                    }
                }
                trace = mix(trace, (c as u64) << 20 | frags.len() as u64);
                for &(fs, fe) in &frags {
                    self.end[fs] = fe;
                    for k in fs..fe {
                        self.cell[self.elems[k]] = fs;
                    }
                    trace = mix(trace, (count[self.elems[fs]] as u64) << 32 | (fe - fs) as u64);
                }
                self.cells += frags.len() - 1;
                let largest = if was_queued {
                    usize::MAX
                } else {
                    let mut best = 0;
                    for (i, &(fs, fe)) in frags.iter().enumerate() {
                        if fe - fs > frags[best].1 - frags[best].0 {
                            best = i;
                        }
                    }
                    best
                };
                for (i, &(fs, _)) in frags.iter().enumerate() {
                    if i != largest && !queued[fs] {
                        queued[fs] = true;
                        queue.push_back(fs);
                    }
                }
            }
            for &u in &touched_vertices {
                count[u] = 0;
            }
            for &c in &touched_cells {
                cell_marked[c] = false;
            }
            touched_vertices.clear();
            touched_cells.clear();
        }
        mix(trace, self.cells as u64)
    }
}
