//! Augmenting-path bipartite matching with column capacities.
//!
//! Rows are matched to at most one column; a column may hold up to its
//! capacity. Searches are breadth-first so deep instances cannot overflow
//! the stack. A matching is kept between calls and only repaired where edges
//! disappeared.

use std::collections::VecDeque;

const NONE: usize = usize::MAX;

#[derive(Clone, Debug)]
pub(crate) struct Assignment {
    row_col: Vec<usize>,
    col_rows: Vec<Vec<usize>>,
    // BFS scratch
    seen_row: Vec<u32>,
    seen_col: Vec<u32>,
    epoch: u32,
    parent_row: Vec<(usize, usize)>,
    via_col: Vec<(usize, usize)>,
}

impl Assignment {
    pub fn new(rows: usize, cols: usize) -> Self {
        Assignment {
            row_col: vec![NONE; rows],
            col_rows: vec![Vec::new(); cols],
            seen_row: vec![0; rows],
            seen_col: vec![0; cols],
            epoch: 0,
            parent_row: vec![(NONE, NONE); rows],
            via_col: vec![(NONE, NONE); cols],
        }
    }

    #[inline]
    pub fn col_of(&self, row: usize) -> Option<usize> {
        let c = self.row_col[row];
        (c != NONE).then_some(c)
    }

    #[inline]
    pub fn load(&self, col: usize) -> u64 {
        self.col_rows[col].len() as u64
    }

    pub fn unassign(&mut self, row: usize) {
        let c = std::mem::replace(&mut self.row_col[row], NONE);
        if c != NONE {
            let rows = &mut self.col_rows[c];
            let at = rows.iter().position(|&r| r == row).expect("row listed at its column");
            rows.swap_remove(at);
        }
    }

    fn set(&mut self, row: usize, col: usize) {
        self.unassign(row);
        self.row_col[row] = col;
        self.col_rows[col].push(row);
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.seen_row.iter_mut().for_each(|s| *s = 0);
            self.seen_col.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.epoch
    }

    /// Finds an augmenting path from the free row `start` to a column with
    /// spare capacity, shifting rows along it. Only the load of the final
    /// column changes, so lower bounds already met stay met.
    pub fn augment_row(&mut self, start: usize, row_adj: &[Vec<usize>], cap: impl Fn(usize) -> u64) -> bool {
        let ep = self.next_epoch();
        let mut queue = VecDeque::new();
        self.seen_row[start] = ep;
        self.parent_row[start] = (NONE, NONE);
        queue.push_back(start);
        while let Some(r) = queue.pop_front() {
            for &c in &row_adj[r] {
                if self.seen_col[c] == ep || self.row_col[r] == c {
                    continue;
                }
                self.seen_col[c] = ep;
                if self.load(c) < cap(c) {
                    // r moves to c, its predecessor moves into r's old column, ...
                    let (mut row, mut col) = (r, c);
                    loop {
                        let (prev_row, prev_col) = self.parent_row[row];
                        self.set(row, col);
                        if prev_row == NONE {
                            return true;
                        }
                        row = prev_row;
                        col = prev_col;
                    }
                }
                for i in 0..self.col_rows[c].len() {
                    let r2 = self.col_rows[c][i];
                    if self.seen_row[r2] != ep {
                        self.seen_row[r2] = ep;
                        self.parent_row[r2] = (r, c);
                        queue.push_back(r2);
                    }
                }
            }
        }
        false
    }

    /// Raises the load of `target` by one: pulls in a free row or a row
    /// from a column above its lower bound, possibly through a chain of
    /// intermediate columns.
    pub fn augment_col(&mut self, target: usize, col_adj: &[Vec<usize>], low: impl Fn(usize) -> u64) -> bool {
        let ep = self.next_epoch();
        let mut queue = VecDeque::new();
        self.seen_col[target] = ep;
        self.via_col[target] = (NONE, NONE);
        queue.push_back(target);
        while let Some(c) = queue.pop_front() {
            for &r in &col_adj[c] {
                if self.seen_row[r] == ep || self.row_col[r] == c {
                    continue;
                }
                self.seen_row[r] = ep;
                let from = self.row_col[r];
                if from == NONE || self.load(from) > low(from) {
                    // r moves into c; then the row c was standing in for moves on
                    let (mut row, mut col) = (r, c);
                    loop {
                        let (next_row, next_col) = self.via_col[col];
                        self.set(row, col);
                        if next_row == NONE {
                            return true;
                        }
                        row = next_row;
                        col = next_col;
                    }
                }
                if self.seen_col[from] != ep {
                    self.seen_col[from] = ep;
                    // `from` must receive a replacement; r then moves from `from` to c
                    self.via_col[from] = (r, c);
                    queue.push_back(from);
                }
            }
        }
        false
    }
}
