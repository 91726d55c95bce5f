//! HLT-style Todd-Coxeter coset enumeration with a union-find coincidence
//! queue. Coset numbering of the returned table is standardized by
//! breadth-first traversal in generator order, so a given presentation and
//! subgroup generator list always yields the identical table.

use super::{col_inverse, letter_col, Presentation};
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TcError {
    #[error("coset limit {0} exceeded; restart with a larger bound")]
    CosetLimit(usize),
}

const UNDEF: u32 = u32::MAX;

/// A closed coset table: the action of each generator (and inverse) on the
/// coset space, coset 0 being the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    pub ngens: usize,
    /// row-major: tab[coset * 2 * ngens + letter_col]
    pub tab: Vec<u32>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.tab.len() / (2 * self.ngens)
    }

    pub fn is_empty(&self) -> bool {
        self.tab.is_empty()
    }

    #[inline]
    pub fn act(&self, coset: usize, col: usize) -> usize {
        self.tab[coset * 2 * self.ngens + col] as usize
    }

    /// Endpoint of tracing a word from a starting coset.
    pub fn trace(&self, start: usize, word: &[i32]) -> usize {
        let mut c = start;
        for &x in word {
            c = self.act(c, letter_col(x));
        }
        c
    }

    /// Every letter action must be a permutation, with inverse letters
    /// acting inversely; every relator must stabilize every coset.
    pub fn validate(&self, p: &Presentation) -> bool {
        let n = self.len();
        for c in 0..n {
            for g in 0..self.ngens {
                let d = self.act(c, 2 * g);
                if d >= n || self.act(d, 2 * g + 1) != c {
                    return false;
                }
            }
        }
        p.relators.iter().all(|r| (0..n).all(|c| self.trace(c, r) == c))
    }

    /// Serialize the action table as fixed-width little-endian u32 words.
    pub fn body_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.tab.len() * 4);
        for &x in &self.tab {
            out.extend_from_slice(&x.to_le_bytes());
        }
        out
    }

    pub fn from_body_bytes(ngens: usize, bytes: &[u8]) -> Option<Self> {
        if bytes.len() % 4 != 0 {
            return None;
        }
        let tab: Vec<u32> = bytes
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
            .collect();
        if tab.len() % (2 * ngens) != 0 {
            return None;
        }
        Some(CosetTable { ngens, tab })
    }
}

struct Enumerator {
    ncols: usize,
    tab: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    defined: usize,
    max_cosets: usize,
    queue: VecDeque<u32>,
}

impl Enumerator {
    fn new(ngens: usize, max_cosets: usize) -> Self {
        let mut e = Enumerator {
            ncols: 2 * ngens,
            tab: Vec::new(),
            parent: Vec::new(),
            live: 0,
            defined: 0,
            max_cosets,
            queue: VecDeque::new(),
        };
        e.define_root();
        e
    }

    fn define_root(&mut self) {
        self.tab.extend(std::iter::repeat(UNDEF).take(self.ncols));
        self.parent.push(0);
        self.live += 1;
        self.defined += 1;
    }

    #[inline]
    fn get(&self, c: u32, col: usize) -> u32 {
        self.tab[c as usize * self.ncols + col]
    }

    #[inline]
    fn set(&mut self, c: u32, col: usize, d: u32) {
        self.tab[c as usize * self.ncols + col] = d;
    }

    fn rep(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn is_live(&mut self, x: u32) -> bool {
        self.rep(x) == x
    }

    fn new_coset(&mut self) -> Result<u32, TcError> {
        if self.defined >= self.max_cosets {
            return Err(TcError::CosetLimit(self.max_cosets));
        }
        let id = self.parent.len() as u32;
        self.tab.extend(std::iter::repeat(UNDEF).take(self.ncols));
        self.parent.push(id);
        self.live += 1;
        self.defined += 1;
        Ok(id)
    }

    /// Record the fact alpha . col = beta, installing the edge symmetrically
    /// and merging cosets on conflict.
    fn deduce(&mut self, alpha: u32, col: usize, beta: u32) {
        let a = self.rep(alpha);
        let b = self.rep(beta);
        let cur = self.get(a, col);
        if cur != UNDEF {
            if self.rep(cur) != b {
                self.merge(cur, b);
                self.process_coincidences();
            }
            return;
        }
        let bcol = col_inverse(col);
        let back = self.get(b, bcol);
        if back != UNDEF {
            if self.rep(back) != a {
                self.merge(back, a);
                self.process_coincidences();
            } else {
                self.set(a, col, b);
            }
            return;
        }
        self.set(a, col, b);
        self.set(b, bcol, a);
    }

    fn merge(&mut self, x: u32, y: u32) {
        let a = self.rep(x);
        let b = self.rep(y);
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi as usize] = lo;
        self.live -= 1;
        self.queue.push_back(hi);
    }

    /// Transfer the edges of dead cosets onto their representatives,
    /// queueing any further coincidences this uncovers.
    fn process_coincidences(&mut self) {
        while let Some(dead) = self.queue.pop_front() {
            for col in 0..self.ncols {
                let delta = self.get(dead, col);
                if delta == UNDEF {
                    continue;
                }
                self.set(dead, col, UNDEF);
                let bcol = col_inverse(col);
                // the back edge at delta pointed at the dead coset
                let back = self.get(delta, bcol);
                if back != UNDEF && self.rep(back) == self.rep(dead) {
                    self.set(delta, bcol, UNDEF);
                }
                let mu = self.rep(dead);
                let nu = self.rep(delta);
                let mu_x = self.get(mu, col);
                if mu_x != UNDEF {
                    self.merge(nu, mu_x);
                } else {
                    let nu_back = self.get(nu, bcol);
                    if nu_back != UNDEF {
                        self.merge(mu, nu_back);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, bcol, mu);
                    }
                }
            }
        }
    }

    /// Scan a word from a coset, filling every gap by defining new cosets
    /// (the HLT strategy), so afterwards the whole cycle is traced.
    fn scan_and_fill(&mut self, start: u32, word: &[i32]) -> Result<(), TcError> {
        let cols: Vec<usize> = word.iter().map(|&x| letter_col(x)).collect();
        loop {
            let alpha = self.rep(start);
            // forward scan
            let mut f = alpha;
            let mut i = 0;
            while i < cols.len() {
                let next = self.get(f, cols[i]);
                if next == UNDEF {
                    break;
                }
                f = self.rep(next);
                i += 1;
            }
            if i == cols.len() {
                // complete cycle: must close back to alpha
                if f != alpha {
                    self.merge(f, alpha);
                    self.process_coincidences();
                }
                return Ok(());
            }
            // backward scan
            let mut bwd = alpha;
            let mut k = cols.len();
            while k > i {
                let prev = self.get(bwd, col_inverse(cols[k - 1]));
                if prev == UNDEF {
                    break;
                }
                bwd = self.rep(prev);
                k -= 1;
            }
            if k == i {
                // both scans reached the same position: the cosets coincide
                if self.rep(f) != self.rep(bwd) {
                    self.merge(f, bwd);
                    self.process_coincidences();
                }
                return Ok(());
            }
            if k == i + 1 {
                // a single gap: deduction closes the cycle
                self.deduce(f, cols[i], bwd);
                return Ok(());
            }
            // gap longer than one edge: define a coset on the first missing
            // edge and rescan (a coincidence may have moved the start)
            let beta = self.new_coset()?;
            self.deduce(f, cols[i], beta);
        }
    }

    /// Compress to live cosets and standardize by BFS in column order.
    fn standardized(mut self) -> CosetTable {
        let total = self.parent.len() as u32;
        let mut order: Vec<u32> = Vec::with_capacity(self.live);
        let mut newid = vec![UNDEF; total as usize];
        let root = self.rep(0);
        newid[root as usize] = 0;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            head += 1;
            for col in 0..self.ncols {
                let d = self.get(c, col);
                debug_assert_ne!(d, UNDEF, "table not closed");
                let d = self.rep(d);
                if newid[d as usize] == UNDEF {
                    newid[d as usize] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        assert_eq!(order.len(), self.live, "live cosets unreachable from root");
        let ncols = self.ncols;
        let mut tab = vec![UNDEF; order.len() * ncols];
        for (new_c, &old_c) in order.iter().enumerate() {
            for col in 0..ncols {
                let d = self.rep(self.get(old_c, col));
                tab[new_c * ncols + col] = newid[d as usize];
            }
        }
        CosetTable {
            ngens: ncols / 2,
            tab,
        }
    }
}

/// Enumerate the cosets of the subgroup generated by `subgens` in the group
/// presented by `p`, with the HLT strategy. Returns the closed standardized
/// table or an error if `max_cosets` simultaneous cosets do not suffice.
pub fn todd_coxeter(
    p: &Presentation,
    subgens: &[Vec<i32>],
    max_cosets: usize,
) -> Result<CosetTable, TcError> {
    let mut e = Enumerator::new(p.ngens, max_cosets);
    for w in subgens {
        e.scan_and_fill(0, w)?;
    }
    let mut alpha: u32 = 0;
    loop {
        if alpha as usize >= e.parent.len() {
            break;
        }
        if e.is_live(alpha) {
            for r in 0..p.relators.len() {
                let w = p.relators[r].clone();
                e.scan_and_fill(alpha, &w)?;
                if !e.is_live(alpha) {
                    break;
                }
            }
            // fill any remaining undefined entries of this coset so the
            // table is complete when the loop terminates
            if e.is_live(alpha) {
                for col in 0..e.ncols {
                    let a = e.rep(alpha);
                    if e.get(a, col) == UNDEF {
                        let beta = e.new_coset()?;
                        e.deduce(a, col, beta);
                    }
                    if !e.is_live(alpha) {
                        break;
                    }
                }
            }
        }
        alpha += 1;
    }
    let t = e.standardized();
    debug_assert!(t.validate(p));
    Ok(t)
}
