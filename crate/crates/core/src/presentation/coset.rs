use alloc::vec;
use alloc::vec::Vec;

use super::word::cyclic_reduce;
use super::{Letter, Presentation, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetStatus {
    Complete,
    ExceededBound,
}

/// Action of the generators and their inverses on the cosets of a subgroup.
/// Coset `0` is the subgroup itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    /// `rows[c][letter.index()]`
    pub rows: Vec<Vec<Option<usize>>>,
    pub status: CosetStatus,
}

impl CosetTable {
    /// Subgroup index, when enumeration completed.
    pub fn index(&self) -> Option<usize> {
        (self.status == CosetStatus::Complete).then_some(self.rows.len())
    }

    /// Image of coset `c` under `w` (right action); `None` if undefined.
    pub fn act(&self, c: usize, w: &[Letter]) -> Option<usize> {
        w.iter().try_fold(c, |c, l| self.rows[c][l.index()])
    }

    /// Permutation of the cosets induced by a generator.
    pub fn permutation(&self, generator: usize) -> Option<Vec<usize>> {
        (0..self.rows.len()).map(|c| self.rows[c][Letter::gen(generator).index()]).collect()
    }
}

struct Enumerator {
    width: usize,
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    max_cosets: usize,
    overflow: bool,
}

impl Enumerator {
    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, l: Letter) -> Option<usize> {
        if self.table.len() >= self.max_cosets {
            self.overflow = true;
            return None;
        }
        let d = self.table.len();
        self.table.push(vec![None; self.width]);
        self.parent.push(d);
        self.table[c][l.index()] = Some(d);
        self.table[d][l.inverse().index()] = Some(c);
        Some(d)
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
            queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.width {
                let Some(f) = self.table[e][x] else { continue };
                let xi = Letter::from_index(x).inverse().index();
                self.table[f][xi] = None;
                let (m, n) = (self.rep(e), self.rep(f));
                if let Some(t) = self.table[m][x] {
                    self.merge(n, t, &mut queue);
                } else if let Some(t) = self.table[n][xi] {
                    self.merge(m, t, &mut queue);
                } else {
                    self.table[m][x] = Some(n);
                    self.table[n][xi] = Some(m);
                }
            }
        }
    }

    /// HLT scan of `w` from coset `c`, defining cosets to complete it.
    fn scan_and_fill(&mut self, c: usize, w: &[Letter]) {
        if w.is_empty() {
            return;
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, w.len() as isize - 1);
        loop {
            while i <= j {
                let Some(x) = self.table[f][w[i as usize].index()] else { break };
                f = x;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i {
                let Some(x) = self.table[b][w[j as usize].inverse().index()] else { break };
                b = x;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return;
            }
            if i == j {
                let l = w[i as usize];
                self.table[f][l.index()] = Some(b);
                self.table[b][l.inverse().index()] = Some(f);
                return;
            }
            if self.define(f, w[i as usize]).is_none() {
                return;
            }
        }
    }
}

/// Hasse–Lee–Trotter coset enumeration of the subgroup generated by
/// `subgroup`, defining at most `max_cosets` cosets.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> CosetTable {
    let width = 2 * p.generator_count();
    let mut e = Enumerator {
        width,
        table: vec![vec![None; width]],
        parent: vec![0],
        max_cosets: max_cosets.max(1),
        overflow: false,
    };
    let relators: Vec<Vec<Letter>> = p.relators().iter().map(|r| cyclic_reduce(r)).collect();
    for w in subgroup {
        e.scan_and_fill(0, w);
    }
    let mut c = 0;
    while c < e.table.len() && !e.overflow {
        if e.live(c) {
            for r in &relators {
                e.scan_and_fill(c, r);
                if !e.live(c) || e.overflow {
                    break;
                }
            }
            if e.live(c) && !e.overflow {
                for x in 0..width {
                    if e.table[c][x].is_none() && e.define(c, Letter::from_index(x)).is_none() {
                        break;
                    }
                }
            }
        }
        c += 1;
    }
    // compact the live cosets
    let live: Vec<usize> = (0..e.table.len()).filter(|&c| e.live(c)).collect();
    let mut number = vec![usize::MAX; e.table.len()];
    for (k, &c) in live.iter().enumerate() {
        number[c] = k;
    }
    let reps: Vec<usize> = (0..e.table.len()).map(|c| e.rep(c)).collect();
    let rows = live
        .iter()
        .map(|&c| (0..width).map(|x| e.table[c][x].map(|d| number[reps[d]])).collect())
        .collect();
    CosetTable {
        rows,
        status: if e.overflow { CosetStatus::ExceededBound } else { CosetStatus::Complete },
    }
}
