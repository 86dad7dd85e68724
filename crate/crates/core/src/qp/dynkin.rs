use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{Qp, Quiver};
use crate::exchange::mutate_matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DynkinFamily {
    A,
    D,
    E,
}

/// A simply-laced Dynkin type. Construct with [`DynkinType::new`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinType {
    family: DynkinFamily,
    rank: usize,
}

impl DynkinType {
    /// `A_n` (n >= 1), `D_n` (n >= 4) or `E_6`, `E_7`, `E_8`.
    pub fn new(family: DynkinFamily, rank: usize) -> Option<Self> {
        let ok = match family {
            DynkinFamily::A => rank >= 1,
            DynkinFamily::D => rank >= 4,
            DynkinFamily::E => (6..=8).contains(&rank),
        };
        ok.then_some(DynkinType { family, rank })
    }

    pub fn family(&self) -> DynkinFamily {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Edges of the standard labelled diagram (1-based):
    /// `A_n` is the path `1 - 2 - ... - n`; `D_n` has `1 - 3`, `2 - 3` and
    /// the tail `3 - 4 - ... - n`; `E_n` is `1 - 2 - 3 - 5 - ... - n` with
    /// `4` attached to `3`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            DynkinFamily::A => (1..n).map(|i| (i, i + 1)).collect(),
            DynkinFamily::D => {
                let mut e = vec![(1, 3), (2, 3)];
                e.extend((3..n).map(|i| (i, i + 1)));
                e
            }
            DynkinFamily::E => {
                let mut e = vec![(1, 2), (2, 3), (3, 4), (3, 5)];
                e.extend((5..n).map(|i| (i, i + 1)));
                e
            }
        }
    }

    /// The standard diagram oriented from smaller to larger label.
    pub fn quiver(&self) -> Quiver {
        Quiver::from_edges(self.rank, &self.edges()).expect("labels are in range")
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.family {
            DynkinFamily::A => 'A',
            DynkinFamily::D => 'D',
            DynkinFamily::E => 'E',
        };
        write!(f, "{c}{}", self.rank)
    }
}

/// ADE type of the underlying graph of an exchange matrix, if it is a
/// Dynkin diagram.
pub(crate) fn dynkin_type_of_matrix(b: &[Vec<i64>]) -> Option<DynkinType> {
    let n = b.len();
    if n == 0 {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    let mut edges = 0;
    for i in 0..n {
        for j in i + 1..n {
            match b[i][j].abs() {
                0 => {}
                1 => {
                    adj[i].push(j);
                    adj[j].push(i);
                    edges += 1;
                }
                _ => return None,
            }
        }
    }
    if edges != n - 1 {
        return None;
    }
    // connected with n-1 edges means a tree
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    match branch.as_slice() {
        [] => DynkinType::new(DynkinFamily::A, n),
        [c] if adj[*c].len() == 3 => {
            let mut arms: Vec<usize> = adj[*c]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*c, start, 1);
                    while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => DynkinType::new(DynkinFamily::D, n),
                [1, 2, 2..=4] => DynkinType::new(DynkinFamily::E, n),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Dynkin type of the unoriented underlying diagram of `q`, if any.
pub fn dynkin_type(q: &Quiver) -> Option<DynkinType> {
    dynkin_type_of_matrix(&q.exchange_matrix())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DynkinSearch {
    /// Mutating at `sequence` (1-based vertices, in order) gives an acyclic
    /// quiver of type `ty`.
    Found { ty: DynkinType, sequence: Vec<usize> },
    /// No Dynkin quiver within the depth bound. `class_exhausted` is set when
    /// the search saw the whole (labelled) mutation class, which then
    /// contains no Dynkin quiver at all.
    NoneWithinBound { explored: usize, class_exhausted: bool },
}

/// Breadth-first search of the mutation class of `qp`'s quiver up to
/// `depth` mutations for an orientation of a Dynkin diagram.
pub fn is_mutation_dynkin(qp: &Qp, depth: usize) -> DynkinSearch {
    let start = qp.quiver.exchange_matrix();
    let n = start.len();
    type Matrix = Vec<Vec<i64>>;
    let mut parent: BTreeMap<Matrix, Option<(Matrix, usize)>> = BTreeMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([(start, 0usize)]);
    let mut truncated = false;
    while let Some((b, d)) = queue.pop_front() {
        if let Some(ty) = dynkin_type_of_matrix(&b) {
            let mut sequence = Vec::new();
            let mut cur = b;
            while let Some(Some((prev, k))) = parent.get(&cur) {
                sequence.push(k + 1);
                cur = prev.clone();
            }
            sequence.reverse();
            return DynkinSearch::Found { ty, sequence };
        }
        if d == depth {
            truncated = true;
            continue;
        }
        for k in 0..n {
            let m = mutate_matrix(&b, k);
            if !parent.contains_key(&m) {
                parent.insert(m.clone(), Some((b.clone(), k)));
                queue.push_back((m, d + 1));
            }
        }
    }
    DynkinSearch::NoneWithinBound { explored: parent.len(), class_exhausted: !truncated }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qp::mutate_quiver;

    fn ty(f: DynkinFamily, n: usize) -> Option<DynkinType> {
        DynkinType::new(f, n)
    }

    #[test]
    fn recognises_families() {
        let a3 = Quiver::from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(dynkin_type(&a3), ty(DynkinFamily::A, 3));
        let cyc = Quiver::from_edges(3, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        assert_eq!(dynkin_type(&cyc), None);
        for n in 4..=7 {
            let d = DynkinType::new(DynkinFamily::D, n).unwrap();
            assert_eq!(dynkin_type(&d.quiver()), Some(d));
        }
        for n in 6..=8 {
            let e = DynkinType::new(DynkinFamily::E, n).unwrap();
            assert_eq!(dynkin_type(&e.quiver()), Some(e));
        }
        // star with arms (1, 1, 3) is D_6
        let star = Quiver::from_edges(6, &[(1, 4), (2, 4), (4, 3), (3, 5), (5, 6)]).unwrap();
        assert_eq!(dynkin_type(&star), ty(DynkinFamily::D, 6));
        // arms (2, 2, 2) is affine E6, not Dynkin
        let aff = Quiver::from_edges(7, &[(1, 2), (2, 7), (3, 4), (4, 7), (5, 6), (6, 7)]).unwrap();
        assert_eq!(dynkin_type(&aff), None);
        let double = Quiver::from_edges(2, &[(1, 2), (1, 2)]).unwrap();
        assert_eq!(dynkin_type(&double), None);
        let disjoint = Quiver::from_edges(2, &[]).unwrap();
        assert_eq!(dynkin_type(&disjoint), None);
    }

    #[test]
    fn orientation_does_not_matter() {
        let d5 = DynkinType::new(DynkinFamily::D, 5).unwrap();
        let edges = d5.edges();
        for mask in 0u32..(1 << edges.len()) {
            let oriented: Vec<_> = edges
                .iter()
                .enumerate()
                .map(|(i, &(s, t))| if mask >> i & 1 == 1 { (t, s) } else { (s, t) })
                .collect();
            assert_eq!(dynkin_type(&Quiver::from_edges(5, &oriented).unwrap()), Some(d5));
        }
    }

    #[test]
    fn mutation_search() {
        let cyc = Quiver::from_edges(3, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        match is_mutation_dynkin(&Qp::plain(cyc.clone()), 3) {
            DynkinSearch::Found { ty: t, sequence } => {
                assert_eq!(Some(t), ty(DynkinFamily::A, 3));
                assert_eq!(sequence.len(), 1);
                let m = mutate_quiver(&cyc, sequence[0]).unwrap();
                assert_eq!(dynkin_type(&m), Some(t));
            }
            other => panic!("{other:?}"),
        }
        let a2 = Quiver::from_edges(2, &[(1, 2)]).unwrap();
        assert_eq!(
            is_mutation_dynkin(&Qp::plain(a2), 0),
            DynkinSearch::Found { ty: ty(DynkinFamily::A, 2).unwrap(), sequence: Vec::new() }
        );
        let markov =
            Quiver::from_edges(3, &[(1, 2), (1, 2), (2, 3), (2, 3), (3, 1), (3, 1)]).unwrap();
        assert!(matches!(
            is_mutation_dynkin(&Qp::plain(markov), 5),
            DynkinSearch::NoneWithinBound { .. }
        ));
    }
}
