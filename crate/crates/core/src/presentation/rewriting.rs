use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use hashbrown::HashMap;

use super::word::{cyclic_reduce, inverse_letters};
use super::{Letter, Presentation, Word};

/// Ranking of the letters used by the shortlex order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LetterOrder {
    /// `a < b < ... < A < B < ...`: every generator before every inverse.
    InversesLast,
    /// `a < A < b < B < ...`.
    #[default]
    Interleaved,
}

impl LetterOrder {
    fn ranks(self, generators: usize) -> Vec<u32> {
        (0..2 * generators)
            .map(|i| {
                let l = Letter::from_index(i);
                match self {
                    LetterOrder::InversesLast => {
                        (l.generator() + if l.is_inverse() { generators } else { 0 }) as u32
                    }
                    LetterOrder::Interleaved => i as u32,
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteStatus {
    Confluent,
    /// Completion stopped at the rule or length bound; the rules are sound
    /// but may not decide the word problem.
    ExceededBound,
}

/// A length-reducing string rewriting system for a group presentation.
///
/// Every rule is a consequence of the relators, so a word that rewrites to
/// the empty word is trivial in the group whatever the status.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    generators: usize,
    ranks: Vec<u32>,
    rules: Vec<Option<(Vec<Letter>, Vec<Letter>)>>,
    index: HashMap<Vec<Letter>, usize>,
    lengths: BTreeMap<usize, usize>,
    status: RewriteStatus,
}

impl RewriteSystem {
    fn empty(generators: usize, order: LetterOrder) -> Self {
        RewriteSystem {
            generators,
            ranks: order.ranks(generators),
            rules: Vec::new(),
            index: HashMap::new(),
            lengths: BTreeMap::new(),
            status: RewriteStatus::ExceededBound,
        }
    }

    pub fn status(&self) -> RewriteStatus {
        self.status
    }

    pub fn is_confluent(&self) -> bool {
        self.status == RewriteStatus::Confluent
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn rule_count(&self) -> usize {
        self.index.len()
    }

    pub fn rules(&self) -> impl Iterator<Item = (&[Letter], &[Letter])> {
        self.rules.iter().flatten().map(|(l, r)| (l.as_slice(), r.as_slice()))
    }

    /// Shortlex comparison.
    pub fn compare(&self, u: &[Letter], v: &[Letter]) -> Ordering {
        u.len().cmp(&v.len()).then_with(|| {
            u.iter()
                .map(|l| self.ranks[l.index()])
                .cmp(v.iter().map(|l| self.ranks[l.index()]))
        })
    }

    fn find_suffix(&self, w: &[Letter]) -> Option<usize> {
        for &len in self.lengths.keys() {
            if len > w.len() {
                break;
            }
            if let Some(&i) = self.index.get(&w[w.len() - len..]) {
                return Some(i);
            }
        }
        None
    }

    /// Rewrites to an irreducible word.
    pub fn reduce(&self, w: &[Letter]) -> Vec<Letter> {
        let mut out: Vec<Letter> = Vec::with_capacity(w.len());
        let mut input: Vec<Letter> = w.iter().rev().copied().collect();
        while let Some(l) = input.pop() {
            out.push(l);
            if let Some(i) = self.find_suffix(&out) {
                let (lhs, rhs) = self.rules[i].as_ref().expect("indexed rules are live");
                out.truncate(out.len() - lhs.len());
                input.extend(rhs.iter().rev());
            }
        }
        out
    }

    pub fn is_irreducible(&self, w: &[Letter]) -> bool {
        (1..=w.len()).all(|end| self.find_suffix(&w[..end]).is_none())
    }

    fn insert(&mut self, lhs: Vec<Letter>, rhs: Vec<Letter>) -> usize {
        let id = self.rules.len();
        *self.lengths.entry(lhs.len()).or_default() += 1;
        self.index.insert(lhs.clone(), id);
        self.rules.push(Some((lhs, rhs)));
        id
    }

    fn remove(&mut self, id: usize) -> (Vec<Letter>, Vec<Letter>) {
        let (lhs, rhs) = self.rules[id].take().expect("rule is live");
        self.index.remove(&lhs);
        let c = self.lengths.get_mut(&lhs.len()).expect("length tracked");
        *c -= 1;
        if *c == 0 {
            self.lengths.remove(&lhs.len());
        }
        (lhs, rhs)
    }

    fn extend_layer(&self, layer: &[Vec<Letter>]) -> Vec<Vec<Letter>> {
        let mut letters: Vec<Letter> = (0..2 * self.generators).map(Letter::from_index).collect();
        letters.sort_by_key(|l| self.ranks[l.index()]);
        let mut next = Vec::new();
        for w in layer {
            for &l in &letters {
                let mut x = w.clone();
                x.push(l);
                if self.find_suffix(&x).is_none() {
                    next.push(x);
                }
            }
        }
        next
    }

    /// Irreducible words of length at most `max_len`, in shortlex order.
    pub fn normal_forms(&self, max_len: usize) -> Vec<Vec<Letter>> {
        let mut out = vec![Vec::new()];
        let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
        for _ in 0..max_len {
            layer = self.extend_layer(&layer);
            if layer.is_empty() {
                break;
            }
            out.extend(layer.iter().cloned());
        }
        out
    }

    /// Number of irreducible words if there are at most `limit` of them;
    /// for a confluent system this is the group order.
    pub fn count_normal_forms(&self, limit: usize) -> Option<usize> {
        let mut total = 1;
        let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
        loop {
            layer = self.extend_layer(&layer);
            if layer.is_empty() {
                return Some(total);
            }
            total += layer.len();
            if total > limit {
                return None;
            }
        }
    }

    fn critical_pairs(&self, i: usize, j: usize, out: &mut Vec<(Vec<Letter>, Vec<Letter>)>) {
        let (Some((l1, r1)), Some((l2, r2))) = (&self.rules[i], &self.rules[j]) else { return };
        for k in 1..l1.len().min(l2.len()) {
            if l1[l1.len() - k..] == l2[..k] {
                let mut a = r1.clone();
                a.extend_from_slice(&l2[k..]);
                let mut b = l1[..l1.len() - k].to_vec();
                b.extend_from_slice(r2);
                out.push((a, b));
            }
        }
    }

    /// Re-checks every critical pair; true iff all of them resolve.
    pub fn verify_confluence(&self) -> bool {
        let live: Vec<usize> = (0..self.rules.len()).filter(|&i| self.rules[i].is_some()).collect();
        let mut pairs = Vec::new();
        for &i in &live {
            // no left side may contain another
            let (l, r) = self.rules[i].as_ref().expect("live");
            for end in 1..=l.len() {
                for start in 0..end {
                    if (start, end) == (0, l.len()) {
                        continue;
                    }
                    if self.index.contains_key(&l[start..end]) {
                        return false;
                    }
                }
            }
            if !self.is_irreducible(r) {
                return false;
            }
            for &j in &live {
                pairs.clear();
                self.critical_pairs(i, j, &mut pairs);
                if pairs.iter().any(|(a, b)| self.reduce(a) != self.reduce(b)) {
                    return false;
                }
            }
        }
        true
    }
}

struct Completion {
    sys: RewriteSystem,
    pending: Vec<(Vec<Letter>, Vec<Letter>)>,
    max_rules: usize,
    max_len: usize,
    truncated: bool,
}

impl Completion {
    fn drain(&mut self) {
        while let Some((u, v)) = self.pending.pop() {
            let u = self.sys.reduce(&u);
            let v = self.sys.reduce(&v);
            let (lhs, rhs) = match self.sys.compare(&u, &v) {
                Ordering::Equal => continue,
                Ordering::Greater => (u, v),
                Ordering::Less => (v, u),
            };
            if lhs.len() > self.max_len {
                self.truncated = true;
                continue;
            }
            let id = self.sys.insert(lhs, rhs);
            let new_lhs = self.sys.rules[id].as_ref().expect("just inserted").0.clone();
            for j in 0..self.sys.rules.len() {
                if j == id {
                    continue;
                }
                let Some((l, r)) = &self.sys.rules[j] else { continue };
                if contains(l, &new_lhs) {
                    let rule = self.sys.remove(j);
                    self.pending.push(rule);
                } else if contains(r, &new_lhs) {
                    let reduced = self.sys.reduce(r);
                    if let Some((_, r)) = self.sys.rules[j].as_mut() {
                        *r = reduced;
                    }
                }
            }
        }
    }

    fn over_budget(&self) -> bool {
        self.sys.rule_count() > self.max_rules
    }
}

fn contains(hay: &[Letter], needle: &[Letter]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Knuth–Bendix completion over generators and formal inverses under the
/// shortlex order given by `order`.
///
/// Rules with a left side longer than `max_len` are discarded and more than
/// `max_rules` live rules stop the run; either way the result is flagged
/// [`RewriteStatus::ExceededBound`].
pub fn knuth_bendix(p: &Presentation, max_rules: usize, max_len: usize, order: LetterOrder) -> RewriteSystem {
    let g = p.generator_count();
    let mut c = Completion {
        sys: RewriteSystem::empty(g, order),
        pending: Vec::new(),
        max_rules,
        max_len,
        truncated: false,
    };
    for i in 0..2 * g {
        let l = Letter::from_index(i);
        c.pending.push((vec![l, l.inverse()], Vec::new()));
    }
    c.drain();
    for r in p.relators() {
        let r = cyclic_reduce(r);
        let h = r.len().div_ceil(2);
        c.pending.push((r[..h].to_vec(), inverse_letters(&r[h..])));
    }
    c.drain();

    let mut pairs = Vec::new();
    let mut i = 0;
    while i < c.sys.rules.len() {
        let mut j = 0;
        while j <= i && c.sys.rules[i].is_some() {
            if c.sys.rules[j].is_some() {
                pairs.clear();
                c.sys.critical_pairs(i, j, &mut pairs);
                if i != j {
                    c.sys.critical_pairs(j, i, &mut pairs);
                }
                c.pending.append(&mut pairs);
                c.drain();
                if c.over_budget() {
                    c.sys.status = RewriteStatus::ExceededBound;
                    return c.sys;
                }
            }
            j += 1;
        }
        i += 1;
    }
    c.sys.status = if c.truncated { RewriteStatus::ExceededBound } else { RewriteStatus::Confluent };
    c.sys
}

/// Word problem oracle built on one completion run.
#[derive(Debug, Clone)]
pub struct WordProblemSolver {
    system: RewriteSystem,
}

impl WordProblemSolver {
    pub fn new(p: &Presentation, max_rules: usize, max_len: usize) -> Self {
        WordProblemSolver { system: knuth_bendix(p, max_rules, max_len, LetterOrder::default()) }
    }

    pub fn from_system(system: RewriteSystem) -> Self {
        WordProblemSolver { system }
    }

    pub fn system(&self) -> &RewriteSystem {
        &self.system
    }

    pub fn normal_form(&self, w: &Word) -> Word {
        Word::new(&self.system.reduce(w))
    }

    /// `Some(true)` if `w` is proven trivial, `Some(false)` if proven
    /// nontrivial (confluent system), `None` if undecided.
    pub fn is_trivial(&self, w: &Word) -> Option<bool> {
        let r = self.system.reduce(w);
        if r.is_empty() {
            return Some(true);
        }
        if self.system.is_confluent() {
            return Some(false);
        }
        // a conjugate may reduce further
        let c = cyclic_reduce(&r);
        for k in 0..c.len() {
            let mut rot = c[k..].to_vec();
            rot.extend_from_slice(&c[..k]);
            if self.system.reduce(&rot).is_empty() {
                return Some(true);
            }
        }
        None
    }

    pub fn equal(&self, u: &Word, v: &Word) -> Option<bool> {
        if self.system.reduce(u) == self.system.reduce(v) {
            return Some(true);
        }
        self.is_trivial(&u.concat(&v.inverse()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::make_relation;
    use crate::presentation::RelationKind;

    fn pres(g: usize, rels: &[&[i32]]) -> Presentation {
        Presentation::with_numbered("x", g, rels.iter().map(|r| Word::from_signed(r)).collect()).unwrap()
    }

    #[test]
    fn free_abelian_rank_two() {
        let kb = knuth_bendix(&pres(2, &[&[1, 2, -1, -2]]), 100, 20, LetterOrder::default());
        assert!(kb.is_confluent());
        assert!(kb.verify_confluence());
        // normal forms are x^a y^b
        for w in kb.normal_forms(4) {
            let gens: Vec<usize> = w.iter().map(|l| l.generator()).collect();
            assert!(gens.windows(2).all(|p| p[0] <= p[1]), "{w:?}");
            let first = w.first().map(|l| l.is_inverse());
            assert!(w.iter().filter(|l| l.generator() == 0).all(|l| Some(l.is_inverse()) == first));
        }
        assert_eq!(kb.normal_forms(2).len(), 1 + 4 + 8);
    }

    #[test]
    fn symmetric_group_of_order_six() {
        let p = pres(2, &[&[1, 1], &[2, 2], &[1, 2, 1, 2, 1, 2]]);
        let kb = knuth_bendix(&p, 100, 20, LetterOrder::default());
        assert!(kb.is_confluent());
        assert!(kb.verify_confluence());
        assert_eq!(kb.count_normal_forms(100), Some(6));
        let reduced = kb.reduce(&Word::from_signed(&[1, 2, 1, 2]));
        assert_eq!(kb.reduce(&reduced), reduced);
    }

    #[test]
    fn tiny_rule_bound_is_reported() {
        let br = Presentation::with_numbered("a", 2, make_relation(RelationKind::Br, &[0, 1]).unwrap()).unwrap();
        let kb = knuth_bendix(&br, 3, 20, LetterOrder::default());
        assert_eq!(kb.status(), RewriteStatus::ExceededBound);
    }

    #[test]
    fn solver_on_braid_group() {
        let br = Presentation::with_numbered("a", 2, make_relation(RelationKind::Br, &[0, 1]).unwrap()).unwrap();
        let s = WordProblemSolver::new(&br, 2000, 30);
        let aba = Word::from_signed(&[1, 2, 1]);
        let bab = Word::from_signed(&[2, 1, 2]);
        assert_eq!(s.equal(&aba, &bab), Some(true));
        // (ab)^3 is central
        let d = Word::from_signed(&[1, 2, 1, 2, 1, 2]);
        assert_eq!(s.equal(&d.concat(&Word::from_signed(&[1])), &Word::from_signed(&[1]).concat(&d)), Some(true));
    }
}
