use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::rewriting::{knuth_bendix, LetterOrder};
use super::word::{cyclic_reduce, free_reduce, inverse_letters, push_reduced};
use super::{Letter, Presentation, Word};

/// One recorded move. Generator numbers refer to the input presentation;
/// relator numbers to the relator list at the time of the move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TietzeStep {
    /// Drops `relator`, which reads `generator = replacement`, and substitutes
    /// the replacement everywhere.
    Eliminate { generator: usize, relator: usize, replacement: Word },
    /// Drops a relator that is empty, repeated or a consequence of the rest.
    RemoveRelator { relator: usize },
    /// Replaces a relator by an equivalent one (a cyclic conjugate or a
    /// reduction by another relator).
    ReplaceRelator { relator: usize, word: Word },
    /// Free-group automorphism `generator -> replacement`, where the
    /// replacement contains the generator exactly once.
    Nielsen { generator: usize, replacement: Word },
    /// Output order of the surviving generators.
    Reorder { order: Vec<usize> },
}

/// Result of [`tietze_simplify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplified {
    pub presentation: Presentation,
    pub transcript: Vec<TietzeStep>,
    /// Each input generator as a word in the output generators.
    pub forward: Vec<Word>,
    /// Each output generator as a word in the input generators.
    pub backward: Vec<Word>,
}

/// Knobs for [`tietze_simplify_with`].
#[derive(Debug, Clone)]
pub struct TietzeConfig {
    /// Maximum number of moves.
    pub budget: usize,
    /// Input generators that must survive.
    pub protected: Vec<usize>,
    /// Try Nielsen moves on two-generator one-relator results.
    pub nielsen: bool,
    /// Rule bound for the completion used to drop redundant relators;
    /// `0` disables the check.
    pub consequence_rules: usize,
}

impl TietzeConfig {
    pub fn new(budget: usize) -> Self {
        TietzeConfig { budget, protected: Vec::new(), nielsen: true, consequence_rules: 400 }
    }
}

#[derive(Clone)]
struct State {
    names: Vec<String>,
    active: Vec<bool>,
    relators: Vec<Vec<Letter>>,
    forward: Vec<Vec<Letter>>,
    backward: Vec<Vec<Letter>>,
    order: Option<Vec<usize>>,
}

fn substitute(w: &[Letter], g: usize, replacement: &[Letter]) -> Vec<Letter> {
    let inv = inverse_letters(replacement);
    let mut out = Vec::with_capacity(w.len());
    for &l in w {
        if l.generator() == g {
            let img = if l.is_inverse() { &inv } else { replacement };
            for &x in img {
                push_reduced(&mut out, x);
            }
        } else {
            push_reduced(&mut out, l);
        }
    }
    out
}

impl State {
    fn new(p: &Presentation) -> Self {
        let n = p.generator_count();
        State {
            names: p.generators().to_vec(),
            active: vec![true; n],
            relators: p.relators().iter().map(|r| r.to_vec()).collect(),
            forward: (0..n).map(|g| vec![Letter::gen(g)]).collect(),
            backward: (0..n).map(|g| vec![Letter::gen(g)]).collect(),
            order: None,
        }
    }

    fn size(&self) -> usize {
        self.relators.iter().map(Vec::len).sum()
    }

    fn apply(&mut self, step: &TietzeStep) {
        match step {
            TietzeStep::Eliminate { generator, relator, replacement } => {
                self.relators.remove(*relator);
                for r in self.relators.iter_mut() {
                    *r = substitute(r, *generator, replacement);
                }
                for f in self.forward.iter_mut() {
                    *f = substitute(f, *generator, replacement);
                }
                self.active[*generator] = false;
            }
            TietzeStep::RemoveRelator { relator } => {
                self.relators.remove(*relator);
            }
            TietzeStep::ReplaceRelator { relator, word } => {
                self.relators[*relator] = word.to_vec();
            }
            TietzeStep::Nielsen { generator, replacement } => {
                let g = *generator;
                for r in self.relators.iter_mut() {
                    *r = substitute(r, g, replacement);
                }
                for f in self.forward.iter_mut() {
                    *f = substitute(f, g, replacement);
                }
                // old = u new^e v, so new^e = u^-1 old v^-1
                let p = replacement.iter().position(|l| l.generator() == g).expect("generator occurs");
                let (u, v) = (&replacement[..p], &replacement[p + 1..]);
                let mut new_e = inverse_letters(u);
                new_e.push(Letter::gen(g));
                new_e.extend(inverse_letters(v));
                let new = if replacement[p].is_inverse() { inverse_letters(&new_e) } else { new_e };
                let mut back = Vec::new();
                for l in new {
                    let img = if l.is_inverse() {
                        inverse_letters(&self.backward[l.generator()])
                    } else {
                        self.backward[l.generator()].clone()
                    };
                    for x in img {
                        push_reduced(&mut back, x);
                    }
                }
                self.backward[g] = back;
            }
            TietzeStep::Reorder { order } => self.order = Some(order.clone()),
        }
    }

    fn output_order(&self) -> Vec<usize> {
        self.order
            .clone()
            .unwrap_or_else(|| (0..self.active.len()).filter(|&g| self.active[g]).collect())
    }

    fn finish(&self, transcript: Vec<TietzeStep>) -> Simplified {
        let order = self.output_order();
        let mut position = vec![usize::MAX; self.active.len()];
        for (i, &g) in order.iter().enumerate() {
            position[g] = i;
        }
        let relabel = |w: &[Letter]| -> Word {
            let ls: Vec<Letter> = w.iter().map(|l| Letter::new(position[l.generator()], l.is_inverse())).collect();
            Word::new(&ls)
        };
        let presentation = Presentation::new(
            order.iter().map(|&g| self.names[g].clone()).collect(),
            self.relators.iter().map(|r| relabel(r)).collect(),
        )
        .expect("relators use surviving generators");
        Simplified {
            presentation,
            transcript,
            forward: self.forward.iter().map(|f| relabel(f)).collect(),
            backward: order.iter().map(|&g| Word::new(&self.backward[g])).collect(),
        }
    }
}

/// Canonical cyclic word up to rotation and inversion.
fn cyclic_key(w: &[Letter]) -> Vec<Letter> {
    let w = cyclic_reduce(w);
    let inv = inverse_letters(&w);
    let mut best = w.clone();
    for cand in [&w, &inv] {
        for k in 0..cand.len() {
            let mut rot = cand[k..].to_vec();
            rot.extend_from_slice(&cand[..k]);
            if rot < best {
                best = rot;
            }
        }
    }
    best
}

fn rotations(w: &[Letter]) -> impl Iterator<Item = Vec<Letter>> + '_ {
    (0..w.len()).map(move |k| {
        let mut r = w[k..].to_vec();
        r.extend_from_slice(&w[..k]);
        r
    })
}

/// A housekeeping move: cyclic reduction or removal of an empty or
/// repeated relator.
fn tidy_step(s: &State) -> Option<TietzeStep> {
    let mut seen = BTreeSet::new();
    for (i, r) in s.relators.iter().enumerate() {
        let c = cyclic_reduce(r);
        if c.is_empty() {
            return Some(TietzeStep::RemoveRelator { relator: i });
        }
        if c.len() != r.len() {
            return Some(TietzeStep::ReplaceRelator { relator: i, word: Word::new(&c) });
        }
        if !seen.insert(cyclic_key(&c)) {
            return Some(TietzeStep::RemoveRelator { relator: i });
        }
    }
    None
}

/// Cheapest elimination of an unprotected generator occurring once in a
/// relator.
fn elimination_step(s: &State, protected: &[bool]) -> Option<TietzeStep> {
    let mut best: Option<(i64, usize, TietzeStep)> = None;
    for (i, r) in s.relators.iter().enumerate() {
        let mut count = vec![0usize; s.active.len()];
        for l in r {
            count[l.generator()] += 1;
        }
        for (pos, &l) in r.iter().enumerate() {
            let g = l.generator();
            if count[g] != 1 || protected[g] {
                continue;
            }
            // r = u g^e v, so g^e = u^-1 v^-1 = (v u)^-1
            let mut vu = r[pos + 1..].to_vec();
            vu.extend_from_slice(&r[..pos]);
            let vu = free_reduce(&vu);
            let replacement = if l.is_inverse() { vu } else { inverse_letters(&vu) };
            let uses: usize = s
                .relators
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, x)| x.iter().filter(|y| y.generator() == g).count())
                .sum();
            let cost = (uses * replacement.len()) as i64 - uses as i64 - r.len() as i64;
            let key = (cost, replacement.len());
            if best.as_ref().is_none_or(|(c, len, _)| key < (*c, *len)) {
                best = Some((
                    cost,
                    replacement.len(),
                    TietzeStep::Eliminate { generator: g, relator: i, replacement: Word::new(&replacement) },
                ));
            }
        }
    }
    best.map(|(_, _, step)| step)
}

/// Shortens a relator by replacing a cyclic subword that is more than half
/// of another relator (or its inverse) with the shorter complement.
fn reduction_step(s: &State) -> Option<TietzeStep> {
    for (j, rj) in s.relators.iter().enumerate() {
        let m = rj.len();
        for (i, ri) in s.relators.iter().enumerate() {
            if i == j || ri.len() < m / 2 + 1 {
                continue;
            }
            let n = ri.len();
            for c in rotations(rj).chain(rotations(&inverse_letters(rj))) {
                for len in (m / 2 + 1..=m.min(n)).rev() {
                    let piece = &c[..len];
                    let rest = inverse_letters(&c[len..]);
                    if rest.len() >= len {
                        continue;
                    }
                    for start in 0..n {
                        if (0..len).all(|k| ri[(start + k) % n] == piece[k]) {
                            let mut w: Vec<Letter> = (len..n).map(|k| ri[(start + k) % n]).collect();
                            w.extend_from_slice(&rest);
                            let w = cyclic_reduce(&w);
                            return Some(TietzeStep::ReplaceRelator { relator: i, word: Word::new(&w) });
                        }
                    }
                }
            }
        }
    }
    None
}

/// Removes a relator that the others already imply, as shown by a bounded
/// completion of the rest.
fn consequence_step(s: &State, rules: usize) -> Option<TietzeStep> {
    if rules == 0 || s.relators.len() < 2 {
        return None;
    }
    let mut order: Vec<usize> = (0..s.relators.len()).collect();
    order.sort_by_key(|&i| core::cmp::Reverse(s.relators[i].len()));
    for i in order {
        let others: Vec<Word> = s
            .relators
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, r)| Word::new(r))
            .collect();
        let p = Presentation::new(s.names.clone(), others).expect("same generators");
        let kb = knuth_bendix(&p, rules, 24, LetterOrder::default());
        let r = &s.relators[i];
        if rotations(r).any(|rot| kb.reduce(&rot).is_empty()) {
            return Some(TietzeStep::RemoveRelator { relator: i });
        }
    }
    None
}

fn syllable_count(w: &[Letter]) -> usize {
    let w = cyclic_reduce(w);
    if w.is_empty() {
        return 0;
    }
    let changes = (0..w.len()).filter(|&i| w[i].generator() != w[(i + 1) % w.len()].generator()).count();
    changes.max(1)
}

/// Breadth-first search over Nielsen moves of a two-generator one-relator
/// presentation for the relator with fewest syllables, then shortest.
fn nielsen_search(s: &State, depth: usize) -> Vec<TietzeStep> {
    let gens: Vec<usize> = (0..s.active.len()).filter(|&g| s.active[g]).collect();
    let (x, y) = (gens[0], gens[1]);
    let start = cyclic_reduce(&s.relators[0]);
    let score = |w: &[Letter]| (syllable_count(w), w.len());
    let mut best = (score(&start), Vec::new());
    let mut seen = BTreeSet::from([cyclic_key(&start)]);
    let mut queue = VecDeque::from([(start, Vec::<TietzeStep>::new())]);
    let moves: Vec<(usize, Vec<Letter>)> = [(x, y), (y, x)]
        .iter()
        .flat_map(|&(g, h)| {
            let (gl, hl) = (Letter::gen(g), Letter::gen(h));
            [vec![gl, hl], vec![gl, hl.inverse()], vec![hl, gl], vec![hl.inverse(), gl]]
                .into_iter()
                .map(move |rep| (g, rep))
        })
        .collect();
    while let Some((w, path)) = queue.pop_front() {
        if path.len() >= depth {
            continue;
        }
        for (g, rep) in &moves {
            let next = cyclic_reduce(&substitute(&w, *g, rep));
            if !seen.insert(cyclic_key(&next)) {
                continue;
            }
            let mut p = path.clone();
            p.push(TietzeStep::Nielsen { generator: *g, replacement: Word::new(rep) });
            if score(&next) < best.0 {
                best = (score(&next), p.clone());
            }
            queue.push_back((next, p));
        }
    }
    best.1
}

/// Brings a relator `x^p y^q` to the form `x^a y^-b` with `0 < a <= b`,
/// ordering the generators so that `x` comes first.
fn two_syllable_form(s: &State) -> Vec<TietzeStep> {
    let r = cyclic_reduce(&s.relators[0]);
    let syl = Word::new(&r).syllables(true);
    let [(g, a), (h, b)] = syl.as_slice() else { return Vec::new() };
    let (g, a, h, b) = if a.abs() <= b.abs() { (*g, *a, *h, *b) } else { (*h, *b, *g, *a) };
    let mut steps = Vec::new();
    if a.signum() == b.signum() {
        steps.push(TietzeStep::Nielsen { generator: h, replacement: Word::new(&[Letter::inv(h)]) });
    }
    // choose the rotation / inverse starting with a positive power of g
    let e = if a.signum() == b.signum() { -b } else { b };
    let (pa, pb) = if a > 0 { (a, e) } else { (-a, -e) };
    let mut w: Vec<Letter> = (0..pa).map(|_| Letter::gen(g)).collect();
    w.extend((0..pb.abs()).map(|_| Letter::new(h, pb < 0)));
    steps.push(TietzeStep::ReplaceRelator { relator: 0, word: Word::new(&w) });
    steps.push(TietzeStep::Reorder { order: vec![g, h] });
    steps
}

/// Greedy Tietze simplification with at most `budget` moves; see
/// [`tietze_simplify_with`].
pub fn tietze_simplify(p: &Presentation, budget: usize) -> Simplified {
    tietze_simplify_with(p, &TietzeConfig::new(budget))
}

/// Eliminates generators (cheapest first), shortens relators against each
/// other, drops repeated or implied relators and, for an unprotected
/// two-generator one-relator result, looks for a Nielsen-equivalent
/// relator with fewer syllables.
pub fn tietze_simplify_with(p: &Presentation, config: &TietzeConfig) -> Simplified {
    let mut s = State::new(p);
    let mut protected = vec![false; p.generator_count()];
    for &g in &config.protected {
        protected[g] = true;
    }
    let mut transcript = Vec::new();
    let mut budget = config.budget;
    let mut consequence_checked = false;
    while budget > 0 {
        let step = tidy_step(&s)
            .or_else(|| elimination_step(&s, &protected))
            .or_else(|| reduction_step(&s).filter(|_| s.size() > 0))
            .or_else(|| {
                if consequence_checked {
                    return None;
                }
                consequence_checked = true;
                consequence_step(&s, config.consequence_rules)
            });
        let Some(step) = step else { break };
        if matches!(step, TietzeStep::RemoveRelator { .. } | TietzeStep::Eliminate { .. }) {
            consequence_checked = false;
        }
        s.apply(&step);
        transcript.push(step);
        budget -= 1;
    }
    let active: Vec<usize> = (0..s.active.len()).filter(|&g| s.active[g]).collect();
    if config.nielsen
        && budget > 0
        && active.len() == 2
        && s.relators.len() == 1
        && active.iter().all(|&g| !protected[g])
    {
        for step in nielsen_search(&s, 6).into_iter().chain(core::iter::once(TietzeStep::Reorder {
            order: active.clone(),
        })) {
            s.apply(&step);
            transcript.push(step);
        }
        let tidy = two_syllable_form(&s);
        for step in tidy {
            s.apply(&step);
            transcript.push(step);
        }
    }
    s.finish(transcript)
}

/// Re-runs a transcript on the input presentation.
pub fn replay(p: &Presentation, transcript: &[TietzeStep]) -> Simplified {
    let mut s = State::new(p);
    for step in transcript {
        s.apply(step);
    }
    s.finish(transcript.to_vec())
}
