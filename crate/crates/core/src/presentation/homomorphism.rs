use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::coset::{todd_coxeter, CosetTable};
use super::rewriting::{knuth_bendix, LetterOrder, RewriteSystem};
use super::tietze::{tietze_simplify, Simplified};
use super::word::cyclic_reduce;
use super::{Letter, Presentation, PresentationError, TriState, Word};
use crate::lattice::{hermite_basis, in_lattice};

/// Limits for the verification engines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    pub max_rules: usize,
    pub max_len: usize,
    pub max_cosets: usize,
    pub tietze_budget: usize,
    /// Exponents `k` for the quotients `G / <<g^k>>` tried when looking for
    /// a finite witness of nontriviality.
    pub quotient_exponents: Vec<u32>,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_rules: 10_000,
            max_len: 40,
            max_cosets: 50_000,
            tietze_budget: 500,
            quotient_exponents: alloc::vec![2, 3, 4],
        }
    }
}

/// Decides triviality of words in one presentation: abelianization,
/// completions with growing rule bounds, small finite quotients and finally
/// completion of a Tietze-simplified presentation. Engines are built once
/// and reused across queries.
pub struct WordOracle<'a> {
    p: &'a Presentation,
    bounds: &'a Bounds,
    lattice: Vec<Vec<i64>>,
    /// Completions with increasing rule bounds.
    direct: Vec<RewriteSystem>,
    quotients: Option<Vec<CosetTable>>,
    simplified: Option<(Simplified, RewriteSystem)>,
}

enum Answer {
    Trivial(String),
    Nontrivial(String),
    Open,
}

fn trivial_by(kb: &RewriteSystem, w: &[Letter]) -> bool {
    if kb.reduce(w).is_empty() {
        return true;
    }
    let c = cyclic_reduce(w);
    (1..c.len()).any(|k| {
        let mut rot = c[k..].to_vec();
        rot.extend_from_slice(&c[..k]);
        kb.reduce(&rot).is_empty()
    })
}

impl<'a> WordOracle<'a> {
    pub fn new(p: &'a Presentation, bounds: &'a Bounds) -> Self {
        let rows: Vec<Vec<i64>> = p.relators().iter().map(|r| r.exponent_sums(p.generator_count())).collect();
        WordOracle {
            p,
            bounds,
            lattice: hermite_basis(&rows, p.generator_count()),
            direct: Vec::new(),
            quotients: None,
            simplified: None,
        }
    }

    fn rule_levels(&self) -> Vec<usize> {
        let max = self.bounds.max_rules;
        let mut levels: Vec<usize> = [250, 2_000].into_iter().filter(|&r| r < max).collect();
        levels.push(max);
        levels
    }

    fn direct(&mut self, level: usize) -> &RewriteSystem {
        while self.direct.len() <= level {
            let rules = self.rule_levels()[self.direct.len()];
            self.direct.push(knuth_bendix(self.p, rules, self.bounds.max_len, LetterOrder::default()));
        }
        &self.direct[level]
    }

    /// Finite quotients `G / <<g^k>>` that enumerate within the coset bound.
    fn quotients(&mut self) -> &[CosetTable] {
        let (p, b) = (self.p, self.bounds);
        self.quotients.get_or_insert_with(|| {
            b.quotient_exponents
                .iter()
                .filter_map(|&k| {
                    let mut rels = p.relators().to_vec();
                    rels.extend((0..p.generator_count()).map(|g| Word::generator(g).pow(k as i64)));
                    let q = Presentation::new(p.generators().to_vec(), rels).expect("same generators");
                    let table = todd_coxeter(&q, &[], b.max_cosets);
                    table.index().is_some().then_some(table)
                })
                .collect()
        })
    }

    fn simplified(&mut self) -> &(Simplified, RewriteSystem) {
        let (p, b) = (self.p, self.bounds);
        self.simplified.get_or_insert_with(|| {
            let s = tietze_simplify(p, b.tietze_budget);
            let kb = knuth_bendix(&s.presentation, b.max_rules, b.max_len, LetterOrder::default());
            (s, kb)
        })
    }

    /// `Verified` if `w` is proven trivial, `Refuted` if proven nontrivial.
    pub fn is_trivial(&mut self, w: &Word) -> TriState {
        match self.decide(w) {
            Answer::Trivial(how) => TriState::Verified(alloc::vec![how]),
            Answer::Nontrivial(why) => TriState::Refuted(why),
            Answer::Open => TriState::Unknown(format!(
                "undecided within {} rules / length {} / {} cosets",
                self.bounds.max_rules, self.bounds.max_len, self.bounds.max_cosets
            )),
        }
    }

    /// Equality of two words as group elements.
    pub fn equal(&mut self, u: &Word, v: &Word) -> TriState {
        self.is_trivial(&u.concat(&v.inverse()))
    }

    fn decide(&mut self, w: &Word) -> Answer {
        if w.is_empty() {
            return Answer::Trivial(String::from("freely trivial"));
        }
        if !in_lattice(&self.lattice, &w.exponent_sums(self.p.generator_count())) {
            return Answer::Nontrivial(String::from("nonzero in the abelianization"));
        }
        for level in 0..self.rule_levels().len() {
            let kb = self.direct(level);
            if trivial_by(kb, w) {
                return Answer::Trivial(format!("rewrites to 1 ({} rules)", kb.rule_count()));
            }
            if kb.is_confluent() {
                return Answer::Nontrivial(format!("confluent normal form {}", Word::new(&kb.reduce(w))));
            }
            if level == 0 {
                if let Some(t) = self.quotients().iter().find(|t| t.act(0, w) != Some(0)) {
                    return Answer::Nontrivial(format!("acts nontrivially on a quotient of order {}", t.rows.len()));
                }
            }
        }
        let (s, kb) = self.simplified();
        let image = w.substitute(&s.forward);
        if trivial_by(kb, &image) {
            return Answer::Trivial(format!(
                "rewrites to 1 after Tietze simplification ({} moves, {} rules)",
                s.transcript.len(),
                kb.rule_count()
            ));
        }
        if kb.is_confluent() {
            return Answer::Nontrivial(format!(
                "confluent normal form {} after Tietze simplification",
                Word::new(&kb.reduce(&image))
            ));
        }
        Answer::Open
    }
}

/// Proves or refutes that `images` (one word in `dst` per generator of
/// `src`) defines a homomorphism, by sending every relator of `src` into
/// `dst` and deciding triviality there.
pub fn check_homomorphism(
    src: &Presentation,
    dst: &Presentation,
    images: &[Word],
    bounds: &Bounds,
) -> Result<TriState, PresentationError> {
    check_images(src, dst, images)?;
    let mut oracle = WordOracle::new(dst, bounds);
    let mut steps = Vec::new();
    for (i, r) in src.relators().iter().enumerate() {
        let w = r.substitute(images);
        match oracle.decide(&w) {
            Answer::Trivial(how) => steps.push(format!(
                "relator {} ({}) -> {}: {how}",
                i + 1,
                src.format_word(r),
                dst.format_word(&w)
            )),
            Answer::Nontrivial(why) => {
                return Ok(TriState::Refuted(format!(
                    "relator {} ({}) maps to {}: {why}",
                    i + 1,
                    src.format_word(r),
                    dst.format_word(&w)
                )))
            }
            Answer::Open => {
                return Ok(TriState::Unknown(format!(
                    "relator {} ({}) maps to {}, undecided within {} rules / length {} / {} cosets",
                    i + 1,
                    src.format_word(r),
                    dst.format_word(&w),
                    bounds.max_rules,
                    bounds.max_len,
                    bounds.max_cosets
                )))
            }
        }
    }
    Ok(TriState::Verified(steps))
}

fn check_images(src: &Presentation, dst: &Presentation, images: &[Word]) -> Result<(), PresentationError> {
    if images.len() != src.generator_count() {
        return Err(PresentationError::ImageCount { expected: src.generator_count(), got: images.len() });
    }
    for w in images {
        if let Some(l) = w.iter().find(|l| l.generator() >= dst.generator_count()) {
            return Err(PresentationError::GeneratorOutOfRange { index: l.generator(), count: dst.generator_count() });
        }
    }
    Ok(())
}

/// Checks that `g ∘ f` fixes every generator of `a` and `f ∘ g` every
/// generator of `b`, each as an element of the respective group.
pub fn check_mutual_inverse(
    a: &Presentation,
    b: &Presentation,
    f: &[Word],
    g: &[Word],
    bounds: &Bounds,
) -> Result<TriState, PresentationError> {
    check_images(a, b, f)?;
    check_images(b, a, g)?;
    let mut steps = Vec::new();
    let mut open = None;
    for (p, there, back) in [(a, f, g), (b, g, f)] {
        let round = compose_images(there, back);
        let mut oracle = WordOracle::new(p, bounds);
        for (x, img) in round.iter().enumerate() {
            let diff = Word::generator(x).inverse().concat(img);
            let name = &p.generators()[x];
            match oracle.decide(&diff) {
                Answer::Trivial(how) => steps.push(format!("{name} -> {}: {how}", p.format_word(img))),
                Answer::Nontrivial(why) => {
                    return Ok(TriState::Refuted(format!("{name} -> {} is not {name}: {why}", p.format_word(img))))
                }
                Answer::Open => {
                    open.get_or_insert(format!("{name} -> {} undecided", p.format_word(img)));
                }
            }
        }
    }
    Ok(match open {
        Some(why) => TriState::Unknown(why),
        None => TriState::Verified(steps),
    })
}

/// Images of `g ∘ f`: each `f`-image rewritten through `g`.
pub fn compose_images(f: &[Word], g: &[Word]) -> Vec<Word> {
    f.iter().map(|w| w.substitute(g)).collect()
}

pub fn identity_images(n: usize) -> Vec<Word> {
    (0..n).map(Word::generator).collect()
}
