//! Finitely presented groups and bounded verification engines.

mod abelian;
mod builders;
mod coset;
mod homomorphism;
mod rewriting;
mod tietze;
mod word;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

pub use abelian::{abelianization, Abelianization};
pub use builders::{build_at, build_br, build_br_dynkin, make_relation, RelationKind};
pub use coset::{todd_coxeter, CosetStatus, CosetTable};
pub use homomorphism::{
    check_homomorphism, check_mutual_inverse, compose_images, identity_images, Bounds, WordOracle,
};
pub use rewriting::{knuth_bendix, LetterOrder, RewriteStatus, RewriteSystem, WordProblemSolver};
pub use tietze::{replay, tietze_simplify, tietze_simplify_with, Simplified, TietzeConfig, TietzeStep};
pub use word::{cyclic_reduce, free_reduce, inverse_letters, push_reduced, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("generator index {index} out of range (have {count})")]
    GeneratorOutOfRange { index: usize, count: usize },
    #[error("{kind} takes {expected} generators, got {got}")]
    Arity { kind: &'static str, expected: usize, got: usize },
    #[error("vertices {0} and {1} are joined by more than one arrow")]
    MultipleArrows(usize, usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("expected {expected} images, got {got}")]
    ImageCount { expected: usize, got: usize },
}

/// A group presentation: named generators and relators (each stands for
/// `relator = 1`). Relators are freely reduced and nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Drops empty relators; fails on out-of-range generator indices.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let count = generators.len();
        for r in &relators {
            if let Some(l) = r.iter().find(|l| l.generator() >= count) {
                return Err(PresentationError::GeneratorOutOfRange { index: l.generator(), count });
            }
        }
        Ok(Presentation {
            generators,
            relators: relators.into_iter().filter(|r| !r.is_empty()).collect(),
        })
    }

    /// Generators named `prefix1, prefix2, ...`.
    pub fn with_numbered(prefix: &str, count: usize, relators: Vec<Word>) -> Result<Self, PresentationError> {
        Presentation::new((1..=count).map(|i| format!("{prefix}{i}")).collect(), relators)
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Total relator length.
    pub fn size(&self) -> usize {
        self.relators.iter().map(|r| r.len()).sum()
    }

    /// Space-separated generator names, inverses written with an uppercase
    /// first letter.
    pub fn format_word(&self, w: &Word) -> String {
        let mut parts = Vec::with_capacity(w.len());
        for l in w.iter() {
            let name = &self.generators[l.generator()];
            parts.push(if l.is_inverse() { invert_name(name) } else { name.clone() });
        }
        parts.join(" ")
    }

    /// Parses a word written as by [`Presentation::format_word`]; `1` or the
    /// empty string is the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            if let Some(i) = self.generator_index(tok) {
                letters.push(Letter::gen(i));
            } else if let Some(i) = self.generator_index(&invert_name(tok)) {
                letters.push(Letter::inv(i));
            } else {
                return Err(PresentationError::UnknownGenerator(tok.to_string()));
            }
        }
        Ok(Word::new(&letters))
    }
}

/// Swaps the case of the first character.
pub fn invert_name(name: &str) -> String {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_uppercase() => c.to_lowercase().chain(chars).collect(),
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} | ", self.generators.join(" "))?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.format_word(r))?;
        }
        write!(f, " >")
    }
}

/// Outcome of a bounded verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TriState {
    /// Proven, with the steps of the certificate.
    Verified(Vec<String>),
    /// Disproven, with the witness.
    Refuted(String),
    /// Neither, within the stated bound.
    Unknown(String),
}

impl TriState {
    pub fn is_verified(&self) -> bool {
        matches!(self, TriState::Verified(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, TriState::Refuted(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            TriState::Verified(_) => "verified",
            TriState::Refuted(_) => "refuted",
            TriState::Unknown(_) => "unknown",
        }
    }

    /// Certificate steps, witness or bound description.
    pub fn transcript(&self) -> Vec<String> {
        match self {
            TriState::Verified(steps) => steps.clone(),
            TriState::Refuted(w) | TriState::Unknown(w) => alloc::vec![w.clone()],
        }
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriState::Verified(_) => write!(f, "verified"),
            TriState::Refuted(w) => write!(f, "refuted: {w}"),
            TriState::Unknown(b) => write!(f, "unknown: {b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn word_text_round_trip() {
        let p = Presentation::with_numbered("e", 3, vec![Word::from_signed(&[1, -2, 3])]).unwrap();
        let text = p.format_word(&p.relators()[0]);
        assert_eq!(text, "e1 E2 e3");
        assert_eq!(p.parse_word(&text).unwrap(), p.relators()[0]);
        assert!(p.parse_word("q").is_err());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(Presentation::with_numbered("a", 1, vec![Word::from_signed(&[2])]).is_err());
    }
}
