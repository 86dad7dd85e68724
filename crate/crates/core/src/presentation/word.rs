use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

/// A generator or its inverse, packed as `2·generator + inverse_bit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter((generator as u32) << 1 | inverse as u32)
    }

    pub fn gen(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn inv(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn exponent(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    /// Dense index in `0..2·generators`.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        Letter(i as u32)
    }
}

/// Appends `l` to a freely reduced word, cancelling against the last letter.
pub fn push_reduced(w: &mut Vec<Letter>, l: Letter) {
    if w.last() == Some(&l.inverse()) {
        w.pop();
    } else {
        w.push(l);
    }
}

pub fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::with_capacity(letters.len());
    for &l in letters {
        push_reduced(&mut out, l);
    }
    out
}

/// Removes matching inverse letters from both ends.
pub fn cyclic_reduce(letters: &[Letter]) -> Vec<Letter> {
    let w = free_reduce(letters);
    let (mut i, mut j) = (0, w.len());
    while j > i + 1 && w[i] == w[j - 1].inverse() {
        i += 1;
        j -= 1;
    }
    w[i..j].to_vec()
}

pub fn inverse_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inverse()).collect()
}

/// A freely reduced word in the generators and their inverses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: &[Letter]) -> Self {
        Word(free_reduce(letters))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Word from signed 1-based generator numbers: `3` is the third
    /// generator, `-3` its inverse.
    pub fn from_signed(exps: &[i32]) -> Self {
        let letters: Vec<Letter> = exps
            .iter()
            .map(|&e| {
                assert!(e != 0, "generator numbers are 1-based");
                Letter::new(e.unsigned_abs() as usize - 1, e < 0)
            })
            .collect();
        Word::new(&letters)
    }

    pub fn generator(g: usize) -> Self {
        Word(alloc::vec![Letter::gen(g)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn inverse(&self) -> Word {
        Word(inverse_letters(&self.0))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &other.0 {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `self⁻¹ · x · self`.
    pub fn conjugate(&self, x: &Word) -> Word {
        self.inverse().concat(x).concat(self)
    }

    /// Replaces every generator `g` by `images[g]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Vec::new();
        for &l in &self.0 {
            let img = &images[l.generator()];
            if l.is_inverse() {
                for &x in img.0.iter().rev() {
                    push_reduced(&mut out, x.inverse());
                }
            } else {
                for &x in &img.0 {
                    push_reduced(&mut out, x);
                }
            }
        }
        Word(out)
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut v = alloc::vec![0; generators];
        for l in &self.0 {
            v[l.generator()] += l.exponent();
        }
        v
    }

    /// Maximal runs `(generator, exponent)`, read cyclically when `cyclic`
    /// is set.
    pub fn syllables(&self, cyclic: bool) -> Vec<(usize, i64)> {
        let mut letters = self.0.clone();
        if cyclic && letters.len() > 1 {
            // rotate so the word does not start inside a run
            let first = letters[0];
            if let Some(p) = letters.iter().position(|&l| l != first) {
                if letters[letters.len() - 1] == first {
                    letters.rotate_left(p);
                }
            }
        }
        let mut out: Vec<(usize, i64)> = Vec::new();
        for l in letters {
            match out.last_mut() {
                Some((g, e)) if *g == l.generator() && (*e > 0) == !l.is_inverse() => *e += l.exponent(),
                _ => out.push((l.generator(), l.exponent())),
            }
        }
        out
    }
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(free_reduce(&v))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "g{}{}", l.generator() + 1, if l.is_inverse() { "^-1" } else { "" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn free_and_cyclic_reduction() {
        let w = Word::from_signed(&[1, 2, -2, -1, 3]);
        assert_eq!(w, Word::from_signed(&[3]));
        let c = cyclic_reduce(Word::from_signed(&[-1, 2, 3, 1]).letters());
        assert_eq!(c, Word::from_signed(&[2, 3]).letters());
    }

    #[test]
    fn substitution_and_inverse() {
        let images = vec![Word::from_signed(&[2, 1]), Word::from_signed(&[-1])];
        let w = Word::from_signed(&[1, -2]);
        // (b a)(a) = b a a
        assert_eq!(w.substitute(&images), Word::from_signed(&[2, 1, 1]));
        assert_eq!(w.concat(&w.inverse()), Word::empty());
        assert_eq!(Word::from_signed(&[1, 2]).pow(-2), Word::from_signed(&[-2, -1, -2, -1]));
    }

    #[test]
    fn syllables_cyclic() {
        let w = Word::from_signed(&[1, 2, 2, 1]);
        assert_eq!(w.syllables(false), vec![(0, 1), (1, 2), (0, 1)]);
        assert_eq!(w.syllables(true), vec![(1, 2), (0, 2)]);
        let x2y3 = Word::from_signed(&[1, 1, -2, -2, -2]);
        assert_eq!(x2y3.syllables(true), vec![(0, 2), (1, -3)]);
    }
}
