use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::{QpError, Quiver};

/// Rational coefficient of a potential term.
pub type Coeff = num_rational::Ratio<i64>;

/// A linear combination of paths, keyed by arrow-id sequence.
pub type PathSum = BTreeMap<Vec<String>, Coeff>;

/// A finite rational combination of cycles, each stored in its
/// lexicographically least rotation. Zero terms are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Potential {
    terms: BTreeMap<Vec<String>, Coeff>,
}

/// Lexicographically least rotation of a cyclic word.
pub fn least_rotation<T: Ord + Clone>(cycle: &[T]) -> Vec<T> {
    let n = cycle.len();
    if n == 0 {
        return Vec::new();
    }
    let best = (0..n)
        .min_by(|&a, &b| {
            (0..n)
                .map(|i| &cycle[(a + i) % n])
                .cmp((0..n).map(|i| &cycle[(b + i) % n]))
        })
        .unwrap_or(0);
    (0..n).map(|i| cycle[(best + i) % n].clone()).collect()
}

impl Potential {
    pub fn zero() -> Self {
        Potential::default()
    }

    /// Potential with coefficient-1 terms given by arrow-id cycles.
    pub fn from_cycles<S: AsRef<str>>(cycles: &[&[S]]) -> Self {
        let mut w = Potential::zero();
        for c in cycles {
            w.add_term(Coeff::one(), c.iter().map(|s| String::from(s.as_ref())).collect());
        }
        w
    }

    /// Adds `coeff * cycle`, merging with an existing rotation of the cycle.
    pub fn add_term(&mut self, coeff: Coeff, cycle: Vec<String>) {
        if coeff.is_zero() || cycle.is_empty() {
            return;
        }
        let key = least_rotation(&cycle);
        let entry = self.terms.entry(key).or_insert_with(Coeff::zero);
        *entry += coeff;
        if entry.is_zero() {
            let key = least_rotation(&cycle);
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(cycle, coefficient)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&[String], Coeff)> {
        self.terms.iter().map(|(c, &k)| (c.as_slice(), k))
    }

    pub fn contains_arrow(&self, id: &str) -> bool {
        self.terms.keys().any(|c| c.iter().any(|x| x == id))
    }

    /// Checks that every cycle is a closed composable path of `q`.
    pub fn check_composable(&self, q: &Quiver) -> Result<(), QpError> {
        let map = q.arrow_map();
        for cycle in self.terms.keys() {
            let mut arrows = Vec::with_capacity(cycle.len());
            for id in cycle {
                arrows.push(*map.get(id.as_str()).ok_or_else(|| QpError::UnknownArrow(id.clone()))?);
            }
            for i in 0..arrows.len() {
                let next = arrows[(i + 1) % arrows.len()];
                if arrows[i].target != next.source {
                    return Err(QpError::NotComposable(cycle.join(" ")));
                }
            }
        }
        Ok(())
    }

    /// Cyclic derivative with respect to an arrow: for every occurrence of
    /// `b`, the rest of the cycle read from just after `b`.
    pub fn cyclic_derivative(&self, b: &str) -> PathSum {
        let mut out = PathSum::new();
        for (cycle, &c) in &self.terms {
            let n = cycle.len();
            for (p, x) in cycle.iter().enumerate() {
                if x == b {
                    let path: Vec<String> = (1..n).map(|i| cycle[(p + i) % n].clone()).collect();
                    add_path(&mut out, path, c);
                }
            }
        }
        out
    }

    /// Replaces every occurrence of arrow `a` by the path combination
    /// `replacement`, expanding products.
    pub fn substitute(&self, a: &str, replacement: &PathSum) -> Potential {
        let mut out = Potential::zero();
        for (cycle, &c) in &self.terms {
            // partial expansions: (coefficient, prefix)
            let mut partial: Vec<(Coeff, Vec<String>)> = vec![(c, Vec::new())];
            for x in cycle {
                if x == a {
                    let mut next = Vec::with_capacity(partial.len() * replacement.len());
                    for (pc, prefix) in &partial {
                        for (path, &rc) in replacement {
                            let mut p = prefix.clone();
                            p.extend(path.iter().cloned());
                            next.push((*pc * rc, p));
                        }
                    }
                    partial = next;
                } else {
                    for (_, prefix) in partial.iter_mut() {
                        prefix.push(x.clone());
                    }
                }
            }
            for (pc, path) in partial {
                out.add_term(pc, path);
            }
        }
        out
    }

    /// Applies an arrow renaming; ids missing from `map` are kept.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> Potential {
        let mut out = Potential::zero();
        for (cycle, &c) in &self.terms {
            let renamed = cycle.iter().map(|x| map.get(x).cloned().unwrap_or_else(|| x.clone())).collect();
            out.add_term(c, renamed);
        }
        out
    }
}

pub(crate) fn add_path(sum: &mut PathSum, path: Vec<String>, c: Coeff) {
    let e = sum.entry(path).or_insert_with(Coeff::zero);
    *e += c;
    if e.is_zero() {
        sum.retain(|_, v| !v.is_zero());
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (cycle, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}({})", c, cycle.join(" "))?;
        }
        Ok(())
    }
}
