use alloc::vec::Vec;
use core::fmt;

use super::Presentation;
use crate::lattice::smith_diagonal;

/// `Z^free_rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk` with `d1 | d2 | ... | dk`, all `di > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Abelianization {
    pub torsion: Vec<u64>,
    pub free_rank: usize,
}

impl Abelianization {
    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<alloc::string::String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(alloc::format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|d| alloc::format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Smith normal form of the relator exponent-sum matrix.
pub fn abelianization(p: &Presentation) -> Abelianization {
    let g = p.generator_count();
    let rows: Vec<Vec<i64>> = p.relators().iter().map(|r| r.exponent_sums(g)).collect();
    let diag = smith_diagonal(&rows, g);
    Abelianization {
        free_rank: g - diag.len(),
        torsion: diag.into_iter().filter(|&d| d > 1).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{build_br, Word};
    use crate::qp::Quiver;
    use alloc::vec;

    #[test]
    fn braid_groups_abelianize_to_z() {
        for n in 2..=4 {
            let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
            let br = build_br(&Quiver::from_edges(n, &edges).unwrap()).unwrap();
            assert_eq!(abelianization(&br), Abelianization { torsion: vec![], free_rank: 1 });
        }
    }

    #[test]
    fn small_examples() {
        let p = Presentation::with_numbered("x", 2, vec![Word::from_signed(&[1, 1, -2, -2, -2])]).unwrap();
        assert_eq!(abelianization(&p).free_rank, 1);
        assert!(abelianization(&p).torsion.is_empty());
        let t = Presentation::with_numbered("a", 1, vec![Word::from_signed(&[1])]).unwrap();
        assert!(abelianization(&t).is_trivial());
        let z6 = Presentation::with_numbered("a", 2, vec![Word::from_signed(&[1, 1]), Word::from_signed(&[2, 2, 2])])
            .unwrap();
        assert_eq!(abelianization(&z6), Abelianization { torsion: vec![6], free_rank: 0 });
    }
}
