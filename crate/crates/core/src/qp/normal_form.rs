use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::{least_rotation, Arrow, Coeff, Potential, Qp, Quiver};
use crate::lattice::{hermite_basis, reduce_mod};

/// Largest number of arrow orderings tried when breaking ties.
const MAX_ORDERINGS: usize = 5040;

/// Canonical encoding of a quiver with potential up to renaming arrows,
/// rescaling individual arrows and rescaling the whole potential.
///
/// Vertices keep their labels. Equal encodings imply isomorphic QPs; the
/// converse can fail when coefficient patterns are related by a change of
/// variables that is not a rescaling, or when a tie class is too large to
/// search.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalForm {
    pub n: usize,
    /// `(source, target, degree)` per arrow, in canonical order.
    pub arrows: Vec<(usize, usize, i32)>,
    /// Terms as rotation-minimal cycles of arrow indices, sorted.
    pub terms: Vec<(Vec<usize>, Coeff)>,
}

impl NormalForm {
    /// Rebuilds a QP with arrows named `x1, x2, ...`.
    pub fn to_qp(&self) -> Qp {
        let arrows = self
            .arrows
            .iter()
            .enumerate()
            .map(|(i, &(s, t, d))| Arrow::new(format!("x{}", i + 1), s, t).with_degree(d))
            .collect();
        let mut w = Potential::zero();
        for (cycle, c) in &self.terms {
            w.add_term(*c, cycle.iter().map(|i| format!("x{}", i + 1)).collect());
        }
        Qp { quiver: Quiver::from_parts(self.n, arrows), potential: w, degree_n: None }
    }
}

fn factor(mut n: u64, out: &mut BTreeSet<u64>) {
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            out.insert(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.insert(n);
    }
}

fn valuation(mut n: u64, p: u64) -> i64 {
    let mut v = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Brings coefficients to a canonical representative modulo arrow and
/// global rescaling. `incidence[t][a]` counts arrow `a` in term `t`.
fn normalize_coefficients(coeffs: &[Coeff], incidence: &[Vec<i64>], arrows: usize) -> Vec<Coeff> {
    let t = coeffs.len();
    if t == 0 {
        return Vec::new();
    }
    let mut gens: Vec<Vec<i64>> = (0..arrows).map(|a| (0..t).map(|i| incidence[i][a]).collect()).collect();
    gens.push(vec![1; t]);
    let scaling = hermite_basis(&gens, t);

    let mut sign_gens = gens.clone();
    for i in 0..t {
        let mut e = vec![0; t];
        e[i] = 2;
        sign_gens.push(e);
    }
    let sign_basis = hermite_basis(&sign_gens, t);
    let signs: Vec<i64> = coeffs.iter().map(|c| i64::from(c.is_negative())).collect();
    let signs = reduce_mod(&sign_basis, &signs);

    let mut primes = BTreeSet::new();
    for c in coeffs {
        factor(c.numer().unsigned_abs(), &mut primes);
        factor(c.denom().unsigned_abs(), &mut primes);
    }
    let mut out: Vec<Coeff> = signs.iter().map(|&s| if s & 1 == 1 { -Coeff::one() } else { Coeff::one() }).collect();
    for &p in &primes {
        let v: Vec<i64> = coeffs
            .iter()
            .map(|c| valuation(c.numer().unsigned_abs(), p) - valuation(c.denom().unsigned_abs(), p))
            .collect();
        let r = reduce_mod(&scaling, &v);
        for (o, e) in out.iter_mut().zip(r) {
            let pe = Coeff::from_integer(p as i64).pow(e as i32);
            *o *= pe;
        }
    }
    out
}

/// Canonical form of a QP; see [`NormalForm`].
pub fn normal_form(qp: &Qp) -> NormalForm {
    let arrows = qp.quiver.arrows();
    let index: BTreeMap<&str, usize> = arrows.iter().enumerate().map(|(i, a)| (a.id.as_str(), i)).collect();
    let terms: Vec<(Vec<usize>, Coeff)> = qp
        .potential
        .terms()
        .map(|(c, k)| (c.iter().map(|id| index[id.as_str()]).collect(), k))
        .collect();

    // signature: vertex sequences of the cycles seen from each occurrence
    let mut signature: Vec<Vec<Vec<usize>>> = vec![Vec::new(); arrows.len()];
    for (cycle, _) in &terms {
        let m = cycle.len();
        for p in 0..m {
            let seq = (0..m).map(|i| arrows[cycle[(p + i) % m]].source).collect();
            signature[cycle[p]].push(seq);
        }
    }
    signature.iter_mut().for_each(|s| s.sort());

    let mut order: Vec<usize> = (0..arrows.len()).collect();
    let key = |i: usize| (arrows[i].source, arrows[i].target, arrows[i].degree, &signature[i]);
    order.sort_by(|&a, &b| key(a).cmp(&key(b)));

    // tie classes that W can tell apart by position only
    let mut classes: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && key(order[end]) == key(order[start]) {
            end += 1;
        }
        if end - start > 1 && !signature[order[start]].is_empty() {
            classes.push((start, end));
        }
        start = end;
    }
    let mut total: usize = 1;
    for &(s, e) in &classes {
        for f in 1..=(e - s) {
            total = total.saturating_mul(f);
        }
    }
    if total > MAX_ORDERINGS {
        classes.clear();
    }

    let mut best: Option<NormalForm> = None;
    let mut current = order.clone();
    permute_classes(&classes, 0, &mut current, &mut |ord| {
        let nf = encode(qp, &terms, ord);
        if best.as_ref().is_none_or(|b| nf < *b) {
            best = Some(nf);
        }
    });
    best.unwrap_or_else(|| encode(qp, &terms, &order))
}

fn permute_classes(
    classes: &[(usize, usize)],
    at: usize,
    order: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if at == classes.len() {
        visit(order);
        return;
    }
    let (s, e) = classes[at];
    // Heap's algorithm over order[s..e]
    let k = e - s;
    let mut c = vec![0usize; k];
    permute_classes(classes, at + 1, order, visit);
    let mut i = 1;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(s, s + i);
            } else {
                order.swap(s + c[i], s + i);
            }
            permute_classes(classes, at + 1, order, visit);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn encode(qp: &Qp, terms: &[(Vec<usize>, Coeff)], order: &[usize]) -> NormalForm {
    let arrows = qp.quiver.arrows();
    let mut position = vec![0; order.len()];
    for (p, &a) in order.iter().enumerate() {
        position[a] = p;
    }
    let mut relabelled: Vec<(Vec<usize>, Coeff)> = terms
        .iter()
        .map(|(c, k)| (least_rotation(&c.iter().map(|&a| position[a]).collect::<Vec<_>>()), *k))
        .collect();
    relabelled.sort();
    let incidence: Vec<Vec<i64>> = relabelled
        .iter()
        .map(|(c, _)| {
            let mut row = vec![0; order.len()];
            for &a in c {
                row[a] += 1;
            }
            row
        })
        .collect();
    let coeffs: Vec<Coeff> = relabelled.iter().map(|(_, c)| *c).collect();
    let normalized = normalize_coefficients(&coeffs, &incidence, order.len());
    let terms = relabelled
        .into_iter()
        .zip(normalized)
        .filter(|(_, c)| !c.is_zero())
        .map(|((cycle, _), c)| (cycle, c))
        .collect();
    NormalForm {
        n: qp.quiver.vertex_count(),
        arrows: order.iter().map(|&a| (arrows[a].source, arrows[a].target, arrows[a].degree)).collect(),
        terms,
    }
}
