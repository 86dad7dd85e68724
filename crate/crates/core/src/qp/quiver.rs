use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::QpError;

/// A labelled arrow. Vertices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
    /// Ext-degree of the arrow; ordinary quiver arrows have degree 1.
    pub degree: i32,
}

impl Arrow {
    pub fn new(id: impl Into<String>, source: usize, target: usize) -> Self {
        Arrow { id: id.into(), source, target, degree: 1 }
    }

    pub fn with_degree(mut self, degree: i32) -> Self {
        self.degree = degree;
        self
    }
}

/// A finite quiver on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    n: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver, rejecting out-of-range endpoints and duplicate ids.
    /// Loops and 2-cycles are allowed here; see [`validate_quiver`].
    pub fn new(n: usize, arrows: Vec<Arrow>) -> Result<Self, QpError> {
        let mut seen = BTreeSet::new();
        for a in &arrows {
            for v in [a.source, a.target] {
                if v == 0 || v > n {
                    return Err(QpError::VertexOutOfRange { id: a.id.clone(), vertex: v, n });
                }
            }
            if !seen.insert(a.id.as_str()) {
                return Err(QpError::DuplicateArrowId(a.id.clone()));
            }
        }
        Ok(Quiver { n, arrows })
    }

    /// Quiver with arrows given as `(source, target)` pairs, named `a1, a2, ...`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, QpError> {
        let arrows = edges
            .iter()
            .enumerate()
            .map(|(i, &(s, t))| Arrow::new(format!("a{}", i + 1), s, t))
            .collect();
        Quiver::new(n, arrows)
    }

    /// Builds the quiver of a skew-symmetric exchange matrix: `b[i][j] > 0`
    /// gives that many arrows `i+1 -> j+1`.
    pub fn from_exchange_matrix(b: &[Vec<i64>]) -> Self {
        let n = b.len();
        let mut arrows = Vec::new();
        for (i, row) in b.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                for r in 0..x.max(0) {
                    arrows.push(Arrow::new(format!("b{}_{}_{}", i + 1, j + 1, r), i + 1, j + 1));
                }
            }
        }
        Quiver { n, arrows }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: &str) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.id == id)
    }

    pub(crate) fn arrow_map(&self) -> BTreeMap<&str, &Arrow> {
        self.arrows.iter().map(|a| (a.id.as_str(), a)).collect()
    }

    /// Signed arrow counts `b[i][j] = #(i->j) - #(j->i)` over degree-1 arrows
    /// (0-based indices).
    pub fn exchange_matrix(&self) -> Vec<Vec<i64>> {
        let mut b = vec![vec![0i64; self.n]; self.n];
        for a in self.arrows.iter().filter(|a| a.degree == 1 && a.source != a.target) {
            b[a.source - 1][a.target - 1] += 1;
            b[a.target - 1][a.source - 1] -= 1;
        }
        b
    }

    /// Number of arrows from `i` to `j` of the given degree.
    pub fn count(&self, i: usize, j: usize, degree: i32) -> usize {
        self.arrows
            .iter()
            .filter(|a| a.source == i && a.target == j && a.degree == degree)
            .count()
    }

    /// Maximum number of parallel arrows between an ordered pair of vertices.
    pub fn max_multiplicity(&self) -> usize {
        let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for a in &self.arrows {
            *counts.entry((a.source, a.target)).or_default() += 1;
        }
        counts.values().copied().max().unwrap_or(0)
    }

    pub(crate) fn from_parts(n: usize, arrows: Vec<Arrow>) -> Self {
        Quiver { n, arrows }
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "quiver n={}", self.n)?;
        for a in &self.arrows {
            write!(f, " {}:{}->{}", a.id, a.source, a.target)?;
            if a.degree != 1 {
                write!(f, "[{}]", a.degree)?;
            }
        }
        Ok(())
    }
}

/// Which optional checks [`validate_quiver`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationFlags {
    pub cluster_legal: bool,
}

impl Default for ValidationFlags {
    fn default() -> Self {
        ValidationFlags { cluster_legal: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateId(String),
    Loop { id: String, vertex: usize },
    TwoCycle { first: String, second: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateId(id) => write!(f, "duplicate arrow id {id}"),
            Violation::Loop { id, vertex } => write!(f, "loop {id} at vertex {vertex}"),
            Violation::TwoCycle { first, second } => write!(f, "2-cycle {first}, {second}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        !self.violations.iter().any(|v| matches!(v, Violation::DuplicateId(_)))
    }

    pub fn is_cluster_legal(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_loop(&self) -> bool {
        self.violations.iter().any(|v| matches!(v, Violation::Loop { .. }))
    }

    pub fn has_two_cycle(&self) -> bool {
        self.violations.iter().any(|v| matches!(v, Violation::TwoCycle { .. }))
    }
}

/// Reports duplicate ids and, when `flags.cluster_legal` is set, loops and
/// 2-cycles of degree-1 arrows.
pub fn validate_quiver(q: &Quiver, flags: ValidationFlags) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut seen = BTreeSet::new();
    for a in &q.arrows {
        if !seen.insert(a.id.as_str()) {
            report.violations.push(Violation::DuplicateId(a.id.clone()));
        }
    }
    if flags.cluster_legal {
        for a in &q.arrows {
            if a.source == a.target {
                report.violations.push(Violation::Loop { id: a.id.clone(), vertex: a.source });
            }
        }
        for (i, a) in q.arrows.iter().enumerate() {
            if a.degree != 1 || a.source == a.target {
                continue;
            }
            for b in &q.arrows[i + 1..] {
                if b.degree == 1 && b.source == a.target && b.target == a.source {
                    report.violations.push(Violation::TwoCycle {
                        first: a.id.clone(),
                        second: b.id.clone(),
                    });
                }
            }
        }
    }
    report
}

/// `a` <-> `a*`: the id an arrow receives when it is reversed by a mutation.
pub(crate) fn starred(id: &str) -> String {
    match id.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{id}*"),
    }
}

/// Allocates composite-arrow ids `m<k>_<source>_<target>_<ordinal>`.
pub(crate) struct CompositeNamer {
    k: usize,
    used: BTreeSet<String>,
    ordinals: BTreeMap<(usize, usize), usize>,
}

impl CompositeNamer {
    pub(crate) fn new<'a>(k: usize, existing: impl Iterator<Item = &'a str>) -> Self {
        CompositeNamer {
            k,
            used: existing.map(|s| s.to_string()).collect(),
            ordinals: BTreeMap::new(),
        }
    }

    pub(crate) fn reserve(&mut self, id: &str) {
        self.used.insert(id.to_string());
    }

    pub(crate) fn next(&mut self, source: usize, target: usize) -> String {
        let ord = self.ordinals.entry((source, target)).or_insert(0);
        loop {
            let id = format!("m{}_{}_{}_{}", self.k, source, target, *ord);
            *ord += 1;
            if self.used.insert(id.clone()) {
                return id;
            }
        }
    }
}

pub(crate) fn check_mutable(q: &Quiver, k: usize) -> Result<(), QpError> {
    if k == 0 || k > q.n {
        return Err(QpError::InvalidVertex { vertex: k, n: q.n });
    }
    if let Some(a) = q.arrows.iter().find(|a| a.degree != 1) {
        return Err(QpError::GradedArrow(a.id.clone()));
    }
    Ok(())
}

/// Fomin–Zelevinsky mutation at vertex `k` (1-based).
///
/// Adds `i -> j` for each path `i -> k -> j`, reverses the arrows at `k` and
/// cancels opposite pairs. Composite arrows that cancel are removed before
/// pre-existing ones.
pub fn mutate_quiver(q: &Quiver, k: usize) -> Result<Quiver, QpError> {
    check_mutable(q, k)?;
    let report = validate_quiver(q, ValidationFlags::default());
    if !report.is_cluster_legal() {
        return Err(QpError::NotClusterLegal(report.violations[0].to_string()));
    }
    let mut namer = CompositeNamer::new(k, q.arrows.iter().map(|a| a.id.as_str()));
    let mut arrows: Vec<(Arrow, bool)> = Vec::with_capacity(q.arrows.len());
    for a in &q.arrows {
        if a.source == k || a.target == k {
            let id = starred(&a.id);
            namer.reserve(&id);
            arrows.push((
                Arrow { id, source: a.target, target: a.source, degree: a.degree },
                false,
            ));
        } else {
            arrows.push((a.clone(), false));
        }
    }
    for b in q.arrows.iter().filter(|a| a.target == k) {
        for a in q.arrows.iter().filter(|a| a.source == k) {
            let id = namer.next(b.source, a.target);
            arrows.push((Arrow::new(id, b.source, a.target), true));
        }
    }
    Ok(Quiver::from_parts(q.n, cancel_two_cycles(arrows)))
}

/// Removes `min(#(i->j), #(j->i))` opposite pairs for every vertex pair,
/// preferring arrows flagged as fresh, then the most recently listed.
fn cancel_two_cycles(arrows: Vec<(Arrow, bool)>) -> Vec<Arrow> {
    let mut remove = vec![false; arrows.len()];
    let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (idx, (a, _)) in arrows.iter().enumerate() {
        if a.degree == 1 && a.source != a.target {
            by_pair.entry((a.source, a.target)).or_default().push(idx);
        }
    }
    for (&(s, t), fwd) in &by_pair {
        if s > t {
            continue;
        }
        let Some(bwd) = by_pair.get(&(t, s)) else { continue };
        let m = fwd.len().min(bwd.len());
        for side in [fwd, bwd] {
            let mut order = side.clone();
            // fresh arrows first, later arrows before earlier ones
            order.sort_by_key(|&i| (!arrows[i].1, core::cmp::Reverse(i)));
            for &i in order.iter().take(m) {
                remove[i] = true;
            }
        }
    }
    arrows
        .into_iter()
        .zip(remove)
        .filter(|(_, r)| !r)
        .map(|((a, _), _)| a)
        .collect()
}
