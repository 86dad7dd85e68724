use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{ExchangeError, Seed, SeedKey};

/// A directed exchange edge. `relabel[i]` is the target's index of the
/// source's direction `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub source: usize,
    pub direction: usize,
    pub target: usize,
    pub relabel: Vec<usize>,
    /// The edge back along the same exchange.
    pub reverse: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceKind {
    Square,
    Pentagon,
    Hexagon,
}

impl FaceKind {
    pub fn name(self) -> &'static str {
        match self {
            FaceKind::Square => "square",
            FaceKind::Pentagon => "pentagon",
            FaceKind::Hexagon => "hexagon",
        }
    }
}

/// Two directed edge paths from `vertex` with a common end; the face
/// imposes their equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub kind: FaceKind,
    pub vertex: usize,
    /// Directions of the two paths, in the labels of `vertex`.
    pub directions: (Vec<usize>, Vec<usize>),
    pub paths: (Vec<usize>, Vec<usize>),
}

/// Which ordered pairs `(i, j)` without an arrow `i -> j` get a hexagon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HexagonPolicy {
    None,
    /// Every such pair.
    #[default]
    All,
    /// Skip pairs joined by two or more arrows `j -> i`.
    SkipMultiple,
}

/// Result of walking a direction sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    pub edges: Vec<usize>,
    pub end: usize,
    /// `labels[i]`: index at the end vertex of the start's direction `i`.
    pub labels: Vec<usize>,
}

/// The cluster exchange graph with every exchange doubled into a pair of
/// opposite directed edges. Vertex `0` is the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeGraph {
    n: usize,
    seeds: Vec<Seed>,
    keys: Vec<SeedKey>,
    index: BTreeMap<SeedKey, usize>,
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
    faces: Vec<Face>,
    base_relabel: Vec<usize>,
}

impl ExchangeGraph {
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.seeds.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn base(&self) -> usize {
        0
    }

    /// `base_relabel()[i]`: base-vertex index of direction `i` of the seed
    /// the graph was built from.
    pub fn base_relabel(&self) -> &[usize] {
        &self.base_relabel
    }

    pub fn seed(&self, v: usize) -> &Seed {
        &self.seeds[v]
    }

    pub fn seeds(&self) -> &[Seed] {
        &self.seeds
    }

    pub fn key(&self, v: usize) -> &SeedKey {
        &self.keys[v]
    }

    pub fn find(&self, s: &Seed) -> Option<usize> {
        self.index.get(&s.key()).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// The edge leaving `v` in direction `k`.
    pub fn edge(&self, v: usize, k: usize) -> &Edge {
        &self.edges[self.out[v][k]]
    }

    pub fn edge_id(&self, v: usize, k: usize) -> usize {
        self.out[v][k]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_count(&self, kind: FaceKind) -> usize {
        self.faces.iter().filter(|f| f.kind == kind).count()
    }

    /// Follows `directions`, given in the labels of `start`, carrying the
    /// labels across each edge.
    pub fn walk(&self, start: usize, directions: &[usize]) -> Walk {
        let mut labels: Vec<usize> = (0..self.n).collect();
        let mut at = start;
        let mut edges = Vec::with_capacity(directions.len());
        for &d in directions {
            let id = self.out[at][labels[d]];
            let e = &self.edges[id];
            for l in labels.iter_mut() {
                *l = e.relabel[*l];
            }
            edges.push(id);
            at = e.target;
        }
        Walk { edges, end: at, labels }
    }

    /// Breadth-first distances from `v` along directed edges.
    pub fn distances(&self, v: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[v] = Some(0);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.out[u] {
                let w = self.edges[e].target;
                if dist[w].is_none() {
                    dist[w] = Some(dist[u].unwrap() + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Builds the exchange graph of `initial` with the default hexagon policy.
pub fn build_ceg(initial: &Seed, max_vertices: usize) -> Result<ExchangeGraph, ExchangeError> {
    build_ceg_with(initial, max_vertices, HexagonPolicy::default())
}

/// Breadth-first closure of `initial` under mutation, identifying seeds up
/// to relabelling, followed by face detection.
pub fn build_ceg_with(initial: &Seed, max_vertices: usize, policy: HexagonPolicy) -> Result<ExchangeGraph, ExchangeError> {
    let n = initial.rank();
    if let Some(column) = initial.sign_incoherent_column() {
        return Err(ExchangeError::SignIncoherent { vertex: 0, column });
    }
    let (rep, order) = initial.canonical();
    let mut base_relabel = vec![0; n];
    for (p, &i) in order.iter().enumerate() {
        base_relabel[i] = p;
    }
    let mut g = ExchangeGraph {
        n,
        seeds: vec![rep.clone()],
        keys: vec![rep.key()],
        index: BTreeMap::from([(rep.key(), 0)]),
        edges: Vec::new(),
        out: vec![Vec::new()],
        faces: Vec::new(),
        base_relabel,
    };
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for k in 0..n {
            let mutated = g.seeds[v].mutate(k)?;
            let (rep, order) = mutated.canonical();
            let key = rep.key();
            let w = match g.index.get(&key) {
                Some(&w) => w,
                None => {
                    if g.seeds.len() >= max_vertices {
                        return Err(ExchangeError::CapExceeded { cap: max_vertices, explored: g.seeds.len() });
                    }
                    let w = g.seeds.len();
                    if let Some(column) = rep.sign_incoherent_column() {
                        return Err(ExchangeError::SignIncoherent { vertex: w, column });
                    }
                    g.seeds.push(rep);
                    g.keys.push(key.clone());
                    g.index.insert(key, w);
                    g.out.push(Vec::new());
                    queue.push_back(w);
                    w
                }
            };
            let mut relabel = vec![0; n];
            for (p, &i) in order.iter().enumerate() {
                relabel[i] = p;
            }
            g.out[v].push(g.edges.len());
            g.edges.push(Edge { source: v, direction: k, target: w, relabel, reverse: usize::MAX });
        }
    }
    link_reverses(&mut g)?;
    g.faces = enumerate_faces(&g, policy)?;
    Ok(g)
}

/// Seeds within `radius` mutations of the base, with the edges among them.
/// Works for infinite mutation types; no faces are attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub seeds: Vec<Seed>,
    pub keys: Vec<SeedKey>,
    pub distance: Vec<usize>,
    /// `(source, direction, target)` in the source's labels.
    pub edges: Vec<(usize, usize, usize)>,
    /// No seed outside the ball is adjacent to it: the ball is the whole
    /// exchange graph.
    pub complete: bool,
}

pub fn explore_ball(initial: &Seed, radius: usize, max_vertices: usize) -> Result<Ball, ExchangeError> {
    let n = initial.rank();
    let rep = initial.canonical().0;
    let mut ball = Ball { keys: vec![rep.key()], seeds: vec![rep], distance: vec![0], edges: Vec::new(), complete: true };
    let mut index = BTreeMap::from([(ball.keys[0].clone(), 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for k in 0..n {
            let rep = ball.seeds[v].mutate(k)?.canonical().0;
            let key = rep.key();
            let w = match index.get(&key) {
                Some(&w) => w,
                None if ball.distance[v] == radius => {
                    ball.complete = false;
                    continue;
                }
                None => {
                    if ball.seeds.len() >= max_vertices {
                        return Err(ExchangeError::CapExceeded { cap: max_vertices, explored: ball.seeds.len() });
                    }
                    let w = ball.seeds.len();
                    index.insert(key.clone(), w);
                    ball.seeds.push(rep);
                    ball.keys.push(key);
                    ball.distance.push(ball.distance[v] + 1);
                    queue.push_back(w);
                    w
                }
            };
            ball.edges.push((v, k, w));
        }
    }
    Ok(ball)
}

/// Pairs every edge with its return edge and checks regularity.
fn link_reverses(g: &mut ExchangeGraph) -> Result<(), ExchangeError> {
    let mut indegree = vec![0usize; g.vertex_count()];
    for id in 0..g.edges.len() {
        let e = &g.edges[id];
        indegree[e.target] += 1;
        let back = g.out[e.target][e.relabel[e.direction]];
        let b = &g.edges[back];
        let composes = (0..g.n).all(|i| b.relabel[e.relabel[i]] == i);
        if b.target != e.source || !composes {
            return Err(ExchangeError::Inconsistent(format!(
                "direction {} twice from vertex {} does not return",
                e.direction, e.source
            )));
        }
        g.edges[id].reverse = back;
    }
    if let Some(v) = indegree.iter().position(|&d| d != g.n) {
        return Err(ExchangeError::Inconsistent(format!("vertex {v} has in-degree {}", indegree[v])));
    }
    Ok(())
}

/// Boundary cycle as signed edges, up to rotation and reversal.
fn boundary_key(f: &Face) -> Vec<(usize, bool)> {
    let mut cycle: Vec<(usize, bool)> = f.paths.0.iter().map(|&e| (e, true)).collect();
    cycle.extend(f.paths.1.iter().rev().map(|&e| (e, false)));
    let reversed: Vec<(usize, bool)> = cycle.iter().rev().map(|&(e, s)| (e, !s)).collect();
    let mut best = cycle.clone();
    for c in [&cycle, &reversed] {
        for k in 0..c.len() {
            let mut rot = c[k..].to_vec();
            rot.extend_from_slice(&c[..k]);
            if rot < best {
                best = rot;
            }
        }
    }
    best
}

fn face(g: &ExchangeGraph, kind: FaceKind, v: usize, p: &[usize], q: &[usize]) -> Result<Face, ExchangeError> {
    let (wp, wq) = (g.walk(v, p), g.walk(v, q));
    if wp.end != wq.end {
        return Err(ExchangeError::Inconsistent(format!(
            "{} at vertex {v} along {p:?} / {q:?} does not close",
            kind.name()
        )));
    }
    Ok(Face { kind, vertex: v, directions: (p.to_vec(), q.to_vec()), paths: (wp.edges, wq.edges) })
}

fn interior(g: &ExchangeGraph, w: &Walk) -> Vec<usize> {
    let k = w.edges.len();
    w.edges[..k - 1].iter().map(|&e| g.edges[e].target).collect()
}

/// The pentagon through `v` for a single arrow `s -> t`: the 2-path
/// `(s, t)` against the unique 3-path in the rank-2 orbit meeting it.
fn pentagon(g: &ExchangeGraph, v: usize, s: usize, t: usize) -> Result<Face, ExchangeError> {
    let two = g.walk(v, &[s, t]);
    let inner = interior(g, &two);
    let matches: Vec<[usize; 3]> = [[t, s, t], [s, t, s]]
        .into_iter()
        .filter(|dirs| {
            let w = g.walk(v, dirs);
            w.end == two.end && interior(g, &w).iter().all(|x| !inner.contains(x) && *x != v)
        })
        .collect();
    match matches.as_slice() {
        [three] => face(g, FaceKind::Pentagon, v, &[s, t], three),
        _ => Err(ExchangeError::Inconsistent(format!(
            "{} pentagon candidates at vertex {v} for directions {s}, {t}",
            matches.len()
        ))),
    }
}

/// Squares for unjoined pairs, pentagons for singly joined pairs and
/// hexagons `(j, i, i) = (i, i, j)` for ordered pairs with no arrow `i -> j`,
/// deduplicated by boundary cycle.
#[allow(clippy::needless_range_loop)]
pub fn enumerate_faces(g: &ExchangeGraph, policy: HexagonPolicy) -> Result<Vec<Face>, ExchangeError> {
    let n = g.n;
    let mut faces = Vec::new();
    let mut seen = BTreeSet::new();
    let mut push = |f: Face, faces: &mut Vec<Face>| {
        if seen.insert(boundary_key(&f)) {
            faces.push(f);
        }
    };
    for v in 0..g.vertex_count() {
        let b = &g.seeds[v].b;
        for i in 0..n {
            for j in i + 1..n {
                match b[i][j] {
                    0 => push(face(g, FaceKind::Square, v, &[i, j], &[j, i])?, &mut faces),
                    1 => push(pentagon(g, v, i, j)?, &mut faces),
                    -1 => push(pentagon(g, v, j, i)?, &mut faces),
                    _ => {}
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let wanted = match policy {
                    HexagonPolicy::None => false,
                    HexagonPolicy::All => b[i][j] <= 0,
                    HexagonPolicy::SkipMultiple => b[i][j] <= 0 && b[j][i] < 2,
                };
                if i != j && wanted {
                    push(face(g, FaceKind::Hexagon, v, &[j, i, i], &[i, i, j])?, &mut faces);
                }
            }
        }
    }
    Ok(faces)
}
