//! Named verification claims. Each runs a fixed procedure and returns a
//! [`TriState`] whose transcript is the certificate or the witness.

use std::collections::BTreeSet;

use clusterbraid_core::exchange::{
    build_ceg, conjugate_twists, dynkin_iso_chain, fundamental_presentation, zero_matrix, ExchangeGraph, FaceKind,
    PointGroup, Seed, SpanningTree,
};
use clusterbraid_core::presentation::{
    abelianization, build_at, build_br, check_homomorphism, check_mutual_inverse, identity_images, knuth_bendix,
    tietze_simplify, tietze_simplify_with, Bounds, Letter, LetterOrder, Presentation, TietzeConfig, TriState, Word,
    WordOracle,
};
use clusterbraid_core::qp::{DynkinFamily, DynkinType, Potential, Qp, Quiver};
use clusterbraid_core::surface::{enumerate_triangulations, polygon_triangulation};

use crate::ops::TIETZE_BUDGET;
use crate::Error;

#[derive(Debug, Clone)]
pub struct Settings {
    pub max_vertices: usize,
    pub bounds: Bounds,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { max_vertices: crate::ops::max_vertices(), bounds: Bounds::default() }
    }
}

pub struct Claim {
    pub name: &'static str,
    pub summary: &'static str,
    run: fn(&Settings) -> Result<TriState, Error>,
}

impl Claim {
    /// Runs the claim; engine or graph errors become `unknown`.
    pub fn run(&self, settings: &Settings) -> TriState {
        (self.run)(settings).unwrap_or_else(|e| TriState::Unknown(e.to_string()))
    }
}

pub const CLAIMS: &[Claim] = &[
    Claim { name: "ceg-a2-shape", summary: "A2 exchange graph: 5 vertices, 10 edges, 5 pentagons", run: ceg_a2_shape },
    Claim { name: "ceg-a1a1-shape", summary: "A1xA1 exchange graph: 4 vertices, 8 edges, 4 squares", run: ceg_a1a1_shape },
    Claim { name: "catalan-a3-a4", summary: "A3 and A4 vertex counts equal hexagon and heptagon triangulation counts", run: catalan },
    Claim { name: "cbr-a2-is-br3", summary: "CBr(A2) simplifies to x^2 = y^3 and is isomorphic to Br3", run: cbr_a2_is_br3 },
    Claim { name: "cbr-a1a1-abelian", summary: "CBr(A1xA1) is free abelian on the two twists", run: cbr_a1a1_abelian },
    Claim { name: "dynkin-chain-3cycle", summary: "3-cycle QP: transported braid generators satisfy the A3 relations", run: dynkin_chain },
    Claim { name: "at-cbr-central-triangle", summary: "hexagon with central triangle: AT and simplified CBr agree on b_i <-> t_i", run: at_cbr },
    Claim { name: "hexagon-redundancy", summary: "A1xA1, A2, A3: hexagon relators follow from squares and pentagons", run: hexagon_redundancy },
    Claim { name: "conjugation-consistency", summary: "A2, A3: edge conjugation of twist loops matches the conjugation formula", run: conjugation },
];

pub fn find(name: &str) -> Result<&'static Claim, Error> {
    CLAIMS.iter().find(|c| c.name == name).ok_or_else(|| Error::UnknownClaim(name.to_string()))
}

pub fn verify(name: &str, settings: &Settings) -> Result<TriState, Error> {
    Ok(find(name)?.run(settings))
}

fn a2() -> Seed {
    Seed::initial(vec![vec![0, 1], vec![-1, 0]]).expect("skew-symmetric")
}

fn a1a1() -> Seed {
    Seed::initial(zero_matrix(2)).expect("skew-symmetric")
}

fn dynkin_seed(family: DynkinFamily, rank: usize) -> Seed {
    Seed::initial(DynkinType::new(family, rank).expect("valid type").quiver().exchange_matrix()).expect("skew-symmetric")
}

/// Verified steps of several results, or the first non-verified result.
fn all(results: Vec<(String, TriState)>) -> TriState {
    let mut steps = Vec::new();
    for (label, r) in results {
        match r {
            TriState::Verified(s) => {
                steps.push(format!("{label}: verified"));
                steps.extend(s.into_iter().map(|x| format!("  {x}")));
            }
            TriState::Refuted(w) => return TriState::Refuted(format!("{label}: {w}")),
            TriState::Unknown(w) => return TriState::Unknown(format!("{label}: {w}")),
        }
    }
    TriState::Verified(steps)
}

fn shape(g: &ExchangeGraph, expected: (usize, usize, FaceKind, usize)) -> TriState {
    let got = (g.vertex_count(), g.edge_count(), g.face_count(expected.2));
    let line = format!("vertices={} edges={} {}s={}", got.0, got.1, expected.2.name(), got.2);
    if got == (expected.0, expected.1, expected.3) {
        TriState::Verified(vec![line])
    } else {
        TriState::Refuted(format!("{line}, expected {} / {} / {}", expected.0, expected.1, expected.3))
    }
}

fn ceg_a2_shape(s: &Settings) -> Result<TriState, Error> {
    Ok(shape(&build_ceg(&a2(), s.max_vertices)?, (5, 10, FaceKind::Pentagon, 5)))
}

fn ceg_a1a1_shape(s: &Settings) -> Result<TriState, Error> {
    Ok(shape(&build_ceg(&a1a1(), s.max_vertices)?, (4, 8, FaceKind::Square, 4)))
}

fn catalan(s: &Settings) -> Result<TriState, Error> {
    let mut steps = Vec::new();
    for (rank, polygon) in [(3, 6), (4, 7)] {
        let vertices = build_ceg(&dynkin_seed(DynkinFamily::A, rank), s.max_vertices)?.vertex_count();
        let triangulations = enumerate_triangulations(polygon)?.len();
        let line = format!("A{rank}: {vertices} seeds, {polygon}-gon: {triangulations} triangulations");
        if vertices != triangulations {
            return Ok(TriState::Refuted(line));
        }
        steps.push(line);
    }
    Ok(TriState::Verified(steps))
}

/// For a single relator `x^(2s) y^(3t)` up to rotation, returns
/// `(x, s, y, t)`.
fn two_three_pattern(p: &Presentation) -> Option<(usize, i64, usize, i64)> {
    if p.generator_count() != 2 || p.relators().len() != 1 {
        return None;
    }
    match p.relators()[0].syllables(true).as_slice() {
        &[(g, e), (h, f)] if g != h => {
            let ((x, ex), (y, ey)) = if e.abs() == 2 { ((g, e), (h, f)) } else { ((h, f), (g, e)) };
            (ex.abs() == 2 && ey.abs() == 3).then_some((x, ex.signum(), y, ey.signum()))
        }
        _ => None,
    }
}

fn cbr_a2_is_br3(s: &Settings) -> Result<TriState, Error> {
    let g = build_ceg(&a2(), s.max_vertices)?;
    let pi = fundamental_presentation(&g, true);
    let cbr = tietze_simplify(&pi, TIETZE_BUDGET).presentation;
    let Some((x, sx, y, sy)) = two_three_pattern(&cbr) else {
        return Ok(TriState::Refuted(format!("simplified presentation {cbr} has no (2,-3) pattern")));
    };
    // relator x^(2sx) y^(3sy): X = x^sx and Y = y^-sy satisfy X^2 = Y^3
    let br = build_br(&DynkinType::new(DynkinFamily::A, 2).expect("valid type").quiver())?;
    let (a, b) = (Word::generator(0), Word::generator(1));
    let (xw, yw) = (Word::generator(x), Word::generator(y));
    let mut f = vec![Word::empty(); 2];
    f[x] = a.concat(&b).concat(&a).pow(sx);
    f[y] = a.concat(&b).pow(-sy);
    let g_images = vec![yw.pow(sy).concat(&xw.pow(sx)), xw.pow(-sx).concat(&yw.pow(-2 * sy))];
    let mut results = vec![(format!("simplified CBr(A2) = {cbr}"), TriState::Verified(Vec::new()))];
    results.push(("CBr -> Br3, x -> aba, y -> ab".into(), check_homomorphism(&cbr, &br, &f, &s.bounds)?));
    results.push(("Br3 -> CBr, a -> y^-1 x, b -> x^-1 y^2".into(), check_homomorphism(&br, &cbr, &g_images, &s.bounds)?));
    results.push(("mutually inverse".into(), check_mutual_inverse(&cbr, &br, &f, &g_images, &s.bounds)?));
    Ok(all(results))
}

/// The point group with the base twist loops `t1..tn` as protected
/// generators, simplified.
pub fn point_group_on_twists(g: &ExchangeGraph) -> Presentation {
    let pg = PointGroup::new(g, true, &SpanningTree::Bfs);
    let (p, twists) = pg.with_twist_generators(g, g.base_relabel());
    let mut config = TietzeConfig::new(TIETZE_BUDGET);
    config.protected = twists;
    tietze_simplify_with(&p, &config).presentation
}

fn cbr_a1a1_abelian(s: &Settings) -> Result<TriState, Error> {
    let g = build_ceg(&a1a1(), s.max_vertices)?;
    let ab = abelianization(&fundamental_presentation(&g, true));
    let mut steps = vec![format!("abelianization: free rank {}, torsion {:?}", ab.free_rank, ab.torsion)];
    if ab.free_rank != 2 || !ab.torsion.is_empty() {
        return Ok(TriState::Refuted(steps.remove(0)));
    }
    let p = point_group_on_twists(&g);
    if p.generators() != ["t1", "t2"] {
        return Ok(TriState::Unknown(format!("twists do not generate after simplification: {p}")));
    }
    steps.push(format!("on twists: {p}"));
    let kb = knuth_bendix(&p, s.bounds.max_rules, s.bounds.max_len, LetterOrder::default());
    if !kb.is_confluent() {
        return Ok(TriState::Unknown("completion did not finish".into()));
    }
    steps.push(format!("confluent rewriting system with {} rules", kb.rule_count()));
    let (t1, t2) = (Word::generator(0), Word::generator(1));
    if kb.reduce(t1.concat(&t2).letters()) != kb.reduce(t2.concat(&t1).letters()) {
        return Ok(TriState::Refuted("t1 t2 and t2 t1 have different normal forms".into()));
    }
    steps.push("t1 t2 = t2 t1".into());
    const LEN: i64 = 6;
    let found: BTreeSet<Vec<Letter>> = kb.normal_forms(LEN as usize).into_iter().collect();
    let mut expected = BTreeSet::new();
    for a in -LEN..=LEN {
        for b in -(LEN - a.abs())..=LEN - a.abs() {
            expected.insert(t1.pow(a).concat(&t2.pow(b)).into_letters());
        }
    }
    if found != expected {
        return Ok(TriState::Refuted(format!(
            "normal forms up to length {LEN}: {} found, {} of the form t1^a t2^b",
            found.len(),
            expected.len()
        )));
    }
    steps.push(format!("normal forms up to length {LEN} are exactly the {} words t1^a t2^b", expected.len()));
    Ok(TriState::Verified(steps))
}

/// The 3-cycle `1 -> 2 -> 3 -> 1` with its cycle as potential.
pub fn three_cycle() -> Qp {
    let q = Quiver::from_edges(3, &[(1, 2), (2, 3), (3, 1)]).expect("valid quiver");
    let ids: Vec<String> = q.arrows().iter().map(|a| a.id.clone()).collect();
    Qp::new(q, Potential::from_cycles(&[&ids]), None).expect("composable")
}

fn dynkin_chain(s: &Settings) -> Result<TriState, Error> {
    let a3 = DynkinType::new(DynkinFamily::A, 3).expect("valid type");
    let r = dynkin_iso_chain(&three_cycle(), a3, &[1], s.max_vertices, &s.bounds)?;
    let names = Presentation::with_numbered("t", 3, Vec::new())?;
    let mut steps: Vec<String> =
        r.twist_images.iter().enumerate().map(|(i, w)| format!("b{} -> {}", i + 1, names.format_word(w))).collect();
    Ok(match r.status {
        TriState::Verified(more) => {
            steps.extend(more);
            TriState::Verified(steps)
        }
        other => other,
    })
}

/// The hexagon triangulated by the central triangle `0 2 4`.
pub fn central_triangle_qp() -> Result<Qp, Error> {
    Ok(polygon_triangulation(6, &[(0, 2), (2, 4), (4, 0)])?.qp())
}

fn at_cbr(s: &Settings) -> Result<TriState, Error> {
    let qp = central_triangle_qp()?;
    let at = build_at(&qp)?;
    let g = build_ceg(&Seed::from_quiver(&qp.quiver), s.max_vertices)?;
    let cbr = point_group_on_twists(&g);
    let n = qp.vertex_count();
    let to_cbr: Option<Vec<Word>> =
        (1..=n).map(|i| cbr.generator_index(&format!("t{i}")).map(Word::generator)).collect();
    let (Some(to_cbr), true) = (to_cbr, cbr.generator_count() == n) else {
        return Ok(TriState::Unknown(format!("simplified CBr is not on the twists: {cbr}")));
    };
    let mut to_at = vec![Word::empty(); n];
    for (i, w) in to_cbr.iter().enumerate() {
        to_at[w.letters()[0].generator()] = Word::generator(i);
    }
    Ok(all(vec![
        (format!("AT = {at}"), TriState::Verified(Vec::new())),
        (format!("simplified CBr = {cbr}"), TriState::Verified(Vec::new())),
        ("AT -> CBr, b_i -> t_i".into(), check_homomorphism(&at, &cbr, &to_cbr, &s.bounds)?),
        ("CBr -> AT, t_i -> b_i".into(), check_homomorphism(&cbr, &at, &to_at, &s.bounds)?),
    ]))
}

fn hexagon_redundancy(s: &Settings) -> Result<TriState, Error> {
    let mut results = Vec::new();
    for (name, seed) in [("A1xA1", a1a1()), ("A2", a2()), ("A3", dynkin_seed(DynkinFamily::A, 3))] {
        let g = build_ceg(&seed, s.max_vertices)?;
        let with = fundamental_presentation(&g, true);
        let without = fundamental_presentation(&g, false);
        let id = identity_images(with.generator_count());
        results.push((format!("{name} with -> without hexagons"), check_homomorphism(&with, &without, &id, &s.bounds)?));
        results.push((format!("{name} without -> with hexagons"), check_homomorphism(&without, &with, &id, &s.bounds)?));
    }
    Ok(all(results))
}

/// Checks `e^-1 t_i e = conjugate_twists(t_i)` for every edge `e` and
/// direction `i`, the right side read in the twist loops at the target.
pub fn conjugation_on(g: &ExchangeGraph, bounds: &Bounds) -> Result<TriState, Error> {
    let pg = PointGroup::new(g, true, &SpanningTree::Bfs);
    let mut oracle = WordOracle::new(&pg.presentation, bounds);
    let mut checked = 0;
    for v in 0..g.vertex_count() {
        let q = g.seed(v).quiver();
        for j in 0..g.rank() {
            let e = g.edge(v, j);
            let x = pg.path_word(&[g.edge_id(v, j)]);
            let there: Vec<Word> = (0..g.rank()).map(|i| pg.twist_loop(g, e.target, e.relabel[i]).word).collect();
            for (i, image) in conjugate_twists(&q, j, 3)?.iter().enumerate() {
                let lhs = x.conjugate(&pg.twist_loop(g, v, i).word);
                match oracle.equal(&lhs, &image.substitute(&there)) {
                    TriState::Verified(_) => checked += 1,
                    TriState::Refuted(w) => {
                        return Ok(TriState::Refuted(format!("vertex {v}, direction {}, twist {}: {w}", j + 1, i + 1)))
                    }
                    TriState::Unknown(w) => {
                        return Ok(TriState::Unknown(format!("vertex {v}, direction {}, twist {}: {w}", j + 1, i + 1)))
                    }
                }
            }
        }
    }
    Ok(TriState::Verified(vec![format!("{checked} edge/twist pairs")]))
}

fn conjugation(s: &Settings) -> Result<TriState, Error> {
    let mut results = Vec::new();
    for rank in [2, 3] {
        let g = build_ceg(&dynkin_seed(DynkinFamily::A, rank), s.max_vertices)?;
        results.push((format!("A{rank}"), conjugation_on(&g, &s.bounds)?));
    }
    Ok(all(results))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let names: BTreeSet<&str> = CLAIMS.iter().map(|c| c.name).collect();
        assert_eq!(names.len(), CLAIMS.len());
        assert!(matches!(find("no-such-claim"), Err(Error::UnknownClaim(_))));
    }

    #[test]
    fn pattern_detection() {
        let p = Presentation::with_numbered("x", 2, vec![Word::from_signed(&[-2, -2, -2, 1, 1])]).unwrap();
        assert_eq!(two_three_pattern(&p), Some((0, 1, 1, -1)));
        let q = Presentation::with_numbered("x", 2, vec![Word::from_signed(&[1, 1, 2, 2])]).unwrap();
        assert_eq!(two_three_pattern(&q), None);
    }
}
