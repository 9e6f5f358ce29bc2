//! Reidemeister moves on strands, crossing relabelings and alternative
//! terminal choices, for invariance testing.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::{
    validate, Corner, DiagramBuilder, DiagramError, GraphDiagram, NodeKind, OverPair, Part, Pass, Port,
};
use crate::resolve::ResolveOptions;

#[derive(Debug, Error)]
pub enum MoveError {
    #[error("site does not match the move pattern: {0}")]
    PatternMismatch(String),
    #[error("site touches a graph vertex")]
    SiteTouchesVertex,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    R1Plus,
    R1Minus,
    R2Plus,
    R2Minus,
    R3,
    Relabel,
}

impl MoveKind {
    pub const REIDEMEISTER: [MoveKind; 5] =
        [MoveKind::R1Plus, MoveKind::R1Minus, MoveKind::R2Plus, MoveKind::R2Minus, MoveKind::R3];
}

/// Where a move applies. Region ids refer to `GraphDiagram::compute_regions`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoveSite {
    /// Kink on arc `segment` of `edge`. Bit 0 of `variant` picks the side,
    /// bit 1 the over pair.
    R1Plus { edge: usize, segment: usize, variant: u8 },
    /// Remove the kink made by passes `index` and `index + 1` of `edge`.
    R1Minus { edge: usize, index: usize },
    /// Push the boundary arc at corner `a` of `region` across the region
    /// and over (or under) the arc at corner `b`.
    R2Plus { region: usize, a: usize, b: usize, a_over: bool },
    /// Remove a bigon region.
    R2Minus { region: usize },
    /// Pass a strand across the opposite crossing of a triangle region.
    R3 { region: usize },
    /// Rename crossing `i` (in node order among crossings) to the id of crossing `perm[i]`.
    Relabel { perm: Vec<usize> },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::R1Plus { .. } => MoveKind::R1Plus,
            MoveSite::R1Minus { .. } => MoveKind::R1Minus,
            MoveSite::R2Plus { .. } => MoveKind::R2Plus,
            MoveSite::R2Minus { .. } => MoveKind::R2Minus,
            MoveSite::R3 { .. } => MoveKind::R3,
            MoveSite::Relabel { .. } => MoveKind::Relabel,
        }
    }
}

/// The arc entering a face corner, traversed with the face on the left.
#[derive(Clone, Copy, Debug)]
struct Side {
    edge: usize,
    segment: usize,
    /// Traversal agrees with the edge orientation.
    forward: bool,
    /// Node at the end of the traversal (the corner's node).
    end: usize,
    /// Node at the start of the traversal.
    start: usize,
}

fn side(d: &GraphDiagram, c: Corner) -> Side {
    let deg = d.node(c.node).degree();
    let q = Port { node: c.node, slot: (c.gap + 1) % deg };
    let (p, ai) = d.partner(q).expect("valid diagram");
    let arc = &d.arcs()[ai];
    Side { edge: arc.edge, segment: arc.seq, forward: arc.to == q, end: q.node, start: p.node }
}

fn over_at(d: &GraphDiagram, p: &Pass) -> bool {
    match d.node(p.node).kind {
        NodeKind::Crossing { over } => over.contains(p.enter),
        NodeKind::Vertex { .. } => unreachable!("passes are at double points"),
    }
}

/// Renames double points `x1..xn` in canonical order and sorts nodes:
/// vertices first, then double points.
pub fn canonicalize(d: &GraphDiagram) -> Result<GraphDiagram, MoveError> {
    let b = DiagramBuilder::from_diagram(d)?;
    let rank = d.canonical_node_order();
    let mut order: Vec<usize> = (0..b.nodes.len()).collect();
    order.sort_by_key(|&i| (b.nodes[i].is_crossing(), if b.nodes[i].is_crossing() { rank[i] } else { i }));
    let mut remap = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        remap[old] = new;
    }
    let mut out = DiagramBuilder::new();
    let mut k = 0;
    for &old in &order {
        let mut n = b.nodes[old].clone();
        if n.is_crossing() {
            k += 1;
            n.id = format!("x{k}");
        }
        out.nodes.push(n);
    }
    out.edges = b.edges.clone();
    for e in &mut out.edges {
        e.tail = remap[e.tail];
        e.head = remap[e.head];
    }
    out.paths = b.paths.clone();
    for p in &mut out.paths {
        for q in &mut p.passes {
            q.node = remap[q.node];
        }
    }
    Ok(out.build()?)
}

fn finish(b: DiagramBuilder) -> Result<GraphDiagram, MoveError> {
    let d = b.build()?;
    d.compute_regions()?;
    let report = validate(&d);
    if !report.is_valid() {
        return Err(DiagramError::Invalid(report.to_string()).into());
    }
    canonicalize(&d)
}

pub fn apply_move(d: &GraphDiagram, site: &MoveSite) -> Result<GraphDiagram, MoveError> {
    let mut b = DiagramBuilder::from_diagram(d)?;
    match site {
        MoveSite::R1Plus { edge, segment, variant } => {
            let path = b.paths.get(*edge).ok_or_else(|| MoveError::PatternMismatch("no such edge".into()))?;
            if *segment > path.passes.len() {
                return Err(MoveError::PatternMismatch("no such segment".into()));
            }
            let over = if variant & 2 == 0 { OverPair::Slots02 } else { OverPair::Slots13 };
            let id = b.fresh_id("x");
            let x = b.add_crossing(id, over);
            let kink = if variant & 1 == 0 {
                [Pass { node: x, enter: 0, exit: 2 }, Pass { node: x, enter: 1, exit: 3 }]
            } else {
                [Pass { node: x, enter: 0, exit: 2 }, Pass { node: x, enter: 3, exit: 1 }]
            };
            let passes = &mut b.paths[*edge].passes;
            passes.splice(*segment..*segment, kink);
            finish(b)
        }
        MoveSite::R1Minus { edge, index } => {
            let passes = &b.paths.get(*edge).ok_or_else(|| MoveError::PatternMismatch("no such edge".into()))?.passes;
            let (Some(p), Some(q)) = (passes.get(*index), passes.get(index + 1)) else {
                return Err(MoveError::PatternMismatch("no such pass pair".into()));
            };
            if p.node != q.node || (p.exit + 4 - q.enter) % 2 == 0 {
                return Err(MoveError::PatternMismatch("passes do not form a kink".into()));
            }
            b.paths[*edge].passes.drain(*index..index + 2);
            b.prune_crossings();
            finish(b)
        }
        MoveSite::R2Plus { region, a, b: bc, a_over } => {
            let regions = d.compute_regions()?;
            let r = regions.get(*region).ok_or_else(|| MoveError::PatternMismatch("no such region".into()))?;
            let (Some(&ca), Some(&cb)) = (r.boundary.get(*a), r.boundary.get(*bc)) else {
                return Err(MoveError::PatternMismatch("no such corner".into()));
            };
            let (sa, sb) = (side(d, ca), side(d, cb));
            if (sa.edge, sa.segment) == (sb.edge, sb.segment) {
                return Err(MoveError::PatternMismatch("both corners lie on one arc".into()));
            }
            let over = if *a_over { OverPair::Slots13 } else { OverPair::Slots02 };
            let xid = b.fresh_id("x");
            let x = b.add_crossing(xid, over);
            let yid = b.fresh_id("x");
            let y = b.add_crossing(yid, over);
            // traversal order: a goes X(1->3), Y(3->1); b goes Y(2->0), X(2->0)
            let ins_a = orient(sa.forward, [Pass { node: x, enter: 1, exit: 3 }, Pass { node: y, enter: 3, exit: 1 }]);
            let ins_b = orient(sb.forward, [Pass { node: y, enter: 2, exit: 0 }, Pass { node: x, enter: 2, exit: 0 }]);
            let mut inserts = [(sa.edge, sa.segment, ins_a), (sb.edge, sb.segment, ins_b)];
            inserts.sort_by_key(|t| std::cmp::Reverse((t.0, t.1)));
            for (e, s, ins) in inserts {
                b.paths[e].passes.splice(s..s, ins);
            }
            finish(b)
        }
        MoveSite::R2Minus { region } => {
            let regions = d.compute_regions()?;
            let r = regions.get(*region).ok_or_else(|| MoveError::PatternMismatch("no such region".into()))?;
            if r.boundary.len() != 2 {
                return Err(MoveError::PatternMismatch("region is not a bigon".into()));
            }
            let sides = strand_sides(d, &r.boundary)?;
            let mut overs = Vec::new();
            for s in &sides {
                let ps = &b.paths[s.edge].passes;
                overs.push((over_at(d, &ps[s.segment - 1]), over_at(d, &ps[s.segment])));
            }
            if overs[0].0 != overs[0].1 {
                return Err(MoveError::PatternMismatch("bigon is not coherent".into()));
            }
            let mut drop: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
            for s in &sides {
                drop.entry(s.edge).or_default().extend([s.segment - 1, s.segment]);
            }
            for (e, idx) in drop {
                for i in idx.into_iter().rev() {
                    b.paths[e].passes.remove(i);
                }
            }
            b.prune_crossings();
            finish(b)
        }
        MoveSite::R3 { region } => {
            let regions = d.compute_regions()?;
            let r = regions.get(*region).ok_or_else(|| MoveError::PatternMismatch("no such region".into()))?;
            if r.boundary.len() != 3 || r.nodes().len() != 3 {
                return Err(MoveError::PatternMismatch("region is not a triangle".into()));
            }
            let sides = strand_sides(d, &r.boundary)?;
            let mut over_count = Vec::new();
            for s in &sides {
                let ps = &b.paths[s.edge].passes;
                over_count.push(usize::from(over_at(d, &ps[s.segment - 1])) + usize::from(over_at(d, &ps[s.segment])));
            }
            over_count.sort_unstable();
            if over_count != [0, 1, 2] {
                return Err(MoveError::PatternMismatch("triangle has a cyclic over/under pattern".into()));
            }
            for s in &sides {
                b.paths[s.edge].passes.swap(s.segment - 1, s.segment);
            }
            finish(b)
        }
        MoveSite::Relabel { perm } => {
            let xs: Vec<usize> = d.crossing_indices().collect();
            let mut sorted = perm.clone();
            sorted.sort_unstable();
            if sorted != (0..xs.len()).collect::<Vec<_>>() {
                return Err(MoveError::PatternMismatch("not a permutation of the double points".into()));
            }
            let ids: Vec<String> = xs.iter().map(|&x| d.node(x).id.clone()).collect();
            for (i, &x) in xs.iter().enumerate() {
                b.nodes[x].id = ids[perm[i]].clone();
            }
            Ok(b.build()?)
        }
    }
}

fn orient(forward: bool, seq: [Pass; 2]) -> [Pass; 2] {
    if forward {
        seq
    } else {
        [seq[1].reversed(), seq[0].reversed()]
    }
}

/// Sides of a region whose corners are all double points, each an interior
/// arc of its edge (between passes `segment - 1` and `segment`).
fn strand_sides(d: &GraphDiagram, boundary: &[Corner]) -> Result<Vec<Side>, MoveError> {
    if boundary.iter().any(|c| !d.node(c.node).is_crossing()) {
        return Err(MoveError::SiteTouchesVertex);
    }
    let sides: Vec<Side> = boundary.iter().map(|&c| side(d, c)).collect();
    for s in &sides {
        if !d.node(s.start).is_crossing() || s.start == s.end {
            return Err(MoveError::PatternMismatch("side is not an arc between two double points".into()));
        }
    }
    let arcs: BTreeSet<(usize, usize)> = sides.iter().map(|s| (s.edge, s.segment)).collect();
    if arcs.len() != sides.len() {
        return Err(MoveError::PatternMismatch("region repeats an arc".into()));
    }
    Ok(sides)
}

/// All sites of one kind, in a deterministic order.
pub fn enumerate_sites(d: &GraphDiagram, kind: MoveKind) -> Vec<MoveSite> {
    let Ok(b) = DiagramBuilder::from_diagram(d) else { return Vec::new() };
    let regions = d.compute_regions().unwrap_or_default();
    let mut out = Vec::new();
    match kind {
        MoveKind::R1Plus => {
            for (e, p) in b.paths.iter().enumerate() {
                for segment in 0..=p.passes.len() {
                    for variant in 0..4 {
                        out.push(MoveSite::R1Plus { edge: e, segment, variant });
                    }
                }
            }
        }
        MoveKind::R1Minus => {
            for (e, p) in b.paths.iter().enumerate() {
                for (index, w) in p.passes.windows(2).enumerate() {
                    if w[0].node == w[1].node && (w[0].exit + 4 - w[1].enter) % 2 == 1 {
                        out.push(MoveSite::R1Minus { edge: e, index });
                    }
                }
            }
        }
        MoveKind::R2Plus => {
            for r in &regions {
                let k = r.boundary.len();
                for a in 0..k {
                    for bc in 0..k {
                        if a == bc {
                            continue;
                        }
                        let (sa, sb) = (side(d, r.boundary[a]), side(d, r.boundary[bc]));
                        if (sa.edge, sa.segment) == (sb.edge, sb.segment) {
                            continue;
                        }
                        for a_over in [true, false] {
                            out.push(MoveSite::R2Plus { region: r.id, a, b: bc, a_over });
                        }
                    }
                }
            }
        }
        MoveKind::R2Minus | MoveKind::R3 => {
            for r in &regions {
                let site = if kind == MoveKind::R2Minus {
                    MoveSite::R2Minus { region: r.id }
                } else {
                    MoveSite::R3 { region: r.id }
                };
                let want = if kind == MoveKind::R2Minus { 2 } else { 3 };
                if r.boundary.len() == want && r.nodes().len() == want && apply_move(d, &site).is_ok() {
                    out.push(site);
                }
            }
        }
        MoveKind::Relabel => {
            let n = d.num_crossings();
            if n > 1 {
                out.push(MoveSite::Relabel { perm: (0..n).rev().collect() });
                out.push(MoveSite::Relabel { perm: (0..n).map(|i| (i + 1) % n).collect() });
            }
        }
    }
    out
}

/// Every single-vertex change of terminal slot away from the default,
/// for all `V2` vertices other than `u`.
pub fn terminal_choices(d: &GraphDiagram, u: usize) -> Vec<ResolveOptions> {
    let mut out = Vec::new();
    for v in d.vertices_in(Part::V2).filter(|&v| v != u) {
        for slot in 0..d.node(v).degree() {
            let mut o = ResolveOptions::default();
            o.terminals.insert(v, slot);
            out.push(o);
        }
    }
    out
}

/// `steps` random Reidemeister moves chosen by a seeded generator. Moves
/// that add double points are skipped once the diagram has `cap` of them.
pub fn perturb(d: &GraphDiagram, seed: u64, steps: usize, cap: usize) -> Result<GraphDiagram, MoveError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = canonicalize(d)?;
    for _ in 0..steps {
        let mut kinds = MoveKind::REIDEMEISTER.to_vec();
        if cur.num_crossings() >= cap {
            kinds.retain(|k| !matches!(k, MoveKind::R1Plus | MoveKind::R2Plus));
        }
        kinds.shuffle(&mut rng);
        for kind in kinds {
            let sites = enumerate_sites(&cur, kind);
            if sites.is_empty() {
                continue;
            }
            let site = &sites[rng.gen_range(0..sites.len())];
            cur = apply_move(&cur, site)?;
            break;
        }
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    const THETA: &str = "vertex u V2 3\nvertex v V1 3\nedge e1 u v\nedge e2 u v\nedge e3 u v\n\
arc a1 e1 0 u.0 v.2\narc a2 e2 0 u.1 v.1\narc a3 e3 0 u.2 v.0\n";

    #[test]
    fn theta_sites() {
        let d = parse_diagram(THETA).unwrap();
        assert!(enumerate_sites(&d, MoveKind::R1Plus).len() >= 3);
        assert!(enumerate_sites(&d, MoveKind::R2Minus).is_empty());
        for s in enumerate_sites(&d, MoveKind::R1Plus) {
            let k = apply_move(&d, &s).unwrap();
            assert_eq!(k.num_crossings(), 1);
            let back = enumerate_sites(&k, MoveKind::R1Minus);
            assert_eq!(back.len(), 1);
            assert_eq!(apply_move(&k, &back[0]).unwrap(), canonicalize(&d).unwrap());
        }
    }

    #[test]
    fn r2_round_trip() {
        let d = parse_diagram(THETA).unwrap();
        let sites = enumerate_sites(&d, MoveKind::R2Plus);
        assert!(!sites.is_empty());
        for s in sites {
            let two = apply_move(&d, &s).unwrap();
            assert_eq!(two.num_crossings(), 2);
            let back = enumerate_sites(&two, MoveKind::R2Minus);
            assert!(!back.is_empty(), "no bigon after {s:?}");
            assert_eq!(apply_move(&two, &back[0]).unwrap(), canonicalize(&d).unwrap());
        }
    }
}
