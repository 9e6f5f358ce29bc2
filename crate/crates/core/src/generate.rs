//! Diagram families: theta-curves, pendant pairs, disjoint unions and
//! random valid diagrams.

use rand::Rng;

use crate::diagram::{Corner, DiagramBuilder, GraphDiagram, NodeKind, Part, Pass};
use crate::moves::{perturb, MoveError};

fn add_theta(b: &mut DiagramBuilder, k: usize, u: &str, v: &str, edge_prefix: &str) -> (usize, usize) {
    let u = b.add_vertex(u, Part::V2, k);
    let v = b.add_vertex(v, Part::V1, k);
    for i in 0..k {
        b.add_edge(format!("{edge_prefix}{}", i + 1), u, v, i, Vec::new(), k - 1 - i);
    }
    (u, v)
}

/// `u1` and `v1` joined by `k` parallel edges, no double points.
pub fn theta(k: usize) -> GraphDiagram {
    let mut b = DiagramBuilder::new();
    add_theta(&mut b, k, "u1", "v1", "e");
    b.build().expect("theta is valid")
}

/// Two disjoint theta-curves.
pub fn theta_theta() -> GraphDiagram {
    let mut b = DiagramBuilder::new();
    add_theta(&mut b, 3, "u1", "v1", "e");
    add_theta(&mut b, 3, "u2", "v2", "f");
    b.build().expect("two thetas")
}

/// A `k`-theta with a pendant pair hung on `v1`: `u2` (in `V2`) joined to
/// `v1` by `links` edges and to the valency-1 vertex `v2`.
pub fn pendant(k: usize, links: usize) -> GraphDiagram {
    let mut b = DiagramBuilder::new();
    let (_, v) = add_theta(&mut b, k, "u1", "v1", "e");
    if let NodeKind::Vertex { valency, .. } = &mut b.nodes[v].kind {
        *valency += links;
    }
    let a = b.add_vertex("u2", Part::V2, links + 1);
    let p = b.add_vertex("v2", Part::V1, 1);
    for i in 0..links {
        b.add_edge(format!("f{}", i + 1), a, v, i, Vec::new(), k + links - 1 - i);
    }
    b.add_edge("g1", a, p, links, Vec::new(), 0);
    b.build().expect("pendant graph is valid")
}

/// Pendant graphs with and without double points; at least 12 of them.
pub fn pendant_family() -> Vec<(String, GraphDiagram)> {
    let mut out = Vec::new();
    for k in 2..=4 {
        for links in 1..=2 {
            let d = pendant(k, links);
            let seed = (10 * k + links) as u64;
            let p = perturb(&d, seed, 4, 4).expect("moves on a valid diagram");
            out.push((format!("pendant_k{k}_l{links}"), d));
            out.push((format!("pendant_k{k}_l{links}_s{seed}"), p));
        }
    }
    out
}

fn insert_slot(b: &mut DiagramBuilder, n: usize, at: usize) {
    if let NodeKind::Vertex { valency, .. } = &mut b.nodes[n].kind {
        *valency += 1;
    }
    for (e, p) in b.paths.iter_mut().enumerate() {
        if b.edges[e].tail == n && p.tail_slot >= at {
            p.tail_slot += 1;
        }
        if b.edges[e].head == n && p.head_slot >= at {
            p.head_slot += 1;
        }
    }
}

/// Replaces segment `seg` of edge `e` (running `V2 -> V1`) by a path
/// through a new `V1` vertex and a new `V2` vertex of valency 2.
fn subdivide(b: &mut DiagramBuilder, e: usize, seg: usize) {
    let id1 = b.fresh_id("v");
    let n1 = b.add_vertex(id1, Part::V1, 2);
    let id2 = b.fresh_id("u");
    let n2 = b.add_vertex(id2, Part::V2, 2);
    let head = b.edges[e].head;
    let head_slot = b.paths[e].head_slot;
    let rest: Vec<Pass> = b.paths[e].passes.split_off(seg);
    b.edges[e].head = n1;
    b.paths[e].head_slot = 0;
    let f = b.fresh_id("e");
    b.add_edge(f, n2, n1, 0, Vec::new(), 1);
    let g = b.fresh_id("e");
    b.add_edge(g, n2, head, 1, rest, head_slot);
}

/// Joins a `V2` corner and a `V1` corner of one region by a new edge.
fn chord(b: &mut DiagramBuilder, a: Corner, c: Corner) {
    insert_slot(b, a.node, a.gap + 1);
    insert_slot(b, c.node, c.gap + 1);
    let id = b.fresh_id("e");
    b.add_edge(id, a.node, c.node, a.gap + 1, Vec::new(), c.gap + 1);
}

/// A random connected, balanced diagram: a theta-curve grown by
/// subdivisions and chords, then scrambled by Reidemeister moves.
pub fn random_diagram<R: Rng>(rng: &mut R, max_crossings: usize) -> Result<GraphDiagram, MoveError> {
    let mut d = theta(rng.gen_range(2..=4));
    for _ in 0..rng.gen_range(0..=2) {
        let mut b = DiagramBuilder::from_diagram(&d)?;
        let e = rng.gen_range(0..b.edges.len());
        let seg = rng.gen_range(0..=b.paths[e].passes.len());
        subdivide(&mut b, e, seg);
        d = b.build()?;
    }
    for _ in 0..rng.gen_range(0..=2) {
        let regions = d.compute_regions()?;
        let r = &regions[rng.gen_range(0..regions.len())];
        let pick = |part: Part| -> Vec<Corner> {
            r.boundary.iter().copied().filter(|c| d.node(c.node).part() == Some(part)).collect()
        };
        let (us, vs) = (pick(Part::V2), pick(Part::V1));
        if us.is_empty() || vs.is_empty() {
            continue;
        }
        let mut b = DiagramBuilder::from_diagram(&d)?;
        chord(&mut b, us[rng.gen_range(0..us.len())], vs[rng.gen_range(0..vs.len())]);
        d = b.build()?;
    }
    let steps = rng.gen_range(0..=8);
    perturb(&d, rng.gen(), steps, max_crossings)
}
