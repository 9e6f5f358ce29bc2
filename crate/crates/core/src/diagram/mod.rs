//! Combinatorial planar diagrams of bipartite spatial graphs.
//!
//! A diagram is a rotation system: every node (graph vertex or double
//! point) has numbered slots in counterclockwise order, and arcs join
//! slot to slot. Edges are oriented from their `V2` tail to their `V1`
//! head and are chains of arcs passing straight through double points.

mod build;
mod faces;
mod parse;
mod pd;
mod validate;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use build::{DiagramBuilder, EdgePath, Pass};
pub use faces::{Corner, Face, RotationSystem};
pub use parse::{parse_diagram, ParseError};
pub use pd::{knot_from_pd, PdCrossing};
pub use validate::{validate, Check, CheckKind, ValidationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    V1,
    V2,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Part::V1 => "V1",
            Part::V2 => "V2",
        })
    }
}

/// The pair of opposite slots carrying the over-strand at a double point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OverPair {
    Slots02,
    Slots13,
}

impl OverPair {
    pub fn contains(self, slot: usize) -> bool {
        match self {
            OverPair::Slots02 => slot.is_multiple_of(2),
            OverPair::Slots13 => slot % 2 == 1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            OverPair::Slots02 => OverPair::Slots13,
            OverPair::Slots13 => OverPair::Slots02,
        }
    }

    fn token(self) -> &'static str {
        match self {
            OverPair::Slots02 => "02",
            OverPair::Slots13 => "13",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Vertex { part: Part, valency: usize },
    Crossing { over: OverPair },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub kind: NodeKind,
}

impl Node {
    pub fn degree(&self) -> usize {
        match self.kind {
            NodeKind::Vertex { valency, .. } => valency,
            NodeKind::Crossing { .. } => 4,
        }
    }

    pub fn part(&self) -> Option<Part> {
        match self.kind {
            NodeKind::Vertex { part, .. } => Some(part),
            NodeKind::Crossing { .. } => None,
        }
    }

    pub fn is_crossing(&self) -> bool {
        matches!(self.kind, NodeKind::Crossing { .. })
    }
}

/// A slot of a node, addressed by node index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub node: usize,
    pub slot: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub id: String,
    pub edge: usize,
    pub seq: usize,
    pub from: Port,
    pub to: Port,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("rotation system is not planar: V'-E'+F = {value}, expected 2")]
    EulerMismatch { value: i64 },
    #[error("slot {slot} of node {node} is not attached to any arc")]
    FreeSlot { node: String, slot: usize },
    #[error("diagram is not connected")]
    NotConnected,
    #[error("edge {edge} is not a coherent arc chain: {reason}")]
    BrokenChain { edge: String, reason: String },
    #[error("diagram is invalid: {0}")]
    Invalid(String),
}

/// Parsed diagram. Immutable once built; cross references are indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDiagram {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    arcs: Vec<Arc>,
    node_index: HashMap<String, usize>,
    // links[node][slot] = (opposite port, arc index)
    links: Vec<Vec<Option<(Port, usize)>>>,
}

impl GraphDiagram {
    /// Assembles a diagram from already cross-checked parts. Callers guarantee
    /// that ids are unique, references are in range and no slot is used twice.
    pub(crate) fn from_parts(nodes: Vec<Node>, edges: Vec<Edge>, arcs: Vec<Arc>) -> Self {
        let node_index = nodes.iter().enumerate().map(|(i, n)| (n.id.clone(), i)).collect();
        let mut links: Vec<Vec<Option<(Port, usize)>>> =
            nodes.iter().map(|n| vec![None; n.degree()]).collect();
        for (ai, a) in arcs.iter().enumerate() {
            links[a.from.node][a.from.slot] = Some((a.to, ai));
            links[a.to.node][a.to.slot] = Some((a.from, ai));
        }
        GraphDiagram { nodes, edges, arcs, node_index, links }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Node {
        &self.nodes[i]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn node_by_id(&self, id: &str) -> Option<usize> {
        self.node_index.get(id).copied()
    }

    pub fn vertex_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| !self.nodes[i].is_crossing())
    }

    pub fn crossing_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].is_crossing())
    }

    pub fn vertices_in(&self, part: Part) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(move |&i| self.nodes[i].part() == Some(part))
    }

    pub fn num_crossings(&self) -> usize {
        self.crossing_indices().count()
    }

    /// The port at the other end of the arc attached to `p`, with that arc's index.
    pub fn partner(&self, p: Port) -> Option<(Port, usize)> {
        self.links.get(p.node)?.get(p.slot).copied().flatten()
    }

    /// Edges incident to vertex `v`, in slot order.
    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        (0..self.nodes[v].degree())
            .filter_map(|s| self.partner(Port { node: v, slot: s }).map(|(_, a)| self.arcs[a].edge))
            .collect()
    }

    /// Edge whose arc occupies slot `slot` of vertex `v`.
    pub fn edge_at(&self, v: usize, slot: usize) -> Option<usize> {
        self.partner(Port { node: v, slot }).map(|(_, a)| self.arcs[a].edge)
    }

    pub fn rotation_system(&self) -> RotationSystem {
        RotationSystem::new(
            self.nodes.iter().map(Node::degree).collect(),
            self.links.iter().map(|row| row.iter().map(|l| l.map(|(p, _)| p)).collect()).collect(),
        )
    }

    /// Number of connected components of the underlying node graph.
    pub fn component_count(&self) -> usize {
        self.components().1
    }

    /// Component label per node and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.nodes.len();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            label[start] = count;
            while let Some(x) = stack.pop() {
                for l in self.links[x].iter().flatten() {
                    let y = l.0.node;
                    if label[y] == usize::MAX {
                        label[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Decomposes every edge into its pass sequence through double points.
    pub fn edge_paths(&self) -> Result<Vec<EdgePath>, DiagramError> {
        (0..self.edges.len()).map(|e| self.edge_path(e)).collect()
    }

    pub fn edge_path(&self, e: usize) -> Result<EdgePath, DiagramError> {
        let edge = &self.edges[e];
        let broken = |reason: String| DiagramError::BrokenChain { edge: edge.id.clone(), reason };
        let mut chain: Vec<&Arc> = self.arcs.iter().filter(|a| a.edge == e).collect();
        chain.sort_by_key(|a| a.seq);
        if chain.is_empty() {
            return Err(broken("no arcs".into()));
        }
        if let Some((i, a)) = chain.iter().enumerate().find(|(i, a)| a.seq != *i) {
            return Err(broken(format!("arc {} has sequence {} at position {i}", a.id, a.seq)));
        }
        let first = chain[0];
        let last = chain[chain.len() - 1];
        if first.from.node != edge.tail {
            return Err(broken(format!("arc {} does not start at the tail", first.id)));
        }
        if last.to.node != edge.head {
            return Err(broken(format!("arc {} does not end at the head", last.id)));
        }
        let mut passes = Vec::new();
        for w in chain.windows(2) {
            let (a, b) = (w[0], w[1]);
            let x = a.to.node;
            if b.from.node != x || !self.nodes[x].is_crossing() {
                return Err(broken(format!("arcs {} and {} do not meet at a double point", a.id, b.id)));
            }
            if (a.to.slot + 2) % 4 != b.from.slot {
                return Err(broken(format!("arcs {} and {} turn at {}", a.id, b.id, self.nodes[x].id)));
            }
            passes.push(Pass { node: x, enter: a.to.slot, exit: b.from.slot });
        }
        Ok(EdgePath { edge: e, tail_slot: first.from.slot, passes, head_slot: last.to.slot })
    }

    /// Canonical rank of every node: vertices by id, then double points in
    /// the order they are first met when walking edges in order. Independent
    /// of double point ids.
    pub fn canonical_node_order(&self) -> Vec<usize> {
        let mut verts: Vec<usize> = self.vertex_indices().collect();
        verts.sort_by(|&a, &b| self.nodes[a].id.cmp(&self.nodes[b].id));
        let mut order = verts;
        let mut seen = vec![false; self.nodes.len()];
        for e in 0..self.edges.len() {
            let mut chain: Vec<&Arc> = self.arcs.iter().filter(|a| a.edge == e).collect();
            chain.sort_by_key(|a| a.seq);
            for a in chain {
                for x in [a.from.node, a.to.node] {
                    if self.nodes[x].is_crossing() && !seen[x] {
                        seen[x] = true;
                        order.push(x);
                    }
                }
            }
        }
        order.extend(self.crossing_indices().filter(|&x| !seen[x]));
        let mut rank = vec![0; self.nodes.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        rank
    }

    /// Serialises to the `.bsg` text format; `parse_diagram` reads it back unchanged.
    pub fn to_bsg(&self) -> String {
        let mut out = String::new();
        for n in &self.nodes {
            match n.kind {
                NodeKind::Vertex { part, valency } => {
                    out.push_str(&format!("vertex {} {} {}\n", n.id, part, valency))
                }
                NodeKind::Crossing { over } => {
                    out.push_str(&format!("cross {} {}\n", n.id, over.token()))
                }
            }
        }
        for e in &self.edges {
            out.push_str(&format!(
                "edge {} {} {}\n",
                e.id, self.nodes[e.tail].id, self.nodes[e.head].id
            ));
        }
        for a in &self.arcs {
            out.push_str(&format!(
                "arc {} {} {} {}.{} {}.{}\n",
                a.id,
                self.edges[a.edge].id,
                a.seq,
                self.nodes[a.from.node].id,
                a.from.slot,
                self.nodes[a.to.node].id,
                a.to.slot
            ));
        }
        out
    }

    /// Faces of the rotation system with canonical ids; each component is
    /// embedded in its own sphere.
    pub fn compute_regions(&self) -> Result<Vec<Region>, DiagramError> {
        for (i, row) in self.links.iter().enumerate() {
            if let Some(s) = row.iter().position(Option::is_none) {
                return Err(DiagramError::FreeSlot { node: self.nodes[i].id.clone(), slot: s });
            }
        }
        let rs = self.rotation_system();
        let faces = rs.faces();
        let euler = rs.euler_characteristic(faces.len());
        if euler != 2 * self.component_count() as i64 {
            return Err(DiagramError::EulerMismatch { value: euler });
        }
        let rank = self.canonical_node_order();
        Ok(canonical_regions(faces, |c| (rank[c.node], c.gap)))
    }
}

/// A face of a diagram: its boundary corners in traversal order (face on
/// the left), starting from the least corner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub id: usize,
    pub boundary: Vec<Corner>,
}

impl Region {
    pub fn touches(&self, node: usize) -> bool {
        self.boundary.iter().any(|c| c.node == node)
    }

    pub fn nodes(&self) -> std::collections::BTreeSet<usize> {
        self.boundary.iter().map(|c| c.node).collect()
    }
}

/// Sorts faces by their least corner under `key`, rotates every boundary to
/// start there, and numbers them.
pub(crate) fn canonical_regions<K: Ord + Copy>(
    faces: Vec<Face>,
    key: impl Fn(&Corner) -> K,
) -> Vec<Region> {
    let mut keyed: Vec<(K, Vec<Corner>)> = faces
        .into_iter()
        .map(|f| {
            let (pos, k) = f
                .corners
                .iter()
                .enumerate()
                .map(|(i, c)| (i, key(c)))
                .min_by_key(|&(_, k)| k)
                .expect("empty face");
            let mut b = f.corners;
            b.rotate_left(pos);
            (k, b)
        })
        .collect();
    keyed.sort_by_key(|(k, _)| *k);
    keyed.into_iter().enumerate().map(|(id, (_, boundary))| Region { id, boundary }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const THETA: &str = "\
vertex u1 V2 3
vertex v1 V1 3
edge e1 u1 v1
edge e2 u1 v1
edge e3 u1 v1
arc a1 e1 0 u1.0 v1.2
arc a2 e2 0 u1.1 v1.1
arc a3 e3 0 u1.2 v1.0
";

    #[test]
    fn theta_regions() {
        let d = parse_diagram(THETA).unwrap();
        assert_eq!(d.nodes().len(), 2);
        assert_eq!(d.arcs().len(), 3);
        let r = d.compute_regions().unwrap();
        assert_eq!(r.len(), 3);
        let mut all: Vec<Corner> = r.iter().flat_map(|x| x.boundary.clone()).collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 6);
    }

    #[test]
    fn non_planar_rotation_detected() {
        // same cyclic order at both ends of three parallel edges is a torus embedding
        let bad = THETA.replace("u1.0 v1.2", "u1.0 v1.0").replace("u1.2 v1.0", "u1.2 v1.2");
        let d = parse_diagram(&bad).unwrap();
        assert!(matches!(d.compute_regions(), Err(DiagramError::EulerMismatch { value: 0 })));
    }

    #[test]
    fn round_trip() {
        let d = parse_diagram(THETA).unwrap();
        assert_eq!(parse_diagram(&d.to_bsg()).unwrap(), d);
    }
}
