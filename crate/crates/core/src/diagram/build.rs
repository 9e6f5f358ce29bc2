use std::collections::HashMap;

use super::{Arc, DiagramError, Edge, GraphDiagram, Node, NodeKind, OverPair, Part, Port};

/// One passage of an edge straight through a double point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pass {
    pub node: usize,
    pub enter: usize,
    pub exit: usize,
}

impl Pass {
    pub fn new(node: usize, enter: usize) -> Self {
        Pass { node, enter, exit: (enter + 2) % 4 }
    }

    pub fn reversed(self) -> Self {
        Pass { node: self.node, enter: self.exit, exit: self.enter }
    }
}

/// An edge as a sequence of passes between its tail and head slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePath {
    pub edge: usize,
    pub tail_slot: usize,
    pub passes: Vec<Pass>,
    pub head_slot: usize,
}

impl EdgePath {
    /// Ports of the arcs of this edge in order, given its tail and head nodes.
    pub fn arc_ports(&self, tail: usize, head: usize) -> Vec<(Port, Port)> {
        let mut out = Vec::with_capacity(self.passes.len() + 1);
        let mut from = Port { node: tail, slot: self.tail_slot };
        for p in &self.passes {
            out.push((from, Port { node: p.node, slot: p.enter }));
            from = Port { node: p.node, slot: p.exit };
        }
        out.push((from, Port { node: head, slot: self.head_slot }));
        out
    }
}

/// Mutable edge-path model of a diagram. Rewrites operate here and are
/// turned back into a `GraphDiagram` by `build`.
#[derive(Clone, Debug)]
pub struct DiagramBuilder {
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    pub paths: Vec<EdgePath>,
}

impl Default for DiagramBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl DiagramBuilder {
    pub fn new() -> Self {
        DiagramBuilder { nodes: Vec::new(), edges: Vec::new(), paths: Vec::new() }
    }

    pub fn from_diagram(d: &GraphDiagram) -> Result<Self, DiagramError> {
        Ok(DiagramBuilder { nodes: d.nodes().to_vec(), edges: d.edges().to_vec(), paths: d.edge_paths()? })
    }

    pub fn add_vertex(&mut self, id: impl Into<String>, part: Part, valency: usize) -> usize {
        self.nodes.push(Node { id: id.into(), kind: NodeKind::Vertex { part, valency } });
        self.nodes.len() - 1
    }

    pub fn add_crossing(&mut self, id: impl Into<String>, over: OverPair) -> usize {
        self.nodes.push(Node { id: id.into(), kind: NodeKind::Crossing { over } });
        self.nodes.len() - 1
    }

    pub fn add_edge(
        &mut self,
        id: impl Into<String>,
        tail: usize,
        head: usize,
        tail_slot: usize,
        passes: Vec<Pass>,
        head_slot: usize,
    ) -> usize {
        let e = self.edges.len();
        self.edges.push(Edge { id: id.into(), tail, head });
        self.paths.push(EdgePath { edge: e, tail_slot, passes, head_slot });
        e
    }

    pub fn node_by_id(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    /// Unused id of the form `{prefix}{k}`.
    pub fn fresh_id(&self, prefix: &str) -> String {
        (1..)
            .map(|k| format!("{prefix}{k}"))
            .find(|id| self.node_by_id(id).is_none() && !self.edges.iter().any(|e| &e.id == id))
            .expect("unbounded id search")
    }

    /// Drops double points that no edge passes through and renumbers nodes.
    pub fn prune_crossings(&mut self) {
        let mut live = vec![false; self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            live[i] = !n.is_crossing();
        }
        for p in &self.paths {
            for q in &p.passes {
                live[q.node] = true;
            }
        }
        let mut remap = vec![usize::MAX; self.nodes.len()];
        let mut kept = Vec::new();
        for (i, n) in self.nodes.drain(..).enumerate() {
            if live[i] {
                remap[i] = kept.len();
                kept.push(n);
            }
        }
        self.nodes = kept;
        for e in &mut self.edges {
            e.tail = remap[e.tail];
            e.head = remap[e.head];
        }
        for p in &mut self.paths {
            for q in &mut p.passes {
                q.node = remap[q.node];
            }
        }
    }

    /// Arcs named `{edge}_{k}`; checks that every slot is used exactly once.
    pub fn build(&self) -> Result<GraphDiagram, DiagramError> {
        let mut used: HashMap<Port, usize> = HashMap::new();
        let mut arcs = Vec::new();
        for (e, p) in self.paths.iter().enumerate() {
            let edge = &self.edges[e];
            for (k, (from, to)) in p.arc_ports(edge.tail, edge.head).into_iter().enumerate() {
                for port in [from, to] {
                    let node = &self.nodes[port.node];
                    if port.slot >= node.degree() {
                        return Err(DiagramError::Invalid(format!(
                            "slot {} out of range at {}",
                            port.slot, node.id
                        )));
                    }
                    if used.insert(port, e).is_some() {
                        return Err(DiagramError::Invalid(format!(
                            "slot {}.{} used twice",
                            node.id, port.slot
                        )));
                    }
                }
                arcs.push(Arc { id: format!("{}_{k}", edge.id), edge: e, seq: k, from, to });
            }
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if let Some(s) = (0..n.degree()).find(|&s| !used.contains_key(&Port { node: i, slot: s })) {
                return Err(DiagramError::FreeSlot { node: n.id.clone(), slot: s });
            }
        }
        Ok(GraphDiagram::from_parts(self.nodes.clone(), self.edges.clone(), arcs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    #[test]
    fn builder_round_trip() {
        let text = "vertex u V2 2\nvertex v V1 2\ncross x 02\nedge e1 u v\nedge e2 u v\n\
arc a e1 0 u.0 x.0\narc b e1 1 x.2 v.0\narc c e2 0 u.1 x.1\narc d e2 1 x.3 v.1\n";
        let d = parse_diagram(text).unwrap();
        let b = DiagramBuilder::from_diagram(&d).unwrap();
        assert_eq!(b.paths[0].passes, vec![Pass::new(2, 0)]);
        let d2 = b.build().unwrap();
        assert_eq!(d2.edge_paths().unwrap(), d.edge_paths().unwrap());
        assert_eq!(d2.nodes(), d.nodes());
    }

    #[test]
    fn prune_drops_unused() {
        let mut b = DiagramBuilder::new();
        let x = b.add_crossing("x", OverPair::Slots02);
        let u = b.add_vertex("u", Part::V2, 1);
        let v = b.add_vertex("v", Part::V1, 1);
        b.add_edge("e", u, v, 0, vec![], 0);
        assert_eq!(x, 0);
        b.prune_crossings();
        assert_eq!(b.nodes.len(), 2);
        assert_eq!(b.edges[0].tail, 0);
        b.build().unwrap();
    }
}
