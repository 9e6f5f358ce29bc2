//! The resolved diagram: every `V2` vertex other than the distinguished
//! one is replaced by a small circle carrying one trivalent node per
//! incident edge. All but one of those nodes become vertex crossings.

mod states;

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::diagram::{
    canonical_regions, validate, CheckKind, Corner, DiagramError, GraphDiagram, NodeKind, Part,
    Port, Region, RotationSystem, ValidationReport,
};

pub use states::{
    brute_force_states, enumerate_states, enumerate_states_parallel, inversion_parity,
    cycle_parity, State, StateIter,
};

#[derive(Debug, Error)]
pub enum ResolveError {
    #[error("diagram is not connected")]
    NotConnected,
    #[error("diagram is invalid:\n{0}")]
    Invalid(ValidationReport),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("`{0}` is not a V2 vertex")]
    NotV2(String),
    #[error("terminal slot {slot} out of range for `{vertex}`")]
    BadTerminal { vertex: String, slot: usize },
    #[error("{unstarred} unstarred regions but {crossings} crossings")]
    DegenerateStars { unstarred: usize, crossings: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A node of the resolved diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RNode {
    /// A node carried over unchanged.
    Base(usize),
    /// The circle node of `V2` vertex `v` where its slot `slot` edge attaches.
    /// Slot 0 is the edge, slot 1 leads counterclockwise around the circle,
    /// slot 2 clockwise.
    Attach { v: usize, slot: usize },
}

/// What a link of the resolved diagram is part of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkKind {
    /// Base arc `arc` of edge `edge`; `head_end` marks the port the arc
    /// runs into along the edge orientation.
    Edge { edge: usize, arc: usize, head_end: bool },
    /// A piece of the small circle around `v`.
    Circle { v: usize },
}

/// Smoothing data of one `V2` vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexResolution {
    pub v: usize,
    /// Slot of `v` whose circle node is the terminal `c_v`.
    pub terminal: usize,
    /// Edges `t_1 .. t_d` counterclockwise after the terminal; `t_d` is the
    /// terminal edge itself.
    pub order: Vec<usize>,
}

impl VertexResolution {
    pub fn degree(&self) -> usize {
        self.order.len()
    }

    /// Slot of `v` carrying vertex crossing `k` (1-based).
    pub fn slot_of(&self, k: usize) -> usize {
        (self.terminal + k) % self.degree()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrossingKind {
    Double {
        node: usize,
        over_edge: usize,
        over_enter: usize,
        under_edge: usize,
    },
    Vertex {
        /// Index into `ResolvedDiagram::resolutions`.
        resolution: usize,
        k: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingRecord {
    pub kind: CrossingKind,
    /// Index of the node in the resolved diagram.
    pub rnode: usize,
    /// Region id of every local gap of the node.
    pub gap_regions: Vec<usize>,
    /// Unstarred indices of the adjacent regions, sorted, without repeats.
    pub adjacent: Vec<usize>,
}

#[derive(Clone, Debug, Default)]
pub struct ResolveOptions {
    /// Terminal slot per `V2` vertex (base node index); lowest-indexed
    /// incident edge otherwise.
    pub terminals: HashMap<usize, usize>,
}

#[derive(Clone, Debug)]
pub struct ResolvedDiagram {
    base: GraphDiagram,
    u: usize,
    rnodes: Vec<RNode>,
    rnode_of_base: Vec<Option<usize>>,
    rotation: RotationSystem,
    link_kind: HashMap<Port, LinkKind>,
    regions: Vec<Region>,
    corner_region: Vec<Vec<usize>>,
    starred: Vec<bool>,
    unstarred: Vec<usize>,
    region_to_unstarred: Vec<Option<usize>>,
    resolutions: Vec<VertexResolution>,
    crossings: Vec<CrossingRecord>,
    adjacency: Vec<Vec<usize>>,
}

/// Lexicographically least `V2` vertex id.
pub fn default_u(d: &GraphDiagram) -> Option<usize> {
    d.vertices_in(Part::V2).min_by(|&a, &b| d.node(a).id.cmp(&d.node(b).id))
}

/// Checks the diagram and maps the vertex id `u` to its index.
pub fn distinguished_vertex(d: &GraphDiagram, u: Option<&str>) -> Result<usize, ResolveError> {
    let report = validate(d);
    if !report.get(CheckKind::Connected).passed {
        return Err(ResolveError::NotConnected);
    }
    if !report.is_valid() {
        return Err(ResolveError::Invalid(report));
    }
    match u {
        None => Ok(default_u(d).expect("valid diagrams have a V2 vertex")),
        Some(id) => {
            let i = d.node_by_id(id).ok_or_else(|| ResolveError::UnknownVertex(id.to_string()))?;
            if d.node(i).part() != Some(Part::V2) {
                return Err(ResolveError::NotV2(id.to_string()));
            }
            Ok(i)
        }
    }
}

pub fn resolve_vertices(d: &GraphDiagram, u: Option<&str>) -> Result<ResolvedDiagram, ResolveError> {
    resolve_with(d, u, &ResolveOptions::default())
}

pub fn resolve_with(
    d: &GraphDiagram,
    u: Option<&str>,
    opts: &ResolveOptions,
) -> Result<ResolvedDiagram, ResolveError> {
    let u = distinguished_vertex(d, u)?;
    let rank = d.canonical_node_order();

    let smoothed: Vec<usize> = {
        let mut vs: Vec<usize> = d.vertices_in(Part::V2).filter(|&v| v != u).collect();
        vs.sort_by_key(|&v| rank[v]);
        vs
    };

    let mut rnodes = Vec::new();
    let mut rnode_of_base = vec![None; d.nodes().len()];
    let mut kept: Vec<usize> = (0..d.nodes().len()).filter(|i| !smoothed.contains(i)).collect();
    kept.sort_by_key(|&i| rank[i]);
    for &i in &kept {
        rnode_of_base[i] = Some(rnodes.len());
        rnodes.push(RNode::Base(i));
    }
    let mut attach_index: HashMap<(usize, usize), usize> = HashMap::new();
    for &v in &smoothed {
        for s in 0..d.node(v).degree() {
            attach_index.insert((v, s), rnodes.len());
            rnodes.push(RNode::Attach { v, slot: s });
        }
    }

    let degree: Vec<usize> = rnodes
        .iter()
        .map(|r| match r {
            RNode::Base(i) => d.node(*i).degree(),
            RNode::Attach { .. } => 3,
        })
        .collect();
    let map_port = |p: Port| -> Port {
        match rnode_of_base[p.node] {
            Some(r) => Port { node: r, slot: p.slot },
            None => Port { node: attach_index[&(p.node, p.slot)], slot: 0 },
        }
    };
    let mut link: Vec<Vec<Option<Port>>> = degree.iter().map(|&k| vec![None; k]).collect();
    let mut link_kind = HashMap::new();
    for (ai, a) in d.arcs().iter().enumerate() {
        let (p, q) = (map_port(a.from), map_port(a.to));
        link[p.node][p.slot] = Some(q);
        link[q.node][q.slot] = Some(p);
        link_kind.insert(p, LinkKind::Edge { edge: a.edge, arc: ai, head_end: false });
        link_kind.insert(q, LinkKind::Edge { edge: a.edge, arc: ai, head_end: true });
    }
    for &v in &smoothed {
        let deg = d.node(v).degree();
        for s in 0..deg {
            let p = Port { node: attach_index[&(v, s)], slot: 1 };
            let q = Port { node: attach_index[&(v, (s + 1) % deg)], slot: 2 };
            link[p.node][p.slot] = Some(q);
            link[q.node][q.slot] = Some(p);
            link_kind.insert(p, LinkKind::Circle { v });
            link_kind.insert(q, LinkKind::Circle { v });
        }
    }
    let rotation = RotationSystem::new(degree, link);
    let faces = rotation.faces();
    let chi = rotation.euler_characteristic(faces.len());
    if chi != 2 {
        return Err(DiagramError::EulerMismatch { value: chi }.into());
    }
    // resolved nodes are already numbered canonically
    let regions = canonical_regions(faces, |c| (c.node, c.gap));
    let mut corner_region: Vec<Vec<usize>> = rnodes.iter().map(|_| Vec::new()).collect();
    for (n, row) in corner_region.iter_mut().enumerate() {
        *row = vec![usize::MAX; rotation.degree(n)];
    }
    for r in &regions {
        for c in &r.boundary {
            corner_region[c.node][c.gap] = r.id;
        }
    }

    let u_r = rnode_of_base[u].expect("u is kept");
    let starred: Vec<bool> = regions.iter().map(|r| r.touches(u_r)).collect();
    let unstarred: Vec<usize> = (0..regions.len()).filter(|&i| !starred[i]).collect();
    let mut region_to_unstarred = vec![None; regions.len()];
    for (k, &r) in unstarred.iter().enumerate() {
        region_to_unstarred[r] = Some(k);
    }

    let mut resolutions = Vec::new();
    for &v in &smoothed {
        let deg = d.node(v).degree();
        let terminal = match opts.terminals.get(&v) {
            Some(&s) if s < deg => s,
            Some(&s) => return Err(ResolveError::BadTerminal { vertex: d.node(v).id.clone(), slot: s }),
            None => (0..deg)
                .min_by_key(|&s| d.edge_at(v, s).expect("valid diagrams have no free slots"))
                .expect("vertices have positive valency"),
        };
        let order = (1..=deg).map(|k| d.edge_at(v, (terminal + k) % deg).unwrap()).collect();
        resolutions.push(VertexResolution { v, terminal, order });
    }

    let paths = d.edge_paths()?;
    let mut crossings = Vec::new();
    let mut doubles: Vec<usize> = d.crossing_indices().collect();
    doubles.sort_by_key(|&x| rank[x]);
    let adjacency = |rn: usize| -> (Vec<usize>, Vec<usize>) {
        let gaps = corner_region[rn].clone();
        let adj: BTreeSet<usize> = gaps.iter().filter_map(|&r| region_to_unstarred[r]).collect();
        (gaps, adj.into_iter().collect())
    };
    for &x in &doubles {
        let NodeKind::Crossing { over } = d.node(x).kind else { unreachable!() };
        let mut over_pass = None;
        let mut under_edge = None;
        for p in &paths {
            for q in p.passes.iter().filter(|q| q.node == x) {
                if over.contains(q.enter) {
                    over_pass = Some((p.edge, q.enter));
                } else {
                    under_edge = Some(p.edge);
                }
            }
        }
        let (over_edge, over_enter) = over_pass.expect("validated double point");
        let rn = rnode_of_base[x].unwrap();
        let (gap_regions, adjacent) = adjacency(rn);
        crossings.push(CrossingRecord {
            kind: CrossingKind::Double { node: x, over_edge, over_enter, under_edge: under_edge.unwrap() },
            rnode: rn,
            gap_regions,
            adjacent,
        });
    }
    for (ri, res) in resolutions.iter().enumerate() {
        for k in 1..res.degree() {
            let rn = attach_index[&(res.v, res.slot_of(k))];
            let (gap_regions, adjacent) = adjacency(rn);
            crossings.push(CrossingRecord {
                kind: CrossingKind::Vertex { resolution: ri, k },
                rnode: rn,
                gap_regions,
                adjacent,
            });
        }
    }

    if unstarred.len() != crossings.len() {
        return Err(ResolveError::DegenerateStars { unstarred: unstarred.len(), crossings: crossings.len() });
    }

    Ok(ResolvedDiagram {
        base: d.clone(),
        u,
        rnodes,
        rnode_of_base,
        rotation,
        link_kind,
        regions,
        corner_region,
        starred,
        unstarred,
        region_to_unstarred,
        resolutions,
        adjacency: crossings.iter().map(|c| c.adjacent.clone()).collect(),
        crossings,
    })
}

impl ResolvedDiagram {
    pub fn base(&self) -> &GraphDiagram {
        &self.base
    }

    /// Index of the distinguished vertex in the base diagram.
    pub fn u(&self) -> usize {
        self.u
    }

    pub fn rnodes(&self) -> &[RNode] {
        &self.rnodes
    }

    pub fn rnode_of_base(&self, i: usize) -> Option<usize> {
        self.rnode_of_base[i]
    }

    pub fn rotation(&self) -> &RotationSystem {
        &self.rotation
    }

    pub fn link_kind(&self, p: Port) -> LinkKind {
        self.link_kind[&p]
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn region_at(&self, c: Corner) -> usize {
        self.corner_region[c.node][c.gap]
    }

    pub fn is_starred(&self, region: usize) -> bool {
        self.starred[region]
    }

    /// Region ids of `R_1 .. R_n` in order.
    pub fn unstarred(&self) -> &[usize] {
        &self.unstarred
    }

    pub fn unstarred_index(&self, region: usize) -> Option<usize> {
        self.region_to_unstarred[region]
    }

    pub fn resolutions(&self) -> &[VertexResolution] {
        &self.resolutions
    }

    pub fn crossings(&self) -> &[CrossingRecord] {
        &self.crossings
    }

    /// Adjacent unstarred indices per crossing.
    pub fn adjacency_lists(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    /// True for the small disk bounded by the circle of a smoothed vertex.
    pub fn is_inner_disk(&self, region: usize) -> bool {
        self.regions[region]
            .boundary
            .iter()
            .all(|c| matches!(self.rnodes[c.node], RNode::Attach { .. }) && c.gap == 1)
    }

    pub fn rnode_name(&self, n: usize) -> String {
        match self.rnodes[n] {
            RNode::Base(i) => self.base.node(i).id.clone(),
            RNode::Attach { v, slot } => format!("{}@{slot}", self.base.node(v).id),
        }
    }

    pub fn crossing_name(&self, i: usize) -> String {
        match &self.crossings[i].kind {
            CrossingKind::Double { node, .. } => self.base.node(*node).id.clone(),
            CrossingKind::Vertex { resolution, k } => {
                format!("{}/{k}", self.base.node(self.resolutions[*resolution].v).id)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    const THETA: &str = "vertex u V2 3\nvertex v V1 3\nedge e1 u v\nedge e2 u v\nedge e3 u v\n\
arc a1 e1 0 u.0 v.2\narc a2 e2 0 u.1 v.1\narc a3 e3 0 u.2 v.0\n";

    #[test]
    fn theta_has_nothing_to_resolve() {
        let rd = resolve_vertices(&parse_diagram(THETA).unwrap(), None).unwrap();
        assert_eq!(rd.num_crossings(), 0);
        assert_eq!(rd.regions().len(), 3);
        assert!(rd.unstarred().is_empty());
    }

    #[test]
    fn two_theta_vertices() {
        // V2 = {u, w}, V1 = {a, b}; w has valency 3, no double points
        let text = "vertex u V2 1\nvertex w V2 3\nvertex a V1 2\nvertex b V1 2\n\
edge e1 u a\nedge e2 w a\nedge e3 w b\nedge e4 w b\n\
arc r1 e1 0 u.0 a.0\narc r2 e2 0 w.0 a.1\narc r3 e3 0 w.1 b.1\narc r4 e4 0 w.2 b.0\n";
        let d = parse_diagram(text).unwrap();
        assert!(validate(&d).is_valid(), "{}", validate(&d));
        let rd = resolve_vertices(&d, Some("u")).unwrap();
        assert_eq!(rd.num_crossings(), 2);
        assert_eq!(rd.unstarred().len(), 2);
        assert!(rd.crossings().iter().all(|c| c.gap_regions.len() == 3));
        assert_eq!(rd.regions().iter().filter(|r| rd.is_inner_disk(r.id)).count(), 1);
    }

    #[test]
    fn u_must_be_v2() {
        let d = parse_diagram(THETA).unwrap();
        assert!(matches!(resolve_vertices(&d, Some("v")), Err(ResolveError::NotV2(_))));
        assert!(matches!(resolve_vertices(&d, Some("q")), Err(ResolveError::UnknownVertex(_))));
    }
}
