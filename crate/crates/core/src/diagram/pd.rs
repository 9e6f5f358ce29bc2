use std::collections::HashMap;

use super::{DiagramBuilder, DiagramError, GraphDiagram, OverPair, Part, Pass};

/// `X[a, b, c, d]`: labels counterclockwise from the incoming under-strand `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PdCrossing(pub [usize; 4]);

/// Knot diagram from a PD code, made into a graph by placing a `V2` vertex `u1`
/// on arc `u_arc` and a `V1` vertex `v1` on arc `v_arc`.
///
/// Labels must be `1..=2n` increasing along the orientation. Edge `e1` runs
/// forward from `u1` to `v1`, edge `e2` runs backward from `u1` to `v1`. Double
/// points are named `x1..xn` in PD order, slot `i` holding the `i`-th label.
pub fn knot_from_pd(pd: &[PdCrossing], u_arc: usize, v_arc: usize) -> Result<GraphDiagram, DiagramError> {
    let n = pd.len();
    let labels = 2 * n;
    if n == 0 {
        return Err(DiagramError::Invalid("empty PD code".into()));
    }
    if u_arc == v_arc || !(1..=labels).contains(&u_arc) || !(1..=labels).contains(&v_arc) {
        return Err(DiagramError::Invalid(format!("vertex arcs {u_arc}, {v_arc} must be distinct labels in 1..={labels}")));
    }
    let next = |k: usize| k % labels + 1;
    // label -> (crossing, slot) where the strand arrives / leaves
    let mut incoming: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut outgoing: HashMap<usize, (usize, usize)> = HashMap::new();
    for (x, PdCrossing(l)) in pd.iter().enumerate() {
        if l.iter().any(|&k| !(1..=labels).contains(&k)) || next(l[0]) != l[2] {
            return Err(DiagramError::Invalid(format!("crossing {} is not oriented", x + 1)));
        }
        let over_in = if next(l[1]) == l[3] {
            1
        } else if next(l[3]) == l[1] {
            3
        } else {
            return Err(DiagramError::Invalid(format!("crossing {} has a broken over-strand", x + 1)));
        };
        for (s_in, s_out) in [(0, 2), (over_in, (over_in + 2) % 4)] {
            if incoming.insert(l[s_in], (x, s_in)).is_some() || outgoing.insert(l[s_out], (x, s_out)).is_some() {
                return Err(DiagramError::Invalid(format!("label repeated at crossing {}", x + 1)));
            }
        }
    }
    if incoming.len() != labels {
        return Err(DiagramError::Invalid("PD labels do not form one closed strand".into()));
    }

    let mut b = DiagramBuilder::new();
    for x in 0..n {
        b.add_crossing(format!("x{}", x + 1), OverPair::Slots13);
    }
    let u = b.add_vertex("u1", Part::V2, 2);
    let v = b.add_vertex("v1", Part::V1, 2);

    let mut forward = Vec::new();
    let mut k = u_arc;
    while k != v_arc {
        let (x, s) = incoming[&k];
        forward.push(Pass::new(x, s));
        k = next(k);
    }
    let mut backward = Vec::new();
    let mut k = u_arc;
    while k != v_arc {
        let (x, s) = outgoing[&k];
        backward.push(Pass::new(x, s));
        k = if k == 1 { labels } else { k - 1 };
    }
    b.add_edge("e1", u, v, 0, forward, 0);
    b.add_edge("e2", u, v, 1, backward, 1);
    b.build()
}
