use super::Port;

/// The angle at `node` between slot `gap` and slot `gap + 1` (mod degree).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub node: usize,
    pub gap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub corners: Vec<Corner>,
}

/// A bare rotation system: slot counts per node and the slot pairing.
#[derive(Clone, Debug)]
pub struct RotationSystem {
    degree: Vec<usize>,
    link: Vec<Vec<Option<Port>>>,
}

impl RotationSystem {
    pub fn new(degree: Vec<usize>, link: Vec<Vec<Option<Port>>>) -> Self {
        RotationSystem { degree, link }
    }

    pub fn num_nodes(&self) -> usize {
        self.degree.len()
    }

    pub fn num_links(&self) -> usize {
        self.link.iter().flatten().filter(|l| l.is_some()).count() / 2
    }

    pub fn degree(&self, node: usize) -> usize {
        self.degree[node]
    }

    pub fn partner(&self, p: Port) -> Option<Port> {
        self.link[p.node][p.slot]
    }

    /// All faces, each traversed with the face on the left.
    ///
    /// Leaving along the dart at `(n, s)` we arrive at `(n', s')`; the corner
    /// passed is `(n', s' - 1)` and the next dart leaves from slot `s' - 1`.
    /// An isolated node of degree zero contributes no face.
    pub fn faces(&self) -> Vec<Face> {
        let mut seen: Vec<Vec<bool>> = self.degree.iter().map(|&d| vec![false; d]).collect();
        let mut faces = Vec::new();
        for n in 0..self.degree.len() {
            for s in 0..self.degree[n] {
                if seen[n][s] || self.link[n][s].is_none() {
                    continue;
                }
                let mut corners = Vec::new();
                let mut cur = Port { node: n, slot: s };
                while !seen[cur.node][cur.slot] {
                    seen[cur.node][cur.slot] = true;
                    let far = self.link[cur.node][cur.slot].expect("free slot in face walk");
                    let d = self.degree[far.node];
                    let gap = (far.slot + d - 1) % d;
                    corners.push(Corner { node: far.node, gap });
                    cur = Port { node: far.node, slot: gap };
                }
                faces.push(Face { corners });
            }
        }
        faces
    }

    /// `V - E + F` for a fully linked system with `faces` faces.
    pub fn euler_characteristic(&self, faces: usize) -> i64 {
        self.num_nodes() as i64 - self.num_links() as i64 + faces as i64
    }
}
