use std::fmt;

use super::{GraphDiagram, Part, Port};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Bipartite,
    Balanced,
    Connected,
    SlotCoverage,
    ArcChains,
    Genus0,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Bipartite => "bipartite",
            CheckKind::Balanced => "balanced",
            CheckKind::Connected => "connected",
            CheckKind::SlotCoverage => "slot-coverage",
            CheckKind::ArcChains => "arc-chains",
            CheckKind::Genus0 => "genus-0",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub kind: CheckKind,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, kind: CheckKind) -> &Check {
        self.checks.iter().find(|c| c.kind == kind).expect("every check is always reported")
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{mark} {}", c.kind.name())?;
            } else {
                writeln!(f, "{mark} {}: {}", c.kind.name(), c.detail)?;
            }
        }
        write!(f, "{}", if self.is_valid() { "valid" } else { "invalid" })
    }
}

fn check(kind: CheckKind, failure: Option<String>) -> Check {
    Check { kind, passed: failure.is_none(), detail: failure.unwrap_or_default() }
}

/// Runs every structural check; failures are report entries, never errors.
pub fn validate(d: &GraphDiagram) -> ValidationReport {
    let mut checks = Vec::new();

    let bip = d.edges().iter().find(|e| {
        d.node(e.tail).part() != Some(Part::V2) || d.node(e.head).part() != Some(Part::V1)
    });
    checks.push(check(
        CheckKind::Bipartite,
        bip.map(|e| {
            format!("edge {} runs {} -> {}, expected V2 -> V1", e.id, d.node(e.tail).id, d.node(e.head).id)
        }),
    ));

    let n1 = d.vertices_in(Part::V1).count();
    let n2 = d.vertices_in(Part::V2).count();
    checks.push(check(
        CheckKind::Balanced,
        (n1 != n2 || n1 == 0).then(|| format!("|V1| = {n1}, |V2| = {n2}")),
    ));

    let comps = d.component_count();
    checks.push(check(
        CheckKind::Connected,
        (comps != 1).then(|| format!("{comps} components")),
    ));

    let mut free = None;
    'outer: for (i, n) in d.nodes().iter().enumerate() {
        for s in 0..n.degree() {
            if d.partner(Port { node: i, slot: s }).is_none() {
                free = Some(format!("{}.{s} is not attached", n.id));
                break 'outer;
            }
        }
    }
    let covered = free.is_none();
    checks.push(check(CheckKind::SlotCoverage, free));

    let mut chain_err = None;
    for e in 0..d.edges().len() {
        if let Err(err) = d.edge_path(e) {
            chain_err = Some(err.to_string());
            break;
        }
    }
    if chain_err.is_none() {
        // every double point must be passed by exactly two strands
        for x in d.crossing_indices() {
            let passes = d
                .edge_paths()
                .map(|ps| ps.iter().flat_map(|p| &p.passes).filter(|q| q.node == x).count())
                .unwrap_or(0);
            if passes != 2 {
                chain_err = Some(format!("double point {} is passed {passes} times", d.node(x).id));
                break;
            }
        }
    }
    checks.push(check(CheckKind::ArcChains, chain_err));

    let genus = if covered {
        let rs = d.rotation_system();
        let f = rs.faces().len();
        let chi = rs.euler_characteristic(f);
        let want = 2 * d.component_count() as i64;
        (chi != want).then(|| format!("V'-E'+F = {chi}, expected {want}"))
    } else {
        Some("faces undefined while slots are free".to_string())
    };
    checks.push(check(CheckKind::Genus0, genus));

    ValidationReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    const THETA: &str = "vertex u V2 3\nvertex v V1 3\nedge e1 u v\nedge e2 u v\nedge e3 u v\n\
arc a1 e1 0 u.0 v.2\narc a2 e2 0 u.1 v.1\narc a3 e3 0 u.2 v.0\n";

    #[test]
    fn theta_is_valid() {
        let r = validate(&parse_diagram(THETA).unwrap());
        assert!(r.is_valid(), "{r}");
    }

    #[test]
    fn two_thetas_disconnected() {
        let second = THETA.replace(" u", " p").replace(" v", " q").replace("u.", "p.").replace("v.", "q.")
            .replace("e1", "f1").replace("e2", "f2").replace("e3", "f3").replace("a1", "b1")
            .replace("a2", "b2").replace("a3", "b3");
        let d = parse_diagram(&format!("{THETA}{second}")).unwrap();
        let r = validate(&d);
        assert!(!r.get(CheckKind::Connected).passed);
        assert!(!r.is_valid());
    }

    #[test]
    fn both_ends_in_v2() {
        let d = parse_diagram("vertex a V2 1\nvertex b V2 1\nedge e a b\narc x e 0 a.0 b.0\n").unwrap();
        let r = validate(&d);
        assert!(!r.get(CheckKind::Bipartite).passed);
        assert!(!r.get(CheckKind::Balanced).passed);
    }
}
