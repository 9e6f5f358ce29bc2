//! Curve and basepoint census of the Heegaard diagram built from a
//! projection, and the periodic-domain lattice deciding admissibility.

use std::fmt;

use thiserror::Error;

use crate::algebra::smith::{hermite_form, smith_normal_form};
use crate::diagram::{GraphDiagram, Part};
use crate::resolve::{distinguished_vertex, ResolveError};

#[derive(Debug, Error)]
pub enum HeegaardError {
    #[error(transparent)]
    Resolve(#[from] ResolveError),
    #[error("region {0} does not exist")]
    NoSuchRegion(usize),
    #[error("census identity fails: {0}")]
    IdentityViolation(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeegaardSummary {
    pub genus: usize,
    pub d_alpha: usize,
    pub d_beta: usize,
    /// Basepoints, one per edge.
    pub basepoints: usize,
    pub v1: usize,
    pub v2: usize,
    /// One alpha curve per double point.
    pub alpha_double_points: usize,
    /// `(vertex, valency - 1)` alpha curves around each `V2` vertex.
    pub alpha_vertices: Vec<(usize, usize)>,
    /// Beta curves from regions other than `beta0`.
    pub beta_regions: usize,
    /// Beta curves from `V2` vertices other than `u`.
    pub beta_vertices: usize,
    pub beta0: usize,
    pub u: usize,
}

impl fmt::Display for HeegaardSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "g={} d={} m={} |V1|={} |V2|={}",
            self.genus, self.d_alpha, self.basepoints, self.v1, self.v2
        )
    }
}

/// Census of the Heegaard diagram; `beta0` defaults to the lowest region
/// touching `u`.
pub fn build_heegaard_summary(
    d: &GraphDiagram,
    u: Option<&str>,
    beta0: Option<usize>,
) -> Result<HeegaardSummary, HeegaardError> {
    let u = distinguished_vertex(d, u)?;
    let regions = d.compute_regions().map_err(ResolveError::from)?;
    let beta0 = match beta0 {
        Some(r) if r < regions.len() => r,
        Some(r) => return Err(HeegaardError::NoSuchRegion(r)),
        None => regions.iter().find(|r| r.touches(u)).expect("u touches some region").id,
    };
    let nodes = d.nodes().len();
    let arcs = d.arcs().len();
    let genus = arcs + 1 - nodes;
    let v1 = d.vertices_in(Part::V1).count();
    let v2 = d.vertices_in(Part::V2).count();
    let alpha_double_points = d.num_crossings();
    let alpha_vertices: Vec<(usize, usize)> =
        d.vertices_in(Part::V2).map(|v| (v, d.node(v).degree() - 1)).collect();
    let d_alpha = alpha_double_points + alpha_vertices.iter().map(|x| x.1).sum::<usize>();
    let beta_regions = regions.len() - 1;
    let beta_vertices = v2 - 1;
    let d_beta = beta_regions + beta_vertices;
    let basepoints: usize = d.vertices_in(Part::V2).map(|v| d.node(v).degree()).sum();
    let s = HeegaardSummary {
        genus,
        d_alpha,
        d_beta,
        basepoints,
        v1,
        v2,
        alpha_double_points,
        alpha_vertices,
        beta_regions,
        beta_vertices,
        beta0,
        u,
    };
    let mut bad = Vec::new();
    if basepoints != d.edges().len() {
        bad.push(format!("m={} but {} edges", basepoints, d.edges().len()));
    }
    if d_alpha != d_beta {
        bad.push(format!("d_alpha={d_alpha} d_beta={d_beta}"));
    }
    if d_alpha + 1 != genus + v1 {
        bad.push(format!("d_alpha-g+1 != |V1|={v1}"));
    }
    if d_beta + 1 != genus + v2 {
        bad.push(format!("d_beta-g+1 != |V2|={v2}"));
    }
    if !bad.is_empty() {
        return Err(HeegaardError::IdentityViolation(bad.join("; ")));
    }
    Ok(s)
}

/// Integer solutions of `a_i + b_j = 0` over the edges `v_i u_j`.
/// Coordinates are the `V1` vertices then the `V2` vertices, each in node order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicDomainLattice {
    pub coordinates: Vec<usize>,
    /// Basis in Hermite normal form.
    pub basis: Vec<Vec<i64>>,
    /// Per basis vector: true if it is the global constant (`a = c`, `b = -c`).
    pub trivial: Vec<bool>,
}

impl PeriodicDomainLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

pub fn periodic_domain_lattice(d: &GraphDiagram) -> PeriodicDomainLattice {
    let v1: Vec<usize> = d.vertices_in(Part::V1).collect();
    let v2: Vec<usize> = d.vertices_in(Part::V2).collect();
    let coordinates: Vec<usize> = v1.iter().chain(&v2).copied().collect();
    let col = |n: usize| coordinates.iter().position(|&c| c == n).expect("edge ends are vertices");
    let k = coordinates.len();
    let rows: Vec<Vec<i64>> = d
        .edges()
        .iter()
        .map(|e| {
            let mut r = vec![0i64; k];
            r[col(e.tail)] += 1;
            r[col(e.head)] += 1;
            r
        })
        .collect();
    let kernel = if rows.is_empty() {
        (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect()
    } else {
        smith_normal_form(&rows, k).kernel_basis()
    };
    let (basis, _) = hermite_form(&kernel, k);
    let trivial = basis
        .iter()
        .map(|b| {
            let c = b.first().copied().unwrap_or(0);
            c != 0 && b[..v1.len()].iter().all(|&x| x == c) && b[v1.len()..].iter().all(|&x| x == -c)
        })
        .collect();
    PeriodicDomainLattice { coordinates, basis, trivial }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Admissibility {
    Admissible,
    /// A periodic domain that is not a multiple of the global constant.
    NotGuaranteed { witness: Vec<i64> },
}

pub fn check_admissibility(d: &GraphDiagram) -> (Admissibility, PeriodicDomainLattice) {
    let lat = periodic_domain_lattice(d);
    let verdict = match lat.trivial.iter().position(|t| !t) {
        None => Admissibility::Admissible,
        Some(i) => Admissibility::NotGuaranteed { witness: lat.basis[i].clone() },
    };
    (verdict, lat)
}
