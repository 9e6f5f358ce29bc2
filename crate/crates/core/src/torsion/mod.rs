//! The state-sum polynomial and its Fox-calculus determinant.

mod check;
mod fox;
mod weights;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{bareiss_determinant, unit_normalize, AlgebraError, Coeff, HomologyModel, LaurentPoly};
use crate::diagram::GraphDiagram;
use crate::resolve::{enumerate_states, enumerate_states_parallel, ResolveError, ResolvedDiagram, State};

pub use check::{cross_check, CrossCheck};
pub use fox::{fox_derivative, fox_words, raw_fox_matrix, region_classes, Letter, Syllable, Word};
pub use weights::{all_weights, crossing_weights, gap_weight, state_monomial, CrossingWeights};

#[derive(Debug, Error)]
pub enum TorsionError {
    #[error(transparent)]
    Resolve(#[from] ResolveError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("region classes are inconsistent across region {region}")]
    InconsistentClasses { region: usize },
}

/// Relation matrix with one row per vertex: the incidence of each edge.
pub fn homology_model(d: &GraphDiagram) -> Result<HomologyModel, AlgebraError> {
    let m = d.edges().len();
    let rows = d
        .vertex_indices()
        .map(|v| {
            let mut row = vec![0i64; m];
            for (e, edge) in d.edges().iter().enumerate() {
                row[e] += i64::from(edge.tail == v) + i64::from(edge.head == v);
            }
            row
        })
        .collect();
    HomologyModel::from_relations(m, rows)
}

/// One state with its signed contribution `sign * m(s)` in the free ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateTerm<C: Coeff> {
    pub state: State,
    pub monomial: LaurentPoly<C>,
}

impl<C: Coeff> StateTerm<C> {
    pub fn contribution(&self) -> LaurentPoly<C> {
        if self.state.sign > 0 {
            self.monomial.clone()
        } else {
            -&self.monomial
        }
    }
}

#[derive(Clone, Debug)]
pub struct Torsion<C: Coeff> {
    /// Sum in the free ring over edge variables.
    pub free: LaurentPoly<C>,
    /// Image in the group ring of the quotient.
    pub projected: LaurentPoly<C>,
    pub normalized: LaurentPoly<C>,
    pub num_states: usize,
}

/// Every state with its monomial, in canonical state order.
pub fn state_terms<C: Coeff>(rd: &ResolvedDiagram, jobs: usize) -> Vec<StateTerm<C>> {
    let w = all_weights::<C>(rd);
    let states: Vec<State> = if jobs > 1 {
        enumerate_states_parallel(rd, jobs)
    } else {
        enumerate_states(rd).collect()
    };
    states
        .into_iter()
        .map(|s| StateTerm { monomial: state_monomial(rd, &w, &s), state: s })
        .collect()
}

/// The state sum, streamed without keeping the states.
pub fn tau<C: Coeff>(rd: &ResolvedDiagram, h: &HomologyModel) -> Torsion<C> {
    let w = all_weights::<C>(rd);
    let mut free = LaurentPoly::zero();
    let mut num_states = 0;
    for s in enumerate_states(rd) {
        let m = state_monomial(rd, &w, &s);
        free = if s.sign > 0 { &free + &m } else { &free - &m };
        num_states += 1;
    }
    finish(free, num_states, h)
}

/// The state sum with enumeration split across `jobs` threads.
pub fn tau_parallel<C: Coeff>(rd: &ResolvedDiagram, h: &HomologyModel, jobs: usize) -> Torsion<C> {
    let terms = state_terms::<C>(rd, jobs);
    let free = terms.iter().fold(LaurentPoly::zero(), |acc, t| &acc + &t.contribution());
    finish(free, terms.len(), h)
}

fn finish<C: Coeff>(free: LaurentPoly<C>, num_states: usize, h: &HomologyModel) -> Torsion<C> {
    let projected = h.project_poly(&free);
    let normalized = unit_normalize(&projected);
    Torsion { free, projected, normalized, num_states }
}

/// Weight matrix over the free ring, rows crossings and columns unstarred
/// regions, filled by walking each region's boundary.
pub fn fox_matrix<C: Coeff>(rd: &ResolvedDiagram) -> Vec<Vec<LaurentPoly<C>>> {
    let n = rd.num_crossings();
    let mut crossing_at = vec![None; rd.rnodes().len()];
    for (i, c) in rd.crossings().iter().enumerate() {
        crossing_at[c.rnode] = Some(i);
    }
    let mut m = vec![vec![LaurentPoly::zero(); n]; n];
    for (j, &r) in rd.unstarred().iter().enumerate() {
        for corner in &rd.regions()[r].boundary {
            if let Some(i) = crossing_at[corner.node] {
                m[i][j] = &m[i][j] + &gap_weight(rd, i, corner.gap);
            }
        }
    }
    m
}

pub fn determinant<C: Coeff>(m: &[Vec<LaurentPoly<C>>]) -> LaurentPoly<C> {
    bareiss_determinant(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;
    use crate::resolve::resolve_vertices;
    use num_traits::One;

    const THETA: &str = "vertex u V2 3\nvertex v V1 3\nedge e1 u v\nedge e2 u v\nedge e3 u v\n\
arc a1 e1 0 u.0 v.2\narc a2 e2 0 u.1 v.1\narc a3 e3 0 u.2 v.0\n";

    #[test]
    fn trivial_theta_is_one() {
        let d = parse_diagram(THETA).unwrap();
        let h = homology_model(&d).unwrap();
        assert_eq!(h.quotient_rank(), 2);
        let rd = resolve_vertices(&d, None).unwrap();
        let t = tau::<i64>(&rd, &h);
        assert_eq!(t.num_states, 1);
        assert_eq!(t.projected, LaurentPoly::one());
        assert_eq!(determinant::<i64>(&fox_matrix(&rd)), LaurentPoly::one());
    }
}
