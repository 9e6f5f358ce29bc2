use crate::algebra::{bareiss_determinant, unit_normalize, Coeff, HomologyModel, LaurentPoly};
use crate::resolve::ResolvedDiagram;

use super::{fox_matrix, raw_fox_matrix, tau, TorsionError};

/// Normal forms of the three computations of the torsion.
#[derive(Clone, Debug)]
pub struct CrossCheck<C: Coeff> {
    pub num_states: usize,
    /// State sum.
    pub state_sum: LaurentPoly<C>,
    /// Determinant of the weight matrix in the free ring, then projected.
    pub weight_det: LaurentPoly<C>,
    /// Weight matrix projected first, determinant in the quotient ring.
    pub weight_det_projected_first: LaurentPoly<C>,
    /// Determinant of the Fox Jacobian of the crossing relators.
    pub fox_det: LaurentPoly<C>,
}

impl<C: Coeff> CrossCheck<C> {
    pub fn matches(&self) -> bool {
        self.state_sum == self.weight_det
            && self.state_sum == self.weight_det_projected_first
            && self.state_sum == self.fox_det
    }
}

pub fn cross_check<C: Coeff>(rd: &ResolvedDiagram, h: &HomologyModel) -> Result<CrossCheck<C>, TorsionError> {
    let t = tau::<C>(rd, h);
    let m = fox_matrix::<C>(rd);
    let weight_det = unit_normalize(&h.project_poly(&bareiss_determinant(&m)));
    let projected: Vec<Vec<LaurentPoly<C>>> =
        m.iter().map(|row| row.iter().map(|p| h.project_poly(p)).collect()).collect();
    let weight_det_projected_first = unit_normalize(&bareiss_determinant(&projected));
    let fox_det = unit_normalize(&bareiss_determinant(&raw_fox_matrix::<C>(rd, h)?));
    Ok(CrossCheck {
        num_states: t.num_states,
        state_sum: t.normalized,
        weight_det,
        weight_det_projected_first,
        fox_det,
    })
}
