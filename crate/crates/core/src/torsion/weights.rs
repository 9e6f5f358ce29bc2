use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{Coeff, Exponent, LaurentPoly};
use crate::resolve::{CrossingKind, ResolvedDiagram, State};

/// Weights of one crossing: per local gap, and accumulated per region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingWeights<C: Coeff> {
    pub per_gap: Vec<LaurentPoly<C>>,
    /// Region id to summed weight; regions met at two gaps add up.
    pub per_region: BTreeMap<usize, LaurentPoly<C>>,
}

impl<C: Coeff> CrossingWeights<C> {
    /// Weight at unstarred region `j` (zero if not adjacent).
    pub fn at_unstarred(&self, rd: &ResolvedDiagram, j: usize) -> LaurentPoly<C> {
        self.per_region.get(&rd.unstarred()[j]).cloned().unwrap_or_else(LaurentPoly::zero)
    }
}

fn c<C: Coeff>(x: i8) -> C {
    C::from(x)
}

/// Weight of crossing `i` at its local gap `gap`, in free edge variables.
///
/// Double point, over strand entering at slot `a` with variable `t`:
/// gap `a` is `t`, gap `a+1` is `-t`, gap `a+2` is `1`, gap `a+3` is `-1`.
/// Vertex crossing `k` (circle node: gap 0 outside counterclockwise, gap 1
/// inside, gap 2 outside clockwise): `-1`, `(t_k - 1) t_1 ... t_{k-1}`, `1`.
pub fn gap_weight<C: Coeff>(rd: &ResolvedDiagram, i: usize, gap: usize) -> LaurentPoly<C> {
    match rd.crossings()[i].kind {
        CrossingKind::Double { over_edge, over_enter, .. } => {
            let t = Exponent::var(over_edge, 1);
            match (gap + 4 - over_enter) % 4 {
                0 => LaurentPoly::monomial(t, c(1)),
                1 => LaurentPoly::monomial(t, c(-1)),
                2 => LaurentPoly::constant(c(1)),
                _ => LaurentPoly::constant(c(-1)),
            }
        }
        CrossingKind::Vertex { resolution, k } => {
            let order = &rd.resolutions()[resolution].order;
            match gap {
                0 => LaurentPoly::constant(c(-1)),
                2 => LaurentPoly::constant(c(1)),
                _ => {
                    let prefix = order[..k - 1]
                        .iter()
                        .fold(Exponent::zero(), |acc, &e| acc.add(&Exponent::var(e, 1)));
                    let tk = Exponent::var(order[k - 1], 1);
                    let mut p = LaurentPoly::monomial(prefix.add(&tk), c(1));
                    p.add_term(prefix, c(-1));
                    p
                }
            }
        }
    }
}

pub fn crossing_weights<C: Coeff>(rd: &ResolvedDiagram, i: usize) -> CrossingWeights<C> {
    let rec = &rd.crossings()[i];
    let per_gap: Vec<LaurentPoly<C>> =
        (0..rec.gap_regions.len()).map(|g| gap_weight(rd, i, g)).collect();
    let mut per_region: BTreeMap<usize, LaurentPoly<C>> = BTreeMap::new();
    for (g, w) in per_gap.iter().enumerate() {
        let slot = per_region.entry(rec.gap_regions[g]).or_insert_with(LaurentPoly::zero);
        *slot = &*slot + w;
    }
    per_region.retain(|_, w| !w.is_zero());
    CrossingWeights { per_gap, per_region }
}

pub fn all_weights<C: Coeff>(rd: &ResolvedDiagram) -> Vec<CrossingWeights<C>> {
    (0..rd.num_crossings()).map(|i| crossing_weights(rd, i)).collect()
}

/// Product over crossings of the weight at the assigned region.
pub fn state_monomial<C: Coeff>(
    rd: &ResolvedDiagram,
    weights: &[CrossingWeights<C>],
    s: &State,
) -> LaurentPoly<C> {
    s.assignment
        .iter()
        .enumerate()
        .fold(LaurentPoly::one(), |acc, (i, &j)| &acc * &weights[i].at_unstarred(rd, j))
}
