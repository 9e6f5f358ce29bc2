use std::collections::VecDeque;

use num_traits::Zero;

use crate::algebra::{Coeff, Exponent, GroupElement, HomologyModel, LaurentPoly};
use crate::diagram::{Corner, Port};
use crate::resolve::{CrossingKind, LinkKind, ResolvedDiagram};

use super::TorsionError;

/// A generator of the free group: a region of the resolved diagram, or a
/// fixed element of the free abelian group on edge meridians.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    Region(usize),
    Const(Exponent),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syllable {
    pub letter: Letter,
    pub power: i8,
}

pub type Word = Vec<Syllable>;

fn syl(letter: Letter, power: i8) -> Syllable {
    Syllable { letter, power }
}

/// One relator per crossing.
///
/// Double point, over strand entering at `a`: `R_a R_{a+3}^-1 R_{a+2} R_{a+1}^-1`
/// over the regions at its gaps. Vertex crossing `k`:
/// `O_k^-1 O_{k-1} I^-1 c_{k-1} c_k^-1 I` with `O` the outside regions, `I`
/// the inner disk and `c_k = (t_1 ... t_k)^-1`.
pub fn fox_words(rd: &ResolvedDiagram) -> Vec<Word> {
    rd.crossings()
        .iter()
        .map(|rec| match rec.kind {
            CrossingKind::Double { over_enter: a, .. } => {
                let r = |off: usize| Letter::Region(rec.gap_regions[(a + off) % 4]);
                vec![syl(r(0), 1), syl(r(3), -1), syl(r(2), 1), syl(r(1), -1)]
            }
            CrossingKind::Vertex { resolution, k } => {
                let order = &rd.resolutions()[resolution].order;
                let c = |upto: usize| {
                    Letter::Const(
                        order[..upto].iter().fold(Exponent::zero(), |acc, &e| acc.sub(&Exponent::var(e, 1))),
                    )
                };
                let o_k = Letter::Region(rec.gap_regions[0]);
                let inner = Letter::Region(rec.gap_regions[1]);
                let o_prev = Letter::Region(rec.gap_regions[2]);
                vec![
                    syl(o_k, -1),
                    syl(o_prev, 1),
                    syl(inner.clone(), -1),
                    syl(c(k - 1), 1),
                    syl(c(k), -1),
                    syl(inner, 1),
                ]
            }
        })
        .collect()
}

/// Class in the quotient group of every region. Crossing an edge from its
/// right to its left multiplies by its meridian; inner disks are the identity.
pub fn region_classes(rd: &ResolvedDiagram, h: &HomologyModel) -> Result<Vec<GroupElement>, TorsionError> {
    let m = h.num_generators();
    let nreg = rd.regions().len();
    let rs = rd.rotation();
    // for each region, (neighbour, exponent change from neighbour to it)
    let mut nbrs: Vec<Vec<(usize, Exponent)>> = vec![Vec::new(); nreg];
    for r in rd.regions() {
        for c in &r.boundary {
            let deg = rs.degree(c.node);
            let q = Port { node: c.node, slot: (c.gap + 1) % deg };
            let LinkKind::Edge { edge, head_end, .. } = rd.link_kind(q) else { continue };
            let p = rs.partner(q).expect("resolved diagrams have no free slots");
            let pd = rs.degree(p.node);
            let other = rd.region_at(Corner { node: p.node, gap: (p.slot + pd - 1) % pd });
            // the arc runs p -> q with `r` on its left
            let step = if head_end { Exponent::var(edge, 1) } else { Exponent::var(edge, -1) };
            nbrs[r.id].push((other, step));
        }
    }
    let mut free: Vec<Option<Exponent>> = vec![None; nreg];
    let Some(root) = (0..nreg).find(|&r| !rd.is_inner_disk(r)) else {
        return Ok(vec![GroupElement::identity(); nreg]);
    };
    free[root] = Some(Exponent::zero());
    let mut queue = VecDeque::from([root]);
    while let Some(r) = queue.pop_front() {
        let base = free[r].clone().unwrap();
        for (other, step) in &nbrs[r] {
            // step leads from `other` into `r`
            if free[*other].is_none() {
                free[*other] = Some(base.sub(step));
                queue.push_back(*other);
            }
        }
    }
    let mut classes = Vec::with_capacity(nreg);
    for r in 0..nreg {
        let g = match &free[r] {
            Some(e) => {
                assert!(e.support_len() <= m);
                h.project_exponent(e)
            }
            None if rd.is_inner_disk(r) => GroupElement::identity(),
            None => return Err(TorsionError::InconsistentClasses { region: r }),
        };
        classes.push(g);
    }
    for r in 0..nreg {
        for (other, step) in &nbrs[r] {
            if classes[r] != GroupElement(classes[*other].0.add(&h.project_exponent(step).0)) {
                return Err(TorsionError::InconsistentClasses { region: r });
            }
        }
    }
    Ok(classes)
}

/// `phi(d w / d x)` in the group ring, with `phi` sending letters to exponents.
pub fn fox_derivative<C: Coeff>(
    word: &[Syllable],
    x: &Letter,
    phi: &dyn Fn(&Letter) -> Exponent,
) -> LaurentPoly<C> {
    let mut out = LaurentPoly::zero();
    let mut prefix = Exponent::zero();
    for s in word {
        let img = phi(&s.letter);
        if &s.letter == x {
            if s.power > 0 {
                out.add_term(prefix.clone(), C::one());
            } else {
                out.add_term(prefix.sub(&img), -C::one());
            }
        }
        prefix = if s.power > 0 { prefix.add(&img) } else { prefix.sub(&img) };
    }
    out
}

/// Fox Jacobian of the crossing relators against the unstarred regions,
/// with entries in the group ring of the quotient.
pub fn raw_fox_matrix<C: Coeff>(
    rd: &ResolvedDiagram,
    h: &HomologyModel,
) -> Result<Vec<Vec<LaurentPoly<C>>>, TorsionError> {
    let classes = region_classes(rd, h)?;
    let phi = |l: &Letter| -> Exponent {
        match l {
            Letter::Region(r) => classes[*r].0.clone(),
            Letter::Const(e) => h.project_exponent(e).0,
        }
    };
    let words = fox_words(rd);
    Ok(words
        .iter()
        .map(|w| {
            rd.unstarred()
                .iter()
                .map(|&r| fox_derivative(w, &Letter::Region(r), &phi))
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_rules() {
        type P = LaurentPoly<i64>;
        let phi = |l: &Letter| match l {
            Letter::Region(r) => Exponent::var(*r, 1),
            Letter::Const(e) => e.clone(),
        };
        let (a, b) = (Letter::Region(0), Letter::Region(1));
        // w = a b a^-1: d/da = 1 - a b a^-1, d/db = a
        let w = vec![syl(a.clone(), 1), syl(b.clone(), 1), syl(a.clone(), -1)];
        let da: P = fox_derivative(&w, &a, &phi);
        let mut expect = P::constant(1);
        expect.add_term(Exponent::var(1, 1), -1);
        assert_eq!(da, expect);
        let db: P = fox_derivative(&w, &b, &phi);
        assert_eq!(db, P::var(0));
    }
}
