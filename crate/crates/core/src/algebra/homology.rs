use num_traits::Zero;

use super::poly::{Exponent, LaurentPoly};
use super::scalar::Coeff;
use super::smith::{hermite_form, smith_normal_form, SmithForm};
use super::AlgebraError;

/// How quotient coordinates are chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientBasis {
    /// The non-pivot edge variables of the reduced Hermite form; pivot
    /// variables are eliminated. Coordinates print as edge variables.
    EdgeVariables(Vec<usize>),
    /// Smith coordinates, used only if some Hermite pivot is not a unit.
    Smith,
}

/// Free abelian group `Z^m / <relations>` presented by edge meridians with
/// one relation per vertex (the product of the incident edge meridians).
#[derive(Clone, Debug)]
pub struct HomologyModel {
    m: usize,
    relations: Vec<Vec<i64>>,
    smith: SmithForm<i64>,
    basis: QuotientBasis,
    /// `m x k` integer matrix; a free exponent row vector `x` maps to `x * projection`.
    projection: Vec<Vec<i64>>,
    /// `k x m`; row `i` is a preimage of the `i`-th quotient generator.
    section: Vec<Vec<i64>>,
}

/// An element of the quotient group in canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Exponent);

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement(Exponent::zero())
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_zero()
    }
}

impl HomologyModel {
    /// Builds the model from relation rows over `m` free generators.
    pub fn from_relations(m: usize, relations: Vec<Vec<i64>>) -> Result<Self, AlgebraError> {
        if let Some(r) = relations.iter().find(|r| r.len() != m) {
            return Err(AlgebraError::LengthMismatch { expected: m, found: r.len() });
        }
        let smith = smith_normal_form(&relations, m);
        if let Some(d) = smith.diagonal.iter().find(|d| **d > 1) {
            return Err(AlgebraError::TorsionDetected { factor: *d });
        }
        let rank = smith.rank();
        let k = m - rank;
        let (h, pivots) = hermite_form(&relations, m);
        let unit_pivots = h.iter().zip(&pivots).all(|(row, &p)| row[p] == 1);
        let (basis, projection, section) = if unit_pivots {
            let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
            let mut proj = vec![vec![0i64; k]; m];
            for (fi, &f) in free.iter().enumerate() {
                proj[f][fi] = 1;
            }
            // pivot variable p satisfies x_p = -sum_{free f} h[p][f] x_f
            for (row, &p) in h.iter().zip(&pivots) {
                for (fi, &f) in free.iter().enumerate() {
                    proj[p][fi] = -row[f];
                }
            }
            let sec = free
                .iter()
                .map(|&f| (0..m).map(|c| i64::from(c == f)).collect())
                .collect();
            (QuotientBasis::EdgeVariables(free), proj, sec)
        } else {
            let proj = (0..m).map(|i| smith.v[i][rank..].to_vec()).collect();
            let sec = smith.v_inv[rank..].to_vec();
            (QuotientBasis::Smith, proj, sec)
        };
        Ok(HomologyModel { m, relations, smith, basis, projection, section })
    }

    pub fn num_generators(&self) -> usize {
        self.m
    }

    pub fn rank_of_relations(&self) -> usize {
        self.smith.rank()
    }

    /// Rank of the free quotient.
    pub fn quotient_rank(&self) -> usize {
        self.m - self.smith.rank()
    }

    pub fn relations(&self) -> &[Vec<i64>] {
        &self.relations
    }

    pub fn smith(&self) -> &SmithForm<i64> {
        &self.smith
    }

    pub fn basis(&self) -> &QuotientBasis {
        &self.basis
    }

    pub fn section(&self) -> &[Vec<i64>] {
        &self.section
    }

    /// Printable name of quotient coordinate `i`, e.g. `t3` for edge variables.
    pub fn variable_name(&self, i: usize, prefix: &str) -> String {
        match &self.basis {
            QuotientBasis::EdgeVariables(free) => format!("{prefix}{}", free[i] + 1),
            QuotientBasis::Smith => format!("h{}", i + 1),
        }
    }

    pub fn project(&self, v: &[i64]) -> Result<GroupElement, AlgebraError> {
        if v.len() != self.m {
            return Err(AlgebraError::LengthMismatch { expected: self.m, found: v.len() });
        }
        Ok(self.project_exponent(&Exponent::new(v.to_vec())))
    }

    /// Projection of a free exponent (variables beyond `m` must be absent).
    pub fn project_exponent(&self, e: &Exponent) -> GroupElement {
        assert!(e.support_len() <= self.m, "exponent refers to a variable beyond t{}", self.m);
        let k = self.quotient_rank();
        let mut out = vec![0i64; k];
        for i in 0..e.support_len() {
            let x = e.get(i);
            if x != 0 {
                for (o, p) in out.iter_mut().zip(&self.projection[i]) {
                    *o = o
                        .checked_add(x.checked_mul(*p).expect("exponent overflow"))
                        .expect("exponent overflow");
                }
            }
        }
        GroupElement(Exponent::new(out))
    }

    /// Image of a free Laurent polynomial in the group ring of the quotient.
    pub fn project_poly<C: Coeff>(&self, p: &LaurentPoly<C>) -> LaurentPoly<C> {
        p.map_exponents(|e| self.project_exponent(e).0)
    }

    /// Lift of a quotient element back to free exponents through the section.
    pub fn lift(&self, g: &GroupElement) -> Exponent {
        let mut out = vec![0i64; self.m];
        for i in 0..g.0.support_len() {
            let x = g.0.get(i);
            for (o, s) in out.iter_mut().zip(&self.section[i]) {
                *o += x * s;
            }
        }
        Exponent::new(out)
    }

    fn check_poly<C: Coeff>(&self, p: &LaurentPoly<C>) -> Result<(), AlgebraError> {
        let k = self.quotient_rank();
        if p.support_len() > k {
            return Err(AlgebraError::ModelMismatch { rank: k, found: p.support_len() });
        }
        Ok(())
    }

    /// `unit_equiv` with a check that both sides live in this model's group ring.
    pub fn unit_equiv<C: Coeff>(
        &self,
        p: &LaurentPoly<C>,
        q: &LaurentPoly<C>,
    ) -> Result<bool, AlgebraError> {
        self.check_poly(p)?;
        self.check_poly(q)?;
        Ok(unit_equiv(p, q))
    }

    pub fn format<C: Coeff>(&self, p: &LaurentPoly<C>, prefix: &str) -> String {
        p.display_with(|i| self.variable_name(i, prefix))
    }
}

/// Canonical representative of the orbit `{±h p}`: shifts the lexicographically
/// least exponent to zero and makes its coefficient positive.
pub fn unit_normalize<C: Coeff>(p: &LaurentPoly<C>) -> LaurentPoly<C> {
    let Some((e0, c0)) = p.min_term() else {
        return LaurentPoly::zero();
    };
    let shift = e0.neg();
    let sign = if c0.is_negative() { -C::one() } else { C::one() };
    p.mul_monomial(&shift, &sign)
}

pub fn unit_equiv<C: Coeff>(p: &LaurentPoly<C>, q: &LaurentPoly<C>) -> bool {
    unit_normalize(p) == unit_normalize(q)
}
