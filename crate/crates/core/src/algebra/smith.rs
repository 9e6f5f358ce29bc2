//! Smith and Hermite normal forms of integer matrices.

use super::scalar::Coeff;

pub type IntMatrix<C> = Vec<Vec<C>>;

pub fn identity<C: Coeff>(n: usize) -> IntMatrix<C> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { C::one() } else { C::zero() }).collect())
        .collect()
}

pub fn mat_mul<C: Coeff>(a: &IntMatrix<C>, b: &IntMatrix<C>, inner: usize) -> IntMatrix<C> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(C::zero(), |acc, k| acc.add_c(&row[k].mul_c(&b[k][j])))
                })
                .collect()
        })
        .collect()
}

/// `u * a * v = diag`, with `u`, `v` unimodular and `v_inv` the inverse of `v`.
#[derive(Clone, Debug)]
pub struct SmithForm<C> {
    pub u: IntMatrix<C>,
    pub v: IntMatrix<C>,
    pub v_inv: IntMatrix<C>,
    /// Diagonal entries, length `min(rows, cols)`, non-negative, each dividing the next
    /// among the nonzero ones; zeros come last.
    pub diagonal: Vec<C>,
    pub rows: usize,
    pub cols: usize,
}

impl<C: Coeff> SmithForm<C> {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// Columns of `v` that span the integer kernel `{x : a x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<C>> {
        let r = self.rank();
        (r..self.cols).map(|j| self.v.iter().map(|row| row[j].clone()).collect()).collect()
    }
}

struct Work<C> {
    a: IntMatrix<C>,
    u: IntMatrix<C>,
    v: IntMatrix<C>,
    v_inv: IntMatrix<C>,
}

impl<C: Coeff> Work<C> {
    // row_i += q * row_k
    fn row_add(&mut self, i: usize, k: usize, q: &C) {
        for m in [&mut self.a, &mut self.u] {
            let src = m[k].clone();
            for (x, s) in m[i].iter_mut().zip(src) {
                *x = x.add_c(&q.mul_c(&s));
            }
        }
    }

    fn row_swap(&mut self, i: usize, k: usize) {
        self.a.swap(i, k);
        self.u.swap(i, k);
    }

    fn row_neg(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -x.clone();
            }
        }
    }

    // col_j += q * col_k
    fn col_add(&mut self, j: usize, k: usize, q: &C) {
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                let s = row[k].clone();
                row[j] = row[j].add_c(&q.mul_c(&s));
            }
        }
        let src = self.v_inv[j].clone();
        for (x, s) in self.v_inv[k].iter_mut().zip(src) {
            *x = x.sub_c(&q.mul_c(&s));
        }
    }

    fn col_swap(&mut self, j: usize, k: usize) {
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                row.swap(j, k);
            }
        }
        self.v_inv.swap(j, k);
    }
}

pub fn smith_normal_form<C: Coeff>(a: &IntMatrix<C>, cols: usize) -> SmithForm<C> {
    let rows = a.len();
    assert!(a.iter().all(|r| r.len() == cols), "ragged matrix");
    let mut w = Work { a: a.clone(), u: identity(rows), v: identity(cols), v_inv: identity(cols) };
    let steps = rows.min(cols);
    for t in 0..steps {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &w.a[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < w.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !w.a[i][t].is_zero() {
                    let q = w.a[i][t].div_floor(&w.a[t][t]);
                    w.row_add(i, t, &-q);
                    if !w.a[i][t].is_zero() {
                        w.row_swap(i, t);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !w.a[t][j].is_zero() {
                    let q = w.a[t][j].div_floor(&w.a[t][t]);
                    w.col_add(j, t, &-q);
                    if !w.a[t][j].is_zero() {
                        w.col_swap(j, t);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            let p = w.a[t][t].clone();
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !w.a[i][j].is_multiple_of(&p));
            match bad {
                Some((i, _)) => w.row_add(t, i, &C::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.row_neg(t);
        }
    }
    let diagonal = (0..steps).map(|i| w.a[i][i].clone()).collect();
    SmithForm { u: w.u, v: w.v, v_inv: w.v_inv, diagonal, rows, cols }
}

/// Row-reduced echelon form over the integers (Hermite form with entries
/// above each pivot reduced). Returns the nonzero rows and pivot columns.
pub fn hermite_form<C: Coeff>(a: &IntMatrix<C>, cols: usize) -> (IntMatrix<C>, Vec<usize>) {
    let mut m = a.clone();
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid down the column until a single nonzero entry remains at row r
        loop {
            let nz: Vec<usize> = (r..rows).filter(|&i| !m[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| m[i][c].abs()).unwrap();
            m.swap(r, piv);
            let mut done = true;
            for i in r + 1..rows {
                if !m[i][c].is_zero() {
                    let q = m[i][c].div_floor(&m[r][c]);
                    let src = m[r].clone();
                    for (x, s) in m[i].iter_mut().zip(&src) {
                        *x = x.sub_c(&q.mul_c(s));
                    }
                    if !m[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -x.clone();
            }
        }
        let src = m[r].clone();
        for i in 0..r {
            let q = m[i][c].div_floor(&src[c]);
            if !q.is_zero() {
                for (x, s) in m[i].iter_mut().zip(&src) {
                    *x = x.sub_c(&q.mul_c(s));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: Vec<Vec<i64>>, cols: usize) -> SmithForm<i64> {
        let s = smith_normal_form(&a, cols);
        let uav = mat_mul(&mat_mul(&s.u, &a, a.len()), &s.v, cols);
        for (i, row) in uav.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expect = if i == j { s.diagonal[i] } else { 0 };
                assert_eq!(*x, expect, "UAV mismatch at ({i},{j})");
            }
        }
        let vv = mat_mul(&s.v, &s.v_inv, cols);
        assert_eq!(vv, identity::<i64>(cols));
        let nz: Vec<i64> = s.diagonal.iter().copied().filter(|d| *d != 0).collect();
        assert!(nz.windows(2).all(|w| w[1] % w[0] == 0));
        s
    }

    #[test]
    fn theta_relations() {
        let s = check(vec![vec![1, 1, 1], vec![1, 1, 1]], 3);
        assert_eq!(s.diagonal, vec![1, 0]);
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn torsion_is_visible() {
        let s = check(vec![vec![2, 4], vec![6, 8]], 2);
        assert_eq!(s.diagonal, vec![2, 4]);
        let s = check(vec![vec![4, 6]], 2);
        assert_eq!(s.diagonal, vec![2]);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = vec![vec![1i64, 1, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 1, 1]];
        let s = check(a.clone(), 4);
        let k = s.kernel_basis();
        assert_eq!(k.len(), 1);
        for row in &a {
            assert_eq!(row.iter().zip(&k[0]).map(|(x, y)| x * y).sum::<i64>(), 0);
        }
    }

    #[test]
    fn hermite_reduces_above_pivots() {
        let (h, piv) = hermite_form(&vec![vec![1i64, 1, 0], vec![1, 0, 1], vec![0, 1, 1]], 3);
        assert_eq!(piv, vec![0, 1, 2]);
        assert_eq!(h[0][1], 0);
        let (h, piv) = hermite_form(&vec![vec![1i64, 1, 1], vec![1, 1, 1]], 3);
        assert_eq!(piv, vec![0]);
        assert_eq!(h, vec![vec![1, 1, 1]]);
    }
}
