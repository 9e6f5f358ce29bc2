//! Oracles used by the integration tests. They share no code with the
//! library beyond ring arithmetic.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use bsg_core::diagram::{parse_diagram, GraphDiagram};
use bsg_core::Poly;
use num_traits::Zero;

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Every corpus file, sorted by path, parsed.
pub fn corpus() -> Vec<(String, GraphDiagram)> {
    let mut paths = Vec::new();
    for dir in [corpus_dir(), corpus_dir().join("pendant")] {
        for e in std::fs::read_dir(dir).unwrap() {
            let p = e.unwrap().path();
            if p.extension().is_some_and(|x| x == "bsg") {
                paths.push(p);
            }
        }
    }
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.strip_prefix(corpus_dir()).unwrap().display().to_string();
            let d = parse_diagram(&std::fs::read_to_string(&p).unwrap()).unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, d)
        })
        .collect()
}

/// All permutations of `0..n` with their signs, by recursive insertion.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(n - 1) {
        // inserting n-1 at position i passes over (n-1-i) smaller entries
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            let sign = if (n - 1 - i).is_multiple_of(2) { s } else { -s };
            out.push((q, sign));
        }
    }
    out
}

/// Permutation expansion of the determinant.
pub fn leibniz(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    let mut det = Poly::zero();
    for (p, s) in permutations(n) {
        let mut term = Poly::constant(s);
        for (i, &j) in p.iter().enumerate() {
            term = &term * &m[i][j];
        }
        det = &det + &term;
    }
    det
}

/// One-variable Laurent polynomial, exponent to coefficient.
pub type Laurent1 = BTreeMap<i64, i64>;

fn mul1(a: &Laurent1, b: &Laurent1) -> Laurent1 {
    let mut out = Laurent1::new();
    for (i, x) in a {
        for (j, y) in b {
            *out.entry(i + j).or_insert(0) += x * y;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Representative up to `±t^k`: lowest exponent 0 with positive coefficient.
pub fn normalize1(p: &Laurent1) -> Laurent1 {
    let p: Laurent1 = p.iter().filter(|(_, c)| **c != 0).map(|(e, c)| (*e, *c)).collect();
    let Some((&lo, &c0)) = p.iter().next() else { return p };
    let s = c0.signum();
    p.iter().map(|(e, c)| (e - lo, s * c)).collect()
}

/// Equal up to `±t^k` and `t -> 1/t`.
pub fn equiv1(a: &Laurent1, b: &Laurent1) -> bool {
    let inv: Laurent1 = b.iter().map(|(e, c)| (-e, *c)).collect();
    normalize1(a) == normalize1(b) || normalize1(a) == normalize1(&inv)
}

pub fn from_coeffs(c: &[i64]) -> Laurent1 {
    c.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, x)| (i as i64, *x)).collect()
}

/// Alexander polynomial of a knot from a PD code (`[a, b, c, d]`
/// counterclockwise, `a` the incoming under-strand), by the region state
/// sum: two regions beside label 1 are dropped and each crossing picks one
/// of its corners. Corners are labelled from the under-strand: going
/// counterclockwise from the incoming under-strand, `t, -t, 1, -1`.
pub fn alexander_state_sum(pd: &[[usize; 4]]) -> Laurent1 {
    let n = pd.len();
    // (crossing, position) pairs holding each label
    let mut ends: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (x, l) in pd.iter().enumerate() {
        for (i, &k) in l.iter().enumerate() {
            ends.entry(k).or_default().push((x, i));
        }
    }
    let other = |x: usize, i: usize| -> (usize, usize) {
        let e = &ends[&pd[x][i]];
        if e[0] == (x, i) {
            e[1]
        } else {
            e[0]
        }
    };
    // faces: corner (x, i) lies between positions i and i+1
    let mut face_of = vec![[usize::MAX; 4]; n];
    let mut faces = 0;
    for x0 in 0..n {
        for i0 in 0..4 {
            if face_of[x0][i0] != usize::MAX {
                continue;
            }
            let (mut x, mut i) = (x0, i0);
            while face_of[x][i] == usize::MAX {
                face_of[x][i] = faces;
                let (y, j) = other(x, (i + 1) % 4);
                (x, i) = (y, j);
            }
            faces += 1;
        }
    }
    assert_eq!(faces, n + 2, "PD code is not planar");
    let (x1, i1) = ends[&1][0];
    let dropped = [face_of[x1][i1], face_of[x1][(i1 + 3) % 4]];
    let kept: Vec<usize> = (0..faces).filter(|f| !dropped.contains(f)).collect();
    assert_eq!(kept.len(), n);
    let label = |k: usize| -> Laurent1 {
        match k {
            0 => from_coeffs(&[0, 1]),
            1 => from_coeffs(&[0, -1]),
            2 => from_coeffs(&[1]),
            _ => from_coeffs(&[-1]),
        }
    };
    // weight[x][r]: sum of the labels of the corners of x in region kept[r]
    let mut weight = vec![vec![Laurent1::new(); n]; n];
    for x in 0..n {
        for k in 0..4 {
            if let Some(r) = kept.iter().position(|&f| f == face_of[x][k]) {
                for (e, c) in label(k) {
                    *weight[x][r].entry(e).or_insert(0) += c;
                }
            }
        }
    }
    let mut total = Laurent1::new();
    for (p, s) in permutations(n) {
        let mut term = from_coeffs(&[s]);
        for (x, &r) in p.iter().enumerate() {
            term = mul1(&term, &weight[x][r]);
        }
        for (e, c) in term {
            *total.entry(e).or_insert(0) += c;
        }
    }
    total.retain(|_, c| *c != 0);
    total
}
