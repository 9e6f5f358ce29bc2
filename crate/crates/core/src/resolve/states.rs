use std::thread;

use super::ResolvedDiagram;

/// A bijection from crossings to unstarred regions: `assignment[i]` is the
/// unstarred index of the region crossing `i` is sent to.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State {
    pub assignment: Vec<usize>,
    pub sign: i8,
}

impl State {
    fn new(assignment: Vec<usize>) -> Self {
        let a = inversion_parity(&assignment);
        let b = cycle_parity(&assignment);
        assert_eq!(a, b, "permutation parity disagrees for {assignment:?}");
        State { assignment, sign: a }
    }

    /// `s: c1->R2 c2->R3 ... sign=-1`, one-based.
    pub fn describe(&self) -> String {
        let mut s = String::from("s:");
        for (i, r) in self.assignment.iter().enumerate() {
            s.push_str(&format!(" c{}->R{}", i + 1, r + 1));
        }
        s.push_str(&format!(" sign={}", if self.sign > 0 { "+1" } else { "-1" }));
        s
    }
}

/// Sign of a permutation from its number of inversions.
pub fn inversion_parity(p: &[usize]) -> i8 {
    let mut inv = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign of a permutation from its cycle decomposition.
pub fn cycle_parity(p: &[usize]) -> i8 {
    let mut seen = vec![false; p.len()];
    let mut even_cycles = 0usize;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len % 2 == 0 {
            even_cycles += 1;
        }
    }
    if even_cycles.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Depth-first backtracking over crossings in index order, regions in
/// increasing order; yields states in lexicographic order of assignment.
pub struct StateIter<'a> {
    options: &'a [Vec<usize>],
    used: Vec<bool>,
    // choice[i] = position within options[i] currently taken
    choice: Vec<usize>,
    depth: usize,
    started: bool,
    done: bool,
}

impl<'a> StateIter<'a> {
    fn new(options: &'a [Vec<usize>], regions: usize) -> Self {
        StateIter {
            options,
            used: vec![false; regions],
            choice: Vec::with_capacity(options.len()),
            depth: 0,
            started: false,
            done: false,
        }
    }

    // Try options at the current depth starting from position `from`.
    fn place(&mut self, from: usize) -> bool {
        let opts = &self.options[self.depth];
        for (pos, &r) in opts.iter().enumerate().skip(from) {
            if !self.used[r] {
                self.used[r] = true;
                self.choice.push(pos);
                self.depth += 1;
                return true;
            }
        }
        false
    }

    // Undo the last placement and move it to its next option; false when exhausted.
    fn backtrack(&mut self) -> bool {
        loop {
            let Some(pos) = self.choice.pop() else {
                return false;
            };
            self.depth -= 1;
            let r = self.options[self.depth][pos];
            self.used[r] = false;
            if self.place(pos + 1) {
                return true;
            }
        }
    }
}

impl Iterator for StateIter<'_> {
    type Item = State;

    fn next(&mut self) -> Option<State> {
        if self.done {
            return None;
        }
        let n = self.options.len();
        if self.started
            && (n == 0 || !self.backtrack()) {
                self.done = true;
                return None;
            }
        self.started = true;
        loop {
            if self.depth == n {
                let a = (0..n).map(|i| self.options[i][self.choice[i]]).collect();
                return Some(State::new(a));
            }
            if !self.place(0) && !self.backtrack() {
                self.done = true;
                return None;
            }
        }
    }
}

/// Streams every state of `rd` in lexicographic order.
pub fn enumerate_states(rd: &ResolvedDiagram) -> StateIter<'_> {
    let opts = options(rd);
    StateIter::new(opts, rd.unstarred().len())
}

fn options(rd: &ResolvedDiagram) -> &[Vec<usize>] {
    // adjacency lists live inside the crossing records; collect views once
    rd.adjacency_lists()
}

/// Same states as `enumerate_states`, computed by `jobs` workers that split
/// on the first crossing's choice; the result is in the same order.
pub fn enumerate_states_parallel(rd: &ResolvedDiagram, jobs: usize) -> Vec<State> {
    let opts = options(rd);
    let n = opts.len();
    if jobs <= 1 || n == 0 {
        return enumerate_states(rd).collect();
    }
    let first = opts[0].clone();
    let regions = rd.unstarred().len();
    let mut parts: Vec<Vec<State>> = vec![Vec::new(); first.len()];
    for chunk in (0..first.len()).collect::<Vec<_>>().chunks(first.len().div_ceil(jobs)) {
        thread::scope(|scope| {
            let handles: Vec<_> = chunk
                .iter()
                .map(|&pos| {
                    let first = &first;
                    scope.spawn(move || {
                        let mut pinned = opts.to_vec();
                        pinned[0] = vec![first[pos]];
                        StateIter::new(&pinned, regions).collect::<Vec<_>>()
                    })
                })
                .collect();
            for (h, &pos) in handles.into_iter().zip(chunk) {
                parts[pos] = h.join().expect("state worker panicked");
            }
        });
    }
    parts.into_iter().flatten().collect()
}

/// All `n!` permutations filtered by adjacency. Test oracle; small `n` only.
pub fn brute_force_states(rd: &ResolvedDiagram) -> Vec<State> {
    let opts = options(rd);
    let n = opts.len();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if perm.iter().enumerate().all(|(i, r)| opts[i].contains(r)) {
            out.push(State::new(perm.clone()));
        }
        // next permutation in lexicographic order
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else { break };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parities_agree() {
        assert_eq!(inversion_parity(&[]), 1);
        assert_eq!(inversion_parity(&[1, 2, 3, 0, 4]), -1);
        assert_eq!(cycle_parity(&[1, 2, 3, 0, 4]), -1);
        assert_eq!(cycle_parity(&[1, 0, 3, 2]), 1);
        assert_eq!(inversion_parity(&[0, 1, 2]), 1);
    }

    #[test]
    fn iterator_on_raw_options() {
        let opts = vec![vec![0, 1], vec![0, 1], vec![2]];
        let all: Vec<Vec<usize>> = StateIter::new(&opts, 3).map(|s| s.assignment).collect();
        assert_eq!(all, vec![vec![0, 1, 2], vec![1, 0, 2]]);
        let empty: Vec<Vec<usize>> = vec![];
        assert_eq!(StateIter::new(&empty, 0).count(), 1);
        let stuck = vec![vec![0], vec![0]];
        assert_eq!(StateIter::new(&stuck, 2).count(), 0);
    }
}
