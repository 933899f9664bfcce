//! Permutations on {0..n-1} with cycle decomposition and conjugacy search.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Perm {
    map: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { map: (0..n).collect() }
    }

    pub fn from_map(map: Vec<usize>) -> Result<Perm> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return Err(Error::Invalid("not a permutation".into()));
            }
            seen[v] = true;
        }
        Ok(Perm { map })
    }

    /// Cycles given with 1-based entries, fixed points may be omitted.
    pub fn from_cycles_1based(cycles: &[Vec<usize>], n: usize) -> Result<Perm> {
        let mut map: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for c in cycles {
            for w in 0..c.len() {
                let a = c[w];
                let b = c[(w + 1) % c.len()];
                if a == 0 || a > n || b == 0 || b > n {
                    return Err(Error::Invalid(format!("cycle entry out of range 1..{n}")));
                }
                if touched[a - 1] {
                    return Err(Error::Invalid(format!("repeated entry {a} in cycles")));
                }
                touched[a - 1] = true;
                map[a - 1] = b - 1;
            }
        }
        Perm::from_map(map)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, e: usize) -> usize {
        self.map[e]
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j] = i;
        }
        Perm { map: inv }
    }

    /// (self * other)(e) = self(other(e)).
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm { map: other.map.iter().map(|&e| self.map[e]).collect() }
    }

    /// Cycle decomposition; each cycle starts at its minimal element and the
    /// cycles are sorted by that element. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.map.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut e = s;
            while !seen[e] {
                seen[e] = true;
                c.push(e);
                e = self.map[e];
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable();
        t
    }
}

/// Search for a bijection phi with phi.s0 = s0'.phi and phi.s1 = s1'.phi.
/// Works orbit by orbit of the group generated by (s0, s1).
pub fn conjugating_bijection(s0: &Perm, s1: &Perm, t0: &Perm, t1: &Perm) -> Option<Vec<usize>> {
    let n = s0.len();
    if s1.len() != n || t0.len() != n || t1.len() != n {
        return None;
    }
    if s0.cycle_type() != t0.cycle_type() || s1.cycle_type() != t1.cycle_type() {
        return None;
    }
    let mut phi: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    if extend(s0, s1, t0, t1, &mut phi, &mut used) {
        Some(phi.into_iter().map(|x| x.unwrap()).collect())
    } else {
        None
    }
}

fn extend(
    s0: &Perm,
    s1: &Perm,
    t0: &Perm,
    t1: &Perm,
    phi: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> bool {
    let n = phi.len();
    let anchor = match (0..n).find(|&i| phi[i].is_none()) {
        Some(a) => a,
        None => return true,
    };
    for cand in 0..n {
        if used[cand] {
            continue;
        }
        let mut added: Vec<usize> = Vec::new();
        if propagate(s0, s1, t0, t1, anchor, cand, phi, used, &mut added)
            && extend(s0, s1, t0, t1, phi, used)
        {
            return true;
        }
        for a in added {
            let img = phi[a].take().unwrap();
            used[img] = false;
        }
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn propagate(
    s0: &Perm,
    s1: &Perm,
    t0: &Perm,
    t1: &Perm,
    from: usize,
    to: usize,
    phi: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    added: &mut Vec<usize>,
) -> bool {
    let mut stack = vec![(from, to)];
    while let Some((a, b)) = stack.pop() {
        match phi[a] {
            Some(img) => {
                if img != b {
                    return false;
                }
                continue;
            }
            None => {
                if used[b] {
                    return false;
                }
                phi[a] = Some(b);
                used[b] = true;
                added.push(a);
                stack.push((s0.apply(a), t0.apply(b)));
                stack.push((s1.apply(a), t1.apply(b)));
                let (ia, ib) = (s0.inverse().apply(a), t0.inverse().apply(b));
                stack.push((ia, ib));
                let (ja, jb) = (s1.inverse().apply(a), t1.inverse().apply(b));
                stack.push((ja, jb));
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cycles: &[Vec<usize>], n: usize) -> Perm {
        Perm::from_cycles_1based(cycles, n).unwrap()
    }

    #[test]
    fn composition_is_right_to_left() {
        // sigma2 = s1^{-1} o s0 on the square pattern gives (1,3)(2,4)
        let s0 = p(&[vec![1, 2, 3, 4]], 4);
        let s1 = p(&[vec![1, 4, 3, 2]], 4);
        let s2 = s1.inverse().compose(&s0);
        assert_eq!(s2.cycles(), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn genus_identity_on_printed_kagome() {
        let s0 = p(&[vec![1, 4, 5, 3, 2, 6]], 6);
        let s1 = p(&[vec![1, 2, 5], vec![3, 4, 6]], 6);
        let s2 = s1.inverse().compose(&s0);
        assert_eq!(s0.cycle_count() + s1.cycle_count() + s2.cycle_count(), 6);
    }

    #[test]
    fn conjugation_found_and_refused() {
        let s0 = p(&[vec![1, 2, 3]], 3);
        let s1 = p(&[vec![1, 3, 2]], 3);
        // relabel by the 3-cycle (1,2,3)
        let g = p(&[vec![1, 2, 3]], 3);
        let t0 = g.compose(&s0).compose(&g.inverse());
        let t1 = g.compose(&s1).compose(&g.inverse());
        let phi = conjugating_bijection(&s0, &s1, &t0, &t1).unwrap();
        for e in 0..3 {
            assert_eq!(phi[s0.apply(e)], t0.apply(phi[e]));
            assert_eq!(phi[s1.apply(e)], t1.apply(phi[e]));
        }
        // different cycle types: no bijection
        let u1 = p(&[vec![1, 2]], 3);
        assert!(conjugating_bijection(&s0, &s1, &s0, &u1).is_none());
    }
}
