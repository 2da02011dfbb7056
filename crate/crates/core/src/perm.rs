//! Permutations of {0, .., n-1} in one-line notation.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    map: Vec<usize>,
}

impl Perm {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return Err(Error::InvalidPermutation(map));
            }
            seen[v] = true;
        }
        Ok(Perm { map })
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            map: (0..n).collect(),
        }
    }

    /// Build from disjoint cycles, e.g. `from_cycles(4, &[&[0, 1, 2]])`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut map: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for i in 0..cycle.len() {
                let from = cycle[i];
                let to = cycle[(i + 1) % cycle.len()];
                if from >= n || to >= n {
                    return Err(Error::InvalidPermutation(cycle.to_vec()));
                }
                map[from] = to;
            }
        }
        Perm::new(map)
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        Perm::from_cycles(n, &[&[a, b]])
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Perm { map: inv }
    }

    /// Composition `self * other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len());
        Perm {
            map: (0..self.len()).map(|i| self.map[other.map[i]]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Parity via cycle count: true for even permutations.
    pub fn is_even(&self) -> bool {
        let n = self.map.len();
        let mut visited = vec![false; n];
        let mut transpositions = 0usize;
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !visited[cur] {
                visited[cur] = true;
                cur = self.map[cur];
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 0
    }

    /// All n! permutations of {0,..,n-1}. Intended for small n only.
    pub fn all(n: usize) -> Vec<Perm> {
        fn rec(prefix: &mut Vec<usize>, remaining: &mut Vec<usize>, out: &mut Vec<Perm>) {
            if remaining.is_empty() {
                out.push(Perm {
                    map: prefix.clone(),
                });
                return;
            }
            for i in 0..remaining.len() {
                let v = remaining.remove(i);
                prefix.push(v);
                rec(prefix, remaining, out);
                prefix.pop();
                remaining.insert(i, v);
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut (0..n).collect(), &mut out);
        out
    }
}
