//! Generic finitely presented group machinery: coset enumeration, word
//! tracing, orbits on coset spaces, Reidemeister-Schreier rewriting, and
//! Smith normal form.

pub mod cache;
pub mod rewrite;
pub mod snf;
pub mod todd_coxeter;

pub use cache::{cache_key, read_cached_table, write_cached_table};
pub use rewrite::{reidemeister_schreier, SubgroupPresentation};
pub use snf::{smith_normal_form, IntMatrix, SnfOutcome};
pub use todd_coxeter::{todd_coxeter, CosetTable, TcError};

use crate::words::free_reduce;

/// A finite presentation: `ngens` abstract generators and relators given as
/// freely reduced words of signed 1-based generator indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub ngens: usize,
    pub names: Vec<String>,
    pub relators: Vec<Vec<i32>>,
}

impl Presentation {
    pub fn new(names: &[&str], relators: Vec<Vec<i32>>) -> Self {
        Presentation {
            ngens: names.len(),
            names: names.iter().map(|s| s.to_string()).collect(),
            relators: relators.iter().map(|r| free_reduce(r)).collect(),
        }
    }

    /// Stable serialization for cache keys.
    pub fn ser_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(&(self.ngens as u32).to_le_bytes());
        for n in &self.names {
            out.extend_from_slice(&(n.len() as u32).to_le_bytes());
            out.extend_from_slice(n.as_bytes());
        }
        for r in &self.relators {
            out.extend_from_slice(&(r.len() as u32).to_le_bytes());
            for &x in r {
                out.extend_from_slice(&x.to_le_bytes());
            }
        }
        out
    }
}

/// Letter encoding used by the tables: generator i (1-based, signed) maps to
/// column 2(i-1) for positive and 2(i-1)+1 for negative occurrences.
pub fn letter_col(x: i32) -> usize {
    debug_assert!(x != 0);
    let g = (x.unsigned_abs() as usize) - 1;
    if x > 0 {
        2 * g
    } else {
        2 * g + 1
    }
}

pub fn col_inverse(c: usize) -> usize {
    c ^ 1
}

/// Orbit partition of the coset space under right multiplication by words.
/// Returns orbit id per coset (ids are 0-based, ordered by least element).
pub fn orbits(table: &CosetTable, acting_words: &[Vec<i32>]) -> Vec<usize> {
    let n = table.len();
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for c in 0..n {
        for w in acting_words {
            let d = table.trace(c, w);
            let (a, b) = (find(&mut uf, c), find(&mut uf, d));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                uf[hi] = lo;
            }
        }
    }
    // renumber roots in order of least member
    let mut ids = vec![usize::MAX; n];
    let mut next = 0;
    let mut out = vec![0usize; n];
    for c in 0..n {
        let r = find(&mut uf, c);
        if ids[r] == usize::MAX {
            ids[r] = next;
            next += 1;
        }
        out[c] = ids[r];
    }
    out
}

/// Group the orbit ids into sorted member lists.
pub fn orbit_sets(ids: &[usize]) -> Vec<Vec<usize>> {
    let k = ids.iter().copied().max().map_or(0, |m| m + 1);
    let mut sets = vec![Vec::new(); k];
    for (c, &i) in ids.iter().enumerate() {
        sets[i].push(c);
    }
    sets
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force permutation closure, the oracle for the alternating-group
    /// coset enumeration fixture.
    fn perm_closure(gens: &[Vec<usize>]) -> usize {
        use std::collections::HashSet;
        let id: Vec<usize> = (0..gens[0].len()).collect();
        let mut seen = HashSet::new();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(p) = frontier.pop() {
            for g in gens {
                let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
                if seen.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn a5_presentation_closes_at_sixty() {
        // Oracle: closure of a = (0 1)(2 3), b = (0 2 4) has order 60 and the
        // pair satisfies a^2 = b^3 = (ab)^5 = 1.
        let a = vec![1, 0, 3, 2, 4];
        let b = vec![2, 1, 4, 3, 0];
        // check orders
        let apply = |p: &Vec<usize>, x: usize| p[x];
        let mut ab: Vec<usize> = (0..5).map(|i| apply(&a, apply(&b, i))).collect();
        let mut n = 1;
        while ab != vec![0, 1, 2, 3, 4] {
            ab = (0..5).map(|i| ab[apply(&a, apply(&b, i))]).collect();
            n += 1;
            assert!(n <= 5);
        }
        assert_eq!(n, 5);
        assert_eq!(perm_closure(&[a, b]), 60);

        let p = Presentation::new(
            &["a", "b"],
            vec![vec![1, 1], vec![2, 2, 2], vec![1, 2, 1, 2, 1, 2, 1, 2, 1, 2]],
        );
        let t = todd_coxeter(&p, &[], 10_000).unwrap();
        assert_eq!(t.len(), 60);
    }

    #[test]
    fn trivial_subgroup_of_trivial_quotient() {
        // <a | a> is trivial
        let p = Presentation::new(&["a"], vec![vec![1]]);
        let t = todd_coxeter(&p, &[], 100).unwrap();
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn cyclic_group_and_subgroup() {
        // Z/12 with subgroup <a^4> has index 4
        let p = Presentation::new(&["a"], vec![vec![1; 12]]);
        let t = todd_coxeter(&p, &[vec![1, 1, 1, 1]], 100).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t.trace(0, &[1, 1, 1, 1]), 0);
        assert_eq!(t.trace(0, &[1]), 1);
    }

    #[test]
    fn orbit_partition_basics() {
        let p = Presentation::new(&["a"], vec![vec![1; 6]]);
        let t = todd_coxeter(&p, &[], 100).unwrap();
        assert_eq!(t.len(), 6);
        // no words: singletons
        let ids = orbits(&t, &[]);
        assert_eq!(orbit_sets(&ids).len(), 6);
        // acting by a^2: two orbits of size 3
        let ids = orbits(&t, &[vec![1, 1]]);
        let sets = orbit_sets(&ids);
        assert_eq!(sets.len(), 2);
        assert!(sets.iter().all(|s| s.len() == 3));
        assert!(sets[0].contains(&0));
        // orbit sizes sum to index regardless of word order
        let ids2 = orbits(&t, &[vec![1, 1], vec![1, 1, 1, 1]]);
        let total: usize = orbit_sets(&ids2).iter().map(|s| s.len()).sum();
        assert_eq!(total, 6);
    }
}
