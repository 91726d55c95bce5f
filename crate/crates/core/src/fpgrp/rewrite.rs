//! Reidemeister-Schreier rewriting: a presentation of a finite-index
//! subgroup from its closed coset table, on Schreier generators, together
//! with the expression of each Schreier generator as a word in the parent
//! group and a rewriting map for subgroup elements given as parent words.

use super::{CosetTable, Presentation};
use crate::words::free_reduce;

/// Presentation of the subgroup on Schreier generators.
///
/// Schreier generators are indexed 1..=ngens; `parent_words[i-1]` expresses
/// generator i as a word in the parent group's generators.
#[derive(Clone, Debug)]
pub struct SubgroupPresentation {
    pub ngens: usize,
    pub relators: Vec<Vec<i32>>,
    pub parent_words: Vec<Vec<i32>>,
    /// schreier[coset * ngens_parent + g] = signed Schreier index, or 0 for
    /// a tree edge.
    schreier: Vec<i32>,
    ngens_parent: usize,
    /// coset representative words (in the parent generators)
    pub reps: Vec<Vec<i32>>,
}

impl SubgroupPresentation {
    /// Rewrite a parent-group word that lies in the subgroup (traces from
    /// coset 0 back to coset 0) into a word over the Schreier generators.
    pub fn rewrite(&self, table: &CosetTable, word: &[i32]) -> Option<Vec<i32>> {
        let mut out = Vec::new();
        let mut c = 0usize;
        for &x in word {
            let g = (x.unsigned_abs() as usize) - 1;
            if x > 0 {
                let s = self.schreier[c * self.ngens_parent + g];
                if s != 0 {
                    out.push(s);
                }
                c = table.act(c, 2 * g);
            } else {
                let d = table.act(c, 2 * g + 1);
                let s = self.schreier[d * self.ngens_parent + g];
                if s != 0 {
                    out.push(-s);
                }
                c = d;
            }
        }
        if c != 0 {
            return None;
        }
        Some(free_reduce(&out))
    }

    /// Exponent-sum vector of a Schreier word (abelianization).
    pub fn abelianize(&self, word: &[i32]) -> Vec<i64> {
        let mut v = vec![0i64; self.ngens];
        for &x in word {
            let i = (x.unsigned_abs() as usize) - 1;
            v[i] += x.signum() as i64;
        }
        v
    }
}

/// Compute the Reidemeister-Schreier data for the subgroup of `p` whose
/// coset table is `t`, using the breadth-first Schreier tree (which exists
/// because the standardized table is BFS-ordered).
pub fn reidemeister_schreier(t: &CosetTable, p: &Presentation) -> SubgroupPresentation {
    let n = t.len();
    let ng = p.ngens;

    // BFS tree over positive and negative letters in column order.
    let mut tree: Vec<Option<(usize, i32)>> = vec![None; n]; // coset -> (parent coset, signed letter)
    let mut order = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let c = order[head];
        head += 1;
        for col in 0..2 * ng {
            let d = t.act(c, col);
            if !seen[d] {
                seen[d] = true;
                let letter = if col % 2 == 0 {
                    (col / 2 + 1) as i32
                } else {
                    -((col / 2 + 1) as i32)
                };
                tree[d] = Some((c, letter));
                order.push(d);
            }
        }
    }
    assert_eq!(order.len(), n, "coset table is not connected");

    // representative words
    let mut reps: Vec<Vec<i32>> = vec![Vec::new(); n];
    for &c in order.iter().skip(1) {
        let (par, letter) = tree[c].unwrap();
        let mut w = reps[par].clone();
        w.push(letter);
        reps[c] = w;
    }

    // Schreier generator numbering: nonzero on non-tree (coset, gen) pairs.
    // A tree edge c -g-> d (positive letter) or d -g-> c (negative letter
    // from c means tree[c] = (d, -g) i.e. edge d = c . g^{-1}, so the tree
    // pair is (d, g) ... handled below by marking.
    let mut is_tree = vec![false; n * ng];
    for &c in order.iter().skip(1) {
        let (par, letter) = tree[c].unwrap();
        if letter > 0 {
            is_tree[par * ng + (letter as usize - 1)] = true;
        } else {
            // parent -g^{-1}-> c means c -g-> parent is the same edge
            is_tree[c * ng + ((-letter) as usize - 1)] = true;
        }
    }
    let mut schreier = vec![0i32; n * ng];
    let mut parent_words = Vec::new();
    let mut next = 1i32;
    for c in 0..n {
        for g in 0..ng {
            if !is_tree[c * ng + g] {
                schreier[c * ng + g] = next;
                // word: rep(c) g rep(c.g)^{-1}
                let d = t.act(c, 2 * g);
                let mut w = reps[c].clone();
                w.push((g + 1) as i32);
                w.extend(reps[d].iter().rev().map(|&x| -x));
                parent_words.push(free_reduce(&w));
                next += 1;
            }
        }
    }

    let sp = SubgroupPresentation {
        ngens: (next - 1) as usize,
        relators: Vec::new(),
        parent_words,
        schreier,
        ngens_parent: ng,
        reps,
    };

    // relators: each parent relator rewritten at each coset
    let mut relators = Vec::new();
    for r in &p.relators {
        for c in 0..n {
            // rewrite r conjugated to start at coset c: the scan of r at c
            let mut out = Vec::new();
            let mut cur = c;
            for &x in r {
                let g = (x.unsigned_abs() as usize) - 1;
                if x > 0 {
                    let s = sp.schreier[cur * ng + g];
                    if s != 0 {
                        out.push(s);
                    }
                    cur = t.act(cur, 2 * g);
                } else {
                    let d = t.act(cur, 2 * g + 1);
                    let s = sp.schreier[d * ng + g];
                    if s != 0 {
                        out.push(-s);
                    }
                    cur = d;
                }
            }
            debug_assert_eq!(cur, c, "relator does not close at coset");
            let out = free_reduce(&out);
            if !out.is_empty() {
                relators.push(out);
            }
        }
    }

    SubgroupPresentation { relators, ..sp }
}

/// Light Tietze simplification: free and cyclic reduction plus iterated
/// elimination of generators that occur exactly once across all relators.
pub fn tietze_reduce(ngens: usize, relators: &[Vec<i32>]) -> (usize, Vec<Vec<i32>>) {
    let mut rels: Vec<Vec<i32>> = relators
        .iter()
        .map(|r| crate::words::cyclic_reduce(r))
        .filter(|r| !r.is_empty())
        .collect();
    let mut alive: Vec<bool> = vec![true; ngens];
    loop {
        // occurrence counts
        let mut count = vec![0usize; ngens];
        let mut where_at: Vec<(usize, usize)> = vec![(usize::MAX, usize::MAX); ngens];
        for (ri, r) in rels.iter().enumerate() {
            for (pos, &x) in r.iter().enumerate() {
                let g = (x.unsigned_abs() as usize) - 1;
                count[g] += 1;
                where_at[g] = (ri, pos);
            }
        }
        // a generator occurring exactly once: solve its relator for it and
        // substitute (the relator simply disappears along with the gen)
        let Some(g) = (0..ngens).find(|&g| alive[g] && count[g] == 1) else {
            break;
        };
        let (ri, pos) = where_at[g];
        // g = inverse of the rest of the cyclic word; other relators do not
        // mention g, so dropping the relator eliminates g entirely.
        let _ = pos;
        rels.swap_remove(ri);
        alive[g] = false;
    }
    // renumber alive generators compactly
    let mut newid = vec![0i32; ngens];
    let mut next = 1;
    for g in 0..ngens {
        if alive[g] {
            newid[g] = next;
            next += 1;
        }
    }
    let rels = rels
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| {
                    let g = (x.unsigned_abs() as usize) - 1;
                    assert!(alive[g]);
                    newid[g] * x.signum()
                })
                .collect()
        })
        .collect();
    ((next - 1) as usize, rels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgrp::todd_coxeter;

    #[test]
    fn index_one_recovers_original_up_to_free_reduction() {
        let p = Presentation::new(&["a", "b"], vec![vec![1, 1], vec![2, 2, 2]]);
        let t = todd_coxeter(&p, &[vec![1], vec![2]], 100).unwrap();
        assert_eq!(t.len(), 1);
        let sp = reidemeister_schreier(&t, &p);
        assert_eq!(sp.ngens, 2);
        assert_eq!(sp.relators.len(), 2);
        assert_eq!(sp.relators[0], vec![1, 1]);
        assert_eq!(sp.relators[1], vec![2, 2, 2]);
    }

    #[test]
    fn index_two_in_z_gives_z() {
        // subgroup <a^2> of Z = <a|> has index 2 and is infinite cyclic
        let p = Presentation::new(&["a"], vec![]);
        let t = todd_coxeter(&p, &[vec![1, 1]], 100).unwrap();
        assert_eq!(t.len(), 2);
        let sp = reidemeister_schreier(&t, &p);
        assert_eq!(sp.ngens, 1);
        assert!(sp.relators.is_empty());
        assert_eq!(sp.parent_words[0], vec![1, 1]);
        // rewriting a^2 gives the single Schreier generator
        assert_eq!(sp.rewrite(&t, &[1, 1]).unwrap(), vec![1]);
        assert_eq!(sp.rewrite(&t, &[1]), None);
    }

    #[test]
    fn klein_bottle_like_subgroup() {
        // index-2 subgroup of Z^2 = <a, b | [a,b]>: generated by a, b^2, with
        // abelianization Z^2 again
        let p = Presentation::new(&["a", "b"], vec![vec![1, 2, -1, -2]]);
        let t = todd_coxeter(&p, &[vec![1], vec![2, 2]], 100).unwrap();
        assert_eq!(t.len(), 2);
        let sp = reidemeister_schreier(&t, &p);
        // 2 cosets x 2 gens - 1 tree edge = 3 Schreier gens
        assert_eq!(sp.ngens, 3);
        assert_eq!(sp.relators.len(), 2);
    }
}
