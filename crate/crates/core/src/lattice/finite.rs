//! Finite subgroups as explicit element lists with words, breadth-first
//! balls of the lattice, point stabilizer searches, and expression of
//! elements as words in a given generating set.

use crate::rep::{ball_action, fixes_exact, BallPoint, ProjElement};
use crate::words::Word;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("closure exceeded the cap of {0} elements")]
    ClosureCap(usize),
    #[error("stabilizer search at depth {depth} found order {found}, expected {expected}")]
    StabilizerMismatch {
        depth: usize,
        found: usize,
        expected: usize,
    },
    #[error("element not reachable within radius {0}")]
    NotReached(usize),
}

/// A finite subgroup given by its full element list; every element carries
/// a word in the ambient generators.
#[derive(Clone)]
pub struct FiniteSubgroup {
    pub elems: Vec<ProjElement>,
    index: HashMap<Vec<u8>, usize>,
}

impl FiniteSubgroup {
    /// Close a generating set under multiplication, breadth first, so each
    /// element receives a shortest-possible word over the generators.
    pub fn closure(gens: &[ProjElement], cap: usize) -> Result<Self, SearchError> {
        let mut elems = vec![ProjElement::identity()];
        let mut index = HashMap::new();
        index.insert(elems[0].key(), 0usize);
        let mut head = 0;
        while head < elems.len() {
            let cur = elems[head].clone();
            head += 1;
            for g in gens {
                for h in [cur.mul(g), cur.mul(&g.inverse())] {
                    if !index.contains_key(&h.key()) {
                        if elems.len() >= cap {
                            return Err(SearchError::ClosureCap(cap));
                        }
                        index.insert(h.key(), elems.len());
                        elems.push(h);
                    }
                }
            }
        }
        Ok(FiniteSubgroup { elems, index })
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, g: &ProjElement) -> bool {
        self.index.contains_key(&g.key())
    }

    pub fn position(&self, g: &ProjElement) -> Option<usize> {
        self.index.get(&g.key()).copied()
    }

    pub fn is_central(&self, g: &ProjElement) -> bool {
        self.elems.iter().all(|h| h.mul(g) == g.mul(h))
    }
}

/// Breadth-first ball of the group generated by a fixed generator list,
/// grown level by level and shared between stabilizer searches.
pub struct Ball {
    pub gens: Vec<ProjElement>,
    pub elems: Vec<ProjElement>,
    index: HashMap<Vec<u8>, usize>,
    /// elems[..level_end[d]] is the ball of radius d
    pub level_end: Vec<usize>,
}

impl Ball {
    pub fn new(gens: Vec<ProjElement>) -> Self {
        let root = ProjElement::identity();
        let mut index = HashMap::new();
        index.insert(root.key(), 0);
        Ball {
            gens,
            elems: vec![root],
            index,
            level_end: vec![1],
        }
    }

    pub fn radius(&self) -> usize {
        self.level_end.len() - 1
    }

    pub fn grow_to(&mut self, depth: usize) {
        while self.radius() < depth {
            let lo = if self.level_end.len() >= 2 {
                self.level_end[self.level_end.len() - 2]
            } else {
                0
            };
            let hi = self.level_end[self.level_end.len() - 1];
            if lo == hi {
                // frontier empty: the whole (finite) group is enumerated
                self.level_end.push(hi);
                continue;
            }
            for i in lo..hi {
                let cur = self.elems[i].clone();
                for g in 0..self.gens.len() {
                    let gen = self.gens[g].clone();
                    for h in [cur.mul(&gen), cur.mul(&gen.inverse())] {
                        if !self.index.contains_key(&h.key()) {
                            self.index.insert(h.key(), self.elems.len());
                            self.elems.push(h);
                        }
                    }
                }
            }
            self.level_end.push(self.elems.len());
        }
    }

    pub fn position(&self, g: &ProjElement) -> Option<usize> {
        self.index.get(&g.key()).copied()
    }
}

/// Whether an element fixes a ball point: exact projective test when the
/// point carries an exact vector, numeric motion test at 1e-9 otherwise.
pub fn fixes_point(g: &ProjElement, x: &BallPoint) -> bool {
    match &x.exact {
        Some(v) => fixes_exact(g, v),
        None => match ball_action(g, x) {
            Ok(y) => y.dist(x) < 1e-9,
            Err(_) => false,
        },
    }
}

/// Search the ball level by level for elements fixing `x`, closing the
/// collected set after each level; certified complete once the closure
/// reaches `expected_order`.
pub fn point_stabilizer(
    ball: &mut Ball,
    x: &BallPoint,
    expected_order: usize,
    max_depth: usize,
) -> Result<FiniteSubgroup, SearchError> {
    let mut fixers: Vec<ProjElement> = Vec::new();
    for depth in 1..=max_depth {
        ball.grow_to(depth);
        let lo = ball.level_end[depth - 1];
        let hi = ball.level_end[depth];
        for i in lo..hi {
            if fixes_point(&ball.elems[i], x) {
                fixers.push(ball.elems[i].clone());
            }
        }
        if fixers.is_empty() {
            continue;
        }
        let closed = FiniteSubgroup::closure(&fixers, expected_order * 2 + 8)?;
        match closed.order().cmp(&expected_order) {
            std::cmp::Ordering::Equal => {
                debug_assert!(closed.elems.iter().all(|g| fixes_point(g, x)));
                return Ok(closed);
            }
            std::cmp::Ordering::Greater => {
                return Err(SearchError::StabilizerMismatch {
                    depth,
                    found: closed.order(),
                    expected: expected_order,
                })
            }
            std::cmp::Ordering::Less => {}
        }
    }
    let found = if fixers.is_empty() {
        1
    } else {
        FiniteSubgroup::closure(&fixers, expected_order * 2 + 8)?.order()
    };
    Err(SearchError::StabilizerMismatch {
        depth: max_depth,
        found,
        expected: expected_order,
    })
}

/// Express a target element as a word in an abstract generator list via a
/// bidirectional ball search; the result uses signed 1-based indices into
/// `gens`. Radius bounds each half, so words up to 2*radius are found.
pub fn express_in_generators(
    target: &ProjElement,
    gens: &[ProjElement],
    radius: usize,
    cap: usize,
) -> Result<Vec<i32>, SearchError> {
    // ball with abstract index words
    let mut elems: Vec<ProjElement> = vec![ProjElement::identity()];
    let mut words: Vec<Vec<i32>> = vec![vec![]];
    let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
    index.insert(elems[0].key(), 0);

    let check = |elems: &Vec<ProjElement>,
                 words: &Vec<Vec<i32>>,
                 index: &HashMap<Vec<u8>, usize>|
     -> Option<Vec<i32>> {
        // target = left * right with left, right in the ball:
        // left = target * right^{-1}
        for (i, right) in elems.iter().enumerate() {
            let left = target.mul(&right.inverse());
            if let Some(&j) = index.get(&left.key()) {
                let mut w = words[j].clone();
                w.extend_from_slice(&words[i]);
                return Some(w);
            }
        }
        None
    };

    if let Some(w) = check(&elems, &words, &index) {
        return Ok(w);
    }
    let mut lo = 0usize;
    for _ in 1..=radius {
        let hi = elems.len();
        if lo == hi {
            break;
        }
        for i in lo..hi {
            let cur = elems[i].clone();
            let cur_word = words[i].clone();
            for (gi, g) in gens.iter().enumerate() {
                for (h, s) in [(cur.mul(g), 1i32), (cur.mul(&g.inverse()), -1i32)] {
                    if !index.contains_key(&h.key()) {
                        if elems.len() >= cap {
                            return Err(SearchError::ClosureCap(cap));
                        }
                        index.insert(h.key(), elems.len());
                        elems.push(h);
                        let mut w = cur_word.clone();
                        w.push(s * (gi as i32 + 1));
                        words.push(w);
                    }
                }
            }
        }
        lo = hi;
        if let Some(w) = check(&elems, &words, &index) {
            return Ok(w);
        }
    }
    Err(SearchError::NotReached(radius))
}

/// Map each element of a finite subgroup to a word over `ambient_gens`.
pub fn finite_subgroup_words(
    h: &FiniteSubgroup,
    ambient_gens: &[ProjElement],
    radius: usize,
) -> Result<Vec<Vec<i32>>, SearchError> {
    h.elems
        .iter()
        .map(|e| express_in_generators(e, ambient_gens, radius, 4_000_000))
        .collect()
}

/// Word in the ambient u,v,b,j alphabet for an abstract-index word.
pub fn indices_to_word(w: &[i32], gen_words: &[Word]) -> Word {
    let mut acc = Word::identity();
    for &x in w {
        let g = &gen_words[(x.unsigned_abs() as usize) - 1];
        acc = if x > 0 {
            acc.concat(g)
        } else {
            acc.concat(&g.inverse())
        };
    }
    acc
}
