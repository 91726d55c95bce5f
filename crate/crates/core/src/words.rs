//! Words over the lattice generators u, v, b, j and over the subgroup
//! generators a1, a2, a3 with j^4-twist letters.
//!
//! The string grammar used by the frozen word tables: whitespace-separated
//! tokens, each a letter name optionally followed by `^` and an integer
//! exponent, with `'` as shorthand for exponent -1. Examples:
//! `"v u v' j4 b u v j2"`, `"a2 a1^-2 a3^-3 a1^-1"`.

use std::fmt;

/// Generator of the ambient lattice.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Gen {
    U,
    V,
    B,
    J,
}

impl Gen {
    pub fn idx(self) -> usize {
        match self {
            Gen::U => 0,
            Gen::V => 1,
            Gen::B => 2,
            Gen::J => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Gen::U => "u",
            Gen::V => "v",
            Gen::B => "b",
            Gen::J => "j",
        }
    }
}

/// Freely reduced word over u, v, b, j: a sequence of signed letters.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<(Gen, i32)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: Gen) -> Self {
        Word(vec![(g, 1)])
    }

    pub fn parse(s: &str) -> Self {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let (g, e) = parse_token(tok, &[("u", Gen::U), ("v", Gen::V), ("b", Gen::B), ("j", Gen::J)]);
            if e != 0 {
                letters.push((g, e));
            }
        }
        Word(letters).reduced()
    }

    pub fn reduced(&self) -> Self {
        let mut out: Vec<(Gen, i32)> = Vec::with_capacity(self.0.len());
        for &(g, e) in &self.0 {
            if let Some(last) = out.last_mut() {
                if last.0 == g {
                    last.1 += e;
                    if last.1 == 0 {
                        out.pop();
                    }
                    continue;
                }
            }
            out.push((g, e));
        }
        Word(out)
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v).reduced()
    }

    pub fn conjugate_by(&self, h: &Word) -> Self {
        h.concat(self).concat(&h.inverse())
    }

    pub fn pow(&self, n: i32) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity();
        for _ in 0..n.abs() {
            acc = acc.concat(&base);
        }
        acc
    }

    /// Signed single letters, e.g. v^-2 becomes two v^-1 steps.
    pub fn letters(&self) -> impl Iterator<Item = (Gen, i32)> + '_ {
        self.0.iter().flat_map(|&(g, e)| {
            let s = e.signum();
            (0..e.abs()).map(move |_| (g, s))
        })
    }

    pub fn len_letters(&self) -> usize {
        self.0.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }

    /// Expand j = (uv)^2 to obtain a word over u, v, b only, as signed
    /// generator indices (1 = u, 2 = v, 3 = b) for coset enumeration.
    pub fn expand_j(&self) -> Vec<i32> {
        let mut out = Vec::new();
        for (g, s) in self.letters() {
            match g {
                Gen::U => out.push(s),
                Gen::V => out.push(2 * s),
                Gen::B => out.push(3 * s),
                Gen::J => {
                    if s > 0 {
                        out.extend_from_slice(&[1, 2, 1, 2]);
                    } else {
                        out.extend_from_slice(&[-2, -1, -2, -1]);
                    }
                }
            }
        }
        free_reduce(&out)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    g.name().to_string()
                } else {
                    format!("{}^{}", g.name(), e)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Letter of a word in the index-864 subgroup: a generator a1/a2/a3 with
/// sign, or a twist step j^{±4}.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PiLetter {
    A(usize, i32),
    Twist(i32),
}

/// Word over a1, a2, a3 and j^{±4}.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PiWord(pub Vec<PiLetter>);

impl PiWord {
    pub fn parse(s: &str) -> Self {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            if let Some(rest) = tok.strip_prefix('a') {
                let (idx_str, exp) = split_exponent(rest);
                let idx: usize = idx_str.parse().expect("generator index");
                assert!((1..=3).contains(&idx), "bad generator {tok}");
                let s = exp.signum();
                for _ in 0..exp.abs() {
                    out.push(PiLetter::A(idx, s));
                }
            } else if let Some(rest) = tok.strip_prefix('j') {
                let (_, exp) = split_exponent(&format!("^{rest}"));
                assert!(exp % 4 == 0 && exp != 0, "twist letters must be j^(4k): {tok}");
                let s = exp.signum();
                for _ in 0..exp.abs() / 4 {
                    out.push(PiLetter::Twist(s));
                }
            } else {
                panic!("bad token {tok}");
            }
        }
        PiWord(out)
    }

    pub fn inverse(&self) -> Self {
        PiWord(
            self.0
                .iter()
                .rev()
                .map(|l| match *l {
                    PiLetter::A(i, s) => PiLetter::A(i, -s),
                    PiLetter::Twist(s) => PiLetter::Twist(-s),
                })
                .collect(),
        )
    }

    pub fn concat(&self, other: &PiWord) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        PiWord(v)
    }

    /// j^4 w j^-4.
    pub fn twist_conjugate(&self) -> Self {
        let mut v = vec![PiLetter::Twist(1)];
        v.extend_from_slice(&self.0);
        v.push(PiLetter::Twist(-1));
        PiWord(v)
    }

    /// Net twist count (j-exponent divided by 4).
    pub fn net_twist(&self) -> i64 {
        self.0
            .iter()
            .map(|l| match *l {
                PiLetter::Twist(s) => s as i64,
                _ => 0,
            })
            .sum()
    }

    /// Rewrite into a plain word over u, v, b, j given the generator words.
    pub fn to_word(&self, a_words: &[Word; 3]) -> Word {
        let j4 = Word::parse("j4");
        let mut acc = Word::identity();
        for l in &self.0 {
            let piece = match *l {
                PiLetter::A(i, 1) => a_words[i - 1].clone(),
                PiLetter::A(i, _) => a_words[i - 1].inverse(),
                PiLetter::Twist(1) => j4.clone(),
                PiLetter::Twist(_) => j4.inverse(),
            };
            acc = acc.concat(&piece);
        }
        acc
    }
}

fn split_exponent(rest: &str) -> (&str, i32) {
    if let Some(q) = rest.strip_suffix('\'') {
        (q, -1)
    } else if let Some(pos) = rest.find('^') {
        let e: i32 = rest[pos + 1..].parse().expect("exponent");
        (&rest[..pos], e)
    } else {
        (rest, 1)
    }
}

fn parse_token(tok: &str, names: &[(&str, Gen)]) -> (Gen, i32) {
    for &(n, g) in names {
        if let Some(rest) = tok.strip_prefix(n) {
            // rest is an exponent spec: "", "'", "4", "4'", "^-3"
            let (base, quote) = match rest.strip_suffix('\'') {
                Some(b) => (b, true),
                None => (rest, false),
            };
            let mut e: i32 = if base.is_empty() {
                1
            } else if let Some(stripped) = base.strip_prefix('^') {
                stripped.parse().expect("exponent")
            } else {
                base.parse().expect("exponent")
            };
            if quote {
                e = -e;
            }
            return (g, e);
        }
    }
    panic!("unknown token {tok}");
}

/// Free reduction of a signed-index word (nonzero integers, g and -g cancel).
pub fn free_reduce(w: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &x in w {
        if x == 0 {
            continue;
        }
        if let Some(&last) = out.last() {
            if last == -x {
                out.pop();
                continue;
            }
        }
        out.push(x);
    }
    out
}

/// Cyclic reduction: strip inverse pairs straddling the ends.
pub fn cyclic_reduce(w: &[i32]) -> Vec<i32> {
    let mut v = free_reduce(w);
    while v.len() >= 2 && v[0] == -v[v.len() - 1] {
        v.pop();
        v.remove(0);
    }
    v
}

/// Substitute each letter by a word: positive index i maps to defs[i-1].
pub fn substitute(w: &[i32], defs: &[Vec<i32>]) -> Vec<i32> {
    let mut out = Vec::new();
    for &x in w {
        let d = &defs[(x.unsigned_abs() as usize) - 1];
        if x > 0 {
            out.extend_from_slice(d);
        } else {
            out.extend(d.iter().rev().map(|&y| -y));
        }
    }
    free_reduce(&out)
}

/// Whether two cyclically reduced words are equal up to rotation.
pub fn cyclic_rotation_eq(a: &[i32], b: &[i32]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|k| a.iter().cycle().skip(k).take(a.len()).eq(b.iter()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reduce() {
        let w = Word::parse("v u v' j4 b u v j2");
        assert_eq!(w.len_letters(), 12);
        let id = w.concat(&w.inverse());
        assert_eq!(id, Word::identity());
        let t = Word::parse("u u' v2 v^-2");
        assert_eq!(t, Word::identity());
        assert_eq!(Word::parse("j9").0, vec![(Gen::J, 9)]);
        assert_eq!(Word::parse("v2'").0, vec![(Gen::V, -2)]);
    }

    #[test]
    fn expand_j_basics() {
        assert_eq!(Word::parse("j").expand_j(), vec![1, 2, 1, 2]);
        assert_eq!(Word::parse("j'").expand_j(), vec![-2, -1, -2, -1]);
        assert_eq!(Word::parse("u j u'").expand_j(), vec![1, 1, 2, 1, 2, -1]);
    }

    #[test]
    fn pi_word_parsing() {
        let w = PiWord::parse("a2 a1^-2 a3^-3 a1^-1");
        assert_eq!(w.0.len(), 7);
        assert_eq!(w.net_twist(), 0);
        let t = PiWord::parse("j8 a1 j4");
        assert_eq!(t.net_twist(), 3);
        assert_eq!(t.0.len(), 4);
    }

    #[test]
    fn free_and_cyclic_reduction() {
        assert_eq!(free_reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(cyclic_reduce(&[1, 2, 3, -1]), vec![2, 3]);
        assert!(cyclic_rotation_eq(&[1, 2, 3], &[3, 1, 2]));
        assert!(!cyclic_rotation_eq(&[1, 2], &[2, 2]));
    }

    #[test]
    fn substitution() {
        // x -> ab, y -> b^-1: xy -> a
        let defs = vec![vec![1, 2], vec![-2]];
        assert_eq!(substitute(&[1, 2], &defs), vec![1]);
        assert_eq!(substitute(&[-1], &defs), vec![-2, -1]);
    }
}
