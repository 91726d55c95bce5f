//! The two congruence quotients: reductions of the integral matrix frame
//! into PU(3, F_4) and PU(3, F_9), the determinant character mod 2, and the
//! order-21 image subgroup that cuts out the torsion-free sublattice.

use crate::cyclo::{CycloError, GFElem};
use crate::rep::{Gens, Mat3, ProjElement};
use crate::words::{Gen, Word};
use std::collections::HashSet;

/// 3x3 matrix over F_4 or F_9.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mat3GF {
    pub p: u8,
    pub e: [[GFElem; 3]; 3],
}

pub type GFKey = [u8; 19];

impl Mat3GF {
    pub fn identity(p: u8) -> Self {
        let mut e = [[GFElem::zero(p); 3]; 3];
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = GFElem::one(p);
        }
        Mat3GF { p, e }
    }

    pub fn mul(&self, rhs: &Mat3GF) -> Mat3GF {
        debug_assert_eq!(self.p, rhs.p);
        let mut out = Mat3GF {
            p: self.p,
            e: [[GFElem::zero(self.p); 3]; 3],
        };
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = GFElem::zero(self.p);
                for k in 0..3 {
                    acc = acc + self.e[i][k] * rhs.e[k][j];
                }
                out.e[i][j] = acc;
            }
        }
        out
    }

    pub fn det(&self) -> GFElem {
        let m = &self.e;
        let t1 = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
        let t2 = m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]);
        let t3 = m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        t1 - t2 + t3
    }

    pub fn scale(&self, s: GFElem) -> Mat3GF {
        let mut out = *self;
        for row in out.e.iter_mut() {
            for x in row.iter_mut() {
                *x = *x * s;
            }
        }
        out
    }

    fn raw_key(&self) -> GFKey {
        let mut k = [0u8; 19];
        k[0] = self.p;
        for i in 0..3 {
            for j in 0..3 {
                k[1 + 2 * (3 * i + j)] = self.e[i][j].a;
                k[2 + 2 * (3 * i + j)] = self.e[i][j].b;
            }
        }
        k
    }

    /// The unitary scalars of the projective quotient: cube roots of unity
    /// in F_4, fourth roots of unity in F_9.
    pub fn unit_scalars(p: u8) -> Vec<GFElem> {
        match p {
            2 => vec![
                GFElem::new(2, 1, 0),
                GFElem::new(2, 0, 1),
                GFElem::new(2, 1, 1),
            ],
            3 => vec![
                GFElem::new(3, 1, 0),
                GFElem::new(3, 0, 1),
                GFElem::new(3, 2, 0),
                GFElem::new(3, 0, 2),
            ],
            _ => unreachable!(),
        }
    }

    /// Canonical key of the projective class: least raw key over the
    /// unit-scalar multiples.
    pub fn proj_key(&self) -> GFKey {
        Self::unit_scalars(self.p)
            .into_iter()
            .map(|s| self.scale(s).raw_key())
            .min()
            .unwrap()
    }

    /// Matrix inverse via the adjugate and the determinant inverse.
    pub fn inverse(&self) -> Mat3GF {
        let m = &self.e;
        let minor = |i: usize, j: usize| -> GFElem {
            let r: Vec<usize> = (0..3).filter(|&x| x != i).collect();
            let c: Vec<usize> = (0..3).filter(|&x| x != j).collect();
            m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
        };
        let dinv = self.det().inv();
        let mut out = Mat3GF {
            p: self.p,
            e: [[GFElem::zero(self.p); 3]; 3],
        };
        for i in 0..3 {
            for j in 0..3 {
                let mut cof = minor(j, i);
                if (i + j) % 2 == 1 {
                    cof = -cof;
                }
                out.e[i][j] = cof * dinv;
            }
        }
        debug_assert_eq!(out.mul(self), Mat3GF::identity(self.p));
        out
    }
}

/// Reduce an exact matrix entry-wise; fails on non-invertible denominators.
pub fn reduce_mat(m: &Mat3, p: u8) -> Result<Mat3GF, CycloError> {
    let mut out = Mat3GF {
        p,
        e: [[GFElem::zero(p); 3]; 3],
    };
    for i in 0..3 {
        for j in 0..3 {
            out.e[i][j] = m.e[i][j].reduce_mod(p)?;
        }
    }
    Ok(out)
}

/// Congruence data: generator images under both reductions (computed in the
/// integral coordinate frame), the image closures, and the order-21 target.
pub struct CongruenceData {
    gens2: [Mat3GF; 4],
    invs2: [Mat3GF; 4],
    gens3: [Mat3GF; 4],
    invs3: [Mat3GF; 4],
    pub g21: HashSet<GFKey>,
    pub rho2_image_order: usize,
    pub rho3_image_order: usize,
    pub det2_image_size: usize,
}

impl CongruenceData {
    pub fn build(a_words: &[Word; 3]) -> Self {
        let gens = Gens::get();
        let list = [Gen::U, Gen::V, Gen::B, Gen::J];
        let red = |g: Gen, p: u8| -> Mat3GF {
            let m = gens.primed(gens.by_gen(g).mat());
            reduce_mat(&m, p).expect("integral frame reduces at 2 and 3")
        };
        let gens2: [Mat3GF; 4] = std::array::from_fn(|i| red(list[i], 2));
        let gens3: [Mat3GF; 4] = std::array::from_fn(|i| red(list[i], 3));
        let invs2: [Mat3GF; 4] = std::array::from_fn(|i| gens2[i].inverse());
        let invs3: [Mat3GF; 4] = std::array::from_fn(|i| gens3[i].inverse());

        let mut data = CongruenceData {
            gens2,
            invs2,
            gens3,
            invs3,
            g21: HashSet::new(),
            rho2_image_order: 0,
            rho3_image_order: 0,
            det2_image_size: 0,
        };

        data.rho2_image_order = closure_order(2, &data.gens2[..3]);
        data.rho3_image_order = closure_order(3, &data.gens3[..3]);
        let mut dets = HashSet::new();
        for g in &data.gens2 {
            dets.insert(g.det());
        }
        // close under products
        let mut grew = true;
        while grew {
            grew = false;
            let cur: Vec<GFElem> = dets.iter().copied().collect();
            for a in &cur {
                for b in &cur {
                    if dets.insert(*a * *b) {
                        grew = true;
                    }
                }
            }
        }
        data.det2_image_size = dets.len();

        // the order-21 subgroup: closure of the images of the three
        // subgroup generators mod 3
        let a_mats3: Vec<Mat3GF> = a_words.iter().map(|w| data.eval(w, 3)).collect();
        let mut g21 = HashSet::new();
        let mut frontier = vec![Mat3GF::identity(3)];
        g21.insert(Mat3GF::identity(3).proj_key());
        while let Some(x) = frontier.pop() {
            for a in &a_mats3 {
                let y = x.mul(a);
                if g21.insert(y.proj_key()) {
                    frontier.push(y);
                }
            }
        }
        data.g21 = g21;
        data
    }

    /// Evaluate a word over u, v, b, j in the reduction mod p.
    pub fn eval(&self, w: &Word, p: u8) -> Mat3GF {
        let (gens, invs) = match p {
            2 => (&self.gens2, &self.invs2),
            _ => (&self.gens3, &self.invs3),
        };
        let mut acc = Mat3GF::identity(p);
        for (g, s) in w.letters() {
            let m = if s > 0 { &gens[g.idx()] } else { &invs[g.idx()] };
            acc = acc.mul(m);
        }
        acc
    }

    pub fn det2_word(&self, w: &Word) -> GFElem {
        self.eval(w, 2).det()
    }

    /// Congruence membership of a word in the torsion-free sublattice:
    /// trivial determinant mod 2 and mod-3 image inside the 21-element
    /// subgroup.
    pub fn member_word(&self, w: &Word) -> bool {
        if self.eval(w, 2).det() != GFElem::one(2) {
            return false;
        }
        self.g21.contains(&self.eval(w, 3).proj_key())
    }

    /// Same test from an exact matrix (conjugated into the integral frame
    /// and reduced).
    pub fn member_matrix(&self, g: &ProjElement) -> bool {
        let (m2, m3) = self.reduce_both(g);
        self.member_gf(&m2, &m3)
    }

    /// Both congruence images of an exact lattice element.
    pub fn reduce_both(&self, g: &ProjElement) -> (Mat3GF, Mat3GF) {
        let gens = Gens::get();
        let primed = gens.primed(g.mat());
        let m2 = reduce_mat(&primed, 2).expect("lattice element integral mod 2");
        let m3 = reduce_mat(&primed, 3).expect("lattice element integral mod 3");
        (m2, m3)
    }

    /// Membership from precomputed congruence images.
    pub fn member_gf(&self, m2: &Mat3GF, m3: &Mat3GF) -> bool {
        m2.det() == GFElem::one(2) && self.g21.contains(&m3.proj_key())
    }
}

fn closure_order(p: u8, gens: &[Mat3GF]) -> usize {
    let mut seen = HashSet::new();
    seen.insert(Mat3GF::identity(p).proj_key());
    let mut frontier = vec![Mat3GF::identity(p)];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.proj_key()) {
                frontier.push(y);
            }
        }
    }
    seen.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_scalar_counts() {
        assert_eq!(Mat3GF::unit_scalars(2).len(), 3);
        assert_eq!(Mat3GF::unit_scalars(3).len(), 4);
    }

    #[test]
    fn det_is_scalar_invariant() {
        let m = Mat3GF::identity(2);
        for s in Mat3GF::unit_scalars(2) {
            assert_eq!(m.scale(s).det(), m.det());
        }
    }
}
