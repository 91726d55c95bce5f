//! The explicit 3x3 matrix model of the lattice: generators, the Hermitian
//! form, projective normalization, the ball action, mirrors and their polar
//! vectors, and the fixed-point differential.

use crate::cyclo::{CycNum, CycloError};
use crate::words::{Gen, Word};
use num_complex::Complex64;
use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("point does not carry an exact homogeneous vector")]
    NoExactVector,
    #[error("homogeneous coordinate vanished under the action")]
    LambdaVanished,
    #[error("point is not fixed by the element (moved by {0:.3e})")]
    NotFixed(f64),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// 3x3 matrix over Q(zeta_12), row major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat3 {
    pub e: [[CycNum; 3]; 3],
}

impl Mat3 {
    pub fn from_rows(e: [[CycNum; 3]; 3]) -> Self {
        Mat3 { e }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.e[i][i] = CycNum::one();
        }
        m
    }

    pub fn zero() -> Self {
        Mat3 {
            e: std::array::from_fn(|_| std::array::from_fn(|_| CycNum::zero())),
        }
    }

    pub fn diag(a: CycNum, b: CycNum, c: CycNum) -> Self {
        let mut m = Self::zero();
        m.e[0][0] = a;
        m.e[1][1] = b;
        m.e[2][2] = c;
        m
    }

    pub fn mul(&self, rhs: &Mat3) -> Mat3 {
        let mut out = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = CycNum::zero();
                for k in 0..3 {
                    if self.e[i][k].is_zero() || rhs.e[k][j].is_zero() {
                        continue;
                    }
                    acc = acc + (&self.e[i][k] * &rhs.e[k][j]);
                }
                out.e[i][j] = acc;
            }
        }
        out
    }

    pub fn scale(&self, s: &CycNum) -> Mat3 {
        let mut out = self.clone();
        for i in 0..3 {
            for j in 0..3 {
                out.e[i][j] = &out.e[i][j] * s;
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn star(&self) -> Mat3 {
        let mut out = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.e[i][j] = self.e[j][i].conj();
            }
        }
        out
    }

    pub fn det(&self) -> CycNum {
        let e = &self.e;
        let m = |i: usize, j: usize| &e[i][j];
        let t1 = m(0, 0) * &(m(1, 1) * m(2, 2) - &(m(1, 2) * m(2, 1)));
        let t2 = m(0, 1) * &(m(1, 0) * m(2, 2) - &(m(1, 2) * m(2, 0)));
        let t3 = m(0, 2) * &(m(1, 0) * m(2, 1) - &(m(1, 1) * m(2, 0)));
        t1 - &t2 + &t3
    }

    pub fn trace(&self) -> CycNum {
        (&self.e[0][0] + &self.e[1][1]) + &self.e[2][2]
    }

    /// Second elementary symmetric function of the eigenvalues.
    pub fn sigma2(&self) -> CycNum {
        let e = &self.e;
        let m = |i: usize, j: usize| &e[i][j];
        let a = m(0, 0) * m(1, 1) - &(m(0, 1) * m(1, 0));
        let b = m(0, 0) * m(2, 2) - &(m(0, 2) * m(2, 0));
        let c = m(1, 1) * m(2, 2) - &(m(1, 2) * m(2, 1));
        (a + &b) + &c
    }

    pub fn apply(&self, v: &[CycNum; 3]) -> [CycNum; 3] {
        std::array::from_fn(|i| {
            let mut acc = CycNum::zero();
            for k in 0..3 {
                if self.e[i][k].is_zero() || v[k].is_zero() {
                    continue;
                }
                acc = acc + (&self.e[i][k] * &v[k]);
            }
            acc
        })
    }

    pub fn is_scalar(&self) -> bool {
        for i in 0..3 {
            for j in 0..3 {
                if i != j && !self.e[i][j].is_zero() {
                    return false;
                }
            }
        }
        self.e[0][0] == self.e[1][1] && self.e[1][1] == self.e[2][2] && !self.e[0][0].is_zero()
    }

    pub fn embed(&self) -> [[Complex64; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.e[i][j].embed()))
    }

    pub fn ser_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(256);
        for i in 0..3 {
            for j in 0..3 {
                self.e[i][j].ser_bytes(&mut out);
            }
        }
        out
    }

    fn lex_cmp(&self, other: &Mat3) -> Ordering {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..4 {
                    let o = self.e[i][j].coords()[k].cmp(&other.e[i][j].coords()[k]);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
            }
        }
        Ordering::Equal
    }
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..3 {
            writeln!(f, "[{:?} {:?} {:?}]", self.e[i][0], self.e[i][1], self.e[i][2])?;
        }
        Ok(())
    }
}

/// The diagonal Hermitian form diag(1, 1, 1-r) of signature (2,1).
pub fn form() -> &'static Mat3 {
    static F: OnceLock<Mat3> = OnceLock::new();
    F.get_or_init(|| {
        Mat3::diag(
            CycNum::one(),
            CycNum::one(),
            CycNum::one() - CycNum::sqrt3(),
        )
    })
}

/// Hermitian pairing x* F y.
pub fn form_pair(x: &[CycNum; 3], y: &[CycNum; 3]) -> CycNum {
    let f = form();
    let mut acc = CycNum::zero();
    for i in 0..3 {
        if x[i].is_zero() || y[i].is_zero() {
            continue;
        }
        acc = acc + (&(&x[i].conj() * &f.e[i][i]) * &y[i]);
    }
    acc
}

/// Group element of the lattice: an F-unitary matrix up to the twelve
/// scalar matrices zeta^j I, stored in a canonical scalar normalization
/// (the lexicographically least of the twelve multiples, comparing entry
/// coordinate 4-tuples row major). Equality and hashing ignore the word.
#[derive(Clone)]
pub struct ProjElement {
    mat: Mat3,
    pub word: Option<Word>,
}

impl PartialEq for ProjElement {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}

impl Eq for ProjElement {}

impl std::hash::Hash for ProjElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.mat.hash(state);
    }
}

impl fmt::Debug for ProjElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.word {
            Some(w) => write!(f, "<{}>", w),
            None => write!(f, "<matrix>"),
        }
    }
}

impl ProjElement {
    pub fn new(mat: Mat3, word: Option<Word>) -> Self {
        let mat = canonical_scalar(&mat);
        ProjElement { mat, word }
    }

    pub fn identity() -> Self {
        ProjElement::new(Mat3::identity(), Some(Word::identity()))
    }

    pub fn mat(&self) -> &Mat3 {
        &self.mat
    }

    pub fn mul(&self, rhs: &ProjElement) -> ProjElement {
        let word = match (&self.word, &rhs.word) {
            (Some(a), Some(b)) => Some(a.concat(b)),
            _ => None,
        };
        ProjElement::new(self.mat.mul(&rhs.mat), word)
    }

    /// Inverse via the form: g^{-1} = F^{-1} g* F, exact and cheap.
    pub fn inverse(&self) -> ProjElement {
        ProjElement::new(unitary_inverse(&self.mat), self.word.as_ref().map(|w| w.inverse()))
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_scalar()
    }

    pub fn is_unitary(&self) -> bool {
        let lhs = self.mat.star().mul(form()).mul(&self.mat);
        lhs == *form()
    }

    pub fn key(&self) -> Vec<u8> {
        self.mat.ser_bytes()
    }

    /// Least n in 1..=bound with g^n projectively trivial.
    pub fn order(&self, bound: u32) -> Option<u32> {
        let mut acc = self.mat.clone();
        for n in 1..=bound {
            if acc.is_scalar() {
                return Some(n);
            }
            acc = acc.mul(&self.mat);
        }
        None
    }
}

/// Inverse of an F-unitary matrix without rational matrix inversion.
pub fn unitary_inverse(m: &Mat3) -> Mat3 {
    // F^{-1} m* F with F = diag(1,1,f3): scale row 2 by 1/f3, column 2 by f3.
    let f3 = &form().e[2][2];
    let f3inv = f3.inv().expect("form entry nonzero");
    let mut out = m.star();
    for j in 0..3 {
        out.e[2][j] = &out.e[2][j] * &f3inv;
    }
    for i in 0..3 {
        out.e[i][2] = &out.e[i][2] * f3;
    }
    out
}

fn canonical_scalar(m: &Mat3) -> Mat3 {
    let mut best = m.clone();
    let mut z = m.clone();
    for _ in 1..12 {
        z = z.scale(&CycNum::zeta());
        if z.lex_cmp(&best) == Ordering::Less {
            best = z.clone();
        }
    }
    best
}

/// Projective equality of raw matrices (equal up to zeta^j).
pub fn proj_eq(a: &Mat3, b: &Mat3) -> bool {
    canonical_scalar(a) == canonical_scalar(b)
}

/// The generator matrices and derived data.
pub struct Gens {
    pub u: ProjElement,
    pub v: ProjElement,
    pub b: ProjElement,
    pub j: ProjElement,
    pub gamma0: Mat3,
    pub gamma0_inv: Mat3,
}

impl Gens {
    pub fn get() -> &'static Gens {
        static G: OnceLock<Gens> = OnceLock::new();
        G.get_or_init(Gens::build)
    }

    fn build() -> Gens {
        let z = |k: i64| CycNum::zeta_pow(k);
        let one = CycNum::one();
        let zero = CycNum::zero();
        let r = CycNum::sqrt3();

        let u_pr = Mat3::from_rows([
            [&(&z(3) + &z(2)) - &z(1), &one - &z(1), zero.clone()],
            [&(&z(3) + &z(2)) - &one, &z(1) - &z(3), zero.clone()],
            [zero.clone(), zero.clone(), one.clone()],
        ]);
        let v_pr = Mat3::from_rows([
            [z(3), zero.clone(), zero.clone()],
            [&(&(&z(3) + &z(2)) - &z(1)) - &one, one.clone(), zero.clone()],
            [zero.clone(), zero.clone(), one.clone()],
        ]);
        let b_pr = Mat3::from_rows([
            [one.clone(), zero.clone(), zero.clone()],
            [
                &(&(CycNum::from_int(-2) * z(3)) - &z(2)) + &(CycNum::from_int(2) * z(1) + CycNum::from_int(2)),
                &(&(&z(3) + &z(2)) - &z(1)) - &one,
                -(&z(3) + &z(2)),
            ],
            [
                &z(2) + &z(1),
                -(&z(3) + &one),
                &(&z(1) + &one) - &z(3),
            ],
        ]);
        let gamma0 = Mat3::from_rows([
            [one.clone(), zero.clone(), zero.clone()],
            [one.clone(), &one - &r, zero.clone()],
            [zero.clone(), zero.clone(), one.clone()],
        ]);
        // gamma0^{-1} in closed form: the 2x2 corner inverts as
        // [[1,0],[1,1-r]]^{-1} = [[1,0],[1/(r-1), -1/(r-1)]].
        let s = (&r - &one).inv().expect("r != 1");
        let gamma0_inv = Mat3::from_rows([
            [one.clone(), zero.clone(), zero.clone()],
            [s.clone(), -s.clone(), zero.clone()],
            [zero.clone(), zero.clone(), one.clone()],
        ]);
        assert_eq!(gamma0.mul(&gamma0_inv), Mat3::identity());

        let conj0 = |m: &Mat3| gamma0.mul(m).mul(&gamma0_inv);
        let u = ProjElement::new(conj0(&u_pr), Some(Word::gen(Gen::U)));
        let v = ProjElement::new(conj0(&v_pr), Some(Word::gen(Gen::V)));
        let b = ProjElement::new(conj0(&b_pr), Some(Word::gen(Gen::B)));
        for g in [&u, &v, &b] {
            assert!(g.is_unitary(), "generator is not F-unitary");
        }
        let j = ProjElement::new(
            u.mat.mul(&v.mat).mul(&u.mat).mul(&v.mat),
            Some(Word::gen(Gen::J)),
        );
        assert!(j.is_unitary());
        let gens = Gens {
            u,
            v,
            b,
            j,
            gamma0,
            gamma0_inv,
        };
        // j must be the diagonal matrix diag(zeta, zeta, 1).
        let jd = Mat3::diag(CycNum::zeta(), CycNum::zeta(), CycNum::one());
        assert!(proj_eq(&gens.j.mat, &jd), "j != diag(zeta, zeta, 1)");
        gens
    }

    pub fn by_gen(&self, g: Gen) -> &ProjElement {
        match g {
            Gen::U => &self.u,
            Gen::V => &self.v,
            Gen::B => &self.b,
            Gen::J => &self.j,
        }
    }

    /// gamma0^{-1} g gamma0, the coordinate frame with integral entries.
    pub fn primed(&self, m: &Mat3) -> Mat3 {
        self.gamma0_inv.mul(m).mul(&self.gamma0)
    }
}

/// Evaluate a word over u, v, b, j to a canonical projective element.
pub fn word_to_matrix(w: &Word) -> ProjElement {
    let gens = Gens::get();
    let mut acc = Mat3::identity();
    for (g, s) in w.letters() {
        let m = if s > 0 {
            gens.by_gen(g).mat().clone()
        } else {
            unitary_inverse(gens.by_gen(g).mat())
        };
        acc = acc.mul(&m);
    }
    let e = ProjElement::new(acc, Some(w.clone()));
    debug_assert!(e.is_unitary());
    e
}

pub fn parse_element(s: &str) -> ProjElement {
    word_to_matrix(&Word::parse(s))
}

/// Point of the unit ball, in floating coordinates, optionally carrying an
/// exact homogeneous vector (kappa z, kappa w, 1)-style with entries in
/// Q(zeta_12) and negative form value.
#[derive(Clone, Debug)]
pub struct BallPoint {
    pub z: Complex64,
    pub w: Complex64,
    pub exact: Option<[CycNum; 3]>,
}

impl BallPoint {
    pub fn origin() -> Self {
        BallPoint {
            z: Complex64::new(0.0, 0.0),
            w: Complex64::new(0.0, 0.0),
            exact: Some([CycNum::zero(), CycNum::zero(), CycNum::one()]),
        }
    }

    /// Build from an exact homogeneous vector, checking F-negativity and
    /// deriving the floating ball coordinates.
    pub fn from_exact(v: [CycNum; 3]) -> Result<Self, RepError> {
        let fv = form_pair(&v, &v);
        if fv.real_sign()? != Ordering::Less {
            return Err(RepError::LambdaVanished);
        }
        let kappa = (3f64.sqrt() - 1.0).sqrt();
        let v0 = v[0].embed();
        let v1 = v[1].embed();
        let v2 = v[2].embed();
        Ok(BallPoint {
            z: v0 / v2 / kappa,
            w: v1 / v2 / kappa,
            exact: Some(v),
        })
    }

    pub fn numeric(z: Complex64, w: Complex64) -> Self {
        BallPoint { z, w, exact: None }
    }

    pub fn dist(&self, other: &BallPoint) -> f64 {
        ((self.z - other.z).norm_sqr() + (self.w - other.w).norm_sqr()).sqrt()
    }
}

/// kappa = sqrt(r - 1), the scaling entry of the ball chart.
pub fn kappa() -> f64 {
    (3f64.sqrt() - 1.0).sqrt()
}

/// Action of an element on the ball: D g D^{-1} applied to (z, w, 1),
/// renormalized. The exact vector, when present, transports by g itself.
pub fn ball_action(g: &ProjElement, x: &BallPoint) -> Result<BallPoint, RepError> {
    let k = kappa();
    let m = g.mat.embed();
    let hom = [x.z * k, x.w * k, Complex64::new(1.0, 0.0)];
    // D g D^{-1} on (z,w,1) equals (1/kappa scale structure) folded in:
    // row scaling D = diag(1,1,kappa) conjugation.
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for i in 0..3 {
        for (kk, h) in hom.iter().enumerate() {
            out[i] += m[i][kk] * h;
        }
    }
    // out is g . (kappa z, kappa w, 1); ball coords divide by out[2].
    if out[2].norm() < 1e-14 {
        return Err(RepError::LambdaVanished);
    }
    let z = out[0] / out[2] / k;
    let w = out[1] / out[2] / k;
    let exact = match &x.exact {
        Some(v) => {
            let gv = g.mat.apply(v);
            Some(normalize_exact(gv))
        }
        None => None,
    };
    Ok(BallPoint { z, w, exact })
}

/// Scale an exact homogeneous vector so its last nonzero coordinate is 1.
fn normalize_exact(v: [CycNum; 3]) -> [CycNum; 3] {
    for i in (0..3).rev() {
        if !v[i].is_zero() {
            let s = v[i].inv().expect("nonzero");
            return std::array::from_fn(|k| &v[k] * &s);
        }
    }
    v
}

/// Exact projective fixedness test: g v parallel to v.
pub fn fixes_exact(g: &ProjElement, v: &[CycNum; 3]) -> bool {
    let gv = g.mat.apply(v);
    // parallel iff all 2x2 minors vanish
    for i in 0..3 {
        for j in (i + 1)..3 {
            let m = &(&gv[i] * &v[j]) - &(&gv[j] * &v[i]);
            if !m.is_zero() {
                return false;
            }
        }
    }
    true
}

/// A mirror, stored by its polar vector: the F-positive projective vector p
/// with the mirror equal to { x : x* F p = 0 }. Canonically scaled so the
/// first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mirror {
    pub polar: [CycNum; 3],
}

impl Mirror {
    pub fn from_polar(p: [CycNum; 3]) -> Self {
        Mirror {
            polar: canonical_polar(p),
        }
    }

    /// Mirror z = alpha w for finite alpha in Q(zeta_12).
    pub fn from_slope(alpha: &CycNum) -> Self {
        Mirror::from_polar([CycNum::one(), -alpha.conj(), CycNum::zero()])
    }

    /// The mirror w = 0.
    pub fn slope_infinity() -> Self {
        Mirror::from_polar([CycNum::zero(), CycNum::one(), CycNum::zero()])
    }

    pub fn key(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(96);
        for c in &self.polar {
            c.ser_bytes(&mut out);
        }
        out
    }
}

impl fmt::Debug for Mirror {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Mirror[{:?}, {:?}, {:?}]",
            self.polar[0], self.polar[1], self.polar[2]
        )
    }
}

fn canonical_polar(p: [CycNum; 3]) -> [CycNum; 3] {
    for i in 0..3 {
        if !p[i].is_zero() {
            let s = p[i].inv().expect("nonzero");
            return std::array::from_fn(|k| &p[k] * &s);
        }
    }
    panic!("zero polar vector");
}

/// Transport of a mirror by a group element: the polar maps by g.
pub fn mirror_map(g: &ProjElement, m: &Mirror) -> Mirror {
    Mirror::from_polar(g.mat.apply(&m.polar))
}

/// Exact incidence test of an exact point against a mirror.
pub fn point_on_mirror(x: &BallPoint, m: &Mirror) -> Result<bool, RepError> {
    let v = x.exact.as_ref().ok_or(RepError::NoExactVector)?;
    Ok(form_pair(v, &m.polar).is_zero())
}

/// Eigenvalues of the differential of g at a fixed ball point.
///
/// This evaluates the closed-form 2x2 holomorphic differential of the
/// fractional-linear ball action. The global scalar is det(g)/(r-1), which
/// makes the result independent of the scalar representative of g.
pub fn jacobian_eigenvalues(
    g: &ProjElement,
    x: &BallPoint,
) -> Result<(Complex64, Complex64), RepError> {
    let gx = ball_action(g, x)?;
    let moved = gx.dist(x);
    if moved > 1e-9 {
        return Err(RepError::NotFixed(moved));
    }
    let k = kappa();
    let m = g.mat.embed();
    let conj = |c: Complex64| c.conj();
    let rm1 = 3f64.sqrt() - 1.0;
    let z1 = x.z * k;
    let z2 = x.w * k;
    let denom = m[2][0] * z1 + m[2][1] * z2 + m[2][2];
    let a11 = z2 * conj(m[1][2]) + conj(m[1][1]) * rm1;
    let a12 = -(z2 * conj(m[0][2]) + conj(m[0][1]) * rm1);
    let a21 = -(z1 * conj(m[1][2]) + conj(m[1][0]) * rm1);
    let a22 = z1 * conj(m[0][2]) + conj(m[0][0]) * rm1;
    let det_g = g.mat.det().embed();
    let scale = det_g / rm1 / (denom * denom);
    let (a, b, c, d) = (a11 * scale, a12 * scale, a21 * scale, a22 * scale);
    // Eigenvalues of [[a, b], [c, d]]; note the displayed matrix is the
    // transpose of (dw_i/dz_j), which has the same spectrum.
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - det * 4.0).sqrt();
    Ok(((tr + disc) / 2.0, (tr - disc) / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_unitary_and_satisfy_core_relations() {
        let g = Gens::get();
        for e in [&g.u, &g.v, &g.b, &g.j] {
            assert!(e.is_unitary());
        }
        assert!(parse_element("u3").is_identity());
        assert!(parse_element("v4").is_identity());
        assert!(parse_element("b3").is_identity());
        assert_eq!(parse_element("u v u v"), parse_element("v u v u"));
        assert!(parse_element("v b v' b'").is_identity());
        assert!(parse_element("b u v b u v b u v").is_identity());
        assert!(parse_element("b u v u b u v u v").is_identity());
    }

    #[test]
    fn word_to_matrix_empty_is_identity() {
        assert!(word_to_matrix(&Word::identity()).is_identity());
    }

    #[test]
    fn orders_of_small_elements() {
        assert_eq!(ProjElement::identity().order(5), Some(1));
        assert_eq!(parse_element("u v").order(30), Some(24));
        assert_eq!(parse_element("b u'").order(10), Some(4));
        assert_eq!(parse_element("j").order(20), Some(12));
        assert_eq!(parse_element("b").order(5), Some(3));
    }

    #[test]
    fn primed_generators_are_integral() {
        let g = Gens::get();
        for e in [&g.u, &g.v, &g.b, &g.j] {
            let p = g.primed(e.mat());
            for i in 0..3 {
                for j in 0..3 {
                    for c in p.e[i][j].coords() {
                        assert!(
                            c.denom() == &num_bigint::BigInt::from(1),
                            "denominator in primed generator"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn ball_action_fixes_origin_under_v() {
        let o = BallPoint::origin();
        let v = &Gens::get().v;
        let vo = ball_action(v, &o).unwrap();
        assert!(vo.dist(&o) < 1e-12);
        assert!(fixes_exact(v, o.exact.as_ref().unwrap()));
    }

    #[test]
    fn identity_action_and_jacobian() {
        let o = BallPoint::origin();
        let id = ProjElement::identity();
        let io = ball_action(&id, &o).unwrap();
        assert!(io.dist(&o) < 1e-15);
        let (l1, l2) = jacobian_eigenvalues(&id, &o).unwrap();
        assert!((l1 - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((l2 - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn j4_jacobian_at_origin_is_omega() {
        let j4 = parse_element("j4");
        let o = BallPoint::origin();
        let (l1, l2) = jacobian_eigenvalues(&j4, &o).unwrap();
        let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!((l1 - omega).norm() < 1e-12, "{l1}");
        assert!((l2 - omega).norm() < 1e-12, "{l2}");
    }

    #[test]
    fn mirror_polar_basics() {
        let o = BallPoint::origin();
        let m0 = Mirror::from_slope(&CycNum::zero());
        assert!(point_on_mirror(&o, &m0).unwrap());
        // degenerate incidence: the origin lies on every finite-slope mirror
        let c = CycNum::zeta_pow(2) - CycNum::zeta();
        let mc = Mirror::from_slope(&c);
        assert!(point_on_mirror(&o, &mc).unwrap());
        let minf = Mirror::slope_infinity();
        assert!(point_on_mirror(&o, &minf).unwrap());
        // polar is F-positive
        let fp = form_pair(&mc.polar, &mc.polar);
        assert_eq!(fp.real_sign().unwrap(), Ordering::Greater);
        // identity transport
        assert_eq!(mirror_map(&ProjElement::identity(), &mc), mc);
    }

    #[test]
    fn p_point_is_exact_and_on_mc() {
        // P = (c(zeta-1)/kappa, (zeta-1)/kappa), exact vector (c(z-1), z-1, 1).
        let c = CycNum::zeta_pow(2) - CycNum::zeta();
        let zm1 = CycNum::zeta() - CycNum::one();
        let p = BallPoint::from_exact([&c * &zm1, zm1.clone(), CycNum::one()]).unwrap();
        let mc = Mirror::from_slope(&c);
        assert!(point_on_mirror(&p, &mc).unwrap());
        // u fixes M_c pointwise, so u fixes P
        assert!(fixes_exact(&Gens::get().u, p.exact.as_ref().unwrap()));
    }

    #[test]
    fn exact_transport_matches_numeric_action() {
        let c = CycNum::zeta_pow(2) - CycNum::zeta();
        let zm1 = CycNum::zeta() - CycNum::one();
        let p = BallPoint::from_exact([&c * &zm1, zm1, CycNum::one()]).unwrap();
        let g = parse_element("b u v");
        let gp = ball_action(&g, &p).unwrap();
        let ex = gp.exact.clone().unwrap();
        let again = BallPoint::from_exact(ex).unwrap();
        assert!(gp.dist(&again) < 1e-9);
    }
}
