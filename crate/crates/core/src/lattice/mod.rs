//! The specific group atlas: the lattice, its order-288 finite subgroup,
//! the index-864 torsion-free sublattice with two independent membership
//! oracles, torsion census, point and mirror stabilizers, and the
//! mirror-stabilizer coset spaces.

pub mod congruence;
pub mod data;
pub mod finite;
mod verify;

pub use congruence::CongruenceData;
pub use finite::{FiniteSubgroup, SearchError};
pub use verify::*;

use crate::cyclo::CycNum;
use crate::fpgrp::{
    read_cached_table, todd_coxeter, write_cached_table, CosetTable,
};
use crate::rep::{
    ball_action, mirror_map, point_on_mirror, word_to_matrix, BallPoint, Gens, Mirror,
    ProjElement,
};
use crate::words::{Gen, Word};
use finite::Ball;
use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Mutex, OnceLock};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("coset enumeration failed: {0}")]
    Enumeration(#[from] crate::fpgrp::TcError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("{0}")]
    Inconsistent(String),
}

#[derive(Clone, Debug)]
pub struct AtlasOptions {
    pub max_cosets: usize,
    pub bfs_depth: usize,
    pub cache_dir: Option<PathBuf>,
}

impl Default for AtlasOptions {
    fn default() -> Self {
        AtlasOptions {
            max_cosets: 2_000_000,
            bfs_depth: 8,
            cache_dir: None,
        }
    }
}

/// Coset space of a subgroup of the lattice restricted to the stabilizer of
/// a mirror: the orbit of the trivial coset inside the 864-point space,
/// re-indexed as a closed coset table over the stabilizer's own generators.
pub struct SubTable {
    /// orbit points as cosets of the big table, in BFS discovery order
    pub points: Vec<usize>,
    pub point_index: HashMap<usize, usize>,
    /// induced action table over the given generators
    pub table: CosetTable,
}

impl SubTable {
    pub fn index(&self) -> usize {
        self.points.len()
    }
}

/// Lazily built group atlas shared by every verification suite.
pub struct Atlas {
    pub opts: AtlasOptions,
    pi_table: OnceLock<Result<CosetTable, String>>,
    k_group: OnceLock<FiniteSubgroup>,
    cong: OnceLock<CongruenceData>,
    ball: Mutex<Ball>,
    expanded_a: OnceLock<[Vec<i32>; 3]>,
    coset_reps: OnceLock<Vec<(i32, usize, ProjElement)>>,
}

static SHARED: OnceLock<Atlas> = OnceLock::new();

impl Atlas {
    pub fn new(opts: AtlasOptions) -> Self {
        let gens = Gens::get();
        Atlas {
            opts,
            pi_table: OnceLock::new(),
            k_group: OnceLock::new(),
            cong: OnceLock::new(),
            ball: Mutex::new(Ball::new(vec![
                gens.u.clone(),
                gens.v.clone(),
                gens.b.clone(),
                gens.j.clone(),
            ])),
            expanded_a: OnceLock::new(),
            coset_reps: OnceLock::new(),
        }
    }

    /// Process-wide atlas with default options.
    pub fn shared() -> &'static Atlas {
        SHARED.get_or_init(|| Atlas::new(AtlasOptions::default()))
    }

    pub fn gens(&self) -> &'static Gens {
        Gens::get()
    }

    pub fn a_words(&self) -> [Word; 3] {
        data::a_words()
    }

    fn expanded_a_words(&self) -> &[Vec<i32>; 3] {
        self.expanded_a.get_or_init(|| {
            let [a1, a2, a3] = data::a_words();
            [a1.expand_j(), a2.expand_j(), a3.expand_j()]
        })
    }

    /// The coset table of the index-864 subgroup in the lattice.
    pub fn pi_table(&self) -> Result<&CosetTable, LatticeError> {
        let res = self.pi_table.get_or_init(|| {
            let p = data::gamma_presentation();
            let subgens: Vec<Vec<i32>> = self.expanded_a_words().to_vec();
            if let Some(dir) = &self.opts.cache_dir {
                if let Some(t) = read_cached_table(dir, &p, &subgens) {
                    return Ok(t);
                }
            }
            let t = todd_coxeter(&p, &subgens, self.opts.max_cosets)
                .map_err(|e| e.to_string())?;
            if !t.validate(&p) {
                return Err("enumerated table failed validation".to_string());
            }
            if let Some(dir) = &self.opts.cache_dir {
                let _ = write_cached_table(dir, &p, &subgens, &t);
            }
            Ok(t)
        });
        res.as_ref()
            .map_err(|e| LatticeError::Inconsistent(e.clone()))
    }

    /// Trace a u,v,b,j word through the big coset table.
    pub fn trace_word(&self, start: usize, w: &Word) -> Result<usize, LatticeError> {
        let t = self.pi_table()?;
        Ok(t.trace(start, &w.expand_j()))
    }

    /// Congruence-based membership in the index-864 subgroup.
    pub fn member(&self, w: &Word) -> bool {
        self.congruence().member_word(w)
    }

    pub fn member_matrix(&self, g: &ProjElement) -> bool {
        self.congruence().member_matrix(g)
    }

    pub fn congruence(&self) -> &CongruenceData {
        self.cong
            .get_or_init(|| CongruenceData::build(&data::a_words()))
    }

    /// The order-288 finite subgroup generated by u and v, with words.
    pub fn k_group(&self) -> &FiniteSubgroup {
        self.k_group.get_or_init(|| {
            let gens = Gens::get();
            let k = FiniteSubgroup::closure(&[gens.u.clone(), gens.v.clone()], 600)
                .expect("closure of <u, v> within cap");
            assert_eq!(k.order(), 288, "order of <u, v>");
            k
        })
    }

    /// The 864 coset representatives b^mu k with mu in {0, 1, -1} and k in
    /// the finite subgroup; entries are (mu, k position, element).
    pub fn coset_representatives(&self) -> &Vec<(i32, usize, ProjElement)> {
        self.coset_reps.get_or_init(|| {
            let gens = Gens::get();
            let k = self.k_group();
            let b = &gens.b;
            let binv = b.inverse();
            let mut out = Vec::with_capacity(864);
            for (mu, lead) in [(0, None), (1, Some(b)), (-1, Some(&binv))] {
                for (pos, kel) in k.elems.iter().enumerate() {
                    let e = match lead {
                        None => kel.clone(),
                        Some(l) => l.mul(kel),
                    };
                    out.push((mu, pos, e));
                }
            }
            out
        })
    }

    /// Run a function against the shared growable ball of the lattice.
    pub fn with_ball<T>(&self, f: impl FnOnce(&mut Ball) -> T) -> T {
        let mut ball = self.ball.lock().unwrap();
        f(&mut ball)
    }

    /// Stabilizer of a ball point, certified by closure and expected order.
    pub fn point_stabilizer(
        &self,
        x: &BallPoint,
        expected_order: usize,
        depth: usize,
    ) -> Result<FiniteSubgroup, LatticeError> {
        Ok(self.with_ball(|ball| finite::point_stabilizer(ball, x, expected_order, depth))?)
    }

    /// Induced coset table for a subgroup-of-the-lattice stabilizer, given
    /// its generator words: the orbit of coset 0 under those generators.
    pub fn sub_table(&self, gen_words: &[Word]) -> Result<SubTable, LatticeError> {
        let t = self.pi_table()?;
        let expanded: Vec<Vec<i32>> = gen_words.iter().map(|w| w.expand_j()).collect();
        let inverted: Vec<Vec<i32>> = gen_words.iter().map(|w| w.inverse().expand_j()).collect();
        let mut points = vec![0usize];
        let mut point_index = HashMap::new();
        point_index.insert(0usize, 0usize);
        let mut head = 0;
        while head < points.len() {
            let c = points[head];
            head += 1;
            for g in 0..expanded.len() {
                for w in [&expanded[g], &inverted[g]] {
                    let d = t.trace(c, w);
                    if !point_index.contains_key(&d) {
                        point_index.insert(d, points.len());
                        points.push(d);
                    }
                }
            }
        }
        let n = points.len();
        let ng = gen_words.len();
        let mut tab = vec![0u32; n * 2 * ng];
        for (i, &c) in points.iter().enumerate() {
            for g in 0..ng {
                tab[i * 2 * ng + 2 * g] = point_index[&t.trace(c, &expanded[g])] as u32;
                tab[i * 2 * ng + 2 * g + 1] = point_index[&t.trace(c, &inverted[g])] as u32;
            }
        }
        Ok(SubTable {
            points,
            point_index,
            table: CosetTable { ngens: ng, tab },
        })
    }

    /// Conjugated generator words h g h^-1 for a stabilizer translate.
    pub fn conjugated_words(&self, h: &Word, gen_words: &[Word]) -> Vec<Word> {
        gen_words.iter().map(|g| g.conjugate_by(h)).collect()
    }
}

/// The base order-3 mirror slope c = zeta^2 - zeta.
pub fn slope_c() -> CycNum {
    CycNum::zeta_pow(2) - CycNum::zeta()
}

/// Mirror of slope c (pointwise fixed by u).
pub fn mirror_c() -> Mirror {
    Mirror::from_slope(&slope_c())
}

/// Mirror of slope 0 (pointwise fixed by v).
pub fn mirror_0() -> Mirror {
    Mirror::from_slope(&CycNum::zero())
}

/// The exact order-24 stabilizer base point on the slope-c mirror:
/// homogeneous vector (c (zeta - 1), zeta - 1, 1).
pub fn point_p() -> BallPoint {
    let zm1 = CycNum::zeta() - CycNum::one();
    BallPoint::from_exact([slope_c() * &zm1, zm1, CycNum::one()])
        .expect("the distinguished point lies in the ball")
}

/// The slope value of one of the eight order-3 mirrors, from its sign
/// triple: s0 (r + s1)(i + s2) / 2.
pub fn slope_from_signs(s: (i64, i64, i64)) -> CycNum {
    let r = CycNum::sqrt3();
    let i = CycNum::zeta_pow(3);
    let half = CycNum::from_frac(s.0, 2);
    (r + &CycNum::from_int(s.1)) * (i + &CycNum::from_int(s.2)) * half
}

/// Slope value for the order-4 orbit entries (x + y i, or None = infinity).
pub fn slope_b(entry: Option<(i64, i64)>) -> Option<CycNum> {
    entry.map(|(x, y)| CycNum::from_int(x) + (CycNum::zeta_pow(3) * CycNum::from_int(y)))
}

/// The numeric order-3 fixed point of b u v (an isolated elliptic point),
/// computed as the negative eigenvector of the acting matrix and
/// cross-checked elsewhere against its closed-form coordinates.
pub fn point_q() -> BallPoint {
    let g = word_to_matrix(&Word::parse("b u v"));
    numeric_fixed_point(&g).expect("the order-3 element fixes a ball point")
}

/// Eigenpairs of a 3x3 complex matrix by Durand-Kerner on the
/// characteristic polynomial plus nullspace extraction.
pub fn eig3(m: &[[num_complex::Complex64; 3]; 3]) -> Vec<(num_complex::Complex64, [num_complex::Complex64; 3])> {
    use num_complex::Complex64 as C;
    // char poly: x^3 - tr x^2 + sigma2 x - det
    let tr = m[0][0] + m[1][1] + m[2][2];
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    let s2 = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[1][1] * m[2][2] - m[1][2] * m[2][1];
    let poly = move |x: C| ((x - tr) * x + s2) * x - det;
    // Durand-Kerner iteration
    let mut roots = [
        C::new(0.4, 0.9),
        C::new(-0.91, 0.34),
        C::new(0.2, -1.1),
    ];
    for _ in 0..200 {
        let old = roots;
        for i in 0..3 {
            let mut denom = C::new(1.0, 0.0);
            for j in 0..3 {
                if j != i {
                    denom *= old[i] - old[j];
                }
            }
            roots[i] = old[i] - poly(old[i]) / denom;
        }
        if roots
            .iter()
            .zip(old.iter())
            .all(|(a, b)| (a - b).norm() < 1e-15)
        {
            break;
        }
    }
    roots
        .into_iter()
        .map(|l| {
            // nullspace of (m - l I): cross product of two rows
            let a = [m[0][0] - l, m[0][1], m[0][2]];
            let b = [m[1][0], m[1][1] - l, m[1][2]];
            let c = [m[2][0], m[2][1], m[2][2] - l];
            let cross = |x: &[C; 3], y: &[C; 3]| {
                [
                    x[1] * y[2] - x[2] * y[1],
                    x[2] * y[0] - x[0] * y[2],
                    x[0] * y[1] - x[1] * y[0],
                ]
            };
            let cands = [cross(&a, &b), cross(&a, &c), cross(&b, &c)];
            let v = cands
                .into_iter()
                .max_by(|p, q| {
                    let np = p.iter().map(|x| x.norm_sqr()).sum::<f64>();
                    let nq = q.iter().map(|x| x.norm_sqr()).sum::<f64>();
                    np.partial_cmp(&nq).unwrap()
                })
                .unwrap();
            (l, v)
        })
        .collect()
}

/// Exact ball fixed point of an element whose relevant eigenvalue lies in
/// the cyclotomic field: try the 24 candidates +-zeta^k; return the
/// F-negative eigenvector if one is found.
pub fn exact_fixed_point(g: &ProjElement) -> Option<BallPoint> {
    let m = g.mat();
    for sign in [1i64, -1] {
        for k in 0..12 {
            let lam = if sign == 1 {
                CycNum::zeta_pow(k)
            } else {
                -CycNum::zeta_pow(k)
            };
            // m - lam I singular? then nullspace via cross products of rows
            let rows: Vec<[CycNum; 3]> = (0..3)
                .map(|i| {
                    std::array::from_fn(|j| {
                        if i == j {
                            &m.e[i][j] - &lam
                        } else {
                            m.e[i][j].clone()
                        }
                    })
                })
                .collect();
            let cross = |x: &[CycNum; 3], y: &[CycNum; 3]| -> [CycNum; 3] {
                [
                    &(&x[1] * &y[2]) - &(&x[2] * &y[1]),
                    &(&x[2] * &y[0]) - &(&x[0] * &y[2]),
                    &(&x[0] * &y[1]) - &(&x[1] * &y[0]),
                ]
            };
            for (r1, r2) in [(0, 1), (0, 2), (1, 2)] {
                let v = cross(&rows[r1], &rows[r2]);
                if v.iter().all(|c| c.is_zero()) {
                    continue;
                }
                // check it is a genuine eigenvector
                let gv = g.mat().apply(&v);
                let ok = (0..3).all(|i| gv[i] == (&lam * &v[i]));
                if !ok {
                    continue;
                }
                if let Ok(p) = BallPoint::from_exact(v) {
                    return Some(p);
                }
            }
        }
    }
    None
}

/// Exact intersection point of two mirrors (the unique common projective
/// point), if it lies inside the ball.
pub fn mirror_intersection(m1: &Mirror, m2: &Mirror) -> Option<BallPoint> {
    let f = crate::rep::form();
    // x must pair to zero with both polars: conj(x) is orthogonal to
    // F p1 and F p2, so conj(x) = (F p1) x (F p2) as a cross product.
    let fp = |p: &[CycNum; 3]| -> [CycNum; 3] {
        std::array::from_fn(|i| &f.e[i][i] * &p[i])
    };
    let a = fp(&m1.polar);
    let b = fp(&m2.polar);
    let cross = [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ];
    let x: [CycNum; 3] = std::array::from_fn(|i| cross[i].conj());
    if x.iter().all(|c| c.is_zero()) {
        return None;
    }
    BallPoint::from_exact(x).ok()
}

/// Search for an exact transverse-intersection base point on the slope-0
/// mirror: intersect it with translated order-3 mirrors until a point with
/// stabilizer order 12 appears. Returns the point and the witness word w
/// with the order-3 mirror equal to w(M_c).
pub fn transverse_base_point(atlas: &Atlas) -> Result<(BallPoint, Word), LatticeError> {
    static FOUND: OnceLock<Result<(BallPoint, Word), String>> = OnceLock::new();
    let res = FOUND.get_or_init(|| transverse_base_point_search(atlas).map_err(|e| e.to_string()));
    res.clone().map_err(LatticeError::Inconsistent)
}

fn transverse_base_point_search(atlas: &Atlas) -> Result<(BallPoint, Word), LatticeError> {
    let m0 = mirror_0();
    let mc = mirror_c();
    let gens = Gens::get();
    // candidate conjugators: k b and b k over the finite subgroup
    let k = atlas.k_group();
    let mut candidates: Vec<Word> = Vec::new();
    for kel in &k.elems {
        let kw = kel.word.as_ref().unwrap();
        candidates.push(kw.concat(&Word::gen(Gen::B)));
        candidates.push(Word::gen(Gen::B).concat(kw));
    }
    for w in candidates {
        let g = word_to_matrix(&w);
        let ma = mirror_map(&g, &mc);
        let Some(x) = mirror_intersection(&m0, &ma) else {
            continue;
        };
        // exclude the origin (every finite-slope mirror passes through it)
        let ex = x.exact.as_ref().unwrap();
        if ex[0].is_zero() && ex[1].is_zero() {
            continue;
        }
        // quick filter: v and g u g^-1 both fix x; a transverse double
        // point forces their closure to be cyclic of order 12
        let gu = g.mul(&gens.u).mul(&g.inverse());
        debug_assert!(finite::fixes_point(&gens.v, &x));
        debug_assert!(finite::fixes_point(&gu, &x));
        match FiniteSubgroup::closure(&[gens.v.clone(), gu], 16) {
            Ok(closed) if closed.order() == 12 => {}
            _ => continue,
        }
        // full stabilizer certificate via the shared ball
        if atlas
            .point_stabilizer(&x, 12, atlas.opts.bfs_depth.min(5))
            .is_ok()
        {
            return Ok((x, w));
        }
    }
    Err(LatticeError::Inconsistent(
        "no transverse base point found among candidate mirrors".into(),
    ))
}

/// Representative of the order-8 stabilizer class: the ball fixed point of
/// (j b)^-1, which generates the local cyclic group of order 8. The point
/// is not rational over the base cyclotomic field (the relevant eigenvalue
/// lies in the degree-2 extension by a 24th root of unity), so it is
/// realized numerically; the stabilizer certificate runs at 1e-9 like the
/// elliptic point's.
pub fn point_order8(atlas: &Atlas) -> Result<BallPoint, LatticeError> {
    let g = word_to_matrix(&Word::parse("b' j'"));
    assert_eq!(g.order(30), Some(8));
    let p = numeric_fixed_point(&g).ok_or_else(|| {
        LatticeError::Inconsistent("order-8 element has no ball fixed point".into())
    })?;
    atlas.point_stabilizer(&p, 8, atlas.opts.bfs_depth.min(5))?;
    Ok(p)
}

/// Numeric ball fixed point of an elliptic element: the eigenvector of the
/// embedded matrix with negative form value.
pub fn numeric_fixed_point(g: &ProjElement) -> Option<BallPoint> {
    let m = g.mat().embed();
    let k = crate::rep::kappa();
    for (_, v) in eig3(&m) {
        let n2 = v[0].norm_sqr() + v[1].norm_sqr();
        let d2 = v[2].norm_sqr();
        if d2 > 1e-12 && n2 / d2 < (3f64.sqrt() - 1.0) * 0.999_999 {
            return Some(BallPoint::numeric(v[0] / v[2] / k, v[1] / v[2] / k));
        }
    }
    None
}

pub fn origin() -> BallPoint {
    BallPoint::origin()
}

/// Apply a word to a ball point.
pub fn act_word(w: &Word, x: &BallPoint) -> BallPoint {
    ball_action(&word_to_matrix(w), x).expect("action defined on ball points")
}

/// Whether an element maps one mirror onto another, exactly.
pub fn maps_mirror(g: &ProjElement, from: &Mirror, to: &Mirror) -> bool {
    mirror_map(g, from) == *to
}

/// Incidence of an exact point with a mirror.
pub fn on_mirror(x: &BallPoint, m: &Mirror) -> bool {
    point_on_mirror(x, m).unwrap_or(false)
}
