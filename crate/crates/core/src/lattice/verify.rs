//! Certificate suites over the atlas: relator identities, indices and the
//! abelianization, the torsion census and torsion-freeness sweep, mirror
//! orbits and stabilizers, and the two-oracle membership crosscheck.

use super::congruence::Mat3GF;
use super::data;
use super::finite::fixes_point;
use super::{
    mirror_0, mirror_c, point_order8, point_p, point_q, slope_b, slope_from_signs,
    transverse_base_point, Atlas, LatticeError,
};
use crate::cert::Certificate;
use crate::cyclo::CycNum;
use crate::fpgrp::{orbit_sets, orbits, reidemeister_schreier, smith_normal_form, IntMatrix};
use crate::fpgrp::snf::free_image;
use crate::rep::{mirror_map, word_to_matrix, Mat3, Mirror, ProjElement};
use crate::words::Word;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::json;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::time::Instant;

fn identity_cert(id: &str, desc: &str, w: &Word) -> Certificate {
    let t0 = Instant::now();
    let g = word_to_matrix(w);
    Certificate::pass_if(id, desc, g.is_identity(), json!(format!("{}", w)), t0)
}

/// Relator identities of the main presentation, the finite subgroup, the
/// two mirror stabilizers, and the reflection-group model, all as exact
/// projective matrix identities.
pub fn suite_presentation(_atlas: &Atlas) -> Vec<Certificate> {
    let mut certs = Vec::new();
    for (i, (name, w)) in data::gamma_relator_words().iter().enumerate() {
        certs.push(identity_cert(
            &format!("presentation.lattice.r{i}"),
            &format!("lattice relator {name} is projectively trivial"),
            w,
        ));
    }
    // j is the diagonal matrix diag(zeta, zeta, 1)
    {
        let t0 = Instant::now();
        let j = word_to_matrix(&Word::parse("j"));
        let jd = ProjElement::new(
            Mat3::diag(CycNum::zeta(), CycNum::zeta(), CycNum::one()),
            None,
        );
        certs.push(Certificate::pass_if(
            "presentation.j_diagonal",
            "j = (uv)^2 is the diagonal matrix diag(zeta, zeta, 1)",
            j == jd,
            json!("j"),
            t0,
        ));
    }
    // mirror-stabilizer presentations: substitute the generator words
    for (tag, pres, gen_words) in [
        (
            "mirror0",
            data::mirror0_presentation(),
            data::mirror0_gen_words(),
        ),
        (
            "mirrorc",
            data::mirrorc_presentation(),
            data::mirrorc_gen_words(),
        ),
    ] {
        for (i, r) in pres.relators.iter().enumerate() {
            let w = super::finite::indices_to_word(r, &gen_words);
            certs.push(identity_cert(
                &format!("presentation.{tag}.r{i}"),
                &format!("{tag} stabilizer relator #{i} holds in matrices"),
                &w,
            ));
        }
    }
    // reflection-group model relators
    for (i, (name, w)) in data::reflection_group_relator_words().iter().enumerate() {
        certs.push(identity_cert(
            &format!("presentation.reflection.r{i}"),
            &format!("reflection-group relator {name} holds under the dictionary"),
            w,
        ));
    }
    certs
}

/// Data extracted from the abelianization of the index-864 subgroup.
#[derive(Clone, Debug)]
pub struct AbelianizationData {
    pub cokernel: String,
    pub free_rank: usize,
    pub nontrivial_invariants: usize,
    /// images of the three subgroup generators in the free quotient
    pub q_a: [[i64; 2]; 3],
    /// unimodular change of basis carrying q to the frozen generator images
    pub transform: Option<[[i64; 2]; 2]>,
}

/// Reidemeister-Schreier plus Smith normal form on the index-864 table.
pub fn abelianization(atlas: &Atlas) -> Result<AbelianizationData, LatticeError> {
    let t = atlas.pi_table()?;
    let p = data::gamma_presentation();
    let sp = reidemeister_schreier(t, &p);
    let mut m = IntMatrix::new(sp.ngens);
    for r in &sp.relators {
        let mut row: BTreeMap<u32, BigInt> = BTreeMap::new();
        for &x in r {
            let i = (x.unsigned_abs() - 1) as u32;
            let e = row.entry(i).or_insert_with(|| BigInt::from(0));
            *e += x.signum();
        }
        row.retain(|_, v| *v != BigInt::from(0));
        m.rows.push(row);
    }
    let mut shadows: Vec<Vec<BigInt>> = Vec::new();
    for w in atlas.a_words() {
        let expanded = w.expand_j();
        let schreier = sp
            .rewrite(t, &expanded)
            .ok_or_else(|| LatticeError::Inconsistent("generator not in subgroup".into()))?;
        let ab = sp.abelianize(&schreier);
        shadows.push(ab.into_iter().map(BigInt::from).collect());
    }
    let out = smith_normal_form(&m, &mut shadows);
    let q_a: [[i64; 2]; 3] = std::array::from_fn(|i| {
        let img = free_image(&out, &shadows[i]);
        if img.len() == 2 {
            [as_i64(&img[0]), as_i64(&img[1])]
        } else {
            [i64::MAX, i64::MAX]
        }
    });
    let transform = solve_unimodular(&q_a, &crate::homology::GENERATOR_IMAGES);
    Ok(AbelianizationData {
        cokernel: out.cokernel_string(),
        free_rank: out.free_rank,
        nontrivial_invariants: out.invariants.iter().filter(|d| *d != &BigInt::from(1)).count(),
        q_a,
        transform,
    })
}

fn as_i64(b: &BigInt) -> i64 {
    i64::try_from(b).unwrap_or(i64::MAX)
}

/// Find the 2x2 integer matrix A with det +-1 and q_i A = f_i for all i.
/// Any pair q_i, q_j with nonzero determinant pins A over the rationals;
/// the integrality, unimodularity, and third-row checks then certify it.
fn solve_unimodular(q: &[[i64; 2]; 3], f: &[[i64; 2]; 3]) -> Option<[[i64; 2]; 2]> {
    for (r, s) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let det = q[r][0] * q[s][1] - q[r][1] * q[s][0];
        if det == 0 {
            continue;
        }
        // A = [q_r; q_s]^{-1} [f_r; f_s], computed in det-scaled integers
        let adj = [[q[s][1], -q[r][1]], [-q[s][0], q[r][0]]];
        let mut a = [[0i64; 2]; 2];
        let mut integral = true;
        for i in 0..2 {
            for j in 0..2 {
                let num = adj[i][0] * f[r][j] + adj[i][1] * f[s][j];
                if num % det != 0 {
                    integral = false;
                }
                a[i][j] = num / det;
            }
        }
        if !integral {
            return None;
        }
        let da = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        if da.abs() != 1 {
            return None;
        }
        let all_match = (0..3).all(|i| {
            q[i][0] * a[0][0] + q[i][1] * a[1][0] == f[i][0]
                && q[i][0] * a[0][1] + q[i][1] * a[1][1] == f[i][1]
        });
        if all_match {
            return Some(a);
        }
        return None;
    }
    None
}

/// Indices of the main subgroup and the three mirror-stabilizer subgroups,
/// plus the abelianization and the normalizer grading.
pub fn suite_index(atlas: &Atlas) -> Vec<Certificate> {
    let mut certs = Vec::new();
    let t0 = Instant::now();
    match atlas.pi_table() {
        Ok(t) => {
            certs.push(Certificate::from_values(
                "index.pi",
                "index of the congruence-torsion-free subgroup in the lattice",
                t.len(),
                864,
                t0,
            ));
        }
        Err(e) => certs.push(Certificate::failed(
            "index.pi",
            "index of the congruence-torsion-free subgroup in the lattice",
            &e.to_string(),
        )),
    }

    // order of the finite subgroup by coset enumeration on its presentation
    let t0 = Instant::now();
    match crate::fpgrp::todd_coxeter(&data::k_presentation(), &[], atlas.opts.max_cosets) {
        Ok(t) => certs.push(Certificate::from_values(
            "index.k_order",
            "order of the finite subgroup <u, v> by coset enumeration",
            t.len(),
            288,
            t0,
        )),
        Err(e) => certs.push(Certificate::failed(
            "index.k_order",
            "order of the finite subgroup <u, v> by coset enumeration",
            &e.to_string(),
        )),
    }

    // mirror-stabilizer indices via induced orbits
    for (id, desc, gens, expected) in [
        (
            "index.mirror0",
            "index of the sublattice stabilizer inside the slope-0 mirror stabilizer",
            data::mirror0_gen_words(),
            288usize,
        ),
        (
            "index.mirrorc",
            "index of the sublattice stabilizer inside the slope-c mirror stabilizer",
            data::mirrorc_gen_words(),
            324,
        ),
    ] {
        let t0 = Instant::now();
        match atlas.sub_table(&gens) {
            Ok(st) => certs.push(Certificate::from_values(id, desc, st.index(), expected, t0)),
            Err(e) => certs.push(Certificate::failed(id, desc, &e.to_string())),
        }
    }
    for (id, mu, expected) in [
        ("index.mirror_bc", "b", 108usize),
        ("index.mirror_binvc", "b'", 108),
    ] {
        let t0 = Instant::now();
        let h = Word::parse(mu);
        let gens = atlas.conjugated_words(&h, &data::mirrorc_gen_words());
        match atlas.sub_table(&gens) {
            Ok(st) => certs.push(Certificate::from_values(
                id,
                "index of the sublattice stabilizer inside a translated mirror stabilizer",
                st.index(),
                expected,
                t0,
            )),
            Err(e) => certs.push(Certificate::failed(id, "translated mirror index", &e.to_string())),
        }
    }

    // abelianization
    let t0 = Instant::now();
    match abelianization(atlas) {
        Ok(ab) => {
            certs.push(Certificate::from_values(
                "index.abelianization",
                "abelianization of the index-864 subgroup via rewriting + Smith form",
                &ab.cokernel,
                "Z^2",
                t0,
            ));
            certs.push(Certificate::pass_if(
                "index.abelianization_basis",
                "a unimodular change of basis carries the computed quotient onto the frozen generator images",
                ab.transform.is_some(),
                json!({"q_a": ab.q_a, "transform": ab.transform}),
                t0,
            ));
        }
        Err(e) => certs.push(Certificate::failed(
            "index.abelianization",
            "abelianization of the index-864 subgroup",
            &e.to_string(),
        )),
    }

    // the normalizer grading: j^4 conjugation preserves the subgroup and
    // the three cosets of <Pi, j^4> over Pi are distinct
    let t0 = Instant::now();
    let mut ok = true;
    for (gen, image) in data::normalizer_relations() {
        let lhs = word_to_matrix(
            &Word::parse("j4")
                .concat(&atlas.a_words()[gen[1..].parse::<usize>().unwrap() - 1])
                .concat(&Word::parse("j4").inverse()),
        );
        let rhs = word_to_matrix(&crate::words::PiWord::parse(image).to_word(&atlas.a_words()));
        ok &= lhs == rhs;
    }
    let mem_j4 = atlas.member(&Word::parse("j4"));
    let mem_j8 = atlas.member(&Word::parse("j8"));
    ok &= !mem_j4 && !mem_j8;
    certs.push(Certificate::pass_if(
        "index.normalizer",
        "conjugation by j^4 preserves the subgroup (three exact word identities) and j^4, j^8 lie outside it",
        ok,
        json!({"j4_member": mem_j4, "j8_member": mem_j8}),
        t0,
    ));

    // congruence image sizes
    let t0 = Instant::now();
    let cong = atlas.congruence();
    certs.push(Certificate::from_values(
        "index.congruence_images",
        "orders of the two congruence images, the determinant character image, and the order-21 target",
        json!({
            "mod2": cong.rho2_image_order,
            "mod3": cong.rho3_image_order,
            "det2": cong.det2_image_size,
            "g21": cong.g21.len(),
        }),
        json!({"mod2": 216, "mod3": 6048, "det2": 3, "g21": 21}),
        t0,
    ));
    certs
}

/// Census of finite-order elements in the three distinguished cosets and
/// the torsion-freeness sweep over all conjugating representatives.
pub fn suite_torsion(atlas: &Atlas) -> Vec<Certificate> {
    let mut certs = Vec::new();
    let gens = atlas.gens();
    let k = atlas.k_group();

    // table representative orders
    let t0 = Instant::now();
    let mut row_counts: Vec<(u32, usize)> = Vec::new();
    let mut order_ok = true;
    let mut reps: Vec<(u32, ProjElement)> = Vec::new();
    for (d, words) in data::torsion_table() {
        row_counts.push((d, words.len()));
        for w in words {
            let g = word_to_matrix(&w);
            let o = g.order(24);
            if o != Some(d) {
                order_ok = false;
            }
            reps.push((d, g));
        }
    }
    certs.push(Certificate::pass_if(
        "torsion.representative_orders",
        "every torsion representative has its row's order",
        order_ok,
        json!(row_counts),
        t0,
    ));
    certs.push(Certificate::from_values(
        "torsion.row_counts",
        "representative counts per order",
        row_counts.iter().map(|&(_, c)| c).collect::<Vec<_>>(),
        vec![3usize, 4, 5, 6, 3, 12, 2],
        t0,
    ));

    // census of the three cosets
    let t0 = Instant::now();
    let b = &gens.b;
    let buinvb = b.mul(&gens.u.inverse()).mul(b);
    let mut census: Vec<(String, usize)> = Vec::new();
    let mut torsion_elems: Vec<(String, ProjElement, u32)> = Vec::new();
    for (tag, lead) in [
        ("k", None),
        ("bk", Some(b.clone())),
        ("bu1bk", Some(buinvb.clone())),
    ] {
        let mut count = 0;
        for kel in &k.elems {
            let e = match &lead {
                None => kel.clone(),
                Some(l) => l.mul(kel),
            };
            if e.is_identity() {
                continue;
            }
            if let Some(o) = e.order(24) {
                count += 1;
                torsion_elems.push((tag.to_string(), e, o));
            }
        }
        census.push((tag.to_string(), count));
    }
    let total: usize = census.iter().map(|(_, c)| c).sum();
    certs.push(Certificate::from_values(
        "torsion.census",
        "nontrivial finite-order elements in the three distinguished cosets",
        json!({
            "total": total,
            "k": census[0].1,
            "bk": census[1].1,
            "bu1bk": census[2].1,
        }),
        json!({"total": 408, "k": 287, "bk": 76, "bu1bk": 45}),
        t0,
    ));

    // every census element matches a representative (or inverse) by
    // projective characteristic polynomial and order
    let t0 = Instant::now();
    let mut rep_keys: HashSet<(u32, Vec<u8>)> = HashSet::new();
    for (d, g) in &reps {
        rep_keys.insert((*d, proj_charpoly_key(g)));
        rep_keys.insert((*d, proj_charpoly_key(&g.inverse())));
    }
    let unmatched = torsion_elems
        .par_iter()
        .filter(|(_, e, o)| !rep_keys.contains(&(*o, proj_charpoly_key(e))))
        .count();
    certs.push(Certificate::from_values(
        "torsion.classification",
        "census elements matching a table representative or inverse by order and projective characteristic polynomial",
        json!({"unmatched": unmatched, "checked": torsion_elems.len()}),
        json!({"unmatched": 0, "checked": 408}),
        t0,
    ));

    // torsion-freeness: conjugates of every representative (and inverse) by
    // every coset representative stay outside the subgroup; the test runs
    // entirely in the two finite congruence quotients
    let t0 = Instant::now();
    let cong = atlas.congruence();
    let coset_reps = atlas.coset_representatives();
    let mut all_t: Vec<ProjElement> = Vec::new();
    for (_, g) in &reps {
        all_t.push(g.clone());
        all_t.push(g.inverse());
    }
    let all_t_gf: Vec<(Mat3GF, Mat3GF)> = all_t.iter().map(|t| cong.reduce_both(t)).collect();
    let reps_gf: Vec<(Mat3GF, Mat3GF, Mat3GF, Mat3GF)> = coset_reps
        .par_iter()
        .map(|(_, _, g)| {
            let (m2, m3) = cong.reduce_both(g);
            (m2, m2.inverse(), m3, m3.inverse())
        })
        .collect();
    let hits: usize = all_t_gf
        .par_iter()
        .map(|(t2, t3)| {
            reps_gf
                .iter()
                .filter(|(g2, g2i, g3, g3i)| {
                    cong.member_gf(&g2.mul(t2).mul(g2i), &g3.mul(t3).mul(g3i))
                })
                .count()
        })
        .sum();
    certs.push(Certificate::from_values(
        "torsion.freeness_sweep",
        "membership hits for conjugated torsion representatives over all 864 coset representatives (must be none)",
        json!({"hits": hits, "tests": all_t.len() * coset_reps.len()}),
        json!({"hits": 0, "tests": all_t.len() * coset_reps.len()}),
        t0,
    ));
    certs
}

/// Canonical projective characteristic polynomial key: the minimum over the
/// twelve scalar rescalings of the serialized (trace, sigma2, det).
fn proj_charpoly_key(g: &ProjElement) -> Vec<u8> {
    let tr = g.mat().trace();
    let s2 = g.mat().sigma2();
    let det = g.mat().det();
    (0..12)
        .map(|k| {
            let z = CycNum::zeta_pow(k);
            let z2 = CycNum::zeta_pow(2 * k);
            let z3 = CycNum::zeta_pow(3 * k);
            let mut out = Vec::with_capacity(128);
            (&tr * &z).ser_bytes(&mut out);
            (&s2 * &z2).ser_bytes(&mut out);
            (&det * &z3).ser_bytes(&mut out);
            out
        })
        .min()
        .unwrap()
}

/// Mirror orbit tables under the finite subgroup, with witnesses, and the
/// stabilizer orders at the five representative points.
pub fn suite_mirrors(atlas: &Atlas) -> Vec<Certificate> {
    let mut certs = Vec::new();
    let k = atlas.k_group();
    let mc = mirror_c();
    let m0 = mirror_0();

    // orbit of the order-3 mirror: eight slopes
    let t0 = Instant::now();
    let mut orbit_a: HashSet<Vec<u8>> = HashSet::new();
    for e in &k.elems {
        orbit_a.insert(mirror_map(e, &mc).key());
    }
    let expected_a: HashSet<Vec<u8>> = data::type_a_orbit()
        .iter()
        .map(|(s, _)| Mirror::from_slope(&slope_from_signs(*s)).key())
        .collect();
    let mut witnesses_ok = true;
    for (s, w) in data::type_a_orbit() {
        let target = Mirror::from_slope(&slope_from_signs(s));
        witnesses_ok &= mirror_map(&word_to_matrix(&w), &mc) == target;
    }
    certs.push(Certificate::pass_if(
        "mirrors.orbit_a",
        "the finite-subgroup orbit of the order-3 mirror is the eight listed slopes, with correct witnesses",
        orbit_a == expected_a && orbit_a.len() == 8 && witnesses_ok,
        json!({"orbit_size": orbit_a.len(), "witnesses_ok": witnesses_ok}),
        t0,
    ));

    // orbit of the order-4 mirror: six slopes
    let t0 = Instant::now();
    let mut orbit_b: HashSet<Vec<u8>> = HashSet::new();
    for e in &k.elems {
        orbit_b.insert(mirror_map(e, &m0).key());
    }
    let expected_b: HashSet<Vec<u8>> = data::type_b_orbit()
        .iter()
        .map(|(s, _)| match slope_b(*s) {
            Some(a) => Mirror::from_slope(&a).key(),
            None => Mirror::slope_infinity().key(),
        })
        .collect();
    let mut witnesses_ok = true;
    for (s, w) in data::type_b_orbit() {
        let target = match slope_b(s) {
            Some(a) => Mirror::from_slope(&a),
            None => Mirror::slope_infinity(),
        };
        witnesses_ok &= mirror_map(&word_to_matrix(&w), &m0) == target;
    }
    certs.push(Certificate::pass_if(
        "mirrors.orbit_b",
        "the finite-subgroup orbit of the order-4 mirror is the six listed slopes, with correct witnesses",
        orbit_b == expected_b && orbit_b.len() == 6 && witnesses_ok,
        json!({"orbit_size": orbit_b.len(), "witnesses_ok": witnesses_ok}),
        t0,
    ));

    // the center j of the finite subgroup
    let t0 = Instant::now();
    let j = &atlas.gens().j;
    certs.push(Certificate::pass_if(
        "mirrors.j_central",
        "j commutes with all 288 elements of the finite subgroup",
        k.is_central(j) && k.contains(j),
        json!({"order": k.order()}),
        t0,
    ));

    // stabilizer orders at the representative points
    let depth = atlas.opts.bfs_depth;
    let t0 = Instant::now();
    let o = super::origin();
    match atlas.point_stabilizer(&o, 288, depth) {
        Ok(stab) => {
            let equals_k = stab.order() == 288 && stab.elems.iter().all(|e| k.contains(e));
            certs.push(Certificate::pass_if(
                "mirrors.stabilizer_origin",
                "the stabilizer of the origin is the order-288 finite subgroup",
                equals_k,
                json!({"order": stab.order()}),
                t0,
            ));
        }
        Err(e) => certs.push(Certificate::failed(
            "mirrors.stabilizer_origin",
            "origin stabilizer",
            &e.to_string(),
        )),
    }

    let t0 = Instant::now();
    let p = point_p();
    match atlas.point_stabilizer(&p, 24, depth) {
        Ok(stab) => {
            // mirrors of order-3 reflections inside the stabilizer
            let mut mirrors: HashSet<Vec<u8>> = HashSet::new();
            for e in &stab.elems {
                if let Some(m) = reflection_mirror(e, 3) {
                    mirrors.insert(m.key());
                }
            }
            let through_p: Vec<bool> = mirrors
                .iter()
                .map(|key| {
                    // reconstruct membership test from stored polars
                    stab.elems.iter().any(|e| {
                        reflection_mirror(e, 3)
                            .map(|m| m.key() == *key && super::on_mirror(&p, &m))
                            .unwrap_or(false)
                    })
                })
                .collect();
            let ok = stab.order() == 24 && mirrors.len() == 4 && through_p.iter().all(|&b| b);
            certs.push(Certificate::pass_if(
                "mirrors.stabilizer_p",
                "the order-24 point stabilizer contains exactly 4 order-3 reflection mirrors, all through the point",
                ok,
                json!({"order": stab.order(), "reflection_mirrors": mirrors.len()}),
                t0,
            ));
        }
        Err(e) => certs.push(Certificate::failed(
            "mirrors.stabilizer_p",
            "order-24 point stabilizer",
            &e.to_string(),
        )),
    }

    let t0 = Instant::now();
    match transverse_base_point(atlas) {
        Ok((x, w)) => certs.push(Certificate::pass_if(
            "mirrors.stabilizer_transverse",
            "a transverse double point has stabilizer of order 12",
            true,
            json!({"witness_mirror": format!("{} (image of the order-3 base mirror)", w)}),
            {
                let _ = x;
                t0
            },
        )),
        Err(e) => certs.push(Certificate::failed(
            "mirrors.stabilizer_transverse",
            "transverse double point stabilizer",
            &e.to_string(),
        )),
    }

    let t0 = Instant::now();
    match point_order8(atlas) {
        Ok(_) => certs.push(Certificate::pass_if(
            "mirrors.stabilizer_order8",
            "the nodal-image point has stabilizer of order 8",
            true,
            json!({}),
            t0,
        )),
        Err(e) => certs.push(Certificate::failed(
            "mirrors.stabilizer_order8",
            "order-8 point stabilizer",
            &e.to_string(),
        )),
    }

    let t0 = Instant::now();
    let q = point_q();
    match atlas.point_stabilizer(&q, 3, depth) {
        Ok(stab) => {
            let buv = word_to_matrix(&Word::parse("b u v"));
            certs.push(Certificate::pass_if(
                "mirrors.stabilizer_q",
                "the isolated elliptic point has stabilizer of order 3 generated by buv (numeric fixedness at 1e-9)",
                stab.order() == 3 && stab.contains(&buv),
                json!({"order": stab.order()}),
                t0,
            ));
        }
        Err(e) => certs.push(Certificate::failed(
            "mirrors.stabilizer_q",
            "order-3 point stabilizer",
            &e.to_string(),
        )),
    }

    // closed-form coordinates of the elliptic point
    let t0 = Instant::now();
    let diff = q_formula_distance();
    certs.push(Certificate::pass_if(
        "mirrors.q_closed_form",
        "the eigenvector fixed point matches its closed-form coordinates to 1e-9",
        diff < 1e-9,
        json!({"distance": diff}),
        t0,
    ));

    certs
}

/// Distance between the eigenvector realization of the elliptic fixed point
/// and its closed-form coordinates with lambda = e^{-i pi / 18}.
pub fn q_formula_distance() -> f64 {
    use num_complex::Complex64 as C;
    let q = point_q();
    let zeta: C = CycNum::zeta().embed();
    let lam = C::from_polar(1.0, -std::f64::consts::PI / 18.0);
    let z3 = zeta.powu(3);
    let z2 = zeta.powu(2);
    let c1 = z3 - z2 - zeta + C::new(1.0, 0.0) + (z2 - zeta + C::new(1.0, 0.0)) * lam
        + (-z3 + z2 - C::new(1.0, 0.0)) * lam * lam;
    let c2 = z3 - (zeta - C::new(1.0, 0.0)) * lam * lam;
    let kap = crate::rep::kappa();
    let d1 = (q.z - c1 / kap).norm();
    let d2 = (q.w - c2 / kap).norm();
    (d1 * d1 + d2 * d2).sqrt()
}

/// The pointwise-fixed mirror of a complex reflection of the given order,
/// or None if the element is not such a reflection.
pub fn reflection_mirror(g: &ProjElement, order: u32) -> Option<Mirror> {
    if g.order(24) != Some(order) {
        return None;
    }
    // find the scalar multiple of g that is an honest matrix of that order
    for kk in 0..12 {
        let gs = g.mat().scale(&CycNum::zeta_pow(kk));
        let mut pw = gs.clone();
        for _ in 1..order {
            pw = pw.mul(&gs);
        }
        if pw != Mat3::identity() {
            continue;
        }
        // eigenvalues are among the 12th roots of unity; a reflection has a
        // repeated eigenvalue with a rank-1 complement
        for a in 0..12 {
            let lam = CycNum::zeta_pow(a);
            let shifted = sub_scalar(&gs, &lam);
            if rank3(&shifted) == 1 {
                // polar: eigenvector for a different eigenvalue
                for b2 in 0..12 {
                    if b2 == a {
                        continue;
                    }
                    let mu = CycNum::zeta_pow(b2);
                    let sh2 = sub_scalar(&gs, &mu);
                    if rank3(&sh2) == 2 {
                        if let Some(v) = nullvector(&sh2) {
                            use std::cmp::Ordering;
                            let fv = crate::rep::form_pair(&v, &v);
                            if fv.real_sign() == Ok(Ordering::Greater) {
                                return Some(Mirror::from_polar(v));
                            }
                        }
                    }
                }
            }
        }
        break;
    }
    None
}

fn sub_scalar(m: &Mat3, lam: &CycNum) -> Mat3 {
    let mut out = m.clone();
    for i in 0..3 {
        out.e[i][i] = &out.e[i][i] - lam;
    }
    out
}

fn rank3(m: &Mat3) -> usize {
    if !m.det().is_zero() {
        return 3;
    }
    // any nonzero 2x2 minor?
    for i1 in 0..3 {
        for i2 in (i1 + 1)..3 {
            for j1 in 0..3 {
                for j2 in (j1 + 1)..3 {
                    let minor = &(&m.e[i1][j1] * &m.e[i2][j2]) - &(&m.e[i1][j2] * &m.e[i2][j1]);
                    if !minor.is_zero() {
                        return 2;
                    }
                }
            }
        }
    }
    if m.e.iter().flatten().all(|c| c.is_zero()) {
        0
    } else {
        1
    }
}

fn nullvector(m: &Mat3) -> Option<[CycNum; 3]> {
    let cross = |x: &[CycNum; 3], y: &[CycNum; 3]| -> [CycNum; 3] {
        [
            &(&x[1] * &y[2]) - &(&x[2] * &y[1]),
            &(&x[2] * &y[0]) - &(&x[0] * &y[2]),
            &(&x[0] * &y[1]) - &(&x[1] * &y[0]),
        ]
    };
    for (r1, r2) in [(0, 1), (0, 2), (1, 2)] {
        let v = cross(&m.e[r1], &m.e[r2]);
        if !v.iter().all(|c| c.is_zero()) {
            return Some(v);
        }
    }
    None
}

/// Agreement of the congruence membership oracle with coset-table tracing,
/// on the full transversal and on random words.
pub fn membership_crosscheck(
    atlas: &Atlas,
    random_words: usize,
    seed: u64,
) -> Result<Vec<Certificate>, LatticeError> {
    use rand::{Rng, SeedableRng};
    let mut certs = Vec::new();
    let t = atlas.pi_table()?;
    let cong = atlas.congruence();
    let k = atlas.k_group();

    // transversal: all 864 representatives land in distinct cosets and
    // exactly the identity is a member
    let t0 = Instant::now();
    let reps = atlas.coset_representatives();
    let mut seen = HashSet::new();
    let mut members = 0usize;
    let mut agree = true;
    for (mu, pos, g) in reps {
        let w = match mu {
            0 => Word::identity(),
            1 => Word::parse("b"),
            _ => Word::parse("b'"),
        }
        .concat(k.elems[*pos].word.as_ref().unwrap());
        let c = t.trace(0, &w.expand_j());
        seen.insert(c);
        let m1 = cong.member_word(&w);
        let m2 = c == 0;
        let m3 = cong.member_matrix(g);
        if m1 != m2 || m1 != m3 {
            agree = false;
        }
        if m1 {
            members += 1;
        }
    }
    certs.push(Certificate::pass_if(
        "membership.transversal",
        "the 864 products land in 864 distinct cosets; exactly the identity is a member; oracles agree",
        seen.len() == 864 && members == 1 && agree,
        json!({"distinct_cosets": seen.len(), "members": members, "oracles_agree": agree}),
        t0,
    ));

    // random words
    let t0 = Instant::now();
    if random_words > 0 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let words: Vec<Word> = (0..random_words)
            .map(|_| {
                let len = rng.random_range(5..40);
                let letters: Vec<String> = (0..len)
                    .map(|_| {
                        let g = ["u", "v", "b", "j"][rng.random_range(0..4)];
                        let inv = if rng.random_bool(0.5) { "'" } else { "" };
                        format!("{g}{inv}")
                    })
                    .collect();
                Word::parse(&letters.join(" "))
            })
            .collect();
        let disagreements = words
            .par_iter()
            .filter(|w| {
                let m1 = cong.member_word(w);
                let m2 = t.trace(0, &w.expand_j()) == 0;
                m1 != m2
            })
            .count();
        certs.push(Certificate::from_values(
            "membership.random_agreement",
            "agreement of the congruence oracle with coset tracing on random words",
            json!({"disagreements": disagreements, "trials": random_words}),
            json!({"disagreements": 0, "trials": random_words}),
            t0,
        ));
    } else {
        certs.push(Certificate::skipped(
            "membership.random_agreement",
            "agreement of the congruence oracle with coset tracing on random words",
            "seedless mode",
        ));
    }
    Ok(certs)
}

/// Double-coset style orbit count: the sub-table points under right
/// multiplication by stabilizer words; returns orbit representative points.
pub fn double_coset_representatives(
    atlas: &Atlas,
    points: &[usize],
    acting_words: &[Word],
) -> Result<Vec<usize>, LatticeError> {
    let t = atlas.pi_table()?;
    let expanded: Vec<Vec<i32>> = acting_words.iter().map(|w| w.expand_j()).collect();
    let point_pos: HashMap<usize, usize> =
        points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut uf: Vec<usize> = (0..points.len()).collect();
    fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for (i, &p) in points.iter().enumerate() {
        for w in &expanded {
            let q = t.trace(p, w);
            let j = *point_pos.get(&q).ok_or_else(|| {
                LatticeError::Inconsistent("acting word leaves the orbit".into())
            })?;
            let (a, b) = (find(&mut uf, i), find(&mut uf, j));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                uf[hi] = lo;
            }
        }
    }
    let mut reps = Vec::new();
    for i in 0..points.len() {
        if find(&mut uf, i) == i {
            reps.push(points[i]);
        }
    }
    Ok(reps)
}

/// Orbit label of every big-table coset under a finite set of words,
/// asserting all orbits share the expected size.
pub fn orbit_labels(
    atlas: &Atlas,
    acting_words: &[Word],
    expected_orbits: usize,
) -> Result<Vec<usize>, LatticeError> {
    let t = atlas.pi_table()?;
    let expanded: Vec<Vec<i32>> = acting_words.iter().map(|w| w.expand_j()).collect();
    let ids = orbits(t, &expanded);
    let sets = orbit_sets(&ids);
    if sets.len() != expected_orbits {
        return Err(LatticeError::Inconsistent(format!(
            "expected {expected_orbits} orbits, found {}",
            sets.len()
        )));
    }
    let size = t.len() / expected_orbits;
    if sets.iter().any(|s| s.len() != size) {
        return Err(LatticeError::Inconsistent("orbits are not free".into()));
    }
    Ok(ids)
}

/// The identity confirming the two mod-2/mod-3 canonical-form helpers stay
/// consistent (used by unit tests).
pub fn canonical_gf_roundtrip(m: &Mat3GF) -> bool {
    m.proj_key() == m.scale(Mat3GF::unit_scalars(m.p)[0]).proj_key()
}

/// v and the translated reflection both fix a transverse point; used by
/// geometry to locate incidence base points (re-exported convenience).
pub fn fixes(g: &ProjElement, x: &crate::rep::BallPoint) -> bool {
    fixes_point(g, x)
}
