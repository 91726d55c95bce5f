//! Frozen word tables: the lattice presentation, the subgroup generators,
//! the torsion representative table, mirror-orbit witnesses, the
//! mirror-stabilizer presentations, and the fixed-point witness words.

use crate::fpgrp::Presentation;
use crate::words::Word;

/// Generators of the index-864 torsion-free subgroup.
pub const A1: &str = "v u v' j4 b u v j2";
pub const A2: &str = "v2 u b u v' u v2 j";
pub const A3: &str = "u' v2 u j9 b v' u v' j8";

pub fn a_words() -> [Word; 3] {
    [Word::parse(A1), Word::parse(A2), Word::parse(A3)]
}

/// Relators of the full lattice on u, v, b (indices 1, 2, 3).
pub fn gamma_relators() -> Vec<Vec<i32>> {
    vec![
        vec![1, 1, 1],
        vec![2, 2, 2, 2],
        vec![3, 3, 3],
        vec![1, 2, 1, 2, -1, -2, -1, -2],
        vec![2, 3, -2, -3],
        vec![3, 1, 2, 3, 1, 2, 3, 1, 2],
        vec![3, 1, 2, 1, 3, 1, 2, 1, 2],
    ]
}

/// The corresponding relator words over u, v, b, j for matrix verification.
pub fn gamma_relator_words() -> Vec<(&'static str, Word)> {
    vec![
        ("u^3", Word::parse("u3")),
        ("v^4", Word::parse("v4")),
        ("b^3", Word::parse("b3")),
        ("(uv)^2(vu)^-2", Word::parse("u v u v v' u' v' u'").reduced()),
        ("[v,b]", Word::parse("v b v' b'")),
        ("(buv)^3", Word::parse("b u v b u v b u v")),
        ("(buvu)^2 v", Word::parse("b u v u b u v u v")),
    ]
}

pub fn gamma_presentation() -> Presentation {
    Presentation::new(&["u", "v", "b"], gamma_relators())
}

/// The order-288 subgroup on u, v.
pub fn k_presentation() -> Presentation {
    Presentation::new(
        &["u", "v"],
        vec![
            vec![1, 1, 1],
            vec![2, 2, 2, 2],
            vec![1, 2, 1, 2, -1, -2, -1, -2],
        ],
    )
}

/// Stabilizer of the slope-0 mirror: generators s2 = (jb)^-1, s3 = b,
/// s12 = j, z0 = v (indices 1..4).
pub fn mirror0_presentation() -> Presentation {
    Presentation::new(
        &["s2", "s3", "s12", "z0"],
        vec![
            vec![3; 12],
            vec![2, 2, 2],
            vec![1, 1, -4, -4, -4],
            vec![4, 4, 4, 4],
            vec![3, 4, -3, -4],
            vec![2, 4, -2, -4],
            vec![1, 4, -1, -4],
            vec![3, 2, 1],
        ],
    )
}

pub fn mirror0_gen_words() -> Vec<Word> {
    vec![
        Word::parse("b' j'"),
        Word::parse("b"),
        Word::parse("j"),
        Word::parse("v"),
    ]
}

/// Stabilizer of the order-3 mirror through the origin: t2 = (bu^-1)^2,
/// t4 = j^-1 (bu^-1)^2, t12 = j, zc = u (indices 1..4).
pub fn mirrorc_presentation() -> Presentation {
    Presentation::new(
        &["t2", "t4", "t12", "zc"],
        vec![
            vec![3; 12],
            vec![2, 2, 2, 2, -4],
            vec![1, 1],
            vec![4, 4, 4],
            vec![3, 4, -3, -4],
            vec![2, 4, -2, -4],
            vec![1, 4, -1, -4],
            vec![3, 2, 1],
        ],
    )
}

pub fn mirrorc_gen_words() -> Vec<Word> {
    vec![
        Word::parse("b u' b u'"),
        Word::parse("j' b u' b u'"),
        Word::parse("j"),
        Word::parse("u"),
    ]
}

/// Torsion representative table: (order, representative words).
pub fn torsion_table() -> Vec<(u32, Vec<Word>)> {
    let w = Word::parse;
    vec![
        (2, vec![w("v2"), w("j6"), w("b u' b u'")]),
        (3, vec![w("u"), w("j4"), w("u j4"), w("b u v")]),
        (4, vec![w("v"), w("j3"), w("v j3"), w("v2 j3"), w("b u'")]),
        (
            6,
            vec![
                w("j2"),
                w("v2 j2"),
                w("v2 u j"),
                w("v2 u j5"),
                w("b v2 u' j"),
                w("b v2"),
            ],
        ),
        (8, vec![w("u v j"), w("b j"), w("b j b j b j")]),
        (
            12,
            vec![
                w("j"),
                w("j5"),
                w("u v' j2"),
                w("u v' j3"),
                w("u v' j6"),
                w("u v' j'"),
                w("v2 j"),
                w("u v2"),
                w("u j"),
                w("u j3"),
                w("b v"),
                w("v' b' v' b' v' b' v' b' v' b'"),
            ],
        ),
        (24, vec![w("u v"), w("v u j2")]),
    ]
}

/// Signs (s0, s1, s2) of the eight order-3 mirror slopes
/// s0 (r + s1)(i + s2) / 2, in table order, with the witness words
/// mapping the base mirror onto each.
pub fn type_a_orbit() -> Vec<((i64, i64, i64), Word)> {
    vec![
        ((1, -1, -1), Word::identity()),
        ((-1, -1, 1), Word::parse("v")),
        ((-1, -1, -1), Word::parse("v2")),
        ((1, -1, 1), Word::parse("v3")),
        ((-1, 1, 1), Word::parse("u' v2 u")),
        ((-1, 1, -1), Word::parse("v u' v2 u")),
        ((1, 1, 1), Word::parse("v2 u' v2 u")),
        ((1, 1, -1), Word::parse("v3 u' v2 u")),
    ]
}

/// Slopes of the six order-4 mirrors through the origin (None = infinity)
/// with witness words from the slope-0 mirror.
pub fn type_b_orbit() -> Vec<(Option<(i64, i64)>, Word)> {
    // slope encoded as x + y*i with i = zeta^3
    vec![
        (Some((0, 0)), Word::identity()),
        (Some((0, 1)), Word::parse("u j")),
        (Some((-1, 0)), Word::parse("v u j")),
        (Some((0, -1)), Word::parse("v2 u j")),
        (Some((1, 0)), Word::parse("v3 u j")),
        (None, Word::parse("u' v2 u j6")),
    ]
}

/// The reflection-group relators rewritten through the isomorphism
/// J -> buv, R1 -> b, A1 -> v, R2 -> u.
pub fn reflection_group_relator_words() -> Vec<(&'static str, Word)> {
    vec![
        ("J^3", Word::parse("b u v b u v b u v")),
        ("R1^3", Word::parse("b3")),
        ("A1^4", Word::parse("v4")),
        (
            "A1 = (J R1^-1 J)^2",
            Word::parse("v' b u v b' b u v b u v b' b u v"),
        ),
        ("[A1, R1]", Word::parse("v b v' b'")),
        ("R2^3", Word::parse("u3")),
        (
            "A1 R2 A1 R2 = R2 A1 R2 A1",
            Word::parse("v u v u u' v' u' v'").reduced(),
        ),
    ]
}

/// Normalizer action: conjugation by j^4 on the subgroup generators.
pub fn normalizer_relations() -> [(&'static str, &'static str); 3] {
    [
        ("a1", "a3 a2^-3 a3^3 a1"),
        ("a2", "a3^-1"),
        (
            "a3",
            "a1^-1 a2^-1 a1 a2^2 a1^-1 a2^-1 a1 a3^-1 a1^-1 a2 a1",
        ),
    ]
}

/// b^mu j^4 b^-mu j^-4 as subgroup words, for mu = 0, 1, -1.
pub fn pi_mu_words() -> [(&'static str, i32); 3] {
    [("", 0), ("a2 a1^-2 a3^-3 a1^-1", 1), ("a2^2 a1 a3 a1^-1", -1)]
}

/// The six fixed-point witness translates and the subgroup elements
/// h_i (buv) h_i^-1 j^-4.
pub fn fixed_point_witnesses() -> [(&'static str, &'static str); 6] {
    [
        ("b' v u j3", "a2^2 a1 a3^3"),
        ("u' v j", "j8 a1 j4"),
        ("b u v2 j2", "j8 a1 a2^3 j4 a2 a1 a2^-2 a1^-1"),
        ("b' v2 u j3", "a3^3 a1^2 a3^3"),
        ("v j2", "j4 a1^-1 a2^-1 j8"),
        ("b v u' v", "a2 a1^-1"),
    ]
}

/// Expected abelian images of the six fixed-point subgroup elements.
pub fn fixed_point_f_values() -> [(i64, i64); 6] {
    [(-6, 2), (-4, 1), (1, -6), (-4, 0), (-4, 3), (-3, -2)]
}
