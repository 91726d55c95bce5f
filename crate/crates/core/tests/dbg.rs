use ballq_core::lattice::{self, Atlas};
use ballq_core::rep::{mirror_map, word_to_matrix, form_pair};
use ballq_core::words::Word;

#[test]
fn dbg_transverse() {
    let m0 = lattice::mirror_0();
    let mc = lattice::mirror_c();
    for cand in ["b", "b'", "b u", "u b", "b v", "v b", "b u'", "u' b", "b j", "j b", "b u v", "b v u", "u b u", "v b v"] {
        let w = Word::parse(cand);
        let g = word_to_matrix(&w);
        let ma = mirror_map(&g, &mc);
        match lattice::mirror_intersection(&m0, &ma) {
            None => eprintln!("{cand}: intersection outside ball or degenerate"),
            Some(x) => {
                let ex = x.exact.as_ref().unwrap();
                let origin = ex[0].is_zero() && ex[1].is_zero();
                let on0 = lattice::on_mirror(&x, &m0);
                let ona = lattice::on_mirror(&x, &ma);
                let f = form_pair(ex, ex);
                eprintln!("{cand}: in-ball pt, origin={origin} on_m0={on0} on_ma={ona} F={:?} z={} w={}", f.real_sign(), x.z, x.w);
            }
        }
    }
}

#[test]
fn dbg_order8() {
    for word in ["b' j'", "j b", "u v j", "b j"] {
        let g = word_to_matrix(&Word::parse(word));
        eprintln!("{word}: order {:?}", g.order(30));
        match lattice::exact_fixed_point(&g) {
            Some(p) => eprintln!("   exact fixed point found: z={} w={}", p.z, p.w),
            None => eprintln!("   no exact eigenvector in the field"),
        }
    }
}
