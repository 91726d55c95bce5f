use ballq_core::lattice::{self, Atlas};
use ballq_core::cert::Status;

fn report(tag: &str, certs: &[ballq_core::cert::Certificate]) {
    for c in certs {
        let mark = match c.status { Status::Pass => "PASS", Status::Fail => "FAIL", Status::Skipped => "SKIP" };
        eprintln!("[{mark}] {} ({} ms)", c.id, c.millis);
        if c.status == Status::Fail {
            eprintln!("   computed: {}", c.computed);
            eprintln!("   expected: {}", c.expected);
        }
    }
    let ok = certs.iter().all(|c| c.status != Status::Fail);
    eprintln!("== {tag}: {}", if ok { "ALL PASS" } else { "FAILURES" });
}

#[test]
fn run_presentation_and_index() {
    let atlas = Atlas::shared();
    let t0 = std::time::Instant::now();
    let certs = lattice::suite_presentation(atlas);
    report("presentation", &certs);
    eprintln!("presentation took {:?}", t0.elapsed());
    let t0 = std::time::Instant::now();
    let certs = lattice::suite_index(atlas);
    report("index", &certs);
    eprintln!("index took {:?}", t0.elapsed());
    assert!(certs.iter().all(|c| c.status != Status::Fail));
}

#[test]
fn run_torsion() {
    let atlas = Atlas::shared();
    let t0 = std::time::Instant::now();
    let certs = lattice::suite_torsion(atlas);
    report("torsion", &certs);
    eprintln!("torsion took {:?}", t0.elapsed());
    assert!(certs.iter().all(|c| c.status != Status::Fail));
}

#[test]
fn run_mirrors() {
    let atlas = Atlas::shared();
    let t0 = std::time::Instant::now();
    let certs = lattice::suite_mirrors(atlas);
    report("mirrors", &certs);
    eprintln!("mirrors took {:?}", t0.elapsed());
    assert!(certs.iter().all(|c| c.status != Status::Fail));
}

#[test]
fn run_membership() {
    let atlas = Atlas::shared();
    let t0 = std::time::Instant::now();
    let certs = lattice::membership_crosscheck(atlas, 2000, 12345).unwrap();
    report("membership", &certs);
    eprintln!("membership took {:?}", t0.elapsed());
    assert!(certs.iter().all(|c| c.status != Status::Fail));
}

#[test]
fn run_homology() {
    let atlas = Atlas::shared();
    let t0 = std::time::Instant::now();
    let certs = ballq_core::homology::suite_homology(atlas);
    report("homology", &certs);
    eprintln!("homology took {:?}", t0.elapsed());
    assert!(certs.iter().all(|c| c.status != Status::Fail));
}
