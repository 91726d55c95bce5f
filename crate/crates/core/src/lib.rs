//! Exact-arithmetic computational group theory for a specific cocompact
//! arithmetic lattice in PU(2,1) and the minimal smooth ball quotient it
//! defines: coset enumeration, congruence membership, torsion census,
//! incidence combinatorics of the totally geodesic curves, Neron-Severi
//! intersection theory, and the fixed-point analysis of the automorphism
//! group, all emitting machine-readable certificates.

pub mod cyclo;
pub mod words;
pub mod rep;
pub mod fpgrp;
pub mod cert;
pub mod lattice;
pub mod homology;
