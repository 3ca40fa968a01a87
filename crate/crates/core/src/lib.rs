//! Odd-even graph families on even integers: prime multiple missing graphs,
//! their intersections, near Goldbach and Goldbach graphs.
//!
//! The crate builds these graphs, checks their structure decompositions,
//! constructs and verifies Hamiltonian cycles, and measures diameters at sweep
//! scale.

pub mod error;
pub mod graph;
pub mod hamilton;
pub mod metrics;
pub mod numeric;
pub mod oracle;
pub mod structure;
pub mod sweep;

pub use error::{Error, Result};
pub use graph::{
    build_graph, build_graph_naive, build_graph_with, intersect_graphs, is_adjacent, verify_induced,
    BuildOptions, EvenGraph, GraphSpec,
};
pub use numeric::{eta, is_prime, sieve_odd_primes, OddSetKind, OddSetSpec, OddSetTable, PrimeTable};
pub use metrics::{
    connected_components, diameter, diameter_reference, distance, eccentricities, is_connected,
    DistanceReport, Extent,
};
pub use hamilton::{
    extend_g35_parts, ham_cycle, ham_cycle_g3, ham_cycle_g35, ham_cycle_g5, ham_path, verify_certificate,
    FailureReason, Family, HamCertificate, Status,
};
pub use sweep::{goldbach_consistency, run_sweep, ConsistencyReport, SweepManifest, SweepOptions, SweepRecord};
