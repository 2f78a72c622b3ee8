//! Verification harness for rainbow Hamiltonian cycle machinery: family and
//! certificate file formats, per-theorem hypothesis checks, seeded sampling,
//! and exhaustive or sampled verification campaigns with JSON reports.

pub mod campaign;
pub mod checks;
pub mod io;
pub mod sampling;
