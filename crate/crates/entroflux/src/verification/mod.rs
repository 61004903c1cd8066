//! Oracles and diagnostics: exact Riemann solver, normal-shock relations,
//! error norms and order-of-convergence harness, conservation totals,
//! entropy-production audits, seeded state sampling and the registry of
//! benchmark cases.

pub mod cases;
pub mod diagnostics;
pub mod eoc;
pub mod norms;
pub mod riemann;
pub mod sampling;
pub mod shock;
