//! Conservative semi-Lagrangian WENO solver for 1D-1V Vlasov problems with a
//! maximum-principle-preserving flux limiter.

pub mod diagnostics;
pub mod error;
pub mod mpp_limiter;
pub mod phase_grid;
pub mod poisson_spectral;
pub mod sl_advect;
pub mod sl_weno;
pub mod vlasov_driver;

pub use error::{DiagnosticsError, GridError, MonotoneViolation, PoissonError, SolverError};
pub use phase_grid::{make_phase_grid, Bounds, Distribution, Grid1D, PhaseGrid};
pub use vlasov_driver::{Drive, Model, RunControl, Simulation, SolverConfig, Species};
