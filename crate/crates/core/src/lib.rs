//! Band structure of the three-body Calogero model for `−1/4 < g < 0`.
//!
//! The angular problem is a periodic inverse-square (Scarf) lattice whose
//! Bloch wave number sets the exchange phase `Θ = ka`. Closed forms live in
//! [`angular`], [`radial`] and [`wolfes`]; [`oracle`] checks them by direct
//! numerical integration.

pub mod angular;
pub mod cell;
pub mod error;
pub mod exchange;
pub mod oracle;
pub mod radial;
pub mod specfun;
pub mod wolfes;

pub use angular::{
    band_edge_wavefunction, band_edges, basis_u, basis_v, bloch_wavefunction, check_bloch, dispersion_lambda,
    scarf_from_coupling, BandEdge, BandPoint, BlochSolution, ScarfBasis, ScarfParams,
};
pub use cell::{uniform_grid, BlochWave, CellBasis, Midpoint};
pub use error::{Error, Result};
pub use exchange::{
    exchange_phase, measured_exchange_phase, momentum, sector_of, to_jacobi, to_polar, ExchangeReport,
    OrderingSector, ParticleConfig, Statistics, PLANCK_H,
};
pub use oracle::{ode_residual, AngularEquation, Branch, Oracle, OracleConfig, SampledFunction, TransferMatrix};
pub use radial::{energy, full_wavefunction, radial_wavefunction, FullState, RadialState};
pub use wolfes::{
    wolfes_band_edges, wolfes_basis_u, wolfes_basis_v, wolfes_dispersion, WolfesBasis, WolfesBloch, WolfesParams,
};
