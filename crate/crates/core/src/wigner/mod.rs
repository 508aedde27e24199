//! SU(2) representation matrices, the SU(2) Fourier transform and
//! Paley–Wiener decay diagnostics.

mod fourier;
mod paley_wiener;
mod small_d;

pub use fourier::{
    su2_fourier, su2_fourier_on_grid, su2_spectrum, FourierEntry, FourierTableSU2, Su2Spectrum,
};
pub use paley_wiener::{paley_wiener_report, PaleyWienerReport, PaleyWienerRow};
pub use small_d::{wigner_d, wigner_small_d, wigner_small_d_factorial_sum, SpinLabel};
