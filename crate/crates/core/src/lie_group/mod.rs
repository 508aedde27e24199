//! SL(2,C) and SU(2) elements, the Cartan decomposition `g = u₁ b u₂` and
//! Haar quadrature on SU(2).

mod cartan;
mod elements;
mod quadrature;

pub use cartan::{cartan_decompose, epsilon_of, CartanFactors};
pub use elements::{su2_from_euler, EulerAngles, Matrix2, SL2CElement, SU2Element};
pub use quadrature::{gauss_legendre, haar_quadrature_su2, QuadratureGrid};
