//! Special functions: log-space complex values, log-gamma, `₂F₁` and its
//! large-parameter asymptotic.

mod gamma;
mod hyp2f1;
mod logvalue;
mod watson;

pub use gamma::{ln_factorial, ln_gamma_real, log_gamma, pochhammer};
pub use hyp2f1::{
    hyp2f1, hyp2f1_direct_series, hyp2f1_gauss_connection, hyp2f1_with, Hyp2F1Evaluation,
    Hyp2F1Method, Hyp2F1Params, Hyp2F1Route, Hyp2F1Transform, SeriesControl,
};
pub use logvalue::{wrap_phase, LogComplexValue};
pub use watson::{watson_asymptotic_2f1, watson_asymptotic_2f1_with_branch, Branch};
