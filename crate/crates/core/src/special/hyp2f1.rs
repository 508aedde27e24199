//! Gauss hypergeometric function `₂F₁(a, b; c; z)` for complex parameters and
//! real `z < 1`.
//!
//! Routes:
//!
//! * `z = 0`: exactly 1.
//! * `z < 0`: Pfaff, `₂F₁(a,b;c;z) = (1-z)^{-b} ₂F₁(c-a, b; c; z/(z-1))`, which
//!   lands in `(0, 1)`.
//! * `x ∈ (0, 1)`: the defining power series, summed with compensation and
//!   running rescaling. When the series is badly conditioned (its largest term
//!   dwarfs the result, as happens for large imaginary parameters) or too slow
//!   (x close to 1), the `x ↔ 1-x` Gauss connection formula is evaluated as
//!   well and the better conditioned of the two is returned.
//!
//! Every evaluation reports a condition estimate `max|term| / |result|`; the
//! relative rounding error is about `condition · 1e-16`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gamma::{gamma_log_value, log_recip_gamma};
use super::LogComplexValue;
use crate::error::{Error, Result};

/// Truncation controls for the power series.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesControl {
    pub max_terms: usize,
    /// Relative size of the estimated tail at which summation stops.
    pub tail_tolerance: f64,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            max_terms: 100_000,
            tail_tolerance: 1e-17,
        }
    }
}

/// Parameters of `₂F₁(a, b; c; z)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyp2F1Params {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub z: f64,
}

impl Hyp2F1Params {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Self {
        Self { a, b, c, z }
    }

    pub fn real(a: f64, b: f64, c: f64, z: f64) -> Self {
        Self::new(a.into(), b.into(), c.into(), z)
    }

    pub fn validate(&self) -> Result<()> {
        if is_nonpositive_integer(self.c) {
            return Err(Error::domain(format!(
                "c = {} is a non-positive integer",
                self.c
            )));
        }
        if !self.z.is_finite() {
            return Err(Error::domain("z is not finite"));
        }
        if self.z >= 1.0 {
            return Err(Error::domain(format!("z = {} must be below 1", self.z)));
        }
        Ok(())
    }
}

/// Which formula produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hyp2F1Method {
    /// `z = 0`.
    Trivial,
    DirectSeries,
    GaussConnection,
    /// Connection formula after nudging `a` off a logarithmic degeneracy.
    PerturbedConnection,
}

/// Argument transformation applied before summation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hyp2F1Transform {
    Identity,
    /// `(1-z)^{-b} ₂F₁(c-a, b; c; z/(z-1))`
    PfaffB,
    /// `(1-z)^{-a} ₂F₁(a, c-b; c; z/(z-1))`
    PfaffA,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyp2F1Route {
    pub transform: Hyp2F1Transform,
    pub method: Hyp2F1Method,
}

/// A value together with the route taken and its conditioning.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyp2F1Evaluation {
    pub value: LogComplexValue,
    pub route: Hyp2F1Route,
    /// `Σ|term| / |value|` style amplification factor (≥ 1).
    pub condition: f64,
    pub terms: usize,
    /// Absolute rounding budget of the log-magnitudes of the gamma-function
    /// coefficients (zero for the direct series).
    pub coefficient_log_error: f64,
}

impl Hyp2F1Evaluation {
    /// Rough relative error bound implied by the condition estimate.
    pub fn estimated_relative_error(&self) -> f64 {
        let (base, unit) = match self.route.method {
            Hyp2F1Method::Trivial => (0.0, 0.0),
            // term n carries about n accumulated rounding errors
            Hyp2F1Method::DirectSeries => (0.0, 4.0 * f64::EPSILON * (self.terms as f64).sqrt()),
            Hyp2F1Method::GaussConnection => (0.0, 4.0 * f64::EPSILON),
            Hyp2F1Method::PerturbedConnection => (1e-9, 4.0 * f64::EPSILON),
        };
        base + (unit + self.coefficient_log_error) * self.condition
    }
}

/// Condition factor below which the direct series is accepted without
/// trying the connection formula.
const WELL_CONDITIONED: f64 = 1e3;

/// Estimated error above which the second Pfaff form is also evaluated.
const ALTERNATE_PFAFF_ABOVE: f64 = 1e-12;

/// Relative nudge applied to `a` in the degenerate connection case.
const DEGENERACY_NUDGE: f64 = 1e-9;

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn is_integer_like(s: Complex64) -> bool {
    let tol = 1e-12 * s.norm().max(1.0);
    s.im.abs() <= tol && (s.re - s.re.round()).abs() <= tol
}

/// Neumaier-compensated complex accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn add(&mut self, x: Complex64) {
        neumaier(&mut self.sum.re, &mut self.comp.re, x.re);
        neumaier(&mut self.sum.im, &mut self.comp.im, x.im);
    }

    pub(crate) fn value(&self) -> Complex64 {
        self.sum + self.comp
    }

    fn scale(&mut self, f: f64) {
        self.sum *= f;
        self.comp *= f;
    }
}

/// Power-series sum kept as `sum · exp(log_scale)`.
struct ScaledSeries {
    log_scale: f64,
    sum: Complex64,
    max_term: f64,
    terms: usize,
}

impl ScaledSeries {
    fn value(&self) -> LogComplexValue {
        LogComplexValue::from_complex(self.sum) * LogComplexValue::new(self.log_scale, 0.0)
    }

    fn condition(&self) -> f64 {
        let s = self.sum.norm();
        if s == 0.0 {
            f64::INFINITY
        } else {
            (self.max_term / s).max(1.0)
        }
    }

    /// Largest of the terms and the sum, as a log-magnitude.
    fn log_max_term(&self) -> f64 {
        self.max_term.max(self.sum.norm()).ln() + self.log_scale
    }
}

const RESCALE_AT: f64 = 1e200;

fn sum_series(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    x: f64,
    control: &SeriesControl,
) -> Result<ScaledSeries> {
    let mut acc = CompensatedSum::new();
    let mut term = Complex64::new(1.0, 0.0);
    acc.add(term);
    let mut max_term = 1.0f64;
    let mut log_scale = 0.0f64;
    let ax = x.abs();
    for n in 0..control.max_terms {
        let nf = n as f64;
        let den = (c + nf) * (nf + 1.0);
        if den.re == 0.0 && den.im == 0.0 {
            return Err(Error::domain("lower parameter hits a non-positive integer"));
        }
        let ratio = (a + nf) * (b + nf) / den * x;
        term *= ratio;
        if term.re == 0.0 && term.im == 0.0 {
            // terminating series
            return Ok(ScaledSeries {
                log_scale,
                sum: acc.value(),
                max_term,
                terms: n + 1,
            });
        }
        acc.add(term);
        let tn = term.norm();
        max_term = max_term.max(tn);
        if tn > RESCALE_AT || acc.value().norm() > RESCALE_AT {
            let f = 1.0 / RESCALE_AT;
            term *= f;
            acc.scale(f);
            max_term *= f;
            log_scale += RESCALE_AT.ln();
        }
        let next = nf + 1.0;
        let r = ((a + next) * (b + next) / ((c + next) * (next + 1.0))).norm() * ax;
        let bound = r.max(ax);
        if bound < 1.0 {
            let tail = term.norm() * bound / (1.0 - bound);
            if tail <= control.tail_tolerance * acc.value().norm() {
                return Ok(ScaledSeries {
                    log_scale,
                    sum: acc.value(),
                    max_term,
                    terms: n + 2,
                });
            }
        }
    }
    Err(Error::NonConvergence {
        terms: control.max_terms,
        context: format!("2F1({a}, {b}; {c}; {x})"),
    })
}

fn evaluation(series: &ScaledSeries) -> Hyp2F1Evaluation {
    Hyp2F1Evaluation {
        value: series.value(),
        route: Hyp2F1Route {
            transform: Hyp2F1Transform::Identity,
            method: Hyp2F1Method::DirectSeries,
        },
        condition: series.condition(),
        terms: series.terms,
        coefficient_log_error: 0.0,
    }
}

/// The defining series summed directly; requires `|z| < 1`.
pub fn hyp2f1_direct_series(p: &Hyp2F1Params, control: &SeriesControl) -> Result<Hyp2F1Evaluation> {
    p.validate()?;
    if p.z.abs() >= 1.0 {
        return Err(Error::domain("direct series needs |z| < 1"));
    }
    let s = sum_series(p.a, p.b, p.c, p.z, control)?;
    Ok(evaluation(&s))
}

/// The Gauss connection formula around `z = 1`; requires `0 < z < 1` and
/// `c - a - b` not an integer.
pub fn hyp2f1_gauss_connection(
    p: &Hyp2F1Params,
    control: &SeriesControl,
) -> Result<Hyp2F1Evaluation> {
    p.validate()?;
    if !(p.z > 0.0 && p.z < 1.0) {
        return Err(Error::domain("connection formula needs 0 < z < 1"));
    }
    let s = p.c - p.a - p.b;
    if is_integer_like(s) {
        return Err(Error::domain(format!(
            "c - a - b = {s} is an integer (logarithmic case)"
        )));
    }
    connection_unchecked(p.a, p.b, p.c, p.z, control, Hyp2F1Method::GaussConnection)
}

fn connection_unchecked(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    x: f64,
    control: &SeriesControl,
    method: Hyp2F1Method,
) -> Result<Hyp2F1Evaluation> {
    let s = c - a - b;
    let y = 1.0 - x;
    let gc = gamma_log_value(c)?;

    // Γ(c)Γ(s) / (Γ(c-a)Γ(c-b)) · F(a, b; 1-s; 1-x)
    let coeff1 = gc * gamma_log_value(s)? * log_recip_gamma(c - a)? * log_recip_gamma(c - b)?;
    // (1-x)^s Γ(c)Γ(-s) / (Γ(a)Γ(b)) · F(c-a, c-b; 1+s; 1-x)
    let coeff2 = gc
        * gamma_log_value(-s)?
        * log_recip_gamma(a)?
        * log_recip_gamma(b)?
        * LogComplexValue::from_log(s * y.ln());

    let log_size: f64 = [c, s, -s, c - a, c - b, a, b]
        .iter()
        .map(|&w| (w * w.norm().max(1.0).ln()).norm() + 2.0)
        .sum();

    let mut value = LogComplexValue::zero();
    let mut worst = LogComplexValue::zero();
    let mut terms = 0;
    for (coeff, (pa, pb, pc)) in [(coeff1, (a, b, 1.0 - s)), (coeff2, (c - a, c - b, 1.0 + s))] {
        if coeff.is_zero() {
            continue;
        }
        let series = sum_series(pa, pb, pc, y, control)?;
        terms += series.terms;
        value = value + coeff * series.value();
        worst = worst + LogComplexValue::new(coeff.log_mag() + series.log_max_term(), 0.0);
    }
    let condition = if value.is_zero() {
        f64::INFINITY
    } else {
        (worst.log_mag() - value.log_mag()).exp().max(1.0)
    };
    Ok(Hyp2F1Evaluation {
        value,
        route: Hyp2F1Route {
            transform: Hyp2F1Transform::Identity,
            method,
        },
        condition,
        terms,
        coefficient_log_error: 4.0 * f64::EPSILON * log_size,
    })
}

/// Estimated number of terms the direct series needs at `x` for ~1e-17.
fn direct_series_feasible(x: f64, control: &SeriesControl) -> bool {
    if x <= 0.5 {
        return true;
    }
    let needed = 40.0 / -(x.ln());
    needed < control.max_terms as f64
}

fn unit_interval(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    x: f64,
    control: &SeriesControl,
) -> Result<Hyp2F1Evaluation> {
    let mut best: Option<Hyp2F1Evaluation> = None;
    let mut last_err = None;
    if direct_series_feasible(x, control) {
        match sum_series(a, b, c, x, control) {
            Ok(series) => {
                let eval = evaluation(&series);
                if eval.condition <= WELL_CONDITIONED {
                    return Ok(eval);
                }
                best = Some(eval);
            }
            Err(e) => last_err = Some(e),
        }
    }
    let s = c - a - b;
    let connection = if is_integer_like(s) {
        if best.is_some() {
            None
        } else {
            let nudge = Complex64::new(0.0, DEGENERACY_NUDGE * a.norm().max(1.0));
            Some(connection_unchecked(
                a + nudge,
                b,
                c,
                x,
                control,
                Hyp2F1Method::PerturbedConnection,
            ))
        }
    } else {
        Some(connection_unchecked(
            a,
            b,
            c,
            x,
            control,
            Hyp2F1Method::GaussConnection,
        ))
    };
    match connection {
        Some(Ok(conn)) => {
            if best.is_none_or(|d| conn.estimated_relative_error() < d.estimated_relative_error()) {
                best = Some(conn);
            }
        }
        Some(Err(e)) => last_err = Some(e),
        None => {}
    }
    best.ok_or_else(|| {
        last_err.unwrap_or_else(|| Error::NonConvergence {
            terms: control.max_terms,
            context: format!("2F1({a}, {b}; {c}; {x})"),
        })
    })
}

/// `₂F₁(a, b; c; z)` with the default series controls.
pub fn hyp2f1(p: &Hyp2F1Params) -> Result<LogComplexValue> {
    hyp2f1_with(p, &SeriesControl::default()).map(|e| e.value)
}

/// `₂F₁(a, b; c; z)` for real `z < 1`, with route and conditioning details.
pub fn hyp2f1_with(p: &Hyp2F1Params, control: &SeriesControl) -> Result<Hyp2F1Evaluation> {
    p.validate()?;
    if p.z == 0.0 {
        return Ok(Hyp2F1Evaluation {
            value: LogComplexValue::one(),
            route: Hyp2F1Route {
                transform: Hyp2F1Transform::Identity,
                method: Hyp2F1Method::Trivial,
            },
            condition: 1.0,
            terms: 1,
            coefficient_log_error: 0.0,
        });
    }
    if p.z > 0.0 {
        return unit_interval(p.a, p.b, p.c, p.z, control);
    }
    let x = p.z / (p.z - 1.0);
    let log1z = (1.0 - p.z).ln();
    let pfaff_b = || -> Result<Hyp2F1Evaluation> {
        let mut e = unit_interval(p.c - p.a, p.b, p.c, x, control)?;
        let pre = -p.b * log1z;
        e.value = LogComplexValue::from_log(pre) * e.value;
        e.coefficient_log_error += 4.0 * f64::EPSILON * pre.norm();
        e.route.transform = Hyp2F1Transform::PfaffB;
        Ok(e)
    };
    let pfaff_a = || -> Result<Hyp2F1Evaluation> {
        let mut e = unit_interval(p.a, p.c - p.b, p.c, x, control)?;
        let pre = -p.a * log1z;
        e.value = LogComplexValue::from_log(pre) * e.value;
        e.coefficient_log_error += 4.0 * f64::EPSILON * pre.norm();
        e.route.transform = Hyp2F1Transform::PfaffA;
        Ok(e)
    };
    // The b-form is the default; the a-form is tried when the default is
    // inaccurate (e.g. c - b small, where its series converges much faster).
    match pfaff_b() {
        Ok(e) if e.estimated_relative_error() <= ALTERNATE_PFAFF_ABOVE => Ok(e),
        first => match (first, pfaff_a()) {
            (Ok(b), Ok(a)) => Ok(
                if a.estimated_relative_error() < b.estimated_relative_error() {
                    a
                } else {
                    b
                },
            ),
            (Ok(e), Err(_)) | (Err(_), Ok(e)) => Ok(e),
            (Err(e), Err(_)) => Err(e),
        },
    }
}
