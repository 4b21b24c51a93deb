//! Numeric tolerances and fixed algorithm parameters, collected in one
//! place so every threshold used by the library is named and justified.

/// Absolute tolerance of the normal quantile after Newton refinement.
/// The rational initial guess is good to ~1e-9; two Newton steps square
/// the error twice, far past this target.
pub const NORMAL_QUANTILE_TOL: f64 = 1e-12;

/// Relative cutoff for the modified-Bessel I0 power series: summation
/// stops once a term drops below this fraction of the partial sum.
pub const I0_SERIES_CUTOFF: f64 = 1e-16;

/// Allowed deviation of `sum(weights) + tail_mass_bound` from 1 in a
/// lattice distribution.
pub const LATTICE_MASS_TOL: f64 = 1e-12;

/// Default truncation mass for infinite-support lattice families.
pub const DEFAULT_TAIL_EPSILON: f64 = 1e-12;

/// Relative tolerance on the step ratio when testing whether two
/// lattices are commensurable. Nearly-commensurable inputs are rejected
/// rather than snapped.
pub const STEP_RATIO_REL_TOL: f64 = 1e-9;

/// Bisection tolerance in x when locating the sign change of
/// `F(x) - c` inside a constancy interval of a step CDF.
pub const ZETA1_BISECTION_TOL: f64 = 1e-12;

/// Per-panel absolute tolerance of the adaptive Gauss-Kronrod scheme.
pub const QUAD_ABS_TOL: f64 = 1e-9;

/// Maximum panel-splitting depth of the adaptive quadrature.
pub const QUAD_MAX_DEPTH: u32 = 48;

/// Below this |t| the integrand (f(t)-g(t))/t of the Feller bound is
/// replaced by a two-term Maclaurin value built from numerically
/// differenced characteristic-function values.
pub const FELLER_SMALL_T: f64 = 1e-4;

/// The Prawitz kernel is evaluated only for |t| above this floor; the
/// calling integrals start at a positive quadrature node, never at 0.
pub const PRAWITZ_MIN_T: f64 = 1e-8;

/// Number of uniformly spaced points used by grid checks that compare a
/// bound against a truth curve.
pub const BOUND_CHECK_GRID: usize = 2001;

/// Number of log-spaced sample points used to validate membership in
/// the monotone envelope class of weight functions.
pub const G_CLASS_GRID: usize = 400;

/// Slack allowed in the sampled monotonicity checks of the weight
/// function class.
pub const G_CLASS_TOL: f64 = 1e-12;

/// Bisection tolerance in b for the crossing equation that determines
/// the truncation-method constant.
pub const CROSSING_BISECTION_TOL: f64 = 1e-10;

/// Golden-section tolerance for one-dimensional constant optimizers.
pub const GOLDEN_SECTION_TOL: f64 = 1e-10;

/// A rate series is accepted as convergent once 64 consecutive partial
/// sums change by less than this amount.
pub const RATE_SERIES_TOL: f64 = 1e-14;

/// Number of consecutive near-constant partial sums required by the
/// rate-series convergence test.
pub const RATE_SERIES_RUN: usize = 64;
