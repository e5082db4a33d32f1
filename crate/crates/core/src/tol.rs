//! Default tolerances for the floating-point checks. Exact (rational)
//! checks never consult these. All of them can be overridden per run
//! through the CLI's `--tol` flag.

/// Group-law residuals (associativity, inverses, identities).
pub const GROUP_LAW: f64 = 1e-10;
/// Closed-form exponential against the integration oracle (relative).
pub const ORACLE: f64 = 1e-9;
/// Agreement of the closed form and its series fallback at the branch seam.
pub const SEAM: f64 = 1e-11;
/// Reconstruction residual of Iwasawa / polar factorizations.
pub const RECONSTRUCT: f64 = 1e-12;
/// Unique-factorization residual for coset normal forms.
pub const FACTOR: f64 = 1e-10;
/// Loop identity axioms.
pub const IDENTITY: f64 = 1e-10;
/// Sharp transitivity residual.
pub const TRANSITIVITY: f64 = 1e-9;
/// Uniqueness agreement across perturbed restarts.
pub const UNIQUENESS: f64 = 1e-7;
/// Bol closure residual (distance of rsr from the section image).
pub const BOL: f64 = 1e-8;
/// Division round-trips.
pub const DIVISION: f64 = 1e-9;
/// |Delta| below which exponential kernels switch to their series branch.
pub const SERIES_SEAM: f64 = 1e-6;
