use core::fmt;

use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A four-vector with negative Minkowski norm was passed where a timelike
    /// or null vector is required.
    Spacelike { norm: f64 },
    /// Two fields or operators live on different lattices.
    GridMismatch,
    /// A grid description that cannot be built (zero points, bad length, ...).
    InvalidGrid(String),
    /// A requested plane-wave index is not a point of the conjugate lattice.
    OffLattice { mode: i64, half_width: i64 },
    /// A parameter outside its allowed range.
    OutOfRange { name: &'static str, value: f64, expected: &'static str },
    /// Index out of range for the grid or representation.
    BadIndex { index: usize, limit: usize },
    /// The temporal interval operator needs a w0 trajectory, not a slice.
    TemporalDerivative,
    /// A test field does not vanish near the periodic seam of the box.
    NotLocalized { edge_ratio: f64 },
    /// A real-valued state carried a nonzero imaginary part.
    ComplexData,
    /// Spinor component count does not match the representation.
    Representation(String),
    /// A time potential was evaluated where it has no derivative.
    NonDifferentiable { at: Vec<f64> },
    /// Branch inversion of a Hamiltonian failed.
    NonInvertible { q: f64, energy: f64 },
    /// Mode cutoff larger than the lattice allows.
    CutoffTooLarge { cutoff: usize, max: usize },
    /// Dense operator dimension above the configured limit.
    DimensionLimit { dimension: u128, limit: usize },
    /// The mode set cannot saturate the lattice delta.
    PartialModeSet,
    /// The quadrature grid cannot resolve the integrand's oscillation.
    Undersampled { spacing: f64, limit: f64 },
    /// The evolved amplitude reaches the periodic seam of the box.
    BoxTooSmall { contamination: f64 },
    /// A root-finder or iteration failed to converge.
    NoConvergence(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Spacelike { norm } => {
                write!(f, "four-vector is spacelike (Minkowski norm {norm})")
            }
            Error::GridMismatch => f.write_str("fields live on different grids"),
            Error::InvalidGrid(msg) => write!(f, "invalid grid: {msg}"),
            Error::OffLattice { mode, half_width } => {
                write!(f, "mode index {mode} is not on the conjugate lattice [-{half_width}, {})", half_width)
            }
            Error::OutOfRange { name, value, expected } => {
                write!(f, "{name} = {value} out of range: {name} must be {expected}")
            }
            Error::BadIndex { index, limit } => {
                write!(f, "index {index} out of range (limit {limit})")
            }
            Error::TemporalDerivative => f.write_str("temporal derivative requires an evolution trajectory"),
            Error::NotLocalized { edge_ratio } => {
                write!(f, "test field not localized: edge/peak amplitude ratio {edge_ratio:e} exceeds 1e-12")
            }
            Error::ComplexData => f.write_str("state must be real-valued"),
            Error::Representation(msg) => write!(f, "representation mismatch: {msg}"),
            Error::NonDifferentiable { at } => {
                write!(f, "time potential is not differentiable at w = {at:?}")
            }
            Error::NonInvertible { q, energy } => {
                write!(f, "hamiltonian cannot be inverted for p at q = {q}, H = {energy}")
            }
            Error::CutoffTooLarge { cutoff, max } => {
                write!(f, "mode cutoff {cutoff} exceeds lattice limit {max}")
            }
            Error::DimensionLimit { dimension, limit } => {
                write!(f, "Fock space dimension {dimension} exceeds the limit {limit}")
            }
            Error::PartialModeSet => f.write_str("field commutator needs the full lattice mode set (cutoff = N/2)"),
            Error::Undersampled { spacing, limit } => {
                write!(f, "quadrature undersampled: node spacing {spacing:e} exceeds {limit:e}")
            }
            Error::BoxTooSmall { contamination } => {
                write!(f, "box too small: wrap-around contamination {contamination:e} of peak")
            }
            Error::NoConvergence(what) => write!(f, "{what} did not converge"),
        }
    }
}

impl core::error::Error for Error {}
