//! Random words in compact Lie groups, simulated on the torus `Tⁿ` and on
//! `SU(2)`.
//!
//! The library follows a word measure `μ_A^ℓ` (uniform on products of `ℓ`
//! letters from a Haar-random alphabet and its inverses) through three
//! lenses:
//!
//! * [`word_measure`]: its Fourier transform mode by mode, the spectral gap
//!   of the averaging operator and the `L²` distance of `μ_A^ℓ * H_t` from
//!   the uniform density;
//! * [`covering`]: the word set itself, its covering radius, the planner for
//!   net parameters and the counting lower bounds on the torus;
//! * [`heat`] and [`spectra`]: the heat kernel, its truncation, and the
//!   spectral data (Weyl law, eigenfunction bounds) everything else rests on.
//!
//! [`harness`] wraps all of it into seeded, thread-count independent
//! experiments with CSV/JSON output.

pub mod constants;
pub mod covering;
pub mod error;
pub mod group;
pub mod harness;
pub mod heat;
pub mod irrep;
pub mod numeric;
pub mod seeds;
pub mod spatial;
pub mod spectra;
pub mod word_measure;

pub use error::{Error, Result};
pub use group::{haar_sample, GroupDescriptor, GroupPoint, Quaternion};
pub use spectra::{ModeIndex, SpectralMode};
pub use word_measure::{build_alphabet, Alphabet};
