//! Characters and Fourier analysis of class functions.
//!
//! Only class functions are transformed. For those, the Fourier coefficient
//! at an irreducible `γ` is the scalar `μ = E_x f(x) χ_γ(x) / d_γ` times the
//! identity, so no representation matrices are ever built. Inner products
//! are `⟨f, g⟩ = E_x conj(f(x)) g(x)`.

mod class_function;
mod induce;
mod linear;
mod monomial;
mod table;

pub use class_function::{
    convolution_power, convolve, fourier_scalar, fourier_transform, plancherel_check, ClassFunction, FourierScalar,
    CLASS_TOLERANCE,
};
pub use induce::{frobenius_residual, induce_class_function, restrict_class_function};
pub use linear::{linear_characters, root_of_unity, LinGroup, LinRef, LinearCharacter, LinearCharacterJson};
pub use monomial::{
    high_value_linearity_check, is_hereditarily_monomial, is_monomial, is_monomial_with, CharacterCertificate,
    HereditaryReport, LinearityReport, MonomialCertificate, MonomialReport, SpecRadEntry,
};
pub use table::{character_table, CharacterTable, CharacterTableJson, MAX_TABLE_ORDER};
