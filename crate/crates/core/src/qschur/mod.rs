//! Q(n,r) in the basis {φ_M}.

mod element;
mod formulas;
mod oracle;

pub use element::{QElement, QError};
pub use formulas::{detect_shape, formula_product, generator_key, left_mul, GeneratorShape};
pub use oracle::{coset_coordinates, Oracle};
