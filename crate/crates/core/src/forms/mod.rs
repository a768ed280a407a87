//! Forms, matrices of forms and the linear maps they induce on cohomology
//! of line bundles.

mod fmatrix;
mod form;
mod maps;
mod space;
mod subst;

pub use fmatrix::FormMatrix;
pub use form::{exponent_key, parse_exponent_key, Form};
pub use maps::{mult_map, mult_map_graded, serre_dual_map, serre_dual_map_graded};
pub use space::{h0_dim, monomial_basis, AmbientSpace, Degree, Exponent};
pub use subst::Substitution;

pub(crate) use space::binomial;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum FormError {
    #[error("degree {degree} is not valid on {space}")]
    DegreeSpaceMismatch { space: AmbientSpace, degree: Degree },
    #[error("terms do not all have degree {degree}")]
    Inhomogeneous { degree: Degree },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(Degree, Degree),
    #[error("expected linear forms, found degree {0}")]
    NotLinear(Degree),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("cannot parse degree `{0}`")]
    BadDegree(String),
    #[error("cannot parse exponent `{0}`")]
    BadExponent(String),
    #[error("substitution expects forms on {expected}, found {found}")]
    SubstitutionSpace {
        expected: AmbientSpace,
        found: AmbientSpace,
    },
    #[error("parametrization does not have full rank")]
    DegenerateParametrization,
    #[error("unsupported: {0}")]
    Unsupported(String),
}
