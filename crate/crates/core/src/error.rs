use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("malformed table `{table}`: {reason}")]
    Structure { table: String, reason: String },
    #[error("`{table}` is not a complete lattice: {reason}")]
    NotALattice { table: String, reason: String },
    #[error("invalid quantale: {0}")]
    InvalidQuantale(String),
    #[error("quantale is not divisible: condition fails at a = {a}, b = {b}")]
    NotDivisible { a: String, b: String },
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("dualizing family is not cyclic at arrow {0}")]
    NotCyclic(String),
    #[error("dualizing family is not dualizing at arrow {0}")]
    NotDualizing(String),
    #[error("the ambient quantaloid carries no validated Girard structure")]
    NotGirard,
    #[error("type error: {0}")]
    Type(String),
    #[error("category mismatch: {0}")]
    CategoryMismatch(String),
    #[error("presheaf space too large: {bound} candidate weight vectors exceed the cap of {cap}")]
    PresheafSpaceTooLarge { bound: u128, cap: u128 },
    #[error("invalid infomorphism: {0}")]
    InvalidInfomorphism(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("schema error at {location}: {reason}")]
    Schema { location: String, reason: String },
    #[error("degree {degree} at ({object}, {attribute}) exceeds the meet of the memberships")]
    DegreeOutOfHom {
        object: String,
        attribute: String,
        degree: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
