use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid simplicial set: {0}")]
    InvalidSimplicialSet(String),
    #[error("horn index {k} out of range for dimension {n}")]
    InvalidHorn { n: usize, k: usize },
    #[error("not a simplicial map: {0}")]
    NotSimplicial(String),
    #[error("pushout of simplicial sets needs at least one levelwise injective leg")]
    NoInjectiveLeg,
    #[error("subdivision is only supported on vertex-ordered simplicial complexes: {0}")]
    NotAComplex(String),
    #[error("enumeration cap exceeded: requested {requested}, cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("presentation did not saturate within path length {bound}: {witness}")]
    NotSaturated { bound: usize, witness: String },
    #[error("path enumeration budget of {budget} paths exceeded")]
    PathBudgetExceeded { budget: usize },
    #[error("nerve would be infinite: {0}")]
    InfiniteNerve(String),
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("not a natural transformation: {0}")]
    NotNatural(String),
    #[error("size cap exceeded: size {size}, cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("search budget of {budget} nodes exhausted")]
    SearchCapExceeded { budget: u64 },
    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
