use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("total mass is {0}, expected 1")]
    Mass(String),
    #[error("position {0} lies outside the unit interval")]
    Domain(String),
    #[error("negative weight {0}")]
    NegativeWeight(String),
    #[error("unsupported test function {0:?}")]
    UnsupportedTestFunction(String),
    #[error("the two functionals coincide; there is nothing to cross")]
    DegenerateDifference,
    #[error("barycenters differ (G(1) = {0})")]
    MeansDiffer(String),
    #[error("decision paths disagree: {0}")]
    InternalDisagreement(String),
    #[error("theorem hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("{0}")]
    Parse(String),
}
