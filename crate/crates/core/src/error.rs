//! Error types shared across the crate.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ProjectiveError {
    #[error("operation undefined on the empty map")]
    ZeroMap,
    #[error("point {point} outside domain {domain}")]
    OutOfDomain { point: String, domain: String },
    #[error("cannot parse rational `{0}`")]
    BadRational(String),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("illegal character `{0}` in word")]
    IllegalLetter(char),
    #[error("`0` and `1` cannot be mixed with other letters")]
    MixedZeroOrOne,
    #[error("unbalanced parentheses in tree")]
    Unbalanced,
    #[error("expected integer label, found `{0}`")]
    BadLabel(String),
    #[error("malformed tree near `{0}`")]
    BadTree(String),
    #[error("trailing input `{0}`")]
    TrailingInput(String),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("word uses letters outside the alphabet of {system}")]
    AlphabetMismatch { system: &'static str },
    #[error("variant mismatch: word is over C_{word} but system is over C_{system}")]
    VariantMismatch { word: i64, system: i64 },
    #[error("reduction exceeded the step cap of {0}")]
    StepCapExceeded(u64),
    #[error("no advancing rule applies at position {0}")]
    NoAdvanceAt(usize),
    #[error("hypothesis violation: {0}")]
    Hypothesis(String),
    #[error("word is not reduced")]
    NotReduced,
    #[error("word is not of the expected normal-form shape")]
    NotNormalForm,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("variant mismatch between trees")]
    VariantMismatch,
    #[error("operation undefined on the trivial tree")]
    TrivialTree,
    #[error("operation only defined for the C_3 variant")]
    WrongVariant,
    #[error("enumeration exceeded the resource cap")]
    ResourceCap,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("domain {0} is not contained in the domain of the map")]
    DomainNotContained(String),
    #[error("pair images do not partition the ambient interval")]
    NotAPartition,
    #[error("unsupported vertex family: {0}")]
    UnsupportedVertex(String),
    #[error("point {0} outside the ambient interval")]
    PointOutOfRange(String),
    #[error("variant mismatch between operands")]
    VariantMismatch,
    #[error("group element is malformed: {0}")]
    MalformedElement(String),
    #[error("no finite generating partition for {0}: the subdivision does not stabilize")]
    PushThroughDiverged(String),
}
