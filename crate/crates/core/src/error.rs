use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeoError {
    #[error("degenerate metric at sample {index}")]
    DegenerateMetric { index: usize },
    #[error("normal undefined at sample {index}: tangent vectors are parallel")]
    NormalUndefined { index: usize },
    #[error("variation not compactly supported: support reaches a non-periodic boundary")]
    NotCompact,
    #[error("degenerate curve: speed vanishes at sample {index}")]
    DegenerateCurve { index: usize },
    #[error("Laplace map singular at sample {index}: curvature below the rank floor")]
    LaplaceMapSingular { index: usize },
    #[error("domain touches the singular locus: {0}")]
    SingularDomain(String),
    #[error("mean curvature is not constant (relative std {rel_std:e})")]
    NonConstantMeanCurvature { rel_std: f64 },
    #[error("Gauss map degenerate at sample {index}")]
    GaussMapDegenerate { index: usize },
    #[error("ambient dimension {m} is not twice the intrinsic dimension")]
    OddAmbientDim { m: usize },
    #[error("mean curvature vanishes at sample {index}")]
    MeanCurvatureVanishes { index: usize },
    #[error("curve rank {rank} too high: curve leaves an affine 3-space")]
    RankTooHigh { rank: usize },
    #[error("curve is not closed: parameter axis is not periodic")]
    NotClosed,
    #[error("curve is not unit speed (max deviation {deviation:e})")]
    NotUnitSpeed { deviation: f64 },
    #[error("decomposition is not of 2-type (k_type = {k_type})")]
    Not2Type { k_type: String },
    #[error("eigenvalues must satisfy lambda_p < lambda_q")]
    BadOrder,
    #[error("surface metric is not flat and constant; Fourier modes are not eigenfunctions")]
    NotFlat,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("parameter `{name}` out of range: {reason}")]
    ParamOutOfRange { name: String, reason: String },
    #[error("discriminant negative ({value:e}) at the seed")]
    DiscriminantNegative { value: f64 },
    #[error("ODE solution blows up at {at}")]
    BlowUp { at: f64 },
    #[error("ODE step halving changed the endpoint by {change:e} (budget {budget:e})")]
    OdeNotConverged { change: f64, budget: f64 },
    #[error("closed form disagrees with the generic Laplace map by {deviation:e} (tolerance {tol:e})")]
    ClosedFormMismatch { deviation: f64, tol: f64 },
    #[error("no closed-form Laplace map for `{0}`")]
    NoClosedForm(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, GeoError>;
