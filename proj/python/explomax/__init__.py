"""Exponential-Lomax mixture estimation under type-I right censoring."""

from ._explomax import (
    Allocation,
    CellStats,
    CensoredSample,
    DegenerateWeights,
    EstimatorReport,
    EstimatorSpec,
    FitReport,
    FitResult,
    GelfDomainError,
    ImproperPosterior,
    ImproperProposal,
    InvalidLoss,
    LabeledTime,
    LossSpec,
    Method,
    NoFailures,
    ParamEstimates,
    Params,
    PosteriorExpansion,
    PredictiveSummary,
    Prior,
    RandomStream,
    SingularInformation,
    StudyConfig,
    StudyReport,
    WeightedDraw,
    bayes_gelf,
    bayes_self,
    build_expansion,
    effective_sample_size,
    estimated_risk,
    exp_cdf,
    exp_pdf,
    exp_quantile,
    generate_censored_sample,
    is_draws,
    is_estimate,
    log_likelihood_direct,
    log_likelihood_expanded,
    lomax_cdf,
    lomax_pdf,
    lomax_quantile,
    loss_value,
    mixture_cdf,
    mixture_pdf,
    mixture_sample,
    mixture_survival,
    ml_fit,
    ml_variances,
    observed_information,
    posterior_variance,
    predictive_cdf,
    predictive_interval,
    predictive_pdf,
    run_study,
    score,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
