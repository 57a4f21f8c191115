"""Confidence measures, confidence metameasures and decisions based on them."""

from .combine import CombinationRule, combine
from .decision import (
    Action,
    LossFunction,
    StepLoss,
    accept_hypothesis,
    argmin_expected_loss,
    dominates,
    expectation_interval,
    expected_loss,
    non_dominated_set,
    zero_one_actions,
)
from .errors import (
    AccuracyError,
    ArgumentError,
    CapabilityError,
    ConfmetaError,
    DomainError,
    MomentError,
    MultimodalityError,
    ParameterDomainError,
    RangeError,
)
from .measure import ConfidenceMeasure
from .metameasure import ConfidenceMetameasure, ProbabilityInterval, duality_check
from .numerics import SeededStream, ToleranceConfig
from .predictive import (
    PredictiveDistribution,
    SamplingModel,
    bernoulli_model,
    classify,
    normal_model,
    predictive_mean,
    predictive_sample,
)
from .pvalue import (
    BinomialFamily,
    NormalMeanFamily,
    NormNormalFamily,
    PValueFunction,
    exactness_audit,
)
from .regions import Interval, Region

__version__ = "0.1.0"
