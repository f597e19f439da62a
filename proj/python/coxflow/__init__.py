"""Cox-process functional classification: simulation, stochastic-integral
features, l1-constrained logit ERM, penalized model selection and exact
Bayes oracles."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
