from .errors import (QPlaneError, ZeroQ, BadDim, NotNilpotent, IndexOutOfRange, ModeError,
                     ConfigError, ExpressionSyntaxError)
from .scalars import GaussianRational, QScalar
from .univariate import UPoly
from .plane import PlaneElement, normalize_word
from .omega import (OmegaUElement, PairConvention, PairSequence, BetaGammaForm, to_omega,
                    from_omega, to_pairs, from_pairs, to_beta_gamma, from_beta_gamma)
from .expression import normalize
from .config import Mode, OutputFormat, RunConfig
