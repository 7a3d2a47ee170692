from ._lagsum import (
    ConstraintError,
    ConvergenceError,
    EvalResult,
    InvalidSpec,
    PoleError,
    bessel_special,
    binomial,
    closed,
    gamma,
    kummer_special,
    lemma,
    oracle,
    pfq,
    pochhammer,
    rgamma,
)

__all__ = [
    "ConstraintError",
    "ConvergenceError",
    "EvalResult",
    "InvalidSpec",
    "PoleError",
    "bessel_special",
    "binomial",
    "closed",
    "gamma",
    "kummer_special",
    "lemma",
    "oracle",
    "pfq",
    "pochhammer",
    "rgamma",
]
