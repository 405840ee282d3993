"""
binomcert – exact verification of binomial double-sum identities.

Import the public surface like so:

    from binomcert import eval_identity, ParamSet, SweepRunner

Everything else (modules whose names start with “_”) is internal and
subject to change without notice.
"""

from importlib import metadata as _metadata

# ─────────────────────────────────────────────────────────────────────────────
# Re-export PUBLIC objects from the internal implementation modules
# ─────────────────────────────────────────────────────────────────────────────
from ._exact import (Rat, as_rat, rat_str, parse_rat, binomial_gen, pochhammer,
                     GammaValue, gamma_product, certify_poly_identity)
from ._identities import (ParamSet, IdentityDescriptor, VerificationReport, REGISTRY,
                          ALIASES, DEFAULT_ALPHAS, get_identity, eval_identity, catalog,
                          lhs_theorem1, rhs_theorem1, single_sum_k, telescope_certificate,
                          telescoped_total, lhs_theorem2, rhs_theorem2, lhs_theorem3,
                          rhs_theorem3, theorem1_alpha_certify, theorem3_certify,
                          doub_xab_check, corollary4_rederive)
from ._series import (LaurentSeries, BiSeries, BiPoly, revert_u, reversion_residual_check,
                      remark_coefficients, classical_gf_check, F_closed_form,
                      G_r_closed_form, G_r_check, middle_gf_check, pde_check,
                      routine_identity_check)
from ._hypergeom import (HypSpec, eval_terminating, transform_3f2_check,
                         gessel_stanton_value, gessel_stanton_check, dixon_value,
                         dixon_check, whipple_value, whipple_check, chu_vandermonde,
                         second_proof_chain, remark_evaluations)
from ._sweep import SweepConfig, SweepRunner, DEFAULT_SUITE, run_suite, summarize
from ._errors import (BinomcertError, DomainError, DegenerateError, PoleError,
                      LowerParamPole, PipelinePole, NonTerminating, TruncationError,
                      InsufficientSamples, CertificateError, UnknownIdentity)

__all__: list[str] = [
    # exact arithmetic
    "Rat", "as_rat", "rat_str", "parse_rat", "binomial_gen", "pochhammer",
    "GammaValue", "gamma_product", "certify_poly_identity",
    # identities
    "ParamSet", "IdentityDescriptor", "VerificationReport", "REGISTRY", "ALIASES",
    "DEFAULT_ALPHAS", "get_identity", "eval_identity", "catalog",
    "lhs_theorem1", "rhs_theorem1", "single_sum_k", "telescope_certificate",
    "telescoped_total", "lhs_theorem2", "rhs_theorem2", "lhs_theorem3", "rhs_theorem3",
    "theorem1_alpha_certify", "theorem3_certify", "doub_xab_check", "corollary4_rederive",
    # series
    "LaurentSeries", "BiSeries", "BiPoly", "revert_u", "reversion_residual_check",
    "remark_coefficients", "classical_gf_check", "F_closed_form", "G_r_closed_form",
    "G_r_check", "middle_gf_check", "pde_check", "routine_identity_check",
    # hypergeometric
    "HypSpec", "eval_terminating", "transform_3f2_check", "gessel_stanton_value",
    "gessel_stanton_check", "dixon_value", "dixon_check", "whipple_value", "whipple_check",
    "chu_vandermonde", "second_proof_chain", "remark_evaluations",
    # sweeps
    "SweepConfig", "SweepRunner", "DEFAULT_SUITE", "run_suite", "summarize",
    # errors
    "BinomcertError", "DomainError", "DegenerateError", "PoleError", "LowerParamPole",
    "PipelinePole", "NonTerminating", "TruncationError", "InsufficientSamples",
    "CertificateError", "UnknownIdentity",
]

# ─────────────────────────────────────────────────────────────────────────────
# Version handling
# ─────────────────────────────────────────────────────────────────────────────
try:
    __version__: str = _metadata.version(__name__)
except _metadata.PackageNotFoundError:
    # source checkout without an install
    from .__about__ import __version__  # type: ignore[attr-defined]

del _metadata
