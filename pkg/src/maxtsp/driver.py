"""Top-level solver schemes with honest certification.

Two entry points.  :func:`eptas` targets a caller-chosen accuracy
epsilon: large epsilon is served by the 5/6 fallback, small instances by
the exact DP, and everything else by the gluing pipeline with
delta = (12/11) * epsilon, which meets the (1 - epsilon) target whenever
n exceeds the accuracy threshold n(eps) = ((11/6)/eps)^(2*dim+1).
:func:`asymptotic` instead lets the accuracy float with n, running the
pipeline at delta = 2 / n^(1/(2*dim+1)) for a relative error bound of
(11/6) / n^(1/(2*dim+1)).

Both guarantees are conditional on the caller-supplied doubling-dimension
bound; nothing here estimates it.  When the exact branch is prescribed
but the instance exceeds the DP cap, the pipeline runs instead and the
certificate is marked certified = false with the unconditional
cover-relative bound in place of the scheme's claim.
"""

from __future__ import annotations

from typing import Tuple

from .certificate import Certificate
from .corealgo import Tour, algorithm_A
from .exact import HELD_KARP_CAP, held_karp_max
from .merge import kostochka_serdyukov_56
from .metricspace import Instance

FALLBACK_EPSILON = 1.0 / 6.0


def eptas_plan(n: int, epsilon: float, dim: float) -> Tuple[str, float, float]:
    """Branch choice for :func:`eptas`: (branch, delta, n_threshold).

    Pure function of (n, epsilon, dim).  Threshold comparisons evaluate
    the formulas directly in floats with ties going to the exact branch.
    The returned branch is the prescribed one; the DP cap is applied
    later, in :func:`eptas` itself.
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    if dim < 0:
        raise ValueError(f"dim must be non-negative, got {dim}")
    if epsilon >= FALLBACK_EPSILON:
        return "five-sixths", float("nan"), float("nan")
    delta = (12.0 / 11.0) * epsilon
    n_threshold = ((11.0 / 6.0) / epsilon) ** (2.0 * dim + 1.0)
    if n <= n_threshold:
        return "exact-dp", delta, n_threshold
    return "algorithm-A", delta, n_threshold


def eptas(inst: Instance, epsilon: float, dim: float) -> Tuple[Tour, Certificate]:
    """Approximation scheme: tour weight at least (1 - epsilon) times the
    optimum on every certified run, assuming dim really bounds the
    instance's doubling dimension.

    epsilon >= 1/6 is served by the 5/6 fallback (5/6 >= 1 - epsilon
    there).  Otherwise instances up to n(eps) get the exact DP; above the
    threshold the gluing pipeline at delta = (12/11) * epsilon already
    meets the target.  The one dishonest corner, n <= n(eps) but above
    the DP cap, still runs the pipeline but returns certified = false.
    """
    branch, delta, n_threshold = eptas_plan(inst.n, epsilon, dim)
    if branch == "five-sixths":
        tour, cert = kostochka_serdyukov_56(inst)
        cert.epsilon = float(epsilon)
        cert.dim = float(dim)
        return tour, cert
    if branch == "exact-dp":
        if inst.n <= HELD_KARP_CAP:
            tour = held_karp_max(inst)
            cert = Certificate(
                branch="exact-dp",
                weight_tour=tour.weight,
                claimed_bound=1.0,
                certified=True,
                epsilon=float(epsilon),
                dim=float(dim),
                n_threshold=n_threshold,
            )
            return tour, cert
        # prescribed exact, too large for the DP: run the pipeline and
        # say so; the claimed bound stays the pipeline's own
        tour, cert = algorithm_A(inst, delta)
        cert.epsilon = float(epsilon)
        cert.dim = float(dim)
        cert.n_threshold = n_threshold
        cert.certified = False
        return tour, cert
    tour, cert = algorithm_A(inst, delta)
    cert.epsilon = float(epsilon)
    cert.dim = float(dim)
    cert.n_threshold = n_threshold
    cert.claimed_bound = 1.0 - epsilon
    return tour, cert


def asymptotic_plan(n: int, dim: float) -> Tuple[str, float, float]:
    """Branch choice for :func:`asymptotic`: (branch, delta, error_bound)."""
    if dim < 0:
        raise ValueError(f"dim must be non-negative, got {dim}")
    q = 2.0 * dim
    if n <= 2.0 ** (q + 1.0):
        return "five-sixths", float("nan"), 1.0 / 6.0
    root = n ** (1.0 / (q + 1.0))
    return "algorithm-A", 2.0 / root, (11.0 / 6.0) / root


def asymptotic(inst: Instance, dim: float) -> Tuple[Tour, Certificate]:
    """Accuracy-grows-with-n scheme: relative error at most
    (11/6) / n^(1/(2*dim+1)), conditional on the dim bound.

    Small instances (n <= 2^(2*dim+1)) are served by the 5/6 fallback,
    whose 1/6 error is already below the target there.  Larger ones run
    the gluing pipeline at delta = 2 / n^(1/(2*dim+1)); the branch
    condition keeps that delta inside (0, 1).
    """
    branch, delta, err = asymptotic_plan(inst.n, dim)
    q = 2.0 * dim
    if branch == "five-sixths":
        tour, cert = kostochka_serdyukov_56(inst)
        cert.dim = float(dim)
        cert.n_threshold = 2.0 ** (q + 1.0)
        return tour, cert
    tour, cert = algorithm_A(inst, delta)
    cert.dim = float(dim)
    cert.n_threshold = 2.0 ** (q + 1.0)
    cert.claimed_bound = 1.0 - err
    return tour, cert
