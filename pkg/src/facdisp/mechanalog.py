"""Two coupled oscillators whose eigenfrequencies, as functions of a scalar
detuning parameter p, show the same factorized characteristic equation and
avoided crossing as the continuum dispersion relations: the wavenumber role is
played by p, and the relative-displacement coupling cancels out of the
diagonal stiffness exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .branches import BranchTrace
from .matdet import CoupledSystem, PolyMatrix
from .polyalg import MultiPoly, NumberLike, as_fraction, sqrt_exact

DEFAULT_P_LIMIT = Fraction(1, 5)


@dataclass(frozen=True)
class OscillatorPair:
    """Masses, bare springs, coupling spring and detuning coefficients.

    `p_limit` is the soft admissibility bound on |p| for single-point queries;
    parameter sweeps only enforce positivity of the effective stiffness, since
    the reference sweep range runs slightly past the bound.
    """

    m1: Fraction = Fraction(1)
    m2: Fraction = Fraction(1)
    kappa1: Fraction = Fraction(1)
    kappa2: Fraction = Fraction(6, 5)
    kappa: Fraction = Fraction(1)
    alpha1: Fraction = Fraction(1)
    alpha2: Fraction = Fraction(-1)
    b: Fraction = Fraction(0)
    p_limit: Fraction | None = DEFAULT_P_LIMIT

    def __post_init__(self):
        for name in ("m1", "m2", "kappa1", "kappa2", "kappa"):
            value = as_fraction(getattr(self, name))
            if value <= 0:
                raise ValueError(f"{name} must be positive")
            object.__setattr__(self, name, value)
        for name in ("alpha1", "alpha2", "b"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.b < 0:
            raise ValueError("coupling amplitude b must be non-negative")
        if self.p_limit is not None:
            object.__setattr__(self, "p_limit", as_fraction(self.p_limit))


def reference_data() -> OscillatorPair:
    """The worked data set: unit masses, springs 1 and 6/5, detunings +-1."""
    return OscillatorPair()


def _check_p(params: OscillatorPair, p: Fraction, enforce_limit: bool):
    if enforce_limit and params.p_limit is not None and abs(p) > params.p_limit:
        raise ValueError(f"|p| = {abs(p)} exceeds the admissible bound {params.p_limit}")


def effective_stiffness(
    params: OscillatorPair, p: NumberLike, enforce_limit: bool = True
) -> tuple[Fraction, Fraction]:
    """Diagonal stiffness (1 + p*alpha_j) kappa_j; the b-dependence cancels exactly.

    The raw diagonal is kappa_j - b*kappa + p*alpha_j*kappa_j + b*kappa from
    the relative-displacement coupling, independent of b.
    """
    p = as_fraction(p)
    _check_p(params, p, enforce_limit)
    k1 = (1 + p * params.alpha1) * params.kappa1
    k2 = (1 + p * params.alpha2) * params.kappa2
    if k1 <= 0 or k2 <= 0:
        raise ValueError(f"effective stiffness is not positive at p = {p}")
    return k1, k2


def partial_freqs(
    params: OscillatorPair, p: NumberLike, enforce_limit: bool = True
) -> tuple[Fraction, Fraction]:
    """Squared partial frequencies (1 + p*alpha_j) kappa_j / m_j."""
    k1, k2 = effective_stiffness(params, p, enforce_limit)
    return k1 / params.m1, k2 / params.m2


def eigenfreqs(
    params: OscillatorPair, p: NumberLike, b: NumberLike, enforce_limit: bool = True
):
    """Squared eigenfrequencies (w_minus^2, w_plus^2) of the coupled pair.

    (W1 + W2)/2 -+ sqrt((W1 - W2)^2/4 + b^2 kappa^2/(m1 m2)); values stay
    exact Fractions whenever the discriminant is a perfect square (notably on
    the crossing, where it reduces to (b kappa)^2/(m1 m2)).
    """
    b = as_fraction(b)
    if b < 0:
        raise ValueError("coupling amplitude b must be non-negative")
    w1, w2 = partial_freqs(params, p, enforce_limit)
    mean = (w1 + w2) / 2
    disc = (w1 - w2) ** 2 / 4 + b**2 * params.kappa**2 / (params.m1 * params.m2)
    root = sqrt_exact(disc)
    if root is None:
        root = math.sqrt(disc)
    return mean - root, mean + root


def crossing_param(params: OscillatorPair) -> Fraction:
    """The b-independent detuning p* where the two partial frequencies cross."""
    num = params.kappa2 / params.m2 - params.kappa1 / params.m1
    den = params.alpha1 * params.kappa1 / params.m1 - params.alpha2 * params.kappa2 / params.m2
    if den == 0:
        raise ValueError("no transversal crossing: detuning slopes coincide")
    return num / den


def characteristic_system(
    params: OscillatorPair, p: NumberLike, enforce_limit: bool = True
) -> CoupledSystem:
    """The 2x2 characteristic matrix as a coupled system over (w, b).

    Each equation of motion is divided by its mass, so the diagonal blocks are
    w^2 - W_j^2 and the off-diagonal coupling carries b*kappa/m_j; the
    factorization remainder is -b^2 kappa^2/(m1 m2) exactly.
    """
    w1, w2 = partial_freqs(params, p, enforce_limit)
    w, b = MultiPoly.var("w"), MultiPoly.var("b")
    lam1 = PolyMatrix([[w * w - MultiPoly.const(w1)]])
    lam2 = PolyMatrix([[w * w - MultiPoly.const(w2)]])
    z = MultiPoly.zero()
    coupling = PolyMatrix(
        [[z, b * (params.kappa / params.m1)], [b * (params.kappa / params.m2), z]]
    )
    return CoupledSystem(lam1, lam2, coupling)


def sweep(
    params: OscillatorPair, pgrid: Sequence[float], b_values: Sequence[NumberLike]
) -> list[BranchTrace]:
    """Closed-form eigenfrequency branches over a detuning grid, per coupling value.

    Two traces per b (lower then upper); the sweep enforces only stiffness
    positivity, not the single-point |p| bound.
    """
    pgrid = list(pgrid)
    if not pgrid:
        raise ValueError("empty parameter grid")
    if any(q <= p for p, q in zip(pgrid, pgrid[1:])):
        raise ValueError("parameter grid must be strictly increasing")
    traces = []
    next_id = 0
    for b in b_values:
        lower = BranchTrace(next_id, [], {"model": "mech", "b": float(b), "branch": "minus"})
        upper = BranchTrace(next_id + 1, [], {"model": "mech", "b": float(b), "branch": "plus"})
        next_id += 2
        for p in pgrid:
            lo, hi = eigenfreqs(params, p, b, enforce_limit=False)
            lower.samples.append((float(p), math.sqrt(float(lo))))
            upper.samples.append((float(p), math.sqrt(float(hi))))
        traces.extend([lower, upper])
    return traces


def min_gap_location(trace_pair: tuple[BranchTrace, BranchTrace]) -> tuple[float, float]:
    """(p, gap) at the grid point where the squared-frequency gap is smallest.

    The avoided-crossing gap is w_plus^2 - w_minus^2 = 2 sqrt(discriminant),
    minimized exactly at the crossing parameter; the plain frequency gap has
    its minimum slightly detuned because the mean frequency drifts with p.
    """
    lower, upper = trace_pair
    best = min(
        zip(
            lower.ks,
            (u * u - l * l for (_, l), (_, u) in zip(lower.samples, upper.samples)),
        ),
        key=lambda t: t[1],
    )
    return best
