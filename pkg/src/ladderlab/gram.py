"""Gram sequence and the discrete Z-sums over it.

Gram ordinates solve theta(t_nu) = (nu - 1) pi, indexed so nu = 1 is
the classical first point near 17.8456. Solving is vectorized Newton on
the strictly increasing theta, seeded by a Lambert-type inversion of
its leading term; every returned point carries a residual certificate.

The two discrete sums (squared values, and products of neighbors) are
exposed with the summand as a pluggable strategy because the source
formulas admit more than one reading; every report records which one it
used. Sums are exact compensated folds (math.fsum), so batch shape and
thread count cannot change results.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .constants import T_MIN, TWO_PI
from .errors import BracketError, DomainError
from .zeta import theta, z_array

GRAM_RESIDUAL_TOL = 1e-9
FIRST_GRAM = 17.8455995404108608  # theta root at index nu = 1

# Summand readings for the discrete sums. "zeta-values" sums the real
# numbers zeta(1/2 + i t_nu) = (-1)^(nu-1) Z(t_nu) and their neighbor
# products; it is the default because measured Gram-point means land on
# the target constants 2 and 2(1+c) (the Z^2 readings drift like ln t
# or go negative). The alternatives are kept swappable for comparison.
STRATEGIES = ("zeta-values", "z-squared", "squared-pair")
DEFAULT_STRATEGY = "zeta-values"


@dataclass(frozen=True)
class GramSlice:
    """Gram points with ascending indices and attached Z values.

    Covers the half-open ordinate range (from_t, to_t]. points[i] is
    (nu, t_nu, Z(t_nu)) with nu = first_index + i.
    """

    first_index: int
    nus: np.ndarray
    ts: np.ndarray
    zs: np.ndarray
    from_t: float
    to_t: float

    def __len__(self) -> int:
        return self.ts.size

    def rows(self):
        for nu, t, z in zip(self.nus, self.ts, self.zs):
            yield int(nu), float(t), float(z)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("nu,t,z\n")
        for nu, t, z in self.rows():
            buf.write(f"{nu},{t:.17g},{z:.17g}\n")
        return buf.getvalue()


def _theta_prime(t: np.ndarray) -> np.ndarray:
    return 0.5 * np.log(t / TWO_PI)


def _lambert_w(x: np.ndarray) -> np.ndarray:
    """Principal branch for x > 0, Newton on w e^w = x."""
    w = np.log1p(x)
    for _ in range(24):
        ew = np.exp(w)
        w = w - (w * ew - x) / (ew * (w + 1.0))
    return w


def _solve_theta_equals(targets: np.ndarray) -> np.ndarray:
    """Ordinates where theta hits the given values (each >= -pi/8)."""
    # leading-term inversion: theta ~ (t/2) ln(t/2pi) - t/2 - pi/8
    g = (targets + np.pi / 8.0) / np.pi + 0.875
    t = TWO_PI * g / _lambert_w(np.maximum(g, 0.9) / math.e)
    t = np.maximum(t, T_MIN + 1.0)
    for _ in range(60):
        resid = theta(t) - targets
        step = resid / _theta_prime(t)
        t = np.maximum(t - step, T_MIN)
        if np.max(np.abs(resid)) <= GRAM_RESIDUAL_TOL * 0.01:
            break
    resid = np.abs(theta(t) - targets)
    if resid.size and np.max(resid) > GRAM_RESIDUAL_TOL:
        bad = int(np.argmax(resid))
        raise BracketError(f"Gram solve stalled at target index {bad}: residual {resid[bad]:g}")
    return t


def gram_index_range(frm: float, to: float) -> tuple[int, int]:
    """Indices nu of Gram points inside (frm, to]: [lo, hi] inclusive."""
    th_a = theta(frm) / math.pi
    th_b = theta(to) / math.pi
    n_lo = int(math.floor(th_a)) + 1  # smallest integer n with n*pi > theta(frm)
    n_hi = int(math.floor(th_b))  # largest with n*pi <= theta(to)
    return n_lo + 1, n_hi + 1  # nu = n + 1


def gram_points(frm: float, to: float, extra: int = 0) -> GramSlice:
    """All Gram points with ordinate in (frm, to], plus `extra` beyond.

    Requires T_MIN <= frm < to. The extras let pair sums fetch the
    nu+1 neighbor of the last in-range point without a second solve.
    """
    if not (frm >= T_MIN and to > frm):
        raise DomainError(f"gram_points requires {T_MIN} <= from < to")
    nu_lo, nu_hi = gram_index_range(frm, to)
    nu_hi += extra
    if nu_hi < nu_lo:
        return GramSlice(first_index=nu_lo, nus=np.empty(0, dtype=np.int64),
                         ts=np.empty(0), zs=np.empty(0), from_t=frm, to_t=to)
    nus = np.arange(nu_lo, nu_hi + 1, dtype=np.int64)
    targets = (nus - 1).astype(float) * math.pi
    ts = _solve_theta_equals(targets)
    return GramSlice(first_index=nu_lo, nus=nus, ts=ts, zs=z_array(ts),
                     from_t=frm, to_t=to)


def _pair_values(slice_: GramSlice, in_range: int) -> tuple[np.ndarray, np.ndarray]:
    """(Z at nu, Z at nu+1) for the first in_range points of the slice."""
    if slice_.ts.size < in_range + 1:
        raise DomainError("pair sum needs one extra Gram point beyond the range")
    return slice_.zs[:in_range], slice_.zs[1: in_range + 1]


def _gram_sign(nus: np.ndarray) -> np.ndarray:
    """(-1)^(nu-1), the rotation e^{i theta} = +-1 at Gram points."""
    return np.where((nus - 1) % 2 == 0, 1.0, -1.0)


def _summand_one(nus: np.ndarray, z: np.ndarray, strategy: str) -> np.ndarray:
    if strategy == "zeta-values":
        return _gram_sign(nus) * z
    if strategy in ("z-squared", "squared-pair"):
        return z * z
    raise DomainError(f"unknown summand strategy {strategy!r}")


def _summand_pair(nus: np.ndarray, z: np.ndarray, z_next: np.ndarray, strategy: str) -> np.ndarray:
    if strategy == "zeta-values":
        # zeta_nu * zeta_{nu+1} with opposite rotation signs
        return -(z * z_next)
    if strategy == "z-squared":
        return z * z_next
    if strategy == "squared-pair":
        return (z * z) * (z_next * z_next)
    raise DomainError(f"unknown summand strategy {strategy!r}")


def t1_increment(a: float, b: float, strategy: str = DEFAULT_STRATEGY) -> float:
    """One-point summand folded over Gram points in (a, b]."""
    if not a < b:
        raise DomainError("t1_increment requires a < b")
    sl = gram_points(a, b)
    if len(sl) == 0:
        return 0.0
    return math.fsum(_summand_one(sl.nus, sl.zs, strategy))


def t2_increment(a: float, b: float, strategy: str = DEFAULT_STRATEGY) -> float:
    """Pair summand folded over Gram points t_nu in (a, b].

    The nu+1 neighbor is fetched even when it lies beyond b.
    """
    if not a < b:
        raise DomainError("t2_increment requires a < b")
    sl = gram_points(a, b, extra=1)
    n_in = int(np.count_nonzero(sl.ts <= b))
    if n_in == 0:
        return 0.0
    z, z_next = _pair_values(sl, n_in)
    return math.fsum(_summand_pair(sl.nus[:n_in], z, z_next, strategy))


def titchmarsh_T1(X: float, strategy: str = DEFAULT_STRATEGY) -> float:
    """Full one-point sum over all Gram points t_nu <= X."""
    if X < FIRST_GRAM:
        raise DomainError(f"titchmarsh_T1 requires X >= first Gram point {FIRST_GRAM}")
    return t1_increment(T_MIN, X, strategy=strategy)


def titchmarsh_T2(X: float, strategy: str = DEFAULT_STRATEGY) -> float:
    """Full pair sum over all t_nu <= X (neighbor may exceed X)."""
    if X < FIRST_GRAM:
        raise DomainError(f"titchmarsh_T2 requires X >= first Gram point {FIRST_GRAM}")
    return t2_increment(T_MIN, X, strategy=strategy)


def spacing_ratios(slice_: GramSlice, reference: str = "log_t") -> np.ndarray:
    """Consecutive Gram gaps divided by 2pi/ref, ref = ln t or ln(t/2pi).

    reference="log_t" is the documented band check; "log_t_over_2pi"
    matches the true asymptotic spacing and is the diagnostic companion.
    """
    if slice_.ts.size < 2:
        return np.empty(0)
    gaps = np.diff(slice_.ts)
    t = slice_.ts[:-1]
    if reference == "log_t":
        return gaps * np.log(t) / TWO_PI
    if reference == "log_t_over_2pi":
        return gaps * np.log(t / TWO_PI) / TWO_PI
    raise DomainError(f"unknown spacing reference {reference!r}")
