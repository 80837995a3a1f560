"""Evidence tables for the forbidden-value functionals on Fermat rationals.

Each functional sends q = (x^n + y^n)/z^n through a ladder rung and has
a known limit (q, q/pi, (1+c) q/pi, or e^q); the limit can equal the
functional's forbidden value (1, 1/pi, (1+c)/pi, e) only if q = 1, i.e.
only on a counterexample to the Fermat-Wiles theorem. The scanner
evaluates rows along the largest feasible tau grid, extrapolates a
convergence-aware error bar, and reports whether the distance from the
forbidden value resolves at desk scale. It never claims proof; it
produces tables.

Feasibility is engine-bound: rung ordinates T must sit in
[T_FLOOR, scan_t_cap], far below the 1e7 the exp-scale forms would
want, so many rows are honestly flagged infeasible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .constants import EULER_GAMMA, T_FLOOR
from .errors import DomainError, InfeasibleError, LadderLabError
from .gram import DEFAULT_STRATEGY, t1_increment, t2_increment
from .integral import CheckpointCache, hl_integral, hl_representation
from .ladder import ascend
from .serialize import to_json

FUNCTIONAL_IDS = (
    "zeta-segment", "zeta-ratio", "zeta-log", "zeta-log-ratio",
    "d-linear", "d-log", "t1", "t2", "gamma", "gamma-exp",
)
# forms whose rung ordinate grows exponentially in the rational
_EXP_SCALE = frozenset(("zeta-log", "zeta-log-ratio", "d-log", "gamma-exp"))
DEFAULT_TAU_GRID = (1e2, 3e2, 1e3, 3e3, 1e4)
DEFAULT_T_CAP = 5e4
_EXP_Q_CAP = 500.0  # beyond this, e^q and exp(value) overflow float64
_STATUS_RESOLVED = "resolved"
_STATUS_UNRESOLVED = "unresolved at desk scale"
_STATUS_INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class FermatRational:
    """(x^n + y^n)/z^n with exact integer internals."""

    x: int
    y: int
    z: int
    n: int

    def __post_init__(self) -> None:
        if min(self.x, self.y, self.z) < 1:
            raise DomainError("x, y, z must be positive integers")
        if self.n < 3:
            raise DomainError("exponent n must be >= 3")

    @property
    def numerator(self) -> int:
        return self.x ** self.n + self.y ** self.n

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.z ** self.n)

    @property
    def value(self) -> float:
        try:
            return float(self.fraction)
        except OverflowError as exc:
            raise InfeasibleError(f"({self.x},{self.y},{self.z})^{self.n} "
                                  "does not fit a float") from exc

    def label(self) -> str:
        f = self.fraction
        return f"{f.numerator}/{f.denominator}"


def assert_no_exact_solution(q: FermatRational) -> None:
    """Exact integer check x^n + y^n != z^n. A hit stops the build."""
    assert q.numerator != q.z ** q.n, (
        f"exact power identity at x={q.x} y={q.y} z={q.z} n={q.n}"
    )


def enumerate_fermat_rationals(n: int, max_xyz: int,
                               window: tuple[float, float] | None = None) -> list[FermatRational]:
    """Distinct Fermat rationals with x, y, z <= max_xyz, by |q - 1|.

    Deduplicated on exact value keeping the lexicographically smallest
    witness triple; the optional open window filters on the value.
    Every triple is exact-checked against x^n + y^n = z^n on the way.
    """
    if n < 3:
        raise DomainError("exponent n must be >= 3")
    if max_xyz < 1:
        raise DomainError("max_xyz must be >= 1")
    seen: dict[Fraction, FermatRational] = {}
    for x in range(1, max_xyz + 1):
        for y in range(x, max_xyz + 1):  # symmetric in x, y
            num = x ** n + y ** n
            for z in range(1, max_xyz + 1):
                q = FermatRational(x=x, y=y, z=z, n=n)
                assert_no_exact_solution(q)
                frac = Fraction(num, z ** n)
                if window is not None:
                    v = frac
                    if not (window[0] < v < window[1]):
                        continue
                prev = seen.get(frac)
                if prev is None or (q.x, q.y, q.z) < (prev.x, prev.y, prev.z):
                    seen[frac] = q
    out = list(seen.values())
    out.sort(key=lambda r: (abs(r.fraction - 1), r.x, r.y, r.z))
    return out


def exhaustive_exact_check(n_values, max_xyz: int) -> int:
    """Exact x^n + y^n = z^n sweep over x <= y, z <= max_xyz.

    Pure integer arithmetic; returns the number of triples checked.
    A hit raises AssertionError and stops the build.
    """
    checked = 0
    for n in n_values:
        if n < 3:
            raise DomainError("exponent n must be >= 3")
        powers = [k ** n for k in range(max_xyz + 1)]
        power_set = set(powers)
        for x in range(1, max_xyz + 1):
            for y in range(x, max_xyz + 1):
                s = powers[x] + powers[y]
                assert s not in power_set, (
                    f"exact power identity at x={x} y={y} n={n}")
                checked += max_xyz
    return checked


@dataclass(frozen=True)
class ScanRow:
    functional: str
    x: int
    y: int
    z: int
    n: int
    q: float
    tau_max: float | None
    value: float | None
    target: float | None
    forbidden: float
    distance: float | None
    est_error: float | None
    status: str
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "functional": self.functional, "x": self.x, "y": self.y,
            "z": self.z, "n": self.n, "q": self.q, "tau_max": self.tau_max,
            "value": self.value, "target": self.target,
            "forbidden": self.forbidden, "distance": self.distance,
            "est_error": self.est_error, "status": self.status,
            "note": self.note,
        }


@dataclass(frozen=True)
class ScanReport:
    functional_ids: list[str]
    n: int
    max_xyz: int
    window: tuple[float, float] | None
    rows: list[ScanRow]
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return to_json({
            "functionals": list(self.functional_ids),
            "n": self.n,
            "max_xyz": self.max_xyz,
            "window": list(self.window) if self.window else None,
            "rows": [r.to_dict() for r in self.rows],
            "metadata": self.metadata,
        })


def _tau_window(functional: str, q: FermatRational, t_cap: float) -> tuple[float, float]:
    """Feasible open tau range for a functional on q, or raises."""
    scale = 1.0 - EULER_GAMMA
    v = q.value
    if functional in ("zeta-segment", "d-linear", "t1", "t2", "gamma", "gamma-exp"):
        lo, hi = T_FLOOR * scale / v, t_cap * scale / v
    elif functional == "zeta-ratio":
        a, b = float(q.numerator), float(q.z ** q.n)
        lo = T_FLOOR * scale / min(a, b)
        hi = t_cap * scale / max(a, b)
    elif functional in ("zeta-log", "d-log"):
        # T = tau^q must land in [T_FLOOR, t_cap]
        lo, hi = T_FLOOR ** (1.0 / v), t_cap ** (1.0 / v)
    elif functional == "zeta-log-ratio":
        a, b = float(q.numerator), float(q.z ** q.n)
        lo, hi = T_FLOOR ** (1.0 / min(a, b)), t_cap ** (1.0 / max(a, b))
    else:
        raise DomainError(f"unknown functional id {functional!r}")
    lo = max(lo, 20.0)  # keep ln(tau) away from 0 for the log forms
    if functional == "gamma-exp" and v > _EXP_Q_CAP:
        raise InfeasibleError(f"e^q overflows for q={v:g}")
    if hi <= lo * 1.05:
        raise InfeasibleError(
            f"{functional}: no feasible tau (window [{lo:.3g}, {hi:.3g}], engine cap {t_cap:g})")
    return lo, hi


def _row_grid(functional: str, q: FermatRational, tau_grid, t_cap: float) -> list[float]:
    lo, hi = _tau_window(functional, q, t_cap)
    inside = [t for t in tau_grid if lo <= t <= hi]
    if len(inside) >= 2:
        if hi > 1.5 * inside[-1]:
            inside.append(hi)  # always measure at the largest feasible tau
        return inside
    # largest feasible geometric grid when the default grid misses the window
    m = 5
    ratio = (hi / lo) ** (1.0 / (m - 1))
    return [lo * ratio ** i for i in range(m - 1)] + [hi]


def _rung_integral(T: float, cache: CheckpointCache) -> tuple[float, float]:
    """(integral of Z^2 over (T, T^1], numeric error) via the defining identity."""
    j = hl_integral(T, cache=cache)
    return hl_representation(T) - j.value, j.abs_error_estimate + 1e-6


def _evaluate_point(functional: str, q: FermatRational, tau: float,
                    cache: CheckpointCache) -> tuple[float, float]:
    """(functional value at tau, propagated numeric error)."""
    scale = 1.0 - EULER_GAMMA
    v = q.value
    if functional == "zeta-segment":
        seg, err = _rung_integral(v * tau / scale, cache)
        return seg / tau, err / tau
    if functional == "zeta-ratio":
        num, e1 = _rung_integral(float(q.numerator) * tau / scale, cache)
        den, e2 = _rung_integral(float(q.z ** q.n) * tau / scale, cache)
        r = num / den
        return r, abs(r) * (e1 / num + e2 / den)
    if functional == "zeta-log":
        seg, err = _rung_integral(tau ** v, cache)
        return math.log(seg) / math.log(tau), err / seg / math.log(tau)
    if functional == "zeta-log-ratio":
        num, e1 = _rung_integral(tau ** float(q.numerator), cache)
        den, e2 = _rung_integral(tau ** float(q.z ** q.n), cache)
        r = math.log(num) / math.log(den)
        return r, (e1 / num + abs(r) * e2 / den) / abs(math.log(den))
    from .arith import dirichlet_D
    from .gammalab import ln_gamma

    if functional == "d-linear":
        T = v * tau / scale
        u = ascend(T, cache=cache)
        return (dirichlet_D(u) - dirichlet_D(T)) / tau, 2.0 / tau
    if functional == "d-log":
        T = tau ** v
        u = ascend(T, cache=cache)
        dd = dirichlet_D(u) - dirichlet_D(T)
        return math.log(dd) / math.log(tau), 2.0 / dd / math.log(tau)
    if functional == "t1":
        T = v * tau / scale
        u = ascend(T, cache=cache)
        return t1_increment(T, u, strategy=DEFAULT_STRATEGY) / tau, 1e-5 / tau
    if functional == "t2":
        T = v * tau / scale
        u = ascend(T, cache=cache)
        return t2_increment(T, u, strategy=DEFAULT_STRATEGY) / tau, 1e-5 / tau
    if functional == "gamma":
        T = v * tau / scale
        u = ascend(T, cache=cache)
        return (ln_gamma(u) - ln_gamma(T)) / tau, 1e-5 / tau
    if functional == "gamma-exp":
        T = v * tau / scale
        u = ascend(T, cache=cache)
        g = (ln_gamma(u) - ln_gamma(T)) / tau
        if g > 700.0:
            raise InfeasibleError(f"exp overflow at tau={tau:g}")
        return math.exp(g), math.exp(g) * 1e-5 / tau
    raise DomainError(f"unknown functional id {functional!r}")


def _target_forbidden(functional: str, q: FermatRational) -> tuple[float | None, float]:
    v = q.value
    if functional == "t1":
        return v / math.pi, 1.0 / math.pi
    if functional == "t2":
        return (1.0 + EULER_GAMMA) * v / math.pi, (1.0 + EULER_GAMMA) / math.pi
    if functional == "gamma-exp":
        target = math.exp(v) if v <= _EXP_Q_CAP else None
        return target, math.e
    return v, 1.0


def evaluate_equivalent(functional: str, q: FermatRational,
                        tau_grid=DEFAULT_TAU_GRID,
                        cache: CheckpointCache | None = None,
                        t_cap: float = DEFAULT_T_CAP) -> ScanRow:
    """One evidence row: functional value at the largest feasible tau.

    est_error sums the last-grid drift, a Richardson extrapolation gap
    in 1/ln(tau) (the convergence scale of every limit here), and the
    propagated numeric error. status is resolved only when the distance
    from the forbidden value exceeds est_error.
    """
    if functional not in FUNCTIONAL_IDS:
        raise DomainError(f"unknown functional id {functional!r}")
    cache = cache if cache is not None else CheckpointCache()
    target, forbidden = _target_forbidden(functional, q)
    try:
        grid = _row_grid(functional, q, tau_grid, t_cap)
        values = []
        for tau in grid:
            val, num_err = _evaluate_point(functional, q, tau, cache)
            values.append((tau, val, num_err))
    except InfeasibleError as exc:
        # exp-scale forms hit a hard representability guard; linear forms
        # merely ran out of engine range, which is a desk-scale limit
        status = _STATUS_INFEASIBLE if functional in _EXP_SCALE else _STATUS_UNRESOLVED
        return ScanRow(functional=functional, x=q.x, y=q.y, z=q.z, n=q.n,
                       q=q.value, tau_max=None, value=None, target=target,
                       forbidden=forbidden, distance=None, est_error=None,
                       status=status, note=str(exc))
    except LadderLabError as exc:
        return ScanRow(functional=functional, x=q.x, y=q.y, z=q.z, n=q.n,
                       q=q.value, tau_max=None, value=None, target=target,
                       forbidden=forbidden, distance=None, est_error=None,
                       status=_STATUS_UNRESOLVED, note=f"solver: {exc}")
    tau_last, v_last, num_err = values[-1]
    if len(values) >= 2:
        tau_prev, v_prev, _ = values[-2]
        drift = abs(v_last - v_prev)
        if len(values) >= 3:
            # a lone drift can cancel by accident; take the worse of two
            drift = max(drift, abs(v_prev - values[-3][1]))
        l_prev, l_last = math.log(tau_prev), math.log(tau_last)
        # v ~ limit + beta/ln(tau): gap to the extrapolated limit
        extrap_gap = drift * (1.0 / l_last) / (1.0 / l_prev - 1.0 / l_last)
        est = drift + extrap_gap + num_err
    else:
        est = math.inf
    distance = abs(v_last - forbidden)
    status = _STATUS_RESOLVED if distance > est else _STATUS_UNRESOLVED
    return ScanRow(functional=functional, x=q.x, y=q.y, z=q.z, n=q.n,
                   q=q.value, tau_max=tau_last, value=v_last, target=target,
                   forbidden=forbidden, distance=distance,
                   est_error=est if math.isfinite(est) else None,
                   status=status if math.isfinite(est) else _STATUS_UNRESOLVED)


def scan(functional_ids, n: int, max_xyz: int,
         tau_grid=DEFAULT_TAU_GRID,
         window: tuple[float, float] | None = None,
         cache: CheckpointCache | None = None,
         t_cap: float = DEFAULT_T_CAP,
         threads: int = 1) -> ScanReport:
    """Cross product of enumerated rationals and functionals.

    Rows are independent; with threads > 1 they are evaluated in a pool
    after the checkpoint cache has been pre-extended serially, so the
    report is identical for any thread count.
    """
    ids = list(functional_ids)
    for f in ids:
        if f not in FUNCTIONAL_IDS:
            raise DomainError(f"unknown functional id {f!r}")
    rationals = enumerate_fermat_rationals(n, max_xyz, window=window)
    cache = cache if cache is not None else CheckpointCache()
    jobs = [(f, q) for f in ids for q in rationals]
    if jobs:
        # serial pre-extension pins every anchor the parallel rows will read;
        # the margin covers one bracket widening of the ascent solver
        reach = t_cap * (1.0 + 5.0 * (1.0 - EULER_GAMMA) / math.log(t_cap))
        cache.extend_to(reach)
    if threads > 1 and len(jobs) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(
                lambda fq: evaluate_equivalent(fq[0], fq[1], tau_grid, cache, t_cap), jobs))
    else:
        rows = [evaluate_equivalent(f, q, tau_grid, cache, t_cap) for f, q in jobs]
    return ScanReport(
        functional_ids=ids, n=n, max_xyz=max_xyz, window=window, rows=rows,
        metadata={
            "tau_grid": [float(t) for t in tau_grid],
            "t_cap": t_cap,
            "strategy": DEFAULT_STRATEGY,
            "c0_convention": 0.0,
        },
    )
