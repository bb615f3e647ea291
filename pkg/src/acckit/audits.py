"""Exact audits of incidence inequalities and identities, with margins.

Every audit works in exact integer or rational arithmetic and reports the
margin by which an inequality holds or fails.  Nothing here asserts an
asymptotic statement; each check is the finite inequality that appears in
the underlying counting argument.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .structure import IncidenceStructure, InvalidStructureError, Stats, validate

DEFAULT_SUBSET_BUDGET = 10_000_000
BUDGET_ENV_VAR = "ACCKIT_SUBSET_BUDGET"


class SizeLimitExceeded(Exception):
    """The vertex-subset search space exceeds the configured budget."""

    def __init__(self, subsets: int, budget: int):
        self.subsets = subsets
        self.budget = budget
        super().__init__(
            f"subset search needs {subsets} evaluations, budget is {budget}; "
            f"raise {BUDGET_ENV_VAR} or pass a larger budget to proceed"
        )


def budget_from_env(default: int = DEFAULT_SUBSET_BUDGET) -> int:
    value = os.environ.get(BUDGET_ENV_VAR)
    if value is None:
        return default
    try:
        budget = int(value)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV_VAR} must be an integer, got {value!r}") from None
    if budget < 1:
        raise ValueError(f"{BUDGET_ENV_VAR} must be >= 1, got {budget}")
    return budget


@dataclass(frozen=True)
class TkBoundEntry:
    """Both vertex-count bounds at one degree k.

    bound1 is alpha*C(n,2)/C(k,2), which every valid structure satisfies
    with t_k <= bound1.  bound2 is 2*alpha*n/k and applies only for
    k >= alpha*ceil(sqrt(2n)); there the strict t_k < bound2 must hold.
    """

    k: int
    tk: int
    bound1: Fraction
    holds1: bool
    margin1: Fraction
    bound2_applicable: bool
    bound2: Fraction
    holds2: bool
    margin2: Fraction | None


@dataclass(frozen=True)
class TkBoundsReport:
    alpha: int
    n: int
    threshold_k: int
    entries: tuple[TkBoundEntry, ...]

    @property
    def part1_holds(self) -> bool:
        return all(e.holds1 for e in self.entries)

    @property
    def part2_holds(self) -> bool:
        return all(e.holds2 for e in self.entries)

    def part1_min_margin(self) -> Fraction:
        return min(e.margin1 for e in self.entries)

    def part2_min_margin(self) -> Fraction | None:
        margins = [e.margin2 for e in self.entries if e.bound2_applicable]
        return min(margins) if margins else None


def ceil_isqrt(x: int) -> int:
    """Smallest integer >= sqrt(x), exactly."""
    if x < 0:
        raise ValueError("negative argument")
    root = math.isqrt(x)
    return root if root * root == x else root + 1


def audit_tk_bounds(stats: Stats, alpha: int, n: int) -> TkBoundsReport:
    """Check both t_k upper bounds for every k in 2..n.

    Entries cover all k from 2 to n even when t_k is zero, so equality cases
    and vacuous cases are visible in the report.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    pair_total = alpha * math.comb(n, 2)
    threshold_k = alpha * ceil_isqrt(2 * n)
    entries = []
    for k in range(2, n + 1):
        tk = stats.tk.get(k, 0)
        bound1 = Fraction(pair_total, math.comb(k, 2))
        applicable = k >= threshold_k
        bound2 = Fraction(2 * alpha * n, k)
        margin2 = bound2 - tk if applicable else None
        entries.append(
            TkBoundEntry(
                k=k,
                tk=tk,
                bound1=bound1,
                holds1=tk <= bound1,
                margin1=bound1 - tk,
                bound2_applicable=applicable,
                bound2=bound2,
                holds2=(tk < bound2) if applicable else True,
                margin2=margin2,
            )
        )
    return TkBoundsReport(alpha=alpha, n=n, threshold_k=threshold_k, entries=tuple(entries))


@dataclass(frozen=True)
class DiracAuditReport:
    """Proof-step audit of the degree lower bound argument.

    g is the maximum curve degree; h the maximum number of curves adjacent
    to every vertex of some alpha-subset of vertices.  The hypothesis fails
    exactly when some alpha-subset covers all n curves.  When it holds, the
    two proof steps g >= h and C(g, alpha)*h >= n-1 are checked exactly.
    """

    alpha: int
    n: int
    g: int
    h: int
    hypothesis_holds: bool
    witness_subset: tuple[int, ...]
    g_ge_h: bool
    g_margin: int
    binom_ineq_holds: bool
    binom_margin: int


def _best_subset_coverage(
    s: IncidenceStructure, budget: int
) -> tuple[int, tuple[int, ...]]:
    """Max curves adjacent to all vertices of an alpha-subset, with the
    lexicographically least witness subset (vertex indices)."""
    vcount = len(s.vertices)
    if vcount < s.alpha:
        # Valid structures always carry at least alpha vertices.
        raise ValueError(f"structure has {vcount} vertices, fewer than alpha={s.alpha}")
    if s.alpha == 1:
        best, witness = -1, (0,)
        for index, vertex in enumerate(s.vertices):
            if len(vertex) > best:
                best, witness = len(vertex), (index,)
        return best, witness
    subsets = math.comb(vcount, s.alpha)
    if subsets > budget:
        raise SizeLimitExceeded(subsets, budget)
    sets = [frozenset(v) for v in s.vertices]
    best, witness = -1, tuple(range(s.alpha))
    for combo in combinations(range(vcount), s.alpha):
        common = sets[combo[0]]
        for index in combo[1:]:
            common = common & sets[index]
            if len(common) <= best:
                break
        if len(common) > best:
            best, witness = len(common), combo
    return best, witness


def audit_dirac(s: IncidenceStructure, budget: int = DEFAULT_SUBSET_BUDGET) -> DiracAuditReport:
    report = validate(s)
    if not report.valid:
        raise InvalidStructureError(report)

    degrees = [0] * s.n
    for vertex in s.vertices:
        for cid in vertex:
            degrees[cid] += 1
    g = max(degrees)

    h, witness = _best_subset_coverage(s, budget)
    hypothesis_holds = h < s.n
    binom = math.comb(g, s.alpha) * h
    return DiracAuditReport(
        alpha=s.alpha,
        n=s.n,
        g=g,
        h=h,
        hypothesis_holds=hypothesis_holds,
        witness_subset=witness,
        g_ge_h=g >= h,
        g_margin=g - h,
        binom_ineq_holds=binom >= s.n - 1,
        binom_margin=binom - (s.n - 1),
    )


@dataclass(frozen=True)
class PairIdentityReport:
    """Sum of the pair-minimum-degree profile against the pair count."""

    holds: bool
    observed: int
    expected: int


def audit_pair_identity(stats: Stats, n: int) -> PairIdentityReport:
    expected = math.comb(n, 2)
    observed = stats.ld_total()
    return PairIdentityReport(holds=observed == expected, observed=observed, expected=expected)


@dataclass(frozen=True)
class DyadicProfileParams:
    """Window parameters for the dyadic profile of the l_d sums.

    gamma is a rational in [0, 1); v a non-negative integer.  The window is
    [2^v * floor(n^gamma), floor(n / 2^v)] with n^gamma computed as an exact
    integer root.  Derivations from exponent triples (delta, epsilon, zeta)
    use gamma = max(delta/epsilon, zeta); the exponents themselves drive no
    assertion and are kept only as documentation of where gamma came from.
    """

    gamma: Fraction
    v: int

    def __post_init__(self):
        gamma = Fraction(self.gamma)
        object.__setattr__(self, "gamma", gamma)
        if not (0 <= gamma < 1):
            raise ValueError(f"gamma must lie in [0, 1), got {gamma}")
        if self.v < 0:
            raise ValueError(f"v must be >= 0, got {self.v}")

    @classmethod
    def from_exponents(cls, delta, epsilon, zeta, v: int) -> "DyadicProfileParams":
        delta, epsilon, zeta = Fraction(delta), Fraction(epsilon), Fraction(zeta)
        if epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if not (0 <= delta < epsilon / 2):
            raise ValueError("need 0 <= delta < epsilon/2")
        if not (0 <= zeta < Fraction(1, 2)):
            raise ValueError("need 0 <= zeta < 1/2")
        return cls(gamma=max(delta / epsilon, zeta), v=v)


@dataclass(frozen=True)
class DyadicWindowReport:
    lower: int
    upper: int
    empty_window: bool
    below: int
    inside: int
    above: int
    total: int


def integer_power_root(n: int, exponent: Fraction) -> int:
    """floor(n^(a/b)) for rational exponent a/b, via the exact integer
    b-th root of n^a.  Pure integer arithmetic (binary search)."""
    if n < 0:
        raise ValueError("negative base")
    a, b = exponent.numerator, exponent.denominator
    if a == 0:
        return 1
    target = n**a
    if b == 1 or target < 2:
        return target
    low, high = 1, 1 << (target.bit_length() // b + 1)
    while low < high:
        mid = (low + high + 1) // 2
        if mid**b <= target:
            low = mid
        else:
            high = mid - 1
    return low


def dyadic_profile(stats: Stats, params: DyadicProfileParams, n: int) -> DyadicWindowReport:
    """Sum the l_d profile below, inside, and above the dyadic window."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    lower = (2**params.v) * integer_power_root(n, params.gamma)
    upper = n // (2**params.v)
    empty = lower > upper
    below = inside = above = 0
    for d, count in stats.ld.items():
        if d < lower:
            below += count
        elif d > upper:
            above += count
        else:
            inside += count
    return DyadicWindowReport(
        lower=lower,
        upper=upper,
        empty_window=empty,
        below=below,
        inside=inside,
        above=above,
        total=below + inside + above,
    )


BRANCH_COMPLETE_PENCIL = "IsCompletePencil"
BRANCH_LARGE_COVERAGE = "LargeCoverage"
BRANCH_MANY_VERTICES = "ManyVertices"


@dataclass(frozen=True)
class DichotomyReport:
    """Which escape hatch a structure takes: complete bipartite pattern,
    an alpha-subset of vertices covering a large fraction of curves, or
    simply many vertices.  All supporting data is reported regardless of
    the decisive branch."""

    branch: str
    alpha: int
    n: int
    coverage: int
    witness_subset: tuple[int, ...]
    fraction: Fraction
    vertex_count: int
    vertex_ratio: Fraction


def dichotomy_report(
    s: IncidenceStructure,
    fraction,
    budget: int = DEFAULT_SUBSET_BUDGET,
) -> DichotomyReport:
    fraction = Fraction(fraction)
    if not (0 < fraction <= 1):
        raise ValueError(f"fraction must lie in (0, 1], got {fraction}")
    report = validate(s)
    if not report.valid:
        raise InvalidStructureError(report)

    coverage, witness = _best_subset_coverage(s, budget)
    vertex_count = len(s.vertices)

    complete = vertex_count == s.alpha and all(len(v) == s.n for v in s.vertices)
    if complete:
        branch = BRANCH_COMPLETE_PENCIL
    elif coverage >= fraction * s.n:
        branch = BRANCH_LARGE_COVERAGE
    else:
        branch = BRANCH_MANY_VERTICES
    return DichotomyReport(
        branch=branch,
        alpha=s.alpha,
        n=s.n,
        coverage=coverage,
        witness_subset=witness,
        fraction=fraction,
        vertex_count=vertex_count,
        vertex_ratio=Fraction(vertex_count, s.n),
    )
