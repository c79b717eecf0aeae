"""Span test for entangled subspaces and the UBB certificate built on it.

For a spanning set ``{|psi_i>}`` written as coefficient matrices across a
cut, a combination ``sum_i x_i |psi_i>`` is a product vector exactly when
all 2x2 minors of ``sum_i x_i A_i`` vanish.  Substituting ``x_ij = x_i x_j``
turns each minor into a linear form whose coefficient matrix is a
product-forming matrix; the antisymmetric symmetrization matrices encode
``x_ij = x_ji``.  If together they span all ``n x n`` matrices the linear
system has only the zero solution, so no product vector lies in the span.

The test is sufficient only.  A span short of ``n^2`` is reported as
inconclusive, never as "extendible".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Sequence

from .exactla import ExactMatrix, ONE, ZERO, column_stack, kernel_basis, rank
from .states import (
    Grouping,
    PureState,
    StateSet,
    flatten,
    is_biseparable,
    is_mutually_orthogonal,
    tripartite_groupings,
)

GES = "genuinely entangled subspace"
NOT_GES = "not genuinely entangled"
INCONCLUSIVE = "inconclusive"
UBB = "UBB"
NOT_UBB = "not UBB"


class NotOrthogonalError(ValueError):
    def __init__(self, pair: tuple[int, int], labels: tuple[str, str] = ("", "")):
        self.pair = pair
        super().__init__(f"states {pair[0]} ({labels[0]}) and {pair[1]} ({labels[1]}) are not orthogonal")


class NotBiseparableError(ValueError):
    def __init__(self, index: int, label: str = ""):
        self.index = index
        super().__init__(f"state {index} ({label}) is not a product across any bipartition")


def product_forming_matrices(states: StateSet | Sequence[PureState], g: Grouping) -> list[ExactMatrix]:
    """All ``n x n`` matrices of 2x2 coefficient minors.

    Entry ``(i, j)`` of the matrix for ``(k, p | l, r)`` is
    ``a_kl^(i) a_pr^(j) - a_kr^(i) a_pl^(j)``.  Ordered lexicographically in
    ``(k, p, l, r)`` with ``k < p`` and ``l < r``.
    """
    states = list(states)
    if not states:
        raise ValueError("need at least one state")
    flats = [flatten(s, g) for s in states]
    n = len(states)
    dl, dr = flats[0].shape
    a = [f.entries for f in flats]
    out = []
    for k, p in combinations(range(dl), 2):
        for l, r in combinations(range(dr), 2):
            kl, kr, pl, pr = k * dr + l, k * dr + r, p * dr + l, p * dr + r
            entries = []
            for i in range(n):
                ai = a[i]
                x_kl, x_kr = ai[kl], ai[kr]
                for j in range(n):
                    aj = a[j]
                    v = ZERO
                    if x_kl and aj[pr]:
                        v = x_kl * aj[pr]
                    if x_kr and aj[pl]:
                        v = v - x_kr * aj[pl]
                    entries.append(v)
            out.append(ExactMatrix._from_scalars(n, n, tuple(entries)))
    return out


def symmetrization_matrices(n: int) -> list[ExactMatrix]:
    """For each ``s < t``: ``+1`` at ``(s, t)`` and ``-1`` at ``(t, s)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    for s, t in combinations(range(n), 2):
        e = [ZERO] * (n * n)
        e[s * n + t] = ONE
        e[t * n + s] = -ONE
        out.append(ExactMatrix._from_scalars(n, n, tuple(e)))
    return out


@dataclass(frozen=True)
class SpanCertificate:
    grouping: Grouping
    n: int
    lambda_count: int
    gamma_count: int
    span_dim: int
    stacked_map: ExactMatrix = field(repr=False, compare=False)

    @property
    def full(self) -> bool:
        return self.span_dim == self.n * self.n

    def to_dict(self, include_map: bool = False) -> dict:
        out = {
            "grouping": self.grouping.name,
            "n": self.n,
            "lambda_count": self.lambda_count,
            "gamma_count": self.gamma_count,
            "span_dim": self.span_dim,
            "target": self.n * self.n,
            "full": self.full,
        }
        if include_map:
            from .states import scalar_to_json

            out["stacked_map"] = [
                [scalar_to_json(c) for c in self.stacked_map.row(i)] for i in range(self.stacked_map.rows)
            ]
        return out


def span_dimension(states: StateSet | Sequence[PureState], g: Grouping) -> SpanCertificate:
    """Dimension of the span of the product-forming and symmetrization matrices."""
    states = list(states)
    lams = product_forming_matrices(states, g)
    gams = symmetrization_matrices(len(states))
    stacked = column_stack(lams + gams)
    return SpanCertificate(
        grouping=g,
        n=len(states),
        lambda_count=len(lams),
        gamma_count=len(gams),
        span_dim=rank(stacked),
        stacked_map=stacked,
    )


def expected_lambda_count(dl: int, dr: int) -> int:
    return comb(dl, 2) * comb(dr, 2)


@dataclass(frozen=True)
class GesReport:
    certificates: tuple[SpanCertificate, ...]
    verdict: str
    witness: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == GES

    def to_dict(self, include_map: bool = False) -> dict:
        return {
            "property": "genuinely entangled subspace",
            "verdict": self.verdict,
            "pass": self.passed,
            "witness": self.witness,
            "certificates": [c.to_dict(include_map) for c in self.certificates],
        }


def certify_ges(basis: StateSet | Sequence[PureState], groupings: Sequence[Grouping] | None = None) -> GesReport:
    """Run the span test across every bipartition of a tripartite system.

    A basis vector that is already a product across some cut makes the
    verdict negative outright; otherwise a short span is inconclusive.
    """
    basis = list(basis)
    if not basis:
        raise ValueError("empty basis")
    system = basis[0].system
    if groupings is None:
        if system.parties != 3:
            raise ValueError("certify_ges expects a tripartite system")
        groupings = tripartite_groupings()
    certs = tuple(span_dimension(basis, g) for g in groupings)
    if all(c.full for c in certs):
        return GesReport(certs, GES)
    for i, s in enumerate(basis):
        g = is_biseparable(s)
        if g is not None:
            return GesReport(certs, NOT_GES, f"basis state {i} ({s.label}) is a product across {g.name}")
    return GesReport(certs, INCONCLUSIVE)


def orthogonal_complement(states: StateSet | Sequence[PureState]) -> list[PureState]:
    """Exact basis of the orthogonal complement (kernel of the conjugated coefficient rows)."""
    ss = states if isinstance(states, StateSet) else StateSet.of(list(states))
    coeffs = ss.coefficient_matrix().conj()
    out = []
    for k, v in enumerate(kernel_basis(coeffs)):
        out.append(PureState.from_vector(ss.system, v, f"complement_{k}"))
    return out


@dataclass(frozen=True)
class UbbReport:
    verdict: str
    complement: tuple[PureState, ...]
    complement_source: str
    ges: GesReport | None
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == UBB

    @property
    def complement_dim(self) -> int:
        return len(self.complement)

    def to_dict(self, include_map: bool = False) -> dict:
        return {
            "property": "unextendible biseparable basis",
            "verdict": self.verdict,
            "pass": self.passed,
            "reason": self.reason,
            "complement_source": self.complement_source,
            "complement_dim": self.complement_dim,
            "ges": self.ges.to_dict(include_map) if self.ges else None,
        }


def certify_ubb(
    candidate: StateSet | Sequence[PureState],
    complement: Sequence[PureState] | None = None,
) -> UbbReport:
    """Check that an orthogonal biseparable set has a genuinely entangled complement.

    ``complement`` lets a caller supply its own spanning set for the
    complement (e.g. an omega set); it is validated against the candidate
    before use.  Otherwise the complement is the exact kernel.
    """
    candidate = list(candidate)
    ok, pair = is_mutually_orthogonal(candidate)
    if not ok:
        raise NotOrthogonalError(pair, (candidate[pair[0]].label, candidate[pair[1]].label))
    for i, s in enumerate(candidate):
        if is_biseparable(s) is None:
            raise NotBiseparableError(i, s.label)
    system = candidate[0].system
    expected_dim = system.total_dim - len(candidate)
    if complement is None:
        comp = orthogonal_complement(candidate)
        source = "kernel"
    else:
        comp = list(complement)
        source = "supplied"
        _validate_complement(candidate, comp, expected_dim)
    if not comp:
        return UbbReport(NOT_UBB, (), source, None, "orthogonal complement is empty (the set is complete)")
    ges = certify_ges(comp)
    if ges.verdict == GES:
        return UbbReport(UBB, tuple(comp), source, ges)
    if ges.verdict == NOT_GES:
        return UbbReport(NOT_UBB, tuple(comp), source, ges, ges.witness)
    return UbbReport(INCONCLUSIVE, tuple(comp), source, ges, "span test short of n^2 in some bipartition")


def _validate_complement(candidate: list[PureState], comp: list[PureState], expected_dim: int):
    from .states import inner_product

    if len(comp) != expected_dim:
        raise ValueError(f"supplied complement has {len(comp)} states, expected {expected_dim}")
    for i, c in enumerate(comp):
        for j, s in enumerate(candidate):
            if inner_product(s, c):
                raise ValueError(f"supplied complement state {i} is not orthogonal to candidate {j}")
    if comp and rank(StateSet.of(comp).coefficient_matrix()) != len(comp):
        raise ValueError("supplied complement states are linearly dependent")
