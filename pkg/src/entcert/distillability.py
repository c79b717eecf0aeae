"""Rank conditions behind one-copy distillability of the 8-dimensional GES.

The argument has three ingredients for a rank-``n`` projector on the
subspace.  Two are counting statements about arbitrary projectors and are
only documented here; the third is a finite claim about the omega-set
basis, namely that for every nonempty subset ``S`` and every traced party
``alpha``::

    rank Tr_alpha( sum_{i in S} |phi_i><phi_i| ) >= |S| + 1

That claim is checked exhaustively (255 subsets x 3 parties).  With it, the
bimarginal rank of any rank-``n`` projector exceeds ``n`` and the
projector-rank criterion applies in every cut.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Sequence

from .entanglement import GES, certify_ges
from .exactla import rank
from .states import PARTY_NAMES, Grouping, PureState, StateSet, reduced_rank, tripartite_groupings

INFERENCE_CHAIN = (
    "Any rank-n projector on the subspace has support spanned by n orthogonal vectors; "
    "building them needs at least n omega-set states, and the bimarginal rank of their "
    "mixture is bounded below by that of those states (counting facts, not machine-checked). "
    "The exhaustive table gives rank >= n+1 for every subset of n omega-set states and every "
    "traced party, so rank(P) = n < max bimarginal rank and the projector-rank criterion "
    "gives 1-distillability across every cut."
)


class DependentSubsetError(ValueError):
    pass


class DistillabilityViolation(AssertionError):
    def __init__(self, subset: tuple[int, ...], traced: int, got: int, bound: int):
        self.subset, self.traced, self.got, self.bound = subset, traced, got, bound
        super().__init__(
            f"subset {list(subset)} tracing {PARTY_NAMES[traced]}: rank {got} < bound {bound}"
        )


@dataclass(frozen=True)
class ProjectorRankReport:
    grouping: Grouping
    rank_projector: int
    rank_left: int
    rank_right: int

    @property
    def holds(self) -> bool:
        return self.rank_projector < max(self.rank_left, self.rank_right)

    def to_dict(self) -> dict:
        return {
            "grouping": self.grouping.name,
            "rank_projector": self.rank_projector,
            "rank_left_marginal": self.rank_left,
            "rank_right_marginal": self.rank_right,
            "holds": self.holds,
        }


def projector_rank_check(subset: Sequence[PureState], g: Grouping) -> ProjectorRankReport:
    """Compare the projector rank with both marginal ranks across ``g``.

    The projector onto ``span(subset)`` and ``sum |phi><phi|`` have the same
    range, and so do their marginals, so the unnormalized sum is used.
    """
    subset = list(subset)
    if not subset:
        raise ValueError("empty subset")
    n = len(subset)
    if rank(StateSet.of(subset).coefficient_matrix()) != n:
        raise DependentSubsetError("subset is linearly dependent")
    return ProjectorRankReport(g, n, reduced_rank(subset, g.left), reduced_rank(subset, g.right))


@dataclass(frozen=True)
class SubsetRankRow:
    mask: int
    subset: tuple[int, ...]
    traced: int
    rank: int
    bound: int

    @property
    def passed(self) -> bool:
        return self.rank >= self.bound


@dataclass(frozen=True)
class SubsetRankTable:
    rows: tuple[SubsetRankRow, ...]

    @property
    def violations(self) -> list[SubsetRankRow]:
        return [r for r in self.rows if not r.passed]

    @property
    def passed(self) -> bool:
        return not self.violations

    def min_rank_by_size(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for r in self.rows:
            k = len(r.subset)
            out[k] = min(out.get(k, r.rank), r.rank)
        return out

    def records(self) -> list[dict]:
        return [
            {
                "subset_bitmask": r.mask,
                "alpha": PARTY_NAMES[r.traced],
                "rank": r.rank,
                "bound": r.bound,
                "pass": r.passed,
            }
            for r in self.rows
        ]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["subset_bitmask", "alpha", "rank", "bound", "pass"], lineterminator="\n")
        w.writeheader()
        w.writerows(self.records())
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(self.records(), indent=1) + "\n"


def subset_rank_table(basis: StateSet | Sequence[PureState], strict: bool = False) -> SubsetRankTable:
    """Marginal ranks for every nonempty subset and every traced party.

    Subsets are enumerated by increasing bitmask (bit ``i`` selects state
    ``i``).  The bound is ``|S| + 1`` capped at the dimension of the
    remaining parties.  With ``strict=True`` the first violation raises.
    """
    basis = list(basis)
    system = basis[0].system
    n = len(basis)
    rows = []
    for mask in range(1, 1 << n):
        subset = tuple(i for i in range(n) if mask >> i & 1)
        chosen = [basis[i] for i in subset]
        for alpha in range(system.parties):
            kept = tuple(p for p in range(system.parties) if p != alpha)
            bound = min(len(subset) + 1, system.group_dim(kept))
            r = reduced_rank(chosen, kept)
            row = SubsetRankRow(mask, subset, alpha, r, bound)
            if strict and not row.passed:
                raise DistillabilityViolation(subset, alpha, r, bound)
            rows.append(row)
    return SubsetRankTable(tuple(rows))


@dataclass(frozen=True)
class DistillabilityReport:
    verdict: str
    table: SubsetRankTable | None
    projector_ranks: tuple[ProjectorRankReport, ...] = ()
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        out = {
            "property": "1-distillable in every bipartition",
            "verdict": self.verdict,
            "pass": self.passed,
            "reason": self.reason,
            "inference": INFERENCE_CHAIN,
            "projector_rank_full_basis": [r.to_dict() for r in self.projector_ranks],
        }
        if self.table is not None:
            out["subsets_checked"] = len(self.table.rows) // 3 if self.table.rows else 0
            out["rows_checked"] = len(self.table.rows)
            out["violations"] = [
                {"subset": list(r.subset), "alpha": PARTY_NAMES[r.traced], "rank": r.rank, "bound": r.bound}
                for r in self.table.violations
            ]
            out["min_rank_by_subset_size"] = {str(k): v for k, v in sorted(self.table.min_rank_by_size().items())}
        return out


def certify_one_distillable(basis: StateSet | Sequence[PureState]) -> DistillabilityReport:
    """Pass iff the basis spans a certified GES and the subset table has no violations."""
    basis = list(basis)
    system = basis[0].system
    if system.parties != 3:
        return DistillabilityReport("fail", None, reason="expects a tripartite system")
    ges = certify_ges(basis)
    if ges.verdict != GES:
        return DistillabilityReport("fail", None, reason=f"precondition failed: span is not a certified GES ({ges.verdict})")
    table = subset_rank_table(basis)
    lem = tuple(projector_rank_check(basis, g) for g in tripartite_groupings())
    if table.passed:
        return DistillabilityReport("pass", table, lem)
    return DistillabilityReport("fail", table, lem, reason=f"{len(table.violations)} subset rank violations")


lemma4_check = projector_rank_check
fact3_enumeration = subset_rank_table
