"""Protocol trees for LOCC discrimination restricted to one bipartition.

A node names the parties that act jointly and lists Kraus operators on
their composite space.  Walking the tree applies each operator (tensored
with the identity elsewhere) to the surviving states; states mapped to zero
are eliminated.  A leaf is accepted when one of the two sides of the cut
sees reduced operators with pairwise orthogonal supports, since a single
projective measurement on that side then tells the survivors apart.  That
leaf test is sufficient, not necessary.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence, Union

from .exactla import ZERO, ExactMatrix
from .states import (
    Grouping,
    PureState,
    StateSet,
    flatten,
    inner_product,
    scalar_from_json,
    scalar_to_json,
    unflatten,
)

LEAF = "leaf"


class ProtocolError(ValueError):
    pass


@dataclass(frozen=True)
class Outcome:
    kraus: ExactMatrix
    child: "ProtocolNode | None" = None
    label: str = ""


@dataclass(frozen=True)
class ProtocolNode:
    group: tuple[int, ...]
    outcomes: tuple[Outcome, ...]
    label: str = ""

    def completeness_defect(self) -> ExactMatrix:
        """``sum_k K_k^dagger K_k - I`` (zero for a valid node)."""
        d = self.outcomes[0].kraus.cols
        total = ExactMatrix.zeros(d, d)
        for o in self.outcomes:
            total = total + o.kraus.H @ o.kraus
        return total - ExactMatrix.identity(d)


ProtocolTree = Union[ProtocolNode, None]


# -- JSON -------------------------------------------------------------------

def _matrix_to_json(m: ExactMatrix) -> list:
    out = []
    for i in range(m.rows):
        row = []
        for c in m.row(i):
            enc = scalar_to_json(c)
            row.append(enc["re"] if len(enc) == 1 else enc)
        out.append(row)
    return out


def _matrix_from_json(obj, where: str) -> ExactMatrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise ProtocolError(f"{where}: kraus must be a nonempty list of rows")
    try:
        return ExactMatrix.from_rows([[scalar_from_json(c) for c in r] for r in obj])
    except (ValueError, ZeroDivisionError) as exc:
        raise ProtocolError(f"{where}: {exc}") from exc


def tree_to_dict(tree: ProtocolTree):
    if tree is None:
        return LEAF
    out = {"group": list(tree.group)}
    if tree.label:
        out["label"] = tree.label
    out["outcomes"] = []
    for o in tree.outcomes:
        enc = {"kraus": _matrix_to_json(o.kraus), "child": tree_to_dict(o.child)}
        if o.label:
            enc["label"] = o.label
        out["outcomes"].append(enc)
    return out


def tree_from_dict(obj, where: str = "$") -> ProtocolTree:
    if obj == LEAF:
        return None
    if not isinstance(obj, dict):
        raise ProtocolError(f"{where}: expected a node object or \"leaf\"")
    group = obj.get("group")
    if not isinstance(group, list) or not group or not all(isinstance(p, int) for p in group):
        raise ProtocolError(f"{where}.group: expected a nonempty list of party indices")
    outcomes = obj.get("outcomes")
    if not isinstance(outcomes, list) or not outcomes:
        raise ProtocolError(f"{where}.outcomes: expected a nonempty list")
    parsed = []
    for k, o in enumerate(outcomes):
        w = f"{where}.outcomes[{k}]"
        if not isinstance(o, dict) or "kraus" not in o:
            raise ProtocolError(f"{w}: expected an object with 'kraus'")
        parsed.append(
            Outcome(_matrix_from_json(o["kraus"], f"{w}.kraus"), tree_from_dict(o.get("child", LEAF), f"{w}.child"), str(o.get("label", "")))
        )
    return ProtocolNode(tuple(sorted(set(group))), tuple(parsed), str(obj.get("label", "")))


def dumps_tree(tree: ProtocolTree) -> str:
    return json.dumps(tree_to_dict(tree), indent=2) + "\n"


def loads_tree(text: str) -> ProtocolTree:
    try:
        return tree_from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ProtocolError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


# -- mechanics --------------------------------------------------------------

@dataclass(frozen=True)
class NodeResult:
    survivors: tuple[tuple[int, PureState], ...]
    eliminated: tuple[int, ...]

    @property
    def states(self) -> list[PureState]:
        return [s for _, s in self.survivors]


def _group_view(system, group: Sequence[int]) -> Grouping:
    group = tuple(group)
    return Grouping.of(group, system.parties)


def apply_node(
    states: StateSet | Sequence[PureState] | Sequence[tuple[int, PureState]],
    group: Sequence[int],
    operator: ExactMatrix,
) -> NodeResult:
    """Apply ``operator (x) I`` to each state; zero images are eliminated.

    States may be passed bare or as ``(tag, state)`` pairs; bare states are
    tagged by position.  Tags are carried through to the result.
    """
    items = list(states)
    if items and not isinstance(items[0], tuple):
        items = list(enumerate(items))
    if not items:
        return NodeResult((), ())
    system = items[0][1].system
    g = _group_view(system, group)
    d = system.group_dim(g.left)
    if operator.shape != (d, d):
        raise ProtocolError(f"operator shape {operator.shape} does not match group dimension {d}")
    survivors, gone = [], []
    for tag, s in items:
        img = operator @ flatten(s, g)
        if img.is_zero():
            gone.append(tag)
        else:
            survivors.append((tag, unflatten(img, system, g, s.label)))
    return NodeResult(tuple(survivors), tuple(gone))


def _reduced_operator(s: PureState, g: Grouping) -> ExactMatrix:
    a = flatten(s, g)
    return a @ a.H


def leaf_distinguishable(
    states: Sequence[PureState], groups: Sequence[Sequence[int]]
) -> tuple[bool, tuple[int, ...] | None]:
    """Disjoint-support test on each allowed group; returns the first group that works."""
    states = list(states)
    if len(states) <= 1:
        return True, None
    system = states[0].system
    for group in groups:
        g = _group_view(system, group)
        rhos = [_reduced_operator(s, g) for s in states]
        if all((rhos[i] @ rhos[j]).is_zero() for i in range(len(rhos)) for j in range(i + 1, len(rhos))):
            return True, g.left
    return False, None


@dataclass(frozen=True)
class LeafReport:
    path: tuple[int, ...]
    survivors: tuple[str, ...]
    distinguishable: bool
    witness_group: tuple[int, ...] | None


@dataclass(frozen=True)
class DiscriminationOutcome:
    leaves: tuple[LeafReport, ...]
    eliminated: dict = field(default_factory=dict)
    orthogonality_preserved: dict = field(default_factory=dict)

    @property
    def distinguished(self) -> bool:
        return all(l.distinguishable for l in self.leaves)

    @property
    def verdict(self) -> str:
        return "distinguished" if self.distinguished else "not distinguished"

    def to_dict(self) -> dict:
        from .states import PARTY_NAMES

        def gname(grp):
            return "".join(PARTY_NAMES[p] for p in grp) if grp else None

        return {
            "property": "LOCC discrimination (protocol tree)",
            "verdict": self.verdict,
            "pass": self.distinguished,
            "leaves": [
                {
                    "path": list(l.path),
                    "survivors": list(l.survivors),
                    "distinguishable": l.distinguishable,
                    "witness_group": gname(l.witness_group),
                }
                for l in self.leaves
            ],
            "eliminated": {"/".join(map(str, k)) or "root": v for k, v in self.eliminated.items()},
            "orthogonality_preserved": {"/".join(map(str, k)): v for k, v in self.orthogonality_preserved.items()},
        }


def _pairwise_orthogonal(states: Sequence[PureState]) -> bool:
    return all(not inner_product(a, b) for i, a in enumerate(states) for b in states[i + 1:])


def verify_tree(states: StateSet | Sequence[PureState], g: Grouping, tree: ProtocolTree) -> DiscriminationOutcome:
    """Walk ``tree`` from the given states and test every leaf.

    Each node must act inside one side of ``g`` and satisfy
    ``sum K^dagger K = I`` exactly; either violation raises
    :class:`ProtocolError`.
    """
    states = list(states)
    system = states[0].system
    g.check(system)
    sides = (g.left, g.right)
    leaves: list[LeafReport] = []
    eliminated: dict = {}
    ortho: dict = {}

    def labels(items):
        return tuple(s.label or f"#{tag}" for tag, s in items)

    def walk(node: ProtocolTree, items, path):
        if node is None:
            ok, grp = leaf_distinguishable([s for _, s in items], sides)
            leaves.append(LeafReport(path, labels(items), ok, grp))
            return
        if not any(set(node.group) <= set(side) for side in sides):
            raise ProtocolError(f"node at path {list(path)} acts on {list(node.group)}, straddling {g.name}")
        if any(p >= system.parties or p < 0 for p in node.group):
            raise ProtocolError(f"node at path {list(path)} names a party outside the system")
        if not node.completeness_defect().is_zero():
            raise ProtocolError(f"node at path {list(path)} violates sum K^dagger K = I")
        for k, outcome in enumerate(node.outcomes):
            res = apply_node(items, node.group, outcome.kraus)
            child_path = path + (k,)
            eliminated[child_path] = [states[t].label or f"#{t}" for t in res.eliminated]
            ortho[child_path] = _pairwise_orthogonal(res.states)
            walk(outcome.child, list(res.survivors), child_path)

    walk(tree, list(enumerate(states)), ())
    return DiscriminationOutcome(tuple(leaves), eliminated, ortho)


def norm_bookkeeping(state: PureState, node: ProtocolNode) -> bool:
    """``sum_k ||K_k psi||^2 == ||psi||^2`` for one node."""
    total = ZERO
    for o in node.outcomes:
        res = apply_node([state], node.group, o.kraus)
        for _, s in res.survivors:
            total = total + s.norm2()
    return total == state.norm2()
