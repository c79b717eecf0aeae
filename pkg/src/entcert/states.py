"""Unnormalized multipartite pure states and their bipartite views.

States carry exact coefficients on the computational basis of a
:class:`PartySystem`.  Nothing here normalizes: every certificate built on
top of these objects is invariant under rescaling individual states, and
keeping integer coefficients avoids irrational norms.

Composite indices over a group of parties are big-endian in increasing
party order, so for a 3x3x3 system the ``BC`` index of ``|b c>`` is
``3*b + c``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import prod
from typing import Iterable, Mapping, Sequence

from .exactla import ONE, ZERO, ExactMatrix, ExactScalar, as_scalar, rank

PARTY_NAMES = "ABCDEFGH"


@dataclass(frozen=True)
class PartySystem:
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims:
            raise ValueError("a system needs at least one party")
        if any(d < 2 for d in dims):
            raise ValueError(f"local dimensions must be >= 2, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def parties(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        return prod(self.dims)

    def group_dim(self, group: Sequence[int]) -> int:
        return prod(self.dims[p] for p in group)

    def basis(self) -> list[tuple[int, ...]]:
        """All multi-indices in lexicographic (big-endian) order."""
        return list(product(*(range(d) for d in self.dims)))


def composite_index(digits: Sequence[int], dims: Sequence[int]) -> int:
    k = 0
    for x, d in zip(digits, dims):
        k = k * d + x
    return k


def split_index(k: int, dims: Sequence[int]) -> tuple[int, ...]:
    out = []
    for d in reversed(dims):
        k, x = divmod(k, d)
        out.append(x)
    return tuple(reversed(out))


@dataclass(frozen=True)
class Grouping:
    """A bipartition of the parties into ``left | right``."""

    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self):
        left = tuple(sorted(set(self.left)))
        right = tuple(sorted(set(self.right)))
        if not left or not right:
            raise ValueError("both sides of a bipartition must be nonempty")
        if set(left) & set(right):
            raise ValueError(f"sides overlap: {left} | {right}")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @classmethod
    def of(cls, left: Iterable[int], n_parties: int) -> Grouping:
        left = tuple(left)
        return cls(left, tuple(p for p in range(n_parties) if p not in left))

    def check(self, system: PartySystem):
        if sorted(self.left + self.right) != list(range(system.parties)):
            raise ValueError(f"grouping {self.name} does not cover a {system.parties}-party system")

    def side(self, which: str) -> tuple[int, ...]:
        if which == "left":
            return self.left
        if which == "right":
            return self.right
        raise ValueError(f"side must be 'left' or 'right', got {which!r}")

    def swapped(self) -> Grouping:
        return Grouping(self.right, self.left)

    @property
    def name(self) -> str:
        n = len(self.left) + len(self.right)
        return f"{_side_name(self.left, self.right, n)}|{_side_name(self.right, self.left, n)}"

    def __str__(self):
        return self.name


def _side_name(side: tuple[int, ...], other: tuple[int, ...], n: int) -> str:
    # opposite a single party, list the rest cyclically: B|CA, CA|B
    if len(other) == 1 and len(side) > 1:
        side = tuple((other[0] + k) % n for k in range(1, n))
    return "".join(PARTY_NAMES[p] for p in side)


def tripartite_groupings() -> list[Grouping]:
    """``A|BC``, ``B|CA``, ``C|AB`` in that order."""
    return [Grouping.of((p,), 3) for p in range(3)]


def all_groupings(n_parties: int) -> list[Grouping]:
    """Every unordered bipartition once, smaller sides on the left first."""
    out = []
    seen = set()
    for size in range(1, n_parties):
        for left in combinations(range(n_parties), size):
            right = tuple(p for p in range(n_parties) if p not in left)
            key = frozenset([left, right])
            if key in seen:
                continue
            seen.add(key)
            out.append(Grouping(left, right))
    return out


class PureState:
    """Unnormalized pure state as a sparse coefficient map."""

    __slots__ = ("system", "coeffs", "label")

    def __init__(self, system: PartySystem, coeffs: Mapping, label: str = ""):
        if not isinstance(system, PartySystem):
            system = PartySystem(tuple(system))
        clean: dict[tuple[int, ...], ExactScalar] = {}
        for idx, c in coeffs.items():
            idx = tuple(int(i) for i in idx)
            if len(idx) != system.parties:
                raise ValueError(f"index {idx} has wrong length for dims {system.dims}")
            if any(not 0 <= i < d for i, d in zip(idx, system.dims)):
                raise ValueError(f"index {idx} out of range for dims {system.dims}")
            c = as_scalar(c)
            if c:
                clean[idx] = clean.get(idx, ZERO) + c
                if not clean[idx]:
                    del clean[idx]
        if not clean:
            raise ValueError("a pure state needs at least one nonzero coefficient")
        self.system = system
        self.coeffs = dict(sorted(clean.items()))
        self.label = label

    # -- construction helpers --------------------------------------------
    @classmethod
    def basis_state(cls, dims: Sequence[int], index: Sequence[int] | str, label: str = "") -> PureState:
        if isinstance(index, str):
            index = [int(ch) for ch in index]
        return cls(PartySystem(tuple(dims)), {tuple(index): ONE}, label)

    @classmethod
    def from_vector(cls, system: PartySystem, vector: Sequence, label: str = "") -> PureState:
        if len(vector) != system.total_dim:
            raise ValueError("vector length does not match the system dimension")
        basis = system.basis()
        return cls(system, {basis[k]: v for k, v in enumerate(vector) if v}, label)

    @classmethod
    def product_state(cls, locals_: Sequence[Sequence], label: str = "") -> PureState:
        """Tensor product of local vectors (one coefficient list per party)."""
        dims = tuple(len(v) for v in locals_)
        coeffs = {}
        for idx in product(*(range(d) for d in dims)):
            c = ONE
            for p, i in enumerate(idx):
                c = c * as_scalar(locals_[p][i])
                if not c:
                    break
            if c:
                coeffs[idx] = c
        return cls(PartySystem(dims), coeffs, label)

    def with_label(self, label: str) -> PureState:
        s = object.__new__(PureState)
        s.system, s.coeffs, s.label = self.system, self.coeffs, label
        return s

    # -- algebra ----------------------------------------------------------
    def _combine(self, other: PureState, sign: int) -> PureState:
        if other.system != self.system:
            raise ValueError("cannot combine states of different systems")
        coeffs = dict(self.coeffs)
        for idx, c in other.coeffs.items():
            coeffs[idx] = coeffs.get(idx, ZERO) + (c if sign > 0 else -c)
        return PureState(self.system, coeffs)

    def __add__(self, other: PureState) -> PureState:
        return self._combine(other, 1)

    def __sub__(self, other: PureState) -> PureState:
        return self._combine(other, -1)

    def __mul__(self, s) -> PureState:
        s = as_scalar(s)
        return PureState(self.system, {k: s * v for k, v in self.coeffs.items()}, self.label)

    __rmul__ = __mul__

    def __neg__(self) -> PureState:
        return self * -1

    def __eq__(self, other):
        if not isinstance(other, PureState):
            return NotImplemented
        return self.system == other.system and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.system, tuple(self.coeffs.items())))

    def __repr__(self):
        terms = " ".join(
            f"{'+' if i and (c.re > 0 or (not c.re and c.im > 0)) else ''}{_fmt_coeff(c)}|{''.join(map(str, k))}>"
            for i, (k, c) in enumerate(self.coeffs.items())
        )
        tag = f"{self.label}: " if self.label else ""
        return f"PureState({tag}{terms})"

    def vector(self) -> tuple:
        """Dense coefficient vector in big-endian basis order."""
        out = [ZERO] * self.system.total_dim
        dims = self.system.dims
        for idx, c in self.coeffs.items():
            out[composite_index(idx, dims)] = c
        return tuple(out)

    def norm2(self) -> ExactScalar:
        return sum((c.abs2() for c in self.coeffs.values()), ZERO)

    def overlap_with_stopper(self) -> ExactScalar:
        """``<tau|self>`` for the all-ones product state."""
        return sum(self.coeffs.values(), ZERO)


def _fmt_coeff(c: ExactScalar) -> str:
    if c == ONE:
        return ""
    if c == -ONE:
        return "-"
    s = str(c)
    return f"({s})" if c.im else s


@dataclass(frozen=True)
class StateSet:
    system: PartySystem
    states: tuple[PureState, ...]

    def __post_init__(self):
        states = tuple(self.states)
        for s in states:
            if s.system != self.system:
                raise ValueError(f"state {s.label!r} lives on {s.system.dims}, set is {self.system.dims}")
        object.__setattr__(self, "states", states)

    @classmethod
    def of(cls, states: Sequence[PureState]) -> StateSet:
        if not states:
            raise ValueError("cannot infer the system of an empty state list")
        return cls(states[0].system, tuple(states))

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __getitem__(self, k):
        return self.states[k]

    @property
    def labels(self) -> list[str]:
        return [s.label for s in self.states]

    def coefficient_matrix(self) -> ExactMatrix:
        """Rows are the dense coefficient vectors of the states."""
        n, dim = len(self.states), self.system.total_dim
        return ExactMatrix._from_scalars(n, dim, tuple(c for s in self.states for c in s.vector()))


# ---------------------------------------------------------------------------
# operations

def inner_product(a: PureState, b: PureState) -> ExactScalar:
    """``<a|b>``, antilinear in ``a``."""
    if a.system != b.system:
        raise ValueError("inner product of states on different systems")
    small, big = (a.coeffs, b.coeffs) if len(a.coeffs) <= len(b.coeffs) else (b.coeffs, a.coeffs)
    acc = ZERO
    for idx in small:
        if idx in big:
            acc = acc + a.coeffs[idx].conj() * b.coeffs[idx]
    return acc


def flatten(s: PureState, g: Grouping) -> ExactMatrix:
    """Coefficient matrix ``a_kl`` with ``k`` over ``g.left`` and ``l`` over ``g.right``."""
    g.check(s.system)
    dims = s.system.dims
    ldims = [dims[p] for p in g.left]
    rdims = [dims[p] for p in g.right]
    dl, dr = prod(ldims), prod(rdims)
    out = [ZERO] * (dl * dr)
    for idx, c in s.coeffs.items():
        k = composite_index([idx[p] for p in g.left], ldims)
        l = composite_index([idx[p] for p in g.right], rdims)
        out[k * dr + l] = c
    return ExactMatrix._from_scalars(dl, dr, tuple(out))


def unflatten(m: ExactMatrix, system: PartySystem, g: Grouping, label: str = "") -> PureState:
    """Inverse of :func:`flatten`."""
    g.check(system)
    ldims = [system.dims[p] for p in g.left]
    rdims = [system.dims[p] for p in g.right]
    if m.shape != (prod(ldims), prod(rdims)):
        raise ValueError(f"matrix shape {m.shape} does not match grouping {g.name}")
    coeffs = {}
    for k in range(m.rows):
        kd = split_index(k, ldims)
        for l in range(m.cols):
            c = m.entries[k * m.cols + l]
            if not c:
                continue
            ld = split_index(l, rdims)
            idx = [0] * system.parties
            for p, x in zip(g.left, kd):
                idx[p] = x
            for p, x in zip(g.right, ld):
                idx[p] = x
            coeffs[tuple(idx)] = c
    return PureState(system, coeffs, label)


def cyclic_rotate(s: PureState, g_idx: int) -> PureState:
    """Cyclic party rotation: ``g=1`` sends ``|a b c>`` to ``|c a b>``, ``g=2`` to ``|b c a>``."""
    dims = s.system.dims
    if len(dims) != 3 or len(set(dims)) != 1:
        raise ValueError("cyclic rotation needs a tripartite system with equal local dimensions")
    g = g_idx % 3
    if g == 0:
        return s
    if g == 1:
        coeffs = {(c, a, b): v for (a, b, c), v in s.coeffs.items()}
    else:
        coeffs = {(b, c, a): v for (a, b, c), v in s.coeffs.items()}
    return PureState(s.system, coeffs, s.label)


def is_biseparable(s: PureState) -> Grouping | None:
    """First bipartition across which ``s`` is a product, or ``None``."""
    for g in all_groupings(s.system.parties):
        if rank(flatten(s, g)) == 1:
            return g
    return None


def _stacked_reduced_factor(states: Sequence[PureState], kept: tuple[int, ...]) -> ExactMatrix:
    """``[A_1 | A_2 | ...]`` with ``A_i = flatten(state_i, kept | rest)``.

    ``Tr_rest(sum |s_i><s_i|) = B B^dagger`` for this ``B``, so both share a rank.
    """
    system = states[0].system
    g = Grouping.of(kept, system.parties)
    blocks = [flatten(s, g) for s in states]
    rows = blocks[0].rows
    entries = []
    for k in range(rows):
        for b in blocks:
            entries.extend(b.row(k))
    return ExactMatrix._from_scalars(rows, sum(b.cols for b in blocks), tuple(entries))


def reduced_rank(states: Sequence[PureState], kept: Sequence[int]) -> int:
    """Rank of ``Tr_{not kept}(sum_i |s_i><s_i|)``."""
    if not states:
        raise ValueError("need at least one state")
    _check_shared(states)
    return rank(_stacked_reduced_factor(states, tuple(kept)))


def marginal_rank(states: Sequence[PureState], traced_party: int) -> int:
    """Rank of ``Tr_alpha(sum_i |s_i><s_i|)`` where alpha is ``traced_party``."""
    if not states:
        raise ValueError("need at least one state")
    n = states[0].system.parties
    if not 0 <= traced_party < n:
        raise ValueError(f"party {traced_party} out of range")
    kept = tuple(p for p in range(n) if p != traced_party)
    return reduced_rank(states, kept)


def density_operator(states: Sequence[PureState]) -> ExactMatrix:
    """``sum_i |s_i><s_i|`` as a dense matrix."""
    _check_shared(states)
    dim = states[0].system.total_dim
    out = [[ZERO] * dim for _ in range(dim)]
    for s in states:
        items = [(composite_index(k, s.system.dims), c) for k, c in s.coeffs.items()]
        for a, ca in items:
            for b, cb in items:
                out[a][b] = out[a][b] + ca * cb.conj()
    return ExactMatrix.from_rows(out)


def partial_trace(rho: ExactMatrix, system: PartySystem, traced: Sequence[int]) -> ExactMatrix:
    """Trace out the parties in ``traced`` by direct index contraction."""
    dims = system.dims
    if rho.shape != (system.total_dim, system.total_dim):
        raise ValueError("operator does not act on the full system")
    traced = sorted(set(traced))
    kept = [p for p in range(system.parties) if p not in traced]
    kdims = [dims[p] for p in kept]
    dk = prod(kdims)
    out = [[ZERO] * dk for _ in range(dk)]
    basis = system.basis()
    for a, ia in enumerate(basis):
        for b, ib in enumerate(basis):
            if any(ia[p] != ib[p] for p in traced):
                continue
            v = rho.entries[a * rho.cols + b]
            if not v:
                continue
            ka = composite_index([ia[p] for p in kept], kdims)
            kb = composite_index([ib[p] for p in kept], kdims)
            out[ka][kb] = out[ka][kb] + v
    return ExactMatrix.from_rows(out)


def is_mutually_orthogonal(states: StateSet | Sequence[PureState]) -> tuple[bool, tuple[int, int] | None]:
    """``(True, None)`` or ``(False, (i, j))`` for the first non-orthogonal pair."""
    states = list(states)
    for i in range(len(states)):
        for j in range(i + 1, len(states)):
            if inner_product(states[i], states[j]):
                return False, (i, j)
    return True, None


def _check_shared(states: Sequence[PureState]):
    sys0 = states[0].system
    for s in states[1:]:
        if s.system != sys0:
            raise ValueError("states live on different systems")


# ---------------------------------------------------------------------------
# JSON state-set format

def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ValueError(f"rational must be a 'p/q' string, got {text!r}")
    return Fraction(text) if isinstance(text, int) else Fraction(text.strip())


def scalar_to_json(c: ExactScalar) -> dict:
    out = {"re": format_rational(c.re)}
    if c.im:
        out["im"] = format_rational(c.im)
    return out


def scalar_from_json(obj) -> ExactScalar:
    if isinstance(obj, str):
        return ExactScalar(parse_rational(obj))
    if not isinstance(obj, dict) or "re" not in obj:
        raise ValueError(f"expected a rational string or {{'re', 'im'}} object, got {obj!r}")
    return ExactScalar(parse_rational(obj["re"]), parse_rational(obj.get("im", "0")))


def state_set_to_dict(states: StateSet) -> dict:
    return {
        "dims": list(states.system.dims),
        "states": [
            {
                "label": s.label,
                "terms": [
                    {"index": list(idx), **scalar_to_json(c)} for idx, c in s.coeffs.items()
                ],
            }
            for s in states
        ],
    }


class StateFormatError(ValueError):
    """Malformed state-set document; the message names the offending location."""


def state_set_from_dict(doc) -> StateSet:
    if not isinstance(doc, dict):
        raise StateFormatError("$: expected an object")
    try:
        system = PartySystem(tuple(doc["dims"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise StateFormatError(f"$.dims: {exc}") from exc
    raw_states = doc.get("states")
    if not isinstance(raw_states, list) or not raw_states:
        raise StateFormatError("$.states: expected a nonempty list")
    out = []
    for i, st in enumerate(raw_states):
        where = f"$.states[{i}]"
        if not isinstance(st, dict) or not isinstance(st.get("terms"), list):
            raise StateFormatError(f"{where}: expected an object with a 'terms' list")
        coeffs = {}
        for t, term in enumerate(st["terms"]):
            try:
                idx = tuple(int(x) for x in term["index"])
                c = scalar_from_json(term)
            except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
                raise StateFormatError(f"{where}.terms[{t}]: {exc}") from exc
            if idx in coeffs:
                raise StateFormatError(f"{where}.terms[{t}]: duplicate index {list(idx)}")
            coeffs[idx] = c
        try:
            out.append(PureState(system, coeffs, str(st.get("label", ""))))
        except ValueError as exc:
            raise StateFormatError(f"{where}: {exc}") from exc
    return StateSet(system, tuple(out))


def dumps_state_set(states: StateSet) -> str:
    return json.dumps(state_set_to_dict(states), indent=2) + "\n"


def loads_state_set(text: str) -> StateSet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFormatError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return state_set_from_dict(doc)
