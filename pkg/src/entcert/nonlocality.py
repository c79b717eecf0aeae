"""Orthogonality-preserving local measurements and strong nonlocality.

For an orthogonal set and a cut ``L|R``, an operator ``E`` on one side
preserves orthogonality iff ``<psi_i|(E (x) I)|psi_j> = 0`` for all
``i != j``.  Writing ``E = sum e_kp |k><p|`` this is the linear system
``sum_kp e_kp (Pi_ij)_kp = 0`` with reduced feature matrices
``(Pi_ij)_kp = sum_l conj(a_kl^(i)) a_pl^(j)``.  The identity always
solves it; any further solution yields a nontrivial two-outcome measurement
``{(I + E*/lam)/2, (I - E*/lam)/2}`` with ``E*`` Hermitian.

The identity-only case is ``span_dim == d^2 - 1``: a side whose solution
space is one-dimensional cannot start a discrimination protocol.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactla import (
    I_UNIT,
    ONE,
    ZERO,
    ExactMatrix,
    ExactScalar,
    integer_rows,
    is_psd,
    kernel_basis,
    rank_of_integer_rows,
    unvectorize,
    vectorize,
)
from .states import Grouping, PureState, StateSet, flatten, tripartite_groupings

THRESHOLD_NOTE = (
    "a nontrivial OPLM exists iff solution_dim >= 2, i.e. span_dim <= d^2 - 2; "
    "span_dim = d^2 - 1 leaves only multiples of the identity"
)


class NoNontrivialOplmError(ValueError):
    pass


class OrthogonalityError(ValueError):
    pass


@dataclass(frozen=True)
class FeatureFamily:
    grouping: Grouping
    side: str
    dim: int
    matrices: tuple[ExactMatrix, ...] = field(repr=False)
    pairs: tuple[tuple[int, int], ...] = field(repr=False)
    states: tuple[PureState, ...] = field(repr=False, compare=False)

    @property
    def active_parties(self) -> tuple[int, ...]:
        return self.grouping.side(self.side)


def _active_view(g: Grouping, side: str) -> Grouping:
    # rows of the flattened matrix index the measured side
    return g if side == "left" else g.swapped()


def _sparse_rows(m: ExactMatrix) -> dict[int, dict[int, ExactScalar]]:
    out: dict[int, dict[int, ExactScalar]] = {}
    for idx, c in enumerate(m.entries):
        if c:
            k, l = divmod(idx, m.cols)
            out.setdefault(k, {})[l] = c
    return out


def reduced_feature_matrices(states: StateSet | Sequence[PureState], g: Grouping, side: str = "left") -> FeatureFamily:
    """``Pi_ij`` for every ordered pair ``i != j`` (both orders are kept).

    Pairs are listed lexicographically.  Each matrix is ``d x d`` with ``d``
    the composite dimension of the active side.
    """
    states = list(states)
    view = _active_view(g, side)
    flats = [flatten(s, view) for s in states]
    d = flats[0].rows
    sparse = [_sparse_rows(f) for f in flats]
    # conj(a_kl^(i)) grouped by column l for the first factor
    by_col = []
    for sp in sparse:
        cols: dict[int, list[tuple[int, ExactScalar]]] = {}
        for k, row in sp.items():
            for l, c in row.items():
                cols.setdefault(l, []).append((k, c.conj()))
        by_col.append(cols)
    mats, pairs = [], []
    n = len(states)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            acc: dict[int, ExactScalar] = {}
            ci = by_col[i]
            for p, row in sparse[j].items():
                for l, c in row.items():
                    for k, ck in ci.get(l, ()):
                        key = k * d + p
                        acc[key] = acc.get(key, ZERO) + ck * c
            entries = [ZERO] * (d * d)
            for key, v in acc.items():
                entries[key] = v
            mats.append(ExactMatrix._from_scalars(d, d, tuple(entries)))
            pairs.append((i, j))
    return FeatureFamily(g, side, d, tuple(mats), tuple(pairs), tuple(states))


@dataclass(frozen=True)
class TwoOutcomeMeasurement:
    """``{(I + E/lam)/2, (I - E/lam)/2}`` on the active side."""

    plus: ExactMatrix
    minus: ExactMatrix
    generator: ExactMatrix = field(repr=False)
    lam: Fraction = Fraction(1)

    @property
    def outcomes(self) -> tuple[ExactMatrix, ExactMatrix]:
        return (self.plus, self.minus)

    def to_dict(self) -> dict:
        from .states import scalar_to_json

        def enc(m):
            return [[scalar_to_json(c) for c in m.row(i)] for i in range(m.rows)]

        return {"lambda": f"{self.lam.numerator}/{self.lam.denominator}", "outcomes": [enc(self.plus), enc(self.minus)]}


@dataclass(frozen=True)
class OplmCertificate:
    grouping: Grouping
    side: str
    dim: int
    span_dim: int
    witness: TwoOutcomeMeasurement | None = None

    @property
    def solution_dim(self) -> int:
        return self.dim * self.dim - self.span_dim

    @property
    def nontrivial_exists(self) -> bool:
        return self.solution_dim >= 2

    @property
    def side_name(self) -> str:
        g = self.grouping
        return g.name.split("|")[0 if self.side == "left" else 1]

    def to_dict(self) -> dict:
        return {
            "grouping": self.grouping.name,
            "side": self.side,
            "active_parties": self.side_name,
            "dim": self.dim,
            "span_dim": self.span_dim,
            "solution_dim": self.solution_dim,
            "nontrivial_exists": self.nontrivial_exists,
            "witness": self.witness.to_dict() if self.witness else None,
        }


def _constraint_rows(fam: FeatureFamily) -> list[tuple]:
    return [vectorize(m) for m in fam.matrices]


def _check_identity_solves(fam: FeatureFamily):
    d = fam.dim
    for m, (i, j) in zip(fam.matrices, fam.pairs):
        tr = ZERO
        for k in range(d):
            tr = tr + m.entries[k * d + k]
        if tr:
            raise OrthogonalityError(f"input set not orthogonal: <psi_{i}|psi_{j}> = {tr}")


def oplm_solution_space(fam: FeatureFamily) -> OplmCertificate:
    """Rank of the stacked ``vec(Pi_ij)`` map and the resulting solution dimension."""
    _check_identity_solves(fam)
    rows = _constraint_rows(fam)
    if not rows:
        return OplmCertificate(fam.grouping, fam.side, fam.dim, 0)
    int_rows, is_real = integer_rows(rows)
    span = rank_of_integer_rows(int_rows, fam.dim * fam.dim, is_real)
    return OplmCertificate(fam.grouping, fam.side, fam.dim, span)


def solution_operators(fam: FeatureFamily) -> list[ExactMatrix]:
    """Basis of ``{E : sum_kp e_kp (Pi_ij)_kp = 0 for all pairs}``."""
    d = fam.dim
    if not fam.matrices:
        return [unvectorize([ONE if t == k else ZERO for t in range(d * d)], d, d) for k in range(d * d)]
    rows = _constraint_rows(fam)
    m = ExactMatrix._from_scalars(len(rows), d * d, tuple(c for r in rows for c in r))
    return [unvectorize(v, d, d) for v in kernel_basis(m)]


def gershgorin_bound(m: ExactMatrix) -> Fraction:
    """Rational upper bound on the spectral radius: max row sum of ``|re| + |im|``."""
    best = Fraction(0)
    for i in range(m.rows):
        s = sum((abs(Fraction(c.re)) + abs(Fraction(c.im)) for c in m.row(i)), Fraction(0))
        best = max(best, s)
    return best


def construct_nontrivial_oplm(fam: FeatureFamily) -> TwoOutcomeMeasurement:
    """Build an explicit nontrivial orthogonality-preserving two-outcome measurement."""
    sols = solution_operators(fam)
    if len(sols) < 2:
        raise NoNontrivialOplmError(
            f"only the identity preserves orthogonality on side {fam.side} of {fam.grouping.name}"
        )
    e_tilde = next(e for e in sols if not e.is_scalar_multiple_of_identity())
    herm = e_tilde + e_tilde.H
    if herm.is_scalar_multiple_of_identity():
        herm = (e_tilde - e_tilde.H).scale(I_UNIT)
    lam = gershgorin_bound(herm)
    ident = ExactMatrix.identity(fam.dim)
    half = ExactScalar(Fraction(1, 2))
    scaled = herm.scale(ExactScalar(1 / lam))
    meas = TwoOutcomeMeasurement(
        plus=(ident + scaled).scale(half),
        minus=(ident - scaled).scale(half),
        generator=herm,
        lam=lam,
    )
    problems = verify_measurement(fam.states, fam.grouping, fam.side, meas.outcomes)
    if problems:
        raise ArithmeticError("constructed measurement failed verification: " + "; ".join(problems))
    return meas


def apply_local(op: ExactMatrix, s: PureState, g: Grouping, side: str) -> ExactMatrix:
    """Coefficient matrix of ``(op (x) I)|s>`` with rows on the active side."""
    view = _active_view(g, side)
    return op @ flatten(s, view)


def is_orthogonality_preserving(
    states: Sequence[PureState], g: Grouping, side: str, op: ExactMatrix
) -> tuple[bool, tuple[int, int] | None]:
    """Check ``<psi_i|(op (x) I)|psi_j> = 0`` for ``i != j`` by applying ``op`` directly."""
    states = list(states)
    view = _active_view(g, side)
    flats = [flatten(s, view) for s in states]
    images = [op @ f for f in flats]
    for i, fi in enumerate(flats):
        conj_i = [c.conj() for c in fi.entries]
        for j, img in enumerate(images):
            if i == j:
                continue
            acc = ZERO
            for a, b in zip(conj_i, img.entries):
                if a and b:
                    acc = acc + a * b
            if acc:
                return False, (i, j)
    return True, None


def verify_measurement(
    states: Sequence[PureState], g: Grouping, side: str, outcomes: Sequence[ExactMatrix]
) -> list[str]:
    """Completeness, Hermiticity, PSD and orthogonality preservation; returns problems found."""
    problems = []
    d = outcomes[0].rows
    total = outcomes[0]
    for e in outcomes[1:]:
        total = total + e
    if total != ExactMatrix.identity(d):
        problems.append("outcomes do not sum to the identity")
    for k, e in enumerate(outcomes):
        if not e.is_hermitian():
            problems.append(f"outcome {k} is not Hermitian")
        elif not is_psd(e):
            problems.append(f"outcome {k} is not positive semidefinite")
        ok, pair = is_orthogonality_preserving(states, g, side, e)
        if not ok:
            problems.append(f"outcome {k} breaks orthogonality of pair {pair}")
    if all(e.is_scalar_multiple_of_identity() for e in outcomes):
        problems.append("every outcome is proportional to the identity")
    return problems


@dataclass(frozen=True)
class StrongNonlocalityReport:
    certificates: tuple[OplmCertificate, ...]
    note: str = THRESHOLD_NOTE

    @property
    def strongly_nonlocal(self) -> bool:
        return not any(c.nontrivial_exists for c in self.certificates)

    @property
    def verdict(self) -> str:
        if self.strongly_nonlocal:
            return "strongly nonlocal (locally irreducible in every bipartition)"
        bad = next(c for c in self.certificates if c.nontrivial_exists)
        return f"not strongly nonlocal (side {bad.side_name} of {bad.grouping.name} is reducible)"

    @property
    def witness(self) -> OplmCertificate | None:
        return next((c for c in self.certificates if c.witness is not None), None)

    def to_dict(self) -> dict:
        return {
            "property": "strong nonlocality",
            "verdict": self.verdict,
            "pass": self.strongly_nonlocal,
            "note": self.note,
            "certificates": [c.to_dict() for c in self.certificates],
        }


def oplm_certificate(states: Sequence[PureState], g: Grouping, side: str, with_witness: bool = True) -> OplmCertificate:
    fam = reduced_feature_matrices(states, g, side)
    cert = oplm_solution_space(fam)
    if with_witness and cert.nontrivial_exists:
        cert = OplmCertificate(cert.grouping, cert.side, cert.dim, cert.span_dim, construct_nontrivial_oplm(fam))
    return cert


def certify_strong_nonlocality(states: StateSet | Sequence[PureState], with_witness: bool = True) -> StrongNonlocalityReport:
    """Six certificates: both sides of ``A|BC``, ``B|CA`` and ``C|AB``."""
    states = list(states)
    if states[0].system.parties != 3:
        raise ValueError("strong nonlocality check expects a tripartite system")
    certs = []
    for g in tripartite_groupings():
        for side in ("left", "right"):
            certs.append(oplm_certificate(states, g, side, with_witness))
    return StrongNonlocalityReport(tuple(certs))
