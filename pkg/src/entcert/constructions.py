"""Generators for the named state families.

Two families are built here:

* the three-qubit basis ``G`` with its subset ``G+`` and the unextendible
  biseparable set ``U = (G \\ G+) + {tau_2^3}``;
* the 3x3x3 family indexed by a rotation triple ``(h, q, m)``: ``G+_hqm``,
  ``G-_hqm``, ``U_hqm = G-_hqm + {tau_3^3}`` and the eight-state basis of
  its complement produced by :func:`omega_set`.

Minus-type states carry the weight ``-1/z``; they are rescaled by ``-z`` so
every coefficient is an integer (``|0>(|00>+|10>-2|01>)`` rather than
``|0>(|01> - (|00>+|10>)/2)``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm
from typing import Sequence

from .exactla import ExactScalar, rank
from .states import PartySystem, PureState, StateSet, cyclic_rotate


def ket(dims: Sequence[int], terms: dict[str, int] | str, label: str = "") -> PureState:
    """State from ``{"001": 2, "010": -1}``-style terms (or a single basis string)."""
    if isinstance(terms, str):
        terms = {terms: 1}
    return PureState(PartySystem(tuple(dims)), {tuple(int(c) for c in k): v for k, v in terms.items()}, label)


def stopper(d: int, r: int) -> PureState:
    """``(|0> + ... + |d-1>)^{(x) r}``: every coefficient equal to one."""
    if d < 2 or r < 2:
        raise ValueError("stopper state needs d >= 2 and r >= 2")
    system = PartySystem((d,) * r)
    return PureState(system, {idx: 1 for idx in product(range(d), repeat=r)}, f"tau_{d}^{r}")


def primitive(s: PureState) -> PureState:
    """Rescale by a positive rational so the coefficients are coprime Gaussian integers."""
    den = 1
    for c in s.coeffs.values():
        for part in (c.re, c.im):
            if isinstance(part, Fraction):
                den = lcm(den, part.denominator)
    ints = [(int(c.re * den), int(c.im * den)) for c in s.coeffs.values()]
    g = 0
    for a, b in ints:
        g = gcd(g, a, b)
    return PureState(
        s.system,
        {k: ExactScalar(a // g, b // g) for k, (a, b) in zip(s.coeffs, ints)},
        s.label,
    )


class OmegaPreconditionError(ValueError):
    pass


def omega_set(
    states: StateSet | Sequence[PureState],
    psi_idx: int,
    d: int,
    r: int,
    reduce: bool = False,
) -> StateSet:
    """States ``<psi|tau>|phi> - <phi|tau>|psi>`` for every ``phi != psi``.

    ``tau`` is :func:`stopper` ``(d, r)``.  Each output is orthogonal to
    ``tau``.  With ``reduce=True`` outputs are passed through
    :func:`primitive`, which only rescales them.
    """
    states = list(states)
    n = len(states)
    if not 0 <= psi_idx < n:
        raise OmegaPreconditionError(f"psi index {psi_idx} out of range for {n} states")
    tau = stopper(d, r)
    if any(s.system != tau.system for s in states):
        raise OmegaPreconditionError(f"states do not live on the {d}^{r} system of the stopper")
    if rank(StateSet.of(states).coefficient_matrix()) != n:
        raise OmegaPreconditionError("states are not linearly independent")
    psi = states[psi_idx]
    # <psi|tau> = sum of conjugated coefficients, since tau is all ones
    psi_tau = psi.overlap_with_stopper().conj()
    if not psi_tau:
        raise OmegaPreconditionError(f"state {psi.label or psi_idx} is orthogonal to the stopper")
    out = []
    k = 0
    for i, phi in enumerate(states):
        if i == psi_idx:
            continue
        phi_tau = phi.overlap_with_stopper().conj()
        s = psi_tau * phi - phi_tau * psi if phi_tau else psi_tau * phi
        if reduce:
            s = primitive(s)
        out.append(s.with_label(f"omega_{k}[{phi.label}]" if phi.label else f"omega_{k}"))
        k += 1
    return StateSet(tau.system, tuple(out))


def _weight(z: int, sign: str):
    return 1 if sign == "+" else Fraction(-1, z)


def _clear(s: PureState, z: int, sign: str) -> PureState:
    return s if sign == "+" else s * (-z)


# ---------------------------------------------------------------------------
# 2 (x) 2 (x) 2

D222 = (2, 2, 2)


def _phi2(i: int, sign: str) -> PureState:
    # |i>|00 +- 10>
    return ket(D222, {f"{i}00": 1, f"{i}10": 1 if sign == "+" else -1}, f"phi_{i}{sign}")


def _psi2(i: int, sign: str) -> PureState:
    s = ket(D222, f"{i}{i}1") + _weight(2, sign) * _phi2(i, "+")
    return _clear(s, 2, sign).with_label(f"psi_{i}{sign}")


def _eta2(sign: str) -> PureState:
    # |01 +- 10>|1>
    return ket(D222, {"011": 1, "101": 1 if sign == "+" else -1}, f"eta{sign}")


@dataclass(frozen=True)
class Family222:
    G: StateSet
    Gplus: StateSet
    Gminus: StateSet
    U: StateSet


def family_222() -> Family222:
    """The three-qubit basis ``G``, ``G+`` and ``U``.

    Ordering: ``G+ = [psi_0+, psi_1+, eta+]`` and
    ``U = [phi_0-, phi_1-, eta-, psi_0-, psi_1-, tau_2^3]``.
    """
    gplus = [_psi2(0, "+"), _psi2(1, "+"), _eta2("+")]
    gminus = [_phi2(0, "-"), _phi2(1, "-"), _eta2("-"), _psi2(0, "-"), _psi2(1, "-")]
    system = PartySystem(D222)
    return Family222(
        G=StateSet(system, tuple(gplus + gminus)),
        Gplus=StateSet(system, tuple(gplus)),
        Gminus=StateSet(system, tuple(gminus)),
        U=StateSet(system, tuple(gminus + [stopper(2, 3)])),
    )


def omega_222() -> StateSet:
    """Complement basis of ``U``: omega set of ``G+`` pivoted on ``eta+``."""
    return omega_set(family_222().Gplus, 2, 2, 3)


# ---------------------------------------------------------------------------
# 3 (x) 3 (x) 3

D333 = (3, 3, 3)


@dataclass(frozen=True)
class RotationTriple:
    h: int
    q: int
    m: int

    def __post_init__(self):
        for name in ("h", "q", "m"):
            v = getattr(self, name)
            if v not in (0, 1, 2):
                raise ValueError(f"rotation component {name}={v!r} not in {{0, 1, 2}}")

    @classmethod
    def parse(cls, text: str) -> RotationTriple:
        parts = [p.strip() for p in text.replace(" ", "").split(",")] if "," in text else list(text.strip())
        if len(parts) != 3:
            raise ValueError(f"rotation must look like 'h,q,m', got {text!r}")
        try:
            return cls(*(int(p) for p in parts))
        except ValueError as exc:
            raise ValueError(f"bad rotation {text!r}: {exc}") from None

    def __str__(self):
        return f"{self.h}{self.q}{self.m}"


def all_rotations() -> list[RotationTriple]:
    return [RotationTriple(h, q, m) for h, q, m in product(range(3), repeat=3)]


def _rot(s: PureState, g: int, label: str) -> PureState:
    return cyclic_rotate(s, g).with_label(label)


def _phi3(i: int, g: int, sign: str) -> PureState:
    v = 1 if sign == "+" else -1
    if i == 0:
        s = ket(D333, {"001": 1, "012": v})
    else:
        s = ket(D333, {f"{i}10": 1, f"{i}21": v})
    return _rot(s, g, f"phi_{i}^(g={g}){sign}")


def _psi3(i: int, g: int, sign: str) -> PureState:
    s = ket(D333, f"{i}{(2 * i + 2) % 3}{i}") + _weight(2, sign) * _phi3(i, 0, "+")
    return _rot(_clear(s, 2, sign), g, f"psi_{i}^(g={g}){sign}")


def _eta3(i: int, g: int, sign: str) -> PureState:
    s = ket(D333, f"{i}{i}{i}") + _weight(3, sign) * _psi3(i, 0, "+")
    return _rot(_clear(s, 3, sign), g, f"eta_{i}^(g={g}){sign}")


@dataclass(frozen=True)
class Family333:
    rot: RotationTriple
    Gplus: StateSet
    Gminus: StateSet
    U: StateSet
    ges_basis: StateSet

    @property
    def G(self) -> StateSet:
        return StateSet(self.Gplus.system, self.Gplus.states + self.Gminus.states)


def gplus_hqm(rot: RotationTriple) -> list[PureState]:
    """``G+_hqm`` in the order ``psi_1^(h), eta_0^(q), eta_2^(m)``, then
    ``psi_0``, ``phi_1``, ``psi_2`` at the two complementary rotations each."""
    h, q, m = rot.h, rot.q, rot.m
    out = [_psi3(1, h, "+"), _eta3(0, q, "+"), _eta3(2, m, "+")]
    out += [_psi3(0, g, "+") for g in range(3) if g != q]
    out += [_phi3(1, g, "+") for g in range(3) if g != h]
    out += [_psi3(2, g, "+") for g in range(3) if g != m]
    return out


def gminus_hqm(rot: RotationTriple) -> list[PureState]:
    h, q, m = rot.h, rot.q, rot.m
    out = [_psi3(1, h, "-"), _eta3(0, q, "-"), _eta3(2, m, "-")]
    for g in range(3):
        out += [_phi3(0, g, "-"), _phi3(1, g, "-"), _phi3(2, g, "-"), _psi3(0, g, "-"), _psi3(2, g, "-")]
    return out


def family_333(rot: RotationTriple | tuple[int, int, int] = RotationTriple(0, 0, 0)) -> Family333:
    """All sets built from one rotation triple.

    ``ges_basis`` is the omega set of ``G+_hqm`` pivoted on
    ``eta_0^(q)+`` (the only ``eta_0`` member of ``G+_hqm``), with each
    state reduced to coprime integer coefficients.
    """
    if not isinstance(rot, RotationTriple):
        rot = RotationTriple(*rot)
    system = PartySystem(D333)
    gplus = gplus_hqm(rot)
    gminus = gminus_hqm(rot)
    ges = omega_set(gplus, 1, 3, 3, reduce=True)
    return Family333(
        rot=rot,
        Gplus=StateSet(system, tuple(gplus)),
        Gminus=StateSet(system, tuple(gminus)),
        U=StateSet(system, tuple(gminus + [stopper(3, 3)])),
        ges_basis=ges,
    )


FAMILIES = ("G", "Gplus", "U", "Ghqm+", "Ghqm-", "Uhqm", "GES", "stopper", "omega")


def build_family(name: str, rot: RotationTriple | None = None, d: int = 3, r: int = 3) -> StateSet:
    """Look up a family by its command-line name."""
    name = name.replace("\u2212", "-")  # accept a typographic minus
    if name in ("G", "Gplus", "U", "omega"):
        if rot is not None:
            raise ValueError(f"family {name!r} takes no rotation")
        if name == "omega":
            return omega_222()
        f = family_222()
        return {"G": f.G, "Gplus": f.Gplus, "U": f.U}[name]
    if name in ("Ghqm+", "Ghqm-", "Uhqm", "GES"):
        f = family_333(rot or RotationTriple(0, 0, 0))
        return {"Ghqm+": f.Gplus, "Ghqm-": f.Gminus, "Uhqm": f.U, "GES": f.ges_basis}[name]
    if name == "stopper":
        s = stopper(d, r)
        return StateSet(s.system, (s,))
    raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
