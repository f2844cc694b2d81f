"""Second Stiefel-Whitney class, spin decision, and the 5-manifold report.

The w2-type class of the punctured base is read off surface by surface:
a surface avoiding the singular set contributes its self-intersection
mod 2; one through singular points gets a named unknown coefficient.
The total space is spin iff w2 + sum_i b_i [D_i] + c1(B) dies under
pullback, i.e. lies in the explicitly described kernel (the even-
multiplicity surface classes, or — when every multiplicity is odd — the
single class c1(B) + sum_i b_i [D_i]).  All of it is Z/2 linear algebra
on pairing vectors.

The closing report collects the classifying data of the simply
connected 5-manifold: b_2, the torsion pair counts c(p^i), the Barden
invariant (0 for spin, infinity otherwise), and the derived t/c
statistics, plus the standard realizability constraints on them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .seifert import (
    H1NotZero,
    SeifertSpec,
    h1_zero_decision,
    h2_of_M,
    isotropy_surfaces,
    surface_class,
)


class UnresolvedUnknown(ValueError):
    pass


def _mod2(vec) -> tuple[int, ...]:
    return tuple(int(x) % 2 for x in vec)


def _xor(a, b) -> tuple[int, ...]:
    return tuple(x ^ y for x, y in zip(a, b))


def in_span_mod2(vectors, target) -> bool:
    """Gaussian elimination membership test over Z/2."""
    basis: list[tuple[int, ...]] = []
    for v in vectors:
        basis.append(tuple(v))
    t = tuple(target)
    pivots: list[tuple[int, tuple[int, ...]]] = []
    for v in basis:
        for col, pv in pivots:
            if v[col]:
                v = _xor(v, pv)
        lead = next((i for i, x in enumerate(v) if x), None)
        if lead is not None:
            pivots.append((lead, v))
    for col, pv in pivots:
        if t[col]:
            t = _xor(t, pv)
    return not any(t)


@dataclass(frozen=True)
class Mod2Class:
    """A Z/2 pairing vector plus unknown multiples of surface classes."""

    base: tuple[int, ...]
    unknowns: tuple[tuple[str, tuple[int, ...]], ...] = ()

    def resolve(self, assignment: dict) -> tuple[int, ...]:
        out = self.base
        for name, vec in self.unknowns:
            if name not in assignment:
                raise UnresolvedUnknown(f"no value for coefficient {name!r}")
            if assignment[name] % 2:
                out = _xor(out, vec)
        return out

    def unknown_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.unknowns)

    def __add__(self, other) -> "Mod2Class":
        return Mod2Class(_xor(self.base, tuple(other)), self.unknowns)


def w2_base_class(cfg) -> Mod2Class:
    """w2 of the punctured base in terms of the tracked surfaces.

    Surfaces avoiding the singular points are pinned by the evenness of
    their self-intersection; surfaces through singular points get the
    unknown coefficients a1, a2, ... in listing order.
    """
    base = (0,) * (cfg.integral_pairing.rows if cfg.integral_pairing
                   else cfg.b2)
    unknowns = []
    k = 0
    for s in cfg.surfaces:
        vec = _mod2(surface_class(cfg, s.id).entries)
        if cfg.points_on(s.id):
            k += 1
            unknowns.append((f"a{k}", vec))
        elif s.self_intersection.denominator != 1:
            raise ValueError(
                f"{s.id} avoids the singular points but has non-integral "
                f"self-intersection {s.self_intersection}")
        elif s.self_intersection % 2:
            base = _xor(base, vec)
    return Mod2Class(tuple(base), tuple(unknowns))


def pi_star_kernel(spec: SeifertSpec) -> list[tuple[int, ...]]:
    """Spanning vectors of the classes killed by pullback to the bundle."""
    if not h1_zero_decision(spec).holds:
        raise H1NotZero("kernel description requires the H_1 = 0 criteria")
    cfg = spec.base
    even = [s for s in isotropy_surfaces(cfg) if s.multiplicity % 2 == 0]
    if even:
        return [_mod2(surface_class(cfg, s.id).entries) for s in even]
    vec = _mod2(spec.c1B)
    for s in isotropy_surfaces(cfg):
        if spec.b_residues[s.id] % 2:
            vec = _xor(vec, _mod2(surface_class(cfg, s.id).entries))
    return [vec]


def spin_target(spec: SeifertSpec) -> Mod2Class:
    """The class whose pullback is w2 of the total space."""
    target = w2_base_class(spec.base) + _mod2(spec.c1B)
    for s in isotropy_surfaces(spec.base):
        if spec.b_residues[s.id] % 2:
            target = target + _mod2(surface_class(spec.base, s.id).entries)
    return target


def spin_decision(spec: SeifertSpec, unknowns: dict) -> bool:
    """Is the total space spin, for the given unknown-coefficient values?"""
    kernel = pi_star_kernel(spec)
    return in_span_mod2(kernel, spin_target(spec).resolve(unknowns))


def spin_sweep(spec: SeifertSpec) -> dict[tuple, bool]:
    """spin_decision over every 0/1 assignment of the unknowns."""
    names = spin_target(spec).unknown_names()
    out = {}
    for mask in range(2 ** len(names)):
        assignment = {n: (mask >> i) & 1 for i, n in enumerate(names)}
        key = tuple(sorted(assignment.items()))
        out[key] = spin_decision(spec, assignment)
    return out


@dataclass(frozen=True)
class SmaleBardenData:
    """Classifying data of a simply connected 5-manifold.

    H_2 = Z^k + sum over p^i of (Z_{p^i} + Z_{p^i})^c(p^i);
    torsion_profile maps (p, i) -> c(p^i).
    """

    k: int
    torsion_profile: tuple[tuple[tuple[int, int], int], ...]
    i_M: float  # 0 (spin) or math.inf (non-spin)
    t: tuple[tuple[int, int], ...]
    t_max: int
    c_max: int


def smale_barden_report(spec: SeifertSpec, spin: bool) -> SmaleBardenData:
    h2 = h2_of_M(spec)
    profile = {}
    for (p, i), count in sorted(h2.primary_counts().items()):
        if count % 2:
            raise ValueError(
                f"torsion Z_{p}^{i} appears an odd number of times; "
                "it cannot be grouped into pairs")
        profile[(p, i)] = count // 2
    t = {}
    for (p, _), c in profile.items():
        if c > 0:
            t[p] = t.get(p, 0) + 1
    return SmaleBardenData(
        k=h2.rank,
        torsion_profile=tuple(sorted(profile.items())),
        i_M=0 if spin else math.inf,
        t=tuple(sorted(t.items())),
        t_max=max(t.values(), default=0),
        c_max=max(profile.values(), default=0))


def gk_check(data: SmaleBardenData) -> bool:
    """Realizability constraints on the classifying data.

    Every prime must satisfy t(p) <= k + 1; the Barden invariant must
    be 0 or infinity; in the non-spin case additionally t(2) <= k.
    """
    t = dict(data.t)
    if any(v > data.k + 1 for v in t.values()):
        return False
    if data.i_M not in (0, math.inf):
        return False
    if data.i_M == math.inf and t.get(2, 0) > data.k:
        return False
    return True
