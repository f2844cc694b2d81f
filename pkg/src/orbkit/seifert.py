"""Seifert bundle invariants over an orbifold configuration.

A SeifertSpec fixes a background class c1(B) and the residues b_i with
j_i*b_i = 1 (mod m_i); from it we compute the rational Chern class,
decide whether the total space has H_1 = 0 (three criteria: b_1 of the
base vanishes, the restriction map onto the multiplicity torsion is
surjective, and the scaled Chern class is primitive), present H_2 of
the total space, and search for background classes with prescribed
positivity / primitivity / parity behaviour.

Cohomology classes live in the dual lattice Hom(H_2(X,Z), Z): a class
is its vector of pairings against the declared integral basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .abelian import AbelianGroup
from .exact import IntMatrix, factorize, mod_inverse, smith_normal_form
from .model import OrbifoldConfig


class MissingIntegralPairing(ValueError):
    pass


class MissingQClass(ValueError):
    pass


class NonIntegralEntry(ValueError):
    pass


class H1NotZero(ValueError):
    pass


class NotFound(Exception):
    """Bounded search exhausted without a hit."""


@dataclass(frozen=True)
class RationalClass:
    """A class in H^2(X - P, Q) as pairings against the integral basis."""

    entries: tuple[Fraction, ...]

    def scale(self, k) -> "RationalClass":
        return RationalClass(tuple(Fraction(k) * x for x in self.entries))

    def __add__(self, other: "RationalClass") -> "RationalClass":
        return RationalClass(tuple(a + b for a, b in
                                   zip(self.entries, other.entries)))

    def integer_entries(self) -> tuple[int, ...]:
        out = []
        for x in self.entries:
            if x.denominator != 1:
                raise NonIntegralEntry(f"entry {x} is not an integer")
            out.append(x.numerator)
        return tuple(out)


def isotropy_surfaces(cfg: OrbifoldConfig):
    return [s for s in cfg.surfaces if s.multiplicity > 1]


def compute_b_residues(cfg: OrbifoldConfig) -> dict[str, int]:
    """b_i with j_i*b_i = 1 (mod m_i), for each multiplicity > 1."""
    return {s.id: mod_inverse(s.local_j, s.multiplicity)
            for s in isotropy_surfaces(cfg)}


@dataclass(frozen=True)
class SeifertSpec:
    base: OrbifoldConfig
    b_residues: dict
    c1B: tuple[int, ...]

    def __post_init__(self):
        for s in isotropy_surfaces(self.base):
            b = self.b_residues.get(s.id)
            if b != mod_inverse(s.local_j, s.multiplicity):
                raise ValueError(
                    f"b residue for {s.id} must invert j={s.local_j} "
                    f"mod {s.multiplicity}, got {b}")
        if len(self.c1B) != self.base.b2:
            raise ValueError(
                f"c1(B) has {len(self.c1B)} coordinates, b2 = {self.base.b2}")


def surface_class(cfg: OrbifoldConfig, sid: str) -> RationalClass:
    """[D] as a functional on the integral basis: a pairing column."""
    if cfg.integral_pairing is None:
        raise MissingIntegralPairing("config declares no integral pairing")
    i = [s.id for s in cfg.surfaces].index(sid)
    P = cfg.integral_pairing
    return RationalClass(tuple(Fraction(P[r, i]) for r in range(P.rows)))


def total_multiplicity(cfg: OrbifoldConfig) -> int:
    return lcm(*(s.multiplicity for s in cfg.surfaces)) if cfg.surfaces else 1


def chern_class(spec: SeifertSpec) -> RationalClass:
    """c1(M) = c1(B) + sum_i (b_i/m_i) [D_i], as a pairing vector."""
    cfg = spec.base
    if cfg.integral_pairing is None:
        raise MissingIntegralPairing("config declares no integral pairing")
    out = RationalClass(tuple(Fraction(x) for x in spec.c1B))
    for s in isotropy_surfaces(cfg):
        if s.qclass is None:
            raise MissingQClass(f"{s.id} has no homology coordinates")
        coeff = Fraction(spec.b_residues[s.id], s.multiplicity)
        out = out + surface_class(cfg, s.id).scale(coeff)
    return out


def scaled_chern_class(spec: SeifertSpec) -> RationalClass:
    """m * c1(M) for m = lcm of the multiplicities; entries are integral."""
    return chern_class(spec).scale(total_multiplicity(spec.base))


def is_primitive(alpha: RationalClass) -> bool:
    """Is the (integral) pairing vector part of a dual-lattice basis?"""
    entries = alpha.integer_entries()
    return gcd(*entries) == 1 if entries else False


def check_surjectivity_onto_torsion(cfg: OrbifoldConfig) -> bool:
    """Does H^2(X,Z) surject onto the sum of Z_{m_i} restrictions?

    The map sends an integral basis class beta_r to its pairings with
    the isotropy surfaces mod m_i; surjectivity holds iff the block
    matrix [P^T | diag(m_i)] has all invariant factors 1.
    """
    iso = isotropy_surfaces(cfg)
    if not iso:
        return True
    if cfg.integral_pairing is None:
        raise MissingIntegralPairing("config declares no integral pairing")
    P = cfg.integral_pairing
    all_ids = [s.id for s in cfg.surfaces]
    rows = []
    for k, s in enumerate(iso):
        i = all_ids.index(s.id)
        row = [P[r, i] for r in range(P.rows)]
        row += [s.multiplicity if t == k else 0 for t in range(len(iso))]
        rows.append(row)
    factors = smith_normal_form(IntMatrix.from_rows(rows)).invariant_factors()
    return len(factors) == len(iso) and all(d == 1 for d in factors)


@dataclass(frozen=True)
class H1Decision:
    holds: bool
    b1_zero: bool
    surjective: bool
    primitive: bool


def h1_zero_decision(spec: SeifertSpec) -> H1Decision:
    """The three-way criterion for H_1 of the total space to vanish."""
    b1_zero = spec.base.b1 == 0
    surjective = check_surjectivity_onto_torsion(spec.base)
    primitive = is_primitive(scaled_chern_class(spec))
    return H1Decision(b1_zero and surjective and primitive,
                      b1_zero, surjective, primitive)


def h2_of_M(spec: SeifertSpec) -> AbelianGroup:
    """H_2 of the total space: Z^(b2-1) + sum_i Z_{m_i}^(2 g_i)."""
    if not h1_zero_decision(spec).holds:
        raise H1NotZero("H_2 formula requires the H_1 = 0 criteria")
    counts: dict[tuple[int, int], int] = {}
    for s in isotropy_surfaces(spec.base):
        if s.genus == 0:
            continue
        for p, e in factorize(s.multiplicity):
            counts[(p, e)] = counts.get((p, e), 0) + 2 * s.genus
    return AbelianGroup.from_prime_powers(spec.base.b2 - 1, counts)


def _graded_vectors(dim: int, bound: int, max_l1: int):
    """All integer vectors with |entry| <= bound, by (L1 norm, lex)."""
    def rec(prefix, remaining, budget):
        if remaining == 0:
            if budget == 0:
                yield tuple(prefix)
            return
        if budget > remaining * bound:
            return
        lo = -min(bound, budget)
        for v in range(lo, min(bound, budget) + 1):
            prefix.append(v)
            yield from rec(prefix, remaining - 1, budget - abs(v))
            prefix.pop()

    for norm in range(0, max_l1 + 1):
        yield from rec([], dim, norm)


def pairing_value(alpha: RationalClass, direction) -> Fraction:
    """Evaluate a class on an H_2 element given in integral coordinates."""
    return sum((a * Fraction(d) for a, d in zip(alpha.entries, direction)),
               Fraction(0))


def search_background_class(cfg: OrbifoldConfig, want_primitive: bool = True,
                            parity_constraint=None, ample=None,
                            bound: int = 4, max_l1: int = 2) -> SeifertSpec:
    """First background class (graded order) meeting all requested conditions.

    parity_constraint = (alpha mod 2 vector, equal: bool) restricts
    c1(B) mod 2; ample is an H_2 direction c1(M) must pair positively
    with; want_primitive demands gcd-1 for the scaled Chern class.
    Deterministic: candidates are enumerated by L1 norm then
    lexicographically, coordinates in [-bound, bound].
    """
    residues = compute_b_residues(cfg)
    for cand in _graded_vectors(cfg.b2, bound, max_l1):
        if parity_constraint is not None:
            alpha, equal = parity_constraint
            matches = all((c - a) % 2 == 0 for c, a in zip(cand, alpha))
            if matches != equal:
                continue
        spec = SeifertSpec(cfg, residues, cand)
        if want_primitive and not is_primitive(scaled_chern_class(spec)):
            continue
        if ample is not None and pairing_value(chern_class(spec),
                                               ample) <= 0:
            continue
        return spec
    raise NotFound(
        f"no background class within |entry| <= {bound}, L1 <= {max_l1}")
