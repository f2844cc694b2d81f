"""Finitely presented groups: abelianization, Tietze moves, coset
enumeration, and the orbifold fundamental-group presentation builder.

Words are tuples of nonzero signed generator indices (1-based; negative
means inverse), kept freely reduced.  Coset enumeration is HLT-style
Todd-Coxeter with row filling and a union-find coincidence queue; a run
either completes (the subgroup index is certain) or exhausts its coset
budget (inconclusive, returned as a value, never an exception).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import AbelianGroup
from .exact import IntMatrix, smith_normal_form

Word = tuple[int, ...]


class NotApplicable(ValueError):
    pass


def free_reduce(w) -> Word:
    out: list[int] = []
    for g in w:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def cyclic_reduce(w) -> Word:
    w = list(free_reduce(w))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def inverse_word(w) -> Word:
    return tuple(-g for g in reversed(w))


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        n = len(self.generators)
        for r in self.relators:
            for g in r:
                if g == 0 or abs(g) > n:
                    raise ValueError(f"relator index {g} out of range")

    def word(self, *letters) -> Word:
        """Build a word from generator names; 'x' or ('x', exp)."""
        idx = {name: i + 1 for i, name in enumerate(self.generators)}
        out: list[int] = []
        for item in letters:
            name, exp = item if isinstance(item, tuple) else (item, 1)
            g = idx[name]
            out.extend([g if exp > 0 else -g] * abs(exp))
        return free_reduce(out)

    def spell(self, w: Word) -> str:
        return " ".join(self.generators[abs(g) - 1] + ("" if g > 0 else "^-1")
                        for g in w) or "1"


def presentation(gen_names, relator_specs) -> Presentation:
    """Presentation from name list and relators as letter lists."""
    p = Presentation(tuple(gen_names), ())
    rels = tuple(cyclic_reduce(p.word(*spec)) for spec in relator_specs)
    return Presentation(tuple(gen_names), rels)


def commutator(a: Word, b: Word) -> Word:
    return free_reduce(a + b + inverse_word(a) + inverse_word(b))


def abelianize(p: Presentation) -> AbelianGroup:
    """Quotient by all commutators, via the exponent-sum matrix."""
    n = len(p.generators)
    rows = []
    for r in p.relators:
        row = [0] * n
        for g in r:
            row[abs(g) - 1] += 1 if g > 0 else -1
        rows.append(row)
    if not rows:
        return AbelianGroup(rank=n)
    factors = smith_normal_form(IntMatrix.from_rows(rows)).invariant_factors()
    return AbelianGroup(rank=n - len(factors),
                        invariant_factors=tuple(d for d in factors if d > 1))


def tietze_simplify(p: Presentation) -> Presentation:
    """Light presentation cleanup by Tietze transformations.

    Freely/cyclically reduces and deduplicates relators, drops empty
    ones, and eliminates any generator that some relator isolates (one
    occurrence, exponent +-1, so the relator solves for it).
    """
    gens = list(p.generators)
    rels = [cyclic_reduce(r) for r in p.relators]
    changed = True
    while changed:
        changed = False
        rels = [r for r in rels if r]
        seen = set()
        deduped = []
        for r in rels:
            if r not in seen:
                seen.add(r)
                deduped.append(r)
        rels = deduped
        for ri, r in enumerate(rels):
            target = None
            for pos, g in enumerate(r):
                occurrences = sum(1 for h in r if abs(h) == abs(g))
                if occurrences == 1:
                    target = (pos, g)
                    break
            if target is None:
                continue
            pos, g = target
            # r = prefix . g . suffix = 1  =>  g = (prefix)^-1 (suffix)^-1
            prefix, suffix = r[:pos], r[pos + 1:]
            value = free_reduce(inverse_word(prefix) + inverse_word(suffix))
            if g < 0:
                value = inverse_word(value)
            dead = abs(g)
            new_rels = []
            for k, other in enumerate(rels):
                if k == ri:
                    continue
                out: list[int] = []
                for h in other:
                    if abs(h) == dead:
                        out.extend(value if h > 0 else inverse_word(value))
                    else:
                        out.append(h)
                new_rels.append(cyclic_reduce(out))
            # renumber generators above the eliminated one
            def shift(w):
                return tuple(h - 1 if h > dead else (h + 1 if h < -dead else h)
                             for h in w)
            rels = [shift(w) for w in new_rels]
            gens.pop(dead - 1)
            changed = True
            break
    return Presentation(tuple(gens), tuple(rels))


@dataclass(frozen=True)
class Complete:
    index: int


@dataclass(frozen=True)
class Exhausted:
    bound: int


@dataclass
class CosetTable:
    status: object  # Complete | Exhausted
    table: list = field(default_factory=list)  # live rows, column per +-gen

    def is_complete(self) -> bool:
        return isinstance(self.status, Complete)


def coset_enumerate(p: Presentation, subgroup=(), max_cosets: int = 10000,
                    ) -> CosetTable:
    """HLT Todd-Coxeter over the given subgroup generators.

    Complete(n) certifies index n; Exhausted(max_cosets) is
    inconclusive.  Completed tables are replayed against every relator
    and subgroup generator before being returned.
    """
    ngens = len(p.generators)
    ncols = 2 * ngens

    def col(g: int) -> int:
        return 2 * (g - 1) if g > 0 else 2 * (-g - 1) + 1

    def inv_col(x: int) -> int:
        return x ^ 1

    relator_cols = [[col(g) for g in r] for r in p.relators if r]
    subgroup_cols = [[col(g) for g in free_reduce(w)] for w in subgroup]

    table: list[list] = [[None] * ncols]
    parent = [0]

    def rep(k: int) -> int:
        r = k
        while parent[r] != r:
            r = parent[r]
        while parent[k] != r:
            parent[k], k = r, parent[k]
        return r

    queue: list[int] = []

    def merge(a: int, b: int) -> None:
        a, b = rep(a), rep(b)
        if a != b:
            a, b = min(a, b), max(a, b)
            parent[b] = a
            queue.append(b)

    def coincidence(a: int, b: int) -> None:
        queue.clear()
        merge(a, b)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(ncols):
                f = table[e][x]
                if f is None:
                    continue
                table[f][inv_col(x)] = None
                mu, nu = rep(e), rep(f)
                if table[mu][x] is not None:
                    merge(nu, table[mu][x])
                elif table[nu][inv_col(x)] is not None:
                    merge(mu, table[nu][inv_col(x)])
                else:
                    table[mu][x] = nu
                    table[nu][inv_col(x)] = mu

    overflow = False

    def define(a: int, x: int):
        nonlocal overflow
        if len(table) >= max_cosets:
            overflow = True
            return None
        table.append([None] * ncols)
        parent.append(len(table) - 1)
        d = len(table) - 1
        table[a][x] = d
        table[d][inv_col(x)] = a
        return d

    def scan_and_fill(a: int, w: list) -> None:
        nonlocal overflow
        f, i = a, 0
        b, j = a, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] is not None:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][inv_col(w[j])] is not None:
                b = table[b][inv_col(w[j])]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if j == i:
                table[f][w[i]] = b
                table[b][inv_col(w[i])] = f
                return
            d = define(f, w[i])
            if d is None:
                return

    for w in subgroup_cols:
        if w:
            scan_and_fill(0, w)
        if overflow:
            return CosetTable(Exhausted(max_cosets))

    a = 0
    while a < len(table):
        if rep(a) != a:
            a += 1
            continue
        for w in relator_cols:
            scan_and_fill(a, w)
            if overflow:
                return CosetTable(Exhausted(max_cosets))
            if rep(a) != a:
                break
        if rep(a) == a:
            for x in range(ncols):
                if table[a][x] is None:
                    if define(a, x) is None:
                        return CosetTable(Exhausted(max_cosets))
        a += 1

    live = sorted(k for k in range(len(table)) if rep(k) == k)
    renum = {k: i for i, k in enumerate(live)}
    compact = [[renum[rep(table[k][x])] for x in range(ncols)] for k in live]

    # replay: the compacted action must satisfy every relator and fix
    # coset 0 under every subgroup generator
    def trace(start: int, w: list) -> int:
        c = start
        for x in w:
            c = compact[c][x]
        return c

    for w in relator_cols:
        for c in range(len(compact)):
            if trace(c, w) != c:
                raise AssertionError("completed table fails a relator scan")
    for w in subgroup_cols:
        if trace(0, w) != 0:
            raise AssertionError("completed table moves the subgroup coset")

    return CosetTable(Complete(len(compact)), compact)


def build_pi1_orb_presentation(p_prime: int,
                               max_power: int = 8) -> Presentation:
    """Presentation of the orbifold fundamental group of the glued space.

    Generators: the genus-one handle loops a, b; the three order-2 loops
    on each of the first two isotropy surfaces (x1,y1,z1 / x2,y2,z2);
    the surface loops g1, g2; and the common loop U around the remaining
    isotropy surfaces.  Torsion relators g1^p, g2^(p^2) and U^(p^i) for
    i = 3..max_power (higher exponents are redundant: U already dies
    against U^8 g1^5 g2^3 once gcd considerations kick in).
    """
    gens = ["a", "b", "x1", "y1", "z1", "x2", "y2", "z2", "g1", "g2", "U"]
    pres = Presentation(tuple(gens), ())
    w = pres.word
    ab = commutator(w("a"), w("b"))
    rels: list[Word] = []
    # g1, g2, U are central
    for center in ("g1", "g2", "U"):
        for other in gens:
            if other != center:
                rels.append(commutator(w(center), w(other)))
    # circle-bundle relation over the glued surface, Chern number -1
    rels.append(free_reduce(ab + w("U")))
    # branched-torus relation on the second surface: [a,b] x2 y2 z2 = g2^2
    rels.append(free_reduce(ab + w("x2", "y2", "z2", ("g2", -2))))
    # order-2 branch loops square to the surface loop
    for i in (1, 2):
        for letter in ("x", "y", "z"):
            rels.append(w((f"{letter}{i}", 2), (f"g{i}", -1)))
    # double-handle relation on the first surface
    rels.append(free_reduce(ab + ab + w("x1", "y1", "z1", ("g1", -1))))
    # lifts of the handle loops across the gluing
    rels.append(free_reduce(w("a", "y2", "x2", ("g2", -2))))
    rels.append(free_reduce(w("b", "x2", "z2", ("g2", -2))))
    # the two surfaces share their three branch points
    for letter in ("x", "y", "z"):
        rels.append(w(f"{letter}1", (f"{letter}2", -1)))
    # section relation over the base sphere
    rels.append(w(("U", 8), ("g1", 5), ("g2", 3)))
    # isotropy torsion
    rels.append(w(("g1", p_prime)))
    rels.append(w(("g2", p_prime ** 2)))
    for i in range(3, max_power + 1):
        rels.append(w(("U", p_prime ** i)))
    return Presentation(tuple(gens),
                        tuple(cyclic_reduce(r) for r in rels))


def simply_connected_decision(result: CosetTable, h1_zero: bool) -> bool:
    """Total space simply connected?

    Valid when the orbifold group is certified finite of order dividing
    4 (hence abelian): the bundle fundamental group is then abelian, so
    it vanishes exactly when H_1 does.
    """
    if not result.is_complete():
        raise NotApplicable("coset enumeration did not complete")
    if 4 % result.status.index != 0:
        raise NotApplicable(
            f"index {result.status.index} does not divide 4")
    return h1_zero
