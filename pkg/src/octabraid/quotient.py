"""The double-cover groups as concrete finite objects.

Elements are coset ids (1-based integers) in the enumerated table over the
trivial subgroup; id 1 is the identity.  Canonical forms decode ids into the
inductive normal form ``x = R1^m * y_2 * ... * y_(n-1)`` where the level-``i``
factor is one of ``Ri^k`` (k in 0..3), ``Ri R(i-1) .. R(i-j)``, or
``Ri^3 R(i-1) .. R(i-j)`` (j in 1..i-1); that gives ``2(i+1)`` choices per
level and ``2^n n!`` forms in total.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterator

from . import hyperocta
from .cosets import CosetTable, EnumLimits, enumerate_cosets
from .words import (
    Letter,
    Presentation,
    Variant,
    Word,
    free_reduce,
    gen,
    presentation_for,
    word_str,
)


@dataclass(frozen=True)
class LevelSuffix:
    """One level factor: ``kind`` is ``power``, ``run`` or ``cube_run``."""

    kind: str
    arg: int

    def __post_init__(self) -> None:
        if self.kind not in ("power", "run", "cube_run"):
            raise ValueError(f"unknown suffix kind {self.kind!r}")


def level_suffixes(i: int) -> list[LevelSuffix]:
    """All ``2(i+1)`` level-``i`` suffixes, in canonical order."""
    out = [LevelSuffix("power", k) for k in range(4)]
    out += [LevelSuffix("run", j) for j in range(1, i)]
    out += [LevelSuffix("cube_run", j) for j in range(1, i)]
    return out


def _suffix_letters(i: int, s: LevelSuffix) -> list[Letter]:
    if s.kind == "power":
        if not 0 <= s.arg <= 3:
            raise ValueError(f"power exponent {s.arg} out of range")
        return [Letter(i, 1)] * s.arg
    if not 1 <= s.arg <= i - 1:
        raise ValueError(f"run length {s.arg} out of range at level {i}")
    head = [Letter(i, 1)] * (1 if s.kind == "run" else 3)
    return head + [Letter(k, 1) for k in range(i - 1, i - s.arg - 1, -1)]


@dataclass(frozen=True)
class CanonicalForm:
    """Normal form data: base exponent plus one suffix per level ``2..n-1``."""

    base: int
    suffixes: tuple[LevelSuffix, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.base <= 7:
            raise ValueError(f"base exponent {self.base} out of range")

    @property
    def rank(self) -> int:
        return len(self.suffixes) + 2

    def __str__(self) -> str:
        return word_str(expand(self))


def expand(cf: CanonicalForm) -> Word:
    """The canonical word ``R1^m y_2 ... y_(n-1)`` of a form."""
    letters = [Letter(1, 1)] * cf.base
    for pos, suffix in enumerate(cf.suffixes):
        letters.extend(_suffix_letters(pos + 2, suffix))
    return Word(tuple(letters), cf.rank)


def all_canonical_forms(n: int) -> Iterator[CanonicalForm]:
    """Every canonical form at rank ``n``, suffix levels varying fastest."""
    pools = [level_suffixes(i) for i in range(2, n)]
    for base in range(8):
        for combo in itertools.product(*pools):
            yield CanonicalForm(base, combo)


def family_key(cf: CanonicalForm) -> tuple:
    """Grouping key that pools power exponents but keeps run lengths."""
    return tuple(
        ("power",) if s.kind == "power" else (s.kind, s.arg) for s in cf.suffixes
    )


def family_order(n: int) -> list[tuple]:
    """All family keys in canonical listing order (inner level fastest)."""
    pools = []
    for i in range(2, n):
        keys: list[tuple] = [("power",)]
        keys += [("run", j) for j in range(1, i)]
        keys += [("cube_run", j) for j in range(1, i)]
        pools.append(keys)
    return [combo for combo in itertools.product(*pools)]


class GroupCtx:
    """A fully enumerated double-cover group of rank ``n``.

    Immutable after construction; queries are read-only.
    """

    def __init__(self, rank: int, variant: Variant, presentation: Presentation,
                 table: CosetTable):
        self.rank = rank
        self.variant = variant
        self.presentation = presentation
        self.table = table
        self._rep_cols: list[tuple[int, ...]] | None = None
        self._decode: dict[int, CanonicalForm] | None = None
        self._subgroup_ids: dict[int, frozenset[int]] = {}

    @classmethod
    def build(cls, n: int, variant: Variant = "standard",
              limits: EnumLimits | None = None) -> "GroupCtx":
        p = presentation_for(n, variant)
        table = enumerate_cosets(p, (), limits)
        return cls(n, variant, p, table)

    @property
    def order(self) -> int:
        return self.table.n_cosets

    @property
    def identity(self) -> int:
        return 1

    def generator(self, i: int) -> int:
        return self.table.coset_action(1, gen(i, self.rank))

    def element_from_word(self, w: Word) -> int:
        if w.rank != self.rank:
            raise ValueError(f"word rank {w.rank} does not match group rank {self.rank}")
        return self.table.coset_action(1, w)

    # -- representative machinery --------------------------------------------

    def _reps(self) -> list[tuple[int, ...]]:
        if self._rep_cols is None:
            self._rep_cols = [()] + [
                self.table.rep_cols(c) for c in range(1, self.order + 1)
            ]
        return self._rep_cols

    def _apply_rep(self, e: int, c: int) -> int:
        """Left-multiply coset ``c`` by element ``e`` (fold e's representative)."""
        apply_col = self.table.apply_col
        for col in self._reps()[e]:
            c = apply_col(c, col)
        return c

    def compose_ids(self, a: int, b: int) -> int:
        """Product ``a * b`` through the coset table (representative route)."""
        return self._apply_rep(a, b)

    def multiply(self, a: int, b: int) -> int:
        """Product ``a * b`` via concatenated canonical words."""
        wa = expand(self.canonical_form(a))
        wb = expand(self.canonical_form(b))
        return self.element_from_word(wa * wb)

    def inverse_id(self, e: int) -> int:
        w = self.table.representative(e)
        return self.element_from_word(free_reduce(Word(
            tuple(l.inverse() for l in reversed(w.letters)), self.rank)))

    def element_order(self, e: int) -> int:
        self.table._check_id(e)
        k = 1
        c = e
        while c != 1:
            c = self._apply_rep(e, c)
            k += 1
        return k

    # -- canonical forms ------------------------------------------------------

    def subgroup_ids(self, top: int) -> frozenset[int]:
        """Ids of the subgroup generated by ``R1 .. R<top>`` (closure over the table)."""
        cached = self._subgroup_ids.get(top)
        if cached is not None:
            return cached
        cols = list(range(2 * top))
        seen = {1}
        frontier = [1]
        while frontier:
            nxt = []
            for c in frontier:
                for col in cols:
                    image = self.table.apply_col(c, col)
                    if image not in seen:
                        seen.add(image)
                        nxt.append(image)
            frontier = nxt
        result = frozenset(seen)
        self._subgroup_ids[top] = result
        return result

    def peel_canonical_form(self, e: int) -> CanonicalForm:
        """Decode an element by peeling level suffixes from the top down.

        At level ``i`` the unique suffix ``y`` with ``e * y^-1`` inside the
        subgroup generated by ``R1 .. R(i-1)`` is removed; what remains of
        the base level is a power of ``R1``.
        """
        self.table._check_id(e)
        suffixes: list[LevelSuffix] = []
        cur = e
        for i in range(self.rank - 1, 1, -1):
            inside = self.subgroup_ids(i - 1)
            for suffix in level_suffixes(i):
                y_letters = _suffix_letters(i, suffix)
                y_inv_coset = self.table.coset_action(
                    1, Word(tuple(l.inverse() for l in reversed(y_letters)), self.rank))
                candidate = self._apply_rep(cur, y_inv_coset)
                if candidate in inside:
                    suffixes.append(suffix)
                    cur = candidate
                    break
            else:
                raise RuntimeError(f"no level-{i} suffix matched element {e}")
        base_ids = self._base_power_ids()
        if cur not in base_ids:
            raise RuntimeError(f"peel left a non-R1-power remainder for element {e}")
        return CanonicalForm(base_ids[cur], tuple(reversed(suffixes)))

    def canonical_form(self, e: int) -> CanonicalForm:
        """Canonical form of an element: table lookup when the full decode
        table is built, otherwise a single top-down peel."""
        if self._decode is not None:
            self.table._check_id(e)
            return self._decode[e]
        return self.peel_canonical_form(e)

    def _base_power_ids(self) -> dict[int, int]:
        ids = {}
        c = 1
        for m in range(8):
            ids[c] = m
            c = self.table.apply(c, Letter(1, 1))
        return ids

    def canonical_table(self) -> dict[int, CanonicalForm]:
        """Full id -> form bijection built by enumerating every form.

        Serves as the independent decode oracle for ``canonical_form``; raises
        if the forms fail to hit every element exactly once.
        """
        if self._decode is None:
            decode: dict[int, CanonicalForm] = {}
            for cf in all_canonical_forms(self.rank):
                e = self.element_from_word(expand(cf))
                if e in decode:
                    raise RuntimeError(
                        f"canonical forms collide: {decode[e]} and {cf} both name {e}")
                decode[e] = cf
            if len(decode) != self.order:
                raise RuntimeError("canonical forms do not exhaust the group")
            self._decode = decode
        return self._decode

    def canonical_word(self, e: int) -> Word:
        return expand(self.canonical_form(e))

    def family_sizes(self) -> list[tuple[tuple, int]]:
        """Element counts per canonical family, in listing order."""
        counts: dict[tuple, int] = {}
        for cf in self.canonical_table().values():
            key = family_key(cf)
            counts[key] = counts.get(key, 0) + 1
        return [(key, counts.get(key, 0)) for key in family_order(self.rank)]

    # -- structure ------------------------------------------------------------

    def center(self) -> list[int]:
        """All elements commuting with every generator, sorted by id."""
        gens = [(2 * (i - 1), self.generator(i)) for i in range(1, self.rank)]
        out = []
        for e in range(1, self.order + 1):
            for col, gen_id in gens:
                if self.table.apply_col(e, col) != self._apply_rep(e, gen_id):
                    break
            else:
                out.append(e)
        return out

    def quotient_table(self, z: int) -> CosetTable:
        """Coset table of the quotient by the central order-2 element ``z``."""
        if self.element_order(z) != 2:
            raise ValueError(f"element {z} does not have order 2")
        gens = [(2 * (i - 1), self.generator(i)) for i in range(1, self.rank)]
        for col, gen_id in gens:
            if self.table.apply_col(z, col) != self._apply_rep(z, gen_id):
                raise ValueError(f"element {z} is not central")
        extra = expand(self.canonical_form(z))
        quotient_p = Presentation(
            self.presentation.rank,
            self.presentation.relators + (free_reduce(extra),),
            self.presentation.variant,
        )
        return enumerate_cosets(quotient_p, ())

    def quotient_order_profile(self, z: int) -> dict[int, int]:
        """Element-order multiset of the quotient by ``z``."""
        table = self.quotient_table(z)
        return order_profile(table)

    def order_profile(self) -> dict[int, int]:
        return order_profile(self.table)

    def element_table(self) -> list[dict]:
        """JSON-ready element table: id, canonical word, order, theta image."""
        decode = self.canonical_table()
        thetas = hyperocta.theta_images(self)
        rows = []
        for e in range(1, self.order + 1):
            rows.append({
                "id": e,
                "canonical": word_str(expand(decode[e])),
                "order": self.element_order(e),
                "theta": list(thetas[e].images),
            })
        return rows

    def element_table_json(self) -> str:
        return json.dumps(self.element_table(), sort_keys=True, indent=2)

    def cayley_dot(self) -> str:
        decode = self.canonical_table()
        labels = {e: word_str(expand(decode[e])) for e in range(1, self.order + 1)}
        return cayley_dot(self.table, labels)


def order_profile(table: CosetTable) -> dict[int, int]:
    """Multiset of element orders read off a trivial-subgroup coset table."""
    reps = [()] + [table.rep_cols(c) for c in range(1, table.n_cosets + 1)]
    profile: dict[int, int] = {}
    for e in range(1, table.n_cosets + 1):
        k = 1
        c = e
        while c != 1:
            for col in reps[e]:
                c = table.apply_col(c, col)
            k += 1
        profile[k] = profile.get(k, 0) + 1
    return profile


def cayley_dot(table: CosetTable, labels: dict[int, str] | None = None) -> str:
    """DOT digraph of the (left) Cayley graph: one edge per generator.

    Multiplication-by-R1 edges are dotted, the rest solid.
    """
    labels = labels or {
        c: word_str(table.representative(c)) for c in range(1, table.n_cosets + 1)
    }
    lines = ["digraph cayley {"]
    for c in range(1, table.n_cosets + 1):
        label = labels[c].replace('"', r"\"")
        lines.append(f'  "{c}" [label="{label}"];')
    for c in range(1, table.n_cosets + 1):
        for i in range(1, table.rank):
            image = table.apply(c, Letter(i, 1))
            style = "dotted" if i == 1 else "solid"
            lines.append(f'  "{c}" -> "{image}" [gen={i}, style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
