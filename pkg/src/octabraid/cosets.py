"""Todd-Coxeter coset enumeration with HLT and Felsch strategies.

A completed table is the ground-truth oracle for group order, multiplication
and canonical representatives.  Tables expose the *left* action: cosets are
left cosets of the subgroup, and ``coset_action`` consumes a word's letters
right to left, matching the package-wide word convention.  Internally the
classical right-action algorithms run on reversed words, which yields exactly
that left action.

References for the core procedures: Holt, Eick, O'Brien, "Handbook of
Computational Group Theory", chapter 5.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .words import Letter, Presentation, Word


class LimitExceeded(RuntimeError):
    """Enumeration did not close within the coset cap."""


@dataclass(frozen=True)
class EnumLimits:
    max_cosets: int = 2_000_000
    strategy: str = "hlt"

    def __post_init__(self) -> None:
        if self.max_cosets < 1:
            raise ValueError("max_cosets must be at least 1")
        if self.strategy not in ("hlt", "felsch"):
            raise ValueError(f"unknown strategy {self.strategy!r}")


def _col(letter: Letter) -> int:
    return 2 * (letter.index - 1) + (0 if letter.exp == 1 else 1)


def _col_letter(col: int) -> Letter:
    return Letter(col // 2 + 1, 1 if col % 2 == 0 else -1)


def _reversed_cols(w: Word) -> tuple[int, ...]:
    # Reversing (without inverting) turns the exposed left action into the
    # right action the textbook algorithms operate on.
    return tuple(_col(l) for l in reversed(w.letters))


class _Enumerator:
    """Mutable enumeration state; one enumeration per instance."""

    def __init__(self, ncols: int, max_cosets: int):
        self.ncols = ncols
        self.max_cosets = max_cosets
        self.tab: list[list[int]] = [[0] * ncols, [0] * ncols]  # index 0 unused
        self.p: list[int] = [0, 1]
        self.deductions: list[tuple[int, int]] | None = None

    # -- union-find ---------------------------------------------------------

    def rep(self, k: int) -> int:
        l = k
        r = self.p[l]
        while r != l:
            l = r
            r = self.p[l]
        m = k
        r = self.p[m]
        while r != l:
            self.p[m] = l
            m = r
            r = self.p[m]
        return l

    def _merge(self, k: int, lam: int, queue: deque[int]) -> None:
        a = self.rep(k)
        b = self.rep(lam)
        if a != b:
            lo, hi = (a, b) if a < b else (b, a)
            self.p[hi] = lo
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        tab = self.tab
        queue: deque[int] = deque()
        self._merge(a, b, queue)
        while queue:
            dead = queue.popleft()
            for x in range(self.ncols):
                delta = tab[dead][x]
                if not delta:
                    continue
                tab[delta][x ^ 1] = 0
                mu = self.rep(dead)
                nu = self.rep(delta)
                if tab[mu][x]:
                    self._merge(nu, tab[mu][x], queue)
                elif tab[nu][x ^ 1]:
                    self._merge(mu, tab[nu][x ^ 1], queue)
                else:
                    tab[mu][x] = nu
                    tab[nu][x ^ 1] = mu
                    if self.deductions is not None:
                        self.deductions.append((mu, x))

    # -- definitions and scanning -------------------------------------------

    def define(self, a: int, x: int) -> int:
        if len(self.tab) > self.max_cosets:
            raise LimitExceeded(
                f"enumeration exceeded {self.max_cosets} cosets; "
                "the index may be infinite or the cap too small"
            )
        b = len(self.tab)
        self.tab.append([0] * self.ncols)
        self.p.append(b)
        self.tab[a][x] = b
        self.tab[b][x ^ 1] = a
        if self.deductions is not None:
            self.deductions.append((a, x))
        return b

    def scan_and_fill(self, a: int, word_cols: tuple[int, ...]) -> None:
        tab = self.tab
        i, j = 0, len(word_cols) - 1
        f = b = a
        while True:
            while i <= j and tab[f][word_cols[i]]:
                f = tab[f][word_cols[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and tab[b][word_cols[j] ^ 1]:
                b = tab[b][word_cols[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                x = word_cols[i]
                tab[f][x] = b
                tab[b][x ^ 1] = f
                if self.deductions is not None:
                    self.deductions.append((f, x))
                return
            self.define(f, word_cols[i])

    def scan(self, a: int, word_cols: tuple[int, ...]) -> None:
        """Scan without defining; close a gap of one as a deduction."""
        tab = self.tab
        i, j = 0, len(word_cols) - 1
        f = b = a
        while i <= j and tab[f][word_cols[i]]:
            f = tab[f][word_cols[i]]
            i += 1
        if i > j:
            if f != b:
                self.coincidence(f, b)
            return
        while j >= i and tab[b][word_cols[j] ^ 1]:
            b = tab[b][word_cols[j] ^ 1]
            j -= 1
        if j < i:
            self.coincidence(f, b)
        elif j == i:
            x = word_cols[i]
            tab[f][x] = b
            tab[b][x ^ 1] = f
            if self.deductions is not None:
                self.deductions.append((f, x))


def _run_hlt(enum: _Enumerator, relators: list[tuple[int, ...]],
             subgens: list[tuple[int, ...]]) -> None:
    for sg in subgens:
        enum.scan_and_fill(1, sg)
    alpha = 1
    while alpha < len(enum.tab):
        if enum.p[alpha] == alpha:
            for rel in relators:
                enum.scan_and_fill(alpha, rel)
                if enum.p[alpha] != alpha:
                    break
            if enum.p[alpha] == alpha:
                for x in range(enum.ncols):
                    if not enum.tab[alpha][x]:
                        enum.define(alpha, x)
        alpha += 1


def _relator_cycles(relators: list[tuple[int, ...]], ncols: int
                    ) -> list[list[tuple[int, ...]]]:
    """Cyclic permutations of each relator and its inverse, keyed by first column."""
    by_first: list[set[tuple[int, ...]]] = [set() for _ in range(ncols)]
    for rel in relators:
        inv = tuple(x ^ 1 for x in reversed(rel))
        for w in (rel, inv):
            for k in range(len(w)):
                cyc = w[k:] + w[:k]
                by_first[cyc[0]].add(cyc)
    return [sorted(s) for s in by_first]


def _run_felsch(enum: _Enumerator, relators: list[tuple[int, ...]],
                subgens: list[tuple[int, ...]]) -> None:
    enum.deductions = []
    cycles = _relator_cycles(relators, enum.ncols)

    def process() -> None:
        while enum.deductions:
            a, x = enum.deductions.pop()
            a = enum.rep(a)
            for cyc in cycles[x]:
                enum.scan(a, cyc)
            b = enum.tab[a][x]
            if b:
                b = enum.rep(b)
                for cyc in cycles[x ^ 1]:
                    enum.scan(b, cyc)

    for sg in subgens:
        enum.scan_and_fill(1, sg)
        process()
    alpha = 1
    while alpha < len(enum.tab):
        if enum.p[alpha] == alpha:
            for x in range(enum.ncols):
                if enum.p[alpha] != alpha:
                    break
                if not enum.tab[alpha][x]:
                    enum.define(alpha, x)
                    process()
        alpha += 1


@dataclass(frozen=True)
class CosetTable:
    """A complete, compressed, BFS-standardized coset table.

    Coset ids run from 1 to ``n_cosets``; id 1 is the subgroup coset.
    ``parent_edge`` returns the spanning-tree edge that first reaches a
    coset, from which Schreier representatives are read off.
    """

    rank: int
    n_cosets: int
    _rows: tuple[tuple[int, ...], ...] = field(repr=False)
    _parents: tuple[tuple[int, int], ...] = field(repr=False)

    @property
    def ncols(self) -> int:
        return 2 * (self.rank - 1)

    def _check_id(self, c: int) -> None:
        if not 1 <= c <= self.n_cosets:
            raise ValueError(f"invalid coset id {c}")

    def apply(self, c: int, letter: Letter) -> int:
        self._check_id(c)
        return self._rows[c - 1][_col(letter)]

    def apply_col(self, c: int, col: int) -> int:
        return self._rows[c - 1][col]

    def coset_action(self, c: int, w: Word) -> int:
        """Apply a word to a coset, rightmost letter first."""
        self._check_id(c)
        rows = self._rows
        for letter in reversed(w.letters):
            c = rows[c - 1][_col(letter)]
        return c

    def parent_edge(self, c: int) -> tuple[int, Letter]:
        self._check_id(c)
        if c == 1:
            raise ValueError("coset 1 has no parent edge")
        parent, col = self._parents[c - 1]
        return parent, _col_letter(col)

    def representative(self, c: int) -> Word:
        """The Schreier word for ``c``: ``coset_action(1, rep(c)) == c``."""
        self._check_id(c)
        letters: list[Letter] = []
        while c != 1:
            parent, col = self._parents[c - 1]
            letters.append(_col_letter(col))
            c = parent
        return Word(tuple(letters), self.rank)

    def rep_cols(self, c: int) -> tuple[int, ...]:
        """Representative as column indices in application order (root first)."""
        cols: list[int] = []
        while c != 1:
            parent, col = self._parents[c - 1]
            cols.append(col)
            c = parent
        cols.reverse()
        return tuple(cols)

    def to_text(self) -> str:
        lines = [f"cosets: {self.n_cosets} rank: {self.rank}"]
        for c in range(1, self.n_cosets + 1):
            imgs = " ".join(str(v) for v in self._rows[c - 1])
            lines.append(f"{c}: {imgs}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "CosetTable":
        lines = [l for l in text.splitlines() if l.strip()]
        header = lines[0].split()
        if header[0] != "cosets:" or header[2] != "rank:":
            raise ValueError("malformed coset table header")
        n_cosets = int(header[1])
        rank = int(header[3])
        rows: list[tuple[int, ...]] = []
        for line in lines[1:]:
            label, _, rest = line.partition(":")
            row = tuple(int(v) for v in rest.split())
            if int(label) != len(rows) + 1 or len(row) != 2 * (rank - 1):
                raise ValueError(f"malformed coset table line {line!r}")
            rows.append(row)
        if len(rows) != n_cosets:
            raise ValueError("coset count does not match header")
        for c, row in enumerate(rows, start=1):
            for col, image in enumerate(row):
                if not 1 <= image <= n_cosets or rows[image - 1][col ^ 1] != c:
                    raise ValueError("inconsistent coset table")
        parents = _bfs_parents(rows)
        return cls(rank, n_cosets, tuple(rows), parents)


def _bfs_parents(rows: Sequence[Sequence[int]]) -> tuple[tuple[int, int], ...]:
    n = len(rows)
    parents = [(0, -1)] * n
    seen = [False] * n
    seen[0] = True
    queue = deque([1])
    while queue:
        c = queue.popleft()
        for col, image in enumerate(rows[c - 1]):
            if not seen[image - 1]:
                seen[image - 1] = True
                parents[image - 1] = (c, col)
                queue.append(image)
    return tuple(parents)


def _finalize(enum: _Enumerator, rank: int) -> CosetTable:
    live = [c for c in range(1, len(enum.tab)) if enum.p[c] == c]
    old2new = {c: i for i, c in enumerate(live, start=1)}
    rows = []
    for c in live:
        row = []
        for x in range(enum.ncols):
            image = enum.tab[c][x]
            if not image:
                raise RuntimeError("incomplete table after enumeration")
            row.append(old2new[enum.rep(image)])
        rows.append(row)

    # BFS renumbering: ids in breadth-first discovery order by generator index.
    n = len(rows)
    order = [0] * (n + 1)
    new_id = [0] * (n + 1)
    count = 0
    queue = deque([1])
    new_id[1] = count = 1
    order[1] = 1
    while queue:
        c = queue.popleft()
        for x in range(enum.ncols):
            image = rows[c - 1][x]
            if not new_id[image]:
                count += 1
                new_id[image] = count
                order[count] = image
                queue.append(image)
    final_rows = tuple(
        tuple(new_id[v] for v in rows[order[c] - 1]) for c in range(1, n + 1)
    )
    return CosetTable(rank, n, final_rows, _bfs_parents(final_rows))


def enumerate_cosets(p: Presentation, subgroup_gens: Sequence[Word] = (),
                     limits: EnumLimits | None = None) -> CosetTable:
    """Enumerate cosets of the subgroup generated by ``subgroup_gens``.

    Raises ``LimitExceeded`` when the enumeration does not close within the
    coset cap.  The returned table is deterministic for fixed inputs.
    """
    limits = limits or EnumLimits()
    n = p.ambient_rank
    for w in subgroup_gens:
        if w.rank != n:
            raise ValueError("subgroup generator rank does not match presentation")
    relators = [_reversed_cols(r) for r in p.relators]
    subgens = [_reversed_cols(w) for w in subgroup_gens]
    enum = _Enumerator(2 * (n - 1), limits.max_cosets)
    if limits.strategy == "hlt":
        _run_hlt(enum, relators, subgens)
    else:
        _run_felsch(enum, relators, subgens)
    return _finalize(enum, n)


def group_order(p: Presentation, limits: EnumLimits | None = None) -> int:
    """Order of the presented group: cosets of the trivial subgroup."""
    return enumerate_cosets(p, (), limits).n_cosets
