"""Free words over the standard generators ``R1 .. R(n-1)`` and the
defining presentations of the double-cover groups.

Convention, shared by every module in this package: within a word the
leftmost letter acts *last*.  ``R1 R2`` means "apply R2 first, then R1",
matching matrix products and composition of signed permutations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Literal, NamedTuple, Sequence

Variant = Literal["standard", "twisted"]

VARIANTS = ("standard", "twisted")


class Letter(NamedTuple):
    """One signed generator occurrence: ``R<index>`` raised to ``exp`` (+1 or -1)."""

    index: int
    exp: int

    def inverse(self) -> "Letter":
        return Letter(self.index, -self.exp)


class PlaneLetter(NamedTuple):
    """Quarter turn in the oriented coordinate plane ``(i, j)``.

    The turn sends axis ``i`` onto axis ``j`` and axis ``j`` onto ``-i``;
    its inverse is the letter ``(j, i)``.
    """

    i: int
    j: int

    def inverse(self) -> "PlaneLetter":
        return PlaneLetter(self.j, self.i)


@dataclass(frozen=True)
class Word:
    """A word over the rank-``rank`` alphabet; letter indices run in ``1..rank-1``."""

    letters: tuple[Letter, ...]
    rank: int

    def __post_init__(self) -> None:
        if self.rank < 2:
            raise ValueError(f"rank must be at least 2, got {self.rank}")
        for letter in self.letters:
            if not 1 <= letter.index <= self.rank - 1:
                raise ValueError(
                    f"letter index {letter.index} out of range for rank {self.rank}"
                )
            if letter.exp not in (1, -1):
                raise ValueError(f"letter exponent must be +1 or -1, got {letter.exp}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        if self.rank != other.rank:
            raise ValueError("cannot concatenate words of different ranks")
        return Word(self.letters + other.letters, self.rank)

    def __str__(self) -> str:
        return word_str(self)


def empty_word(rank: int) -> Word:
    return Word((), rank)


def word(letters: Iterable[tuple[int, int]], rank: int) -> Word:
    """Build a word from ``(index, exp)`` pairs."""
    return Word(tuple(Letter(i, e) for i, e in letters), rank)


def gen(index: int, rank: int, exp: int = 1) -> Word:
    """The word ``R<index>^exp`` for any integer exponent."""
    sign = 1 if exp >= 0 else -1
    return Word(tuple(Letter(index, sign) for _ in range(abs(exp))), rank)


_TOKEN_RE = re.compile(r"^R(\d+)(\^-1)?$")


def parse_word(text: str, rank: int) -> Word:
    """Parse whitespace-separated tokens ``R<k>`` / ``R<k>^-1`` into a word.

    The token order is the letter order (leftmost token acts last); the
    result is not freely reduced.
    """
    letters = []
    for token in text.split():
        m = _TOKEN_RE.match(token)
        if m is None:
            raise ValueError(f"malformed word token {token!r}")
        index = int(m.group(1))
        if not 1 <= index <= rank - 1:
            raise ValueError(f"generator index {index} out of range for rank {rank}")
        letters.append(Letter(index, -1 if m.group(2) else 1))
    return Word(tuple(letters), rank)


def word_str(w: Word) -> str:
    """Render a word with collapsed powers, e.g. ``R1^4 R2^-1``; identity is ``1``."""
    if not w.letters:
        return "1"
    parts: list[str] = []
    run_letter = w.letters[0]
    run = 0
    for letter in w.letters + (Letter(0, 1),):  # sentinel flushes the last run
        if letter == run_letter:
            run += 1
            continue
        power = run * run_letter.exp
        parts.append(f"R{run_letter.index}" + (f"^{power}" if power != 1 else ""))
        run_letter = letter
        run = 1
    return " ".join(parts)


def free_reduce(w: Word) -> Word:
    """The unique freely reduced form of ``w`` (adjacent inverse pairs removed)."""
    stack: list[Letter] = []
    for letter in w.letters:
        if stack and stack[-1].index == letter.index and stack[-1].exp == -letter.exp:
            stack.pop()
        else:
            stack.append(letter)
    return Word(tuple(stack), w.rank)


def invert(w: Word) -> Word:
    """The inverse word: reversed letter order with negated exponents."""
    return Word(tuple(l.inverse() for l in reversed(w.letters)), w.rank)


def is_reduced(w: Word) -> bool:
    return len(free_reduce(w)) == len(w)


@dataclass(frozen=True)
class Presentation:
    """A finite presentation: ``rank`` generators plus the relator list.

    ``rank`` counts generators, so the words themselves live at ambient
    rank ``rank + 1``.
    """

    rank: int
    relators: tuple[Word, ...]
    variant: Variant = "standard"

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        for rel in self.relators:
            if not rel.letters:
                raise ValueError("relators must be nonempty")
            if not is_reduced(rel):
                raise ValueError(f"relator {word_str(rel)} is not freely reduced")
            if rel.rank != self.rank + 1:
                raise ValueError("relator rank does not match presentation rank")

    @property
    def ambient_rank(self) -> int:
        return self.rank + 1


def presentation_for(n: int, variant: Variant = "standard") -> Presentation:
    """The rank-(n-1) presentation of the degree-``n`` double cover.

    Relators: the braid relations ``Ri R(i+1) Ri = R(i+1) Ri R(i+1)``,
    far commutation ``[Ri, Rj]`` for ``|i-j| >= 2``, and the variant's
    extra relator(s): ``R1^2 = R2 R1^2 R2`` for the standard series;
    ``R1^2 = R2 R1^6 R2`` together with ``[R1^4, R2]`` for the twisted one.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    rels: list[Word] = []
    for i in range(1, n - 1):
        braid = gen(i, n) * gen(i + 1, n) * gen(i, n)
        rels.append(free_reduce(braid * invert(gen(i + 1, n) * gen(i, n) * gen(i + 1, n))))
    for i in range(1, n - 1):
        for j in range(i + 2, n):
            rels.append(gen(i, n) * gen(j, n) * gen(i, n, -1) * gen(j, n, -1))
    if variant == "standard":
        rels.append(free_reduce(gen(1, n, 2) * invert(gen(2, n) * gen(1, n, 2) * gen(2, n))))
    elif variant == "twisted":
        rels.append(free_reduce(gen(1, n, 2) * invert(gen(2, n) * gen(1, n, 6) * gen(2, n))))
        rels.append(gen(1, n, 4) * gen(2, n) * gen(1, n, -4) * gen(2, n, -1))
        # The central element R1^4 must square to the identity; without this
        # the twisted relators leave a spurious cyclic quotient of order 3.
        rels.append(gen(1, n, 8))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return Presentation(n - 1, tuple(rels), variant)


def _plane_word(a: int, b: int) -> list[Letter]:
    # Base cases are the standard generators; a descending pair (a, b) with
    # a > b + 1 peels down by one through conjugation by the (b, a-1) turn.
    if b == a + 1:
        return [Letter(a, 1)]
    if a == b + 1:
        return [Letter(b, -1)]
    if a > b:
        conj = _plane_word(b, a - 1)
        inv = [l.inverse() for l in reversed(conj)]
        return conj + [Letter(a - 1, 1)] + inv
    return [l.inverse() for l in reversed(_plane_word(b, a))]


def plane_to_standard(pw: Sequence[PlaneLetter], n: int) -> Word:
    """Rewrite a sequence of plane letters as a freely reduced standard word."""
    letters: list[Letter] = []
    for pl in pw:
        if pl.i == pl.j:
            raise ValueError(f"plane letter needs distinct axes, got {pl}")
        if not (1 <= pl.i <= n and 1 <= pl.j <= n):
            raise ValueError(f"plane letter {pl} out of range for n={n}")
        letters.extend(_plane_word(pl.i, pl.j))
    return free_reduce(Word(tuple(letters), n))


def standard_to_plane(w: Word) -> tuple[PlaneLetter, ...]:
    """Expand a standard-generator word into plane letters, one per letter."""
    out = []
    for letter in w.letters:
        if letter.exp == 1:
            out.append(PlaneLetter(letter.index, letter.index + 1))
        else:
            out.append(PlaneLetter(letter.index + 1, letter.index))
    return tuple(out)


def emit_presentation(p: Presentation) -> str:
    """Serialize a presentation in the line-oriented text format.

    Format: a ``rank: <generator count>`` line, then one ``relator: <tokens>``
    line per relator; ``#`` starts a comment.  An optional ``variant:`` line
    is accepted so that round trips keep the variant tag.
    """
    lines = [f"rank: {p.rank}", f"variant: {p.variant}"]
    for rel in p.relators:
        tokens = " ".join(
            f"R{l.index}" + ("^-1" if l.exp == -1 else "") for l in rel.letters
        )
        lines.append(f"relator: {tokens}")
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> Presentation:
    rank: int | None = None
    variant: Variant = "standard"
    relators: list[Word] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.partition(":")
        key = key.strip()
        value = value.strip()
        if key == "rank":
            rank = int(value)
        elif key == "variant":
            if value not in VARIANTS:
                raise ValueError(f"unknown variant {value!r}")
            variant = value  # type: ignore[assignment]
        elif key == "relator":
            if rank is None:
                raise ValueError("relator line before rank line")
            relators.append(parse_word(value, rank + 1))
        else:
            raise ValueError(f"unrecognized line {raw!r}")
    if rank is None:
        raise ValueError("missing rank line")
    return Presentation(rank, tuple(relators), variant)
