"""Symbolic reduction of local closed plane-letter words.

A closed word whose compiled path is local reduces to the empty word using
only: cancellation of adjacent inverse pairs, commutation of disjoint plane
letters, and the eight two-letter identities coming from the triangular
closed paths.  The reduction emits a replayable trace.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from . import hyperocta, sopath
from .words import PlaneLetter

PlaneWord = tuple[PlaneLetter, ...]


def triangular_relators(i: int, j: int, k: int) -> list[PlaneWord]:
    """The four closed triangular words on distinct axes ``i, j, k``.

    Read right to left each is a closed local path; all other closed
    four-letter words on three axes are cyclic permutations of these.
    """
    if len({i, j, k}) != 3:
        raise ValueError("axes must be distinct")
    P = PlaneLetter
    return [
        (P(k, j), P(k, i), P(j, k), P(i, j)),
        (P(j, k), P(i, k), P(k, j), P(i, j)),
        (P(k, i), P(j, k), P(i, k), P(i, j)),
        (P(i, k), P(k, j), P(k, i), P(i, j)),
    ]


def cyclic_rotations(w: PlaneWord) -> list[PlaneWord]:
    return [w[s:] + w[:s] for s in range(len(w))]


# The 24 four-letter identity words among the quarter turns about the three
# coordinate axes in dimension 3, written over the axis alphabet
# (1 = turn about axis 1, i.e. plane (2,3); 2 = plane (3,1); 3 = plane (1,2);
# an apostrophe marks the inverse).
_AXIS_TRIANGLE_WORDS = [
    "3' 1' 2' 1", "3 1' 2 1", "2 3' 2' 1", "2' 3 2 1",
    "3' 2' 3 1", "3 2 3' 1", "2' 1' 3 1", "2 1' 3' 1",
    "1 3 1' 2", "1' 3' 1 2", "3 1' 3' 2", "3' 1 3 2",
    "3' 2' 1 2", "3 2' 1' 2", "1 2' 3 2", "1' 2' 3' 2",
    "1' 2 1 3", "1 2' 1' 3", "2 3' 1 3", "2' 3' 1' 3",
    "2' 1' 2 3", "2 1 2' 3", "1' 3' 2 3", "1 3' 2' 3",
]

_AXIS_PLANES = {1: PlaneLetter(2, 3), 2: PlaneLetter(3, 1), 3: PlaneLetter(1, 2)}


def parse_axis_word(text: str) -> PlaneWord:
    """Parse an axis-alphabet word like ``3' 1' 2' 1`` into plane letters."""
    out = []
    for token in text.split():
        inverse = token.endswith("'")
        axis = int(token.rstrip("'"))
        letter = _AXIS_PLANES[axis]
        out.append(letter.inverse() if inverse else letter)
    return tuple(out)


def axis_triangle_words() -> list[PlaneWord]:
    """The 24 four-letter identity words, as plane-letter words."""
    return [parse_axis_word(text) for text in _AXIS_TRIANGLE_WORDS]


def theta_of_plane_word(pw: Sequence[PlaneLetter], n: int) -> hyperocta.SignedPerm:
    acc = hyperocta.identity_perm(n)
    for letter in pw:
        acc = hyperocta.compose(acc, hyperocta.theta_plane(letter.i, letter.j, n))
    return acc


def plane_word_rank(pw: Sequence[PlaneLetter], n: int | None = None) -> int:
    needed = max((max(l.i, l.j) for l in pw), default=2)
    if n is None:
        return max(needed, 3)
    if needed > n:
        raise ValueError(f"plane word needs rank {needed}, got {n}")
    return n


@dataclass(frozen=True)
class ReductionStep:
    """One rewrite: ``kind`` is cancel, swap, or rewrite; ``pos`` indexes the
    left letter of the affected pair in the word before the step."""

    kind: str
    pos: int
    before: PlaneWord
    after: PlaneWord


@dataclass
class ReductionTrace:
    initial: PlaneWord
    steps: list[ReductionStep]

    def __len__(self) -> int:
        return len(self.steps)


def apply_step(word: PlaneWord, step: ReductionStep) -> PlaneWord:
    """Apply one recorded step, checking it matches the word."""
    seg = word[step.pos:step.pos + len(step.before)]
    if seg != step.before:
        raise ValueError(f"trace mismatch at position {step.pos}: "
                         f"expected {step.before}, found {seg}")
    return word[:step.pos] + step.after + word[step.pos + len(step.before):]


def replay_trace(trace: ReductionTrace) -> PlaneWord:
    """Re-run a trace from its initial word; returns the final word."""
    word = trace.initial
    for step in trace.steps:
        word = apply_step(word, step)
    return word


def _pair_rewrite(left: PlaneLetter, carrier: PlaneLetter, moving: int
                  ) -> tuple[PlaneLetter, PlaneLetter]:
    """Rewrite (left, carrier) so the letter containing the moving index
    lands on the left and the right letter avoids it.

    The eight cases are the triangular identities; requires exactly one
    shared axis between the letters and ``moving`` in the carrier.
    """
    i = moving
    if carrier.i == i:
        j = carrier.j
    elif carrier.j == i:
        j = carrier.i
    else:
        raise ValueError("carrier does not contain the moving index")
    shared = {left.i, left.j} & {carrier.i, carrier.j}
    if len(shared) != 1:
        raise ValueError("letters must share exactly one axis")
    k = left.i if left.i not in (i, j) else left.j
    P = PlaneLetter
    if carrier == P(i, j):
        table = {
            P(j, k): (P(i, k), P(j, k)),
            P(k, j): (P(k, i), P(k, j)),
            P(i, k): (P(i, j), P(k, j)),
            P(k, i): (P(i, j), P(j, k)),
        }
    else:  # carrier == P(j, i)
        table = {
            P(j, k): (P(k, i), P(j, k)),
            P(k, j): (P(i, k), P(k, j)),
            P(i, k): (P(j, i), P(j, k)),
            P(k, i): (P(j, i), P(k, j)),
        }
    return table[left]


class NotLocalClosedError(ValueError):
    """The word is not a closed local word, so the reduction is refused."""


def reduce_local_word(pw: Sequence[PlaneLetter], n: int | None = None,
                      check_local: bool = True) -> ReductionTrace:
    """Reduce a local closed plane-letter word to the empty word.

    Repeatedly takes the rightmost letter and moves its first axis leftward:
    disjoint letters commute past it, the triangular identities rewrite
    adjacent letters sharing one axis, and meeting the inverse cancels the
    pair.  Refuses words whose image under theta is not the identity or
    whose compiled path is not local.
    """
    n = plane_word_rank(pw, n)
    word: PlaneWord = tuple(pw)
    if not theta_of_plane_word(word, n).is_identity():
        raise NotLocalClosedError("word is not closed: theta image is not the identity")
    if check_local and not sopath.is_local(sopath.compile_path(word, n)):
        raise NotLocalClosedError("compiled path leaves a closed half-space")

    trace = ReductionTrace(word, [])
    budget = 4 * (len(word) + 1) ** 2

    def record(kind: str, pos: int, before: PlaneWord, after: PlaneWord) -> None:
        nonlocal word
        step = ReductionStep(kind, pos, before, after)
        word = apply_step(word, step)
        trace.steps.append(step)

    while word:
        if len(trace.steps) > budget:
            raise NotLocalClosedError("reduction did not terminate; word is not local")
        pos = len(word) - 1
        carrier = word[pos]
        moving = carrier.i
        cancelled = False
        while pos > 0:
            left = word[pos - 1]
            pair = (left, carrier)
            if left == carrier.inverse():
                record("cancel", pos - 1, pair, ())
                cancelled = True
                break
            if left == carrier:
                raise NotLocalClosedError(
                    f"repeated letter {carrier} reached; word is not local")
            if not ({left.i, left.j} & {carrier.i, carrier.j}):
                record("swap", pos - 1, pair, (carrier, left))
            else:
                new_pair = _pair_rewrite(left, carrier, moving)
                record("rewrite", pos - 1, pair, new_pair)
                carrier = new_pair[0]
            pos -= 1
        if not cancelled:
            raise NotLocalClosedError(
                "moving letter reached the left end without cancelling; "
                "word is not a closed local word")
    return trace


def random_local_closed_word(rng: random.Random, n: int = 3,
                             factors: int = 2, max_conj: int = 2,
                             max_tries: int = 200) -> PlaneWord:
    """A random product of conjugated triangular relators whose compiled
    path is verified local; used as reduction test input."""
    axes = list(range(1, n + 1))
    all_letters = [PlaneLetter(i, j) for i in axes for j in axes if i != j]
    for _ in range(max_tries):
        word: list[PlaneLetter] = []
        for _ in range(factors):
            i, j, k = rng.sample(axes, 3)
            rel = rng.choice(triangular_relators(i, j, k))
            rel = rng.choice(cyclic_rotations(rel))
            conj = [rng.choice(all_letters) for _ in range(rng.randint(0, max_conj))]
            conj_inv = [l.inverse() for l in reversed(conj)]
            word.extend(conj + list(rel) + conj_inv)
        candidate = tuple(word)
        if not theta_of_plane_word(candidate, n).is_identity():
            continue
        if sopath.is_local(sopath.compile_path(candidate, n)):
            return candidate
    raise RuntimeError("could not generate a local closed word")
