"""Signed permutations of ``{±1, .., ±n}`` and the homomorphism theta from
the double-cover groups onto the rotational hyperoctahedral group.

A signed permutation stores the images of ``+1 .. +n``; the image of ``-i``
is the negation of the image of ``+i``.  The group acts on the left, so
``compose(a, b)`` applies ``b`` first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .words import Letter, Word

if TYPE_CHECKING:  # pragma: no cover
    from .quotient import GroupCtx


@dataclass(frozen=True)
class SignedPerm:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if sorted(abs(v) for v in self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a signed permutation: {self.images}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        """Image of the signed point ``x``."""
        if x > 0:
            return self.images[x - 1]
        return -self.images[-x - 1]

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.n + 1))

    def __str__(self) -> str:
        return "[" + ",".join(str(v) for v in self.images) + "]"


def identity_perm(n: int) -> SignedPerm:
    return SignedPerm(tuple(range(1, n + 1)))


def compose(a: SignedPerm, b: SignedPerm) -> SignedPerm:
    """The product ``a ∘ b``: apply ``b`` first, then ``a``."""
    if a.n != b.n:
        raise ValueError("size mismatch")
    return SignedPerm(tuple(a(v) for v in b.images))


def inverse(p: SignedPerm) -> SignedPerm:
    images = [0] * p.n
    for i, v in enumerate(p.images, start=1):
        if v > 0:
            images[v - 1] = i
        else:
            images[-v - 1] = -i
    return SignedPerm(tuple(images))


def determinant(p: SignedPerm) -> int:
    """Sign of the underlying permutation times the product of entry signs."""
    perm = [abs(v) - 1 for v in p.images]
    seen = [False] * p.n
    sign = 1
    for start in range(p.n):
        if seen[start]:
            continue
        length = 0
        cur = start
        while not seen[cur]:
            seen[cur] = True
            cur = perm[cur]
            length += 1
        if length % 2 == 0:
            sign = -sign
    for v in p.images:
        if v < 0:
            sign = -sign
    return sign


def theta_plane(i: int, j: int, n: int) -> SignedPerm:
    """Image of the quarter turn in plane ``(i, j)``: ``i -> j``, ``j -> -i``."""
    if i == j:
        raise ValueError("plane axes must differ")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"axes ({i},{j}) out of range for n={n}")
    images = list(range(1, n + 1))
    images[i - 1] = j
    images[j - 1] = -i
    return SignedPerm(tuple(images))


def theta_generator(i: int, n: int) -> SignedPerm:
    """Image of the standard generator ``Ri``; cycles ``{i, i+1, -i, -(i+1)}``."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range for n={n}")
    return theta_plane(i, i + 1, n)


def theta_letter(letter: Letter, n: int) -> SignedPerm:
    img = theta_generator(letter.index, n)
    return img if letter.exp == 1 else inverse(img)


def theta_word(w: Word, n: int | None = None) -> SignedPerm:
    """Image of a word; the rightmost letter is applied first."""
    if n is None:
        n = w.rank
    acc = identity_perm(n)
    for letter in w.letters:
        acc = compose(acc, theta_letter(letter, n))
    return acc


@dataclass(frozen=True)
class ThetaImage:
    """A signed permutation tagged with its determinant sign.

    Images of group words always carry determinant +1 (rotations only);
    the constructor enforces the tag against the permutation.
    """

    perm: SignedPerm
    det: int

    def __post_init__(self) -> None:
        if self.det != determinant(self.perm):
            raise ValueError("determinant tag does not match the permutation")


def theta_image(w: Word, n: int | None = None) -> ThetaImage:
    perm = theta_word(w, n)
    return ThetaImage(perm, determinant(perm))


def as_matrix(p: SignedPerm) -> np.ndarray:
    """The n-by-n signed permutation matrix sending ``e_i`` to its image."""
    m = np.zeros((p.n, p.n))
    for i, v in enumerate(p.images):
        m[abs(v) - 1, i] = 1.0 if v > 0 else -1.0
    return m


def theta_images(g: "GroupCtx") -> list[SignedPerm | None]:
    """Theta image of every element, indexed by coset id (index 0 unused).

    Walks the coset table's spanning tree, so each element costs one
    composition; agrees with ``theta_word`` on any representative word.
    """
    n = g.rank
    images: list[SignedPerm | None] = [None] * (g.order + 1)
    images[1] = identity_perm(n)
    letter_images = {}
    for i in range(1, n):
        letter_images[Letter(i, 1)] = theta_generator(i, n)
        letter_images[Letter(i, -1)] = inverse(theta_generator(i, n))
    for c in range(2, g.order + 1):
        parent, letter = g.table.parent_edge(c)
        images[c] = compose(letter_images[letter], images[parent])
    return images


def kernel(g: "GroupCtx") -> list[int]:
    """All elements whose theta image is the identity, by exhaustive scan."""
    images = theta_images(g)
    return [c for c in range(1, g.order + 1) if images[c].is_identity()]


def rotation_image(g: "GroupCtx") -> set[SignedPerm]:
    """The full image of theta, collected over every element."""
    return {img for img in theta_images(g)[1:]}
