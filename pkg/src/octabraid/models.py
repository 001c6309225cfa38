"""Exact realizations of the three nontrivial central extensions of S4:
the binary octahedral group as unit quaternions, GL(2,3), and SL(2, Z/4).

All arithmetic is exact.  Quaternion coordinates live in the ring of
dyadic sqrt-2 numbers ``(a + b*sqrt(2)) / 2^k``; matrix entries are residues.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")


@dataclass(frozen=True)
class DyadicRt2:
    """The number ``(a + b*sqrt(2)) / 2^k``, kept normalized (a, b not both
    even while k > 0)."""

    a: int
    b: int
    k: int = 0

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError("denominator exponent must be nonnegative")
        a, b, k = self.a, self.b, self.k
        while k > 0 and a % 2 == 0 and b % 2 == 0:
            a //= 2
            b //= 2
            k -= 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "k", k)

    @classmethod
    def from_int(cls, v: int) -> "DyadicRt2":
        return cls(v, 0, 0)

    def __add__(self, other: "DyadicRt2") -> "DyadicRt2":
        k = max(self.k, other.k)
        sa = self.a << (k - self.k)
        sb = self.b << (k - self.k)
        oa = other.a << (k - other.k)
        ob = other.b << (k - other.k)
        return DyadicRt2(sa + oa, sb + ob, k)

    def __neg__(self) -> "DyadicRt2":
        return DyadicRt2(-self.a, -self.b, self.k)

    def __sub__(self, other: "DyadicRt2") -> "DyadicRt2":
        return self + (-other)

    def __mul__(self, other: "DyadicRt2") -> "DyadicRt2":
        a = self.a * other.a + 2 * self.b * other.b
        b = self.a * other.b + self.b * other.a
        return DyadicRt2(a, b, self.k + other.k)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __float__(self) -> float:
        return (self.a + self.b * math.sqrt(2.0)) / (1 << self.k)

    def __str__(self) -> str:
        return f"({self.a}{self.b:+}*rt2)/2^{self.k}"


ZERO = DyadicRt2(0, 0)
ONE = DyadicRt2(1, 0)
HALF_RT2 = DyadicRt2(0, 1, 1)  # 1/sqrt(2)


@dataclass(frozen=True)
class Quaternion:
    w: DyadicRt2
    x: DyadicRt2
    y: DyadicRt2
    z: DyadicRt2

    def norm2(self) -> DyadicRt2:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def __str__(self) -> str:
        return f"({float(self.w):+.4f}{float(self.x):+.4f}i{float(self.y):+.4f}j{float(self.z):+.4f}k)"


def quat(w=0, x=0, y=0, z=0) -> Quaternion:
    conv = lambda v: v if isinstance(v, DyadicRt2) else DyadicRt2.from_int(v)
    return Quaternion(conv(w), conv(x), conv(y), conv(z))


Q_ONE = quat(1)
Q_I = quat(0, 1)
Q_J = quat(0, 0, 1)
Q_K = quat(0, 0, 0, 1)

U1 = Quaternion(HALF_RT2, ZERO, ZERO, -HALF_RT2)  # (1 - k)/sqrt(2)
U2 = Quaternion(HALF_RT2, ZERO, -HALF_RT2, ZERO)  # (1 - j)/sqrt(2)


def quat_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Exact Hamilton product."""
    return Quaternion(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )


def hurwitz_units() -> set[Quaternion]:
    """The 24 quaternions ±1, ±i, ±j, ±k and (±1 ± i ± j ± k)/2."""
    units = set()
    for axis in range(4):
        for sign in (1, -1):
            coords = [0, 0, 0, 0]
            coords[axis] = sign
            units.add(quat(*coords))
    for signs in itertools.product((1, -1), repeat=4):
        units.add(Quaternion(*(DyadicRt2(s, 0, 1) for s in signs)))
    assert len(units) == 24
    return units


def sqrt2_units() -> set[Quaternion]:
    """The 24 quaternions (±e ± f)/sqrt(2) over distinct basis elements e, f."""
    units = set()
    for e, f in itertools.combinations(range(4), 2):
        for se, sf in itertools.product((1, -1), repeat=2):
            coords = [ZERO] * 4
            coords[e] = DyadicRt2(0, se, 1)
            coords[f] = DyadicRt2(0, sf, 1)
            units.add(Quaternion(*coords))
    assert len(units) == 24
    return units


@dataclass(frozen=True)
class Mat2:
    """A 2x2 matrix over Z/mod."""

    a: int
    b: int
    c: int
    d: int
    mod: int

    def __post_init__(self) -> None:
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % self.mod)

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.mod

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]] mod {self.mod}"


def mat_mul(p: Mat2, q: Mat2) -> Mat2:
    if p.mod != q.mod:
        raise ValueError("modulus mismatch")
    return Mat2(
        p.a * q.a + p.b * q.c,
        p.a * q.b + p.b * q.d,
        p.c * q.a + p.d * q.c,
        p.c * q.b + p.d * q.d,
        p.mod,
    )


GL23_R1 = Mat2(1, 1, 1, 0, 3)
GL23_R2 = Mat2(1, 2, 2, 0, 3)
SL24_R1 = Mat2(1, 0, 1, 1, 4)
SL24_R2 = Mat2(3, 3, 0, 3, 4)


def gl23_all() -> set[Mat2]:
    """Every invertible 2x2 matrix over Z/3, by brute force over all 81."""
    out = set()
    for a, b, c, d in itertools.product(range(3), repeat=4):
        m = Mat2(a, b, c, d, 3)
        if m.det() % 3 != 0:
            out.add(m)
    return out


def sl24_all() -> set[Mat2]:
    """Every 2x2 matrix over Z/4 with determinant 1."""
    out = set()
    for a, b, c, d in itertools.product(range(4), repeat=4):
        m = Mat2(a, b, c, d, 4)
        if m.det() == 1:
            out.add(m)
    return out


def generate_closure(gens: Sequence[T], mul: Callable[[T, T], T], identity: T,
                     max_size: int = 10_000) -> list[T]:
    """Multiplicative closure of ``gens`` plus the identity, in deterministic
    breadth-first order.  Raises if the closure exceeds ``max_size``."""
    elements = [identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                prod = mul(e, g)
                if prod not in seen:
                    if len(seen) >= max_size:
                        raise RuntimeError(f"closure exceeded {max_size} elements")
                    seen.add(prod)
                    elements.append(prod)
                    nxt.append(prod)
        frontier = nxt
    return elements


def element_orders(elements: Iterable[T], mul: Callable[[T, T], T], identity: T
                   ) -> Counter:
    counts: Counter = Counter()
    for e in elements:
        k = 1
        cur = e
        while cur != identity:
            cur = mul(cur, e)
            k += 1
        counts[k] += 1
    return counts


def _inverses(elements: Sequence[T], mul: Callable[[T, T], T], identity: T
              ) -> dict[T, T]:
    inv = {}
    for e in elements:
        for f in elements:
            if mul(e, f) == identity:
                inv[e] = f
                break
    return inv


def commutator_subgroup(elements: Sequence[T], mul: Callable[[T, T], T],
                        identity: T) -> set[T]:
    inv = _inverses(elements, mul, identity)
    comms = {
        mul(mul(g, h), mul(inv[g], inv[h]))
        for g in elements
        for h in elements
    }
    return set(generate_closure(sorted_stable(comms, elements), mul, identity,
                                max_size=len(elements) + 1))


def sorted_stable(subset: set[T], universe: Sequence[T]) -> list[T]:
    """Order a subset by its first appearance in a reference sequence."""
    member = subset.__contains__
    return [e for e in universe if member(e)]


def stem_test(elements: Sequence[T], mul: Callable[[T, T], T], identity: T,
              central: T) -> bool:
    """Whether a central element lies in the commutator subgroup."""
    for g in elements:
        if mul(g, central) != mul(central, g):
            raise ValueError("element is not central")
    return central in commutator_subgroup(elements, mul, identity)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"CHECK {self.name}: {status}" + (f" {self.detail}" if self.detail else "")


@dataclass(frozen=True)
class Report:
    title: str
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_text(self) -> str:
        lines = [f"# {self.title}"]
        lines += [c.line() for c in self.checks]
        lines.append(f"RESULT: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "title": self.title,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
        }
        return json.dumps(payload, sort_keys=True, indent=2)


def _quat_order(q: Quaternion) -> int:
    k = 1
    cur = q
    while cur != Q_ONE:
        cur = quat_mul(cur, q)
        k += 1
    return k


def verify_2O(group_ctx=None) -> Report:
    """Check the unit-quaternion model of the order-48 double cover.

    Verifies the closure of the two square-root generators, its exact element
    set (Hurwitz units plus the sqrt-2 halved units), the defining relations,
    and that sending the generators onto R1, R2 induces an isomorphism with
    the enumerated rank-3 group.
    """
    checks = []
    closure = generate_closure([U1, U2], quat_mul, Q_ONE, max_size=200)
    checks.append(Check("closure-size", len(closure) == 48, f"got {len(closure)}"))

    expected = hurwitz_units() | sqrt2_units()
    checks.append(Check(
        "element-set",
        set(closure) == expected,
        "24 Hurwitz units + 24 sqrt2-halved units",
    ))
    checks.append(Check(
        "unit-norms",
        all(q.norm2() == ONE for q in closure),
        "exact norm 1",
    ))
    checks.append(Check(
        "denominator-level",
        all(v.k <= 1 for q in closure for v in (q.w, q.x, q.y, q.z)),
        "k <= 1 after normalization",
    ))
    checks.append(Check(
        "u1-squared",
        quat_mul(U1, U1) == -Q_K,
        "u1^2 = -k",
    ))
    braid_l = quat_mul(quat_mul(U2, U1), U2)
    braid_r = quat_mul(quat_mul(U1, U2), U1)
    checks.append(Check("braid", braid_l == braid_r, "u2 u1 u2 = u1 u2 u1"))
    lhs = quat_mul(U1, U1)
    rhs = quat_mul(quat_mul(U2, lhs), U2)
    checks.append(Check("square-relation", lhs == rhs, "u1^2 = u2 u1^2 u2"))
    checks.append(Check("u1-order", _quat_order(U1) == 8, f"got {_quat_order(U1)}"))

    hur = sorted_stable(hurwitz_units(), closure)
    hur_closed = generate_closure(hur, quat_mul, Q_ONE, max_size=100)
    checks.append(Check(
        "hurwitz-subgroup",
        set(hur_closed) == hurwitz_units() and len(hur_closed) == 24,
        "the 24 Hurwitz units close on themselves",
    ))

    if group_ctx is None:
        from .quotient import GroupCtx

        group_ctx = GroupCtx.build(3)
    iso_ok, detail = _check_isomorphism(closure, group_ctx)
    checks.append(Check("isomorphism-rank3", iso_ok, detail))
    return Report("binary octahedral model", tuple(checks))


def _check_isomorphism(closure: Sequence[Quaternion], g) -> tuple[bool, str]:
    """Map u1 -> R1, u2 -> R2 by generator-word reachability, then compare
    all 48x48 products."""
    from .words import gen

    r1 = g.element_from_word(gen(1, 3))
    r2 = g.element_from_word(gen(2, 3))
    phi = {Q_ONE: 1}
    frontier = [Q_ONE]
    while frontier:
        nxt = []
        for q in frontier:
            for u, r in ((U1, r1), (U2, r2)):
                prod = quat_mul(q, u)
                image = g.compose_ids(phi[q], r)
                if prod not in phi:
                    phi[prod] = image
                    nxt.append(prod)
                elif phi[prod] != image:
                    return False, "inconsistent generator-word images"
        frontier = nxt
    if len(phi) != 48 or len(set(phi.values())) != 48:
        return False, f"map covers {len(phi)} quaternions, {len(set(phi.values()))} elements"
    for p in closure:
        for q in closure:
            if phi[quat_mul(p, q)] != g.compose_ids(phi[p], phi[q]):
                return False, f"product mismatch at {p} * {q}"
    return True, "bijective and multiplicative on all 48x48 products"


def _mat_order(m: Mat2, identity: Mat2) -> int:
    k = 1
    cur = m
    while cur != identity:
        cur = mat_mul(cur, m)
        k += 1
    return k


def verify_matrix_model(which: str, as_report: bool = True) -> Report:
    """Check the GL(2,3) or SL(2, Z/4) model against its stated relations."""
    which = which.lower()
    checks = []
    if which == "gl23":
        r1, r2 = GL23_R1, GL23_R2
        identity = Mat2(1, 0, 0, 1, 3)
        closure = generate_closure([r1, r2], mat_mul, identity, max_size=200)
        checks.append(Check("closure-size", len(closure) == 48, f"got {len(closure)}"))
        checks.append(Check(
            "full-gl23",
            set(closure) == gl23_all(),
            "closure equals all invertible 2x2 matrices mod 3",
        ))
        braid_l = mat_mul(mat_mul(r1, r2), r1)
        braid_r = mat_mul(mat_mul(r2, r1), r2)
        checks.append(Check("braid", braid_l == braid_r))
        r1_2 = mat_mul(r1, r1)
        r1_6 = _mat_pow(r1, 6)
        checks.append(Check(
            "twisted-square",
            r1_2 == mat_mul(mat_mul(r2, r1_6), r2),
            "R1^2 = R2 R1^6 R2",
        ))
        r1_4 = _mat_pow(r1, 4)
        checks.append(Check(
            "central-r1^4",
            all(mat_mul(m, r1_4) == mat_mul(r1_4, m) for m in closure),
            "R1^4 commutes with everything",
        ))
        checks.append(Check("r1-order", _mat_order(r1, identity) == 8,
                            f"R1 order: {_mat_order(r1, identity)}"))
        return Report("GL(2,3) model", tuple(checks))
    if which == "sl24":
        r1, r2 = SL24_R1, SL24_R2
        identity = Mat2(1, 0, 0, 1, 4)
        closure = generate_closure([r1, r2], mat_mul, identity, max_size=200)
        checks.append(Check("closure-size", len(closure) == 48, f"got {len(closure)}"))
        checks.append(Check(
            "unit-determinants",
            all(m.det() == 1 for m in closure),
            "all determinants are 1 mod 4",
        ))
        checks.append(Check(
            "full-sl24",
            set(closure) == sl24_all(),
            "closure equals all det-1 matrices mod 4",
        ))
        braid_l = mat_mul(mat_mul(r1, r2), r1)
        braid_r = mat_mul(mat_mul(r2, r1), r2)
        checks.append(Check("braid", braid_l == braid_r))
        checks.append(Check("r1^4", _mat_pow(r1, 4) == identity, "R1^4 = 1"))
        r1r2 = mat_mul(r1, r2)
        checks.append(Check("(r1r2)^6", _mat_pow(r1r2, 6) == identity, "(R1 R2)^6 = 1"))
        checks.append(Check("r1-order", _mat_order(r1, identity) == 4,
                            f"R1 order: {_mat_order(r1, identity)}"))
        return Report("SL(2,Z4) model", tuple(checks))
    raise ValueError(f"unknown matrix model {which!r}")


def _mat_pow(m: Mat2, k: int) -> Mat2:
    out = Mat2(1, 0, 0, 1, m.mod)
    for _ in range(k):
        out = mat_mul(out, m)
    return out


def stem_report() -> Report:
    """Stem-extension test for the three models.

    For the quaternion and GL(2,3) covers the kernel generator lies in the
    commutator subgroup; for SL(2, Z/4) (center generated by (R1 R2)^3) it
    does not.
    """
    checks = []
    closure_q = generate_closure([U1, U2], quat_mul, Q_ONE, max_size=200)
    checks.append(Check(
        "2o-stem",
        stem_test(closure_q, quat_mul, Q_ONE, -Q_ONE) is True,
        "-1 is in the commutator subgroup",
    ))
    identity3 = Mat2(1, 0, 0, 1, 3)
    closure_g = generate_closure([GL23_R1, GL23_R2], mat_mul, identity3, max_size=200)
    checks.append(Check(
        "gl23-stem",
        stem_test(closure_g, mat_mul, identity3, _mat_pow(GL23_R1, 4)) is True,
        "R1^4 is in the commutator subgroup",
    ))
    identity4 = Mat2(1, 0, 0, 1, 4)
    closure_s = generate_closure([SL24_R1, SL24_R2], mat_mul, identity4, max_size=200)
    center_gen = _mat_pow(mat_mul(SL24_R1, SL24_R2), 3)
    checks.append(Check(
        "sl24-not-stem",
        stem_test(closure_s, mat_mul, identity4, center_gen) is False,
        "(R1 R2)^3 is central but outside the commutator subgroup",
    ))
    return Report("stem extension tests", tuple(checks))


def extension_report() -> Report:
    """Fingerprint the three extensions: order, element-order multiset, stem."""
    closure_q = generate_closure([U1, U2], quat_mul, Q_ONE, max_size=200)
    identity3 = Mat2(1, 0, 0, 1, 3)
    closure_g = generate_closure([GL23_R1, GL23_R2], mat_mul, identity3, max_size=200)
    identity4 = Mat2(1, 0, 0, 1, 4)
    closure_s = generate_closure([SL24_R1, SL24_R2], mat_mul, identity4, max_size=200)

    orders_q = element_orders(closure_q, quat_mul, Q_ONE)
    orders_g = element_orders(closure_g, mat_mul, identity3)
    orders_s = element_orders(closure_s, mat_mul, identity4)

    checks = [
        Check("orders-48", len(closure_q) == len(closure_g) == len(closure_s) == 48),
        Check("2o-order-multiset", True, _fmt_counter(orders_q)),
        Check("gl23-order-multiset", True, _fmt_counter(orders_g)),
        Check("sl24-order-multiset", True, _fmt_counter(orders_s)),
        Check(
            "pairwise-distinct",
            orders_q != orders_g and orders_q != orders_s and orders_g != orders_s,
            "order multisets separate the three extensions",
        ),
        Check(
            "max-generator-order",
            _quat_order(U1) == 8
            and _mat_order(GL23_R1, identity3) == 8
            and _mat_order(SL24_R1, identity4) == 4,
            "generator order 8 / 8 / 4",
        ),
    ]
    stem = stem_report()
    return Report("central extensions of S4", tuple(checks) + stem.checks)


def order_multiset(which: str) -> Counter:
    which = which.lower()
    if which == "2o":
        return element_orders(generate_closure([U1, U2], quat_mul, Q_ONE, 200),
                              quat_mul, Q_ONE)
    if which == "gl23":
        identity = Mat2(1, 0, 0, 1, 3)
        return element_orders(generate_closure([GL23_R1, GL23_R2], mat_mul, identity, 200),
                              mat_mul, identity)
    if which == "sl24":
        identity = Mat2(1, 0, 0, 1, 4)
        return element_orders(generate_closure([SL24_R1, SL24_R2], mat_mul, identity, 200),
                              mat_mul, identity)
    raise ValueError(f"unknown model {which!r}")


def _fmt_counter(c: Counter) -> str:
    return "{" + ", ".join(f"{k}: {c[k]}" for k in sorted(c)) + "}"
