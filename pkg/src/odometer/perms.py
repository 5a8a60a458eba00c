"""Permutations of ``{0, ..., n-1}`` acting on the right.

A :class:`Perm` stores its image tuple.  Products are read left to right,
so ``(p * q).act(i) == q.act(p.act(i))``.  The text form is disjoint cycle
notation such as ``(0 1 2 3)`` with cycles ordered by least element and
fixed points omitted; the identity prints as ``()``.
"""

from __future__ import annotations

import re
from collections import deque
from itertools import permutations as _all_orders
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "Perm",
    "from_cycles",
    "parse_cycles",
    "full_cycle",
    "reversal",
    "multiplier",
    "subgroup_closure",
    "centralizer",
    "normalizer",
    "symmetric_group",
    "is_abelian",
    "abelian_subgroups",
    "SylowFacts",
    "sylow_facts",
]

CLOSURE_LIMIT = 8


class Perm:
    """A permutation of ``range(n)``."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(n))

    @property
    def degree(self) -> int:
        return len(self.images)

    def act(self, i: int) -> int:
        """Image of the point ``i`` (taken modulo the degree)."""
        return self.images[i % len(self.images)]

    __call__ = act

    def __mul__(self, other: "Perm") -> "Perm":
        if not isinstance(other, Perm):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        oi = other.images
        return Perm(oi[x] for x in self.images)

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Perm(inv)

    def __invert__(self) -> "Perm":
        return self.inverse()

    def __pow__(self, k: int) -> "Perm":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Perm.identity(self.degree)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self, other: "Perm") -> "Perm":
        """``other^-1 * self * other``."""
        return other.inverse() * self * other

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def order(self) -> int:
        result = 1
        for c in self.cycles():
            result = result * len(c) // gcd(result, len(c))
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its least element."""
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Perm({str(self)!r}, n={self.degree})"


def from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> Perm:
    """Build the permutation with the given disjoint cycles."""
    result = Perm.identity(n)
    used: set[int] = set()
    for cyc in cycles:
        cyc = [int(x) for x in cyc]
        if len(set(cyc)) != len(cyc) or used.intersection(cyc):
            raise ValueError(f"repeated point in cycle {tuple(cyc)}")
        used.update(cyc)
        for x in cyc:
            if not 0 <= x < n:
                raise ValueError(f"point {x} out of range for degree {n}")
        if len(cyc) < 2:
            continue
        images = list(range(n))
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a] = b
        result = result * Perm(images)
    return result


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(n: int, text: str) -> Perm:
    """Parse cycle notation like ``(0 2)(1 3)``; ``()`` or ``""`` is the identity."""
    stripped = text.strip()
    if not stripped or stripped == "()":
        return Perm.identity(n)
    pos = 0
    cycles = []
    for m in _CYCLE_RE.finditer(stripped):
        if stripped[pos:m.start()].strip():
            raise ValueError(f"malformed cycle text: {text!r}")
        body = m.group(1).split()
        try:
            cycles.append([int(x) for x in body])
        except ValueError:
            raise ValueError(f"malformed cycle text: {text!r}") from None
        pos = m.end()
    if stripped[pos:].strip():
        raise ValueError(f"malformed cycle text: {text!r}")
    return from_cycles(n, cycles)


def full_cycle(n: int) -> Perm:
    """The n-cycle ``i -> i + 1 mod n``."""
    return Perm((i + 1) % n for i in range(n))


def reversal(n: int) -> Perm:
    """The involution ``i -> n - 1 - i``."""
    return Perm(n - 1 - i for i in range(n))


def multiplier(n: int, a: int) -> Perm:
    """``i -> a*i mod n`` for ``a`` coprime to ``n``."""
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not invertible modulo {n}")
    return Perm((a * i) % n for i in range(n))


def _check_small(n: int) -> None:
    if n > CLOSURE_LIMIT:
        raise ValueError(f"degree {n} exceeds the supported limit {CLOSURE_LIMIT}")


def subgroup_closure(gens: Iterable[Perm], n: int | None = None) -> frozenset[Perm]:
    """The subgroup generated by ``gens`` (degree at most 8)."""
    gens = list(gens)
    if n is None:
        if not gens:
            raise ValueError("degree required for an empty generating set")
        n = gens[0].degree
    _check_small(n)
    e = Perm.identity(n)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def symmetric_group(n: int) -> frozenset[Perm]:
    _check_small(n)
    return frozenset(Perm(p) for p in _all_orders(range(n)))


def centralizer(group: Iterable[Perm], elements: Iterable[Perm]) -> frozenset[Perm]:
    elements = list(elements)
    return frozenset(g for g in group if all(g * x == x * g for x in elements))


def normalizer(group: Iterable[Perm], subgroup: frozenset[Perm],
               gens: Iterable[Perm] | None = None) -> frozenset[Perm]:
    """Elements of ``group`` conjugating ``subgroup`` onto itself."""
    gens = list(gens) if gens is not None else list(subgroup)
    return frozenset(g for g in group if all(x.conj(g) in subgroup for x in gens))


def is_abelian(elements: Iterable[Perm]) -> bool:
    elements = list(elements)
    return all(a * b == b * a for i, a in enumerate(elements) for b in elements[i + 1:])


def abelian_subgroups(n: int) -> list[frozenset[Perm]]:
    """All abelian subgroups of the symmetric group of degree ``n``.

    Grows each known abelian subgroup by one element of its centralizer at a
    time, so every abelian subgroup is reached.
    """
    whole = sorted(symmetric_group(n))
    e = Perm.identity(n)
    start = frozenset([e])
    found = {start}
    queue = deque([start])
    while queue:
        sub = queue.popleft()
        for g in whole:
            if g in sub or not all(g * x == x * g for x in sub):
                continue
            bigger = subgroup_closure(list(sub) + [g], n)
            if bigger not in found:
                found.add(bigger)
                queue.append(bigger)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


class SylowFacts:
    """Sylow data for the symmetric group of prime-power degree."""

    def __init__(self, n, p, subgroups, normalizer_order):
        self.n = n
        self.p = p
        self.subgroups = subgroups
        self.normalizer_order = normalizer_order
        sigma = full_cycle(n)
        self.containing_cycle = [s for s in subgroups if sigma in s]

    @property
    def count(self) -> int:
        return len(self.subgroups)

    @property
    def order(self) -> int:
        return len(self.subgroups[0])

    @property
    def cycle_subgroup(self) -> frozenset[Perm]:
        """The unique Sylow subgroup containing the n-cycle."""
        if len(self.containing_cycle) != 1:
            raise ValueError("no unique Sylow subgroup contains the n-cycle")
        return self.containing_cycle[0]

    def __repr__(self):
        return (f"SylowFacts(n={self.n}, p={self.p}, count={self.count}, "
                f"order={self.order}, normalizer_order={self.normalizer_order})")


def _prime_power(n: int) -> tuple[int, int]:
    for p in range(2, n + 1):
        if n % p == 0:
            k, m = 0, n
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                raise ValueError(f"{n} is not a prime power")
            return p, k
    raise ValueError(f"{n} is not a prime power")


def _tree_generators(p: int, k: int) -> list[Perm]:
    """Generators of the iterated wreath product on base-``p`` digit strings.

    Point ``x`` is read as little-endian digits; generator ``j`` cycles digit
    ``j`` of the points whose lower digits all vanish.
    """
    n = p ** k
    gens = []
    for j in range(k):
        step = p ** j
        images = []
        for x in range(n):
            if x % step == 0:
                digit = (x // step) % p
                images.append(x - digit * step + ((digit + 1) % p) * step)
            else:
                images.append(x)
        gens.append(Perm(images))
    return gens


def sylow_facts(n: int) -> SylowFacts:
    """Enumerate the Sylow ``p``-subgroups of the symmetric group of degree ``n = p^k``."""
    _check_small(n)
    p, k = _prime_power(n)
    base_gens = _tree_generators(p, k)
    base = subgroup_closure(base_gens, n)
    # Conjugation orbit of one Sylow subgroup under generators of the whole group.
    movers = [full_cycle(n), from_cycles(n, [(0, 1)])]
    orbit = {base: base_gens}
    queue = deque([base])
    while queue:
        sub = queue.popleft()
        sub_gens = orbit[sub]
        for g in movers:
            new_gens = [x.conj(g) for x in sub_gens]
            new = frozenset(x.conj(g) for x in sub)
            if new not in orbit:
                orbit[new] = new_gens
                queue.append(new)
    subgroups = sorted(orbit, key=lambda s: sorted(s))
    norm = normalizer(symmetric_group(n), base, base_gens)
    return SylowFacts(n, p, subgroups, len(norm))
