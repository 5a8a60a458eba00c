"""Automorphisms of the rooted n-ary tree, evaluated lazily.

Every automorphism is described by its root activity (a :class:`Perm`) and
its sections at the children of the root, written ``a = (a|0, ..., a|n-1) p``.
The group acts on the right and products are read left to right:

    (a * b)|i = a|i * b|(i)p_a        p_{a*b} = p_a * p_b

Elements are hash-consed.  Equal construction keys give the same Python
object, and each object memoizes its sections, so states of finite-state
automata are shared and the state space of a product stays small.  Products
are stored as reduced words of atoms: adjacent rigid permutations merge,
adjacent powers of the adding machine add their exponents, and an atom next
to its inverse cancels.
"""

from __future__ import annotations

import itertools
import math
import threading
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .nadic import NAdic, delta2
from .perms import Perm, full_cycle

__all__ = [
    "TreeAut",
    "Var",
    "EquationSystem",
    "Verdict",
    "StateGraph",
    "TreeAutError",
    "identity",
    "rigid",
    "wreath",
    "solve",
    "lazy",
    "compose",
    "inverse",
    "conj",
    "commutator",
    "power_int",
    "tau_pow_adic",
    "section",
    "apply_vertex",
    "equal_to_depth",
    "first_difference",
    "equal_bisim",
    "commutes_to_depth",
    "is_level_transitive",
    "orbit_size",
    "state_graph",
    "portrait",
    "register_name",
    "name_of",
    "clear_caches",
    "format_vertex",
    "parse_vertex",
    "LEVEL_POINTS_LIMIT",
]

DEFAULT_BUDGET = 10000
LEVEL_POINTS_LIMIT = 4096


class TreeAutError(ValueError):
    """Invalid construction or query."""


_LOCK = threading.RLock()
_TABLE: dict = {}
_NAMES: dict[int, str] = {}
_UIDS = itertools.count()


def clear_caches() -> None:
    """Forget every interned element and registered name.

    Elements created earlier stay valid; they simply stop being shared with
    elements created afterwards.
    """
    with _LOCK:
        _TABLE.clear()
        _NAMES.clear()


def _intern(cls, key, *args):
    obj = _TABLE.get(key)
    if obj is not None:
        return obj
    with _LOCK:
        obj = _TABLE.get(key)
        if obj is None:
            obj = cls.__new__(cls)
            obj.degree = key[1]
            obj.key = key
            obj.uid = next(_UIDS)
            obj._perm = None
            obj._sections = None
            obj._inverse = None
            obj._setup(*args)
            _TABLE[key] = obj
    return obj


class TreeAut:
    """Base class; build instances through the module-level constructors."""

    __slots__ = ("degree", "key", "uid", "_perm", "_sections", "_inverse", "__weakref__")

    def _setup(self, *args):
        pass

    @property
    def perm(self) -> Perm:
        """Root activity."""
        p = self._perm
        if p is None:
            p = self._perm = self._compute_perm()
        return p

    def section(self, i: int) -> "TreeAut":
        secs = self._sections
        if secs is None:
            secs = self._sections = [None] * self.degree
        s = secs[i]
        if s is None:
            s = secs[i] = self._compute_section(i)
        return s

    @property
    def sections(self) -> tuple["TreeAut", ...]:
        return tuple(self.section(i) for i in range(self.degree))

    def atoms(self) -> tuple["TreeAut", ...]:
        return (self,)

    def inverse(self) -> "TreeAut":
        inv = self._inverse
        if inv is None:
            inv = self._inverse = self._compute_inverse()
        return inv

    def _compute_inverse(self) -> "TreeAut":
        return _intern(InvAtom, ("I", self.degree, self.uid), self)

    def is_identity(self) -> bool:
        """Syntactic test; use the comparison functions for semantic equality."""
        return False

    def __mul__(self, other: "TreeAut") -> "TreeAut":
        if not isinstance(other, TreeAut):
            return NotImplemented
        return compose(self, other)

    def __invert__(self) -> "TreeAut":
        return self.inverse()

    def __pow__(self, m: int) -> "TreeAut":
        return power_int(self, m)

    def __repr__(self) -> str:
        name = name_of(self)
        label = f" {name}" if name else ""
        return f"<{type(self).__name__}{label} n={self.degree} #{self.uid}>"


class Rigid(TreeAut):
    """Acts by one permutation on the first letter and fixes the rest."""

    __slots__ = ("_rperm",)

    def _setup(self, perm):
        self._rperm = perm

    def _compute_perm(self):
        return self._rperm

    def _compute_section(self, i):
        return identity(self.degree)

    def _compute_inverse(self):
        return rigid(self._rperm.inverse())

    def is_identity(self) -> bool:
        return self._rperm.is_identity()


class TauPow(TreeAut):
    """A power ``tau^x`` of the adding machine for an n-adic exponent ``x``."""

    __slots__ = ("exponent",)

    def _setup(self, exponent):
        self.exponent = exponent

    def _compute_perm(self):
        return full_cycle(self.degree) ** self.exponent.bar

    def _compute_section(self, i):
        x = self.exponent
        return tau_pow_adic(self.degree, x.shift_down() + delta2(i, x, self.degree))

    def _compute_inverse(self):
        return tau_pow_adic(self.degree, -self.exponent)


class Var:
    """Reference to an unknown of an :class:`EquationSystem`."""

    __slots__ = ("index",)

    def __init__(self, index: int):
        self.index = index

    def __repr__(self):
        return f"Var({self.index})"


ChildSpec = Union[TreeAut, Var, Sequence[Union[TreeAut, Var]]]

_ANON = itertools.count()


class EquationSystem:
    """Unknowns ``x_j = (c_0, ..., c_{n-1}) p_j`` defined by wreath recursion.

    Each child ``c_i`` is a :class:`Var`, a known element, or a sequence of
    those read as a product.  The label identifies the system in the intern
    table, so two systems with the same label must have the same equations.
    """

    def __init__(self, n: int, equations, label=None):
        if label is None:
            label = ("anon", next(_ANON))
        self.n = n
        self.label = label
        parsed = []
        for j, eq in enumerate(equations):
            children, perm = eq
            children = list(children)
            if len(children) != n:
                raise TreeAutError(f"equation {j} has {len(children)} children, expected {n}")
            if not isinstance(perm, Perm) or perm.degree != n:
                raise TreeAutError(f"equation {j} activity must be a permutation of degree {n}")
            specs = []
            for c in children:
                items = [c] if isinstance(c, (TreeAut, Var)) else list(c)
                for item in items:
                    if isinstance(item, Var):
                        if not 0 <= item.index < len(equations):
                            raise TreeAutError(f"equation {j} refers to undefined unknown {item.index}")
                    elif isinstance(item, TreeAut):
                        if item.degree != n:
                            raise TreeAutError("degree mismatch in equation system")
                    else:
                        raise TreeAutError(f"bad child {item!r}")
                specs.append(tuple(items))
            parsed.append((tuple(specs), perm))
        self.equations = tuple(parsed)
        self.unknowns = [_intern(SelfRef, ("S", n, label, j), self, j)
                         for j in range(len(parsed))]


class SelfRef(TreeAut):
    """One unknown of an equation system."""

    __slots__ = ("system", "index")

    def _setup(self, system, index):
        self.system = system
        self.index = index

    def _compute_perm(self):
        return self.system.equations[self.index][1]

    def _compute_section(self, i):
        factors = self.system.equations[self.index][0][i]
        unknowns = self.system.unknowns
        return compose(*[unknowns[x.index] if isinstance(x, Var) else x for x in factors],
                       degree=self.degree)


class Lazy(TreeAut):
    """An element whose sections come from a callback, for infinite families."""

    __slots__ = ("_lperm", "_builder", "_children")

    def _setup(self, perm, builder):
        self._lperm = perm
        self._builder = builder
        self._children = None

    def _compute_perm(self):
        return self._lperm

    def _compute_section(self, i):
        if self._children is None:
            children = list(self._builder())
            if len(children) != self.degree:
                raise TreeAutError("lazy builder returned the wrong number of sections")
            self._children = children
        return self._children[i]


class Wreath(TreeAut):
    """Explicit ``(c_0, ..., c_{n-1}) p`` with known children."""

    __slots__ = ("children", "_wperm")

    def _setup(self, children, perm):
        self.children = children
        self._wperm = perm

    def _compute_perm(self):
        return self._wperm

    def _compute_section(self, i):
        return self.children[i]

    def _compute_inverse(self):
        p = self._wperm
        pinv = p.inverse()
        return wreath([self.children[pinv.act(j)].inverse() for j in range(self.degree)], pinv)


class InvAtom(TreeAut):
    """Formal inverse of an atom."""

    __slots__ = ("base",)

    def _setup(self, base):
        self.base = base

    def _compute_perm(self):
        return self.base.perm.inverse()

    def _compute_section(self, i):
        return self.base.section(self.base.perm.inverse().act(i)).inverse()

    def _compute_inverse(self):
        return self.base


class Word(TreeAut):
    """A reduced product of at least two atoms."""

    __slots__ = ("letters",)

    def _setup(self, letters):
        self.letters = letters

    def atoms(self):
        return self.letters

    def _compute_perm(self):
        p = Perm.identity(self.degree)
        for a in self.letters:
            p = p * a.perm
        return p

    def _compute_section(self, i):
        stack: list[TreeAut] = []
        j = i
        for a in self.letters:
            for b in a.section(j).atoms():
                _push(stack, b)
            j = a.perm.act(j)
        return _from_atoms(self.degree, stack)

    def _compute_inverse(self):
        return compose(*[a.inverse() for a in reversed(self.letters)], degree=self.degree)


def _push(stack: list, atom: TreeAut) -> None:
    while True:
        if isinstance(atom, Rigid) and atom.is_identity():
            return
        if not stack:
            stack.append(atom)
            return
        top = stack[-1]
        if isinstance(top, Rigid) and isinstance(atom, Rigid):
            stack.pop()
            atom = rigid(top.perm * atom.perm)
            continue
        if isinstance(top, TauPow) and isinstance(atom, TauPow):
            stack.pop()
            total = top.exponent + atom.exponent
            if total == 0:
                return
            atom = tau_pow_adic(atom.degree, total)
            continue
        if top.inverse() is atom:
            stack.pop()
            return
        stack.append(atom)
        return


def _from_atoms(n: int, stack: list) -> TreeAut:
    if not stack:
        return identity(n)
    if len(stack) == 1:
        return stack[0]
    return _intern(Word, ("P", n, tuple(a.uid for a in stack)), tuple(stack))


# ----------------------------------------------------------------------------
# Constructors


def identity(n: int) -> TreeAut:
    return rigid(Perm.identity(n))


def rigid(perm: Perm) -> TreeAut:
    """The element with activity ``perm`` at the root and trivial sections."""
    return _intern(Rigid, ("R", perm.degree, perm.images), perm)


def wreath(children: Sequence[TreeAut], perm: Perm) -> TreeAut:
    """The element ``(children[0], ..., children[n-1]) perm``."""
    n = perm.degree
    children = tuple(children)
    if len(children) != n:
        raise TreeAutError(f"expected {n} children, got {len(children)}")
    for c in children:
        if not isinstance(c, TreeAut) or c.degree != n:
            raise TreeAutError("children must be tree automorphisms of the same degree")
    if all(c.is_identity() for c in children):
        return rigid(perm)
    return _intern(Wreath, ("W", n, tuple(c.uid for c in children), perm.images), children, perm)


def solve(n: int, equations, label=None) -> list[TreeAut]:
    """Solve a wreath-recursion system and return its unknowns."""
    return list(EquationSystem(n, equations, label).unknowns)


def lazy(n: int, label, perm: Perm, builder: Callable[[], Iterable[TreeAut]]) -> TreeAut:
    """Element with root activity ``perm`` and sections ``builder()``.

    ``label`` must determine the element; the builder runs at most once.
    """
    return _intern(Lazy, ("L", n, label), perm, builder)


def tau_pow_adic(n: int, x) -> TreeAut:
    """``tau^x`` for an n-adic exponent, from the closed section formula."""
    x = x if isinstance(x, NAdic) else NAdic(x, n)
    if x.n != n:
        raise TreeAutError("exponent degree mismatch")
    if x == 0:
        return identity(n)
    return _intern(TauPow, ("T", n, x.value), x)


def compose(*elems: TreeAut, degree: int | None = None) -> TreeAut:
    """Product read left to right."""
    if degree is None:
        if not elems:
            raise TreeAutError("degree required for an empty product")
        degree = elems[0].degree
    stack: list[TreeAut] = []
    for e in elems:
        if e.degree != degree:
            raise TreeAutError(f"degree mismatch: {e.degree} vs {degree}")
        for a in e.atoms():
            _push(stack, a)
    return _from_atoms(degree, stack)


def inverse(a: TreeAut) -> TreeAut:
    return a.inverse()


def conj(a: TreeAut, b: TreeAut) -> TreeAut:
    """``b^-1 a b``."""
    return compose(b.inverse(), a, b)


def commutator(a: TreeAut, b: TreeAut) -> TreeAut:
    """``a^-1 b^-1 a b``."""
    return compose(a.inverse(), b.inverse(), a, b)


def power_int(a: TreeAut, m: int) -> TreeAut:
    """``a^m`` by repeated multiplication."""
    if m < 0:
        a, m = a.inverse(), -m
    result = identity(a.degree)
    base = a
    while m:
        if m & 1:
            result = compose(result, base)
        m >>= 1
        if m:
            base = compose(base, base)
    return result


# ----------------------------------------------------------------------------
# Vertices


def format_vertex(word: Sequence[int], n: int) -> str:
    if n <= 10:
        return "".join(str(x) for x in word)
    return ",".join(str(x) for x in word)


def parse_vertex(text: str, n: int) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    if n <= 10:
        parts = list(text)
    else:
        parts = text.split(",")
    try:
        word = tuple(int(p) for p in parts)
    except ValueError:
        raise TreeAutError(f"malformed vertex {text!r}") from None
    if any(not 0 <= x < n for x in word):
        raise TreeAutError(f"vertex {text!r} has a letter outside 0..{n - 1}")
    return word


def section(a: TreeAut, word: Sequence[int]) -> TreeAut:
    for i in word:
        a = a.section(i)
    return a


def apply_vertex(a: TreeAut, word: Sequence[int]) -> tuple[int, ...]:
    out = []
    for i in word:
        out.append(a.perm.act(i))
        a = a.section(i)
    return tuple(out)


# ----------------------------------------------------------------------------
# Comparison


@dataclass(frozen=True)
class Verdict:
    """Outcome of a comparison: ``Equal``, ``NotEqual`` or ``Unknown``."""

    status: str
    witness: tuple[int, ...] | None = None
    pairs_explored: int = 0

    @property
    def is_equal(self) -> bool:
        return self.status == "Equal"

    @property
    def is_not_equal(self) -> bool:
        return self.status == "NotEqual"

    @property
    def is_unknown(self) -> bool:
        return self.status == "Unknown"

    def describe(self, n: int) -> str:
        if self.status == "NotEqual":
            return f"NotEqual(witness={format_vertex(self.witness, n)})"
        if self.status == "Unknown":
            return f"Unknown(pairs_explored={self.pairs_explored})"
        return "Equal"


def _explore(a: TreeAut, b: TreeAut, depth: int | None, budget: int | None):
    """Breadth-first search for the shortlex-least vertex where a and b differ.

    Returns ``(status, witness, explored)`` with status ``"closed"`` when the
    visited pairs form a bisimulation, ``"depth"`` when the search stopped at
    the depth limit, ``"budget"`` when it ran out, or ``"mismatch"``.
    Pairs already visited are skipped; a pair seen at a shorter vertex was
    checked there with at least as much remaining depth.
    """
    if a.degree != b.degree:
        raise TreeAutError("degree mismatch")
    n = a.degree
    seen = set()
    queue = deque([(a, b, ())])
    explored = 0
    truncated = False
    while queue:
        x, y, w = queue.popleft()
        if x is y:
            continue
        key = (x.uid, y.uid)
        if key in seen:
            continue
        if depth is not None and len(w) >= depth:
            truncated = True
            continue
        if budget is not None and explored >= budget:
            return "budget", None, explored
        seen.add(key)
        explored += 1
        if x.perm != y.perm:
            return "mismatch", w, explored
        for i in range(n):
            queue.append((x.section(i), y.section(i), w + (i,)))
    return ("depth" if truncated else "closed"), None, explored


def first_difference(a: TreeAut, b: TreeAut, depth: int) -> tuple[int, ...] | None:
    """Shortlex-least vertex of length below ``depth`` where activities differ."""
    status, witness, _ = _explore(a, b, depth, None)
    return witness if status == "mismatch" else None


def equal_to_depth(a: TreeAut, b: TreeAut, depth: int) -> bool:
    """True when ``a`` and ``b`` act identically on the first ``depth`` levels."""
    return first_difference(a, b, depth) is None


def equal_bisim(a: TreeAut, b: TreeAut, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Exact comparison by searching for a finite bisimulation."""
    status, witness, explored = _explore(a, b, None, budget)
    if status == "closed":
        return Verdict("Equal", None, explored)
    if status == "mismatch":
        return Verdict("NotEqual", witness, explored)
    return Verdict("Unknown", None, explored)


def commutes_to_depth(a: TreeAut, b: TreeAut, depth: int) -> bool:
    return equal_to_depth(compose(a, b), compose(b, a), depth)


def _check_level(n: int, k: int) -> None:
    if n ** k > LEVEL_POINTS_LIMIT:
        limit = int(math.log(LEVEL_POINTS_LIMIT, n) + 1e-9)
        raise TreeAutError(f"level {k} is too large for degree {n} (at most {limit})")


def orbit_size(a: TreeAut, word: Sequence[int]) -> int:
    """Size of the orbit of a vertex under the cyclic group generated by ``a``."""
    word = tuple(word)
    _check_level(a.degree, len(word))
    v = apply_vertex(a, word)
    count = 1
    while v != word:
        v = apply_vertex(a, v)
        count += 1
    return count


def is_level_transitive(a: TreeAut, k: int) -> bool:
    """True when ``a`` acts as a single cycle on every level up to ``k``."""
    _check_level(a.degree, k)
    return orbit_size(a, (0,) * k) == a.degree ** k


# ----------------------------------------------------------------------------
# State graphs and pictures


@dataclass
class StateGraph:
    """States reachable from a root, numbered in breadth-first order."""

    degree: int
    states: list
    edges: list  # (source, letter, output, target)

    def __len__(self) -> int:
        return len(self.states)

    def to_dot(self) -> str:
        lines = ["digraph automaton {", "  rankdir=LR;"]
        for k, s in enumerate(self.states):
            shape = "doublecircle" if k == 0 else "circle"
            label = name_of(s) or f"s{k}"
            lines.append(f'  {k} [label="{label}", shape={shape}];')
        for src, i, j, dst in self.edges:
            lines.append(f'  {src} -> {dst} [label="{i}|{j}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def state_graph(a: TreeAut, budget: int = DEFAULT_BUDGET) -> StateGraph | Verdict:
    """The automaton of ``a`` or an ``Unknown`` verdict when it exceeds ``budget`` states."""
    n = a.degree
    index = {a.uid: 0}
    states = [a]
    edges = []
    k = 0
    while k < len(states):
        s = states[k]
        for i in range(n):
            t = s.section(i)
            if t.uid not in index:
                if len(states) >= budget:
                    return Verdict("Unknown", None, len(states))
                index[t.uid] = len(states)
                states.append(t)
            edges.append((k, i, s.perm.act(i), index[t.uid]))
        k += 1
    return StateGraph(n, states, edges)


def register_name(a: TreeAut, name: str) -> TreeAut:
    _NAMES[a.uid] = name
    return a


def name_of(a: TreeAut) -> str | None:
    if a.is_identity():
        return "id"
    return _NAMES.get(a.uid)


def portrait(a: TreeAut, depth: int, names: bool = False) -> str:
    """Nested text picture of the activities on the first ``depth`` levels."""
    memo: dict = {}

    def draw(x: TreeAut, d: int) -> str:
        if names:
            nm = name_of(x)
            if nm is not None:
                return nm
        if d == 0:
            return "•"
        key = (x.uid, d)
        s = memo.get(key)
        if s is None:
            inner = ", ".join(draw(x.section(i), d - 1) for i in range(x.degree))
            s = memo[key] = f"({inner}){x.perm}"
        return s

    return draw(a, depth)
