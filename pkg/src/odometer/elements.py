"""Named automorphisms and conjugator constructions.

The adding machine ``tau = (e, ..., e, tau) sigma`` with ``sigma`` the
n-cycle ``i -> i + 1`` is the reference element.  This module builds the
families that conjugate ``tau`` to its n-adic powers, the constructions that
conjugate suitable elements back to ``tau``, and the degree-4 families
attached to ``tau^2``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import perms
from .nadic import NAdic, delta2
from .perms import Perm, full_cycle
from .treeaut import (
    TreeAut,
    TreeAutError,
    Var,
    commutes_to_depth,
    compose,
    conj,
    equal_to_depth,
    first_difference,
    identity,
    power_int,
    register_name,
    rigid,
    solve,
    tau_pow_adic,
    lazy,
    wreath,
)

__all__ = [
    "ConjugationError",
    "ConjugationReport",
    "tau",
    "iota",
    "eps",
    "lambda_",
    "theta4",
    "psi4",
    "general_conjugator",
    "diagonal",
    "build_normalizer_conjugator",
    "normal_form_conjugator",
    "conjugate_to_tau",
    "centralizer_activities",
    "centralizer_tau2_element",
    "normalizer_Hdot_element",
    "beta_family",
    "beta_family_half",
    "square_class_conjugator",
    "tau_exponent",
    "random_automaton",
    "random_inactive",
    "dihedral4",
]


class ConjugationError(TreeAutError):
    """A construction's hypotheses do not hold."""


def _adic(x, n: int) -> NAdic:
    if isinstance(x, NAdic):
        if x.n != n:
            raise ConjugationError("degree mismatch")
        return x
    return NAdic(x, n)


def _named(x: TreeAut, stem: str, value: NAdic) -> TreeAut:
    # Parameters from deep recursion can have thousands of digits; leave those unnamed.
    v = value.value
    if v.numerator.bit_length() + v.denominator.bit_length() <= 256:
        register_name(x, f"{stem}({value})")
    return x


def tau(n: int) -> TreeAut:
    """The adding machine of degree ``n``."""
    eq = ([identity(n)] * (n - 1) + [Var(0)], full_cycle(n))
    return register_name(solve(n, [eq], ("tau", n))[0], "tau")


def iota(n: int) -> TreeAut:
    """``(iota, ..., iota) eps``; conjugates ``tau`` to its inverse."""
    eq = ([Var(0)] * n, perms.reversal(n))
    return register_name(solve(n, [eq], ("iota", n))[0], "iota")


def eps(n: int) -> TreeAut:
    """Rigid reversal ``i -> n - 1 - i``."""
    return register_name(rigid(perms.reversal(n)), "eps")


def lambda_(n: int, xi) -> TreeAut:
    """Inactive element conjugating ``tau`` to ``tau^xi`` for ``xi = 1 mod n``.

    Its sections are ``lambda|i = lambda * tau^(i (xi - 1) / n)``.
    """
    xi = _adic(xi, n)
    if not xi.in_one_class():
        raise ConjugationError(f"{xi} is not congruent to 1 modulo {n}")
    if xi == 1:
        return identity(n)
    step = (xi - 1) / n
    children = [(Var(0), tau_pow_adic(n, step * i)) for i in range(n)]
    x = solve(n, [(children, Perm.identity(n))], ("lambda", n, xi.value))[0]
    return _named(x, "lambda", xi)


def general_conjugator(n: int, xi) -> TreeAut:
    """Element conjugating ``tau`` to ``tau^xi`` for any unit ``xi``.

    It is ``(a, a tau^mu_1, ..., a tau^mu_{n-1}) p`` with ``a`` itself, where
    ``p`` sends ``j`` to ``j*xi mod n`` and ``mu_i`` adds the carries of the
    partial sums ``k*xi``.
    """
    xi = _adic(xi, n)
    if not xi.is_unit():
        raise ConjugationError(f"{xi} is not a unit modulo {n}")
    if xi == 1:
        return identity(n)
    if xi.in_one_class():
        return lambda_(n, xi)
    high = xi.shift_down()
    children = []
    for i in range(n):
        carries = sum(delta2(xi * k, xi, n) for k in range(i))
        children.append((Var(0), tau_pow_adic(n, high * i + carries)))
    activity = Perm((j * xi.bar) % n for j in range(n))
    x = solve(n, [(children, activity)], ("unit-conjugator", n, xi.value))[0]
    return _named(x, "conjugator", xi)


def theta4() -> TreeAut:
    """Degree-4 element ``(t, t tau^-1, t tau^-1, t tau^-1)(1 3)``; it inverts ``tau``."""
    n = 4
    tinv = tau_pow_adic(n, -1)
    children = [Var(0), (Var(0), tinv), (Var(0), tinv), (Var(0), tinv)]
    x = solve(n, [(children, perms.from_cycles(4, [(1, 3)]))], ("theta", 4))[0]
    return register_name(x, "theta")


def psi4(eta) -> TreeAut:
    """Degree-4 element conjugating ``tau`` to ``tau^eta`` for odd ``eta``."""
    eta = _adic(eta, 4)
    if eta.in_one_class():
        x = lambda_(4, eta)
    elif (-eta).in_one_class():
        x = compose(theta4(), lambda_(4, -eta))
    else:
        raise ConjugationError(f"{eta} is not a unit modulo 4")
    return _named(x, "psi", eta)


def diagonal(x: TreeAut, level: int) -> TreeAut:
    """``x`` placed at every vertex of the given level."""
    for _ in range(level):
        x = wreath([x] * x.degree, Perm.identity(x.degree))
    return x


def _geometric(xi: NAdic, terms: int) -> NAdic:
    total = NAdic(0, xi.n)
    power = NAdic(1, xi.n)
    for _ in range(terms):
        total = total + power
        power = power * xi
    return total


def build_normalizer_conjugator(n: int, xi, rho) -> TreeAut:
    """Inactive ``a`` with ``a^-1 tau a = lambda(xi) * tau^rho``.

    Needs ``xi, rho = 1 mod n`` with ``xi != 1``; for even ``n`` also
    ``2n | xi - 1``.  The section at ``i + 1`` is ``a' lambda(xi^(i+1)) tau^c``
    where ``a'`` solves the same problem for ``xi^n`` and an adjusted ``rho``.
    """
    xi, rho = _adic(xi, n), _adic(rho, n)
    if not xi.in_one_class():
        raise ConjugationError(f"xi = {xi} is not congruent to 1 modulo {n}")
    if not rho.in_one_class():
        raise ConjugationError(f"rho = {rho} is not congruent to 1 modulo {n}")
    if xi == 1:
        raise ConjugationError("xi must differ from 1")
    if n % 2 == 0 and ((xi - 1) / n).bar % 2 == 1:
        raise ConjugationError(
            f"parity obstruction: for even n the quotient (xi - 1)/n must be even, "
            f"got xi = {xi} at n = {n}")
    return _normalizer_node(n, xi, rho)


def _normalizer_node(n: int, xi: NAdic, rho: NAdic) -> TreeAut:
    def build():
        nxt_rho = rho * _geometric(xi, n) / n
        if not nxt_rho.in_one_class():
            raise ConjugationError("recursive parameter left the class of 1")
        nxt = _normalizer_node(n, xi ** n, nxt_rho)
        children = [nxt]
        for j in range(1, n):
            shift = (rho * _geometric(xi, j) - j) / n
            children.append(compose(nxt, lambda_(n, xi ** j), tau_pow_adic(n, shift)))
        return children

    return lazy(n, ("normalizer", xi.value, rho.value), Perm.identity(n), build)


def normal_form_conjugator(beta: TreeAut) -> TreeAut:
    """Inactive ``a`` with ``beta^a = (e, ..., e, beta|0 ... beta|n-1) sigma``.

    Requires the root activity of ``beta`` to be the n-cycle ``sigma``.
    """
    n = beta.degree
    if beta.perm != full_cycle(n):
        raise ConjugationError("root activity must be the n-cycle i -> i + 1")
    children = [identity(n)]
    prefix = identity(n)
    for i in range(n - 1):
        prefix = compose(prefix, beta.section(i))
        children.append(prefix.inverse())
    return wreath(children, Perm.identity(n))


def _product_of_sections(x: TreeAut) -> TreeAut:
    return compose(*x.sections)


def _cycle_alignment(p: Perm) -> Perm | None:
    """Rigid ``r`` with ``r^-1 p r`` the standard n-cycle, if ``p`` is an n-cycle."""
    n = p.degree
    orbit = [0]
    while len(orbit) < n:
        nxt = p.act(orbit[-1])
        if nxt == 0:
            return None
        orbit.append(nxt)
    if p.act(orbit[-1]) != 0:
        return None
    images = [0] * n
    for k, point in enumerate(orbit):
        images[point] = k
    return Perm(images)


@dataclass
class ConjugationReport:
    """Outcome of :func:`conjugate_to_tau`."""

    conjugator: TreeAut
    levels: int
    certified: bool
    power: int
    activity_exponent: int
    adjustment: str
    screening_passed: bool
    screening_failure: int | None = None
    alignments: list = field(default_factory=list)
    witness: tuple | None = None

    def lines(self) -> list[str]:
        out = [
            f"activity-exponent {self.activity_exponent}",
            f"power {self.power}",
            f"adjustment {self.adjustment}",
            "screening " + ("PASS" if self.screening_passed
                            else f"FAIL at x={self.screening_failure}"),
        ]
        if self.alignments:
            out.append("alignments " + " ".join(f"level{lv}:{p}" for lv, p in self.alignments))
        out.append(f"certified-depth {self.levels} " + ("PASS" if self.certified else "FAIL"))
        return out


def conjugate_to_tau(beta: TreeAut, levels: int, *, screen_depth: int | None = None,
                     strict: bool = False) -> ConjugationReport:
    """Build a conjugator taking ``beta`` to ``tau`` on the first ``levels`` levels.

    ``beta`` must have root activity ``sigma^s`` with ``s`` coprime to ``n``.
    The commutation hypothesis ``[beta, beta^(tau^x)] = e`` is screened for
    ``0 <= x <= n^2`` and recorded; with ``strict=True`` a failed screening
    raises instead.  For ``s != 1`` the construction runs on ``beta^k`` with
    ``k*s = 1 mod n`` and finishes with a conjugator from ``tau^(1/k)`` back
    to ``tau``.  Below the root, a tail whose activity is another n-cycle is
    first aligned to ``sigma`` by a rigid permutation.
    """
    n = beta.degree
    if levels < 0:
        raise ConjugationError("levels must be non-negative")
    sigma = full_cycle(n)
    s = next((k for k in range(1, n) if gcd(k, n) == 1 and sigma ** k == beta.perm), None)
    if s is None:
        raise ConjugationError("root activity is not a generating power of the n-cycle")
    t = tau(n)
    screen_depth = levels if screen_depth is None else screen_depth
    failure = None
    for x in range(n * n + 1):
        other = conj(beta, power_int(t, x))
        if not commutes_to_depth(beta, other, screen_depth):
            failure = x
            break
    if strict and failure is not None:
        raise ConjugationError(f"screening failed: beta does not commute with its "
                               f"conjugate by tau^{failure}")

    k = 1 if s == 1 else pow(s, -1, n)
    target = power_int(beta, k)
    conjugator = identity(n)
    tail = target
    alignments = []
    for level in range(levels):
        step = identity(n)
        if tail.perm != sigma:
            r = _cycle_alignment(tail.perm)
            if r is None:
                break
            alignments.append((level, r))
            step = rigid(r)
            tail = conj(tail, step)
        normal = normal_form_conjugator(tail)
        step = compose(step, normal)
        tail = _product_of_sections(conj(tail, normal))
        conjugator = compose(conjugator, diagonal(step, level))

    adjustment = "none"
    if k != 1:
        root = NAdic(Fraction(1, k), n)
        if root.in_one_class():
            fix, adjustment = lambda_(n, root), f"lambda({root})"
        else:
            fix, adjustment = general_conjugator(n, root), f"unit-conjugator({root})"
        conjugator = compose(conjugator, fix.inverse())
    witness = first_difference(conj(beta, conjugator), t, levels)
    return ConjugationReport(
        conjugator=conjugator, levels=levels, certified=witness is None, power=k,
        activity_exponent=s, adjustment=adjustment, screening_passed=failure is None,
        screening_failure=failure, alignments=alignments, witness=witness)


# ----------------------------------------------------------------------------
# Degree 4


def dihedral4() -> frozenset[Perm]:
    """The Sylow 2-subgroup of the symmetric group on 4 points that contains sigma."""
    return perms.subgroup_closure([full_cycle(4), perms.from_cycles(4, [(0, 2)])])


def centralizer_activities() -> list[Perm]:
    """Permutations of 4 points commuting with ``sigma^2``."""
    s2 = full_cycle(4) ** 2
    return sorted(perms.centralizer(perms.symmetric_group(4), [s2]))


def centralizer_tau2_element(m0, m1, activity: Perm) -> TreeAut:
    """``(tau^m0, tau^m1, tau^(m0 + c0), tau^(m1 + c1)) p`` commuting with ``tau^2``.

    ``c_j`` is the carry of ``(j)p + 2`` past 4 and ``p`` must commute with
    ``sigma^2``.
    """
    n = 4
    if activity.degree != n or activity * full_cycle(n) ** 2 != full_cycle(n) ** 2 * activity:
        raise ConjugationError(f"activity {activity} does not commute with (0 2)(1 3)")
    m0, m1 = _adic(m0, n), _adic(m1, n)
    exps = [m0, m1, m0 + delta2(activity.act(0), 2, n), m1 + delta2(activity.act(1), 2, n)]
    return wreath([tau_pow_adic(n, e) for e in exps], activity)


def normalizer_Hdot_element(m0, m1) -> TreeAut:
    """Inactive ``a`` with ``a^-1 tau^2 a = (tau^m0, tau^m1, tau^(m0+1), tau^(m1+1))(0 2)(1 3)``.

    Its sections are ``(psi(2 m0 + 1), psi(2 m1 + 1), psi(2 m0 + 1) tau^m0,
    psi(2 m1 + 1) tau^m1)``.
    """
    n = 4
    m0, m1 = _adic(m0, n), _adic(m1, n)
    p0, p1 = psi4(2 * m0 + 1), psi4(2 * m1 + 1)
    children = [p0, p1, compose(p0, tau_pow_adic(n, m0)), compose(p1, tau_pow_adic(n, m1))]
    return wreath(children, Perm.identity(n))


def beta_family(m, t1) -> TreeAut:
    """Degree-4 element with activity ``(0 2)`` commuting with its ``tau``-conjugates.

    Sections are powers of ``tau`` with exponents ``m, t1, 1 - m, t1`` divided
    by ``1 - 2m``.
    """
    n = 4
    m, t1 = _adic(m, n), _adic(t1, n)
    unit = 1 - 2 * m
    exps = [m / unit, t1 / unit, (1 - m) / unit, t1 / unit]
    return wreath([tau_pow_adic(n, e) for e in exps], perms.from_cycles(n, [(0, 2)]))


def beta_family_half(m0, xi1) -> TreeAut:
    """Degree-4 element with activity ``(0 2)(1 3)`` commuting with its ``tau``-conjugates.

    ``xi1`` must be odd; the section exponents are ``m0``,
    ``(xi1 - 1)/2 + m0``, ``1 - m0`` and ``(xi1 + 1)/2 - m0``, divided by
    ``1 - 2 m0``.
    """
    n = 4
    m0, xi1 = _adic(m0, n), _adic(xi1, n)
    if not xi1.is_unit():
        raise ConjugationError(f"{xi1} is not a unit modulo 4")
    unit = 1 - 2 * m0
    exps = [m0 / unit, ((xi1 - 1) / 2 + m0) / unit, (1 - m0) / unit,
            ((xi1 + 1) / 2 - m0) / unit]
    return wreath([tau_pow_adic(n, e) for e in exps], full_cycle(n) ** 2)


def tau_exponent(x: TreeAut) -> NAdic | None:
    """Exponent ``k`` when ``x`` is syntactically a power ``tau^k``."""
    n = x.degree
    if x.is_identity():
        return NAdic(0, n)
    t = tau(n)
    total = NAdic(0, n)
    for a in x.atoms():
        if a is t:
            total = total + 1
        elif a is t.inverse():
            total = total - 1
        elif hasattr(a, "exponent"):
            total = total + a.exponent
        else:
            return None
    return total


def square_class_conjugator(beta: TreeAut) -> tuple[TreeAut, TreeAut]:
    """Two-step conjugator taking ``beta`` with activity ``(0 2)(1 3)`` to ``tau^2``.

    The first step ``(e, e, beta|0^-1, beta|1^-1)`` moves the products
    ``beta|0 beta|2`` and ``beta|1 beta|3`` to the last two vertices; these
    must be odd powers of ``tau``.  The second step is the diagonal of the
    corresponding ``psi`` inverses.
    """
    n = 4
    if beta.degree != n or beta.perm != full_cycle(n) ** 2:
        raise ConjugationError("activity must be (0 2)(1 3)")
    b = beta.sections
    e = identity(n)
    first = wreath([e, e, b[0].inverse(), b[1].inverse()], Perm.identity(n))
    eta1 = tau_exponent(compose(b[0], b[2]))
    eta2 = tau_exponent(compose(b[1], b[3]))
    if eta1 is None or eta2 is None:
        raise ConjugationError("section products are not recognizable powers of tau")
    th1, th2 = psi4(eta1).inverse(), psi4(eta2).inverse()
    second = wreath([th1, th2, th1, th2], Perm.identity(n))
    return first, second


# ----------------------------------------------------------------------------
# Random elements


def random_automaton(n: int, states: int, rng: random.Random,
                     activities=None, label=None) -> TreeAut:
    """A random finite-state automaton; returns the state numbered 0.

    ``activities`` restricts the root permutations; by default any
    permutation of degree ``n`` may occur.
    """
    if activities is None:
        pool = sorted(perms.symmetric_group(n)) if n <= perms.CLOSURE_LIMIT else None
    else:
        pool = sorted(activities)
    eqs = []
    for _ in range(states):
        if pool is None:
            images = list(range(n))
            rng.shuffle(images)
            p = Perm(images)
        else:
            p = rng.choice(pool)
        eqs.append(([Var(rng.randrange(states)) for _ in range(n)], p))
    return solve(n, eqs, label)[0]


def random_inactive(n: int, rng: random.Random) -> TreeAut:
    """Inactive element whose level-1 sections are random rigid permutations."""
    images = list(range(n))
    children = []
    for _ in range(n):
        rng.shuffle(images)
        children.append(rigid(Perm(images)))
    return wreath(children, Perm.identity(n))
