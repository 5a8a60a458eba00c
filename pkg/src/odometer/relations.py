"""Executable relation suites.

Each suite checks a family of identities over a parameter range and returns a
:class:`SuiteReport`.  Identities between tree automorphisms are checked
level by level to the configured depth.  Identities about carries,
permutations and finite groups are checked exhaustively.  A relation fails
at its first failing instance, which is reported as the witness.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, factorial
from typing import Callable, Iterable

from . import elements as el
from . import perms
from .nadic import NAdic, delta2, delta3, delta3_closed
from .perms import Perm, full_cycle
from .treeaut import (
    TreeAut,
    commutator,
    compose,
    conj,
    equal_bisim,
    first_difference,
    format_vertex,
    identity,
    is_level_transitive,
    power_int,
    tau_pow_adic,
    wreath,
)

__all__ = ["RelationResult", "SuiteReport", "SuiteError", "SUITES", "run_suite"]

DEFAULT_DEPTH = 8


class SuiteError(ValueError):
    """Unknown suite, bad parameter, or a witness outside the suite's scope."""


@dataclass
class RelationResult:
    id: str
    statement: str
    passed: bool
    instances: int
    method: str
    witness: str | None = None
    instance: str | None = None

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def line(self) -> str:
        text = f"RELATION {self.id} {self.status}"
        if not self.passed and self.witness is not None:
            text += f" witness={self.witness}"
        return text

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "status": self.status,
            "statement": self.statement,
            "method": self.method,
            "instances": self.instances,
            "witness": self.witness,
            "instance": self.instance,
        }


@dataclass
class SuiteReport:
    suite: str
    params: dict
    seed: int
    relations: list = field(default_factory=list)
    duration_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.relations)

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def failures(self) -> list:
        return [r for r in self.relations if not r.passed]

    def text(self) -> str:
        lines = [r.line() for r in sorted(self.relations, key=lambda r: r.id)]
        lines.append(f"SUITE {self.suite} {self.status}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "relations": [r.to_dict() for r in sorted(self.relations, key=lambda r: r.id)],
            "seed": self.seed,
            "duration_ms": round(self.duration_ms, 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


class _Checker:
    def __init__(self, n: int, depth: int):
        self.n = n
        self.depth = depth
        self.results: list[RelationResult] = []

    def _record(self, rid, statement, method, count, witness=None, instance=None):
        self.results.append(RelationResult(rid, statement, witness is None and instance is None,
                                           count, method, witness, instance))

    def equal(self, rid: str, statement: str, cases: Iterable, depth: int | None = None):
        """``cases`` yields ``(label, lhs, rhs)``; equality up to ``depth`` levels."""
        depth = self.depth if depth is None else depth
        method = f"generator-level, depth-bounded ({depth})"
        count = 0
        for label, lhs, rhs in cases:
            count += 1
            w = first_difference(lhs, rhs, depth)
            if w is not None:
                self._record(rid, statement, method, count, format_vertex(w, self.n), label)
                return
        self._record(rid, statement, method, count)

    def trivial(self, rid: str, statement: str, cases: Iterable, depth: int | None = None):
        """``cases`` yields ``(label, x)``; ``x`` must act trivially."""
        self.equal(rid, statement, ((lab, x, identity(self.n)) for lab, x in cases), depth)

    def exact(self, rid: str, statement: str, cases: Iterable, budget: int = 10000):
        """Equality by bisimulation; an undecided comparison counts as a failure."""
        count = 0
        for label, lhs, rhs in cases:
            count += 1
            v = equal_bisim(lhs, rhs, budget)
            if not v.is_equal:
                wit = format_vertex(v.witness, self.n) if v.is_not_equal else "unknown"
                self._record(rid, statement, "bisimulation", count, wit, label)
                return
        self._record(rid, statement, "bisimulation", count)

    def fact(self, rid: str, statement: str, cases: Iterable):
        """``cases`` yields ``(label, ok)``."""
        count = 0
        for label, ok in cases:
            count += 1
            if not ok:
                self._record(rid, statement, "exhaustive", count, label, label)
                return
        self._record(rid, statement, "exhaustive", count)


def _tau_int(n: int) -> Callable[[int], TreeAut]:
    t = el.tau(n)
    cache: dict[int, TreeAut] = {}

    def power(k: int) -> TreeAut:
        if k not in cache:
            cache[k] = power_int(t, k)
        return cache[k]

    return power


# ----------------------------------------------------------------------------
# delta


def _sample_adics(n: int) -> list[NAdic]:
    dens = [d for d in (1, 3, 5, 7, 11, 13) if gcd(d, n) == 1][:3]
    out = []
    for d in dens:
        for a in range(-n, n + 1):
            out.append(NAdic(Fraction(a, d), n))
    return out


def suite_delta(n: int, ck: _Checker, rng: random.Random, params: dict) -> None:
    Y = range(n)
    W = range(-n, 2 * n)
    ck.fact("delta.closed_form", "Delta_s(i,t) is 1 if t < s <= i, -1 if i < s <= t, else 0 on residues",
            ((f"s={s},i={i},t={t}", delta3(s, i, t, n) == delta3_closed(s, i, t, n))
             for s in W for i in W for t in W))
    ck.fact("delta.difference_form", "Delta_s(i,t) = delta(i,-s) - delta(t,-s)",
            ((f"s={s},i={i},t={t}", delta3(s, i, t, n) == delta2(i, -s, n) - delta2(t, -s, n))
             for s in Y for i in Y for t in Y))
    ck.fact("delta.antisymmetric", "Delta_s(i,t) = -Delta_s(t,i)",
            ((f"s={s},i={i},t={t}", delta3(s, i, t, n) == -delta3(s, t, i, n))
             for s in Y for i in Y for t in Y))
    ck.fact("delta.shift", "Delta_s(i+s,t+s) = -Delta_{-s}(i,t)",
            ((f"s={s},i={i},t={t}", delta3(s, i + s, t + s, n) == -delta3(-s, i, t, n))
             for s in Y for i in Y for t in Y))
    ck.fact("delta.additive", "Delta_s(i,t) = Delta_s(i,z) + Delta_s(z,t)",
            ((f"s={s},i={i},t={t},z={z}",
              delta3(s, i, t, n) == delta3(s, i, z, n) + delta3(s, z, t, n))
             for s in Y for i in Y for t in Y for z in Y))
    ck.fact("delta.orbit_sum", "sum over k < n/gcd(s,n) of Delta_s(i+ks,t+ks) is 0",
            ((f"s={s},i={i},t={t}",
              sum(delta3(s, i + k * s, t + k * s, n) for k in range(n // gcd(s, n))) == 0)
             for s in Y for i in Y for t in Y))
    ck.fact("delta.column_sum", "sum over k of Delta_s(k,t) is n - s if t < s else -s",
            ((f"s={s},t={t}",
              sum(delta3(s, k, t, n) for k in Y) == (n - s if t < s else -s))
             for s in Y for t in Y))
    ck.fact("delta.carry_count", "sum over i of delta(i,j) equals the residue of j",
            ((f"j={x}", sum(delta2(i, x, n) for i in Y) == x.bar) for x in _sample_adics(n)))
    ck.fact("delta.cocycle",
            "delta(a,b) + delta(a+b,c) = delta(b,c) + delta(a,b+c)",
            ((f"a={a},b={b},c={c}",
              delta2(a, b, n) + delta2(a + b, c, n) == delta2(b, c, n) + delta2(a, b + c, n))
             for a in Y for b in Y for c in Y))

    def multiple_cases():
        # Residues are taken once per sample; the identity itself is exact rational arithmetic.
        for xi in _sample_adics(n):
            v, xb = xi.value, xi.bar
            for j in Y:
                jb = (j * xb) % n
                base = j * (v - xb) / n - (j * v - jb) / n
                for i in Y:
                    lhs = 1 if i + jb >= n else 0
                    carries = sum(1 if (i + k * xb) % n + xb >= n else 0 for k in range(j))
                    yield f"i={i},j={j},x={xi}", lhs == base + carries

    ck.fact("delta.multiple",
            "delta(i, j x) = j (x - xbar)/n - (j x - bar(j x))/n + sum_{k<j} delta(i + k x, x)",
            multiple_cases())


# ----------------------------------------------------------------------------
# powers


def _odometer(word: tuple, x: NAdic) -> tuple:
    """Add ``x`` to the little-endian numeral ``word`` modulo ``n^len``."""
    n, k = x.n, len(word)
    value = sum(d * n ** i for i, d in enumerate(word))
    total = (value + x.residue(k)) % n ** k if k else 0
    out = []
    for _ in range(k):
        total, d = divmod(total, n)
        out.append(d)
    return tuple(out)


def _words(n: int, length: int):
    if length == 0:
        yield ()
        return
    for w in _words(n, length - 1):
        for i in range(n):
            yield w + (i,)


def suite_powers(n: int, ck: _Checker, rng: random.Random, params: dict) -> None:
    from .treeaut import apply_vertex

    t = el.tau(n)
    T = _tau_int(n)
    ck.exact("powers.diagonal", "tau^n = (tau, ..., tau)",
             [("", T(n), wreath([t] * n, Perm.identity(n)))])
    e = identity(n)
    ck.exact("powers.small", "tau^j = (e, ..., e, tau, ..., tau) sigma^j with j copies of tau",
             ((f"j={j}", T(j), wreath([e] * (n - j) + [t] * j, full_cycle(n) ** j))
              for j in range(1, n)))
    ck.exact("powers.integer", "the closed section formula for tau^m agrees with repeated products",
             ((f"m={m}", tau_pow_adic(n, m), T(m)) for m in range(-2 * n, 2 * n + 1)))
    roots = [(p, q) for q in (3, 5, 7) if gcd(q, n) == 1 for p in (1, -1, 2)][:4]
    ck.exact("powers.root", "(tau^(p/q))^q = tau^p",
             ((f"p={p},q={q}", power_int(tau_pow_adic(n, Fraction(p, q)), q), T(p))
              for p, q in roots))
    length = 1
    while n ** (length + 1) <= 512:
        length += 1
    samples = [NAdic(m, n) for m in range(-n, n + 1)] + _sample_adics(n)[::3]
    ck.fact("powers.odometer", "tau^x adds x to the little-endian numeral of a vertex",
            ((f"x={x},v={format_vertex(w, n)}",
              apply_vertex(tau_pow_adic(n, x), w) == _odometer(w, x))
             for x in samples for k in range(1, length + 1) for w in _words(n, k)))


# ----------------------------------------------------------------------------
# normalizer


def suite_normalizer(n: int, ck: _Checker, rng: random.Random, params: dict) -> None:
    t = el.tau(n)
    ones = [NAdic(1 + n, n), NAdic(1 + 2 * n, n), NAdic((1 + n) ** 2, n),
            NAdic(Fraction(2 * n + 1, n + 1), n)]
    ck.exact("normalizer.lambda_conjugates", "lambda(x)^-1 tau lambda(x) = tau^x",
             ((f"x={x}", conj(t, el.lambda_(n, x)), tau_pow_adic(n, x)) for x in ones))
    ck.exact("normalizer.lambda_product", "lambda(x) lambda(y) = lambda(x y)",
             ((f"x={x},y={y}", compose(el.lambda_(n, x), el.lambda_(n, y)), el.lambda_(n, x * y))
              for x in ones[:3] for y in ones[:3]))
    etas = [NAdic(1, n), NAdic(2, n), NAdic(-1, n), NAdic(Fraction(1, n + 1), n)]
    ck.equal("normalizer.commutator", "[tau^y, lambda(x)] = tau^(y (x - 1))",
             ((f"y={y},x={x}", commutator(tau_pow_adic(n, y), el.lambda_(n, x)),
               tau_pow_adic(n, y * (x - 1))) for y in etas for x in ones[:3]))
    ck.exact("normalizer.iota", "iota^-1 tau iota = tau^-1", [("", conj(t, el.iota(n)), t.inverse())])
    ck.exact("normalizer.iota_involution", "iota^2 = e", [("", power_int(el.iota(n), 2), identity(n))])
    units = [NAdic(u, n) for u in range(2, 3 * n) if gcd(u, n) == 1 and u % n != 1]
    units += [NAdic(-1, n)] + ([NAdic(Fraction(1, 3), n)] if gcd(3, n) == 1 else [])
    ck.exact("normalizer.unit_conjugators", "the unit conjugator for x sends tau to tau^x",
             ((f"x={x}", conj(t, el.general_conjugator(n, x)), tau_pow_adic(n, x)) for x in units))
    ck.fact("normalizer.unit_activity", "the unit conjugator for x acts at the root by j -> j x",
            ((f"x={x}", el.general_conjugator(n, x).perm == perms.multiplier(n, x.bar))
             for x in units if x.bar != 1))
    xi = params.get("xi")
    if xi is None:
        xi = NAdic(1 + n if n % 2 else 1 + 2 * n, n)
    rho_values = [params["rho"]] if params.get("rho") is not None else [NAdic(1, n), NAdic(1 + n, n)]
    depth = min(ck.depth, 6)
    ck.equal("normalizer.conjugator", "a^-1 tau a = lambda(x) tau^r for the inactive chain conjugator",
             ((f"x={xi},r={r}", conj(t, el.build_normalizer_conjugator(n, xi, r)),
               compose(el.lambda_(n, xi), tau_pow_adic(n, r))) for r in rho_values), depth)
    if n % 2 == 0:
        def obstructed():
            try:
                el.build_normalizer_conjugator(n, 1 + n, 1)
            except el.ConjugationError:
                return True
            return False
        ck.fact("normalizer.parity", "for even n the chain conjugator needs (x - 1)/n even",
                [(f"x={1 + n}", obstructed())])


# ----------------------------------------------------------------------------
# commutation


def _default_witness(n: int) -> TreeAut:
    if n == 4:
        return el.beta_family(0, 0)
    return tau_pow_adic(n, Fraction(1, n + 1))


def _cyclic_power(p: Perm) -> int | None:
    sigma = full_cycle(p.degree)
    for s in range(p.degree):
        if sigma ** s == p:
            return s
    return None


def _check_hypothesis(ck, rid, beta, T, xs):
    ck.trivial(rid, "[b, b^(tau^x)] = e",
               ((f"x={x}", commutator(beta, conj(beta, T(x)))) for x in xs))


def _cyclic_relations(ck: _Checker, prefix: str, w: TreeAut, s: int, T, zs) -> None:
    """Relations for an element with root activity sigma^s and abelian conjugates."""
    n = w.degree
    Y = range(n)
    b = w.sections

    def D(s_, i, t):
        return delta3(s_, i, t, n)

    ck.equal(f"{prefix}.exchange",
             "tau^D_s(i,t) b_(i-s) b_t = b_(t-s) b_i tau^D_s(i+s,t+s)",
             ((f"i={i},t={t}",
               compose(T(D(s, i, t)), b[(i - s) % n], b[t]),
               compose(b[(t - s) % n], b[i], T(D(s, i + s, t + s))))
              for i in Y for t in Y))
    ck.equal(f"{prefix}.exchange_commutator",
             "tau^D b_(i-s) [b_(i-s), tau^z] b_t = b_(t-s) b_i [b_i, tau^z] tau^D'",
             ((f"i={i},t={t},z={z}",
               compose(T(D(s, i, t)), b[(i - s) % n], commutator(b[(i - s) % n], T(z)), b[t]),
               compose(b[(t - s) % n], b[i], commutator(b[i], T(z)), T(D(s, i + s, t + s))))
              for i in Y for t in Y for z in zs))
    ck.equal(f"{prefix}.commutator_transport",
             "[b_(i-s), tau^z]^(b_t tau^-D_s(i+s,t+s)) = [b_i, tau^z]",
             ((f"i={i},t={t},z={z}",
               conj(commutator(b[(i - s) % n], T(z)), compose(b[t], T(-D(s, i + s, t + s)))),
               commutator(b[i], T(z)))
              for i in Y for t in Y for z in zs))
    ck.trivial(f"{prefix}.commutators_commute", "[[b_i, tau^z], [b_t, tau^x]] = e",
               ((f"i={i},t={t},z={z},x={x}",
                 commutator(commutator(b[i], T(z)), commutator(b[t], T(x))))
                for i in Y for t in Y for z in zs for x in zs))
    exps = [_cyclic_power(x.perm) for x in b]
    if all(m is not None for m in exps):
        ck.fact(f"{prefix}.activity_congruence",
                "D_s(i,t) + m_(i-s) + m_t = m_(t-s) + m_i + D_s(i+s,t+s) mod n",
                ((f"i={i},t={t}",
                  (D(s, i, t) + exps[(i - s) % n] + exps[t]
                   - exps[(t - s) % n] - exps[i] - D(s, i + s, t + s)) % n == 0)
                 for i in Y for t in Y))
    if s == 1 and n % 2 == 1:
        ck.fact(f"{prefix}.product_activity",
                "the product b_0 ... b_(n-1) has root activity sigma",
                [("", compose(*b).perm == full_cycle(n))])


def suite_commutation(n: int, ck: _Checker, rng: random.Random, params: dict) -> None:
    beta = params.get("beta") or _default_witness(n)
    T = _tau_int(n)
    Y = range(n)
    xs = range(0, 2 * n + 1)
    ks = range(-4, 5)
    zs = (1, 2)
    _check_hypothesis(ck, "commutation.hypothesis", beta, T, xs)

    def three_fold(k):
        left = first_difference(commutator(beta, conj(beta, T(k))), identity(n), ck.depth)
        right = first_difference(commutator(commutator(T(k), beta), beta), identity(n), ck.depth)
        return (left is None) == (right is None)

    ck.fact("commutation.three_fold",
            "[b, b^(tau^k)] = e exactly when [tau^k, b, b] = e",
            ((f"k={k}", three_fold(k)) for k in ks))
    ck.trivial("commutation.commutators_commute", "[[b, tau^a], [b, tau^c]] = e",
               ((f"a={a},c={c}", commutator(commutator(beta, T(a)), commutator(beta, T(c))))
                for a in range(1, n + 1) for c in range(1, n + 1)))
    ck.equal("commutation.conjugated_commutator",
             "[b, tau^a]^(tau^c) = [b, tau^c]^-1 [b, tau^(a+c)]",
             ((f"a={a},c={c}", conj(commutator(beta, T(a)), T(c)),
               compose(commutator(beta, T(c)).inverse(), commutator(beta, T(a + c))))
              for a in range(-2, 3) for c in range(-2, 3)))
    p = beta.perm
    q = p.order()
    bq = power_int(beta, q)
    ck.trivial("commutation.inactive_sections",
               "for c = b^k inactive: [c|_i, (c|_j)^(tau^x)] = e",
               ((f"i={i},j={j},x={x}",
                 commutator(bq.section(i), conj(bq.section(j), T(x))))
                for i in Y for j in Y for x in range(0, n + 1)))
    sig = full_cycle(n)
    tv = {v: T(v) for v in range(-n, n + 1)}

    def activity_identity(v, i):
        sv = sig ** v
        j = sv.inverse().act(i)
        lhs = compose(tv[v].section(j).inverse(), beta.section(j),
                      tv[v].section(p.act(j)), beta.section(sv.act(p.act(j))))
        k = sv.inverse().act(p.act(i))
        rhs = compose(beta.section(i), tv[v].section(k).inverse(), beta.section(k),
                      tv[v].section(p.act(k)))
        return lhs, rhs

    ck.equal("commutation.section_identity",
             "sections of b b^(tau^v) and b^(tau^v) b agree vertex by vertex",
             ((f"v={v},i={i}", *activity_identity(v, i)) for v in range(0, n + 1) for i in Y))
    ck.equal("commutation.section_transport",
             "[b_i, tau^v]^(b_(i p)) = [b_(i p), tau^v]",
             ((f"i={i},v={v}", conj(commutator(beta.section(i), T(v)), beta.section(p.act(i))),
               commutator(beta.section(p.act(i)), T(v))) for i in Y for v in zs))

    def cycle_product(i):
        out, j = [], p.act(i)
        while True:
            out.append(beta.section(j))
            if j == i:
                break
            j = p.act(j)
        return compose(*out, degree=n)

    ck.trivial("commutation.cycle_product",
               "the product of sections along the activity cycle of i commutes with [b_i, tau^v]",
               ((f"i={i},v={v}", commutator(cycle_product(i), commutator(beta.section(i), T(v))))
                for i in Y for v in zs))
    s = _cyclic_power(p)
    w = beta
    if s is None:
        w = compose(beta, conj(beta, T(1)))
        s = _cyclic_power(w.perm)
    if s is not None:
        _cyclic_relations(ck, "commutation.cyclic", w, s, T, zs)


# ----------------------------------------------------------------------------
# theorem-b


def suite_theorem_b(n: int, ck: _Checker, rng: random.Random, params: dict) -> None:
    s = params.get("s")
    if s is None:
        s = 2 if n > 2 else 1
    beta = params.get("beta") or tau_pow_adic(n, s + Fraction(n, n + 1))
    if beta.perm != full_cycle(n) ** s:
        raise SuiteError(f"witness activity {beta.perm} is not sigma^{s}")
    T = _tau_int(n)
    Y = range(n)
    m = n // gcd(n, s)
    zs = (1, 2)
    b = beta.sections
    bm = power_int(beta, m)
    _check_hypothesis(ck, "theorem-b.hypothesis", beta, T, range(-n, n + 1))
    ck.fact("theorem-b.power_inactive", "b^m is inactive for m = n/gcd(n,s)",
            [(f"m={m}", bm.perm.is_identity())])
    pis = [compose(*[b[(i + k * s) % n] for k in range(m)], degree=n) for i in Y]
    ck.equal("theorem-b.power_sections", "(b^m)|_i = b_i b_(i+s) ... b_(i+(m-1)s)",
             ((f"i={i}", bm.section(i), pis[i]) for i in Y))
    sampled = [z for z in range(-4, 5) if z]
    gens = [(f"[b_{i},tau^{z}]", commutator(b[i], T(z))) for i in Y for z in sampled]
    gens += [(f"pi_{i}", pis[i]) for i in Y]
    ck.trivial("theorem-b.generators_commute", "the commutators [b_i, tau^z] and the pi_i commute",
               ((f"{g}~{h}", commutator(x, y))
                for k, (g, x) in enumerate(gens) for h, y in gens[k + 1:]))

    def D(s_, i, t):
        return delta3(s_, i, t, n)

    ck.equal("theorem-b.commutator_transport",
             "[b_(i-s), tau^z]^(b_t tau^-D_s(i+s,t+s)) = [b_i, tau^z]",
             ((f"i={i},t={t},z={z}",
               conj(commutator(b[(i - s) % n], T(z)), compose(b[t], T(-D(s, i + s, t + s)))),
               commutator(b[i], T(z))) for i in Y for t in Y for z in zs))
    ck.trivial("theorem-b.power_commutes", "[[b_i, tau^z], (b^m)|_j] = e",
               ((f"i={i},j={j},z={z}", commutator(commutator(b[i], T(z)), bm.section(j)))
                for i in Y for j in Y for z in zs))
    ck.equal("theorem-b.power_transport",
             "(b^m)|_(i+s)^(tau^D_-s(j,i)) = (b^m)|_i^(b_j)",
             ((f"i={i},j={j}", conj(bm.section((i + s) % n), T(D(-s, j, i))),
               conj(bm.section(i), b[j])) for i in Y for j in Y))
    _cyclic_relations(ck, "theorem-b.cyclic", beta, s, T, zs)


# ----------------------------------------------------------------------------
# even-half


def suite_even_half(n: int, ck: _Checker, rng: random.Random, params: dict) -> None:
    if n % 2:
        raise SuiteError("the even-half suite needs even n")
    h = n // 2
    beta = params.get("beta")
    if beta is None:
        if n != 4:
            raise SuiteError("no default witness for this degree; pass beta=<expr>")
        beta = el.beta_family_half(1, 3)
    if beta.perm != full_cycle(n) ** h:
        raise SuiteError("witness activity must be sigma^(n/2)")
    T = _tau_int(n)
    Y = range(n)
    ks = (1, 2)
    b = beta.sections

    def D(i, t):
        return delta3(h, i, t, n)

    _check_hypothesis(ck, "even-half.hypothesis", beta, T, range(-n, n + 1))
    rgens = [(f"[b_{t},tau^{k}]", commutator(b[t], T(k))) for t in Y for k in ks]
    rgens += [(f"b_{i}b_{i + h}", compose(b[i], b[(i + h) % n])) for i in Y]
    rgens += [(f"b_{j}^2", compose(b[j], b[j], T(-D(j, j + h)))) for j in Y]
    ck.trivial("even-half.generators_commute",
               "[b_t, tau^k], b_i b_(i+h) and b_j^2 tau^-D(j,j+h) commute pairwise",
               ((f"{g}~{g2}", commutator(x, y))
                for idx, (g, x) in enumerate(rgens) for g2, y in rgens[idx + 1:]))
    ck.equal("even-half.pair_conjugation",
             "(b_i b_(i+h))^(b_j) = (b_(i+h) b_i)^(tau^D(j,i))",
             ((f"i={i},j={j}", conj(compose(b[i], b[(i + h) % n]), b[j]),
               conj(compose(b[(i + h) % n], b[i]), T(D(j, i)))) for i in Y for j in Y))

    def square_rhs(i, j):
        jh = (j + h) % n
        c = T(-D(jh, j))
        inner = compose(b[jh], b[jh], c, commutator(c, b[jh]))
        return conj(inner, T(D(i, j)))

    ck.equal("even-half.square_conjugation",
             "(b_j^2 tau^-D(j,j+h))^(b_i) = (b_(j+h)^2 tau^-D(j+h,j) [tau^-D(j+h,j), b_(j+h)])^(tau^D(i,j))",
             ((f"i={i},j={j}", conj(compose(b[j], b[j], T(-D(j, j + h))), b[i]), square_rhs(i, j))
              for i in Y for j in Y))
    ck.equal("even-half.commutator_order",
             "[b_i, tau^k]^(b_j tau^t) = [b_i, tau^k]^(tau^t b_j)",
             ((f"i={i},j={j},k={k},t={t}", conj(commutator(b[i], T(k)), compose(b[j], T(t))),
               conj(commutator(b[i], T(k)), compose(T(t), b[j])))
              for i in Y for j in Y for k in ks for t in (1, -1)))
    ck.equal("even-half.pair_fixes_commutator", "[b_i, tau^k]^(b_j b_(j+h)) = [b_i, tau^k]",
             ((f"i={i},j={j},k={k}", conj(commutator(b[i], T(k)), compose(b[j], b[(j + h) % n])),
               commutator(b[i], T(k))) for i in Y for j in Y for k in ks))
    ck.equal("even-half.square_fixes_commutator",
             "[b_i, tau^k]^(b_j^2 tau^-D(j,j+h)) = [b_i, tau^k]",
             ((f"i={i},j={j},k={k}",
               conj(commutator(b[i], T(k)), compose(b[j], b[j], T(-D(j, j + h)))),
               commutator(b[i], T(k))) for i in Y for j in Y for k in ks))
    ck.trivial("even-half.commutators_central",
               "[b_i, b_j] commutes with every generator of the abelian normal part",
               ((f"i={i},j={j},{g}", commutator(commutator(b[i], b[j]), x))
                for i in Y for j in Y if i < j for g, x in rgens))
    _cyclic_relations(ck, "even-half.cyclic", beta, h, T, ks)


# ----------------------------------------------------------------------------
# transposition


def suite_transposition(n: int, ck: _Checker, rng: random.Random, params: dict) -> None:
    if n % 2:
        raise SuiteError("the transposition suite needs even n")
    h = n // 2
    beta = params.get("beta")
    if beta is None:
        if n != 4:
            raise SuiteError("no default witness for this degree; pass beta=<expr>")
        beta = el.beta_family(0, 0)
    if beta.perm != perms.from_cycles(n, [(0, h)]):
        raise SuiteError(f"witness activity must be the transposition (0 {h})")
    T = _tau_int(n)
    ks = (1, 2, -1)
    b = beta.sections
    b0, bh = b[0], b[h]
    others = [j for j in range(n) if j not in (0, h)]
    low = range(1, h)

    def C(x, k):
        return commutator(x, T(k))

    def d(a, c):
        return delta2(a, c, n)

    _check_hypothesis(ck, "transposition.hypothesis", beta, T, range(-n, n + 1))
    rel = "transposition."
    ck.equal(rel + "swap_commutator_0", "[b_0, tau^k]^(b_h) = [b_h, tau^k]",
             ((f"k={k}", conj(C(b0, k), bh), C(bh, k)) for k in ks))
    ck.equal(rel + "twisted_squares", "b_0 tau b_0 = b_h tau^-1 b_h",
             [("", compose(b0, T(1), b0), compose(bh, T(-1), bh))])
    ck.equal(rel + "swap_commutator_0_twisted", "[b_0, tau^k]^(tau b_0) = [b_h, tau^k]",
             ((f"k={k}", conj(C(b0, k), compose(T(1), b0)), C(bh, k)) for k in ks))
    ck.equal(rel + "mixed_exchange_0",
             "tau^delta(h,r) b_0 b_(h+r) = b_r tau^delta(h,r) b_0",
             ((f"r={r}", compose(T(d(h, r)), b0, b[(h + r) % n]), compose(b[r], T(d(h, r)), b0))
              for r in others))
    ck.equal(rel + "fixed_commutator_0", "[b_0, tau^k]^(b_r) = [b_0, tau^k]",
             ((f"r={r},k={k}", conj(C(b0, k), b[r]), C(b0, k)) for r in others for k in ks))
    ck.equal(rel + "swap_commutator_h", "[b_h, tau^k]^(b_0) = [b_0, tau^k]",
             ((f"k={k}", conj(C(bh, k), b0), C(b0, k)) for k in ks))
    ck.equal(rel + "square_shift", "tau^-1 b_h^2 = b_0^2 tau",
             [("", compose(T(-1), bh, bh), compose(b0, b0, T(1)))])
    ck.equal(rel + "swap_commutator_h_twisted", "[b_h, tau^k]^(b_h tau^-1) = [b_0, tau^k]",
             ((f"k={k}", conj(C(bh, k), compose(bh, T(-1))), C(b0, k)) for k in ks))
    ck.equal(rel + "mixed_exchange_h",
             "tau^-delta(h,r) b_h b_r = b_(h+r) tau^-delta(h,r) b_h",
             ((f"r={r}", compose(T(-d(h, r)), bh, b[r]), compose(b[(h + r) % n], T(-d(h, r)), bh))
              for r in others))
    ck.equal(rel + "fixed_commutator_h", "[b_h, tau^k]^(b_r) = [b_h, tau^k]",
             ((f"r={r},k={k}", conj(C(bh, k), b[r]), C(bh, k)) for r in others for k in ks))
    ck.equal(rel + "others_commute", "b_j b_t = b_t b_j for j, t outside {0, h}",
             ((f"j={j},t={t}", compose(b[j], b[t]), compose(b[t], b[j]))
              for j in others for t in others))
    ck.equal(rel + "others_fix_commutators", "[b_j, tau^k]^(b_t) = [b_j, tau^k] for j, t outside {0, h}",
             ((f"j={j},t={t},k={k}", conj(C(b[j], k), b[t]), C(b[j], k))
              for j in others for t in others for k in ks))
    ck.equal(rel + "shifted_pair", "tau^-1 b_(t+h) tau b_0 = b_0 b_t",
             ((f"t={t}", compose(T(-1), b[t + h], T(1), b0), compose(b0, b[t])) for t in low))
    ck.equal(rel + "shifted_pair_commutator", "[b_(t+h), tau^k]^(tau b_0) = [b_t, tau^k]",
             ((f"t={t},k={k}", conj(C(b[t + h], k), compose(T(1), b0)), C(b[t], k))
              for t in low for k in ks))
    ck.equal(rel + "conjugate_by_0", "b_j b_0 = b_0 b_(h+j)",
             ((f"j={j}", compose(b[j], b0), compose(b0, b[h + j])) for j in low))
    ck.equal(rel + "conjugate_by_0_commutator", "[b_j, tau^k]^(b_0) = [b_(h+j), tau^k]",
             ((f"j={j},k={k}", conj(C(b[j], k), b0), C(b[h + j], k)) for j in low for k in ks))
    ck.equal(rel + "conjugate_by_h", "b_j b_h = b_h tau^-1 b_(j+h) tau",
             ((f"j={j}", compose(b[j], bh), compose(bh, T(-1), b[j + h], T(1))) for j in low))
    ck.equal(rel + "conjugate_by_h_commutator", "[b_j, tau^k]^(b_h tau^-1) = [b_(h+j), tau^k]",
             ((f"j={j},k={k}", conj(C(b[j], k), compose(bh, T(-1))), C(b[h + j], k))
              for j in low for k in ks))
    ck.equal(rel + "conjugate_h_by", "b_h b_j = b_(h+j) b_h",
             ((f"j={j}", compose(bh, b[j]), compose(b[h + j], bh)) for j in low))
    ck.equal(rel + "conjugate_h_by_commutator", "[b_j, tau^k] = [b_(h+j), tau^k]^(b_h)",
             ((f"j={j},k={k}", C(b[j], k), conj(C(b[h + j], k), bh)) for j in low for k in ks))
    gens = [(f"[b_{i},tau^{k}]", C(b[i], k)) for i in range(n) for k in (1, 2)]
    gens += [(f"b_{j}", b[j]) for j in others]
    gens += [("b_h b_0", compose(bh, b0)), ("tau b_0^2", compose(T(1), b0, b0))]
    ck.trivial(rel + "abelian_generators",
               "the commutators [b_i, tau^k], the b_j off {0, h}, b_h b_0 and tau b_0^2 commute",
               ((f"{g}~{g2}", commutator(x, y))
                for idx, (g, x) in enumerate(gens) for g2, y in gens[idx + 1:]))
    ck.equal(rel + "normality",
             "b_j^(b_0) = b_(j+h), b_j^(b_0^-1) = b_(j+h)^tau, b_j^(b_h) = b_(j+h)^tau, b_j^(b_h^-1) = b_(j+h)",
             (case for j in low for case in (
                 (f"j={j},b_0", conj(b[j], b0), b[j + h]),
                 (f"j={j},b_0^-1", conj(b[j], b0.inverse()), conj(b[j + h], T(1))),
                 (f"j={j},b_h", conj(b[j], bh), conj(b[j + h], T(1))),
                 (f"j={j},b_h^-1", conj(b[j], bh.inverse()), b[j + h]))))
    w = compose(beta, conj(beta, T(1)))
    s = _cyclic_power(w.perm)
    if s is not None:
        _cyclic_relations(ck, "transposition.product", w, s, T, (1, 2))


# ----------------------------------------------------------------------------
# n4


def suite_n4(n: int, ck: _Checker, rng: random.Random, params: dict) -> None:
    if n != 4:
        raise SuiteError("the n4 suite is specific to degree 4")
    T = _tau_int(4)
    t = el.tau(4)
    t2 = T(2)
    acts = el.centralizer_activities()
    ck.fact("n4.centralizer_activities", "exactly 8 permutations of 4 points commute with (0 2)(1 3)",
            [(f"count={len(acts)}", len(acts) == 8)])
    family = [(m0, m1, p) for m0 in range(4) for m1 in range(4) for p in acts]
    ck.trivial("n4.centralizer_family",
               "(tau^m0, tau^m1, tau^(m0+c0), tau^(m1+c1)) p commutes with tau^2",
               ((f"m0={m0},m1={m1},p={p}", commutator(el.centralizer_tau2_element(m0, m1, p), t2))
                for m0, m1, p in family))
    count = int(params.get("perturbations") or 20)

    def perturbed(k):
        m0, m1, p = family[rng.randrange(len(family))]
        slot = rng.randrange(4)
        bump = rng.choice([-2, -1, 1, 2, 3])
        g = el.centralizer_tau2_element(m0, m1, p)
        kids = list(g.sections)
        kids[slot] = compose(kids[slot], tau_pow_adic(4, bump))
        g2 = wreath(kids, p)
        ok = first_difference(commutator(g2, t2), identity(4), ck.depth) is not None
        return f"m0={m0},m1={m1},p={p},slot={slot},bump={bump}", ok

    ck.fact("n4.perturbations", "changing one section exponent leaves the centralizer of tau^2",
            (perturbed(k) for k in range(count)))
    ck.exact("n4.theta", "theta^-1 tau theta = tau^-1", [("", conj(t, el.theta4()), t.inverse())])
    etas = [1, 3, 5, 7, -1, -3, Fraction(1, 3), Fraction(3, 5)]
    ck.exact("n4.psi", "psi(x)^-1 tau psi(x) = tau^x",
             ((f"x={x}", conj(t, el.psi4(x)), tau_pow_adic(4, x)) for x in etas))

    def pipeline(m0, xi1):
        beta = el.beta_family_half(m0, xi1)
        first, second = el.square_class_conjugator(beta)
        return conj(beta, compose(first, second))

    ck.exact("n4.square_class",
             "the two-step conjugator takes the half-turn family onto tau^2",
             ((f"m0={m0},xi1={xi1}", pipeline(m0, xi1), t2)
              for m0 in (0, 1, 2, 3, Fraction(1, 3)) for xi1 in (1, 3, -1)))

    def hdot(m0, m1):
        target = wreath([tau_pow_adic(4, m0), tau_pow_adic(4, m1),
                         tau_pow_adic(4, m0 + 1), tau_pow_adic(4, m1 + 1)], full_cycle(4) ** 2)
        return conj(t2, el.normalizer_Hdot_element(m0, m1)), target

    ck.equal("n4.hdot_conjugator",
             "a^-1 tau^2 a = (tau^m0, tau^m1, tau^(m0+1), tau^(m1+1))(0 2)(1 3)",
             ((f"m0={m0},m1={m1}", *hdot(m0, m1)) for m0 in range(4) for m1 in range(4)))

    def hdot_gen(m0, m1, a, c):
        alpha = el.normalizer_Hdot_element(m0, m1)
        ta, tc = tau_pow_adic(4, a), tau_pow_adic(4, c)
        h = wreath([ta, tc, ta, tc], Perm.identity(4))
        ea, ec = a * (2 * m0 + 1), c * (2 * m1 + 1)
        want = wreath([tau_pow_adic(4, ea), tau_pow_adic(4, ec), tau_pow_adic(4, ea),
                       tau_pow_adic(4, ec)], Perm.identity(4))
        return conj(h, alpha), want

    ck.equal("n4.hdot_generators",
             "the same conjugator maps (tau^a, tau^c, tau^a, tau^c) into the same family",
             ((f"m0={m0},m1={m1},a={a},c={c}", *hdot_gen(m0, m1, a, c))
              for m0 in (0, 1) for m1 in (0, 3) for a in (1, 2) for c in (0, 1)),
             min(ck.depth, 6))
    D = el.dihedral4()

    def transitive(k):
        alpha = el.random_automaton(4, rng.randint(1, 3), rng, activities=D)
        gamma = compose(alpha, alpha)
        return f"sample={k}", is_level_transitive(compose(gamma, t), 4)

    ck.fact("n4.square_times_tau", "g^2 tau is level-transitive for g with activities in D",
            (transitive(k) for k in range(5)))
    ck.trivial("n4.families_commute", "both degree-4 families commute with their tau-conjugates",
               ((f"{kind},x={x}", commutator(beta, conj(beta, T(x))))
                for kind, beta in (("transposition(1,2)", el.beta_family(1, 2)),
                                   ("half(1,3)", el.beta_family_half(1, 3)))
                for x in range(-4, 5)))

    def impossible(k):
        kids = [el.random_automaton(4, rng.randint(1, 2), rng, activities=D) for _ in range(4)]
        beta = wreath(kids, perms.from_cycles(4, [(0, 1), (2, 3)]))
        b = beta.sections
        ident = compose(b[3].inverse(), b[3].inverse(), t, b[0], b[0])
        broken = first_difference(ident, identity(4), ck.depth) is not None
        fails = first_difference(commutator(beta, conj(beta, t)), identity(4), ck.depth) is not None
        return f"sample={k}", broken and fails

    ck.fact("n4.double_transposition",
            "activity (0 1)(2 3) with sections in the layer closure of D breaks the hypothesis",
            (impossible(k) for k in range(5)))


# ----------------------------------------------------------------------------
# wreath model


def suite_wreath(n: int, ck: _Checker, rng: random.Random, params: dict) -> None:
    s = int(params.get("s", 1))
    m = n // gcd(n, s)
    if params.get("m") is not None and int(params["m"]) != m:
        raise SuiteError(f"m must equal n/gcd(n, s) = {m}")
    if m < 2:
        raise SuiteError("n/gcd(n, s) must be at least 2")
    size = m * n
    # Point b*m + c is position c of block b; u turns block 0, a rotates the blocks.
    u = Perm([(x + 1) % m if x < m else x for x in range(size)])
    a = Perm([(x + m) % size for x in range(size)])
    bb = a ** s * u.inverse()

    def b_(i):
        return bb.conj(a ** i)

    def product(i, terms):
        out = Perm.identity(size)
        for k in range(terms):
            out = out * b_(i + k * s)
        return out

    ck.fact("wreath.orders", "u has order m and a has order n",
            [(f"m={m},n={n}", u.order() == m and a.order() == n)])
    ck.fact("wreath.recover_u", "u = b^-1 a^s", [("", u == bb.inverse() * a ** s)])
    ck.fact("wreath.exchange", "b_j b_(i+s) = b_i b_(j+s)",
            ((f"i={i},j={j}", b_(j) * b_(i + s) == b_(i) * b_(j + s))
             for i in range(n) for j in range(n)))
    ck.fact("wreath.orbit_product", "b_i b_(i+s) ... b_(i+(m-1)s) = e",
            ((f"i={i}", product(i, m).is_identity()) for i in range(n)))
    ck.fact("wreath.full_product", "b_i b_(i+s) ... b_(i+(n-1)s) = e",
            ((f"i={i}", product(i, n).is_identity()) for i in range(n)))


# ----------------------------------------------------------------------------
# symmetric


def suite_symmetric(n: int, ck: _Checker, rng: random.Random, params: dict) -> None:
    facts = perms.sylow_facts(n)
    p = facts.p
    ck.fact("symmetric.unique_cycle_subgroup", "exactly one Sylow p-subgroup contains the n-cycle",
            [(f"containing={len(facts.containing_cycle)}", len(facts.containing_cycle) == 1)])
    ck.fact("symmetric.sylow_count", "the number of Sylow p-subgroups is n!/|N(P)| and is 1 mod p",
            [(f"count={facts.count}",
              facts.count == factorial(n) // facts.normalizer_order and facts.count % p == 1)])
    ck.fact("symmetric.normalizer_order", "|N(P)| = |P| (p - 1)",
            [(f"|N|={facts.normalizer_order},|P|={facts.order}",
              facts.normalizer_order == facts.order * (p - 1))])
    if n == p:
        g = next(a for a in range(1, n) if perms.multiplier(n, a).order() == n - 1) if n > 2 else 1
        closure = perms.subgroup_closure([full_cycle(n), perms.multiplier(n, g)], n)
        norm = perms.normalizer(perms.symmetric_group(n),
                                perms.subgroup_closure([full_cycle(n)], n), [full_cycle(n)])
        ck.fact("symmetric.affine_normalizer",
                "sigma and a primitive multiplier generate the normalizer of <sigma>, of order p(p-1)",
                [(f"|closure|={len(closure)}", len(closure) == n * (n - 1) and closure == norm)])
    if n <= 5:
        P = facts.cycle_subgroup
        sigma = full_cycle(n)
        subs = [S for S in perms.abelian_subgroups(n)
                if all(x.conj(sigma) in S for x in S)]
        ck.fact("symmetric.abelian_normalized",
                "every abelian subgroup normalized by sigma lies in the Sylow subgroup containing sigma",
                ((f"order={len(S)}", S <= P) for S in subs))
    if n == 4:
        ck.fact("symmetric.cycle_subgroup_is_dihedral",
                "the Sylow 2-subgroup containing sigma is <sigma, (0 2)>",
                [("", facts.cycle_subgroup == el.dihedral4())])


# ----------------------------------------------------------------------------
# registry


def _param_int(text, n):
    return int(text)


def _param_adic(text, n):
    from .nadic import parse_rational
    return parse_rational(str(text), n)


def _param_expr(text, n):
    from .exprlang import evaluate
    return evaluate(str(text), n)


SUITES: dict[str, tuple[Callable, dict]] = {
    "delta": (suite_delta, {}),
    "powers": (suite_powers, {}),
    "normalizer": (suite_normalizer, {"xi": _param_adic, "rho": _param_adic}),
    "commutation": (suite_commutation, {"beta": _param_expr}),
    "theorem-b": (suite_theorem_b, {"beta": _param_expr, "s": _param_int}),
    "even-half": (suite_even_half, {"beta": _param_expr}),
    "transposition": (suite_transposition, {"beta": _param_expr}),
    "n4": (suite_n4, {"perturbations": _param_int}),
    "wreath": (suite_wreath, {"m": _param_int, "s": _param_int}),
    "symmetric": (suite_symmetric, {}),
}


def run_suite(name: str, n: int, params: dict | None = None, seed: int = 0,
              depth: int = DEFAULT_DEPTH) -> SuiteReport:
    """Run one suite.  ``params`` values may be strings (parsed) or ready objects."""
    if name not in SUITES:
        raise SuiteError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    fn, parsers = SUITES[name]
    params = dict(params or {})
    parsed = {}
    shown = {}
    for key, value in params.items():
        if key not in parsers:
            raise SuiteError(f"suite {name!r} has no parameter {key!r}")
        if isinstance(value, str):
            try:
                parsed[key] = parsers[key](value, n)
            except ValueError as exc:
                raise SuiteError(f"bad value for {key}: {exc}") from exc
            shown[key] = value
        else:
            parsed[key] = value
            shown[key] = str(value)
    ck = _Checker(n, depth)
    rng = random.Random(seed)
    start = time.perf_counter()
    fn(n, ck, rng, parsed)
    elapsed = (time.perf_counter() - start) * 1000
    shown = {"n": str(n), "depth": str(depth), **shown}
    return SuiteReport(name, shown, seed, ck.results, elapsed)
