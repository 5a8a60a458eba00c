"""Acceptance criteria, one test per criterion, each with a wall-clock limit.

Run ``pytest tests/test_acceptance.py`` (or this file directly); the
terminal summary lists one PASS/FAIL line per criterion.
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from golden import GOLDEN
from odometer import elements as el
from odometer.cli import run
from odometer.exprlang import evaluate, parse, unparse
from odometer.nadic import NAdic
from odometer.perms import Perm, from_cycles, full_cycle, subgroup_closure
from odometer.relations import run_suite
from odometer.treeaut import (
    clear_caches,
    commutator,
    compose,
    conj,
    equal_bisim,
    equal_to_depth,
    first_difference,
    identity,
    inverse,
    is_level_transitive,
    orbit_size,
    power_int,
    state_graph,
    tau_pow_adic,
    wreath,
)


@pytest.fixture
def timed(request):
    @contextmanager
    def limit(seconds):
        clear_caches()
        start = time.perf_counter()
        yield
        elapsed = time.perf_counter() - start
        request.node.elapsed = elapsed
        assert elapsed < seconds, f"took {elapsed:.2f} s, limit {seconds} s"

    return limit


@pytest.mark.criterion(1, "diagonal power: tau^n equals (tau, ..., tau) by bisimulation")
def test_c01_diagonal_power(timed):
    with timed(1):
        for n in range(2, 7):
            t = el.tau(n)
            assert equal_bisim(power_int(t, n), el.diagonal(t, 1)).is_equal


@pytest.mark.criterion(2, "adding machine has exactly the two states tau and e")
def test_c02_state_graph(timed):
    with timed(1):
        for n in range(2, 7):
            g = state_graph(el.tau(n))
            assert len(g) == 2
            top, bottom = g.states
            assert top is el.tau(n) and bottom.is_identity()
            expected = {(0, i, i + 1, 1) for i in range(n - 1)} | {(0, n - 1, 0, 0)}
            expected |= {(1, i, i, 1) for i in range(n)}
            assert set(g.edges) == expected
        binary = set(state_graph(el.tau(2)).edges)
        assert (0, 1, 0, 0) in binary and (0, 0, 1, 1) in binary


@pytest.mark.criterion(3, "closed power formula agrees with repeated products")
def test_c03_power_formula(timed):
    with timed(5):
        for n in (2, 3, 4):
            t = el.tau(n)
            for m in range(-8, 9):
                assert equal_bisim(tau_pow_adic(n, m), power_int(t, m)).is_equal
        third = tau_pow_adic(4, Fraction(1, 3))
        assert equal_bisim(power_int(third, 3), el.tau(4)).is_equal


@pytest.mark.criterion(4, "delta suite passes exhaustively for 2 <= n <= 12")
def test_c04_delta_suite(timed):
    with timed(5):
        for n in range(2, 13):
            report = run_suite("delta", n)
            assert report.passed, report.text()
            assert not report.failures()


@pytest.mark.criterion(5, "lambda, iota, theta and psi conjugators")
def test_c05_conjugators(timed):
    with timed(5):
        for n in (2, 3, 4, 5):
            t = el.tau(n)
            for xi in (1 + n, 1 + 2 * n, (1 + n) ** 2):
                assert equal_to_depth(conj(t, el.lambda_(n, xi)), tau_pow_adic(n, xi), 10)
        for n in range(2, 7):
            assert equal_bisim(conj(el.tau(n), el.iota(n)), inverse(el.tau(n))).is_equal
        t4 = el.tau(4)
        assert equal_bisim(conj(t4, el.theta4()), inverse(t4)).is_equal
        for eta in (3, -1, Fraction(1, 3)):
            assert equal_to_depth(conj(t4, el.psi4(eta)), tau_pow_adic(4, eta), 10)


@pytest.mark.criterion(6, "commutator of tau^eta with lambda_theta is tau^(eta(theta-1))")
def test_c06_lambda_commutator(timed):
    rng = random.Random(6)
    with timed(5):
        for _ in range(10):
            n = rng.choice([2, 3, 4, 5])
            eta = NAdic(Fraction(rng.randint(-12, 12), rng.choice([1, 7, 11])), n)
            theta = NAdic(1 + n * rng.choice([-3, -2, -1, 1, 2, 3]), n)
            lhs = commutator(tau_pow_adic(n, eta), el.lambda_(n, theta))
            assert equal_to_depth(lhs, tau_pow_adic(n, eta * (theta - 1)), 8)


@pytest.mark.criterion(7, "normalizer conjugator and its parity obstruction")
def test_c07_normalizer_conjugator(timed):
    with timed(2):
        for n, xi, rho in [(3, 4, 1), (2, 5, 1)]:
            a = el.build_normalizer_conjugator(n, xi, rho)
            target = compose(el.lambda_(n, xi), tau_pow_adic(n, rho))
            assert equal_to_depth(conj(el.tau(n), a), target, 8)
        with pytest.raises(el.ConjugationError):
            el.build_normalizer_conjugator(2, 3, 1)


@pytest.mark.criterion(8, "conjugate_to_tau certifies tau^g for random inactive g")
def test_c08_conjugate_to_tau(timed):
    rng = random.Random(8)
    with timed(15):
        for n in (3, 5):
            t = el.tau(n)
            for _ in range(20):
                g = el.random_inactive(n, rng)
                beta = conj(t, g)
                report = el.conjugate_to_tau(beta, 6)
                assert report.certified
                assert equal_to_depth(conj(beta, report.conjugator), t, 6)


@pytest.mark.criterion(9, "centralizer of tau^2: 128 members commute, perturbations do not")
def test_c09_centralizer_tau2(timed):
    rng = random.Random(9)
    with timed(5):
        t2 = tau_pow_adic(4, 2)
        acts = el.centralizer_activities()
        assert len(acts) == 8
        family = [(m0, m1, p) for m0 in range(4) for m1 in range(4) for p in acts]
        assert len(family) == 128
        for m0, m1, p in family:
            g = el.centralizer_tau2_element(m0, m1, p)
            assert equal_to_depth(compose(g, t2), compose(t2, g), 8)
        for _ in range(20):
            m0, m1, p = rng.choice(family)
            kids = list(el.centralizer_tau2_element(m0, m1, p).sections)
            slot = rng.randrange(4)
            kids[slot] = compose(kids[slot], tau_pow_adic(4, rng.choice([-2, -1, 1, 2, 3])))
            g = wreath(kids, p)
            assert not equal_to_depth(compose(g, t2), compose(t2, g), 8)


@pytest.mark.criterion(10, "two-step conjugator lands exactly on tau^2")
def test_c10_square_class(timed):
    with timed(3):
        t2 = tau_pow_adic(4, 2)
        for m0 in (0, 1, 2, 3, Fraction(1, 3)):
            for xi1 in (1, 3, -1, Fraction(1, 5)):
                beta = el.beta_family_half(m0, xi1)
                first, second = el.square_class_conjugator(beta)
                result = conj(conj(beta, first), second)
                verdict = equal_bisim(result, t2)
                if verdict.is_unknown:
                    assert equal_to_depth(result, t2, 10)
                else:
                    assert verdict.is_equal


@pytest.mark.criterion(11, "wreath presentation relations in the permutation model")
def test_c11_wreath_model(timed):
    with timed(1):
        for m, n, s in [(2, 4, 2), (3, 3, 1), (2, 6, 3)]:
            report = run_suite("wreath", n, {"m": str(m), "s": str(s)})
            assert report.passed, report.text()


@pytest.mark.criterion(12, "symmetric group facts")
def test_c12_symmetric(timed):
    from odometer.perms import abelian_subgroups, multiplier, normalizer, symmetric_group, sylow_facts

    with timed(5):
        facts = sylow_facts(4)
        assert facts.count == 3 and len(facts.containing_cycle) == 1
        cyc5 = subgroup_closure([full_cycle(5)], 5)
        assert len(normalizer(symmetric_group(5), cyc5, [full_cycle(5)])) == 20
        sigma = full_cycle(4)
        dihedral = subgroup_closure([sigma, from_cycles(4, [[0, 2]])], 4)
        assert dihedral == facts.cycle_subgroup
        for h in abelian_subgroups(4):
            if all(x.conj(sigma) in h for x in h):
                assert h <= dihedral
        assert run_suite("symmetric", 4).passed


@pytest.mark.criterion(13, "transposition family relations on (e, e, tau, e)(0 2)")
def test_c13_transposition(timed):
    with timed(5):
        report = run_suite("transposition", 4, {"beta": "wreath(id, id, tau, id; (0 2))"}, depth=6)
        assert report.passed, report.text()
        assert len(report.relations) >= 20


@pytest.mark.criterion(14, "level transitivity of tau and of g^2 tau")
def test_c14_level_transitivity(timed):
    rng = random.Random(14)
    with timed(5):
        for n in (2, 3, 4):
            for k in range(7):
                if n ** k <= 4096:
                    assert orbit_size(el.tau(n), (0,) * k) == n ** k
        d = el.dihedral4()
        t = el.tau(4)
        for _ in range(5):
            g = el.random_automaton(4, rng.randint(1, 3), rng, activities=d)
            assert is_level_transitive(compose(power_int(g, 2), t), 4)


ERROR_CASES = [
    (["equal", "tau", "tau"], 64),
    (["--n", "4", "verify", "nope"], 64),
    (["--n", "4", "frobnicate", "tau"], 64),
    (["--n", "4", "eval", "tau *"], 65),
    (["--n", "4", "eval", "tau^1/2"], 65),
    (["--n", "4", "eval", "lambda(2)"], 65),
    (["--n", "3", "eval", "theta"], 65),
    (["--n", "4", "equal", "tau", "tau^5"], 1),
    (["--n", "2", "--budget", "2", "equal", "conj(tau, lambda(5))", "tau^5", "--bisim"], 2),
    (["--n", "2", "equal", "tau*tau", "wreath(tau, tau;)", "--bisim"], 0),
]


@pytest.mark.criterion(15, "parser golden expressions and CLI exit codes")
def test_c15_parser(timed, capsys):
    with timed(1):
        assert len(GOLDEN) == 30
        for n, text, canonical, build in GOLDEN:
            ast = parse(text)
            assert unparse(ast) == canonical
            assert unparse(parse(canonical)) == canonical
            value = evaluate(text, n)
            verdict = equal_bisim(value, build())
            assert verdict.is_equal or (verdict.is_unknown and equal_to_depth(value, build(), 10))
        for argv, code in ERROR_CASES:
            assert run(argv) == code, argv
        capsys.readouterr()


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
