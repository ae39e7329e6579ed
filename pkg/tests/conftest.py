import numpy as np
import pytest
import scipy.special as sc

import polyconv


@pytest.fixture(autouse=True)
def _fresh_cache():
    polyconv.clear_plan_cache()
    yield
    polyconv.clear_plan_cache()


def decaying(n, decay=1.5, seed=0):
    rng = np.random.default_rng(seed)
    return rng.standard_normal(n) / np.arange(1, n + 1, dtype=float) ** decay


def _project(evaluate_source, evaluate_target, nodes, weights, n):
    """Connection matrix by discrete orthogonal projection at Gauss nodes."""
    target = np.array([evaluate_target(j, nodes) for j in range(n)])
    norms = (target * target * weights).sum(axis=1)
    out = np.empty((n, n))
    for k in range(n):
        out[:, k] = (target * (evaluate_source(k, nodes) * weights)).sum(axis=1) / norms
    return out


def quad_jacobi(alpha, beta, gamma, delta, n, order=120):
    x, w = sc.roots_jacobi(order, gamma, delta)
    return _project(
        lambda k, t: sc.eval_jacobi(k, alpha, beta, t), lambda j, t: sc.eval_jacobi(j, gamma, delta, t), x, w, n
    )


def quad_ultra(lam1, lam2, n, order=120):
    x, w = sc.roots_gegenbauer(order, lam2)
    return _project(
        lambda k, t: sc.eval_gegenbauer(k, lam1, t), lambda j, t: sc.eval_gegenbauer(j, lam2, t), x, w, n
    )


def quad_laguerre(a1, a2, n, order=120):
    x, w = sc.roots_genlaguerre(order, a2)
    return _project(
        lambda k, t: sc.eval_genlaguerre(k, a1, t), lambda j, t: sc.eval_genlaguerre(j, a2, t), x, w, n
    )


def quad_leg2cheb(n, order=120):
    x, w = sc.roots_chebyt(order)
    return _project(lambda k, t: sc.eval_legendre(k, t), lambda j, t: sc.eval_chebyt(j, t), x, w, n)


def quad_cheb2leg(n, order=120):
    x, w = sc.roots_legendre(order)
    return _project(lambda k, t: sc.eval_chebyt(k, t), lambda j, t: sc.eval_legendre(j, t), x, w, n)


# Acceptance criteria record one summary line each; printed after the run.
ACCEPTANCE: dict = {}


def record(number, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {title} ({detail})"
    ACCEPTANCE[number] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
