import itertools
import random

import numpy as np
import pytest

from immaculatum.fan import builtin_catalog, parse_builtin, torsion_p1
from immaculatum.picard import divisor_rep, picard_group
from immaculatum.homology import tempting_sets

BUILTINS = builtin_catalog()
ALL_FANS = BUILTINS + [torsion_p1()]


def fan_id(fan):
    return str(fan)


@pytest.fixture(params=BUILTINS, ids=fan_id)
def any_builtin(request):
    return request.param


@pytest.fixture
def rng():
    return random.Random(20261016)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def setup(spec):
    fan = parse_builtin(spec) if isinstance(spec, str) else spec
    return fan, picard_group(fan), tempting_sets(fan)


def _principal_check(fan):
    """Return a vectorised test of membership in the principal lattice.

    A vector x in Z^n is principal iff x = (<m, v_i>)_i for an integer m;
    m is recovered from one maximal cone by Cramer's rule, independently of
    any Smith normal form.
    """
    rays = np.array(fan.rays, dtype=np.int64)
    sigma = list(fan.max_cones[0])
    B = rays[sigma]
    det = int(round(np.linalg.det(B)))
    adj = np.rint(np.linalg.inv(B) * det).astype(np.int64)

    def check(X):
        # X: (k, n) integer rows
        mdet = X[:, sigma] @ adj.T
        ok = np.all(mdet % det == 0, axis=1)
        m = mdet // det
        return ok & np.all(m @ rays.T == X, axis=1)

    return check


def brute_force_fibre(fan, c, I, bound):
    """Count a in [0, bound]^n with pi_I(a) - c principal.

    pi_I(a) = sum_{i not in I} a_i E_i - sum_{i in I} (1 + a_i) E_i.
    """
    n = fan.n
    Iset = set(I)
    sign = np.array([-1 if i in Iset else 1 for i in range(n)], dtype=np.int64)
    shift = np.array([-1 if i in Iset else 0 for i in range(n)], dtype=np.int64)
    A = np.array(list(itertools.product(range(bound + 1), repeat=n)), dtype=np.int64)
    X = A * sign + shift - np.array(c, dtype=np.int64)
    hits = _principal_check(fan)(X)
    return int(hits.sum()), (A[hits].max() if hits.any() else -1)


def oracle_count(fan, c, I, start=4, step=4, limit=40):
    """Brute-force fibre size, growing the box until the count is stable."""
    prev = None
    b = start
    while b <= limit:
        cnt, top = brute_force_fibre(fan, c, I, b)
        if prev is not None and cnt == prev and top < b - step:
            return cnt
        prev = cnt
        b += step
    raise RuntimeError("oracle did not stabilise")
