"""Freeze reference p-values for the Welch t-test.

The reference is computed with mpmath at 50 digits by integrating the
Student t density directly, so it shares no code path with
``solonet.stats.welch_t_test`` (which goes through the regularized
incomplete beta function). scipy's ``ttest_ind(equal_var=False)`` is run
as a third opinion and must agree.

Run from the repo root:

    python scripts/make_welch_fixtures.py > tests/fixtures/welch_reference.json
"""

import json
import sys

import mpmath
import numpy as np
from scipy import stats as sps

mpmath.mp.dps = 50


def t_density(x, df):
    c = mpmath.gamma((df + 1) / 2) / (mpmath.sqrt(df * mpmath.pi) * mpmath.gamma(df / 2))
    return c * (1 + x * x / df) ** (-(df + 1) / 2)


def reference_p(a, b):
    a = [mpmath.mpf(repr(v)) for v in a]
    b = [mpmath.mpf(repr(v)) for v in b]
    na, nb = len(a), len(b)
    ma, mb = sum(a) / na, sum(b) / nb
    va = sum((v - ma) ** 2 for v in a) / (na - 1)
    vb = sum((v - mb) ** 2 for v in b) / (nb - 1)
    sa, sb = va / na, vb / nb
    t = (ma - mb) / mpmath.sqrt(sa + sb)
    df = (sa + sb) ** 2 / (sa**2 / (na - 1) + sb**2 / (nb - 1))
    tail = mpmath.quad(lambda x: t_density(x, df), [abs(t), abs(t) + 10, mpmath.inf])
    return float(2 * tail), float(t), float(df)


def cases():
    rng = np.random.default_rng(20170401)
    out = [
        ([1.0, 2.0, 3.0, 4.0, 5.0], [2.0, 3.0, 4.0, 5.0, 6.0]),
        ([0.0, 0.01] * 5, [10.0, 10.01] * 5),
        ([1.0, 1.1, 0.9], [10.0, 10.1, 9.9]),
    ]
    while len(out) < 50:
        na, nb = (int(v) for v in rng.integers(2, 31, size=2))
        shift = float(rng.choice([0.0, 0.1, 0.5, 1.0, 3.0]))
        sa, sb = (float(v) for v in rng.uniform(0.2, 4.0, size=2))
        a = np.round(rng.normal(5.0, sa, na), 4).tolist()
        b = np.round(rng.normal(5.0 + shift, sb, nb), 4).tolist()
        out.append((a, b))
    return out


def main():
    rows = []
    for a, b in cases():
        p, t, df = reference_p(a, b)
        check = sps.ttest_ind(a, b, equal_var=False).pvalue
        if abs(check - p) > 1e-9:
            sys.exit(f"scipy disagrees with quadrature: {check} vs {p}")
        rows.append({"a": a, "b": b, "t": t, "df": df, "p": p})
    json.dump({"oracle": "mpmath quadrature of t density, 50 digits", "cases": rows}, sys.stdout, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
