"""Slow reference implementations used as independent test oracles.

Nothing here imports the numpy kernels of the package.
"""

from fractions import Fraction
from itertools import permutations


def is_prime_trial(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def rank_mod_p(rows, p):
    a = [[x % p for x in r] for r in rows]
    r = 0
    cols = len(a[0]) if a else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c] * inv % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
    return r


def rank_fraction(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    r = 0
    cols = len(a[0]) if a else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, len(a)):
            f = a[i][c] / a[r][c]
            a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def det_leibniz(rows, p=None):
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inv % 2 else 1
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total % p if p else total


def all_monomials(d, n):
    """Exponent vectors of degree d in n+1 variables, descending lex."""
    out = []

    def rec(prefix, left, k):
        if k == n:
            out.append(tuple(prefix + [left]))
            return
        for e in range(left, -1, -1):
            rec(prefix + [e], left - e, k + 1)

    rec([], d, 0)
    return out


def eval_monomial(e, x, p):
    v = 1
    for xi, ei in zip(x, e):
        v = v * pow(int(xi), ei, p) % p
    return v


def eval_rows(points, d, n, p):
    mons = all_monomials(d, n)
    return [[eval_monomial(e, x, p) for e in mons] for x in points]


def conditions_oracle(points, d, n, p):
    if not points:
        return 0
    return rank_mod_p(eval_rows(points, d, n, p), p)


def cb_failing_oracle(points, m, n, p):
    """Point i fails iff removing it lowers the evaluation rank."""
    full = conditions_oracle(points, m, n, p)
    return [i for i in range(len(points))
            if conditions_oracle(points[:i] + points[i + 1:], m, n, p) < full]


def roots_scan(coeffs, p):
    """Roots of sum c_i s^(e-i) t^i by plain evaluation over P^1(F_p)."""
    e = len(coeffs) - 1
    out = []
    if coeffs[-1] % p == 0:
        out.append((0, 1))
    for t in range(p):
        if sum(c * pow(t, i, p) for i, c in enumerate(coeffs)) % p == 0:
            out.append((1, t))
    return out


def splitmix64(state):
    mask = (1 << 64) - 1
    state = (state + 0x9E3779B97F4A7C15) & mask
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
    return state, z ^ (z >> 31)
