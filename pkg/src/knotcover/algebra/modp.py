"""Polynomials over F_p: arithmetic, factorization, and Smith normal form.

Polynomials are coefficient lists over 0..p-1, index = degree, trailing
zeros stripped ([] is zero).  p is passed explicitly; nothing here builds
field classes for the prime field itself.
"""

from __future__ import annotations

import random


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    # deterministic Miller-Rabin for 64-bit inputs, plenty here
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def fp_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def fp_from_int_poly(coeffs, p):
    return fp_trim([c % p for c in coeffs])


def fp_add(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, v in enumerate(a):
        out[i] = v
    for i, v in enumerate(b):
        out[i] = (out[i] + v) % p
    return fp_trim(out)


def fp_sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, v in enumerate(a):
        out[i] = v
    for i, v in enumerate(b):
        out[i] = (out[i] - v) % p
    return fp_trim(out)


def fp_scale(a, k, p):
    k %= p
    if k == 0:
        return []
    return [v * k % p for v in a]


def fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return fp_trim([v % p for v in out])


def fp_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        d = len(a) - len(b)
        q[d] = c
        for i, v in enumerate(b):
            a[i + d] = (a[i + d] - c * v) % p
        fp_trim(a)
    return fp_trim(q), a


def fp_mod(a, b, p):
    return fp_divmod(a, b, p)[1]


def fp_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, fp_mod(a, b, p)
    return fp_monic(a, p)


def fp_monic(a, p):
    if not a or a[-1] == 1:
        return list(a)
    inv = pow(a[-1], p - 2, p)
    return [v * inv % p for v in a]


def fp_pow_mod(a, e, mod, p):
    result = [1]
    base = fp_mod(a, mod, p)
    while e:
        if e & 1:
            result = fp_mod(fp_mul(result, base, p), mod, p)
        base = fp_mod(fp_mul(base, base, p), mod, p)
        e >>= 1
    return result


def fp_deriv(a, p):
    return fp_trim([i * a[i] % p for i in range(1, len(a))])


def fp_eval(a, x, p):
    out = 0
    for c in reversed(a):
        out = (out * x + c) % p
    return out


def fp_is_irreducible(f, p):
    """Rabin irreducibility test (exact, deterministic)."""
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    f = fp_monic(f, p)
    x = [0, 1]
    # x^(p^n) == x mod f and gcd(x^(p^(n/q)) - x, f) == 1 for prime q | n
    h = fp_pow_mod(x, p ** n, f, p)
    if fp_sub(h, x, p):
        return False
    for q in _prime_factors(n):
        h = fp_pow_mod(x, p ** (n // q), f, p)
        if len(fp_gcd(fp_sub(h, x, p), f, p)) - 1 != 0:
            return False
    return True


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def fp_squarefree_decomposition(f, p):
    """Yield (squarefree factor, multiplicity) with product f (monic)."""
    f = fp_monic(f, p)
    out = []

    def sqf(f, mult):
        if len(f) <= 1:
            return
        d = fp_deriv(f, p)
        if not d:
            # f = g(t^p) = g(t)^p over F_p
            g = fp_trim([f[i] for i in range(0, len(f), p)])
            sqf(g, mult * p)
            return
        c = fp_gcd(f, d, p)
        w = fp_divmod(f, c, p)[0]
        i = 1
        while len(w) > 1:
            y = fp_gcd(w, c, p)
            z = fp_divmod(w, y, p)[0]
            if len(z) > 1:
                out.append((z, mult * i))
            w = y
            c = fp_divmod(c, y, p)[0]
            i += 1
        # what remains of c carries the factors of multiplicity divisible by
        # p, at full multiplicity; its derivative vanishes, so the recursion
        # takes the p-th root and scales by p there
        if len(c) > 1:
            sqf(c, mult)

    sqf(f, 1)
    return out


def _distinct_degree(f, p):
    """(product of irreducibles of degree d, d) pieces of squarefree monic f."""
    out = []
    x = [0, 1]
    h = list(x)
    d = 0
    rest = list(f)
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = fp_pow_mod(h, p, rest, p)
        g = fp_gcd(fp_sub(h, x, p), rest, p)
        if len(g) > 1:
            out.append((g, d))
            rest = fp_divmod(rest, g, p)[0]
            h = fp_mod(h, rest, p)
    if len(rest) > 1:
        out.append((rest, len(rest) - 1))
    return out


def _equal_degree_split(f, d, p, rng):
    """Cantor-Zassenhaus split of monic squarefree f (all factors degree d)."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        r = [rng.randrange(p) for _ in range(n)] + [1]
        r = fp_trim(r)
        if p == 2:
            # trace map
            h = list(r)
            acc = list(r)
            for _ in range(d - 1):
                h = fp_mod(fp_mul(h, h, p), f, p)
                acc = fp_add(acc, h, p)
            g = fp_gcd(acc, f, p)
        else:
            e = (p ** d - 1) // 2
            h = fp_pow_mod(r, e, f, p)
            g = fp_gcd(fp_sub(h, [1], p), f, p)
        if 0 < len(g) - 1 < n:
            a = _equal_degree_split(g, d, p, rng)
            b = _equal_degree_split(fp_divmod(f, g, p)[0], d, p, rng)
            return a + b


def fp_factor(f, p, seed=0):
    """Full factorization of f over F_p.

    Returns (unit, [(monic irreducible, multiplicity), ...]) with factors
    sorted by degree then coefficient list.  Deterministic for a fixed seed.
    """
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    unit = f[-1] % p
    f = fp_monic(f, p)
    factors: dict[tuple[int, ...], int] = {}
    for sf, mult in fp_squarefree_decomposition(f, p):
        for block, d in _distinct_degree(sf, p):
            for irr in _equal_degree_split(block, d, p, rng):
                key = tuple(irr)
                factors[key] = factors.get(key, 0) + mult
    items = sorted(factors.items(), key=lambda kv: (len(kv[0]), kv[0]))
    return unit, [(list(k), m) for k, m in items]


def fp_poly_str(f, var="t") -> str:
    """Render like `t^4 + 2*t^3 + 2*t + 1` (coefficients already in 0..p-1)."""
    if not f:
        return "0"
    parts = []
    for e in range(len(f) - 1, -1, -1):
        c = f[e]
        if c == 0:
            continue
        if e == 0:
            parts.append(str(c))
        else:
            base = var if e == 1 else f"{var}^{e}"
            parts.append(base if c == 1 else f"{c}*{base}")
    return " + ".join(parts)


def fp_factorization_str(f, p, var="t") -> str:
    """Factorization rendered in knot-table style, e.g.
    `(2) * (t^2 + t + 1)`, `(t + 1)^2`, `t * (t^2 + t + 1)`, `t^2`."""
    unit, factors = fp_factor(f, p)
    parts = []
    if unit != 1:
        parts.append("(-1)" if unit == p - 1 and p > 2 else f"({unit})")
    multi = len(factors) + (1 if unit != 1 else 0) > 1
    for g, m in factors:
        s = fp_poly_str(g, var)
        if len(g) == 2 and g[0] == 0:  # the monomial t
            parts.append(s if m == 1 else f"{s}^{m}")
        elif m > 1:
            parts.append(f"({s})^{m}")
        else:
            parts.append(f"({s})" if multi else s)
    return " * ".join(parts)


# ---------------------------------------------------------------------------
# Smith normal form over F_p[t]


def fp_snf(mat, p):
    """Invariant factors (monic, dividing each other, zeros last) of a
    matrix over F_p[t].  Entries are F_p coefficient lists."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    a = [[list(e) for e in row] for row in mat]
    factors = []
    top = 0
    while top < min(m, n):
        piv = None
        best = None
        for i in range(top, m):
            for j in range(top, n):
                if a[i][j] and (best is None or len(a[i][j]) < best):
                    best, piv = len(a[i][j]), (i, j)
        if piv is None:
            break
        i0, j0 = piv
        a[top], a[i0] = a[i0], a[top]
        for row in a:
            row[top], row[j0] = row[j0], row[top]
        while True:
            done = True
            for i in range(top + 1, m):
                if a[i][top]:
                    q, r = fp_divmod(a[i][top], a[top][top], p)
                    for j in range(top, n):
                        a[i][j] = fp_sub(a[i][j], fp_mul(q, a[top][j], p), p)
                    if a[i][top]:
                        a[top], a[i] = a[i], a[top]
                        done = False
                        break
            if not done:
                continue
            for j in range(top + 1, n):
                if a[top][j]:
                    q, r = fp_divmod(a[top][j], a[top][top], p)
                    for i in range(top, m):
                        a[i][j] = fp_sub(a[i][j], fp_mul(q, a[i][top], p), p)
                    if a[top][j]:
                        for row in a:
                            row[top], row[j] = row[j], row[top]
                        done = False
                        break
            if not done:
                continue
            pivot = a[top][top]
            for i in range(top + 1, m):
                bad = next((j for j in range(top + 1, n)
                            if fp_mod(a[i][j], pivot, p)), None)
                if bad is not None:
                    for j in range(top, n):
                        a[top][j] = fp_add(a[top][j], a[i][j], p)
                    done = False
                    break
            if done:
                break
        factors.append(fp_monic(a[top][top], p))
        top += 1
    factors += [[] for _ in range(min(m, n) - len(factors))]
    return factors
