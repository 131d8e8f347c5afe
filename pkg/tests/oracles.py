"""Brute-force reference computations, deliberately naive and independent of the package."""


def horner(coeffs, x, m=None):
    acc = 0
    for a in reversed(coeffs):
        acc = acc * x + a
        if m is not None:
            acc %= m
    return acc


def exact_orbit(coeffs, n):
    out, x = [], 0
    for _ in range(n):
        x = horner(coeffs, x)
        out.append(x)
    return out


def naive_term_mod(coeffs, m, n):
    """f^n(0) mod m by n plain steps."""
    x = 0
    for _ in range(n):
        x = horner(coeffs, x, m)
    return x % m


def naive_members(coeffs, bound):
    return [n for n in range(1, bound + 1) if naive_term_mod(coeffs, n, n) == 0]


def trial_primes(limit):
    return [n for n in range(2, limit + 1) if all(n % d for d in range(2, int(n**0.5) + 1))]


def naive_valuation(value, p):
    if value == 0:
        return float("inf")
    k = 0
    while value % p == 0:
        value //= p
        k += 1
    return k


def naive_order(a, p):
    k, x = 1, a % p
    while x != 1:
        x = x * a % p
        k += 1
    return k


def naive_cycle_type(perm):
    seen, cycles = set(), []
    for s in range(len(perm)):
        if s in seen:
            continue
        x, length = s, 0
        while x not in seen:
            seen.add(x)
            x = perm[x]
            length += 1
        cycles.append(length)
    return sorted(cycles)
