"""Vectorised orbit iteration: one residue per modulus, all moduli stepped together."""

from __future__ import annotations

import numpy as np

from .poly import IntPolynomial

# a*b with a, b < m must fit in int64
INT64_MODULUS_LIMIT = 3_037_000_499


def _dtype_for(max_modulus: int):
    return np.int64 if max_modulus <= INT64_MODULUS_LIMIT else object


def _powmod(x: np.ndarray, e: int, m: np.ndarray) -> np.ndarray:
    result = np.ones_like(x) % m
    base = x
    while e:
        if e & 1:
            result = result * base % m
        e >>= 1
        if e:
            base = base * base % m
    return result


class VectorMap:
    """x -> f(x) mod m applied elementwise, m a fixed vector of moduli.

    Uses sparse Horner over the support of f so high-degree sparse maps
    cost O(log degree) multiplications per step.
    """

    def __init__(self, f: IntPolynomial, moduli: np.ndarray):
        self.moduli = moduli
        support = f.support()[::-1]
        self.exps = support
        self.coeffs = [np.asarray([f.coeffs[i] % int(m) for m in moduli], dtype=moduli.dtype) for i in support]

    def __call__(self, x: np.ndarray, start: int = 0, stop: int | None = None) -> np.ndarray:
        """f(x) mod m for ``x`` aligned with ``moduli[start:stop]``."""
        if not self.exps:
            return np.zeros_like(x)
        m = self.moduli[start:stop]
        cs = [c[start:stop] for c in self.coeffs]
        acc = cs[0].copy()
        for i in range(1, len(self.exps)):
            acc = acc * _gap_power(x, self.exps[i - 1] - self.exps[i], m) % m
            acc = (acc + cs[i]) % m
        last = self.exps[-1]
        if last:
            acc = acc * _gap_power(x, last, m) % m
        return acc


def _gap_power(x: np.ndarray, e: int, m: np.ndarray) -> np.ndarray:
    if e == 1:
        return x
    if e == 2:
        return x * x % m
    return _powmod(x, e, m)


def residues_at_own_index(f: IntPolynomial, moduli) -> np.ndarray:
    """r[i] = f^(m_i)(0) mod m_i for each modulus m_i (any order, repeats allowed)."""
    ms = np.asarray(list(moduli), dtype=object)
    if ms.size == 0:
        return np.zeros(0, dtype=np.int64)
    order = np.argsort(ms.astype(float), kind="stable")
    sorted_ms = [int(v) for v in ms[order]]
    if sorted_ms[0] < 1:
        raise ValueError("moduli must be >= 1")
    dtype = _dtype_for(sorted_ms[-1])
    m_arr = np.asarray(sorted_ms, dtype=dtype)
    fmap = VectorMap(f, m_arr)
    x = np.zeros(len(sorted_ms), dtype=dtype)
    out = np.zeros(len(sorted_ms), dtype=dtype)
    lo = 0
    top = sorted_ms[-1]
    for k in range(1, top + 1):
        # entries with modulus < k are finished; shrink from the front
        while sorted_ms[lo] < k:
            lo += 1
        x[lo:] = fmap(x[lo:], lo)
        hi = lo
        while hi < len(sorted_ms) and sorted_ms[hi] == k:
            out[hi] = x[hi]
            hi += 1
    result = np.empty_like(out)
    result[order] = out
    return result
