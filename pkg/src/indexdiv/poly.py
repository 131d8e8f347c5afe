"""Integer polynomials: dense representation, exact and modular evaluation, parsing."""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass

__all__ = [
    "IntPolynomial",
    "PolySyntaxError",
    "parse_poly",
    "eval_exact",
    "eval_mod",
    "trinomial",
]

# Dense storage; anything past this is almost certainly a typo in the exponent.
MAX_DEGREE = 1 << 20


class PolySyntaxError(ValueError):
    """Raised for malformed polynomial text. ``pos`` is the 0-based offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


@dataclass(frozen=True)
class IntPolynomial:
    """f in Z[x]; ``coeffs[i]`` is the coefficient of x^i, trailing zeros stripped."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(a) for a in self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_trinomial(cls, d: int, e: int, c: int) -> IntPolynomial:
        """x^d + x^e + c (exponents may coincide or be 0; like terms add)."""
        if d < 0 or e < 0:
            raise ValueError("exponents must be non-negative")
        coeffs = [0] * (max(d, e) + 1)
        coeffs[d] += 1
        coeffs[e] += 1
        coeffs[0] += c
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def constant(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def is_even_function(self) -> bool:
        return all(a == 0 for a in self.coeffs[1::2])

    def support(self) -> list[int]:
        """Exponents carrying a nonzero coefficient, ascending."""
        return [i for i, a in enumerate(self.coeffs) if a]

    def __call__(self, x: int) -> int:
        return eval_exact(self, x)

    def __str__(self) -> str:
        return render(self)


def trinomial(f: IntPolynomial) -> tuple[int, int, int] | None:
    """Return (d, e, c) when f = x^d + x^e + c with d > e >= 2, else None."""
    s = [i for i in f.support() if i > 0]
    if len(s) != 2 or s[0] < 2:
        return None
    e, d = s
    if f.coeffs[d] != 1 or f.coeffs[e] != 1:
        return None
    return d, e, f.constant


def eval_exact(f: IntPolynomial, x: int) -> int:
    acc = 0
    for a in reversed(f.coeffs):
        acc = acc * x + a
    return acc


def eval_mod(f: IntPolynomial, x: int, m: int) -> int:
    """f(x) mod m in [0, m), Horner with coefficients reduced first."""
    if m < 1:
        raise ValueError("modulus must be >= 1")
    if m == 1:
        return 0
    x %= m
    acc = 0
    for a in reversed(f.coeffs):
        acc = (acc * x + a) % m
    return acc


def reduce_coeffs(f: IntPolynomial, m: int) -> list[int]:
    """Coefficients mod m, highest degree first (Horner order)."""
    return [a % m for a in reversed(f.coeffs)]


def render(f: IntPolynomial) -> str:
    """Canonical text in the parse_poly grammar, highest degree first."""
    if f.is_zero:
        return "0"
    parts = []
    for i in range(f.degree, -1, -1):
        a = f.coeffs[i]
        if a == 0:
            continue
        sign = "-" if a < 0 else "+"
        k = abs(a)
        if i == 0:
            body = str(k)
        else:
            mono = "x" if i == 1 else f"x^{i}"
            body = mono if k == 1 else f"{k}*{mono}"
        parts.append(sign + body)
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


_TERM = re.compile(
    r"""
    (?P<k>\d+)(?:\s*\*\s*(?P<kx>x)(?:\s*\^\s*(?P<ke>\d+))?)?
    | (?P<x>x)(?:\s*\^\s*(?P<e>\d+))?
    """,
    re.VERBOSE,
)


def parse_poly(text: str) -> IntPolynomial:
    """Parse e.g. ``"x^13+x^3+5"``, ``"2*x - 3"``, ``"-x^2"``.

    Terms are ``k``, ``x``, ``x^e`` or ``k*x^e`` (also ``k*x``) joined by ``+``/``-``;
    whitespace is ignored and like terms are summed.
    """
    terms: dict[int, int] = {}
    pos = 0
    n = len(text)

    def skip_ws(i: int) -> int:
        while i < n and text[i].isspace():
            i += 1
        return i

    pos = skip_ws(pos)
    if pos == n:
        raise PolySyntaxError("empty polynomial", pos)
    first = True
    while True:
        pos = skip_ws(pos)
        sign = 1
        if pos < n and text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos = skip_ws(pos + 1)
        elif not first:
            raise PolySyntaxError(f"expected '+' or '-', found {text[pos]!r}", pos)
        m = _TERM.match(text, pos)
        if m is None:
            found = repr(text[pos]) if pos < n else "end of input"
            raise PolySyntaxError(f"expected a term, found {found}", pos)
        if m.group("k") is not None:
            k = int(m.group("k"))
            if m.group("kx"):
                exp_text, exp_pos = m.group("ke"), m.start("ke")
            else:
                exp_text, exp_pos = "0", m.start()
        else:
            k = 1
            exp_text, exp_pos = m.group("e"), m.start("e")
        if exp_text is None:
            exp = 1
        else:
            exp = int(exp_text)
            if exp > sys.maxsize:
                raise PolySyntaxError("exponent overflows the platform word", exp_pos)
            if exp > MAX_DEGREE:
                raise PolySyntaxError(f"exponent exceeds {MAX_DEGREE}", exp_pos)
        terms[exp] = terms.get(exp, 0) + sign * k
        pos = skip_ws(m.end())
        first = False
        if pos == n:
            break
    if not terms:
        return IntPolynomial(())
    coeffs = [0] * (max(terms) + 1)
    for exp, k in terms.items():
        coeffs[exp] = k
    return IntPolynomial(tuple(coeffs))
