"""Integer polynomials in one variable ``k``, stored low degree first."""

from __future__ import annotations

import re
from dataclasses import dataclass


@dataclass(frozen=True)
class Poly:
    coeffs: tuple = (0,)

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c or (0,))

    def __call__(self, k: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * k + c
        return acc

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly(tuple(x - y for x, y in zip(a, b)))

    def shift(self, d: int = 1) -> "Poly":
        """The polynomial ``k -> p(k + d)``."""
        out = [0] * len(self.coeffs)
        # Horner in the shifted variable
        for c in reversed(self.coeffs):
            out = [0] + out[:-1]
            for i in range(len(out) - 1):
                out[i] += d * out[i + 1]
            out[0] += c
        return Poly(tuple(out))

    def root_bound(self) -> int:
        """Every real root is below this integer (Cauchy's bound)."""
        if self.degree == 0:
            return 0
        lead = abs(self.leading)
        return 1 + max(-(-abs(c) // lead) for c in self.coeffs[:-1])

    def min_on_naturals(self, strict: bool) -> bool:
        """True iff ``p(k) > 0`` (``strict``) or ``p(k) >= 0`` for every ``k >= 0``.

        Exact: beyond the root bound the sign is that of the leading term.
        """
        if self.is_zero():
            return not strict
        if self.leading < 0:
            return False
        ok = (lambda v: v > 0) if strict else (lambda v: v >= 0)
        return all(ok(self(k)) for k in range(self.root_bound() + 1))

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0 and len(self.coeffs) > 1:
                continue
            terms.append(str(c) if i == 0 else f"{c}*k" if i == 1 else f"{c}*k^{i}")
        return " + ".join(reversed(terms))


_TERM = re.compile(r"^([+-]?\d*)\s*\*?\s*(k(?:\s*(?:\^|\*\*)\s*(\d+))?)?$")


def parse_poly(text: str) -> Poly:
    """Parse ``2k^2 - k + 3``, ``k**2``, ``1*k^2 + -2*k + 3`` and the like."""
    src = text.replace(" ", "")
    if not src:
        raise ValueError("empty polynomial")
    # split before every sign that is not part of an exponent or a leading '+-'
    parts = re.findall(r"[+-]*[^+-]+", src)
    coeffs: dict[int, int] = {}
    for part in parts:
        sign = -1 if part.count("-") % 2 else 1
        body = part.lstrip("+-")
        m = _TERM.match(body)
        if not m or not (m.group(1) or m.group(2)):
            raise ValueError(f"cannot parse polynomial term {part!r} in {text!r}")
        c = int(m.group(1)) if m.group(1) else 1
        deg = 0 if not m.group(2) else int(m.group(3) or 1)
        coeffs[deg] = coeffs.get(deg, 0) + sign * c
    top = max(coeffs)
    return Poly(tuple(coeffs.get(i, 0) for i in range(top + 1)))
