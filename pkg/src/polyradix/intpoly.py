"""Dense univariate polynomials over the integers.

Coefficients are stored ascending by degree and are plain Python ints, so
every operation is exact.  Besides ring arithmetic this module provides the
Sylvester resultant (Bareiss elimination), a gcd test over the rationals, an
exact test for expanding polynomials and a parser for the textual forms
``"[6,5,1]"`` and ``"x^2+5x+6"``.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Sequence

NEG_INF = float("-inf")


class PolyParseError(ValueError):
    """Raised for malformed polynomial text; ``pos`` is the 0-based column."""

    def __init__(self, text: str, pos: int, msg: str):
        self.text = text
        self.pos = pos
        super().__init__(f"{msg} at position {pos}: {text!r}\n  {' ' * (pos + 1)}^")


class IntPoly:
    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)
        self._hash = None

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPoly:
        return cls((0,) * k + (c,))

    @classmethod
    def parse(cls, text: str) -> IntPoly:
        return parse_poly(text)

    # -- structure --------------------------------------------------------

    @property
    def degree(self):
        """Degree; the zero polynomial has degree ``NEG_INF``."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("IntPoly", self.coeffs))
        return self._hash

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return format_poly(self.coeffs)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> IntPoly:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> IntPoly:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> IntPoly:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> IntPoly:
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPoly(out)

    def __rmul__(self, other) -> IntPoly:
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> IntPoly:
        if k < 0:
            raise ValueError("negative exponent")
        out, base = IntPoly((1,)), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c: int) -> IntPoly:
        return IntPoly(c * a for a in self.coeffs)

    def shift_up(self, k: int = 1) -> IntPoly:
        """Multiply by ``x**k``."""
        if not self.coeffs:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def __call__(self, a):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def primitive(self) -> IntPoly:
        """Primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lc < 0:
            g = -g
        return IntPoly(c // g for c in self.coeffs)

    def reverse(self) -> IntPoly:
        """``x**deg * p(1/x)``; trailing zero coefficients are dropped first."""
        return IntPoly(reversed(self.coeffs))

    def compose_shift(self, a: int) -> IntPoly:
        """Return ``p(x - a)``."""
        # Horner in the ring Z[x]
        out = IntPoly()
        lin = IntPoly((-a, 1))
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def divmod_monic(self, m: IntPoly) -> tuple[IntPoly, IntPoly]:
        """Division with remainder by a monic polynomial, exact over Z."""
        if not m.coeffs or m.lc != 1:
            raise ValueError(f"divisor {m} is not monic")
        r = list(self.coeffs)
        dm = len(m.coeffs) - 1
        if len(r) <= dm:
            return IntPoly(), self
        q = [0] * (len(r) - dm)
        mc = m.coeffs
        for k in range(len(r) - 1, dm - 1, -1):
            t = r[k]
            if t:
                q[k - dm] = t
                base = k - dm
                for i in range(dm + 1):
                    r[base + i] -= t * mc[i]
        return IntPoly(q), IntPoly(r[:dm])

    def __mod__(self, m: IntPoly) -> IntPoly:
        return self.divmod_monic(m)[1]

    def pseudo_rem(self, m: IntPoly) -> IntPoly:
        """Pseudo-remainder ``prem(self, m)``, valid for any nonzero ``m``."""
        if not m.coeffs:
            raise ZeroDivisionError("pseudo-remainder by zero polynomial")
        r = list(self.coeffs)
        dm = len(m.coeffs) - 1
        lc = m.lc
        mc = m.coeffs
        steps = max(len(r) - dm, 0)
        while len(r) - 1 >= dm and r:
            t = r[-1]
            shift = len(r) - 1 - dm
            r = [lc * c for c in r]
            for i in range(dm + 1):
                r[shift + i] -= t * mc[i]
            while r and r[-1] == 0:
                r.pop()
            steps -= 1
        # normalise to the textbook factor lc**(deg self - deg m + 1)
        if steps > 0:
            f = lc ** steps
            r = [f * c for c in r]
        return IntPoly(r)


def _coerce(v):
    if isinstance(v, IntPoly):
        return v
    if isinstance(v, int):
        return IntPoly((v,))
    return None


X = IntPoly.x()


# ---------------------------------------------------------------------------
# resultants and gcds


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        rowk = m[k]
        for i in range(k + 1, n):
            rowi = m[i]
            mik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (pivot * rowi[j] - mik * rowk[j]) // prev
            rowi[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def sylvester_matrix(p: IntPoly, q: IntPoly) -> list[list[int]]:
    """Sylvester matrix with the ``deg q`` shifted rows of ``p`` on top.

    Rows hold coefficients in descending degree order.
    """
    if p.is_zero() or q.is_zero():
        raise ValueError("Sylvester matrix of a zero polynomial")
    m, n = p.degree, q.degree
    size = m + n
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + pc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + qc + [0] * (size - n - 1 - i))
    return rows


def resultant(p: IntPoly, q: IntPoly) -> int:
    """Resultant as the determinant of :func:`sylvester_matrix`.

    With this convention ``resultant(x - a, q) == q(a)``.
    """
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero polynomial")
    return bareiss_det(sylvester_matrix(p, q))


def gcd_over_q(p: IntPoly, q: IntPoly) -> IntPoly:
    """Primitive gcd of ``p`` and ``q`` in Q[x] (primitive PRS)."""
    a, b = p.primitive(), q.primitive()
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = a.pseudo_rem(b)
        a, b = b, r.primitive()
    return a


def coprime_over_Q(p: IntPoly, q: IntPoly) -> bool:
    if p.is_zero() or q.is_zero():
        raise ValueError("coprimality of a zero polynomial is undefined")
    return gcd_over_q(p, q).degree == 0


# ---------------------------------------------------------------------------
# root location


def _all_roots_inside_unit_disk(q: IntPoly) -> bool:
    # Schur-Cohn reduction: while |q(0)| < |lc q|, q has all roots strictly
    # inside iff (lc*q - q(0)*q^rev)/x does.  Integer arithmetic throughout.
    while q.degree > 0:
        c = list(q.coeffs)
        a0, an = c[0], c[-1]
        if abs(a0) >= abs(an):
            return False
        rev = c[::-1]
        r = [an * c[i] - a0 * rev[i] for i in range(len(c))]
        q = IntPoly(r[1:]).primitive()
    return True


def is_expanding(p: IntPoly) -> bool:
    """True iff every complex root of ``p`` has modulus strictly above 1."""
    if p.degree == NEG_INF or p.degree < 1:
        raise ValueError(f"is_expanding needs a nonconstant polynomial, got {p}")
    if p[0] == 0:
        return False
    return _all_roots_inside_unit_disk(p.reverse())


def sign_variations(p: IntPoly) -> int:
    signs = [c > 0 for c in p.coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_positive_roots(p: IntPoly) -> int:
    """Number of distinct real roots in ``(0, inf)``, via a Sturm sequence."""
    if p.degree == NEG_INF or p.degree < 1:
        return 0
    c = list(p.coeffs)
    while c[0] == 0:
        c.pop(0)
    p = IntPoly(c)
    if p.degree < 1 or sign_variations(p) == 0:
        return 0
    seq = [p, IntPoly(k * a for k, a in enumerate(p.coeffs))]
    seq[1] = IntPoly(seq[1].coeffs[1:])
    while seq[-1].degree > 0:
        prev, cur = seq[-2], seq[-1]
        r = prev.pseudo_rem(cur)
        if r.is_zero():
            break
        # prem = lc**k * rem; the next Sturm term is -rem up to a positive factor
        k = prev.degree - cur.degree + 1
        if cur.lc ** k > 0:
            r = -r
        g = r.content()
        seq.append(IntPoly(a // g for a in r.coeffs))
    at_zero = _sign_changes(s[0] for s in seq)
    at_inf = _sign_changes(s.lc for s in seq)
    return at_zero - at_inf


# ---------------------------------------------------------------------------
# text syntax


_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*(\*)?\s*([xX](?:\s*\^\s*(\d+))?)?\s*")


def parse_poly(text: str) -> IntPoly:
    """Parse ``"[6,5,1]"`` (ascending coefficients) or ``"x^2+5x+6"``."""
    s = text.strip()
    if not s:
        raise PolyParseError(text, 0, "empty polynomial")
    if s.startswith("["):
        offset = text.index("[")
        if not s.endswith("]"):
            raise PolyParseError(text, len(text.rstrip()), "missing ']'")
        body = s[1:-1]
        if not body.strip():
            return IntPoly()
        out = []
        pos = offset + 1
        for part in body.split(","):
            try:
                out.append(int(part.strip()))
            except ValueError:
                raise PolyParseError(text, pos + len(part) - len(part.lstrip()), "expected integer") from None
            pos += len(part) + 1
        return IntPoly(out)
    coeffs: dict[int, int] = {}
    pos = 0
    n = len(text)
    first = True
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TERM.match(text, pos)
        sign, num, star, xpart, exp = m.groups()
        if not first and sign is None:
            raise PolyParseError(text, _skip_ws(text, pos), "expected '+' or '-'")
        if num is None and xpart is None:
            raise PolyParseError(text, _skip_ws(text, m.end(1) if sign else pos), "expected a term")
        if star and (num is None or xpart is None):
            raise PolyParseError(text, text.index("*", pos), "misplaced '*'")
        c = int(num) if num is not None else 1
        if sign == "-":
            c = -c
        k = 0 if xpart is None else (int(exp) if exp is not None else 1)
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
        first = False
        if m.end() == m.start():
            raise PolyParseError(text, pos, "unexpected character")
    if first:
        raise PolyParseError(text, 0, "empty polynomial")
    deg = max(coeffs)
    return IntPoly(coeffs.get(k, 0) for k in range(deg + 1))


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def format_poly(coeffs: Sequence[int], var: str = "x") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first_body = terms[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        out += f"{sign}{body}"
    return out


def as_poly(v) -> IntPoly:
    """Accept an IntPoly, an int, a coefficient sequence or polynomial text."""
    if isinstance(v, IntPoly):
        return v
    if isinstance(v, int):
        return IntPoly((v,))
    if isinstance(v, str):
        return parse_poly(v)
    return IntPoly(v)
