"""Exact sparse multivariate polynomial arithmetic over the rationals.

Coefficients are `fractions.Fraction`, so every identity asserted elsewhere in
the package (Symanzik fixtures, determinant factorizations, sign bookkeeping)
holds exactly, with no tolerance management.  Monomials are stored sparsely;
printing uses a graded lexicographic order over the sorted variable names so
that equal polynomials always render identically.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rat = Union[int, Fraction]

# monomial = tuple of (variable, exponent), sorted by variable name, exponent > 0
Monomial = tuple


class PolynomialError(ValueError):
    pass


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise PolynomialError(f"not an exact rational coefficient: {c!r}")


class Polynomial:
    """A polynomial in named variables with exact rational coefficients.

    Values are immutable; all arithmetic returns new canonical-form instances
    (no zero coefficients stored, monomial keys sorted by variable name), so
    equality is plain dictionary equality and independent of how a value was
    built.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        canonical = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = _as_fraction(coeff)
                if coeff == 0:
                    continue
                mono = tuple(sorted((v, e) for v, e in mono if e != 0))
                for v, e in mono:
                    if e < 0 or not isinstance(e, int):
                        raise PolynomialError(f"bad exponent {e} for {v}")
                canonical[mono] = canonical.get(mono, Fraction(0)) + coeff
                if canonical[mono] == 0:
                    del canonical[mono]
        object.__setattr__(self, "terms", canonical)
        object.__setattr__(self, "_hash", None)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial()

    @staticmethod
    def const(c: Rat) -> "Polynomial":
        return Polynomial({(): _as_fraction(c)})

    @staticmethod
    def var(name: str) -> "Polynomial":
        if not _VAR_RE.fullmatch(name):
            raise PolynomialError(f"bad variable name {name!r}")
        return Polynomial({((name, 1),): Fraction(1)})

    @staticmethod
    def monomial(c: Rat, powers: Mapping[str, int]) -> "Polynomial":
        return Polynomial({tuple(sorted(powers.items())): _as_fraction(c)})

    # -- basic queries ------------------------------------------------------

    @property
    def variables(self) -> tuple:
        """Sorted tuple of variable names that actually occur."""
        seen = set()
        for mono in self.terms:
            for v, _ in mono:
                seen.add(v)
        return tuple(sorted(seen))

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(mono == () for mono in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise PolynomialError("not a constant polynomial")
        return self.terms.get((), Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e for _, e in mono) for mono in self.terms)

    def degree_in(self, var: str) -> int:
        deg = 0
        for mono in self.terms:
            for v, e in mono:
                if v == var:
                    deg = max(deg, e)
        return deg

    def is_homogeneous(self, degree: int | None = None, variables=None) -> bool:
        """True iff all monomials have the same total degree in `variables`
        (all variables when omitted); `degree` pins the expected value."""
        degs = set()
        for mono in self.terms:
            if variables is None:
                degs.add(sum(e for _, e in mono))
            else:
                degs.add(sum(e for v, e in mono if v in variables))
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    # -- ring structure ------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, Fraction(0)) + c
            if s == 0:
                out.pop(mono, None)
            else:
                out[mono] = s
        return _raw(out)

    __radd__ = __add__

    def __neg__(self):
        return _raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return Polynomial()
        out: dict = {}
        for m1, c1 in self.terms.items():
            d1 = dict(m1)
            for m2, c2 in other.terms.items():
                if m2:
                    d = dict(d1)
                    for v, e in m2:
                        d[v] = d.get(v, 0) + e
                    key = tuple(sorted(d.items()))
                else:
                    key = m1
                s = out.get(key, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        return _raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PolynomialError("exponent must be a nonnegative integer")
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(frozenset(self.terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self.terms)

    # -- calculus / substitution ---------------------------------------------

    def derivative(self, var: str) -> "Polynomial":
        out: dict = {}
        for mono, c in self.terms.items():
            d = dict(mono)
            e = d.get(var, 0)
            if e == 0:
                continue
            if e == 1:
                del d[var]
            else:
                d[var] = e - 1
            key = tuple(sorted(d.items()))
            s = out.get(key, Fraction(0)) + c * e
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return _raw(out)

    def substitute(self, bindings: Mapping[str, "Polynomial | Rat"]) -> "Polynomial":
        """Exact substitution of polynomials (or rationals) for variables."""
        if not bindings:
            return self
        values = {}
        for v, val in bindings.items():
            values[v] = val if isinstance(val, Polynomial) else Polynomial.const(val)
        result = Polynomial()
        # cache powers of each substituted value
        powers: dict = {v: {0: Polynomial.const(1)} for v in values}
        for mono, c in self.terms.items():
            term = Polynomial.const(c)
            rest = {}
            for v, e in mono:
                if v in values:
                    cache = powers[v]
                    if e not in cache:
                        p = cache[max(cache)]
                        for _ in range(max(cache), e):
                            p = p * values[v]
                            cache[max(cache) + 1] = p
                    term = term * cache[e]
                else:
                    rest[v] = e
            if rest:
                term = term * Polynomial.monomial(1, rest)
            result = result + term
        return result

    def evaluate(self, assignment: Mapping[str, complex]) -> complex:
        """Numeric evaluation; every occurring variable must be assigned."""
        total = 0j
        for mono, c in self.terms.items():
            val = complex(c)
            for v, e in mono:
                if v not in assignment:
                    raise PolynomialError(f"unassigned variable {v!r}")
                val *= assignment[v] ** e
            total += val
        return total

    def coefficients_in(self, var: str) -> list:
        """Coefficients [c_0, ..., c_d] of powers of `var`, as Polynomials."""
        d = self.degree_in(var)
        coeffs = [dict() for _ in range(d + 1)]
        for mono, c in self.terms.items():
            rest = dict(mono)
            e = rest.pop(var, 0)
            key = tuple(sorted(rest.items()))
            coeffs[e][key] = coeffs[e].get(key, Fraction(0)) + c
        return [_raw({m: c for m, c in layer.items() if c != 0}) for layer in coeffs]

    # -- monomial order and rendering ----------------------------------------

    def _order_key(self, mono: Monomial, varorder: tuple):
        # graded lexicographic: total degree first, then exponents along the
        # sorted variable list; used for canonical printing only
        d = dict(mono)
        return (sum(e for _, e in mono), tuple(d.get(v, 0) for v in varorder))

    def sorted_terms(self) -> list:
        varorder = self.variables
        return sorted(
            self.terms.items(),
            key=lambda item: self._order_key(item[0], varorder),
            reverse=True,
        )

    def leading_term(self) -> tuple:
        """(monomial, coefficient) maximal in graded lex order."""
        if not self.terms:
            raise PolynomialError("zero polynomial has no leading term")
        return self.sorted_terms()[0]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.sorted_terms():
            factors = [f"{v}^{e}" if e > 1 else v for v, e in mono]
            body = "*".join(factors)
            mag = abs(coeff)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if not parts:
                parts.append(text if coeff > 0 else f"-{text}")
            else:
                parts.append(f"+ {text}" if coeff > 0 else f"- {text}")
        return " ".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"


def _raw(terms: dict) -> Polynomial:
    """Internal: wrap an already-canonical term dict without re-validation."""
    p = Polynomial()
    object.__setattr__(p, "terms", terms)
    return p


_VAR_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[()+\-*/^]))"
)


def parse(text: str) -> Polynomial:
    """Parse the canonical text grammar back into a Polynomial.

    Grammar: sums/differences of products of factors; a factor is a rational
    constant (``3``, ``3/4``), a variable, or a parenthesized expression,
    optionally raised to a nonnegative integer power with ``^``.
    """
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise PolynomialError(f"cannot tokenize {text[pos:]!r}")
            break
        tokens.append(m)
        pos = m.end()
    toks = [(m.lastgroup, m.group(m.lastgroup)) for m in tokens]
    idx = 0

    def peek():
        return toks[idx] if idx < len(toks) else (None, None)

    def take(expect=None):
        nonlocal idx
        kind, val = peek()
        if kind is None:
            raise PolynomialError("unexpected end of input")
        if expect is not None and val != expect:
            raise PolynomialError(f"expected {expect!r}, got {val!r}")
        idx += 1
        return kind, val

    def parse_expr() -> Polynomial:
        sign = 1
        kind, val = peek()
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        result = parse_term() * sign
        while True:
            kind, val = peek()
            if kind == "op" and val in "+-":
                take()
                t = parse_term()
                result = result + (t if val == "+" else -t)
            else:
                return result

    def parse_term() -> Polynomial:
        result = parse_factor()
        while True:
            kind, val = peek()
            if kind == "op" and val == "*":
                take()
                result = result * parse_factor()
            else:
                return result

    def parse_factor() -> Polynomial:
        base = parse_atom()
        kind, val = peek()
        if kind == "op" and val == "^":
            take()
            k, v = take()
            if k != "int":
                raise PolynomialError(f"bad exponent {v!r}")
            return base ** int(v)
        return base

    def parse_atom() -> Polynomial:
        kind, val = take()
        if kind == "int":
            num = int(val)
            k, v = peek()
            if k == "op" and v == "/":
                take()
                k2, v2 = take()
                if k2 != "int":
                    raise PolynomialError("bad rational constant")
                return Polynomial.const(Fraction(num, int(v2)))
            return Polynomial.const(num)
        if kind == "name":
            return Polynomial.var(val)
        if kind == "op" and val == "(":
            inner = parse_expr()
            take(")")
            return inner
        raise PolynomialError(f"unexpected token {val!r}")

    result = parse_expr()
    if idx != len(toks):
        raise PolynomialError(f"trailing input at token {toks[idx][1]!r}")
    return result


def exact_div(a: Polynomial, d: Polynomial) -> Polynomial:
    """Quotient a/d when it is exact; raises PolynomialError otherwise."""
    q = divides(d, a)
    if q is None:
        raise PolynomialError("division is not exact")
    return q


def divides(d: Polynomial, a: Polynomial):
    """Return the quotient q with a == d*q, or None if no such q exists."""
    if d.is_zero():
        raise PolynomialError("zero divisor polynomial")
    if a.is_zero():
        return Polynomial()
    varorder = tuple(sorted(set(a.variables) | set(d.variables)))
    lt_d_mono, lt_d_coeff = _leading(d, varorder)
    quotient: dict = {}
    rem = a
    while rem.terms:
        lt_mono, lt_coeff = _leading(rem, varorder)
        qm = _mono_div(lt_mono, lt_d_mono)
        if qm is None:
            return None
        qc = lt_coeff / lt_d_coeff
        quotient[qm] = quotient.get(qm, Fraction(0)) + qc
        rem = rem - _raw({qm: qc}) * d
    return _raw({m: c for m, c in quotient.items() if c != 0})


def _leading(p: Polynomial, varorder: tuple):
    best = None
    best_key = None
    for mono, coeff in p.terms.items():
        d = dict(mono)
        key = (sum(e for _, e in mono), tuple(d.get(v, 0) for v in varorder))
        if best_key is None or key > best_key:
            best_key = key
            best = (mono, coeff)
    return best


def _mono_div(m1: Monomial, m2: Monomial):
    d = dict(m1)
    for v, e in m2:
        if d.get(v, 0) < e:
            return None
        d[v] -= e
        if d[v] == 0:
            del d[v]
    return tuple(sorted(d.items()))


class PolyMatrix:
    """Rectangular matrix of Polynomials."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable]):
        grid = []
        for row in entries:
            grid.append([e if isinstance(e, Polynomial) else Polynomial.const(e) for e in row])
        if not grid:
            raise PolynomialError("empty matrix")
        width = len(grid[0])
        if any(len(r) != width for r in grid):
            raise PolynomialError("ragged matrix")
        self.entries = grid
        self.rows = len(grid)
        self.cols = width

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def submatrix(self, drop_rows=(), drop_cols=()):
        dr, dc = set(drop_rows), set(drop_cols)
        grid = [
            [self.entries[i][j] for j in range(self.cols) if j not in dc]
            for i in range(self.rows)
            if i not in dr
        ]
        return PolyMatrix(grid)

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise PolynomialError("shape mismatch")
        grid = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = Polynomial()
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            grid.append(row)
        return PolyMatrix(grid)

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"PolyMatrix[{body}]"


def determinant(m: PolyMatrix) -> Polynomial:
    """Exact determinant by fraction-free Bareiss elimination.

    All interior divisions are exact by the Bareiss identity, so the result
    carries no spurious denominators beyond those of the input entries.
    """
    if m.rows != m.cols:
        raise PolynomialError("determinant of non-square matrix")
    n = m.rows
    a = [row[:] for row in m.entries]
    sign = 1
    prev = Polynomial.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Polynomial()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = exact_div(num, prev)
            a[i][k] = Polynomial()
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(a: Polynomial, b: Polynomial, var: str) -> Polynomial:
    """Sylvester resultant with respect to `var`, a's coefficient rows first."""
    da, db = a.degree_in(var), b.degree_in(var)
    if da == 0 or db == 0:
        raise PolynomialError(f"resultant requires positive degree in {var!r}")
    ca = a.coefficients_in(var)  # index = power of var
    cb = b.coefficients_in(var)
    size = da + db
    zero = Polynomial()
    grid = [[zero] * size for _ in range(size)]
    for i in range(db):
        for k in range(da + 1):
            grid[i][i + k] = ca[da - k]
    for i in range(da):
        for k in range(db + 1):
            grid[db + i][i + k] = cb[db - k]
    return determinant(PolyMatrix(grid))
