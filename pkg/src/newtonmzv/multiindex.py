"""Multi-indices (compositions) and the exact algebra built on them.

A multi-index is stored as a plain tuple of positive integers; the empty
tuple is allowed and acts as the identity for concatenation and for the
harmonic (stuffle) product.  Formal rational linear combinations of
multi-indices are :class:`IndexCombo` instances.

Examples::

    >>> dual((2, 2))
    (1, 2, 1)
    >>> format_combo(refine_sum((1, 3)))
    '(1,1,1,1) + (1,1,2) + (1,2,1) + (1,3)'
    >>> format_combo(stuffle((1,), (1,)))
    '2*(1,1) + (2)'
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Iterator, Mapping, Union

MultiIndex = tuple  # tuple[int, ...]; kept as an alias for readability

Rational = Union[int, Fraction]


class MultiIndexError(ValueError):
    """Raised for malformed multi-indices or operations outside their domain."""


def as_multi_index(parts: Iterable[int]) -> tuple[int, ...]:
    """Validate ``parts`` and return them as a tuple of positive ints."""
    out = tuple(parts)
    for p in out:
        if isinstance(p, bool) or not isinstance(p, int):
            raise MultiIndexError(f"multi-index parts must be integers, got {p!r}")
        if p < 1:
            raise MultiIndexError(f"multi-index parts must be >= 1, got {out}")
    return out


def _nonempty(alpha: Iterable[int], what: str) -> tuple[int, ...]:
    alpha = as_multi_index(alpha)
    if not alpha:
        raise MultiIndexError(f"{what} is undefined for the empty multi-index")
    return alpha


def weight(alpha: Iterable[int]) -> int:
    return sum(as_multi_index(alpha))


def length(alpha: Iterable[int]) -> int:
    return len(as_multi_index(alpha))


def grlex_key(alpha: tuple[int, ...]) -> tuple:
    """Sort key: weight first, then lexicographic on the parts."""
    return (sum(alpha), alpha)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def compositions(m: int) -> Iterator[tuple[int, ...]]:
    """All multi-indices of weight ``m`` in lexicographic order."""
    if m < 0:
        raise MultiIndexError("weight must be non-negative")
    if m == 0:
        yield ()
        return
    for first in range(1, m + 1):
        for rest in compositions(m - first):
            yield (first,) + rest


def multi_indices(max_weight: int, min_weight: int = 1) -> list[tuple[int, ...]]:
    """All multi-indices with ``min_weight <= weight <= max_weight``, graded-lex."""
    out = []
    for m in range(max(min_weight, 0), max_weight + 1):
        out.extend(sorted(compositions(m)))
    return out


# ---------------------------------------------------------------------------
# subset encoding and the involutions
# ---------------------------------------------------------------------------

def encode_subset(alpha: Iterable[int]) -> frozenset[int]:
    """Partial sums ``{a1, a1+a2, ..., a1+...+a_{s-1}}`` of a nonempty index."""
    alpha = _nonempty(alpha, "encode_subset")
    out, acc = set(), 0
    for p in alpha[:-1]:
        acc += p
        out.add(acc)
    return frozenset(out)


def decode_subset(m: int, subset: Iterable[int]) -> tuple[int, ...]:
    """Inverse of :func:`encode_subset` for multi-indices of weight ``m``."""
    if m < 1:
        raise MultiIndexError("weight must be >= 1")
    cuts = sorted(set(subset))
    for c in cuts:
        if isinstance(c, bool) or not isinstance(c, int) or not 1 <= c <= m - 1:
            raise MultiIndexError(f"subset element {c!r} outside {{1,...,{m - 1}}}")
    parts, prev = [], 0
    for c in cuts + [m]:
        parts.append(c - prev)
        prev = c
    return tuple(parts)


def dual(alpha: Iterable[int]) -> tuple[int, ...]:
    """The dual index: complement the partial-sum set inside {1..m-1}."""
    alpha = _nonempty(alpha, "dual")
    m = sum(alpha)
    cuts = encode_subset(alpha)
    return decode_subset(m, (i for i in range(1, m) if i not in cuts))


def reverse(alpha: Iterable[int]) -> tuple[int, ...]:
    return as_multi_index(alpha)[::-1]


def backprime(alpha: Iterable[int]) -> tuple[int, ...]:
    """Dual followed by reversal (the two orders agree)."""
    return reverse(dual(alpha))


def drop_left(alpha: Iterable[int]) -> tuple[int, ...]:
    """Decrement the first part, removing it when it equals 1."""
    alpha = _nonempty(alpha, "drop_left")
    if alpha == (1,):
        raise MultiIndexError("drop_left is undefined for (1)")
    if alpha[0] >= 2:
        return (alpha[0] - 1,) + alpha[1:]
    return alpha[1:]


def drop_right(alpha: Iterable[int]) -> tuple[int, ...]:
    """Decrement the last part, removing it when it equals 1."""
    alpha = _nonempty(alpha, "drop_right")
    if alpha == (1,):
        raise MultiIndexError("drop_right is undefined for (1)")
    if alpha[-1] >= 2:
        return alpha[:-1] + (alpha[-1] - 1,)
    return alpha[:-1]


def raise_first(alpha: Iterable[int]) -> tuple[int, ...]:
    alpha = _nonempty(alpha, "raise_first")
    return (alpha[0] + 1,) + alpha[1:]


def is_admissible(alpha: Iterable[int]) -> bool:
    alpha = as_multi_index(alpha)
    return bool(alpha) and alpha[0] >= 2


def concat(alpha: Iterable[int], beta: Iterable[int]) -> tuple[int, ...]:
    return as_multi_index(alpha) + as_multi_index(beta)


# ---------------------------------------------------------------------------
# linear combinations
# ---------------------------------------------------------------------------

class IndexCombo(Mapping):
    """Finite rational linear combination of multi-indices.

    Behaves as a read-only mapping ``multi-index -> Fraction`` with no zero
    coefficients stored.  Iteration follows graded-lexicographic order.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping, Iterable] = ()):
        acc: dict[tuple[int, ...], Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, coeff in items:
            key = as_multi_index(key)
            acc[key] = acc.get(key, Fraction(0)) + Fraction(coeff)
        self._terms = {k: acc[k] for k in sorted(acc, key=grlex_key) if acc[k] != 0}
        self._hash = None

    @classmethod
    def basis(cls, alpha: Iterable[int]) -> "IndexCombo":
        return cls({as_multi_index(alpha): 1})

    @classmethod
    def coerce(cls, value) -> "IndexCombo":
        if isinstance(value, IndexCombo):
            return value
        return cls.basis(value)

    def __getitem__(self, key) -> Fraction:
        return self._terms[tuple(key)]

    def __iter__(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, IndexCombo):
            return self._terms == other._terms
        if isinstance(other, Mapping):
            return self == IndexCombo(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other) -> "IndexCombo":
        if isinstance(other, int) and not isinstance(other, bool) and other == 0:
            return self  # lets builtin sum() start from 0
        other = IndexCombo.coerce(other)
        return IndexCombo(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "IndexCombo":
        return IndexCombo({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "IndexCombo":
        return self + (-IndexCombo.coerce(other))

    def __rsub__(self, other) -> "IndexCombo":
        return IndexCombo.coerce(other) - self

    def __mul__(self, scalar) -> "IndexCombo":
        if isinstance(scalar, IndexCombo):
            return NotImplemented
        scalar = Fraction(scalar)
        return IndexCombo({k: c * scalar for k, c in self._terms.items()})

    __rmul__ = __mul__

    def map(self, f: Callable[[tuple[int, ...]], "IndexCombo | tuple"]) -> "IndexCombo":
        """Linear extension of ``f`` (basis -> index or combo)."""
        out: list = []
        for key, coeff in self._terms.items():
            for k2, c2 in IndexCombo.coerce(f(key)).items():
                out.append((k2, coeff * c2))
        return IndexCombo(out)

    def __repr__(self) -> str:
        return f"IndexCombo({format_combo(self)!r})"

    def __str__(self) -> str:
        return format_combo(self)


ComboLike = Union[IndexCombo, tuple]


def linear(f: Callable) -> Callable[[ComboLike], IndexCombo]:
    """Extend a basis map to combos (accepts a bare multi-index too)."""
    def wrapped(v: ComboLike) -> IndexCombo:
        return IndexCombo.coerce(v).map(f)
    wrapped.__name__ = f"linear_{getattr(f, '__name__', 'map')}"
    return wrapped


# ---------------------------------------------------------------------------
# refinement maps u and d
# ---------------------------------------------------------------------------

def refinements(alpha: Iterable[int]) -> Iterator[tuple[int, ...]]:
    """Every beta obtained by splitting each part of alpha into a composition."""
    alpha = _nonempty(alpha, "refinements")
    for pieces in product(*(list(compositions(p)) for p in alpha)):
        yield tuple(x for piece in pieces for x in piece)


def coarsenings(alpha: Iterable[int]) -> Iterator[tuple[tuple[int, ...], int]]:
    """Pairs ``(beta, l(alpha) - l(beta))`` over all merges of adjacent parts."""
    alpha = _nonempty(alpha, "coarsenings")
    gaps = len(alpha) - 1
    for mask in product((False, True), repeat=gaps):
        parts, merged = [alpha[0]], 0
        for keep_merging, p in zip(mask, alpha[1:]):
            if keep_merging:
                parts[-1] += p
                merged += 1
            else:
                parts.append(p)
        yield tuple(parts), merged


def refine_sum(alpha: Iterable[int]) -> IndexCombo:
    """The map u: sum of all refinements of alpha."""
    return IndexCombo((beta, 1) for beta in refinements(alpha))


def coarsen_sum(alpha: Iterable[int]) -> IndexCombo:
    """The map d: sum of all coarsenings of alpha."""
    return IndexCombo((beta, 1) for beta, _ in coarsenings(alpha))


def coarsen_inverse(alpha: Iterable[int]) -> IndexCombo:
    """Inverse of d on a basis element (signed sum over coarsenings)."""
    return IndexCombo((beta, -1 if merged % 2 else 1) for beta, merged in coarsenings(alpha))


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _stuffle_basis(a: tuple[int, ...], b: tuple[int, ...]) -> tuple:
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    x, u = a[0], a[1:]
    y, v = b[0], b[1:]
    terms: dict[tuple[int, ...], int] = {}
    for head, pairs in ((x, _stuffle_basis(u, b)),
                        (y, _stuffle_basis(a, v)),
                        (x + y, _stuffle_basis(u, v))):
        for key, c in pairs:
            k = (head,) + key
            terms[k] = terms.get(k, 0) + c
    return tuple(terms.items())


def stuffle(a: ComboLike, b: ComboLike) -> IndexCombo:
    """Harmonic (quasi-shuffle) product, bilinear, empty index as unit."""
    a = IndexCombo.coerce(a)
    b = IndexCombo.coerce(b)
    out = []
    for ka, ca in a.items():
        for kb, cb in b.items():
            for k, c in _stuffle_basis(ka, kb):
                out.append((k, ca * cb * c))
    return IndexCombo(out)


def circledast(a: ComboLike, b: ComboLike) -> IndexCombo:
    """``(a1 + b1)`` prepended to the stuffle of the tails (first parts removed).

    Bilinear; basis arguments must be nonempty.  Every output term is
    admissible since ``a1 + b1 >= 2``.
    """
    a = IndexCombo.coerce(a)
    b = IndexCombo.coerce(b)
    out = []
    for ka, ca in a.items():
        _nonempty(ka, "circledast")
        for kb, cb in b.items():
            _nonempty(kb, "circledast")
            head = (ka[0] + kb[0],)
            for k, c in _stuffle_basis(ka[1:], kb[1:]):
                out.append((head + k, ca * cb * c))
    return IndexCombo(out)


dual_linear = linear(dual)
reverse_linear = linear(reverse)
raise_first_linear = linear(raise_first)
refine_linear = linear(refine_sum)
coarsen_linear = linear(coarsen_sum)


# ---------------------------------------------------------------------------
# text syntax
# ---------------------------------------------------------------------------

_MI_RE = re.compile(r"^\(\s*(\d+\s*(?:,\s*\d+\s*)*)?\)$")


def parse_multi_index(text: str) -> tuple[int, ...]:
    """Parse ``"(1,2,1)"``; ``"()"`` is the empty index.  Parens may be omitted."""
    s = text.strip()
    if not s.startswith("("):
        s = f"({s})"
    m = _MI_RE.match(s)
    if not m:
        raise MultiIndexError(f"malformed multi-index {text!r}")
    body = m.group(1)
    if body is None:
        return ()
    return as_multi_index(int(p) for p in body.split(","))


def format_multi_index(alpha: Iterable[int]) -> str:
    return "(" + ",".join(str(p) for p in alpha) + ")"


def format_rational(q: Rational) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_combo(v: ComboLike) -> str:
    """Render as ``c1*(...) + c2*(...)``; unit coefficients are left implicit."""
    v = IndexCombo.coerce(v)
    if not v:
        return "0"
    chunks = []
    for i, (key, c) in enumerate(v.items()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = format_multi_index(key) if mag == 1 else f"{format_rational(mag)}*{format_multi_index(key)}"
        if i == 0:
            chunks.append(("-" if sign == "-" else "") + body)
        else:
            chunks.append(f" {sign} {body}")
    return "".join(chunks)


_TERM_RE = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?(\([^)]*\))\s*")


def parse_combo(text: str) -> IndexCombo:
    """Inverse of :func:`format_combo`; also accepts a bare multi-index."""
    s = text.strip()
    if s == "0":
        return IndexCombo()
    pos, out = 0, []
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos or (out and m.group(1) is None):
            raise MultiIndexError(f"malformed combination {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        out.append((parse_multi_index(m.group(3)), sign * coeff))
        pos = m.end()
    if not out:
        raise MultiIndexError(f"malformed combination {text!r}")
    return IndexCombo(out)
