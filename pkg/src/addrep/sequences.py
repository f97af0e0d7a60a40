"""Finite truncations of integer sequences.

An :class:`IntegerSequence` stands for ``A ∩ [0, bound]``: the elements are
known exactly up to ``bound`` and nothing is assumed beyond it.  Operations
that would need information past the bound raise :class:`OutOfBoundError`
instead of treating the unknown part as empty.
"""

import hashlib
import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from .convolution import convolve_indicators
from .errors import DomainError, OutOfBoundError, SequenceParseError

__all__ = [
    "IntegerSequence",
    "Density",
    "counting_function",
    "complement",
    "sumset",
    "density_in",
    "read_sequence",
    "write_sequence",
    "parse_sequence_text",
]


@dataclass(frozen=True, eq=False)
class IntegerSequence:
    """Sorted, duplicate-free non-negative integers known up to ``bound``."""

    elements: np.ndarray
    bound: int
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __init__(self, elements, bound):
        arr = np.asarray(list(elements) if not isinstance(elements, np.ndarray) else elements,
                         dtype=np.int64).reshape(-1)
        bound = int(bound)
        if bound < 0:
            raise DomainError(f"bound must be non-negative, got {bound}")
        if arr.size:
            if arr[0] < 0:
                raise DomainError("elements must be non-negative")
            if np.any(np.diff(arr) <= 0):
                raise DomainError("elements must be strictly increasing")
            if arr[-1] > bound:
                raise DomainError(f"element {int(arr[-1])} exceeds bound {bound}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "elements", arr)
        object.__setattr__(self, "bound", bound)
        object.__setattr__(self, "_cache", {})

    @classmethod
    def from_indicator(cls, indicator):
        """Build from a boolean vector; its length minus one becomes the bound."""
        chi = np.asarray(indicator, dtype=bool)
        return cls(np.flatnonzero(chi), chi.size - 1)

    @classmethod
    def interval(cls, lo, hi, bound=None):
        return cls(np.arange(lo, hi + 1, dtype=np.int64), hi if bound is None else bound)

    def __len__(self):
        return int(self.elements.size)

    def __iter__(self):
        return (int(e) for e in self.elements)

    def __contains__(self, n):
        n = int(n)
        if n > self.bound:
            raise OutOfBoundError(f"membership of {n} is unknown beyond bound {self.bound}")
        i = np.searchsorted(self.elements, n)
        return bool(i < self.elements.size and self.elements[i] == n)

    def __eq__(self, other):
        if not isinstance(other, IntegerSequence):
            return NotImplemented
        return self.bound == other.bound and np.array_equal(self.elements, other.elements)

    def __hash__(self):
        return hash((self.bound, self.elements.tobytes()))

    def __repr__(self):
        head = ", ".join(str(int(e)) for e in self.elements[:8])
        more = ", ..." if self.elements.size > 8 else ""
        return f"IntegerSequence([{head}{more}], bound={self.bound}, size={len(self)})"

    @property
    def min(self):
        return int(self.elements[0]) if self.elements.size else None

    @property
    def max(self):
        return int(self.elements[-1]) if self.elements.size else None

    @property
    def is_positive(self):
        return self.elements.size == 0 or self.elements[0] >= 1

    @cached_property
    def indicator(self):
        """Characteristic vector of length ``bound + 1`` (built on first use)."""
        chi = np.zeros(self.bound + 1, dtype=bool)
        chi[self.elements] = True
        chi.setflags(write=False)
        return chi

    @cached_property
    def digest(self):
        """SHA-256 over the bound and the element bytes; stable across runs."""
        h = hashlib.sha256()
        h.update(f"bound={self.bound};".encode())
        h.update(self.elements.astype("<i8").tobytes())
        return h.hexdigest()

    def restrict(self, n):
        """``A ∩ [0, n]`` with bound ``n``."""
        if n > self.bound:
            raise OutOfBoundError(f"cannot restrict to {n} beyond bound {self.bound}")
        k = np.searchsorted(self.elements, n, side="right")
        return IntegerSequence(self.elements[:k], n)

    def as_complete(self, bound):
        """Same elements, declared complete up to a larger ``bound``.

        Only meaningful for genuinely finite sets (e.g. a generated Sidon set).
        """
        if bound < self.bound:
            raise DomainError("as_complete can only enlarge the bound")
        return IntegerSequence(self.elements, bound)

    def scaled(self, factor):
        return IntegerSequence(self.elements * factor, self.bound * factor)


@dataclass(frozen=True)
class Density:
    hits: int
    n: int
    ratio: float


def counting_function(A, N):
    """Number of elements of ``A`` in ``[1, N]``; element 0 never counts."""
    if N < 0:
        raise DomainError(f"N must be non-negative, got {N}")
    if N > A.bound:
        raise OutOfBoundError(f"A(N) for N={N} needs bound >= N, have {A.bound}")
    lo = np.searchsorted(A.elements, 1, side="left")
    hi = np.searchsorted(A.elements, N, side="right")
    return int(hi - lo)


def complement(A, N_max):
    """``{n in [1, N_max] : n not in A}`` with bound ``N_max``."""
    if N_max > A.bound:
        raise OutOfBoundError(f"complement up to {N_max} needs bound >= {N_max}, have {A.bound}")
    mask = np.ones(N_max + 1, dtype=bool)
    mask[0] = False
    mask[A.elements[A.elements <= N_max]] = False
    return IntegerSequence(np.flatnonzero(mask), N_max)


def _lowest_possible(S):
    # smallest value an element of S could take, counting unknown ones past the bound
    return S.min if len(S) else S.bound + 1


def sumset(B, C, N_max):
    """``{b + c <= N_max}`` as a sequence.

    The result's bound is ``N_max`` lowered, if necessary, to the largest
    value that cannot involve an element beyond either input's bound.
    """
    exact_to = min(N_max, B.bound + _lowest_possible(C), C.bound + _lowest_possible(B))
    exact_to = max(exact_to, 0)
    if len(B) == 0 or len(C) == 0:
        return IntegerSequence([], exact_to)
    b = B.elements[B.elements <= exact_to]
    c = C.elements[C.elements <= exact_to]
    if b.size * c.size <= 4_000_000:
        sums = np.add.outer(b, c).ravel()
        sums = np.unique(sums[sums <= exact_to])
        return IntegerSequence(sums, exact_to)
    bi = np.zeros(exact_to + 1, dtype=np.int64)
    ci = np.zeros(exact_to + 1, dtype=np.int64)
    bi[b] = 1
    ci[c] = 1
    counts = convolve_indicators(bi, ci, exact_to)
    return IntegerSequence(np.flatnonzero(counts), exact_to)


def density_in(X, N):
    """``|X ∩ [1, N]| / N``."""
    if N <= 0:
        raise DomainError(f"density needs N >= 1, got {N}")
    hits = counting_function(X, N)
    return Density(hits=hits, n=int(N), ratio=hits / N)


def parse_sequence_text(text, path=None):
    """Parse the plain-text format: ``bound=<N>`` header, one integer per line."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_json(text, path)
    bound = None
    values = []
    prev = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.lower().startswith("bound"):
            key, sep, val = line.partition("=")
            if not sep or key.strip().lower() != "bound":
                raise SequenceParseError(f"malformed header {line!r}", lineno, path)
            if bound is not None:
                raise SequenceParseError("duplicate bound header", lineno, path)
            try:
                bound = int(val.strip())
            except ValueError:
                raise SequenceParseError(f"bound is not an integer: {val.strip()!r}", lineno, path) from None
            if bound < 0:
                raise SequenceParseError("bound must be non-negative", lineno, path)
            continue
        if bound is None:
            raise SequenceParseError("element before the required bound=<N> header", lineno, path)
        try:
            v = int(line)
        except ValueError:
            raise SequenceParseError(f"not an integer: {line!r}", lineno, path) from None
        if v < 0:
            raise SequenceParseError(f"negative element {v}", lineno, path)
        if v > bound:
            raise SequenceParseError(f"element {v} exceeds bound {bound}", lineno, path)
        if prev is not None and v <= prev:
            raise SequenceParseError(f"elements must be strictly ascending ({v} after {prev})", lineno, path)
        values.append(v)
        prev = v
    if bound is None:
        raise SequenceParseError("missing bound=<N> header", None, path)
    return IntegerSequence(np.asarray(values, dtype=np.int64), bound)


def _parse_json(text, path):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SequenceParseError(exc.msg, exc.lineno, path) from None
    if not isinstance(doc, dict) or "bound" not in doc or "elements" not in doc:
        raise SequenceParseError('JSON sequence needs "bound" and "elements"', None, path)
    try:
        return IntegerSequence(doc["elements"], doc["bound"])
    except (DomainError, TypeError, ValueError) as exc:
        raise SequenceParseError(str(exc), None, path) from None


def read_sequence(path):
    path = Path(path)
    return parse_sequence_text(path.read_text(), path=str(path))


def write_sequence(A, path, comment=None):
    """Write ``A`` in the text format, or JSON when the suffix is ``.json``."""
    path = Path(path)
    if path.suffix == ".json":
        path.write_text(json.dumps({"bound": A.bound, "elements": [int(e) for e in A.elements]}))
        return
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"bound={A.bound}")
    lines.extend(str(int(e)) for e in A.elements)
    path.write_text("\n".join(lines) + "\n")
