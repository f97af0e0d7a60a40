"""Exact integer convolution of characteristic vectors.

Two kernels are provided and both are exact:

* a word-packed kernel that stores the indicator in a Python integer and
  computes each output coefficient as ``popcount(x & (rev >> shift))``;
* a number-theoretic transform over the prime ``469762049 = 7 * 2**26 + 1``.
  Residues stay below ``2**29`` so every product fits in ``int64``.

Floating FFTs are deliberately not used: the callers compare counts
bit-for-bit.
"""

import numpy as np

from .errors import DomainError

NTT_PRIME = 469762049
NTT_ROOT = 3
NTT_MAX_LOG = 26

# Above this length the O(n^2 / 64) packed kernel loses to the transform.
PACKED_LIMIT = 1 << 16

_root_tables = {}


def _root_table(size, inverse):
    """Powers ``w**j`` for ``j < size // 2`` where ``w`` has order ``size``."""
    key = (size, inverse)
    table = _root_tables.get(key)
    if table is not None:
        return table
    w = pow(NTT_ROOT, (NTT_PRIME - 1) // size, NTT_PRIME)
    if inverse:
        w = pow(w, NTT_PRIME - 2, NTT_PRIME)
    half = max(size // 2, 1)
    table = np.ones(half, dtype=np.int64)
    filled = 1
    step = w
    while filled < half:
        take = min(filled, half - filled)
        table[filled:filled + take] = table[:take] * step % NTT_PRIME
        filled += take
        step = step * step % NTT_PRIME
    table.setflags(write=False)
    _root_tables[key] = table
    return table


def _bit_reverse(size):
    log = size.bit_length() - 1
    idx = np.arange(size, dtype=np.int64)
    rev = np.zeros(size, dtype=np.int64)
    for b in range(log):
        rev |= ((idx >> b) & 1) << (log - 1 - b)
    return rev


def ntt(values, inverse=False):
    """Number-theoretic transform of ``values`` (length a power of two) mod ``NTT_PRIME``."""
    a = np.asarray(values, dtype=np.int64) % NTT_PRIME
    size = a.shape[0]
    if size & (size - 1) or size == 0:
        raise DomainError(f"transform length must be a power of two, got {size}")
    if size.bit_length() - 1 > NTT_MAX_LOG:
        raise DomainError(f"transform length 2**{size.bit_length() - 1} exceeds 2**{NTT_MAX_LOG}")
    a = a[_bit_reverse(size)]
    table = _root_table(size, inverse)
    half = 1
    while half < size:
        tw = table[:: size // (2 * half)][:half]
        blocks = a.reshape(-1, 2 * half)
        u = blocks[:, :half].copy()
        v = blocks[:, half:] * tw % NTT_PRIME
        blocks[:, :half] = u + v
        blocks[:, half:] = u - v
        blocks %= NTT_PRIME
        half *= 2
    if inverse:
        a = a * pow(size, NTT_PRIME - 2, NTT_PRIME) % NTT_PRIME
    return a


def _transform_size(length):
    size = 1
    while size < length:
        size *= 2
    return size


def ntt_convolve(x, y, n):
    """Coefficients ``0..n`` of the product of two non-negative integer vectors.

    Exactness requires every true output coefficient to be below ``NTT_PRIME``;
    this is checked up front from ``max(x) * max(y) * min(len)``.
    """
    x = np.asarray(x, dtype=np.int64)[: n + 1]
    y = np.asarray(y, dtype=np.int64)[: n + 1]
    if x.size == 0 or y.size == 0:
        return np.zeros(n + 1, dtype=np.int64)
    if x.min() < 0 or y.min() < 0:
        raise DomainError("ntt_convolve expects non-negative inputs")
    worst = int(x.max()) * int(y.max()) * min(x.size, y.size)
    if worst >= NTT_PRIME:
        raise DomainError("coefficients could exceed the transform modulus")
    # full linear length avoids wrap-around into the low coefficients
    size = _transform_size(x.size + y.size - 1)
    fx = np.zeros(size, dtype=np.int64)
    fx[: x.size] = x
    fx = ntt(fx)
    if y is x or np.array_equal(x, y):
        prod = fx * fx % NTT_PRIME
    else:
        fy = np.zeros(size, dtype=np.int64)
        fy[: y.size] = y
        prod = fx * ntt(fy) % NTT_PRIME
    out = ntt(prod, inverse=True)[: n + 1]
    if out.size < n + 1:
        out = np.concatenate([out, np.zeros(n + 1 - out.size, dtype=np.int64)])
    return out


def _pack(bits):
    packed = np.packbits(np.asarray(bits, dtype=np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def packed_self_counts(indicator, n):
    """Ordered-pair counts ``sum_i chi(i) chi(m - i)`` for ``m = 0..n`` via shift-and-popcount."""
    chi = np.asarray(indicator, dtype=bool)[: n + 1]
    if chi.size < n + 1:
        chi = np.concatenate([chi, np.zeros(n + 1 - chi.size, dtype=bool)])
    x = _pack(chi)
    rev = _pack(chi[::-1])
    out = np.zeros(n + 1, dtype=np.int64)
    if x == 0:
        return out
    for m in range(n + 1):
        # bit i of (rev >> (n - m)) is chi(m - i)
        out[m] = (x & (rev >> (n - m))).bit_count()
    return out


def self_convolve_indicator(indicator, n):
    """Exact ``R1``-style counts of a 0/1 vector, choosing the kernel by length."""
    if n + 1 <= PACKED_LIMIT:
        return packed_self_counts(indicator, n)
    chi = np.asarray(indicator, dtype=np.int64)[: n + 1]
    return ntt_convolve(chi, chi, n)


def convolve_indicators(a, b, n):
    """Exact ordered-pair counts ``sum_i a(i) b(m - i)`` for ``m = 0..n``."""
    a = np.asarray(a, dtype=np.int64)[: n + 1]
    b = np.asarray(b, dtype=np.int64)[: n + 1]
    return ntt_convolve(a, b, n)
