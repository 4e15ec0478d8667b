"""Integer partitions as multiplicity vectors (pi_1, ..., pi_l) with sum j * pi_j = l."""
from math import comb, factorial, prod
from typing import Iterator, List, Optional, Tuple


def multiplicity_partitions(l: int, parts: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """All partitions of l in lexicographic order of the multiplicity vector.

    With ``parts`` given only partitions with exactly that many parts are yielded.
    """
    if l == 0:
        if parts in (None, 0):
            yield ()
        return

    def rec(j: int, remaining: int) -> Iterator[List[int]]:
        if j > l:
            if remaining == 0:
                yield []
            return
        for count in range(remaining // j + 1):
            for rest in rec(j + 1, remaining - count * j):
                yield [count] + rest

    for vector in sorted(tuple(v) for v in rec(1, l)):
        if parts is None or sum(vector) == parts:
            yield vector


def size(pi: Tuple[int, ...]) -> int:
    return sum(pi)


def factorial_product(pi: Tuple[int, ...]) -> int:
    return prod(factorial(c) for c in pi)


def binomial_identity(l_max: int = 8) -> List[dict]:
    """sum_{pi |- l, |pi| = k} k!/prod pi_j! * (l/k) against C(l, k)."""
    rows = []
    for l in range(1, l_max + 1):
        for k in range(1, l + 1):
            total = sum(factorial(k) // factorial_product(pi) for pi in multiplicity_partitions(l, k))
            lhs = total * l
            rows.append({'l': l, 'k': k, 'lhs_times_k': lhs, 'rhs_times_k': comb(l, k) * k,
                         'ok': lhs == comb(l, k) * k})
    return rows
