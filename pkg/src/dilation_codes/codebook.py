"""Signal space T_{N,k} and the codes C_{N,k} and D_{N,k}.

A signal is a k-tuple of positive inter-event intervals with sum <= N.
The absolute event times are its prefix sums, so ``T_{N,k}`` is in bijection
with the k-subsets of {1..N} and ``|T_{N,k}| = C(N, k)``.

* ``T`` is the whole space.
* ``C`` keeps only primitive tuples, gcd(t) = 1.
* ``D`` keeps tuples whose gcd is a term of the d_n sequence for beta. An
  unbounded beta makes D the same set as C.

All orders are lexicographic on the interval tuple. Counting uses
Moebius inversion over gcd classes, so no enumeration is needed; rank and
unrank use the same counts restricted to a fixed prefix.

Enumeration is lazy. Materializing it is reasonable up to about 1e7 tuples.
"""

from __future__ import annotations

import bisect
import csv
import io
import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Literal, Sequence

from .errors import InvalidInput
from .numtheory import gcd_tuple, mobius_sieve, squarefree_divisors
from .sequences import UNBOUNDED, DilationBound, scale_sequence

SignalTuple = tuple[int, ...]
CodeFamily = Literal["T", "C", "D"]

__all__ = [
    "SignalTuple",
    "CodeSpec",
    "enumerate_code",
    "brute_force",
    "count",
    "count_primitive",
    "contains",
    "rank",
    "unrank",
    "write_csv",
    "read_csv",
]


@dataclass(frozen=True)
class CodeSpec:
    """A code family with its parameters.

    ``bound`` matters only for family D. Passing ``k > N`` is allowed and
    describes an empty space.
    """

    N: int
    k: int
    family: CodeFamily = "C"
    bound: DilationBound = field(default=UNBOUNDED)

    def __post_init__(self):
        if self.family not in ("T", "C", "D"):
            raise InvalidInput(f"family must be T, C or D, got {self.family!r}")
        if int(self.N) != self.N or self.N < 1:
            raise InvalidInput(f"N must be a positive integer, got {self.N!r}")
        if int(self.k) != self.k or self.k < 2:
            raise InvalidInput(f"k must be an integer >= 2, got {self.k!r}")
        object.__setattr__(self, "bound", DilationBound.parse(self.bound))

    @property
    def effective_family(self) -> CodeFamily:
        if self.family == "D" and self.bound.unbounded:
            return "C"
        return self.family

    def admissible_gcds(self) -> tuple[int, ...] | None:
        """Sorted gcd values allowed in the code, or None when all are."""
        return self._admissible

    @cached_property
    def _admissible(self) -> tuple[int, ...] | None:
        fam = self.effective_family
        if fam == "T":
            return None
        if fam == "C":
            return (1,)
        return scale_sequence(self.bound, "dilation-d").up_to(self.N)

    def label(self) -> str:
        if self.family == "D":
            return f"D[N={self.N},k={self.k},beta={self.bound}]"
        return f"{self.family}[N={self.N},k={self.k}]"


def _check_tuple(spec: CodeSpec, t: Sequence[int]) -> SignalTuple:
    t = tuple(int(x) for x in t)
    if len(t) != spec.k:
        raise InvalidInput(f"expected a {spec.k}-tuple, got {t}")
    return t


def _raw_tuples(N: int, k: int) -> Iterator[SignalTuple]:
    # lexicographic k-tuples of positive ints with sum <= N
    if k == 1:
        for v in range(1, N + 1):
            yield (v,)
        return
    for v in range(1, N - k + 2):
        for rest in _raw_tuples(N - v, k - 1):
            yield (v,) + rest


def enumerate_code(spec: CodeSpec) -> Iterator[SignalTuple]:
    """Yield the members of ``spec`` in lexicographic order."""
    if spec.k > spec.N:
        return
    adm = spec.admissible_gcds()
    if adm is None:
        yield from _raw_tuples(spec.N, spec.k)
        return
    adm = frozenset(adm)
    for t in _raw_tuples(spec.N, spec.k):
        if math.gcd(*t) in adm:
            yield t


def brute_force(spec: CodeSpec) -> list[SignalTuple]:
    """Reference enumeration via itertools.product, independent of the counting code."""
    adm = spec.admissible_gcds()
    out = []
    for t in itertools.product(range(1, spec.N + 1), repeat=spec.k):
        if sum(t) <= spec.N and (adm is None or math.gcd(*t) in adm):
            out.append(t)
    return out


@lru_cache(maxsize=1 << 16)
def count_primitive(M: int, m: int) -> int:
    """Number of m-tuples of positive ints with sum <= M and gcd 1 (|C_{M,m}|)."""
    if m < 1 or M < m:
        return 0
    if m == 1:
        return 1
    mu = mobius_sieve(_sieve_size(M))
    total = 0
    for d, md in mu.nonzero(M // m):
        total += md * math.comb(M // d, m)
    return total


def _sieve_size(M: int) -> int:
    # round up so that sweeps over N share one sieve
    size = 1024
    while size < M:
        size *= 4
    return size


def _completions(g: int, R: int, m: int, adm: tuple[int, ...] | None) -> int:
    """Count s in N^m with sum(s) <= R and gcd(g, gcd(s)) admissible.

    g = 0 stands for an empty prefix. m = 0 means the tuple is complete.
    """
    if m == 0:
        return 1 if R >= 0 and (adm is None or g in adm) else 0
    if R < m:
        return 0
    if adm is None:
        return math.comb(R, m)
    if g == 0:
        return sum(count_primitive(R // h, m) for h in adm if h * m <= R)
    total = 0
    for h in adm:
        if h > g:
            break
        if g % h:
            continue
        for e, me in squarefree_divisors(g // h):
            total += me * math.comb(R // (h * e), m)
    return total


def _last_slot_count(g: int, x: int, adm: tuple[int, ...] | None) -> int:
    """Number of v in [1, x] with gcd(g, v) admissible (g >= 1)."""
    if x <= 0:
        return 0
    if adm is None:
        return x
    total = 0
    for h in adm:
        if h > g:
            break
        if g % h:
            continue
        for e, me in squarefree_divisors(g // h):
            total += me * (x // (h * e))
    return total


def count(spec: CodeSpec) -> int:
    """Exact size of the code, without enumerating it."""
    if spec.k > spec.N:
        return 0
    return _completions(0, spec.N, spec.k, spec.admissible_gcds())


def contains(spec: CodeSpec, t: Sequence[int]) -> bool:
    t = _check_tuple(spec, t)
    if min(t) < 1 or sum(t) > spec.N:
        return False
    adm = spec.admissible_gcds()
    return adm is None or gcd_tuple(t) in adm


@lru_cache(maxsize=64)
def _first_slot_cumulative(spec: CodeSpec) -> tuple[int, ...]:
    # cum[v] = number of members whose first interval is <= v
    adm = spec.admissible_gcds()
    cum = [0]
    for v in range(1, spec.N - spec.k + 2):
        cum.append(cum[-1] + _completions(v, spec.N - v, spec.k - 1, adm))
    return tuple(cum)


def rank(spec: CodeSpec, t: Sequence[int]) -> int:
    """Position of ``t`` in the lexicographic enumeration of ``spec``."""
    t = _check_tuple(spec, t)
    if not contains(spec, t):
        raise InvalidInput(f"{t} is not a member of {spec.label()}")
    adm = spec.admissible_gcds()
    k = spec.k
    r = _first_slot_cumulative(spec)[t[0] - 1]
    g, R = t[0], spec.N - t[0]
    for pos in range(1, k - 1):
        m = k - pos - 1
        for v in range(1, t[pos]):
            r += _completions(math.gcd(g, v), R - v, m, adm)
        g, R = math.gcd(g, t[pos]), R - t[pos]
    r += _last_slot_count(g, t[-1] - 1, adm)
    return r


def unrank(spec: CodeSpec, index: int) -> SignalTuple:
    """Inverse of :func:`rank`."""
    total = count(spec)
    if not 0 <= index < total:
        raise IndexError(f"index {index} outside [0, {total}) for {spec.label()}")
    adm = spec.admissible_gcds()
    k = spec.k
    cum = _first_slot_cumulative(spec)
    v = bisect.bisect_right(cum, index)
    index -= cum[v - 1]
    t = [v]
    g, R = v, spec.N - v
    for pos in range(1, k - 1):
        m = k - pos - 1
        v = 1
        while True:
            c = _completions(math.gcd(g, v), R - v, m, adm)
            if index < c:
                break
            index -= c
            v += 1
        t.append(v)
        g, R = math.gcd(g, v), R - v
    # smallest x in [1, R] with index + 1 admissible values <= x
    lo, hi = 1, R
    while lo < hi:
        mid = (lo + hi) // 2
        if _last_slot_count(g, mid, adm) > index:
            hi = mid
        else:
            lo = mid + 1
    t.append(lo)
    return tuple(t)


def write_csv(tuples: Iterable[Sequence[int]], k: int, out=None) -> str | None:
    """Write codewords as CSV with header t1,...,tk.

    Returns the text when ``out`` is None, otherwise writes to the open file.
    """
    buf = io.StringIO() if out is None else out
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"t{i}" for i in range(1, k + 1)])
    for t in tuples:
        w.writerow(t)
    return buf.getvalue() if out is None else None


def read_csv(source) -> list[SignalTuple]:
    """Parse CSV produced by :func:`write_csv` (path or open file)."""
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source, newline="") as fh:
            return read_csv(fh)
    rows = csv.reader(source)
    header = next(rows)
    if not header or any(h != f"t{i}" for i, h in enumerate(header, 1)):
        raise InvalidInput(f"unexpected codebook header {header}")
    return [tuple(int(x) for x in row) for row in rows if row]
