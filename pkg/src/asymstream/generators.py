"""Hard-instance generators with analytically known ED / LCS / LIS / LNS
bounds, plus planted-edit pairs for accuracy suites.

Every generator is a deterministic function of its inputs; the `random_*`
helpers draw those inputs from a seeded `random.Random`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .model import Instance

PAD = 0  # the extra symbol `a` in the DIS reductions


@dataclass(frozen=True)
class Claim:
    quantity: str  # "ed", "lcs", "lis" or "lns"
    relation: str  # "==", ">=" or "<="
    bound: int
    statement: str

    def holds(self, value: int) -> bool:
        if self.relation == "==":
            return value == self.bound
        if self.relation == ">=":
            return value >= self.bound
        return value <= self.bound

    def to_dict(self) -> dict:
        return {"quantity": self.quantity, "relation": self.relation, "bound": self.bound, "statement": self.statement}


@dataclass(frozen=True)
class Generated:
    kind: str
    instance: Instance
    claim: Claim
    params: dict = field(default_factory=dict)

    def sidecar(self) -> dict:
        return {"kind": self.kind, "claim": self.claim.to_dict(), "params": self.params}


# --- set disjointness -> edit distance ---------------------------------------------


@dataclass(frozen=True)
class DisInput:
    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    def __post_init__(self):
        if len(self.alpha) != len(self.beta):
            raise ValueError("alpha and beta must have equal length")
        if len(self.alpha) < 1:
            raise ValueError("need at least one bit")
        if any(b not in (0, 1) for b in self.alpha + self.beta):
            raise ValueError("alpha and beta must be bit vectors")

    @property
    def m(self) -> int:
        return len(self.alpha)

    @property
    def alpha_balanced(self) -> list[int]:
        return [v for a in self.alpha for v in (a, 1 - a)]

    @property
    def beta_balanced(self) -> list[int]:
        return [v for b in self.beta for v in (1 - b, b)]

    @property
    def disjoint(self) -> int:
        return int(not any(a and b for a, b in zip(self.alpha, self.beta)))


def gen_ed_dis(dis: DisInput) -> tuple[list[int], list[int], list[int]]:
    """(x1, x2, y) over [6m] plus the pad symbol 0, with y = 1..6m."""
    m = dis.m
    x1, x2 = [], []
    for j, (a, b) in enumerate(zip(dis.alpha_balanced, dis.beta_balanced), start=1):
        x1 += [3 * j - 2, 3 * j - 1 if a else PAD]
        x2 += [3 * j - 1 if b else PAD, 3 * j]
    return x1, x2, list(range(1, 6 * m + 1))


def ed_dis_instance(dis: DisInput) -> Generated:
    x1, x2, y = gen_ed_dis(dis)
    m = dis.m
    if dis.disjoint:
        claim = Claim("ed", ">=", 7 * m - 2, "disjoint inputs: ED >= 7m-2")
    else:
        claim = Claim("ed", "<=", 7 * m - 3, "intersecting inputs: ED <= 7m-3")
    return Generated("ed-dis", Instance(6 * m + 1, tuple(x1 + x2), tuple(y)), claim, {"alpha": list(dis.alpha), "beta": list(dis.beta)})


def gen_ed_dis_equal(dis: DisInput) -> tuple[list[int], list[int]]:
    """Equal-length variant: both strings have length 18m."""
    x1, x2, y = gen_ed_dis(dis)
    m = dis.m
    z = list(range(6 * m + 1, 16 * m + 1))
    return x1 + x2 + z, y + z + [PAD] * (2 * m)


def ed_dis_equal_instance(dis: DisInput) -> Generated:
    x, y = gen_ed_dis_equal(dis)
    m = dis.m
    if dis.disjoint:
        claim = Claim("ed", ">=", 9 * m - 2, "disjoint inputs: ED >= 9m-2")
    else:
        claim = Claim("ed", "<=", 9 * m - 3, "intersecting inputs: ED <= 9m-3")
    return Generated("ed-dis-eq", Instance(16 * m + 1, tuple(x), tuple(y)), claim, {"alpha": list(dis.alpha), "beta": list(dis.beta)})


def random_dis(m: int, rng: random.Random, disjoint: bool | None = None) -> DisInput:
    while True:
        alpha = tuple(rng.randint(0, 1) for _ in range(m))
        beta = tuple(rng.randint(0, 1) for _ in range(m))
        dis = DisInput(alpha, beta)
        if disjoint is None or dis.disjoint == int(disjoint):
            return dis


# --- LCS fooling strings --------------------------------------------------------------

A, B = 0, 1


@dataclass(frozen=True)
class FoolingBlocks:
    n: int
    sizes: tuple[int, ...]

    def __post_init__(self):
        n = self.n
        if n < 120 or n % 60:
            raise ValueError("n must be a multiple of 60 and at least 120")
        if len(self.sizes) != n // 30 - 1:
            raise ValueError(f"need {n // 30 - 1} block sizes for n = {n}")
        if sum(self.sizes) != n // 6 + 5:
            raise ValueError(f"block sizes must sum to {n // 6 + 5}")
        if any(not 1 <= s <= 9 for s in self.sizes):
            raise ValueError("block sizes must lie in 1..9")


def gen_lcs_fooling(blocks: FoolingBlocks) -> tuple[list[int], list[int], list[int]]:
    """(x, f(x), y): x alternates b^10 with a-blocks, f(x) drops the leading
    b^10, y = a^(n/3) b^(n/3) a^(n/3); a = 0, b = 1."""
    x = [B] * 10
    for s in blocks.sizes:
        x += [A] * s + [B] * 10
    third = blocks.n // 3
    return x, x[10:], [A] * third + [B] * third + [A] * third


def lcs_fooling_instance(blocks: FoolingBlocks, other: FoolingBlocks | None = None) -> Generated:
    """x f(x) against y, or x f(x') for a second block vector x'."""
    x, fx, y = gen_lcs_fooling(blocks)
    n = blocks.n
    params = {"n": n, "s": list(blocks.sizes)}
    if other is None:
        claim = Claim("lcs", "==", n // 2 + 5, "LCS(x f(x), y) = n/2+5")
    else:
        fx = gen_lcs_fooling(other)[1]
        params["s_other"] = list(other.sizes)
        claim = Claim("lcs", ">=", 0, "cross pair; the larger of the two cross values is at least n/2+6")
    return Generated("lcs-fool", Instance(2, tuple(x + fx), tuple(y)), claim, params)


def random_blocks(n: int, rng: random.Random) -> FoolingBlocks:
    count = n // 30 - 1
    sizes = [1] * count
    left = n // 6 + 5 - count
    while left:
        i = rng.randrange(count)
        if sizes[i] < 9:
            sizes[i] += 1
            left -= 1
    return FoolingBlocks(n, tuple(sizes))


# --- permutations with an LIS gap -------------------------------------------------------


def pair_bits(z1: Sequence[int], z2: Sequence[int]) -> list[int]:
    """Full z of length 4|z1| with z1, z2 at the even slots of each half and
    complements at the odd slots."""
    if len(z1) != len(z2):
        raise ValueError("z1 and z2 must have equal length")
    z = []
    for half in (z1, z2):
        for bit in half:
            z += [1 - bit, bit]
    return z


def perm_blocks(half: int) -> list[tuple[int, int]]:
    """The pair of values used by each of the `half` blocks (n' = half)."""
    out = []
    mid = half // 2
    for i in range(1, half + 1):
        if i <= mid:
            k = i
            out.append((4 * k - 1, 4 * k) if i % 2 else (4 * k - 3, 4 * k - 2))
        else:
            k = i - mid
            out.append((4 * k - 3, 4 * k - 2) if i % 2 else (4 * k - 1, 4 * k))
    return out


def gen_perm_dis(z: Sequence[int], half: int) -> list[int]:
    """Permutation of 1..2*half; block i ascends when z_i = 1, else descends."""
    if half < 8 or half % 4:
        raise ValueError("n' must be a multiple of 4 and at least 8")
    if len(z) != half or any(b not in (0, 1) for b in z):
        raise ValueError(f"z must be a bit vector of length {half}")
    if any(z[2 * i + 1] != 1 - z[2 * i] for i in range(half // 2)):
        raise ValueError("z must satisfy z_2i = 1 - z_2i-1")
    x = []
    for bit, (lo, hi) in zip(z, perm_blocks(half)):
        x += [lo, hi] if bit else [hi, lo]
    return x


def perm_dis_instance(z1: Sequence[int], z2: Sequence[int]) -> Generated:
    half = 4 * len(z1)
    x = gen_perm_dis(pair_bits(z1, z2), half)
    n = 2 * half
    # measured with patience sorting: every block pair gives 3, and one
    # shared ascending pair lifts the total to 3n'/4 + 2
    if any(a and b for a, b in zip(z1, z2)):
        claim = Claim("lis", ">=", 3 * half // 4 + 2, "intersecting inputs: LIS >= 3n'/4+2")
    else:
        claim = Claim("lis", "<=", 3 * half // 4 + 2, "disjoint inputs: LIS <= 3n'/4+2")
    return Generated("perm-dis", Instance(n + 1, tuple(x), tuple(range(1, n + 1))), claim, {"z1": list(z1), "z2": list(z2)})


# --- gap matrices for LIS / LNS ------------------------------------------------------------


@dataclass(frozen=True)
class GapMatrix:
    rows: tuple[tuple[int, ...], ...]
    gap: int  # sparse rows keep at least this many zeros between ones
    alpha: float
    dense_rows: tuple[int, ...]

    def __post_init__(self):
        width = len(self.rows[0]) if self.rows else 0
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise ValueError("ragged matrix")
            if i in self.dense_rows:
                if sum(row) < self.alpha * width:
                    raise ValueError(f"row {i} is labelled dense but has too few ones")
            elif not sparse_ok(row, self.gap):
                raise ValueError(f"row {i} is labelled sparse but has ones closer than {self.gap} zeros")

    @property
    def width(self) -> int:
        return len(self.rows[0]) if self.rows else 0


def sparse_ok(row: Sequence[int], gap: int) -> bool:
    last = None
    for j, v in enumerate(row):
        if v:
            if last is not None and j - last - 1 < gap:
                return False
            last = j
    return True


def random_gap_matrix(height: int, width: int, gap: int, alpha: float, dense: bool, rng: random.Random) -> GapMatrix:
    rows = []
    for _ in range(height):
        row = [0] * width
        j = rng.randrange(gap + 1)
        while j < width:
            row[j] = 1
            j += gap + 1 + rng.randrange(gap + 1)
        rows.append(row)
    dense_rows = ()
    if dense:
        i = rng.randrange(height)
        ones = math.ceil(alpha * width)
        row = [0] * width
        for j in rng.sample(range(width), ones):
            row[j] = 1
        rows[i] = row
        dense_rows = (i,)
    return GapMatrix(tuple(tuple(r) for r in rows), gap, alpha, dense_rows)


def gen_lis_matrix(mat: GapMatrix, c: int) -> list[int]:
    """Columns of the value matrix, where a one at (i, j) becomes
    (i-1)*(r/c) + j and a zero stays 0; r is the width."""
    r = mat.width
    if len(mat.rows) != r // c or r % c:
        raise ValueError("need r/c rows for width r divisible by c")
    step = r // c
    return [(i * step + j + 1) if mat.rows[i][j] else 0 for j in range(r) for i in range(len(mat.rows))]


def lis_matrix_instance(mat: GapMatrix, c: int) -> Generated:
    x = gen_lis_matrix(mat, c)
    r = mat.width
    if mat.dense_rows:
        claim = Claim("lis", ">=", math.ceil(mat.alpha * r), "a dense row: LIS >= alpha*r")
    else:
        # zeros are emitted as real symbols, worth at most one extra step
        claim = Claim("lis", "<=", math.floor(r / c + r / mat.gap) + 1, "all rows sparse: LIS <= r/c + r/l + 1")
    top = (len(mat.rows) - 1) * (r // c) + r  # largest value the matrix can emit
    return Generated("lis-gap", Instance(top + 1, tuple(x), ()), claim, {"r": r, "c": c, "l": mat.gap, "alpha": mat.alpha})


def gen_lns_matrix(mat: GapMatrix, c: int) -> list[int]:
    """r rows by c*r columns; a one in row i becomes i, a zero in column j
    becomes c*r + r + 1 - j; the columns are concatenated."""
    r = len(mat.rows)
    if mat.width != c * r:
        raise ValueError("need c*r columns for r rows")
    return [(i + 1) if mat.rows[i][j] else (c * r + r - j) for j in range(c * r) for i in range(r)]


def lns_matrix_instance(mat: GapMatrix, c: int) -> Generated:
    x = gen_lns_matrix(mat, c)
    r = len(mat.rows)
    if mat.dense_rows:
        claim = Claim("lns", ">=", math.ceil(mat.alpha * c * r), "a dense row: LNS >= alpha*c*r")
    else:
        claim = Claim("lns", "<=", math.floor(2 * r + c * r / mat.gap), "all rows sparse: LNS <= 2r + cr/l")
    return Generated("lns-gap", Instance((c + 1) * r + 1, tuple(x), ()), claim, {"r": r, "c": c, "l": mat.gap, "alpha": mat.alpha})


# --- planted edits --------------------------------------------------------------------------


def planted_pair(n: int, edits: int, r: int, rng: random.Random) -> tuple[list[int], list[int]]:
    """A random y of length n and x obtained from it by `edits` random edits
    (so ED(x, y) <= edits); symbols are 0..r-1."""
    y = [rng.randrange(r) for _ in range(n)]
    x = list(y)
    for _ in range(edits):
        kind = rng.randrange(3)
        if kind == 0 and x:
            i = rng.randrange(len(x))
            x[i] = (x[i] + 1 + rng.randrange(r - 1)) % r if r > 1 else x[i]
        elif kind == 1 and x:
            del x[rng.randrange(len(x))]
        else:
            x.insert(rng.randrange(len(x) + 1), rng.randrange(r))
    return x, y


def planted_instance(n: int, edits: int, r: int, rng: random.Random) -> Generated:
    x, y = planted_pair(n, edits, r, rng)
    claim = Claim("ed", "<=", edits, "x is y after the planted edits")
    return Generated("planted", Instance(r, tuple(x), tuple(y)), claim, {"n": n, "edits": edits})
