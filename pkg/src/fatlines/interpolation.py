"""Linear systems of surfaces in P^3 vanishing to prescribed order along lines.

``L_d(m_1, ..., m_s)`` is the space of degree-``d`` forms in x, y, z, w that
vanish to order ``m_i`` along the ``i``-th of ``s`` general lines. Its
virtual dimension comes from a closed-form conditions count; its actual
dimension is measured as the kernel dimension of an explicit conditions
matrix over F_p for randomly sampled lines.

A random configuration can only be *more* special than a general one, so
each measured dimension is an upper bound for the generic value.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb

import numpy as np

from . import field as ff
from .field import DEFAULT_PRIME
from .monomials import MonomialIndexer, indexer, num_monomials

DEFAULT_SEEDS = (1, 2, 3)
DEFAULT_BUDGET_COLS = 5000
FRAME_RETRIES = 64

RANDOM_POSITION_CAVEAT = (
    "dimensions are measured for random lines over F_p; they bound the "
    "general-position value from above and are evidence, not proof, for "
    "characteristic zero"
)


class SamplingError(RuntimeError):
    """No skew configuration of lines was found within the retry cap."""


class BudgetExceeded(RuntimeError):
    """A conditions matrix would exceed the configured column budget."""

    def __init__(self, degree: int, cols: int, budget: int):
        self.degree = degree
        self.cols = cols
        self.budget = budget
        super().__init__(
            f"out of desk-scale budget: degree {degree} needs {cols} columns "
            f"(budget {budget})"
        )


def check_budget(degree: int, budget_cols: int | None) -> None:
    if budget_cols is None:
        return
    cols = num_monomials(degree)
    if cols > budget_cols:
        raise BudgetExceeded(degree, cols, budget_cols)


def conditions_count(m: int, d: int) -> int:
    """Number of conditions that order-``m`` vanishing along a line imposes on degree-``d`` forms."""
    if m < 1:
        raise ValueError(f"multiplicity must be positive, got {m}")
    if m > d:
        raise ValueError(f"multiplicity {m} exceeds degree {d}")
    return m * (m + 1) * (3 * d + 5 - 2 * m) // 6


@dataclass(frozen=True)
class FatFlatSystem:
    """The system ``L_d(m_1, ..., m_s)``; multiplicities are stored in decreasing order."""

    degree: int
    mults: tuple[int, ...] = ()

    def __post_init__(self):
        mults = tuple(sorted((int(m) for m in self.mults), reverse=True))
        object.__setattr__(self, "mults", mults)
        if self.degree < 0:
            raise ValueError(f"degree must be nonnegative, got {self.degree}")
        if mults and mults[-1] < 1:
            raise ValueError(f"multiplicities must be positive, got {mults}")
        if mults and self.degree < mults[0]:
            raise ValueError(
                f"degree {self.degree} is below the largest multiplicity {mults[0]}"
            )

    @classmethod
    def parse(cls, degree: int, mults: str) -> "FatFlatSystem":
        return cls(degree, parse_mults(mults))

    @classmethod
    def from_label(cls, label: str) -> "FatFlatSystem":
        """Inverse of ``str``: ``"L_12(3^6,2)"``."""
        mt = re.fullmatch(r"\s*L_(\d+)\((.*)\)\s*", label)
        if mt is None:
            raise ValueError(f"malformed system label {label!r}")
        return cls.parse(int(mt.group(1)), mt.group(2))

    @property
    def s(self) -> int:
        return len(self.mults)

    @property
    def num_monomials(self) -> int:
        return num_monomials(self.degree)

    @property
    def num_conditions(self) -> int:
        return sum(conditions_count(m, self.degree) for m in self.mults)

    def mults_label(self) -> str:
        """Compact multiplicity string such as ``3^6,2``."""
        parts = []
        i = 0
        while i < len(self.mults):
            j = i
            while j < len(self.mults) and self.mults[j] == self.mults[i]:
                j += 1
            parts.append(str(self.mults[i]) if j - i == 1 else f"{self.mults[i]}^{j - i}")
            i = j
        return ",".join(parts)

    def __str__(self):
        return f"L_{self.degree}({self.mults_label()})"


def parse_mults(text: str) -> tuple[int, ...]:
    """Parse ``"3,3,2"`` or the power shorthand ``"3^6,2"``."""
    text = text.strip()
    if not text:
        return ()
    out: list[int] = []
    for part in text.split(","):
        mt = re.fullmatch(r"\s*(-?\d+)\s*(?:\^\s*(\d+))?\s*", part)
        if mt is None:
            raise ValueError(f"malformed multiplicity {part!r}")
        out.extend([int(mt.group(1))] * int(mt.group(2) or 1))
    return tuple(out)


def virtual_dimension(system: FatFlatSystem) -> int:
    return comb(system.degree + 3, 3) - system.num_conditions


def expected_dimension(system: FatFlatSystem) -> int:
    return max(virtual_dimension(system), 0)


@dataclass(eq=False)
class Line:
    """A line of P^3(F_p) through ``P`` and ``Q``.

    ``frame`` is an invertible 4x4 matrix whose last two columns are ``P``
    and ``Q``, so the substitution X = frame @ x carries the coordinate
    line {x = y = 0} onto this line.
    """

    P: np.ndarray
    Q: np.ndarray
    frame: np.ndarray
    prime: int = DEFAULT_PRIME

    def __post_init__(self):
        self.P = ff.as_matrix([self.P], self.prime)[0]
        self.Q = ff.as_matrix([self.Q], self.prime)[0]
        self.frame = ff.as_matrix(self.frame, self.prime)
        if self.frame.shape != (4, 4):
            raise ValueError("frame must be 4x4")
        if ff.rank(np.vstack([self.P, self.Q]), self.prime) != 2:
            raise ValueError("P and Q do not span a line")
        if ff.rank(self.frame, self.prime) != 4:
            raise ValueError("frame is not invertible")
        if not (np.array_equal(self.frame[:, 2], self.P) and np.array_equal(self.frame[:, 3], self.Q)):
            raise ValueError("frame must carry {x=y=0} onto the line through P and Q")

    @classmethod
    def coordinate(cls, prime: int = DEFAULT_PRIME) -> "Line":
        """The line x = y = 0 with the identity frame."""
        eye = np.eye(4, dtype=np.int64)
        return cls(eye[2], eye[3], eye, prime)

    def point(self, s: int, t: int) -> np.ndarray:
        return (s * self.P + t * self.Q) % self.prime

    def equations(self) -> np.ndarray:
        """Two linear forms (as coefficient rows) cutting out the line."""
        return ff.inverse(self.frame, self.prime)[:2]

    def __repr__(self):
        return f"Line(P={self.P.tolist()}, Q={self.Q.tolist()}, p={self.prime})"


def _skew(a: Line, b: Line, p: int) -> bool:
    return ff.rank(np.vstack([a.P, a.Q, b.P, b.Q]), p) == 4


def sample_lines(s: int, prime: int = DEFAULT_PRIME, seed: int = 1) -> list[Line]:
    """``s`` pairwise skew random lines; the first ``k`` lines do not depend on ``s``."""
    if s < 0:
        raise ValueError(f"line count must be nonnegative, got {s}")
    p = ff.PrimeModulus(prime).p
    rng = np.random.default_rng(seed)
    lines: list[Line] = []
    for _ in range(s):
        for _attempt in range(FRAME_RETRIES):
            P, Q = rng.integers(0, p, size=(2, 4))
            if ff.rank(np.vstack([P, Q]), p) < 2:
                continue
            frame = _complete_frame(P, Q, p, rng)
            if frame is None:
                continue
            line = Line(P, Q, frame, p)
            if all(_skew(line, other, p) for other in lines):
                lines.append(line)
                break
        else:
            raise SamplingError("could not sample skew configuration")
    return lines


def _complete_frame(P, Q, p: int, rng: np.random.Generator) -> np.ndarray | None:
    for _ in range(FRAME_RETRIES):
        R = rng.integers(0, p, size=(2, 4))
        frame = np.column_stack([R[0], R[1], P, Q])
        if ff.rank(frame, p) == 4:
            return frame
    return None


def _low_monomials(n: int, m: int) -> np.ndarray:
    """Indices (in degree-``n`` order) of monomials whose x and y exponents sum below ``m``."""
    e = indexer(n).exponents
    return np.flatnonzero(e[:, 0] + e[:, 1] < m)


def condition_rows(
    line: Line, m: int, d: int, idx: MonomialIndexer | None = None
) -> np.ndarray:
    """Conditions for order-``m`` vanishing along ``line`` on degree-``d`` forms.

    Row ``beta`` holds, for every source monomial ``X^alpha``, the coefficient
    of ``x^beta`` in ``(frame @ x)^alpha``, restricted to the ``beta`` with
    ``beta_x + beta_y < m``. A form satisfies every row exactly when its
    pullback has no such monomials, i.e. when it vanishes to order ``m``
    along the line. Images are built degree by degree by multiplying the
    image of ``alpha - e_k`` by the k-th linear form of the frame.
    """
    if idx is not None and idx.degree != d:
        raise ValueError(f"indexer has degree {idx.degree}, expected {d}")
    conditions_count(m, d)
    p = line.prime
    g = line.frame
    if ff.rank(g, p) != 4:
        raise ValueError("frame is not invertible")

    # V[i, j]: coefficient of the i-th low target monomial in the image of the j-th source
    V = np.ones((1, 1), dtype=np.int64)
    prev_low = np.zeros(1, dtype=np.int64)
    for n in range(1, d + 1):
        src = indexer(n).exponents
        k = np.argmax(src > 0, axis=1)
        parent = indexer(n - 1).index(src - np.eye(4, dtype=np.int64)[k])

        low = _low_monomials(n, m)
        tgt = src[low]
        # position of each degree-(n-1) low monomial inside the previous V
        prev_pos = np.full(num_monomials(n - 1), -1, dtype=np.int64)
        prev_pos[prev_low] = np.arange(len(prev_low))

        new = np.zeros((len(low), len(src)), dtype=np.int64)
        for j in range(4):
            has = np.flatnonzero(tgt[:, j] > 0)
            if has.size == 0:
                continue
            down = prev_pos[indexer(n - 1).index(tgt[has] - np.eye(4, dtype=np.int64)[j])]
            new[has] += V[down][:, parent] * g[k, j][None, :]
        V = new % p
        prev_low = low
    return V


def _falling(a: np.ndarray, b: int) -> np.ndarray:
    out = np.ones_like(a)
    for i in range(b):
        out = out * (a - i)
    return out


def condition_rows_oracle(
    line: Line, m: int, d: int, idx: MonomialIndexer | None = None
) -> np.ndarray:
    """Independent conditions: every order-``(m-1)`` partial derivative vanishes on the line.

    A degree ``d-m+1`` form vanishes on a line iff it vanishes at ``d-m+2``
    of its points; by Euler's relation the lower-order partials then vanish
    too. Valid while ``d < p``.
    """
    conditions_count(m, d)
    p = line.prime
    if d >= p:
        raise ValueError("the derivative oracle needs degree below the characteristic")
    if ff.rank(line.frame, p) != 4:
        raise ValueError("frame is not invertible")
    e = (idx or indexer(d)).exponents
    points = [line.point(1, t) for t in range(d - m + 1)] + [line.Q]
    betas = indexer(m - 1).exponents
    rows = []
    for beta in betas:
        ok = np.all(e >= beta, axis=1)
        rest = np.where(ok[:, None], e - beta, 0)
        coef = np.ones(len(e), dtype=np.int64)
        for v in range(4):
            coef = coef * _falling(e[:, v], int(beta[v])) % p
        coef = np.where(ok, coef, 0)
        for pt in points:
            val = coef.copy()
            for v in range(4):
                pw = np.array([pow(int(pt[v]), int(r), p) for r in rest[:, v]], dtype=np.int64)
                val = val * pw % p
            rows.append(val)
    return np.array(rows, dtype=np.int64).reshape(len(rows), len(e))


def conditions_matrix(lines: list[Line], mults, d: int) -> np.ndarray:
    """Stacked conditions for ``lines[i]`` with multiplicity ``mults[i]``."""
    if len(lines) < len(mults):
        raise ValueError("fewer lines than multiplicities")
    blocks = [condition_rows(line, m, d) for line, m in zip(lines, mults)]
    if not blocks:
        return np.zeros((0, num_monomials(d)), dtype=np.int64)
    return np.vstack(blocks)


def actual_dimension(
    system: FatFlatSystem,
    prime: int = DEFAULT_PRIME,
    seed: int = 1,
    budget_cols: int | None = None,
) -> int:
    """Affine dimension of the system for the lines ``sample_lines(s, prime, seed)``."""
    check_budget(system.degree, budget_cols)
    if not system.mults:
        return system.num_monomials
    lines = sample_lines(system.s, prime, seed)
    return ff.kernel_dimension(conditions_matrix(lines, system.mults, system.degree), prime)


@dataclass
class DimensionReport:
    system: FatFlatSystem
    prime: int
    seeds: list[int]
    virtual: int
    expected: int
    actual_per_seed: list[int]
    consensus_actual: int
    special: bool
    caveat: str = RANDOM_POSITION_CAVEAT

    def to_dict(self) -> dict:
        return {
            "system": str(self.system),
            "degree": self.system.degree,
            "mults": list(self.system.mults),
            "prime": self.prime,
            "seeds": list(self.seeds),
            "virtual": self.virtual,
            "expected": self.expected,
            "actual_per_seed": list(self.actual_per_seed),
            "consensus_actual": self.consensus_actual,
            "special": self.special,
            "caveat": self.caveat,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DimensionReport":
        return cls(
            system=FatFlatSystem(data["degree"], tuple(data["mults"])),
            prime=data["prime"],
            seeds=list(data["seeds"]),
            virtual=data["virtual"],
            expected=data["expected"],
            actual_per_seed=list(data["actual_per_seed"]),
            consensus_actual=data["consensus_actual"],
            special=data["special"],
            caveat=data.get("caveat", RANDOM_POSITION_CAVEAT),
        )


def analyze(
    system: FatFlatSystem,
    prime: int = DEFAULT_PRIME,
    seeds=DEFAULT_SEEDS,
    budget_cols: int | None = None,
    cache=None,
) -> DimensionReport:
    """Measure the system for each seed and take the minimum as the consensus.

    ``cache`` is any object with ``get(key)``/``put(key, value)`` (see
    :class:`fatlines.cache.ResultCache`); per-seed dimensions are cached.
    """
    seeds = [int(s) for s in seeds]
    if not seeds:
        raise ValueError("at least one seed is required")
    prime = ff.PrimeModulus(prime).p
    actual = []
    for seed in seeds:
        key = None
        if cache is not None:
            key = cache.key("actual_dimension", str(system), prime, seed)
            hit = cache.get(key)
            if hit is not None:
                actual.append(int(hit))
                continue
        value = actual_dimension(system, prime, seed, budget_cols)
        if cache is not None:
            cache.put(key, value)
        actual.append(value)
    virtual = virtual_dimension(system)
    expected = max(virtual, 0)
    consensus = min(actual)
    return DimensionReport(
        system=system,
        prime=prime,
        seeds=seeds,
        virtual=virtual,
        expected=expected,
        actual_per_seed=actual,
        consensus_actual=consensus,
        special=consensus > expected,
    )
