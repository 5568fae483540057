"""Divisor classes on blowups of P^3 along lines, and two Cremona lattice maps.

Three models are supported:

* ``cubo_cubic()``: basis H, E1..E4, T1, T2 (four lines and their two
  transversals), the resolution of the cubo-cubic transformation;
* ``todd()``: basis H, E1..E6, the part of Todd's degree-19 transformation
  spanned by the six base lines (the 30 transversals and 6 twisted cubics
  carry no product table here);
* ``lines(n)``: basis H, E1..En, the blowup of n disjoint lines.

Classes are written ``dH - sum m_i E_i - sum t_j T_j`` in the linear-system
convention used by :meth:`DivisorClass.from_system`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

import numpy as np


@dataclass(frozen=True)
class BlowupModel:
    kind: str
    n_lines: int
    n_transversals: int = 0

    def __post_init__(self):
        if self.kind not in ("cubo", "todd", "lines"):
            raise ValueError(f"unknown model kind {self.kind!r}")
        if self.n_lines < 0 or self.n_transversals < 0:
            raise ValueError("basis sizes must be nonnegative")

    @property
    def rank(self) -> int:
        return 1 + self.n_lines + self.n_transversals

    @property
    def basis_names(self) -> tuple[str, ...]:
        return (
            ("H",)
            + tuple(f"E{i + 1}" for i in range(self.n_lines))
            + tuple(f"T{j + 1}" for j in range(self.n_transversals))
        )

    @property
    def name(self) -> str:
        return f"lines{self.n_lines}" if self.kind == "lines" else self.kind

    @property
    def product_table(self) -> dict[tuple[int, int, int], int]:
        """Nonzero triple products of basis elements, keyed by sorted index triples."""
        return _product_table(self)

    # basis vectors
    def H(self) -> "DivisorClass":
        return self._unit(0)

    def E(self, i: int) -> "DivisorClass":
        if not 1 <= i <= self.n_lines:
            raise IndexError(f"E{i} is not in {self.name}")
        return self._unit(i)

    def T(self, j: int) -> "DivisorClass":
        if not 1 <= j <= self.n_transversals:
            raise IndexError(f"T{j} is not in {self.name}")
        return self._unit(self.n_lines + j)

    def E_sum(self) -> "DivisorClass":
        return sum((self.E(i) for i in range(1, self.n_lines + 1)), self.zero())

    def T_sum(self) -> "DivisorClass":
        return sum((self.T(j) for j in range(1, self.n_transversals + 1)), self.zero())

    def zero(self) -> "DivisorClass":
        return DivisorClass(self, (0,) * self.rank)

    def basis(self) -> list["DivisorClass"]:
        return [self._unit(k) for k in range(self.rank)]

    def _unit(self, k: int) -> "DivisorClass":
        c = [0] * self.rank
        c[k] = 1
        return DivisorClass(self, tuple(c))


def cubo_cubic() -> BlowupModel:
    return BlowupModel("cubo", 4, 2)


def todd() -> BlowupModel:
    return BlowupModel("todd", 6)


def lines(n: int) -> BlowupModel:
    return BlowupModel("lines", n)


def model_by_name(name: str) -> BlowupModel:
    """``cubo``, ``todd`` or ``linesN`` (also ``lines:N``)."""
    key = name.strip().lower()
    if key in ("cubo", "cubo-cubic", "cubocubic"):
        return cubo_cubic()
    if key == "todd":
        return todd()
    if key.startswith("lines"):
        rest = key[5:].lstrip(":(").rstrip(")")
        if rest.isdigit():
            return lines(int(rest))
    raise ValueError(f"unknown model {name!r}")


@lru_cache(maxsize=None)
def _product_table(model: BlowupModel) -> dict[tuple[int, int, int], int]:
    table = {(0, 0, 0): 1}
    for i in range(1, model.n_lines + 1):
        table[(0, i, i)] = -1
        table[(i, i, i)] = -2
    for j in range(model.n_lines + 1, model.rank):
        table[(0, j, j)] = -1
        table[(j, j, j)] = 2
        for i in range(1, model.n_lines + 1):
            table[(i, j, j)] = -1
    return table


@dataclass(frozen=True)
class DivisorClass:
    model: BlowupModel
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != self.model.rank:
            raise ValueError(
                f"{self.model.name} has {self.model.rank} basis elements, got {len(coeffs)} coefficients"
            )

    @classmethod
    def from_system(cls, model: BlowupModel, degree: int, mults=(), transversal_mults=()) -> "DivisorClass":
        """The class ``degree*H - sum mults[i] E_i - sum transversal_mults[j] T_j``.

        Missing trailing multiplicities count as zero.
        """
        mults = list(mults)
        ts = list(transversal_mults)
        if len(mults) > model.n_lines or len(ts) > model.n_transversals:
            raise ValueError(
                f"{model.name} takes {model.n_lines} line and {model.n_transversals} "
                f"transversal multiplicities, got {len(mults)} and {len(ts)}"
            )
        mults += [0] * (model.n_lines - len(mults))
        ts += [0] * (model.n_transversals - len(ts))
        return cls(model, (degree, *(-m for m in mults), *(-t for t in ts)))

    @property
    def degree(self) -> int:
        """The H-coefficient."""
        return self.coeffs[0]

    @property
    def line_mults(self) -> tuple[int, ...]:
        return tuple(-c for c in self.coeffs[1 : 1 + self.model.n_lines])

    @property
    def transversal_mults(self) -> tuple[int, ...]:
        return tuple(-c for c in self.coeffs[1 + self.model.n_lines :])

    def _check(self, other: "DivisorClass"):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        if other.model != self.model:
            raise ValueError(f"model mismatch: {self.model.name} vs {other.model.name}")

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return DivisorClass(self.model, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return DivisorClass(self.model, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return DivisorClass(self.model, tuple(-a for a in self.coeffs))

    def __mul__(self, k: int):
        if not isinstance(k, (int, np.integer)):
            return NotImplemented
        return DivisorClass(self.model, tuple(int(k) * a for a in self.coeffs))

    __rmul__ = __mul__

    def __str__(self):
        terms = []
        for c, name in zip(self.coeffs, self.model.basis_names):
            if c == 0:
                continue
            mag = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append((sign, f"{mag}{name}"))
        if not terms:
            return "0"
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, t in terms[1:]:
            out += f" {sign} {t}"
        return out

    def to_system_string(self) -> str:
        """``d;m1,...,mn[;t1,t2]`` (see :func:`parse_class`)."""
        out = f"{self.degree};" + ",".join(str(m) for m in self.line_mults)
        if self.model.n_transversals:
            out += ";" + ",".join(str(t) for t in self.transversal_mults)
        return out


def _expand(group: str) -> list[int]:
    out = []
    for item in group.split(","):
        value, _, count = item.partition("^")
        out.extend([int(value)] * (int(count) if count else 1))
    return out


def parse_class(text: str, model: BlowupModel) -> DivisorClass:
    """Parse ``"d;m1,m2,...[;t1,t2]"`` meaning ``dH - sum m_i E_i - sum t_j T_j``.

    Omitted groups are zero, so ``"1"`` is H in every model. Any other
    length mismatch is an error. ``m^k`` repeats an entry ``k`` times.
    """
    parts = text.strip().split(";")
    if len(parts) > 3:
        raise ValueError(f"malformed class string {text!r}")
    try:
        degree = int(parts[0])
        groups = [_expand(part) if part.strip() else [] for part in parts[1:]]
    except ValueError:
        raise ValueError(f"malformed class string {text!r}") from None
    mults = groups[0] if groups else []
    ts = groups[1] if len(groups) > 1 else []
    if mults and len(mults) != model.n_lines:
        raise ValueError(f"{model.name} needs {model.n_lines} line multiplicities, got {len(mults)}")
    if ts and len(ts) != model.n_transversals:
        raise ValueError(
            f"{model.name} needs {model.n_transversals} transversal multiplicities, got {len(ts)}"
        )
    return DivisorClass.from_system(model, degree, mults, ts)


def triple_product(a: DivisorClass, b: DivisorClass, c: DivisorClass) -> int:
    """Trilinear extension of the model's table of basis triple products."""
    if not (a.model == b.model == c.model):
        raise ValueError("triple product of classes from different models")
    total = 0
    for key, value in a.model.product_table.items():
        for i, j, k in set(permutations(key)):
            total += a.coeffs[i] * b.coeffs[j] * c.coeffs[k] * value
    return total


def self_cube(a: DivisorClass) -> int:
    return triple_product(a, a, a)


def _apply(matrix: list[tuple[int, ...]], cls: DivisorClass) -> DivisorClass:
    # matrix[k] is the image of the k-th basis vector
    out = [0] * cls.model.rank
    for x, image in zip(cls.coeffs, matrix):
        for r, v in enumerate(image):
            out[r] += x * v
    return DivisorClass(cls.model, tuple(out))


def gamma_cubo_matrix() -> list[tuple[int, ...]]:
    """Images of H, E1..E4, T1, T2 under the cubo-cubic map."""
    m = cubo_cubic()
    E, T, H = m.E_sum(), m.T_sum(), m.H()
    images = [3 * H - E - T]
    images += [2 * H - E + m.E(i) - T for i in range(1, 5)]
    images += [m.T(j) for j in (1, 2)]
    return [im.coeffs for im in images]


def gamma_todd_matrix() -> list[tuple[int, ...]]:
    """Images of H, E1..E6 under Todd's transformation."""
    m = todd()
    E, H = m.E_sum(), m.H()
    images = [19 * H - 5 * E] + [12 * H - 3 * E - m.E(i) for i in range(1, 7)]
    return [im.coeffs for im in images]


def gamma_cubo(cls: DivisorClass) -> DivisorClass:
    if cls.model.kind != "cubo":
        raise ValueError(f"gamma_cubo acts on the cubo-cubic model, not {cls.model.name}")
    return _apply(gamma_cubo_matrix(), cls)


def gamma_todd(cls: DivisorClass) -> DivisorClass:
    if cls.model.kind != "todd":
        raise ValueError(f"gamma_todd acts on the Todd model, not {cls.model.name}")
    return _apply(gamma_todd_matrix(), cls)


def apply_map(name: str, cls: DivisorClass) -> DivisorClass:
    if name == "cubo":
        return gamma_cubo(cls)
    if name == "todd":
        return gamma_todd(cls)
    raise ValueError(f"unknown map {name!r}")


def proper_transform_symmetric(name: str, degree: int, mults) -> DivisorClass:
    """Image of ``degree*H - sum m_k E_k`` in closed form.

    With M the sum of the multiplicities, the cubo-cubic image is
    ``(3d-2M)H - sum (d-M+m_k)E_k - (d-M)(T1+T2)`` and the Todd image is
    ``(19d-12M)H - sum (5d-3M-m_k)E_k``.
    """
    mults = [int(m) for m in mults]
    d = int(degree)
    M = sum(mults)
    if name == "cubo":
        if len(mults) != 4:
            raise ValueError(f"cubo-cubic needs 4 multiplicities, got {len(mults)}")
        return DivisorClass.from_system(
            cubo_cubic(), 3 * d - 2 * M, [d - M + m for m in mults], [d - M, d - M]
        )
    if name == "todd":
        if len(mults) != 6:
            raise ValueError(f"Todd needs 6 multiplicities, got {len(mults)}")
        return DivisorClass.from_system(todd(), 19 * d - 12 * M, [5 * d - 3 * M - m for m in mults])
    raise ValueError(f"unknown map {name!r}")


@dataclass(frozen=True)
class Projection:
    cls: DivisorClass
    dropped: tuple[int, ...]

    @property
    def warning(self) -> str | None:
        if not any(self.dropped):
            return None
        return f"dropped nonzero transversal coefficients {list(self.dropped)}"


def drop_auxiliary(cls: DivisorClass) -> Projection:
    """Zero the transversal coefficients, reporting what was discarded."""
    n = cls.model.n_lines
    kept = cls.coeffs[: 1 + n] + (0,) * cls.model.n_transversals
    return Projection(DivisorClass(cls.model, kept), cls.coeffs[1 + n :])


def is_obviously_noneffective(cls: DivisorClass) -> bool:
    """A negative H-coefficient rules out effectivity."""
    return cls.degree < 0


def anticanonical(model: BlowupModel | None = None) -> DivisorClass:
    """``4H - (E1 + ... + En)``; the canonical class is its negative."""
    model = model or lines(6)
    if model.n_transversals:
        raise ValueError("the anticanonical class is only tabulated for blowups of lines")
    return 4 * model.H() - model.E_sum()


def canonical(model: BlowupModel | None = None) -> DivisorClass:
    return -anticanonical(model)
