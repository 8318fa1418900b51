"""Registry of labeled classes given by closed-form counting sequences.

Each builtin model carries a *growth form* describing how its counts are built,
which the expansion code uses to write ``a_{n-k} / a_n`` symbolically:

* :class:`GeometricForm` -- ``a_n = b**(n(n-1)/2)`` (multigraphs); the ratio
  decays exponentially in ``n``.
* :class:`FactorialForm` -- ``a_{pm}`` is a product of stepped products such as
  ``m!``, ``(2m)!`` or ``(2m-1)!!``; the ratio is a rational function of ``m``.

Double factorials follow ``(-1)!! = 1`` and ``(2m-1)!! = 1*3*...*(2m-1)``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from math import prod
from pathlib import Path
from typing import Callable, Mapping

from .errors import (
    InsufficientDataError,
    InvalidParameterError,
    LeadingTermError,
    MalformedSequenceFile,
    PeriodicityError,
    UnknownModelError,
)
from .series import CountingSequence

__all__ = [
    "RatioKind",
    "SteppedProduct",
    "FactorialForm",
    "GeometricForm",
    "TabulatedForm",
    "ModelSpec",
    "BUILTIN_IDS",
    "builtin",
    "custom_from_file",
    "custom_from_dict",
    "parse_params",
    "double_factorial",
]


class RatioKind(str, Enum):
    RATIONAL_IN_N = "RATIONAL_IN_N"
    EXPONENTIAL_IN_N = "EXPONENTIAL_IN_N"


def double_factorial(n: int) -> int:
    if n < -1:
        raise ValueError("double factorial is defined for n >= -1")
    return prod(range(n, 0, -2)) if n > 0 else 1


@dataclass(frozen=True)
class SteppedProduct:
    """``prod_{i=1}^{count*m} (step*i + offset) ** power`` as a function of ``m``."""

    count: int
    step: int
    offset: int
    power: int = 1

    def value(self, m: int) -> int:
        return prod(self.step * i + self.offset for i in range(1, self.count * m + 1)) ** self.power

    def ratio_factors(self, k: int) -> list[tuple[int, int, int]]:
        """Linear factors ``(slope, offset, power)`` whose product is ``value(m-k)/value(m)``."""
        # value(m)/value(m-k) = prod_{j<count*k} (step*count*m + offset - step*j)
        return [
            (self.step * self.count, self.offset - self.step * j, -self.power)
            for j in range(self.count * k)
        ]

    def describe(self) -> str:
        top = f"{self.count}m" if self.count != 1 else "m"
        if self.step == 1 and self.offset == 0:
            base = f"({top})!"
        elif self.step == 2 and self.offset == -1:
            inner = f"2*{top}-1" if self.count == 1 else f"{2 * self.count}m-1"
            base = f"({inner})!!"
        else:
            base = f"prod_{{i=1}}^{{{top}}} ({self.step}i{self.offset:+d})"
        return base if self.power == 1 else f"{base}^{self.power}"


@dataclass(frozen=True)
class FactorialForm:
    blocks: tuple[SteppedProduct, ...]

    def lattice_value(self, m: int) -> int:
        return prod(b.value(m) for b in self.blocks)

    def describe(self) -> str:
        return " * ".join(b.describe() for b in self.blocks)


@dataclass(frozen=True)
class GeometricForm:
    base: int

    def lattice_value(self, m: int) -> int:
        return self.base ** (m * (m - 1) // 2)

    def describe(self) -> str:
        return f"{self.base}^(m(m-1)/2)"


@dataclass(frozen=True)
class TabulatedForm:
    """Counts known only as a finite table (lattice values)."""

    values: tuple[int, ...]

    def lattice_value(self, m: int) -> int:
        if m >= len(self.values):
            raise InsufficientDataError(m + 1, len(self.values))
        return self.values[m]

    def describe(self) -> str:
        return "tabulated"


@dataclass(frozen=True)
class ModelSpec:
    id: str
    form: FactorialForm | GeometricForm | TabulatedForm
    period: int = 1
    ratio_kind: RatioKind = RatioKind.RATIONAL_IN_N
    seq_class_known: bool = False
    oracle_id: str | None = None
    params: tuple[tuple[str, int], ...] = ()
    description: str = ""
    max_n: int | None = field(default=None, compare=False)

    @property
    def key(self) -> str:
        """Canonical identifier including parameters, e.g. ``ogem(D=3)``."""
        if not self.params:
            return self.id
        inner = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.id}({inner})"

    @property
    def param_map(self) -> dict[str, int]:
        return dict(self.params)

    def count_fn(self, n: int) -> int:
        if n < 0:
            raise ValueError("size must be non-negative")
        if self.max_n is not None and n > self.max_n:
            raise InsufficientDataError(n + 1, self.max_n + 1)
        if n % self.period:
            return 0
        return self.form.lattice_value(n // self.period)

    def counting_sequence(self, max_n: int) -> CountingSequence:
        return CountingSequence(
            tuple(self.count_fn(n) for n in range(max_n + 1)), self.period, self.key
        )

    def lattice_counts(self, max_m: int) -> list[int]:
        return [self.count_fn(self.period * m) for m in range(max_m + 1)]


def _factorial_model(id_, blocks, period=1, **kw):
    return ModelSpec(id_, FactorialForm(tuple(SteppedProduct(*b) for b in blocks)), period, **kw)


def _need(params, name, minimum):
    if name not in params:
        raise InvalidParameterError(f"missing parameter {name}")
    value = params[name]
    if not isinstance(value, int) or value < minimum:
        raise InvalidParameterError(f"parameter {name} must be an integer >= {minimum}, got {value!r}")
    return value


def _multigraph(params, id_="multigraph"):
    d = _need(params, "d", 1)
    return ModelSpec(
        id_,
        GeometricForm(d + 1),
        1,
        RatioKind.EXPONENTIAL_IN_N,
        True,
        "multigraph",
        (("d", d),) if id_ == "multigraph" else (),
        f"{d}-multigraphs, (d+1)^binom(n,2); derivative: irreducible {d}-multitournaments",
    )


def _fixed_d(id_, d):
    def build(params):
        if params:
            raise InvalidParameterError(f"{id_} takes no parameters")
        return _multigraph({"d": d}, id_)

    return build


def _origami(params):
    if params:
        raise InvalidParameterError("origami takes no parameters")
    return _factorial_model(
        "origami", [(1, 1, 0, 2)], 1,
        seq_class_known=True, oracle_id="origami",
        description="origamis (pairs of permutations), (n!)^2; derivative: indecomposable permutations",
    )


def _multilinear(params):
    # d = 1 (plain permutations) is not gargantuan
    d = _need(params, "d", 2)
    return _factorial_model(
        "multilinear", [(1, 1, 0, d)], 1,
        seq_class_known=True, oracle_id="multilinear", params=(("d", d),),
        description=f"{d}-multiple linear orders, (n!)^{d}",
    )


def _comb_map(params):
    if params:
        raise InvalidParameterError("comb_map takes no parameters")
    return _factorial_model(
        "comb_map", [(2, 1, 0, 1), (1, 2, -1, 1)], 2,
        seq_class_known=True, oracle_id="comb_map",
        description="combinatorial maps, n!(n-1)!! on even n; derivative: indecomposable perfect matchings",
    )


def _ogem(params):
    D = _need(params, "D", 2)
    return _factorial_model(
        "ogem", [(2, 1, 0, 1), (1, 1, 0, D - 1)], 2,
        seq_class_known=True, oracle_id="ogem", params=(("D", D),),
        description=f"orientable GEMs of dimension {D}, (2m)!(m!)^{D - 1} at size 2m",
    )


def _constellation(params):
    # (n!)^(d-2) must be gargantuan, which needs d >= 3
    d = _need(params, "d", 3)
    return _factorial_model(
        "constellation", [(1, 1, 0, d - 1)], 1,
        seq_class_known=True, oracle_id="constellation", params=(("d", d),),
        description=f"{d - 1}-multipermutations, (n!)^{d - 1}; connected objects are {d}-constellations",
    )


def _no_params(id_, blocks, period, description):
    def build(params):
        if params:
            raise InvalidParameterError(f"{id_} takes no parameters")
        return _factorial_model(id_, blocks, period, description=description)

    return build


_BUILDERS: dict[str, Callable[[Mapping[str, int]], ModelSpec]] = {
    "multigraph": _multigraph,
    "graph": _fixed_d("graph", 1),
    "oriented_graph": _fixed_d("oriented_graph", 2),
    "digraph": _fixed_d("digraph", 3),
    "origami": _origami,
    "multilinear": _multilinear,
    "comb_map": _comb_map,
    "ogem": _ogem,
    "constellation": _constellation,
    "triangulation": _no_params(
        "triangulation", [(3, 2, -1, 1)], 2, "gluings of 2m triangles, (6m-1)!!"
    ),
    "quadrangulation": _no_params(
        "quadrangulation", [(2, 2, -1, 1)], 1, "gluings of n quadrangles, (4n-1)!!"
    ),
    "quad_sts": _no_params(
        "quad_sts", [(1, 2, -1, 2)], 1, "quadratic square-tiled surfaces, ((2n-1)!!)^2"
    ),
    "gem3": _no_params(
        "gem3", [(1, 2, -1, 4)], 2, "GEMs of dimension 3, ((2m-1)!!)^4 at size 2m"
    ),
}

BUILTIN_IDS = tuple(_BUILDERS)

DEFAULT_PARAMS = {"multigraph": {"d": 1}, "multilinear": {"d": 2}, "ogem": {"D": 3}, "constellation": {"d": 3}}


def builtin(id: str, params: Mapping[str, int] | None = None) -> ModelSpec:
    """Look up a builtin model, e.g. ``builtin("ogem", {"D": 3})``."""
    if id not in _BUILDERS:
        raise UnknownModelError(f"unknown model {id!r}; choose from {', '.join(BUILTIN_IDS)}")
    return _BUILDERS[id](dict(params or {}))


_PARAM_RE = re.compile(r"^([A-Za-z_]\w*)=(-?\d+)$")


def parse_params(items) -> dict[str, int]:
    """Parse ``["d=2", "D=3"]`` into a flat string-to-int map."""
    out = {}
    for item in items or ():
        m = _PARAM_RE.match(item.strip())
        if not m:
            raise InvalidParameterError(f"bad parameter {item!r}, expected key=integer")
        out[m.group(1)] = int(m.group(2))
    return out


def _as_int(value, index):
    if isinstance(value, bool):
        raise MalformedSequenceFile(f"terms[{index}] is not an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and re.fullmatch(r"\d+", value.strip()):
        return int(value)
    raise MalformedSequenceFile(f"terms[{index}] is not a non-negative integer: {value!r}")


def custom_from_dict(doc) -> ModelSpec:
    if not isinstance(doc, dict):
        raise MalformedSequenceFile("top-level JSON value must be an object")
    label, period, terms = doc.get("label"), doc.get("period", 1), doc.get("terms")
    if not isinstance(label, str):
        raise MalformedSequenceFile("'label' must be a string")
    if isinstance(period, bool) or not isinstance(period, int) or period < 1:
        raise MalformedSequenceFile("'period' must be a positive integer")
    if not isinstance(terms, list) or not terms:
        raise MalformedSequenceFile("'terms' must be a non-empty list")
    values = [_as_int(v, i) for i, v in enumerate(terms)]
    if any(v < 0 for v in values):
        raise MalformedSequenceFile("terms must be non-negative")
    if values[0] != 1:
        raise LeadingTermError(f"terms[0] must be 1, got {values[0]}")
    bad = [n for n, v in enumerate(values) if n % period and v != 0]
    if bad:
        raise PeriodicityError(f"terms at sizes {bad} must vanish for period {period}")
    return ModelSpec(
        label,
        TabulatedForm(tuple(values[::period])),
        period,
        RatioKind.EXPONENTIAL_IN_N,
        False,
        None,
        (),
        f"custom sequence {label!r}",
        max_n=len(values) - 1,
    )


def custom_from_file(path) -> ModelSpec:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise MalformedSequenceFile(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise MalformedSequenceFile(f"{path}: cannot read ({exc.strerror})") from exc
    return custom_from_dict(doc)
