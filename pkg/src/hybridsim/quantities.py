"""Physical constants, unit-tagged quantities and the ion-species registry.

All formulas in hybridsim work on plain floats in base SI units.  The
:class:`Quantity` type only lives at the I/O boundary (config files, CLI
arguments, report headers).

Unit grammar
------------
``<number><optional prefix><unit>`` with optional whitespace between the
number and the unit, e.g. ``46fF``, ``25µm``, ``2.7kΩ``, ``60dB``, ``0.3``.

* number: ``[+-]digits[.digits][e[+-]digits]``
* prefixes: ``f p n µ m k M G`` (``u`` and the Greek ``μ`` are read as micro)
* units: ``m kg s A K Hz F H Ω C Wb T J W V dB`` (``Ohm``/``ohm`` read as Ω);
  no unit means dimensionless.  ``kg`` and ``dB`` take no prefix.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal
from typing import Optional

import scipy.constants as sc

from .errors import DimensionError, NotFoundError, ParseError


@dataclass(frozen=True)
class Constants:
    e: float
    hbar: float
    k_B: float
    mu_B: float
    mu_N: float
    eps0: float
    u: float
    m_e: float


# CODATA values as shipped with scipy.constants
CONSTANTS = Constants(
    e=sc.e,
    hbar=sc.hbar,
    k_B=sc.k,
    mu_B=sc.physical_constants["Bohr magneton"][0],
    mu_N=sc.physical_constants["nuclear magneton"][0],
    eps0=sc.epsilon_0,
    u=sc.physical_constants["atomic mass constant"][0],
    m_e=sc.m_e,
)

e = CONSTANTS.e
hbar = CONSTANTS.hbar
k_B = CONSTANTS.k_B
mu_B = CONSTANTS.mu_B
mu_N = CONSTANTS.mu_N
eps0 = CONSTANTS.eps0
u = CONSTANTS.u


# --------------------------------------------------------------------------
# units

UNITS = ("m", "kg", "s", "A", "K", "Hz", "F", "H", "Ω", "C", "Wb", "T", "J", "W", "V", "dB", "")
_UNIT_ALIASES = {"Ohm": "Ω", "ohm": "Ω", "Ω": "Ω"}
_NO_PREFIX = {"kg", "dB", ""}

PREFIXES = {"f": -15, "p": -12, "n": -9, "µ": -6, "m": -3, "k": 3, "M": 6, "G": 9}
_PREFIX_ALIASES = {"u": "µ", "μ": "µ"}
_EXP_TO_PREFIX = {v: k for k, v in PREFIXES.items()}

_NUMBER = re.compile(r"\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*")


@dataclass(frozen=True)
class Quantity:
    """A real value in base SI units tagged with its unit symbol."""

    value: float
    unit: str = ""

    def __post_init__(self):
        if self.unit not in UNITS:
            raise DimensionError(f"unknown unit {self.unit!r}; known: {', '.join(u or '1' for u in UNITS)}")
        object.__setattr__(self, "value", float(self.value))

    def _check(self, other) -> "Quantity":
        if not isinstance(other, Quantity):
            if self.unit == "":
                return Quantity(other)
            raise DimensionError(f"cannot combine {self.unit!r} with a bare number")
        if other.unit != self.unit:
            raise DimensionError(f"incompatible units {self.unit!r} and {other.unit!r}")
        return other

    def __add__(self, other):
        return Quantity(self.value + self._check(other).value, self.unit)

    __radd__ = __add__

    def __sub__(self, other):
        return Quantity(self.value - self._check(other).value, self.unit)

    def __rsub__(self, other):
        return Quantity(self._check(other).value - self.value, self.unit)

    def __neg__(self):
        return Quantity(-self.value, self.unit)

    def __mul__(self, k):
        if isinstance(k, Quantity):
            if k.unit != "":
                raise DimensionError("derived units are not supported")
            k = k.value
        return Quantity(self.value * k, self.unit)

    __rmul__ = __mul__

    def __truediv__(self, k):
        if isinstance(k, Quantity):
            if k.unit == self.unit:
                return Quantity(self.value / k.value)
            if k.unit != "":
                raise DimensionError("derived units are not supported")
            k = k.value
        return Quantity(self.value / k, self.unit)

    def __lt__(self, other):
        return self.value < self._check(other).value

    def __le__(self, other):
        return self.value <= self._check(other).value

    def __gt__(self, other):
        return self.value > self._check(other).value

    def __ge__(self, other):
        return self.value >= self._check(other).value

    def __float__(self):
        return self.value

    def __str__(self):
        return format_quantity(self)


def _split_unit(token: str, text: str, pos: int) -> tuple[int, str]:
    token = _UNIT_ALIASES.get(token, token)
    if token in UNITS:
        return 0, token
    head, rest = token[:1], token[1:]
    head = _PREFIX_ALIASES.get(head, head)
    rest = _UNIT_ALIASES.get(rest, rest)
    if head in PREFIXES and rest in UNITS and rest not in _NO_PREFIX:
        return PREFIXES[head], rest
    raise ParseError(f"unknown unit {token!r}", text, pos)


def parse_quantity(text: str, expect: Optional[str] = None) -> Quantity:
    """Parse ``<number><prefix><unit>`` into a :class:`Quantity` in base SI.

    ``expect`` optionally names the required unit; a mismatch raises
    :class:`DimensionError`.
    """
    if not isinstance(text, str):
        raise ParseError("expected text", str(text), 0)
    m = _NUMBER.match(text)
    if not m:
        pos = len(text) - len(text.lstrip())
        raise ParseError("expected a number", text, pos)
    number = Decimal(m.group(1))
    pos = m.end()
    token = text[pos:].rstrip()
    exp, unit = _split_unit(token, text, pos) if token else (0, "")
    value = float(number.scaleb(exp))
    if expect is not None and unit != expect:
        raise DimensionError(f"expected unit {expect or 'dimensionless'!r}, got {unit or 'dimensionless'!r} in {text!r}")
    return Quantity(value, unit)


def _decimal_text(d: Decimal) -> str:
    d = d.normalize()
    if d == 0:
        return "0"
    if -7 < d.adjusted() < 7:
        return format(d, "f")
    return format(d, "e").replace("E", "e").replace("e+", "e")


def format_quantity(q: Quantity) -> str:
    """Render ``q`` with an engineering prefix.  Exact inverse of :func:`parse_quantity`."""
    v = q.value
    if v != v or v in (float("inf"), float("-inf")):
        return f"{v}{q.unit}"
    d = Decimal(repr(v))
    if q.unit in _NO_PREFIX or v == 0:
        return _decimal_text(d) + q.unit
    exp3 = (d.copy_abs().adjusted() // 3) * 3
    exp3 = max(min(exp3, max(PREFIXES.values())), min(PREFIXES.values()))
    if exp3 == 0:
        return _decimal_text(d) + q.unit
    return _decimal_text(d.scaleb(-exp3)) + _EXP_TO_PREFIX[exp3] + q.unit


# --------------------------------------------------------------------------
# ion species


@dataclass(frozen=True)
class IonSpecies:
    symbol: str
    mass: float
    charge: float
    qubit_frequency: Optional[float] = None


# Neutral atomic masses (AME2020, in u).  The singly charged ion mass is the
# atomic mass minus one electron mass.
_ATOMIC_MASS_U = {
    "Be-9": 9.012183065,
    "Mg-24": 23.985041697,
    "Ca-40": 39.962590863,
    "Sr-87": 86.908877497,
    "Ba-138": 137.905247237,
    "Yb-171": 170.936331515,
}

_QUBIT_FREQ = {"Yb-171": 12.6e9}

SPECIES = {
    sym: IonSpecies(sym, m_u * u - CONSTANTS.m_e, e, _QUBIT_FREQ.get(sym))
    for sym, m_u in _ATOMIC_MASS_U.items()
}


def lookup_ion(symbol: str) -> IonSpecies:
    try:
        return SPECIES[symbol]
    except KeyError:
        hint = " (magnesium is registered as Mg-24)" if symbol == "Mg-12" else ""
        raise NotFoundError(f"unknown ion species {symbol!r}{hint}; registered: {', '.join(SPECIES)}") from None
