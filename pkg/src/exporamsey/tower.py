"""Exact canonical arithmetic on naturals of the form root**exponent.

A value n >= 2 is kept as a single symbolic level (root, exponent) where the
root is never itself a perfect power.  That canonical form is unique, so two
forms represent the same natural exactly when their fields are equal, and
equality, hashing and total order all work for numbers far too large to
materialize.

Ordering of two forms with different roots compares exponent * log2(root)
using exact rational interval bounds with adaptive precision doubling.
Distinct canonical forms have distinct values, so the intervals always
separate at some finite precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .config import Caps, DEFAULT_CAPS
from .errors import CapacityError, DomainError

LT, EQ, GT = -1, 0, 1

# Materialize both values for comparison below this bit length.
_EXPLICIT_CMP_BITS = 1 << 15
# Adaptive-precision ceiling; separation is guaranteed mathematically long
# before this, so hitting it indicates a bug rather than a hard input.
_MAX_CMP_PRECISION = 1 << 24


def ikth_root(n: int, k: int) -> int:
    """Largest x with x**k <= n, for n >= 0, k >= 1 (Newton, exact)."""
    if n < 0 or k < 1:
        raise DomainError("ikth_root requires n >= 0 and k >= 1")
    if k == 1 or n < 2:
        return n
    if k == 2:
        return math.isqrt(n)
    # Start from a power-of-two upper bound so the iteration descends.
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def perfect_power(n: int) -> tuple[int, int] | None:
    """Return (m, k) with m**k == n and k maximal (k >= 2), or None.

    Repeatedly strips exact k-th roots for k = 2, 3, 5, 7, ... until the
    remaining root admits none; the accumulated exponent is then maximal,
    which makes the root automatically perfect-power-free.
    """
    if n < 4:
        return None
    root, exp = n, 1
    k = 2
    while k <= root.bit_length() - 1:
        r = ikth_root(root, k)
        if r ** k == root:
            root, exp = r, exp * k
            continue  # the same k may divide the exponent again
        k = 3 if k == 2 else k + 2
    return None if exp == 1 else (root, exp)


def is_perfect_power(n: int) -> bool:
    return perfect_power(n) is not None


@total_ordering
@dataclass(frozen=True, slots=True)
class PowerForm:
    """Canonical root**exponent with a perfect-power-free root >= 2."""

    root: int
    exponent: int

    def __post_init__(self):
        if not isinstance(self.root, int) or not isinstance(self.exponent, int):
            raise DomainError("PowerForm fields must be integers")
        if self.root < 2:
            raise DomainError(f"PowerForm root must be >= 2, got {self.root}")
        if self.exponent < 1:
            raise DomainError(f"PowerForm exponent must be >= 1, got {self.exponent}")
        if is_perfect_power(self.root):
            raise DomainError(f"PowerForm root {self.root} is a perfect power")

    def __lt__(self, other) -> bool:
        if not isinstance(other, PowerForm):
            return NotImplemented
        return compare(self, other) == LT

    def __repr__(self) -> str:
        return f"PowerForm({self.root}, {self.exponent})"

    def __str__(self) -> str:
        return str(self.root) if self.exponent == 1 else f"{self.root}^{self.exponent}"


def normalize(n: int, caps: Caps = DEFAULT_CAPS) -> PowerForm:
    """Canonical power form of an explicit natural n >= 2."""
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"normalize requires an integer >= 2, got {n!r}")
    if n.bit_length() > caps.value_bit_cap:
        raise CapacityError(
            f"input bit length {n.bit_length()} exceeds value_bit_cap {caps.value_bit_cap}"
        )
    decomposed = perfect_power(n)
    if decomposed is None:
        return PowerForm(n, 1)
    root, exp = decomposed
    return PowerForm(root, exp)


def _value_bits_bounds(a: PowerForm) -> tuple[int, int]:
    """Certified [lo, hi] range for the bit length of a's value."""
    bl = a.root.bit_length()
    return a.exponent * (bl - 1) + 1, a.exponent * bl


def is_evaluable(a: PowerForm, caps: Caps = DEFAULT_CAPS) -> bool:
    return try_evaluate(a, caps) is not None


def try_evaluate(a: PowerForm, caps: Caps = DEFAULT_CAPS) -> int | None:
    """The explicit value of a, or None if it exceeds value_bit_cap."""
    lo, hi = _value_bits_bounds(a)
    if lo > caps.value_bit_cap:
        return None
    v = a.root ** a.exponent  # hi <= 2 * cap here, cheap to materialize
    return v if v.bit_length() <= caps.value_bit_cap else None


def evaluate(a: PowerForm, caps: Caps = DEFAULT_CAPS) -> int:
    """Materialize a's value; capacity error beyond value_bit_cap."""
    v = try_evaluate(a, caps)
    if v is None:
        raise CapacityError(
            f"value of {a} exceeds value_bit_cap {caps.value_bit_cap}"
        )
    return v


def power(a: PowerForm, b: PowerForm, caps: Caps = DEFAULT_CAPS) -> PowerForm:
    """Canonical form of a**value(b); b must be explicitly evaluable."""
    vb = try_evaluate(b, caps)
    if vb is None:
        raise CapacityError("symbolic exponent unsupported")
    new_exp = a.exponent * vb
    if new_exp.bit_length() > caps.exp_bit_cap:
        raise CapacityError(
            f"result exponent bit length {new_exp.bit_length()} exceeds "
            f"exp_bit_cap {caps.exp_bit_cap}"
        )
    return PowerForm(a.root, new_exp)


def _log2_bounds(r: int, prec: int) -> tuple[Fraction, Fraction]:
    """Certified rational bounds lo <= log2(r) <= hi with width ~ 2**(1-prec).

    Squares r `prec` times keeping an s-bit mantissa with outward rounding,
    then reads the binary logarithm off the bit length: for the final bounds
    L <= r**(2**prec) <= H, log2 L >= bitlen(L) - 1 and log2 H <= bitlen(H).
    """
    s = prec + 16
    lo_m = hi_m = r
    lo_e = hi_e = 0
    for _ in range(prec):
        lo_m *= lo_m
        lo_e *= 2
        hi_m *= hi_m
        hi_e *= 2
        ls = lo_m.bit_length() - s
        if ls > 0:
            lo_m >>= ls
            lo_e += ls
        hs = hi_m.bit_length() - s
        if hs > 0:
            hi_m = -((-hi_m) >> hs)  # ceil shift keeps the upper bound valid
            hi_e += hs
    scale = 1 << prec
    return (
        Fraction(lo_m.bit_length() - 1 + lo_e, scale),
        Fraction(hi_m.bit_length() + hi_e, scale),
    )


def compare(a: PowerForm, b: PowerForm) -> int:
    """Total order by value: LT, EQ or GT.  EQ iff canonical forms equal."""
    if a.root == b.root:
        if a.exponent == b.exponent:
            return EQ
        return LT if a.exponent < b.exponent else GT
    lo_a, hi_a = _value_bits_bounds(a)
    lo_b, hi_b = _value_bits_bounds(b)
    if lo_a > hi_b:
        return GT
    if lo_b > hi_a:
        return LT
    if hi_a <= _EXPLICIT_CMP_BITS and hi_b <= _EXPLICIT_CMP_BITS:
        va = a.root ** a.exponent
        vb = b.root ** b.exponent
        if va < vb:
            return LT
        if va > vb:
            return GT
        return EQ  # unreachable for canonical forms with distinct roots
    prec = 32
    while prec <= _MAX_CMP_PRECISION:
        ra_lo, ra_hi = _log2_bounds(a.root, prec)
        rb_lo, rb_hi = _log2_bounds(b.root, prec)
        if a.exponent * ra_hi < b.exponent * rb_lo:
            return LT
        if b.exponent * rb_hi < a.exponent * ra_lo:
            return GT
        prec <<= 1
    raise ArithmeticError(f"comparison precision exhausted for {a} vs {b}")


def sorted_forms(forms) -> list[PowerForm]:
    """Ascending value order (canonical forms, so the order is strict)."""
    return sorted(forms)


def powerform_record(a: PowerForm, caps: Caps = DEFAULT_CAPS) -> dict:
    """JSON record with exact decimal strings; "value" is null when symbolic."""
    v = try_evaluate(a, caps)
    return {
        "root": str(a.root),
        "exp": str(a.exponent),
        "value": str(v) if v is not None else None,
    }


def powerform_from_record(rec: dict) -> PowerForm:
    try:
        root = int(rec["root"])
        exp = int(rec["exp"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed PowerForm record: {rec!r}") from exc
    return PowerForm(root, exp)


def vertex_label(a: PowerForm, caps: Caps = DEFAULT_CAPS) -> str:
    """Decimal string when evaluable, else "root^exp"."""
    v = try_evaluate(a, caps)
    return str(v) if v is not None else f"{a.root}^{a.exponent}"
