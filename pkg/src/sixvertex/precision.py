"""Binary-precision plumbing on top of mpmath.

Every public operation in this package takes an explicit :class:`Precision`
instead of relying on the caller to have configured ``mpmath.mp``.  Internally
computations run with a guard margin and results are rounded back to the
requested width, so documented error bounds are of the form 2**(-bits+g) with
a small g.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf

# Extra working bits used inside kernels.  All advertised error bounds assume
# at most 8 guard digits are lost, so 32 leaves ample slack.
GUARD_BITS = 32


@dataclass(frozen=True)
class Precision:
    """Binary precision of real arithmetic (mantissa bits)."""

    bits: int = 256

    def __post_init__(self):
        if self.bits < 64:
            raise ValueError("Precision.bits must be >= 64")

    def work(self, extra: int = GUARD_BITS):
        """Context manager running the enclosed block at bits+extra."""
        return mp.workprec(self.bits + extra)

    @property
    def eps(self):
        """2**(-bits)."""
        return mpf(2) ** (-self.bits)

    def tail_tol(self):
        """Series truncation target, 2**(-bits-8) per the numerics policy."""
        return mpf(2) ** (-self.bits - 8)


def rounded(x, p: Precision):
    """Round x to p.bits (mpmath re-rounds on unary plus)."""
    with mp.workprec(p.bits):
        return +x


def to_mpf(value, p: Precision):
    """Parse a number (decimal string preferred) directly at p.bits."""
    with p.work():
        return mpf(value)
