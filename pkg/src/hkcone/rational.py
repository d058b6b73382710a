"""Parsing and serialization of exact rationals.

Wire format: rationals are strings "p/q" in lowest terms with q > 0,
or bare integer strings; integers proper stay JSON integers.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PreconditionError


def parse_frac(value) -> Fraction:
    """Accept an int, a Fraction, or a "p/q" / "p" string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise PreconditionError(f"not a rational: {value!r}") from exc
    raise PreconditionError(f"not a rational: {value!r}")


def frac_str(value) -> str:
    f = Fraction(value)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def parse_vector(text: str, *, sep: str = ",") -> tuple[Fraction, ...]:
    """Parse "a,b,c" with rational entries."""
    parts = [p.strip() for p in text.split(sep)]
    if not parts or parts == [""]:
        raise PreconditionError("empty vector")
    return tuple(parse_frac(p) for p in parts)


def vector_strs(coords) -> list[str]:
    return [frac_str(c) for c in coords]
