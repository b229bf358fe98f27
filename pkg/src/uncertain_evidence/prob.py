"""Exact rationals, finite distributions and Dempster's rule of combination."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

from .errors import (
    DuplicateLabel,
    NegativeMass,
    NonNormalized,
    SupportMismatch,
    TotalConflict,
)

__all__ = [
    "Dist",
    "dempster_combine",
    "format_rational",
    "make_dist",
    "point_mass",
    "to_rational",
    "uniform",
]


def to_rational(value) -> Fraction:
    """Coerce ``value`` to a :class:`~fractions.Fraction` without ever going through a float.

    Accepts ints, rationals and strings such as ``"3/4"`` or ``"2"``.
    Floats are refused since they are rarely the value the user meant.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not probabilities")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"cannot use {type(value).__name__} {value!r} as an exact rational")


def format_rational(value: Fraction, decimal: int | None = None) -> str:
    """Render ``value`` as ``p/q`` (or ``p`` for integers).

    With ``decimal=N`` the value is rounded half-to-even to ``N`` digits
    after the point, using integer arithmetic only.
    """
    value = Fraction(value)
    if decimal is None:
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if decimal < 0:
        raise ValueError("decimal digits must be >= 0")
    sign = "-" if value < 0 else ""
    num, den = abs(value.numerator) * 10**decimal, value.denominator
    q, r = divmod(num, den)
    if 2 * r > den or (2 * r == den and q % 2 == 1):
        q += 1
    if q == 0:
        sign = ""
    digits = str(q).rjust(decimal + 1, "0")
    if decimal == 0:
        return sign + digits
    return f"{sign}{digits[:-decimal]}.{digits[-decimal:]}"


@dataclass(frozen=True)
class Dist:
    """A probability distribution over a finite, lexicographically ordered label set.

    Masses are exact and sum to exactly one. Instances are immutable and
    hashable; two distributions are equal iff they have the same support and
    the same masses.
    """

    labels: tuple[str, ...]
    masses: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.masses):
            raise ValueError("labels and masses differ in length")
        if not self.labels:
            raise NonNormalized("a distribution needs at least one label")
        if len(set(self.labels)) != len(self.labels):
            seen, dups = set(), []
            for label in self.labels:
                if label in seen:
                    dups.append(label)
                seen.add(label)
            raise DuplicateLabel(f"duplicate label(s): {', '.join(sorted(set(dups)))}")
        if list(self.labels) != sorted(self.labels):
            raise ValueError("labels must be sorted; use make_dist()")
        for label, mass in zip(self.labels, self.masses):
            if not isinstance(mass, Fraction):
                raise TypeError(f"mass of {label!r} is not a Fraction")
            if mass < 0:
                raise NegativeMass(f"negative mass {format_rational(mass)} on {label!r}")
        total = sum(self.masses, Fraction(0))
        if total != 1:
            raise NonNormalized(f"masses sum to {format_rational(total)}, not 1")

    @classmethod
    def from_mapping(cls, masses: Mapping[str, object]) -> Dist:
        return make_dist(list(masses), list(masses.values()))

    def __getitem__(self, label: str) -> Fraction:
        try:
            return self.masses[self.labels.index(label)]
        except ValueError:
            raise KeyError(label) from None

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)

    def __contains__(self, label):
        return label in self.labels

    def items(self):
        return zip(self.labels, self.masses)

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self.items())

    def mass_of(self, labels: Iterable[str]) -> Fraction:
        """Probability of an event, given as a collection of labels."""
        return sum((self[label] for label in set(labels)), Fraction(0))

    def __repr__(self):
        body = ", ".join(f"{k}: {format_rational(v)}" for k, v in self.items())
        return f"Dist({{{body}}})"


def make_dist(labels: Iterable[str], masses: Iterable[object]) -> Dist:
    """Build a :class:`Dist` from parallel label / mass lists.

    >>> make_dist(["tails", "heads"], [0, 1])
    Dist({heads: 1, tails: 0})
    """
    labels = [str(label) for label in labels]
    masses = [to_rational(m) for m in masses]
    if len(labels) != len(masses):
        raise ValueError(f"{len(labels)} labels but {len(masses)} masses")
    if len(set(labels)) != len(labels):
        dups = sorted({label for label in labels if labels.count(label) > 1})
        raise DuplicateLabel(f"duplicate label(s): {', '.join(dups)}")
    pairs = sorted(zip(labels, masses))
    return Dist(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))


def uniform(labels: Iterable[str]) -> Dist:
    labels = list(labels)
    return make_dist(labels, [Fraction(1, len(labels))] * len(labels))


def point_mass(labels: Iterable[str], at: str) -> Dist:
    labels = list(labels)
    if at not in labels:
        raise KeyError(at)
    return make_dist(labels, [1 if label == at else 0 for label in labels])


def dempster_combine(d1: Dist, d2: Dist) -> Dist:
    """Pointwise product of two distributions on the same support, renormalized.

    Raises :class:`TotalConflict` if the product vanishes everywhere.
    """
    if d1.labels != d2.labels:
        raise SupportMismatch(f"supports differ: {d1.labels} vs {d2.labels}")
    products = [a * b for a, b in zip(d1.masses, d2.masses)]
    norm = sum(products, Fraction(0))
    if norm == 0:
        raise TotalConflict("combination undefined: the two distributions have disjoint supports")
    return Dist(d1.labels, tuple(p / norm for p in products))
