"""Relative Fourier-Mukai transform calculus, truncated at ch1.

The transform is the relative Poincaré functor of the elliptic fibration,
normalized along the section.  For the line bundles O_X(mΘ) ⊗ p*N this
package tracks, everything needed downstream is:

* the concentration degree: m > 0 transforms to a sheaf in degree 0
  (WIT0), m <= 0 to one in degree 1 (WIT1);
* the truncated character (ch0, ch1) of the transform,

      ch0 = m,
      ch1 = -Θ - (m/2)·c + m·p*N,        c := -p*K_S,     (m != 0)

  and (ch0, ch1) = (0, Θ) for m = 0, where the transform is the ideal
  bookkeeping of a rank-0 sheaf supported on the section;
* slopes ∫ ch1·ω² / ch0 against polarizations ω = tΘ + s·p*h.

Two normalizations of the kernel are offered.  They differ by a pullback
of a power of the surface bundle omega, so their sole downstream effect
is the twist L that enters the duality comparison:

    PAPER      L = omega⁻¹   -> c1 = -omega_class
    ALTERNATE  L = omega⁻³   -> c1 = -3·omega_class

On a K-trivial threefold over a numerically K-trivial base both twists
vanish and the two kernels are indistinguishable at the level of classes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    HypothesisViolationError,
    ModelMismatchError,
    UndefinedSlopeError,
)
from .rationals import RationalLike, as_rational, as_rational_vector
from .ring import DivisorClassX, SurfaceModel, x_integrate, x_mul

_HALF = Fraction(1, 2)


class WitType(enum.Enum):
    WIT0 = "WIT0"
    WIT1 = "WIT1"


class KernelChoice(enum.Enum):
    PAPER = "paper"
    ALTERNATE = "alternate"

    def l_class(self, model: SurfaceModel) -> tuple[Fraction, ...]:
        """c1 of the duality twist L on the base, as Picard coordinates."""
        factor = -1 if self is KernelChoice.PAPER else -3
        return tuple(factor * w for w in model.omega_class)


@dataclass(frozen=True)
class LineBundleX:
    """O_X(mΘ) ⊗ p*N with N given by its Picard coordinates (the twist)."""

    model: SurfaceModel
    m: int
    twist: tuple[Fraction, ...] | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.m, int) or isinstance(self.m, bool):
            raise TypeError("m must be an integer")
        twist = (
            self.model.zero_vector()
            if self.twist is None
            else as_rational_vector(self.twist)
        )
        if len(twist) != self.model.picard_rank:
            raise ValueError(
                f"twist must have length {self.model.picard_rank}"
            )
        object.__setattr__(self, "twist", twist)

    def dual(self) -> "LineBundleX":
        return LineBundleX(self.model, -self.m, tuple(-t for t in self.twist))

    def c1(self) -> DivisorClassX:
        return DivisorClassX(self.model, Fraction(self.m), self.twist)

    def render(self) -> str:
        return f"O_X({self.m}Θ)" + (
            "" if all(t == 0 for t in self.twist)
            else " ⊗ p*[" + ", ".join(str(t) for t in self.twist) + "]"
        )


@dataclass(frozen=True)
class TruncatedChar:
    """Character truncated after ch1; all the slope theory ever reads."""

    ch0: Fraction
    ch1: DivisorClassX

    def __post_init__(self) -> None:
        object.__setattr__(self, "ch0", as_rational(self.ch0))

    @property
    def model(self) -> SurfaceModel:
        return self.ch1.model

    def twist_by_surface(self, c1_vector) -> "TruncatedChar":
        """Tensor with the pullback of a line bundle on S.

        Only ch1 moves at this truncation: ch1 += ch0 · p*c1.
        """
        vec = as_rational_vector(c1_vector)
        bump = DivisorClassX(self.model, Fraction(0), vec).scale(self.ch0)
        return TruncatedChar(self.ch0, self.ch1 + bump)

    def negate(self) -> "TruncatedChar":
        """Character of the same object shifted by one (odd shift)."""
        return TruncatedChar(-self.ch0, -self.ch1)


@dataclass(frozen=True)
class TransformResult:
    char: TruncatedChar
    wit: WitType
    locally_free: bool


@dataclass(frozen=True)
class Polarization:
    """ω = tΘ + s·p*h with t, s > 0 and h² > 0 (ampleness is asserted
    by the caller; the quadratic check is the cheap necessary part)."""

    model: SurfaceModel
    t: Fraction
    s: Fraction
    h: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        t = as_rational(self.t)
        s = as_rational(self.s)
        if t <= 0 or s <= 0:
            raise ValueError("polarization parameters t, s must be positive")
        h = as_rational_vector(self.h)
        if len(h) != self.model.picard_rank:
            raise ValueError(f"h must have length {self.model.picard_rank}")
        if self.model.pair(h, h) <= 0:
            raise ValueError("h·h must be positive for an ample class")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "h", h)

    def omega(self) -> DivisorClassX:
        return DivisorClassX(
            self.model, self.t, tuple(self.s * x for x in self.h)
        )

    def h_squared(self) -> Fraction:
        return self.model.pair(self.h, self.h)

    def scaled(self, factor: RationalLike) -> "Polarization":
        f = as_rational(factor)
        return Polarization(
            self.model, f * self.t, f * self.s, self.h
        )


def wit_classify(lb: LineBundleX) -> WitType:
    """Concentration degree of the transform: WIT0 iff m > 0."""
    return WitType.WIT0 if lb.m > 0 else WitType.WIT1


def transform_char(
    lb: LineBundleX, kernel: KernelChoice = KernelChoice.PAPER
) -> TransformResult:
    """Truncated character of the transform of O_X(mΘ) ⊗ p*N.

    The kernel choice does not move the character at this truncation (the
    two kernels differ by a pullback from the base whose effect is logged
    through the duality twist instead); the parameter is accepted so call
    sites read uniformly with :func:`commutativity_check`.
    """
    del kernel
    model = lb.model
    m = lb.m
    if m == 0:
        # Rank-0 transform supported on the section: (0, Θ).
        char = TruncatedChar(
            Fraction(0), DivisorClassX(model, Fraction(1), model.zero_vector())
        )
        return TransformResult(char, WitType.WIT1, locally_free=False)
    half_mk = tuple(_HALF * m * k for k in model.canonical)
    delta = tuple(hk + m * tw for hk, tw in zip(half_mk, lb.twist))
    ch1 = DivisorClassX(model, Fraction(-1), delta)
    return TransformResult(
        TruncatedChar(Fraction(m), ch1), wit_classify(lb), locally_free=True
    )


def dual_char(v: TruncatedChar) -> TruncatedChar:
    """Character of the derived dual at this truncation: ch1 flips sign."""
    return TruncatedChar(v.ch0, -v.ch1)


def slope(v: TruncatedChar, pol: Polarization) -> Fraction:
    """Slope ∫_X ch1·ω² / ch0 for ω the polarization divisor."""
    if v.model != pol.model:
        raise ModelMismatchError("character and polarization models differ")
    if v.ch0 == 0:
        raise UndefinedSlopeError("slope undefined for ch0 = 0")
    omega = pol.omega().as_threefold()
    numerator = x_integrate(x_mul(x_mul(v.ch1.as_threefold(), omega), omega))
    return numerator / v.ch0


def commutativity_check(
    lb: LineBundleX, kernel: KernelChoice = KernelChoice.PAPER
) -> bool:
    """Compare dual-then-transform against transform-then-dual.

    Left side: the dual of the transform's character.  Right side: the
    transform of the dual line bundle, twisted by the kernel's duality
    bundle p*L, then negated for the odd shift; the involution of the
    fibration acts trivially on all classes in play.  Exact equality of
    truncated characters is returned.
    """
    if lb.m == 0:
        raise HypothesisViolationError(
            "commutativity check needs m != 0 (rank-0 transforms shift differently)"
        )
    left = dual_char(transform_char(lb, kernel).char)
    right = (
        transform_char(lb.dual(), kernel)
        .char.twist_by_surface(kernel.l_class(lb.model))
        .negate()
    )
    return left == right
