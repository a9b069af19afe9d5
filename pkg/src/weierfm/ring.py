"""Exact numerical intersection calculus for Weierstrass elliptic threefolds.

The geometry is a flat elliptic fibration p: X -> S with a section Θ over
a smooth projective surface S.  Numerically, everything we need lives in
two truncated rings:

* on S, a class is (r, d, s): a multiple of the unit in degree 0, a vector
  d of Picard coordinates in degree 2, and a multiple of the point class
  in degree 4.  Products of the middle parts go through a fixed symmetric
  Gram matrix, and the point class integrates to 1.

* on X, the section splits the cohomology, so a class is a pair
  Θ·p*(alpha) + p*(beta) of surface classes.  The single relation worth
  remembering is

      Θ² = Θ · p*K_S

  which lets every product be rewritten back into split form.  Degree-8
  terms on a threefold vanish, so alpha and beta truncate exactly like
  surface classes and no information is lost.

Divisors on X get their own lightweight type (a·Θ + p*delta) because the
transform calculus in :mod:`weierfm.fm` only ever needs characters up to
ch1; ``exp`` turns a divisor into the full threefold class when the ring
has to take over.

All coefficients are ``fractions.Fraction``; there is no floating point
in this module or anywhere downstream of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ModelMismatchError
from .rationals import RationalLike, as_rational, as_rational_vector

_HALF = Fraction(1, 2)
_SIXTH = Fraction(1, 6)


@dataclass(frozen=True)
class SurfaceModel:
    """Numerical model of the base surface S.

    picard_rank   -- number of Picard coordinates (rho >= 1)
    gram          -- rho x rho symmetric integer intersection matrix
    canonical     -- Picard coordinates of K_S
    k_trivial     -- declares K_S numerically trivial (then canonical = 0)
    omega_class   -- Picard coordinates of c1(omega), the line bundle on S
                     controlling the relative dualizing sheaf of X -> S
    """

    picard_rank: int
    gram: tuple[tuple[int, ...], ...]
    canonical: tuple[Fraction, ...]
    k_trivial: bool
    omega_class: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        rho = self.picard_rank
        if not isinstance(rho, int) or rho < 1:
            raise ValueError(f"picard_rank must be a positive integer, got {rho!r}")
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        if len(gram) != rho or any(len(row) != rho for row in gram):
            raise ValueError(f"gram must be a {rho}x{rho} matrix")
        for i in range(rho):
            for j in range(rho):
                if gram[i][j] != gram[j][i]:
                    raise ValueError("gram must be symmetric")
        canonical = as_rational_vector(self.canonical)
        omega = as_rational_vector(self.omega_class)
        if len(canonical) != rho:
            raise ValueError(f"canonical must have length {rho}")
        if len(omega) != rho:
            raise ValueError(f"omega_class must have length {rho}")
        if self.k_trivial and any(c != 0 for c in canonical):
            raise ValueError("k_trivial surface must have canonical = 0")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "canonical", canonical)
        object.__setattr__(self, "omega_class", omega)

    # -- derived facts ---------------------------------------------------

    @property
    def x_k_trivial(self) -> bool:
        """Whether the total space X is numerically K-trivial.

        K_X = p*(K_S - c1(omega)) on a Weierstrass model, so the condition
        is exactly omega_class == canonical.
        """
        return self.omega_class == self.canonical

    def pair(self, u: tuple[Fraction, ...], v: tuple[Fraction, ...]) -> Fraction:
        """Gram pairing u·v of two Picard vectors."""
        total = Fraction(0)
        for i, ui in enumerate(u):
            if ui == 0:
                continue
            row = self.gram[i]
            for j, vj in enumerate(v):
                if vj != 0 and row[j] != 0:
                    total += ui * row[j] * vj
        return total

    # -- class factories -------------------------------------------------

    def zero_vector(self) -> tuple[Fraction, ...]:
        return (Fraction(0),) * self.picard_rank

    def surface(self, r: RationalLike = 0, d=None, s: RationalLike = 0) -> "SurfaceClass":
        dvec = self.zero_vector() if d is None else as_rational_vector(d)
        return SurfaceClass(self, as_rational(r), dvec, as_rational(s))

    def unit_surface(self) -> "SurfaceClass":
        return self.surface(r=1)

    def point_surface(self) -> "SurfaceClass":
        return self.surface(s=1)

    def divisor_surface(self, d) -> "SurfaceClass":
        return self.surface(d=d)

    def canonical_surface(self) -> "SurfaceClass":
        return self.surface(d=self.canonical)

    def zero_x(self) -> "ThreefoldClass":
        z = self.surface()
        return ThreefoldClass(z, z)

    def unit_x(self) -> "ThreefoldClass":
        return ThreefoldClass(self.surface(), self.unit_surface())

    def theta(self) -> "ThreefoldClass":
        """The section class Θ."""
        return ThreefoldClass(self.unit_surface(), self.surface())

    def fiber(self) -> "ThreefoldClass":
        """The fiber class f = p*[pt]."""
        return ThreefoldClass(self.surface(), self.point_surface())

    def divisor_x(self, a: RationalLike = 0, delta=None) -> "DivisorClassX":
        dvec = self.zero_vector() if delta is None else as_rational_vector(delta)
        return DivisorClassX(self, as_rational(a), dvec)


def _check_same_model(left, right) -> None:
    if left.model != right.model:
        raise ModelMismatchError(
            "cannot combine classes over different surface models"
        )


@dataclass(frozen=True)
class SurfaceClass:
    """Truncated numerical class r + d + s·[pt] on the base surface."""

    model: SurfaceModel
    r: Fraction
    d: tuple[Fraction, ...]
    s: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "r", as_rational(self.r))
        object.__setattr__(self, "s", as_rational(self.s))
        d = as_rational_vector(self.d)
        if len(d) != self.model.picard_rank:
            raise ValueError(
                f"degree-2 part must have length {self.model.picard_rank}"
            )
        object.__setattr__(self, "d", d)

    def __add__(self, other: "SurfaceClass") -> "SurfaceClass":
        _check_same_model(self, other)
        return SurfaceClass(
            self.model,
            self.r + other.r,
            tuple(a + b for a, b in zip(self.d, other.d)),
            self.s + other.s,
        )

    def __sub__(self, other: "SurfaceClass") -> "SurfaceClass":
        return self + (-other)

    def __neg__(self) -> "SurfaceClass":
        return self.scale(-1)

    def scale(self, c: RationalLike) -> "SurfaceClass":
        c = as_rational(c)
        return SurfaceClass(
            self.model, c * self.r, tuple(c * x for x in self.d), c * self.s
        )

    def __mul__(self, other):
        if isinstance(other, SurfaceClass):
            return surface_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def integrate(self) -> Fraction:
        """Degree of the class: coefficient of [pt] (normalized to 1)."""
        return self.s

    def is_zero(self) -> bool:
        return self.r == 0 and self.s == 0 and all(x == 0 for x in self.d)


def surface_mul(u: SurfaceClass, v: SurfaceClass) -> SurfaceClass:
    """Cup product on S, truncated above degree 4."""
    _check_same_model(u, v)
    model = u.model
    d = tuple(u.r * b + v.r * a for a, b in zip(u.d, v.d))
    s = u.r * v.s + v.r * u.s + model.pair(u.d, v.d)
    return SurfaceClass(model, u.r * v.r, d, s)


@dataclass(frozen=True)
class ThreefoldClass:
    """Split class Θ·p*(alpha) + p*(beta) on the threefold X."""

    alpha: SurfaceClass
    beta: SurfaceClass

    def __post_init__(self) -> None:
        _check_same_model(self.alpha, self.beta)

    @property
    def model(self) -> SurfaceModel:
        return self.alpha.model

    def __add__(self, other: "ThreefoldClass") -> "ThreefoldClass":
        return ThreefoldClass(self.alpha + other.alpha, self.beta + other.beta)

    def __sub__(self, other: "ThreefoldClass") -> "ThreefoldClass":
        return ThreefoldClass(self.alpha - other.alpha, self.beta - other.beta)

    def __neg__(self) -> "ThreefoldClass":
        return ThreefoldClass(-self.alpha, -self.beta)

    def scale(self, c: RationalLike) -> "ThreefoldClass":
        return ThreefoldClass(self.alpha.scale(c), self.beta.scale(c))

    def __mul__(self, other):
        if isinstance(other, ThreefoldClass):
            return x_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def integrate(self) -> Fraction:
        return x_integrate(self)

    def is_zero(self) -> bool:
        return self.alpha.is_zero() and self.beta.is_zero()


def x_mul(x: ThreefoldClass, y: ThreefoldClass) -> ThreefoldClass:
    """Product on X, folding Θ² back in via Θ² = Θ·p*K_S.

    (Θa + b)(Θa' + b') = Θ·(K_S·a·a' + a·b' + a'·b) + b·b'
    with all products on the right taken on the surface.
    """
    _check_same_model(x.alpha, y.alpha)
    model = x.model
    k = model.canonical_surface()
    alpha = (
        surface_mul(surface_mul(k, x.alpha), y.alpha)
        + surface_mul(x.alpha, y.beta)
        + surface_mul(y.alpha, x.beta)
    )
    beta = surface_mul(x.beta, y.beta)
    return ThreefoldClass(alpha, beta)


def x_integrate(x: ThreefoldClass) -> Fraction:
    """Integral over X: only Θ·p*[pt] carries degree (∫_X Θ·p*[pt] = 1)."""
    return x.alpha.s


def pullback(u: SurfaceClass) -> ThreefoldClass:
    """p* of a surface class."""
    return ThreefoldClass(u.model.surface(), u)


def pushforward(x: ThreefoldClass) -> SurfaceClass:
    """p_* of a split class; kills the pulled-back part, drops Θ."""
    return x.alpha


@dataclass(frozen=True)
class DivisorClassX:
    """Divisor a·Θ + p*delta on X, the shape every ch1 in this package has."""

    model: SurfaceModel
    a: Fraction
    delta: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", as_rational(self.a))
        delta = as_rational_vector(self.delta)
        if len(delta) != self.model.picard_rank:
            raise ValueError(
                f"delta must have length {self.model.picard_rank}"
            )
        object.__setattr__(self, "delta", delta)

    def __add__(self, other: "DivisorClassX") -> "DivisorClassX":
        _check_same_model(self, other)
        return DivisorClassX(
            self.model,
            self.a + other.a,
            tuple(x + y for x, y in zip(self.delta, other.delta)),
        )

    def __sub__(self, other: "DivisorClassX") -> "DivisorClassX":
        return self + (-other)

    def __neg__(self) -> "DivisorClassX":
        return self.scale(-1)

    def scale(self, c: RationalLike) -> "DivisorClassX":
        c = as_rational(c)
        return DivisorClassX(
            self.model, c * self.a, tuple(c * x for x in self.delta)
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.a == 0 and all(x == 0 for x in self.delta)

    def as_threefold(self) -> ThreefoldClass:
        model = self.model
        return ThreefoldClass(
            model.surface(r=self.a), model.divisor_surface(self.delta)
        )

    def exp(self) -> ThreefoldClass:
        return exp_divisor(self)

    def render(self) -> str:
        """Human-readable form, e.g. ``-Θ + p*[1/2, -1]``."""
        pieces: list[str] = []
        if self.a != 0:
            if self.a == 1:
                pieces.append("Θ")
            elif self.a == -1:
                pieces.append("-Θ")
            else:
                pieces.append(f"{self.a}Θ")
        if any(x != 0 for x in self.delta):
            vec = ", ".join(str(x) for x in self.delta)
            joiner = " + " if pieces else ""
            pieces.append(f"{joiner}p*[{vec}]")
        return "".join(pieces) if pieces else "0"


def fiber_degree(c1: DivisorClassX) -> Fraction:
    """Degree of the divisor on the elliptic fiber: the Θ coefficient."""
    return c1.a


def exp_divisor(divisor: DivisorClassX) -> ThreefoldClass:
    """1 + D + D²/2 + D³/6 for a divisor D; D⁴ = 0 in degrees on X."""
    model = divisor.model
    d1 = divisor.as_threefold()
    d2 = x_mul(d1, d1)
    d3 = x_mul(d2, d1)
    return model.unit_x() + d1 + d2.scale(_HALF) + d3.scale(_SIXTH)
