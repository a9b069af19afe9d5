"""Bundled surface models.

Each preset fixes a base-surface lattice together with a default ample
class used when the caller does not pass one explicitly.

k3_quartic    quartic K3 base: rho = 1, H² = 4, K_S = 0.
enriques      Enriques base: rho = 1 slice with H² = 2; K_S is torsion,
              hence numerically trivial, which is all this package sees.
general_demo  P¹×P¹ base with its full rank-2 lattice and nonzero
              canonical class.  The Weierstrass threefold over it is
              K-trivial (omega matches the canonical), but K_S itself is
              not numerically trivial, so the stability machinery refuses
              this model; it exists for ring and transform demos.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ring import SurfaceModel


@dataclass(frozen=True)
class Preset:
    name: str
    model: SurfaceModel
    ample: tuple[Fraction, ...]
    blurb: str


def _k3_quartic() -> Preset:
    model = SurfaceModel(
        picard_rank=1,
        gram=((4,),),
        canonical=(Fraction(0),),
        k_trivial=True,
        omega_class=(Fraction(0),),
    )
    return Preset("k3_quartic", model, (Fraction(1),), "quartic K3 base, H²=4")


def _enriques() -> Preset:
    model = SurfaceModel(
        picard_rank=1,
        gram=((2,),),
        canonical=(Fraction(0),),
        k_trivial=True,
        omega_class=(Fraction(0),),
    )
    return Preset("enriques", model, (Fraction(1),), "Enriques base, H²=2")


def _general_demo() -> Preset:
    model = SurfaceModel(
        picard_rank=2,
        gram=((0, 1), (1, 0)),
        canonical=(Fraction(-2), Fraction(-2)),
        k_trivial=False,
        omega_class=(Fraction(-2), Fraction(-2)),
    )
    return Preset(
        "general_demo",
        model,
        (Fraction(1), Fraction(1)),
        "P¹×P¹ base, nonzero canonical; ring/transform demos only",
    )


PRESETS: dict[str, Preset] = {
    p.name: p for p in (_k3_quartic(), _enriques(), _general_demo())
}


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise ValueError(f"unknown preset {name!r} (known: {known})") from None
