"""Exact intersection-ring calculus and transform bookkeeping for
Weierstrass elliptic threefolds p: X -> S with a section Θ.

Everything is Fraction arithmetic; no floats enter anywhere.  The main
entry points:

- :mod:`weierfm.ring`: the truncated intersection ring of X,
- :mod:`weierfm.fm`: transform characters, slopes, duality checks,
- :mod:`weierfm.duality`: the two spectral-sequence pages and the
  closed-form duality verdicts they must reproduce,
- :mod:`weierfm.stability`: destabilizer certification and grid scans,
- :mod:`weierfm.presets`: ready-made surface models,
- :mod:`weierfm.serialize`: exact JSON in and out,
- :mod:`weierfm.cli`: the ``weierfm`` command.
"""

from .duality import (
    Conclusion,
    ConclusionKind,
    Forbidden,
    ForcedZero,
    Identification,
    PageGrid,
    ScenarioSolution,
    SheafScenario,
    ShortExact,
    Side,
    TermStatus,
    WitType,
    build_pages,
    compare_limits,
    degenerate,
    duality_decision,
    solve_scenario,
)
from .errors import (
    HypothesisViolationError,
    InfeasibleScenarioError,
    InternalCheckError,
    ModelMismatchError,
    UndefinedSlopeError,
    WeierfmError,
)
from .fm import (
    KernelChoice,
    LineBundleX,
    Polarization,
    TransformResult,
    TruncatedChar,
    commutativity_check,
    dual_char,
    slope,
    transform_char,
    wit_classify,
)
from .presets import PRESETS, Preset, get_preset
from .ring import (
    DivisorClassX,
    SurfaceClass,
    SurfaceModel,
    ThreefoldClass,
    exp_divisor,
    fiber_degree,
    pullback,
    pushforward,
    surface_mul,
    x_integrate,
    x_mul,
)
from .stability import (
    DestabilizerCandidate,
    EnumerationBounds,
    ScanResult,
    StabilityReport,
    TransformStabilityReport,
    Verdict,
    candidate_slope,
    certify,
    enumerate_candidates,
    target_slope,
    transform_stability,
)

__version__ = "0.1.0"

__all__ = [
    "Conclusion",
    "ConclusionKind",
    "DestabilizerCandidate",
    "DivisorClassX",
    "EnumerationBounds",
    "Forbidden",
    "ForcedZero",
    "HypothesisViolationError",
    "Identification",
    "InfeasibleScenarioError",
    "InternalCheckError",
    "KernelChoice",
    "LineBundleX",
    "ModelMismatchError",
    "PRESETS",
    "PageGrid",
    "Polarization",
    "Preset",
    "ScanResult",
    "ScenarioSolution",
    "SheafScenario",
    "ShortExact",
    "Side",
    "StabilityReport",
    "SurfaceClass",
    "SurfaceModel",
    "TermStatus",
    "ThreefoldClass",
    "TransformResult",
    "TransformStabilityReport",
    "TruncatedChar",
    "UndefinedSlopeError",
    "Verdict",
    "WeierfmError",
    "WitType",
    "build_pages",
    "candidate_slope",
    "certify",
    "commutativity_check",
    "compare_limits",
    "degenerate",
    "dual_char",
    "duality_decision",
    "enumerate_candidates",
    "exp_divisor",
    "fiber_degree",
    "get_preset",
    "pullback",
    "pushforward",
    "slope",
    "solve_scenario",
    "surface_mul",
    "target_slope",
    "transform_char",
    "transform_stability",
    "wit_classify",
    "x_integrate",
    "x_mul",
]
