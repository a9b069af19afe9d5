"""Two-page bookkeeping engine for dualizing transformed sheaves.

Setting: E is a coherent sheaf on the elliptic threefold X (dim X = n in
the bookkeeping; the geometry has n = 3 but nothing below cares), of
codimension c, satisfying one of the two WIT conditions, and the
dimension of its surviving transform differs from dim E by a declared
shift in {-1, 0, +1}.  Comparing the derived dual of the transform with
the transform of the derived dual produces two spectral sequences with
the same abutment:

  Left   E2[p,q] = Ext^q(Φ^{-p}E, O_X)                 -1 <= p <= 0
  Right  E2[p,q] = ι*(Φ^{q+1} Ext^p(E, O_X)) ⊗ p*L      -1 <= q <= 0

The engine never computes sheaves.  Each term carries a three-valued
status (Zero / NonZero / Unknown) plus a display label; the ι* and ⊗p*L
decorations ride along on labels and never influence propagation.  The
input facts are:

* transforms are concentrated in degrees 0 and 1, and the declared WIT
  type kills one Left column outright;
* the surviving transform has codimension exactly c - dim_shift, so its
  local Ext against O_X vanishes below that degree and is nonzero at it;
* Ext^p(E, O_X) vanishes for p < c, and E^D = Ext^c(E, O_X) is a nonzero
  sheaf, so its transform cannot vanish in both degrees: the two terms of
  the Right column p = c are jointly constrained.

Differentials move (p, q) to (p - r + 1, q + r) on these displays: they
shift the outer functor degree up by r, which leaves the two-row Right
band immediately (degeneration at page 2 always) and leaves the Left band
as soon as one column is dead.  After degeneration, equal total degree
p + q forces term-by-term relations between the two sides, which a small
fixpoint loop turns into Identification / ForcedZero / ShortExact facts,
or into a contradiction when the scenario is impossible.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

from .errors import InfeasibleScenarioError, InternalCheckError
from .fm import WitType


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


class TermStatus(enum.Enum):
    ZERO = "Zero"
    NONZERO = "NonZero"
    UNKNOWN = "Unknown"


@dataclass
class Term:
    status: TermStatus
    label: str


Pos = tuple[int, int]


def left_label(p: int, q: int) -> str:
    return f"Ext^{q}(Φ^{-p}E, O_X)"


def right_label(p: int, q: int) -> str:
    return f"ι*(Φ^{q + 1}Ext^{p}(E, O_X)) ⊗ p*L"


@dataclass(frozen=True)
class SheafScenario:
    """Dimension bookkeeping for one sheaf E on X.

    n          -- dimension of X (any positive integer)
    c          -- codimension of E, 0 <= c <= n
    wit        -- which single degree the transform of E lives in
    dim_shift  -- dim(surviving transform) - dim(E), in {-1, 0, +1};
                  this is an exact statement, not an inequality
    """

    n: int
    c: int
    wit: WitType
    dim_shift: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise InfeasibleScenarioError("n must be a positive integer")
        if not isinstance(self.c, int) or not 0 <= self.c <= self.n:
            raise InfeasibleScenarioError(
                f"codimension c={self.c!r} outside [0, {self.n}]"
            )
        if not isinstance(self.wit, WitType):
            raise InfeasibleScenarioError("wit must be a WitType")
        if self.dim_shift not in (-1, 0, 1):
            raise InfeasibleScenarioError("dim_shift must be -1, 0 or +1")
        if not 0 <= self.transform_codim <= self.n:
            raise InfeasibleScenarioError(
                f"transform codimension {self.transform_codim} outside "
                f"[0, {self.n}]: no sheaf on X can realize this shift"
            )

    @property
    def transform_codim(self) -> int:
        return self.c - self.dim_shift

    @property
    def surviving_column(self) -> int:
        """Left-page column of the surviving transform (p = -wit degree)."""
        return 0 if self.wit is WitType.WIT0 else -1

    @property
    def wit_degree(self) -> int:
        return 0 if self.wit is WitType.WIT0 else 1


@dataclass
class PageGrid:
    """One rectangular page of statuses.

    joint_nonzero lists groups of positions of which at least one must end
    up NonZero (used for the transform of E^D, which may vanish in either
    single degree but not both).
    """

    side: Side
    n: int
    p_range: tuple[int, int]
    q_range: tuple[int, int]
    terms: dict[Pos, Term]
    joint_nonzero: tuple[tuple[Pos, ...], ...] = ()
    page: int = 2

    def in_region(self, pos: Pos) -> bool:
        p, q = pos
        return (
            self.p_range[0] <= p <= self.p_range[1]
            and self.q_range[0] <= q <= self.q_range[1]
        )

    def status(self, pos: Pos) -> TermStatus:
        if not self.in_region(pos):
            return TermStatus.ZERO
        return self.terms[pos].status

    def copy(self) -> "PageGrid":
        return replace(
            self,
            terms={pos: Term(t.status, t.label) for pos, t in self.terms.items()},
        )

    def degrees(self) -> range:
        return range(
            self.p_range[0] + self.q_range[0],
            self.p_range[1] + self.q_range[1] + 1,
        )

    def live_on_diagonal(self, k: int) -> list[tuple[Pos, Term]]:
        out = []
        for q in range(self.q_range[1], self.q_range[0] - 1, -1):
            pos = (k - q, q)
            if self.in_region(pos) and self.terms[pos].status is not TermStatus.ZERO:
                out.append((pos, self.terms[pos]))
        return out

    def possible_arrows(self, r: int) -> list[tuple[Pos, Pos]]:
        """d_r candidates: both endpoints in-region and not Zero."""
        arrows = []
        for (p, q), term in self.terms.items():
            if term.status is TermStatus.ZERO:
                continue
            tgt = (p - r + 1, q + r)
            if self.in_region(tgt) and self.terms[tgt].status is not TermStatus.ZERO:
                arrows.append(((p, q), tgt))
        return arrows

    def max_differential_page(self) -> int:
        width = self.p_range[1] - self.p_range[0]
        height = self.q_range[1] - self.q_range[0]
        return max(width, height) + 2

    def is_settled(self) -> bool:
        """No differential can act on or after the current page."""
        return not any(
            self.possible_arrows(r)
            for r in range(max(2, self.page), self.max_differential_page() + 1)
        )

    def render(self) -> str:
        """Matrix display, top row = largest q, for CLI/demo output."""
        lines = [f"{self.side.value} page (E_{self.page})"]
        for q in range(self.q_range[1], self.q_range[0] - 1, -1):
            cells = []
            for p in range(self.p_range[0], self.p_range[1] + 1):
                term = self.terms[(p, q)]
                mark = {
                    TermStatus.ZERO: "0",
                    TermStatus.NONZERO: "*",
                    TermStatus.UNKNOWN: "?",
                }[term.status]
                cells.append(f"{mark} ({p},{q})")
            lines.append("  " + "   ".join(cells))
        return "\n".join(lines)


# -- derived relations ----------------------------------------------------


@dataclass(frozen=True)
class TermRef:
    side: Side
    pos: Pos
    label: str


@dataclass(frozen=True)
class Identification:
    """The two terms are the only survivors in their total degree, hence
    both compute the common limit and are identified."""

    degree: int
    left: TermRef
    right: TermRef

    def render(self) -> str:
        return f"[k={self.degree}] {self.left.label} ≅ {self.right.label}"


@dataclass(frozen=True)
class ForcedZero:
    degree: int
    term: TermRef

    def render(self) -> str:
        return f"[k={self.degree}] {self.term.label} = 0"


@dataclass(frozen=True)
class ShortExact:
    """0 -> sub -> mid -> quot -> 0 from the two-step limit filtration."""

    degree: int
    sub: TermRef
    mid: TermRef
    quot: TermRef

    def render(self) -> str:
        return (
            f"[k={self.degree}] 0 → {self.sub.label} → {self.mid.label}"
            f" → {self.quot.label} → 0"
        )


@dataclass(frozen=True)
class Forbidden:
    degree: int
    reason: str

    def render(self) -> str:
        return f"[k={self.degree}] contradiction: {self.reason}"


DerivedRelation = Identification | ForcedZero | ShortExact | Forbidden


class ConclusionKind(enum.Enum):
    DUAL_IS_WIT1 = "DualIsWIT1"
    DUAL_IDENTIFICATION = "DualIdentification"
    FORBIDDEN = "Forbidden"


@dataclass(frozen=True)
class Conclusion:
    kind: ConclusionKind
    statement: str
    via_dimension_only: bool = False


_DUAL_IS_WIT1_STATEMENT = "Φ^0(E^D) = 0, so E^D is WIT1"


def _identification_statement(wit: WitType) -> str:
    i = 0 if wit is WitType.WIT0 else 1
    return f"ι*(Φ^0(E^D)) ⊗ p*L = (Φ^{i}E)^D"


# -- page construction ----------------------------------------------------


def build_pages(scenario: SheafScenario) -> tuple[PageGrid, PageGrid]:
    """E2 pages for one scenario, statuses seeded with the input facts."""
    n, c = scenario.n, scenario.c
    cT = scenario.transform_codim
    sp = scenario.surviving_column

    left_terms: dict[Pos, Term] = {}
    for p in (-1, 0):
        for q in range(0, n + 1):
            status = TermStatus.UNKNOWN
            if p != sp:
                status = TermStatus.ZERO  # the dead WIT column
            elif q < cT:
                status = TermStatus.ZERO  # below the transform's codim
            elif q == cT:
                # top local Ext of a sheaf of codim exactly cT: its dual,
                # nonzero because the transform of a nonzero sheaf survives
                status = TermStatus.NONZERO
            left_terms[(p, q)] = Term(status, left_label(p, q))
    left = PageGrid(Side.LEFT, n, (-1, 0), (0, n), left_terms)

    right_terms: dict[Pos, Term] = {}
    for p in range(0, n + 1):
        for q in (-1, 0):
            status = TermStatus.ZERO if p < c else TermStatus.UNKNOWN
            right_terms[(p, q)] = Term(status, right_label(p, q))
    right = PageGrid(
        Side.RIGHT,
        n,
        (0, n),
        (-1, 0),
        right_terms,
        joint_nonzero=(((c, -1), (c, 0)),),
    )
    return left, right


def degenerate(grid: PageGrid) -> tuple[PageGrid, int]:
    """Run differentials until none can act; report the settling page.

    At status level a differential with two live endpoints has an unknown
    effect, so both endpoints drop to Unknown when one acts.  In every
    scenario this package builds, no differential can act at all (the
    Right band has two rows and the Left band a dead column), so the page
    index comes back as 2 and statuses pass through untouched.
    """
    out = grid.copy()
    last_active = 1
    for r in range(2, out.max_differential_page() + 1):
        arrows = out.possible_arrows(r)
        if not arrows:
            continue
        last_active = r
        for src, tgt in arrows:
            for pos in (src, tgt):
                term = out.terms[pos]
                if term.status is TermStatus.NONZERO:
                    term.status = TermStatus.UNKNOWN
    page = max(2, last_active + 1)
    out.page = page
    return out, page


# -- limit comparison ------------------------------------------------------


class _Solver:
    def __init__(self, left: PageGrid, right: PageGrid) -> None:
        self.left = left
        self.right = right
        self.relations: list[DerivedRelation] = []
        self._seen: set[tuple] = set()
        self._links: list[tuple[Pos, Pos, int]] = []
        self._changed = False

    def _grid(self, side: Side) -> PageGrid:
        return self.left if side is Side.LEFT else self.right

    def _ref(self, side: Side, pos: Pos) -> TermRef:
        return TermRef(side, pos, self._grid(side).terms[pos].label)

    def _emit(self, relation: DerivedRelation) -> None:
        key = (type(relation).__name__,) + tuple(
            getattr(relation, f.name) for f in relation.__dataclass_fields__.values()
        )
        if key not in self._seen:
            self._seen.add(key)
            self.relations.append(relation)
            self._changed = True

    def _set_nonzero(self, side: Side, pos: Pos, degree: int) -> None:
        term = self._grid(side).terms[pos]
        if term.status is TermStatus.UNKNOWN:
            term.status = TermStatus.NONZERO
            self._changed = True
        elif term.status is TermStatus.ZERO:
            self._emit(
                Forbidden(
                    degree,
                    f"{term.label} vanished but is required nonzero",
                )
            )

    def _force_zero(self, side: Side, pos: Pos, degree: int, why: str) -> None:
        term = self._grid(side).terms[pos]
        if term.status is TermStatus.NONZERO:
            self._emit(
                Forbidden(
                    degree,
                    f"{term.label} is required nonzero but {why} forces it to vanish",
                )
            )
        elif term.status is TermStatus.UNKNOWN:
            term.status = TermStatus.ZERO
            self._emit(ForcedZero(degree, self._ref(side, pos)))

    def _scan_degree(self, k: int) -> None:
        lives_l = self.left.live_on_diagonal(k)
        lives_r = self.right.live_on_diagonal(k)
        if not lives_l and not lives_r:
            return
        if not lives_l or not lives_r:
            if not lives_l:
                empty_side, other_side, survivors = Side.LEFT, Side.RIGHT, lives_r
            else:
                empty_side, other_side, survivors = Side.RIGHT, Side.LEFT, lives_l
            why = f"an empty {empty_side.value} page in total degree {k}"
            for pos, _ in survivors:
                self._force_zero(other_side, pos, k, why)
            return
        if len(lives_l) == 1 and len(lives_r) == 1:
            (pl, _), (pr, _) = lives_l[0], lives_r[0]
            self._emit(
                Identification(k, self._ref(Side.LEFT, pl), self._ref(Side.RIGHT, pr))
            )
            if (pl, pr, k) not in self._links:
                self._links.append((pl, pr, k))
            return
        if {len(lives_l), len(lives_r)} == {1, 2}:
            if len(lives_l) == 1:
                mid_side, (mid_pos, _) = Side.LEFT, lives_l[0]
                pair_side, pair = Side.RIGHT, lives_r
            else:
                mid_side, (mid_pos, _) = Side.RIGHT, lives_r[0]
                pair_side, pair = Side.LEFT, lives_l
            # live_on_diagonal returns larger q first; the deeper filtration
            # step (larger outer degree, i.e. larger q) is the subobject
            (sub_pos, _), (quot_pos, _) = pair
            self._emit(
                ShortExact(
                    k,
                    self._ref(pair_side, sub_pos),
                    self._ref(mid_side, mid_pos),
                    self._ref(pair_side, quot_pos),
                )
            )
            subs = self._grid(pair_side).terms[sub_pos]
            quots = self._grid(pair_side).terms[quot_pos]
            if TermStatus.NONZERO in (subs.status, quots.status):
                self._set_nonzero(mid_side, mid_pos, k)
            # A vanishing mid (or a fully vanished pair) never reaches this
            # branch: live_on_diagonal filters Zero terms, so those cases
            # fall into the empty-side or one-against-one branches instead.

    def _propagate_links(self) -> None:
        for pl, pr, k in self._links:
            tl = self.left.terms[pl]
            tr = self.right.terms[pr]
            if tl.status is TermStatus.NONZERO:
                self._set_nonzero(Side.RIGHT, pr, k)
            if tr.status is TermStatus.NONZERO:
                self._set_nonzero(Side.LEFT, pl, k)
            if tl.status is TermStatus.ZERO:
                self._force_zero(Side.RIGHT, pr, k, f"its identified partner {tl.label} = 0")
            if tr.status is TermStatus.ZERO:
                self._force_zero(Side.LEFT, pl, k, f"its identified partner {tr.label} = 0")

    def _check_joint_constraints(self) -> None:
        for grid, side in ((self.left, Side.LEFT), (self.right, Side.RIGHT)):
            for group in grid.joint_nonzero:
                statuses = [grid.terms[pos].status for pos in group]
                if all(s is TermStatus.ZERO for s in statuses):
                    labels = ", ".join(grid.terms[pos].label for pos in group)
                    degree = max(p + q for p, q in group)
                    self._emit(
                        Forbidden(
                            degree,
                            "every term of a jointly-nonzero group vanished: "
                            + labels,
                        )
                    )
                elif statuses.count(TermStatus.ZERO) == len(group) - 1:
                    for pos in group:
                        if grid.terms[pos].status is TermStatus.UNKNOWN:
                            self._set_nonzero(side, pos, pos[0] + pos[1])

    def solve(self) -> list[DerivedRelation]:
        degrees = sorted(set(self.left.degrees()) | set(self.right.degrees()))
        while True:
            self._changed = False
            for k in degrees:
                self._scan_degree(k)
            self._propagate_links()
            self._check_joint_constraints()
            if not self._changed:
                return self.relations


def compare_limits(left: PageGrid, right: PageGrid) -> list[DerivedRelation]:
    """Equate the two limits degree by degree; refine statuses in place.

    Both grids must already be degenerate (no differential can act), since
    the comparison reads the pages as the limit's graded pieces.
    """
    if left.side is not Side.LEFT or right.side is not Side.RIGHT:
        raise ValueError("compare_limits takes (left page, right page)")
    if left.n != right.n:
        raise ValueError("pages disagree about the ambient dimension")
    for grid in (left, right):
        if not grid.is_settled():
            raise ValueError(
                "compare_limits requires degenerated pages; call degenerate() first"
            )
    return _Solver(left, right).solve()


# -- closed form and the full pipeline -------------------------------------


def duality_decision(scenario: SheafScenario) -> Conclusion:
    """Closed-form verdict on the dual of the surviving transform."""
    shift = scenario.dim_shift
    if scenario.wit is WitType.WIT0:
        if shift == 1:
            return Conclusion(
                ConclusionKind.DUAL_IDENTIFICATION,
                _identification_statement(scenario.wit),
            )
        if shift == 0:
            return Conclusion(
                ConclusionKind.DUAL_IS_WIT1,
                _DUAL_IS_WIT1_STATEMENT,
                via_dimension_only=scenario.c == 0,
            )
        return Conclusion(
            ConclusionKind.FORBIDDEN,
            "dimension drop under a WIT0 transform is impossible",
        )
    if shift == 1:
        return Conclusion(
            ConclusionKind.FORBIDDEN,
            "dimension rise under a WIT1 transform is impossible",
        )
    if shift == 0:
        return Conclusion(
            ConclusionKind.DUAL_IDENTIFICATION,
            _identification_statement(scenario.wit),
        )
    return Conclusion(
        ConclusionKind.DUAL_IS_WIT1,
        _DUAL_IS_WIT1_STATEMENT,
        via_dimension_only=scenario.c == 0,
    )


@dataclass(frozen=True)
class ScenarioSolution:
    scenario: SheafScenario
    left: PageGrid
    right: PageGrid
    left_page: int
    right_page: int
    relations: tuple[DerivedRelation, ...]
    conclusion: Conclusion


def _entailed_conclusion(
    scenario: SheafScenario, right: PageGrid, relations: list[DerivedRelation]
) -> Conclusion:
    for rel in relations:
        if isinstance(rel, Forbidden):
            return Conclusion(ConclusionKind.FORBIDDEN, rel.reason)
    anchor = (scenario.c, -1)  # ι*(Φ^0 E^D) ⊗ p*L
    if right.terms[anchor].status is TermStatus.ZERO:
        return Conclusion(
            ConclusionKind.DUAL_IS_WIT1,
            _DUAL_IS_WIT1_STATEMENT,
            via_dimension_only=scenario.c == 0,
        )
    expected_partner = (scenario.surviving_column, scenario.transform_codim)
    for rel in relations:
        if isinstance(rel, Identification) and rel.right.pos == anchor:
            if rel.left.pos != expected_partner:
                raise InternalCheckError(
                    f"Φ^0(E^D) identified with {rel.left.label}, not with the "
                    "dual of the surviving transform"
                )
            return Conclusion(
                ConclusionKind.DUAL_IDENTIFICATION,
                _identification_statement(scenario.wit),
            )
    raise InternalCheckError(
        "limit comparison resolved neither vanishing nor identification "
        f"for Φ^0(E^D) in scenario {scenario}"
    )


def solve_scenario(scenario: SheafScenario) -> ScenarioSolution:
    """build_pages -> degenerate -> compare_limits -> entailed conclusion."""
    left, right = build_pages(scenario)
    left, left_page = degenerate(left)
    right, right_page = degenerate(right)
    relations = compare_limits(left, right)
    conclusion = _entailed_conclusion(scenario, right, relations)
    return ScenarioSolution(
        scenario,
        left,
        right,
        left_page,
        right_page,
        tuple(relations),
        conclusion,
    )
