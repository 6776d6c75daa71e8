"""Integer combinatorics of pole staircases.

A staircase is a finite sequence of lattice points (a_0,b_0),...,(a_k,b_k)
with both coordinates strictly increasing.  For a defining function f of a
degree-p cover, a records the pole order along the first boundary branch
and b the exponent of the second coordinate, so the staircase is the
minimal-corner profile of the poles of f.  Everything in this module is
pure integer arithmetic; no field elements enter.

The central quantity is a recursively defined local ramification total.
One step of the recursion mirrors one blow-up of the origin: the staircase
splits into the two corner profiles seen at the two crossing points on the
exceptional curve (the images under the exponent maps (a,b) -> (a, b-a)
and (a,b) -> (a-b, b), filtered back to minimal corners), and the step
contributes e*(e-1) or e**2 where e is the drop of the Swan conductor sum
across the blow-up.  The recursion admits a closed form: twice the area
between the essential hull of the staircase and its baseline, corrected by
(t-2)*(a_k-a_0) for a point on t boundary branches.  Both routes are
implemented and cross-checked, along with a proven upper bound for the
blow-up total.

Slope comparisons are exact (cross multiplication); no rationals, no
floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class StaircaseError(ValueError):
    """Invalid staircase input for an operation."""


class Staircase:
    """A strictly increasing sequence of lattice points.

    Immutable.  May be empty (trivial cover) or a single point.
    """

    __slots__ = ("points",)

    def __init__(self, points=()):
        pts = tuple((int(a), int(b)) for a, b in points)
        for (a0, b0), (a1, b1) in zip(pts, pts[1:]):
            if not (a0 < a1 and b0 < b1):
                raise StaircaseError(
                    f"coordinates must strictly increase: {(a0, b0)} !< {(a1, b1)}")
        self.points = pts

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __eq__(self, other):
        return isinstance(other, Staircase) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"Staircase({list(self.points)})"


def _require_nonempty(stair, op):
    if len(stair) == 0:
        raise StaircaseError(f"{op} is undefined for an empty staircase")


def _check_branches(branches):
    if branches not in (1, 2):
        raise ValueError(f"a boundary point lies on 1 or 2 branches, got {branches}")


# ---------------------------------------------------------------------------
# hull, area, depth
# ---------------------------------------------------------------------------

def essential_vertices(stair):
    """The lower convex hull of the staircase.

    Starting from the first point, repeatedly jump to the farthest point
    realizing the minimal slope from the current one.  Ties go to the
    larger index, so collinear interior points are skipped.  The output
    contains the first and last points and its consecutive slopes strictly
    increase; the operation is idempotent.
    """
    _require_nonempty(stair, "essential_vertices")
    pts = stair.points
    k = len(pts) - 1
    out = [pts[0]]
    i = 0
    while i < k:
        best = i + 1
        for j in range(i + 2, k + 1):
            # slope(i->j) <= slope(i->best), exactly; denominators positive
            lhs = (pts[j][1] - pts[i][1]) * (pts[best][0] - pts[i][0])
            rhs = (pts[best][1] - pts[i][1]) * (pts[j][0] - pts[i][0])
            if lhs <= rhs:
                best = j
        out.append(pts[best])
        i = best
    return Staircase(out)


def area(stair):
    """Twice the area between the staircase polyline and its baseline.

    The trapezoid sum of (a_{i+1} - a_i) * (b_{i+1} + b_i - 2*b_0), which
    is a nonnegative integer for any valid staircase.  Empty and singleton
    staircases have area 0.
    """
    pts = stair.points
    if len(pts) <= 1:
        return 0
    b0 = pts[0][1]
    return sum((a1 - a0) * (b1 + b0_ - 2 * b0)
               for (a0, b0_), (a1, b1) in zip(pts, pts[1:]))


def depth(stair):
    """Coordinate spread a_k - a_0 + b_k - b_0, the recursion's measure."""
    _require_nonempty(stair, "depth")
    (a0, b0), (ak, bk) = stair.points[0], stair.points[-1]
    return ak - a0 + bk - b0


# ---------------------------------------------------------------------------
# the per-blow-up drop and its contribution
# ---------------------------------------------------------------------------

def swan_drop(stair):
    """Drop of the Swan conductor sum across one blow-up, read off the
    staircase: max(a_k, 0) + max(-b_0, 0) - max(max_i(a_i - b_i), 0).

    The three terms are the conductors along the two boundary branches and
    along the exceptional curve.  The value is >= 0 for every valid
    staircase; a negative result would indicate corrupted input and
    raises.
    """
    _require_nonempty(stair, "swan_drop")
    pts = stair.points
    ak = pts[-1][0]
    b0 = pts[0][1]
    diag = max(a - b for a, b in pts)
    value = max(ak, 0) + max(-b0, 0) - max(diag, 0)
    if value < 0:
        raise StaircaseError(f"negative conductor drop {value} for {stair!r}")
    return value


def blowup_term(drop, branches):
    """Contribution of one blow-up: drop*(drop-1) on one branch, drop**2
    at a crossing."""
    _check_branches(branches)
    if drop < 0:
        raise ValueError(f"conductor drop must be >= 0, got {drop}")
    return drop * (drop - 1) if branches == 1 else drop * drop


# ---------------------------------------------------------------------------
# the two chart transforms
# ---------------------------------------------------------------------------

def child_index_sets(stair, rule="minimal"):
    """Index sets surviving at the two crossing points after one blow-up.

    With the default "minimal" rule these are the minimal-corner filters
    of the transformed corner sets:

        first  (chart where the old second branch survives):
                 { j : b_j - a_j < min over i > j of (b_i - a_i) }
        second (chart where the old first branch survives):
                 { j : a_j - b_j > max over i < j of (a_i - b_i) }

    Empty ranges count as +inf resp. -inf, so the last index always
    belongs to the first set and index 0 to the second.  The transformed
    sequences (a_j, b_j - a_j) and (a_j - b_j, b_j) over these sets are
    again valid staircases.

    rule="max_tail" switches the first filter to the strict-below-max
    variant { j : b_j - a_j < max over i > j of (b_i - a_i) }, which drops
    the last index.  It is kept only as a differential-testing mutant: it
    breaks the closed form (smallest counterexample ((0,0),(1,2))).
    """
    _require_nonempty(stair, "child_index_sets")
    if rule not in ("minimal", "max_tail"):
        raise ValueError(f"unknown index rule {rule!r}")
    pts = stair.points
    k = len(pts) - 1
    first = []
    for j in range(k + 1):
        tail = [pts[i][1] - pts[i][0] for i in range(j + 1, k + 1)]
        here = pts[j][1] - pts[j][0]
        if rule == "minimal":
            if not tail or here < min(tail):
                first.append(j)
        else:
            if tail and here < max(tail):
                first.append(j)
    second = []
    for j in range(k + 1):
        head = [pts[i][0] - pts[i][1] for i in range(j)]
        if not head or pts[j][0] - pts[j][1] > max(head):
            second.append(j)
    return tuple(first), tuple(second)


def crossing_child(stair, rule="minimal"):
    """Corner profile at the crossing of the exceptional curve with the
    strict transform of the first branch: (a_j, b_j - a_j) over the first
    index set."""
    first, _ = child_index_sets(stair, rule)
    return Staircase([(stair[j][0], stair[j][1] - stair[j][0]) for j in first])


def continuation_child(stair):
    """Corner profile at the crossing with the strict transform of the
    second branch: (a_j - b_j, b_j) over the second index set."""
    _, second = child_index_sets(stair)
    return Staircase([(stair[j][0] - stair[j][1], stair[j][1]) for j in second])


# ---------------------------------------------------------------------------
# the recursive total, its closed form, and the upper bound
# ---------------------------------------------------------------------------

@dataclass
class RecursionStep:
    staircase: Staircase
    branches: int
    drop: int
    term: int
    first_indices: tuple
    second_indices: tuple


@dataclass
class RecursionTrace:
    total: int = 0
    steps: list = field(default_factory=list)


def ramification_recursive(stair, branches, rule="minimal"):
    """The local ramification total, by the staircase recursion.

    Each step contributes blowup_term(swan_drop(.), branches) and recurses
    into the two child profiles; the crossing child always sits on two
    branches, the continuation child inherits the branch count.  Single
    points (and the empty staircase) contribute 0.  Termination is by the
    strict lexicographic descent of (length, depth), which is asserted.
    """
    _check_branches(branches)
    trace = RecursionTrace()
    _recurse(Staircase(stair.points), branches, trace, rule)
    return trace


def _recurse(stair, branches, trace, rule):
    if len(stair) <= 1:
        return
    drop = swan_drop(stair)
    term = blowup_term(drop, branches)
    first, second = child_index_sets(stair, rule)
    trace.total += term
    trace.steps.append(RecursionStep(stair, branches, drop, term, first, second))
    measure = (len(stair), depth(stair))
    for child, child_branches in (
            (crossing_child(stair, rule), 2),
            (continuation_child(stair), branches)):
        if len(child) == 0:
            continue
        child_measure = (len(child), depth(child))
        if not child_measure < measure:
            raise StaircaseError(
                f"recursion measure failed to decrease: {stair!r} -> {child!r}")
        _recurse(child, child_branches, trace, rule)


def ramification_closed_form(stair, branches):
    """Closed form of the recursive total:
    area(essential_vertices(stair)) + (branches - 2) * (a_k - a_0)."""
    _check_branches(branches)
    if len(stair) == 0:
        return 0
    hull = essential_vertices(stair)
    return area(hull) + (branches - 2) * (stair[-1][0] - stair[0][0])


def ramification_bound(stair, branches):
    """Proven upper bound for the blow-up total, in absolute coordinates:

        one branch:   a_k * (b_k - 1)
        two branches: a_k * (b_k - b_0) + (-b_0) * (a_k - a_0)
    """
    _check_branches(branches)
    if len(stair) == 0:
        return 0
    (a0, b0), (ak, bk) = stair[0], stair[-1]
    if branches == 1:
        return ak * (bk - 1)
    return ak * (bk - b0) + (-b0) * (ak - a0)


def is_clean_shape(stair, branches):
    """Whether the staircase has the shape below which no blow-up is
    needed: a single point at a crossing; a single point or a one-step
    rise ((a_0,b_0),(a_1,b_0+1)) on one branch.  Empty is clean."""
    _check_branches(branches)
    pts = stair.points
    if len(pts) <= 1:
        return True
    if branches == 2:
        return False
    return len(pts) == 2 and pts[1][1] == pts[0][1] + 1


def max_diagonal(stair):
    """max_i (a_i - b_i), the exceptional-curve conductor term of
    swan_drop.  Its maximizer is a lower-hull vertex, so the value is
    preserved when passing to essential vertices (for every valid
    staircase, not only good ones)."""
    _require_nonempty(stair, "max_diagonal")
    return max(a - b for a, b in stair.points)


def quadrant_shape(stair):
    """Whether some point has a >= 0 and b <= 0, the shape condition a
    reduced representative always satisfies.  The recursion's closed form
    and the upper bound are theorems only on this domain."""
    return any(a >= 0 and b <= 0 for a, b in stair.points)
