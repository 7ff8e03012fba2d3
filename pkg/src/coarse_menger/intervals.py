"""Integer interval families and the covering-selection algorithms.

A family lives inside a horizon (0, n).  It is ell-powerful when it captures
every length-ell window of (0, n).  The two selectors thin a powerful family
down to one whose interval endpoints are far apart, which is what the path
router needs to keep its access paths from crowding each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class IntervalError(ValueError):
    pass


class BadEllError(IntervalError):
    pass


class NotPowerfulError(IntervalError):
    pass


class StuckProgressError(IntervalError):
    """The greedy sweep could not advance; the precondition was violated."""


class OrderViolationError(IntervalError):
    """A selection postcondition failed; this indicates a bug, not bad input."""


@dataclass(frozen=True, order=True)
class Interval:
    a: int
    b: int

    def __post_init__(self):
        if not 0 <= self.a <= self.b:
            raise IntervalError(f"need 0 <= a <= b, got ({self.a}, {self.b})")

    @property
    def length(self) -> int:
        return self.b - self.a

    def captures(self, other: "Interval") -> bool:
        return self.a <= other.a and other.b <= self.b


@dataclass(frozen=True)
class IntervalFamily:
    """A sequence of intervals inside the horizon (0, n)."""

    items: tuple[Interval, ...]
    horizon: int

    def __post_init__(self):
        for iv in self.items:
            if iv.b > self.horizon:
                raise IntervalError(f"{iv} exceeds horizon {self.horizon}")

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def endpoints(self) -> tuple[list[int], list[int]]:
        return [iv.a for iv in self.items], [iv.b for iv in self.items]


def family(pairs: Iterable[tuple[int, int]], horizon: int) -> IntervalFamily:
    return IntervalFamily(tuple(Interval(a, b) for a, b in pairs), horizon)


def is_standard_form(fam: IntervalFamily) -> bool:
    """Left and right endpoints both strictly increasing in the stored order."""
    items = fam.items
    return all(p.a < q.a and p.b < q.b for p, q in zip(items, items[1:]))


def standard_form(fam: IntervalFamily) -> IntervalFamily:
    """Drop every member captured by another member, dedupe, sort by left end.

    Removing dominated members loses no capture power, and the survivors are
    exactly a standard-form family.
    """
    unique = sorted(set(fam.items), key=lambda iv: (iv.a, -iv.b))
    kept: list[Interval] = []
    best_b = -1
    for iv in unique:
        if iv.b > best_b:
            kept.append(iv)
            best_b = iv.b
    return IntervalFamily(tuple(kept), fam.horizon)


def _check_ell(fam: IntervalFamily, ell: int) -> None:
    if ell <= 0 or ell > fam.horizon:
        raise BadEllError(f"need 0 < ell <= horizon, got ell={ell}, n={fam.horizon}")


def is_powerful(fam: IntervalFamily, ell: int) -> bool:
    """True iff every window (h, h+ell) inside (0, n) is captured."""
    _check_ell(fam, ell)
    return _covers_all(fam.items, ell, fam.horizon)


def _covers_all(items: Sequence[Interval], ell: int, n: int) -> bool:
    # For each window start h, the best capturer is the one with the largest
    # right end among left ends <= h; one sweep over sorted items suffices.
    ordered = sorted(items, key=lambda iv: iv.a)
    reach = -1
    idx = 0
    for h in range(0, n - ell + 1):
        while idx < len(ordered) and ordered[idx].a <= h:
            reach = max(reach, ordered[idx].b)
            idx += 1
        if reach < h + ell:
            return False
    return True


def prune_minimal(fam: IntervalFamily, ell: int) -> IntervalFamily:
    """Inclusion-minimal ell-powerful subfamily, by a deterministic sweep.

    Scans the standard form in ascending order and drops a member exactly when
    the remainder is still ell-powerful.  Coverage is monotone under taking
    subsets, so surviving one pass implies no member is ever removable again.
    """
    _check_ell(fam, ell)
    fam = standard_form(fam)
    if not _covers_all(fam.items, ell, fam.horizon):
        raise NotPowerfulError(f"family is not {ell}-powerful in (0, {fam.horizon})")
    kept = list(fam.items)
    i = 0
    while i < len(kept):
        trial = kept[:i] + kept[i + 1 :]
        if _covers_all(trial, ell, fam.horizon):
            kept = trial
        else:
            i += 1
    result = IntervalFamily(tuple(kept), fam.horizon)
    _assert_spread_lower_bound(result, ell)
    return result


def _assert_spread_lower_bound(fam: IntervalFamily, ell: int) -> None:
    # Minimality forces a_j >= b_i - ell + 2 whenever j >= i + 2.
    a, b = fam.endpoints()
    for i in range(len(fam)):
        for j in range(i + 2, len(fam)):
            if a[j] < b[i] - ell + 2:
                raise OrderViolationError(
                    f"minimal family breaks spread bound at i={i}, j={j}: "
                    f"a_j={a[j]} < b_i - ell + 2 = {b[i] - ell + 2}"
                )


def reflect(fam: IntervalFamily) -> IntervalFamily:
    """Mirror every interval through the midpoint of the horizon.

    An involution that preserves ell-powerfulness.
    """
    n = fam.horizon
    return IntervalFamily(
        tuple(sorted(Interval(n - iv.b, n - iv.a) for iv in fam.items)), n
    )


def sweep_select(fam: IntervalFamily, ell: int) -> IntervalFamily:
    """Select an ell-powerful subfamily whose right ends march in >= ell steps.

    Requires a 2*ell-powerful input.  Pipeline: prune to a minimal 2*ell-
    powerful core, then sweep left to right, at each step taking the member
    that captures (b - ell, b + ell) with the largest right end, and finally
    prune the sweep's output to a minimal ell-powerful subfamily.
    """
    if 2 * ell > fam.horizon or ell <= 0:
        raise BadEllError(f"need 0 < 2*ell <= horizon, got ell={ell}, n={fam.horizon}")
    n = fam.horizon
    core = prune_minimal(fam, 2 * ell)

    def unique_capturer(window: Interval) -> Interval:
        hits = [iv for iv in core if iv.captures(window)]
        if len(hits) != 1:
            raise StuckProgressError(
                f"expected a unique capturer of {window}, found {len(hits)}"
            )
        return hits[0]

    chain = [unique_capturer(Interval(0, 2 * ell))]
    while chain[-1].b != n:
        b = chain[-1].b
        if b < n - ell:
            window = Interval(b - ell, b + ell)
            candidates = [iv for iv in core if iv.captures(window)]
            if not candidates:
                raise StuckProgressError(f"no member captures {window}")
            chain.append(max(candidates, key=lambda iv: (iv.b, iv.a)))
        else:
            chain.append(unique_capturer(Interval(n - 2 * ell, n)))

    swept = IntervalFamily(tuple(chain), n)
    if not is_standard_form(swept):
        raise OrderViolationError("greedy sweep output is not in standard form")
    _assert_sweep_gaps(swept, ell, strict_overlap=True)
    result = prune_minimal(swept, ell)
    _assert_sweep_gaps(result, ell, strict_overlap=False)
    return result


def _assert_sweep_gaps(fam: IntervalFamily, ell: int, strict_overlap: bool) -> None:
    """Gap guarantees of the sweep: b-steps >= ell, and consecutive overlaps.

    The freshly swept chain overlaps by >= ell.  Pruning it can merge
    non-adjacent links, which provably leaves overlap >= ell - 1 (the window
    just left of a_i must still be covered) but can lose the full ell.
    """
    a, b = fam.endpoints()
    t = len(fam)
    floor = ell if strict_overlap else ell - 1
    for i in range(1, t - 1):
        if b[i] - b[i - 1] < ell:
            raise OrderViolationError(
                f"right-end step b_{i + 1} - b_{i} = {b[i] - b[i - 1]} < {ell}"
            )
    for i in range(1, t):
        if b[i - 1] - a[i] < floor:
            raise OrderViolationError(
                f"overlap b_{i} - a_{i + 1} = {b[i - 1] - a[i]} < {floor}"
            )


def spaced_select(fam: IntervalFamily, ell: int) -> IntervalFamily:
    """Select a minimally ell-powerful subfamily with far-apart endpoints.

    Requires a 4*ell-powerful input.  One forward sweep at 2*ell, then a
    mirrored sweep at ell, gives a family whose 2t endpoints pairwise differ
    by >= ell apart from four wired-together classes (checked before return):
    the first two left ends, the last two right ends, the pairs (a_i, b_{i-2}),
    and the consecutive overlaps (a_i, b_{i-1}), which can shrink to ell - 1.
    """
    if 4 * ell > fam.horizon or ell <= 0:
        raise BadEllError(f"need 0 < 4*ell <= horizon, got ell={ell}, n={fam.horizon}")
    forward = sweep_select(fam, 2 * ell)
    result = reflect(sweep_select(reflect(forward), ell))
    check_spaced_properties(result, ell)
    return result


def check_spaced_properties(fam: IntervalFamily, ell: int) -> None:
    """Assert the interleaving order and the pairwise gap guarantee.

    Raises OrderViolationError with the offending pair on any failure.
    """
    a, b = fam.endpoints()
    t = len(fam)
    n = fam.horizon
    if t == 0:
        raise OrderViolationError("selection produced an empty family")
    if a[0] != 0 or b[-1] != n:
        raise OrderViolationError(
            f"selection must span the horizon: a_1={a[0]}, b_t={b[-1]}, n={n}"
        )
    if not is_standard_form(fam):
        raise OrderViolationError("selection output is not in standard form")

    # Interleaving: a_1 < a_2 < {a_3, b_1} < {a_4, b_2} < ... < b_{t-1} < b_t,
    # with unknown order inside each braced pair.  The comparisons that rest
    # only on the overlap bound are non-strict when ell == 1.
    chain: list[int] = a[:2] if t >= 2 else a[:1]
    for i in range(2, t):
        chain.extend(sorted((a[i], b[i - 2])))
    chain.extend(b[max(t - 2, 0) :])
    overlap_floor = 1 if ell >= 2 else 0
    for x, y in zip(chain, chain[1:]):
        if y - x < overlap_floor:
            raise OrderViolationError(f"interleaving order broken: {x} !< {y}")

    points = [("a", i, a[i]) for i in range(t)] + [("b", i, b[i]) for i in range(t)]
    for idx1 in range(len(points)):
        for idx2 in range(idx1 + 1, len(points)):
            side1, i, x = points[idx1]
            side2, j, y = points[idx2]
            if side1 == side2 and i == j:
                continue
            gap = abs(x - y)
            if gap >= ell:
                continue
            pair = {(side1, i), (side2, j)}
            if pair == {("a", 0), ("a", 1)}:
                continue
            if pair == {("b", t - 2), ("b", t - 1)}:
                continue
            if side1 != side2:
                ai, bi = (i, j) if side1 == "a" else (j, i)
                if ai - bi == 2:
                    continue
                if ai - bi == 1 and gap >= ell - 1:
                    continue
            raise OrderViolationError(
                f"endpoints {side1}_{i + 1}={x} and {side2}_{j + 1}={y} "
                f"differ by {gap} < {ell}"
            )
