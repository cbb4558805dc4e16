"""Exact rational linear arithmetic over named dimensions.

Halfspaces are linear inequalities `a . x <= b` or `a . x < b` with
Fraction coefficients; systems of halfspaces are decided by Fourier-Motzkin
variable elimination.  Everything is exact: no floats anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

Rational = Fraction

_RATIONAL_RE = re.compile(r"([+-]?\d+)(?:\.(\d+)|/(\d+))?")


class ParseError(ValueError):
    """Malformed numeric or constraint text; carries the failing position."""

    def __init__(self, text: str, position: int, reason: str = "malformed rational"):
        self.text = text
        self.position = position
        super().__init__(f"{reason} in {text!r} at position {position}")


def rat_of_decimal(text: str) -> Fraction:
    """Parse "25", "-4.002" or "p/q" into an exact Fraction.

    Decimal literals expand exactly (0.60 == 3/5); printing with
    :func:`format_rational` and re-parsing is the identity on values.
    """
    m = _RATIONAL_RE.fullmatch(text)
    if m is None:
        probe = _RATIONAL_RE.match(text)
        raise ParseError(text, probe.end() if probe else 0)
    if m.group(3) is not None and int(m.group(3)) == 0:
        raise ParseError(text, text.index("/") + 1, reason="zero denominator")
    return Fraction(text)


def format_rational(q: Fraction) -> str:
    """Exact text for a rational: integer, finite decimal, or "p/q"."""
    if q.denominator == 1:
        return str(q.numerator)
    twos = fives = 0
    d = q.denominator
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{q.numerator}/{q.denominator}"
    k = max(twos, fives)
    scaled = abs(q.numerator) * 10**k // q.denominator
    digits = str(scaled).rjust(k + 1, "0")
    sign = "-" if q.numerator < 0 else ""
    return f"{sign}{digits[:-k]}.{digits[-k:]}"


def decimal_text(q: Fraction, significant: int = 12) -> tuple[str, bool]:
    """Decimal rendering of a rational plus an exactness flag.

    Exact when the denominator is of the form 2^a * 5^b; otherwise rounded
    to `significant` digits.
    """
    exact = format_rational(q)
    if "/" not in exact:
        return exact, True
    with localcontext() as ctx:
        ctx.prec = significant
        approx = Decimal(q.numerator) / Decimal(q.denominator)
    return format(approx, "f"), False


@dataclass(frozen=True)
class Halfspace:
    """One linear inequality, stored normalized as <= (strict=False) or <.

    `coeffs` maps dimension names to nonzero coefficients; an empty map is a
    ground residual 0 <=/< bound, produced only by elimination.
    """

    coeffs: dict[str, Fraction]
    bound: Fraction
    strict: bool

    def evaluate(self, values: Mapping[str, Fraction]) -> bool:
        lhs = sum((c * values[d] for d, c in self.coeffs.items()), Fraction(0))
        return lhs < self.bound if self.strict else lhs <= self.bound

    def is_ground(self) -> bool:
        return not self.coeffs

    def ground_holds(self) -> bool:
        zero = Fraction(0)
        return zero < self.bound if self.strict else zero <= self.bound

    def scaled(self, factor: Fraction) -> Halfspace:
        if factor <= 0:
            raise ValueError("scaling factor must be positive")
        return Halfspace(
            {d: c * factor for d, c in self.coeffs.items()},
            self.bound * factor,
            self.strict,
        )

    def __str__(self) -> str:
        if not self.coeffs:
            lhs = "0"
        else:
            parts = []
            for d, c in self.coeffs.items():
                if c == 1:
                    parts.append(d)
                elif c == -1:
                    parts.append(f"-{d}")
                else:
                    parts.append(f"{format_rational(c)}*{d}")
            lhs = " + ".join(parts)
        op = "<" if self.strict else "<="
        return f"{lhs} {op} {format_rational(self.bound)}"


_OPS = ("<=", ">=", "<", ">")


def halfspace(coeffs: Mapping[str, object], op: str, bound: object) -> Halfspace:
    """Build a halfspace from any relation; >= and > normalize to <= and <.

    Coefficients and bound accept anything Fraction() accepts.  At least one
    coefficient must be nonzero.
    """
    if op not in _OPS:
        raise ValueError(f"unknown relation {op!r}")
    cs = {d: Fraction(c) for d, c in coeffs.items() if Fraction(c) != 0}
    b = Fraction(bound)
    if not cs:
        raise ValueError("halfspace needs at least one nonzero coefficient")
    if op in (">=", ">"):
        cs = {d: -c for d, c in cs.items()}
        b = -b
    return Halfspace(cs, b, strict=op in ("<", ">"))


_CONSTRAINT_RE = re.compile(r"\s*([A-Za-z]\w*)\s*(<=|>=|<|>)\s*(\S+)\s*")


def parse_constraint(text: str) -> Halfspace:
    """Parse "Y>=-7" or "Ya<-4.002" into a single-variable halfspace."""
    m = _CONSTRAINT_RE.fullmatch(text)
    if m is None:
        raise ParseError(text, 0, reason="expected <var><op><number>")
    var, op, value = m.groups()
    return halfspace({var: 1}, op, rat_of_decimal(value))


def negate(h: Halfspace) -> Halfspace:
    """Set complement of a halfspace: not(a.x <= b) is a.x > b and vice versa.

    An involution; ground residuals negate to ground residuals.
    """
    return Halfspace(
        {d: -c for d, c in h.coeffs.items()},
        -h.bound,
        not h.strict,
    )


@dataclass(frozen=True)
class LinSystem:
    """A finite conjunction of halfspaces over an ordered dimension set."""

    halfspaces: tuple[Halfspace, ...]
    dims: tuple[str, ...]

    def __post_init__(self) -> None:
        known = set(self.dims)
        for h in self.halfspaces:
            missing = set(h.coeffs) - known
            if missing:
                raise ValueError(f"coefficient on undeclared dimension(s) {sorted(missing)}")


def conjoin(a: LinSystem, b: LinSystem) -> LinSystem:
    if a.dims != b.dims:
        raise ValueError(f"dimension mismatch: {a.dims} vs {b.dims}")
    return LinSystem(a.halfspaces + b.halfspaces, a.dims)


def with_halfspaces(s: LinSystem, extra: Iterable[Halfspace]) -> LinSystem:
    return LinSystem(s.halfspaces + tuple(extra), s.dims)


def eliminate(s: LinSystem, v: str) -> LinSystem:
    """One Fourier-Motzkin step: project the solution set onto dims minus v.

    Every lower bound on v pairs with every upper bound; the combination is
    strict iff either parent is.  Trivially-true ground residuals are
    dropped, false ones kept as infeasibility witnesses.
    """
    if v not in s.dims:
        raise ValueError(f"{v!r} not a dimension of the system")
    lowers: list[Halfspace] = []
    uppers: list[Halfspace] = []
    rest: list[Halfspace] = []
    for h in s.halfspaces:
        c = h.coeffs.get(v, Fraction(0))
        if c == 0:
            rest.append(h)
        elif c > 0:
            uppers.append(h)
        else:
            lowers.append(h)
    out = rest
    for lo in lowers:
        for up in uppers:
            m_lo = up.coeffs[v]
            m_up = -lo.coeffs[v]
            coeffs: dict[str, Fraction] = {}
            for d in s.dims:
                if d == v or (d not in lo.coeffs and d not in up.coeffs):
                    continue
                c = m_lo * lo.coeffs.get(d, Fraction(0)) + m_up * up.coeffs.get(d, Fraction(0))
                if c != 0:
                    coeffs[d] = c
            combined = Halfspace(
                coeffs,
                m_lo * lo.bound + m_up * up.bound,
                lo.strict or up.strict,
            )
            if combined.is_ground() and combined.ground_holds():
                continue
            out.append(combined)
    return LinSystem(tuple(out), tuple(d for d in s.dims if d != v))


class Bound(NamedTuple):
    value: Fraction
    open: bool


def _fold_single_var_bounds(
    halfspaces: Iterable[Halfspace],
) -> tuple[dict[str, tuple[Bound | None, Bound | None]], bool]:
    """Merge single-variable halfspaces into per-dim intervals.

    Returns (intervals, ground_ok).  Only valid when every halfspace has at
    most one coefficient.
    """
    intervals: dict[str, tuple[Bound | None, Bound | None]] = {}
    ground_ok = True
    for h in halfspaces:
        if h.is_ground():
            ground_ok = ground_ok and h.ground_holds()
            continue
        (d, c), = h.coeffs.items()
        # unit coefficients dominate; skip the Fraction division for them
        if c == 1:
            val = h.bound
        elif c == -1:
            val = -h.bound
        else:
            val = h.bound / c
        lo, hi = intervals.get(d, (None, None))
        if c > 0:
            if hi is None or val < hi.value or (val == hi.value and h.strict):
                hi = Bound(val, h.strict)
        else:
            if lo is None or val > lo.value or (val == lo.value and h.strict):
                lo = Bound(val, h.strict)
        intervals[d] = (lo, hi)
    return intervals, ground_ok


def _interval_nonempty(lo: Bound | None, hi: Bound | None) -> bool:
    if lo is None or hi is None:
        return True
    if lo.value < hi.value:
        return True
    return lo.value == hi.value and not lo.open and not hi.open


def is_feasible(s: LinSystem) -> bool:
    """True iff some rational point satisfies every halfspace."""
    if all(len(h.coeffs) <= 1 for h in s.halfspaces):
        intervals, ground_ok = _fold_single_var_bounds(s.halfspaces)
        return ground_ok and all(_interval_nonempty(lo, hi) for lo, hi in intervals.values())
    cur = s
    while True:
        active = [d for d in cur.dims if any(d in h.coeffs for h in cur.halfspaces)]
        if not active:
            break
        # cheapest dimension first: fewest lower*upper pairings
        def cost(d: str) -> int:
            nl = sum(1 for h in cur.halfspaces if h.coeffs.get(d, 0) < 0)
            nu = sum(1 for h in cur.halfspaces if h.coeffs.get(d, 0) > 0)
            return nl * nu
        cur = eliminate(cur, min(active, key=cost))
    return all(h.ground_holds() for h in cur.halfspaces)


def entails(s: LinSystem, h: Halfspace) -> bool:
    """True iff every point of s satisfies h, i.e. s and not(h) is infeasible."""
    dims = s.dims
    extra = set(h.coeffs) - set(dims)
    if extra:
        dims = dims + tuple(sorted(extra))
    return not is_feasible(LinSystem(s.halfspaces + (negate(h),), dims))


def project(s: LinSystem, keep: str) -> LinSystem:
    """Eliminate every dimension except `keep`."""
    cur = s
    while True:
        active = [
            d for d in cur.dims
            if d != keep and any(d in h.coeffs for h in cur.halfspaces)
        ]
        if not active:
            break
        def cost(d: str) -> int:
            nl = sum(1 for h in cur.halfspaces if h.coeffs.get(d, 0) < 0)
            nu = sum(1 for h in cur.halfspaces if h.coeffs.get(d, 0) > 0)
            return nl * nu
        cur = eliminate(cur, min(active, key=cost))
    return LinSystem(cur.halfspaces, (keep,))


def interval_of(s: LinSystem, v: str) -> tuple[Bound | None, Bound | None]:
    """Tightest bounds of the projection of s onto v; None means unbounded."""
    if v not in s.dims:
        raise ValueError(f"{v!r} not a dimension of the system")
    if not is_feasible(s):
        raise ValueError("interval_of on infeasible system")
    proj = project(s, v)
    intervals, _ = _fold_single_var_bounds(proj.halfspaces)
    return intervals.get(v, (None, None))


def simplify(s: LinSystem) -> LinSystem:
    """Drop halfspaces entailed by the remaining ones (greedy, left to right).

    Single-variable systems take an interval fast path that keeps exactly
    the constraints realizing the tightest bound per side, matching what
    the greedy entailment sweep would keep on feasible systems.
    """
    if all(len(h.coeffs) == 1 for h in s.halfspaces):
        return _simplify_intervals(s)
    kept = list(s.halfspaces)
    i = 0
    while i < len(kept):
        rest = LinSystem(tuple(kept[:i] + kept[i + 1:]), s.dims)
        if entails(rest, kept[i]):
            del kept[i]
        else:
            i += 1
    return LinSystem(tuple(kept), s.dims)


def _simplify_intervals(s: LinSystem) -> LinSystem:
    # winner index per (dim, side); exact ties go to the later constraint,
    # as the greedy sweep would keep the last duplicate
    winners: dict[tuple[str, bool], tuple[Fraction, bool, int]] = {}
    for i, h in enumerate(s.halfspaces):
        (d, c), = h.coeffs.items()
        if c == 1:
            val = h.bound
        elif c == -1:
            val = -h.bound
        else:
            val = h.bound / c
        upper = c > 0
        key = (d, upper)
        cur = winners.get(key)
        if cur is None:
            winners[key] = (val, h.strict, i)
            continue
        cval, cstrict, _ = cur
        if upper:
            better = val < cval or (val == cval and (h.strict or not cstrict))
        else:
            better = val > cval or (val == cval and (h.strict or not cstrict))
        if better:
            winners[key] = (val, h.strict, i)
    keep = sorted(idx for _, _, idx in winners.values())
    return LinSystem(tuple(s.halfspaces[i] for i in keep), s.dims)
