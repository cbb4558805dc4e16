"""Priority-based merging of conflicting model updates.

Data items carry an integer confidence; declared inconsistency pairs let a
strictly more confident item cancel a less confident one.  Items whose
argument is a free variable stay valid but collect disequality exclusions
for every constant whose instantiation would be canceled.  Cancellation by
an item that is itself canceled is allowed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .facts import FactSyntaxError, Term, Var, parse_program


@dataclass(frozen=True)
class Atom:
    """A unary assertion like ventilation(natural); arg None is a variable."""

    functor: str
    arg: str | None

    @property
    def ground(self) -> bool:
        return self.arg is not None

    def text(self, var_name: str = "A") -> str:
        return f"{self.functor}({self.arg if self.ground else var_name})"

    def __str__(self) -> str:
        return self.text()


@dataclass(frozen=True)
class DataItem:
    priority: int
    atom: Atom

    def __post_init__(self) -> None:
        if self.priority < 0:
            raise ValueError("priority must be nonnegative")


@dataclass(frozen=True)
class Verdict:
    """Validity of one data item, with disequality exclusions for variables."""

    priority: int
    atom: Atom
    excluded: tuple[str, ...] = ()
    valid: bool = True
    canceled_by: tuple[int, Atom] | None = None

    def brace_text(self) -> str:
        inner = f"Pr={self.priority}, Data={self.atom.text()}"
        for c in self.excluded:
            inner += f", A\\={c}"
        return "{" + inner + "}"


@dataclass
class MergeStore:
    """Mutable store of prioritized data and symmetric inconsistency pairs."""

    items: list[DataItem] = field(default_factory=list)
    inconsistencies: set[tuple[Atom, Atom]] = field(default_factory=set)

    def add_data(self, priority: int, atom: Atom) -> None:
        item = DataItem(priority, atom)
        if item not in self.items:
            self.items.append(item)

    def add_inconsistency(self, a: Atom, b: Atom) -> None:
        """Record the pair in both directions; re-declaration is a no-op."""
        if not a.ground or not b.ground:
            raise ValueError("inconsistency declarations must be ground")
        self.inconsistencies.add((a, b))
        self.inconsistencies.add((b, a))

    def constants(self) -> list[str]:
        """Every constant mentioned in data or inconsistency declarations."""
        found = set()
        for item in self.items:
            if item.atom.ground:
                found.add(item.atom.arg)
        for a, b in self.inconsistencies:
            found.add(a.arg)
            found.add(b.arg)
        return sorted(found)

    def _partners(self, atom: Atom) -> list[Atom]:
        return sorted(
            (b for a, b in self.inconsistencies if a == atom),
            key=lambda x: (x.functor, x.arg),
        )

    def canceled(self, item: DataItem, instance: str | None = None) -> tuple[int, Atom] | None:
        """A strictly-higher-priority witness inconsistent with the item, if any.

        Variable atoms must be instantiated first.  The witness itself need
        not be valid.  The most confident witness is returned.
        """
        atom = item.atom
        if not atom.ground:
            if instance is None:
                raise ValueError("variable atom needs a ground instance")
            atom = Atom(atom.functor, instance)
        best: tuple[int, Atom] | None = None
        for partner in self._partners(atom):
            for other in self.items:
                if other.priority <= item.priority:
                    continue
                matches = other.atom == partner or (
                    not other.atom.ground and other.atom.functor == partner.functor
                )
                if matches:
                    key = (other.priority, partner.functor, partner.arg)
                    if best is None or key > (best[0], best[1].functor, best[1].arg):
                        best = (other.priority, partner)
        return best

    def valid_data(self) -> list[Verdict]:
        """Verdicts for the whole store, sorted by (priority, functor, arg).

        Ground items are valid iff nothing cancels them; variable items are
        valid with the excluded constants listed as disequalities.
        """
        domain = self.constants()
        verdicts = []
        for item in sorted(
            self.items, key=lambda it: (it.priority, it.atom.functor, it.atom.arg or "")
        ):
            if item.atom.ground:
                witness = self.canceled(item)
                verdicts.append(
                    Verdict(
                        item.priority,
                        item.atom,
                        valid=witness is None,
                        canceled_by=witness,
                    )
                )
            else:
                excluded = tuple(
                    c for c in domain if self.canceled(item, instance=c) is not None
                )
                verdicts.append(Verdict(item.priority, item.atom, excluded=excluded))
        return verdicts


def _parse_atom(arg: object, line: int) -> Atom:
    if isinstance(arg, Term) and len(arg.args) == 1:
        inner = arg.args[0]
        if isinstance(inner, Var):
            return Atom(arg.functor, None)
        if isinstance(inner, Term) and not inner.args:
            return Atom(arg.functor, inner.functor)
    raise FactSyntaxError("expected a unary atom like boiler(gas)", line)


def load_scenario(text: str) -> MergeStore:
    """Build a store from `data/2` and `inconsistent/2` statements."""
    store = MergeStore()
    for t in parse_program(text):
        if t.functor == "data" and len(t.args) == 2:
            prio = t.args[0]
            if not hasattr(prio, "denominator") or prio.denominator != 1:
                raise FactSyntaxError("data priority must be an integer", t.line)
            store.add_data(int(prio), _parse_atom(t.args[1], t.line))
        elif t.functor == "inconsistent" and len(t.args) == 2:
            store.add_inconsistency(
                _parse_atom(t.args[0], t.line), _parse_atom(t.args[1], t.line)
            )
        else:
            raise FactSyntaxError(
                f"unexpected statement {t.functor}/{len(t.args)} in scenario", t.line
            )
    return store


def merge_report(store: MergeStore) -> Iterable[str]:
    """Printable lines: valid verdicts in brace notation, then invalid ones."""
    verdicts = store.valid_data()
    for v in verdicts:
        if v.valid:
            yield v.brace_text()
    for v in verdicts:
        if not v.valid:
            pr, atom = v.canceled_by
            yield (
                f"invalid: {v.brace_text()} canceled by "
                + "{" + f"Pr={pr}, Data={atom.text()}" + "}"
            )
