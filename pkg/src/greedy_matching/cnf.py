"""CNF formulas, DIMACS parsing, occurrence normalization and a brute-force MAX-SAT oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .errors import InputError, ParseError, PreconditionError

MAX_BRUTE_FORCE_VARS = 24


@dataclass(frozen=True)
class CnfFormula:
    """Clauses over variables ``1..n_vars``; a literal is a signed variable index.

    Repeated literals inside a clause are merged; a clause holding both a
    variable and its negation is rejected.
    """

    n_vars: int
    clauses: tuple
    max_clause_len: int = field(default=3, compare=False)

    def __post_init__(self):
        if self.n_vars < 0:
            raise InputError("negative variable count")
        cleaned = []
        for j, clause in enumerate(self.clauses):
            lits = tuple(dict.fromkeys(int(x) for x in clause))
            if not lits:
                raise InputError(f"clause {j + 1} is empty")
            for lit in lits:
                if lit == 0 or abs(lit) > self.n_vars:
                    raise InputError(f"clause {j + 1}: literal {lit} out of range 1..{self.n_vars}")
                if -lit in lits:
                    raise InputError(f"clause {j + 1} contains x{abs(lit)} and its negation")
            if len(lits) > self.max_clause_len:
                raise InputError(f"clause {j + 1} has {len(lits)} literals (max {self.max_clause_len})")
            cleaned.append(lits)
        object.__setattr__(self, "clauses", tuple(cleaned))

    @property
    def n_clauses(self) -> int:
        return len(self.clauses)

    def occurrences(self) -> dict[int, tuple[int, int]]:
        """Variable -> (positive count, negative count), for variables that occur."""
        occ: dict[int, list] = {}
        for clause in self.clauses:
            for lit in clause:
                c = occ.setdefault(abs(lit), [0, 0])
                c[lit < 0] += 1
        return {v: tuple(c) for v, c in sorted(occ.items())}

    def max_occurrence(self) -> int:
        return max((p + q for p, q in self.occurrences().values()), default=0)


def clause_satisfied(clause, tau: Mapping[int, bool]) -> bool:
    return any(tau.get(abs(lit), False) == (lit > 0) for lit in clause)


def satisfied_clauses(f: CnfFormula, tau: Mapping[int, bool]) -> int:
    """Number of clauses satisfied by ``tau`` (unassigned variables read as false)."""
    return sum(clause_satisfied(c, tau) for c in f.clauses)


# -- DIMACS ----------------------------------------------------------------------


def parse_dimacs(text: str, max_clause_len: int = 3) -> CnfFormula:
    n_vars = n_declared = None
    clauses = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf" or n_vars is not None:
                raise ParseError("expected a single 'p cnf <vars> <clauses>' line", lineno)
            try:
                n_vars, n_declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("non-integer in problem line", lineno) from None
            continue
        if n_vars is None:
            raise ParseError("clause before the 'p cnf' line", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", lineno) from None
            if lit != 0:
                if abs(lit) > n_vars:
                    raise ParseError(f"literal {lit} exceeds declared {n_vars} variables", lineno)
                current.append(lit)
                continue
            if not current:
                raise ParseError("empty clause", lineno)
            if len(set(current)) > max_clause_len:
                raise ParseError(f"clause longer than {max_clause_len} literals", lineno)
            if any(-x in current for x in current):
                raise ParseError("clause contains a variable and its negation", lineno)
            clauses.append(tuple(current))
            current = []
    if n_vars is None:
        raise ParseError("missing 'p cnf' line")
    if current:
        raise ParseError("last clause is not terminated by 0")
    if len(clauses) != n_declared:
        raise ParseError(f"header declares {n_declared} clauses, found {len(clauses)}")
    return CnfFormula(n_vars, tuple(clauses), max_clause_len)


def format_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.n_vars} {f.n_clauses}"]
    lines += [" ".join(map(str, c)) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"


def read_dimacs(path, max_clause_len: int = 3) -> CnfFormula:
    return parse_dimacs(Path(path).read_text(), max_clause_len)


# -- normalization ---------------------------------------------------------------


@dataclass(frozen=True)
class NormalizedFormula:
    """A formula rewritten so every variable occurs once positively and once or twice negatively.

    ``provenance[i - 1] = (source_var, flipped)`` for new variable ``i``;
    ``fixed`` holds the values given to eliminated pure variables and
    ``removed_clauses`` the source clauses they satisfy.
    """

    formula: CnfFormula
    source: CnfFormula
    provenance: tuple
    fixed: Mapping[int, bool]
    removed_clauses: tuple

    @property
    def n_vars(self) -> int:
        return self.formula.n_vars

    @property
    def clauses(self) -> tuple:
        return self.formula.clauses

    def to_source_assignment(self, tau: Mapping[int, bool]) -> dict[int, bool]:
        out = {v: False for v in range(1, self.source.n_vars + 1)}
        out.update(self.fixed)
        for i, (src, flipped) in enumerate(self.provenance, start=1):
            out[src] = tau.get(i, False) != flipped
        return out

    def from_source_assignment(self, tau: Mapping[int, bool]) -> dict[int, bool]:
        return {
            i: tau.get(src, False) != flipped
            for i, (src, flipped) in enumerate(self.provenance, start=1)
        }


def normalize(f: CnfFormula, max_occurrences: int = 3) -> NormalizedFormula:
    """Eliminate pure variables and fix polarities.

    Pure variables are set to the value satisfying all their occurrences and
    their clauses dropped, repeatedly. A variable occurring twice positively
    and once negatively is replaced by its negation. Surviving variables are
    renumbered ``1..n`` in increasing source order; clause order is kept.
    """
    if f.max_occurrence() > max_occurrences:
        bad = [v for v, (p, q) in f.occurrences().items() if p + q > max_occurrences]
        raise PreconditionError(f"variables {bad} occur more than {max_occurrences} times")
    live = list(range(f.n_clauses))
    fixed: dict[int, bool] = {}
    while True:
        occ: dict[int, list] = {}
        for j in live:
            for lit in f.clauses[j]:
                occ.setdefault(abs(lit), [0, 0])[lit < 0] += 1
        pure = {v: pos > 0 for v, (pos, neg) in occ.items() if pos == 0 or neg == 0}
        if not pure:
            break
        fixed.update(pure)
        live = [j for j in live if not any(pure.get(abs(x)) == (x > 0) for x in f.clauses[j])]
    removed = tuple(j for j in range(f.n_clauses) if j not in set(live))
    flipped = {v for v, (pos, neg) in occ.items() if pos == 2}
    new_id = {v: i for i, v in enumerate(sorted(occ), start=1)}
    clauses = tuple(
        tuple((1 if (x > 0) != (abs(x) in flipped) else -1) * new_id[abs(x)] for x in f.clauses[j])
        for j in live
    )
    provenance = tuple((v, v in flipped) for v in sorted(occ))
    formula = CnfFormula(len(new_id), clauses, f.max_clause_len)
    return NormalizedFormula(formula, f, provenance, fixed, removed)


def is_normalized(f: CnfFormula) -> bool:
    return all(p == 1 and q in (1, 2) for p, q in f.occurrences().values()) and len(
        f.occurrences()
    ) == f.n_vars


# -- brute force -----------------------------------------------------------------


def brute_force_max_sat(f: CnfFormula) -> tuple[int, dict[int, bool]]:
    """Maximum number of simultaneously satisfiable clauses, by scanning all 2^n assignments."""
    if f.n_vars > MAX_BRUTE_FORCE_VARS:
        raise PreconditionError(f"brute force limited to {MAX_BRUTE_FORCE_VARS} variables")
    masks = []
    for clause in f.clauses:
        pos = neg = 0
        for lit in clause:
            if lit > 0:
                pos |= 1 << (lit - 1)
            else:
                neg |= 1 << (-lit - 1)
        masks.append((pos, neg))
    full = (1 << f.n_vars) - 1
    best, best_bits = -1, 0
    for bits in range(1 << f.n_vars):
        inv = full & ~bits
        k = sum(1 for pos, neg in masks if bits & pos or inv & neg)
        if k > best:
            best, best_bits = k, bits
            if best == len(masks):
                break
    tau = {v: bool(best_bits >> (v - 1) & 1) for v in range(1, f.n_vars + 1)}
    return best, tau


def is_satisfiable(f: CnfFormula) -> bool:
    return brute_force_max_sat(f)[0] == f.n_clauses


def random_assignment_clause_probability(clause_len: int):
    """Fraction of assignments of a clause's variables that satisfy it: 1 - 2^-len."""
    return 1 - Fraction(1, 2**clause_len)


__all__ = [
    "CnfFormula",
    "NormalizedFormula",
    "parse_dimacs",
    "format_dimacs",
    "read_dimacs",
    "normalize",
    "is_normalized",
    "brute_force_max_sat",
    "is_satisfiable",
    "satisfied_clauses",
    "clause_satisfied",
]
