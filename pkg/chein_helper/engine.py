from enum import IntEnum
from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, List, NamedTuple, Optional, Tuple

from chein_helper.error import NotStrictlyBalanced, log
from chein_helper.term import LoopIdentity, LoopTerm, Var, format_identity, leaves
from chein_helper.theta import MultQuadruple, ThetaElem
from chein_helper.word import GroupIdentity, GroupWord, IdentitySet, canonicalize


class Coset(IntEnum):
    G = 0
    GU = 1

    def __str__(self):
        return "G" if self is Coset.G else "Gu"


CosetAssignment = Dict[str, Coset]


class SymbolicValue(NamedTuple):
    """
    An element of G or Gu; ``word`` is the G-part, ``coset`` carries the u.
    """

    coset: Coset
    word: GroupWord

    def __str__(self):
        return f"{self.word}" if self.coset is Coset.G else f"({self.word})u"


class TraceLine(NamedTuple):
    assignment: Tuple[Coset, ...]
    lhs: GroupWord
    rhs: GroupWord
    canonical: GroupIdentity

    def __str__(self):
        f = "".join(str(c) for c in self.assignment)
        return f"f={f} : {self.lhs} = {self.rhs} -> {self.canonical}"


def select_map(q: MultQuadruple, left: Coset, right: Coset) -> ThetaElem:
    """
    The map of the quadruple that multiplies an element of ``left`` by one of ``right``.
    """
    return (q.alpha, q.beta, q.gamma, q.delta)[2 * left + right]


def evaluate_term(t: LoopTerm, f: CosetAssignment, q: MultQuadruple) -> SymbolicValue:
    if isinstance(t, Var):
        return SymbolicValue(f[t.name], GroupWord.of(t.name))
    a = evaluate_term(t.left, f, q)
    b = evaluate_term(t.right, f, q)
    theta = select_map(q, a.coset, b.coset)
    return SymbolicValue(Coset(a.coset ^ b.coset), theta.evaluate((a.word, b.word)))


def delta_usage(t: LoopTerm, f: CosetAssignment) -> int:
    """
    How many times the Gu-by-Gu map is used when evaluating ``t``.
    """
    if isinstance(t, Var):
        return 0
    count = delta_usage(t.left, f) + delta_usage(t.right, f)
    return count + (_coset(t.left, f) is Coset.GU and _coset(t.right, f) is Coset.GU)


def _coset(t: LoopTerm, f: CosetAssignment) -> Coset:
    return Coset(sum(f[name] for name in leaves(t)) % 2)


def assignments(variables) -> Iterator[CosetAssignment]:
    """
    All maps from ``variables`` to {G, Gu}, counting in binary with the first
    variable as the most significant digit.
    """
    for cosets in product(Coset, repeat=len(variables)):
        yield dict(zip(variables, cosets))


@lru_cache(maxsize=None)
def _collect(psi: LoopIdentity, q: MultQuadruple) -> Tuple[TraceLine, ...]:
    if not psi.strictly_balanced:
        raise NotStrictlyBalanced(f"{format_identity(psi)} is not strictly balanced.")
    lines = []
    for f in assignments(psi.variables):
        lhs = evaluate_term(psi.lhs, f, q)
        rhs = evaluate_term(psi.rhs, f, q)
        # strict balance puts both sides in the same coset
        if lhs.coset != rhs.coset:
            raise ValueError(f"Illegal argument: {format_identity(psi)} puts its sides in different cosets under {q}.")
        identity = canonicalize(GroupIdentity(lhs.word, rhs.word))
        lines.append(TraceLine(tuple(f.values()), lhs.word, rhs.word, identity))
    return tuple(lines)


def collect_identities(
        psi: LoopIdentity, q: MultQuadruple, trace: Optional[List[TraceLine]] = None
) -> IdentitySet:
    """
    The canonical group identities G must satisfy for the loop built with
    ``q`` to satisfy ``psi``, one per coset assignment, deduplicated.
    Pass a list as ``trace`` to receive the uncanonicalized pairs.
    """
    lines = _collect(psi, q)
    if trace is not None:
        trace.extend(lines)
    result = IdentitySet(line.canonical for line in lines)
    log.debug(f"{format_identity(psi)} under {q}: {len(result)} identities")
    return result
