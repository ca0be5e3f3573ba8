from collections import Counter
from enum import Enum
from functools import lru_cache, reduce
from itertools import combinations, permutations
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Tuple

from yaml import Loader, load

from chein_helper.config import DATA
from chein_helper.error import CheinError, TermError, log
from chein_helper.group import (
    CentralElement,
    FiniteGroup,
    StarMap,
    enumerate_star_maps,
    g0_candidates,
    load_group,
    predicate_pb,
    predicate_pc,
    predicate_ps,
    resolve_star,
)
from chein_helper.word import GroupIdentity, GroupWord, IdentitySet, Letter, canonicalize, star_rename


class Atom(str, Enum):
    PC = "PC"
    PB = "PB"
    PS = "PS"

    def __str__(self):
        return self.value


_ATOM_ORDER = (Atom.PC, Atom.PB, Atom.PS)


class Condition(NamedTuple):
    """
    A conjunction of atoms and raw group identities, or ``never``.
    Always built through ``Condition.of`` so that it stays normalized.
    """

    atoms: FrozenSet[Atom] = frozenset()
    raw: FrozenSet[GroupIdentity] = frozenset()
    never: bool = False

    @classmethod
    def of(cls, atoms: Iterable[Atom] = (), raw: Iterable[GroupIdentity] = (), never: bool = False) -> "Condition":
        if never:
            return cls(frozenset(), frozenset(), True)
        atoms = frozenset(atoms)
        # a commutative G has trivial G/Z(G)
        if Atom.PC in atoms:
            atoms -= {Atom.PB}
        return cls(atoms, frozenset(raw), False)

    @classmethod
    def parse(cls, text: str) -> "Condition":
        """
        Read the display vocabulary back: ``never``, ``always``, ``PB&PS``,
        ``raw: xyzxy = yxzyx``.
        """
        text = text.strip()
        if text == "never":
            return NEVER
        if text == "always":
            return ALWAYS
        atoms, raw = [], []
        for part in text.split("&"):
            part = part.strip()
            if part.startswith("raw:"):
                raw.append(canonicalize(GroupIdentity.parse(part[4:])))
            elif part in Atom.__members__:
                atoms.append(Atom(part))
            else:
                raise TermError(f"Illegal condition: '{text}'.")
        return cls.of(atoms, raw)

    @property
    def is_raw(self) -> bool:
        return bool(self.raw)

    def __and__(self, other: "Condition") -> "Condition":
        return Condition.of(self.atoms | other.atoms, self.raw | other.raw, self.never or other.never)

    def __str__(self):
        if self.never:
            return "never"
        parts = ["&".join(str(a) for a in _ATOM_ORDER if a in self.atoms)] if self.atoms else []
        parts += [f"raw: {i}" for i in sorted(self.raw)]
        return " & ".join(parts) or "always"

    def __repr__(self):
        return f"<Condition {self}>"


ALWAYS = Condition.of()
NEVER = Condition.of(never=True)
PC = Condition.of([Atom.PC])
PB = Condition.of([Atom.PB])
PS = Condition.of([Atom.PS])


def raw_condition(identity: GroupIdentity) -> Condition:
    return Condition.of(raw=[identity])


class Witness(NamedTuple):
    group: FiniteGroup
    star: StarMap
    g0: int

    @property
    def signature(self) -> Tuple[bool, bool, bool]:
        return predicate_pc(self.group), predicate_pb(self.group), predicate_ps(self.group, self.star)

    def __str__(self):
        return f"{self.group.name} {self.star} g0={self.g0}"


class WitnessBattery(tuple):
    """
    Admissible (G, star, g0) triples with nonidentical stars, used to test
    identities and conditions semantically.
    """

    def signatures(self) -> Dict[Witness, Tuple[bool, bool, bool]]:
        return {w: w.signature for w in self}

    def __str__(self):
        return "\n".join(f"{w}: {format_signature(w.signature)}" for w in self)


def format_signature(sig: Tuple[bool, bool, bool]) -> str:
    return "&".join(("" if held else "~") + a.value for a, held in zip(_ATOM_ORDER, sig))


def load_battery(path: str | Path = DATA / "battery.yml") -> WitnessBattery:
    with open(path, "r") as f:
        config = load(f, Loader=Loader)
    members = []
    for entry in config["members"]:
        group = load_group(entry["group"])
        star = resolve_star(group, entry.get("star", "inverse"))
        g0 = CentralElement.checked(group, star, int(entry.get("g0", 0)))
        witness = Witness(group, star, g0.index)
        if not star.nonidentical:
            raise CheinError(f"Battery member {witness} has an identical star map.")
        if "signature" in entry and entry["signature"] != format_signature(witness.signature):
            raise CheinError(
                f"Battery member {witness} has signature {format_signature(witness.signature)}, "
                f"not {entry['signature']}."
            )
        members.append(witness)
    log.debug(f"Loaded a battery of {len(members)} from {path}")
    return WitnessBattery(members)


@lru_cache(maxsize=None)
def default_battery() -> WitnessBattery:
    return load_battery()


SEARCH_GROUPS = [
    "cyclic:2",
    "cyclic:3",
    "cyclic:4",
    "cyclic:2 x cyclic:2",
    "symmetric:3",
    "cyclic:8",
    "cyclic:2 x cyclic:4",
    "dihedral:4",
    "quaternion:8",
    "dihedral:6",
    "quaternion:12",
    "cyclic:3 x cyclic:4",
    "cyclic:2 x symmetric:3",
    "cyclic:16",
    "dihedral:8",
    "quaternion:16",
    "modular:16",
    "cyclic:2 x dihedral:4",
    "cyclic:2 x quaternion:8",
    "cyclic:4 x cyclic:4",
]


def discover_battery(groups: Iterable[str] = SEARCH_GROUPS) -> Dict[Tuple[bool, bool, bool], Witness]:
    """
    The first admissible triple found for every realised (PC, PB, PS)
    signature, with nonidentical star and the largest admissible g0.
    """
    found = {}
    for spec in groups:
        group = load_group(spec)
        for star in enumerate_star_maps(group):
            if not star.nonidentical:
                continue
            witness = Witness(group, star, g0_candidates(group, star)[-1].index)
            if (sig := witness.signature) not in found:
                log.debug(f"Signature {format_signature(sig)} realised by {witness}")
                found[sig] = witness
    return found


def condition_holds(c: Condition, group: FiniteGroup, star: StarMap, g0: int) -> bool:
    if c.never:
        return False
    checks = {
        Atom.PC: lambda: predicate_pc(group),
        Atom.PB: lambda: predicate_pb(group),
        Atom.PS: lambda: predicate_ps(group, star),
    }
    if not all(checks[a]() for a in c.atoms):
        return False
    return all(i.holds(group.table, star.array, g0) for i in c.raw)


def signature_probe(identity: GroupIdentity, battery: Optional[WitnessBattery] = None) -> Dict[Witness, bool]:
    battery = default_battery() if battery is None else battery
    return {w: identity.holds(w.group.table, w.star.array, w.g0) for w in battery}


_PATTERN_SOURCES = [
    ("x* = x", NEVER),
    ("x x y = y x x", PB),
    ("x y x* = x* y x", PB),
    ("x x* y = x* y x", PC),
    ("x y = y x", PC),
    ("x x y = y x* x*", Condition.of([Atom.PB, Atom.PS])),
    ("x x = x* x*", PS),
]
_NAMES = "abcdefghijklmnopqrstuvw"


def pattern_key(identity: GroupIdentity) -> str:
    """
    A name for ``identity`` that is the same for all its variants under
    renaming, star flips on whole variables and swapping the two sides.
    """
    names = identity.variables
    keys = []
    for target in permutations(_NAMES[:len(names)]):
        mapping = dict(zip(names, target))
        for k in range(len(names) + 1):
            for flip in combinations(names, k):
                renamed = identity.rename(mapping, frozenset(flip))
                keys.append(str(canonicalize(renamed)))
                keys.append(str(canonicalize(renamed.swapped())))
    return min(keys)


@lru_cache(maxsize=None)
def _patterns() -> Dict[str, Condition]:
    return {pattern_key(GroupIdentity.parse(src)): c for src, c in _PATTERN_SOURCES}


def _pattern_condition(identity: GroupIdentity) -> Optional[Condition]:
    if len(identity.variables) > 2 or len(identity.lhs.letters) + len(identity.rhs.letters) > 6:
        return None
    return _patterns().get(pattern_key(identity))


def specializations(identity: GroupIdentity) -> Iterator[GroupIdentity]:
    """
    The nontrivial identities obtained by putting 1 for a proper, nonempty
    subset of the variables.
    """
    names = identity.variables
    for k in range(1, len(names)):
        for unit in combinations(names, k):
            spec = star_rename(identity.substitute_unit(unit))
            if not spec.is_trivial:
                yield spec


def _fold_star_squares(word: GroupWord) -> GroupWord:
    out = []
    for l in word.letters:
        if l.starred and out and out[-1] == l:
            out[-1] = Letter(l.var)
            out.append(Letter(l.var))
        else:
            out.append(l)
    return GroupWord(word.g0_exp, tuple(out))


def _extract_central(word: GroupWord, ps: bool) -> Tuple[GroupWord, Counter]:
    """
    Pull out adjacent squares and adjacent v v* pairs, which are central.
    """
    central = Counter()
    stack: List[Letter] = []
    for l in word.letters:
        if stack and stack[-1].var == l.var:
            top = stack.pop()
            if top == l:
                central[(l.var, l.starred and not ps)] += 1
            else:
                central[(l.var, "pair")] += 1
        else:
            stack.append(l)
    return GroupWord(word.g0_exp, tuple(stack)), central


def _holds_abelian(identity: GroupIdentity, ps: bool) -> bool:
    def counts(word: GroupWord) -> Counter:
        c = Counter((l.var, l.starred) for l in word.letters)
        if ps:
            for var in {l.var for l in word.letters}:
                moved = c[(var, True)] - c[(var, True)] % 2
                c[(var, True)] -= moved
                c[(var, False)] += moved
        return +c

    return identity.lhs.g0_exp == identity.rhs.g0_exp and counts(identity.lhs) == counts(identity.rhs)


def _holds_central_squares(identity: GroupIdentity, ps: bool) -> bool:
    left, right = Counter(), Counter()
    current = identity
    while True:
        lhs, rhs = current
        if ps:
            lhs, rhs = _fold_star_squares(lhs), _fold_star_squares(rhs)
        lhs, lc = _extract_central(lhs, ps)
        rhs, rc = _extract_central(rhs, ps)
        left, right = left + lc, right + rc
        nxt = canonicalize(GroupIdentity(lhs, rhs))
        if nxt == current:
            break
        current = nxt
    return current.is_trivial and left == right


def _holds_star_squares(identity: GroupIdentity) -> bool:
    current = identity
    while True:
        nxt = canonicalize(GroupIdentity(_fold_star_squares(current.lhs), _fold_star_squares(current.rhs)))
        if nxt == current:
            return current.is_trivial
        current = nxt


def holds_under(identity: GroupIdentity, atoms: FrozenSet[Atom]) -> bool:
    """
    Whether ``identity`` can be rewritten to a trivial one using the atoms.
    False means no derivation was found, not that the identity fails.
    """
    ps = Atom.PS in atoms
    if Atom.PC in atoms:
        return _holds_abelian(identity, ps)
    if Atom.PB in atoms:
        return _holds_central_squares(identity, ps)
    if ps:
        return _holds_star_squares(identity)
    return False


def _claim(identity: GroupIdentity) -> Optional[Condition]:
    if (direct := _pattern_condition(identity)) is not None:
        return direct
    implied = reduce(
        Condition.__and__,
        (c for s in specializations(identity) if (c := _pattern_condition(s)) is not None),
        ALWAYS,
    )
    if implied.never:
        return NEVER
    if implied.atoms and holds_under(identity, implied.atoms):
        return implied
    return None


@lru_cache(maxsize=None)
def classify_identity(identity: GroupIdentity, battery: Optional[WitnessBattery] = None) -> Condition:
    """
    What a canonical identity says about (G, *, g0). Every answer other than
    a raw one is checked against the witness battery first.
    """
    identity = canonicalize(identity)
    if identity.is_trivial:
        return ALWAYS
    if identity.lhs.g0_exp != identity.rhs.g0_exp:
        return raw_condition(identity)
    claim = _claim(identity)
    if claim is None:
        return raw_condition(identity)
    battery = default_battery() if battery is None else battery
    for w, held in signature_probe(identity, battery).items():
        if condition_holds(claim, w.group, w.star, w.g0) != held:
            log.warning(f"{identity} was classified {claim}, but {w} disagrees; keeping it raw")
            return raw_condition(identity)
    return claim


def classify_set(psi_set: IdentitySet, battery: Optional[WitnessBattery] = None) -> Condition:
    return reduce(Condition.__and__, (classify_identity(i, battery) for i in psi_set), ALWAYS)
