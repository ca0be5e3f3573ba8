import re
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Tuple

import numpy as np

from chein_helper._common import valuations
from chein_helper.error import TermError

_TOKEN = re.compile(r"\s*(?:(g0)(?:\^(-?\d+))?|([a-z])(\*?)|(1))")


class Letter(NamedTuple):
    var: str
    starred: bool = False

    def star(self) -> "Letter":
        return Letter(self.var, not self.starred)

    def __str__(self):
        return self.var + "*" * self.starred


class GroupWord(NamedTuple):
    """
    g0^g0_exp followed by letters; g0 never appears among the letters.
    """

    g0_exp: int = 0
    letters: Tuple[Letter, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        """
        Read ``g0^2 x z* y*``, ``xz*y*y*`` or ``1``.
        """
        exp, letters, pos = 0, [], 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                raise TermError(f"Illegal word: '{text}'.")
            g0, power, var, star, one = m.groups()
            if g0:
                exp += 1 if power is None else int(power)
            elif var:
                letters.append(Letter(var, bool(star)))
            pos = m.end()
        return cls(exp, tuple(letters))

    @classmethod
    def of(cls, var: str) -> "GroupWord":
        return cls(0, (Letter(var),))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.g0_exp + other.g0_exp, self.letters + other.letters)

    def star(self) -> "GroupWord":
        """
        (gh)* = h*g*, and g0* = g0.
        """
        return GroupWord(self.g0_exp, tuple(l.star() for l in reversed(self.letters)))

    def shift(self, n: int) -> "GroupWord":
        return GroupWord(self.g0_exp + n, self.letters)

    @property
    def variables(self) -> FrozenSet[str]:
        return frozenset(l.var for l in self.letters)

    def without(self, variables: Iterable[str]) -> "GroupWord":
        drop = set(variables)
        return GroupWord(self.g0_exp, tuple(l for l in self.letters if l.var not in drop))

    def rename(self, mapping: Dict[str, str], flip: FrozenSet[str] = frozenset()) -> "GroupWord":
        return GroupWord(
            self.g0_exp,
            tuple(Letter(mapping.get(l.var, l.var), l.starred != (l.var in flip)) for l in self.letters),
        )

    def evaluate(self, table: np.ndarray, star: np.ndarray, g0: int, values: Dict[str, np.ndarray]):
        """
        Evaluate over arrays of element indices, one array per variable.
        """
        shape = next(iter(values.values())).shape if values else (1,)
        step = g0 if self.g0_exp > 0 else int(np.argmax(table[g0] == 0))
        start = 0
        for _ in range(abs(self.g0_exp)):
            start = int(table[start, step])
        out = np.full(shape, start, dtype=np.int64)
        for l in self.letters:
            v = values[l.var]
            out = table[out, star[v] if l.starred else v]
        return out

    def __str__(self):
        parts = []
        if self.g0_exp == 1:
            parts.append("g0")
        elif self.g0_exp:
            parts.append(f"g0^{self.g0_exp}")
        parts += [str(l) for l in self.letters]
        return " ".join(parts) or "1"


class GroupIdentity(NamedTuple):
    lhs: GroupWord
    rhs: GroupWord

    @classmethod
    def parse(cls, text: str) -> "GroupIdentity":
        sides = text.split("=")
        if len(sides) != 2:
            raise TermError(f"Illegal group identity: '{text}'.")
        return cls(*(GroupWord.parse(s) for s in sides))

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(sorted(self.lhs.variables | self.rhs.variables))

    @property
    def is_trivial(self) -> bool:
        return self.lhs == self.rhs

    def canonical(self) -> "GroupIdentity":
        return canonicalize(self)

    def substitute_unit(self, variables: Iterable[str]) -> "GroupIdentity":
        return substitute_unit(self, variables)

    def star_rename(self) -> "GroupIdentity":
        return star_rename(self)

    def rename(self, mapping: Dict[str, str], flip: FrozenSet[str] = frozenset()) -> "GroupIdentity":
        return GroupIdentity(self.lhs.rename(mapping, flip), self.rhs.rename(mapping, flip))

    def swapped(self) -> "GroupIdentity":
        return GroupIdentity(self.rhs, self.lhs)

    def witness(self, table: np.ndarray, star: np.ndarray, g0: int) -> Optional[Dict[str, int]]:
        """
        A valuation in the group falsifying the identity, or None if it holds.
        """
        names = self.variables
        grid = valuations(len(table), len(names))
        values = dict(zip(names, grid))
        lhs = self.lhs.evaluate(table, star, g0, values)
        rhs = self.rhs.evaluate(table, star, g0, values)
        bad = np.flatnonzero(lhs != rhs)
        if not bad.size:
            return None
        return {name: int(grid[i, bad[0]]) for i, name in enumerate(names)}

    def holds(self, table: np.ndarray, star: np.ndarray, g0: int) -> bool:
        return self.witness(table, star, g0) is None

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


class IdentitySet(frozenset):
    """
    A deduplicated set of canonical group identities.
    """

    @property
    def nontrivial(self) -> List[GroupIdentity]:
        return sorted(i for i in self if not i.is_trivial)

    def __str__(self):
        return "{" + ", ".join(str(i) for i in sorted(self)) + "}"


def star_word(w: GroupWord) -> GroupWord:
    return w.star()


def _normalize(word: GroupWord) -> GroupWord:
    """
    Rewrite x*x to xx* and hoist every adjacent xx* to the front, sorted by
    variable, until nothing changes.
    """
    body = list(word.letters)
    pairs = []
    changed = True
    while changed:
        changed = False
        for i in range(len(body) - 1):
            a, b = body[i], body[i + 1]
            if a.var == b.var and a.starred and not b.starred:
                body[i], body[i + 1] = b, a
                changed = True
        stack = []
        for l in body:
            if stack and stack[-1].var == l.var and not stack[-1].starred and l.starred:
                stack.pop()
                pairs.append(l.var)
                changed = True
            else:
                stack.append(l)
        body = stack
    front = tuple(l for v in sorted(pairs) for l in (Letter(v), Letter(v, True)))
    return GroupWord(word.g0_exp, front + tuple(body))


def _cancel(lhs: GroupWord, rhs: GroupWord) -> Tuple[GroupWord, GroupWord]:
    m = min(lhs.g0_exp, rhs.g0_exp)
    a, b = list(lhs.letters), list(rhs.letters)
    i = 0
    while i < len(a) and i < len(b) and a[i] == b[i]:
        i += 1
    a, b = a[i:], b[i:]
    while a and b and a[-1] == b[-1]:
        a.pop()
        b.pop()
    return GroupWord(lhs.g0_exp - m, tuple(a)), GroupWord(rhs.g0_exp - m, tuple(b))


@lru_cache(maxsize=None)
def canonicalize(identity: GroupIdentity) -> GroupIdentity:
    """
    Normalize both sides and cancel common ends and common g0 powers,
    repeated to a fixpoint.
    """
    current = identity
    while True:
        lhs, rhs = _cancel(_normalize(current.lhs), _normalize(current.rhs))
        nxt = GroupIdentity(lhs, rhs)
        if nxt == current:
            return current
        current = nxt


def substitute_unit(identity: GroupIdentity, variables: Iterable[str]) -> GroupIdentity:
    variables = frozenset(variables)
    return canonicalize(GroupIdentity(identity.lhs.without(variables), identity.rhs.without(variables)))


def star_rename(identity: GroupIdentity) -> GroupIdentity:
    """
    Unstar every variable that only ever occurs starred.
    """
    letters = identity.lhs.letters + identity.rhs.letters
    plain = {l.var for l in letters if not l.starred}
    flip = frozenset(l.var for l in letters if l.var not in plain)
    if not flip:
        return identity
    return identity.rename({}, flip)
