from pathlib import Path
from typing import Dict, NamedTuple, Optional

import numpy as np

from chein_helper._common import cached_property, frozen, valuations
from chein_helper.error import CheinError, log
from chein_helper.group import CentralElement, FiniteGroup, StarMap, format_cayley
from chein_helper.term import LoopIdentity, LoopTerm, Var, format_identity
from chein_helper.theta import MultQuadruple, ThetaElem


class Provenance(NamedTuple):
    group: FiniteGroup
    star: StarMap
    g0: int
    quadruple: MultQuadruple

    def comments(self):
        return [
            f"group {self.group.name}",
            f"star {self.star}",
            f"g0 {self.g0}",
            f"quadruple {self.quadruple}",
        ]


def theta_block(group: FiniteGroup, star: StarMap, g0: int, theta: ThetaElem) -> np.ndarray:
    """
    ``block[g, h]`` is the index of Delta theta(g, h).
    """
    e = np.arange(group.order)
    a, b = np.broadcast_arrays(e[:, None], e[None, :])
    if theta.swap:
        a, b = b, a
    s = star.array
    if theta.star_first:
        a = s[a]
    if theta.star_second:
        b = s[b]
    shift = group.power(g0, theta.g0_exp)
    return group.table[shift, group.table[a, b]]


class LoopTable:
    """
    A quasigroup on G and Gu; element ``g`` of G has index g, ``gu`` has index n + g.
    """

    def __init__(self, table, provenance: Optional[Provenance] = None):
        self.table = frozen(table)
        self.order = len(self.table)
        self.provenance = provenance

    @classmethod
    def build(cls, group: FiniteGroup, star: StarMap, g0: int, quadruple: MultQuadruple) -> "LoopTable":
        star.validate()
        g0 = CentralElement.checked(group, star, int(g0)).index
        n = group.order
        blocks = [theta_block(group, star, g0, theta) for theta in quadruple]
        table = np.block([[blocks[0], blocks[1] + n], [blocks[2] + n, blocks[3]]])
        loop = cls(table, Provenance(group, star, g0, quadruple))
        if not loop.is_latin():
            raise CheinError(f"Q({group}, {star}, {g0}, {quadruple}) is not a quasigroup.")
        log.debug(f"Built {loop!r}")
        return loop

    def is_latin(self) -> bool:
        e = np.arange(self.order)
        return bool(
            (np.sort(self.table, axis=1) == e).all() and (np.sort(self.table, axis=0) == e[:, None]).all()
        )

    def neutral_element(self) -> Optional[int]:
        e = np.arange(self.order)
        for i in range(self.order):
            if np.array_equal(self.table[i], e) and np.array_equal(self.table[:, i], e):
                return i
        return None

    @cached_property
    def _neutral(self) -> int:
        e = self.neutral_element()
        return 0 if e is None else e

    def is_loop(self) -> bool:
        """
        Whether element 0, the neutral element of G, is neutral in the whole table.
        """
        e = np.arange(self.order)
        return bool(np.array_equal(self.table[0], e) and np.array_equal(self.table[:, 0], e))

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def evaluate(self, term: LoopTerm, values: Dict[str, np.ndarray]) -> np.ndarray:
        if isinstance(term, Var):
            return values[term.name]
        return self.table[self.evaluate(term.left, values), self.evaluate(term.right, values)]

    def identity_witness(self, psi: LoopIdentity) -> Optional[Dict[str, int]]:
        """
        A valuation falsifying ``psi``, or None if it holds for all valuations.
        """
        names = psi.variables
        grid = valuations(self.order, len(names))
        values = dict(zip(names, grid))
        bad = np.flatnonzero(self.evaluate(psi.lhs, values) != self.evaluate(psi.rhs, values))
        if not bad.size:
            return None
        witness = {name: int(grid[i, bad[0]]) for i, name in enumerate(names)}
        log.debug(f"{format_identity(psi)} fails in {self!r} at {witness}")
        return witness

    def check_identity(self, psi: LoopIdentity) -> bool:
        return self.identity_witness(psi) is None

    def opposite(self) -> "LoopTable":
        p = self.provenance
        if p is not None:
            p = p._replace(quadruple=p.quadruple.opposite())
        return LoopTable(self.table.T, p)

    @cached_property
    def left_division(self) -> np.ndarray:
        """
        ``left_division[a, b]`` is the x with a x = b.
        """
        e = np.arange(self.order)
        out = np.empty_like(self.table)
        out[e[:, None], self.table] = e[None, :]
        return frozen(out)

    @cached_property
    def right_division(self) -> np.ndarray:
        """
        ``right_division[b, a]`` is the x with x a = b.
        """
        e = np.arange(self.order)
        out = np.empty_like(self.table)
        out[self.table, e[None, :]] = e[:, None]
        return frozen(out)

    def has_two_sided_inverses(self) -> bool:
        e = self.neutral_element()
        if e is None:
            return False
        right = np.argmax(self.table == e, axis=1)
        return bool((self.table[right, np.arange(self.order)] == e).all())

    def subloop(self, generators) -> np.ndarray:
        """
        The closure of ``generators`` and the neutral element under
        multiplication and both divisions.
        """
        members = set(int(g) for g in generators) | {self._neutral}
        while True:
            s = np.array(sorted(members))
            a, b = s[:, None], s[None, :]
            new = set(self.table[a, b].ravel().tolist())
            new |= set(self.left_division[a, b].ravel().tolist())
            new |= set(self.right_division[a, b].ravel().tolist())
            if new <= members:
                return s
            members |= new

    def is_associative_on(self, s: np.ndarray) -> bool:
        t = self.table
        x, y, z = s[:, None, None], s[None, :, None], s[None, None, :]
        return bool(np.array_equal(t[t[x, y], z], t[x, t[y, z]]))

    def is_associative(self) -> bool:
        return self.is_associative_on(np.arange(self.order))

    def is_diassociative(self) -> bool:
        """
        Whether every subloop generated by two elements is a group.
        """
        seen = {}
        for a in range(self.order):
            for b in range(a, self.order):
                s = self.subloop((a, b))
                key = s.tobytes()
                if key not in seen:
                    seen[key] = self.is_associative_on(s)
                if not seen[key]:
                    log.debug(f"<{a}, {b}> is not associative in {self!r}")
                    return False
        return True

    def dumps(self) -> str:
        comments = self.provenance.comments() if self.provenance is not None else []
        return format_cayley(self.table, comments)

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps())

    def __eq__(self, other):
        return isinstance(other, LoopTable) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __len__(self):
        return self.order

    def __repr__(self):
        if self.provenance is None:
            return f"<LoopTable of order {self.order}>"
        p = self.provenance
        return f"<LoopTable Q({p.group.name}, {p.star}, {p.g0}, {p.quadruple})>"


def build_loop(group: FiniteGroup, star: StarMap, g0: int, quadruple: MultQuadruple) -> LoopTable:
    return LoopTable.build(group, star, g0, quadruple)


def check_isomorphism(a: LoopTable, b: LoopTable, f) -> bool:
    """
    Whether the element map ``f`` (``f[x]`` is the image of x) is an
    isomorphism from ``a`` onto ``b``.
    """
    f = np.asarray(f, dtype=np.int64)
    if a.order != b.order:
        raise ValueError(f"Illegal argument: tables of order {a.order} and {b.order}.")
    if f.shape != (a.order,) or not np.array_equal(np.sort(f), np.arange(a.order)):
        raise ValueError("Illegal argument: the map is not a bijection.")
    return bool(np.array_equal(f[a.table], b.table[f[:, None], f[None, :]]))


def shift_map(group: FiniteGroup, t: int) -> np.ndarray:
    """
    g -> t^-1 g and gu -> (t^-1 g)u.
    """
    row = group.table[group.inverse[t]]
    return np.concatenate([row, row + group.order])


def star_coset_map(star: StarMap) -> np.ndarray:
    """
    g -> g and gu -> g*u.
    """
    n = star.group.order
    return np.concatenate([np.arange(n), star.array + n])
