import re
from itertools import permutations, product
from pathlib import Path
from typing import Iterable, List, NamedTuple, Optional, Tuple

import numpy as np

from chein_helper._common import cached_property, frozen
from chein_helper.error import GroupError, InadmissibleError, log


class FiniteGroup:
    """
    A finite group given by its Cayley table. Element 0 is always the identity,
    ``table[g, h]`` is the index of ``g*h``.
    """

    def __init__(self, table, name: str = "G"):
        try:
            table = np.array(table, dtype=np.int64)
        except ValueError:
            raise GroupError(f"Cayley table of {name} is ragged.")
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.size == 0:
            raise GroupError(f"Cayley table of {name} is not a square array.")
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            raise GroupError(f"Cayley table of {name} has entries outside 0..{n - 1}.")
        e = np.arange(n)
        if not (np.array_equal(table[0], e) and np.array_equal(table[:, 0], e)):
            raise GroupError(f"Element 0 of {name} is not a two-sided identity.")
        if (bad := np.argwhere(np.sort(table, axis=1) != e)).size:
            raise GroupError(f"Row {bad[0][0]} of {name} is not a permutation.")
        if (bad := np.argwhere(np.sort(table, axis=0) != e[:, None])).size:
            raise GroupError(f"Column {bad[0][1]} of {name} is not a permutation.")
        left = table[table]
        right = table[e[:, None, None], table[None, :, :]]
        if (bad := np.argwhere(left != right)).size:
            a, b, c = (int(i) for i in bad[0])
            raise GroupError(
                f"{name} is not associative at ({a}, {b}, {c}): "
                f"({a}{b}){c} = {left[a, b, c]} but {a}({b}{c}) = {right[a, b, c]}"
            )
        self.table = frozen(table)
        self.order = n
        self.name = name

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    @cached_property
    def inverse(self) -> np.ndarray:
        """
        ``inverse[g]`` is the index of ``g^-1``.
        """
        return frozen(np.argmax(self.table == 0, axis=1))

    @cached_property
    def center(self) -> frozenset:
        """
        Z(G), as a set of element indices.
        """
        t = self.table
        return frozenset(z for z in range(self.order) if np.array_equal(t[z], t[:, z]))

    @cached_property
    def squares(self) -> np.ndarray:
        e = np.arange(self.order)
        return frozen(self.table[e, e])

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mul(x, g)
            k += 1
        return k

    def power(self, g: int, k: int) -> int:
        k %= self.element_order(g)
        x = 0
        for _ in range(k):
            x = self.mul(x, g)
        return x

    def closure(self, elements: Iterable[int]) -> frozenset:
        """
        The subgroup generated by ``elements``.
        """
        seen = {0}
        frontier = [0]
        gens = list(elements)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    if (y := self.mul(x, g)) not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    @cached_property
    def generators(self) -> Tuple[int, ...]:
        """
        A small generating set, picked greedily from elements of large order.
        """
        gens = []
        span = frozenset({0})
        for g in sorted(range(self.order), key=lambda g: (-self.element_order(g), g)):
            if len(span) == self.order:
                break
            if g not in span:
                gens.append(g)
                span = self.closure(gens)
        return tuple(gens)

    def dumps(self) -> str:
        return format_cayley(self.table, [f"group {self.name}"])

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"<FiniteGroup {self.name} of order {self.order}>"

    def __str__(self):
        return self.name


class StarMap(NamedTuple):
    """
    An involutory antiautomorphism ``g -> g*`` with ``g g*`` central.
    """

    group: FiniteGroup
    images: Tuple[int, ...]

    @classmethod
    def inverse(cls, group: FiniteGroup) -> "StarMap":
        return cls(group, tuple(int(i) for i in group.inverse))

    @classmethod
    def identity(cls, group: FiniteGroup) -> "StarMap":
        return cls(group, tuple(range(group.order))).validate()

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.int64)

    @property
    def nonidentical(self) -> bool:
        return any(g != s for g, s in enumerate(self.images))

    def __call__(self, g: int) -> int:
        return self.images[g]

    def validate(self) -> "StarMap":
        """
        Raise InadmissibleError naming a witness unless the map is admissible.
        """
        if (witness := _star_violation(self.group, self.array)) is not None:
            raise InadmissibleError(witness)
        return self

    def __str__(self):
        return "[" + " ".join(str(i) for i in self.images) + "]"


class CentralElement(NamedTuple):
    group: FiniteGroup
    index: int

    @classmethod
    def checked(cls, group: FiniteGroup, star: StarMap, index: int) -> "CentralElement":
        if not 0 <= index < group.order:
            raise InadmissibleError(f"g0 = {index} is not an element of {group}.")
        if index not in group.center:
            raise InadmissibleError(f"g0 = {index} is not central in {group}.")
        if star(index) != index:
            raise InadmissibleError(f"g0 = {index} is not fixed by the star map: g0* = {star(index)}.")
        return cls(group, index)

    def __int__(self):
        return self.index


def _star_violation(group: FiniteGroup, star: np.ndarray) -> Optional[str]:
    n = group.order
    t = group.table
    if star.shape != (n,) or star.min() < 0 or star.max() >= n:
        return f"star map {star.tolist()} is not a map on {group}"
    if (bad := np.flatnonzero(star[star] != np.arange(n))).size:
        return f"star map is not involutory at g = {bad[0]}"
    lhs = star[t]
    rhs = t[star[None, :], star[:, None]]
    if (bad := np.argwhere(lhs != rhs)).size:
        g, h = (int(i) for i in bad[0])
        return f"star map is not an antiautomorphism at (g, h) = ({g}, {h})"
    products = t[np.arange(n), star]
    center = group.center
    for g, p in enumerate(products):
        if int(p) not in center:
            return f"g g* is not central for g = {g}"
    return None


def enumerate_star_maps(group: FiniteGroup) -> List[StarMap]:
    """
    All admissible star maps on ``group``, ordered lexicographically by image.
    Groups of order at most 8 are searched over all bijections, larger groups
    over automorphisms composed with inversion.
    """
    if group.order <= 8:
        candidates = _bijection_candidates(group)
    else:
        candidates = (sigma[group.inverse] for sigma in automorphisms(group))
    stars = {
        tuple(int(i) for i in c)
        for c in candidates
        if _star_violation(group, c) is None
    }
    log.debug(f"{group} admits {len(stars)} star maps")
    return [StarMap(group, images) for images in sorted(stars)]


def _bijection_candidates(group: FiniteGroup):
    n = group.order
    for perm in permutations(range(1, n)):
        images = np.array((0,) + perm, dtype=np.int64)
        if np.array_equal(images[images], np.arange(n)):
            yield images


def automorphisms(group: FiniteGroup) -> List[np.ndarray]:
    """
    All automorphisms, found by mapping the generators onto elements of equal
    order and extending.
    """
    gens = group.generators
    orders = [group.element_order(g) for g in range(group.order)]
    pools = [[h for h in range(group.order) if orders[h] == orders[g]] for g in gens]
    found = []
    for images in product(*pools):
        if (phi := _extend(group, gens, images)) is not None:
            found.append(phi)
    return found


def _extend(group: FiniteGroup, gens, images) -> Optional[np.ndarray]:
    t = group.table
    phi = np.full(group.order, -1, dtype=np.int64)
    phi[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, img in zip(gens, images):
                y, im = t[x, g], t[phi[x], img]
                if phi[y] < 0:
                    phi[y] = im
                    nxt.append(y)
                elif phi[y] != im:
                    return None
        frontier = nxt
    if len(set(phi.tolist())) != group.order:
        return None
    if not np.array_equal(phi[t], t[phi[:, None], phi[None, :]]):
        return None
    return phi


def g0_candidates(group: FiniteGroup, star: StarMap) -> List[CentralElement]:
    """
    The central elements fixed by ``star``; element 0 is always among them.
    """
    return [CentralElement(group, z) for z in sorted(group.center) if star(z) == z]


def predicate_pc(group: FiniteGroup) -> bool:
    return bool(np.array_equal(group.table, group.table.T))


def predicate_pb(group: FiniteGroup) -> bool:
    center = group.center
    return all(int(s) in center for s in group.squares)


def predicate_ps(group: FiniteGroup, star: StarMap) -> bool:
    sq = group.squares
    return bool(np.array_equal(star.array[sq], sq))


def signature(group: FiniteGroup, star: StarMap) -> Tuple[bool, bool, bool]:
    return predicate_pc(group), predicate_pb(group), predicate_ps(group, star)


def _from_rule(order: int, rule, name: str) -> FiniteGroup:
    return FiniteGroup([[rule(i, j) for j in range(order)] for i in range(order)], name)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError(f"Illegal order {n} for cyclic.")
    return _from_rule(n, lambda i, j: (i + j) % n, f"cyclic:{n}")


def dihedral(n: int, name: str = "") -> FiniteGroup:
    """
    Dihedral group of order 2n; r^a s^b has index a + n*b.
    """
    if n < 1:
        raise GroupError(f"Illegal parameter {n} for dihedral.")

    def rule(i, j):
        (a, b), (c, d) = divmod(i, n)[::-1], divmod(j, n)[::-1]
        return (a + (-c if b else c)) % n + n * ((b + d) % 2)

    return _from_rule(2 * n, rule, name or f"dihedral:{n}")


def symmetric(n: int) -> FiniteGroup:
    if n != 3:
        raise GroupError("Only symmetric:3 is provided.")
    return dihedral(3, "symmetric:3")


def quaternion(n: int) -> FiniteGroup:
    """
    Dicyclic group of order n = 4m, a^(2m) = 1, b^2 = a^m, b a b^-1 = a^-1;
    a^i b^j has index i + 2m*j. quaternion:8 is Q8.
    """
    if n < 8 or n % 4:
        raise GroupError(f"Illegal order {n} for quaternion.")
    m = n // 4

    def rule(x, y):
        (i, j), (k, l) = divmod(x, 2 * m)[::-1], divmod(y, 2 * m)[::-1]
        exp, s = i + (-k if j else k), j + l
        if s == 2:
            exp, s = exp + m, 0
        return exp % (2 * m) + 2 * m * s

    return _from_rule(n, rule, f"quaternion:{n}")


def modular(n: int) -> FiniteGroup:
    """
    Modular group of order n = 2^k (k >= 4), a^(n/2) = b^2 = 1,
    b a b = a^(1 + n/4); a^i b^j has index i + (n/2)*j.
    """
    if n < 16 or n & (n - 1):
        raise GroupError(f"Illegal order {n} for modular.")
    half = n // 2
    r = 1 + half // 2

    def rule(x, y):
        (i, j), (k, l) = divmod(x, half)[::-1], divmod(y, half)[::-1]
        return (i + (r if j else 1) * k) % half + half * ((j + l) % 2)

    return _from_rule(n, rule, f"modular:{n}")


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """
    (g, h) has index g*|b| + h.
    """
    n = b.order
    table = a.table[:, None, :, None] * n + b.table[None, :, None, :]
    size = a.order * b.order
    return FiniteGroup(table.reshape(size, size), f"{a.name} x {b.name}")


FAMILIES = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "symmetric": symmetric,
    "quaternion": quaternion,
    "modular": modular,
}

_FACTOR = re.compile(r"([a-z]+):(\d+)")


def load_group(spec: str | Path) -> FiniteGroup:
    """
    Load a group from a descriptor such as ``dihedral:4`` or
    ``cyclic:2 x cyclic:2``, or from a Cayley file.
    """
    text = str(spec).strip()
    factors = re.split(r"\s*x\s*", text)
    if all(_FACTOR.fullmatch(f) for f in factors):
        group = None
        for f in factors:
            name, param = _FACTOR.fullmatch(f).groups()
            if name not in FAMILIES:
                raise GroupError(f"Unknown group family '{name}'.")
            g = FAMILIES[name](int(param))
            group = g if group is None else direct_product(group, g)
        log.debug(f"Loaded {group!r}")
        return group
    path = Path(text)
    if not path.is_file():
        raise GroupError(f"'{text}' is neither a group descriptor nor a Cayley file.")
    return read_cayley(path)


def parse_cayley(text: str, name: str = "G") -> FiniteGroup:
    rows = [
        line.split()
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    try:
        if len(rows[0]) != 1:
            raise ValueError
        n = int(rows[0][0])
        table = [[int(v) for v in row] for row in rows[1:]]
    except (IndexError, ValueError):
        raise GroupError(f"Malformed Cayley file {name}: the first line must be the order.")
    if len(table) != n or any(len(row) != n for row in table):
        raise GroupError(f"Malformed Cayley file {name}: expected {n} rows of {n} entries.")
    return FiniteGroup(_reindex(table, name), name)


def read_cayley(path: str | Path) -> FiniteGroup:
    path = Path(path)
    group = parse_cayley(path.read_text(), path.name)
    log.debug(f"Loaded {group!r} from {path}")
    return group


def _reindex(table, name: str):
    """
    Relabel so the identity sits at index 0.
    """
    t = np.array(table, dtype=np.int64)
    n = len(t)
    if t.min() < 0 or t.max() >= n:
        raise GroupError(f"Cayley table of {name} has entries outside 0..{n - 1}.")
    e = np.arange(n)
    ids = [i for i in range(n) if np.array_equal(t[i], e) and np.array_equal(t[:, i], e)]
    if not ids:
        raise GroupError(f"Cayley table of {name} has no identity element.")
    if ids[0] == 0:
        return t
    p = e.copy()
    p[0], p[ids[0]] = ids[0], 0
    return p[t[p[:, None], p[None, :]]]


def format_cayley(table, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(str(len(table)))
    width = len(str(len(table) - 1))
    lines += [" ".join(str(int(v)).rjust(width) for v in row) for row in table]
    return "\n".join(lines) + "\n"


def resolve_star(group: FiniteGroup, selector: str | int = "inverse") -> StarMap:
    """
    ``inverse``, ``identity`` or an index into ``enumerate_star_maps(group)``.
    """
    if selector == "inverse":
        return StarMap.inverse(group).validate()
    if selector == "identity":
        return StarMap.identity(group)
    try:
        k = int(selector)
    except (TypeError, ValueError):
        raise ValueError(f"Illegal argument: '{selector}' for star.")
    stars = enumerate_star_maps(group)
    if not 0 <= k < len(stars):
        raise ValueError(f"Illegal argument: {group} has {len(stars)} star maps, not {k + 1}.")
    return stars[k]
