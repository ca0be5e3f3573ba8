import json
import multiprocessing
from itertools import product
from pathlib import Path
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple

from yaml import Loader, YAMLError, load

from chein_helper.classifier import (
    ALWAYS,
    NEVER,
    PC,
    Atom,
    Condition,
    WitnessBattery,
    classify_set,
    condition_holds,
    default_battery,
)
from chein_helper.config import DATA
from chein_helper.engine import collect_identities
from chein_helper.error import GoldenError, TermError, log
from chein_helper.loop import LoopTable
from chein_helper.term import VARIETY_NAMES, builtin_identities, search_varieties
from chein_helper.theta import G0, REDUCED_BETAS, REDUCED_GAMMAS, THETA, XY, MultQuadruple, ThetaElem

# (smaller, larger): every loop of the first variety is in the second
LATTICE: List[Tuple[str, str]] = [
    ("assoc", "extra"),
    ("extra", "moufang"),
    ("extra", "c"),
    ("moufang", "lbol"),
    ("moufang", "rbol"),
    ("moufang", "flexible"),
    ("moufang", "rif"),
    ("c", "lc"),
    ("c", "rc"),
    ("lbol", "lalt"),
    ("rbol", "ralt"),
    ("lc", "lalt"),
    ("lc", "lns"),
    ("lc", "mns"),
    ("rc", "ralt"),
    ("rc", "rns"),
    ("rc", "mns"),
]


def enumerate_quadruples() -> List[MultQuadruple]:
    """
    The 64 reduced quadruples: alpha = xy, beta and gamma from the reduced
    sets, delta = g0 theta; beta varies slowest.
    """
    return [
        MultQuadruple(XY, beta, gamma, G0 * theta)
        for beta, gamma, theta in product(REDUCED_BETAS, REDUCED_GAMMAS, THETA)
    ]


class VarietyResult(NamedTuple):
    variety: str
    conditions: Dict[MultQuadruple, Condition]


def run_variety_search(variety: str, battery: Optional[WitnessBattery] = None) -> VarietyResult:
    psi = builtin_identities()[variety]
    conditions = {q: classify_set(collect_identities(psi, q), battery) for q in enumerate_quadruples()}
    log.debug(f"Searched {variety}: {sum(not c.never for c in conditions.values())} quadruples can work")
    return VarietyResult(variety, conditions)


def run_search(varieties: Optional[Iterable[str]] = None, workers: int = 1) -> Dict[str, VarietyResult]:
    varieties = list(search_varieties() if varieties is None else varieties)
    if workers > 1:
        with multiprocessing.Pool(processes=workers) as pool:
            results = pool.map(run_variety_search, varieties)
    else:
        results = [run_variety_search(v) for v in varieties]
    return {r.variety: r for r in results}


def pc_normalize(theta: ThetaElem) -> ThetaElem:
    """
    The name from S and g0 S of a map that agrees with ``theta`` when G is commutative.
    """
    if not theta.swap:
        return theta
    return ThetaElem(theta.g0_exp, False, theta.star_second, theta.star_first)


def pc_normalize_quadruple(q: MultQuadruple) -> MultQuadruple:
    return MultQuadruple(*(pc_normalize(t) for t in q))


class GoldenBlock(NamedTuple):
    condition: Condition
    triples: Tuple[MultQuadruple, ...]

    @property
    def commutative(self) -> bool:
        return Atom.PC in self.condition.atoms

    def __contains__(self, q: MultQuadruple) -> bool:
        if self.commutative:
            return self.matches_commutatively(q)
        return q in self.triples

    def matches_commutatively(self, q: MultQuadruple) -> bool:
        target = pc_normalize_quadruple(q)
        return any(pc_normalize_quadruple(t) == target for t in self.triples)

    def condition_for(self, q: MultQuadruple) -> Optional[Condition]:
        """
        The condition under which this block makes ``q`` work: its own if
        ``q`` is listed, its own and PC if only the commutative form of ``q``
        is, None otherwise.
        """
        if q in self:
            return self.condition
        if self.matches_commutatively(q):
            return self.condition & PC
        return None


class GoldenTable(NamedTuple):
    variety: str
    inherits: Tuple[str, ...]
    blocks: Tuple[GoldenBlock, ...]


def load_goldens(path: str | Path = DATA / "golden.yml") -> Dict[str, GoldenTable]:
    try:
        with open(path, "r") as f:
            config = load(f, Loader=Loader)
    except OSError as e:
        raise GoldenError(f"Cannot read golden tables: {e}")
    except YAMLError as e:
        raise GoldenError(f"Malformed golden tables in '{path}': {e}")
    if not config:
        raise GoldenError(f"No golden tables in '{path}'.")
    if not isinstance(config, dict):
        raise GoldenError(f"Malformed golden tables in '{path}'.")
    goldens = {}
    for variety, entry in config.items():
        try:
            blocks = tuple(
                GoldenBlock(
                    Condition.parse(b["condition"]),
                    tuple(MultQuadruple.parse(t) for t in b["triples"]),
                )
                for b in entry.get("blocks") or []
            )
            goldens[variety] = GoldenTable(variety, tuple(entry.get("inherits") or ()), blocks)
        except (KeyError, TypeError, AttributeError, TermError) as e:
            raise GoldenError(f"Malformed golden table for {variety}: {e}")
    log.debug(f"Loaded {len(goldens)} golden tables from {path}")
    return goldens


def golden_condition(
        table: GoldenTable, q: MultQuadruple, goldens: Dict[str, GoldenTable]
) -> Tuple[Condition, ...]:
    """
    The alternatives under which the published table says ``q`` works: the
    inherited varieties' conditions, then every block listing ``q`` up to
    PC-normalization. No alternatives means never.
    """
    alternatives = []
    for parent in table.inherits:
        if parent not in goldens:
            raise GoldenError(f"{table.variety} inherits {parent}, which has no golden table.")
        alternatives += golden_condition(goldens[parent], q, goldens)
    alternatives += [c for c in (b.condition_for(q) for b in table.blocks) if c is not None]
    return tuple(dict.fromkeys(alternatives))


def implies(a: Condition, b: Condition) -> bool:
    """
    Syntactic implication between conditions; PC implies PB.
    """
    if a.never or b == ALWAYS:
        return True
    if b.never:
        return False
    atoms = set(a.atoms) | ({Atom.PB} if Atom.PC in a.atoms else set())
    return b.atoms <= atoms and b.raw <= a.raw


def simplify(alternatives: Iterable[Condition]) -> Tuple[Condition, ...]:
    """
    Drop the alternatives that imply another one.
    """
    alternatives = [c for c in dict.fromkeys(alternatives) if not c.never]
    return tuple(
        c for c in alternatives
        if not any(d != c and implies(c, d) for d in alternatives)
    )


def format_alternatives(alternatives: Tuple[Condition, ...]) -> str:
    return " | ".join(str(c) for c in alternatives) or str(NEVER)


class DiffEntry(NamedTuple):
    variety: str
    quadruple: MultQuadruple
    computed: Condition
    golden: Tuple[Condition, ...]
    match: bool
    overlap: bool


class DiffReport:
    def __init__(self, entries: List[DiffEntry], results: Dict[str, VarietyResult]):
        self.entries = entries
        self.results = results

    @property
    def mismatches(self) -> List[DiffEntry]:
        return [e for e in self.entries if not e.match]

    @property
    def overlaps(self) -> List[DiffEntry]:
        return [e for e in self.entries if e.overlap]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        return (
            f"{len(self.entries) - len(self.mismatches)} matches, "
            f"{len(self.mismatches)} mismatches, {len(self.overlaps)} overlapping blocks"
        )

    def grid(self) -> str:
        lines = []
        variety = None
        for e in self.entries:
            if e.variety != variety:
                variety = e.variety
                lines.append(f"{variety} ({VARIETY_NAMES[variety]})")
            verdict = "ok" if e.match else "MISMATCH"
            flag = " overlap" if e.overlap else ""
            lines.append(
                f"  {str(e.quadruple):<20} {str(e.computed):<12} {format_alternatives(e.golden):<24} {verdict}{flag}"
            )
        lines.append(self.summary())
        return "\n".join(lines) + "\n"

    def json(self) -> str:
        records = [
            {
                "variety": e.variety,
                "quadruple": str(e.quadruple),
                "computed": str(e.computed),
                "golden": [str(c) for c in e.golden],
                "match": e.match,
                "overlap": e.overlap,
            }
            for e in self.entries
        ]
        return json.dumps({"entries": records, "mismatches": len(self.mismatches)}, indent=2) + "\n"

    def publication(self) -> str:
        """
        One statement per variety: the quadruples that work beyond the
        inherited varieties, grouped by condition.
        """
        out = []
        for variety, result in self.results.items():
            parents = [a for a, b in LATTICE if b == variety and a in self.results]
            blocks: Dict[Condition, List[MultQuadruple]] = {}
            for q, c in result.conditions.items():
                if c.never or any(self.results[p].conditions[q] == c for p in parents):
                    continue
                if Atom.PC in c.atoms:
                    q = pc_normalize_quadruple(q)
                names = blocks.setdefault(c, [])
                if q not in names:
                    names.append(q)
            head = f"The loop is {VARIETY_NAMES[variety]}"
            head += f" iff it is {' or '.join(parents)} or" if parents else " iff"
            out.append(head + " the following conditions are satisfied:")
            for c in sorted(blocks, key=str):
                triples = ", ".join(f"({q})" for q in blocks[c])
                out.append(f"  {c}: {triples}")
            out.append("")
        return "\n".join(out)

    def render(self, fmt: str = "grid") -> str:
        renderers = {"grid": self.grid, "json": self.json, "publication": self.publication}
        if fmt not in renderers:
            raise ValueError(f"Illegal argument: '{fmt}' for format.")
        return renderers[fmt]()


def _agree(computed: Condition, golden: Tuple[Condition, ...], battery: WitnessBattery) -> bool:
    for w in battery:
        expected = any(condition_holds(c, w.group, w.star, w.g0) for c in golden)
        if condition_holds(computed, w.group, w.star, w.g0) != expected:
            return False
    return True


def diff_against_golden(
        results: Dict[str, VarietyResult],
        goldens: Dict[str, GoldenTable],
        battery: Optional[WitnessBattery] = None,
        structural: bool = False,
) -> DiffReport:
    """
    Compare computed conditions with the published ones, semantically on the
    battery or, if ``structural``, by the simplified conditions themselves.
    """
    if not goldens:
        raise GoldenError("The golden set is empty.")
    battery = default_battery() if battery is None else battery
    entries = []
    for variety, result in results.items():
        if variety not in goldens:
            raise GoldenError(f"No golden table for {variety}.")
        table = goldens[variety]
        for q, computed in result.conditions.items():
            golden = golden_condition(table, q, goldens)
            overlap = sum(q in b.triples for b in table.blocks) > 1
            if overlap:
                log.warning(f"{q} appears in more than one block for {variety}")
            if structural:
                match = simplify(golden) == simplify([computed])
            else:
                match = _agree(computed, golden, battery)
            entries.append(DiffEntry(variety, q, computed, golden, match, overlap))
    report = DiffReport(entries, results)
    log.debug(report.summary())
    return report


def memberships(loop: LoopTable, varieties: Optional[Iterable[str]] = None) -> Dict[str, bool]:
    identities = builtin_identities()
    names = search_varieties() if varieties is None else varieties
    return {name: loop.check_identity(identities[name]) for name in names}


def lattice_violations(member: Dict[str, bool]) -> List[Tuple[str, str]]:
    return [(a, b) for a, b in LATTICE if member.get(a) and b in member and not member[b]]
