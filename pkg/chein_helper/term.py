from typing import Dict, List, NamedTuple, Tuple, Union

from chein_helper.error import TermError


class Var(NamedTuple):
    name: str

    def __str__(self):
        return self.name


class Node(NamedTuple):
    left: "LoopTerm"
    right: "LoopTerm"

    def __str__(self):
        return format_term(self)


LoopTerm = Union[Var, Node]


def leaves(term: LoopTerm) -> Tuple[str, ...]:
    if isinstance(term, Var):
        return (term.name,)
    return leaves(term.left) + leaves(term.right)


def format_term(term: LoopTerm) -> str:
    """
    Nested products are parenthesized; the outer chain is left-associated,
    so ``((xy)y)z`` prints as written.
    """
    if isinstance(term, Var):
        return term.name

    def wrap(t):
        return t.name if isinstance(t, Var) else f"({format_term(t)})"

    return wrap(term.left) + wrap(term.right)


class LoopIdentity(NamedTuple):
    lhs: LoopTerm
    rhs: LoopTerm

    @property
    def variables(self) -> Tuple[str, ...]:
        """
        var(psi), in order of first occurrence.
        """
        return tuple(dict.fromkeys(leaves(self.lhs) + leaves(self.rhs)))

    @property
    def strictly_balanced(self) -> bool:
        return check_strictly_balanced(self)

    def __str__(self):
        return format_identity(self)


def format_identity(identity: LoopIdentity) -> str:
    return f"{format_term(identity.lhs)}={format_term(identity.rhs)}"


def check_strictly_balanced(identity: LoopIdentity) -> bool:
    """
    Same variables, same multiplicities, same order on both sides.
    """
    return leaves(identity.lhs) == leaves(identity.rhs)


class _Parser:
    """
    identity := term '=' term; term := primary+; primary := letter | '(' term ')'
    """

    def __init__(self, src: str):
        self.src = src
        self.tokens = [c for c in src if not c.isspace()]
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def error(self, msg: str):
        return TermError(f"{msg} in '{self.src}'")

    def identity(self) -> LoopIdentity:
        lhs = self.term()
        if self.peek() == ")":
            raise self.error("Unbalanced parentheses")
        if self.peek() != "=":
            raise self.error("Expected '='")
        self.pos += 1
        rhs = self.term()
        if self.peek() == ")":
            raise self.error("Unbalanced parentheses")
        if self.peek() is not None:
            raise self.error(f"Unexpected '{self.peek()}'")
        return LoopIdentity(lhs, rhs)

    def term(self) -> LoopTerm:
        result = None
        while (c := self.peek()) is not None and (c == "(" or c.isalpha()):
            p = self.primary()
            result = p if result is None else Node(result, p)
        if result is None:
            c = self.peek()
            if c is None or c in "=)":
                raise self.error("Empty term")
            raise self.error(f"Illegal symbol '{c}'")
        return result

    def primary(self) -> LoopTerm:
        c = self.peek()
        if c == "(":
            self.pos += 1
            t = self.term()
            if self.peek() != ")":
                raise self.error("Unbalanced parentheses")
            self.pos += 1
            return t
        if not ("a" <= c <= "z"):
            raise self.error(f"Illegal symbol '{c}'")
        self.pos += 1
        return Var(c)


def parse_identity(src: str) -> LoopIdentity:
    return _Parser(src).identity()


def parse_term(src: str) -> LoopTerm:
    parser = _Parser(src)
    t = parser.term()
    if parser.peek() is not None:
        raise parser.error(f"Unexpected '{parser.peek()}'")
    return t


BUILTIN_SOURCES: Dict[str, str] = {
    "assoc": "x(yz)=(xy)z",
    "extra": "x(y(zx))=((xy)z)x",
    "moufang": "x(y(xz))=((xy)x)z",
    "c": "((xy)y)z=x(y(yz))",
    "lbol": "x(y(xz))=(x(yx))z",
    "rbol": "((zx)y)x=z((xy)x)",
    "lc": "(xx)(yz)=(x(xy))z",
    "rc": "x((yz)z)=(xy)(zz)",
    "flexible": "x(yx)=(xy)x",
    "lalt": "x(xy)=(xx)y",
    "ralt": "x(yy)=(xy)y",
    "lns": "((xx)y)z=(xx)(yz)",
    "mns": "(x(yy))z=x((yy)z)",
    "rns": "(xy)(zz)=x(y(zz))",
    "rif": "(xy)(z(xy))=((x(yz))x)y",
    # the flexible law in three variables
    "flexible3": "(x(yx))z=((xy)x)z",
}

VARIETY_NAMES: Dict[str, str] = {
    "assoc": "associative",
    "extra": "extra",
    "moufang": "Moufang",
    "c": "C-loop",
    "lbol": "left Bol",
    "rbol": "right Bol",
    "lc": "LC-loop",
    "rc": "RC-loop",
    "flexible": "flexible",
    "lalt": "left alternative",
    "ralt": "right alternative",
    "lns": "left nuclear square",
    "mns": "middle nuclear square",
    "rns": "right nuclear square",
    "rif": "RIF",
    "flexible3": "flexible",
}


def builtin_identities() -> Dict[str, LoopIdentity]:
    return {name: parse_identity(src) for name, src in BUILTIN_SOURCES.items()}


def resolve_identity(text: str) -> Tuple[str, LoopIdentity]:
    """
    A builtin by name, or an identity in the term syntax.
    """
    key = text.strip().lower()
    if key in BUILTIN_SOURCES:
        return key, parse_identity(BUILTIN_SOURCES[key])
    identity = parse_identity(text)
    return format_identity(identity), identity


def search_varieties() -> List[str]:
    return [name for name in BUILTIN_SOURCES if name != "flexible3"]
