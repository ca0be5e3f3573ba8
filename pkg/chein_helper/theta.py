import re
from typing import List, NamedTuple, Tuple

from chein_helper.error import TermError
from chein_helper.word import GroupWord

_TOKEN = re.compile(r"(?:g0(?:\^(-?\d+))?)?([xy])(\*?)([xy])(\*?)")


class ThetaElem(NamedTuple):
    """
    A map of Theta_0, stored up to Delta-equivalence: the pair is swapped if
    ``swap``, then each coordinate is starred per its flag, then g0^g0_exp is
    put in front of the first coordinate.
    """

    g0_exp: int = 0
    swap: bool = False
    star_first: bool = False
    star_second: bool = False

    @classmethod
    def parse(cls, token: str) -> "ThetaElem":
        """
        Read tokens such as ``xy``, ``yx*`` or ``g0y*x``.
        """
        m = _TOKEN.fullmatch(token.strip())
        if m is None:
            raise TermError(f"Illegal theta token: '{token}'.")
        exp, first, s1, second, s2 = m.groups()
        if first == second:
            raise TermError(f"Illegal theta token: '{token}' repeats '{first}'.")
        if exp is not None:
            n = int(exp)
        else:
            n = 1 if token.strip().startswith("g0") else 0
        return cls(n, first == "y", bool(s1), bool(s2))

    @property
    def theta(self) -> "ThetaElem":
        """
        The Theta-part, with the g0 power dropped.
        """
        return self._replace(g0_exp=0)

    def compose(self, other: "ThetaElem") -> "ThetaElem":
        """
        ``self`` after ``other``.
        """
        if self.swap:
            first, second = other.star_second, other.star_first
        else:
            first, second = other.star_first, other.star_second
        return ThetaElem(
            self.g0_exp + other.g0_exp,
            self.swap != other.swap,
            self.star_first != first,
            self.star_second != second,
        )

    def __mul__(self, other: "ThetaElem") -> "ThetaElem":
        return self.compose(other)

    def shift(self, n: int = 1) -> "ThetaElem":
        return self._replace(g0_exp=self.g0_exp + n)

    def apply(self, pair: Tuple[GroupWord, GroupWord]) -> Tuple[GroupWord, GroupWord]:
        a, b = pair
        if self.swap:
            a, b = b, a
        if self.star_first:
            a = a.star()
        if self.star_second:
            b = b.star()
        return a.shift(self.g0_exp), b

    def evaluate(self, pair: Tuple[GroupWord, GroupWord]) -> GroupWord:
        """
        Delta after this map: the product of the two twisted words.
        """
        a, b = self.apply(pair)
        return a * b

    def __str__(self):
        first, second = ("y", "x") if self.swap else ("x", "y")
        body = first + "*" * self.star_first + second + "*" * self.star_second
        if self.g0_exp == 0:
            return body
        if self.g0_exp == 1:
            return "g0" + body
        return f"g0^{self.g0_exp}{body}"

    def __repr__(self):
        return f"ThetaElem<{self}>"


def theta_parse(token: str) -> ThetaElem:
    return ThetaElem.parse(token)


def theta_format(t: ThetaElem) -> str:
    return str(t)


def theta_compose(a: ThetaElem, b: ThetaElem) -> ThetaElem:
    return a.compose(b)


# the eight maps of Theta, in the customary order
THETA: List[ThetaElem] = [
    ThetaElem.parse(t) for t in ("xy", "xy*", "x*y", "x*y*", "yx", "yx*", "y*x", "y*x*")
]
XY, XY_, X_Y, X_Y_, YX, YX_, Y_X, Y_X_ = THETA
G0 = ThetaElem(1)

# the unswapped maps
S = [XY, XY_, X_Y, X_Y_]
LOOP_BETAS = [XY, X_Y, YX, YX_]
LOOP_GAMMAS = [XY, XY_, YX, Y_X]
REDUCED_BETAS = LOOP_BETAS
REDUCED_GAMMAS = [XY, YX]

# pairs (beta, beta') and (gamma, gamma') related by g -> g, gu -> g*u
STAR_TWIST_BETAS = [(XY, YX_), (YX, X_Y), (X_Y, YX), (YX_, XY)]
STAR_TWIST_GAMMAS = [(XY, Y_X), (YX, XY_), (XY_, YX), (Y_X, XY)]


class MultQuadruple(NamedTuple):
    alpha: ThetaElem
    beta: ThetaElem
    gamma: ThetaElem
    delta: ThetaElem

    @classmethod
    def parse(cls, text: str) -> "MultQuadruple":
        """
        ``beta,gamma,delta`` with alpha = xy implied, or all four maps.
        Surrounding parentheses are ignored.
        """
        tokens = [t.strip() for t in text.strip().strip("()").split(",")]
        if len(tokens) == 3:
            tokens = ["xy"] + tokens
        if len(tokens) != 4:
            raise TermError(f"Illegal quadruple: '{text}'.")
        return cls(*(ThetaElem.parse(t) for t in tokens))

    @property
    def is_reduced(self) -> bool:
        """
        alpha = xy, beta in {xy, x*y, yx, yx*}, gamma in {xy, yx}, delta in g0 Theta.
        """
        return (
                self.alpha == XY
                and self.beta in REDUCED_BETAS
                and self.gamma in REDUCED_GAMMAS
                and self.delta.g0_exp == 1
        )

    @property
    def in_loop_region(self) -> bool:
        """
        Whether the maps are among those that make the construction a loop
        for every admissible choice of the star map.
        """
        return (
                self.alpha == XY
                and self.beta in LOOP_BETAS
                and self.gamma in LOOP_GAMMAS
        )

    def opposite(self) -> "MultQuadruple":
        """
        The quadruple of the opposite quasigroup.
        """
        return MultQuadruple(self.alpha * YX, self.gamma * YX, self.beta * YX, self.delta * YX)

    def shifted(self, n: int) -> "MultQuadruple":
        return MultQuadruple(*(t.shift(n) for t in self))

    def star_twisted(self, beta: ThetaElem, gamma: ThetaElem) -> "MultQuadruple":
        """
        The target of the isomorphism g -> g, gu -> g*u when (beta, gamma) are
        replaced by their partners; delta picks up x*y*.
        """
        return MultQuadruple(self.alpha, beta, gamma, self.delta * X_Y_)

    def __str__(self):
        if self.alpha == XY:
            return f"{self.beta},{self.gamma},{self.delta}"
        return f"{self.alpha},{self.beta},{self.gamma},{self.delta}"

    def __repr__(self):
        return f"MultQuadruple<{self}>"


CHEIN = MultQuadruple.parse("yx,xy*,g0y*x")
DBJ = MultQuadruple.parse("xy,y*x,g0xy*")
DBJ_REDUCED = MultQuadruple.parse("yx*,xy,g0x*y")
ASSOCIATIVE = MultQuadruple.parse("xy,xy,g0xy")

