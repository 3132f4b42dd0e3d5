"""Butcher tableaus for the explicit one-step methods.

Coefficients are exact fractions; floats are derived once, so every
consumer sees the correctly rounded value of the same rational.
"""

from dataclasses import dataclass, field
from fractions import Fraction as Fr

from ..errors import ContractError


@dataclass(frozen=True)
class ButcherTableau:
    name: str
    a: tuple
    b: tuple
    c: tuple
    order: int
    b_err: tuple = None
    order_err: int = None
    floats: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        s = len(self.b)
        if s < 1:
            raise ContractError("tableau needs at least one stage")
        if len(self.a) != s or len(self.c) != s:
            raise ContractError(f"{self.name}: inconsistent stage count")
        for i, row in enumerate(self.a):
            if len(row) > i:
                if any(x != 0 for x in row[i:]):
                    raise ContractError(f"{self.name}: row {i} is not strictly lower triangular")
            if sum(row, Fr(0)) != self.c[i]:
                raise ContractError(f"{self.name}: row-sum condition fails at stage {i}")
        if sum(self.b, Fr(0)) != 1:
            raise ContractError(f"{self.name}: weights do not sum to one")
        if self.b_err is not None:
            if len(self.b_err) != s or sum(self.b_err, Fr(0)) != 1:
                raise ContractError(f"{self.name}: invalid embedded weights")
        floats = {
            "a": tuple(tuple(float(x) for x in row[:i]) for i, row in enumerate(self.a)),
            "b": tuple(float(x) for x in self.b),
            "c": tuple(float(x) for x in self.c),
        }
        if self.b_err is not None:
            floats["e"] = tuple(float(x - y) for x, y in zip(self.b, self.b_err))
        object.__setattr__(self, "floats", floats)

    @property
    def stages(self):
        return len(self.b)

    @property
    def has_error_estimate(self):
        return self.b_err is not None


def _rows(*rows):
    """Pad lower-triangular rows with zeros to a square matrix."""
    s = len(rows)
    return tuple(tuple(Fr(x) for x in r) + (Fr(0),) * (s - len(r)) for r in rows)


def _vec(*xs):
    return tuple(Fr(x) for x in xs)


EXPLICIT_EULER = ButcherTableau(
    "euler", a=_rows(()), b=_vec(1), c=_vec(0), order=1)

# Euler half step, then the slope at the midpoint
MODIFIED_MIDPOINT = ButcherTableau(
    "midpoint",
    a=_rows((), (Fr(1, 2),)),
    b=_vec(0, 1), c=_vec(0, Fr(1, 2)), order=2)

RK4 = ButcherTableau(
    "rk4",
    a=_rows((), (Fr(1, 2),), (0, Fr(1, 2)), (0, 0, 1)),
    b=_vec(Fr(1, 6), Fr(1, 3), Fr(1, 3), Fr(1, 6)),
    c=_vec(0, Fr(1, 2), Fr(1, 2), 1), order=4)

# Cash & Karp (1990), fifth-order solution propagated
CASH_KARP54 = ButcherTableau(
    "cash_karp54",
    a=_rows(
        (),
        (Fr(1, 5),),
        (Fr(3, 40), Fr(9, 40)),
        (Fr(3, 10), Fr(-9, 10), Fr(6, 5)),
        (Fr(-11, 54), Fr(5, 2), Fr(-70, 27), Fr(35, 27)),
        (Fr(1631, 55296), Fr(175, 512), Fr(575, 13824), Fr(44275, 110592), Fr(253, 4096)),
    ),
    b=_vec(Fr(37, 378), 0, Fr(250, 621), Fr(125, 594), 0, Fr(512, 1771)),
    b_err=_vec(Fr(2825, 27648), 0, Fr(18575, 48384), Fr(13525, 55296), Fr(277, 14336), Fr(1, 4)),
    c=_vec(0, Fr(1, 5), Fr(3, 10), Fr(3, 5), 1, Fr(7, 8)),
    order=5, order_err=4)

# Dormand & Prince (1980), 5(4) pair; the seventh stage is the FSAL slope
DOPRI5 = ButcherTableau(
    "dopri5",
    a=_rows(
        (),
        (Fr(1, 5),),
        (Fr(3, 40), Fr(9, 40)),
        (Fr(44, 45), Fr(-56, 15), Fr(32, 9)),
        (Fr(19372, 6561), Fr(-25360, 2187), Fr(64448, 6561), Fr(-212, 729)),
        (Fr(9017, 3168), Fr(-355, 33), Fr(46732, 5247), Fr(49, 176), Fr(-5103, 18656)),
        (Fr(35, 384), 0, Fr(500, 1113), Fr(125, 192), Fr(-2187, 6784), Fr(11, 84)),
    ),
    b=_vec(Fr(35, 384), 0, Fr(500, 1113), Fr(125, 192), Fr(-2187, 6784), Fr(11, 84), 0),
    b_err=_vec(Fr(5179, 57600), 0, Fr(7571, 16695), Fr(393, 640), Fr(-92097, 339200),
               Fr(187, 2100), Fr(1, 40)),
    c=_vec(0, Fr(1, 5), Fr(3, 10), Fr(4, 5), Fr(8, 9), 1, 1),
    order=5, order_err=4)

# Fehlberg (1968) 7(8) pair, eighth-order solution propagated
FEHLBERG78 = ButcherTableau(
    "fehlberg78",
    a=_rows(
        (),
        (Fr(2, 27),),
        (Fr(1, 36), Fr(1, 12)),
        (Fr(1, 24), 0, Fr(1, 8)),
        (Fr(5, 12), 0, Fr(-25, 16), Fr(25, 16)),
        (Fr(1, 20), 0, 0, Fr(1, 4), Fr(1, 5)),
        (Fr(-25, 108), 0, 0, Fr(125, 108), Fr(-65, 27), Fr(125, 54)),
        (Fr(31, 300), 0, 0, 0, Fr(61, 225), Fr(-2, 9), Fr(13, 900)),
        (2, 0, 0, Fr(-53, 6), Fr(704, 45), Fr(-107, 9), Fr(67, 90), 3),
        (Fr(-91, 108), 0, 0, Fr(23, 108), Fr(-976, 135), Fr(311, 54), Fr(-19, 60),
         Fr(17, 6), Fr(-1, 12)),
        (Fr(2383, 4100), 0, 0, Fr(-341, 164), Fr(4496, 1025), Fr(-301, 82),
         Fr(2133, 4100), Fr(45, 82), Fr(45, 164), Fr(18, 41)),
        (Fr(3, 205), 0, 0, 0, 0, Fr(-6, 41), Fr(-3, 205), Fr(-3, 41), Fr(3, 41),
         Fr(6, 41), 0),
        (Fr(-1777, 4100), 0, 0, Fr(-341, 164), Fr(4496, 1025), Fr(-289, 82),
         Fr(2193, 4100), Fr(51, 82), Fr(33, 164), Fr(12, 41), 0, 1),
    ),
    b=_vec(0, 0, 0, 0, 0, Fr(34, 105), Fr(9, 35), Fr(9, 35), Fr(9, 280), Fr(9, 280), 0,
           Fr(41, 840), Fr(41, 840)),
    b_err=_vec(Fr(41, 840), 0, 0, 0, 0, Fr(34, 105), Fr(9, 35), Fr(9, 35), Fr(9, 280),
               Fr(9, 280), Fr(41, 840), 0, 0),
    c=_vec(0, Fr(2, 27), Fr(1, 9), Fr(1, 6), Fr(5, 12), Fr(1, 2), Fr(5, 6), Fr(1, 6),
           Fr(2, 3), Fr(1, 3), 1, 0, 1),
    order=8, order_err=7)

ALL = {t.name: t for t in (EXPLICIT_EULER, MODIFIED_MIDPOINT, RK4, CASH_KARP54, DOPRI5,
                           FEHLBERG78)}
