"""Exact and floating-point evaluation of the walk's excursion laws.

A jump law is described by a finite table of up-probabilities around the
origin plus one constant tail value per side, which keeps every return
probability in closed form: the series behind them turn geometric beyond
the table.  With ``mode="rational"`` every quantity is a
:class:`fractions.Fraction` and all internal cross-checks are exact;
``mode="float"`` trades that for speed.  Conversion between the two is
explicit, never silent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import Excursion, LevelNumbers, level_numbers
from .enumeration import count_excursions

__all__ = [
    "JumpLaw",
    "BoundaryData",
    "boundary",
    "excursion_prob",
    "class_prob",
    "ruin_prob",
    "height_tail",
    "height_unique",
    "doob_law",
    "conditional_excursion_prob",
]


def _parse_prob(value, mode: str):
    if mode == "rational":
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        # accepts "num/den" and decimal strings; floats go through their
        # decimal repr so that 0.4 means 2/5, not the nearest binary float
        return Fraction(str(value))
    if isinstance(value, str):
        return float(Fraction(value))
    return float(value)


@dataclass(frozen=True)
class JumpLaw:
    """State-dependent up-step probabilities with constant tails.

    ``probs[k + k_max]`` is the chance of stepping up from state k for
    |k| <= k_max; beyond the table it is ``p_plus`` (k > k_max) or
    ``p_minus`` (k < -k_max).  All values must lie strictly in (0, 1).
    """

    k_max: int
    probs: tuple
    p_plus: object
    p_minus: object
    mode: str = "rational"

    def __post_init__(self):
        if self.mode not in ("rational", "float"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.k_max < 0:
            raise ValueError("k_max must be >= 0")
        if len(self.probs) != 2 * self.k_max + 1:
            raise ValueError("need one table entry per state in [-k_max, k_max]")
        for value in (*self.probs, self.p_plus, self.p_minus):
            if not 0 < value < 1:
                raise ValueError(f"probability {value} outside (0, 1)")

    @classmethod
    def homogeneous(cls, p, mode: str | None = None) -> "JumpLaw":
        """The law with the same up-probability p at every state."""
        mode = mode or ("float" if isinstance(p, float) else "rational")
        p = _parse_prob(p, mode)
        return cls(0, (p,), p, p, mode)

    @classmethod
    def from_table(cls, table: dict, p_plus, p_minus, mode: str | None = None) -> "JumpLaw":
        """Build from {state: up-probability} plus the two tail values."""
        if mode is None:
            values = [*table.values(), p_plus, p_minus]
            mode = "float" if any(isinstance(v, float) for v in values) else "rational"
        keys = {int(k) for k in table}
        k_max = max((abs(k) for k in keys), default=0)
        if keys != set(range(-k_max, k_max + 1)):
            raise ValueError("table keys must cover a symmetric range -K..K")
        probs = []
        for k in range(-k_max, k_max + 1):
            raw = table[k] if k in table else table[str(k)]
            probs.append(_parse_prob(raw, mode))
        return cls(
            k_max, tuple(probs),
            _parse_prob(p_plus, mode), _parse_prob(p_minus, mode), mode,
        )

    def p(self, k: int):
        """Up-step probability from state k."""
        if k > self.k_max:
            return self.p_plus
        if k < -self.k_max:
            return self.p_minus
        return self.probs[k + self.k_max]

    def q(self, k: int):
        """Down-step probability from state k."""
        return self.one - self.p(k)

    @property
    def one(self):
        """The multiplicative unit of this law's numeric backend."""
        return Fraction(1) if self.mode == "rational" else 1.0

    def to_float(self) -> "JumpLaw":
        """Explicit conversion to the float backend."""
        if self.mode == "float":
            return self
        return JumpLaw(
            self.k_max, tuple(float(v) for v in self.probs),
            float(self.p_plus), float(self.p_minus), "float",
        )

    def to_rational(self) -> "JumpLaw":
        """Explicit conversion to exact rationals (floats taken bit-exact)."""
        if self.mode == "rational":
            return self
        return JumpLaw(
            self.k_max, tuple(Fraction(v) for v in self.probs),
            Fraction(self.p_plus), Fraction(self.p_minus), "rational",
        )

    def to_dict(self) -> dict:
        def enc(v):
            return f"{v.numerator}/{v.denominator}" if isinstance(v, Fraction) else v

        return {
            "K": self.k_max,
            "p": {str(k): enc(self.p(k)) for k in range(-self.k_max, self.k_max + 1)},
            "p_plus": enc(self.p_plus),
            "p_minus": enc(self.p_minus),
            "mode": self.mode,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "JumpLaw":
        return cls.from_table(
            {int(k): v for k, v in data["p"].items()},
            data["p_plus"], data["p_minus"], data.get("mode", "rational"),
        )


class ConsistencyError(AssertionError):
    """Two formulas for the same probability disagreed."""


def _assert_same(a, b, what: str, mode: str):
    if mode == "rational":
        if a != b:
            raise ConsistencyError(f"{what}: {a} != {b}")
    elif not math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-300):
        raise ConsistencyError(f"{what}: {a} != {b}")


def _prefix_sums(terms, one):
    """[1, t_1, t_1 + t_2, ...]: the alpha values indexed 0..len(terms)."""
    out = [one]
    total = one - one
    for t in terms:
        total += t
        out.append(total)
    out[0] = one  # alpha_0 = 1 by convention; equals alpha_1 since t_1 = 1
    return out


class BoundaryData:
    """Return-probability data of a law: alpha series, betas, scale anchors.

    ``alpha(n)`` sums products of down/up ratios above the origin
    (``alpha_neg`` mirrors below); a finite limit means that side is
    transient.  ``beta(i)`` is the chance of ever reaching 0 from state i,
    ``beta0`` the chance of returning to 0 from 0.  Immutable once built;
    :func:`boundary` caches one instance per law.
    """

    def __init__(self, law: JumpLaw):
        self.law = law
        one = law.one
        k1 = law.k_max + 1
        c_pos = [one]  # c_i = prod_{k=1..i-1} q_k / p_k, here i = 1..K+1
        c_neg = [one]  # mirrored with p_{-k} / q_{-k}
        for k in range(1, k1):
            c_pos.append(c_pos[-1] * law.q(k) / law.p(k))
            c_neg.append(c_neg[-1] * law.p(-k) / law.q(-k))
        self._c_pos, self._c_neg = c_pos, c_neg
        self._ratio_pos = law.q(k1) / law.p(k1)
        self._ratio_neg = law.p(-k1) / law.q(-k1)
        self._alpha_pos = _prefix_sums(c_pos, one)
        self._alpha_neg = _prefix_sums(c_neg, one)

    def _alpha_at(self, n, prefix, c_last, ratio):
        if n < 0:
            raise ValueError("alpha index must be >= 0")
        if n < len(prefix):
            return prefix[n]
        one = self.law.one
        steps = n - (len(prefix) - 1)
        if ratio == 1:
            geom = steps * one
        else:
            geom = ratio * (one - ratio**steps) / (one - ratio)
        return prefix[-1] + c_last * geom

    def alpha(self, n: int):
        """alpha_n of the positive side (alpha_0 = alpha_1 = 1)."""
        return self._alpha_at(n, self._alpha_pos, self._c_pos[-1], self._ratio_pos)

    def alpha_neg(self, n: int):
        """alpha_{-n} of the negative side, for n >= 0."""
        return self._alpha_at(n, self._alpha_neg, self._c_neg[-1], self._ratio_neg)

    @property
    def alpha_inf(self):
        """Limit of the positive alpha series; None when it diverges."""
        if self._ratio_pos >= 1:
            return None
        one = self.law.one
        tail = self._c_pos[-1] * self._ratio_pos / (one - self._ratio_pos)
        return self._alpha_pos[-1] + tail

    @property
    def alpha_neg_inf(self):
        if self._ratio_neg >= 1:
            return None
        one = self.law.one
        tail = self._c_neg[-1] * self._ratio_neg / (one - self._ratio_neg)
        return self._alpha_neg[-1] + tail

    @property
    def positive_side_recurrent(self) -> bool:
        """True when an excursion above 0 returns almost surely."""
        return self.alpha_inf is None

    @property
    def negative_side_recurrent(self) -> bool:
        return self.alpha_neg_inf is None

    def beta(self, i: int):
        """Chance of ever hitting 0 from state i != 0 (1 on a recurrent side)."""
        if i == 0:
            raise ValueError("use beta0 for the return probability from 0")
        if i > 0:
            inf = self.alpha_inf
            return self.law.one if inf is None else (inf - self.alpha(i)) / inf
        inf = self.alpha_neg_inf
        return self.law.one if inf is None else (inf - self.alpha_neg(-i)) / inf

    @property
    def beta0(self):
        """Chance of returning to 0 from 0."""
        return self.law.p(0) * self.beta(1) + self.law.q(0) * self.beta(-1)

    def anchor(self, i: int, start: int):
        """Scale value A_i for the walk started at ``start``.

        A_0 = 0, A_{-1} = -1, and A is strictly increasing; the process
        A_{X_n - start} is a martingale, which is what :func:`ruin_prob`
        exploits.
        """
        law = self.law
        zero = law.one - law.one
        if i == 0:
            return zero
        total = zero
        term = law.one
        if i > 0:
            for j in range(1, i + 1):
                term = term * law.q(start + j - 1) / law.p(start + j - 1)
                total += term
            return total
        for j in range(0, i, -1):
            total += term
            term = term * law.p(start + j - 1) / law.q(start + j - 1)
        return -total


@lru_cache(maxsize=None)
def boundary(law: JumpLaw) -> BoundaryData:
    """Return-probability data for ``law``, computed once and cached."""
    return BoundaryData(law)


def _path_product(law: JumpLaw, x: Excursion):
    total = law.one
    level = 0
    for y in x.jumps:
        total = total * (law.p(level) if y == 1 else law.q(level))
        level += y
    return total


def _level_product(law: JumpLaw, n: LevelNumbers, sign: int):
    # each individual at level h contributes its birth and death jumps:
    # p_h q_{h+1} above the origin, q_{-h} p_{-h-1} below it
    total = law.one
    for i, count in enumerate(n.counts):
        if sign > 0:
            factor = law.p(i) * law.q(i + 1)
        else:
            factor = law.q(-i) * law.p(-i - 1)
        total = total * factor**count
    return total


def _sign_norm(law: JumpLaw, sign: int):
    data = boundary(law)
    if sign > 0:
        return law.p(0) * data.beta(1)
    return law.q(0) * data.beta(-1)


def excursion_prob(law: JumpLaw, x: Excursion):
    """P(the excursion equals ``x``), conditional on its sign class.

    Evaluated twice, as the raw path product and as the level-number
    product, and the two results are checked against each other (exactly
    in rational mode).
    """
    norm = _sign_norm(law, x.sign)
    path = _path_product(law, x) / norm
    levels = _level_product(law, level_numbers(x), x.sign) / norm
    _assert_same(path, levels, "path vs level-number excursion probability", law.mode)
    return path


def class_prob(law: JumpLaw, n: LevelNumbers, sign: int = 1):
    """Probability (within the sign class) of all excursions with levels ``n``."""
    return count_excursions(n) * _level_product(law, n, sign) / _sign_norm(law, sign)


def ruin_prob(law: JumpLaw, c: int, r: int, s: int):
    """Exit probabilities of (r, s) from c: (P(hit s first), P(hit r first)).

    Requires r < c < s; the two values add to 1 since the walk leaves any
    finite interval almost surely.
    """
    if not r < c < s:
        raise ValueError("need r < c < s")
    data = boundary(law)
    top = data.anchor(s - c, c)
    bottom = data.anchor(r - c, c)
    up = -bottom / (top - bottom)
    return up, 1 - up


def height_tail(law: JumpLaw, s: int):
    """P(the walk from 1 returns to 0 in finite time with height >= s).

    Factorises as P(reach s before 0) times P(hit 0 ever | at s).
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    data = boundary(law)
    if s == 1:
        return data.beta(1)
    return ruin_prob(law, 1, 0, s)[0] * data.beta(s)


def height_unique(law: JumpLaw, s: int):
    """P(finite return from 1, height exactly s, attained only once).

    The three-factor product: reach s before 0, step down from s, then
    from s - 1 hit 0 before ever revisiting s.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    if s == 1:
        return law.q(1)
    up = ruin_prob(law, 1, 0, s)[0]
    down = ruin_prob(law, s - 1, 0, s)[1]
    return up * law.q(s) * down


def doob_law(law: JumpLaw) -> JumpLaw:
    """The transition law conditioned to return to 0 almost surely.

    New up-probabilities are p_i * beta_{i+1} / beta_i (with the hitting
    probability of 0 from 0 read as 1, and the return probability beta0 in
    the denominator at i = 0).  Beyond the table the betas decay
    geometrically, so a transient side simply swaps its tail values; the
    result is again a finite-table law, one state wider.
    """
    data = boundary(law)
    one = law.one

    def hit(j: int):
        return one if j == 0 else data.beta(j)

    k_new = law.k_max + 1
    probs = []
    for i in range(-k_new, k_new + 1):
        denom = data.beta0 if i == 0 else data.beta(i)
        tp = law.p(i) * hit(i + 1) / denom
        tq = law.q(i) * hit(i - 1) / denom
        _assert_same(tp + tq, one, f"doob row sum at state {i}", law.mode)
        probs.append(tp)
    tp_plus = law.p_plus if data.positive_side_recurrent else law.q(law.k_max + 1)
    tp_minus = law.p_minus if data.negative_side_recurrent else law.q(-(law.k_max + 1))
    return JumpLaw(k_new, tuple(probs), tp_plus, tp_minus, law.mode)


def conditional_excursion_prob(law: JumpLaw, x: Excursion):
    """P(the excursion equals ``x`` | it is finite), both signs together.

    Computed as the raw path product over beta0 and cross-checked against
    the path product under the Doob-transformed law, which realises the
    conditioning exactly.
    """
    data = boundary(law)
    direct = _path_product(law, x) / data.beta0
    transformed = _path_product(doob_law(law), x)
    _assert_same(direct, transformed, "conditional excursion probability", law.mode)
    return direct
