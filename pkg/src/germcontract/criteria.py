"""Decision layer: which contractions exist and which are algebraic.

The closed-form side works from the characteristic pairs (q_k, p_k) of a
local curve germ together with a non-negative integer r: the alpha
invariant, the semigroup generators omega-tilde, the virtual poles omega
and the generic pole, and a per-level pair of semigroup conditions that
classify the possible contractions.  The constructive side runs the
key-form engine on an actual curve and reads algebraicity off the last
essential key form (it is decisive: the contraction has an algebraic
model iff that form has no negative power of x).  Witness curves
realizing each predicted behavior are built explicitly so the two sides
can be cross-checked on concrete inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd

from .errors import InvariantViolationError, PreconditionError
from .keyforms import EssentialKeyForms, essential_key_forms, is_polynomial
from .puiseux import (
    CharacteristicData,
    Orientation,
    PuiseuxPoly,
    local_to_degreewise,
    puiseux_pairs,
)
from .semidegree import LaurentPolyXY, generic_dps_from_curve


def _as_chardata(local_pairs) -> CharacteristicData:
    if isinstance(local_pairs, CharacteristicData):
        return local_pairs
    return CharacteristicData.from_pairs(local_pairs)


def _check_local(data: CharacteristicData) -> CharacteristicData:
    """Local-side sanity: positive q_k and strictly increasing exponents
    q_k/(p_1..p_k)."""
    exps = data.char_exponents()
    for k, ((q, _), e) in enumerate(zip(data.pairs, exps)):
        if q < 1:
            raise PreconditionError(f"local pair with q = {q}: q must be >= 1")
        if k and e <= exps[k - 1]:
            raise PreconditionError(
                f"characteristic exponents must increase: {exps[k - 1]} then {e}"
            )
    return data


def _check_r(r) -> int:
    if not isinstance(r, int) or r < 0:
        raise PreconditionError(f"r = {r!r} must be a non-negative integer")
    return r


def alpha_invariant(local_pairs, r: int) -> int:
    """Intersection multiplicity of the germ with a generic curve through
    the r-th extra infinitely near point; for a single pair (q, p) this is
    p*q + r."""
    data = _check_local(_as_chardata(local_pairs))
    _check_r(r)
    if not data.pairs:
        raise PreconditionError("need at least one characteristic pair")
    exps = data.char_exponents()
    total = Fraction(0)
    tail = 1  # product of p_j for j > k, built from the right
    for k in range(len(data.pairs) - 1, -1, -1):
        p_k = data.pairs[k][1]
        total += (p_k - 1) * tail * exps[k]
        tail *= p_k
    alpha = data.polydromy * total + data.pairs[-1][0] + r
    assert alpha.denominator == 1
    return int(alpha)


def is_contractible(local_pairs, r: int) -> bool:
    """True iff the exceptional configuration of (pairs, r) contracts
    analytically: the germ has order < 1 (first pair has q < p) and
    alpha < p^2."""
    data = _check_local(_as_chardata(local_pairs))
    _check_r(r)
    if not data.pairs:
        raise PreconditionError("need at least one characteristic pair")
    q1, p1 = data.pairs[0]
    if q1 >= p1:
        return False
    return alpha_invariant(data, r) < data.polydromy**2


def _tilde_omegas(data: CharacteristicData) -> tuple[int, ...]:
    """Semigroup generators (w~_0 .. w~_lt): w~_0 is the polydromy and w~_k
    collects the weighted lower characteristic exponents up to level k."""
    exps = data.char_exponents()
    out = [data.polydromy]
    for k in range(1, len(data.pairs) + 1):
        total = exps[k - 1]
        tail = 1  # product of p_i for j < i <= k-1
        for j in range(k - 1, 0, -1):
            p_j = data.pairs[j - 1][1]
            total += (p_j - 1) * tail * exps[j - 1]
            tail *= p_j
        val = data.polydromy * total
        assert val.denominator == 1
        out.append(int(val))
    return tuple(out)


@dataclass(frozen=True)
class VirtualPoles:
    """Closed-form pole data of (pairs, r).

    tilde_omegas = (w~_0..w~_lt) generate the semigroup of intersection
    numbers; omegas = (w_0..w_l) are the virtual poles, and generic_pole is
    w_{l+1}, positive exactly on contractible input.
    """

    tilde_omegas: tuple[int, ...]
    omegas: tuple[int, ...]
    generic_pole: int
    l: int
    alpha: int
    p: int

    def delta_sequence(self) -> tuple[int, ...]:
        """The omegas divided by their gcd; realized as the pole orders of
        the coordinate restrictions on a curve with one place at infinity."""
        g = gcd(*self.omegas)
        return tuple(w // g for w in self.omegas)


def virtual_poles(local_pairs, r: int) -> VirtualPoles:
    """Evaluate the pole formulas exactly.

    l is the number of pairs when r > 0 and one less when r = 0;
    w_0 = p and w_k = p_1^2..p_{k-1}^2 p_k..p_lt - w~_k; the generic pole
    is p^2 - alpha for r > 0 and (p^2 - alpha)/p_lt for r = 0.  The omegas,
    with the generic pole appended, coincide with the pole orders of the
    essential key forms of any curve having these pairs.
    """
    data = _check_local(_as_chardata(local_pairs))
    _check_r(r)
    if not data.pairs:
        raise PreconditionError("need at least one characteristic pair")
    ps = [p for _, p in data.pairs]
    lt = len(ps)
    p = data.polydromy
    alpha = alpha_invariant(data, r)
    tilde = _tilde_omegas(data)
    assert alpha == ps[-1] * tilde[-1] + r
    l = lt - 1 if r == 0 else lt
    omegas = [p]
    head = 1  # p_1^2 .. p_{k-1}^2
    tail = p  # p_k .. p_lt
    for k in range(1, l + 1):
        omegas.append(head * tail - tilde[k])
        head *= ps[k - 1] * ps[k - 1]
        tail //= ps[k - 1]
    if r > 0:
        generic = p * p - alpha
    else:
        generic = head * tail - tilde[lt]
        assert generic * ps[-1] == p * p - alpha
    return VirtualPoles(tilde, tuple(omegas), generic, l, alpha, p)


def semigroup_membership(n: int, gens) -> bool:
    """Is n a non-negative integer combination of gens (all positive)?"""
    gens = tuple(int(g) for g in gens)
    for g in gens:
        if g <= 0:
            raise PreconditionError(f"generator {g} must be positive")
    if n < 0:
        return False
    mask = (1 << (n + 1)) - 1
    reach = 1  # bit i set iff i is reachable
    for g in gens:
        while True:
            grown = (reach | (reach << g)) & mask
            if grown == reach:
                break
            reach = grown
    return bool(reach >> n & 1)


class Classification(Enum):
    """Which contractions the configuration admits: only algebraic ones,
    only non-algebraic ones, both kinds (depending on the curve's
    coefficients), or none at all."""

    ONLY_ALGEBRAIC = "OnlyAlgebraic"
    BOTH = "Both"
    ONLY_NONALGEBRAIC = "OnlyNonAlgebraic"
    NOT_CONTRACTIBLE = "NotContractible"


@dataclass(frozen=True)
class S2Entry:
    """Outcome of the gap check at level k; offender is the largest integer
    of the group in the open interval that misses the semigroup."""

    k: int
    holds: bool
    offender: int | None


@dataclass(frozen=True)
class SemigroupReport:
    s1: tuple[bool, ...]
    s2: tuple[S2Entry, ...]
    classification: Classification
    poles: VirtualPoles


def semigroup_conditions(local_pairs, r: int) -> SemigroupReport:
    """Run the two semigroup checks at every level k = 1..l:

    S1-k: p_k * w_k is a non-negative combination of w_0..w_{k-1};
    S2-k: every integer of the group Z<w_0..w_k> lying strictly between
    w_{k+1} and p_k * w_k also lies in the semigroup of those generators.

    All S1 and all S2 hold -> every contraction is algebraic; all S1 hold
    but some S2 fails -> both kinds occur; some S1 fails -> no contraction
    is algebraic.  Non-contractible input short-circuits.
    """
    data = _check_local(_as_chardata(local_pairs))
    vp = virtual_poles(data, r)
    if not is_contractible(data, r):
        return SemigroupReport((), (), Classification.NOT_CONTRACTIBLE, vp)
    assert vp.generic_pole > 0
    for w in vp.omegas:
        if w <= 0:
            raise InvariantViolationError(
                "non-positive virtual pole alongside a positive generic pole",
                omegas=vp.omegas,
                generic_pole=vp.generic_pole,
            )
    ladder = vp.omegas + (vp.generic_pole,)
    s1 = []
    s2 = []
    for k in range(1, vp.l + 1):
        p_k = data.pairs[k - 1][1]
        target = p_k * vp.omegas[k]
        s1.append(semigroup_membership(target, vp.omegas[:k]))
        step = gcd(*vp.omegas[: k + 1])
        offender = None
        for n in range(ladder[k + 1] + 1, target):
            if n % step:
                continue
            if not semigroup_membership(n, vp.omegas[: k + 1]):
                offender = n
        s2.append(S2Entry(k, offender is None, offender))
    if all(s1):
        cls = (
            Classification.ONLY_ALGEBRAIC
            if all(e.holds for e in s2)
            else Classification.BOTH
        )
    else:
        cls = Classification.ONLY_NONALGEBRAIC
    return SemigroupReport(tuple(s1), tuple(s2), cls, vp)


@dataclass(frozen=True)
class WitnessCurve:
    """A local series realizing one branch of the classification."""

    curve: PuiseuxPoly
    predicted_algebraic: bool


def witness_curves(local_pairs, r: int, classification=None) -> tuple[WitnessCurve, ...]:
    """Explicit curves realizing the classification of (pairs, r).

    The all-ones series (coefficient 1 on every characteristic exponent)
    is predicted algebraic exactly when all S1 hold.  In the BOTH case a
    second series with one extra term u^((q_k + r')/(p_1..p_k)) is added,
    where k is the first level with S2 failing and r' = (p_k*w_k - n)/g
    for the largest gap element n and g = gcd(w_0..w_k); the inserted
    term makes the level-(k+1) key form pick up a tail of pole order
    exactly n, whose decomposition over w_0..w_k must go negative, so the
    contraction is never algebraic.  n > w_(k+1) is precisely what keeps
    the new exponent strictly below the next characteristic one.

    classification, when given (either the enum value or a full
    SemigroupReport), must agree with what (pairs, r) actually computes.
    """
    data = _check_local(_as_chardata(local_pairs))
    report = None
    if isinstance(classification, SemigroupReport):
        report = classification
        classification = report.classification
    if report is None:
        report = semigroup_conditions(data, r)
    if classification is not None and classification is not report.classification:
        raise PreconditionError(
            f"requested classification {classification} does not match the "
            f"computed {report.classification}"
        )
    if report.classification is Classification.NOT_CONTRACTIBLE:
        return ()
    exps = data.char_exponents()
    base = PuiseuxPoly(Orientation.LOCAL, {e: Fraction(1) for e in exps})
    assert puiseux_pairs(base).pairs == data.pairs
    out = [WitnessCurve(base, all(report.s1))]
    if report.classification is Classification.BOTH:
        entry = next(e for e in report.s2 if not e.holds)
        k = entry.k
        p_k = data.pairs[k - 1][1]
        step = gcd(*report.poles.omegas[: k + 1])
        r_prime = (p_k * report.poles.omegas[k] - entry.offender) // step
        e_ins = Fraction(data.pairs[k - 1][0] + r_prime, data.cumulative_p()[k - 1])
        upper = (
            exps[k]
            if k < len(data.pairs)
            else Fraction(data.pairs[-1][0] + r, data.polydromy)
        )
        if not exps[k - 1] < e_ins < upper:
            raise InvariantViolationError(
                "witness exponent fell outside its window",
                inserted=e_ins,
                window=(exps[k - 1], upper),
            )
        out.append(WitnessCurve(base.with_term(e_ins, Fraction(1)), False))
    return tuple(out)


@dataclass(frozen=True)
class AlgebraicityReport:
    """contractible/algebraic verdicts plus the certificates: the key forms,
    the witness curve cut out by the last form when it is a polynomial, and
    the ambient weighted-projective weights."""

    contractible: bool
    algebraic: bool | None
    key_forms: EssentialKeyForms | None
    witness_curve: LaurentPolyXY | None
    wp_weights: tuple[int, ...] | None


def is_algebraic(curve: PuiseuxPoly, r: int, force_keyforms: bool = False) -> AlgebraicityReport:
    """Full pipeline on a local curve germ.

    Converts to the degree-wise picture, attaches the generic term for r,
    computes the essential key forms and reads the answer off the last
    one: the contraction is algebraic iff that form has no negative power
    of x.  When it is, the form cuts out a witness curve in the weighted
    projective space with weights (1, w_0..w_{l+1}).

    Non-contractible input short-circuits without computing key forms
    unless force_keyforms is set (the engine itself does not need
    contractibility).
    """
    if not isinstance(curve, PuiseuxPoly):
        raise PreconditionError("curve must be a PuiseuxPoly")
    if curve.orientation is not Orientation.LOCAL:
        raise PreconditionError("curve must be a local series (in u)")
    data = puiseux_pairs(curve)
    if not data.pairs:
        raise PreconditionError("curve needs at least one characteristic pair")
    contractible = is_contractible(data, r)
    keys = None
    if contractible or force_keyforms:
        keys = essential_key_forms(generic_dps_from_curve(local_to_degreewise(curve), r))
    if not contractible:
        return AlgebraicityReport(False, None, keys, None, None)
    last = keys.last()
    algebraic = is_polynomial(last)
    # the last form decides for the whole chain
    assert algebraic == all(is_polynomial(f) for f in keys.forms)
    if not algebraic:
        return AlgebraicityReport(True, False, keys, None, None)
    return AlgebraicityReport(True, True, keys, last, (1,) + keys.omegas)


def single_pair_test(f: LaurentPolyXY, p: int, q_tilde: int, r: int) -> bool:
    """Shortcut for germs with a single pair (q_tilde, p), defined by a
    Weierstrass polynomial f(u, v), monic of degree p in v (stored as a
    LaurentPolyXY with x playing u and y playing v).

    Weigh each monomial u^a v^b by a*p + b*q_tilde, drop everything of
    weight >= p*q_tilde + r; the contraction is algebraic iff what is left
    (possibly nothing) has total degree at most p.
    """
    _check_r(r)
    if p < 2 or q_tilde < 1 or gcd(p, q_tilde) != 1:
        raise PreconditionError("need p >= 2 and q_tilde >= 1 coprime")
    if f.deg_y() != p or not f.is_monic_in_y():
        raise PreconditionError(f"f must be monic of degree {p} in v")
    m = f.min_x_exponent()
    if m is None or m < 0:
        raise PreconditionError("f must be a nonzero polynomial in u, v")
    alpha = p * q_tilde + r
    best = None
    for (a, b) in f.terms:
        if a * p + b * q_tilde < alpha:
            best = a + b if best is None else max(best, a + b)
    return best is None or best <= p


def single_pair_closed_form(q: int, p: int, r: int) -> dict:
    """Closed-form answers for a single pair (q, p): the configuration is
    contractible iff r < p(p - q), and admits a non-algebraic contraction
    iff additionally r > 2p - q."""
    if p < 1 or q < 1 or gcd(p, q) != 1:
        raise PreconditionError("need p, q >= 1 coprime")
    _check_r(r)
    contractible = r < p * (p - q)
    return {
        "contractible": contractible,
        "nonalgebraic_exists": contractible and r > 2 * p - q,
    }
