"""Essential key forms of a generic degree-wise series.

The engine runs the inductive construction: f_0 = x, f_1 = y minus the
integer-exponent head of the series, and for each formal pair a power of the
previous form is corrected monomial by monomial ("absorption") until its
substituted degree drops to the next pole position.  The corrections are
recorded in lifted coordinates y_1..y_k (one variable per form), so each step
also returns the lift F_{k+1} in Q[x, x^-1, y_1..y_k] with
f_{k+1} = F_{k+1}(x, f_1, ..., f_k).

The absorbed exponents live in the lattice (1/(p_1..p_k))Z while k is not
final, and carry xi-free coefficients; both facts are enforced at runtime and
raised as invariant violations with a state dump if they ever fail, since the
decomposition of the target weight over (omega_0..omega_k) with bounded
middle coefficients only exists under them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InvariantViolationError, PreconditionError
from .semidegree import GenericDPS, LaurentPolyXY, XiPoly, XiSeries, substitute


class LiftedPoly:
    """Sparse element of Q[x, x^-1, y_1, ..., y_k].

    Term keys are (x_exp, y1_exp, ..., yk_exp); x_exp may be negative, the
    y-exponents may not.
    """

    __slots__ = ("k", "terms")

    def __init__(self, k: int, terms):
        items = terms.items() if hasattr(terms, "items") else terms
        clean: dict[tuple[int, ...], Fraction] = {}
        for key, c in items:
            c = Fraction(c)
            if c == 0:
                continue
            key = tuple(int(v) for v in key)
            if len(key) != k + 1:
                raise ValueError(f"term key {key} does not match k={k}")
            if any(v < 0 for v in key[1:]):
                raise ValueError("negative y-exponent")
            clean[key] = c
        self.k = k
        self.terms = clean

    def sub_monomial(self, key: tuple[int, ...], c: Fraction) -> "LiftedPoly":
        out = dict(self.terms)
        out[key] = out.get(key, Fraction(0)) - c
        return LiftedPoly(self.k, out)

    def project(self, forms) -> LaurentPolyXY:
        """Evaluate y_j -> forms[j] (forms[0] is x and is ignored; x itself
        is substituted directly)."""
        cache: dict[tuple[int, int], LaurentPolyXY] = {}

        def fpow(j: int, n: int) -> LaurentPolyXY:
            if n == 0:
                return LaurentPolyXY.monomial(0, 0)
            if (j, n) not in cache:
                cache[(j, n)] = fpow(j, n - 1) * forms[j]
            return cache[(j, n)]

        out = LaurentPolyXY.zero()
        for key, c in self.terms.items():
            mono = LaurentPolyXY.monomial(key[0], 0, c)
            for j, n in enumerate(key[1:], start=1):
                if n:
                    mono = mono * fpow(j, n)
            out = out + mono
        return out

    def omega_value(self, key: tuple[int, ...], omegas) -> int:
        """Weight of one monomial: x_exp*omega_0 + sum y_j-exp*omega_j."""
        return sum(e * w for e, w in zip(key, omegas))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LiftedPoly)
            and self.k == other.k
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        return self.format()

    def format(self, xname: str = "x") -> str:
        if not self.terms:
            return "0"
        names = [xname] + [f"y{j}" for j in range(1, self.k + 1)]
        keys = sorted(self.terms, key=lambda t: (tuple(-v for v in t[1:][::-1]), -t[0]))
        parts: list[str] = []
        for key in keys:
            c = self.terms[key]
            mag = abs(c)
            factors = []
            for name, e in zip(names, key):
                if e == 0:
                    continue
                if e == 1:
                    factors.append(name)
                elif e >= 0:
                    factors.append(f"{name}^{e}")
                else:
                    factors.append(f"{name}^({e})")
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


@dataclass(frozen=True)
class EssentialKeyForms:
    """Output of the key-form construction.

    forms[k] is the k-th essential key form in Q[x, x^-1, y] (forms[0] = x),
    lifts[k-1] its expression in the previous forms, omegas the pole values
    delta(f_k) (omega_0 = delta_x through omega_{l+1}), alphas the formal
    pair p's.  all_forms, when requested, is the full chain including the
    head truncations of f_1 and every intermediate absorption state.
    """

    source: GenericDPS
    forms: tuple[LaurentPolyXY, ...]
    lifts: tuple[LiftedPoly, ...]
    omegas: tuple[int, ...]
    alphas: tuple[int, ...]
    all_forms: tuple[LaurentPolyXY, ...] | None = None

    @property
    def l(self) -> int:
        return len(self.forms) - 2

    def last(self) -> LaurentPolyXY:
        return self.forms[-1]


def is_polynomial(f: LaurentPolyXY) -> bool:
    """No negative x-exponents (the zero polynomial counts as polynomial)."""
    m = f.min_x_exponent()
    return m is None or m >= 0


def _decompose_weight(target: int, omegas, ps) -> tuple[int, tuple[int, ...]]:
    """Unique (a, (b_1..b_k)) with a*omega_0 + sum b_j omega_j = target,
    0 <= b_j < p_j.  Existence needs gcd(omega_0..omega_{j-1}) | things, which
    holds exactly on the lattice targets the absorption loop produces."""
    k = len(omegas) - 1
    assert len(ps) == k
    t = target
    betas = [0] * k
    for j in range(k, 0, -1):
        g = 0
        for w in omegas[:j]:
            g = gcd(g, w)
        found = [b for b in range(ps[j - 1]) if (t - b * omegas[j]) % g == 0]
        if len(found) != 1:
            raise InvariantViolationError(
                "weight decomposition not unique",
                target=target,
                omegas=tuple(omegas),
                ps=tuple(ps),
                j=j,
                candidates=found,
            )
        betas[j - 1] = found[0]
        t -= found[0] * omegas[j]
    if t % omegas[0] != 0:
        raise InvariantViolationError(
            "x-part of the weight decomposition is fractional",
            target=target,
            omegas=tuple(omegas),
            remainder=t,
        )
    return t // omegas[0], tuple(betas)


def omega_decompose(n: int, k: int, keys: EssentialKeyForms) -> tuple[int, tuple[int, ...]]:
    """Represent n over the poles of the first k+1 forms: returns (a, betas)
    with a*omega_0 + sum_j betas[j]*omega_j = n * p_{k+1}..p_{l+1} and
    0 <= betas[j] < p_{j+1}."""
    pairs = keys.source.formal_pairs
    if not 0 <= k <= len(pairs):
        raise PreconditionError(f"k = {k} out of range")
    scale = 1
    for _, p in pairs[k:]:
        scale *= p
    ps = [p for _, p in pairs[:k]]
    return _decompose_weight(n * scale, keys.omegas[: k + 1], ps)


def _integer_head(g: GenericDPS) -> list[tuple[Fraction, Fraction]]:
    """Terms of phi above the first formal exponent, most significant first.
    Their exponents are integral by construction of the pairs."""
    e1 = g.formal_exponents()[0]
    head = [(e, c) for e, c in g.phi.terms.items() if e > e1]
    head.sort(key=lambda t: -t[0])
    for e, _ in head:
        if e.denominator != 1:
            raise InvariantViolationError(
                "fractional exponent above the first formal exponent",
                exponent=e,
                first_formal=e1,
            )
    return head


def essential_key_forms(g: GenericDPS, want_all: bool = False) -> EssentialKeyForms:
    """Run the full construction on a generic degree-wise series."""
    pairs = g.formal_pairs
    cum = g.cumulative_p()
    delta_x = g.delta_x
    l = g.l

    def to_pole(e: Fraction) -> int:
        v = delta_x * e
        if v.denominator != 1:
            raise InvariantViolationError("non-integral pole value", value=v)
        return int(v)

    forms: list[LaurentPolyXY] = [LaurentPolyXY.x()]
    chain: list[LaurentPolyXY] = [LaurentPolyXY.x()]

    head = _integer_head(g)
    f1 = LaurentPolyXY.y()
    if want_all:
        chain.append(f1)
    for e, c in head:
        f1 = f1 - LaurentPolyXY.monomial(int(e), 0, c)
        if want_all:
            chain.append(f1)
    forms.append(f1)
    # F_1 is f_1 with y written as y_1 (there is no previous y-form to lift to)
    lifts: list[LiftedPoly] = [
        LiftedPoly(1, {(0, 1): Fraction(1), **{(int(e), 0): -c for e, c in head}})
    ]

    subs: list[XiSeries] = [
        XiSeries.monomial(1, XiPoly.const(1)),
        substitute(f1, g),
    ]
    omegas: list[int] = [delta_x, to_pole(subs[1].deg())]

    for k in range(1, l + 1):
        p_k = pairs[k - 1][1]
        lift = LiftedPoly(
            k, {tuple([0] * k + [p_k]): Fraction(1)}
        )
        s = subs[k] ** p_k
        w_stop = _stopping_exponent(s, k, l, cum)
        pow_cache: dict[tuple[int, int], XiSeries] = {}

        def spow(j: int, n: int, _cache=pow_cache) -> XiSeries:
            if n == 0:
                return XiSeries.one()
            if (j, n) not in _cache:
                _cache[(j, n)] = spow(j, n - 1, _cache) * subs[j]
            return _cache[(j, n)]

        last_deg: Fraction | None = None
        absorbed = 0
        while True:
            d = s.deg()
            if d == w_stop:
                if absorbed == 0:
                    raise InvariantViolationError(
                        "raised power already sits on the stopping exponent",
                        k=k,
                        stopping=w_stop,
                    )
                break
            if d < w_stop or (last_deg is not None and d >= last_deg):
                raise InvariantViolationError(
                    "absorption failed to descend onto the stopping exponent",
                    k=k,
                    degree=d,
                    stopping=w_stop,
                    previous=last_deg,
                    series=repr(s),
                )
            last_deg = d
            c_poly = s.lead_coeff()
            if not c_poly.is_constant():
                raise InvariantViolationError(
                    "xi-dependent coefficient above the stopping exponent",
                    k=k,
                    degree=d,
                    coefficient=repr(c_poly),
                    stopping=w_stop,
                )
            c = c_poly.constant_value()
            target = to_pole(d)
            a0, betas = _decompose_weight(
                target, omegas[: k + 1], [p for _, p in pairs[:k]]
            )
            lam = Fraction(1)
            for j, bj in enumerate(betas, start=1):
                if bj:
                    ljc = subs[j].lead_coeff()
                    if not ljc.is_constant():
                        raise InvariantViolationError(
                            "xi-dependent leading coefficient in a correction factor",
                            j=j,
                            coefficient=repr(ljc),
                        )
                    lam *= ljc.constant_value() ** bj
            coef = c / lam
            key = (a0, *betas)
            lift = lift.sub_monomial(key, coef)
            correction = XiSeries.monomial(a0, XiPoly.const(coef))
            for j, bj in enumerate(betas, start=1):
                if bj:
                    correction = correction * spow(j, bj)
            s = s - correction
            absorbed += 1
            if want_all:
                chain.append(lift.project(forms))
        lifts.append(lift)
        f_next = chain[-1] if want_all else lift.project(forms)
        forms.append(f_next)
        subs.append(s)
        omegas.append(to_pole(w_stop))

    result = EssentialKeyForms(
        source=g,
        forms=tuple(forms),
        lifts=tuple(lifts),
        omegas=tuple(omegas),
        alphas=tuple(p for _, p in pairs),
        all_forms=tuple(chain) if want_all else None,
    )
    _check_gcd_structure(result)
    return result


def _stopping_exponent(s: XiSeries, k: int, l: int, cum) -> Fraction:
    """Next pole position, read off the freshly raised power.

    Below the final level: the largest exponent outside the lattice
    (1/(p_1..p_k))Z.  At the final level: the largest exponent whose
    coefficient actually involves xi.
    """
    if k < l:
        lat = cum[k - 1]
        cand = [e for e in s.terms if (e * lat).denominator != 1]
        what = "exponent outside the current lattice"
    else:
        cand = [e for e, cp in s.terms.items() if cp.degree() >= 1]
        what = "xi-dependent exponent"
    if not cand:
        raise InvariantViolationError(
            f"no {what} in the raised power",
            k=k,
            series=repr(s),
        )
    return max(cand)


def _check_gcd_structure(keys: EssentialKeyForms) -> None:
    """gcd(omega_0..omega_k) = p_{k+1}..p_{l+1} for every k."""
    pairs = keys.source.formal_pairs
    g = 0
    for k, w in enumerate(keys.omegas):
        g = gcd(g, w)
        tail = 1
        for _, p in pairs[k:]:
            tail *= p
        if g != tail:
            raise InvariantViolationError(
                "pole gcd structure broken",
                k=k,
                gcd=g,
                expected=tail,
                omegas=keys.omegas,
            )


def all_key_forms(g: GenericDPS) -> tuple[LaurentPolyXY, ...]:
    """The full key-form chain: x, the head truncations of f_1, and every
    intermediate absorption state, ending at the last essential form."""
    return essential_key_forms(g, want_all=True).all_forms
