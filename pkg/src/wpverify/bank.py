"""The identity bank: every checked identity as an :class:`IdentityCase`.

A case builds a list of equalities ``(label, lhs, rhs)`` from a
:class:`Specialization` and an order.  Free parameters are drawn as small
rationals (optionally times a fixed power of q); the q-power substitutions an
identity needs (a = q, a = k^2, k = -1, q = t^2, ...) are part of the case.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import formulas as fm
from .exact import ONE, render
from .fps import LaurentSeries
from .qkit import Monomial, Q1
from .wppairs import PAIRS, PairParams, get_pair, poch_vanishes, wp_check

Equality = tuple[str, LaurentSeries, LaurentSeries]


@dataclass(frozen=True)
class Param:
    """A free parameter, drawn as ``c * q^exp`` with c a small random rational."""
    name: str
    exp: int = 0


@dataclass(frozen=True)
class Specialization:
    values: tuple = ()
    pair: str | None = None
    seed: int | None = None

    @classmethod
    def of(cls, pair=None, seed=None, **values) -> Specialization:
        vals = tuple(sorted((k, Monomial.of(v)) for k, v in values.items()))
        return cls(vals, pair, seed)

    def __getitem__(self, name: str) -> Monomial:
        for k, v in self.values:
            if k == name:
                return v
        raise KeyError(name)

    def get(self, name, default=None):
        try:
            return self[name]
        except KeyError:
            return default

    def extras(self) -> dict:
        return {k: v.coef for k, v in self.values if k.startswith("rho")}

    def render(self) -> str:
        parts = [f"{k}={_mono(v)}" for k, v in self.values]
        if self.pair:
            parts.append(f"pair={self.pair}")
        return ", ".join(parts) if parts else "-"


def _mono(m: Monomial) -> str:
    c = render(m.coef)
    if m.exp == 0:
        return c
    return f"{c}*q^{m.exp}"


Predicate = tuple[str, Callable[[Specialization], bool]]


@dataclass(frozen=True)
class IdentityCase:
    id: str
    paperEq: str
    build: Callable[[Specialization, int], list[Equality]]
    freeParams: tuple[Param, ...] = ()
    pairSlots: tuple[str, ...] = ()
    predicates: tuple[Predicate, ...] = ()
    # pair instantiations the builder will use; each must satisfy the pair's constraints
    pairSites: Callable[[Specialization], list[PairParams]] | None = None
    substExp: int = 1
    note: str = ""

    def violations(self, spec: Specialization) -> list[str]:
        bad = [name for name, ok in self.predicates if not ok(spec)]
        if self.pairSlots:
            if spec.pair not in self.pairSlots:
                return bad + [f"pair in {{{', '.join(self.pairSlots)}}}"]
            if self.pairSites is not None:
                pair = get_pair(spec.pair)
                for p in self.pairSites(spec):
                    bad += [f"{spec.pair}: {v}" for v in pair.violated(p)]
        return bad

    def equalities(self, spec: Specialization, N: int) -> list[Equality]:
        return self.build(spec, N)

    def lhs(self, spec: Specialization, N: int) -> LaurentSeries:
        return self.build(spec, N)[0][1]

    def rhs(self, spec: Specialization, N: int) -> LaurentSeries:
        return self.build(spec, N)[0][2]


# ---------------------------------------------------------------------------
# predicate helpers

def ne1(label: str, f: Callable[[Specialization], Monomial]) -> Predicate:
    """``1 - f(spec)`` is not the zero constant."""
    return (f"{label} != 1", lambda s: f(s) != Monomial(1))


def poch_ok(label: str, f: Callable[[Specialization], tuple]) -> Predicate:
    """``(x; Q)_inf`` has no vanishing factor, where ``f(spec) = (x, Q)``."""
    return (f"({label})_inf nonvanishing", lambda s: not poch_vanishes(*f(s)))


def ne(label: str, f, g) -> Predicate:
    return (label, lambda s: f(s) != g(s))


A = lambda s: s["a"]
K = lambda s: s["k"]
Z = lambda s: s["z"]
q = Q1
q2 = Monomial(1, 2)

ALL = ("trivial", "unit", "pr4", "mz01", "singh")
NO_MZ = ("trivial", "unit", "pr4", "singh")


def _pair(s: Specialization):
    return get_pair(s.pair)


def _site(a, k, Q=q):
    return lambda s: [PairParams(a(s), k(s), Q, s.extras())]


def _sites(*fs):
    return lambda s: [p for f in fs for p in f(s)]


def _eq(label: str, lhs, rhs) -> Equality:
    return (label, lhs, rhs)


def _chain(labels: list[str], forms: list[LaurentSeries]) -> list[Equality]:
    """Equalities form[0] = form[i]."""
    return [(f"{labels[0]} = {labels[i]}", forms[0], forms[i]) for i in range(1, len(forms))]


# ---------------------------------------------------------------------------
# builders

def _wpdef(s: Specialization, N: int) -> list[Equality]:
    out = []
    ex = {"rho1": s["rho1"].coef, "rho2": s["rho2"].coef}
    for name in sorted(PAIRS):
        pair = get_pair(name)
        if name == "singh-limit":
            params = PairParams(Monomial(1), Monomial(-1), q)
        else:
            params = PairParams(s["a"], s["k"], q, ex)
        for n, res in enumerate(wp_check(pair, params, 8, N), start=1):
            out.append((f"{name} residual n={n}", res, LaurentSeries.zero(N)))
    return out


def _wpdef_ok(s: Specialization) -> bool:
    ex = {"rho1": s["rho1"].coef, "rho2": s["rho2"].coef}
    p = PairParams(s["a"], s["k"], q, ex)
    return all(not get_pair(name).violated(p) for name in ALL)


def _feq(s, N):
    F = fm.F_series(_pair(s), A(s), K(s), q, N, s.extras())
    return [_eq("F(a,k,q) = f(a/k,k,-1,q)/2 + f(a,k^2,aq,q^2)", F, fm.f_lambert_combo(A(s), K(s), q, N))]


def _thm1(s, N):
    pair, a, k, ex = _pair(s), A(s), K(s), s.extras()
    lhs = fm.F_series(pair, a, k, q, N, ex) - fm.F_series(pair, ONE / a, ONE / k, q, N, ex)
    return [_eq("F(a,k,q) - F(1/a,1/k,q) = products", lhs, fm.thm1_rhs(a, k, q, N))]


def _wpeq8(s, N):
    lhs, rhs = fm.wpeq8_sides(_pair(s), A(s), K(s), Z(s), q, N, s.extras())
    return [_eq("four pair sums = f reciprocity side", lhs, rhs)]


def _wpeq2n(s, N):
    lhs, rhs = fm.wpeq2n_sides(_pair(s), A(s), K(s), Z(s), q, N, s.extras())
    return [_eq("beta sums = alpha sums", lhs, rhs)]


def _chain_b(s, N):
    lhs, rhs = fm.chain_sides(_pair(s), A(s), K(s), s["b"], q, N, s.extras())
    return [_eq("beta series = even + odd alpha series", lhs, rhs)]


def _f3rep(s, N):
    a, k, z = A(s), K(s), Z(s)
    forms = [fm.f_rep1(a, k, z, q, N), fm.f_rep2(a, k, z, q, N), fm.f_rep3(a, k, z, q, N)]
    return [_eq("first = second", forms[0], forms[1]), _eq("first = Lambert", forms[0], forms[2]),
            _eq("second = Lambert", forms[1], forms[2])]


def _frecip(s, N):
    a, k, z = A(s), K(s), Z(s)
    lhs = fm.f_rep1(a, k, z, q, N) - fm.f_rep1(ONE / a, ONE / k, ONE / z, q, N)
    return [_eq("f(a,k,z) - f(1/a,1/k,1/z) = products", lhs, fm.f_recip_rhs(a, k, z, q, N))]


MINUS1 = Monomial(-1)


def _fspec_a(s, N):
    a, k = A(s), K(s)
    return [_eq("f(a/k,k,-1,q) = Lambert", fm.f_rep1(a / k, k, MINUS1, q, N), fm.fspec_a_rhs(a, k, q, N))]


def _frecip_a(s, N):
    a, k = A(s), K(s)
    lhs = fm.f_rep1(a / k, k, MINUS1, q, N) - fm.f_rep1(k / a, ONE / k, MINUS1, q, N)
    return [_eq("f(a/k,k,-1) - f(k/a,1/k,-1) = products", lhs, fm.frecip_a_rhs(a, k, q, N))]


def _fspec_b(s, N):
    a, k = A(s), K(s)
    return [_eq("f(a,k^2,aq,q^2) = Lambert", fm.f_rep1(a, k * k, a * q, q2, N), fm.fspec_b_rhs(a, k, q, N))]


def _frecip_b(s, N):
    a, k = A(s), K(s)
    k2 = k * k
    lhs = fm.f_rep1(a, k2, a * q, q2, N) - fm.f_rep1(ONE / a, ONE / k2, ONE / (a * q), q2, N)
    return [_eq("f(a,k^2,aq,q^2) - f(1/a,1/k^2,1/(aq),q^2) = products", lhs, fm.frecip_b_rhs(a, k, q, N))]


def _gprime(s, N):
    forms = fm.gprime_forms(A(s), K(s), q, N)
    return _chain(["Lambert form", "paired form", "f combination"], forms)


def _c1(s, N):
    a, k = A(s), K(s)
    return [_eq("trivial-pair sums = products", fm.cor_c1_lhs(a, k, q, N), fm.thm1_rhs(a, k, q, N))]


def _c1_unit(s, N):
    a, k = A(s), K(s)
    unit = get_pair("unit")
    lhs = fm.F_series(unit, a, k, q, N) - fm.F_series(unit, ONE / a, ONE / k, q, N)
    return [_eq("unit-pair F difference = products", lhs, fm.thm1_rhs(a, k, q, N))]


def _lamb1(s, N):
    forms = fm.lamb1_forms(_pair(s), K(s), q, N, s.extras())
    return _chain(["F(q,k,q)", "odd Lambert form", "shifted form", "closed constant", "k M(k,q)"], forms)


def _rs(s, N):
    k = K(s)
    R, S = fm.cor_rs_sides(_pair(s), k, q, N, s.extras())
    return [_eq("R = k M(k,q) S", R, fm.cor_rs_rhs_from_S(k, q, S, N))]


def _rs2_mz(s, N):
    k = K(s)
    lhs, rhs = fm.cor_rs2_mz_sides(k, q, N)
    gl, gr = fm.cor_rs2_general("mz01", k, q, N)
    return [_eq("closed form", lhs, rhs), _eq("general a=1/q form with mz01", gl, gr),
            _eq("closed right side = general right side", rhs, gr)]


def _rs2_pr4(s, N):
    k = K(s)
    lhs, rhs = fm.cor_rs2_pr4_sides(k, q, N)
    gl, gr = fm.cor_rs2_general("pr4", k, q, N)
    return [_eq("closed form", lhs, rhs), _eq("general a=1/q form with pr4", gl, gr),
            _eq("closed left side = general left side", lhs, gl)]


def _glam(s, N):
    k = K(s)
    return [_eq("G(k,q) = Lambert", fm.G_series(_pair(s), k, q, N, s.extras()), fm.g_lambert_rhs(k, q, N))]


def _fglink(s, N):
    k = K(s)
    return [_eq("F(k^2,k,q) = 0", fm.F_series(_pair(s), k * k, k, q, N, s.extras()), LaurentSeries.zero(N))]


def _sumid(s, N):
    sq, w = fm.sumid_forms(s["x"], q, N)
    return [_eq("sum x q^n/(1-xq^n)^2 = sum n x^n q^n/(1-q^n)", sq, w)]


def _psi4(s, N):
    lhs, rhs = fm.psi4_sides(q, N)
    return [_eq("q psi^4(q^2) = Lambert", lhs, rhs)]


def _wac(s, N):
    lhs, rhs = fm.wac_sides(q, N)
    return [_eq("series = psi^4(q^2)", lhs, rhs)]


def _min1(s, N):
    lhs, rhs = fm.min1_sides(_pair(s), q, N, s.extras())
    return [_eq("pair sums at q and -q = 4q psi^4(q^2)", lhs, rhs)]


def _min2(s, N):
    lhs, rhs = fm.min2_sides(q, N)
    return [_eq("three series = 4q psi^4(q^2)", lhs, rhs)]


def _grecip(s, N):
    k, pair, ex = K(s), _pair(s), s.extras()
    g = fm.G_series(pair, k, q, N, ex) + fm.G_series(pair, ONE / k, q, N, ex)
    lam, prod = fm.g_recip_forms(k, q, N)
    return [_eq("G(k) + G(1/k) = Lambert", g, lam), _eq("Lambert = products", lam, prod)]


def _phi4(s, N):
    jac, phi4, pairs = fm.phi4_forms(q, N)
    return [_eq("Jacobi Lambert = phi^4", jac, phi4), _eq("phi^4 = pair series at i, -i", phi4, pairs),
            _eq("phi^4 = four-square counts", phi4, fm.r4_series(N))]


def _chi3(s, N):
    lam, theta, pairs = fm.chi3_forms(Monomial(1, 1), N)
    return [_eq("Lambert = psi quotient", lam, theta), _eq("psi quotient = pair series at w, w^2", theta, pairs)]


def _aq(s, N):
    a, lam = fm.aq_forms(q, N)
    return [_eq("a(q) = Lambert", a, lam)]


def _aqdiff(s, N):
    return _chain(["a(q) - a(q^2)", "q^6 products", "6q psi^3(q^3)/psi(q)", "6q M(q,q^3)"],
                  fm.aq_diff_forms(q, N))


def _psi26(s, N):
    return _chain(["q psi(q^2) psi(q^6)", "Lambert", "q M(q,q^6)"], fm.psi26_forms(q, N))


def _phi2(s, N):
    return _chain(["phi^2", "Lambert", "2 M(i,q)"], fm.phi2_forms(q, N))


def _a2q(s, N):
    a2, lam = fm.a2q_forms(q, N)
    return [_eq("a(q)^2 = 1 + 12 sum chi0(n) n q^n/(1-q^n)", a2, lam)]


def _ratio_parts(pair, k, N, ex):
    R, S = fm.cor_rs_sides(pair, k, q, N, ex)
    c = (ONE - k.coef * k.coef) / k.coef
    return R, S, c


def _ratio(s, N):
    k, pair, ex = K(s), _pair(s), s.extras()
    vals = []
    W = N + 4
    for kk in (k, ONE / k):
        R, S, c = _ratio_parts(pair, kk, W, ex)
        vals.append((R / S).scale(c).truncate(N))
    m = fm.m_quotient(k, q, N).scale(ONE - k.coef * k.coef)
    return [_eq("ratio at k = ratio at 1/k", vals[0], vals[1]), _eq("ratio = (1-k^2) M(k,q)", vals[0], m)]


# ---------------------------------------------------------------------------

def _k_basic():
    return (ne1("k", K), ("k^2 != 1", lambda s: K(s) * K(s) != Monomial(1)))


def bank() -> list[IdentityCase]:
    ak = (Param("a"), Param("k"))
    akz = ak + (Param("z"),)
    thm_preds = (ne1("a", A), *_k_basic(), ne("a != k", A, K),
                 ("a^2 != k^2", lambda s: A(s) * A(s) != K(s) * K(s)))
    recip_site = _sites(_site(A, K), _site(lambda s: ONE / A(s), lambda s: ONE / K(s)))
    at_q = lambda s: q
    k2 = lambda s: K(s) * K(s)
    cases = [
        IdentityCase("WP-DEF", "definition of a WP-Bailey pair", _wpdef,
                     ak + (Param("rho1"), Param("rho2")),
                     predicates=(("every pair admissible at (a,k)", _wpdef_ok),),
                     note="all pairs at (a, k); the rho limit pair at (1, -1)"),
        IdentityCase("F-EQ-LAMBERT", "F(a,k,q) as a combination of f", _feq, ak, ALL,
                     (ne1("k", K),), _site(A, K)),
        IdentityCase("THM1", "reciprocity for F(a,k,q)", _thm1, ak, ALL, thm_preds, recip_site),
        IdentityCase("WPEQ8", "pair transformation to the f reciprocity side", _wpeq8, akz, ALL,
                     thm_preds[:3] + (ne("z != a", Z, A), ne("z != k", Z, K)), recip_site),
        IdentityCase("WPEQ2N", "pairs at (a,k), (-a,-k) and (a^2,k^2,q^2)", _wpeq2n, akz, ALL,
                     _k_basic(),
                     _sites(_site(A, K), _site(lambda s: -A(s), lambda s: -K(s)),
                            _site(lambda s: A(s) * A(s), k2, q2))),
        IdentityCase("CHAIN", "chain identity with a second parameter b", _chain_b, ak + (Param("b"),), ALL,
                     (ne1("k", K),), _site(A, K)),
        IdentityCase("F3REP", "three representations of f(a,k,z,q)", _f3rep, akz, (),
                     (ne1("a", A), ne1("k", K))),
        IdentityCase("FRECIP", "reciprocity for f(a,k,z,q)", _frecip, akz, (),
                     (ne1("a", A), ne1("k", K), ne("z != a", Z, A), ne("z != k", Z, K))),
        IdentityCase("FRECIP-A", "f reciprocity at z = -1", _frecip_a, ak, (), thm_preds),
        IdentityCase("FSPEC-A", "f(a/k,k,-1,q) as Lambert series", _fspec_a, ak, (), (ne1("k", K),)),
        IdentityCase("FRECIP-B", "f reciprocity at base q^2, z = aq", _frecip_b, ak, (),
                     (ne1("a", A), *_k_basic(), ne("a != k^2", A, k2))),
        IdentityCase("FSPEC-B", "f(a,k^2,aq,q^2) as Lambert series", _fspec_b, ak, (), _k_basic()),
        IdentityCase("GPRIME", "logarithmic derivative as Lambert series", _gprime, ak, (), _k_basic()),
        IdentityCase("COR-C1", "reciprocity with the trivial pair written out", _c1, ak, (), thm_preds),
        IdentityCase("COR-C1-UNIT", "reciprocity with the unit pair", _c1_unit, ak, (), thm_preds),
        IdentityCase("LAMB1", "F(q,k,q) and k M(k,q)", _lamb1, (Param("k"),), ALL, _k_basic(),
                     _site(at_q, K), note="a = q"),
        IdentityCase("COR-RS", "pair sums at a = q against k M(k,q)", _rs, (Param("k"),), ALL, _k_basic(),
                     _site(at_q, K), note="a = q"),
        IdentityCase("COR-RS2-MZ", "a = 1/q with the mz01 pair", _rs2_mz, (Param("k", -1),), (),
                     (("k/q^-1 != +-1", lambda s: K(s).coef * K(s).coef != 1),),
                     note="k = c/q; closed form with two misprints corrected"),
        IdentityCase("COR-RS2-PR4", "a = 1/q with the pr4 pair", _rs2_pr4, (Param("k"),), (), _k_basic(),
                     note="closed form with the first denominator corrected"),
        IdentityCase("G-LAMBERT", "G(k,q) as Lambert series", _glam, (Param("k"),), NO_MZ, _k_basic(),
                     _site(k2, K), note="a = k^2"),
        IdentityCase("FG-LINK", "F(k^2,k,q) = 0", _fglink, (Param("k"),), NO_MZ, _k_basic(), _site(k2, K)),
        IdentityCase("SUMID", "two forms of a Lambert series", _sumid, (Param("x"),)),
        IdentityCase("PSI4", "q psi^4(q^2) as a Lambert series", _psi4),
        IdentityCase("WAC", "psi^4(q^2) from the trivial pair", _wac),
        IdentityCase("MIN1", "pair sums at (1,-1) with bases q and -q", _min1, (), NO_MZ + ("singh-limit",),
                     (), _sites(_site(lambda s: Monomial(1), lambda s: MINUS1),
                                _site(lambda s: Monomial(1), lambda s: MINUS1, -q))),
        IdentityCase("MIN2", "the rho limit pair inserted at (1,-1)", _min2),
        IdentityCase("G-RECIP", "G(k,q) + G(1/k,q)", _grecip, (Param("k"),), NO_MZ, _k_basic(),
                     _sites(_site(k2, K), _site(lambda s: ONE / (K(s) * K(s)), lambda s: ONE / K(s)))),
        IdentityCase("PHI4", "Jacobi's four-square theorem", _phi4, note="k = i"),
        IdentityCase("CHI3", "principal character mod 3 Lambert series", _chi3, substExp=2,
                     note="q = t^2, k = omega"),
        IdentityCase("AQ-LAMBERT", "a(q) as a Lambert series", _aq),
        IdentityCase("AQ-DIFF", "a(q) - a(q^2)", _aqdiff),
        IdentityCase("PSI26", "q psi(q^2) psi(q^6)", _psi26),
        IdentityCase("PHI2-LAMBERT", "phi^2(q) as a Lambert series", _phi2),
        IdentityCase("A2Q", "a(q)^2 as a Lambert series", _a2q),
        IdentityCase("RATIO-INV", "(1-k^2) R/(k S) is invariant under k -> 1/k", _ratio, (Param("k"),), ALL,
                     _k_basic(), _sites(_site(at_q, K), _site(at_q, lambda s: ONE / K(s))),
                     note="S includes its leading 1"),
    ]
    return cases


def get_case(case_id: str) -> IdentityCase:
    for c in bank():
        if c.id == case_id:
            return c
    raise KeyError(case_id)
