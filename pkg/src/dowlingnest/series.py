"""Truncated multivariate exponential generating series, exactly.

A MultiSeries keeps a dict from exponent vectors to Fractions over an
ordered variable tuple.  The variable 's' (component counter) is exempt
from truncation; all other variables are t-type and their total degree is
hard-capped by the truncation bound.  Coefficients are stored in
EGF-normalized form: the rational multiplying the monomial, factorials
folded in, so integer counts are recovered by multiplying back.

The tree series: lambda_bar(r, N) counts leaf-labelled rooted trees whose
internal vertices all have at least two children, where a vertex with c
children carries r^(c-1) admissible edge labelings (the edge toward the
smallest leaf is pinned).  With B = t + lambda_bar, grouping the root's
children gives the functional equation

    lambda_bar = (1/r) * (exp(r*B) - 1 - r*B),

solved degree by degree.  The same counts arise from weighted partitions:
trees with l leaves and k internal vertices biject with partitions of an
(l+k-1)-set into k blocks of size >= 2, a block of size i weighing r^(i-1);
partition_oracle recursion pins that down independently.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .arrangement import closed_subgroups
from .errors import (
    AbelianOnly,
    NonInvertibleConstantTerm,
    TruncationUnderflow,
)

ZERO = Fraction(0)
ONE = Fraction(1)


class MultiSeries:
    """Immutable-by-convention truncated series with exact coefficients."""

    __slots__ = ("vars", "trunc", "coeffs", "_s_index")

    def __init__(self, vars, trunc, coeffs=None):
        self.vars = tuple(vars)
        self.trunc = trunc
        self._s_index = self.vars.index("s") if "s" in self.vars else None
        cleaned = {}
        if coeffs:
            for exps, c in coeffs.items():
                c = Fraction(c)
                if c == 0:
                    continue
                if self.t_degree(exps) > trunc:
                    continue
                cleaned[tuple(exps)] = c
        self.coeffs = cleaned

    def t_degree(self, exps):
        if self._s_index is None:
            return sum(exps)
        return sum(e for i, e in enumerate(exps) if i != self._s_index)

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, vars, trunc, value=1):
        zero = tuple(0 for _ in vars)
        return cls(vars, trunc, {zero: Fraction(value)})

    @classmethod
    def monomial(cls, vars, trunc, var, power=1, coeff=1):
        exps = [0] * len(vars)
        exps[tuple(vars).index(var)] = power
        return cls(vars, trunc, {tuple(exps): Fraction(coeff)})

    # -- basics ---------------------------------------------------------------

    def _same(self, other):
        if self.vars != other.vars or self.trunc != other.trunc:
            raise ValueError("series contexts differ")

    def __eq__(self, other):
        return (
            isinstance(other, MultiSeries)
            and self.vars == other.vars
            and self.trunc == other.trunc
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.vars, self.trunc, tuple(sorted(self.coeffs.items()))))

    def coefficient(self, **named):
        exps = [0] * len(self.vars)
        for var, e in named.items():
            exps[self.vars.index(var)] = e
        return self.coeffs.get(tuple(exps), ZERO)

    def add(self, other):
        self._same(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, ZERO) + c
        return MultiSeries(self.vars, self.trunc, out)

    def sub(self, other):
        return self.add(other.scale(-1))

    def scale(self, value):
        value = Fraction(value)
        return MultiSeries(
            self.vars, self.trunc, {e: c * value for e, c in self.coeffs.items()}
        )

    def mul(self, other):
        self._same(other)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if self.t_degree(e) > self.trunc:
                    continue
                out[e] = out.get(e, ZERO) + c1 * c2
        return MultiSeries(self.vars, self.trunc, out)

    def pow(self, k):
        result = MultiSeries.constant(self.vars, self.trunc)
        base = self
        while k:
            if k & 1:
                result = result.mul(base)
            base = base.mul(base)
            k >>= 1
        return result

    def exp(self):
        """exp(A) for A with no term of t-degree zero."""
        if any(self.t_degree(e) == 0 for e in self.coeffs):
            raise NonInvertibleConstantTerm(
                "series exponential needs a vanishing t-degree-zero part"
            )
        result = MultiSeries.constant(self.vars, self.trunc)
        term = MultiSeries.constant(self.vars, self.trunc)
        for k in range(1, self.trunc + 1):
            term = term.mul(self).scale(Fraction(1, k))
            if not term.coeffs:
                break
            result = result.add(term)
        return result

    def inverse(self):
        """1/A when the t-degree-zero part is a nonzero constant."""
        zero_exp = tuple(0 for _ in self.vars)
        degree_zero = {e: c for e, c in self.coeffs.items() if self.t_degree(e) == 0}
        if set(degree_zero) - {zero_exp} or degree_zero.get(zero_exp, ZERO) == 0:
            raise NonInvertibleConstantTerm(
                "series inverse needs a nonzero rational constant term"
            )
        c = degree_zero[zero_exp]
        rest = MultiSeries(
            self.vars,
            self.trunc,
            {e: -v / c for e, v in self.coeffs.items() if e != zero_exp},
        )
        result = MultiSeries.constant(self.vars, self.trunc)
        term = MultiSeries.constant(self.vars, self.trunc)
        for _ in range(self.trunc):
            term = term.mul(rest)
            if not term.coeffs:
                break
            result = result.add(term)
        return result.scale(ONE / c)

    def derive(self, var):
        idx = self.vars.index(var)
        out = {}
        for e, c in self.coeffs.items():
            if e[idx] == 0:
                continue
            shifted = tuple(x - 1 if i == idx else x for i, x in enumerate(e))
            out[shifted] = out.get(shifted, ZERO) + c * e[idx]
        return MultiSeries(self.vars, self.trunc, out)

    def integrate(self, var):
        idx = self.vars.index(var)
        if any(self.t_degree(e) >= self.trunc for e in self.coeffs):
            raise TruncationUnderflow(
                "integration would push a term past the truncation bound"
            )
        out = {}
        for e, c in self.coeffs.items():
            shifted = tuple(x + 1 if i == idx else x for i, x in enumerate(e))
            out[shifted] = c / shifted[idx]
        return MultiSeries(self.vars, self.trunc, out)

    def eval_var(self, var, value):
        """Substitute a rational value for one variable."""
        idx = self.vars.index(var)
        value = Fraction(value)
        new_vars = tuple(v for v in self.vars if v != var)
        out = {}
        for e, c in self.coeffs.items():
            scaled = c * value ** e[idx]
            reduced = tuple(x for i, x in enumerate(e) if i != idx)
            out[reduced] = out.get(reduced, ZERO) + scaled
        return MultiSeries(new_vars, self.trunc, out)

    def merge_vars(self, sources, target):
        """Substitute target for every source variable (exponents add up)."""
        t_idx = self.vars.index(target)
        src = {self.vars.index(v) for v in sources}
        new_vars = tuple(v for i, v in enumerate(self.vars) if i not in src)
        out = {}
        for e, c in self.coeffs.items():
            moved = sum(x for i, x in enumerate(e) if i in src)
            base = [x for i, x in enumerate(e) if i not in src]
            base[new_vars.index(target)] += moved
            key = tuple(base)
            out[key] = out.get(key, ZERO) + c
        return MultiSeries(new_vars, self.trunc, out)

    def embed(self, vars):
        """View the series inside a larger variable context."""
        positions = [vars.index(v) for v in self.vars]
        out = {}
        for e, c in self.coeffs.items():
            exps = [0] * len(vars)
            for p, x in zip(positions, e):
                exps[p] = x
            out[tuple(exps)] = c
        return MultiSeries(vars, self.trunc, out)

    def terms(self):
        """Sorted (exponents, coefficient) pairs."""
        return sorted(self.coeffs.items())

    def __repr__(self):
        return f"MultiSeries(vars={self.vars}, trunc={self.trunc}, terms={len(self.coeffs)})"


# -- tree series --------------------------------------------------------------------


def lambda_bar(r, trunc):
    """EGF of leaf-labelled rooted trees with all arities >= 2 and edge
    weight r^(arity-1) per vertex, as a series in 't'."""
    t = MultiSeries.monomial(("t",), trunc, "t")
    lam = MultiSeries(("t",), trunc, {})
    for _ in range(trunc + 1):
        branches = t.add(lam)
        rb = branches.scale(r)
        correction = MultiSeries.constant(("t",), trunc).add(rb)
        nxt = rb.exp().sub(correction).scale(Fraction(1, r))
        if nxt == lam:
            break
        lam = nxt
    return lam


def partition_oracle(n, k, r, _memo={}):
    """Number of partitions of an n-set into k blocks of size >= 2, each
    block of size i weighted by r^(i-1)."""
    if n == 0 and k == 0:
        return 1
    if n <= 0 or k <= 0:
        return 0
    key = (n, k, r)
    got = _memo.get(key)
    if got is None:
        got = sum(
            comb(n - 1, j - 1) * r ** (j - 1) * partition_oracle(n - j, k - 1, r)
            for j in range(2, n + 1)
        )
        _memo[key] = got
    return got


def lambda_for_subgroup(inst, H, trunc):
    """Series counting trees whose internal vertices all carry the label H.

    For H != {e} unary vertices over a leaf slot are allowed, doubling every
    leaf's contribution and adding the bare root-over-leaf tree; for {e}
    they are forbidden and the arity->=2 series with r = |G| applies as is.
    """
    if not inst.group.is_abelian:
        raise AbelianOnly("tree series are only computed for abelian groups")
    order = inst.group.order
    if len(H) == order:
        raise AbelianOnly("no tree series is attached to the full group")
    if len(H) == 1:
        return lambda_bar(order, trunc)
    quotient = order // len(H)
    base = lambda_bar(quotient, trunc)
    doubled = {
        e: c * 2 ** e[0] for e, c in base.coeffs.items()
    }
    out = MultiSeries(("t",), trunc, doubled)
    return out.add(MultiSeries.monomial(("t",), trunc, "t"))


# -- the forest series -----------------------------------------------------------------


def series_variables(inst):
    """Variable tuple ('s', 't', one t-variable per proper closed subgroup)."""
    cs = closed_subgroups(inst)
    return ("s", "t") + tuple(f"t{K.label()}" for K in cs.proper)


def subgroup_variable(K):
    return f"t{K.label()}"


def _apply_exp_multiply(series, factor):
    """e^(factor) * series for a multiplication operator."""
    return series.mul(factor.exp())


def _apply_exp_derive(series, lam, var):
    """exp(lam * d/d var) applied to the series; lam must not involve var."""
    result = series
    term = series
    for m in range(1, series.trunc + 1):
        term = term.derive(var).mul(lam).scale(Fraction(1, m))
        if not term.coeffs:
            break
        result = result.add(term)
    return result


def admissible_order(inst):
    """Proper closed subgroups, every strict supergroup before its subgroups."""
    cs = closed_subgroups(inst)
    return tuple(sorted(cs.proper, key=lambda K: (-len(K), K.elements)))


def gamma_tilde(inst, trunc, order=None):
    """Forest series over proper closed subgroups: no fallen leaves, no
    full-group vertices.

    Built by applying, for each H (largest labels first), the commuting
    operator exponential of  lam_H(t_H) * (s + sum over K strictly above H
    of d/dt_K); the derivative summands graft an H-rooted subtree onto a
    leaf slot of a K-tree.
    """
    if not inst.group.is_abelian:
        raise AbelianOnly("the forest series requires an abelian group")
    cs = closed_subgroups(inst)
    proper = cs.proper
    if order is None:
        order = admissible_order(inst)
    else:
        order = tuple(order)
        seen = set()
        for H in order:
            for K in proper:
                if (
                    H.is_subset(K)
                    and K.elements != H.elements
                    and K.elements not in seen
                ):
                    raise ValueError(
                        "processing order must place every supergroup first"
                    )
            seen.add(H.elements)
        if {H.elements for H in order} != {K.elements for K in proper}:
            raise ValueError("processing order must cover the proper closed subgroups")
    vars = series_variables(inst)
    acc = MultiSeries.constant(vars, trunc)
    s_var = MultiSeries.monomial(vars, trunc, "s")
    for H in order:
        lam = lambda_for_subgroup(inst, H, trunc)
        lam_embedded = MultiSeries(
            vars,
            trunc,
            {
                _single_exp(vars, subgroup_variable(H), e[0]): c
                for e, c in lam.coeffs.items()
            },
        )
        acc = _apply_exp_multiply(acc, s_var.mul(lam_embedded))
        for K in proper:
            if H.is_subset(K) and K.elements != H.elements:
                acc = _apply_exp_derive(acc, lam_embedded, subgroup_variable(K))
    return acc


def _single_exp(vars, var, power):
    exps = [0] * len(vars)
    exps[vars.index(var)] = power
    return tuple(exps)


def gamma_bar(inst, trunc, order=None):
    """Fallen leaves allowed: e^(s t) times (gamma_tilde - 1)."""
    tilde = gamma_tilde(inst, trunc, order=order)
    vars = tilde.vars
    st = MultiSeries.monomial(vars, trunc, "s").mul(
        MultiSeries.monomial(vars, trunc, "t")
    )
    one = MultiSeries.constant(vars, trunc)
    return st.exp().mul(tilde.sub(one))


def big_g(inst, trunc):
    """The full counting series in (s, t).

    Gamma(s,t) collapses every t_H to t and allows fallen leaves; the trees
    holding full-group vertices are counted by Phi(t) = 1/(2 - Gamma(1,t)) - 1
    (a chain of full-group vertices with arbitrary hanging forests), and a
    forest has at most one such tree.
    """
    tilde = gamma_tilde(inst, trunc)
    t_vars = [v for v in tilde.vars if v not in ("s", "t")]
    tilde_t = tilde.merge_vars(t_vars, "t")
    vars = tilde_t.vars
    one = MultiSeries.constant(vars, trunc)
    st = MultiSeries.monomial(vars, trunc, "s").mul(
        MultiSeries.monomial(vars, trunc, "t")
    )
    gamma_st = st.exp().mul(tilde_t)
    gamma_1t = gamma_st.eval_var("s", 1).embed(vars)
    two = MultiSeries.constant(vars, trunc, 2)
    phi = two.sub(gamma_1t).inverse().sub(one)
    bar_t = st.exp().mul(tilde_t.sub(one))
    s_var = MultiSeries.monomial(vars, trunc, "s")
    return s_var.mul(phi).mul(gamma_st).add(bar_t)


def nested_count_via_series(inst, n):
    """n! times the t^n coefficient of the counting series at s = 1."""
    series = big_g(inst, n).eval_var("s", 1)
    coeff = series.coefficient(t=n)
    value = coeff * factorial(n)
    if value.denominator != 1:
        raise ValueError(f"count came out non-integer: {value}")
    return int(value)


def series_to_json(series):
    """Stable JSON form: one record per term, coefficients as exact strings."""
    var_list = list(series.vars)
    terms = []
    for exps, coeff in series.terms():
        entry = {"s": 0, "t": 0, "tH": {}}
        for var, e in zip(var_list, exps):
            if e == 0:
                continue
            if var == "s":
                entry["s"] = e
            elif var == "t":
                entry["t"] = e
            else:
                entry["tH"][var[1:]] = e
        entry["coeff"] = str(coeff)
        terms.append(entry)
    return {"truncation": series.trunc, "terms": terms}
