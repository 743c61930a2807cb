"""Sparse multivariate polynomials with rational coefficients.

Terms live in a dict mapping exponent tuples (aligned with ``variables``)
to nonzero Fractions. Variables are kept sorted by name with numeric
suffixes compared as integers, so ``α_10`` follows ``α_9``.
"""

import re
from fractions import Fraction

from .errors import ParseError, VariableMismatch
from .scalar import ONE, ZERO, as_scalar, format_scalar

__all__ = ["MultiPoly", "variable_sort_key"]


def variable_sort_key(name):
    m = re.match(r"^(.*?)(\d+)$", name)
    if m:
        return (m.group(1), int(m.group(2)), "")
    return (name, -1, name)


class MultiPoly:
    __slots__ = ("variables", "terms")

    def __init__(self, variables=(), terms=None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise VariableMismatch("repeated variable name")
        order = sorted(variables, key=variable_sort_key)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(variables):
                raise VariableMismatch("exponent vector length does not match variables")
            c = as_scalar(c)
            if not isinstance(c, Fraction):
                raise TypeError("MultiPoly coefficients must be rational")
            if c:
                clean[exps] = clean.get(exps, ZERO) + c
        if order != list(variables):
            perm = [variables.index(v) for v in order]
            clean = {tuple(e[i] for i in perm): c for e, c in clean.items()}
            variables = tuple(order)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def constant(cls, c, variables=()):
        c = as_scalar(c)
        return cls(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def variable(cls, name):
        return cls((name,), {(1,): ONE})

    # -- structure -------------------------------------------------------

    def extend(self, variables):
        """Same polynomial over a superset of variables."""
        variables = tuple(sorted(set(variables) | set(self.variables), key=variable_sort_key))
        if variables == self.variables:
            return self
        idx = [variables.index(v) for v in self.variables]
        terms = {}
        for e, c in self.terms.items():
            full = [0] * len(variables)
            for i, k in zip(idx, e):
                full[i] = k
            terms[tuple(full)] = c
        out = object.__new__(MultiPoly)
        object.__setattr__(out, "variables", variables)
        object.__setattr__(out, "terms", terms)
        return out

    def _aligned(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other)
        union = set(self.variables) | set(other.variables)
        return self.extend(union), other.extend(union)

    def is_zero(self):
        return not self.terms

    def coefficient(self, monomial):
        """Coefficient of a monomial given as ``{name: exponent}``."""
        unknown = set(monomial) - set(self.variables)
        if any(monomial[v] for v in unknown):
            return ZERO
        e = tuple(monomial.get(v, 0) for v in self.variables)
        return self.terms.get(e, ZERO)

    def sorted_terms(self):
        """Terms in canonical order: exponent vectors lexicographically descending."""
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        a, b = self._aligned(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e, ZERO) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly(a.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, MultiPoly) else -as_scalar(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = as_scalar(c)
        return MultiPoly(self.variables, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        a, b = self._aligned(other)
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, ZERO) + c1 * c2
        return MultiPoly(a.variables, terms)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = MultiPoly.constant(ONE, self.variables)
        for _ in range(k):
            result = result * self
        return result

    def substitute(self, assignment):
        """Evaluate at a full assignment ``{name: scalar}``."""
        missing = [v for v in self.variables if v not in assignment]
        if missing:
            raise VariableMismatch(f"no value for {', '.join(missing)}")
        extra = [v for v in assignment if v not in self.variables]
        if extra:
            raise VariableMismatch(f"unknown variable(s) {', '.join(sorted(extra))}")
        values = [as_scalar(assignment[v]) for v in self.variables]
        total = ZERO
        for e, c in self.terms.items():
            term = c
            for x, k in zip(values, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def weighted_degrees(self, weights):
        """Set of weighted total degrees, ``weights`` maps name -> weight."""
        w = [weights[v] for v in self.variables]
        return {sum(a * b for a, b in zip(w, e)) for e in self.terms}

    # -- equality & text -------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.constant(other)
            except TypeError:
                return NotImplemented
        a, b = self._aligned(other)
        return a.terms == b.terms

    def __hash__(self):
        used = self.trimmed()
        return hash((used.variables, frozenset(used.terms.items())))

    def trimmed(self):
        """Drop variables that appear in no term."""
        used = [i for i in range(len(self.variables)) if any(e[i] for e in self.terms)]
        if len(used) == len(self.variables):
            return self
        return MultiPoly([self.variables[i] for i in used],
                         {tuple(e[i] for i in used): c for e, c in self.terms.items()})

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r})"

    def to_text(self):
        """Canonical form, e.g. ``α_2^2 + 1/2 * α_3``."""
        if not self.terms:
            return "0"
        parts = []
        for idx, (e, c) in enumerate(self.sorted_terms()):
            factors = []
            for v, k in zip(self.variables, e):
                if k == 1:
                    factors.append(v)
                elif k:
                    factors.append(f"{v}^{k}")
            neg = c < 0
            mag = -c if neg else c
            if not factors:
                body = format_scalar(mag)
            elif mag == 1:
                body = " * ".join(factors)
            else:
                body = " * ".join([format_scalar(mag)] + factors)
            if idx == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    @classmethod
    def parse(cls, text):
        """Inverse of :meth:`to_text` (rational coefficients only)."""
        src = text.strip()
        if src == "0":
            return cls()
        chunks = re.split(r"\s+([+-])\s+", src)
        signs = ["+"] + chunks[1::2]
        bodies = chunks[0::2]
        parsed = []
        names = set()
        for sign, body in zip(signs, bodies):
            neg = sign == "-"
            if body.startswith("-"):
                neg = not neg
                body = body[1:]
            coef = ONE
            powers = {}
            for f in (p.strip() for p in body.split("*")):
                if not f:
                    raise ParseError(f"empty factor in {text!r}")
                if re.fullmatch(r"\d+(/\d+)?", f):
                    coef *= Fraction(f)
                    continue
                m = re.fullmatch(r"([^\s^*]+)(?:\^(\d+))?", f)
                if m is None:
                    raise ParseError(f"bad factor {f!r}")
                name = m.group(1)
                powers[name] = powers.get(name, 0) + int(m.group(2) or 1)
                names.add(name)
            parsed.append((-coef if neg else coef, powers))
        variables = sorted(names, key=variable_sort_key)
        terms = {}
        for c, powers in parsed:
            e = tuple(powers.get(v, 0) for v in variables)
            terms[e] = terms.get(e, ZERO) + c
        return cls(variables, terms)
