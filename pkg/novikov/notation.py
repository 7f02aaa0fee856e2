"""
Text form of Novikov series.

A series is written as a sum of monomials ``coeff*t^a*u^b*s^j`` followed
by an optional ``O(R)`` suffix, e.g. ``"1 - t + 2*t^2*s + O(8)"``.
Coefficients are rationals or parenthesised cyclotomic numbers such as
``(1 - z)``. Exponents may be negative (``t^-1`` or ``t^(-1)``); the
full free exponent vector may also be given at once as ``t^(1,0)``.
"""

import re
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

from novikov.cyclotomic import ROOT_NAME, CyclotomicNumber, FieldError
from novikov.errors import GroupError, ScenarioError
from novikov.grading import Grade, Truncation, render_truncation
from novikov.group import TORSION_NAME, GradedGroup, GroupElement

Terms = Iterable[Tuple[GroupElement, CyclotomicNumber]]

_O_RE = re.compile(r'^O\((?P<r>[^()]+)\)$')
_POW_RE = re.compile(r'^(?P<name>[A-Za-z]\w*)(?:\^(?P<exp>\(?[+-]?\d+(?:,[+-]?\d+)*\)?))?$')


def render_coefficient(c: CyclotomicNumber) -> str:
    """Render a coefficient, parenthesising non-rational values."""
    text = str(c)
    return text if c.is_rational else f'({text})'


def render_monomial(h: GroupElement) -> str:
    return str(h)


def render_terms(terms: Terms, truncation: Truncation) -> str:
    """
    Render sorted terms and a truncation bound.

    Args:
        terms (Terms): ``(monomial, coefficient)`` pairs in term order.
        truncation (Truncation): The bound, ``None`` for exact values.

    Returns:
        str: The canonical text form.
    """
    out = ''
    for h, c in terms:
        negative = c.is_rational and c.rational < 0
        mag = -c if negative else c
        mono = '' if h.is_identity else render_monomial(h)
        if not mono:
            body = render_coefficient(mag)
        elif mag.is_one:
            body = mono
        else:
            body = f'{render_coefficient(mag)}*{mono}'
        if not out:
            out = ('-' if negative else '') + body
        else:
            out += (' - ' if negative else ' + ') + body
    out = out or '0'
    if truncation is not None:
        out += f' + O({render_truncation(truncation)})'
    return out


def _split_terms(text: str) -> List[Tuple[str, str]]:
    """Split at top-level ``+``/``-`` that are not exponent signs."""
    parts: List[Tuple[str, str]] = []
    depth, sign, buf = 0, '+', ''
    for i, ch in enumerate(text):
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
            if depth < 0:
                raise ScenarioError(f'Unbalanced parentheses in "{text}"')
        if ch in '+-' and depth == 0 and (i == 0 or text[i - 1] != '^'):
            if buf:
                parts.append((sign, buf))
                buf = ''
            elif i:
                raise ScenarioError(f'Doubled sign in "{text}"')
            sign = ch
            continue
        buf += ch
    if depth:
        raise ScenarioError(f'Unbalanced parentheses in "{text}"')
    if not buf:
        raise ScenarioError(f'Dangling sign in "{text}"')
    parts.append((sign, buf))
    return parts


def _split_factors(term: str) -> List[str]:
    factors, depth, buf = [], 0, ''
    for ch in term:
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
        if ch == '*' and depth == 0:
            factors.append(buf)
            buf = ''
            continue
        buf += ch
    factors.append(buf)
    if any(not f for f in factors):
        raise ScenarioError(f'Empty factor in "{term}"')
    return factors


def parse_terms(text: str, group: GradedGroup, order: int = 1) -> Tuple[Dict[GroupElement, CyclotomicNumber], Truncation]:
    """
    Parse a series string against a group.

    Args:
        text (str): The text form.
        group (GradedGroup): The group the monomials live in.
        order (int, optional): The coefficient field ``Q(zeta_order)``. Defaults to 1.

    Raises:
        ScenarioError: On any syntax error or a monomial foreign to the group.

    Returns:
        Tuple[Dict[GroupElement, CyclotomicNumber], Truncation]: The terms
            (not yet sorted or reduced) and the truncation bound.
    """
    s = str(text).replace(' ', '')
    if not s:
        raise ScenarioError('Empty series string')
    names = {name: i for i, name in enumerate(group.names)}
    terms: Dict[GroupElement, CyclotomicNumber] = {}
    truncation: Truncation = None
    for sign, body in _split_terms(s):
        m = _O_RE.match(body)
        if m:
            if sign == '-' or truncation is not None:
                raise ScenarioError(f'Misplaced O(...) in "{text}"')
            try:
                truncation = Grade.parse(m.group('r'))
            except GroupError as e:
                raise ScenarioError(str(e)) from e
            continue
        if truncation is not None:
            raise ScenarioError(f'Terms after O(...) in "{text}"')
        coeff = CyclotomicNumber.of(order, -1 if sign == '-' else 1)
        free = [0] * group.free_rank
        torsion = 0
        for factor in _split_factors(body):
            try:
                if factor.startswith('('):
                    if not factor.endswith(')'):
                        raise ScenarioError(f'Malformed coefficient "{factor}" in "{text}"')
                    coeff = coeff * CyclotomicNumber.parse(order, factor)
                    continue
                if re.fullmatch(r'\d+(/\d+)?', factor):
                    coeff = coeff * Fraction(factor)
                    continue
            except (FieldError, ZeroDivisionError) as e:
                raise ScenarioError(f'Bad coefficient in "{text}": {e}') from e
            pm = _POW_RE.match(factor)
            if pm is None:
                raise ScenarioError(f'Cannot parse factor "{factor}" in "{text}"')
            name, raw = pm.group('name'), (pm.group('exp') or '1').strip('()')
            exps = [int(e) for e in raw.split(',')]
            if name == ROOT_NAME and len(exps) == 1:
                if exps[0] < 0:
                    raise ScenarioError(f'Negative power of {ROOT_NAME} in "{text}"')
                coeff = coeff * CyclotomicNumber.root(order, exps[0])
            elif name == TORSION_NAME and len(exps) == 1:
                if not group.torsion_order:
                    raise ScenarioError(f'Torsion generator used in torsion-free group: "{text}"')
                torsion += exps[0]
            elif name in names and len(exps) == 1:
                free[names[name]] += exps[0]
            elif group.names and name == group.names[0]:
                if len(exps) != group.free_rank:
                    raise ScenarioError(f'Exponent vector {raw} does not match rank {group.free_rank}')
                free = [a + b for a, b in zip(free, exps)]
            else:
                raise ScenarioError(f'Unknown generator "{name}" in "{text}"')
        h = group.element(tuple(free), torsion)
        terms[h] = terms[h] + coeff if h in terms else coeff
    return terms, truncation
