"""
Linear System Context
A curve, a divisor and a finite group, read on the invariant model G1
"""

import logging
from dataclasses import dataclass

from divisors_functions.functions import principal_divisor, transport
from group_action.group import close_group
from quotient_morphism.construction import build_quotient
from troplin.exceptions import InvalidModelError, MembershipError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinSysContext:
    """
    D lives on the curve the group acts on; every computation happens on the
    invariant model G1 (the base), where K acts and φ: G1 -> G' is defined.
    """
    divisor: object
    group: object
    quotient: object
    base_divisor: object

    @property
    def curve(self):
        return self.group.model

    @property
    def base(self):
        return self.quotient.invariant_model

    @property
    def action(self):
        return self.quotient.structure.action

    @property
    def phi(self):
        return self.quotient.morphism

    @property
    def chart(self):
        return self.quotient.structure.chart

    @property
    def degree(self):
        return self.divisor.degree

    @property
    def order(self):
        return self.group.order

    def on_base(self, f):
        if f.model == self.base:
            return f
        if f.model == self.curve:
            return transport(f, self.chart, self.base)
        raise InvalidModelError('the function lives on another curve', code='model_mismatch')

    def on_curve(self, f):
        if f.model == self.curve:
            return f
        return transport(f, self.chart.inverse(), self.curve)

    def divisor_on_curve(self, divisor):
        if divisor.model == self.curve:
            return divisor
        return divisor.mapped(self.chart.inverse(), self.curve)


def make_context(divisor, group=None):
    """Context for R(D) (group None or trivial) or R(D)^K."""
    if group is None:
        group = close_group(divisor.model)
    elif group.model != divisor.model:
        raise InvalidModelError('the divisor and the group live on different models', code='model_mismatch')
    quotient = build_quotient(group)
    base_divisor = divisor.mapped(quotient.structure.chart, quotient.invariant_model)
    logger.debug('context of degree %d over a group of order %d', divisor.degree, group.order)
    return LinSysContext(divisor, group, quotient, base_divisor)


def translate_context(ctx, h):
    """The context of D + div(h) for a K-invariant h, so that R(D + div h)^K = R(D)^K ⊙ (-h)."""
    if not ctx.action.is_invariant_function(ctx.on_base(h)):
        raise MembershipError('the translating function must be invariant')
    h = ctx.on_curve(h)
    return make_context(ctx.divisor + principal_divisor(h), ctx.group)
