"""
Divisors
Finite integer combinations of points of a curve
"""

from collections import defaultdict
from dataclasses import dataclass

from troplin.exceptions import InvalidModelError


@dataclass(frozen=True)
class Divisor:
    model: object
    terms: tuple = ()

    @classmethod
    def from_terms(cls, model, pairs):
        totals = defaultdict(int)
        for point, coefficient in pairs:
            totals[model.normalize(point)] += int(coefficient)
        return cls(model, tuple(sorted((p, c) for p, c in totals.items() if c)))

    @classmethod
    def zero(cls, model):
        return cls(model)

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, point):
        point = self.model.normalize(point)
        for candidate, coefficient in self.terms:
            if candidate == point:
                return coefficient
        return 0

    @property
    def degree(self):
        return sum(c for _, c in self.terms)

    @property
    def is_effective(self):
        return all(c >= 0 for _, c in self.terms)

    @property
    def support(self):
        return [p for p, _ in self.terms]

    def _check(self, other):
        if other.model != self.model:
            raise InvalidModelError('divisors live on different models', code='model_mismatch')

    def __add__(self, other):
        self._check(other)
        return Divisor.from_terms(self.model, self.terms + other.terms)

    def __neg__(self):
        return Divisor(self.model, tuple((p, -c) for p, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, factor):
        return Divisor.from_terms(self.model, [(p, c * factor) for p, c in self.terms])

    def mapped(self, point_map, model):
        """The push-forward of this divisor along a point map into model."""
        return Divisor.from_terms(model, [(point_map(p), c) for p, c in self.terms])

    def __repr__(self):
        if not self.terms:
            return 'Divisor(0)'
        return 'Divisor(' + ' + '.join(f'{c}{p!r}' for p, c in self.terms) + ')'
