"""
Group fixtures shared by the test suites
"""

from metric_graph.testing import circle, curve, line, segment
from .group import close_group
from .isometry import Isometry


def reflection():
    """x -> -x on circle(): fixes p and q, swaps the two arcs."""
    return Isometry.from_maps({'p': 'p', 'q': 'q'}, {'e1': ('e2', True), 'e2': ('e1', True)})


def rotation():
    """x -> x + 1 on circle()."""
    return Isometry.from_maps({'p': 'q', 'q': 'p'}, {'e1': ('e2', False), 'e2': ('e1', False)})


def reflection_group():
    return close_group(circle(), [reflection()])


def rotation_group():
    return close_group(circle(), [rotation()])


def cherry():
    """A stem s from a to o and two twigs t1, t2 from o to b1, b2."""
    return curve(
        ['a', 'o', 'b1', 'b2'],
        [('s', 'a', 'o', 1), ('t1', 'o', 'b1', 1), ('t2', 'o', 'b2', 1)],
    )


def cherry_group():
    swap = Isometry.from_maps(
        {'a': 'a', 'o': 'o', 'b1': 'b2', 'b2': 'b1'},
        {'s': ('s', False), 't1': ('t2', False), 't2': ('t1', False)},
    )
    return close_group(cherry(), [swap])


def line_flip_group():
    flip = Isometry.from_maps(
        {'o': 'o', 'w': 'm', 'm': 'w'},
        {'left': ('right', False), 'right': ('left', False)},
    )
    return close_group(line(), [flip])


def segment_flip_group(length=2):
    """x -> length - x on segment(length)."""
    flip = Isometry.from_maps({'a': 'b', 'b': 'a'}, {'e': ('e', True)})
    return close_group(segment(length), [flip])
