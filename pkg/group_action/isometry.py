"""
Isometries
Combinatorial self-isometries of a model and their action on points,
divisors, subgraphs and rational functions
"""

from dataclasses import dataclass

from divisors_functions.functions import precompose
from metric_graph.graph import PointRef
from metric_graph.topology import Subgraph
from troplin.exceptions import InvalidIsometryError


@dataclass(frozen=True)
class Isometry:
    """
    A bijection on the vertices and edges of a working model. edge_map holds
    (edge, image, reversed) triples; reversed edges run head to tail.
    """
    vertex_map: tuple
    edge_map: tuple

    @classmethod
    def from_maps(cls, vertex_map, edge_map):
        """vertex_map: {v: v'}; edge_map: {e: (e', reversed)}."""
        return cls(
            tuple(sorted(vertex_map.items())),
            tuple(sorted((e, image, bool(rev)) for e, (image, rev) in edge_map.items())),
        )

    @classmethod
    def identity(cls, model):
        return cls.from_maps(
            {v: v for v in model.vertex_ids},
            {e.id: (e.id, False) for e in model.edges},
        )

    @property
    def vertices(self):
        return dict(self.vertex_map)

    @property
    def edges(self):
        return {e: (image, rev) for e, image, rev in self.edge_map}

    def vertex(self, vertex_id):
        return self.vertices[vertex_id]

    def edge(self, edge_id):
        return self.edges[edge_id]

    def validate(self, model):
        vertices, edges = self.vertices, self.edges
        if set(vertices) != set(model.vertex_ids) or set(vertices.values()) != set(model.vertex_ids):
            raise InvalidIsometryError('the vertex map is not a bijection on the model vertices')
        edge_ids = {e.id for e in model.edges}
        if set(edges) != edge_ids or {image for image, _ in edges.values()} != edge_ids:
            raise InvalidIsometryError('the edge map is not a bijection on the model edges')
        for vertex in model.vertices:
            if model.vertex(vertices[vertex.id]).at_infinity != vertex.at_infinity:
                raise InvalidIsometryError(f'vertex {vertex.id} changes finiteness')
        for edge in model.edges:
            image_id, reversed_ = edges[edge.id]
            image = model.edge(image_id)
            if image.length != edge.length:
                raise InvalidIsometryError(f'edge {edge.id} and its image {image_id} differ in length')
            ends = (image.head, image.tail) if reversed_ else (image.tail, image.head)
            if (vertices[edge.tail], vertices[edge.head]) != ends:
                raise InvalidIsometryError(
                    f'the ends of {edge.id} do not map to the ends of {image_id}'
                )
        return self

    def compose(self, other):
        """self ∘ other: apply other first."""
        vertices, edges = self.vertices, self.edges
        return Isometry.from_maps(
            {v: vertices[image] for v, image in other.vertex_map},
            {
                e: (edges[image][0], rev != edges[image][1])
                for e, image, rev in other.edge_map
            },
        )

    def inverse(self):
        return Isometry.from_maps(
            {image: v for v, image in self.vertex_map},
            {image: (e, rev) for e, image, rev in self.edge_map},
        )

    @property
    def is_identity(self):
        return all(v == image for v, image in self.vertex_map) and all(
            e == image and not rev for e, image, rev in self.edge_map
        )

    def apply_point(self, model, point):
        point = model.normalize(point)
        if point.is_vertex:
            return PointRef.at_vertex(self.vertex(point.vertex))
        image, reversed_ = self.edge(point.edge)
        offset = model.edge(image).length - point.offset if reversed_ else point.offset
        return model.point(image, offset)

    def apply_divisor(self, divisor):
        model = divisor.model
        return divisor.mapped(lambda p: self.apply_point(model, p), model)

    def apply_subgraph(self, subgraph):
        model = subgraph.model
        intervals = set()
        for edge_id, start, end in subgraph.intervals:
            image, reversed_ = self.edge(edge_id)
            if reversed_:
                length = model.edge(image).length
                start, end = length - end, length - start
            intervals.add((image, start, end))
        return Subgraph(
            model,
            frozenset(self.edge(e)[0] for e in subgraph.edges),
            frozenset(self.vertex(v) for v in subgraph.vertices),
            frozenset(intervals),
        )

    def precompose(self, f):
        """f ∘ σ."""
        if f.neg_infinity:
            return f
        model = f.model
        return precompose(f, lambda p: self.apply_point(model, p), self.edge, model)

    def apply_function(self, f):
        """The image σ·f = f ∘ σ⁻¹, so that (σ·f)(σx) = f(x)."""
        return self.inverse().precompose(f)

    def __repr__(self):
        moved = [f'{v}->{image}' for v, image in self.vertex_map if v != image]
        flipped = [f'{e}->{image}{"~" if rev else ""}' for e, image, rev in self.edge_map if e != image or rev]
        return f'Isometry({", ".join(moved + flipped) or "id"})'
