"""Gallai colouring templates: rainbow-triangle detection, extremal constructions and search."""

from .template import (
    ColouringTemplate,
    DegreeProfile,
    Graph,
    RainbowWitness,
    TemplateError,
    count_rainbow_triangles,
    degree_profile,
    empty_template,
    find_rainbow_triangle,
    find_rainbow_triangle_naive,
    intersection_graph,
    is_gallai,
    relabel,
    set_pair,
)

__version__ = "0.1.0"
