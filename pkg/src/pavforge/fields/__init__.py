"""Fields, elements, places, and embeddings.

The public surface used by the rest of the package:

* descriptors: ``QQ``, ``Rationals``, ``NumberField``, ``FunctionField``
* elements: ``Fraction`` (over Q), ``NFElt``, ``FFElt``
* embeddings: ``Embedding``, ``embed_interval``, ``abs_value_at``
* places: ``PrimePlace``, ``PrimeIdealPlace``, ``FinitePlace``,
  ``InfinitePlace``, ``decompose_prime``, ``ORD_INF``
* text forms: ``parse_field``, ``parse_element``, ``parse_place``,
  ``element_text``, ``place_text``
"""

from .descriptors import (
    DEGREE_CAP,
    Embedding,
    FFElt,
    FunctionField,
    NFElt,
    NumberField,
    QQ,
    Rationals,
    abs_sq_exact,
    abs_value_at,
    default_precision_bits,
    embed_interval,
)
from .parser import (
    element_text,
    field_text,
    parse_element,
    parse_field,
    parse_place,
    place_text,
)
from .places import (
    FinitePlace,
    InfinitePlace,
    ORD_INF,
    PrimeIdealPlace,
    PrimePlace,
    decompose_prime,
    dedekind_p_maximal,
    ord_at,
    residue_at,
)

__all__ = [
    "DEGREE_CAP",
    "Embedding",
    "FFElt",
    "FinitePlace",
    "FunctionField",
    "InfinitePlace",
    "NFElt",
    "NumberField",
    "ORD_INF",
    "PrimeIdealPlace",
    "PrimePlace",
    "QQ",
    "Rationals",
    "abs_sq_exact",
    "abs_value_at",
    "decompose_prime",
    "dedekind_p_maximal",
    "default_precision_bits",
    "element_text",
    "embed_interval",
    "field_text",
    "ord_at",
    "parse_element",
    "parse_field",
    "parse_place",
    "place_text",
    "residue_at",
]
