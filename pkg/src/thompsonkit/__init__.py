"""Tree pair diagrams, element orders and related tools for Thompson's groups.

The order of an element is ``thompsonkit.order.order(g)``; the submodule
keeps its name so that it is not shadowed by the function.
"""

from .core import (TreePair, TreePairError, classify, compose, from_text, identity, inverse,
                   parse_element, power, reduce, to_text)
from .order import Finite, Infinite, Unknown, is_torsion, order_oracle
from .rotation import NotInT, RationalMod1, rotation_number

__version__ = "0.1.0"

__all__ = [
    "TreePair", "TreePairError", "classify", "compose", "from_text", "identity", "inverse",
    "parse_element", "power", "reduce", "to_text",
    "Finite", "Infinite", "Unknown", "is_torsion", "order_oracle",
    "NotInT", "RationalMod1", "rotation_number",
]
