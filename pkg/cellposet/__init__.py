"""The base module namespace imports the most frequently used objects to simplify imports in clients:

.. code-block:: python

    from cellposet import parse_ideal, minimal_resolution, run_main_theorem

"""
from .monoid import MonomialIdeal, Multidegree, parse_ideal, render_ideal  # noqa
from .rescomplex import (
    BettiTable,
    GradedFreeComplex,
    betti_oracle,
    betti_table,
    minimal_resolution,
    taylor_complex,
)  # noqa
from .cwposet import (
    BasedBasis,
    CWChainData,
    LabeledPoset,
    check_supports_cw,
    face_poset,
    find_minimal_support_basis,
    scarf_cw,
    simplicial_cw,
    taylor_cw,
)  # noqa
from .pipeline import Certificate, run_main_theorem  # noqa
