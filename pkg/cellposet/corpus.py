"""The bundled example set run by ``cellposet corpus``.

Every entry resolves its ideal, compares the Betti numbers with the simplicial-homology oracle and checks
exactness and minimality.  Entries that carry CW data also run the full transformation.
"""

import logging
from collections import namedtuple

from .cwposet import Cell, CWChainData, scarf_cw, simplicial_cw, taylor_cw
from .exactlin import IntMatrix
from .monoid import parse_ideal, render_ideal
from .pipeline import run_main_theorem
from .rescomplex import betti_oracle, betti_table, is_complex, is_exact, is_minimal, minimal_resolution

log = logging.getLogger(__name__)

CorpusEntry = namedtuple("CorpusEntry", ["name", "ideal", "variables", "p", "cw"])
CorpusResult = namedtuple(
    "CorpusResult",
    ["name", "ideal", "p", "resolution", "betti", "oracle_agrees", "exact", "minimal", "certificate"],
)

SCARF_EXAMPLE = "x*y^2, y*z^2, z*w^2, w*x^2"
XYZW = ["x", "y", "z", "w"]


def path_cw(*edges):
    """CW data of a graph on the generators, for resolutions of length one"""
    return lambda ideal: simplicial_cw(edges, ideal.generators)


def doubled_edge_cw(ideal):
    """An edge whose boundary is twice the usual one; it only matches an edge modulo 3"""
    a, b = ideal.generators
    return CWChainData(
        [[Cell("0", a), Cell("1", b)], [Cell("0,1", [max(u, v) for u, v in zip(a, b)])]],
        [IntMatrix([[2], [-2]])],
    )


def loop_edge_cw(ideal):
    """A single vertex with an edge attached at both ends, so the edge has a zero boundary column"""
    (a,) = ideal.generators
    return CWChainData([[Cell("0", a)], [Cell("loop", a)]], [IntMatrix([[0]])])


ENTRIES = (
    CorpusEntry("principal", "x", ["x"], 2, taylor_cw),
    CorpusEntry("koszul-2", "x, y", ["x", "y"], 2, taylor_cw),
    CorpusEntry("koszul-3-mod2", "x, y, z", ["x", "y", "z"], 2, taylor_cw),
    CorpusEntry("koszul-3-mod3", "x, y, z", ["x", "y", "z"], 3, taylor_cw),
    CorpusEntry("koszul-4", "x, y, z, w", XYZW, 2, taylor_cw),
    CorpusEntry("squares-2", "x^2, y^2", ["x", "y"], 5, taylor_cw),
    CorpusEntry("squares-3", "x^2, y^2, z^2", ["x", "y", "z"], 5, taylor_cw),
    CorpusEntry("edges-mod2", "x*y, y*z, x*z", ["x", "y", "z"], 2, path_cw((0, 2), (1, 2))),
    CorpusEntry("edges-mod3", "x*y, y*z, x*z", ["x", "y", "z"], 3, path_cw((0, 2), (1, 2))),
    CorpusEntry("edges-mod5", "x*y, y*z, x*z", ["x", "y", "z"], 5, None),
    CorpusEntry("edges-full-triangle", "x*y, y*z, x*z", ["x", "y", "z"], 2, taylor_cw),
    CorpusEntry("power-path", "x^2, x*y, y^2", ["x", "y"], 2, path_cw((0, 1), (1, 2))),
    CorpusEntry("disjoint-pairs", "x*y, z*w", XYZW, 3, taylor_cw),
    CorpusEntry("binomial-pair", "x^2*y, x*y^2", ["x", "y"], 2, taylor_cw),
    CorpusEntry("scarf-mod2", SCARF_EXAMPLE, XYZW, 2, scarf_cw),
    CorpusEntry("scarf-mod3", SCARF_EXAMPLE, XYZW, 3, scarf_cw),
    CorpusEntry("doubled-edge", "x, y", ["x", "y"], 3, doubled_edge_cw),
    CorpusEntry("loop-edge", "x", ["x"], 2, loop_edge_cw),
    CorpusEntry("four-cycle", "x*y, y*z, z*w, w*x", XYZW, 2, None),
    CorpusEntry("squares-and-cube", "x^2, y^2, x*y*z", ["x", "y", "z"], 3, None),
    CorpusEntry("squarefree-cubics", "x*y*z, x*y*w, x*z*w, y*z*w", XYZW, 2, None),
    CorpusEntry("cubic-powers", "x^3, x^2*y, x*y^2, y^3", ["x", "y"], 5, None),
    CorpusEntry("mixed", "x, y^2, y*z, z^2", ["x", "y", "z"], 3, None),
    CorpusEntry("five-edges", "x*y, x*z, y*z, x*w, y*w", XYZW, 2, None),
    CorpusEntry("squares-and-top", "x^2, y^2, z^2, w^2, x*y*z*w", XYZW, 3, None),
    CorpusEntry("cyclic", "x^2*y, y^2*z, z^2*x", ["x", "y", "z"], 2, None),
)


def run_entry(entry, stage2=False, bound=None):
    """Run one corpus entry and return its :class:`CorpusResult`"""
    ideal = parse_ideal(entry.ideal, entry.variables)
    resolution = minimal_resolution(ideal, entry.p)
    table = betti_table(resolution)
    oracle = betti_oracle(ideal, entry.p)
    if table != oracle:
        log.warning("Betti numbers of %s disagree with the oracle", entry.name)

    certificate = None
    if entry.cw is not None:
        kwargs = {"stage2": stage2}
        if bound is not None:
            kwargs["bound"] = bound
        certificate = run_main_theorem(ideal, entry.cw(ideal), entry.p, **kwargs)

    return CorpusResult(
        name=entry.name,
        ideal=render_ideal(ideal),
        p=entry.p,
        resolution=resolution,
        betti=table,
        oracle_agrees=table == oracle,
        exact=is_complex(resolution) and is_exact(resolution, ideal),
        minimal=is_minimal(resolution),
        certificate=certificate,
    )


def run_corpus(entries=ENTRIES, **kwargs):
    """Run every entry in order"""
    return [run_entry(entry, **kwargs) for entry in entries]
