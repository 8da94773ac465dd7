"""Exact surgery invariants for knots and 2-component links.

Everything is computed in exact rational arithmetic: Dedekind sums, Conway
polynomials (skein recursion on planar diagrams, or determinants of Seifert
matrices), Casson-Walker values of Dehn surgeries, Casson-Gordon values of
knot surgeries, and the cosmetic-surgery obstructions built from them.
"""

from .arith import Q, Slope, dedekind_sum_fast, dedekind_sum_naive, dedekind_symbol, sawtooth
from .casson_walker import (
    LinkingMatrix2,
    SurgeryResult,
    casson_boyer_lines,
    casson_walker_link_surgery,
    lambda_w_from_lambda,
    linking_matrix,
    signature_2x2,
)
from .links import (
    ConwayPoly,
    Crossing,
    DiagramError,
    LinkDiagram,
    LinkSurgeryInvariants,
    braid_closure,
    conway_polynomial,
    format_pd,
    invariants_from_diagram,
    linking_number,
    parse_pd,
    pretzel_a3_closed_form,
    pretzel_diagram,
    torus2_diagram,
    v3,
)
from .obstructions import (
    ObstructionReport,
    chirally_cosmetic_obstruction,
    chirally_cosmetic_obstruction_ihs,
    pretzel_analysis,
    purely_cosmetic_candidates_ihs,
    purely_cosmetic_obstruction_bl,
    purely_cosmetic_obstruction_thm4,
    purely_cosmetic_quadratic,
)
from .seifert import (
    SeifertMatrix,
    alexander_second_derivative,
    casson_gordon_tau,
    conway_from_seifert,
    levine_tristram_signature,
    parse_seifert_matrix,
    seifert_torus2,
    total_p_signature,
)

__all__ = [
    "Q",
    "Slope",
    "sawtooth",
    "dedekind_sum_naive",
    "dedekind_sum_fast",
    "dedekind_symbol",
    "Crossing",
    "LinkDiagram",
    "DiagramError",
    "ConwayPoly",
    "LinkSurgeryInvariants",
    "conway_polynomial",
    "linking_number",
    "invariants_from_diagram",
    "v3",
    "braid_closure",
    "torus2_diagram",
    "pretzel_diagram",
    "pretzel_a3_closed_form",
    "parse_pd",
    "format_pd",
    "SeifertMatrix",
    "seifert_torus2",
    "conway_from_seifert",
    "alexander_second_derivative",
    "levine_tristram_signature",
    "total_p_signature",
    "casson_gordon_tau",
    "parse_seifert_matrix",
    "LinkingMatrix2",
    "SurgeryResult",
    "linking_matrix",
    "signature_2x2",
    "casson_walker_link_surgery",
    "casson_boyer_lines",
    "lambda_w_from_lambda",
    "ObstructionReport",
    "purely_cosmetic_candidates_ihs",
    "purely_cosmetic_obstruction_bl",
    "chirally_cosmetic_obstruction_ihs",
    "purely_cosmetic_quadratic",
    "purely_cosmetic_obstruction_thm4",
    "chirally_cosmetic_obstruction",
    "pretzel_analysis",
]
