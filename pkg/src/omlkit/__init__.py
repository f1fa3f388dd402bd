"""Finite orthomodular lattices, modal operators, and valuation searches."""

__version__ = "0.1.0"

from .boolean import (
    Block,
    Filter,
    TwoValuation,
    boolean_subalgebras,
    enumerate_two_valuations,
    extend_to_maximal,
    generated_filter,
    maximal_blocks,
    quotient,
    separating_maximal_filter,
)
from .catalog import catalog
from .formats import emit_hypergraph, emit_lattice, parse_hypergraph, parse_lattice
from .hypergraph import ContextHypergraph, hypergraph_assignment, paste_greechie
from .lattice import (
    FiniteOrtholattice,
    atoms,
    boolean_algebra,
    build_from_covers,
    center,
    check_atomistic,
    check_ortholattice,
    check_orthomodular,
    coatoms,
    complements,
    distributive_triples,
    generated_sublattice,
    horizontal_sum,
    product,
)
from .modal import (
    ModalLattice,
    check_posspace_extension,
    check_s_axioms,
    common_complement_lemma,
    cons_bruteforce,
    cons_closed_form,
    many_worlds_valuation,
    possibility_space,
    saturate,
)
from .valuation import (
    MWIFamily,
    check_mks,
    compatible_actualization,
    count_global_valuations,
    find_global_valuation,
    mwi_family_check,
)
