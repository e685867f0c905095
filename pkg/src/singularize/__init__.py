"""Singularization of closed orientable surfaces by loop collapsing, zipping
and identification, with Z2 homology checks of the resulting Euler
characteristic and genus."""

from .builders import (
    SurfaceBundle,
    build_genus_chain,
    build_sphere,
    build_torus,
    canonical_loop,
    disjoint_union,
    link_loop,
    make_bundle,
    refine_loop_to_length,
)
from .complex import (
    CellComplex,
    build_from_cells,
    component_count,
    connected_components,
    cut_along_cycle,
    euler_count,
    from_triangles,
    quotient,
    singular_edges,
    singular_vertices,
    split_edge,
    subdivide_edge,
    validate_closed_orientable_surface,
    vertex_link,
)
from .dsl import SingularizationPlan, parse_script, render_plan
from .errors import ScriptError, SingularizeError
from .homology import HomologyProfile, betti_numbers, boundary_matrices, z2_rank
from .loops import (
    Collapse,
    IdentifyWith,
    LoopMarking,
    Zip,
    are_cobordant,
    check_pairwise_disjoint,
    is_separating,
    validate_simple_cycle,
)
from .pipeline import export, run, run_script
from .surgery import SingularComplex, collapse, identify, singular_set, zip_loop
from .verify import (
    SingularizationReport,
    check_theorems,
    genus_oracle,
    predict_chi,
    predict_genus,
)

