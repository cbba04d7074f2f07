"""Geodetic graphs, isometrically embedded circuits and rewriting systems."""

__version__ = "0.1.0"

from ._backend import available_backends, backend_name, use_backend
from .boundary import (
    FULL_HORIZON,
    BusemannTrace,
    OnionPrefix,
    RayPrefix,
    busemann_trace,
    coincidence_radius,
    find_onion_prefix,
    onion_apexes,
    ray_extend,
    rebase_ray,
    validate_ray_prefix,
)
from .graph import (
    BfsLayers,
    GeodeticReport,
    Graph,
    bfs_from,
    build_graph,
    enumerate_geodesics,
    is_convex,
    is_geodetic,
    unique_geodesic,
)
from .groups import (
    OUT_OF_BALL,
    GeneratorAlphabet,
    GroupElement,
    GroupSpec,
    LabeledBall,
    cayley_ball,
    evaluate_word,
    free_product_normal_form,
    gen_family,
)
from .iec import (
    Iec,
    IecInventory,
    canonical_circuit,
    enumerate_iecs_bruteforce,
    enumerate_iecs_geodetic,
    iec_from_fork,
    is_iec,
)
from .rws import (
    CriticalPair,
    RewritingSystem,
    Rule,
    check_confluence,
    cross_validate,
    extract_rws,
    find_critical_pairs,
    normalize,
    rules_from_iec_word,
    words_equal,
)
from .tree_qi import (
    DistortionReport,
    GeodesicSpanningTree,
    LiftedPath,
    distortion_report,
    geodesic_spanning_tree,
    lift_path,
)
