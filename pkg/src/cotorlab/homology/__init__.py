from .cobar import (
    CobarComplex,
    Cocycle,
    Comodule,
    cobar_complex,
    cotor,
    cotor_by_degree,
    cup,
    extend_comodule_to_z,
    incidence_point_comodule,
    transport_comodule,
    trivial_comodule,
    unit_cocycle,
)
from .complex import CochainComplex, cohomology_dims
from .simplicial import simplicial_cochain_complex, simplicial_cohomology
from .hochschild import (
    Bimodule,
    HochschildCochain,
    HochschildComplex,
    bimodule_from_comodules,
    budget,
    ext_dims,
    gerstenhaber_cup,
    hh_dims,
    hochschild_complex,
    hochschild_reduced,
    one_dimensional_bimodule,
    regular_bimodule,
    simple_bimodule,
    unit_cochain,
    vertex_character,
)
