"""Certified bounds for weightless simplicial volumes of Δ-complexes."""

__version__ = "0.1.0"

from .complex import (ComplexError, DeltaComplex, NonOrientableError, OrientationVector,
                      boundary_matrix, euler_characteristic, fundamental_cycle,
                      orientation, validate)
from .homology import betti, fundamental_class_check, homology_profile
from .models import (AugmentedSystem, ModelComplex, algebraic_min_cycle_size,
                     cycle_check_via_matrix, cycle_matrix, enumerate_models,
                     fundamental_feasible, has_totally_nonzero_cycle, model_of_chain)
from .bounds import (BoundReport, KnownFact, betti_lower, compile_report, degree_transfer,
                     euler_lower, exceptional_primes_report, product_bound,
                     strictness_inference, triangulation_upper)
from .coverings import (CoverSpec, build_cover, cyclic_surface_covers, stabilize,
                        validate_cover_spec)
from .constructions import fixture, surface_complex
