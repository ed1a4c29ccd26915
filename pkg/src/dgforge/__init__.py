"""Exact computation kernel for finite dimensional DG algebras.

Structure constants over Q or F_p, the radical DG ideals, minimal
semifree resolutions with certified truncation windows, and the derived
criteria built on them: perfection, Nakayama witnesses, Gorenstein and
Serre checks, the Koszul dual, Hochschild homology, smoothness, the
Auslander algebra and separability idempotents.
"""

from .complexes import CohomologyTable, Complex, cohomology_of_complex
from .dga import (BUILTIN_NAMES, DgaMorphism, FdDga, builtin_example,
                  enveloping_dga, opposite_dga, tensor_dga, validate_dga)
from .derived import (KoszulDual, Verdict, auslander_dga,
                      contradual_perfection_check, derived_hom, derived_tensor,
                      ext_tor_duality_check, gorenstein_check,
                      hochschild_homology, keylemma_witness, koszul_dual,
                      nakayama_witness, perfection_check, serre_duality_check,
                      smoothness_check)
from .field import FieldSpec, Fp
from .linalg import Matrix, Subspace, rref, solve, subspace_combine
from .modules import (DgModule, ModuleMap, cone, free_module, k_dual,
                      random_module, regular_module, shift, side_swap,
                      strict_hom, strict_tensor, validate_module)
from .radical import (DgIdeal, FiltrationWitness, SeparabilityIdempotent,
                      bimodule_filtration, dg_ideals, is_separable,
                      quotient_dga, radical_filtration, tensor_idempotent,
                      underlying_radical)
from .resolution import (BettiTable, TruncatedResolution, betti_table,
                         resolve_minimal)

__version__ = "0.1.0"
