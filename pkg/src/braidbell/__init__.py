"""General n-qubit Bell states from a braid-group representation of the R gate,
with partial-trace, concurrence, PPT and Hilbert-Schmidt analyses."""

__version__ = "0.1.0"

from .braid import (
    BraidWord,
    apply_braid_word,
    check_braid_relations,
    check_yang_baxter,
    parse_braid_word,
    r_matrix,
    sigma,
    sigma_pauli_form,
)
from .density import DensityMatrix, density_from_pure, partial_trace, purity
from .entanglement import (
    concurrence_mixed,
    concurrence_pure,
    partial_transpose,
    ppt_check,
    reduction_survey,
    spin_flip_density,
    spin_flip_state,
)
from .hs_decomp import (
    HSCoefficients,
    classify_arms,
    highest_weight_support,
    hs_decompose,
    hs_reconstruct,
    pauli_string_matrix,
)
from .states import bell_basis, bell_state, computational_state, ghz_state
from .tensor_core import StateVector, dagger, hermitian_eigensystem, kron, matmul, sqrt_psd
