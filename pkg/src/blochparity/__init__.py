"""Even/odd Bloch correlations of multiqubit states and what each class determines."""
from .bloch import (BlochVector, EvenOddSplit, bloch_coefficient, bloch_decompose,
                    bloch_reconstruct, even_odd_split, operator_bloch, weight_filter)
from .dynamics import (alpha_trajectory, evolve, ghz_bound, heisenberg_parity_check,
                       random_hamiltonian)
from .entanglement import bisep_scan, reduced_purity_test
from .errors import DimensionCapError, InvariantError, SpectrumError, ValidationError
from .inversion import (FlipSpec, apply_general_flip, invert_bloch_qudit, invert_qubit,
                        invert_via_reductions, overlap_alpha)
from .linalg import hermitian_eig
from .oracles import NamedState, make_named, oracle_bloch
from .pauli import PauliString, commutator, multiply, to_matrix, weight
from .reconstruction import (even_family_from_odd_evenN, even_from_odd,
                             ground_hamiltonian_from_state, kramers_check, odd_family_from_even,
                             odd_from_even_evenN, spectra_check, uda_certify)
from .states import QuantumState, partial_trace, random_mixed_state, random_pure_state

__version__ = "0.1.0"
