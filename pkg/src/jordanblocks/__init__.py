"""Numerical toolkit for Jordan blocks of the polydisc.

Finite Blaschke products, their model spaces with the compressed shift,
invariant subspaces of one-variable blocks, tensor-product blocks with their
doubly commuting submodules, mixed Hardy/Jordan-block spaces and unitary
equivalence classification.
"""
from .equivalence import (Fingerprint, are_unitarily_equivalent, fingerprint,
                          intertwiner_oracle)
from .errors import (AmbientMismatch, DegreeBudget, DegreeTooLarge,
                     IllConditioned, JordanBlocksError, NoMatch, NotAFactor,
                     NotASubmodule, NotDoublyCommuting, NotInvariant,
                     NotRankOne, NotReducing, ParseError, PoleProximity,
                     ReconstructionMismatch, SizeBudgetExceeded, TailTooShort,
                     TruncationInconclusive)
from .inner import (BlaschkeProduct, Factorization, divides,
                    equal_up_to_unimodular, evaluate, factorizations, multiply,
                    quotient, zeros_match)
from .lemmas import verify_lemmas
from .mixed import (InnerGenerator, MixedDecomposition, TruncatedHardy,
                    beurling_extract, build_inner_submodule, build_mixed_space,
                    decompose_mixed, mixed_submodule)
from .model import (ModelSpace, ModelVector, backward_shift_theta,
                    build_model_space, compressed_shift, defect_identities,
                    minimal_tail, parseval_frame_residual, project_one,
                    star_cyclicity_check)
from .submodule import (build_submodule, classify_submodule,
                        orthocomplement_factor, orthogonality_impossibility,
                        projected_cyclic_checks, star_closure_full)
from .subspace import Subspace, distance, krylov_closure, principal_cosines
from .tensor import (JordanBlockProduct, TensorDecomposition, build_product,
                     decompose_doubly_commuting, is_doubly_commuting,
                     is_reducing, is_submodule, reducing_split,
                     star_krylov_closure, tensor_submodule)

__version__ = "0.1.0"
