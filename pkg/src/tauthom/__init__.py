"""Exact homological algebra over the integers: Smith normal form,
finitely generated abelian groups with Hom and Ext, free (co)chain
complexes with verified universal-coefficient certificates, derived limits
of towers and telescopes, set-function homology on finite closure models,
and a harness for tautness-style exact sequences of neighborhood systems.

Everything is integer arithmetic; every nontrivial computation carries or
re-checks its own certificate.
"""

from .matrices import (IntMatrix, SmithForm, determinant, hstack,
                       kernel_basis, column_basis, lattice_contains,
                       lattice_equal, matrix_power, smith_normal_form,
                       solve_columns, vstack)
from .groups import (ExtGroup, GroupMap, GroupParseError, HomGroup,
                     IllFormedMap, PresentedGroup, Subquotient, cokernel,
                     ext_group, hom_group, image, inverse, is_injective,
                     is_isomorphism, is_surjective, kernel, kernel_lattice,
                     parse_group, tensor_identity)
from .complexes import (CertificateFailure, CoefficientComplex,
                        CycleBoundarySequence, DegreeOutOfRange, FreeComplex,
                        NotFree, UctCertificate, UctSuite,
                        cycle_boundary_sequence, uct_certificate,
                        uct_certificates)
from .limits import (DEFAULT_KMAX, IsoReport, LimOutcome, MalformedTower,
                     ShiftReport, SixTermReport, Telescope, Tower, colim,
                     ext_tower, hom_into_colim_check, hom_tower, lim, lim1,
                     lim_higher, shift_isomorphism_check, six_term_check)
from .kolmogoroff import (BlockMismatch, ConditionViolated, FiniteModel,
                          FreeBasisCertificate, KolmogoroffChain,
                          NerveComplex, NerveGChain, NotACover,
                          NotARefinement, Partition, PipelineMismatch,
                          RefinementMap, arc_circle, free_colimit_basis,
                          kolmogoroff_homology, kolmogoroff_uct_check,
                          model_preset, mosaic, octahedron, projective_plane,
                          refinement_map, regularize)
from .tautness import (ComparisonReport, InconsistentData, LimNotExact,
                       NeighborhoodTower, SequenceReport, SubspaceData,
                       comparison_into_limit, extension_candidates,
                       four_term_sequence, milnor_sequence,
                       reports_consistent, solenoid_tower, tautness_preset,
                       tautness_sequence, trivially_taut_tower)

__version__ = "0.1.0"
