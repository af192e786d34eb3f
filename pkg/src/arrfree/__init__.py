"""Exact computations with central hyperplane arrangements.

Intersection lattices with exact Moebius/characteristic data, MAT-step
certification of freeness, accuracy of free arrangements, crystallographic
root systems and their ideal subarrangements, Shi/Catalan deformations,
graphic arrangements, and the cyclotomic intermediate family.
"""

from .accuracy import (ACCURATE, CERTIFIED_FREE, CHARPOLY_CONSISTENT,
                       INCONCLUSIVE, NOT_ACCURATE, AccuracyReport,
                       DimensionEntry, check_accuracy,
                       restriction_exponent_candidates,
                       scan_unique_witnesses)
from .arrangement import (Arrangement, CapExceededError, Flat, Hyperplane,
                          Lattice, ambient_flat, arrangement, build_lattice,
                          canonicalize_normal, characteristic_polynomial,
                          deletion, divisional_flag_search,
                          flat_from_hyperplanes, flat_from_normals,
                          is_modular, localization, restriction,
                          restriction_with_map, supersolvable_certificate)
from .deformations import (ConedDeformation, build_catalan, build_ideal_shi,
                           build_shi, build_shi_minus, ideal_shi_exponents,
                           shi_accuracy_witnesses, shi_minus_exponents,
                           shi_pipeline_certificate)
from .fields import (CyclotomicField, CyclotomicNumber, FieldMismatchError,
                     QQ, Rational, RationalField, cyclotomic_polynomial,
                     format_scalar, parse_scalar)
from .graphic import (Graph, chromatic_polynomial, connected_partitions,
                      contract, exponents_from_elimination, fixture_graph,
                      graph, graphic_accuracy, graphic_arrangement,
                      is_elimination_order, perfect_elimination_order,
                      quotient)
from .intermediate import (IntermediateLabel, bruteforce_cross_check,
                           build_intermediate, closed_form_accuracy,
                           intermediate_exponents,
                           localization_fixture_check, symbolic_accuracy,
                           table2_restriction_types)
from .linalg import in_row_space, matrix_rank, reduce_vector, rref
from .matfree import (InconsistencyError, MATCertificate, MATViolation,
                      StepRecord, accuracy_witnesses, certify_from_free_base,
                      certify_partition, dual_partition_exponents,
                      search_mat_partition, verify_mat_step)
from .parsing import (arrangement_from_json, arrangement_to_json,
                      parse_linear_form, parse_linear_forms)
from .rootsys import (Ideal, Root, RootSystem, RootSystemType,
                      build_root_system, coxeter_number, enumerate_ideals,
                      full_ideal, highest_root, ideal_arrangement,
                      ideal_closure, ideal_from_indices, parse_type,
                      root_height_partition, root_poset_leq,
                      weyl_arrangement)

__version__ = "0.1.0"
