# Copyright (C) 2024 Alexandre Mitsuru Kaihara
#
#    This program is free software: you can redistribute it and/or modify
#    it under the terms of the GNU General Public License as published by
#    the Free Software Foundation, either version 3 of the License, or
#    (at your option) any later version.
#
#    This program is distributed in the hope that it will be useful,
#    but WITHOUT ANY WARRANTY; without even the implied warranty of
#    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#    GNU General Public License for more details.
#
#    You should have received a copy of the GNU General Public License
#    along with this program.  If not, see <http://www.gnu.org/licenses/>.

from .exactmath import Mat, Cusp, psl_normalize, kronecker, sawtooth, dedekind_sum, rademacher_psi, mobius_act
from .quadforms import (QuadForm, PellUnit, FormClass, NarrowClassGroup, GenusCharacter, narrow_class_group,
                        reduce, equivalent, compose, pell_plus, has_norm_minus_one_unit, j_class, j_in_principal_genus,
                        genus_characters, genus_signature, sqrt_mod_4p, p_ideal_form, gamma_Q,
                        level_p_classes, discriminant_family)
from .modcurve import (Gamma0Data, FareySymbol, SpecialPolygonGenerators, HomologyBasis, ZagierSet,
                       gamma0_invariants, zagier_generators, farey_symbol, polygon_generators,
                       verify_poincare, homology_basis)
from .geocoding import (decompose, homology_vector, geodesic_class, eisenstein_pairing, pairing_of_vector,
                        hecke_orbit_products, fricke, iota, membership_refutation)
from .concentration import (ConditionReport, ExperimentRecord, class_sum, sup_distance, class_number_imag,
                            hecke_identity_check, run_sweep, refute_membership_report)
from .exceptions import GeohomException, InvalidInput, VerificationFailure, InternalDefect

__version__ = '1.0.0'
