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

# Farey symbols
FAREY_INSERTION_FACTOR = 100
EVEN = "EVEN"
ODD = "ODD"
PAIRED = "PAIRED"

# Generator names
T_NAME = "T"
HYPERBOLIC_PREFIX = "h"
ORDER2_PREFIX = "e"
ORDER3_PREFIX = "f"

# Decomposition
DECOMPOSE_MAX_STEPS = 1000000

# Forms
REDUCTION_MAX_STEPS = 100000
REPRESENTED_VALUE_START_BOUND = 1
COPRIME_SEARCH_START_BOUND = 2

# Experiments
DECIMAL_DIGITS = 12
CSV_COLUMNS = [
    "d", "h_plus", "subgroup_order", "splits", "r", "j_nontrivial",
    "ap_outside_principal_genus", "class_sum", "eis_pairing", "sup_distance",
    "sup_distance_dec", "eis_coord_maximal", "word_length_total", "elapsed_ms",
]
DEFAULT_WORKERS = 1

# Environment
WORKERS_ENV = "GEOHOM_WORKERS"
FULL_SWEEP_ENV = "GEOHOM_FULL_SWEEP"

