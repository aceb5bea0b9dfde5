# config/settings.py

import logging

# --- Logging Configuration ---

LOG_LEVEL = logging.INFO
LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


# --- Cyclic Quiver Defaults ---

# The order e of the root of unity; residues live in Z/eZ.
DEFAULT_E = 3

# Seed used by every randomized sweep unless --seed is given.
DEFAULT_SEED = 0

# Rank used by enumerating commands when --rank is not given.
DEFAULT_RANK = 3


# --- Resource Bounds ---

# Largest rank explored by the B(infinity) breadth-first search.
MAX_BINF_RANK = 8

# Largest rank for enumerations of charged multipartitions.
MAX_FOCK_RANK = 10

# Largest total rank for which Hall polynomials are counted.
HALL_RANK_BOUND = 5

# Largest weight for which crystal_from_canonical expands f_i * G(b).
MAX_CROSSCHECK_RANK = 4

# Largest n for the affine Hecke algebra H_n.
MAX_HECKE_N = 5

# Upper limit on the number of Kashiwara steps in a path transport.
MAX_PATH_TRANSPORT_STEPS = 64


# --- Hall Polynomial Counting ---

# Prime fields used for counting; interpolation consumes them in order and
# validates at the first prime it did not fit.
HALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23)


# --- Kleshchev Gap Realization ---

# Charges of consecutive components are pulled apart by at least n + e + padding.
KLESHCHEV_GAP_PADDING = 0


# --- Affine Hecke Sweeps ---

HECKE_RANDOM_TRIALS = 200
HECKE_MAX_DEGREE = 2
BERNSTEIN_TRIALS = 50


# --- Output File Configuration ---

# A dedicated directory to store all output files.
RESULTS_DIR = "results"

# Filenames for saved command outputs; formatted with the command parameters.
BINF_GRAPH_FILENAME = "binf_graph_e{e}_n{rank}_{convention}.{ext}"
FOCK_GRAPH_FILENAME = "fock_graph_e{e}_v{charge}_n{rank}.{ext}"
FLOTW_LIST_FILENAME = "flotw_e{e}_v{charge}_n{rank}.csv"
HALL_PRODUCT_FILENAME = "hall_product_e{e}.csv"
CANONICAL_BASIS_FILENAME = "canonical_basis_e{e}_w{weight}.csv"
HECKE_REPORT_FILENAME = "hecke_presentation_n{n}.csv"
BRANCHING_REPORT_FILENAME = "branching_e{e}_v{charge}_n{rank}.csv"
