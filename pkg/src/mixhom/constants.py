"""Constants for mixhom."""

# Colour convention for 2-edge-coloured graphs
BLUE = 0
RED = 1
EDGE_COLOR_TOKENS = {"B": BLUE, "R": RED}

# Arc step tokens: forward (along the arc) and backward (against it)
ARC_FORWARD_TOKEN = "F"
ARC_BACKWARD_TOKEN = "K"

# MG1 document records
MG1_COMMENT = "c"
MG1_HEADER = "p"
MG1_FORMAT_TAG = "mg"
MG1_LABEL = "v"
MG1_ARC = "a"
MG1_EDGE = "e"

# Builtin targets
BUILTIN_TARGETS = ("t5", "t6", "t4_oriented", "t4_2ec")
TARGET_ALPHABET = "abcdef"

# Signatures of the two target families
ORIENTED = (1, 0)
TWO_EDGE_COLORED = (0, 2)
PATTERN_KINDS = {"oriented": ORIENTED, "2ec": TWO_EDGE_COLORED}

# Solver
DEFAULT_TIME_LIMIT = None  # seconds, None means unbounded
FULL_IMAGE_TABLE_LIMIT = 12  # targets up to this order get complete subset tables
TIME_CHECK_INTERVAL = 1024  # search nodes between clock reads
RECURSION_HEADROOM = 1000

# Exhaustive sweeps
DEFAULT_WORKERS = 1
DEFAULT_SWEEP_CHUNK_SIZE = 64

# Brute-force limits
MAX_RECONSTRUCT_ORDER = 6
MAX_CORE_ORDER = 8
MAX_BRUTEFORCE_MAD_ORDER = 20
MAX_PLANAR_TARGET_ORDER = 5

# Discharging parameters used for the two universal targets
DISCHARGE_K = {"t5": 11, "t6": 8}

# Gadget defaults (smallest legal girth parameters)
DEFAULT_Z_GIRTH = 3
DEFAULT_X_GIRTH = 4
DEFAULT_Y_GIRTH = 1

# Reproduction manifest
MANIFEST_FILENAME = "manifest.csv"
MANIFEST_COLUMNS = {
    "check_id": "Check ID",
    "operation": "Operation",
    "arguments": "Arguments",
    "expected": "Expected",
    "reference": "Reference",
    "slow": "Slow",
}

# Report formats
REPORT_FORMATS = ("plain", "machine")
