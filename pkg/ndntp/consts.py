NDNTP_PREFIX = "/NDNTP/time"
APP_FACE = 0
HASH_BYTES = 8
MAX_HOP_LIMIT = 255
H64_KEY = b"ndntp/session-pin/v1"

DEFAULT_SEED = 42
DEFAULT_PIT_LIFETIME_US = 4_000_000
DEFAULT_DEAD_NONCE_TTL_US = 6_000_000
DEFAULT_AGG_TIMEOUT_US = 1_000_000
DEFAULT_CS_CAPACITY = 100

DEFAULT_SERVERS_PER_RUN = 4
DEFAULT_SAMPLES_PER_SERVER = 4
DEFAULT_RTT_THRESHOLD_US = 250_000
DEFAULT_CLUSTER_TOLERANCE_US = 100_000
DEFAULT_RUN_PERIOD_US = 10_000_000

DEFAULT_DURATION_US = 60_000_000
