UNKNOWN_PARTY = "Unknown party"
DUPLICATE_PARTY = "Duplicate party in ballot"
DUPLICATE_ROSTER = "Duplicate party in roster"
NEGATIVE_WEIGHT = "Ballot weight must be non-negative"
MALFORMED_WEIGHT = "Malformed ballot weight"
MALFORMED_LINE = "Malformed ballot line"
MALFORMED_HEADER = "Malformed header line"
ROSTER_MISMATCH = "Profiles have different party rosters"
INVALID_PRIORITY = "Party priorities must form a permutation of 0..m-1"
INVALID_THRESHOLD = "Threshold must lie between 0 and the total weight"
MALFORMED_THRESHOLD = "Malformed threshold"
INVALID_TRUNCATION = "Truncation length must be positive"
INFEASIBLE_START = "Start outcome is not feasible"
AUGMENT_CYCLE = "Augmentation revisited an outcome"
APPORTION_NO_SCORES = "At least one party needs a positive score"
APPORTION_HOUSE_SIZE = "House size must be positive"
APPORTION_EMPTY_OUTCOME = "Cannot apportion seats for an empty outcome"
GUARD_EXCEEDED = "Too many parties for exhaustive computation"
UNSUPPORTED_RULE = "Rule is not supported for this operation"
UNSUPPORTED_AXIOM = "Axiom needs arguments that were not supplied"
UNKNOWN_VOTER = "Voter index out of range"
NOT_CLONES = "Parties are not clones in this profile"
SURVEY_MISSING_COLUMN = "Survey is missing a required column"
SURVEY_DUPLICATE_RANK = "Duplicate party in survey ranking"
SURVEY_TWO_VOTE_LENGTH = "Two-vote ranking may hold at most two parties"
SURVEY_BAD_DATE = "Malformed completion date"
RESULTS_MALFORMED = "Official results need party and votes or share columns"
OFFICIAL_SHARES_EXCEED = "Official shares sum to more than 1"
ZERO_MARGINAL = "Contingency table has a zero marginal"
MALFORMED_TABLE = "Contingency table must be 2x2 with non-negative entries"
MALFORMED_REPORT = "Malformed report document"
EMPTY_SAMPLES = "Number of samples must be positive"
MALFORMED_BUCKETS = "Bucket cuts must satisfy out <= risky low <= risky high <= safe"
UNREADABLE_FILE = "Cannot read file"
MISSING_MAPPING = "Converting an export needs a valid JSON column mapping"
MISSING_SURVEY = "Give either a table or a survey with official results"
