COMPACTIFY_CACHE_KEY_PATTERN = "stabcodes:compactify:{digest}:v1"
CORPUS_CACHE_KEY_PATTERN = "stabcodes:corpus:{name}:v1"

# Verdict vocabulary
CERTIFIED_INVERTIBLE = "CertifiedInvertible"
FALSIFIED = "Falsified"
PASSED_FINITE_CHECKS = "PassedFiniteChecks"

CERTIFIED_D0 = "CertifiedD0"
FALSIFIED_AT = "FalsifiedAt"

# Witt equivalence outcomes
WITT_EQUIVALENT = "equivalent"
WITT_INEQUIVALENT = "inequivalent"
WITT_UNDECIDED = "undecided"

# CodeDocument section kinds
SECTION_KINDS = ("presentation", "form", "formation", "quadratic", "majorana")

# Condensation side conditions
CONDENSE_TRANSVERSAL = "transversal"
CONDENSE_CONTAINED = "contained"
CONDENSE_AUTO = "auto"
