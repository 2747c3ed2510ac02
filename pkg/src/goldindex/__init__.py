"""Index and periodicity machinery for even numbers, with a sieve-based audit."""

__version__ = "0.1.0"

from .effnum import (
    Census,
    EffClass,
    EffPartition,
    EvenTarget,
    census,
    classify_residue,
    eff_partitions,
    is_prime,
)
from .index import (
    CompositeBaseProbe,
    Form,
    GoldbachWitness,
    IndexEntry,
    IndexTable,
    WitnessSource,
    composite_base_probe,
    coverage_bases,
    dlog_bsgs,
    find_collisions,
    index_of,
    index_table,
)
from .linsys import Variant, analyze_rank, build_row, build_system, factor_complement
from .orbit import (
    Orbit,
    PowerStep,
    build_orbit,
    mult_order,
    orbit_table,
    pow_mod,
    power_step,
)
from .scan import (
    AuditRecord,
    AuditSummary,
    audit_claims,
    goldbach_witness_sieve,
    scan_range,
    sieve,
)

__all__ = [
    "AuditRecord",
    "AuditSummary",
    "Census",
    "CompositeBaseProbe",
    "EffClass",
    "EffPartition",
    "EvenTarget",
    "Form",
    "GoldbachWitness",
    "IndexEntry",
    "IndexTable",
    "Orbit",
    "PowerStep",
    "Variant",
    "WitnessSource",
    "analyze_rank",
    "audit_claims",
    "build_orbit",
    "build_row",
    "build_system",
    "census",
    "classify_residue",
    "composite_base_probe",
    "coverage_bases",
    "dlog_bsgs",
    "eff_partitions",
    "factor_complement",
    "find_collisions",
    "goldbach_witness_sieve",
    "index_of",
    "index_table",
    "is_prime",
    "mult_order",
    "orbit_table",
    "pow_mod",
    "power_step",
    "scan_range",
    "sieve",
]
