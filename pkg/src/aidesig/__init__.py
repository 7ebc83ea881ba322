"""Binary-stream designations for high-level AI design choices.

Ten binary factors, each weighted by a power of two, turn a set of design
choices into one decimal ``System-N``.  Partially specified systems are
category patterns such as ``Category-2/0-4/0`` or ``XXXXXXX00X``.
"""
from .designation import (
    ChoiceMap,
    Designation,
    from_bitstring,
    from_choices,
    from_decimal,
    is_collaborative,
    is_sentient,
    to_bitstring,
    to_choices,
)
from .errors import *  # noqa: F401,F403
from .notation import ParsedDesignationText, SourceForm, Style, parse, parse_designation, parse_pattern
from .notation import format as format_text
from .pattern import (
    CategoryPattern,
    Cell,
    Contradiction,
    cardinality,
    enumerate_designations,
    from_cells,
    from_constraints,
    from_designation,
    matches,
    meet,
    specialize,
    subsumes,
    unspecified,
)
from .registry import (
    CategoryCount,
    Registry,
    SystemRecord,
    add_record,
    classify,
    load,
    migrate,
    population_report,
    query,
    save,
)
from .schema import Factor, FactorSchema, base_schema, extend, factor_at, load_schema, save_schema

__version__ = "0.1.0"
