from .mallows import MallowsParams, make_rng, mallows_batch, mallows_draws, mallows_pmf, mallows_sample
from .preflib import (
    PreflibDocument,
    PreflibError,
    imputed_pairs,
    load_preflib,
    parse_preflib,
    profile_from_document,
    read_preflib_document,
)
from .serialize import (
    CSV_FIELDS,
    aggregate_rows,
    report_to_dict,
    serialize_instance,
    serialize_report,
    summary_row,
    write_csv,
)

__all__ = [
    "CSV_FIELDS",
    "MallowsParams",
    "PreflibDocument",
    "PreflibError",
    "aggregate_rows",
    "imputed_pairs",
    "load_preflib",
    "make_rng",
    "mallows_batch",
    "mallows_draws",
    "mallows_pmf",
    "mallows_sample",
    "parse_preflib",
    "profile_from_document",
    "read_preflib_document",
    "report_to_dict",
    "serialize_instance",
    "serialize_report",
    "summary_row",
    "write_csv",
]
