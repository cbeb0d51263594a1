"""Structurally significant graph cube builder."""

from ._sigcube import (
    Cube,
    Error,
    Graph,
    LoadError,
    LookupError,
    NotMaterializedError,
    ParamError,
    ParseError,
    QueryError,
    VerificationError,
    bench,
    build_cube,
    diff_size,
    generate,
    load_graph,
    oracle_cube,
    parse_graph,
    read_cuboid,
    significance,
    significance_csv,
    vertex_score,
)

__version__ = "0.1.0"
