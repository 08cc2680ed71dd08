"""Varchenko determinants of finite Coxeter reflection arrangements."""

from .coxeter_core import (  # noqa: F401
    CoxeterDiagram,
    EnumeratedGroup,
    build_group,
    group,
    parse_group_spec,
)
from .exact_algebra import Factorization, Monomial, det_mod_p  # noqa: F401

__version__ = "0.1.0"
