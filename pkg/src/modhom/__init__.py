"""Symplectic shadows of mapping class groups: twists, torsion, closures, certificates."""

from .abelian import AbelianInvariants, Presentation, abelianize, quotient_order_by_delta_power
from .census import BranchDatum, admissible, census, cyclic_order_exists
from .certify import (
    Certificate,
    Conclusion,
    GroupProfile,
    certify_distinct_genera,
    certify_general_target,
    index_divisibility,
)
from .curves import CurveSystem, chain, delta_order_check, gamma4, pants_system, twist_rank
from .finite import ModMatrix, enumerate_group, normal_closure
from .snf import smith_normal_form
from .symplectic import HomClass, SympMatrix, order, pairing, transvection

__version__ = "0.1.0"

__all__ = [
    "AbelianInvariants",
    "BranchDatum",
    "Certificate",
    "Conclusion",
    "CurveSystem",
    "GroupProfile",
    "HomClass",
    "ModMatrix",
    "Presentation",
    "SympMatrix",
    "abelianize",
    "admissible",
    "census",
    "certify_distinct_genera",
    "certify_general_target",
    "chain",
    "cyclic_order_exists",
    "delta_order_check",
    "enumerate_group",
    "gamma4",
    "index_divisibility",
    "normal_closure",
    "order",
    "pairing",
    "pants_system",
    "quotient_order_by_delta_power",
    "smith_normal_form",
    "transvection",
    "twist_rank",
]
