"""Classify positive definite binary quadratic forms that represent almost the same primes."""

from .arith import fundamental_decomposition, kronecker, p_star, sieve
from .classgrp import ClassGroup, GroupType, class_group, compose, group_type, h_formula, restrict
from .equiv import EquivClass, build_classes, cross_d_pairs, exceptional_set, same_d_partners, two_lift
from .errors import DomainError, FormprimeError, ResourceError
from .genus import GenusBasis, fixed_field, genus_basis, signature
from .oracle import density_check, falsify_pair, verify_class
from .qform import Form, parse_form, reduce_gl2, reduce_sl2, represents
from .search import Hit, SearchConfig, run_search

__version__ = "0.1.0"
