"""Borel orbits of quadratic forms over binary tower fields."""

from .tower import FieldElement, artin_schreier_solve, parse_element, format_element
from .forms import QuadraticForm, GroupElement, act, permute, reflect, parse_form, format_form
from .normal import NormalComponent, NormalForm, normalize, is_normal, extend, brank, is_nondegenerate

__version__ = "0.1.0"
