"""Garside-theoretic computations for finite Coxeter groups and their braid monoids."""

from .braid import BraidElement, from_word
from .coxeter import CoxeterError, CoxeterSystem, build_system

__all__ = ["BraidElement", "CoxeterError", "CoxeterSystem", "build_system", "from_word"]
