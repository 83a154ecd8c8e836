"""Exact computations with Harish-Chandra modules of current algebras g (x) S."""

from __future__ import annotations

__version__ = "0.1.0"

from .coeff import (CoeffAlgebra, MaxCharacter, character_at, characters, evaluate,
                    make_points_algebra, make_split_poly, make_truncated, parse_algebra)
from .classifier import (RootClassification, Trichotomy, classify_exact, classify_induced,
                         classify_window, trichotomy)
from .evalmod import (EvaluationFactor, TensorModule, iso_canonical_form, tensor_eval,
                      weight_mult)
from .induction import InducedModule, induced_module, levi_highest_weight_module, torus_module
from .parabolic import (ParabolicSet, borel, build_P, enumerate_parabolics, is_closed,
                        is_parabolic, standard_parabolic)
from .reps import (LeviModuleSpec, ModuleRealization, WeightDiagram, dense_sl2,
                   freudenthal_diagram, highest_weight_module, levi_module, weyl_dim)
from .roots import RootSystem, build_root_system, chevalley_bracket, parse_type
