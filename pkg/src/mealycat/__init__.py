"""Finite Mealy and Moore machines, their fugal extensions over monoids, and
the categorical constructions built from them, each paired with a checker
that returns a counterexample when a law fails."""

from .errors import (DocumentError, DocumentSyntaxError, InvariantViolation, MalformedInput, MealycatError,
                     PreconditionError, ResourceLimit, TypeMismatch, UnresolvedReference, UsageError)
from .finset import (FinFn, FinMonoid, FinSet, FreeMonoid, Word, check_monoid_laws, cyclic_monoid,
                     idempotent_monoid, product_set, trivial_monoid, z2_multiplicative)
from .fugal import (MonoidMealyMachine, compose_monoid_machines, fugal_extension, h_restrict, is_fugal,
                    k_extend, verify_roundtrips)
from .guitart import (CatFunctor, FinCat, GuitartSpan, compose_spans, is_discrete_opfibration, pi_span,
                      sigma_functor, translation_category, verify_pi_functoriality)
from .intertwiner import (Intertwiner, IntertwinerTwoCell, check_intertwiner, check_two_cell,
                          compose_intertwiners)
from .kleisli import PowersetMealy, expand, lift_deterministic
from .machines import (MealyMachine, MooreMachine, check_machine_morphism, compose_diamond, identity_machine,
                       run_mealy, run_moore)
from .rel import Rel, ran_reachability, verify_terminal
from .catmachines import (CatMonadCell, NatTrans, SetFunctor, build_machine_from_monad,
                          check_ran_universal_property, ran_along)
from .verdict import Verdict

__version__ = "0.1.0"
