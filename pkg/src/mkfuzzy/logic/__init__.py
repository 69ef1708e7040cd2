"""Boolean MSO and MK-fuzzy MSO over finite words."""

from .compile import (Decompiled, HomStep, NotRestrictedError, automaton_to_rmso,
                      mso_to_dfa, rmso_to_automaton)
from .semantics import (assignments, decode, encode, is_rmso, mk_eval, mk_eval_encoded,
                        mso_satisfies, subsets_ascending)
from .syntax import FormulaSyntaxError, free_vars, parse_mk, parse_mso, to_text

__all__ = [
    "Decompiled", "HomStep", "NotRestrictedError", "automaton_to_rmso", "mso_to_dfa",
    "rmso_to_automaton", "assignments", "decode", "encode", "is_rmso", "mk_eval",
    "mk_eval_encoded", "mso_satisfies", "subsets_ascending", "FormulaSyntaxError",
    "free_vars", "parse_mk", "parse_mso", "to_text",
]
