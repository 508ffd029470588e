"""orbitkit: orbits, torsion and finiteness checks for automaton semigroups.

State sequences are tuples in application order: element 0 acts first.
"""
from .errors import (AlphabetMismatch, BudgetExceeded, InvariantViolation, InvertibilityError,
                     OrbitkitError, ParseError, PreconditionError, UnknownSymbol,
                     UnsupportedOperation)
from .automaton import (Automaton, OracleAutomaton, PropertyReport, classify, compose,
                        disjoint_union, dual, identity_automaton, inverse, load, parse,
                        power, serialize, trim)
from .action import (ActResult, UPWord, Undefined, UndefinedPrefix, act_dual, act_finite,
                     act_up, act_word, parse_upword, render_seq, render_word, tokenize,
                     up_canonicalize)
from .orbits import (GenLang, OrbitalTransducer, certify_infinite_up, extend_orbit,
                     orbit_path_search, orbit_up, orbit_word, orbital_transducer,
                     orbital_transducer_iso, witness_search)
from .algebra import (cayley_graph, element_canon, elements_equal, enumerate_ball,
                      no_inverse_in_ball, order_check, torsion_check, torsion_check_dual,
                      truncated_growth)
from .classifier import classify_letters, extract_periodic_finite_orbit, predict_periodic_orbit
from .tilings import (TileSet, automaton_to_tileset, find_non_y_recurrent, parse_tiles,
                      serialize_tiles, tileset_to_automaton, validate_tiling)
from .gadgets import build_gadget, encode_word, lambda_expand, verify_dagger
from .corpus import corpus_get, corpus_names, oracle_get

__version__ = "0.1.0"
