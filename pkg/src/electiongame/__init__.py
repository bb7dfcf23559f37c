"""Election games: parties field candidates, a WP function picks the winner."""

from .errors import ElectionGameError, ParseError, ValidationError
from .model import (Candidate, GameInstance, Party, Surpass, from_matrices, is_egoistic,
                    is_strongly_egoistic, surpass, surpasses_context_free, validate,
                    weakly_surpasses)
from .wp import HARDMAX, SOFTMAX, Hardmax, Softmax, check_monotone, get_wp, win_probs
from .payoff import evaluate, payoff, payoff_vector, social_welfare
from .equilibria import (approx_ratio, approx_ratio_all_first, best_response, dominant_first_psne,
                         deviation_graph, enumerate_psne, is_psne)
from .fpt import compute_depths, fpt_psne, refine_strategy_sets
from .efficiency import optimal_profile, price_of_anarchy, table3_family
from .coalition import CoalitionStructure, coalition_incentive_delta, secce_transform
from .satgadget import CnfFormula, build_gadget, compare_with_sat, parse_dimacs
from .generate import GeneratorConfig, generate
from .instance_io import load, parse, render, store

__version__ = "0.1.0"
