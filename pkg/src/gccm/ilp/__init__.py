from .backends import (BackendError, BackendResult, CommandBackend, bergamini_solve,
                       builtin_backend_solve, make_backend, model_cost)
from .lpfile import (export_bergamini_lp, export_lp, import_solution, model_from_lp, parse_lp,
                     write_solution)
from .model import (BergaminiModel, IlpModel, InfeasibleAssignment, IterationState, ModelError,
                    build_full_model, build_reduced_model, check_sufficiency, estimate_d,
                    initial_d, reconstruct_full_assignment)
from .solver import DEFAULT_TIME_LIMIT, SolveReport, solve_iteratively
