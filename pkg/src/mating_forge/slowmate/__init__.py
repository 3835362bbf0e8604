"""Numerical slow mating of quadratic polynomials."""
from .boettcher import (DomainError, NumericError, SlowMateError, boettcher_forward, boettcher_grid,
                        boettcher_inverse, escape_radius, glue_point, green_grid, green_potential)
from .movie import (BudgetExhausted, Converged, Degenerated, Frame, InitializationError, Movie, MovieConfig,
                    PolySpec, StepError, initial_frame, run_movie, step_frame)
from .rational import DegenerateMapError, QuadMap, map_from_critical_values, sup_distance
from .render import label_grid, render_frame, save_image
from .sphere import INF, chordal, is_inf
from .stretch import beltrami_estimate, beltrami_mu, zeta_map

__all__ = [
    "INF", "BudgetExhausted", "Converged", "Degenerated", "DegenerateMapError", "DomainError", "Frame",
    "InitializationError", "Movie", "MovieConfig", "NumericError", "PolySpec", "QuadMap", "SlowMateError",
    "StepError", "beltrami_estimate", "beltrami_mu", "boettcher_forward", "boettcher_grid", "boettcher_inverse",
    "chordal", "escape_radius", "glue_point", "green_grid", "green_potential", "initial_frame", "is_inf",
    "label_grid", "map_from_critical_values", "render_frame", "run_movie", "save_image", "step_frame",
    "sup_distance", "zeta_map",
]
