"""
Definitions for the supported classical Cartan factor families.
"""

FACTOR_DEFINITIONS = {
    "I": {
        "name": "rectangular",
        "arity": 2,
        "min_params": (1, 1),
        "root_family": "A",
    },
    "II": {
        "name": "symplectic",
        "arity": 1,
        "min_params": (4,),
        # the grid correspondence is stated from n = 5; II(4) is a spin factor
        "grid_min": 5,
        "root_family": "D",
    },
    "III": {
        "name": "hermitian",
        "arity": 1,
        "min_params": (2,),
        "root_family": "C",
    },
    "IV": {
        "name": "spin",
        "arity": 1,
        # dim 2 only for grids and root systems; invariants start at dim 3
        "min_params": (2,),
        "invariant_min": 3,
        "root_family": {"even": "D", "odd": "B"},
    },
}

# Low-dimensional factors that are spin factors in disguise.
COINCIDENCES = {
    ("III", (2,)): ("IV", (3,)),
    ("I", (2, 2)): ("IV", (4,)),
    ("II", (4,)): ("IV", (6,)),
}

DEFAULTS = {
    "oracle": {"seed": 42, "budget": 200},
    "verify": {"max_rank": 8, "max_n": 5, "max_dim": 36},
    "output": {"indent": 2},
}
