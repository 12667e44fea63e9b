"""Strict Bott-Samelson resolutions of Schubert varieties by recursive splitting."""

from .bruhat import (
    Interval, Split, demazure_product, interval, length_additive_splits, reduced_words,
)
from .permutation import (
    Permutation, bruhat_leq, compose, identity, inverse, is_reduced, length,
    pattern_contains, simple, translate, word_to_perm,
)
from .search import (
    GammaList, ResolutionTree, bruhat_minimal, gamma, pi_n, scan,
    strictly_resolvable, validate_tree, verify_conjecture,
)
from .singularity import (
    SingularProfile, is_smooth_at, is_smooth_variety, singular_profile, tangent_dim,
)
from .strictness import (
    BSTuple, FibreTable, fibre_table, is_strict, nonreduced_codim1_subtuples, strict_splits,
)

__version__ = "0.1.0"
