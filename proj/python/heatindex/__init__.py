"""Chen-series heat semigroup approximations and Monte-Carlo local index densities."""

from ._core import (
    a_genus_top,
    approx_semigroup,
    chen_discrepancy,
    chen_strichartz,
    clifford_product,
    convergence_study,
    d_map,
    exact_semigroup,
    in_concat_set,
    index_normalization,
    levy_area,
    moment_table,
    monte_carlo_moments,
    random_matrix_model,
    sample_bridge,
    sample_brownian,
    signature,
    stratonovich_moment,
    supertrace,
    taylor_reference,
    verify_local_index,
)

__version__ = "0.1.0"
