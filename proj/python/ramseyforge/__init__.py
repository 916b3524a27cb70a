from ._core import (
    RamseyforgeError,
    Structure,
    automorphisms,
    builtin_names,
    canonical,
    chain,
    decide,
    demo_section3,
    embeddings,
    exhaustive_witness_check,
    gen_c_structures,
    gen_linear_orders,
    gen_permutations,
    gen_products,
    gen_tournaments,
    induced,
    is_rigid,
    isomorphism,
    parse_structure_file,
    run_cli,
)

__all__ = [
    "RamseyforgeError",
    "Structure",
    "automorphisms",
    "builtin_names",
    "canonical",
    "chain",
    "decide",
    "demo_section3",
    "embeddings",
    "exhaustive_witness_check",
    "gen_c_structures",
    "gen_linear_orders",
    "gen_permutations",
    "gen_products",
    "gen_tournaments",
    "induced",
    "is_rigid",
    "isomorphism",
    "parse_structure_file",
    "run_cli",
]
