"""Explicit generator matrices for irreducible representations of rank-one and rank-two quantum algebras."""

from .algebra_data import AlgebraKind, RootSystem, root_system, weyl_orbit
from .assembler import assemble_sr, build_generators, solve_blocks, to_generators
from .chain_solver import BlockSystem, GramStep, solve_a2, solve_b2, solve_g2, solve_gram_step
from .characters import WeightPolynomial, character, dimension, reduce_to_a1
from .errors import QrepError
from .generators import BasisLabel, GeneratorSet
from .rank_one import RankOneRep, build_d2, build_q_generators, build_rank_one
from .spectra import BlockGraph, SpectraTable, build_block_graph, build_spectra
from .verifier import RelationReport, build_oracle, check_relations, compare_invariants

__all__ = [
    "AlgebraKind",
    "BasisLabel",
    "BlockGraph",
    "BlockSystem",
    "GeneratorSet",
    "GramStep",
    "QrepError",
    "RankOneRep",
    "RelationReport",
    "RootSystem",
    "SpectraTable",
    "WeightPolynomial",
    "assemble_sr",
    "build_block_graph",
    "build_d2",
    "build_generators",
    "build_oracle",
    "build_q_generators",
    "build_rank_one",
    "build_spectra",
    "character",
    "check_relations",
    "compare_invariants",
    "dimension",
    "reduce_to_a1",
    "root_system",
    "solve_a2",
    "solve_b2",
    "solve_blocks",
    "solve_g2",
    "solve_gram_step",
    "to_generators",
    "weyl_orbit",
]
