"""Attachable backends: Towers of Hanoi, a 2D grid world and a toy particle world."""

from .base import World
from .formatters import grid_formatter
from .gridworld import DIRECTIONS, GridMap, GridWorld, MapFormatError, navigation_query, shipped_map
from .hanoi import HanoiWorld, hanoi_move, hierarchical_query, optimal_moves, vanilla_query
from .particles import ParticleWorld, make_particle_world

__all__ = [
    "DIRECTIONS", "GridMap", "GridWorld", "HanoiWorld", "MapFormatError", "ParticleWorld", "World",
    "grid_formatter", "hanoi_move", "hierarchical_query", "make_particle_world", "navigation_query",
    "optimal_moves", "shipped_map", "vanilla_query",
]
