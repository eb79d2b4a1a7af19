"""Dice groups: periodic groups acting on spherically homogeneous rooted trees."""
from .config import DiceConfig, LevelSpec, parse_config, spine_order
from .elements import DiceGroup, GeneratorLetter, Portrait, ReducedWord, WreathDecomposition, parse_word
from .errors import DiceError
from .fpalgebra import CubePoint, CubeShape, FaceIndexSet, Line, line_of, lines_through_identity, support
from .lucky import LuckyVerdict, Status, check_d, check_dd, check_ddmax, check_ddmax1, check_ddmin
from .order import Exceeded, Finite, OrderContext, brute_force_order, order
from .presets import Preset, get_preset
from .quotient import (LevelPermutation, NotStabilized, Overflow, Stabilized, enumerate_group,
                       group_order, project, stabilized_order)

__all__ = [
    "DiceConfig", "LevelSpec", "parse_config", "spine_order",
    "DiceGroup", "GeneratorLetter", "Portrait", "ReducedWord", "WreathDecomposition", "parse_word",
    "DiceError",
    "CubePoint", "CubeShape", "FaceIndexSet", "Line", "line_of", "lines_through_identity", "support",
    "LuckyVerdict", "Status", "check_d", "check_dd", "check_ddmax", "check_ddmax1", "check_ddmin",
    "Exceeded", "Finite", "OrderContext", "brute_force_order", "order",
    "Preset", "get_preset",
    "LevelPermutation", "NotStabilized", "Overflow", "Stabilized", "enumerate_group",
    "group_order", "project", "stabilized_order",
]
