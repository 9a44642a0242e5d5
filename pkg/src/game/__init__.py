"""奇偶博弈包."""

from src.game.parity_game import (
    GameError,
    Hypothesis,
    ParameterMap,
    ParityGame,
    Player,
    Violation,
    build_game,
    default_hypothesis,
    ppg_to_pg,
    validate_game,
    winner_of_priority,
)
from src.game.solution import (
    Play,
    PlayError,
    Problem,
    Solution,
    SolutionReport,
    check_solution,
    play_winner,
    verify_solution,
)

__all__ = [
    "GameError",
    "Hypothesis",
    "ParameterMap",
    "ParityGame",
    "Play",
    "PlayError",
    "Player",
    "Problem",
    "Solution",
    "SolutionReport",
    "Violation",
    "build_game",
    "check_solution",
    "default_hypothesis",
    "play_winner",
    "ppg_to_pg",
    "validate_game",
    "verify_solution",
    "winner_of_priority",
]
