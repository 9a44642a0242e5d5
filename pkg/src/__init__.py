"""pg-justify: 基于证成的奇偶博弈求解."""
