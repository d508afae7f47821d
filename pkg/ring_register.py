#!/usr/bin/env python3.9

import sys

from progbar import clear_print

from src.experiment.runners import run_experiment
from src.parse_argv import parse_argv
from src.utils.progress import TotalTime


def main() -> int:
    total_time = TotalTime()
    try:
        # Parse command-line arguments and resolve the config
        config = parse_argv()
        # Run the experiment and write its CSV
        run_experiment(config)
    except (ValueError, ArithmeticError, OSError) as err:
        clear_print(f"Error: {err}")
        return 1
    # Total time used
    print(f"Time taken: {total_time.string}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
