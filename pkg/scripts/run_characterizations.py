#!/usr/bin/env python3
"""Run the three uniqueness falsification demos and print the witnesses.

The twisted product satisfies every axiom of a sequential product, yet a
generic input pair breaks (a) invariance under the transpose isomorphism,
(b) symmetry of the trace inner product, and (c) invertibility
preservation; the standard product passes all three.
"""

import sys

from seqprod.cli import run_cli

if __name__ == "__main__":
    sys.exit(run_cli(["demo", "characterizations"] + sys.argv[1:]))
