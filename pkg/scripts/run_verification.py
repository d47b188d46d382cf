#!/usr/bin/env python3
"""Run the full identity-verification suite on the default scenario.

Writes out/verify/report.json and exits nonzero if any residual exceeds
its tolerance.
"""

import sys

from photonfield.cli import main

if __name__ == "__main__":
    sys.exit(main(["verify", "--out", "out/verify"]))
