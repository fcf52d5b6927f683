"""
The ncquad command
==================

The same computations from a shell.  This script just runs the installed
entry point; copy the argument lists into a terminal to use them directly.
"""

import subprocess
import sys


def ncquad(*args):
    cmd = [sys.executable, "-m", "ncquad.cli", *args]
    print("$ ncquad", " ".join(args))
    done = subprocess.run(cmd, capture_output=True, text=True)
    print(done.stdout + done.stderr, "exit code", done.returncode, "\n")


# One panel of the two-point rule.
ncquad("integrate", "-f", "sqrt(x)", "-a", "0", "-b", "0.1", "-n", "2", "--panels", "1")

# A composite run with a reference value, which adds the true error and a
# verdict.  Reference values are read as decimal text at full precision.
ncquad("integrate", "-f", "1/ln(x)", "-a", "100000", "-b", "200000", "-n", "3", "--step", "5",
       "-p", "32", "--reference", "8406.2431208462027086216460436947")

# Several steps at once; without -b each step is integrated over one panel
# [a, a + (n-1)h] and the antiderivative supplies the exact value per row.
ncquad("sweep", "-f", "exp(-x^2)", "-a", "0", "-n", "3", "-p", "30",
       "--step", "1/2", "--step", "1/4", "--step", "1/8", "--step", "1/16",
       "--antiderivative", "sqrt(pi)/2*erf(x)", "--format", "csv")

# Exact weights.
ncquad("weights", "5")

# The validity check for the estimate.
ncquad("gcheck", "-f", "sin(2*x)", "-a", "0", "-b", "pi/5", "-n", "5", "--step", "1/8")

# f[x1, x2] = 0 on the panel: S is still reported, the estimate is not, exit code 3.
ncquad("integrate", "-f", "(x-0.5)^2", "-a", "0", "-b", "2", "-n", "3", "--panels", "1")
