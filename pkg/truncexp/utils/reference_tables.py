# flake8: noqa: E501
"""
Published simulation results for the 24-cell design, one entry per
(method, n, lambda, T): bias, MSE, average interval length and coverage (%),
5,000 replications each, alpha = 0.05, prior a = b = 0.001 for bayes.
"""

# Transcribed from the published tables; regenerate the markdown report with
# scripts/reproduce_reference_tables.py
reference_cells = [
    {"method": "unconditional", "n": 5, "lambda": 0.5, "T": 1.0, "bias": 0.074, "mse": 0.207, "length": 1.577, "cp": 97.36},
    {"method": "unconditional", "n": 5, "lambda": 0.5, "T": 2.0, "bias": 0.091, "mse": 0.166, "length": 1.253, "cp": 94.42},
    {"method": "unconditional", "n": 10, "lambda": 0.5, "T": 1.0, "bias": 0.033, "mse": 0.080, "length": 1.041, "cp": 94.10},
    {"method": "unconditional", "n": 10, "lambda": 0.5, "T": 2.0, "bias": 0.038, "mse": 0.055, "length": 0.825, "cp": 94.62},
    {"method": "unconditional", "n": 15, "lambda": 0.5, "T": 1.0, "bias": 0.020, "mse": 0.049, "length": 0.833, "cp": 94.86},
    {"method": "unconditional", "n": 15, "lambda": 0.5, "T": 2.0, "bias": 0.023, "mse": 0.033, "length": 0.659, "cp": 94.58},
    {"method": "unconditional", "n": 20, "lambda": 0.5, "T": 1.0, "bias": 0.015, "mse": 0.035, "length": 0.716, "cp": 94.86},
    {"method": "unconditional", "n": 20, "lambda": 0.5, "T": 2.0, "bias": 0.016, "mse": 0.023, "length": 0.565, "cp": 94.96},
    {"method": "unconditional", "n": 5, "lambda": 1.0, "T": 1.0, "bias": 0.182, "mse": 0.662, "length": 2.505, "cp": 94.42},
    {"method": "unconditional", "n": 5, "lambda": 1.0, "T": 2.0, "bias": 0.226, "mse": 0.619, "length": 2.240, "cp": 94.50},
    {"method": "unconditional", "n": 10, "lambda": 1.0, "T": 1.0, "bias": 0.076, "mse": 0.221, "length": 1.649, "cp": 94.62},
    {"method": "unconditional", "n": 10, "lambda": 1.0, "T": 2.0, "bias": 0.092, "mse": 0.181, "length": 1.434, "cp": 94.60},
    {"method": "unconditional", "n": 15, "lambda": 1.0, "T": 1.0, "bias": 0.046, "mse": 0.132, "length": 1.318, "cp": 94.58},
    {"method": "unconditional", "n": 15, "lambda": 1.0, "T": 2.0, "bias": 0.056, "mse": 0.104, "length": 1.139, "cp": 94.56},
    {"method": "unconditional", "n": 20, "lambda": 1.0, "T": 1.0, "bias": 0.032, "mse": 0.092, "length": 1.130, "cp": 94.98},
    {"method": "unconditional", "n": 20, "lambda": 1.0, "T": 2.0, "bias": 0.040, "mse": 0.071, "length": 0.974, "cp": 94.86},
    {"method": "unconditional", "n": 5, "lambda": 2.0, "T": 1.0, "bias": 0.452, "mse": 2.477, "length": 4.481, "cp": 94.50},
    {"method": "unconditional", "n": 5, "lambda": 2.0, "T": 2.0, "bias": 0.510, "mse": 2.428, "length": 4.351, "cp": 94.66},
    {"method": "unconditional", "n": 10, "lambda": 2.0, "T": 1.0, "bias": 0.183, "mse": 0.724, "length": 2.869, "cp": 94.60},
    {"method": "unconditional", "n": 10, "lambda": 2.0, "T": 2.0, "bias": 0.214, "mse": 0.688, "length": 2.742, "cp": 94.42},
    {"method": "unconditional", "n": 15, "lambda": 2.0, "T": 1.0, "bias": 0.112, "mse": 0.416, "length": 2.278, "cp": 94.56},
    {"method": "unconditional", "n": 15, "lambda": 2.0, "T": 2.0, "bias": 0.131, "mse": 0.390, "length": 2.162, "cp": 94.92},
    {"method": "unconditional", "n": 20, "lambda": 2.0, "T": 1.0, "bias": 0.081, "mse": 0.284, "length": 1.948, "cp": 94.86},
    {"method": "unconditional", "n": 20, "lambda": 2.0, "T": 2.0, "bias": 0.094, "mse": 0.260, "length": 1.843, "cp": 94.92},
    {"method": "conditional", "n": 5, "lambda": 0.5, "T": 1.0, "bias": 0.067, "mse": 0.185, "length": 1.398, "cp": 69.28},
    {"method": "conditional", "n": 5, "lambda": 0.5, "T": 2.0, "bias": 0.088, "mse": 0.156, "length": 1.241, "cp": 91.28},
    {"method": "conditional", "n": 10, "lambda": 0.5, "T": 1.0, "bias": 0.034, "mse": 0.072, "length": 1.037, "cp": 92.74},
    {"method": "conditional", "n": 10, "lambda": 0.5, "T": 2.0, "bias": 0.038, "mse": 0.055, "length": 0.826, "cp": 94.62},
    {"method": "conditional", "n": 15, "lambda": 0.5, "T": 1.0, "bias": 0.021, "mse": 0.048, "length": 0.837, "cp": 94.96},
    {"method": "conditional", "n": 15, "lambda": 0.5, "T": 2.0, "bias": 0.023, "mse": 0.033, "length": 0.659, "cp": 94.58},
    {"method": "conditional", "n": 20, "lambda": 0.5, "T": 1.0, "bias": 0.016, "mse": 0.035, "length": 0.718, "cp": 94.88},
    {"method": "conditional", "n": 20, "lambda": 0.5, "T": 2.0, "bias": 0.016, "mse": 0.023, "length": 0.565, "cp": 94.96},
    {"method": "conditional", "n": 5, "lambda": 1.0, "T": 1.0, "bias": 0.176, "mse": 0.623, "length": 2.482, "cp": 91.28},
    {"method": "conditional", "n": 5, "lambda": 1.0, "T": 2.0, "bias": 0.226, "mse": 0.618, "length": 2.245, "cp": 94.48},
    {"method": "conditional", "n": 10, "lambda": 1.0, "T": 1.0, "bias": 0.076, "mse": 0.219, "length": 1.652, "cp": 94.62},
    {"method": "conditional", "n": 10, "lambda": 1.0, "T": 2.0, "bias": 0.092, "mse": 0.181, "length": 1.435, "cp": 94.60},
    {"method": "conditional", "n": 15, "lambda": 1.0, "T": 1.0, "bias": 0.046, "mse": 0.132, "length": 1.318, "cp": 94.58},
    {"method": "conditional", "n": 15, "lambda": 1.0, "T": 2.0, "bias": 0.056, "mse": 0.104, "length": 1.139, "cp": 94.56},
    {"method": "conditional", "n": 20, "lambda": 1.0, "T": 1.0, "bias": 0.032, "mse": 0.092, "length": 1.130, "cp": 94.98},
    {"method": "conditional", "n": 20, "lambda": 1.0, "T": 2.0, "bias": 0.040, "mse": 0.071, "length": 0.974, "cp": 94.86},
    {"method": "conditional", "n": 5, "lambda": 2.0, "T": 1.0, "bias": 0.452, "mse": 2.471, "length": 4.490, "cp": 94.48},
    {"method": "conditional", "n": 5, "lambda": 2.0, "T": 2.0, "bias": 0.510, "mse": 2.428, "length": 4.352, "cp": 94.66},
    {"method": "conditional", "n": 10, "lambda": 2.0, "T": 1.0, "bias": 0.184, "mse": 0.724, "length": 2.869, "cp": 94.60},
    {"method": "conditional", "n": 10, "lambda": 2.0, "T": 2.0, "bias": 0.214, "mse": 0.688, "length": 2.742, "cp": 94.42},
    {"method": "conditional", "n": 15, "lambda": 2.0, "T": 1.0, "bias": 0.112, "mse": 0.416, "length": 2.278, "cp": 94.56},
    {"method": "conditional", "n": 15, "lambda": 2.0, "T": 2.0, "bias": 0.131, "mse": 0.390, "length": 2.162, "cp": 94.92},
    {"method": "conditional", "n": 20, "lambda": 2.0, "T": 1.0, "bias": 0.081, "mse": 0.284, "length": 1.948, "cp": 94.86},
    {"method": "conditional", "n": 20, "lambda": 2.0, "T": 2.0, "bias": 0.094, "mse": 0.260, "length": 1.843, "cp": 94.92},
    {"method": "bayes", "n": 5, "lambda": 0.5, "T": 1.0, "bias": 0.074, "mse": 0.207, "length": 1.390, "cp": 89.36},
    {"method": "bayes", "n": 5, "lambda": 0.5, "T": 2.0, "bias": 0.091, "mse": 0.166, "length": 1.202, "cp": 90.42},
    {"method": "bayes", "n": 10, "lambda": 0.5, "T": 1.0, "bias": 0.033, "mse": 0.080, "length": 0.985, "cp": 92.36},
    {"method": "bayes", "n": 10, "lambda": 0.5, "T": 2.0, "bias": 0.038, "mse": 0.055, "length": 0.807, "cp": 93.78},
    {"method": "bayes", "n": 15, "lambda": 0.5, "T": 1.0, "bias": 0.020, "mse": 0.049, "length": 0.804, "cp": 94.94},
    {"method": "bayes", "n": 15, "lambda": 0.5, "T": 2.0, "bias": 0.023, "mse": 0.033, "length": 0.649, "cp": 93.76},
    {"method": "bayes", "n": 20, "lambda": 0.5, "T": 1.0, "bias": 0.015, "mse": 0.035, "length": 0.697, "cp": 93.28},
    {"method": "bayes", "n": 20, "lambda": 0.5, "T": 2.0, "bias": 0.016, "mse": 0.023, "length": 0.559, "cp": 94.28},
    {"method": "bayes", "n": 5, "lambda": 1.0, "T": 1.0, "bias": 0.182, "mse": 0.662, "length": 2.404, "cp": 90.42},
    {"method": "bayes", "n": 5, "lambda": 1.0, "T": 2.0, "bias": 0.226, "mse": 0.619, "length": 2.212, "cp": 93.54},
    {"method": "bayes", "n": 10, "lambda": 1.0, "T": 1.0, "bias": 0.076, "mse": 0.221, "length": 1.614, "cp": 93.78},
    {"method": "bayes", "n": 10, "lambda": 1.0, "T": 2.0, "bias": 0.092, "mse": 0.181, "length": 1.424, "cp": 94.04},
    {"method": "bayes", "n": 15, "lambda": 1.0, "T": 1.0, "bias": 0.046, "mse": 0.132, "length": 1.299, "cp": 93.76},
    {"method": "bayes", "n": 15, "lambda": 1.0, "T": 2.0, "bias": 0.056, "mse": 0.104, "length": 1.134, "cp": 94.04},
    {"method": "bayes", "n": 20, "lambda": 1.0, "T": 1.0, "bias": 0.032, "mse": 0.092, "length": 1.117, "cp": 94.28},
    {"method": "bayes", "n": 20, "lambda": 1.0, "T": 2.0, "bias": 0.040, "mse": 0.071, "length": 0.970, "cp": 94.58},
    {"method": "bayes", "n": 5, "lambda": 2.0, "T": 1.0, "bias": 0.452, "mse": 2.477, "length": 4.422, "cp": 93.54},
    {"method": "bayes", "n": 5, "lambda": 2.0, "T": 2.0, "bias": 0.510, "mse": 2.428, "length": 4.343, "cp": 94.46},
    {"method": "bayes", "n": 10, "lambda": 2.0, "T": 1.0, "bias": 0.183, "mse": 0.724, "length": 2.849, "cp": 94.04},
    {"method": "bayes", "n": 10, "lambda": 2.0, "T": 2.0, "bias": 0.214, "mse": 0.688, "length": 2.738, "cp": 94.26},
    {"method": "bayes", "n": 15, "lambda": 2.0, "T": 1.0, "bias": 0.112, "mse": 0.416, "length": 2.267, "cp": 94.06},
    {"method": "bayes", "n": 15, "lambda": 2.0, "T": 2.0, "bias": 0.131, "mse": 0.390, "length": 2.161, "cp": 94.76},
    {"method": "bayes", "n": 20, "lambda": 2.0, "T": 1.0, "bias": 0.081, "mse": 0.284, "length": 1.941, "cp": 94.58},
    {"method": "bayes", "n": 20, "lambda": 2.0, "T": 2.0, "bias": 0.094, "mse": 0.260, "length": 1.842, "cp": 94.80},
]


# acceptance tolerances: coverage in percentage points, length and MSE relative, bias absolute
CP_TOLERANCE = 1.0
CP_TOLERANCE_SMALL_CONDITIONAL = 2.0
LENGTH_REL_TOLERANCE = 0.02
BIAS_ABS_TOLERANCE = 0.02
MSE_REL_TOLERANCE = 0.10

# the conditional method's degraded-coverage cell
SMALL_CONDITIONAL_CELL = ("conditional", 5, 0.5, 1.0)

# Published coverage that the exact unconditional interval cannot attain. With
# n=5, lambda=0.5, T=1, P(D = 0) = e^(-2.5) and the D = 0 interval (0, 0.0103]
# never holds 0.5, so coverage is at most 100 (1 - e^(-2.5)) = 91.79.
KNOWN_DEVIATIONS = {
    ("unconditional", 5, 0.5, 1.0): {
        "cp": "published 97.36 exceeds the attainable 91.79: the D = 0 interval never covers",
    },
}


def find_reference(method, n, lam, T):
    """The published entry for one cell, or None if the cell is not in the design."""
    for cell in reference_cells:
        if (cell["method"], cell["n"], cell["lambda"], cell["T"]) == (method, n, lam, T):
            return cell
    return None


def compare_with_reference(summary):
    """
    Check a SimSummary against the published cell.

    Returns None for cells outside the design, otherwise a dict with the
    reference values, the deviations, a list of failed checks and the
    explained deviations. A check listed in KNOWN_DEVIATIONS for the cell is
    reported under "known" instead of "failures".
    """
    key = (summary.method, summary.n, summary.lambda_true, summary.T)
    reference = find_reference(*key)
    if reference is None:
        return None

    cp_tolerance = CP_TOLERANCE_SMALL_CONDITIONAL if key == SMALL_CONDITIONAL_CELL else CP_TOLERANCE
    deviations = {
        "bias": summary.bias - reference["bias"],
        "mse": summary.mse / reference["mse"] - 1.0,
        "length": summary.avg_length / reference["length"] - 1.0,
        "cp": summary.coverage_pct - reference["cp"],
    }
    limits = {
        "bias": BIAS_ABS_TOLERANCE,
        "mse": MSE_REL_TOLERANCE,
        "length": LENGTH_REL_TOLERANCE,
        "cp": cp_tolerance,
    }
    explained = KNOWN_DEVIATIONS.get(key, {})
    failures = []
    known = []
    for name in ("bias", "mse", "length", "cp"):
        # NaN deviations fail too
        if abs(deviations[name]) <= limits[name]:
            continue
        message = f"{name} off by {deviations[name]:+.4g} (limit {limits[name]:g})"
        if name in explained:
            known.append(f"{message}: {explained[name]}")
        else:
            failures.append(message)
    return {
        "reference": reference,
        "deviations": deviations,
        "failures": failures,
        "known": known,
    }
