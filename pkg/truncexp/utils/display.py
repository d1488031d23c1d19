def get_display_name(tag: str) -> str:
    """Get display name for an interval method or joint-set model tag."""
    display_names = {
        "unconditional": "CI (unconditional)",
        "conditional": "CI (conditional on D > 0)",
        "bayes": "CRI (gamma prior)",
        "two-param-exponential": "Two-parameter exponential",
        "weibull": "Weibull",
        "generalized-exponential": "Generalized exponential",
    }

    return display_names.get(tag, tag.replace("-", " ").replace("_", " ").title())
