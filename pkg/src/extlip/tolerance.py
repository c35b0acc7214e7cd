import os

DEFAULT_TOL = 1e-9


def default_tol():
    """Absolute tolerance; ``EXTLIP_TOL`` overrides the built-in 1e-9."""
    raw = os.environ.get("EXTLIP_TOL")
    if raw is None or not raw.strip():
        return DEFAULT_TOL
    value = float(raw)
    if not value >= 0.0:
        raise ValueError(f"EXTLIP_TOL must be a non-negative number, got {raw!r}")
    return value


def resolve(tol):
    return default_tol() if tol is None else float(tol)
