"""Small helpers for machine-readable verification reports."""

import time

__all__ = ["Report", "describe_residual"]


def describe_residual(x, limit=3):
    """Short human-readable summary of a nonzero residual (matrix, vector or scalar)."""
    from .superlinalg import GradedMatrix

    if isinstance(x, GradedMatrix):
        items = list(x.items())[:limit]
        shown = ", ".join(f"({r + 1},{c + 1}): {v}" for (r, c), v in items)
        return f"{x.nnz()} nonzero entries; first {shown}"
    if isinstance(x, dict):
        items = sorted(x.items())[:limit]
        shown = ", ".join(f"[{k + 1}]: {v}" for k, v in items)
        return f"{len(x)} nonzero components; first {shown}"
    return str(x)


class Report:
    """Collects pass/fail records for one suite on one instance."""

    def __init__(self, instance, suite):
        self.instance = instance
        self.suite = suite
        self.checks = []
        self._t0 = time.perf_counter()
        self.wall_time = None

    def add(self, check_id, ok, ref="", residual=None):
        rec = {"id": check_id, "ref": ref, "status": "pass" if ok else "fail"}
        if not ok and residual is not None:
            rec["residual"] = describe_residual(residual)
        self.checks.append(rec)
        return ok

    def zero(self, check_id, value, ref=""):
        """Record a check whose residual must vanish."""
        if hasattr(value, "is_zero"):
            ok = value.is_zero()
        elif isinstance(value, dict):
            ok = not any(value.values())
        else:
            ok = not value
        return self.add(check_id, ok, ref, None if ok else value)

    def extend(self, other):
        self.checks.extend(other.checks)
        return self

    @property
    def ok(self):
        return all(c["status"] == "pass" for c in self.checks)

    def failures(self):
        return [c for c in self.checks if c["status"] != "pass"]

    def finish(self):
        self.wall_time = time.perf_counter() - self._t0
        return self

    def to_json(self):
        if self.wall_time is None:
            self.finish()
        return {
            "instance": self.instance,
            "suite": self.suite,
            "checks": self.checks,
            "wall_time": round(self.wall_time, 4),
            "status": "pass" if self.ok else "fail",
        }

    def __repr__(self):
        n_fail = len(self.failures())
        return f"Report({self.suite}, {len(self.checks)} checks, {n_fail} failed)"
