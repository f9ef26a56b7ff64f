"""Full reproduction report: every checked quantity with its expected value.

The report is a plain JSON-compatible dict whose floats are rounded to 12
significant digits at construction, so ``Report.from_json(r.to_json()) == r``
holds exactly and output is byte-stable across runs.
"""
from dataclasses import dataclass
import json
import math

from . import _backend
from .audit import e_principle_audit, quantum_model, with_london_override
from .events import london_events, paris_events, slp_events
from .graphs import apply_permutation, complement, from_events, independence_number, is_isomorphic
from .quantum import (
    london_distribution,
    london_model,
    overlap_sum,
    paris_model,
    paris_state,
    paris_vectors,
    verify_orthogonal_representation,
)
from .theta import SdpSettings, lovasz_theta, verify_witness

MACHINE_DIGITS = 12
HUMAN_DIGITS = 6

SQRT2 = math.sqrt(2.0)
EXPECTED = {
    "chsh_classical_bound": 3,
    "nc_classical_bound": 2,
    "p_l": (2 + SQRT2) / 8,
    "s_l": 2 + SQRT2,
    "p_p": 1 - 1 / SQRT2,
    "s_p": 8 - 4 * SQRT2,
    "s_lp": 1.0,
}


def num(x, digits=MACHINE_DIGITS):
    return float(f"{x:.{digits}g}")


def _entry(value, expected, claim, tol=None):
    entry = {"value": value, "expected": expected, "claim": claim}
    if tol is not None:
        entry["tolerance"] = tol
        entry["ok"] = abs(value - expected) <= tol
    return entry


def _worst(values, expected):
    return max(values, key=lambda v: abs(v - expected))


def reproduce(settings=None, pl_override=None):
    """Run every check and collect the results as a nested dict."""
    settings = settings or SdpSettings()
    g_l = from_events(london_events())
    g_p = from_events(paris_events())

    alpha_l, wit_l = independence_number(g_l)
    alpha_p, wit_p = independence_number(g_p)

    th_l = lovasz_theta(g_l, settings)
    th_p = lovasz_theta(g_p, settings)
    chk_l = verify_witness(g_l, th_l)
    chk_p = verify_witness(g_p, th_p)

    perm = is_isomorphic(complement(g_p), g_l)
    perm_ok = perm is not None and apply_permutation(complement(g_p), perm).adj == g_l.adj

    lon = london_model()
    full = london_distribution()
    norm_err = max(
        abs(math.fsum(p for (a, b, i, j), p in full.items() if (i, j) == ctx) - 1.0)
        for ctx in ((0, 0), (0, 1), (1, 0), (1, 1))
    )
    par = paris_model()
    rep = verify_orthogonal_representation(paris_vectors(), g_p)
    overlaps = overlap_sum(paris_state(), paris_vectors())

    model = quantum_model()
    audit = e_principle_audit(model)
    counterfactual = None
    if pl_override is not None:
        counterfactual = e_principle_audit(with_london_override(model, pl_override))

    data = {
        "backend": _backend.NAME,
        "classical_bounds": {
            "chsh": {
                **_entry(alpha_l, EXPECTED["chsh_classical_bound"], "local hidden variable bound of the CHSH sum"),
                "witness": list(wit_l),
            },
            "nc": {
                **_entry(alpha_p, EXPECTED["nc_classical_bound"], "noncontextual bound of the 8-cycle NC sum"),
                "witness": list(wit_p),
            },
        },
        "quantum_bounds": {
            "chsh_theta": {
                **_entry(num(th_l.value), num(EXPECTED["s_l"]), "Tsirelson bound as Lovasz number", 1e-5),
                "iterations": th_l.iterations,
                "primal_residual": num(th_l.primal_residual),
                "dual_residual": num(th_l.dual_residual),
                "witness_verified": chk_l.passed,
            },
            "nc_theta": {
                **_entry(num(th_p.value), num(EXPECTED["s_p"]), "NC quantum maximum as Lovasz number", 1e-5),
                "iterations": th_p.iterations,
                "primal_residual": num(th_p.primal_residual),
                "dual_residual": num(th_p.dual_residual),
                "witness_verified": chk_p.passed,
            },
            "theta_product": _entry(num(th_l.value * th_p.value), 8.0, "theta(G) * theta(complement G) = n", 1e-4),
            "note": "theta is the quantum bound for these two graphs only",
        },
        "complement_isomorphism": {
            "permutation": None if perm is None else list(perm),
            "verified": perm_ok,
            "claim": "NC exclusivity graph is the complement of the CHSH exclusivity graph",
        },
        "london": {
            "events": {str(ev): num(p) for ev, p in lon.probabilities.items()},
            "p_l": _entry(num(_worst(lon.probabilities.values(), EXPECTED["p_l"])), num(EXPECTED["p_l"]), "each CHSH event probability", 1e-12),
            "s_l": _entry(num(lon.s_value), num(EXPECTED["s_l"]), "Tsirelson bound", 1e-11),
            "max_normalization_error": num(norm_err),
        },
        "paris": {
            "contexts": [
                {
                    "event": str(ev),
                    "probability": num(p),
                    "orderings": [{"order": list(o), "probability": num(q)} for o, q in rows],
                }
                for ev, p, rows in zip(paris_events(), par.values, par.orderings)
            ],
            "p_p": _entry(num(_worst(par.values, EXPECTED["p_p"])), num(EXPECTED["p_p"]), "each NC event probability", 1e-9),
            "s_p": _entry(num(par.s_value), num(EXPECTED["s_p"]), "NC quantum maximum", 1e-8),
            "max_ordering_spread": num(max(max(q for _, q in r) - min(q for _, q in r) for r in par.orderings)),
        },
        "representation": {
            "worst_edge_inner_product": num(rep.worst_edge),
            "gram_rank": rep.gram_rank,
            "max_norm_error": num(max(rep.norm_errors)),
            "overlap_sum": _entry(num(overlaps), num(par.s_value), "sum of |<psi|v_i>|^2 equals the NC sum", 1e-12),
        },
        "joint": {
            "events": [str(e) for e in slp_events()],
            "s_lp": _entry(num(audit.s_lp), EXPECTED["s_lp"], "pairwise-exclusive joint events saturate the bound", 1e-9),
            "audit": _rounded(audit.to_dict()),
        },
    }
    if counterfactual is not None:
        data["counterfactual"] = {
            "p_l": num(pl_override),
            "assumes_uniform_chsh_table": True,
            "audit": _rounded(counterfactual.to_dict()),
        }
    return data


def _rounded(obj, digits=MACHINE_DIGITS):
    if isinstance(obj, float):
        return num(obj, digits)
    if isinstance(obj, dict):
        return {k: _rounded(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_rounded(v, digits) for v in obj]
    return obj


@dataclass(frozen=True)
class Report:
    data: dict

    def to_json(self):
        return json.dumps(self.data, indent=2) + "\n"

    @classmethod
    def from_json(cls, text):
        return cls(json.loads(text))

    def to_table(self):
        return format_table(_flatten(_rounded(self.data, HUMAN_DIGITS)))


def generate_report(settings=None, pl_override=None):
    return Report(reproduce(settings, pl_override))


def _flatten(obj, prefix=""):
    rows = []
    if isinstance(obj, dict):
        if "value" in obj and "expected" in obj:
            status = "" if "ok" not in obj else ("ok" if obj["ok"] else "FAIL")
            rows.append((prefix, _fmt(obj["value"]), _fmt(obj["expected"]), status))
            for k, v in obj.items():
                if k not in ("value", "expected", "claim", "ok", "tolerance"):
                    rows.extend(_flatten(v, f"{prefix}.{k}"))
            return rows
        for k, v in obj.items():
            rows.extend(_flatten(v, f"{prefix}.{k}" if prefix else k))
        return rows
    if isinstance(obj, list) and obj and isinstance(obj[0], dict):
        for i, v in enumerate(obj):
            rows.extend(_flatten(v, f"{prefix}[{i}]"))
        return rows
    rows.append((prefix, _fmt(obj), "", ""))
    return rows


def _fmt(v, width=48):
    if isinstance(v, list):
        text = "[" + ",".join(_fmt(x) for x in v) + "]"
        return text if len(text) <= width else f"[{len(v)} items]"
    if isinstance(v, float):
        return f"{v:.{HUMAN_DIGITS}g}"
    return str(v)


def format_table(rows, header=("quantity", "value", "expected", "status")):
    rows = [tuple(header)] + [tuple(r) for r in rows]
    widths = [max(len(r[k]) for r in rows) for k in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"
