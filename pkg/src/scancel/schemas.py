"""JSON Schemas for everything the CLI prints with ``--json``."""

RATIONAL = {"type": "string", "pattern": r"^-?\d+/\d+$"}
WORD = {"type": "string", "minLength": 1}
ORIGIN = {
    "type": "array",
    "prefixItems": [{"type": "integer"}, {"type": "integer"}, {"type": "boolean"}],
    "minItems": 3,
    "maxItems": 3,
}

PIECE_REPORT = {
    "type": "object",
    "required": ["lambda", "holds", "max_ratio", "per_relator", "violation"],
    "properties": {
        "lambda": RATIONAL,
        "holds": {"type": "boolean"},
        "max_ratio": RATIONAL,
        "max_piece": {"type": "integer", "minimum": 0},
        "symmetrized_size": {"type": "integer", "minimum": 0},
        "per_relator": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["relator", "length", "max_piece", "piece", "member", "partner"],
                "properties": {
                    "relator": {"type": "integer", "minimum": 0},
                    "length": {"type": "integer", "minimum": 1},
                    "max_piece": {"type": "integer", "minimum": 0},
                    "piece": WORD,
                    "member": WORD,
                    "partner": {"anyOf": [WORD, {"type": "null"}]},
                },
            },
        },
        "violation": {
            "anyOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["member", "piece", "partner"],
                    "properties": {
                        "member": WORD,
                        "piece": WORD,
                        "partner": WORD,
                        "member_origin": ORIGIN,
                        "partner_origin": ORIGIN,
                    },
                },
            ]
        },
    },
}

TRACE = {
    "type": "object",
    "required": ["initial", "final", "trivial", "steps"],
    "properties": {
        "initial": WORD,
        "final": WORD,
        "trivial": {"type": "boolean"},
        "steps": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["kind", "position", "removed", "inserted", "member_origin"],
                "properties": {
                    "kind": {"enum": ["free-cancel", "cyclic-rotate", "relator-replace"]},
                    "position": {"type": "integer", "minimum": 0},
                    "removed": WORD,
                    "inserted": WORD,
                    "member_origin": {"anyOf": [ORIGIN, {"type": "null"}]},
                },
            },
        },
    },
}

SOLVE = {
    "type": "object",
    "required": ["refused"],
    "oneOf": [
        {
            "properties": {
                "refused": {"const": False},
                "verdict": {"enum": ["trivial", "nontrivial"]},
                "replace_steps": {"type": "integer", "minimum": 0},
                "trace": TRACE,
            },
            "required": ["verdict", "replace_steps", "trace"],
        },
        {
            "properties": {"refused": {"const": True}, "certificate": PIECE_REPORT},
            "required": ["certificate"],
        },
    ],
}

ASPHERICITY = {
    "type": "object",
    "required": ["c_prime_one_fifth", "concise", "no_proper_powers", "all", "annotations"],
    "properties": {
        "c_prime_one_fifth": {"type": "boolean"},
        "concise": {"type": "boolean"},
        "no_proper_powers": {"type": "boolean"},
        "all": {"type": "boolean"},
        "annotations": {
            "type": "object",
            "properties": {
                "torsion_free": {"type": ["boolean", "null"]},
                "hyperbolic": {"type": ["boolean", "null"]},
            },
        },
    },
}

INDEPENDENCE_REPORT = {
    "type": "object",
    "required": [
        "kind", "n", "ok", "c_prime_sixth_on_S", "c_prime_sixth_on_R",
        "singular_asphericity", "truth_table", "matches_membership", "derived_attributes",
    ],
    "properties": {
        "kind": {"const": "independence"},
        "n": {"type": "integer", "minimum": 1},
        "ok": {"type": "boolean"},
        "c_prime_sixth_on_S": PIECE_REPORT,
        "c_prime_sixth_on_R": PIECE_REPORT,
        "singular_asphericity": ASPHERICITY,
        "relator_lengths": {"type": "array", "items": {"type": "integer"}},
        "truth_table": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["i", "sigma", "b", "trivial", "expected", "replace_steps"],
                "properties": {
                    "i": {"type": "integer", "minimum": 1},
                    "sigma": {"type": "integer", "minimum": 0},
                    "b": {"type": "string"},
                    "trivial": {"type": "boolean"},
                    "expected": {"type": "boolean"},
                    "replace_steps": {"type": "integer", "minimum": 0},
                },
            },
        },
        "matches_membership": {"type": "boolean"},
        "derived_attributes": {"type": "object"},
    },
}

SOP_REPORT = {
    "type": "object",
    "required": ["kind", "n", "ok", "c_prime_sixth", "truth_table", "true_entries", "matches_cycle"],
    "properties": {
        "kind": {"const": "sop"},
        "n": {"type": "integer", "minimum": 3},
        "ok": {"type": "boolean"},
        "c_prime_sixth": PIECE_REPORT,
        "refused": {"type": "boolean"},
        "truth_table": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["i", "j", "trivial", "expected", "replace_steps"],
            },
        },
        "true_entries": {"type": "integer", "minimum": 0},
        "matches_cycle": {"type": "boolean"},
    },
}

GEN = {
    "type": "object",
    "required": ["kind", "n", "files"],
    "properties": {
        "kind": {"enum": ["independence", "sop"]},
        "n": {"type": "integer"},
        "files": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "path", "relators"],
                "properties": {
                    "label": {"type": "string"},
                    "path": {"type": "string"},
                    "relators": {"type": "integer", "minimum": 0},
                },
            },
        },
    },
}

RANDLAB = {
    "type": "object",
    "required": ["estimate", "ok"],
    "properties": {
        "ok": {"type": "boolean"},
        "estimate": {
            "type": "object",
            "required": [
                "n", "lambda", "trials", "seed", "empirical_success_rate",
                "paper_bound", "per_event_rates", "implication_failures",
            ],
            "properties": {
                "n": {"type": "integer", "minimum": 2},
                "lambda": RATIONAL,
                "trials": {"type": "integer", "minimum": 1},
                "seed": {"type": "integer", "minimum": 0},
                "family_n": {"type": "integer", "minimum": 1},
                "threshold": {"type": "integer", "minimum": 1},
                "successes": {"type": "integer", "minimum": 0},
                "empirical_success_rate": {"type": "number", "minimum": 0, "maximum": 1},
                "paper_bound": {"type": "number", "minimum": 0, "maximum": 1},
                "meets_bound": {"type": "boolean"},
                "per_event_rates": {
                    "type": "object",
                    "required": ["overlap", "syllable", "direct_c_prime_ok"],
                },
                "implication_failures": {"type": "array", "items": {"type": "integer"}},
            },
        },
        "exact_54": {
            "type": "object",
            "required": ["total", "bad", "ratio", "within_bound"],
            "properties": {"ratio": RATIONAL, "within_bound": {"type": "boolean"}},
        },
    },
}

ERROR = {"type": "object", "required": ["error"], "properties": {"error": {"type": "string"}}}

BY_COMMAND = {
    "check": PIECE_REPORT,
    "solve": SOLVE,
    "gen": GEN,
    "verify independence": INDEPENDENCE_REPORT,
    "verify sop": SOP_REPORT,
    "randlab": RANDLAB,
}
