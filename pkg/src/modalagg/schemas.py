"""JSON Schemas for every document the command line emits."""

_ints = {"type": "array", "items": {"type": "integer", "minimum": 0}}
_bool = {"type": "boolean"}

FRAME = {
    "type": "object",
    "required": ["kind", "r", "k", "A"],
    "properties": {
        "kind": {"enum": [1, 2]},
        "r": {"type": "integer", "minimum": 2},
        "k": {"type": "integer", "minimum": 1},
        "A": _ints,
    },
    "additionalProperties": False,
}

PAIR = {
    "type": "object",
    "required": ["accept", "reject"],
    "properties": {"accept": _ints, "reject": _ints, "consistent": _bool},
    "additionalProperties": False,
}

_pair_or_null = {"oneOf": [PAIR, {"type": "null"}]}

PROFILE = {
    "type": "object",
    "required": ["n"],
    "properties": {
        "n": {"type": "integer", "minimum": 2},
        "counts": _ints,
        "judgments": {"type": "array", "items": PAIR},
    },
    "oneOf": [{"required": ["counts"]}, {"required": ["judgments"]}],
    "additionalProperties": False,
}

CHECK_FRAME = {
    "type": "object",
    "required": [
        "frame", "params", "agenda_reducible", "agenda_indices_complete", "minimally_connected",
        "strongly_path_connected", "unconnected_pair", "lt0_edge_count", "impossibility_frame",
    ],
    "properties": {
        "frame": FRAME,
        "params": {"type": "object", "additionalProperties": _bool},
        "agenda_reducible": _bool,
        "agenda_indices_complete": _bool,
        "minimally_connected": _bool,
        "strongly_path_connected": _bool,
        "unconnected_pair": {"oneOf": [{"type": "null"}, {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}]},
        "lt0_edge_count": {"type": "integer", "minimum": 0},
        "impossibility_frame": _bool,
        "min_inconsistent_witness": _pair_or_null,
        "lt0_edges": {"type": "array", "items": {"type": "object"}},
        "chain_lengths": {"oneOf": [{"type": "null"}, {"type": "array", "items": {"type": "array"}}]},
    },
    "additionalProperties": False,
}

CONSISTENT = {
    "type": "object",
    "required": ["frame", "accept", "reject", "consistent"],
    "properties": {"frame": FRAME, "accept": _ints, "reject": _ints, "consistent": _bool, "completion": _pair_or_null},
    "additionalProperties": False,
}

REDUCE = {
    "type": "object",
    "required": ["frame", "formula", "proposition"],
    "properties": {
        "frame": FRAME,
        "formula": {"type": "string", "pattern": "^!?[BD]*p$"},
        "proposition": {
            "type": "object",
            "required": ["index", "negated", "text"],
            "properties": {"index": {"type": "integer", "minimum": 0}, "negated": _bool, "text": {"type": "string"}},
        },
        "valuation": {"type": "array"},
        "evaluation": {
            "type": "object",
            "required": ["direct", "reduced", "agree"],
            "properties": {"direct": _bool, "reduced": _bool, "agree": _bool},
        },
    },
    "additionalProperties": False,
}

AGGREGATE = {
    "type": "object",
    "required": ["frame", "method", "n", "accept", "reject", "consistent"],
    "properties": {
        "frame": FRAME,
        "method": {"enum": ["horn", "seqmaj"]},
        "n": {"type": "integer", "minimum": 2},
        "seed": {"type": "integer"},
        "counts": _ints,
        "valuation": _ints,
        "strategy": {"enum": ["reference", "general", "interval"]},
        "ops": {"type": "integer", "minimum": 0},
        "trace": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["issue", "rule", "accepted"],
                "properties": {"issue": {"type": "integer"}, "rule": {"enum": ["a", "b", "c"]}, "accepted": _bool},
                "additionalProperties": False,
            },
        },
        "accept": _ints,
        "reject": _ints,
        "consistent": _bool,
    },
    "additionalProperties": False,
}

_axiom = {"type": "object", "required": ["holds"], "properties": {"holds": _bool}}

ORACLE = {
    "type": "object",
    "required": ["frame", "check"],
    "properties": {
        "frame": FRAME,
        "check": {"enum": ["consistent", "min-inconsistent", "lt0", "rational-sets", "axioms", "paradox"]},
        "accept": _ints,
        "reject": _ints,
        "brute": _bool,
        "fast": _bool,
        "agree": _bool,
        "u": {"type": "integer"},
        "v": {"type": "integer"},
        "holds": _bool,
        "context": {"oneOf": [{"type": "null"}, {"type": "array"}]},
        "count": {"type": "integer"},
        "sets": {"type": "array", "items": _ints},
        "rule": {"enum": ["dictator", "majority", "seqmaj"]},
        "n": {"type": "integer"},
        "report": {
            "type": "object",
            "required": ["unanimity", "independence", "pn_neutrality", "dictatorship", "rationality_closure"],
            "properties": {
                "unanimity": _axiom,
                "independence": _axiom,
                "pn_neutrality": _axiom,
                "dictatorship": _axiom,
                "rationality_closure": _axiom,
                "profiles_checked": {"type": "integer"},
            },
        },
        "profile": PROFILE,
        "core": PAIR,
        "majority": PAIR,
    },
    "additionalProperties": False,
}

BENCH = {
    "type": "object",
    "required": ["seed", "n", "points", "fits"],
    "properties": {
        "seed": {"type": ["integer", "null"]},
        "n": {"type": "integer"},
        "points": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["r", "k", "strategy", "trials", "ops_mean"],
                "properties": {
                    "r": {"type": "integer"},
                    "k": {"type": "integer"},
                    "strategy": {"type": "string"},
                    "trials": {"type": "integer"},
                    "ops_mean": {"type": "number"},
                    "seconds_mean": {"type": "number"},
                },
                "additionalProperties": False,
            },
        },
        "fits": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["strategy", "k", "exponent"],
                "properties": {"strategy": {"type": "string"}, "k": {"type": "integer"}, "exponent": {"type": "number"}},
            },
        },
    },
    "additionalProperties": False,
}

BY_COMMAND = {
    "check-frame": CHECK_FRAME,
    "consistent": CONSISTENT,
    "reduce": REDUCE,
    "aggregate": AGGREGATE,
    "oracle": ORACLE,
    "bench": BENCH,
}
