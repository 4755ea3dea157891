"""JSON Schemas for the machine-readable reports (draft 2020-12)."""

MOTIVE = {
    "type": "object",
    "patternProperties": {r"^-?\d+$": {"type": "integer", "not": {"const": 0}}},
    "additionalProperties": False,
}

AUTOMORPHY = {
    "oneOf": [
        {
            "type": "object",
            "properties": {"C": {"enum": [1, -1]}, "D": {"type": "integer"}},
            "required": ["C", "D"],
            "additionalProperties": False,
        },
        {"enum": ["degenerate", "none"]},
    ]
}

ORDER = {"oneOf": [{"type": "integer", "minimum": 0}, {"const": "infinite"}]}

SINE_PRODUCT = {
    "type": "object",
    "properties": {
        "sign": {"enum": [1, -1]},
        "levels": {"type": "object", "patternProperties": {r"^[1-9]\d*$": MOTIVE}, "additionalProperties": False},
    },
    "required": ["sign", "levels"],
}

REDUCTION_STEP = {
    "type": "object",
    "properties": {
        "level": {"type": "integer", "minimum": 1},
        "quotient": MOTIVE,
        "residue": {"type": "integer"},
        "sign_contribution": {"enum": [1, -1]},
    },
    "required": ["level", "quotient", "residue", "sign_contribution"],
}

NORMAL_FORM = {
    "type": "object",
    "properties": {
        "sign": {"enum": [1, -1]},
        "residues": {
            "type": "object",
            "patternProperties": {r"^[1-9]\d*$": {"type": "integer", "not": {"const": 0}}},
            "additionalProperties": False,
        },
        "trace": {"type": "array", "items": REDUCTION_STEP},
    },
    "required": ["sign", "residues", "trace"],
}

SPACE = {
    "type": "object",
    "properties": {
        "family": {"enum": ["SO_1_2n", "SU_1_n", "Sp_1_n", "F4"]},
        "n": {"type": ["integer", "null"], "minimum": 1},
        "vol": {"type": "integer", "minimum": 1},
        "dim": {"type": "integer", "minimum": 2, "multipleOf": 2},
        "level": {"type": "integer", "minimum": 2},
        "rho2": {"type": "integer", "minimum": 1},
    },
    "required": ["family", "n", "vol", "dim", "level", "rho2"],
}

SPACE_INFO = {
    "type": "object",
    "properties": {
        **SPACE["properties"],
        "exponents": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
        "outer": {"type": "integer"},
        "parity": {"enum": ["even", "odd"]},
    },
    "required": SPACE["required"] + ["exponents", "outer", "parity"],
    "additionalProperties": False,
}

CERTIFICATE = {
    "type": "object",
    "properties": {
        "space": SPACE,
        "motive": MOTIVE,
        "motive_text": {"type": "string"},
        "automorphy": AUTOMORPHY,
        "order": ORDER,
        "quotient": {"oneOf": [MOTIVE, {"type": "null"}]},
        "level_constant": {"enum": [1, -1, "not_constant", None]},
        "normal_form": NORMAL_FORM,
        "reflection": {
            "oneOf": [
                {
                    "type": "object",
                    "properties": {"C": {"enum": [1, -1]}, "point": {"type": "integer"}},
                    "required": ["C", "point"],
                },
                {"type": "null"},
            ]
        },
        "numeric": {
            "oneOf": [
                {
                    "type": "object",
                    "properties": {
                        "samples": {
                            "type": "array",
                            "items": {
                                "type": "object",
                                "properties": {
                                    "s_re": {"type": "number"},
                                    "s_im": {"type": "number"},
                                    "residual": {"type": "number", "minimum": 0},
                                },
                                "required": ["s_re", "s_im", "residual"],
                            },
                        },
                        "max_residual": {"type": "number", "minimum": 0},
                    },
                    "required": ["samples", "max_residual"],
                },
                {"type": "null"},
            ]
        },
        "verdict": {"enum": ["simple_fe", "gamma_fe_only", "not_automorphic"]},
    },
    "required": [
        "space",
        "motive",
        "automorphy",
        "order",
        "quotient",
        "normal_form",
        "reflection",
        "numeric",
        "verdict",
    ],
}

EVAL_RESULT = {
    "type": "object",
    "properties": {
        "value_re": {"type": "number"},
        "value_im": {"type": "number"},
        "err_est": {"type": "number", "minimum": 0},
    },
    "required": ["value_re", "value_im", "err_est"],
}

SUITE_REPORT = {
    "type": "object",
    "properties": {
        "suite": {"type": "string"},
        "passed": {"type": "boolean"},
        "max_residual": {"type": "number"},
        "cases": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "case": {"type": "string"},
                    "residual": {"type": "number"},
                    "tolerance": {"type": "number"},
                    "pass": {"type": "boolean"},
                },
                "required": ["case", "residual", "tolerance", "pass"],
            },
        },
    },
    "required": ["suite", "passed", "max_residual", "cases"],
}

MOTIVE_REPORT = {
    "type": "object",
    "properties": {
        "motive": MOTIVE,
        "text": {"type": "string"},
        "automorphy": AUTOMORPHY,
        "order": ORDER,
        "derivatives_at_one": {"type": "array", "items": {"type": "integer"}},
    },
    "required": ["motive", "text", "automorphy", "order", "derivatives_at_one"],
}

ZETA_REPORT = {
    "type": "object",
    "properties": {
        "spectrum": {"type": "string"},
        "entries": {"type": "integer", "minimum": 0},
        "s_re": {"type": "number"},
        "s_im": {"type": "number"},
        "weights": {"type": "integer", "minimum": 0},
        "length_cut": {"type": ["number", "null"]},
        "motive": {"oneOf": [MOTIVE, {"type": "null"}]},
        "value_re": {"type": "number"},
        "value_im": {"type": "number"},
        "convergence_delta": {"type": "number", "minimum": 0},
        "divergent": {"type": "boolean"},
    },
    "required": [
        "spectrum", "entries", "s_re", "s_im", "weights", "length_cut",
        "motive", "value_re", "value_im", "convergence_delta", "divergent",
    ],
}
