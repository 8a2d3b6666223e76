"""
State management for the SPCHS command line.
"""

import re

from utils.core import debug_print, make_rng


class CLIState:
    """Per-invocation state: flag-backed variables and the seeded rng."""

    def __init__(self):
        self.variables = {
            "MPK": "",
            "MSK": "",
            "PRI": "",
            "PUB": [],
            "STORE": "",
            "KEYWORD": "",
            "TRAPDOOR": "",
            "OUT": "",
            "SEED": "",
            "BACKEND": "scratch",
            "KEYWORD_SPACE": "",
            "DEBUG": "false",
            "PRI_KEY": "",
        }
        self._rng = None

        # Variables that should be returned as booleans
        self.boolean_variables = {"DEBUG"}

        # Flag (or environment variable) that sets each variable, for diagnostics
        self.flag_names = {
            "MPK": "--mpk",
            "MSK": "--msk",
            "PRI": "--pri",
            "PUB": "--pub",
            "STORE": "--store",
            "KEYWORD": "--keyword",
            "TRAPDOOR": "--trapdoor",
            "OUT": "--out",
            "SEED": "--seed",
            "BACKEND": "--backend",
            "KEYWORD_SPACE": "--keyword-space",
            "DEBUG": "--debug",
            "PRI_KEY": "SPCHS_PRI_KEY",
        }

        self.valid_variable_formats = {
            "SEED": r"^\d+$",
            "BACKEND": r"^(scratch|generic)$",
        }

    def set_variable(self, name, value):
        name = name.upper()
        if name in self.variables:
            old_value = self.variables[name]
            if isinstance(value, (list, dict)):
                self.variables[name] = value
            else:
                self.variables[name] = str(value) if value is not None else ""
            if name == "SEED":
                self._rng = None
            debug_print(
                f"Variable {name} changed from '{old_value}' to '{self.variables[name]}'"
            )
            return True
        else:
            debug_print(f"Unknown variable: {name}")
            return False

    def get_variable(self, name):
        name = name.upper()
        value = self.variables.get(name, "")

        # Convert boolean variables to actual booleans
        if name in self.boolean_variables:
            return value.lower() in ["true", "1", "yes", "on"]

        return value

    def get_raw_variable(self, name):
        """Get the raw value without boolean conversion."""
        name = name.upper()
        return self.variables.get(name, "")

    def flag(self, name):
        return self.flag_names.get(name.upper(), name.lower())

    def apply_args(self, args):
        """Copy parsed argparse flags into the matching variables."""
        for name in self.variables:
            value = getattr(args, name.lower(), None)
            if value is not None and name not in ("DEBUG", "PRI_KEY"):
                self.set_variable(name, value)

    def rng(self):
        """The invocation's random source, seeded by ``--seed`` when given."""
        if self._rng is None:
            self._rng = make_rng(self.get_raw_variable("SEED") or None)
        return self._rng

    def validate_required_vars(self, required_vars):
        missing = []
        invalid = []
        for var in required_vars:
            if not self.get_raw_variable(var):
                missing.append(var)
                continue

            if var in self.valid_variable_formats:
                if not re.match(
                    self.valid_variable_formats[var], str(self.get_raw_variable(var))
                ):
                    invalid.append(var)

        if missing:
            print(f"❌ Missing required flags: {', '.join(self.flag(v) for v in missing)}")
        if invalid:
            print(f"❌ Invalid values for: {', '.join(self.flag(v) for v in invalid)}")
        if not missing and not invalid:
            debug_print("All required variables are set.")

        return missing, invalid
