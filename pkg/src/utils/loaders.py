import json
from pathlib import Path

import yaml


class FlowDict(dict):
    pass


class CustomDumper(yaml.SafeDumper):
    """Dumps FlowDict mappings on one line, everything else block style."""

    def represent_flow_dict(self, data):
        return self.represent_mapping("tag:yaml.org,2002:map", data, flow_style=True)


CustomDumper.add_representer(FlowDict, CustomDumper.represent_flow_dict)


def load_yaml_file(filename):
    """Load and parse a YAML file."""
    with open(filename, 'r', encoding='utf-8') as f:
        return yaml.safe_load(f)


def load_json_file(filename):
    """Load and parse a JSON file with validation."""
    try:
        with open(filename, 'r', encoding='utf-8') as f:
            content = f.read().strip()
            if not content:
                raise ValueError(f"File '{filename}' is empty.")
            return json.loads(content)
    except json.JSONDecodeError:
        raise ValueError(f"File '{filename}' does not contain valid JSON.")


def dump_flow_yaml(mapping):
    """Render a flat mapping as a single flow-style YAML line."""
    return yaml.dump(FlowDict(mapping), Dumper=CustomDumper, sort_keys=True, width=10**6).strip()


def ensure_parent(filepath):
    filepath = Path(filepath)
    filepath.parent.mkdir(parents=True, exist_ok=True)
    return filepath
