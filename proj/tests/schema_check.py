# Copyright 2026 The docnav Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Validates every run.json of a JSON report against the run schema."""

import json
import pathlib
import sys

import jsonschema


def main(schema_path, report_dir):
    schema = json.loads(pathlib.Path(schema_path).read_text())
    jsonschema.Draft7Validator.check_schema(schema)
    validator = jsonschema.Draft7Validator(schema)
    runs = sorted(pathlib.Path(report_dir).glob("*/run.json"))
    if not runs:
        print(f"no run.json under {report_dir}")
        return 1
    failures = 0
    for path in runs:
        errors = list(validator.iter_errors(json.loads(path.read_text())))
        for error in errors[:5]:
            print(f"{path}: {error.json_path}: {error.message}")
        failures += bool(errors)
        print(f"{'FAIL' if errors else 'ok'} {path}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1], sys.argv[2]))
