# Copyright 2026 The vrstars Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Ordinal quality ratings for vacation rentals.

Thin Python layer over the native ``_vrstars`` extension. Feature maps are
plain dicts ``{name: number}``; JSON payloads come back as dicts.
"""

import json

from . import _vrstars
from ._vrstars import (
    Error,
    accuracy,
    consistent_label,
    label,
    mamae,
    responsible_classifier,
    synth,
    train,
    weighted_f1,
)

__all__ = [
    "Error",
    "Model",
    "Service",
    "accuracy",
    "consistent_label",
    "evaluate",
    "label",
    "mamae",
    "responsible_classifier",
    "synth",
    "train",
    "weighted_f1",
]


def evaluate(preds, truth):
    """EvalReport of a predictions file against a truth file, as a dict."""
    return json.loads(_vrstars.evaluate(str(preds), str(truth)))


class Model:
    """A trained ordinal model loaded from model.json."""

    def __init__(self, native):
        self._m = native

    @classmethod
    def load(cls, path):
        return cls(_vrstars.Model.load(str(path)))

    @property
    def schema(self):
        return json.loads(self._m.schema_json())

    @property
    def thresholds(self):
        return list(self._m.thresholds)

    def probabilities(self, features):
        return list(self._m.probabilities_json(json.dumps(features)))

    def rate(self, features):
        return self._m.rate_json(json.dumps(features))

    def explain(self, features):
        return json.loads(self._m.explain_json(json.dumps(features)))

    def suggest(self, features):
        return json.loads(self._m.suggest_json(json.dumps(features)))

    def serialize(self):
        return self._m.serialize()


class Service:
    """In-process request handler with the HTTP service's routes."""

    def __init__(self, model_path):
        self._s = _vrstars.Service(str(model_path))

    def reload(self):
        self._s.reload()

    def request(self, method, path, body=None):
        payload = "" if body is None else json.dumps(body)
        status, text = self._s.handle(method, path, payload)
        return status, json.loads(text)
