# Copyright 2026 The jacquetcalc Authors
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

__all__ = ['YAMLRenderer']

from typing import Any, Dict

import yaml
try:
    from yaml import CDumper as Dumper
except ImportError:
    from yaml import Dumper  # type: ignore

from .base import Renderer

def str_representer(dumper: Dumper, data: str, **kwargs) -> yaml.ScalarNode:
    """
    Represents strings containing newlines as a YAML block scalar.
    """
    if data.count('\n') >= 1:
        kwargs['style'] = '|'
    return dumper.represent_scalar('tag:yaml.org,2002:str', data, **kwargs)


class YAMLRenderer(Renderer):
    def generate(self, doc: Dict[str, Any]) -> str:
        Dumper.add_representer(str, str_representer)
        return yaml.dump(doc, sort_keys=False, allow_unicode=True, Dumper=Dumper)
