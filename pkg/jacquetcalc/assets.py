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

__all__ = ['Assets', 'assets']

import glob
import hashlib
import os
import posixpath
from typing import IO, Any, List
from zipfile import ZipFile

import yaml

from .log import log

class Assets:
    """
    Read-only access to the catalogs shipped under jacquetcalc/data, whether the
    package runs from a directory or from a zip bundle.
    """
    def __init__(self, path: str) -> None:
        try:
            self.zipfile = ZipFile(__loader__.archive)  # type: ignore
        except AttributeError:
            # Not running from a zip bundle
            self.zipfile = None

        if self.zipfile:
            zippath = os.path.abspath(__loader__.archive)  # type: ignore
            assert path.startswith(zippath + os.path.sep), 'data path not found in zip bundle'
            self.path = path[len(zippath) + 1:].replace(os.path.sep, '/')
            files = [i.filename for i in self.zipfile.infolist()
                     if i.filename.startswith(self.path) and not i.is_dir()]
            self._join = posixpath.join
        else:
            self.path = path
            self._join = os.path.join
            files = [f for f in glob.glob(os.path.join(path, '**'), recursive=True) if not os.path.isdir(f)]
        self.files: List[str] = sorted(f[len(self.path) + 1:] for f in files)

    def open(self, fname: str) -> IO[bytes]:
        path = self._join(self.path, fname)
        if self.zipfile:
            return self.zipfile.open(path)
        return open(path, 'rb')

    def get(self, fname: str) -> bytes:
        with self.open(fname) as f:
            return f.read()

    def load_yaml(self, fname: str) -> Any:
        log.debug('loading %s', fname)
        return yaml.safe_load(self.get(fname))

    def hash(self) -> str:
        """
        sha256 over every catalog file, recorded in suite reports so a report can be
        tied to the catalog revision that produced it.
        """
        h = hashlib.sha256()
        for f in self.files:
            h.update(self.get(f))
        return h.hexdigest()

assets = Assets(os.path.abspath(os.path.join(os.path.dirname(__file__), 'data')))
