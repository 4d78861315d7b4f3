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

import logging

log = logging.getLogger('jacquetcalc')

LOG_FORMAT = '%(asctime)s [%(levelname)s] %(message)s'

def setup_logging(verbosity: int = 0) -> None:
    """
    Configures the root handler.  Verbosity 0 logs warnings, 1 adds info and 2 or more
    adds debug output.  Negative verbosity only logs errors.
    """
    if verbosity < 0:
        level = logging.ERROR
    elif verbosity == 0:
        level = logging.WARNING
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.DEBUG
    logging.basicConfig(format=LOG_FORMAT, level=level)
    log.setLevel(level)
