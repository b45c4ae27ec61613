# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

from enum import Enum


class StorageType(Enum):
    LOCAL_FILE = 1
    STANDARD_STREAM = 2
