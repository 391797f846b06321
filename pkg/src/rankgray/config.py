"""Size limits shared by the library and the command line."""

from __future__ import annotations

import os
from dataclasses import dataclass

ENV_MAX_N = "RANKGRAY_MAX_N"


@dataclass(frozen=True)
class Limits:
    # nibble-packed permutation codes and 64-bit rank arithmetic stop here
    max_n: int = 15
    # largest n the generator builds without an explicit override (13 needs ~3e9 vertices)
    gen_max_n: int = 11
    # one permutation per line is only written up to this n
    perms_max_n: int = 9
    # exhaustive snake search is only attempted up to this n
    exact_search_max_n: int = 6

    @classmethod
    def from_env(cls) -> "Limits":
        raw = os.environ.get(ENV_MAX_N)
        if not raw:
            return cls()
        value = int(raw)
        if not 1 <= value <= cls.max_n:
            raise ValueError(f"{ENV_MAX_N}={raw} outside 1..{cls.max_n}")
        return cls(gen_max_n=value)


LIMITS = Limits()
