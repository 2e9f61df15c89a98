from dataclasses import dataclass
from typing import Any, Optional


@dataclass(frozen=True)
class Verdict:
    """Outcome of a law check.

    ``witness`` is the first counterexample found in canonical iteration order
    and ``law`` names the equation it breaks.  ``bound`` is set when the check
    quantified over words and therefore only covers lengths up to that bound.
    """

    ok: bool
    witness: Optional[Any] = None
    law: str = ""
    bound: Optional[int] = None
    detail: str = ""

    def __bool__(self):
        return self.ok

    @classmethod
    def passed(cls, bound=None, detail=""):
        return cls(True, bound=bound, detail=detail)

    @classmethod
    def failed(cls, witness, law, bound=None, detail=""):
        return cls(False, witness=witness, law=law, bound=bound, detail=detail)

    def describe(self):
        if self.ok:
            if self.bound is not None:
                return f"ok (verified to length {self.bound})"
            return "ok"
        text = f"counterexample {self.witness!r} breaks {self.law}"
        if self.detail:
            text += f": {self.detail}"
        return text
