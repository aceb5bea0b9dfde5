# core/weights.py

from dataclasses import dataclass
from typing import Tuple

from core.errors import ContextMismatchError
from core.segments import DimensionVector, check_e, residue_value


def cartan_entry(e: int, i: int, j: int) -> int:
    """<alpha_j, alpha_i^vee> for the affine Cartan matrix of type A^(1)_{e-1}."""
    value = 2 if i == j else 0
    if (j - i - 1) % e == 0:
        value -= 1
    if (j - i + 1) % e == 0:
        value -= 1
    return value


@dataclass(frozen=True)
class WeightExpr:
    """sum_i fundamental[i] * Lambda_i + sum_i simple[i] * alpha_i."""
    e: int
    fundamental: Tuple[int, ...]
    simple: Tuple[int, ...]

    @classmethod
    def zero(cls, e: int) -> "WeightExpr":
        check_e(e)
        return cls(e, (0,) * e, (0,) * e)

    @classmethod
    def fundamental_weight(cls, e: int, i) -> "WeightExpr":
        entries = [0] * e
        entries[residue_value(i, e)] = 1
        return cls(e, tuple(entries), (0,) * e)

    @classmethod
    def simple_root(cls, e: int, i) -> "WeightExpr":
        entries = [0] * e
        entries[residue_value(i, e)] = 1
        return cls(e, (0,) * e, tuple(entries))

    @classmethod
    def negative_root_lattice(cls, dims: DimensionVector) -> "WeightExpr":
        """-sum_i d_i alpha_i."""
        return cls(dims.e, (0,) * dims.e, tuple(-d for d in dims.entries))

    def _check(self, other: "WeightExpr"):
        if other.e != self.e:
            raise ContextMismatchError(f"weights for e = {self.e} and e = {other.e}")

    def __add__(self, other: "WeightExpr") -> "WeightExpr":
        self._check(other)
        return WeightExpr(self.e,
                          tuple(a + b for a, b in zip(self.fundamental, other.fundamental)),
                          tuple(a + b for a, b in zip(self.simple, other.simple)))

    def __neg__(self) -> "WeightExpr":
        return WeightExpr(self.e, tuple(-a for a in self.fundamental), tuple(-a for a in self.simple))

    def __sub__(self, other: "WeightExpr") -> "WeightExpr":
        return self + (-other)

    def pairing(self, i) -> int:
        """Evaluates the weight on the coroot alpha_i^vee."""
        i = residue_value(i, self.e)
        total = self.fundamental[i]
        for j, c in enumerate(self.simple):
            if c:
                total += c * cartan_entry(self.e, i, j)
        return total

    def __str__(self):
        pieces = []
        for name, coefficients in (("Λ", self.fundamental), ("α", self.simple)):
            for i, c in enumerate(coefficients):
                if c == 0:
                    continue
                magnitude = "" if abs(c) == 1 else str(abs(c))
                pieces.append(("-" if c < 0 else "+", f"{magnitude}{name}_{i}"))
        if not pieces:
            return "0"
        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            text += sign + body
        return text
