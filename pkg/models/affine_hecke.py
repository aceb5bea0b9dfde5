# models/affine_hecke.py

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np
import pandas as pd
import sympy as sp

from config import settings
from core.errors import DomainError, HeckeRelationError, check_bound
from core.laurent import LaurentPoly, MultiLaurent
from core.segments import Multisegment, parse_multisegment, rho
from models.cyclotomic import ZETA, CyclotomicScalar, cyclotomic_field

# A polynomial in x_1..x_n and q is a MultiLaurent with n + 1 variables; q comes last.


def _n_of(f: MultiLaurent) -> int:
    return f.nvars - 1


def _check_index(i: int, n: int, upper: int, name: str):
    if not 1 <= i <= upper:
        raise DomainError(f"{name}_{i} is not a generator of H_{n}")


def _g_terms(k: int) -> List[Tuple[int, int]]:
    """(1 - t^k)/(t - 1) as (power of t, coefficient) pairs."""
    if k > 0:
        return [(j, -1) for j in range(k)]
    if k < 0:
        return [(k + j, 1) for j in range(-k)]
    return []


def act_T(i: int, f: MultiLaurent) -> MultiLaurent:
    """
    The Demazure-Lusztig operator T_i f = (f - s_i f)/(e^{a_i} - 1) - q (f - e^{a_i} s_i f)/(e^{a_i} - 1).

    With t = x_{i+1}/x_i, a monomial x^a with k = a_i - a_{i+1} goes to x^a (g(k) - q g(k+1)),
    g(k) = (1 - t^k)/(t - 1). The divisions are exact by construction.
    """
    n = _n_of(f)
    _check_index(i, n, n - 1, "T")
    values: Dict[Tuple[int, ...], int] = {}

    def add(exps, power, q_shift, coefficient):
        key = list(exps)
        key[i - 1] -= power
        key[i] += power
        key[n] += q_shift
        key = tuple(key)
        values[key] = values.get(key, 0) + coefficient

    for exps, c in f.terms:
        k = exps[i - 1] - exps[i]
        for power, coefficient in _g_terms(k):
            add(exps, power, 0, c * coefficient)
        for power, coefficient in _g_terms(k + 1):
            add(exps, power, 1, -c * coefficient)
    return MultiLaurent.from_dict(f.nvars, values)


def _q_power(f: MultiLaurent, k: int) -> MultiLaurent:
    shift = [0] * f.nvars
    shift[-1] = k
    return f.shift(tuple(shift))


def act_T_inverse(i: int, f: MultiLaurent) -> MultiLaurent:
    """T_i^{-1} = q^{-1} (T_i - q + 1)."""
    return _q_power(act_T(i, f) + f, -1) - f


def act_X(i: int, f: MultiLaurent, power: int = 1) -> MultiLaurent:
    """X_i^power f = x_i^{-power} f."""
    n = _n_of(f)
    _check_index(i, n, n, "X")
    shift = [0] * f.nvars
    shift[i - 1] = -power
    return f.shift(tuple(shift))


def act_theta(weight: Sequence[int], f: MultiLaurent) -> MultiLaurent:
    """theta_lambda = prod_j X_j^{lambda_j}, i.e. multiplication by e^{-lambda}."""
    if len(weight) != _n_of(f):
        raise DomainError(f"weight {tuple(weight)} does not have {_n_of(f)} entries")
    return f.shift(tuple(-w for w in weight) + (0,))


def _t_series(i: int, n: int, k: int) -> MultiLaurent:
    """g(k) in t = x_{i+1}/x_i as a polynomial in n + 1 variables."""
    values = {}
    for power, coefficient in _g_terms(k):
        exps = [0] * (n + 1)
        exps[i - 1] -= power
        exps[i] += power
        values[tuple(exps)] = values.get(tuple(exps), 0) + coefficient
    return MultiLaurent.from_dict(n + 1, values)


def bernstein_sides(i: int, weight: Sequence[int], f: MultiLaurent) -> Tuple[MultiLaurent, MultiLaurent]:
    """
    Both sides of T_i theta_lam = theta_{s_i lam} T_i + (1 - q)(theta_lam - theta_{s_i lam})/(theta_{-a_i} - 1).

    The fraction is e^{-lam} g(c) with c = lam_{i+1} - lam_i.
    """
    n = _n_of(f)
    weight = list(weight)
    swapped = list(weight)
    swapped[i - 1], swapped[i] = swapped[i], swapped[i - 1]
    lhs = act_T(i, act_theta(weight, f))
    fraction = act_theta(weight, _t_series(i, n, weight[i] - weight[i - 1]) * f)
    rhs = act_theta(swapped, act_T(i, f)) + fraction - _q_power(fraction, 1)
    return lhs, rhs


# --- Sampling ---

def monomial_basis(n: int, max_degree: int) -> List[MultiLaurent]:
    """All x^a (q^0) with sum_j |a_j| <= max_degree."""
    found = []
    for exps in itertools.product(range(-max_degree, max_degree + 1), repeat=n):
        if sum(abs(a) for a in exps) <= max_degree:
            found.append(MultiLaurent.monomial(tuple(exps) + (0,)))
    return found


def random_polynomial(n: int, rng: np.random.Generator, terms: int = 3, span: int = 2) -> MultiLaurent:
    values = {}
    for _ in range(int(rng.integers(1, terms + 1))):
        exps = tuple(int(a) for a in rng.integers(-span, span + 1, size=n)) + (int(rng.integers(-1, 2)),)
        values[exps] = values.get(exps, 0) + int(rng.choice([-3, -2, -1, 1, 2, 3]))
    return MultiLaurent.from_dict(n + 1, values)


# --- Relations ---

Relation = Callable[[MultiLaurent], Tuple[MultiLaurent, MultiLaurent]]


def presentation_relations(n: int) -> List[Tuple[str, Relation]]:
    """Every defining relation of H_n as a pair of operators to compare."""
    relations: List[Tuple[str, Relation]] = []
    for i in range(1, n):
        relations.append((f"quadratic T{i}", lambda f, i=i: (
            act_T(i, act_T(i, f)), _q_power(act_T(i, f), 1) - act_T(i, f) + _q_power(f, 1))))
        relations.append((f"q^-1 T{i} X{i} T{i} = X{i + 1}", lambda f, i=i: (
            _q_power(act_T(i, act_X(i, act_T(i, f))), -1), act_X(i + 1, f))))
        for j in range(1, n + 1):
            if j not in (i, i + 1):
                relations.append((f"T{i} X{j} = X{j} T{i}", lambda f, i=i, j=j: (
                    act_T(i, act_X(j, f)), act_X(j, act_T(i, f)))))
    for i in range(1, n - 1):
        relations.append((f"braid T{i} T{i + 1}", lambda f, i=i: (
            act_T(i, act_T(i + 1, act_T(i, f))), act_T(i + 1, act_T(i, act_T(i + 1, f))))))
    for i, j in itertools.combinations(range(1, n), 2):
        if j - i > 1:
            relations.append((f"T{i} T{j} = T{j} T{i}", lambda f, i=i, j=j: (
                act_T(i, act_T(j, f)), act_T(j, act_T(i, f)))))
    for i, j in itertools.combinations(range(1, n + 1), 2):
        relations.append((f"X{i} X{j} = X{j} X{i}", lambda f, i=i, j=j: (
            act_X(i, act_X(j, f)), act_X(j, act_X(i, f)))))
    return relations


def _sweep(relations: List[Tuple[str, Relation]], inputs: List[MultiLaurent]) -> pd.DataFrame:
    rows = []
    for name, relation in relations:
        for f in inputs:
            lhs, rhs = relation(f)
            if lhs != rhs:
                raise HeckeRelationError(name, f"input {f}: difference {lhs - rhs}")
        rows.append({"relation": name, "inputs_checked": len(inputs), "status": "pass"})
    return pd.DataFrame(rows)


def verify_presentation(n: int, trials: int = settings.HECKE_RANDOM_TRIALS,
                        seed: int = settings.DEFAULT_SEED,
                        max_degree: int = settings.HECKE_MAX_DEGREE) -> pd.DataFrame:
    """
    Checks every defining relation of H_n on all low-degree monomials and `trials` random inputs.

    Raises:
        ResourceBoundError: If n > settings.MAX_HECKE_N.
        HeckeRelationError: With the failing relation and a witness.
    """
    check_bound("n", n, settings.MAX_HECKE_N)
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    rng = np.random.default_rng(seed)
    inputs = [MultiLaurent.zero(n + 1)] + monomial_basis(n, max_degree)
    inputs += [random_polynomial(n, rng) for _ in range(trials)]
    logging.info(f"Verifying the presentation of H_{n} on {len(inputs)} inputs...")
    report = _sweep(presentation_relations(n), inputs)
    logging.info(f"✅ All {len(report)} relations of H_{n} hold.")
    return report


def verify_bernstein(n: int, trials: int = settings.BERNSTEIN_TRIALS,
                     seed: int = settings.DEFAULT_SEED) -> pd.DataFrame:
    """Checks the Bernstein relation on random (i, lambda, f)."""
    check_bound("n", n, settings.MAX_HECKE_N)
    if n < 2:
        raise DomainError("the Bernstein relation needs n >= 2")
    rng = np.random.default_rng(seed)
    rows = []
    for _ in range(trials):
        i = int(rng.integers(1, n))
        weight = [int(a) for a in rng.integers(-2, 3, size=n)]
        f = random_polynomial(n, rng)
        lhs, rhs = bernstein_sides(i, weight, f)
        if lhs != rhs:
            raise HeckeRelationError(f"Bernstein T{i} theta{tuple(weight)}", f"input {f}: difference {lhs - rhs}")
        rows.append({"i": i, "lambda": str(tuple(weight)), "status": "pass"})
    return pd.DataFrame(rows)


# --- The involution sigma ---

Letter = Tuple[str, int, int]


@dataclass(frozen=True)
class HeckeOperator:
    """
    A formal combination of words in T_i^{+-1} and X_i^k with coefficients in Z[q^{+-1}].

    A word (l_1, ..., l_r) acts as l_1 l_2 ... l_r, the last letter first.
    """
    terms: Dict[Tuple[Letter, ...], LaurentPoly] = field(default_factory=dict)

    @classmethod
    def letter(cls, kind: str, index: int, power: int = 1) -> "HeckeOperator":
        if kind not in ("T", "X"):
            raise DomainError(f"unknown generator kind '{kind}'")
        if kind == "T" and power not in (1, -1):
            raise DomainError("T letters carry power +1 or -1")
        return cls({((kind, index, power),): LaurentPoly.one()})

    @classmethod
    def scalar(cls, c: LaurentPoly) -> "HeckeOperator":
        return cls({(): c})

    @classmethod
    def word(cls, letters: Sequence[Letter]) -> "HeckeOperator":
        return cls({tuple(letters): LaurentPoly.one()})

    def __add__(self, other: "HeckeOperator") -> "HeckeOperator":
        values = dict(self.terms)
        for w, c in other.terms.items():
            values[w] = values.get(w, LaurentPoly.zero()) + c
        return HeckeOperator({w: c for w, c in values.items() if not c.is_zero()})

    def __mul__(self, other: "HeckeOperator") -> "HeckeOperator":
        values: Dict[Tuple[Letter, ...], LaurentPoly] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                values[w] = values.get(w, LaurentPoly.zero()) + c1 * c2
        return HeckeOperator({w: c for w, c in values.items() if not c.is_zero()})

    def apply(self, f: MultiLaurent) -> MultiLaurent:
        total = MultiLaurent.zero(f.nvars)
        for w, c in self.terms.items():
            g = f
            for kind, index, power in reversed(w):
                if kind == "X":
                    g = act_X(index, g, power)
                elif power == 1:
                    g = act_T(index, g)
                else:
                    g = act_T_inverse(index, g)
            for k, coefficient in c.terms:
                total = total + _q_power(g, k) * coefficient
        return total

    def sigma(self) -> "HeckeOperator":
        return sigma_twist(self)


_Q = LaurentPoly.variable()


def _sigma_letter(letter: Letter) -> HeckeOperator:
    kind, index, power = letter
    if kind == "X":
        return HeckeOperator.letter("X", index, -power)
    if power == 1:
        # -q T^{-1} = q - 1 - T
        return HeckeOperator.scalar(_Q - 1) + HeckeOperator.letter("T", index) * HeckeOperator.scalar(
            LaurentPoly.monomial(-1))
    return HeckeOperator.letter("T", index) * HeckeOperator.scalar(LaurentPoly.monomial(-1, -1))


def sigma_twist(operator) -> HeckeOperator:
    """
    The involution T_i -> -q T_i^{-1}, X_i -> X_i^{-1}, extended multiplicatively.

    Accepts a HeckeOperator or a sequence of letters.
    """
    if not isinstance(operator, HeckeOperator):
        operator = HeckeOperator.word(operator)
    result = HeckeOperator()
    for w, c in operator.terms.items():
        image = HeckeOperator.scalar(c)
        for letter in w:
            image = image * _sigma_letter(letter)
        result = result + image
    return result


def random_word(n: int, rng: np.random.Generator, max_length: int = 4) -> Tuple[Letter, ...]:
    letters = []
    for _ in range(int(rng.integers(1, max_length + 1))):
        if n > 1 and rng.random() < 0.5:
            letters.append(("T", int(rng.integers(1, n)), int(rng.choice([1, -1]))))
        else:
            letters.append(("X", int(rng.integers(1, n + 1)), int(rng.choice([1, -1]))))
    return tuple(letters)


def verify_sigma(n: int, trials: int = 50, seed: int = settings.DEFAULT_SEED) -> pd.DataFrame:
    """
    Checks that sigma is an involution and that the sigma-images satisfy the presentation.

    Raises:
        HeckeRelationError: With the failing check and a witness.
    """
    check_bound("n", n, settings.MAX_HECKE_N)
    rng = np.random.default_rng(seed)
    inputs = [random_polynomial(n, rng) for _ in range(trials)]
    rows = []
    for _ in range(trials):
        word = random_word(n, rng)
        twice = sigma_twist(sigma_twist(word))
        once = HeckeOperator.word(word)
        for f in inputs[:5]:
            if twice.apply(f) != once.apply(f):
                raise HeckeRelationError(f"sigma^2 on {word}", f"input {f}")
    rows.append({"relation": "sigma^2 = id", "inputs_checked": trials, "status": "pass"})

    def s_t(i):
        return sigma_twist([("T", i, 1)])

    def s_x(i, power=1):
        return sigma_twist([("X", i, power)])

    relations: List[Tuple[str, Relation]] = []
    for i in range(1, n):
        relations.append((f"sigma quadratic T{i}", lambda f, i=i: (
            s_t(i).apply(s_t(i).apply(f)),
            _q_power(s_t(i).apply(f), 1) - s_t(i).apply(f) + _q_power(f, 1))))
        relations.append((f"sigma q^-1 T{i} X{i} T{i} = X{i + 1}", lambda f, i=i: (
            _q_power(s_t(i).apply(s_x(i).apply(s_t(i).apply(f))), -1), s_x(i + 1).apply(f))))
        for j in range(1, n + 1):
            if j not in (i, i + 1):
                relations.append((f"sigma T{i} X{j} = X{j} T{i}", lambda f, i=i, j=j: (
                    s_t(i).apply(s_x(j).apply(f)), s_x(j).apply(s_t(i).apply(f)))))
    for i in range(1, n - 1):
        relations.append((f"sigma braid T{i} T{i + 1}", lambda f, i=i: (
            s_t(i).apply(s_t(i + 1).apply(s_t(i).apply(f))),
            s_t(i + 1).apply(s_t(i).apply(s_t(i + 1).apply(f))))))
    for i, j in itertools.combinations(range(1, n), 2):
        if j - i > 1:
            relations.append((f"sigma T{i} T{j} = T{j} T{i}", lambda f, i=i, j=j: (
                s_t(i).apply(s_t(j).apply(f)), s_t(j).apply(s_t(i).apply(f)))))
    for i, j in itertools.combinations(range(1, n + 1), 2):
        relations.append((f"sigma X{i} X{j} = X{j} X{i}", lambda f, i=i, j=j: (
            s_x(i).apply(s_x(j).apply(f)), s_x(j).apply(s_x(i).apply(f)))))
    for i in range(1, n + 1):
        relations.append((f"sigma X{i} sigma X{i}^-1 = 1", lambda f, i=i: (
            s_x(i).apply(s_x(i, -1).apply(f)), f)))
    report = _sweep(relations, inputs)
    return pd.concat([pd.DataFrame(rows), report], ignore_index=True)


# --- Standard modules ---

@dataclass(frozen=True)
class SegmentModule:
    """The one-dimensional module of a tail segment (l;i]: T -> zeta, X_k -> zeta^{i-l+k}."""
    tail: int
    length: int
    x_exponents: Tuple[int, ...]


@dataclass(frozen=True)
class StandardModuleParams:
    e: int
    segments: Tuple[SegmentModule, ...]

    @property
    def x_exponents(self) -> Tuple[int, ...]:
        return tuple(k for seg in self.segments for k in seg.x_exponents)

    def eigenvalues(self) -> Tuple[CyclotomicScalar, ...]:
        field_ = cyclotomic_field(self.e)
        return tuple(field_.zeta_power(k) for k in self.x_exponents)


def standard_module_params(psi: Multisegment) -> StandardModuleParams:
    """
    X-eigenvalue ladders of the tail segments of psi, longest first then tail ascending.

    (l;i] contributes zeta^{i-l+1}, ..., zeta^i, with T -> zeta inside the segment.
    """
    e = psi.e
    pieces = []
    for head, length in psi.segments():
        tail = (head + length - 1) % e
        pieces.append(SegmentModule(tail, length, tuple((tail - length + 1 + k) % e for k in range(length))))
    pieces.sort(key=lambda s: (-s.length, s.tail))
    return StandardModuleParams(e, tuple(pieces))


# --- The two-dimensional example at e = 3 ---

@dataclass
class ExampleReport:
    relations: List[str]
    submodule_eigenvalues: Dict[str, str]
    quotient_eigenvalues: Dict[str, str]
    generator_eigenvalues: Dict[str, str]
    canonical_basis_at_one: Dict[str, Dict[str, int]]


def induced_rank_two_action(params: StandardModuleParams, q=ZETA) -> Tuple[sp.Matrix, sp.Matrix, sp.Matrix]:
    """
    X_1, X_2 and T on the H_2-module induced from one common X-eigenvector v.

    With X_1 v = zeta^{k_1} v and X_2 v = zeta^{k_2} v, the basis is (v, T v). The quadratic
    relation gives T on T v, q^-1 T X_1 T = X_2 gives X_1 on T v, and X_1 X_2 commuting with T
    gives X_2 on T v.

    Returns:
        The matrices (X_1, X_2, T), columns being the images of v and T v.

    Raises:
        DomainError: If params do not carry exactly two X-eigenvalues.
    """
    if len(params.x_exponents) != 2:
        raise DomainError(f"an H_2 module needs two X-eigenvalues, got {params.x_exponents}")
    a, b = (ZETA ** k for k in params.x_exponents)
    x1 = sp.Matrix([[a, -(q - 1) * b], [0, b]])
    x2 = sp.Matrix([[b, (q - 1) * b], [0, a]])
    t = sp.Matrix([[0, q], [1, q - 1]])
    return x1, x2, t


def verify_h2_example() -> ExampleReport:
    """
    The module of H_2 induced from the segments (1;1] and (1;2] at e = 3, q = zeta.

    The action on the basis (v, T v) is built from the standard module parameters of
    {(1;1],(1;2]}, so X_1 v = zeta v and X_2 v = zeta^2 v. The line spanned by
    w = -q v + T v is a submodule with X_1 -> zeta^2, X_2 -> zeta, T -> -1; the quotient is the
    module of (2;2]: X_1 -> zeta, X_2 -> zeta^2, T -> zeta. Finally the canonical basis at v = 1
    expresses G((2;2]) as u_{(2;2]} + u_{(1;1],(1;2]}.

    Raises:
        HeckeRelationError: On any mismatch.
    """
    from models.canonical_basis import canonical_basis
    from core.segments import DimensionVector

    e = 3
    fld = cyclotomic_field(e)
    z = ZETA
    q = z
    generator = standard_module_params(parse_multisegment("{(1;1],(1;2]}", e))
    quotient_params = standard_module_params(parse_multisegment("{(2;2]}", e))
    generator_eigs = {f"X{k + 1}": str(ev) for k, ev in enumerate(generator.eigenvalues())}
    a, b = (z ** k for k in generator.x_exponents)
    x1, x2, t = induced_rank_two_action(generator, q)
    identity = sp.eye(2)

    checks = [
        ("(T - q)(T + 1) = 0", (t - q * identity) * (t + identity), sp.zeros(2, 2)),
        ("q^-1 T X1 T = X2", z ** (e - 1) * t * x1 * t, x2),
        ("X1 X2 = X2 X1", x1 * x2, x2 * x1),
    ]
    passed = []
    for name, lhs, rhs in checks:
        if not fld.matrices_equal(lhs, rhs):
            raise HeckeRelationError(name, f"{fld.reduce_matrix(sp.expand(lhs - rhs))}")
        passed.append(name)

    v = sp.Matrix([1, 0])
    if not fld.matrices_equal(x1 * v, a * v) or not fld.matrices_equal(x2 * v, b * v):
        raise HeckeRelationError("generator eigenvalues", f"{generator_eigs}")

    # the eigenvalues swap on w
    w = sp.Matrix([-q, 1])
    sub = {}
    for name, matrix, expected in (("X1", x1, b), ("X2", x2, a), ("T", t, -1)):
        if not fld.matrices_equal(matrix * w, expected * w):
            raise HeckeRelationError(f"{name} on the submodule", f"{fld.reduce_matrix(sp.expand(matrix * w))}")
        sub[name] = str(fld.element(expected))

    # quotient by w: T v = q v there, and the X's must match the module of (2;2]
    quotient_x = [z ** k for k in quotient_params.x_exponents]
    quotient = {}
    for name, matrix, expected in (("X1", x1, quotient_x[0]), ("X2", x2, quotient_x[1]), ("T", t, q)):
        image = fld.reduce_matrix(sp.expand(matrix * v - expected * v))
        # image must be a multiple of w
        if fld.reduce(image[0] * w[1] - image[1] * w[0]) != 0:
            raise HeckeRelationError(f"{name} on the quotient", f"{image}")
        quotient[name] = str(fld.element(expected))

    basis = canonical_basis(DimensionVector(e, (0, 1, 1)))
    at_one = {}
    for psi, g in basis.items():
        relabeled = g.relabel(rho)
        at_one[rho(psi).tail_notation()] = {phi.tail_notation(): c for phi, c in relabeled.specialize(1).items()}
    expected_g = {
        "{(2;2]}": {"{(2;2]}": 1, "{(1;1],(1;2]}": 1},
        "{(1;1],(1;2]}": {"{(1;1],(1;2]}": 1},
    }
    if at_one != expected_g:
        raise HeckeRelationError("canonical basis at v = 1", f"{at_one}")
    logging.info("✅ The two-dimensional H_2 example at e=3 checks out.")
    return ExampleReport(passed, sub, quotient, generator_eigs, at_one)
