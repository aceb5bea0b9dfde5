# models/nilreps.py

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np
import sympy as sp

from core.errors import DomainError, InvariantError
from core.segments import DimensionVector, Multisegment, dimension_vector


# --- Linear algebra over F_p ---

def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Rank of an integer matrix over the prime field F_p (Gaussian elimination)."""
    a = np.array(matrix, dtype=np.int64) % p
    if a.ndim != 2 or a.size == 0:
        return 0
    n_rows, n_cols = a.shape
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        pivots = np.nonzero(a[rank:, col])[0]
        if pivots.size == 0:
            continue
        r = rank + int(pivots[0])
        if r != rank:
            a[[rank, r]] = a[[r, rank]]
        a[rank] = (a[rank] * pow(int(a[rank, col]), -1, p)) % p
        for other in np.nonzero(a[:, col])[0]:
            if other != rank:
                a[other] = (a[other] - a[other, col] * a[rank]) % p
        rank += 1
    return rank


def gl_order(m: int, q: int) -> int:
    """|GL_m(F_q)|."""
    order = 1
    for k in range(m):
        order *= q ** m - q ** k
    return order


def rref_subspaces(dim: int, sub: int, p: int) -> Iterator[np.ndarray]:
    """
    Every `sub`-dimensional subspace of F_p^dim, as a (sub x dim) reduced row echelon basis.
    """
    if sub == 0:
        yield np.zeros((0, dim), dtype=np.int64)
        return
    for pivots in itertools.combinations(range(dim), sub):
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, dim) if c not in pivots]
        for values in itertools.product(range(p), repeat=len(free)):
            basis = np.zeros((sub, dim), dtype=np.int64)
            for r, pc in enumerate(pivots):
                basis[r, pc] = 1
            for (r, c), value in zip(free, values):
                basis[r, c] = value
            yield basis


# --- Representations ---

@dataclass
class NilRep:
    """
    A representation of the cyclic quiver: maps[i] is the matrix of X: V_i -> V_{i+1}.

    Entries are integers, read modulo p when p is set and over Q otherwise.
    """
    dims: DimensionVector
    maps: Tuple[np.ndarray, ...]
    p: Optional[int] = None

    @property
    def e(self) -> int:
        return self.dims.e

    def offsets(self) -> List[int]:
        offsets, running = [], 0
        for d in self.dims.entries:
            offsets.append(running)
            running += d
        return offsets

    def degrees(self) -> List[int]:
        """The residue of every basis vector in the global ordering."""
        return [i for i, d in enumerate(self.dims.entries) for _ in range(d)]

    def total_matrix(self) -> np.ndarray:
        size = self.dims.rank
        offsets = self.offsets()
        total = np.zeros((size, size), dtype=np.int64)
        for i, block in enumerate(self.maps):
            j = (i + 1) % self.e
            rows, cols = block.shape
            if rows and cols:
                total[offsets[j]:offsets[j] + rows, offsets[i]:offsets[i] + cols] = block
        return total

    def is_nilpotent(self) -> bool:
        size = self.dims.rank
        if size == 0:
            return True
        x = self.total_matrix()
        power = x.copy()
        for _ in range(size - 1):
            power = power @ x
            if self.p is not None:
                power %= self.p
        return not power.any()


def rep_from_multisegment(psi: Multisegment, p: Optional[int] = None) -> NilRep:
    """
    The direct sum of uniserial chains: [h;L) has basis b_0..b_{L-1}, b_k of residue h+k,
    with X b_k = b_{k+1} and X b_{L-1} = 0.
    """
    e = psi.e
    dims = dimension_vector(psi)
    filled = [0] * e
    maps = [np.zeros((dims.entries[(i + 1) % e], dims.entries[i]), dtype=np.int64) for i in range(e)]
    for head, length in psi.segments():
        previous = None
        for k in range(length):
            residue = (head + k) % e
            index = filled[residue]
            filled[residue] += 1
            if previous is not None:
                prev_residue, prev_index = previous
                maps[prev_residue][index, prev_index] = 1
            previous = (residue, index)
    return NilRep(dims, tuple(maps), p)


def rank_invariants(rep: NilRep) -> Dict[Tuple[int, int], int]:
    """r[(i, l)] = rank of X^l restricted to V_i, for l = 0..dim V."""
    size = rep.dims.rank
    degrees = rep.degrees()
    x = rep.total_matrix()
    power = np.eye(size, dtype=np.int64)
    ranks = {}
    for l in range(size + 1):
        for i in range(rep.e):
            cols = [k for k, d in enumerate(degrees) if d == i]
            block = power[:, cols]
            ranks[(i, l)] = _rank(block, rep.p)
        power = power @ x
        if rep.p is not None:
            power %= rep.p
        if not power.any():
            break
    return ranks


def _rank(matrix: np.ndarray, p: Optional[int]) -> int:
    if matrix.size == 0:
        return 0
    if p is not None:
        return rank_mod_p(matrix, p)
    return sp.Matrix(matrix.tolist()).rank()


def multisegment_from_ranks(e: int, ranks: Dict[Tuple[int, int], int], max_length: int) -> Multisegment:
    """
    Solves for the multiplicities: m[h;L) = (r_{h,L-1} - r_{h,L}) - (r_{h-1,L} - r_{h-1,L+1}).

    Raises:
        InvariantError: If a multiplicity comes out negative.
    """
    def r(i, l):
        return ranks.get((i % e, l), 0)

    counts = {}
    for h in range(e):
        for length in range(1, max_length + 1):
            mult = (r(h, length - 1) - r(h, length)) - (r(h - 1, length) - r(h - 1, length + 1))
            if mult < 0:
                raise InvariantError(f"rank data gives negative multiplicity for [{h};{length})")
            if mult:
                counts[(h, length)] = mult
    return Multisegment.from_counts(e, counts)


def multisegment_from_rep(rep: NilRep) -> Multisegment:
    """
    The isomorphism type of a nilpotent representation.

    Raises:
        DomainError: If the representation is not nilpotent.
    """
    if not rep.is_nilpotent():
        raise DomainError("the representation is not nilpotent")
    return multisegment_from_ranks(rep.e, rank_invariants(rep), rep.dims.rank)


# --- Hom spaces over Q ---

@lru_cache(maxsize=None)
def hom_dimension(source: Multisegment, target: Multisegment) -> int:
    """dim Hom(M_source, M_target): graded maps f with f_{i+1} X = X f_i, solved over Q."""
    if source.e != target.e:
        raise DomainError("multisegments for different e")
    e = source.e
    m, n = rep_from_multisegment(source), rep_from_multisegment(target)
    dm, dn = m.dims.entries, n.dims.entries
    sizes = [dm[i] * dn[i] for i in range(e)]
    unknowns = sum(sizes)
    if unknowns == 0:
        return 0
    starts = np.cumsum([0] + sizes[:-1])
    blocks = []
    for i in range(e):
        j = (i + 1) % e
        rows = dn[j] * dm[i]
        if rows == 0:
            continue
        equation = np.zeros((rows, unknowns), dtype=np.int64)
        # vec(F_j A) = (A^T kron I) vec(F_j); vec(B F_i) = (I kron B) vec(F_i), column-major
        if sizes[j]:
            equation[:, starts[j]:starts[j] + sizes[j]] += np.kron(m.maps[i].T, np.eye(dn[j], dtype=np.int64))
        if sizes[i]:
            equation[:, starts[i]:starts[i] + sizes[i]] -= np.kron(np.eye(dm[i], dtype=np.int64), n.maps[i])
        blocks.append(equation)
    if not blocks:
        return unknowns
    system = np.vstack(blocks)
    return unknowns - sp.Matrix(system.tolist()).rank()


def orbit_dimension(psi: Multisegment) -> int:
    """dim O_psi = sum_i d_i^2 - dim End(M_psi)."""
    dims = dimension_vector(psi)
    return sum(d * d for d in dims.entries) - hom_dimension(psi, psi)


def automorphism_count(psi: Multisegment, q: int) -> int:
    """|Aut M_psi| over F_q: q^{dim End - sum m_j^2} * prod_j |GL_{m_j}(q)|."""
    mults = [m for _, _, m in psi.items]
    count = q ** (hom_dimension(psi, psi) - sum(m * m for m in mults))
    for m in mults:
        count *= gl_order(m, q)
    return count


# --- Extensions and submodules ---

def extension_rep(quotient: NilRep, sub: NilRep, eta: List[np.ndarray]) -> NilRep:
    """
    The representation L on sub_k (+) quotient_k with X = [[X_sub, eta_k], [0, X_quotient]].

    eta[k] has shape (dim sub_{k+1}, dim quotient_k).
    """
    e = quotient.e
    dims = sub.dims + quotient.dims
    maps = []
    for k in range(e):
        j = (k + 1) % e
        top = np.hstack([sub.maps[k], eta[k]])
        bottom = np.hstack([np.zeros((quotient.dims.entries[j], sub.dims.entries[k]), dtype=np.int64),
                            quotient.maps[k]])
        maps.append(np.vstack([top, bottom]))
    return NilRep(dims, tuple(maps), quotient.p)


def count_extensions(quotient: Multisegment, sub: Multisegment, p: int) -> Counter:
    """
    For every eta in (+)_k Hom(M_k, N_{k+1}) over F_p, the isomorphism type of the extension L_eta.

    Returns:
        Counter mapping multisegments to the number of eta producing them.
    """
    e = quotient.e
    m = rep_from_multisegment(quotient, p)
    n = rep_from_multisegment(sub, p)
    shapes = [(n.dims.entries[(k + 1) % e], m.dims.entries[k]) for k in range(e)]
    slots = sum(r * c for r, c in shapes)
    counts: Counter = Counter()
    for values in itertools.product(range(p), repeat=slots):
        eta, pos = [], 0
        for r, c in shapes:
            eta.append(np.array(values[pos:pos + r * c], dtype=np.int64).reshape(r, c))
            pos += r * c
        # extensions of nilpotent representations are nilpotent
        extension = extension_rep(m, n, eta)
        counts[multisegment_from_ranks(e, rank_invariants(extension), extension.dims.rank)] += 1
    return counts


def extension_slots(quotient: Multisegment, sub: Multisegment) -> int:
    a, b = dimension_vector(quotient), dimension_vector(sub)
    return sum(a.entries[k] * b.entries[(k + 1) % a.e] for k in range(a.e))


def diagonal_slots(quotient: Multisegment, sub: Multisegment) -> int:
    a, b = dimension_vector(quotient), dimension_vector(sub)
    return sum(x * y for x, y in zip(a.entries, b.entries))


def count_submodules(psi: Multisegment, quotient: Multisegment, sub: Multisegment, p: int) -> int:
    """
    Number of X-stable graded subspaces U of M_psi over F_p with U = M_sub and M_psi/U = M_quotient.
    """
    target = dimension_vector(sub)
    if dimension_vector(psi) != dimension_vector(quotient) + target:
        return 0
    rep = rep_from_multisegment(psi, p)
    e, size = psi.e, rep.dims.rank
    offsets, degrees = rep.offsets(), rep.degrees()
    x = rep.total_matrix()
    powers = [np.eye(size, dtype=np.int64)]
    for _ in range(size):
        powers.append((powers[-1] @ x) % p)
    columns = {i: [k for k, d in enumerate(degrees) if d == i] for i in range(e)}
    per_degree = [list(rref_subspaces(rep.dims.entries[i], target.entries[i], p)) for i in range(e)]
    count = 0
    for choice in itertools.product(*per_degree):
        # embed every U_i into the global coordinates as column vectors
        embedded = []
        for i, basis in enumerate(choice):
            block = np.zeros((size, basis.shape[0]), dtype=np.int64)
            if basis.shape[0]:
                block[offsets[i]:offsets[i] + rep.dims.entries[i], :] = basis.T
            embedded.append(block)
        stable = True
        for i in range(e):
            j = (i + 1) % e
            if embedded[i].shape[1] == 0:
                continue
            image = (x @ embedded[i]) % p
            if rank_mod_p(np.hstack([embedded[j], image]), p) != target.entries[j]:
                stable = False
                break
        if not stable:
            continue
        sub_ranks, quot_ranks = {}, {}
        for l in range(size + 1):
            for i in range(e):
                j = (i + l) % e
                moved = (powers[l] @ embedded[i]) % p
                sub_ranks[(i, l)] = rank_mod_p(moved, p) if moved.size else 0
                whole = powers[l][:, columns[i]]
                stacked = np.hstack([whole, embedded[j]])
                quot_ranks[(i, l)] = (rank_mod_p(stacked, p) if stacked.size else 0) - target.entries[j]
        if multisegment_from_ranks(e, sub_ranks, size) != sub:
            continue
        if multisegment_from_ranks(e, quot_ranks, size) != quotient:
            continue
        count += 1
    return count
