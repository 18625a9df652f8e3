"""
Stratified (Carnot) Lie algebras given by rational structure constants
"""
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import sympy as sp

from src.errors import (
    GenerationViolation,
    GradingViolation,
    JacobiViolation,
    ParseError,
    ValidationError,
)
from src.utils.validator import InputValidator

# (i, j, k, c^k_ij) with i < j, 0-based indices
Bracket = Tuple[int, int, int, sp.Rational]


@dataclass(frozen=True)
class StratifiedLieAlgebra:
    """
    A graded nilpotent Lie algebra g = g_1 + ... + g_s.

    Basis vectors are ordered layer by layer. Indices are 0-based in code
    and 1-based in every message and document.
    """
    name: str
    layer_dims: Tuple[int, ...]
    brackets: Tuple[Bracket, ...] = ()

    def __post_init__(self):
        if not self.layer_dims or any(int(d) < 1 for d in self.layer_dims):
            raise ValidationError(f"Layer dimensions must be positive integers: {list(self.layer_dims)}")
        object.__setattr__(self, 'layer_dims', tuple(int(d) for d in self.layer_dims))
        object.__setattr__(self, 'brackets', _normalize_brackets(self.brackets, sum(self.layer_dims)))
        self._check_grading()
        self._check_jacobi()
        self._check_generation()

    @cached_property
    def n(self) -> int:
        return sum(self.layer_dims)

    @cached_property
    def step(self) -> int:
        return len(self.layer_dims)

    @cached_property
    def layers(self) -> Tuple[int, ...]:
        """Layer number (1-based) of every basis index"""
        return tuple(s + 1 for s, dim in enumerate(self.layer_dims) for _ in range(dim))

    @cached_property
    def Q(self) -> int:
        """Homogeneous dimension"""
        return sum(self.layers)

    @cached_property
    def horizontal(self) -> Tuple[int, ...]:
        """Indices of the first layer"""
        return tuple(range(self.layer_dims[0]))

    @cached_property
    def table(self) -> Dict[Tuple[int, int], Dict[int, sp.Rational]]:
        """Antisymmetric bracket table (i, j) -> {k: c^k_ij}"""
        table: Dict[Tuple[int, int], Dict[int, sp.Rational]] = {}
        for i, j, k, c in self.brackets:
            table.setdefault((i, j), {})[k] = c
            table.setdefault((j, i), {})[k] = -c
        return table

    def layer_indices(self, layer: int) -> Tuple[int, ...]:
        """Basis indices of layer `layer` (1-based)"""
        return tuple(i for i, s in enumerate(self.layers) if s == layer)

    def structure_constant(self, i: int, j: int, k: int) -> sp.Rational:
        return self.table.get((i, j), {}).get(k, sp.Integer(0))

    def bracket_basis(self, i: int, j: int) -> Dict[int, sp.Rational]:
        """[e_i, e_j] as a sparse vector"""
        return dict(self.table.get((i, j), {}))

    def bracket_vectors(self, u: Sequence, v: Sequence) -> List:
        """[u, v] for coordinate vectors over any commutative ring"""
        out = [0] * self.n
        for (i, j), targets in self.table.items():
            if u[i] == 0 or v[j] == 0:
                continue
            product = u[i] * v[j]
            for k, c in targets.items():
                out[k] = out[k] + c * product
        return out

    def heisenberg_rank(self) -> Optional[int]:
        """m when this is the Heisenberg algebra of dimension 2m+1, otherwise None"""
        if len(self.layer_dims) != 2 or self.layer_dims[1] != 1 or self.layer_dims[0] % 2:
            return None
        horizontal = self.horizontal
        top = self.n - 1
        form = sp.Matrix(len(horizontal), len(horizontal),
                         lambda a, b: self.structure_constant(horizontal[a], horizontal[b], top))
        if form.rank() != len(horizontal):
            return None
        return len(horizontal) // 2

    def to_document(self) -> str:
        """Render in the structure-constant document format"""
        lines = [f"name: {self.name}", f"layers: [{', '.join(str(d) for d in self.layer_dims)}]"]
        for i, j, k, c in self.brackets:
            value = str(c.p) if c.q == 1 else f"{c.p}/{c.q}"
            lines.append(f"bracket {i + 1} {j + 1} -> {k + 1} : {value}")
        return '\n'.join(lines) + '\n'

    def _check_grading(self):
        for i, j, k, _ in self.brackets:
            if self.layers[k] != self.layers[i] + self.layers[j]:
                raise GradingViolation(
                    f"Bracket [{i + 1},{j + 1}] -> {k + 1} breaks the grading: "
                    f"layer {self.layers[i]} + layer {self.layers[j]} != layer {self.layers[k]}")

    def _check_jacobi(self):
        basis = [[sp.Integer(1) if t == s else sp.Integer(0) for t in range(self.n)] for s in range(self.n)]
        for a, b, c in combinations(range(self.n), 3):
            ea, eb, ec = basis[a], basis[b], basis[c]
            total = [0] * self.n
            for x, y, z in ((ea, eb, ec), (eb, ec, ea), (ec, ea, eb)):
                term = self.bracket_vectors(x, self.bracket_vectors(y, z))
                total = [p + q for p, q in zip(total, term)]
            if any(sp.Rational(value) != 0 for value in total):
                raise JacobiViolation(f"Jacobi identity fails on basis triple ({a + 1}, {b + 1}, {c + 1})")

    def _check_generation(self):
        first = self.layer_indices(1)
        for t in range(1, self.step):
            upper = self.layer_indices(t + 1)
            rows = []
            for i in first:
                for j in self.layer_indices(t):
                    image = self.bracket_basis(i, j)
                    rows.append([image.get(k, 0) for k in upper])
            rank = sp.Matrix(rows).rank() if rows else 0
            if rank != len(upper):
                raise GenerationViolation(
                    f"Brackets of layer 1 with layer {t} span {rank} of the {len(upper)} "
                    f"directions of layer {t + 1} (indices {[k + 1 for k in upper]})")


def _normalize_brackets(brackets: Iterable, n: int) -> Tuple[Bracket, ...]:
    normalized: Dict[Tuple[int, int, int], sp.Rational] = {}
    for i, j, k, c in brackets:
        i, j, k, c = int(i), int(j), int(k), sp.Rational(c)
        if not all(0 <= index < n for index in (i, j, k)):
            raise ValidationError(f"Bracket index out of range in [{i + 1},{j + 1}] -> {k + 1} (n = {n})")
        if i == j:
            raise ValidationError(f"Bracket [{i + 1},{j + 1}] of a vector with itself must vanish")
        if i > j:
            i, j, c = j, i, -c
        normalized[(i, j, k)] = normalized.get((i, j, k), sp.Integer(0)) + c
    return tuple(sorted((i, j, k, c) for (i, j, k), c in normalized.items() if c != 0))


_NAME_LINE = re.compile(r'^name\s*:\s*(?P<name>\S.*)$')
_LAYERS_LINE = re.compile(r'^layers\s*:\s*\[(?P<dims>[^\]]*)\]$')
_BRACKET_LINE = re.compile(
    r'^bracket\s+(?P<i>\d+)\s+(?P<j>\d+)\s*->\s*(?P<k>\d+)\s*:\s*(?P<c>[+-]?\d+(?:/\d+)?)$')


def parse_group(text: str) -> StratifiedLieAlgebra:
    """
    Parse a structure-constant document:

        name: H3
        layers: [2, 1]
        bracket 1 2 -> 3 : 1

    '#' starts a comment. Omitted brackets are zero.
    """
    name: Optional[str] = None
    layer_dims: Optional[List[int]] = None
    entries: Dict[Tuple[int, int, int], Tuple[sp.Rational, int]] = {}

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue

        match = _NAME_LINE.match(line)
        if match:
            if name is not None:
                raise ParseError("duplicate 'name' line", number)
            name = match.group('name').strip()
            continue

        match = _LAYERS_LINE.match(line)
        if match:
            if layer_dims is not None:
                raise ParseError("duplicate 'layers' line", number)
            parts = [part.strip() for part in match.group('dims').split(',')]
            if not all(part.isdigit() and int(part) > 0 for part in parts):
                raise ParseError(f"layers must be positive integers, got [{match.group('dims')}]", number)
            layer_dims = [int(part) for part in parts]
            continue

        match = _BRACKET_LINE.match(line)
        if match:
            if layer_dims is None:
                raise ParseError("'bracket' line before 'layers'", number)
            i, j, k = (int(match.group(key)) for key in ('i', 'j', 'k'))
            n = sum(layer_dims)
            for index in (i, j, k):
                if not 1 <= index <= n:
                    raise ParseError(f"index {index} out of range 1..{n}", number)
            if i >= j:
                raise ParseError(f"bracket indices must satisfy i < j, got {i} {j}", number)
            if (i, j, k) in entries:
                raise ParseError(f"duplicate bracket {i} {j} -> {k} (first on line {entries[(i, j, k)][1]})", number)
            numerator, _, denominator = match.group('c').partition('/')
            if denominator and int(denominator) == 0:
                raise ParseError("zero denominator", number)
            entries[(i, j, k)] = (sp.Rational(int(numerator), int(denominator or 1)), number)
            continue

        raise ParseError(f"unrecognized line {line!r}", number)

    if name is None:
        raise ParseError("missing 'name' line")
    if layer_dims is None:
        raise ParseError("missing 'layers' line")

    brackets = [(i - 1, j - 1, k - 1, c) for (i, j, k), (c, _) in entries.items()]
    return StratifiedLieAlgebra(name=name, layer_dims=tuple(layer_dims), brackets=tuple(brackets))


@lru_cache(maxsize=None)
def builtin_group(family: str, param: Optional[int] = None) -> StratifiedLieAlgebra:
    """abelian(n), heisenberg(m) or engel"""
    family = family.lower()
    if family == 'abelian':
        if param is None or param < 1:
            raise ValidationError(f"abelian requires n >= 1, got {param}")
        return StratifiedLieAlgebra(name=f"abelian:{param}", layer_dims=(param,))
    if family == 'heisenberg':
        if param is None or param < 1:
            raise ValidationError(f"heisenberg requires m >= 1, got {param}")
        top = 2 * param
        brackets = tuple((i, param + i, top, sp.Integer(1)) for i in range(param))
        return StratifiedLieAlgebra(name=f"heisenberg:{param}", layer_dims=(2 * param, 1), brackets=brackets)
    if family == 'engel':
        if param is not None:
            raise ValidationError("engel takes no parameter")
        brackets = ((0, 1, 2, sp.Integer(1)), (0, 2, 3, sp.Integer(1)))
        return StratifiedLieAlgebra(name="engel", layer_dims=(2, 1, 1), brackets=brackets)
    raise ValidationError(f"Unknown group family: {family}")


def load_group(ref: str) -> StratifiedLieAlgebra:
    """Resolve `family[:param]` or a path to a structure-constant document"""
    if not InputValidator.validate_group_ref(ref):
        raise ValidationError(f"Invalid group reference: {ref}. Expected family[:param] or a file path")
    match = InputValidator.GROUP_REF_PATTERN.match(ref.lower())
    if match:
        param = match.group('param')
        return builtin_group(match.group('family'), int(param) if param is not None else None)
    with open(ref, encoding='utf-8') as handle:
        return parse_group(handle.read())
