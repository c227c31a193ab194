"""
Secuencias monótonas codificadas con Elias-Fano
"""
from bisect import bisect_left, bisect_right
from collections.abc import Sequence
from typing import Iterable, Tuple

import numpy as np
from bitarray.util import ba2int

from core.bits import BitReader, BitSequence, BitWriter, bits_from_numpy
from core.errors import CorruptionError, NotMonotoneError, OutOfBoundsError


def low_bit_width(n: int, universe: int) -> int:
    """l = max(0, ⌊log2(u/n)⌋)"""
    if n == 0 or universe < n:
        return 0
    return (universe // n).bit_length() - 1


class EliasFanoSeq(Sequence):
    """
    Secuencia no decreciente de naturales < universe.

    Cada valor x se parte en sus l bits bajos (guardados en bloque) y la
    parte alta, escrita en unario en upper: el i-ésimo uno está en la
    posición (x >> l) + i.
    """

    def __init__(self, n: int, universe: int, low_bits, upper: BitSequence):
        self.n = n
        self.universe = universe
        self.width = low_bit_width(n, universe)
        self._low = low_bits
        self._upper = upper

    @classmethod
    def build(cls, values: Iterable[int], universe: int) -> 'EliasFanoSeq':
        xs = np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=np.int64)
        n = len(xs)
        if n and (np.any(np.diff(xs) < 0)):
            raise NotMonotoneError("La secuencia de Elias-Fano debe ser no decreciente")
        if n and (xs[0] < 0 or xs[-1] >= universe):
            raise OutOfBoundsError(f"Los valores deben estar en [0, {universe})")
        width = low_bit_width(n, universe)

        if width:
            shifts = np.arange(width - 1, -1, -1, dtype=np.int64)
            low_matrix = (xs[:, None] >> shifts) & 1
            low = bits_from_numpy(low_matrix.reshape(-1))
        else:
            low = bits_from_numpy(np.zeros(0, dtype=np.uint8))

        upper = np.zeros(n + (universe >> width) + 1 if n else 1, dtype=np.uint8)
        upper[(xs >> width) + np.arange(n, dtype=np.int64)] = 1
        return cls(n, universe, low, BitSequence(bits_from_numpy(upper)))

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(self.n))]
        if i < 0:
            i += self.n
        if i < 0 or i >= self.n:
            raise IndexError(f"Índice {i} fuera de rango")
        high = self._upper.select1(i) - i
        if not self.width:
            return high
        start = i * self.width
        return (high << self.width) | ba2int(self._low[start:start + self.width])

    def access(self, i: int) -> int:
        return self[i]

    def range_of_value(self, value: int) -> Tuple[int, int]:
        """Intervalo [inicio, fin) de índices que contienen value (búsqueda binaria)"""
        return bisect_left(self, value), bisect_right(self, value)

    def size_in_bits(self) -> int:
        return len(self._low) + len(self._upper)

    def write(self, writer: BitWriter) -> None:
        writer.write_delta(self.n)
        writer.write_delta(self.universe)
        writer.write_bits(self._low)
        writer.write_delta(len(self._upper))
        writer.write_bits(self._upper.bits)

    @classmethod
    def read(cls, reader: BitReader) -> 'EliasFanoSeq':
        n = reader.read_delta()
        universe = reader.read_delta()
        low = reader.read_bits(n * low_bit_width(n, universe))
        upper = BitSequence(reader.read_bits(reader.read_delta()))
        if upper.count_ones() != n:
            raise CorruptionError(f"La parte alta tiene {upper.count_ones()} unos y la secuencia {n} valores")
        return cls(n, universe, low, upper)

    def __eq__(self, other) -> bool:
        return (isinstance(other, EliasFanoSeq) and self.n == other.n and self.universe == other.universe
                and self._low == other._low and self._upper == other._upper)


def ef_build(values: Iterable[int], universe: int) -> EliasFanoSeq:
    return EliasFanoSeq.build(values, universe)
