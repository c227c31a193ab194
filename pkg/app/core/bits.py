"""
Secuencias de bits con rank/select y flujos de código δ de Elias
"""
from functools import lru_cache
from typing import Iterable, List, Optional, Union

import numpy as np
from bitarray import bitarray
from bitarray.util import ba2int, count_n

from config import settings
from core.errors import TruncatedStreamError

# Número de unos en cada byte
_POPCOUNT = np.array([bin(i).count('1') for i in range(256)], dtype=np.int64)


def new_bits(source=None) -> bitarray:
    """bitarray con el bit más significativo primero"""
    if source is None:
        return bitarray(endian='big')
    return bitarray(source, endian='big')


def bits_from_bytes(data: bytes, length: Optional[int] = None) -> bitarray:
    bits = new_bits()
    bits.frombytes(data)
    if length is not None:
        del bits[length:]
    return bits


def bits_to_numpy(bits: bitarray) -> np.ndarray:
    """Vector uint8 de 0/1 con la misma longitud que bits"""
    if not len(bits):
        return np.zeros(0, dtype=np.uint8)
    return np.unpackbits(np.frombuffer(bits.tobytes(), dtype=np.uint8))[:len(bits)]


def bits_from_numpy(values: np.ndarray) -> bitarray:
    """Inverso de bits_to_numpy"""
    values = np.asarray(values, dtype=np.uint8)
    return bits_from_bytes(np.packbits(values).tobytes(), len(values))


class BitSequence:
    """
    Vector de bits inmutable con rank1/select1.

    El directorio guarda, para cada bloque de RANK_BLOCK_BITS bits, el número
    de unos anteriores; rank y select terminan dentro del bloque con las
    operaciones de bitarray.
    """

    def __init__(self, bits: Union[bitarray, str, Iterable[int]], block_bits: int = settings.RANK_BLOCK_BITS):
        self._bits = bits.copy() if isinstance(bits, bitarray) else new_bits(bits)
        self._block = block_bits
        per_byte = _POPCOUNT[np.frombuffer(self._bits.tobytes(), dtype=np.uint8)]
        bytes_per_block = block_bits // 8
        n_blocks = (len(self._bits) + block_bits - 1) // block_bits
        padded = np.zeros(n_blocks * bytes_per_block, dtype=np.int64)
        padded[:len(per_byte)] = per_byte
        block_counts = padded.reshape(n_blocks, bytes_per_block).sum(axis=1) if n_blocks else padded
        self._directory = np.concatenate(([0], np.cumsum(block_counts))).astype(np.int64)
        self._ones = int(self._directory[-1])

    def __len__(self) -> int:
        return len(self._bits)

    def __getitem__(self, i: int) -> int:
        return self._bits[i]

    @property
    def bits(self) -> bitarray:
        return self._bits

    def count_ones(self) -> int:
        return self._ones

    def rank1(self, i: int) -> int:
        """Número de unos en bits[0..i)"""
        if i <= 0:
            return 0
        if i >= len(self._bits):
            return self._ones
        block = i // self._block
        start = block * self._block
        return int(self._directory[block]) + self._bits.count(1, start, i)

    def select1(self, j: int) -> int:
        """Posición del j-ésimo uno (empezando en 0)"""
        if j < 0 or j >= self._ones:
            raise IndexError(f"select1({j}) fuera de rango: hay {self._ones} unos")
        block = int(np.searchsorted(self._directory, j, side='right')) - 1
        start = block * self._block
        local = j - int(self._directory[block])
        chunk = self._bits[start:start + self._block]
        return start + count_n(chunk, local + 1) - 1

    def __eq__(self, other) -> bool:
        return isinstance(other, BitSequence) and self._bits == other._bits


@lru_cache(maxsize=4096)
def _delta_codeword(n: int) -> str:
    length = n.bit_length()
    length_bits = format(length, 'b')
    return '0' * (len(length_bits) - 1) + length_bits + format(n, 'b')[1:]


def delta_codeword(x: int) -> str:
    """Palabra δ(x+1) como texto de 0/1"""
    if x < 0:
        raise ValueError(f"El código δ solo admite naturales: {x}")
    return _delta_codeword(x + 1)


class BitWriter:
    """Acumulador de bits para construir secciones del contenedor"""

    def __init__(self):
        self.bits = new_bits()

    def __len__(self) -> int:
        return len(self.bits)

    def write_delta(self, x: int) -> None:
        self.bits.extend(delta_codeword(x))

    def write_deltas(self, values: Iterable[int]) -> None:
        self.bits.extend(''.join(delta_codeword(x) for x in values))

    def write_bits(self, bits: bitarray) -> None:
        self.bits.extend(bits)

    def write_bytes(self, data: bytes) -> None:
        self.bits.frombytes(data)

    def to_bytes(self) -> bytes:
        return self.bits.tobytes()


class BitReader:
    """Lector secuencial sobre un bitarray"""

    def __init__(self, source: Union[bitarray, bytes], pos: int = 0):
        self.bits = source if isinstance(source, bitarray) else bits_from_bytes(source)
        self.pos = pos

    @property
    def remaining(self) -> int:
        return len(self.bits) - self.pos

    def read_delta(self) -> int:
        bits = self.bits
        try:
            first_one = bits.index(1, self.pos)
        except ValueError:
            raise TruncatedStreamError(f"Flujo δ truncado en el bit {self.pos}") from None
        zeros = first_one - self.pos
        end = first_one + zeros + 1
        length = ba2int(bits[first_one:end]) if end <= len(bits) else None
        if length is None or end + length - 1 > len(bits):
            raise TruncatedStreamError(f"Flujo δ truncado en el bit {self.pos}")
        low_end = end + length - 1
        n = 1 << (length - 1)
        if length > 1:
            n |= ba2int(bits[end:low_end])
        self.pos = low_end
        return n - 1

    def read_deltas(self, count: int) -> List[int]:
        return [self.read_delta() for _ in range(count)]

    def read_bits(self, count: int) -> bitarray:
        if count > self.remaining:
            raise TruncatedStreamError(f"Se pedían {count} bits y quedan {self.remaining}")
        chunk = self.bits[self.pos:self.pos + count]
        self.pos += count
        return chunk

    def read_bytes(self, count: int) -> bytes:
        return self.read_bits(count * 8).tobytes()


def delta_encode(values: Iterable[int]) -> bitarray:
    """Concatenar δ(x+1) para cada valor"""
    writer = BitWriter()
    writer.write_deltas(values)
    return writer.bits


def delta_decode(bits: bitarray, count: Optional[int] = None) -> List[int]:
    """
    Decodificar un flujo δ

    Args:
        bits: Flujo sin relleno
        count: Número de valores; si es None se decodifica hasta el final exacto
    """
    reader = BitReader(bits)
    if count is not None:
        return reader.read_deltas(count)
    values = []
    while reader.remaining:
        values.append(reader.read_delta())
    return values
