"""
Matrices binarias dispersas codificadas como k²-trees
"""
from typing import Iterable, List, Tuple

import numpy as np
from bitarray import bitarray
from scipy import sparse

from config import settings
from core.bits import BitReader, BitSequence, BitWriter, bits_from_numpy, bits_to_numpy
from core.errors import CorruptionError, OutOfBoundsError, SizeLimitError


# Mayor lado k^h cuyo código de Morton (lado² - 1) cabe en int64
MAX_SIDE = 3_037_000_499


def tree_height(rows: int, cols: int, k: int) -> int:
    """Menor h >= 1 con k^h >= max(rows, cols)"""
    side = max(rows, cols, 1)
    height, size = 1, k
    while size < side:
        height += 1
        size *= k
    return height


class K2Tree:
    """
    k²-tree sobre la matriz rows x cols, rellenada al cuadrado k^h.

    tree guarda los niveles internos en orden por niveles (con rank) y
    leaves el último nivel. Los hijos del nodo cuyo bit está en la
    posición p de tree empiezan en rank1(p + 1) * k².

    Los códigos de Morton se calculan en int64, así que el lado rellenado
    k^h no puede pasar de MAX_SIDE (unos 3·10^9).
    """

    def __init__(self, rows: int, cols: int, k: int, tree: bitarray, leaves: bitarray):
        if k < 2:
            raise ValueError("k debe ser al menos 2")
        self.rows = rows
        self.cols = cols
        self.k = k
        self.height = tree_height(rows, cols, k)
        self.size = k ** self.height
        self._tree = BitSequence(tree)
        self._leaves = leaves
        self._tree_len = len(tree)

    # ------------------------------------------------------------------
    # Construcción
    # ------------------------------------------------------------------
    @classmethod
    def build(cls, points: Iterable[Tuple[int, int]], rows: int, cols: int,
              k: int = settings.DEFAULT_K) -> 'K2Tree':
        """
        Construir el árbol a partir de las celdas a 1

        Args:
            points: Pares (fila, columna)
            rows, cols: Dimensiones lógicas de la matriz
            k: Aridad de la subdivisión
        """
        pts = np.asarray(list(points) if not isinstance(points, np.ndarray) else points, dtype=np.int64)
        pts = pts.reshape(-1, 2)
        return cls.from_arrays(pts[:, 0], pts[:, 1], rows, cols, k)

    @classmethod
    def from_arrays(cls, r: np.ndarray, c: np.ndarray, rows: int, cols: int,
                    k: int = settings.DEFAULT_K) -> 'K2Tree':
        r = np.asarray(r, dtype=np.int64)
        c = np.asarray(c, dtype=np.int64)
        if len(r) and (r.min() < 0 or c.min() < 0 or r.max() >= rows or c.max() >= cols):
            raise OutOfBoundsError(f"Hay puntos fuera de la matriz {rows}x{cols}")
        height = tree_height(rows, cols, k)
        k2 = k * k

        if not len(r):
            empty = np.zeros(k2, dtype=np.uint8)
            if height == 1:
                return cls(rows, cols, k, bits_from_numpy(np.zeros(0)), bits_from_numpy(empty))
            return cls(rows, cols, k, bits_from_numpy(empty), bits_from_numpy(np.zeros(0)))

        if k ** height > MAX_SIDE:
            raise SizeLimitError(f"La matriz {rows}x{cols} excede el lado máximo {MAX_SIDE} con k={k}")

        # Código de Morton en base k²: un dígito por nivel, de la raíz a las hojas
        codes = np.zeros(len(r), dtype=np.int64)
        for level in range(height):
            step = k ** (height - 1 - level)
            digit = ((r // step) % k) * k + (c // step) % k
            codes = codes * k2 + digit
        codes = np.unique(codes)

        levels = []
        for level in range(height):
            keys = np.unique(codes // (k2 ** (height - 1 - level)))
            parents, inverse = np.unique(keys // k2, return_inverse=True)
            bits = np.zeros(len(parents) * k2, dtype=np.uint8)
            bits[inverse * k2 + keys % k2] = 1
            levels.append(bits)
        tree = np.concatenate(levels[:-1]) if height > 1 else np.zeros(0, dtype=np.uint8)
        return cls(rows, cols, k, bits_from_numpy(tree), bits_from_numpy(levels[-1]))

    @classmethod
    def from_sparse(cls, matrix, k: int = settings.DEFAULT_K) -> 'K2Tree':
        coo = sparse.coo_matrix(matrix)
        mask = coo.data != 0
        return cls.from_arrays(coo.row[mask], coo.col[mask], coo.shape[0], coo.shape[1], k)

    # ------------------------------------------------------------------
    # Acceso
    # ------------------------------------------------------------------
    def _bit(self, pos: int) -> int:
        if pos < self._tree_len:
            return self._tree[pos]
        return self._leaves[pos - self._tree_len]

    def _children(self, pos: int) -> int:
        return self._tree.rank1(pos + 1) * self.k * self.k

    def cell(self, row: int, col: int) -> int:
        if not (0 <= row < self.rows and 0 <= col < self.cols):
            raise OutOfBoundsError(f"Celda ({row}, {col}) fuera de la matriz {self.rows}x{self.cols}")
        k = self.k
        start = 0
        step = self.size
        while True:
            step //= k
            pos = start + (row // step) * k + col // step
            if not self._bit(pos):
                return 0
            if step == 1:
                return 1
            row, col = row % step, col % step
            start = self._children(pos)

    def row_ones(self, row: int) -> List[int]:
        """Columnas con 1 en la fila, en orden ascendente"""
        if not 0 <= row < self.rows:
            raise OutOfBoundsError(f"Fila {row} fuera de rango")
        return [c for c in self._line(row, by_row=True) if c < self.cols]

    def col_ones(self, col: int) -> List[int]:
        """Filas con 1 en la columna, en orden ascendente"""
        if not 0 <= col < self.cols:
            raise OutOfBoundsError(f"Columna {col} fuera de rango")
        return [r for r in self._line(col, by_row=False) if r < self.rows]

    def _line(self, index: int, by_row: bool) -> List[int]:
        k = self.k
        out = []
        # (inicio de los hijos, índice relativo de la línea, desplazamiento, tamaño del submatriz)
        stack = [(0, index, 0, self.size)]
        while stack:
            start, rel, offset, size = stack.pop()
            step = size // k
            fixed = rel // step
            children = []
            for j in range(k):
                pos = start + (fixed * k + j if by_row else j * k + fixed)
                if not self._bit(pos):
                    continue
                if step == 1:
                    out.append(offset + j)
                else:
                    children.append((self._children(pos), rel % step, offset + j * step, step))
            stack.extend(reversed(children))
        return sorted(out)

    def points(self) -> Tuple[np.ndarray, np.ndarray]:
        """Todas las celdas a 1 (filas, columnas), recorriendo el árbol nivel a nivel"""
        k, k2 = self.k, self.k * self.k
        bits = np.concatenate((bits_to_numpy(self._tree.bits), bits_to_numpy(self._leaves)))
        r = np.zeros(1, dtype=np.int64)
        c = np.zeros(1, dtype=np.int64)
        offset = 0
        step = self.size
        for _ in range(self.height):
            step //= k
            level = bits[offset:offset + len(r) * k2]
            offset += len(r) * k2
            ones = np.flatnonzero(level)
            parent, digit = ones // k2, ones % k2
            r = r[parent] + (digit // k) * step
            c = c[parent] + (digit % k) * step
            if not len(r):
                break
        mask = (r < self.rows) & (c < self.cols)
        return r[mask], c[mask]

    def to_coo(self) -> sparse.coo_matrix:
        r, c = self.points()
        data = np.ones(len(r), dtype=np.int8)
        return sparse.coo_matrix((data, (r, c)), shape=(self.rows, self.cols))

    def size_in_bits(self) -> int:
        return self._tree_len + len(self._leaves)

    # ------------------------------------------------------------------
    # Serialización
    # ------------------------------------------------------------------
    def write(self, writer: BitWriter) -> None:
        writer.write_deltas([self.k, self.rows, self.cols, self._tree_len, len(self._leaves)])
        writer.write_bits(self._tree.bits)
        writer.write_bits(self._leaves)

    @classmethod
    def read(cls, reader: BitReader) -> 'K2Tree':
        k, rows, cols, tree_len, leaves_len = reader.read_deltas(5)
        if k < 2:
            raise CorruptionError(f"Aridad del k²-tree inválida: {k}")
        if tree_len % (k * k) or leaves_len % (k * k):
            raise CorruptionError("Los niveles del k²-tree no son múltiplos de k²")
        tree = reader.read_bits(tree_len)
        leaves = reader.read_bits(leaves_len)
        return cls(rows, cols, k, tree, leaves)

    def __eq__(self, other) -> bool:
        return (isinstance(other, K2Tree) and (self.rows, self.cols, self.k) == (other.rows, other.cols, other.k)
                and self._tree == other._tree and self._leaves == other._leaves)


def k2_build(points: Iterable[Tuple[int, int]], rows: int, cols: int, k: int = settings.DEFAULT_K) -> K2Tree:
    return K2Tree.build(points, rows, cols, k)
