"""可复现随机流：一个 64 位种子按名称拆分为互不相关的计数器型 Philox 流"""

import zlib

import numpy as np

_MASK64 = (1 << 64) - 1


def stream(seed: int, name: str) -> np.random.Generator:
    """(seed, name) -> 独立的 Generator；与调用顺序无关"""
    key = np.random.SeedSequence([int(seed) & _MASK64, zlib.crc32(name.encode("utf-8"))])
    return np.random.Generator(np.random.Philox(key))


def unit_directions(rng: np.random.Generator, n: int, dim: int = 8) -> np.ndarray:
    """球面上均匀分布的方向（归一化高斯向量）"""
    g = rng.standard_normal((n, dim))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def ball_shell(rng: np.random.Generator, n: int, dim: int = 8, low: float = 0.5, high: float = 2.0) -> np.ndarray:
    """方向均匀、范数在 [low, high] 内均匀的样本"""
    return unit_directions(rng, n, dim) * rng.uniform(low, high, size=(n, 1))
