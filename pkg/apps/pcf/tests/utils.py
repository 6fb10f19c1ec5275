import numpy as np
import scipy.linalg as scalg

CAT_MAP = [[2, 1], [1, 1]]
# companion matrix of x^3 - 3x - 1 and the unit theta + 1
CUBIC_UNIT = [[0, 0, 1], [1, 0, 3], [0, 1, 0]]
CUBIC_UNIT_PLUS_ONE = [[1, 0, 1], [1, 1, 3], [0, 1, 1]]


def sine_transfer(x):
    return np.array([0.01 * np.sin(2 * np.pi * x[0])])


def cubic_transfer(x):
    return np.array([0.01 * np.sin(2 * np.pi * x[0]) + 0.02 * np.cos(2 * np.pi * x[1])])


def planar_transfer(x):
    return np.array([0.01 * np.sin(2 * np.pi * x[0]), 0.01 * np.cos(2 * np.pi * x[1])])


SPLIT = np.array([[1.0, 0.0], [0.0, -1.0]])
SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])


def matrix_transfer(x, amplitude=0.01):
    return scalg.expm(amplitude * (np.sin(2 * np.pi * x[0]) * SPLIT + np.cos(2 * np.pi * x[1]) * SWAP))
