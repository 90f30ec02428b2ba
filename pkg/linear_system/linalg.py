"""
Exact Linear Algebra
Row echelon reduction and back substitution over the rationals
"""

from fractions import Fraction


def row_echelon(matrix, rhs=None):
    """
    Reduce matrix (and rhs alongside) in place to row echelon form.
    Returns the indices of the columns without a pivot.
    """
    free_columns = []
    n_rows = len(matrix)
    n_columns = len(matrix[0]) if n_rows else 0
    pivot_row = 0
    for pivot_column in range(n_columns):
        for row in range(pivot_row, n_rows):
            if matrix[row][pivot_column] != 0:
                break
        else:
            free_columns.append(pivot_column)
            continue
        if row != pivot_row:
            matrix[pivot_row], matrix[row] = matrix[row], matrix[pivot_row]
            if rhs is not None:
                rhs[pivot_row], rhs[row] = rhs[row], rhs[pivot_row]
        pivot = matrix[pivot_row][pivot_column]
        for other in range(pivot_row + 1, n_rows):
            factor = matrix[other][pivot_column]
            if factor == 0:
                continue
            factor = factor / pivot
            for column in range(pivot_column, n_columns):
                matrix[other][column] -= matrix[pivot_row][column] * factor
            if rhs is not None:
                rhs[other] -= rhs[pivot_row] * factor
        pivot_row += 1
    return free_columns


def back_substitute(matrix, rhs, free_columns, solution):
    """
    Solve the reduced system matrix·x = rhs, free columns taken from
    solution. Returns None when the system is inconsistent.
    """
    n_columns = len(solution)
    rank = n_columns - len(free_columns)
    if rhs is not None:
        for row in range(rank, len(matrix)):
            if rhs[row] != 0:
                return None
    free = set(free_columns)
    pivot_columns = [c for c in range(n_columns) if c not in free]
    for row in range(len(pivot_columns) - 1, -1, -1):
        pivot_column = pivot_columns[row]
        total = Fraction(0) if rhs is None else -rhs[row]
        for column in range(pivot_column + 1, n_columns):
            total += matrix[row][column] * solution[column]
        solution[pivot_column] = -total / matrix[row][pivot_column]
    return solution


def solve_unique(matrix, rhs, n_columns):
    """The unique solution of matrix·x = rhs, or None if there is none or many."""
    matrix = [[Fraction(x) for x in row] for row in matrix]
    rhs = [Fraction(x) for x in rhs]
    if n_columns == 0:
        return [] if all(x == 0 for x in rhs) else None
    if len(matrix) < n_columns:
        return None
    free_columns = row_echelon(matrix, rhs)
    if free_columns:
        return None
    return back_substitute(matrix, rhs, free_columns, [Fraction(0)] * n_columns)
