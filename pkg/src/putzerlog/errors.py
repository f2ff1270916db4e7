"""Exception hierarchy shared by every module of :mod:`putzerlog`."""


class PutzerError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(PutzerError, ValueError):
    """Operands have incompatible shapes or are not square."""


class SingularMatrixError(PutzerError, ArithmeticError):
    """LU factorisation met a pivot below tolerance.

    Attributes
    ----------
    pivot : int
        Zero-based index of the elimination step that failed.
    """

    def __init__(self, pivot, magnitude):
        self.pivot = pivot
        self.magnitude = float(magnitude)
        super().__init__(
            f"matrix is singular to working precision: pivot {pivot} "
            f"has magnitude {self.magnitude:.3e}"
        )


class DomainError(PutzerError, ValueError):
    """A parameter ``t`` lies outside the admissible open interval.

    Attributes
    ----------
    t : float
    endpoint : float
        The violated endpoint.
    side : {"lower", "upper"}
    """

    def __init__(self, t, endpoint, side):
        self.t = t
        self.endpoint = endpoint
        self.side = side
        rel = ">" if side == "lower" else "<"
        super().__init__(
            f"t = {t!r} is outside the admissible interval: "
            f"need t {rel} {endpoint!r} ({side} endpoint)"
        )


class PrincipalLogUndefined(PutzerError, ValueError):
    """The matrix has eigenvalues on the closed negative real axis."""

    def __init__(self, eigenvalues):
        self.eigenvalues = list(eigenvalues)
        listing = ", ".join(_fmt_complex(z) for z in self.eigenvalues)
        super().__init__(
            "principal logarithm undefined: eigenvalues on the closed "
            f"negative real axis: {listing}"
        )


class InconsistentFactorization(PutzerError, ArithmeticError):
    """Spectrum and polynomial coefficients disagree."""


class ConvergenceError(PutzerError, RuntimeError):
    """An iterative routine hit its iteration or subdivision cap."""


class MatrixParseError(PutzerError, ValueError):
    """Malformed matrix input file."""


def _fmt_complex(z):
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:.12g}"
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real:.12g}{sign}{abs(z.imag):.12g}i"
