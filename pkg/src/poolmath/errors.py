"""Exception types shared across the package.

Every error raised by poolmath derives from PoolMathError, so callers can
catch one type at an API or CLI boundary and map it to a clean failure
response instead of a traceback.
"""


class PoolMathError(Exception):
    """Base class for all poolmath errors."""


class InvalidParameter(PoolMathError, ValueError):
    """An argument is outside its documented domain (negative fee, NaN price, ...)."""


class DegeneratePool(PoolMathError):
    """Operation requires strictly positive reserves but a reserve is zero."""


class InsufficientLiquidity(PoolMathError):
    """Requested output quantity meets or exceeds what the pool can provide."""


class StaleQuote(PoolMathError):
    """A quote was applied to a pool state other than the one it was priced on."""


class InvalidRange(PoolMathError, ValueError):
    """Price range bounds are not ordered, not positive where required, or NaN."""


class InconsistentState(PoolMathError):
    """Real reserves do not lie on the shifted curve for the given range."""


class NumericalFailure(PoolMathError):
    """A root find or other numeric step produced no usable result."""


class OutOfConvention(PoolMathError):
    """A price query is outside the domain where the chosen convention is defined."""
