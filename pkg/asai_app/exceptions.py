"""
Иерархия ошибок движка и коды выхода management-команд
"""

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IDENTITY_FAILURE = 3
EXIT_UNSUPPORTED = 4


class AsaiError(Exception):
    """Базовая ошибка движка"""

    exit_code = EXIT_USAGE


class SymbolicError(AsaiError):
    pass


class DivisionByZeroFunction(SymbolicError, ZeroDivisionError):
    """Деление на тождественно нулевую функцию или нулевой множитель знаменателя"""


class DivergentSeriesError(SymbolicError):
    """Формальный геометрический ряд с отношением, тождественно равным 1"""


class BindingError(SymbolicError):
    """Недопустимая подстановка переменной"""


class NumericPoleError(SymbolicError):
    """Знаменатель обращается в ноль (в пределах машинной точности)"""


class PadicError(AsaiError):
    pass


class UnsupportedPrimeError(PadicError):
    exit_code = EXIT_UNSUPPORTED


class ZeroElementError(PadicError, ValueError):
    """Характер или символ вычисляется в нуле"""


class BasisClassError(PadicError, ValueError):
    """Δ не лежит в классе эталонного дискриминанта по модулю квадратов"""


class UnsupportedShapeError(AsaiError):
    exit_code = EXIT_UNSUPPORTED


class RamifiedInputError(AsaiError):
    exit_code = EXIT_UNSUPPORTED


class WhittakerError(AsaiError):
    pass


class OracleRejected(AsaiError):
    """Параметры лежат в области расходимости"""


class IdentityFailure(AsaiError):
    """Обязательное точное тождество не выполнено"""

    exit_code = EXIT_IDENTITY_FAILURE
