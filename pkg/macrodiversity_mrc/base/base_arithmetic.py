import abc
from typing import Any, Iterable


class BaseArithmetic(abc.ABC):
    """
    Scalar arithmetic used by the closed-form expressions. Implementations return their own number type;
    closed forms only combine numbers produced by the same backend with + - * / and the methods below.
    """

    # decimal digits carried by the number type
    digits = 0  # type: int

    @abc.abstractmethod
    def number(self, value: Any) -> Any:
        """
        Converts a float (exactly) or an integer into the backend number type
        """
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def to_float(self, value: Any) -> float:
        raise NotImplementedError  # pragma: no cover

    @property
    @abc.abstractmethod
    def pi(self) -> Any:
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def sqrt(self, x: Any) -> Any:
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def exp(self, x: Any) -> Any:
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def expm1(self, x: Any) -> Any:
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def atan(self, x: Any) -> Any:
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def atan2(self, y: Any, x: Any) -> Any:
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def atanh(self, x: Any) -> Any:
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def erfcx(self, x: Any) -> Any:
        """
        Scaled complementary error function e^{x^2} erfc(x)
        """
        raise NotImplementedError  # pragma: no cover

    @abc.abstractmethod
    def dawson(self, x: Any) -> Any:
        raise NotImplementedError  # pragma: no cover

    def exp_erfcx(self, exponent: Any, x: Any) -> Any:
        """
        e^{exponent} erfcx(x)
        """
        return self.exp(exponent) * self.erfcx(x)

    def exp_dawson(self, exponent: Any, x: Any) -> Any:
        return self.exp(exponent) * self.dawson(x)

    @abc.abstractmethod
    def fsum(self, values: Iterable[Any]) -> Any:
        """
        Sum without loss of intermediate precision
        """
        raise NotImplementedError  # pragma: no cover

    def is_finite(self, value: Any) -> bool:
        return True
