"""
Грамматика замкнутых выражений для свидетелей liminf.

Выражение над переменными l и n строится из целых литералов, операций
+ - * и ^ (степень), функций max(...) и min(...) и скобок. Разбор
выполняется LALR-парсером Lark, дерево компилируется в вызываемый объект.
Неизвестные имена отвергаются при разборе.
"""

from typing import Callable, Dict, Optional, Tuple

from lark import Lark, Transformer, exceptions, v_args
from loguru import logger

from bc_quant.errors import ConfigError, PreconditionError

RATE_GRAMMAR = r"""
?start: sum

?sum: product
    | sum "+" product   -> add
    | sum "-" product   -> sub

?product: power
        | product "*" power -> mul

?power: unary
      | unary "^" power -> pow

?unary: atom
      | "-" unary -> neg

?atom: INT                            -> number
     | NAME                           -> variable
     | NAME "(" sum ("," sum)* ")"    -> call
     | "(" sum ")"

%import common.INT
%import common.CNAME -> NAME
%import common.WS
%ignore WS
"""

VARIABLES = ("l", "n")

FUNCTIONS: Dict[str, Callable[..., int]] = {"max": max, "min": min}

Env = Dict[str, int]
Compiled = Callable[[Env], int]


def _power(base: int, exponent: int) -> int:
    if exponent < 0:
        raise PreconditionError(f"Отрицательный показатель степени: {exponent}")
    return base**exponent


@v_args(inline=True)
class _Compiler(Transformer):
    """Превращает дерево разбора в замыкание от окружения {l, n}."""

    def number(self, token) -> Compiled:
        value = int(token)
        return lambda env: value

    def variable(self, token) -> Compiled:
        name = str(token)
        if name not in VARIABLES:
            raise ConfigError(f"Неизвестная переменная '{name}', допустимы {VARIABLES}")
        return lambda env: env[name]

    def call(self, token, *args: Compiled) -> Compiled:
        name = str(token)
        func = FUNCTIONS.get(name)
        if func is None:
            raise ConfigError(f"Неизвестная функция '{name}', допустимы {sorted(FUNCTIONS)}")
        if len(args) < 2:
            raise ConfigError(f"Функция {name} требует не менее двух аргументов")
        return lambda env: func(*(arg(env) for arg in args))

    def add(self, left: Compiled, right: Compiled) -> Compiled:
        return lambda env: left(env) + right(env)

    def sub(self, left: Compiled, right: Compiled) -> Compiled:
        return lambda env: left(env) - right(env)

    def mul(self, left: Compiled, right: Compiled) -> Compiled:
        return lambda env: left(env) * right(env)

    def pow(self, base: Compiled, exponent: Compiled) -> Compiled:
        return lambda env: _power(base(env), exponent(env))

    def neg(self, operand: Compiled) -> Compiled:
        return lambda env: -operand(env)


class ClosedExpression:
    """Скомпилированное выражение phi(l, n) с исходным текстом."""

    def __init__(self, text: str, compiled: Compiled):
        self.text = text
        self._compiled = compiled

    def __call__(self, l: int, n: int) -> int:
        return self._compiled({"l": l, "n": n})

    def __repr__(self) -> str:
        return f"ClosedExpression({self.text!r})"


class RateExpressionParser:
    """
    Парсер выражений для свидетелей liminf.

    Экземпляр Lark создается один раз и переиспользуется; LALR-парсер не
    хранит состояния между вызовами, поэтому его можно вызывать из
    нескольких потоков.
    """

    def __init__(self):
        self._lark = Lark(RATE_GRAMMAR, start="start", parser="lalr")
        self._cache: Dict[str, ClosedExpression] = {}

    def parse(self, text: str) -> ClosedExpression:
        """
        Разбирает и компилирует выражение.

        Raises:
            ConfigError: Если выражение синтаксически неверно или содержит
                неизвестные имена
        """
        cached = self._cache.get(text)
        if cached is not None:
            return cached

        try:
            tree = self._lark.parse(text)
        except exceptions.UnexpectedInput as e:
            logger.error(f"Ошибка разбора выражения '{text}': {e}")
            raise ConfigError(
                f"Синтаксическая ошибка в выражении '{text}' "
                f"(строка {e.line}, позиция {e.column})"
            ) from e

        try:
            compiled = _Compiler().transform(tree)
        except exceptions.VisitError as e:
            raise e.orig_exc from e

        expression = ClosedExpression(text, compiled)
        self._cache[text] = expression
        return expression

    def try_parse(self, text: str) -> Tuple[bool, Optional[Exception]]:
        """Проверяет выражение без выбрасывания исключения."""
        try:
            self.parse(text)
            return True, None
        except ConfigError as e:
            return False, e


_parser = None


def get_expression_parser() -> RateExpressionParser:
    """Возвращает общий экземпляр парсера выражений."""
    global _parser
    if _parser is None:
        _parser = RateExpressionParser()
    return _parser


def parse_closed_form(text: str) -> ClosedExpression:
    """Разбирает замкнутое выражение phi(l, n)."""
    return get_expression_parser().parse(text)
