"""
Точная проверка количественных версий лемм Бореля-Кантелли.

Пакет содержит инструменты для точной (рациональной) проверки количественных
формулировок лемм Бореля-Кантелли, теоремы Эрдёша-Реньи и метастабильной
версии теоремы Кохена-Стоуна на моделях событий с замкнутыми формулами
вероятностей. Результат каждой проверки оформляется в виде сертификата
с точными значениями обеих частей неравенства и запасом.
"""

__version__ = "0.1.0"
__author__ = "BC Quant Team"
