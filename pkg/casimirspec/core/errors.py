"""Custom exceptions for the application."""


class CasimirSpecError(Exception):
    """应用程序基础异常"""
    exit_code = 1


class ConfigError(CasimirSpecError):
    """配置相关异常（未知键、取值越界、空划分等）"""
    exit_code = 2


class InputDataError(CasimirSpecError):
    """输入数据异常（CSV/JSON 格式错误、空表、间距不匹配）"""
    exit_code = 3


class DomainError(InputDataError, ValueError):
    """物理定义域异常：ω ≤ 0、ξ ≤ 0、ε < 1、d ≤ 0"""
    pass


class BinningError(InputDataError):
    """分箱失败：所有测量点落在同一个箱内"""
    pass


class NumericalError(CasimirSpecError):
    """数值不收敛（积分或 Matsubara 求和）"""
    exit_code = 4

    def __init__(self, message: str, n: int | None = None, d: float | None = None):
        self.n = n
        self.d = d
        context = []
        if n is not None:
            context.append(f"n={n}")
        if d is not None:
            context.append(f"d={d!r} m")
        if context:
            message = f"{message} ({', '.join(context)})"
        super().__init__(message)


class UndefinedScoreError(NumericalError):
    """R² 无定义：所有输出维度方差为零"""
    pass


class PfaApplicabilityWarning(UserWarning):
    """近邻力近似适用性警告：球半径不满足 R ≫ d"""
    pass
