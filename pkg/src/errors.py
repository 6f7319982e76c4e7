"""사이징 툴킷 공통 예외

각 예외는 CLI가 반환할 종료 코드를 함께 가진다.
"""

from typing import Iterable, Optional


class OhresError(Exception):
    """툴킷 예외의 최상위 클래스"""

    exit_code = 1


class ConfigError(OhresError):
    """시나리오/옵션 설정 오류"""


class FormatError(OhresError):
    """데이터 파일 형식 오류 (파일 단위)"""

    def __init__(self, message: str, source: str = ""):
        self.source = source
        prefix = f"{source}: " if source else ""
        super().__init__(f"{prefix}{message}")


class RowError(FormatError):
    """데이터 행 단위 오류 (줄 번호 포함)"""

    def __init__(self, message: str, line_number: int, source: str = ""):
        self.line_number = line_number
        super().__init__(f"{line_number}행: {message}", source=source)


class IncompleteProfileError(OhresError):
    """시간대별 표본이 없는 시간이 있는 프로파일"""

    def __init__(self, missing_hours: Iterable[int], source: str = ""):
        self.missing_hours = sorted(missing_hours)
        self.source = source
        hours = ", ".join(str(h) for h in self.missing_hours)
        prefix = f"{source}: " if source else ""
        super().__init__(f"{prefix}표본이 없는 시간대: {hours}")


class ParameterError(OhresError):
    """물리/모델 파라미터 불변식 위반"""


class AssemblyError(OhresError):
    """MILP 조립 불가 (프로파일 불완전 등)"""


class PivotError(OhresError):
    """심플렉스 피벗 수치 특이성"""

    def __init__(self, row: int, column: int, value: float):
        self.row = row
        self.column = column
        super().__init__(f"피벗 요소가 너무 작음: row={row}, col={column}, value={value:.3e}")


class BudgetError(OhresError):
    """열거/탐색 예산 초과"""

    exit_code = 4

    def __init__(self, required: int, budget: int, message: Optional[str] = None):
        self.required = required
        self.budget = budget
        super().__init__(message or f"열거 예산 초과: 필요 {required:,} > 허용 {budget:,}")


class SolverError(OhresError):
    """심플렉스 반복 한도 초과 등 솔버 내부 실패"""
