"""
Highest weights: the labels Lambda_i = Lambda(L[0,i]) up to a truncation
depth, the central charge and the value of q.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence

from scalar import FieldContext, Scalar, infer_context
from scalar.errors import TruncationError

logger = logging.getLogger(__name__)


@dataclass
class Weight:
    """
    Truncated highest weight.

    Attributes:
        q: Value of q
        labels: Lambda_0..Lambda_N
        central: Lambda(c)
        free: Indices whose label was supplied as a free value (pole indices)
    """
    q: Scalar
    labels: List[Scalar]
    central: Scalar
    free: Dict[int, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        if not self.labels:
            raise TruncationError("a weight needs at least the label Lambda_0")
        context = self.q.context
        self.labels = [context.coerce(v) for v in self.labels]
        self.central = context.coerce(self.central)
        self.free = {int(k): context.coerce(v) for k, v in self.free.items()}

    @property
    def context(self) -> FieldContext:
        return self.q.context

    @property
    def truncation(self) -> int:
        """N, the index of the last stored label."""
        return len(self.labels) - 1

    def label(self, n: int) -> Scalar:
        if n < 0 or n > self.truncation:
            raise TruncationError(f"label {n} is beyond the truncation N={self.truncation}")
        return self.labels[n]

    @classmethod
    def trivial(cls, q: Scalar, truncation: int) -> "Weight":
        zero = q.context.zero
        return cls(q=q, labels=[zero] * (truncation + 1), central=zero)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "q": self.q.to_text(),
            "central": self.central.to_text(),
            "labels": [v.to_text() for v in self.labels],
        }
        if self.free:
            data["free"] = {str(k): v.to_text() for k, v in sorted(self.free.items())}
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], context: Optional[FieldContext] = None) -> "Weight":
        """
        Build a weight from its JSON form.

        Args:
            data: {"q": "...", "central": "...", "labels": [...], "free": {"3": "s"}}
            context: Field context; inferred from the texts when omitted

        Raises:
            ScalarParseError: On malformed scalar text
            TruncationError: If a free index is beyond the labels
        """
        if context is None:
            context = infer_context(weight_texts(data))
        q = context.parse(str(data.get("q", "q")))
        labels = [context.parse(str(v)) for v in data.get("labels", [])]
        free: Dict[int, Scalar] = {}
        for key, value in (data.get("free") or {}).items():
            n = int(key)
            if n < 0 or n >= len(labels):
                raise TruncationError(f"free index {n} is outside the labels 0..{len(labels) - 1}")
            free[n] = context.parse(str(value))
            labels[n] = free[n]
        central = context.parse(str(data.get("central", "0")))
        return cls(q=q, labels=labels, central=central, free=free)


def weight_texts(data: Mapping[str, Any]) -> List[str]:
    """Scalar texts occurring in a weight file."""
    texts = [str(data.get("q", "q")), str(data.get("central", "0"))]
    texts.extend(str(v) for v in data.get("labels", []))
    texts.extend(str(v) for v in (data.get("free") or {}).values())
    return texts
