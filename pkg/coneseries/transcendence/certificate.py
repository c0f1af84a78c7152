from dataclasses import dataclass
from typing import Optional, Sequence

from coneseries.kernel.rational import RationalVector, format_rational, parse_rational
from coneseries.standalone.errors import UsageError
from coneseries.standalone.serialize import input_digest

NOT_ALGEBRAIC_GAP = "NotAlgebraicGap"
NOT_ALGEBRAIC_LIOUVILLE = "NotAlgebraicLiouville"
CONSISTENT_TO_HORIZON = "ConsistentToHorizon"
DIOPHANTINE_A1_HOLDS = "DiophantineA1Holds"
DIOPHANTINE_A1_FAILS = "DiophantineA1Fails"

verdicts = (
    NOT_ALGEBRAIC_GAP,
    NOT_ALGEBRAIC_LIOUVILLE,
    CONSISTENT_TO_HORIZON,
    DIOPHANTINE_A1_HOLDS,
    DIOPHANTINE_A1_FAILS,
)

# criterion -> field over which a refutation proves non-algebraicity
conclusion_fields = {"gap": "K[[x]]", "liouville": "K((x))", "diophantine": None}


@dataclass(frozen=True)
class Certificate:
    """
    Replayable verdict: the criterion that produced it, the weight, the exact witness data and the serialized inputs
    the witness is recomputed from.
    """

    verdict: str
    theorem: str
    omega: RationalVector
    witness: dict
    inputs: dict

    def __post_init__(self):
        if self.verdict not in verdicts:
            raise UsageError("Unknown verdict " + repr(self.verdict) + ".")
        if self.theorem not in conclusion_fields:
            raise UsageError("Unknown criterion " + repr(self.theorem) + ".")

    @property
    def conclusion_field(self) -> Optional[str]:
        if self.verdict in (NOT_ALGEBRAIC_GAP, NOT_ALGEBRAIC_LIOUVILLE):
            return conclusion_fields[self.theorem]
        return None

    @property
    def input_digest(self) -> str:
        return input_digest(self.inputs)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "theorem": self.theorem,
            "conclusion_field": self.conclusion_field,
            "omega": [format_rational(w) for w in self.omega],
            "witness": self.witness,
            "inputs": self.inputs,
            "input_digest": self.input_digest,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        try:
            certificate = cls(
                verdict=data["verdict"],
                theorem=data["theorem"],
                omega=tuple(parse_rational(w) for w in data["omega"]),
                witness=data["witness"],
                inputs=data["inputs"],
            )
        except (KeyError, TypeError):
            raise UsageError('A certificate document has the keys "verdict", "theorem", "omega", "witness", "inputs".')
        if "input_digest" in data and data["input_digest"] != certificate.input_digest:
            raise UsageError("The input digest does not match the serialized inputs.")
        return certificate


def rational_list(values: Sequence) -> list:
    return [format_rational(x) for x in values]
