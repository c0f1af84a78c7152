import logging

from coneseries.kernel.rational import parse_rational
from coneseries.series.laurent import RaySeries
from coneseries.standalone.errors import UsageError
from coneseries.support.spec import SupportSpec
from coneseries.transcendence.certificate import Certificate
from coneseries.transcendence.diophantine import dioph_a1_scan
from coneseries.transcendence.gap import gap_certificate
from coneseries.transcendence.liouville import liouville_certificate

logger = logging.getLogger(__name__)


def recompute_certificate(certificate: Certificate) -> Certificate:
    """Run the criterion named by a certificate again on its serialized inputs."""
    inputs = certificate.inputs
    omega = [parse_rational(w) for w in inputs.get("omega", [])]
    try:
        if certificate.theorem == "gap":
            return gap_certificate(SupportSpec.from_json(inputs["support"]), omega, inputs["horizon"])
        elif certificate.theorem == "liouville":
            return liouville_certificate(
                RaySeries.from_json(inputs["ray"]),
                omega,
                a_max=parse_rational(inputs["a_max"]),
                n_max=int(inputs["n_max"]),
                ramification=int(inputs["ramification"]),
            )
        else:
            b_guess = inputs["b_guess"]
            return dioph_a1_scan(
                RaySeries.from_json(inputs["ray"]),
                omega,
                beta_box=int(inputs["beta_box"]),
                b_guess=None if b_guess is None else parse_rational(b_guess),
            )
    except KeyError as key:
        raise UsageError("The certificate inputs are missing the field " + str(key) + ".")


def replay_certificate(doc: dict) -> bool:
    """
    Recompute a certificate document from its inputs and compare every field.

    Args:
        doc (dict): certificate document as written by Certificate.to_json

    Returns:
        bool: True when the recomputed certificate is identical
    """
    certificate = Certificate.from_json(doc)
    recomputed = recompute_certificate(certificate)
    identical = recomputed.to_json() == certificate.to_json()
    if not identical:
        logger.warning("replay of the %s certificate differs from the stored witness", certificate.theorem)
    return identical
