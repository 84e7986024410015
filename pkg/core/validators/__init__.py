# core/validators/__init__.py
from core.validators.cat import CatValidator
from core.validators.correlations import CorrelationValidator
from core.validators.device import DeviceValidator
from core.validators.drift import DriftValidator
from core.validators.fock import FockValidator
from core.validators.lamb_dicke import LambDickeValidator
from core.validators.rates import RateValidator
from core.validators.spectrum import SpectrumValidator

VALIDATORS = {
    "spectrum": SpectrumValidator,
    "rates": RateValidator,
    "fock": FockValidator,
    "cat": CatValidator,
    "correlations": CorrelationValidator,
    "drift": DriftValidator,
    "device": DeviceValidator,
    "lamb-dicke": LambDickeValidator,
}
