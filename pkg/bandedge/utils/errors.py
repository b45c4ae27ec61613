# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

from __future__ import annotations
from typing import Optional

from bandedge.constants import EXIT_CONFIG_ERROR, EXIT_NUMERICAL_ERROR


class BandEdgeError(Exception):
    exit_code: int = EXIT_NUMERICAL_ERROR


class ConfigError(BandEdgeError):
    exit_code = EXIT_CONFIG_ERROR


class NumericalError(BandEdgeError):
    exit_code = EXIT_NUMERICAL_ERROR


# Configuration errors


class ParseError(ConfigError):
    def __init__(self, msg: str, line: Optional[int] = None, column: Optional[int] = None):
        location = f" (line {line}, column {column})" if line is not None else ""
        super(ParseError, self).__init__(f"Malformed config document{location}: {msg}")
        self.line = line
        self.column = column


class ValidationError(ConfigError):
    def __init__(self, field: str, msg: str):
        super(ValidationError, self).__init__(f"Invalid value for '{field}': {msg}")
        self.field = field


class EmptyStack(ConfigError):
    def __init__(self):
        super(EmptyStack, self).__init__("A layered crystal needs at least one layer.")


class InvalidLayer(ConfigError):
    def __init__(self, position: int, msg: str):
        super(InvalidLayer, self).__init__(f"Invalid layer {position}: {msg}")
        self.position = position


# Numerical errors


class PositionOutOfCell(NumericalError):
    def __init__(self, x: float, period: float):
        super(PositionOutOfCell, self).__init__(f"Position {x!r} lies outside the unit cell [0, {period!r}].")


class ScanTooCoarse(NumericalError):
    def __init__(self, omega: float, msg: str):
        super(ScanTooCoarse, self).__init__(f"Band scan too coarse near omega={omega!r}: {msg}")
        self.omega = omega


class InGap(NumericalError):
    def __init__(self, omega: float, trace: float):
        super(InGap, self).__init__(f"omega={omega!r} is not inside a band (half-trace {trace!r}).")
        self.omega = omega
        self.trace = trace


class DegenerateCell(NumericalError):
    def __init__(self, omega: float):
        super(DegenerateCell, self).__init__(
            f"Cell matrix at omega={omega!r} is a multiple of the identity and the crystal is not homogeneous."
        )


class DegenerateGap(NumericalError):
    def __init__(self, omega: float):
        super(DegenerateGap, self).__init__(f"Zero-width gap at omega={omega!r} has no standing-wave edge mode.")


class NotTransversal(NumericalError):
    def __init__(self, omega: float, slope: float):
        super(NotTransversal, self).__init__(f"Edge at omega={omega!r} is not transversal (trace slope {slope!r}).")


class NoSuchEdge(NumericalError):
    def __init__(self, gap: int, side: str, available: int):
        super(NoSuchEdge, self).__init__(
            f"No {side} edge for gap {gap}: only {available} gap(s) of nonzero width were found."
        )


class NodeNotResolved(NumericalError):
    def __init__(self, x: float, amplitude: float):
        super(NodeNotResolved, self).__init__(
            f"Position {x!r} is not a node of the edge mode (|E| = {amplitude!r} after normalization)."
        )


class TooFewSamples(NumericalError):
    def __init__(self, count: int, required: int):
        super(TooFewSamples, self).__init__(f"Power-law fit needs at least {required} samples, got {count}.")


class NonPositiveSample(NumericalError):
    def __init__(self, index: int, detuning: float, value: float):
        super(NonPositiveSample, self).__init__(
            f"Sample {index} is not positive (detuning {detuning!r}, value {value!r})."
        )


class DegenerateAbscissa(NumericalError):
    def __init__(self):
        super(DegenerateAbscissa, self).__init__("All detunings are equal; the exponent is undetermined.")


class AtEdge(NumericalError):
    def __init__(self, omega: float):
        super(AtEdge, self).__init__(f"Model DOS diverges at the edge omega={omega!r}.")


class BranchExhausted(NumericalError):
    def __init__(self, omega: float, k: float):
        super(BranchExhausted, self).__init__(f"Below-edge branch ends before omega={omega!r} (k={k!r} <= 0).")


class BelowEdge(NumericalError):
    def __init__(self, omega: float, omega_c: float):
        super(BelowEdge, self).__init__(f"omega={omega!r} lies below the model edge {omega_c!r}.")


class UnnormalizedDistribution(NumericalError):
    def __init__(self, mass: float):
        super(UnnormalizedDistribution, self).__init__(f"Emitter distribution integrates to {mass!r}, not 1.")
        self.mass = mass
