"""qdownsample: QFT-based quantum image downsampling toolkit.

Simulates the full pipeline — amplitude encoding, QFT-domain qubit
discarding, shot-based statistical reconstruction — together with a
gate-count cost model, an FFT-based classical replica, and a Gaussian-coupled
lattice-sensor front end. See README for conventions (bit order, RNG
contract, file formats).
"""

from .advantage import (
    CostReport,
    advantage_region,
    classical_cost,
    cost_report,
    quantum_cost,
    report_to_json,
    sweep_to_csv,
    theorem_lhs,
)
from .classical import classical_pipeline, fft_radix2, fwht
from .density import DensityMatrix, dft_matrix, oracle_pipeline
from .estimators import QFTDownsampler, ShotReconstructor
from .pgm import read_pgm, write_pgm
from .pipeline import (
    CompressedImage,
    PixelImage,
    QuantumImage,
    RegisterLayout,
    devectorize,
    downsample,
    downsample_preserving,
    downsample_tiled,
    encode_image,
    encode_values,
    plan_discards,
    tile,
    untile,
    vectorize,
)
from .reconstruct import (
    FluctuationStudy,
    GreyReconstruction,
    ShotHistogram,
    adaptive_reconstruct,
    fluctuation_study,
    grey_levels,
    sample_shots,
    sample_size,
)
from .sensor import (
    CouplingGrid,
    Field,
    SensorReading,
    double_gaussian_field,
    encode_from_sensor,
    load_sensor_config,
    make_grid,
    overlap_audit,
    sense,
)
from .simulator import (
    QubitRange,
    Statevector,
    apply_hadamard_layer,
    apply_qft,
    basis_state,
    marginalize,
    probabilities,
)
from .validation import DegenerateInputError

__version__ = "0.1.0"

__all__ = [
    "CompressedImage",
    "CostReport",
    "CouplingGrid",
    "DegenerateInputError",
    "DensityMatrix",
    "Field",
    "FluctuationStudy",
    "GreyReconstruction",
    "PixelImage",
    "QFTDownsampler",
    "QuantumImage",
    "QubitRange",
    "RegisterLayout",
    "SensorReading",
    "ShotHistogram",
    "ShotReconstructor",
    "Statevector",
    "adaptive_reconstruct",
    "advantage_region",
    "apply_hadamard_layer",
    "apply_qft",
    "basis_state",
    "classical_cost",
    "classical_pipeline",
    "cost_report",
    "devectorize",
    "dft_matrix",
    "double_gaussian_field",
    "downsample",
    "downsample_preserving",
    "downsample_tiled",
    "encode_from_sensor",
    "encode_image",
    "encode_values",
    "fft_radix2",
    "fluctuation_study",
    "fwht",
    "grey_levels",
    "load_sensor_config",
    "make_grid",
    "marginalize",
    "oracle_pipeline",
    "overlap_audit",
    "plan_discards",
    "probabilities",
    "quantum_cost",
    "read_pgm",
    "report_to_json",
    "sample_shots",
    "sample_size",
    "sense",
    "sweep_to_csv",
    "theorem_lhs",
    "tile",
    "untile",
    "vectorize",
    "write_pgm",
]
