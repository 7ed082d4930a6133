"""UE-aided absolute calibration of massive MIMO front-ends.

Library layout:

* :mod:`mimocal.model`      signal model, steering vectors, DFT whitening
* :mod:`mimocal.channel`    Ricean observation synthesis and sample moments
* :mod:`mimocal.estimators` moment-based and MLE phase/amplitude estimators
* :mod:`mimocal.fisher`     Fisher information and CRLB analysis
* :mod:`mimocal.harness`    Monte-Carlo sweep runner and CSV output
* :mod:`mimocal.cli`        command-line interface
"""

from .channel import ObservationSet, SampleMoments, sample_moments, synthesize
from .errors import (DegenerateEstimateError, DegenerateSchurError,
                     MimocalError, NumericalDomainError, SingularFimError)
from .estimators import (AmplitudeEstimate, PhaseEstimate,
                         estimate_amplitude_moment, estimate_phase_mle_numeric,
                         estimate_phase_moment, log_likelihood)
from .fisher import (CrlbReport, FisherInfo, crlb_diagonal_exact,
                     crlb_diagonal_schur, crlb_high_snr, fim_closed_form,
                     fim_numeric)
from .harness import (ExperimentConfig, MetricRow, SweepPoint,
                      cosine_similarity, derive_seed, phase_error_variance,
                      read_metric_rows, run_realization, run_sweep,
                      write_metric_rows)
from .model import (FrontEnd, ParamVector, Scenario, StackedModel, build_covariance,
                    build_mean, dft_whitening, noise_power_for_snr,
                    steering_vector, wrap_phase)

__version__ = "0.1.0"
