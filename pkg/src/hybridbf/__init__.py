"""Wideband tiled hybrid beamforming for the multiuser MIMO uplink."""

from .core import (ArrayLayout, ChannelTensor, FrequencyGrid, UserSpec, build_channel_tensor,
                   spatial_frequency, steering_vector, tile_channel)
from .beamformers import (RfWeightPlan, SpatialInterval, beam_gain_pattern, dominant_mode_plan,
                          dominant_mode_weights, narrowband_plan, narrowband_weights,
                          partitioned_broadbeam_plan, partitioned_narrowbeam_plan,
                          quadratic_broadbeam_weights, single_broadbeam_plan, squint_interval)
from .receiver import (EffectiveChannel, RateReport, effective_channel, lmmse_sinr,
                       logdet_sum_rate_bound, rate_report, rf_only_sinr, wideband_rate)
from .allocation import AllocationPlan, cluster_allocation, disjoint_allocation, full_sharing_plan
from .hardware import LossModel, PowerModel, tile_trace_loss, total_power

__version__ = "0.1.0"
