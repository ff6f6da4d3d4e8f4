"""Receive beamforming and secrecy metrics for spatial modulation under an active eavesdropper."""

from ._smsec import *  # noqa: F401,F403
from ._smsec import __version__, Method, run_sweep

ALL_METHODS = (Method.MaxRP, Method.MaxWFRP, Method.MaxRPZFC, Method.MaxSJNR)


def records_to_rows(records):
    """Flatten sweep records into dicts keyed like the results.csv columns."""
    return [
        {
            "method": str(r.method),
            "snr_db": r.snr_db,
            "p_m": r.p_m,
            "avg_sr": r.avg_sr,
            "ber": r.ber,
            "avg_sjnr_db": r.avg_sjnr_db,
            "n_realizations": r.n_realizations,
            "n_zfc_infeasible": r.n_zfc_infeasible,
        }
        for r in records
    ]
