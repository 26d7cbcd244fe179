"""
lie_qrt: numerical laboratory for Lie-algebra quantum resource theories.
"""

__version__ = "1.0.0"

from .algebra import LieRep, local_su_rep, so2n_rep, su2_rep, weight_state
from .errors import LieQRTError
from .resource import g_purity, weak_meas_kraus, weight_purity_closed
