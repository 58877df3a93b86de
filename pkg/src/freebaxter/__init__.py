"""Free Baxter algebras of arbitrary weight, computed exactly over the rationals."""

from .coeff import L, Poly, binom, parse_poly
from .freebax import ShuffleElement, baxter_P, enumerate_mixable_shuffles, lift, product, shuffle_plus
from .cartier import BracketElement, cartier_P, cartier_product, from_shuffle, to_shuffle
from .series import TruncSeries, parse_series
from .standard import TruncSeq, spitzer_check, std_embed, waring_check
from .hopf import DPElement, dp_antipode, dp_counit, dp_delta, dp_mul, dp_verify
from .umbral import bernoulli_poly, dual_basis, lambda_binomial_check, miller_P, phi_poly
from .instances import check_baxter, make_instance

__version__ = "0.1.0"
