"""Exact computer-algebra and spectral toolkit for the quantized
SL(2,R)_t coideal *-algebra.

Layers:

- ``scalars``: exact Gaussian-rational Laurent scalars in q^(1/2), q^a,
  q^b, q^c and the eigenvalue symbol.
- ``ncpoly``: noncommutative polynomials over those scalars, directed
  rewriting to normal form, confluence checking, Hopf structure, and the
  duality pairing.
- ``presentations``: the four bundled algebra presentations and the
  exact orthogonality/coideal checks.
- ``spectral``: shift operators, their exact commutation identities,
  generator inversion, and the Casimir element.
- ``reps``: finite-dimensional spin representations and the spectrum of
  the twisted skew element, exact and numeric.
- ``modules``: weight-module windows, norm recurrences, Gram oracle.
- ``classify``: unitarity case analysis and the classification of
  irreducible *-representations.
- ``cli``: the ``qsl2r`` command.
"""

from .scalars import Scalar
from .ncpoly import NCPoly, Presentation, Pairing, confluence_check
from .presentations import (uqsu2, oqsu2, podles, qsl2r_presentation,
                            b_element, et_matrix, verify_orthogonality)
from .spectral import (build_spectral_elements, casimir_element,
                       verify_att_relations, verify_casimir,
                       verify_xyzt_inversion)
from .reps import (ib_matrix, rep_matrix, spectrum_exact, spectrum_numeric,
                   spherical_vector)
from .modules import (ModuleWindow, admissible_family, canonical_module,
                      finite_module, gram_oracle)
from .classify import (ClassEntry, UnitarityVerdict, classify,
                       finite_dim_classify, sign_scan, subquotient_identify,
                       unitarity_test)

__version__ = "1.0.0"

__all__ = [
    "Scalar", "NCPoly", "Presentation", "Pairing", "confluence_check",
    "uqsu2", "oqsu2", "podles", "qsl2r_presentation", "b_element",
    "et_matrix", "verify_orthogonality", "build_spectral_elements",
    "casimir_element", "verify_att_relations", "verify_casimir",
    "verify_xyzt_inversion", "ib_matrix", "rep_matrix", "spectrum_exact",
    "spectrum_numeric", "spherical_vector", "ModuleWindow",
    "admissible_family", "canonical_module", "finite_module", "gram_oracle",
    "ClassEntry", "UnitarityVerdict", "classify", "finite_dim_classify",
    "sign_scan", "subquotient_identify", "unitarity_test", "__version__",
]
