"""Finite quandles, inner automorphism groups, orbit and rigid quotients,
coset presentations, and factorization of surjections."""

from .augment import AugmentedQuandle, augmented, induced_inn_hom
from .catalog import (
    GroupSpec,
    QuandleRecord,
    builtin_groups,
    canonical_form,
    connected_catalog,
    enumerate_connected_by_triples,
    enumerate_connected_exhaustive,
    enumerate_quandles_exhaustive,
    surjections,
)
from .coset import (
    CosetPresentation,
    from_presentation,
    make_presentation,
    phi,
    quotient_presentation,
    rigid_iff_closure,
    rigid_quotient_of_presentation,
    to_presentation,
)
from .errors import (
    AxiomError,
    ConsistencyError,
    DomainError,
    HomomorphismError,
    NotConnectedError,
    NotNormalError,
    NotRealizableError,
    NotSurjectiveError,
    PresentationError,
    QuandleKitError,
    ResourceError,
    TableError,
)
from .factorize import FactorizationCertificate, FailureReason, check_agreement, factor_oracle, factor_structural
from .permgroup import GroupHom, PermGroup, Permutation, compose, generate
from .quandle import (
    Quandle,
    QuandleHom,
    automorphisms,
    check_hom,
    conj_quandle,
    dihedral_quandle,
    inn,
    is_connected,
    is_isomorphic,
    orbits,
    symmetry,
    trivial_quandle,
    validate,
)
from .quotient import (
    factor_surjection,
    is_congruence,
    is_realizable_kernel,
    is_rigid,
    omega,
    orbit_quotient,
    realizable_closure,
    realizable_kernels,
)

__version__ = "0.1.0"
