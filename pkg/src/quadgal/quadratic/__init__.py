from .field import (
    DomainError,
    QuadInteger,
    QuadraticField,
    UnitGroup,
    fundamental_unit,
    make_field,
    splitting_of_prime,
    unit_group,
)
from .forms import BinaryQuadraticForm, FormClassGroup, class_group, compose, reduce_form
from .rayclass import (
    RayClassReport,
    ResidueRingUnits,
    UnsupportedPrime,
    check_rank_stabilization,
    nakagoshi_rank,
    ray_class_group,
    residue_ring_units,
    verify_q_group_rays,
)

NINE_FIELDS = (6, 5, 3, 2, -1, -2, -3, -5, -6)
